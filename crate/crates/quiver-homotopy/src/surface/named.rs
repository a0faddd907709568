//! Triangulations of small surfaces.

use super::{Color, MarkedPointSpec, TriangleSpec, Triangulation, TriangulationSpec};

fn point(name: &str, color: Option<Color>) -> MarkedPointSpec {
    MarkedPointSpec {
        name: name.into(),
        color,
    }
}

fn tri(sides: [&str; 3], corners: [&str; 3]) -> TriangleSpec {
    TriangleSpec {
        sides: sides.map(String::from),
        corners: corners.map(String::from),
    }
}

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn build(spec: TriangulationSpec) -> Triangulation {
    Triangulation::from_spec(&spec).expect("named triangulations are valid")
}

/// Digon with boundary points `A`, `B`, segments `x: A → B`, `y: B → A`,
/// a puncture `p`, and arcs `1 = A–p`, `2 = B–p`.
pub fn punctured_digon_spec(color: Color) -> TriangulationSpec {
    TriangulationSpec {
        marked_points: vec![point("A", None), point("B", None), point("p", Some(color))],
        arcs: strings(&["1", "2"]),
        boundary: strings(&["x", "y"]),
        triangles: vec![
            tri(["x", "2", "1"], ["A", "B", "p"]),
            tri(["y", "1", "2"], ["B", "A", "p"]),
        ],
        notched: Vec::new(),
    }
}

pub fn punctured_digon(color: Color) -> Triangulation {
    build(punctured_digon_spec(color))
}

/// Once-punctured torus: two triangles with sides `1, 2, 3`.
pub fn punctured_torus_spec(color: Color) -> TriangulationSpec {
    TriangulationSpec {
        marked_points: vec![point("p", Some(color))],
        arcs: strings(&["1", "2", "3"]),
        boundary: Vec::new(),
        triangles: vec![
            tri(["1", "2", "3"], ["p", "p", "p"]),
            tri(["1", "2", "3"], ["p", "p", "p"]),
        ],
        notched: Vec::new(),
    }
}

pub fn punctured_torus(color: Color) -> Triangulation {
    build(punctured_torus_spec(color))
}

/// Sphere with colour II punctures `p1, p2, p3` and arcs `a = p1–p2`,
/// `b = p2–p3`, `c = p3–p1`.
pub fn thrice_punctured_sphere_spec() -> TriangulationSpec {
    TriangulationSpec {
        marked_points: vec![
            point("p1", Some(Color::II)),
            point("p2", Some(Color::II)),
            point("p3", Some(Color::II)),
        ],
        arcs: strings(&["a", "b", "c"]),
        boundary: Vec::new(),
        triangles: vec![
            tri(["a", "b", "c"], ["p1", "p2", "p3"]),
            tri(["a", "c", "b"], ["p2", "p1", "p3"]),
        ],
        notched: Vec::new(),
    }
}

pub fn thrice_punctured_sphere() -> Triangulation {
    build(thrice_punctured_sphere_spec())
}

/// Monogon with boundary point `A`, segment `x`, punctures `p` and `q`
/// inside self-folded triangles with loops `l1, l2` and radii `r1, r2`.
pub fn twice_punctured_monogon_spec(first: Color, second: Color) -> TriangulationSpec {
    TriangulationSpec {
        marked_points: vec![
            point("A", None),
            point("p", Some(first)),
            point("q", Some(second)),
        ],
        arcs: strings(&["l1", "r1", "l2", "r2"]),
        boundary: strings(&["x"]),
        triangles: vec![
            tri(["x", "l2", "l1"], ["A", "A", "A"]),
            tri(["l1", "r1", "r1"], ["A", "A", "p"]),
            tri(["l2", "r2", "r2"], ["A", "A", "q"]),
        ],
        notched: Vec::new(),
    }
}

pub fn twice_punctured_monogon(first: Color, second: Color) -> Triangulation {
    build(twice_punctured_monogon_spec(first, second))
}

/// Fan triangulation of an unpunctured polygon with `m ≥ 4` vertices
/// `P0, …`, boundary segments `x0, …` and diagonals `d2, …, d(m-2)` from `P0`.
pub fn polygon_spec(m: usize) -> TriangulationSpec {
    let p = |i: usize| format!("P{}", i % m);
    let side = |i: usize, j: usize| -> String {
        match (i, j) {
            (0, 1) => "x0".into(),
            (i, 0) if i == m - 1 => format!("x{}", m - 1),
            (0, j) | (j, 0) => format!("d{j}"),
            (i, _) => format!("x{i}"),
        }
    };
    TriangulationSpec {
        marked_points: (0..m).map(|i| point(&p(i), None)).collect(),
        arcs: (2..m - 1).map(|j| format!("d{j}")).collect(),
        boundary: (0..m).map(|i| format!("x{i}")).collect(),
        triangles: (1..m - 1)
            .map(|i| {
                let j = (i + 1) % m;
                TriangleSpec {
                    sides: [side(0, i), side(i, j), side(j, 0)],
                    corners: [p(0), p(i), p(j)],
                }
            })
            .collect(),
        notched: Vec::new(),
    }
}

pub fn polygon(m: usize) -> Triangulation {
    build(polygon_spec(m))
}
