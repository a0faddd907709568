//! Marked surfaces with coloured punctures, their tagged triangulations and
//! flips.
//!
//! A triangulation is stored combinatorially: a list of triangles, each
//! with its three sides in counter-clockwise order and the marked point at
//! the start of every side. Every arc occurs on exactly two triangle sides
//! (possibly of the same triangle, for the radius of a self-folded
//! triangle) and every boundary segment on one. Orientation is consistent
//! because a shared arc is always traversed in opposite directions by its
//! two sides.
//!
//! A *tagged* triangulation is stored as its underlying ideal triangulation
//! `T°` together with the set of punctures at which every arc end is
//! notched. The arc labels are the labels of tagged arcs: the loop of a
//! self-folded triangle around a puncture of colour I stands for the
//! radius notched at that puncture. Such a puncture is never in the
//! notched set, which makes the representation unique.

mod build;
pub mod named;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use build::{
    build_x, pi1_report, surface_oracle, surface_quiver, verify_flip_mutation,
    verify_flip_mutation_in, BoundaryMode, FlipCheck, Pi1Report, SurfaceQuiver,
};

/// Colour of a puncture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    I,
    II,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::I => "I",
            Color::II => "II",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PunctureSpec {
    pub color: Color,
}

/// Topological type of a surface with coloured punctures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredSurface {
    pub genus: usize,
    /// Number of marked points on each boundary component.
    pub boundaries: Vec<usize>,
    pub punctures: Vec<PunctureSpec>,
}

impl ColoredSurface {
    /// A surface, rejecting the excluded cases.
    pub fn new(
        genus: usize,
        boundaries: Vec<usize>,
        punctures: Vec<Color>,
    ) -> Result<ColoredSurface> {
        let s = ColoredSurface {
            genus,
            boundaries,
            punctures: punctures
                .into_iter()
                .map(|color| PunctureSpec { color })
                .collect(),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn colors(&self) -> Vec<Color> {
        self.punctures.iter().map(|p| p.color).collect()
    }

    fn count(&self, c: Color) -> usize {
        self.punctures.iter().filter(|p| p.color == c).count()
    }

    pub fn boundary_marked_points(&self) -> usize {
        self.boundaries.iter().sum()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidSurface(m.to_string()));
        if self.boundaries.contains(&0) {
            return bad("every boundary component needs a marked point");
        }
        let (g, b, p, s) = (
            self.genus,
            self.boundaries.len(),
            self.punctures.len(),
            self.boundary_marked_points(),
        );
        if g == 0 && b == 0 && p <= 2 {
            return bad("a sphere needs at least three punctures");
        }
        if g == 0 && b == 1 && s == 1 && p <= 1 {
            return bad("monogons need at least two punctures");
        }
        if g == 0 && b == 1 && p == 0 && (s == 2 || s == 3) {
            return bad("unpunctured digons and triangles have no arcs");
        }
        if g == 0 && b == 0 && p == 3 && self.count(Color::I) > 0 {
            return bad("every puncture of a thrice-punctured sphere must have colour II");
        }
        if g == 0 && b == 0 && p == 4 && self.count(Color::I) >= 3 {
            return bad("a four-punctured sphere may have at most two punctures of colour I");
        }
        if b == 0 && p == 0 {
            return bad("a closed surface needs a puncture");
        }
        Ok(())
    }

    /// Number of arcs in any triangulation, `6g + 3b + 3p + s - 6`.
    pub fn arc_count(&self) -> usize {
        let n = 6 * self.genus
            + 3 * self.boundaries.len()
            + 3 * self.punctures.len()
            + self.boundary_marked_points();
        n.saturating_sub(6)
    }

    /// Euler characteristic of the surface with its colour II punctures
    /// removed.
    pub fn euler_characteristic_without_ii(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundaries.len() as i64 - self.count(Color::II) as i64
    }
}

/// A marked point: on the boundary, or a puncture of the given colour.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedPointSpec {
    pub name: String,
    /// Present exactly for punctures.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<Color>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleSpec {
    /// Side labels in counter-clockwise order.
    pub sides: [String; 3],
    /// `corners[i]` is the marked point where side `i` starts.
    pub corners: [String; 3],
}

/// JSON form of a tagged triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationSpec {
    pub marked_points: Vec<MarkedPointSpec>,
    pub arcs: Vec<String>,
    #[serde(default)]
    pub boundary: Vec<String>,
    pub triangles: Vec<TriangleSpec>,
    /// Punctures at which every arc end is notched.
    #[serde(default)]
    pub notched: Vec<String>,
}

/// One side of a triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Arc(usize),
    Boundary(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Triangle {
    pub sides: [Side; 3],
    pub corners: [usize; 3],
}

impl Triangle {
    fn rotated(&self, r: usize) -> Triangle {
        Triangle {
            sides: [0, 1, 2].map(|i| self.sides[(i + r) % 3]),
            corners: [0, 1, 2].map(|i| self.corners[(i + r) % 3]),
        }
    }
}

/// A self-folded triangle: `loop_arc` based at `base`, enclosing
/// `puncture`, with radius `radius`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelfFolded {
    pub triangle: usize,
    pub loop_arc: usize,
    pub radius: usize,
    pub base: usize,
    pub puncture: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tag {
    Plain,
    Notched,
}

/// A tagged arc as a pair of marked points with a tag at each end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaggedArc {
    pub label: String,
    pub ends: [(String, Tag); 2],
}

impl fmt::Display for TaggedArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = |(p, t): &(String, Tag)| match t {
            Tag::Plain => p.clone(),
            Tag::Notched => format!("{p}~"),
        };
        write!(
            f,
            "{}: {} - {}",
            self.label,
            end(&self.ends[0]),
            end(&self.ends[1])
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Point {
    name: String,
    color: Option<Color>,
}

/// A tagged triangulation of a surface with coloured punctures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    points: Vec<Point>,
    arcs: Vec<String>,
    boundary: Vec<String>,
    triangles: Vec<Triangle>,
    notched: BTreeSet<usize>,
    surface: ColoredSurface,
}

fn union_find_root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Triangulation {
    pub fn from_spec(spec: &TriangulationSpec) -> Result<Triangulation> {
        let gluing = |m: String| Error::InvalidGluing(m);
        let mut names = HashMap::new();
        for (i, p) in spec.marked_points.iter().enumerate() {
            if names.insert(p.name.as_str(), i).is_some() {
                return Err(gluing(format!("marked point {} is listed twice", p.name)));
            }
        }
        let mut sides = HashMap::new();
        for (i, a) in spec.arcs.iter().enumerate() {
            if sides.insert(a.as_str(), Side::Arc(i)).is_some() {
                return Err(gluing(format!("label {a} is used twice")));
            }
        }
        for (i, b) in spec.boundary.iter().enumerate() {
            if sides.insert(b.as_str(), Side::Boundary(i)).is_some() {
                return Err(gluing(format!("label {b} is used twice")));
            }
        }
        let point = |n: &str| {
            names
                .get(n)
                .copied()
                .ok_or_else(|| gluing(format!("unknown marked point {n}")))
        };
        let side = |n: &str| {
            sides
                .get(n)
                .copied()
                .ok_or_else(|| gluing(format!("unknown side {n}")))
        };
        let triangles = spec
            .triangles
            .iter()
            .map(|t| {
                Ok(Triangle {
                    sides: [side(&t.sides[0])?, side(&t.sides[1])?, side(&t.sides[2])?],
                    corners: [
                        point(&t.corners[0])?,
                        point(&t.corners[1])?,
                        point(&t.corners[2])?,
                    ],
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let notched = spec
            .notched
            .iter()
            .map(|n| point(n))
            .collect::<Result<BTreeSet<_>>>()?;
        let points = spec
            .marked_points
            .iter()
            .map(|p| Point {
                name: p.name.clone(),
                color: p.color,
            })
            .collect();
        Triangulation::assemble(
            points,
            spec.arcs.clone(),
            spec.boundary.clone(),
            triangles,
            notched,
        )
    }

    pub fn to_spec(&self) -> TriangulationSpec {
        let side = |s: Side| match s {
            Side::Arc(i) => self.arcs[i].clone(),
            Side::Boundary(i) => self.boundary[i].clone(),
        };
        TriangulationSpec {
            marked_points: self
                .points
                .iter()
                .map(|p| MarkedPointSpec {
                    name: p.name.clone(),
                    color: p.color,
                })
                .collect(),
            arcs: self.arcs.clone(),
            boundary: self.boundary.clone(),
            triangles: self
                .triangles
                .iter()
                .map(|t| TriangleSpec {
                    sides: t.sides.map(side),
                    corners: t.corners.map(|c| self.points[c].name.clone()),
                })
                .collect(),
            notched: self
                .notched
                .iter()
                .map(|&p| self.points[p].name.clone())
                .collect(),
        }
    }

    fn assemble(
        points: Vec<Point>,
        arcs: Vec<String>,
        boundary: Vec<String>,
        triangles: Vec<Triangle>,
        notched: BTreeSet<usize>,
    ) -> Result<Triangulation> {
        let mut t = Triangulation {
            points,
            arcs,
            boundary,
            triangles,
            notched,
            surface: ColoredSurface {
                genus: 0,
                boundaries: Vec::new(),
                punctures: Vec::new(),
            },
        };
        t.surface = t.check()?;
        Ok(t)
    }

    /// Checks the gluing and returns the surface it describes.
    fn check(&self) -> Result<ColoredSurface> {
        let gluing = |m: String| Err(Error::InvalidGluing(m));
        if self.triangles.is_empty() {
            return gluing("a triangulation needs at least one triangle".into());
        }
        let mut arc_uses = vec![Vec::new(); self.arcs.len()];
        let mut boundary_uses = vec![Vec::new(); self.boundary.len()];
        for (t, tri) in self.triangles.iter().enumerate() {
            for (i, s) in tri.sides.iter().enumerate() {
                match *s {
                    Side::Arc(a) => arc_uses[a].push((t, i)),
                    Side::Boundary(b) => boundary_uses[b].push((t, i)),
                }
            }
        }
        for (a, uses) in arc_uses.iter().enumerate() {
            if uses.len() != 2 {
                return gluing(format!(
                    "arc {} lies on {} triangle sides instead of two",
                    self.arcs[a],
                    uses.len()
                ));
            }
        }
        for (b, uses) in boundary_uses.iter().enumerate() {
            if uses.len() != 1 {
                return gluing(format!(
                    "boundary segment {} lies on {} triangle sides instead of one",
                    self.boundary[b],
                    uses.len()
                ));
            }
        }
        let corner = |(t, i): (usize, usize)| self.triangles[t].corners[i % 3];
        let mut parent: Vec<usize> = (0..3 * self.triangles.len()).collect();
        let mut tri_parent: Vec<usize> = (0..self.triangles.len()).collect();
        for (a, uses) in arc_uses.iter().enumerate() {
            let ((t, i), (u, j)) = (uses[0], uses[1]);
            if corner((t, i)) != corner((u, j + 1)) || corner((t, i + 1)) != corner((u, j)) {
                return gluing(format!(
                    "the two sides of arc {} have mismatched endpoints",
                    self.arcs[a]
                ));
            }
            for (x, y) in [
                (3 * t + i, 3 * u + (j + 1) % 3),
                (3 * t + (i + 1) % 3, 3 * u + j),
            ] {
                let (rx, ry) = (
                    union_find_root(&mut parent, x),
                    union_find_root(&mut parent, y),
                );
                parent[rx] = ry;
            }
            let (rt, ru) = (
                union_find_root(&mut tri_parent, t),
                union_find_root(&mut tri_parent, u),
            );
            tri_parent[rt] = ru;
        }
        let root0 = union_find_root(&mut tri_parent, 0);
        if (0..self.triangles.len()).any(|t| union_find_root(&mut tri_parent, t) != root0) {
            return gluing("the triangles do not form a connected surface".into());
        }
        // Every marked point must be exactly one orbit of corners.
        let mut orbit_of_point: BTreeMap<usize, usize> = BTreeMap::new();
        let mut point_of_orbit: BTreeMap<usize, usize> = BTreeMap::new();
        for c in 0..parent.len() {
            let r = union_find_root(&mut parent, c);
            let p = self.triangles[c / 3].corners[c % 3];
            if *orbit_of_point.entry(p).or_insert(r) != r
                || *point_of_orbit.entry(r).or_insert(p) != p
            {
                return gluing(format!(
                    "corners of marked point {} are inconsistent with the gluing",
                    self.points[p].name
                ));
            }
        }
        if orbit_of_point.len() != self.points.len() {
            return gluing("some marked point is not a corner of any triangle".into());
        }
        // Boundary points are exactly the endpoints of boundary segments.
        let mut next_on_boundary = BTreeMap::new();
        for uses in &boundary_uses {
            let (t, i) = uses[0];
            if next_on_boundary
                .insert(corner((t, i)), corner((t, i + 1)))
                .is_some()
            {
                return gluing(format!(
                    "{} starts two boundary segments",
                    self.points[corner((t, i))].name
                ));
            }
        }
        for (p, pt) in self.points.iter().enumerate() {
            if pt.color.is_some() == next_on_boundary.contains_key(&p) {
                return gluing(format!(
                    "marked point {} is misplaced between boundary and interior",
                    pt.name
                ));
            }
        }
        let mut boundaries = Vec::new();
        let mut seen = BTreeSet::new();
        for &start in next_on_boundary.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut count = 0;
            let mut p = start;
            while seen.insert(p) {
                count += 1;
                p = next_on_boundary[&p];
            }
            boundaries.push(count);
        }
        for sf in self.self_folded() {
            if self.points[sf.puncture].color.is_none() {
                return gluing("a self-folded triangle must enclose a puncture".into());
            }
        }
        for &p in &self.notched {
            match self.points[p].color {
                None => {
                    return gluing(format!(
                        "boundary point {} cannot be notched",
                        self.points[p].name
                    ))
                }
                Some(Color::I) if self.enclosing(p).is_some() => {
                    return gluing(format!(
                        "puncture {} lies in a self-folded triangle and is represented plain",
                        self.points[p].name
                    ))
                }
                _ => {}
            }
        }
        let chi = self.points.len() as i64 - (self.arcs.len() + self.boundary.len()) as i64
            + self.triangles.len() as i64;
        let twice_genus = 2 - boundaries.len() as i64 - chi;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return gluing(format!(
                "Euler characteristic {chi} is impossible for an orientable surface"
            ));
        }
        let surface = ColoredSurface {
            genus: (twice_genus / 2) as usize,
            boundaries,
            punctures: self
                .points
                .iter()
                .filter_map(|p| p.color.map(|color| PunctureSpec { color }))
                .collect(),
        };
        surface.validate()?;
        if surface.arc_count() != self.arcs.len() {
            return gluing(format!(
                "{} arcs, but a triangulation of this surface has {}",
                self.arcs.len(),
                surface.arc_count()
            ));
        }
        Ok(surface)
    }

    pub fn surface(&self) -> &ColoredSurface {
        &self.surface
    }

    pub fn arc_labels(&self) -> &[String] {
        &self.arcs
    }

    pub fn arc_index(&self, label: &str) -> Option<usize> {
        self.arcs.iter().position(|a| a == label)
    }

    pub fn boundary_labels(&self) -> &[String] {
        &self.boundary
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn point_name(&self, p: usize) -> &str {
        &self.points[p].name
    }

    pub fn point_color(&self, p: usize) -> Option<Color> {
        self.points[p].color
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn notched(&self) -> &BTreeSet<usize> {
        &self.notched
    }

    /// The two `(triangle, side index)` positions of an arc.
    pub fn arc_sides(&self, a: usize) -> [(usize, usize); 2] {
        let mut out = Vec::with_capacity(2);
        for (t, tri) in self.triangles.iter().enumerate() {
            for i in 0..3 {
                if tri.sides[i] == Side::Arc(a) {
                    out.push((t, i));
                }
            }
        }
        [out[0], out[1]]
    }

    /// The endpoints of an arc, in the direction of its first side.
    pub fn arc_endpoints(&self, a: usize) -> (usize, usize) {
        let (t, i) = self.arc_sides(a)[0];
        let tri = &self.triangles[t];
        (tri.corners[i], tri.corners[(i + 1) % 3])
    }

    /// Self-folded triangles, with the triangle rotated so the loop comes first.
    pub fn self_folded(&self) -> Vec<SelfFolded> {
        let mut out = Vec::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for r in 0..3 {
                let rot = tri.rotated(r);
                if let (Side::Arc(l), Side::Arc(x), Side::Arc(y)) =
                    (rot.sides[0], rot.sides[1], rot.sides[2])
                {
                    if x == y && l != x {
                        out.push(SelfFolded {
                            triangle: t,
                            loop_arc: l,
                            radius: x,
                            base: rot.corners[0],
                            puncture: rot.corners[2],
                        });
                    }
                }
            }
        }
        out
    }

    /// The self-folded triangle enclosing puncture `p`, if any.
    pub fn enclosing(&self, p: usize) -> Option<SelfFolded> {
        self.self_folded().into_iter().find(|s| s.puncture == p)
    }

    /// Number of arc ends at a marked point.
    pub fn valency(&self, p: usize) -> usize {
        (0..self.arcs.len())
            .map(|a| {
                let (x, y) = self.arc_endpoints(a);
                usize::from(x == p) + usize::from(y == p)
            })
            .sum()
    }

    /// The underlying ideal triangulation, all tags plain.
    pub fn untag(&self) -> Triangulation {
        Triangulation {
            notched: BTreeSet::new(),
            ..self.clone()
        }
    }

    /// The tagged arcs, one per label.
    pub fn tagged_arcs(&self) -> Vec<TaggedArc> {
        let folded = self.self_folded();
        let tag = |p: usize| {
            if self.notched.contains(&p) {
                Tag::Notched
            } else {
                Tag::Plain
            }
        };
        (0..self.arcs.len())
            .map(|a| {
                let ends = match folded
                    .iter()
                    .find(|s| s.loop_arc == a && self.points[s.puncture].color == Some(Color::I))
                {
                    Some(s) => [(s.base, tag(s.base)), (s.puncture, Tag::Notched)],
                    None => {
                        let (x, y) = self.arc_endpoints(a);
                        [(x, tag(x)), (y, tag(y))]
                    }
                };
                TaggedArc {
                    label: self.arcs[a].clone(),
                    ends: ends.map(|(p, t)| (self.points[p].name.clone(), t)),
                }
            })
            .collect()
    }

    fn swap_labels(&mut self, a: usize, b: usize) {
        for tri in &mut self.triangles {
            for s in &mut tri.sides {
                *s = match *s {
                    Side::Arc(x) if x == a => Side::Arc(b),
                    Side::Arc(x) if x == b => Side::Arc(a),
                    other => other,
                };
            }
        }
    }

    /// Flip of the ideal triangulation at an arc lying on two different
    /// triangles.
    fn ideal_flip(&mut self, k: usize) -> Result<()> {
        let [(t1, i), (t2, j)] = self.arc_sides(k);
        if t1 == t2 {
            return Err(Error::UnknownConfiguration(format!(
                "arc {} is the radius of a self-folded triangle",
                self.arcs[k]
            )));
        }
        let d1 = self.triangles[t1].rotated(i);
        let d2 = self.triangles[t2].rotated(j);
        let (a, b) = (d1.sides[1], d1.sides[2]);
        let (c, d) = (d2.sides[1], d2.sides[2]);
        let (p1, p2, q2) = (d1.corners[1], d1.corners[2], d2.corners[2]);
        let p0 = d1.corners[0];
        self.triangles[t1] = Triangle {
            sides: [Side::Arc(k), b, c],
            corners: [q2, p2, p0],
        };
        self.triangles[t2] = Triangle {
            sides: [Side::Arc(k), d, a],
            corners: [p2, q2, p1],
        };
        Ok(())
    }

    /// Restores the unique representation: a notched colour I puncture
    /// inside a self-folded triangle becomes plain, with the labels of
    /// loop and radius exchanged.
    fn normalize(&mut self) {
        for s in self.self_folded() {
            if self.points[s.puncture].color == Some(Color::I) && self.notched.remove(&s.puncture) {
                self.swap_labels(s.loop_arc, s.radius);
            }
        }
    }

    /// The other tagged triangulation containing every tagged arc but `k`.
    /// The new tagged arc carries the label of `k`.
    pub fn flip(&self, k: usize) -> Result<Triangulation> {
        if k >= self.arcs.len() {
            return Err(Error::UnknownConfiguration(format!("there is no arc {k}")));
        }
        let mut out = self.clone();
        match self.self_folded().into_iter().find(|s| s.radius == k) {
            Some(s) if self.points[s.puncture].color == Some(Color::II) => {
                if !out.notched.remove(&s.puncture) {
                    out.notched.insert(s.puncture);
                }
            }
            Some(s) => {
                // Notching everything at the puncture presents the same
                // tagged arcs with loop and radius exchanged; the arc to
                // replace is then the loop.
                out.swap_labels(s.loop_arc, s.radius);
                out.notched.insert(s.puncture);
                out.ideal_flip(k)?;
            }
            None => out.ideal_flip(k)?,
        }
        out.normalize();
        out.surface = out.check().map_err(|e| {
            Error::UnknownConfiguration(format!("flip produced an invalid gluing: {e}"))
        })?;
        Ok(out)
    }

    /// Flip at an arc given by label.
    pub fn flip_label(&self, label: &str) -> Result<Triangulation> {
        let k = self.arc_index(label).ok_or_else(|| {
            Error::UnknownConfiguration(format!("there is no arc labelled {label}"))
        })?;
        self.flip(k)
    }

    fn encode(&self, t0: usize, r0: usize, keep_labels: bool) -> Vec<usize> {
        let mut number: HashMap<usize, usize> = HashMap::new();
        let mut seen = vec![false; self.triangles.len()];
        let mut out = Vec::with_capacity(6 * self.triangles.len());
        let mut queue = VecDeque::from([(t0, r0)]);
        seen[t0] = true;
        while let Some((t, r)) = queue.pop_front() {
            let tri = self.triangles[t].rotated(r);
            for i in 0..3 {
                out.push(tri.corners[i]);
                match tri.sides[i] {
                    Side::Boundary(b) => out.push(2 * b),
                    Side::Arc(a) => {
                        let fresh = number.len();
                        let id = if keep_labels {
                            a
                        } else {
                            *number.entry(a).or_insert(fresh)
                        };
                        out.push(2 * id + 1);
                    }
                }
            }
            for i in 0..3 {
                if let Side::Arc(a) = tri.sides[i] {
                    for (u, j) in self.arc_sides(a) {
                        if !seen[u] {
                            seen[u] = true;
                            queue.push_back((u, j));
                        }
                    }
                }
            }
        }
        out
    }

    fn key(&self, keep_labels: bool) -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        for t in 0..self.triangles.len() {
            for r in 0..3 {
                let e = self.encode(t, r, keep_labels);
                if best.as_ref().is_none_or(|b| e < *b) {
                    best = Some(e);
                }
            }
        }
        let mut key = best.unwrap_or_default();
        key.push(usize::MAX);
        key.extend(self.notched.iter().copied());
        key
    }

    /// Identifies tagged triangulations that differ by a relabelling of
    /// arcs and an orientation-preserving homeomorphism fixing every marked
    /// point and boundary segment.
    pub fn canonical_key(&self) -> Vec<usize> {
        self.key(false)
    }

    /// Like [`Triangulation::canonical_key`] but arc labels must match.
    pub fn labelled_key(&self) -> Vec<usize> {
        self.key(true)
    }

    /// Equality as labelled tagged triangulations.
    pub fn same_labelled(&self, other: &Triangulation) -> bool {
        self.points == other.points
            && self.arcs == other.arcs
            && self.boundary == other.boundary
            && self.labelled_key() == other.labelled_key()
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self.tagged_arcs().iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", arcs.join(", "))
    }
}

/// An edge of a flip graph: flipping arc `arc` of node `from` gives `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlipEdge {
    pub from: usize,
    pub arc: usize,
    pub to: usize,
}

/// Tagged triangulations reachable by flips, up to the identification of
/// [`Triangulation::canonical_key`].
#[derive(Clone, Debug)]
pub struct FlipGraph {
    pub nodes: Vec<Triangulation>,
    pub edges: Vec<FlipEdge>,
    /// `false` when the node limit stopped the search.
    pub complete: bool,
}

impl FlipGraph {
    /// Distinct unordered pairs of adjacent nodes, self-adjacency included.
    pub fn neighbour_pairs(&self) -> BTreeSet<(usize, usize)> {
        self.edges
            .iter()
            .map(|e| (e.from.min(e.to), e.from.max(e.to)))
            .collect()
    }

    /// `true` if the graph is a single cycle through every node.
    pub fn is_cycle(&self) -> bool {
        let pairs = self.neighbour_pairs();
        let n = self.nodes.len();
        if n < 3 || pairs.len() != n || pairs.iter().any(|(a, b)| a == b) {
            return false;
        }
        let mut degree = vec![0; n];
        for &(a, b) in &pairs {
            degree[a] += 1;
            degree[b] += 1;
        }
        degree.iter().all(|&d| d == 2)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph flips {\n");
        for (i, t) in self.nodes.iter().enumerate() {
            s.push_str(&format!(
                "  n{i} [label=\"{}\"];\n",
                t.to_string().replace('"', "'")
            ));
        }
        for e in &self.edges {
            if e.from <= e.to {
                s.push_str(&format!(
                    "  n{} -- n{} [label=\"{}\"];\n",
                    e.from, e.to, self.nodes[e.from].arcs[e.arc]
                ));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Breadth-first enumeration of the flip graph, up to `max_nodes` nodes.
pub fn flip_graph(t: &Triangulation, max_nodes: usize) -> Result<FlipGraph> {
    let mut nodes = vec![t.clone()];
    let mut index = HashMap::from([(t.canonical_key(), 0)]);
    let mut edges = Vec::new();
    let mut complete = true;
    let mut next = 0;
    while next < nodes.len() {
        for k in 0..t.arcs.len() {
            let flipped = nodes[next].flip(k)?;
            let key = flipped.canonical_key();
            let to = match index.get(&key) {
                Some(&i) => i,
                None if nodes.len() < max_nodes => {
                    index.insert(key, nodes.len());
                    nodes.push(flipped);
                    nodes.len() - 1
                }
                None => {
                    complete = false;
                    continue;
                }
            };
            edges.push(FlipEdge {
                from: next,
                arc: k,
                to,
            });
        }
        next += 1;
    }
    Ok(FlipGraph {
        nodes,
        edges,
        complete,
    })
}
