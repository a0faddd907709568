//! The quiver with homotopy of a triangulation, its 2-complex, and the
//! check that flips correspond to mutations.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::mutation::TrackedQuiverWithHomotopy;
use crate::oracle::{build_complex, CellComplex2, HomotopyOracle, Pi1Component, Verdict};
use crate::quiver::{quiver_equal_fixed_vertices, ArrowId, Quiver, VertexId};
use crate::walk::{Step, Walk};

use super::{Color, Side, Triangulation};

/// What happens to boundary segments when building the quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryMode {
    /// Boundary segments are not vertices; this gives the quiver of the
    /// triangulation.
    Omit,
    /// Boundary segments become extra vertices after the arcs, never
    /// mutated. The triangles along the boundary then contribute their
    /// cycles as well, which keeps the 2-complex a deformation retract of
    /// the surface.
    Frozen,
}

/// Quiver and homotopy generators of a triangulation.
#[derive(Clone, Debug)]
pub struct SurfaceQuiver {
    pub mode: BoundaryMode,
    /// The glued quiver before any 2-cycle is deleted. Vertex `i < n` is
    /// arc `i`; in frozen mode vertex `n + j` is boundary segment `j`.
    pub with_two_cycles: Quiver,
    /// Closed walks in [`SurfaceQuiver::with_two_cycles`]: the oriented
    /// triangles and the cycles around colour I punctures.
    pub cycles: Vec<Walk>,
    /// Arrows of [`SurfaceQuiver::with_two_cycles`] removed around colour
    /// I punctures of valency two.
    pub deleted: Vec<ArrowId>,
    /// The quiver of the triangulation, arrows numbered from zero.
    pub quiver: Quiver,
    /// Generators of the homotopy on [`SurfaceQuiver::quiver`].
    pub generators: Vec<Walk>,
    /// Vertices that stand for arcs (the rest are frozen).
    pub arcs: usize,
}

/// Builds the quiver of `t` with its homotopy generators.
pub fn surface_quiver(t: &Triangulation, mode: BoundaryMode) -> Result<SurfaceQuiver> {
    let n = t.arc_labels().len();
    let vertex = |s: Side| -> Option<VertexId> {
        match (s, mode) {
            (Side::Arc(a), _) => Some(a),
            (Side::Boundary(b), BoundaryMode::Frozen) => Some(n + b),
            (Side::Boundary(_), BoundaryMode::Omit) => None,
        }
    };
    let folded = t.self_folded();
    let folded_at: HashMap<usize, _> = folded.iter().map(|s| (s.triangle, *s)).collect();
    let radius_of_loop: HashMap<usize, usize> = folded
        .iter()
        .filter(|s| t.point_color(s.puncture) == Some(Color::I))
        .map(|s| (s.loop_arc, s.radius))
        .collect();
    // A loop around a colour I puncture carries its radius along.
    let group = |s: Side| -> Vec<VertexId> {
        let mut g: Vec<VertexId> = vertex(s).into_iter().collect();
        if let Side::Arc(a) = s {
            g.extend(radius_of_loop.get(&a));
        }
        g
    };
    let vertices = match mode {
        BoundaryMode::Omit => n,
        BoundaryMode::Frozen => n + t.boundary_labels().len(),
    };
    let mut q = Quiver::new(vertices)?;
    // Arrow drawn at corner `c` of triangle `t` between the main vertices
    // of the two sides meeting there.
    let mut corner_arrow: HashMap<(usize, usize), ArrowId> = HashMap::new();
    let mut arrow_at: HashMap<(usize, usize, VertexId, VertexId), ArrowId> = HashMap::new();
    for (ti, tri) in t.triangles().iter().enumerate() {
        if let Some(s) = folded_at.get(&ti) {
            if t.point_color(s.puncture) == Some(Color::II) {
                let i = (0..3)
                    .find(|&i| tri.sides[i] == Side::Arc(s.loop_arc))
                    .expect("loop side");
                corner_arrow.insert((ti, (i + 1) % 3), q.add_arrow(s.loop_arc, s.radius, None)?);
                corner_arrow.insert((ti, i), q.add_arrow(s.radius, s.loop_arc, None)?);
            }
            continue;
        }
        for c in 0..3 {
            let (prev, next) = (tri.sides[(c + 2) % 3], tri.sides[c]);
            for &a in &group(prev) {
                for &b in &group(next) {
                    let id = q.add_arrow(a, b, None)?;
                    arrow_at.insert((ti, c, a, b), id);
                    if Some(a) == vertex(prev) && Some(b) == vertex(next) {
                        corner_arrow.insert((ti, c), id);
                    }
                }
            }
        }
    }

    let mut cycles = Vec::new();
    for (ti, tri) in t.triangles().iter().enumerate() {
        if folded_at.contains_key(&ti) {
            continue;
        }
        let groups = tri.sides.map(group);
        for &a in &groups[0] {
            for &b in &groups[1] {
                for &c in &groups[2] {
                    let ids = [
                        arrow_at[&(ti, 1, a, b)],
                        arrow_at[&(ti, 2, b, c)],
                        arrow_at[&(ti, 0, c, a)],
                    ];
                    cycles.push(Walk::path_ids(&q, &ids)?);
                }
            }
        }
    }

    let mut deleted = Vec::new();
    for p in 0..t.point_count() {
        if t.point_color(p) != Some(Color::I) {
            continue;
        }
        let corners: Vec<(usize, usize)> = t
            .triangles()
            .iter()
            .enumerate()
            .flat_map(|(ti, tri)| {
                (0..3)
                    .filter(move |&c| tri.corners[c] == p)
                    .map(move |c| (ti, c))
            })
            .collect();
        if corners.len() < 2 {
            continue;
        }
        cycles.push(cycle_around(t, &q, &corners, &corner_arrow, &folded_at)?);
        if corners.len() == 2 && corners.iter().all(|c| !folded_at.contains_key(&c.0)) {
            let (e, f) = (corner_arrow[&corners[0]], corner_arrow[&corners[1]]);
            if q.src(e) == q.tgt(f) && q.tgt(e) == q.src(f) && q.src(e) != q.tgt(e) {
                deleted.extend([e, f]);
            }
        }
    }

    let transported = eliminate(&q, cycles.clone(), &deleted)?;
    let kept = q.without(&deleted);
    let quiver = kept.renumbered();
    let new_id: HashMap<ArrowId, ArrowId> = kept
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| (a.id, i))
        .collect();
    let generators = transported
        .iter()
        .map(|w| {
            let steps = w
                .steps()
                .iter()
                .map(|s| Step {
                    arrow: new_id[&s.arrow],
                    ..*s
                })
                .collect();
            Walk::new(&quiver, w.start(), steps)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SurfaceQuiver {
        mode,
        with_two_cycles: q,
        cycles,
        deleted,
        quiver,
        generators,
        arcs: n,
    })
}

/// The cycle read around a colour I puncture from its corners. Corners in
/// self-folded triangles around colour I punctures contribute nothing, so
/// the loop of such a triangle is passed once.
fn cycle_around(
    t: &Triangulation,
    q: &Quiver,
    corners: &[(usize, usize)],
    corner_arrow: &HashMap<(usize, usize), ArrowId>,
    folded_at: &HashMap<usize, super::SelfFolded>,
) -> Result<Walk> {
    let incoming_arc = |(ti, c): (usize, usize)| match t.triangles()[ti].sides[(c + 2) % 3] {
        Side::Arc(a) => a,
        Side::Boundary(_) => usize::MAX,
    };
    let start = *corners
        .iter()
        .filter(|c| !folded_at.contains_key(&c.0))
        .min_by_key(|&&c| (incoming_arc(c), c))
        .ok_or_else(|| {
            Error::InvalidGluing("a puncture lies only in self-folded triangles".into())
        })?;
    let mut arrows = Vec::new();
    let mut cur = start;
    for _ in 0..=corners.len() {
        if let Some(&a) = corner_arrow.get(&cur) {
            arrows.push(a);
        }
        let Side::Arc(x) = t.triangles()[cur.0].sides[cur.1] else {
            return Err(Error::InvalidGluing(
                "an interior puncture touches the boundary".into(),
            ));
        };
        let other = t
            .arc_sides(x)
            .into_iter()
            .find(|&s| s != cur)
            .expect("two sides");
        cur = (other.0, (other.1 + 1) % 3);
        if cur == start {
            return Walk::path_ids(q, &arrows);
        }
    }
    Err(Error::InvalidGluing(
        "the corners around a puncture do not close up".into(),
    ))
}

/// Rewrites closed walks so they avoid the `deleted` arrows, using each
/// walk that passes a deleted arrow once to express it by the rest of the
/// walk. The normal closure in the groupoid of the remaining arrows then
/// corresponds to the original one.
fn eliminate(q: &Quiver, mut rels: Vec<Walk>, deleted: &[ArrowId]) -> Result<Vec<Walk>> {
    let uses = |w: &Walk, x: ArrowId| w.steps().iter().filter(|s| s.arrow == x).count();
    loop {
        let choice = deleted.iter().find_map(|&x| {
            rels.iter()
                .enumerate()
                .filter(|(_, r)| uses(r, x) == 1)
                .min_by_key(|(i, r)| (r.len(), *i))
                .map(|(i, _)| (x, i))
        });
        let Some((x, ri)) = choice else { break };
        let r = rels.remove(ri);
        let pos = r
            .steps()
            .iter()
            .position(|s| s.arrow == x)
            .expect("used once");
        let step = r.steps()[pos];
        let rest: Vec<Step> = r.steps()[pos + 1..]
            .iter()
            .chain(&r.steps()[..pos])
            .copied()
            .collect();
        let rest = Walk::new(q, step.end(q)?, rest)?;
        let expr = if step.inverse { rest } else { rest.inverse() };
        let substitute = |w: &Walk| -> Result<Walk> {
            let mut steps = Vec::with_capacity(w.len());
            for s in w.steps() {
                if s.arrow != x {
                    steps.push(*s);
                } else if s.inverse {
                    steps.extend_from_slice(expr.inverse().steps());
                } else {
                    steps.extend_from_slice(expr.steps());
                }
            }
            Ok(Walk::new(q, w.start(), steps)?.reduced())
        };
        rels = rels.iter().map(substitute).collect::<Result<Vec<_>>>()?;
        rels.retain(|w| !w.is_empty());
    }
    if rels.iter().any(|w| deleted.iter().any(|&x| uses(w, x) > 0)) {
        return Err(Error::InvalidGluing(
            "a deleted arrow cannot be expressed by the others".into(),
        ));
    }
    Ok(rels)
}

/// Whether a one-relator presentation on two generators is the torus
/// group, by reading its relator as a commutator.
fn is_torus_group(c: &Pi1Component) -> bool {
    if c.generators != 2 || c.relators.len() != 1 {
        return false;
    }
    let r = &c.relators[0];
    r.len() == 4 && r[2] == -r[0] && r[3] == -r[1] && r[0].abs() != r[1].abs()
}

/// Membership oracle for the homotopy of a surface quiver. It is exact
/// when the quotient groupoid is free or the torus group; otherwise the
/// generated oracle may answer Unknown.
pub fn surface_oracle(sq: &SurfaceQuiver) -> Result<HomotopyOracle> {
    let complex = build_complex(&sq.quiver, &sq.generators)?;
    let groups = complex.fundamental_group();
    if groups.len() == 1 && is_torus_group(&groups[0]) {
        return HomotopyOracle::abelian(&sq.quiver, sq.generators.clone());
    }
    HomotopyOracle::generated(&sq.quiver, sq.generators.clone())
}

/// The 2-complex of a triangulation: the glued quiver in frozen mode with
/// a disc on every generating cycle.
pub fn build_x(t: &Triangulation) -> Result<CellComplex2> {
    let sq = surface_quiver(t, BoundaryMode::Frozen)?;
    build_complex(&sq.with_two_cycles, &sq.cycles)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi1Report {
    pub euler_characteristic: i64,
    /// Rank of the fundamental group when the complex is connected and its
    /// presentation simplifies to a free one.
    pub rank_if_free: Option<usize>,
    pub components: Vec<Pi1Component>,
}

pub fn pi1_report(x: &CellComplex2) -> Pi1Report {
    let components = x.fundamental_group();
    let rank_if_free = match components.as_slice() {
        [c] => c.free_rank(),
        _ => None,
    };
    Pi1Report {
        euler_characteristic: x.euler_characteristic(),
        rank_if_free,
        components,
    }
}

/// Outcome of comparing a flip with the mutation of the quiver with
/// homotopy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipCheck {
    pub arc: usize,
    /// The quiver of the flipped triangulation equals the mutated quiver.
    pub quiver_match: bool,
    /// Some identification of parallel arrows sends every homotopy
    /// generator of the flipped triangulation into the mutated homotopy.
    pub generators_in: bool,
}

impl FlipCheck {
    pub fn ok(&self) -> bool {
        self.quiver_match && self.generators_in
    }
}

fn permutations(items: &[ArrowId]) -> Vec<Vec<ArrowId>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

struct Matcher<'a> {
    target: &'a TrackedQuiverWithHomotopy,
    groups: Vec<(Vec<ArrowId>, Vec<ArrowId>)>,
    /// Generators, each with the index of the last group it needs.
    generators: Vec<(usize, &'a Walk)>,
    assignment: HashMap<ArrowId, ArrowId>,
    verdicts: HashMap<Walk, bool>,
}

impl Matcher<'_> {
    fn holds(&mut self, w: &Walk) -> Result<bool> {
        let steps = w
            .steps()
            .iter()
            .map(|s| Step {
                arrow: self.assignment[&s.arrow],
                ..*s
            })
            .collect();
        let image = Walk::new(self.target.current(), w.start(), steps)?;
        if let Some(&v) = self.verdicts.get(&image) {
            return Ok(v);
        }
        let v = match self.target.verdict(&image)? {
            Verdict::In => true,
            Verdict::NotIn => false,
            Verdict::Unknown => {
                return Err(Error::DecisionUnknown(format!(
                    "membership of {} is undecided",
                    image.display(self.target.current())
                )))
            }
        };
        self.verdicts.insert(image, v);
        Ok(v)
    }

    fn search(&mut self, g: usize) -> Result<bool> {
        if g == self.groups.len() {
            return Ok(true);
        }
        let (from, to) = self.groups[g].clone();
        for perm in permutations(&to) {
            for (&a, &b) in from.iter().zip(&perm) {
                self.assignment.insert(a, b);
            }
            let mut fine = true;
            for i in 0..self.generators.len() {
                let (last, w) = self.generators[i];
                if last == g && !self.holds(w)? {
                    fine = false;
                    break;
                }
            }
            if fine && self.search(g + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Flips `t` at arc `k` and compares with mutation at vertex `k` of the
/// quiver with homotopy of `t`.
pub fn verify_flip_mutation(t: &Triangulation, k: usize) -> Result<FlipCheck> {
    verify_flip_mutation_in(t, k, BoundaryMode::Omit)
}

/// [`verify_flip_mutation`] with a choice of boundary treatment.
pub fn verify_flip_mutation_in(
    t: &Triangulation,
    k: usize,
    mode: BoundaryMode,
) -> Result<FlipCheck> {
    let sq = surface_quiver(t, mode)?;
    let tracked = TrackedQuiverWithHomotopy::new(&sq.quiver, surface_oracle(&sq)?)?;
    let mutated = tracked.mutate(k)?;
    let flipped = surface_quiver(&t.flip(k)?, mode)?;
    let quiver_match = quiver_equal_fixed_vertices(&flipped.quiver, mutated.current());
    if !quiver_match {
        return Ok(FlipCheck {
            arc: k,
            quiver_match,
            generators_in: false,
        });
    }
    let mut by_pair: BTreeMap<(VertexId, VertexId), (Vec<ArrowId>, Vec<ArrowId>)> = BTreeMap::new();
    for a in flipped.quiver.arrows() {
        by_pair.entry((a.src, a.tgt)).or_default().0.push(a.id);
    }
    for a in mutated.current().arrows() {
        by_pair.entry((a.src, a.tgt)).or_default().1.push(a.id);
    }
    let groups: Vec<_> = by_pair.into_values().collect();
    let group_of: HashMap<ArrowId, usize> = groups
        .iter()
        .enumerate()
        .flat_map(|(g, (from, _))| from.iter().map(move |&a| (a, g)))
        .collect();
    let generators = flipped
        .generators
        .iter()
        .map(|w| {
            let used: HashSet<usize> = w.steps().iter().map(|s| group_of[&s.arrow]).collect();
            (used.into_iter().max().unwrap_or(0), w)
        })
        .collect();
    let mut m = Matcher {
        target: &mutated,
        groups,
        generators,
        assignment: HashMap::new(),
        verdicts: HashMap::new(),
    };
    let generators_in = m.search(0)?;
    Ok(FlipCheck {
        arc: k,
        quiver_match,
        generators_in,
    })
}
