//! Quiver coverings, deck transformations and orbit mutation.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::mutation::TrackedQuiverWithHomotopy;
use crate::oracle::{Collapse, HomotopyOracle, Verdict};
use crate::quiver::{
    premutate_set_traced, quiver_equal_fixed_vertices, Arrow, ArrowId, ArrowOrigin, Quiver,
    VertexId,
};
use crate::walk::{closed_reduced_walks, Walk};

/// Largest covering (in total arrows) whose deck group is computed.
pub const DECK_ARROW_CAP: usize = 10_000;

/// A quiver automorphism of the total quiver. `arrows[i]` is the position
/// of the image of the arrow at position `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    pub vertices: Vec<VertexId>,
    pub arrows: Vec<usize>,
}

impl Automorphism {
    pub fn identity(c: &Covering) -> Automorphism {
        Automorphism {
            vertices: (0..c.total.vertex_count()).collect(),
            arrows: (0..c.total.arrow_count()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vertices.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            vertices: other.vertices.iter().map(|&v| self.vertices[v]).collect(),
            arrows: other.arrows.iter().map(|&a| self.arrows[a]).collect(),
        }
    }
}

/// A covering map `total → base`: `vertex_map` is indexed by total vertex
/// and `arrow_map` by total arrow position (values are base arrow ids).
#[derive(Clone, Debug)]
pub struct Covering {
    total: Quiver,
    base: Quiver,
    vertex_map: Vec<VertexId>,
    arrow_map: Vec<ArrowId>,
    fibers: Vec<Vec<VertexId>>,
    /// `(total vertex, base arrow) ↦ total arrow position` leaving / entering.
    out_lift: HashMap<(VertexId, ArrowId), usize>,
    in_lift: HashMap<(VertexId, ArrowId), usize>,
    deck: Arc<OnceLock<Vec<Automorphism>>>,
}

/// Checks the three covering conditions, reporting the first one violated.
pub fn validate_covering(
    total: &Quiver,
    base: &Quiver,
    vertex_map: &[VertexId],
    arrow_map: &[ArrowId],
) -> Result<()> {
    let bad = |m: String| Err(Error::InvalidCovering(m));
    if vertex_map.len() != total.vertex_count() {
        return bad(format!(
            "vertex map has {} entries for {} vertices",
            vertex_map.len(),
            total.vertex_count()
        ));
    }
    if arrow_map.len() != total.arrow_count() {
        return bad(format!(
            "arrow map has {} entries for {} arrows",
            arrow_map.len(),
            total.arrow_count()
        ));
    }
    if let Some(&v) = vertex_map.iter().find(|&&v| v >= base.vertex_count()) {
        return bad(format!("vertex map hits {v}, outside the base"));
    }
    for (a, &b) in total.arrows().iter().zip(arrow_map) {
        let Some(image) = base.arrow(b) else {
            return bad(format!("arrow {} maps to missing base arrow {b}", a.id));
        };
        if vertex_map[a.src] != image.src || vertex_map[a.tgt] != image.tgt {
            return bad(format!(
                "arrow {} does not commute with source and target",
                a.id
            ));
        }
    }
    let hit: BTreeSet<VertexId> = vertex_map.iter().copied().collect();
    if hit.len() != base.vertex_count() {
        return bad("vertex map is not surjective".into());
    }
    for v in 0..total.vertex_count() {
        let p = vertex_map[v];
        for (outgoing, name) in [(true, "out"), (false, "in")] {
            let mut over: Vec<ArrowId> = total
                .arrows()
                .iter()
                .zip(arrow_map)
                .filter(|(a, _)| if outgoing { a.src == v } else { a.tgt == v })
                .map(|(_, &b)| b)
                .collect();
            over.sort_unstable();
            let expected: Vec<ArrowId> = base
                .arrows()
                .iter()
                .filter(|a| if outgoing { a.src == p } else { a.tgt == p })
                .map(|a| a.id)
                .collect();
            if over != expected {
                return bad(format!(
                    "{name}-arrows at total vertex {v} are not in bijection with those at {p}"
                ));
            }
        }
    }
    Ok(())
}

impl Covering {
    pub fn new(
        total: Quiver,
        base: Quiver,
        vertex_map: Vec<VertexId>,
        arrow_map: Vec<ArrowId>,
    ) -> Result<Covering> {
        validate_covering(&total, &base, &vertex_map, &arrow_map)?;
        let mut fibers = vec![Vec::new(); base.vertex_count()];
        for (v, &p) in vertex_map.iter().enumerate() {
            fibers[p].push(v);
        }
        let mut out_lift = HashMap::new();
        let mut in_lift = HashMap::new();
        for (pos, (a, &b)) in total.arrows().iter().zip(&arrow_map).enumerate() {
            out_lift.insert((a.src, b), pos);
            in_lift.insert((a.tgt, b), pos);
        }
        Ok(Covering {
            total,
            base,
            vertex_map,
            arrow_map,
            fibers,
            out_lift,
            in_lift,
            deck: Arc::new(OnceLock::new()),
        })
    }

    /// Attaches an explicit deck group after checking every element.
    pub fn with_deck(self, deck: Vec<Automorphism>) -> Result<Covering> {
        for g in &deck {
            self.check_automorphism(g)?;
        }
        let mut deck = deck;
        if !deck.iter().any(Automorphism::is_identity) {
            deck.push(Automorphism::identity(&self));
        }
        deck.sort();
        deck.dedup();
        let cell = OnceLock::new();
        cell.set(deck).expect("fresh cell");
        Ok(Covering {
            deck: Arc::new(cell),
            ..self
        })
    }

    /// The identity covering of `q`.
    pub fn identity(q: &Quiver) -> Covering {
        let arrow_map = q.arrows().iter().map(|a| a.id).collect();
        Covering::new(
            q.clone(),
            q.clone(),
            (0..q.vertex_count()).collect(),
            arrow_map,
        )
        .expect("identity covering")
    }

    pub fn total(&self) -> &Quiver {
        &self.total
    }

    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn vertex_map(&self) -> &[VertexId] {
        &self.vertex_map
    }

    pub fn arrow_map(&self) -> &[ArrowId] {
        &self.arrow_map
    }

    /// Total vertices over `v`, ascending.
    pub fn fiber(&self, v: VertexId) -> &[VertexId] {
        &self.fibers[v]
    }

    /// Position of the total arrow over `base_arrow` leaving `x`.
    pub fn lift_out(&self, x: VertexId, base_arrow: ArrowId) -> Option<usize> {
        self.out_lift.get(&(x, base_arrow)).copied()
    }

    /// Position of the total arrow over `base_arrow` entering `x`.
    pub fn lift_in(&self, x: VertexId, base_arrow: ArrowId) -> Option<usize> {
        self.in_lift.get(&(x, base_arrow)).copied()
    }

    /// The unique lift of a base walk starting at total vertex `start`.
    pub fn lift(&self, start: VertexId, w: &Walk) -> Result<Walk> {
        w.validate(&self.base)?;
        if self.vertex_map.get(start) != Some(&w.start()) {
            return Err(Error::InvalidCovering(format!(
                "vertex {start} is not over {}",
                w.start()
            )));
        }
        let mut at = start;
        let mut steps = Vec::with_capacity(w.len());
        for s in w.steps() {
            let pos = if s.inverse {
                self.lift_in(at, s.arrow)
            } else {
                self.lift_out(at, s.arrow)
            }
            .ok_or_else(|| {
                Error::InvalidCovering(format!("no lift of arrow {} at {at}", s.arrow))
            })?;
            let a = &self.total.arrows()[pos];
            at = if s.inverse { a.src } else { a.tgt };
            steps.push(crate::walk::Step {
                arrow: a.id,
                inverse: s.inverse,
            });
        }
        Walk::new(&self.total, start, steps)
    }

    /// End vertex of the lift of `w` from `start`.
    pub fn lift_end(&self, start: VertexId, w: &Walk) -> Result<VertexId> {
        Ok(self.lift(start, w)?.end())
    }

    fn check_automorphism(&self, g: &Automorphism) -> Result<()> {
        let t = &self.total;
        let bad = |m: &str| Err(Error::InvalidCovering(format!("deck element: {m}")));
        if g.vertices.len() != t.vertex_count() || g.arrows.len() != t.arrow_count() {
            return bad("wrong size");
        }
        let vs: BTreeSet<_> = g.vertices.iter().collect();
        let as_: BTreeSet<_> = g.arrows.iter().collect();
        if vs.len() != t.vertex_count()
            || as_.len() != t.arrow_count()
            || g.arrows.iter().any(|&p| p >= t.arrow_count())
        {
            return bad("not a bijection");
        }
        for (pos, a) in t.arrows().iter().enumerate() {
            let b = &t.arrows()[g.arrows[pos]];
            if b.src != g.vertices[a.src] || b.tgt != g.vertices[a.tgt] {
                return bad("does not commute with source and target");
            }
            if self.arrow_map[g.arrows[pos]] != self.arrow_map[pos] {
                return bad("does not commute with the covering");
            }
        }
        if g.vertices
            .iter()
            .enumerate()
            .any(|(v, &w)| self.vertex_map[v] != self.vertex_map[w])
        {
            return bad("does not commute with the covering");
        }
        Ok(())
    }

    /// Extends `root ↦ image` to the component of `root` by unique lifting.
    fn extend(
        &self,
        root: VertexId,
        image: VertexId,
        vmap: &mut [Option<VertexId>],
        amap: &mut [Option<usize>],
    ) -> bool {
        vmap[root] = Some(image);
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let y = vmap[x].expect("visited");
            for (pos, a) in self.total.arrows().iter().enumerate() {
                let (other, lifted) = if a.src == x {
                    (a.tgt, self.lift_out(y, self.arrow_map[pos]))
                } else if a.tgt == x {
                    (a.src, self.lift_in(y, self.arrow_map[pos]))
                } else {
                    continue;
                };
                let Some(lp) = lifted else { return false };
                let b = &self.total.arrows()[lp];
                let other_image = if a.src == x { b.tgt } else { b.src };
                if amap[pos].is_some_and(|p| p != lp) {
                    return false;
                }
                amap[pos] = Some(lp);
                match vmap[other] {
                    Some(v) if v != other_image => return false,
                    Some(_) => {}
                    None => {
                        vmap[other] = Some(other_image);
                        queue.push_back(other);
                    }
                }
            }
        }
        true
    }

    /// All deck transformations (computed once, or as supplied).
    pub fn deck_transformations(&self) -> Result<&[Automorphism]> {
        if let Some(d) = self.deck.get() {
            return Ok(d);
        }
        if self.total.arrow_count() > DECK_ARROW_CAP {
            return Err(Error::Resource(format!(
                "deck group of a covering with more than {DECK_ARROW_CAP} arrows; supply it explicitly"
            )));
        }
        let (comp, count) = self.total.components();
        let reps: Vec<VertexId> = (0..count)
            .map(|c| comp.iter().position(|&x| x == c).unwrap())
            .collect();
        let mut found = Vec::new();
        self.search_deck(
            &reps,
            0,
            &mut vec![None; self.total.vertex_count()],
            &mut vec![None; self.total.arrow_count()],
            &mut found,
        );
        found.sort();
        let _ = self.deck.set(found);
        Ok(self.deck.get().expect("just set"))
    }

    fn search_deck(
        &self,
        reps: &[VertexId],
        i: usize,
        vmap: &mut [Option<VertexId>],
        amap: &mut [Option<usize>],
        found: &mut Vec<Automorphism>,
    ) {
        if i == reps.len() {
            let vertices: Vec<VertexId> = vmap.iter().map(|v| v.unwrap()).collect();
            let distinct: BTreeSet<_> = vertices.iter().collect();
            if distinct.len() == vertices.len() {
                found.push(Automorphism {
                    vertices,
                    arrows: amap.iter().map(|a| a.unwrap()).collect(),
                });
            }
            return;
        }
        let r = reps[i];
        for &y in self.fiber(self.vertex_map[r]) {
            let (mut v2, mut a2) = (vmap.to_vec(), amap.to_vec());
            if self.extend(r, y, &mut v2, &mut a2) {
                self.search_deck(reps, i + 1, &mut v2, &mut a2, found);
            }
        }
    }

    /// Regular: the deck group acts transitively on every fiber.
    pub fn is_regular(&self) -> bool {
        let Ok(deck) = self.deck_transformations() else {
            return false;
        };
        self.fibers.iter().all(|f| {
            f.first().is_none_or(|&x| {
                let orbit: BTreeSet<VertexId> = deck.iter().map(|g| g.vertices[x]).collect();
                orbit.len() == f.len()
            })
        })
    }

    /// Total quiver 2-acyclic and base loop-free.
    pub fn is_weakly_admissible(&self) -> bool {
        self.total.is_two_acyclic() && self.base.is_loop_free()
    }

    /// Total and base both 2-acyclic.
    pub fn is_admissible(&self) -> bool {
        self.total.is_two_acyclic() && self.base.is_two_acyclic()
    }
}

/// Orbit pre-mutation at base vertex `k`. The base of the result is the
/// quotient by the deck group: the ordinary pre-mutation of the base plus
/// one loop for each orbit of arrows joining two vertices of one fiber.
pub fn orbit_premutate(c: &Covering, k: VertexId) -> Result<Covering> {
    if k >= c.base.vertex_count() {
        return Err(Error::VertexOutOfRange(k));
    }
    if !c.is_weakly_admissible() {
        return Err(Error::NotWeaklyAdmissible(
            "total quiver has a 2-cycle or base has a loop".into(),
        ));
    }
    if !c.is_regular() {
        return Err(Error::NotRegular);
    }
    let deck = c.deck_transformations()?.to_vec();
    let pre = premutate_set_traced(&c.total, c.fiber(k))?;
    let base_pre = premutate_set_traced(&c.base, &[k])?;
    let base_composite: HashMap<(ArrowId, ArrowId), ArrowId> = base_pre
        .origin
        .iter()
        .filter_map(|(&id, o)| match *o {
            ArrowOrigin::Composite { outer, inner } => Some(((outer, inner), id)),
            _ => None,
        })
        .collect();
    let total_composite: HashMap<(ArrowId, ArrowId), ArrowId> = pre
        .origin
        .iter()
        .filter_map(|(&id, o)| match *o {
            ArrowOrigin::Composite { outer, inner } => Some(((outer, inner), id)),
            _ => None,
        })
        .collect();
    let old_id = |pos: usize| c.total.arrows()[pos].id;
    let old_pos = |id: ArrowId| c.total.position(id).expect("old arrow");
    let new_total = &pre.quiver;
    // Deck action on the new arrows, as ids.
    let act = |g: &Automorphism, id: ArrowId| -> ArrowId {
        match pre.origin[&id] {
            ArrowOrigin::Kept(a) | ArrowOrigin::Reversed(a) => old_id(g.arrows[old_pos(a)]),
            ArrowOrigin::Composite { outer, inner } => {
                total_composite[&(
                    old_id(g.arrows[old_pos(outer)]),
                    old_id(g.arrows[old_pos(inner)]),
                )]
            }
        }
    };
    let mut base = base_pre.quiver.clone();
    let mut arrow_map = Vec::with_capacity(new_total.arrow_count());
    let mut loop_of: HashMap<ArrowId, ArrowId> = HashMap::new();
    for a in new_total.arrows() {
        let b = match pre.origin[&a.id] {
            ArrowOrigin::Kept(x) | ArrowOrigin::Reversed(x) => c.arrow_map[old_pos(x)],
            ArrowOrigin::Composite { outer, inner } => {
                let (bo, bi) = (c.arrow_map[old_pos(outer)], c.arrow_map[old_pos(inner)]);
                match base_composite.get(&(bo, bi)) {
                    Some(&id) => id,
                    None => {
                        if let Some(&l) = loop_of.get(&a.id) {
                            l
                        } else {
                            let v = c.vertex_map[a.src];
                            let label = format!("[{}{}]", c.base.label(bo), c.base.label(bi));
                            let l = base.add_arrow(v, v, Some(label))?;
                            for g in &deck {
                                loop_of.insert(act(g, a.id), l);
                            }
                            l
                        }
                    }
                }
            }
        };
        arrow_map.push(b);
    }
    let new_deck: Vec<Automorphism> = deck
        .iter()
        .map(|g| Automorphism {
            vertices: g.vertices.clone(),
            arrows: new_total
                .arrows()
                .iter()
                .map(|a| new_total.position(act(g, a.id)).expect("image arrow"))
                .collect(),
        })
        .collect();
    Covering::new(new_total.clone(), base, c.vertex_map.clone(), arrow_map)?.with_deck(new_deck)
}

/// Orbit mutation at base vertex `k`: orbit pre-mutation followed by a
/// deck-equivariant deletion of a maximal collection of 2-cycles. Pairs of
/// vertices with a free orbit pair their arrows lowest id first and the
/// choice is transported by the deck group; a pair swapped by an involution
/// `τ` pairs each arrow with its image under `τ`.
pub fn orbit_mutate(c: &Covering, k: VertexId) -> Result<Covering> {
    let pre = orbit_premutate(c, k)?;
    let deck = pre.deck_transformations()?.to_vec();
    let t = &pre.total;
    let fiber_k = c.fiber(k);
    let n = t.vertex_count();
    let mut deleted: BTreeSet<usize> = BTreeSet::new();
    let mut handled: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let ordered = |a: VertexId, b: VertexId| if a < b { (a, b) } else { (b, a) };
    for i in (0..n).filter(|v| !fiber_k.contains(v)) {
        for j in (i + 1..n).filter(|v| !fiber_k.contains(v)) {
            if handled.contains(&(i, j)) {
                continue;
            }
            let orbit: BTreeSet<(VertexId, VertexId)> = deck
                .iter()
                .map(|g| ordered(g.vertices[i], g.vertices[j]))
                .collect();
            handled.extend(orbit.iter().copied());
            let forward: Vec<usize> = positions_between(t, i, j);
            let backward: Vec<usize> = positions_between(t, j, i);
            let swap = deck
                .iter()
                .find(|g| g.vertices[i] == j && g.vertices[j] == i);
            let chosen: Vec<usize> = match swap {
                None => forward
                    .iter()
                    .zip(&backward)
                    .flat_map(|(&a, &b)| [a, b])
                    .collect(),
                Some(tau) => {
                    let mut s: Vec<usize> = Vec::new();
                    for &a in &forward {
                        s.push(a);
                        s.push(tau.arrows[a]);
                    }
                    s
                }
            };
            for g in &deck {
                deleted.extend(chosen.iter().map(|&p| g.arrows[p]));
            }
        }
    }
    let keep: Vec<usize> = (0..t.arrow_count())
        .filter(|p| !deleted.contains(p))
        .collect();
    let new_pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let removed_ids: Vec<ArrowId> = deleted.iter().map(|&p| t.arrows()[p].id).collect();
    let total = t.without(&removed_ids);
    let arrow_map: Vec<ArrowId> = keep.iter().map(|&p| pre.arrow_map[p]).collect();
    let used: BTreeSet<ArrowId> = arrow_map.iter().copied().collect();
    let dropped: Vec<ArrowId> = pre
        .base
        .arrows()
        .iter()
        .map(|a| a.id)
        .filter(|id| !used.contains(id))
        .collect();
    let base = pre.base.without(&dropped);
    let new_deck = deck
        .iter()
        .map(|g| Automorphism {
            vertices: g.vertices.clone(),
            arrows: keep.iter().map(|&p| new_pos[&g.arrows[p]]).collect(),
        })
        .collect();
    Covering::new(total, base, pre.vertex_map.clone(), arrow_map)?.with_deck(new_deck)
}

fn positions_between(q: &Quiver, i: VertexId, j: VertexId) -> Vec<usize> {
    q.arrows()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.src == i && a.tgt == j)
        .map(|(p, _)| p)
        .collect()
}

/// The orbit mutation at `k` is again weakly admissible.
pub fn is_k_mutable(c: &Covering, k: VertexId) -> Result<bool> {
    Ok(orbit_mutate(c, k)?.is_weakly_admissible())
}

/// Sufficient condition for `[k]`-mutability: for every 2-cycle `k → v → k`
/// of the base, the lift of its square closes.
pub fn sufficient_k_mutable(c: &Covering, k: VertexId) -> Result<bool> {
    let b = &c.base;
    for beta in b.arrows().iter().filter(|a| a.src == k && a.tgt != k) {
        for alpha in b
            .arrows()
            .iter()
            .filter(|a| a.src == beta.tgt && a.tgt == k)
        {
            let cycle = Walk::path_ids(b, &[beta.id, alpha.id])?;
            let square = cycle.power(2)?;
            for &x in c.fiber(k) {
                if c.lift_end(x, &square)? != x {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Outcome of [`check_global_bounded`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalCheck {
    pub ok: bool,
    /// A sequence of directions after which weak admissibility fails.
    pub counterexample: Option<Vec<VertexId>>,
    /// Number of orbit mutations performed.
    pub explored: usize,
}

/// Tries every sequence of orbit mutations of length at most `depth`.
pub fn check_global_bounded(c: &Covering, depth: usize) -> Result<GlobalCheck> {
    let mut explored = 0;
    let mut frontier = vec![(Vec::new(), c.clone())];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (seq, cov) in &frontier {
            for k in 0..cov.base.vertex_count() {
                let m = orbit_mutate(cov, k)?;
                explored += 1;
                let mut s = seq.clone();
                s.push(k);
                if !m.is_weakly_admissible() {
                    return Ok(GlobalCheck {
                        ok: false,
                        counterexample: Some(s),
                        explored,
                    });
                }
                next.push((s, m));
            }
        }
        frontier = next;
    }
    Ok(GlobalCheck {
        ok: true,
        counterexample: None,
        explored,
    })
}

/// The regular covering of `q` determined by a permutation action of the
/// free generators of its fundamental group (the chords of the spanning
/// tree, in ascending id order) on `0..m`. Total vertex `v·m + g` lies over
/// `v`; tree arrows lift to `(s, g) → (t, g)` and chord `c` to
/// `(s, g) → (t, σ_c(g))`.
pub fn build_regular_cover(q: &Quiver, perms: &[Vec<usize>]) -> Result<Covering> {
    let collapse = Collapse::new(q);
    if perms.len() != collapse.chords.len() {
        return Err(Error::InvalidCovering(format!(
            "{} permutations for {} free generators",
            perms.len(),
            collapse.chords.len()
        )));
    }
    let m = perms.first().map_or(1, |p| p.len()).max(1);
    for p in perms {
        let set: BTreeSet<_> = p.iter().copied().collect();
        if p.len() != m || set.len() != m || p.iter().any(|&x| x >= m) {
            return Err(Error::InvalidCovering(
                "not a permutation of the fiber".into(),
            ));
        }
    }
    let mut orbit = BTreeSet::from([0usize]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(g) = queue.pop_front() {
        for p in perms {
            for h in [p[g], p.iter().position(|&x| x == g).unwrap()] {
                if orbit.insert(h) {
                    queue.push_back(h);
                }
            }
        }
    }
    if orbit.len() != m {
        return Err(Error::NonTransitive(format!(
            "orbit of 0 has {} of {m} points",
            orbit.len()
        )));
    }
    let n = q.vertex_count();
    let chord_perm: BTreeMap<ArrowId, &Vec<usize>> =
        collapse.chords.iter().copied().zip(perms).collect();
    let mut arrows = Vec::new();
    let mut arrow_map = Vec::new();
    for a in q.arrows() {
        for g in 0..m {
            let h = chord_perm.get(&a.id).map_or(g, |p| p[g]);
            arrows.push(Arrow {
                id: arrows.len(),
                src: a.src * m + g,
                tgt: a.tgt * m + h,
                label: Some(format!("{}{}", q.label(a.id), subscript(g))),
            });
            arrow_map.push(a.id);
        }
    }
    let total = Quiver::from_arrows(n * m, arrows)?;
    let vertex_map = (0..n * m).map(|x| x / m).collect();
    Covering::new(total, q.clone(), vertex_map, arrow_map)
}

fn subscript(g: usize) -> String {
    format!("_{g}")
}

/// Compares orbit mutation of `c` at `k` with mutation of the tracked
/// quiver `t`, whose homotopy must be the one induced by `c`. Succeeds when
/// the quotient of the orbit mutation has the same arrow counts as the
/// mutated tracked quiver and some arrow bijection (within each pair of
/// endpoints) makes the two homotopies agree on every closed reduced walk of
/// length at most 4.
pub fn check_orbit_compatibility(
    c: &Covering,
    k: VertexId,
    t: &TrackedQuiverWithHomotopy,
) -> Result<bool> {
    check_orbit_compatibility_sequence(c, &[k], t)
}

/// [`check_orbit_compatibility`] after each step of a sequence.
pub fn check_orbit_compatibility_sequence(
    c: &Covering,
    ks: &[VertexId],
    t: &TrackedQuiverWithHomotopy,
) -> Result<bool> {
    if t.base() != c.base() {
        return Err(Error::InvalidCovering(
            "tracked base differs from the covering base".into(),
        ));
    }
    let mut cov = c.clone();
    let mut tracked = t.clone();
    for &k in ks {
        cov = orbit_mutate(&cov, k)?;
        if !cov.is_weakly_admissible() {
            return Err(Error::NotWeaklyAdmissible(format!(
                "orbit mutation at {k} creates a loop"
            )));
        }
        tracked = tracked.mutate(k)?;
        if !homotopies_agree(&cov, &tracked)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn homotopies_agree(cov: &Covering, t: &TrackedQuiverWithHomotopy) -> Result<bool> {
    let q_cov = cov.base();
    let q_t = t.current();
    if !quiver_equal_fixed_vertices(q_cov, q_t) {
        return Ok(false);
    }
    let oracle = HomotopyOracle::cover(cov.clone())?;
    let n = q_t.vertex_count();
    let groups: Vec<(Vec<ArrowId>, Vec<ArrowId>)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (q_t.arrows_between(i, j), q_cov.arrows_between(i, j)))
        .filter(|(a, _)| !a.is_empty())
        .collect();
    let mut probes = Vec::new();
    let (comp, count) = q_t.components();
    for cidx in 0..count {
        let v = comp.iter().position(|&x| x == cidx).unwrap();
        probes.extend(closed_reduced_walks(q_t, v, 4));
    }
    let expected: Vec<Verdict> = probes.iter().map(|w| t.verdict(w)).collect::<Result<_>>()?;
    let mut choice: Vec<Vec<usize>> = groups.iter().map(|(a, _)| (0..a.len()).collect()).collect();
    loop {
        let mut map: HashMap<ArrowId, ArrowId> = HashMap::new();
        for ((ours, theirs), perm) in groups.iter().zip(&choice) {
            for (x, &p) in perm.iter().enumerate() {
                map.insert(ours[x], theirs[p]);
            }
        }
        let mut agree = true;
        for (w, &want) in probes.iter().zip(&expected) {
            let steps = w
                .steps()
                .iter()
                .map(|s| crate::walk::Step {
                    arrow: map[&s.arrow],
                    inverse: s.inverse,
                })
                .collect();
            let image = Walk::new(q_cov, w.start(), steps)?;
            if oracle.verdict(&image)? != want {
                agree = false;
                break;
            }
        }
        if agree {
            return Ok(true);
        }
        if !next_choice(&mut choice) {
            return Ok(false);
        }
    }
}

/// Advances a tuple of permutations in lexicographic order.
fn next_choice(choice: &mut [Vec<usize>]) -> bool {
    for perm in choice.iter_mut().rev() {
        if next_permutation(perm) {
            return true;
        }
        perm.sort_unstable();
    }
    false
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Coverings used throughout the examples.
pub mod named {
    use super::*;
    use crate::quiver::named::{three_double_cycles, two_cycle};

    const XOR1: [usize; 4] = [1, 0, 3, 2];
    const XOR2: [usize; 4] = [2, 3, 0, 1];

    /// The Klein four-group cover of
    /// [`three_double_cycles`](crate::quiver::named::three_double_cycles),
    /// 12 vertices and 24 arrows, built from the action of the chords
    /// `b, c, d, f`.
    pub fn klein_cover() -> Covering {
        let perms = vec![XOR1.to_vec(), XOR2.to_vec(), XOR1.to_vec(), XOR2.to_vec()];
        build_regular_cover(&three_double_cycles(), &perms).unwrap()
    }

    /// The hexagon over the 2-cycle, with deck group of order three.
    pub fn hexagon_cover() -> Covering {
        build_regular_cover(&two_cycle(), &[vec![1, 2, 0]]).unwrap()
    }

    /// The connected double cover of the 2-cycle.
    pub fn double_cover() -> Covering {
        build_regular_cover(&two_cycle(), &[vec![1, 0]]).unwrap()
    }
}
