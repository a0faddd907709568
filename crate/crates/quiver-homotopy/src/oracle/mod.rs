//! Homotopy-membership oracles.
//!
//! A homotopy is a normal subgroupoid `H` of the free groupoid of a quiver.
//! An oracle answers whether a closed walk lies in `H`, and every definite
//! answer comes with evidence that [`verify`] rechecks without trusting the
//! oracle's internal state.

pub mod free;
pub mod smith;

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::covering::Covering;
use crate::error::{Error, Result};
use crate::quiver::{ArrowId, Quiver, VertexId};
use crate::walk::{Step, Walk};

use free::{Conj, SearchOutcome, Simplified, Word};
use smith::{Lattice, Obstruction};

/// Node expansions allowed to the search of a generated oracle unless the
/// caller chooses otherwise. The environment variable `HQ_SEARCH_BOUND`
/// overrides it.
pub const DEFAULT_SEARCH_BOUND: usize = 100_000;

pub fn default_search_bound() -> usize {
    std::env::var("HQ_SEARCH_BOUND")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEARCH_BOUND)
}

/// How a homotopy is described.
#[derive(Clone, Debug)]
pub enum Homotopy {
    /// `H` is trivial: a walk is in `H` iff it reduces to a trivial walk.
    Trivial,
    /// `H` is the whole fundamental groupoid.
    Full,
    /// The normal closure of closed walks.
    Generated {
        generators: Vec<Walk>,
        search_bound: usize,
    },
    /// The image of the fundamental groupoid of a regular covering.
    FiniteCover { covering: Covering },
    /// The normal closure of closed walks together with all commutators.
    AbelianQuotient { generators: Vec<Walk> },
}

impl Homotopy {
    pub fn generated(generators: Vec<Walk>) -> Homotopy {
        Homotopy::Generated {
            generators,
            search_bound: default_search_bound(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Homotopy::Trivial => "trivial",
            Homotopy::Full => "full",
            Homotopy::Generated { .. } => "generated",
            Homotopy::FiniteCover { .. } => "cover",
            Homotopy::AbelianQuotient { .. } => "abelian",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    In,
    NotIn,
    Unknown,
}

/// `path · r^{±1} · path⁻¹`, where `r` is generator number `generator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjugate {
    pub path: Walk,
    pub generator: usize,
    pub inverse: bool,
}

/// Evidence for an `In` verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The full groupoid contains everything.
    Full,
    /// The walk reduces to the product (in traversal order) of the conjugates.
    Decomposition(Vec<Conjugate>),
    /// The abelianized walk is this integer combination of the abelianized
    /// generators.
    LatticeCombination(Vec<BigInt>),
    /// The lift starting at this total vertex is closed.
    ClosedLift { start: VertexId },
}

/// Evidence for a `NotIn` verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A homomorphism to a free group, given by the image of each arrow
    /// (indexed by arrow position), that kills every generator; the walk maps
    /// to the non-trivial reduced word `residual`.
    NonEmptyReducedWord { images: Vec<Word>, residual: Word },
    /// A functional on arrow coordinates (indexed by arrow position) that
    /// vanishes modulo `modulus` on every abelianized generator but not on
    /// the walk. Modulus zero means exact vanishing.
    AbelianObstruction {
        functional: Vec<BigInt>,
        modulus: BigInt,
    },
    /// The lift from `start` ends at `end != start`.
    NonClosedLift { start: VertexId, end: VertexId },
}

impl Certificate {
    pub fn tag(&self) -> &'static str {
        match self {
            Certificate::NonEmptyReducedWord { .. } => "NonEmptyReducedWord",
            Certificate::AbelianObstruction { .. } => "AbelianObstruction",
            Certificate::NonClosedLift { .. } => "NonClosedLift",
        }
    }
}

/// A three-valued membership answer with its evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    In(Witness),
    NotIn(Certificate),
    /// The search budget ran out; the payload says what was tried.
    Unknown(String),
}

impl Membership {
    pub fn verdict(&self) -> Verdict {
        match self {
            Membership::In(_) => Verdict::In,
            Membership::NotIn(_) => Verdict::NotIn,
            Membership::Unknown(_) => Verdict::Unknown,
        }
    }
}

/// A spanning forest and the induced identification of the fundamental
/// groupoid with free groups on the chords.
#[derive(Clone, Debug)]
pub struct Collapse {
    /// Tree arrows, ascending.
    pub tree: Vec<ArrowId>,
    /// Non-tree arrows, ascending; chord `i` is free generator `i`.
    pub chords: Vec<ArrowId>,
    chord_index: Vec<Option<usize>>,
    /// Root of the component of each vertex.
    root: Vec<VertexId>,
    /// Tree path from the root to each vertex.
    from_root: Vec<Walk>,
}

impl Collapse {
    /// BFS from the lowest vertex of each component, visiting incident
    /// arrows in ascending id order.
    pub fn new(q: &Quiver) -> Collapse {
        let n = q.vertex_count();
        let mut root = vec![usize::MAX; n];
        let mut from_root: Vec<Walk> = (0..n).map(Walk::trivial).collect();
        let mut in_tree = vec![false; q.arrow_count()];
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (pos, a) in q.arrows().iter().enumerate() {
            incident[a.src].push(pos);
            if a.tgt != a.src {
                incident[a.tgt].push(pos);
            }
        }
        for start in 0..n {
            if root[start] != usize::MAX {
                continue;
            }
            root[start] = start;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &pos in &incident[v] {
                    let a = &q.arrows()[pos];
                    let (other, step) = if a.src == v {
                        (a.tgt, Step::forward(a.id))
                    } else {
                        (a.src, Step::backward(a.id))
                    };
                    if root[other] != usize::MAX {
                        continue;
                    }
                    root[other] = start;
                    in_tree[pos] = true;
                    let mut steps = from_root[v].steps().to_vec();
                    steps.push(step);
                    from_root[other] = Walk::new(q, start, steps).expect("tree path");
                    queue.push_back(other);
                }
            }
        }
        let mut tree = Vec::new();
        let mut chords = Vec::new();
        let mut chord_index = vec![None; q.arrow_count()];
        for (pos, a) in q.arrows().iter().enumerate() {
            if in_tree[pos] {
                tree.push(a.id);
            } else {
                chord_index[pos] = Some(chords.len());
                chords.push(a.id);
            }
        }
        Collapse {
            tree,
            chords,
            chord_index,
            root,
            from_root,
        }
    }

    pub fn root(&self, v: VertexId) -> VertexId {
        self.root[v]
    }

    /// The word of a walk in the chord generators.
    pub fn word(&self, q: &Quiver, w: &Walk) -> Word {
        let letters: Word = w
            .steps()
            .iter()
            .filter_map(|s| {
                let pos = q.position(s.arrow)?;
                self.chord_index[pos].map(|c| free::letter(c, s.inverse))
            })
            .collect();
        free::reduce([&letters[..]])
    }

    /// The closed walk at the root of `v`'s component that a chord word stands for.
    pub fn walk_of(&self, q: &Quiver, word: &[free::Letter], v: VertexId) -> Walk {
        let root = self.root[v];
        let mut steps = Vec::new();
        for &l in word {
            let c = self.chords[free::generator_of(l)];
            let a = q.arrow(c).expect("chord exists");
            let loop_walk = self.from_root[a.src]
                .concat(&Walk::arrow(q, c).expect("chord walk"))
                .and_then(|w| w.concat(&self.from_root[a.tgt].inverse()))
                .expect("chord loop");
            let piece = if l > 0 {
                loop_walk
            } else {
                loop_walk.inverse()
            };
            steps.extend_from_slice(piece.steps());
        }
        Walk::new(q, root, steps)
            .expect("chord word walk")
            .reduced()
    }

    /// Tree path from the component root to `v`.
    pub fn tree_path(&self, v: VertexId) -> &Walk {
        &self.from_root[v]
    }

    /// The closed walk at the root corresponding to chord `i`.
    pub fn chord_loop(&self, q: &Quiver, i: usize) -> Walk {
        self.walk_of(q, &[free::letter(i, false)], q.src(self.chords[i]))
    }

    /// Image of every arrow (by position) in the free group on the chords.
    pub fn arrow_images(&self) -> Vec<Word> {
        self.chord_index
            .iter()
            .map(|c| c.map_or_else(Word::new, |c| vec![free::letter(c, false)]))
            .collect()
    }
}

/// Arrows of a spanning forest: BFS from vertex 0 (then from the lowest
/// unreached vertex), lowest arrow id first.
pub fn spanning_tree(q: &Quiver) -> Vec<ArrowId> {
    Collapse::new(q).tree
}

/// Rank of the fundamental group of each connected component.
pub fn fundamental_group_rank(q: &Quiver) -> Vec<usize> {
    let (comp, count) = q.components();
    let mut vertices = vec![0usize; count];
    let mut arrows = vec![0usize; count];
    for &c in &comp {
        vertices[c] += 1;
    }
    for a in q.arrows() {
        arrows[comp[a.src]] += 1;
    }
    (0..count).map(|c| arrows[c] + 1 - vertices[c]).collect()
}

/// Signed arrow counts of a walk, indexed by arrow position.
pub fn abelianize(q: &Quiver, w: &Walk) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); q.arrow_count()];
    for s in w.steps() {
        if let Some(pos) = q.position(s.arrow) {
            v[pos] += s.sign();
        }
    }
    v
}

#[derive(Clone, Debug)]
struct GeneratedBackend {
    collapse: Collapse,
    simplified: Simplified,
    images: Vec<Word>,
    lattice: Lattice,
    search_bound: usize,
}

#[derive(Clone, Debug)]
enum Backend {
    Full,
    Generated(Box<GeneratedBackend>),
    Cover,
    Abelian(Lattice),
}

/// A compiled homotopy on a fixed quiver. Immutable; queries take `&self`.
#[derive(Clone, Debug)]
pub struct HomotopyOracle {
    quiver: Quiver,
    homotopy: Homotopy,
    /// Reduced generator walks (empty for trivial, full and cover).
    generators: Vec<Walk>,
    backend: Backend,
}

impl HomotopyOracle {
    pub fn new(q: &Quiver, homotopy: Homotopy) -> Result<HomotopyOracle> {
        let mut generators = Vec::new();
        let backend = match &homotopy {
            Homotopy::Full => Backend::Full,
            Homotopy::Trivial => Backend::Generated(Box::new(generated(q, &[], 0))),
            Homotopy::Generated {
                generators: g,
                search_bound,
            } => {
                generators = check_generators(q, g)?;
                Backend::Generated(Box::new(generated(q, &generators, *search_bound)))
            }
            Homotopy::AbelianQuotient { generators: g } => {
                generators = check_generators(q, g)?;
                let cols = generators.iter().map(|w| abelianize(q, w)).collect();
                Backend::Abelian(Lattice::new(q.arrow_count(), cols))
            }
            Homotopy::FiniteCover { covering } => {
                if covering.base() != q {
                    return Err(Error::InvalidCovering(
                        "base differs from the oracle's quiver".into(),
                    ));
                }
                if !covering.is_regular() {
                    return Err(Error::NotRegular);
                }
                Backend::Cover
            }
        };
        Ok(HomotopyOracle {
            quiver: q.clone(),
            homotopy,
            generators,
            backend,
        })
    }

    pub fn trivial(q: &Quiver) -> HomotopyOracle {
        HomotopyOracle::new(q, Homotopy::Trivial).expect("trivial oracle")
    }

    pub fn full(q: &Quiver) -> HomotopyOracle {
        HomotopyOracle::new(q, Homotopy::Full).expect("full oracle")
    }

    /// Normal closure of the given closed walks, default search budget.
    pub fn generated(q: &Quiver, generators: Vec<Walk>) -> Result<HomotopyOracle> {
        HomotopyOracle::new(q, Homotopy::generated(generators))
    }

    pub fn abelian(q: &Quiver, generators: Vec<Walk>) -> Result<HomotopyOracle> {
        HomotopyOracle::new(q, Homotopy::AbelianQuotient { generators })
    }

    pub fn cover(covering: Covering) -> Result<HomotopyOracle> {
        let q = covering.base().clone();
        HomotopyOracle::new(&q, Homotopy::FiniteCover { covering })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn homotopy(&self) -> &Homotopy {
        &self.homotopy
    }

    /// The generator walks after reduction.
    pub fn generators(&self) -> &[Walk] {
        &self.generators
    }

    /// `true` unless the oracle may answer `Unknown`.
    pub fn is_complete(&self) -> bool {
        match &self.backend {
            Backend::Generated(g) => g.simplified.is_free(),
            _ => true,
        }
    }

    /// Decides whether the closed walk `w` lies in `H`, with evidence.
    pub fn membership(&self, w: &Walk) -> Result<Membership> {
        self.decide(w, true)
    }

    /// Like [`HomotopyOracle::membership`] but may skip building evidence.
    pub fn verdict(&self, w: &Walk) -> Result<Verdict> {
        Ok(self.decide(w, false)?.verdict())
    }

    /// `Ok(true)` for `In`, `Ok(false)` for `NotIn`, `DecisionUnknown` otherwise.
    pub fn contains(&self, w: &Walk) -> Result<bool> {
        match self.verdict(w)? {
            Verdict::In => Ok(true),
            Verdict::NotIn => Ok(false),
            Verdict::Unknown => Err(Error::DecisionUnknown(w.display(&self.quiver))),
        }
    }

    fn decide(&self, w: &Walk, evidence: bool) -> Result<Membership> {
        w.validate(&self.quiver)?;
        if !w.is_closed() {
            return Err(Error::NotClosed);
        }
        let w = w.reduced();
        Ok(match &self.backend {
            Backend::Full => Membership::In(Witness::Full),
            Backend::Cover => {
                let Homotopy::FiniteCover { covering } = &self.homotopy else {
                    unreachable!()
                };
                let start = covering.fiber(w.start())[0];
                let end = covering.lift_end(start, &w)?;
                if end == start {
                    Membership::In(Witness::ClosedLift { start })
                } else {
                    Membership::NotIn(Certificate::NonClosedLift { start, end })
                }
            }
            Backend::Abelian(lattice) => match lattice.solve(&abelianize(&self.quiver, &w)) {
                Ok(c) => Membership::In(Witness::LatticeCombination(c)),
                Err(Obstruction {
                    functional,
                    modulus,
                }) => Membership::NotIn(Certificate::AbelianObstruction {
                    functional,
                    modulus,
                }),
            },
            Backend::Generated(g) => self.decide_generated(g, &w, evidence),
        })
    }

    fn decide_generated(&self, g: &GeneratedBackend, w: &Walk, evidence: bool) -> Membership {
        let q = &self.quiver;
        let word = g.collapse.word(q, w);
        if word.is_empty() {
            return Membership::In(Witness::Decomposition(Vec::new()));
        }
        if g.simplified.is_free() {
            let residual = g.simplified.image(&word);
            if !residual.is_empty() {
                return Membership::NotIn(Certificate::NonEmptyReducedWord {
                    images: g.images.clone(),
                    residual,
                });
            }
            if !evidence {
                return Membership::In(Witness::Decomposition(Vec::new()));
            }
            let (expr, rest) = g.simplified.rewrite(&word);
            debug_assert!(rest.is_empty());
            return Membership::In(Witness::Decomposition(self.conjugates(g, &expr, w.start())));
        }
        if let Err(Obstruction {
            functional,
            modulus,
        }) = g.lattice.solve(&abelianize(q, w))
        {
            return Membership::NotIn(Certificate::AbelianObstruction {
                functional,
                modulus,
            });
        }
        let (mut expr, rest) = g.simplified.rewrite(&word);
        match free::search_trivial(&rest, &g.simplified.residual, g.search_bound) {
            SearchOutcome::Found(more) => {
                expr.extend(more);
                Membership::In(Witness::Decomposition(self.conjugates(g, &expr, w.start())))
            }
            SearchOutcome::Exhausted(n) => Membership::Unknown(format!(
                "search for {} stopped after {n} expansions",
                w.display(q)
            )),
        }
    }

    /// Converts chord-level conjugates into walk-level conjugates at `x`.
    fn conjugates(&self, g: &GeneratedBackend, expr: &[Conj], x: VertexId) -> Vec<Conjugate> {
        let q = &self.quiver;
        let back = g.collapse.tree_path(x).inverse();
        expr.iter()
            .map(|c| {
                let r = &self.generators[c.rel];
                let path = back
                    .concat(&g.collapse.walk_of(q, &c.by, x))
                    .and_then(|p| p.concat(g.collapse.tree_path(r.start())))
                    .expect("conjugating path")
                    .reduced();
                Conjugate {
                    path,
                    generator: c.rel,
                    inverse: c.inv,
                }
            })
            .collect()
    }
}

fn check_generators(q: &Quiver, generators: &[Walk]) -> Result<Vec<Walk>> {
    generators
        .iter()
        .map(|w| {
            w.validate(q)?;
            if !w.is_closed() {
                return Err(Error::NotClosed);
            }
            Ok(w.reduced())
        })
        .collect()
}

fn generated(q: &Quiver, generators: &[Walk], search_bound: usize) -> GeneratedBackend {
    let collapse = Collapse::new(q);
    let relators: Vec<Word> = generators.iter().map(|w| collapse.word(q, w)).collect();
    let simplified = Simplified::new(collapse.chords.len(), relators);
    let gen_images = simplified.generator_images();
    let images = collapse
        .arrow_images()
        .into_iter()
        .map(|im| match im.first() {
            Some(&l) => gen_images[free::generator_of(l)].clone(),
            None => Word::new(),
        })
        .collect();
    let cols = generators.iter().map(|w| abelianize(q, w)).collect();
    let lattice = Lattice::new(q.arrow_count(), cols);
    GeneratedBackend {
        collapse,
        simplified,
        images,
        lattice,
        search_bound,
    }
}

/// Membership query as a free function.
pub fn membership(oracle: &HomotopyOracle, w: &Walk) -> Result<Membership> {
    oracle.membership(w)
}

/// Rechecks the evidence of a membership answer from scratch: replays
/// decompositions, re-lifts through the covering arrow by arrow, and
/// evaluates functionals and homomorphisms on the generators directly.
/// `Unknown` answers verify trivially.
pub fn verify(oracle: &HomotopyOracle, w: &Walk, m: &Membership) -> bool {
    let q = oracle.quiver();
    if w.validate(q).is_err() || !w.is_closed() {
        return false;
    }
    let gens = oracle.generators();
    match (oracle.homotopy(), m) {
        (_, Membership::Unknown(_)) => !oracle.is_complete(),
        (Homotopy::Full, Membership::In(Witness::Full)) => true,
        (
            Homotopy::Trivial | Homotopy::Generated { .. },
            Membership::In(Witness::Decomposition(cs)),
        ) => {
            let mut acc = Walk::trivial(w.start());
            for c in cs {
                let Some(r) = gens.get(c.generator) else {
                    return false;
                };
                let r = if c.inverse { r.inverse() } else { r.clone() };
                let piece = c.path.concat(&r).and_then(|p| p.concat(&c.path.inverse()));
                match piece.and_then(|p| acc.concat(&p)) {
                    Ok(next) => acc = next.reduced(),
                    Err(_) => return false,
                }
            }
            acc == w.reduced()
        }
        (
            Homotopy::Trivial | Homotopy::Generated { .. },
            Membership::NotIn(Certificate::NonEmptyReducedWord { images, residual }),
        ) => {
            if images.len() != q.arrow_count() {
                return false;
            }
            let eval = |walk: &Walk| {
                let parts: Vec<Word> = walk
                    .steps()
                    .iter()
                    .map(|s| {
                        let im = &images[q.position(s.arrow).expect("validated")];
                        if s.inverse {
                            free::inverse(im)
                        } else {
                            im.clone()
                        }
                    })
                    .collect();
                free::reduce(parts.iter().map(|p| &p[..]))
            };
            gens.iter().all(|g| eval(g).is_empty()) && !residual.is_empty() && eval(w) == *residual
        }
        (
            Homotopy::Generated { .. } | Homotopy::AbelianQuotient { .. },
            Membership::NotIn(Certificate::AbelianObstruction {
                functional,
                modulus,
            }),
        ) => {
            let cols: Vec<Vec<BigInt>> = gens.iter().map(|g| abelianize(q, g)).collect();
            Obstruction {
                functional: functional.clone(),
                modulus: modulus.clone(),
            }
            .separates(&cols, &abelianize(q, w))
        }
        (Homotopy::AbelianQuotient { .. }, Membership::In(Witness::LatticeCombination(c))) => {
            if c.len() != gens.len() {
                return false;
            }
            let mut sum = vec![BigInt::zero(); q.arrow_count()];
            for (ci, g) in c.iter().zip(gens) {
                for (s, x) in sum.iter_mut().zip(abelianize(q, g)) {
                    *s += ci * x;
                }
            }
            sum == abelianize(q, w)
        }
        (Homotopy::FiniteCover { covering }, Membership::In(Witness::ClosedLift { .. }))
        | (
            Homotopy::FiniteCover { covering },
            Membership::NotIn(Certificate::NonClosedLift { .. }),
        ) => {
            let expect_closed = m.verdict() == Verdict::In;
            covering
                .fiber(w.start())
                .iter()
                .all(|&x| naive_lift(covering, x, w).is_some_and(|end| (end == x) == expect_closed))
        }
        _ => false,
    }
}

/// Lift by scanning the total arrows at every step.
fn naive_lift(c: &Covering, start: VertexId, w: &Walk) -> Option<VertexId> {
    let total = c.total();
    let mut at = start;
    for s in w.steps() {
        let over: Vec<_> = total
            .arrows()
            .iter()
            .enumerate()
            .filter(|(pos, a)| {
                c.arrow_map()[*pos] == s.arrow && if s.inverse { a.tgt == at } else { a.src == at }
            })
            .collect();
        if over.len() != 1 {
            return None;
        }
        let a = over[0].1;
        at = if s.inverse { a.src } else { a.tgt };
    }
    Some(at)
}

/// Whether `π(Q)/H` has exponent at most two: every chord loop squares into
/// `H` and every two chord loops of a component commute modulo `H`.
/// `None` when some query is undecided.
pub fn exponent_two_quotient_check(oracle: &HomotopyOracle) -> Option<bool> {
    let q = oracle.quiver();
    let collapse = Collapse::new(q);
    let loops: Vec<Walk> = (0..collapse.chords.len())
        .map(|i| collapse.chord_loop(q, i))
        .collect();
    let mut unknown = false;
    let mut check = |w: Walk| match oracle.verdict(&w) {
        Ok(Verdict::In) => Some(true),
        Ok(Verdict::NotIn) => Some(false),
        _ => {
            unknown = true;
            None
        }
    };
    for g in &loops {
        if check(g.power(2).expect("closed")) == Some(false) {
            return Some(false);
        }
    }
    for (i, a) in loops.iter().enumerate() {
        for b in &loops[i + 1..] {
            if a.start() != b.start() {
                continue;
            }
            let comm = a
                .concat(b)
                .and_then(|x| x.concat(&a.inverse()))
                .and_then(|x| x.concat(&b.inverse()))
                .expect("loops at the same root")
                .reduced();
            if check(comm) == Some(false) {
                return Some(false);
            }
        }
    }
    if unknown {
        None
    } else {
        Some(true)
    }
}

/// A 2-dimensional cell complex: the quiver as a graph plus one polygon
/// glued along each closed walk.
#[derive(Clone, Debug)]
pub struct CellComplex2 {
    pub quiver: Quiver,
    pub faces: Vec<Walk>,
}

/// Presentation of the fundamental group of one component of a 2-complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi1Component {
    /// Lowest vertex of the component.
    pub base_vertex: VertexId,
    /// Generators left after Tietze elimination.
    pub generators: usize,
    /// Relators left after Tietze elimination (letters `±(i+1)` refer to the
    /// `i`-th surviving generator).
    pub relators: Vec<Word>,
    /// Invariant factors of the abelianization greater than one.
    pub torsion: Vec<BigInt>,
    /// Rank of the free part of the abelianization.
    pub betti_1: usize,
}

impl Pi1Component {
    /// The rank if the presentation is visibly free.
    pub fn free_rank(&self) -> Option<usize> {
        self.relators.is_empty().then_some(self.generators)
    }
}

pub fn build_complex(q: &Quiver, faces: &[Walk]) -> Result<CellComplex2> {
    let faces = check_generators(q, faces)?;
    Ok(CellComplex2 {
        quiver: q.clone(),
        faces,
    })
}

impl CellComplex2 {
    pub fn euler_characteristic(&self) -> i64 {
        self.quiver.vertex_count() as i64 - self.quiver.arrow_count() as i64
            + self.faces.len() as i64
    }

    /// One simplified presentation per connected component.
    pub fn fundamental_group(&self) -> Vec<Pi1Component> {
        let q = &self.quiver;
        let collapse = Collapse::new(q);
        let relators: Vec<Word> = self.faces.iter().map(|w| collapse.word(q, w)).collect();
        let simplified = Simplified::new(collapse.chords.len(), relators);
        let surviving = simplified.surviving();
        let renumber = |l: free::Letter| {
            let g = surviving
                .iter()
                .position(|&s| s == free::generator_of(l))
                .expect("surviving");
            free::letter(g, l < 0)
        };
        let (comp, count) = q.components();
        (0..count)
            .map(|c| {
                let base_vertex = comp
                    .iter()
                    .position(|&x| x == c)
                    .expect("non-empty component");
                let gens: Vec<usize> = surviving
                    .iter()
                    .enumerate()
                    .filter(|(_, &g)| comp[q.src(collapse.chords[g])] == c)
                    .map(|(i, _)| i)
                    .collect();
                let relators: Vec<Word> = simplified
                    .residual
                    .iter()
                    .map(|r| r.word.iter().map(|&l| renumber(l)).collect::<Word>())
                    .filter(|r| {
                        r.first()
                            .is_some_and(|&l| gens.contains(&free::generator_of(l)))
                    })
                    .map(|r| {
                        r.iter()
                            .map(|&l| {
                                let i = gens
                                    .iter()
                                    .position(|&g| g == free::generator_of(l))
                                    .unwrap();
                                free::letter(i, l < 0)
                            })
                            .collect()
                    })
                    .collect();
                let cols: Vec<Vec<BigInt>> = relators
                    .iter()
                    .map(|r| {
                        let mut v = vec![BigInt::zero(); gens.len()];
                        for &l in r {
                            v[free::generator_of(l)] += if l > 0 { 1 } else { -1 };
                        }
                        v
                    })
                    .collect();
                let lattice = Lattice::new(gens.len(), cols);
                let torsion = lattice
                    .invariant_factors()
                    .iter()
                    .filter(|d| **d > BigInt::from(1))
                    .cloned()
                    .collect();
                Pi1Component {
                    base_vertex,
                    generators: gens.len(),
                    relators,
                    torsion,
                    betti_1: gens.len() - lattice.rank(),
                }
            })
            .collect()
    }
}
