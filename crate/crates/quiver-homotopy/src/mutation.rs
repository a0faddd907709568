//! Mutation of quivers with reduced homotopies.
//!
//! A [`TrackedQuiverWithHomotopy`] never re-presents its homotopy. It keeps
//! the quiver it started from (the *base*), an oracle for the homotopy on
//! the base, and for every current arrow a walk in the base that the arrow
//! stands for. The quotient groupoid of the base by the homotopy is the same
//! at every step of a mutation sequence, so a closed walk in the current
//! quiver lies in the current homotopy exactly when its translated base walk
//! lies in the base homotopy.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::oracle::{fundamental_group_rank, HomotopyOracle, Membership, Verdict};
use crate::quiver::{
    fz_premutate_traced, quiver_equal_fixed_vertices, ArrowId, ArrowOrigin, ExchangeMatrix, Quiver,
    VertexId,
};
use crate::walk::{closed_reduced_walks, Walk};

/// A quiver with homotopy reached from a base by mutations.
#[derive(Clone, Debug)]
pub struct TrackedQuiverWithHomotopy {
    current: Quiver,
    oracle: Arc<HomotopyOracle>,
    arrow_word: BTreeMap<ArrowId, Walk>,
    log: Vec<VertexId>,
}

/// One 2-cycle removed by [`TrackedQuiverWithHomotopy::delete_two_cycles`]:
/// `delta: i → j` followed by `gamma: j → i` lies in the homotopy.
#[derive(Clone, Debug)]
pub struct DeletedPair {
    pub i: VertexId,
    pub j: VertexId,
    pub gamma: ArrowId,
    pub delta: ArrowId,
    pub gamma_label: String,
    pub delta_label: String,
    /// The membership answer, with its witness, for the base walk of the cycle.
    pub membership: Membership,
}

impl TrackedQuiverWithHomotopy {
    /// Starts tracking `q` with a homotopy given by an oracle over `q`.
    pub fn new(q: &Quiver, oracle: HomotopyOracle) -> Result<Self> {
        if oracle.quiver() != q {
            return Err(Error::InvalidQuiver(
                "the oracle is defined on a different quiver".into(),
            ));
        }
        let words = q
            .arrows()
            .iter()
            .map(|a| Ok((a.id, Walk::arrow(q, a.id)?)))
            .collect::<Result<_>>()?;
        Self::with_words(q.clone(), Arc::new(oracle), words)
    }

    /// Tracks `current` whose arrows stand for the given walks in the
    /// oracle's quiver. Both quivers must have the same vertices.
    pub fn with_words(
        current: Quiver,
        oracle: Arc<HomotopyOracle>,
        arrow_word: BTreeMap<ArrowId, Walk>,
    ) -> Result<Self> {
        let base = oracle.quiver();
        if base.vertex_count() != current.vertex_count() {
            return Err(Error::InvalidQuiver(
                "base and current quiver have different vertices".into(),
            ));
        }
        if let Some(a) = current.arrows().iter().find(|a| a.src == a.tgt) {
            return Err(Error::LoopPresent(a.id));
        }
        for a in current.arrows() {
            let w = arrow_word
                .get(&a.id)
                .ok_or_else(|| Error::InvalidQuiver(format!("no base walk for arrow {}", a.id)))?;
            w.validate(base)?;
            if w.start() != a.src || w.end() != a.tgt {
                return Err(Error::NotComposable(format!(
                    "base walk of arrow {} does not run from {} to {}",
                    a.id, a.src, a.tgt
                )));
            }
        }
        let t = TrackedQuiverWithHomotopy {
            current,
            oracle,
            arrow_word,
            log: Vec::new(),
        };
        t.check_reduced()?;
        Ok(t)
    }

    pub fn current(&self) -> &Quiver {
        &self.current
    }

    pub fn base(&self) -> &Quiver {
        self.oracle.quiver()
    }

    pub fn oracle(&self) -> &HomotopyOracle {
        &self.oracle
    }

    pub fn shared_oracle(&self) -> Arc<HomotopyOracle> {
        self.oracle.clone()
    }

    /// Mutation directions applied so far.
    pub fn log(&self) -> &[VertexId] {
        &self.log
    }

    pub fn arrow_words(&self) -> &BTreeMap<ArrowId, Walk> {
        &self.arrow_word
    }

    /// The base walk an arrow of the current quiver stands for.
    pub fn word(&self, a: ArrowId) -> &Walk {
        &self.arrow_word[&a]
    }

    /// Translates a walk in the current quiver to a reduced base walk.
    pub fn translate(&self, w: &Walk) -> Result<Walk> {
        w.validate(&self.current)?;
        let mut out = Walk::trivial(w.start());
        for s in w.steps() {
            let piece = if s.inverse {
                self.word(s.arrow).inverse()
            } else {
                self.word(s.arrow).clone()
            };
            out = out.concat(&piece)?;
        }
        Ok(out.reduced())
    }

    /// Membership of a closed walk of the current quiver in the current homotopy.
    pub fn membership(&self, w: &Walk) -> Result<Membership> {
        self.oracle.membership(&self.translate(w)?)
    }

    pub fn verdict(&self, w: &Walk) -> Result<Verdict> {
        self.oracle.verdict(&self.translate(w)?)
    }

    /// Base walk of the 2-cycle `delta: i → j` then `gamma: j → i`.
    fn cycle_word(&self, delta: ArrowId, gamma: ArrowId) -> Walk {
        self.word(delta)
            .concat(self.word(gamma))
            .expect("arrows form a 2-cycle")
            .reduced()
    }

    /// Fails if some 2-cycle of the current quiver lies in the homotopy.
    pub fn check_reduced(&self) -> Result<()> {
        let n = self.current.vertex_count();
        for i in 0..n {
            for j in i + 1..n {
                for &delta in &self.current.arrows_between(i, j) {
                    for &gamma in &self.current.arrows_between(j, i) {
                        match self.oracle.verdict(&self.cycle_word(delta, gamma))? {
                            Verdict::In => return Err(Error::NotReduced(delta, gamma)),
                            Verdict::Unknown => {
                                return Err(Error::DecisionUnknown(format!(
                                    "2-cycle ({}, {})",
                                    self.current.label(delta),
                                    self.current.label(gamma)
                                )))
                            }
                            Verdict::NotIn => {}
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Pre-mutation at `k`: reversed arrows stand for inverse walks and each
    /// composite `[βα]` for the walk `α` then `β`.
    pub fn pre_mutate(&self, k: VertexId) -> Result<TrackedQuiverWithHomotopy> {
        let pre = fz_premutate_traced(&self.current, k)?;
        let mut words = BTreeMap::new();
        for (&id, origin) in &pre.origin {
            let w = match *origin {
                ArrowOrigin::Kept(a) => self.word(a).clone(),
                ArrowOrigin::Reversed(a) => self.word(a).inverse(),
                ArrowOrigin::Composite { outer, inner } => {
                    self.word(inner).then(self.word(outer))?
                }
            };
            words.insert(id, w);
        }
        Ok(TrackedQuiverWithHomotopy {
            current: pre.quiver,
            oracle: self.oracle.clone(),
            arrow_word: words,
            log: self.log.clone(),
        })
    }

    /// Greedy deletion of 2-cycles away from `k`: for each pair `i < j`,
    /// every arrow `γ: j → i` in ascending id order is paired with the
    /// lowest remaining `δ: i → j` such that `δ` followed by `γ` lies in the
    /// homotopy. Any undecided query aborts without a result.
    pub fn delete_two_cycles(
        &self,
        k: VertexId,
    ) -> Result<(TrackedQuiverWithHomotopy, Vec<DeletedPair>)> {
        let n = self.current.vertex_count();
        let mut deleted = Vec::new();
        let mut pairs = Vec::new();
        for i in (0..n).filter(|&v| v != k) {
            for j in (i + 1..n).filter(|&v| v != k) {
                let mut deltas = self.current.arrows_between(i, j);
                for gamma in self.current.arrows_between(j, i) {
                    let mut hit = None;
                    for (pos, &delta) in deltas.iter().enumerate() {
                        let m = self.oracle.membership(&self.cycle_word(delta, gamma))?;
                        match m.verdict() {
                            Verdict::In => {
                                hit = Some((pos, m));
                                break;
                            }
                            Verdict::NotIn => {}
                            Verdict::Unknown => {
                                return Err(Error::DecisionUnknown(format!(
                                    "2-cycle ({}, {}) between {i} and {j}",
                                    self.current.label(delta),
                                    self.current.label(gamma)
                                )))
                            }
                        }
                    }
                    if let Some((pos, membership)) = hit {
                        let delta = deltas.remove(pos);
                        deleted.extend([gamma, delta]);
                        pairs.push(DeletedPair {
                            i,
                            j,
                            gamma,
                            delta,
                            gamma_label: self.current.label(gamma),
                            delta_label: self.current.label(delta),
                            membership,
                        });
                    }
                }
            }
        }
        let current = self.current.without(&deleted);
        let arrow_word = self
            .arrow_word
            .iter()
            .filter(|(id, _)| current.contains(**id))
            .map(|(id, w)| (*id, w.clone()))
            .collect();
        Ok((
            TrackedQuiverWithHomotopy {
                current,
                oracle: self.oracle.clone(),
                arrow_word,
                log: self.log.clone(),
            },
            pairs,
        ))
    }

    /// Mutation at `k`, returning the deleted 2-cycles as well.
    pub fn mutate_with_log(
        &self,
        k: VertexId,
    ) -> Result<(TrackedQuiverWithHomotopy, Vec<DeletedPair>)> {
        let (mut t, pairs) = self.pre_mutate(k)?.delete_two_cycles(k)?;
        t.log.push(k);
        Ok((t, pairs))
    }

    pub fn mutate(&self, k: VertexId) -> Result<TrackedQuiverWithHomotopy> {
        Ok(self.mutate_with_log(k)?.0)
    }

    pub fn mutation_sequence(&self, ks: &[VertexId]) -> Result<TrackedQuiverWithHomotopy> {
        ks.iter().try_fold(self.clone(), |t, &k| t.mutate(k))
    }

    /// Whether mutating twice at `k` gives back this quiver with homotopy:
    /// the arrow counts agree and, for each ordered pair of vertices, the
    /// arrows can be matched so that matched arrows stand for walks that are
    /// equal modulo the homotopy.
    pub fn check_involution(&self, k: VertexId) -> Result<bool> {
        let back = self.mutate(k)?.mutate(k)?;
        if !quiver_equal_fixed_vertices(&back.current, &self.current) {
            return Ok(false);
        }
        let n = self.current.vertex_count();
        for i in 0..n {
            for j in 0..n {
                let ours = self.current.arrows_between(i, j);
                let theirs = back.current.arrows_between(i, j);
                let mut undecided = false;
                let mut adj = vec![Vec::new(); ours.len()];
                for (x, &a) in ours.iter().enumerate() {
                    for (y, &b) in theirs.iter().enumerate() {
                        let w = self.word(a).concat(&back.word(b).inverse())?.reduced();
                        match self.oracle.verdict(&w)? {
                            Verdict::In => adj[x].push(y),
                            Verdict::NotIn => {}
                            Verdict::Unknown => undecided = true,
                        }
                    }
                }
                if !has_perfect_matching(&adj, theirs.len()) {
                    if undecided {
                        return Err(Error::DecisionUnknown(format!("arrows from {i} to {j}")));
                    }
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Counts of closed reduced walks of each length `1..=4` in the current
    /// quiver, at the lowest vertex of each component, that lie in the
    /// homotopy. Invariant under renaming arrows.
    pub fn fingerprint(&self) -> Result<Vec<usize>> {
        let (comp, count) = self.current.components();
        let mut out = Vec::new();
        for c in 0..count {
            let v = comp.iter().position(|&x| x == c).expect("component vertex");
            let mut counts = [0usize; 4];
            for w in closed_reduced_walks(&self.current, v, 4) {
                match self.verdict(&w)? {
                    Verdict::In => counts[w.len() - 1] += 1,
                    Verdict::NotIn => {}
                    Verdict::Unknown => {
                        return Err(Error::DecisionUnknown(w.display(&self.current)))
                    }
                }
            }
            out.extend(counts);
        }
        Ok(out)
    }
}

/// Kuhn's augmenting-path test for a perfect matching of the left side.
fn has_perfect_matching(adj: &[Vec<usize>], right: usize) -> bool {
    if adj.len() != right {
        return false;
    }
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                if owner[v].is_none_or(|o| augment(o, adj, seen, owner)) {
                    owner[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; right];
    (0..adj.len()).all(|u| augment(u, adj, &mut vec![false; right], &mut owner))
}

/// Starts tracking `q` with the given oracle (see [`TrackedQuiverWithHomotopy::new`]).
pub fn init_tracked(q: &Quiver, oracle: HomotopyOracle) -> Result<TrackedQuiverWithHomotopy> {
    TrackedQuiverWithHomotopy::new(q, oracle)
}

/// A node of an explored mutation pattern.
#[derive(Clone, Debug)]
pub struct PatternNode {
    /// Mutation directions from the root.
    pub address: Vec<VertexId>,
    pub quiver: Quiver,
    /// Index of an earlier node with the same arrow counts and fingerprint,
    /// when deduplication is on. Such nodes are not expanded.
    pub duplicate_of: Option<usize>,
}

/// Breadth-first exploration of the mutation pattern up to `depth`, never
/// mutating twice in a row at the same vertex. With `dedup`, nodes are
/// identified by arrow counts and [`TrackedQuiverWithHomotopy::fingerprint`];
/// that identification is a heuristic and may merge distinct homotopies.
pub fn explore_pattern(
    t: &TrackedQuiverWithHomotopy,
    depth: usize,
    dedup: bool,
) -> Result<Vec<PatternNode>> {
    let n = t.current.vertex_count();
    let mut nodes = Vec::new();
    let mut seen: HashMap<(Vec<Vec<u32>>, Vec<usize>), usize> = HashMap::new();
    let mut queue = VecDeque::from([(Vec::new(), t.clone())]);
    while let Some((address, node)) = queue.pop_front() {
        let mut duplicate_of = None;
        if dedup {
            let key = (node.current.adjacency_matrix().0, node.fingerprint()?);
            match seen.get(&key) {
                Some(&i) => duplicate_of = Some(i),
                None => {
                    seen.insert(key, nodes.len());
                }
            }
        }
        let expand = duplicate_of.is_none() && address.len() < depth;
        if expand {
            for k in 0..n {
                if address.last() == Some(&k) {
                    continue;
                }
                let child = node.mutate(k).map_err(|e| match e {
                    Error::DecisionUnknown(m) => {
                        let mut a = address.clone();
                        a.push(k);
                        Error::DecisionUnknown(format!("at address {a:?}: {m}"))
                    }
                    other => other,
                })?;
                let mut a = address.clone();
                a.push(k);
                queue.push_back((a, child));
            }
        }
        nodes.push(PatternNode {
            address,
            quiver: node.current,
            duplicate_of,
        });
    }
    Ok(nodes)
}

/// Whether mutation with the full homotopy follows the matrix rule along
/// `ks`, starting from a 2-acyclic quiver.
pub fn maximal_homotopy_fz_equivalence(q: &Quiver, ks: &[VertexId]) -> Result<bool> {
    let mut t = TrackedQuiverWithHomotopy::new(q, HomotopyOracle::full(q))?;
    let mut b = q.exchange_matrix();
    for &k in ks {
        t = t.mutate(k)?;
        b = b.mutate(k);
        if !t.current.is_two_acyclic() || t.current.exchange_matrix() != b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every quiver reached from `q` by at most `depth` matrix
/// mutations has fundamental group rank at least that of `q`.
pub fn pi1_rank_monotonicity_check(q: &Quiver, depth: usize) -> Result<bool> {
    let rank = |q: &Quiver| fundamental_group_rank(q).iter().sum::<usize>();
    let r0 = rank(q);
    let start = q.exchange_matrix();
    let mut seen = vec![start.clone()];
    let mut frontier = vec![start];
    for _ in 0..depth {
        let mut next = Vec::new();
        for b in &frontier {
            for k in 0..b.size() {
                let m: ExchangeMatrix = b.mutate(k);
                if !seen.contains(&m) {
                    if rank(&m.to_quiver()?) < r0 {
                        return Ok(false);
                    }
                    seen.push(m.clone());
                    next.push(m);
                }
            }
        }
        frontier = next;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::named::*;

    #[test]
    fn two_cycle_with_its_own_cycle_is_not_reduced() {
        let q = two_cycle();
        let ab = Walk::right_to_left(&q, "b a").unwrap();
        let o = HomotopyOracle::generated(&q, vec![ab]).unwrap();
        assert!(matches!(init_tracked(&q, o), Err(Error::NotReduced(_, _))));
    }

    #[test]
    fn triangle_with_its_cycle_deletes_one_pair() {
        let q = oriented_triangle();
        let abc = Walk::right_to_left(&q, "a b c").unwrap();
        let t = init_tracked(&q, HomotopyOracle::generated(&q, vec![abc]).unwrap()).unwrap();
        let (m, pairs) = t.mutate_with_log(1).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(m.current().arrow_count(), 2);
        assert!(t.check_involution(1).unwrap());
    }

    #[test]
    fn matching() {
        assert!(has_perfect_matching(&[vec![0, 1], vec![0]], 2));
        assert!(!has_perfect_matching(&[vec![0], vec![0]], 2));
        assert!(has_perfect_matching(&[], 0));
    }
}
