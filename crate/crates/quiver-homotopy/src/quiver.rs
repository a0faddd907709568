//! Finite quivers with identified arrows, their matrices, and the purely
//! combinatorial Fomin–Zelevinsky (pre-)mutation.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Index of a vertex; vertices of a quiver are always `0..n`.
pub type VertexId = usize;
/// Identifier of an arrow, unique within a quiver and stable under the
/// operations that keep the arrow.
pub type ArrowId = usize;

/// Largest vertex count accepted by [`Quiver`].
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: ArrowId,
    pub src: VertexId,
    pub tgt: VertexId,
    pub label: Option<String>,
}

/// A finite multi-digraph whose arrows carry identities.
///
/// Arrows are kept sorted by id, so iteration order is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    n: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// A quiver with `n` vertices and no arrows.
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidQuiver(format!(
                "{n} vertices exceeds the limit of {MAX_VERTICES}"
            )));
        }
        Ok(Quiver {
            n,
            arrows: Vec::new(),
        })
    }

    /// Builds a quiver from `(src, tgt)` pairs; arrow ids are the positions.
    pub fn from_pairs(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut q = Quiver::new(n)?;
        for &(s, t) in pairs {
            q.add_arrow(s, t, None)?;
        }
        Ok(q)
    }

    /// Builds a quiver from `(label, src, tgt)` triples; arrow ids are the positions.
    pub fn from_labelled(n: usize, arrows: &[(&str, VertexId, VertexId)]) -> Result<Self> {
        let mut q = Quiver::new(n)?;
        for &(l, s, t) in arrows {
            q.add_arrow(s, t, Some(l.to_string()))?;
        }
        Ok(q)
    }

    /// Builds a quiver from explicit arrows, validating ids and endpoints.
    pub fn from_arrows(n: usize, mut arrows: Vec<Arrow>) -> Result<Self> {
        let q = Quiver::new(n)?;
        arrows.sort_by_key(|a| a.id);
        for w in arrows.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::InvalidQuiver(format!(
                    "duplicate arrow id {}",
                    w[0].id
                )));
            }
        }
        for a in &arrows {
            if a.src >= n || a.tgt >= n {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {} has an endpoint outside 0..{n}",
                    a.id
                )));
            }
        }
        Ok(Quiver { arrows, ..q })
    }

    /// Appends an arrow with a fresh id and returns that id.
    pub fn add_arrow(
        &mut self,
        src: VertexId,
        tgt: VertexId,
        label: Option<String>,
    ) -> Result<ArrowId> {
        for v in [src, tgt] {
            if v >= self.n {
                return Err(Error::VertexOutOfRange(v));
            }
        }
        let id = self.next_arrow_id();
        self.arrows.push(Arrow {
            id,
            src,
            tgt,
            label,
        });
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Smallest id larger than every id in use.
    pub fn next_arrow_id(&self) -> ArrowId {
        self.arrows.last().map_or(0, |a| a.id + 1)
    }

    pub fn arrow(&self, id: ArrowId) -> Option<&Arrow> {
        self.arrows
            .binary_search_by_key(&id, |a| a.id)
            .ok()
            .map(|i| &self.arrows[i])
    }

    /// Position of an arrow in [`Quiver::arrows`].
    pub fn position(&self, id: ArrowId) -> Option<usize> {
        self.arrows.binary_search_by_key(&id, |a| a.id).ok()
    }

    pub fn contains(&self, id: ArrowId) -> bool {
        self.position(id).is_some()
    }

    /// Source of an arrow. Panics on an unknown id.
    pub fn src(&self, id: ArrowId) -> VertexId {
        self.arrow(id).expect("unknown arrow").src
    }

    /// Target of an arrow. Panics on an unknown id.
    pub fn tgt(&self, id: ArrowId) -> VertexId {
        self.arrow(id).expect("unknown arrow").tgt
    }

    /// Display label: the stored label, or `a<id>` when there is none.
    pub fn label(&self, id: ArrowId) -> String {
        match self.arrow(id) {
            Some(Arrow { label: Some(l), .. }) => l.clone(),
            _ => format!("a{id}"),
        }
    }

    /// Arrow whose stored label equals `label`.
    pub fn find(&self, label: &str) -> Option<ArrowId> {
        self.arrows
            .iter()
            .find(|a| a.label.as_deref() == Some(label))
            .map(|a| a.id)
    }

    /// Like [`Quiver::find`] but panics when the label is missing; meant for
    /// tests and examples.
    pub fn id(&self, label: &str) -> ArrowId {
        self.find(label)
            .unwrap_or_else(|| panic!("no arrow labelled {label}"))
    }

    /// Ids of the arrows `i → j`, ascending.
    pub fn arrows_between(&self, i: VertexId, j: VertexId) -> Vec<ArrowId> {
        self.arrows
            .iter()
            .filter(|a| a.src == i && a.tgt == j)
            .map(|a| a.id)
            .collect()
    }

    pub fn is_loop_free(&self) -> bool {
        self.arrows.iter().all(|a| a.src != a.tgt)
    }

    /// No loops and no pair of opposite arrows.
    pub fn is_two_acyclic(&self) -> bool {
        let p = self.adjacency_matrix();
        (0..self.n).all(|i| p.0[i][i] == 0 && (0..i).all(|j| p.0[i][j] == 0 || p.0[j][i] == 0))
    }

    pub fn adjacency_matrix(&self) -> AdjacencyMatrix {
        let mut p = vec![vec![0u32; self.n]; self.n];
        for a in &self.arrows {
            p[a.src][a.tgt] += 1;
        }
        AdjacencyMatrix(p)
    }

    /// `b[i][j] = p[j][i] - p[i][j]`. Opposite arrows cancel, so this loses
    /// information on quivers with 2-cycles.
    pub fn exchange_matrix(&self) -> ExchangeMatrix {
        self.adjacency_matrix().exchange()
    }

    /// The quiver with every arrow reversed (ids and labels kept).
    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                src: a.tgt,
                tgt: a.src,
                ..a.clone()
            })
            .collect();
        Quiver { n: self.n, arrows }
    }

    /// The quiver without the given arrows.
    pub fn without(&self, removed: &[ArrowId]) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .filter(|a| !removed.contains(&a.id))
            .cloned()
            .collect();
        Quiver { n: self.n, arrows }
    }

    /// Connected component index of every vertex (underlying undirected
    /// graph), numbered by smallest vertex, plus the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.n];
        let mut adj = vec![Vec::new(); self.n];
        for a in &self.arrows {
            adj[a.src].push(a.tgt);
            adj[a.tgt].push(a.src);
        }
        let mut count = 0;
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Renumbers the arrows `0..m` in their current order, keeping labels.
    pub fn renumbered(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| Arrow {
                id: i,
                label: Some(self.label(a.id)),
                ..a.clone()
            })
            .collect();
        Quiver { n: self.n, arrows }
    }
}

impl fmt::Display for Quiver {
    /// One arrow per entry, `label:src->tgt`, vertices printed 0-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.arrows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}->{}", self.label(a.id), a.src, a.tgt)?;
        }
        write!(f, "}}")
    }
}

/// `p[i][j]` is the number of arrows `i → j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdjacencyMatrix(pub Vec<Vec<u32>>);

impl AdjacencyMatrix {
    pub fn exchange(&self) -> ExchangeMatrix {
        let n = self.0.len();
        let mut b = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                b[i][j] = self.0[j][i] as i64 - self.0[i][j] as i64;
            }
        }
        ExchangeMatrix(b)
    }

    pub fn get(&self, i: VertexId, j: VertexId) -> u32 {
        self.0[i][j]
    }
}

/// Skew-symmetric exchange matrix, `b[i][j] = p[j][i] - p[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix(pub Vec<Vec<i64>>);

impl ExchangeMatrix {
    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.size();
        self.0.iter().all(|r| r.len() == n)
            && (0..n).all(|i| (0..n).all(|j| self.0[i][j] == -self.0[j][i]))
    }

    /// Matrix mutation at `k`:
    /// `b'_ij = -b_ij` if `k ∈ {i, j}`, otherwise
    /// `b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2`.
    pub fn mutate(&self, k: VertexId) -> ExchangeMatrix {
        let n = self.size();
        let b = &self.0;
        let mut out = b.clone();
        for i in 0..n {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
                };
            }
        }
        ExchangeMatrix(out)
    }

    /// The 2-acyclic quiver realising the matrix: `b[j][i]` arrows `i → j`
    /// whenever it is positive. Arrows are ordered by `(i, j)`.
    pub fn to_quiver(&self) -> Result<Quiver> {
        let n = self.size();
        let mut q = Quiver::new(n)?;
        for i in 0..n {
            for j in 0..n {
                for _ in 0..self.0[j][i].max(0) {
                    q.add_arrow(i, j, None)?;
                }
            }
        }
        Ok(q)
    }

    /// Number of arrows of the realising 2-acyclic quiver.
    pub fn arrow_count(&self) -> u64 {
        let n = self.size();
        (0..n)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| self.0[i][j].unsigned_abs())
            .sum()
    }
}

/// Where an arrow of a pre-mutation comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArrowOrigin {
    /// Not incident to the mutation vertex; same id as before.
    Kept(ArrowId),
    /// The reversal `α★` of an arrow incident to the mutation vertex.
    Reversed(ArrowId),
    /// The composite `[outer inner]`, traversing `inner` into the mutation
    /// vertex and then `outer` out of it.
    Composite { outer: ArrowId, inner: ArrowId },
}

/// Result of [`fz_premutate_traced`]: the pre-mutation plus the origin of
/// each of its arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreMutation {
    pub quiver: Quiver,
    pub origin: BTreeMap<ArrowId, ArrowOrigin>,
}

/// Fomin–Zelevinsky pre-mutation at `k`: for every `inner: i → k` and
/// `outer: k → j` with `i ≠ j` add the composite `[outer inner]: i → j`,
/// then reverse every arrow at `k`.
///
/// Kept and reversed arrows keep their ids; composites receive fresh ids in
/// ascending `(outer, inner)` order. Reversed arrows are labelled `α*` and
/// composites `[βα]`.
pub fn fz_premutate_traced(q: &Quiver, k: VertexId) -> Result<PreMutation> {
    premutate_set_traced(q, &[k])
}

/// Simultaneous pre-mutation at a set of pairwise non-adjacent vertices, as
/// in an orbit pre-mutation. With a single vertex this is
/// [`fz_premutate_traced`]. Composites whose endpoints coincide would be
/// loops and are skipped.
pub fn premutate_set_traced(q: &Quiver, ks: &[VertexId]) -> Result<PreMutation> {
    for &k in ks {
        if k >= q.vertex_count() {
            return Err(Error::VertexOutOfRange(k));
        }
    }
    if let Some(a) = q.arrows().iter().find(|a| a.src == a.tgt) {
        return Err(Error::LoopPresent(a.id));
    }
    let in_set = |v: VertexId| ks.contains(&v);
    if let Some(a) = q.arrows().iter().find(|a| in_set(a.src) && in_set(a.tgt)) {
        return Err(Error::InvalidQuiver(format!(
            "arrow {} joins two vertices that are mutated together",
            q.label(a.id)
        )));
    }
    let mut out = Quiver::new(q.vertex_count())?;
    let mut origin = BTreeMap::new();
    for a in q.arrows() {
        let (arrow, o) = if in_set(a.src) || in_set(a.tgt) {
            (
                Arrow {
                    id: a.id,
                    src: a.tgt,
                    tgt: a.src,
                    label: Some(format!("{}*", q.label(a.id))),
                },
                ArrowOrigin::Reversed(a.id),
            )
        } else {
            (a.clone(), ArrowOrigin::Kept(a.id))
        };
        origin.insert(a.id, o);
        out.arrows.push(arrow);
    }
    let outgoing: Vec<&Arrow> = q.arrows().iter().filter(|a| in_set(a.src)).collect();
    for outer in &outgoing {
        for inner in q.arrows().iter().filter(|a| a.tgt == outer.src) {
            if inner.src == outer.tgt {
                continue;
            }
            let id = out.add_arrow(
                inner.src,
                outer.tgt,
                Some(format!("[{}{}]", q.label(outer.id), q.label(inner.id))),
            )?;
            origin.insert(
                id,
                ArrowOrigin::Composite {
                    outer: outer.id,
                    inner: inner.id,
                },
            );
        }
    }
    Ok(PreMutation {
        quiver: out,
        origin,
    })
}

/// Fomin–Zelevinsky pre-mutation at `k` (see [`fz_premutate_traced`]).
pub fn fz_premutate(q: &Quiver, k: VertexId) -> Result<Quiver> {
    fz_premutate_traced(q, k).map(|p| p.quiver)
}

/// Matrix mutation, see [`ExchangeMatrix::mutate`].
pub fn fz_mutate_matrix(b: &ExchangeMatrix, k: VertexId) -> ExchangeMatrix {
    b.mutate(k)
}

/// Removes a maximal collection of 2-cycles, pairing the lowest ids first.
pub fn delete_all_two_cycles(q: &Quiver) -> Quiver {
    let n = q.vertex_count();
    let mut removed = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let forward = q.arrows_between(i, j);
            let backward = q.arrows_between(j, i);
            for (a, b) in forward.iter().zip(backward.iter()) {
                removed.push(*a);
                removed.push(*b);
            }
        }
    }
    q.without(&removed)
}

/// Fomin–Zelevinsky mutation of a loop-free quiver: pre-mutation followed by
/// deleting a maximal collection of 2-cycles.
pub fn fz_mutate(q: &Quiver, k: VertexId) -> Result<Quiver> {
    Ok(delete_all_two_cycles(&fz_premutate(q, k)?))
}

/// `true` iff the two quivers have the same number of arrows `i → j` for
/// every ordered pair of vertices.
pub fn quiver_equal_fixed_vertices(q1: &Quiver, q2: &Quiver) -> bool {
    q1.vertex_count() == q2.vertex_count() && q1.adjacency_matrix() == q2.adjacency_matrix()
}

/// Frequently used quivers.
pub mod named {
    use super::*;

    /// `a: 0 → 1`, `b: 1 → 0`.
    pub fn two_cycle() -> Quiver {
        Quiver::from_labelled(2, &[("a", 0, 1), ("b", 1, 0)]).unwrap()
    }

    /// The Markov quiver: `α1, α2: 0 → 1`, `β1, β2: 1 → 2`, `γ1, γ2: 2 → 0`.
    pub fn markov() -> Quiver {
        Quiver::from_labelled(
            3,
            &[
                ("α1", 0, 1),
                ("α2", 0, 1),
                ("β1", 1, 2),
                ("β2", 1, 2),
                ("γ1", 2, 0),
                ("γ2", 2, 0),
            ],
        )
        .unwrap()
    }

    /// Linearly oriented path `0 → 1 → … → n-1`.
    pub fn path(n: usize) -> Quiver {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Quiver::from_pairs(n, &pairs).unwrap()
    }

    /// Three 2-cycles on a triangle: `a: 0 → 1`, `b: 1 → 0`, `c: 1 → 2`,
    /// `d: 2 → 1`, `e: 0 → 2`, `f: 2 → 0`.
    pub fn three_double_cycles() -> Quiver {
        Quiver::from_labelled(
            3,
            &[
                ("a", 0, 1),
                ("b", 1, 0),
                ("c", 1, 2),
                ("d", 2, 1),
                ("e", 0, 2),
                ("f", 2, 0),
            ],
        )
        .unwrap()
    }

    /// The oriented 3-cycle with vertices
    /// `c: 0 → 1`, `b: 1 → 2`, `a: 2 → 0`.
    pub fn oriented_triangle() -> Quiver {
        Quiver::from_labelled(3, &[("c", 0, 1), ("b", 1, 2), ("a", 2, 0)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn loop_free_and_two_acyclic() {
        let empty = Quiver::new(0).unwrap();
        assert!(empty.is_loop_free() && empty.is_two_acyclic());
        let lp = Quiver::from_pairs(1, &[(0, 0)]).unwrap();
        assert!(!lp.is_loop_free());
        assert!(!lp.is_two_acyclic());
        assert!(two_cycle().is_loop_free());
        assert!(!two_cycle().is_two_acyclic());
        assert!(markov().is_two_acyclic());
    }

    #[test]
    fn matrices_of_a_single_arrow() {
        let q = path(2);
        assert_eq!(q.adjacency_matrix().0, vec![vec![0, 1], vec![0, 0]]);
        assert_eq!(q.exchange_matrix().0, vec![vec![0, -1], vec![1, 0]]);
    }

    #[test]
    fn markov_matrices() {
        let q = markov();
        let p = q.adjacency_matrix();
        assert_eq!((p.get(0, 1), p.get(1, 2), p.get(2, 0)), (2, 2, 2));
        let b = q.exchange_matrix();
        assert!(b.is_skew_symmetric());
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(b.0[i][j].abs(), 2);
                }
            }
        }
    }

    #[test]
    fn premutation_of_the_triangle() {
        let q = oriented_triangle();
        let p = fz_premutate(&q, 1).unwrap();
        let mut seen: Vec<String> = p
            .arrows()
            .iter()
            .map(|a| format!("{}:{}->{}", p.label(a.id), a.src, a.tgt))
            .collect();
        seen.sort();
        assert_eq!(seen, vec!["[bc]:0->2", "a:2->0", "b*:2->1", "c*:1->0"]);
    }

    #[test]
    fn premutation_at_isolated_vertex_is_identity() {
        let q = Quiver::from_pairs(3, &[(0, 1)]).unwrap();
        assert_eq!(fz_premutate(&q, 2).unwrap(), q);
    }

    #[test]
    fn premutation_rejects_loops() {
        let q = Quiver::from_pairs(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(fz_premutate(&q, 1), Err(Error::LoopPresent(0)));
    }

    #[test]
    fn a2_matrix_mutation() {
        let b = ExchangeMatrix(vec![vec![0, -1], vec![1, 0]]);
        assert_eq!(b.mutate(0).0, vec![vec![0, 1], vec![-1, 0]]);
        assert_eq!(b.mutate(0).mutate(0), b);
    }

    #[test]
    fn markov_matrix_mutation_flips_signs() {
        let b = markov().exchange_matrix();
        for k in 0..3 {
            let m = b.mutate(k);
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(m.0[i][j], -b.0[i][j]);
                }
            }
        }
    }

    #[test]
    fn fixed_vertex_equality() {
        let q = path(2);
        assert!(quiver_equal_fixed_vertices(&q, &q));
        assert!(!quiver_equal_fixed_vertices(&q, &q.opposite()));
    }

    #[test]
    fn components_of_a_disjoint_union() {
        let q = Quiver::from_pairs(5, &[(0, 1), (3, 2)]).unwrap();
        let (comp, count) = q.components();
        assert_eq!(count, 3);
        assert_eq!(comp, vec![0, 0, 1, 1, 2]);
    }
}
