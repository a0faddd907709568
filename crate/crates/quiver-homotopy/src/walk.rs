//! Walks in the double quiver and their free reduction.
//!
//! Steps are stored in the order they are traversed: `steps[0]` leaves
//! [`Walk::start`]. Composition is written right-to-left, so the walk
//! printed as `γβα` is stored as `[α, β, γ]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::quiver::{ArrowId, Quiver, VertexId};

/// One step of a walk: an arrow or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub arrow: ArrowId,
    pub inverse: bool,
}

impl Step {
    pub fn forward(arrow: ArrowId) -> Step {
        Step {
            arrow,
            inverse: false,
        }
    }

    pub fn backward(arrow: ArrowId) -> Step {
        Step {
            arrow,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Step {
        Step {
            inverse: !self.inverse,
            ..self
        }
    }

    /// `+1` for the arrow, `-1` for its formal inverse.
    pub fn sign(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn start(self, q: &Quiver) -> Result<VertexId> {
        let a = q.arrow(self.arrow).ok_or(Error::UnknownArrow(self.arrow))?;
        Ok(if self.inverse { a.tgt } else { a.src })
    }

    pub fn end(self, q: &Quiver) -> Result<VertexId> {
        let a = q.arrow(self.arrow).ok_or(Error::UnknownArrow(self.arrow))?;
        Ok(if self.inverse { a.src } else { a.tgt })
    }

    fn cancels(self, next: Step) -> bool {
        self.arrow == next.arrow && self.inverse != next.inverse
    }
}

/// A walk in the double quiver, from [`Walk::start`] to [`Walk::end`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    start: VertexId,
    end: VertexId,
    steps: Vec<Step>,
}

impl Walk {
    /// The trivial walk at `v`.
    pub fn trivial(v: VertexId) -> Walk {
        Walk {
            start: v,
            end: v,
            steps: Vec::new(),
        }
    }

    /// A walk starting at `start`, checking that consecutive steps meet.
    pub fn new(q: &Quiver, start: VertexId, steps: Vec<Step>) -> Result<Walk> {
        if start >= q.vertex_count() {
            return Err(Error::VertexOutOfRange(start));
        }
        let mut at = start;
        for (i, s) in steps.iter().enumerate() {
            if s.start(q)? != at {
                return Err(Error::NotComposable(format!(
                    "step {i} ({}) does not start at vertex {at}",
                    q.label(s.arrow)
                )));
            }
            at = s.end(q)?;
        }
        Ok(Walk {
            start,
            end: at,
            steps,
        })
    }

    /// A non-empty walk; its start is read off the first step.
    pub fn from_steps(q: &Quiver, steps: Vec<Step>) -> Result<Walk> {
        let first = steps
            .first()
            .ok_or_else(|| Error::NotComposable("empty step list".into()))?;
        Walk::new(q, first.start(q)?, steps)
    }

    /// The single-step walk along `arrow`.
    pub fn arrow(q: &Quiver, arrow: ArrowId) -> Result<Walk> {
        Walk::from_steps(q, vec![Step::forward(arrow)])
    }

    /// Walk along the given arrows, all traversed forwards.
    pub fn path_ids(q: &Quiver, arrows: &[ArrowId]) -> Result<Walk> {
        Walk::from_steps(q, arrows.iter().map(|&a| Step::forward(a)).collect())
    }

    /// Walk through the labelled arrows in traversal order. A label may
    /// carry the suffix `^-1` or `⁻¹` for the formal inverse.
    pub fn path(q: &Quiver, labels: &[&str]) -> Result<Walk> {
        let steps = labels
            .iter()
            .map(|l| parse_step(q, l))
            .collect::<Result<Vec<_>>>()?;
        Walk::from_steps(q, steps)
    }

    /// Walk written in right-to-left composition notation with
    /// whitespace-separated labels: `"γ1 β1 α1"` traverses `α1` first.
    pub fn right_to_left(q: &Quiver, word: &str) -> Result<Walk> {
        let mut labels: Vec<&str> = word.split_whitespace().collect();
        labels.reverse();
        Walk::path(q, &labels)
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self) -> VertexId {
        self.end
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.start == self.end
    }

    /// Checks the walk against a quiver: every arrow exists and consecutive
    /// steps meet.
    pub fn validate(&self, q: &Quiver) -> Result<()> {
        let w = Walk::new(q, self.start, self.steps.clone())?;
        if w.end != self.end {
            return Err(Error::NotComposable(
                "stored endpoint disagrees with the steps".into(),
            ));
        }
        Ok(())
    }

    pub fn inverse(&self) -> Walk {
        Walk {
            start: self.end,
            end: self.start,
            steps: self.steps.iter().rev().map(|s| s.inverted()).collect(),
        }
    }

    /// Traverses `self` and then `next`, without reducing.
    pub fn concat(&self, next: &Walk) -> Result<Walk> {
        if self.end != next.start {
            return Err(Error::NotComposable(format!(
                "walk ends at {} but the next one starts at {}",
                self.end, next.start
            )));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&next.steps);
        Ok(Walk {
            start: self.start,
            end: next.end,
            steps,
        })
    }

    /// Traverses `self` and then `next`, then reduces.
    pub fn then(&self, next: &Walk) -> Result<Walk> {
        Ok(self.concat(next)?.reduced())
    }

    /// Free reduction: cancels adjacent `a a⁻¹` and `a⁻¹ a` until none is left.
    pub fn reduced(&self) -> Walk {
        let mut out: Vec<Step> = Vec::with_capacity(self.steps.len());
        for &s in &self.steps {
            match out.last() {
                Some(&last) if last.cancels(s) => {
                    out.pop();
                }
                _ => out.push(s),
            }
        }
        Walk {
            start: self.start,
            end: self.end,
            steps: out,
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.steps.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// `n`-fold traversal of a closed walk, reduced.
    pub fn power(&self, n: usize) -> Result<Walk> {
        if !self.is_closed() {
            return Err(Error::NotClosed);
        }
        let mut steps = Vec::with_capacity(self.steps.len() * n);
        for _ in 0..n {
            steps.extend_from_slice(&self.steps);
        }
        Ok(Walk {
            steps,
            ..self.clone()
        }
        .reduced())
    }

    /// Composition order (right-to-left), e.g. `γ1β1α1` or `b⁻¹a`.
    pub fn display(&self, q: &Quiver) -> String {
        if self.steps.is_empty() {
            return format!("e{}", self.start);
        }
        self.steps
            .iter()
            .rev()
            .map(|s| {
                let l = q.label(s.arrow);
                if s.inverse {
                    format!("({l})⁻¹")
                } else {
                    l
                }
            })
            .collect()
    }
}

impl fmt::Display for Walk {
    /// Traversal order with arrow ids: `e0` or `3 5^-1 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return write!(f, "e{}", self.start);
        }
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", s.arrow)?;
            if s.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

fn parse_step(q: &Quiver, token: &str) -> Result<Step> {
    let (label, inverse) = if let Some(l) = token.strip_suffix("^-1") {
        (l, true)
    } else if let Some(l) = token.strip_suffix("⁻¹") {
        (l, true)
    } else {
        (token, false)
    };
    let arrow = q
        .find(label)
        .ok_or_else(|| Error::InvalidQuiver(format!("no arrow labelled {label}")))?;
    Ok(Step { arrow, inverse })
}

/// Free reduction of a walk.
pub fn reduce(w: &Walk) -> Walk {
    w.reduced()
}

/// Composition `w1 ∘ w2` in the free groupoid: traverse `w2`, then `w1`,
/// then reduce. Requires `s(w1) = t(w2)`.
pub fn compose(w1: &Walk, w2: &Walk) -> Result<Walk> {
    w2.then(w1)
}

/// All reduced walks starting at `v` with at most `max_len` steps, shortest
/// first, in lexicographic order of `(arrow, inverse)` per step.
pub fn reduced_walks_from(q: &Quiver, v: VertexId, max_len: usize) -> Vec<Walk> {
    let mut out = vec![Walk::trivial(v)];
    let mut frontier = vec![Walk::trivial(v)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for a in q.arrows() {
                for inverse in [false, true] {
                    let s = Step {
                        arrow: a.id,
                        inverse,
                    };
                    let from = if inverse { a.tgt } else { a.src };
                    if from != w.end || w.steps.last().is_some_and(|l| l.cancels(s)) {
                        continue;
                    }
                    let mut steps = w.steps.clone();
                    steps.push(s);
                    let end = if inverse { a.src } else { a.tgt };
                    next.push(Walk {
                        start: v,
                        end,
                        steps,
                    });
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Non-trivial closed reduced walks at `v` with at most `max_len` steps.
pub fn closed_reduced_walks(q: &Quiver, v: VertexId, max_len: usize) -> Vec<Walk> {
    reduced_walks_from(q, v, max_len)
        .into_iter()
        .filter(|w| w.is_closed() && !w.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::named::*;

    #[test]
    fn cancel_a_pair() {
        let q = two_cycle();
        let a = q.id("a");
        let w = Walk::from_steps(&q, vec![Step::forward(a), Step::backward(a)]).unwrap();
        assert_eq!(reduce(&w), Walk::trivial(0));
    }

    #[test]
    fn cancel_in_the_middle() {
        let q = Quiver::from_labelled(3, &[("b", 1, 2), ("a", 1, 0), ("c", 0, 1)]).unwrap();
        let w = Walk::path(&q, &["c", "b", "b^-1", "a"]).unwrap();
        assert_eq!(reduce(&w), Walk::path(&q, &["c", "a"]).unwrap());
    }

    #[test]
    fn notation_is_right_to_left() {
        let q = markov();
        let w = Walk::right_to_left(&q, "γ1 β1 α1").unwrap();
        assert_eq!(w.steps()[0].arrow, q.id("α1"));
        assert!(w.is_closed());
        assert_eq!(w.display(&q), "γ1β1α1");
    }

    #[test]
    fn compose_with_identity_and_inverse() {
        let q = markov();
        let w = Walk::right_to_left(&q, "β2 α1").unwrap();
        assert_eq!(compose(&Walk::trivial(w.end()), &w).unwrap(), w);
        assert_eq!(compose(&w.inverse(), &w).unwrap(), Walk::trivial(w.start()));
        assert!(compose(&w, &w).is_err());
    }

    #[test]
    fn composability_is_checked() {
        let q = markov();
        assert!(Walk::path(&q, &["α1", "γ1"]).is_err());
    }

    #[test]
    fn closed_walk_counts() {
        let q = two_cycle();
        let walks = closed_reduced_walks(&q, 0, 4);
        // ab, (ab)^-1, abab, (ab)^-2
        assert_eq!(walks.len(), 4);
    }
}
