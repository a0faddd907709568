//! Free-group words, products of conjugates of relators, and Tietze
//! elimination with bookkeeping.
//!
//! A letter is `g + 1` for generator `g` and `-(g + 1)` for its inverse.
//! Words are multiplied left to right.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

pub type Letter = i32;
pub type Word = Vec<Letter>;

pub fn letter(generator: usize, inverse: bool) -> Letter {
    let l = generator as Letter + 1;
    if inverse {
        -l
    } else {
        l
    }
}

pub fn generator_of(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

/// Freely reduced product of the given words.
pub fn reduce<'a>(parts: impl IntoIterator<Item = &'a [Letter]>) -> Word {
    let mut out = Word::new();
    for part in parts {
        for &l in part {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
    }
    out
}

pub fn inverse(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

/// Splits a reduced word as `c · core · c⁻¹` with `core` cyclically reduced.
pub fn cyclic_split(w: &[Letter]) -> (Word, Word) {
    let mut i = 0;
    let n = w.len();
    while i < n / 2 && w[i] == -w[n - 1 - i] {
        i += 1;
    }
    (w[..i].to_vec(), w[i..n - i].to_vec())
}

/// `by · ρ^{±1} · by⁻¹`, where `ρ` is relator `rel`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conj {
    pub by: Word,
    pub rel: usize,
    pub inv: bool,
}

/// A word together with an expression of it as a product of conjugates of
/// relators. The product, freely reduced, equals `word`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certified {
    pub word: Word,
    pub expr: Vec<Conj>,
}

impl Certified {
    pub fn identity() -> Certified {
        Certified {
            word: Word::new(),
            expr: Vec::new(),
        }
    }

    /// The relator itself.
    pub fn relator(rel: usize, word: &[Letter]) -> Certified {
        Certified {
            word: reduce([word]),
            expr: vec![Conj {
                by: Word::new(),
                rel,
                inv: false,
            }],
        }
    }

    pub fn inverse(&self) -> Certified {
        Certified {
            word: inverse(&self.word),
            expr: self
                .expr
                .iter()
                .rev()
                .map(|c| Conj {
                    inv: !c.inv,
                    ..c.clone()
                })
                .collect(),
        }
    }

    /// `by · self · by⁻¹`.
    pub fn conjugate(&self, by: &[Letter]) -> Certified {
        Certified {
            word: reduce([by, &self.word, &inverse(by)]),
            expr: self
                .expr
                .iter()
                .map(|c| Conj {
                    by: reduce([by, &c.by]),
                    ..c.clone()
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Certified) -> Certified {
        let mut expr = self.expr.clone();
        expr.extend(other.expr.iter().cloned());
        Certified {
            word: reduce([&self.word[..], &other.word[..]]),
            expr,
        }
    }
}

/// Evaluates a product of conjugates of `relators`.
pub fn evaluate(expr: &[Conj], relators: &[Word]) -> Word {
    let mut out = Word::new();
    for c in expr {
        let r = if c.inv {
            inverse(&relators[c.rel])
        } else {
            relators[c.rel].clone()
        };
        out = reduce([&out[..], &c.by, &r, &inverse(&c.by)]);
    }
    out
}

/// Number of occurrences of a generator in a word.
fn occurrences(w: &[Letter], g: usize) -> usize {
    w.iter().filter(|&&l| generator_of(l) == g).count()
}

/// One Tietze move: `generator` is removed using `relator`, whose word is
/// `generator · image⁻¹`, so `generator ≡ image` modulo the relators.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub generator: usize,
    pub image: Word,
    pub relator: Certified,
}

/// A finitely presented group after greedy Tietze elimination.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub generators: usize,
    pub relators: Vec<Word>,
    pub eliminations: Vec<Elimination>,
    /// Relators that could not be used for elimination, cyclically reduced.
    pub residual: Vec<Certified>,
}

impl Simplified {
    /// Repeatedly picks the shortest relator in which some generator occurs
    /// exactly once, solves for that generator and substitutes it everywhere.
    pub fn new(generators: usize, relators: Vec<Word>) -> Simplified {
        let mut current: Vec<Certified> = relators
            .iter()
            .enumerate()
            .map(|(i, r)| cyclic_core(&Certified::relator(i, r)))
            .filter(|c| !c.word.is_empty())
            .collect();
        let mut eliminations = Vec::new();
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for (ri, r) in current.iter().enumerate() {
                let mut gens: Vec<usize> = r.word.iter().map(|&l| generator_of(l)).collect();
                gens.sort_unstable();
                gens.dedup();
                for g in gens {
                    if occurrences(&r.word, g) == 1 {
                        let key = (r.word.len(), ri, g);
                        if best.is_none_or(|b| key < b) {
                            best = Some(key);
                        }
                        break;
                    }
                }
            }
            let Some((_, ri, g)) = best else { break };
            let r = current.remove(ri);
            let e = solve_for(&r, g);
            current = current
                .into_iter()
                .map(|s| cyclic_core(&substitute(&s, &e)))
                .filter(|c| !c.word.is_empty())
                .collect();
            eliminations.push(e);
        }
        Simplified {
            generators,
            relators,
            eliminations,
            residual: current,
        }
    }

    /// `true` when every relator was consumed: the group is free on the
    /// surviving generators.
    pub fn is_free(&self) -> bool {
        self.residual.is_empty()
    }

    pub fn surviving(&self) -> Vec<usize> {
        (0..self.generators)
            .filter(|g| self.eliminations.iter().all(|e| e.generator != *g))
            .collect()
    }

    /// Rewrites `w` into the surviving generators. The returned certified
    /// value satisfies `w = expr · remainder` with `remainder` the returned
    /// word.
    pub fn rewrite(&self, w: &[Letter]) -> (Vec<Conj>, Word) {
        let mut acc = Certified {
            word: reduce([w]),
            expr: Vec::new(),
        };
        let mut expr = Vec::new();
        for e in &self.eliminations {
            let (mut cs, rest) = peel(&acc.word, e);
            expr.append(&mut cs);
            acc.word = rest;
        }
        (expr, acc.word)
    }

    /// Image of `w` under the substitution homomorphism onto the free group
    /// on the surviving generators (no bookkeeping).
    pub fn image(&self, w: &[Letter]) -> Word {
        let images = self.generator_images();
        let parts: Vec<Word> = w
            .iter()
            .map(|&l| {
                let im = &images[generator_of(l)];
                if l > 0 {
                    im.clone()
                } else {
                    inverse(im)
                }
            })
            .collect();
        reduce(parts.iter().map(|p| &p[..]))
    }

    /// Image of every generator under the substitution homomorphism.
    pub fn generator_images(&self) -> Vec<Word> {
        let mut images: Vec<Option<Word>> = vec![None; self.generators];
        for g in self.surviving() {
            images[g] = Some(vec![letter(g, false)]);
        }
        for e in self.eliminations.iter().rev() {
            let parts: Vec<Word> = e
                .image
                .iter()
                .map(|&l| {
                    let im = images[generator_of(l)]
                        .clone()
                        .expect("later elimination resolved");
                    if l > 0 {
                        im
                    } else {
                        inverse(&im)
                    }
                })
                .collect();
            images[e.generator] = Some(reduce(parts.iter().map(|p| &p[..])));
        }
        images.into_iter().map(|i| i.unwrap_or_default()).collect()
    }
}

/// Cyclically reduces a certified word.
fn cyclic_core(c: &Certified) -> Certified {
    let (by, core) = cyclic_split(&c.word);
    if by.is_empty() {
        return Certified {
            word: core,
            expr: c.expr.clone(),
        };
    }
    let conj = c.conjugate(&inverse(&by));
    debug_assert_eq!(conj.word, core);
    conj
}

/// Rotates `r` (in which `g` occurs once) to the form `g · y` and records
/// `g ≡ y⁻¹`.
fn solve_for(r: &Certified, g: usize) -> Elimination {
    let pos = r.word.iter().position(|&l| generator_of(l) == g).unwrap();
    let oriented = if r.word[pos] > 0 {
        r.clone()
    } else {
        r.inverse()
    };
    let pos = oriented
        .word
        .iter()
        .position(|&l| generator_of(l) == g)
        .unwrap();
    // oriented = A g B; its rotation g B A is A⁻¹ · oriented · A.
    let a = oriented.word[..pos].to_vec();
    let rotated = oriented.conjugate(&inverse(&a));
    debug_assert_eq!(rotated.word.first(), Some(&letter(g, false)));
    let image = inverse(&rotated.word[1..]);
    Elimination {
        generator: g,
        image,
        relator: rotated,
    }
}

/// Replaces every occurrence of the eliminated generator in `w`. Returns the
/// conjugates peeled off on the left and the rewritten word.
fn peel(w: &[Letter], e: &Elimination) -> (Vec<Conj>, Word) {
    let g = e.generator;
    let mut word = w.to_vec();
    let mut out = Vec::new();
    let y_inv = e.image.clone();
    let y = inverse(&y_inv);
    while let Some(p) = word.iter().position(|&l| generator_of(l) == g) {
        let prefix = &word[..p];
        let (c, replacement) = if word[p] > 0 {
            // P g S = (P R P⁻¹) · P y⁻¹ S
            (e.relator.conjugate(prefix), &y_inv)
        } else {
            // P g⁻¹ S = (P g⁻¹ R⁻¹ g P⁻¹) · P y S
            let mut by = prefix.to_vec();
            by.push(letter(g, true));
            (e.relator.inverse().conjugate(&by), &y)
        };
        out.extend(c.expr);
        word = reduce([prefix, &replacement[..], &word[p + 1..]]);
    }
    (out, word)
}

/// `s` with the eliminated generator substituted, as a certified value.
fn substitute(s: &Certified, e: &Elimination) -> Certified {
    let (conjs, rest) = peel(&s.word, e);
    // s = Π conjs · rest, hence rest = (Π conjs)⁻¹ · s.
    let prod = Certified {
        word: Word::new(),
        expr: conjs,
    };
    let mut expr = prod.inverse().expr;
    expr.extend(s.expr.iter().cloned());
    Certified { word: rest, expr }
}

/// Outcome of [`search_trivial`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// `w` equals the product of the conjugates.
    Found(Vec<Conj>),
    /// Budget exhausted after this many expansions.
    Exhausted(usize),
}

/// Best-first search for an expression of `w` as a product of conjugates of
/// the `relators`: repeatedly inserts cyclic rotations of a relator or its
/// inverse at some position and reduces, preferring short words. Words
/// longer than `|w|` plus twice the longest relator are discarded.
pub fn search_trivial(w: &[Letter], relators: &[Certified], budget: usize) -> SearchOutcome {
    let start = reduce([w]);
    if start.is_empty() {
        return SearchOutcome::Found(Vec::new());
    }
    let longest = relators.iter().map(|r| r.word.len()).max().unwrap_or(0);
    if longest == 0 {
        return SearchOutcome::Exhausted(0);
    }
    let cap = start.len() + 2 * longest;
    let mut moves: Vec<Certified> = Vec::new();
    for r in relators {
        for rel in [r.clone(), r.inverse()] {
            for t in 0..rel.word.len() {
                moves.push(rel.conjugate(&inverse(&rel.word[..t])));
            }
        }
    }
    // parent[i] = (parent index, inserted conjugate); node 0 is the start.
    let mut nodes: Vec<(Word, Option<(usize, Certified)>)> = vec![(start.clone(), None)];
    let mut seen: HashMap<Word, usize> = HashMap::from([(start, 0)]);
    let mut heap = BinaryHeap::from([Reverse((nodes[0].0.len(), 0usize))]);
    let mut expansions = 0;
    while let Some(Reverse((_, idx))) = heap.pop() {
        expansions += 1;
        if expansions > budget {
            return SearchOutcome::Exhausted(budget);
        }
        let word = nodes[idx].0.clone();
        for m in &moves {
            for p in 0..=word.len() {
                let next = reduce([&word[..p], &m.word[..], &word[p..]]);
                if next.len() > cap || seen.contains_key(&next) {
                    continue;
                }
                // next = (P m P⁻¹) · word, so word = (P m P⁻¹)⁻¹ · next.
                let step = m.conjugate(&word[..p]).inverse();
                let done = next.is_empty();
                seen.insert(next.clone(), nodes.len());
                heap.push(Reverse((next.len(), nodes.len())));
                nodes.push((next, Some((idx, step))));
                if done {
                    let mut chain = Vec::new();
                    let mut at = nodes.len() - 1;
                    while let Some((parent, step)) = &nodes[at].1 {
                        chain.push(step.clone());
                        at = *parent;
                    }
                    chain.reverse();
                    return SearchOutcome::Found(chain.into_iter().flat_map(|c| c.expr).collect());
                }
            }
        }
    }
    SearchOutcome::Exhausted(expansions)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[i32]) -> Word {
        letters.to_vec()
    }

    #[test]
    fn reduce_and_inverse() {
        assert_eq!(reduce([&w(&[1, 2, -2, -1, 3])[..]]), w(&[3]));
        assert_eq!(inverse(&w(&[1, -2])), w(&[2, -1]));
        assert_eq!(cyclic_split(&w(&[1, 2, 3, -1])), (w(&[1]), w(&[2, 3])));
    }

    #[test]
    fn certified_operations_stay_consistent() {
        let rels = vec![w(&[1, 2]), w(&[3, 3])];
        let a = Certified::relator(0, &rels[0]).conjugate(&w(&[3]));
        let b = Certified::relator(1, &rels[1]).inverse();
        let c = a.mul(&b).inverse().conjugate(&w(&[-2, 1]));
        assert_eq!(evaluate(&c.expr, &rels), c.word);
    }

    #[test]
    fn tietze_on_a_free_quotient() {
        // <x, y, z | x y z> is free of rank 2.
        let rels = vec![w(&[1, 2, 3])];
        let s = Simplified::new(3, rels.clone());
        assert!(s.is_free());
        assert_eq!(s.surviving().len(), 2);
        for target in [
            w(&[1, 2, 3]),
            w(&[2, 3, 1]),
            w(&[-3, -2, -1]),
            w(&[2, 1, 2, 3, -2]),
        ] {
            let (expr, rest) = s.rewrite(&target);
            assert!(rest.is_empty(), "{target:?}");
            assert_eq!(evaluate(&expr, &rels), reduce([&target[..]]));
        }
        let (_, rest) = s.rewrite(&w(&[1, 2]));
        assert!(!rest.is_empty());
        for r in &rels {
            assert!(s.image(r).is_empty());
        }
    }

    #[test]
    fn tietze_leaves_a_commutator() {
        let rels = vec![w(&[1, 2, -1, -2])];
        let s = Simplified::new(2, rels);
        assert!(!s.is_free());
        assert_eq!(s.residual.len(), 1);
    }

    #[test]
    fn search_finds_a_conjugate_product() {
        // In <x, y | x y x⁻¹ y⁻¹>, the word y x y⁻¹ x⁻¹ is trivial.
        let rels = vec![w(&[1, 2, -1, -2])];
        let residual = vec![Certified::relator(0, &rels[0])];
        let target = w(&[2, 1, -2, -1]);
        match search_trivial(&target, &residual, 1000) {
            SearchOutcome::Found(expr) => assert_eq!(evaluate(&expr, &rels), target),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            search_trivial(&w(&[1]), &residual, 50),
            SearchOutcome::Exhausted(_)
        ));
    }
}
