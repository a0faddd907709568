//! Integer lattices via the Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// The lattice spanned by integer vectors in `ℤ^dim`, in Smith form:
/// `U · A · V = D` with `A` the matrix whose columns are the generators.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    generators: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    diagonal: Vec<BigInt>,
}

/// Why a vector is outside a lattice: `functional · target ≢ 0 (mod modulus)`
/// while every generator is killed. A zero modulus means exact equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub functional: Vec<BigInt>,
    pub modulus: BigInt,
}

impl Lattice {
    pub fn new(dim: usize, generators: Vec<Vec<BigInt>>) -> Lattice {
        let cols = generators.len();
        let mut a: Vec<Vec<BigInt>> = (0..dim)
            .map(|i| generators.iter().map(|g| g[i].clone()).collect())
            .collect();
        let mut u = identity(dim);
        let mut v = identity(cols);
        let mut diagonal = Vec::new();
        for t in 0..dim.min(cols) {
            if !pivot(&mut a, &mut u, &mut v, t) {
                break;
            }
            loop {
                clear_column(&mut a, &mut u, t);
                clear_row(&mut a, &mut v, t);
                let col_clean = (t + 1..dim).all(|i| a[i][t].is_zero());
                if !col_clean {
                    continue;
                }
                // Keep the divisibility chain: fold in a row whose entries the
                // pivot does not divide.
                let bad = (t + 1..dim)
                    .find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
                match bad {
                    Some(i) => add_row(&mut a, &mut u, t, i, &BigInt::one()),
                    None => break,
                }
            }
            if a[t][t].is_negative() {
                for x in a[t].iter_mut() {
                    *x = -x.clone();
                }
                for x in u[t].iter_mut() {
                    *x = -x.clone();
                }
            }
            diagonal.push(a[t][t].clone());
        }
        Lattice {
            dim,
            generators,
            u,
            v,
            diagonal,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors, each dividing the next.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.diagonal
    }

    /// Integer coefficients `c` with `Σ c_i g_i = target`, or an obstruction.
    pub fn solve(&self, target: &[BigInt]) -> Result<Vec<BigInt>, Obstruction> {
        let z: Vec<BigInt> = self.u.iter().map(|row| dot(row, target)).collect();
        for (i, zi) in z.iter().enumerate() {
            let modulus = self.diagonal.get(i).cloned().unwrap_or_else(BigInt::zero);
            let fails = if modulus.is_zero() {
                !zi.is_zero()
            } else {
                !zi.is_multiple_of(&modulus)
            };
            if fails {
                return Err(Obstruction {
                    functional: self.u[i].clone(),
                    modulus,
                });
            }
        }
        let cols = self.generators.len();
        let y: Vec<BigInt> = (0..cols)
            .map(|j| {
                if j < self.rank() {
                    &z[j] / &self.diagonal[j]
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        let c: Vec<BigInt> = self.v.iter().map(|row| dot(row, &y)).collect();
        debug_assert!(self.combine(&c) == target);
        Ok(c)
    }

    /// `Σ c_i g_i`.
    pub fn combine(&self, c: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim];
        for (ci, g) in c.iter().zip(&self.generators) {
            for (o, x) in out.iter_mut().zip(g) {
                *o += ci * x;
            }
        }
        out
    }
}

impl Obstruction {
    /// `true` if the functional kills every generator but not `target`.
    pub fn separates(&self, generators: &[Vec<BigInt>], target: &[BigInt]) -> bool {
        let vanishes = |x: &BigInt| {
            if self.modulus.is_zero() {
                x.is_zero()
            } else {
                x.is_multiple_of(&self.modulus)
            }
        };
        generators
            .iter()
            .all(|g| vanishes(&dot(&self.functional, g)))
            && !vanishes(&dot(&self.functional, target))
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Moves a smallest non-zero entry of the trailing block to `(t, t)`.
fn pivot(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], t: usize) -> bool {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    let Some((i, j)) = best else { return false };
    a.swap(t, i);
    u.swap(t, i);
    for row in a.iter_mut() {
        row.swap(t, j);
    }
    for row in v.iter_mut() {
        row.swap(t, j);
    }
    true
}

/// `row[dst] += k · row[src]` on both `a` and `u`.
fn add_row(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], dst: usize, src: usize, k: &BigInt) {
    for m in [a, u] {
        let s = m[src].clone();
        for (d, x) in m[dst].iter_mut().zip(&s) {
            *d += k * x;
        }
    }
}

fn add_col(a: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], dst: usize, src: usize, k: &BigInt) {
    for m in [a, v] {
        for row in m.iter_mut() {
            let s = row[src].clone();
            row[dst] += k * s;
        }
    }
}

fn clear_column(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], t: usize) {
    for i in t + 1..a.len() {
        while !a[i][t].is_zero() {
            let q = a[i][t].div_floor(&a[t][t]);
            add_row(a, u, i, t, &-q);
            if !a[i][t].is_zero() {
                a.swap(t, i);
                u.swap(t, i);
            }
        }
    }
}

fn clear_row(a: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], t: usize) {
    let cols = a[t].len();
    for j in t + 1..cols {
        while !a[t][j].is_zero() {
            let q = a[t][j].div_floor(&a[t][t]);
            add_col(a, v, j, t, &-q);
            if !a[t][j].is_zero() {
                for row in a.iter_mut() {
                    row.swap(t, j);
                }
                for row in v.iter_mut() {
                    row.swap(t, j);
                }
            }
        }
    }
}
