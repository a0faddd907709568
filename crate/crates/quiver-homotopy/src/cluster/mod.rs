//! Cluster algebras whose exchange data is a quiver with homotopy.
//!
//! A [`Seed`] holds `n` cluster variables, `n` coefficients in a semifield
//! and a [`TrackedQuiverWithHomotopy`]. Mutation at `k` uses the arrow
//! counts `p_ij = #(i → j)` of the current quiver, 2-cycles included:
//!
//! ```text
//! x'_k = (y_k ∏ x_j^{p_jk} + ∏ x_j^{p_kj}) / ((y_k ⊕ 1) x_k)
//! y'_k = y_k^{-1},   y'_j = y_j · y_k^{p_kj} · (y_k ⊕ 1)^{p_jk - p_kj}
//! ```
//!
//! Cluster variables live in the field of rational functions in
//! `x_1..x_n` and the semifield generators, with every value kept in lowest
//! terms. Laurentness is then a check on the denominator.

mod poly;

pub use poly::{monomial_string, Exponents, MultiPoly, RationalFn};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mutation::TrackedQuiverWithHomotopy;
use crate::quiver::{AdjacencyMatrix, VertexId};

/// Largest rank accepted by [`explore_laurent`].
pub const MAX_RANK: usize = 6;
/// Largest depth accepted by [`explore_laurent`].
pub const MAX_DEPTH: usize = 8;

/// The coefficient semifield.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Semifield {
    /// The one-element semifield.
    Trivial,
    /// Laurent monomials in the named generators, with `⊕` the
    /// coordinatewise minimum of exponents.
    Tropical { gens: Vec<String> },
}

impl Semifield {
    pub fn generator_count(&self) -> usize {
        match self {
            Semifield::Trivial => 0,
            Semifield::Tropical { gens } => gens.len(),
        }
    }

    /// `a ⊕ b` for elements given by exponent vectors.
    pub fn oplus(&self, a: &[i32], b: &[i32]) -> Exponents {
        a.iter().zip(b).map(|(x, y)| *x.min(y)).collect()
    }

    /// `y ⊕ 1`.
    pub fn oplus_one(&self, y: &[i32]) -> Exponents {
        y.iter().map(|&x| x.min(0)).collect()
    }
}

/// Parses a Laurent monomial such as `u1^2*u2^-1` (or `1`) over `gens`.
pub fn parse_monomial(s: &str, gens: &[String]) -> Result<Exponents> {
    let mut e = vec![0; gens.len()];
    let s = s.trim();
    if s == "1" || s.is_empty() {
        return Ok(e);
    }
    for factor in s.split('*') {
        let factor = factor.trim();
        let (name, power) = match factor.split_once('^') {
            Some((n, p)) => (
                n.trim(),
                p.trim()
                    .trim_start_matches('(')
                    .trim_end_matches(')')
                    .parse::<i32>()
                    .map_err(|_| Error::InvalidQuiver(format!("bad exponent in `{factor}`")))?,
            ),
            None => (factor, 1),
        };
        let v = gens
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::InvalidQuiver(format!("unknown generator `{name}`")))?;
        e[v] += power;
    }
    Ok(e)
}

/// A seed: cluster, coefficients and a quiver with homotopy.
#[derive(Clone, Debug)]
pub struct Seed {
    semifield: Semifield,
    cluster: Vec<RationalFn>,
    coeffs: Vec<Exponents>,
    tq: TrackedQuiverWithHomotopy,
}

impl Seed {
    /// The initial seed with cluster `x_1..x_n` and the given coefficients,
    /// each an exponent vector over the semifield generators.
    pub fn new(
        tq: TrackedQuiverWithHomotopy,
        semifield: Semifield,
        coeffs: Vec<Exponents>,
    ) -> Result<Seed> {
        let n = tq.current().vertex_count();
        let m = semifield.generator_count();
        if coeffs.len() != n || coeffs.iter().any(|c| c.len() != m) {
            return Err(Error::InvalidQuiver(format!(
                "expected {n} coefficients with {m} exponents each"
            )));
        }
        let nvars = n + m;
        let cluster = (0..n).map(|i| RationalFn::var(nvars, i)).collect();
        Ok(Seed {
            semifield,
            cluster,
            coeffs,
            tq,
        })
    }

    /// Trivial coefficients.
    pub fn trivial(tq: TrackedQuiverWithHomotopy) -> Seed {
        let n = tq.current().vertex_count();
        Seed::new(tq, Semifield::Trivial, vec![Vec::new(); n]).expect("consistent sizes")
    }

    /// Principal coefficients: `y_j` is the `j`-th generator of `Trop(y_1..y_n)`.
    pub fn principal(tq: TrackedQuiverWithHomotopy) -> Seed {
        let n = tq.current().vertex_count();
        let gens = (1..=n).map(|j| format!("y{j}")).collect();
        let coeffs = (0..n)
            .map(|j| (0..n).map(|i| i32::from(i == j)).collect())
            .collect();
        Seed::new(tq, Semifield::Tropical { gens }, coeffs).expect("consistent sizes")
    }

    pub fn rank(&self) -> usize {
        self.cluster.len()
    }

    /// Number of variables of the ambient field: `x_1..x_n`, then the
    /// semifield generators.
    pub fn nvars(&self) -> usize {
        self.rank() + self.semifield.generator_count()
    }

    /// Variable names in roster order.
    pub fn names(&self) -> Vec<String> {
        let mut names: Vec<String> = (1..=self.rank()).map(|i| format!("x{i}")).collect();
        if let Semifield::Tropical { gens } = &self.semifield {
            names.extend(gens.iter().cloned());
        }
        names
    }

    pub fn semifield(&self) -> &Semifield {
        &self.semifield
    }

    pub fn cluster(&self) -> &[RationalFn] {
        &self.cluster
    }

    pub fn coeffs(&self) -> &[Exponents] {
        &self.coeffs
    }

    pub fn tracked(&self) -> &TrackedQuiverWithHomotopy {
        &self.tq
    }

    /// Principal coefficients: tropical over `n` generators with
    /// `y_j = u_j`.
    pub fn is_principal(&self) -> bool {
        let n = self.rank();
        self.semifield.generator_count() == n
            && self
                .coeffs
                .iter()
                .enumerate()
                .all(|(j, c)| c.iter().enumerate().all(|(i, &e)| e == i32::from(i == j)))
    }

    /// The coefficient `y_j` as a monomial of the ambient field.
    pub fn coefficient_monomial(&self, j: usize) -> MultiPoly {
        MultiPoly::monomial(self.embed(&self.coeffs[j]), 1)
    }

    fn embed(&self, gen_exps: &[i32]) -> Exponents {
        let mut e = vec![0; self.rank()];
        e.extend_from_slice(gen_exps);
        e
    }

    /// Mutation at `k`.
    pub fn mutate(&self, k: VertexId) -> Result<Seed> {
        seed_mutate(self, k)
    }

    /// Mutations along `address`, first entry first.
    pub fn mutate_along(&self, address: &[VertexId]) -> Result<Seed> {
        address.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// The value `∏ x_j^{e_j}` over the current cluster.
    fn cluster_monomial(&self, exps: impl Iterator<Item = (usize, u32)>) -> RationalFn {
        let mut num = MultiPoly::one(self.nvars());
        let mut den = MultiPoly::one(self.nvars());
        for (j, e) in exps {
            if e > 0 {
                num = num.mul(&self.cluster[j].numerator().pow(e));
                den = den.mul(&self.cluster[j].denominator().pow(e));
            }
        }
        RationalFn::new(num, den).expect("nonzero denominator")
    }
}

/// Mutation of a seed at `k`. The exchange monomials use the quiver before
/// mutation, so a 2-cycle through `k` contributes to both of them.
pub fn seed_mutate(s: &Seed, k: VertexId) -> Result<Seed> {
    let n = s.rank();
    if k >= n {
        return Err(Error::VertexOutOfRange(k));
    }
    let p = s.tq.current().adjacency_matrix();
    let tq = s.tq.mutate(k)?;
    let nvars = s.nvars();
    let into_k = s.cluster_monomial((0..n).map(|j| (j, p.get(j, k))));
    let out_of_k = s.cluster_monomial((0..n).map(|j| (j, p.get(k, j))));
    let yk = RationalFn::from_poly(s.coefficient_monomial(k));
    let yk_plus = RationalFn::from_poly(MultiPoly::monomial(
        s.embed(&s.semifield.oplus_one(&s.coeffs[k])),
        1,
    ));
    let numerator = yk.mul(&into_k).add(&out_of_k);
    let denominator = yk_plus.mul(&s.cluster[k]);
    let mut cluster = s.cluster.clone();
    cluster[k] = numerator.div(&denominator)?;
    debug_assert_eq!(cluster[k].nvars(), nvars);
    let coeffs = y_mutate_tropical(&s.semifield, &s.coeffs, &p, k);
    Ok(Seed {
        semifield: s.semifield.clone(),
        cluster,
        coeffs,
        tq,
    })
}

/// The coefficient rule in a tropical (or trivial) semifield, on exponent
/// vectors.
fn y_mutate_tropical(
    sf: &Semifield,
    coeffs: &[Exponents],
    p: &AdjacencyMatrix,
    k: VertexId,
) -> Vec<Exponents> {
    let yk = &coeffs[k];
    let plus = sf.oplus_one(yk);
    coeffs
        .iter()
        .enumerate()
        .map(|(j, yj)| {
            if j == k {
                return yk.iter().map(|x| -x).collect();
            }
            let (pkj, pjk) = (p.get(k, j) as i32, p.get(j, k) as i32);
            (0..yj.len())
                .map(|a| yj[a] + pkj * yk[a] + (pjk - pkj) * plus[a])
                .collect()
        })
        .collect()
}

/// `ŷ_j = y_j ∏ x_i^{p_ij - p_ji}` over the current seed.
pub fn y_hat(s: &Seed) -> Vec<RationalFn> {
    let n = s.rank();
    let p = s.tq.current().adjacency_matrix();
    (0..n)
        .map(|j| {
            let pos = s.cluster_monomial((0..n).map(|i| (i, p.get(i, j))));
            let neg = s.cluster_monomial((0..n).map(|i| (i, p.get(j, i))));
            let yj = RationalFn::from_poly(s.coefficient_monomial(j));
            yj.mul(&pos)
                .div(&neg)
                .expect("cluster variables are nonzero")
        })
        .collect()
}

/// The coefficient rule in the field of rational functions, where `⊕` is
/// ordinary addition: `ŷ'_k = ŷ_k^{-1}`, otherwise
/// `ŷ'_j = ŷ_j ŷ_k^{p_kj} (ŷ_k + 1)^{p_jk - p_kj}`.
pub fn y_mutate_field(
    y: &[RationalFn],
    p: &AdjacencyMatrix,
    k: VertexId,
) -> Result<Vec<RationalFn>> {
    let yk = &y[k];
    let nvars = yk.nvars();
    let plus = yk.add(&RationalFn::one(nvars));
    y.iter()
        .enumerate()
        .map(|(j, yj)| {
            if j == k {
                return yk.inverse();
            }
            let (pkj, pjk) = (i64::from(p.get(k, j)), i64::from(p.get(j, k)));
            Ok(yj.mul(&yk.pow(pkj)?).mul(&plus.pow(pjk - pkj)?))
        })
        .collect()
}

/// The cluster variable `x_{i,t}` reached from `s` along `address`.
pub fn cluster_variable(s: &Seed, address: &[VertexId], i: usize) -> Result<RationalFn> {
    Ok(s.mutate_along(address)?.cluster[i].clone())
}

/// Sets every `x_i` to 1 in a function of a principal seed, leaving a
/// function of `y_1..y_n` (in the same roster).
pub fn specialize_x_to_one(r: &RationalFn, n: usize) -> Result<RationalFn> {
    let nvars = r.nvars();
    let images: Vec<Exponents> = (0..nvars)
        .map(|v| {
            let mut e = vec![0; nvars];
            if v >= n {
                e[v] = 1;
            }
            e
        })
        .collect();
    r.substitute_monomials(nvars, &images)
}

/// The F-polynomial of `x_{i,t}`: the principal-coefficient variable with
/// every `x_j` set to 1. It is returned in lowest terms; whether it is a
/// polynomial with nonnegative coefficients is for the caller to check
/// (see [`RationalFn::is_positive_laurent`]).
pub fn f_polynomial(s0: &Seed, address: &[VertexId], i: usize) -> Result<RationalFn> {
    require_principal(s0)?;
    specialize_x_to_one(&cluster_variable(s0, address, i)?, s0.rank())
}

fn require_principal(s: &Seed) -> Result<()> {
    if s.is_principal() {
        Ok(())
    } else {
        Err(Error::InvalidQuiver(
            "the seed does not have principal coefficients".into(),
        ))
    }
}

/// Evaluates a function of `y_1..y_n` (principal roster) in a tropical
/// semifield where `y_j` takes the value `values[j]`. The numerator and
/// denominator in lowest terms must have positive coefficients, so that the
/// function is written without subtraction.
pub fn tropical_evaluate(f: &RationalFn, n: usize, values: &[Exponents]) -> Result<Exponents> {
    let m = values.first().map_or(0, Vec::len);
    let eval = |p: &MultiPoly| -> Result<Exponents> {
        if !p.has_nonnegative_coefficients() {
            return Err(Error::NotSubtractionFree(
                "a negative coefficient remains in lowest terms".into(),
            ));
        }
        let mut best: Option<Exponents> = None;
        for (e, _) in p.terms() {
            let mut v = vec![0; m];
            for (j, value) in values.iter().enumerate() {
                for (slot, &x) in v.iter_mut().zip(value) {
                    *slot += e[n + j] * x;
                }
            }
            best = Some(match best {
                None => v,
                Some(b) => b.iter().zip(&v).map(|(a, c)| *a.min(c)).collect(),
            });
        }
        Ok(best.unwrap_or_else(|| vec![0; m]))
    };
    let a = eval(f.numerator())?;
    let b = eval(f.denominator())?;
    Ok(a.iter().zip(&b).map(|(x, y)| x - y).collect())
}

/// Checks the separation formula
/// `x_{i,t} = X_{i,t}(x; y) / F_{i,t}|_P(y)` for the seed `s` along
/// `address`, where `X` and `F` come from the principal-coefficient seed on
/// the same quiver with homotopy.
pub fn separation_check(s: &Seed, address: &[VertexId], i: usize) -> Result<bool> {
    let n = s.rank();
    let principal = Seed::principal(s.tq.clone());
    let x_principal = cluster_variable(&principal, address, i)?;
    let actual = cluster_variable(s, address, i)?;
    separation_holds(s, &x_principal, &actual, n)
}

/// The separation identity for one variable, given the principal value
/// `x_principal` and the value `actual` over the seed `s`.
fn separation_holds(
    s: &Seed,
    x_principal: &RationalFn,
    actual: &RationalFn,
    n: usize,
) -> Result<bool> {
    let nvars = s.nvars();
    let images: Vec<Exponents> = (0..2 * n)
        .map(|v| {
            if v < n {
                let mut e = vec![0; nvars];
                e[v] = 1;
                e
            } else {
                s.embed(&s.coeffs[v - n])
            }
        })
        .collect();
    let x_sub = x_principal.substitute_monomials(nvars, &images)?;
    let f = specialize_x_to_one(x_principal, n)?;
    let f_p = match s.semifield {
        Semifield::Trivial => MultiPoly::one(nvars),
        Semifield::Tropical { .. } => {
            MultiPoly::monomial(s.embed(&tropical_evaluate(&f, n, &s.coeffs)?), 1)
        }
    };
    Ok(x_sub.div(&RationalFn::from_poly(f_p))? == *actual)
}

/// Degrees of the variables of a principal seed: `deg x_i = e_i` and
/// `deg y_j = (p_j1 - p_1j, …, p_jn - p_nj)`.
pub fn principal_degrees(s0: &Seed) -> Vec<Vec<i64>> {
    let n = s0.rank();
    let p = s0.tq.current().adjacency_matrix();
    let mut degs: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|a| i64::from(a == i)).collect())
        .collect();
    for j in 0..n {
        degs.push(
            (0..n)
                .map(|a| i64::from(p.get(j, a)) - i64::from(p.get(a, j)))
                .collect(),
        );
    }
    degs
}

fn homogeneous_degree(p: &MultiPoly, degs: &[Vec<i64>], names: &[String]) -> Result<Vec<i64>> {
    let n = degs[0].len();
    let mut found: Option<Vec<i64>> = None;
    for (e, _) in p.terms() {
        let mut d = vec![0i64; n];
        for (v, &k) in e.iter().enumerate() {
            for (slot, &x) in d.iter_mut().zip(&degs[v]) {
                *slot += i64::from(k) * x;
            }
        }
        match &found {
            None => found = Some(d),
            Some(f) if *f == d => {}
            Some(_) => return Err(Error::NotHomogeneous(p.display(names))),
        }
    }
    Ok(found.unwrap_or_else(|| vec![0; n]))
}

/// The g-vector of a principal-coefficient cluster variable `r` of the seed
/// `s0`: the degree of its numerator minus that of its denominator.
pub fn g_vector_of(s0: &Seed, r: &RationalFn) -> Result<Vec<i64>> {
    let degs = principal_degrees(s0);
    let names = s0.names();
    let u = homogeneous_degree(r.numerator(), &degs, &names)?;
    let v = homogeneous_degree(r.denominator(), &degs, &names)?;
    Ok(u.iter().zip(&v).map(|(a, b)| a - b).collect())
}

/// The g-vector of `x_{i,t}` reached from the principal seed `s0`.
pub fn g_vector(s0: &Seed, address: &[VertexId], i: usize) -> Result<Vec<i64>> {
    require_principal(s0)?;
    g_vector_of(s0, &cluster_variable(s0, address, i)?)
}

/// Lowest-terms denominator is a monomial with coefficient 1.
pub fn is_laurent(r: &RationalFn) -> bool {
    r.is_laurent()
}

/// Which mutation sequences [`explore_laurent`] visits.
#[derive(Clone, Debug)]
pub enum PathSelection {
    /// Every sequence up to the depth without immediate repetitions.
    Exhaustive,
    /// The listed sequences and all their prefixes.
    Given(Vec<Vec<VertexId>>),
}

/// One cluster variable at a node of an exploration.
#[derive(Clone, Debug, Serialize)]
pub struct VariableReport {
    pub index: usize,
    pub value: String,
    pub laurent: bool,
    pub nonnegative: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_vector: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_polynomial: Option<String>,
}

/// A node of an exploration.
#[derive(Clone, Debug, Serialize)]
pub struct NodeReport {
    pub address: Vec<VertexId>,
    pub variables: Vec<VariableReport>,
}

/// Something unexpected met during an exploration, with the path to it.
#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub address: Vec<VertexId>,
    pub index: usize,
    pub kind: String,
    pub detail: String,
}

/// Outcome of [`explore_laurent`].
#[derive(Clone, Debug, Serialize)]
pub struct LaurentReport {
    pub rank: usize,
    pub depth: usize,
    pub principal: bool,
    pub nodes: Vec<NodeReport>,
    pub findings: Vec<Finding>,
}

impl LaurentReport {
    /// Every variable at every node is a Laurent polynomial with
    /// nonnegative coefficients, and nothing else went wrong.
    pub fn all_positive_laurent(&self) -> bool {
        self.findings.is_empty()
    }
}

/// Visits the seeds reached from `seed` and records, for every cluster
/// variable, whether it is Laurent with nonnegative coefficients. For a
/// principal seed the g-vector and F-polynomial are recorded too. Failures
/// of these properties are findings, not errors.
pub fn explore_laurent(seed: &Seed, depth: usize, paths: &PathSelection) -> Result<LaurentReport> {
    let n = seed.rank();
    if n > MAX_RANK || depth > MAX_DEPTH {
        return Err(Error::Resource(format!(
            "rank {n} and depth {depth} exceed the limits {MAX_RANK} and {MAX_DEPTH}"
        )));
    }
    let mut report = LaurentReport {
        rank: n,
        depth,
        principal: seed.is_principal(),
        nodes: Vec::new(),
        findings: Vec::new(),
    };
    match paths {
        PathSelection::Exhaustive => visit(seed, seed, &mut Vec::new(), depth, &mut report)?,
        PathSelection::Given(list) => {
            let mut seen = std::collections::BTreeSet::new();
            for path in list {
                if let Some(&k) = path.iter().find(|&&k| k >= n) {
                    return Err(Error::VertexOutOfRange(k));
                }
                let mut s = seed.clone();
                for len in 0..=path.len().min(depth) {
                    if len > 0 {
                        s = s.mutate(path[len - 1]).map_err(|e| at(e, &path[..len]))?;
                    }
                    if seen.insert(path[..len].to_vec()) {
                        record(seed, &s, &path[..len], &mut report);
                    }
                }
            }
        }
    }
    Ok(report)
}

fn at(e: Error, address: &[VertexId]) -> Error {
    match e {
        Error::DecisionUnknown(m) => Error::DecisionUnknown(format!("at address {address:?}: {m}")),
        other => other,
    }
}

fn visit(
    root: &Seed,
    s: &Seed,
    address: &mut Vec<VertexId>,
    depth: usize,
    report: &mut LaurentReport,
) -> Result<()> {
    record(root, s, address, report);
    if address.len() == depth {
        return Ok(());
    }
    for k in 0..s.rank() {
        if address.last() == Some(&k) {
            continue;
        }
        address.push(k);
        let child = s.mutate(k).map_err(|e| at(e, address))?;
        visit(root, &child, address, depth, report)?;
        address.pop();
    }
    Ok(())
}

fn record(root: &Seed, s: &Seed, address: &[VertexId], report: &mut LaurentReport) {
    let names = root.names();
    let principal = root.is_principal();
    let mut variables = Vec::new();
    for (i, x) in s.cluster.iter().enumerate() {
        let mut finding = |kind: &str, detail: String| {
            report.findings.push(Finding {
                address: address.to_vec(),
                index: i,
                kind: kind.into(),
                detail,
            })
        };
        let laurent = x.is_laurent();
        let nonnegative = laurent && x.is_positive_laurent();
        if !laurent {
            finding("not-laurent", x.display(&names));
        } else if !nonnegative {
            finding("negative-coefficient", x.display(&names));
        }
        let (mut g_vector, mut f_polynomial) = (None, None);
        if principal {
            match g_vector_of(root, x) {
                Ok(g) => g_vector = Some(g),
                Err(e) => finding("not-homogeneous", e.to_string()),
            }
            match specialize_x_to_one(x, root.rank()) {
                Ok(f) => f_polynomial = Some(f.display(&names)),
                Err(e) => finding("f-polynomial", e.to_string()),
            }
        }
        variables.push(VariableReport {
            index: i,
            value: x.display(&names),
            laurent,
            nonnegative,
            g_vector,
            f_polynomial,
        });
    }
    report.nodes.push(NodeReport {
        address: address.to_vec(),
        variables,
    });
}
