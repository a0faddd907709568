//! Sparse multivariate Laurent polynomials and rational functions over ℤ.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent vector of a monomial. Negative entries are allowed.
pub type Exponents = Vec<i32>;

/// A Laurent polynomial with integer coefficients in a fixed number of
/// variables. Terms are kept in lexicographic order of their exponents and
/// zero coefficients are never stored, so equal polynomials compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// The variable with index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, 1)
    }

    pub fn monomial(exps: Exponents, c: impl Into<BigInt>) -> Self {
        let nvars = exps.len();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { nvars, terms }
    }

    /// Builds a polynomial from terms, merging repeated exponents.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector of the wrong length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    /// A single term, coefficient included.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[i32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// The lexicographically largest term.
    pub fn leading(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// No negative exponent anywhere.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Largest exponent of variable `v` (0 for the zero polynomial).
    pub fn degree_in(&self, v: usize) -> i32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    /// Coordinatewise minimum of the exponents of all terms.
    pub fn min_exponents(&self) -> Exponents {
        let mut m: Option<Exponents> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable rosters differ");
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable rosters differ");
        let mut p = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    /// `self^k` for `k ≥ 0`.
    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact quotient `self / d`. Every step divides leading terms in the
    /// polynomial sense, so both arguments should be polynomials.
    pub fn divide_exact(&self, d: &Self) -> Result<Self> {
        assert_eq!(self.nvars, d.nvars, "variable rosters differ");
        let (de, dc) = d.leading().ok_or(Error::NotDivisible)?;
        let (de, dc) = (de.clone(), dc.clone());
        if d.is_monomial() {
            let mut q = Self::zero(self.nvars);
            for (e, c) in &self.terms {
                let (qc, r) = c.div_rem(&dc);
                let qe: Exponents = e.iter().zip(&de).map(|(a, b)| a - b).collect();
                if !r.is_zero() || qe.iter().any(|&x| x < 0) {
                    return Err(Error::NotDivisible);
                }
                q.terms.insert(qe, qc);
            }
            return Ok(q);
        }
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((re, rc)) = r.leading() {
            let (qc, rem) = rc.div_rem(&dc);
            let qe: Exponents = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            if !rem.is_zero() || qe.iter().any(|&x| x < 0) {
                return Err(Error::NotDivisible);
            }
            for (e, c) in &d.terms {
                let e = e.iter().zip(&qe).map(|(a, b)| a + b).collect();
                r.add_term(e, -(c * &qc));
            }
            q.terms.insert(qe, qc);
        }
        Ok(q)
    }

    /// gcd of the integer coefficients (0 for the zero polynomial).
    pub fn integer_content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Flips the sign so that the leading coefficient is positive.
    pub fn with_positive_leading(self) -> Self {
        match self.leading() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self,
        }
    }

    /// Greatest common divisor of two polynomials, with positive leading
    /// coefficient. Computed by recursion on the variables with content and
    /// primitive parts and a primitive pseudo-remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable rosters differ");
        debug_assert!(self.is_polynomial() && other.is_polynomial());
        gcd_rec(self, other).with_positive_leading()
    }

    /// Applies the monomial substitution sending variable `v` to the
    /// Laurent monomial `images[v]` in a roster of `target_nvars` variables.
    pub fn substitute_monomials(&self, target_nvars: usize, images: &[Exponents]) -> Self {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let mut p = Self::zero(target_nvars);
        for (e, c) in &self.terms {
            let mut t = vec![0; target_nvars];
            for (v, &k) in e.iter().enumerate() {
                if k != 0 {
                    for (slot, &x) in t.iter_mut().zip(&images[v]) {
                        *slot += k * x;
                    }
                }
            }
            p.add_term(t, c.clone());
        }
        p
    }

    /// Human-readable form using `names` for the variables, largest term first.
    pub fn display(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono = monomial_string(e, names);
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            match (abs.is_one(), mono.is_empty()) {
                (true, true) => s.push('1'),
                (true, false) => s.push_str(&mono),
                (false, true) => {
                    let _ = write!(s, "{abs}");
                }
                (false, false) => {
                    let _ = write!(s, "{abs}*{mono}");
                }
            }
        }
        s
    }
}

/// `x1^2*y1` style rendering of a monomial, empty for the constant monomial.
pub fn monomial_string(e: &[i32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (v, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(names[v].clone()),
            k => parts.push(format!("{}^{k}", names[v])),
        }
    }
    parts.join("*")
}

/// The variable of largest index that occurs in `a` or `b`.
fn main_variable(a: &MultiPoly, b: &MultiPoly) -> Option<usize> {
    (0..a.nvars)
        .rev()
        .find(|&v| a.terms.keys().chain(b.terms.keys()).any(|e| e[v] != 0))
}

/// Coefficients of `a` as a polynomial in `v`, indexed by degree.
fn coefficients_in(a: &MultiPoly, v: usize) -> Vec<MultiPoly> {
    let mut out = vec![MultiPoly::zero(a.nvars); a.degree_in(v) as usize + 1];
    for (e, c) in &a.terms {
        let d = e[v] as usize;
        let mut e = e.clone();
        e[v] = 0;
        out[d].add_term(e, c.clone());
    }
    out
}

/// gcd of the coefficients of `a` as a polynomial in `v`.
fn content_in(a: &MultiPoly, v: usize) -> MultiPoly {
    let mut g = MultiPoly::zero(a.nvars);
    for c in coefficients_in(a, v) {
        if !c.is_zero() {
            g = gcd_rec(&g, &c);
            if g.is_one() {
                break;
            }
        }
    }
    g.with_positive_leading()
}

fn primitive_part_in(a: &MultiPoly, v: usize) -> MultiPoly {
    if a.is_zero() {
        return a.clone();
    }
    let c = content_in(a, v);
    a.divide_exact(&c)
        .expect("a polynomial is divisible by its content")
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.clone().with_positive_leading();
    }
    if b.is_zero() {
        return a.clone().with_positive_leading();
    }
    if a.is_monomial() || b.is_monomial() {
        // A monomial's divisors are monomials: take the smallest exponents
        // and the gcd of all integer coefficients.
        let mut e = a.min_exponents();
        for (x, y) in e.iter_mut().zip(b.min_exponents()) {
            *x = (*x).min(y);
        }
        let c = a.integer_content().gcd(&b.integer_content());
        return MultiPoly::monomial(e, c);
    }
    let Some(v) = main_variable(a, b) else {
        return MultiPoly::constant(a.nvars, a.integer_content().gcd(&b.integer_content()));
    };
    let (ca, cb) = (content_in(a, v), content_in(b, v));
    let content = gcd_rec(&ca, &cb);
    let mut p = a.divide_exact(&ca).expect("divisible by content");
    let mut q = b.divide_exact(&cb).expect("divisible by content");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        if q.is_zero() {
            break p;
        }
        if q.degree_in(v) == 0 {
            break MultiPoly::one(a.nvars);
        }
        let r = pseudo_remainder(&p, &q, v);
        p = q;
        q = primitive_part_in(&r, v);
    };
    let g = primitive_part_in(&g, v).with_positive_leading();
    content.mul(&g)
}

/// `lc(b)^k · a` reduced modulo `b` as polynomials in `v`.
fn pseudo_remainder(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let db = b.degree_in(v);
    let lb = coefficients_in(b, v).pop().expect("nonzero");
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = coefficients_in(&r, v).pop().expect("nonzero");
        let mut shift = vec![0; a.nvars];
        shift[v] = dr - db;
        r = r.mul(&lb).sub(&lr.mul(b).shift(&shift));
    }
    r
}

/// A quotient of two polynomials in lowest terms: numerator and
/// denominator are coprime polynomials, and the denominator has a positive
/// leading coefficient. Equal functions have equal representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFn {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFn {
    /// Normalizes `num / den`; both may be Laurent polynomials.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        assert_eq!(num.nvars, den.nvars, "variable rosters differ");
        if den.is_zero() {
            return Err(Error::NotDivisible);
        }
        let nvars = num.nvars;
        if num.is_zero() {
            return Ok(RationalFn {
                num,
                den: MultiPoly::one(nvars),
            });
        }
        // Split off the monomial factors, then cancel the rest by a gcd.
        let mn = num.min_exponents();
        let md = den.min_exponents();
        let n0 = num.shift(&mn.iter().map(|x| -x).collect::<Vec<_>>());
        let d0 = den.shift(&md.iter().map(|x| -x).collect::<Vec<_>>());
        // Cluster variables are mostly Laurent, so the denominator usually
        // divides the numerator and no gcd is needed.
        let (mut n1, mut d1) = match n0.divide_exact(&d0) {
            Ok(q) if !d0.is_monomial() => (q, MultiPoly::one(nvars)),
            _ => {
                let g = n0.gcd(&d0);
                (n0.divide_exact(&g)?, d0.divide_exact(&g)?)
            }
        };
        let diff: Vec<i32> = mn.iter().zip(&md).map(|(a, b)| a - b).collect();
        n1 = n1.shift(&diff.iter().map(|&x| x.max(0)).collect::<Vec<_>>());
        d1 = d1.shift(&diff.iter().map(|&x| (-x).max(0)).collect::<Vec<_>>());
        if d1.leading().is_some_and(|(_, c)| c.is_negative()) {
            n1 = n1.neg();
            d1 = d1.neg();
        }
        Ok(RationalFn { num: n1, den: d1 })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let one = MultiPoly::one(p.nvars);
        Self::new(p, one).expect("nonzero denominator")
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(MultiPoly::var(nvars, i))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::one(nvars))
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Self::new(num, self.den.mul(&o.den)).expect("nonzero denominator")
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominator")
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inverse()?))
    }

    /// `self^k` for any integer `k` (the zero function has no negative powers).
    pub fn pow(&self, k: i64) -> Result<Self> {
        let e = u32::try_from(k.unsigned_abs())
            .map_err(|_| Error::Resource(format!("exponent {k} is too large")))?;
        let p = RationalFn {
            num: self.num.pow(e),
            den: self.den.pow(e),
        };
        if k < 0 {
            p.inverse()
        } else {
            Ok(p)
        }
    }

    /// Applies a monomial substitution to numerator and denominator.
    pub fn substitute_monomials(&self, target_nvars: usize, images: &[Exponents]) -> Result<Self> {
        Self::new(
            self.num.substitute_monomials(target_nvars, images),
            self.den.substitute_monomials(target_nvars, images),
        )
    }

    /// The denominator is a single monomial with coefficient 1, that is, the
    /// function is a Laurent polynomial with integer coefficients.
    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial() && self.den.leading().is_some_and(|(_, c)| c.is_one())
    }

    /// Laurent with no negative coefficient.
    pub fn is_positive_laurent(&self) -> bool {
        self.is_laurent() && self.num.has_nonnegative_coefficients()
    }

    /// The function as a Laurent polynomial, if it is one.
    pub fn as_laurent(&self) -> Option<MultiPoly> {
        if !self.is_laurent() {
            return None;
        }
        let (e, _) = self.den.leading()?;
        Some(self.num.shift(&e.iter().map(|x| -x).collect::<Vec<_>>()))
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.den.is_one() {
            return self.num.display(names);
        }
        let wrap = |p: &MultiPoly, product: bool| {
            let s = p.display(names);
            if p.term_count() > 1 || (product && s.contains('*')) {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&self.num, false), wrap(&self.den, true))
    }
}
