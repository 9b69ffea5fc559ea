//! Sparse multivariate polynomials with complex double-precision coefficients.
//!
//! Variables are indexed `z0, z1, ..., z(nvars-1)`. Terms are kept in a map
//! keyed by graded-lexicographic monomials with `z0` most significant, so
//! the `z0` expansion of a characteristic polynomial is a prefix scan of the
//! term list. Every arithmetic result is pruned: coefficients with modulus
//! below [`PRUNE_RELATIVE`]` * (1 + max modulus)` are dropped.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative threshold below which coefficients are discarded.
pub const PRUNE_RELATIVE: f64 = 1e-12;

/// Exponent vector of a monomial, `z0` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then exponents from `z0` on.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse polynomial in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Complex64>,
}

fn arity_error(a: usize, b: usize) -> Error {
    Error::Input(format!("polynomial arity mismatch: {a} vs {b} variables"))
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Complex64::new(1.0, 0.0))
    }

    pub fn constant(nvars: usize, c: Complex64) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::one(nvars), c);
        p.prune();
        p
    }

    /// The coordinate polynomial `z_index`.
    ///
    /// Panics if `index >= nvars`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(
            index < nvars,
            "variable z{index} out of range for {nvars} variables"
        );
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial(exps), Complex64::new(1.0, 0.0));
        p
    }

    /// `sum_i coeffs[i] * z_i`, with `coeffs.len()` variables.
    pub fn linear(coeffs: &[Complex64]) -> Self {
        let nvars = coeffs.len();
        let mut p = Self::zero(nvars);
        for (i, &c) in coeffs.iter().enumerate() {
            let mut exps = vec![0; nvars];
            exps[i] = 1;
            p.terms.insert(Monomial(exps), c);
        }
        p.prune();
        p
    }

    /// Builds a polynomial from arbitrary `(exponents, coefficient)` pairs.
    /// Duplicate monomials are summed; the result is pruned.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Complex64)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::Input(format!(
                    "monomial has {} exponents, polynomial has {nvars} variables",
                    exps.len()
                )));
            }
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::Input("non-finite coefficient".into()));
            }
            *p.terms.entry(Monomial(exps)).or_default() += c;
        }
        p.prune();
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in strictly decreasing graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter().rev()
    }

    /// Coefficient of the given monomial (zero if absent).
    pub fn coeff(&self, exps: &[u32]) -> Complex64 {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .copied()
            .unwrap_or_default()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn max_modulus(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn prune(&mut self) {
        let threshold = PRUNE_RELATIVE * (1.0 + self.max_modulus());
        self.terms.retain(|_, c| c.norm() >= threshold);
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        if self.nvars != other.nvars {
            return Err(arity_error(self.nvars, other.nvars));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            *out.terms.entry(m.clone()).or_default() += c;
        }
        out.prune();
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        if self.nvars != other.nvars {
            return Err(arity_error(self.nvars, other.nvars));
        }
        let mut terms: BTreeMap<Monomial, Complex64> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *terms.entry(ma.times(mb)).or_default() += ca * cb;
            }
        }
        let mut out = MultiPoly {
            nvars: self.nvars,
            terms,
        };
        out.prune();
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> MultiPoly {
        let mut out = MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        };
        out.prune();
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to `z_var`.
    pub fn partial(&self, var: usize) -> Result<MultiPoly> {
        if var >= self.nvars {
            return Err(Error::Input(format!(
                "derivative variable z{var} out of range for {} variables",
                self.nvars
            )));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            terms.insert(Monomial(exps), c * f64::from(e));
        }
        let mut out = MultiPoly {
            nvars: self.nvars,
            terms,
        };
        out.prune();
        Ok(out)
    }

    /// Evaluates by direct monomial summation in canonical (decreasing) order.
    pub fn evaluate(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.nvars {
            return Err(arity_error(self.nvars, point.len()));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in self.terms() {
            let mut v = *c;
            for (&z, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    v *= z;
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Largest coefficientwise difference `max |a_m - b_m|` over all monomials.
    pub fn max_coeff_diff(&self, other: &MultiPoly) -> Result<f64> {
        if self.nvars != other.nvars {
            return Err(arity_error(self.nvars, other.nvars));
        }
        let mut worst: f64 = 0.0;
        for (m, c) in &self.terms {
            let d = c - other.terms.get(m).copied().unwrap_or_default();
            worst = worst.max(d.norm());
        }
        for (m, c) in &other.terms {
            if !self.terms.contains_key(m) {
                worst = worst.max(c.norm());
            }
        }
        Ok(worst)
    }

    /// True iff every coefficient differs by at most
    /// `tol * (1 + max coefficient modulus of either polynomial)`.
    pub fn canonical_equal(&self, other: &MultiPoly, tol: f64) -> Result<bool> {
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::Input(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        let scale = 1.0 + self.max_modulus().max(other.max_modulus());
        Ok(self.max_coeff_diff(other)? <= tol * scale)
    }

    /// Collects the terms with `z_var^power` and removes `z_var`, giving a
    /// polynomial in the remaining `nvars - 1` variables.
    pub fn coefficient_of(&self, var: usize, power: u32) -> Result<MultiPoly> {
        if var >= self.nvars {
            return Err(Error::Input(format!("variable z{var} out of range")));
        }
        let mut out = MultiPoly::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            if m.0[var] == power {
                let mut exps = m.0.clone();
                exps.remove(var);
                out.terms.insert(Monomial(exps), *c);
            }
        }
        out.prune();
        Ok(out)
    }

    /// Inserts a new variable (with exponent zero everywhere) at position `at`.
    pub fn insert_var(&self, at: usize) -> MultiPoly {
        assert!(at <= self.nvars);
        MultiPoly {
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.0.clone();
                    exps.insert(at, 0);
                    (Monomial(exps), *c)
                })
                .collect(),
        }
    }

    /// Renames variables: `z_i` becomes `z_perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Result<MultiPoly> {
        let mut seen = vec![false; self.nvars];
        if perm.len() != self.nvars {
            return Err(arity_error(self.nvars, perm.len()));
        }
        for &p in perm {
            if p >= self.nvars || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Input("not a permutation of the variables".into()));
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0; self.nvars];
                for (i, &e) in m.0.iter().enumerate() {
                    exps[perm[i]] = e;
                }
                (Monomial(exps), *c)
            })
            .collect();
        Ok(MultiPoly {
            nvars: self.nvars,
            terms,
        })
    }

    /// Substitutes `z_i -> images[i]`. All images must share one arity,
    /// which becomes the arity of the result.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars {
            return Err(arity_error(self.nvars, images.len()));
        }
        let target = images.first().map_or(0, MultiPoly::nvars);
        if images.iter().any(|p| p.nvars != target) {
            return Err(Error::Input("substitution images differ in arity".into()));
        }
        let mut out = MultiPoly::zero(target);
        for (m, c) in self.terms() {
            let mut term = MultiPoly::constant(target, *c);
            for (img, &e) in images.iter().zip(&m.0) {
                if e > 0 {
                    term = term.try_mul(&img.pow(e))?;
                }
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    /// Coefficients (ascending powers) of the univariate polynomial in `z_var`
    /// obtained by fixing every other variable to `others` (given in variable
    /// order with `z_var` skipped).
    pub fn univariate(&self, var: usize, others: &[Complex64]) -> Result<Vec<Complex64>> {
        if var >= self.nvars || others.len() + 1 != self.nvars {
            return Err(arity_error(self.nvars, others.len() + 1));
        }
        let degree = self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0) as usize;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); degree + 1];
        for (m, c) in self.terms() {
            let mut v = *c;
            let mut slot = 0;
            for (i, &e) in m.0.iter().enumerate() {
                if i == var {
                    continue;
                }
                for _ in 0..e {
                    v *= others[slot];
                }
                slot += 1;
            }
            coeffs[m.0[var] as usize] += v;
        }
        Ok(coeffs)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("polynomial arity mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("polynomial arity mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("polynomial arity mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

fn fmt_real(f: &mut fmt::Formatter<'_>, x: f64) -> fmt::Result {
    if x == x.trunc() && x.abs() < 1e15 {
        write!(f, "{}", x as i64)
    } else {
        write!(f, "{x}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let real = c.im == 0.0;
            let negative = real && c.re < 0.0;
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_const = m.degree() == 0;
            if real {
                let a = c.re.abs();
                if a != 1.0 || is_const {
                    fmt_real(f, a)?;
                    if !is_const {
                        write!(f, "*")?;
                    }
                }
            } else {
                write!(f, "({}{:+}i)", c.re, c.im)?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "z{i}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exps: Vec<u32>,
    re: f64,
    im: f64,
}

/// Wire form: `{"nvars": N, "terms": [{"exps": [...], "re": r, "im": i}, ...]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyJson {
    nvars: usize,
    terms: Vec<TermJson>,
}

impl From<MultiPoly> for PolyJson {
    fn from(p: MultiPoly) -> Self {
        PolyJson {
            nvars: p.nvars,
            terms: p
                .terms()
                .map(|(m, c)| TermJson {
                    exps: m.0.clone(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for MultiPoly {
    type Error = Error;
    fn try_from(j: PolyJson) -> Result<Self> {
        MultiPoly::from_terms(
            j.nvars,
            j.terms
                .into_iter()
                .map(|t| (t.exps, Complex64::new(t.re, t.im))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn z(nvars: usize, i: usize) -> MultiPoly {
        MultiPoly::var(nvars, i)
    }

    #[test]
    fn add_cancels() {
        let a = &z(2, 0) + &z(2, 1);
        let b = &z(2, 0) - &z(2, 1);
        assert_eq!(&a + &b, z(2, 0).scale(c(2.0)));
        assert_eq!(&a + &MultiPoly::zero(2), a);
    }

    #[test]
    fn add_disjoint_supports() {
        let a = z(3, 0).pow(2);
        let b = &z(3, 1) * &z(3, 2);
        let s = &a + &b;
        assert_eq!(s.num_terms(), 2);
        assert_eq!(s.coeff(&[2, 0, 0]), c(1.0));
        assert_eq!(s.coeff(&[0, 1, 1]), c(1.0));
    }

    #[test]
    fn arity_mismatch_is_input_error() {
        let e = z(2, 0).try_add(&z(3, 0)).unwrap_err();
        assert!(matches!(e, Error::Input(_)));
        assert!(z(2, 0).try_mul(&z(3, 0)).is_err());
        assert!(z(2, 0).evaluate(&[c(1.0)]).is_err());
        assert!(z(2, 0).canonical_equal(&z(3, 0), 1e-9).is_err());
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&z(2, 0) + &z(2, 1)) * &(&z(2, 0) - &z(2, 1));
        let expect = &z(2, 0).pow(2) - &z(2, 1).pow(2);
        assert_eq!(p, expect);
        assert_eq!(&p * &MultiPoly::one(2), p);
    }

    #[test]
    fn diagonal_pencil_product_matches_brute_force() {
        // z0 (z0+z1)(z0+z2)(z0+z1+z2) against the determinant of the diagonal
        // pencil, evaluated at a handful of integer points.
        let n = 3;
        let f = [
            z(n, 0),
            &z(n, 0) + &z(n, 1),
            &z(n, 0) + &z(n, 2),
            &(&z(n, 0) + &z(n, 1)) + &z(n, 2),
        ];
        let prod = f.iter().fold(MultiPoly::one(n), |acc, x| &acc * x);
        assert_eq!(prod.total_degree(), Some(4));
        assert_eq!(prod.coeff(&[4, 0, 0]), c(1.0));
        for pt in [[1.0, 2.0, 3.0], [-1.0, 0.5, 2.0], [2.0, -3.0, 1.0]] {
            let diag = [pt[0], pt[0] + pt[1], pt[0] + pt[2], pt[0] + pt[1] + pt[2]];
            let det: f64 = diag.iter().product();
            let pt: Vec<_> = pt.iter().map(|&x| c(x)).collect();
            assert!((prod.evaluate(&pt).unwrap() - c(det)).norm() < 1e-12);
        }
    }

    #[test]
    fn partial_derivatives() {
        assert_eq!(z(3, 0).pow(2).partial(0).unwrap(), z(3, 0).scale(c(2.0)));
        assert!((&z(3, 1) * &z(3, 2)).partial(0).unwrap().is_zero());
        // z0^2 + z0(z1+z2) + 1/2 z1 z2
        let q = &(&z(3, 0).pow(2) + &(&z(3, 0) * &(&z(3, 1) + &z(3, 2))))
            + &(&z(3, 1) * &z(3, 2)).scale(c(0.5));
        let d = q.partial(0).unwrap();
        let expect = &(&z(3, 0).scale(c(2.0)) + &z(3, 1)) + &z(3, 2);
        assert_eq!(d, expect);
        assert!(matches!(q.partial(3), Err(Error::Input(_))));
    }

    #[test]
    fn evaluation() {
        let p = &z(2, 0) + &z(2, 1);
        assert_eq!(p.evaluate(&[c(1.0), c(2.0)]).unwrap(), c(3.0));
        let a2 = &(&(&z(3, 0).pow(2) - &z(3, 1).pow(2)) - &z(3, 2).pow(2)) + &(&z(3, 1) * &z(3, 2));
        assert_eq!(a2.evaluate(&[c(0.0), c(1.0), c(1.0)]).unwrap(), c(-1.0));
        let pt = [Complex64::new(0.3, -2.0), c(7.0)];
        assert_eq!(MultiPoly::zero(2).evaluate(&pt).unwrap(), c(0.0));
    }

    #[test]
    fn canonical_equal_cases() {
        let p = &(&z(3, 0) + &z(3, 1)) * &(&z(3, 0) + &z(3, 2));
        assert!(p.canonical_equal(&p, 1e-12).unwrap());
        let q = &(&z(3, 0).pow(2) + &(&z(3, 0) * &(&z(3, 1) + &z(3, 2))))
            + &(&z(3, 1) * &z(3, 2)).scale(c(0.5));
        assert!(!p.canonical_equal(&q, 1e-9).unwrap());
        let nudged = &p + &z(3, 0).scale(c(1e-15));
        assert!(p.canonical_equal(&nudged, 1e-9).unwrap());
        assert!(p.canonical_equal(&p, 0.0).is_err());
    }

    #[test]
    fn prune_drops_relative_noise() {
        let p = MultiPoly::from_terms(1, [(vec![1], c(1.0)), (vec![0], c(1e-13))]).unwrap();
        assert_eq!(p.num_terms(), 1);
        let p = MultiPoly::from_terms(1, [(vec![1], c(1e-13))]).unwrap();
        assert!(p.is_zero());
        let p = MultiPoly::from_terms(1, [(vec![1], c(1e-9))]).unwrap();
        assert_eq!(p.num_terms(), 1);
    }

    #[test]
    fn serialization_order_is_decreasing_grlex() {
        let p = &(&(&z(3, 0) + &z(3, 1)) + &z(3, 2)).pow(2) + &MultiPoly::one(3);
        let v: serde_json::Value = serde_json::to_value(&p).unwrap();
        let exps: Vec<Vec<u32>> = v["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| serde_json::from_value(t["exps"].clone()).unwrap())
            .collect();
        assert_eq!(exps[0], vec![2, 0, 0]);
        assert_eq!(exps[1], vec![1, 1, 0]);
        assert_eq!(exps.last().unwrap(), &vec![0, 0, 0]);
        for w in exps.windows(2) {
            assert!(Monomial(w[0].clone()) > Monomial(w[1].clone()));
        }
    }

    #[test]
    fn reader_canonicalizes_any_order() {
        let text = r#"{"nvars":2,"terms":[{"exps":[0,1],"re":1.0,"im":0.0},
            {"exps":[1,0],"re":2.0,"im":0.0},{"exps":[0,1],"re":0.5,"im":0.0}]}"#;
        let p: MultiPoly = serde_json::from_str(text).unwrap();
        assert_eq!(p.coeff(&[0, 1]), c(1.5));
        assert_eq!(p.terms().next().unwrap().0.exps(), &[1, 0]);
        let bad = r#"{"nvars":2,"terms":[{"exps":[0],"re":1.0,"im":0.0}]}"#;
        assert!(serde_json::from_str::<MultiPoly>(bad).is_err());
    }

    #[test]
    fn substitution_and_permutation() {
        // (z0 + z1)^2 with z0 -> z0 + z1, z1 -> -z1 gives z0^2
        let p = (&z(2, 0) + &z(2, 1)).pow(2);
        let s = p.substitute(&[&z(2, 0) + &z(2, 1), -&z(2, 1)]).unwrap();
        assert_eq!(s, z(2, 0).pow(2));
        let sw = (&z(3, 0) * &z(3, 1)).permute_vars(&[0, 2, 1]).unwrap();
        assert_eq!(sw, &z(3, 0) * &z(3, 2));
        assert!(p.permute_vars(&[0, 0]).is_err());
    }

    #[test]
    fn coefficient_slices_and_univariate() {
        let p = (&z(3, 0) + &(&z(3, 1) + &z(3, 2))).pow(2);
        let q1 = p.coefficient_of(0, 1).unwrap();
        assert_eq!(q1, (&z(2, 0) + &z(2, 1)).scale(c(2.0)));
        let u = p.univariate(0, &[c(1.0), c(1.0)]).unwrap();
        assert_eq!(u, vec![c(4.0), c(4.0), c(1.0)]);
    }

    #[test]
    fn display_is_readable() {
        let q = &(&z(3, 0).pow(2) - &(&z(3, 1) * &z(3, 2)).scale(c(0.5))) + &MultiPoly::one(3);
        assert_eq!(q.to_string(), "z0^2 - 0.5*z1*z2 + 1");
    }
}
