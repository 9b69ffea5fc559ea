//! The linear pencil `A(z) = z0 I + z1 A1 + ... + zn An` of a matrix tuple
//! and its characteristic polynomial `Q_A(z) = det A(z)`.
//!
//! `Q_A` is computed by two unrelated routes that are expected to agree:
//! a memoized Laplace expansion of the polynomial determinant
//! ([`charpoly_det`]), and Newton's identities applied to the power traces
//! `tr(A_*(z')^j)` of the `z0`-free part ([`charpoly_ps`]).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::poly::MultiPoly;

pub const DET_MAX_K: usize = 14;
pub const PS_MAX_K: usize = 10;
pub const COFACTOR_MAX_K: usize = 10;

/// An ordered tuple `(A1, ..., An)` of `k x k` complex matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TupleJson", into = "TupleJson")]
pub struct MatrixTuple {
    k: usize,
    mats: Vec<CMatrix>,
}

impl MatrixTuple {
    pub fn new(k: usize, mats: Vec<CMatrix>) -> Result<Self> {
        if k == 0 {
            return Err(Error::Input("matrix size must be positive".into()));
        }
        for (i, m) in mats.iter().enumerate() {
            if m.rows() != k || m.cols() != k {
                return Err(Error::Input(format!(
                    "matrix {} is {}x{}, expected {k}x{k}",
                    i + 1,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(MatrixTuple { k, mats })
    }

    /// Tuple from a non-empty list, taking `k` from the first matrix.
    pub fn from_matrices(mats: Vec<CMatrix>) -> Result<Self> {
        let k = mats
            .first()
            .map(CMatrix::rows)
            .ok_or_else(|| Error::Input("empty matrix tuple".into()))?;
        Self::new(k, mats)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of matrices `n`.
    pub fn n(&self) -> usize {
        self.mats.len()
    }

    /// Variables of `Q_A`: `z0` plus one per matrix.
    pub fn nvars(&self) -> usize {
        self.mats.len() + 1
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.mats
    }

    /// `(U A1 U*, ..., U An U*)`.
    pub fn conjugate_by(&self, u: &CMatrix) -> MatrixTuple {
        MatrixTuple {
            k: self.k,
            mats: self.mats.iter().map(|m| m.conjugate_by(u)).collect(),
        }
    }

    /// The numeric matrix `A_*(z') = z1 A1 + ... + zn An`.
    pub fn combination(&self, zprime: &[Complex64]) -> Result<CMatrix> {
        if zprime.len() != self.n() {
            return Err(Error::Input(format!(
                "expected {} pencil parameters, got {}",
                self.n(),
                zprime.len()
            )));
        }
        let mut out = CMatrix::zeros(self.k, self.k);
        for (m, &z) in self.mats.iter().zip(zprime) {
            out = &out + &m.scale(z);
        }
        Ok(out)
    }
}

/// Wire form: `{"k": k, "matrices": [matrix, ...]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TupleJson {
    k: usize,
    matrices: Vec<CMatrix>,
}

impl From<MatrixTuple> for TupleJson {
    fn from(t: MatrixTuple) -> Self {
        TupleJson {
            k: t.k,
            matrices: t.mats,
        }
    }
}

impl TryFrom<TupleJson> for MatrixTuple {
    type Error = Error;
    fn try_from(j: TupleJson) -> Result<Self> {
        MatrixTuple::new(j.k, j.matrices)
    }
}

/// A square matrix of polynomials sharing one arity.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    k: usize,
    nvars: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn new(k: usize, entries: Vec<MultiPoly>) -> Result<Self> {
        if entries.len() != k * k {
            return Err(Error::Input(format!(
                "{k}x{k} polynomial matrix needs {} entries",
                k * k
            )));
        }
        let nvars = entries.first().map_or(0, MultiPoly::nvars);
        if entries.iter().any(|e| e.nvars() != nvars) {
            return Err(Error::Input("polynomial entries differ in arity".into()));
        }
        Ok(PolyMatrix { k, nvars, entries })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.k + j]
    }

    pub fn trace(&self) -> MultiPoly {
        (0..self.k).fold(MultiPoly::zero(self.nvars), |acc, i| &acc + self.get(i, i))
    }

    pub fn matmul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.k, other.k);
        let k = self.k;
        let mut entries = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let mut acc = MultiPoly::zero(self.nvars);
                for l in 0..k {
                    let (a, b) = (self.get(i, l), other.get(l, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        PolyMatrix {
            k,
            nvars: self.nvars,
            entries,
        }
    }

    /// The matrix with row `row` and column `col` deleted.
    pub fn minor(&self, row: usize, col: usize) -> PolyMatrix {
        let k = self.k;
        let entries = (0..k)
            .filter(|&i| i != row)
            .flat_map(|i| (0..k).filter(move |&j| j != col).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMatrix {
            k: k - 1,
            nvars: self.nvars,
            entries,
        }
    }

    /// Determinant by Laplace expansion memoized over column subsets.
    ///
    /// `dets[S]` holds the minor on the first `|S|` rows and the columns in
    /// `S`; each level expands along its last row. Costs `O(2^k k)`
    /// polynomial multiply-adds with a fixed summation order.
    pub fn determinant(&self) -> MultiPoly {
        let k = self.k;
        if k == 0 {
            return MultiPoly::one(self.nvars);
        }
        let full = 1usize << k;
        let mut dets: Vec<Option<MultiPoly>> = vec![None; full];
        dets[0] = Some(MultiPoly::one(self.nvars));
        for level in 1..=k {
            let row = level - 1;
            for set in (0..full).filter(|s| s.count_ones() as usize == level) {
                let mut acc = MultiPoly::zero(self.nvars);
                for col in (0..k).filter(|c| set & (1 << c) != 0) {
                    let entry = self.get(row, col);
                    if entry.is_zero() {
                        continue;
                    }
                    let rest = dets[set & !(1 << col)].as_ref().expect("lower level");
                    if rest.is_zero() {
                        continue;
                    }
                    let term = entry * rest;
                    let later = (set >> (col + 1)).count_ones();
                    acc = if later % 2 == 0 {
                        &acc + &term
                    } else {
                        &acc - &term
                    };
                }
                dets[set] = Some(acc);
            }
            for set in (0..full).filter(|s| s.count_ones() as usize == level - 1) {
                dets[set] = None;
            }
        }
        dets[full - 1].take().expect("full determinant")
    }
}

fn pencil_with(t: &MatrixTuple, include_z0: bool) -> PolyMatrix {
    let k = t.k;
    let nvars = t.nvars();
    let mut entries = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut coeffs = vec![Complex64::new(0.0, 0.0); nvars];
            if include_z0 && i == j {
                coeffs[0] = Complex64::new(1.0, 0.0);
            }
            for (m, a) in t.mats.iter().enumerate() {
                coeffs[m + 1] = a[(i, j)];
            }
            entries.push(MultiPoly::linear(&coeffs));
        }
    }
    PolyMatrix { k, nvars, entries }
}

/// `A(z)`: entry `(i, j)` is `z0 δ_ij + Σ_m z_m (A_m)_ij`.
pub fn build_pencil(t: &MatrixTuple) -> PolyMatrix {
    pencil_with(t, true)
}

/// `A_*(z') = z1 A1 + ... + zn An`, still written in all `n + 1` variables.
pub fn build_star_pencil(t: &MatrixTuple) -> PolyMatrix {
    pencil_with(t, false)
}

fn check_cap(k: usize, cap: usize, what: &str) -> Result<()> {
    if k > cap {
        return Err(Error::Capability(format!(
            "{what} supports k <= {cap}, got k = {k}"
        )));
    }
    Ok(())
}

/// `Q_A` as the determinant of the pencil.
pub fn charpoly_det(t: &MatrixTuple) -> Result<MultiPoly> {
    check_cap(t.k, DET_MAX_K, "determinant expansion")?;
    Ok(build_pencil(t).determinant())
}

/// Coefficients `c_0..c_k` of `det(λ + A_*(z')) = Σ λ^{k-m} c_m`, from the
/// power traces `p_j = tr(A_*^j)` via `m c_m = Σ_{j=1..m} (-1)^{j-1} p_j c_{m-j}`.
pub fn power_trace_coefficients(t: &MatrixTuple) -> Result<Vec<MultiPoly>> {
    check_cap(t.k, PS_MAX_K, "power-trace expansion")?;
    let nvars = t.nvars();
    let star = build_star_pencil(t);
    let mut traces = Vec::with_capacity(t.k);
    let mut power = star.clone();
    traces.push(power.trace());
    for _ in 2..=t.k {
        power = power.matmul(&star);
        traces.push(power.trace());
    }
    let mut c = vec![MultiPoly::one(nvars)];
    for m in 1..=t.k {
        let mut acc = MultiPoly::zero(nvars);
        for j in 1..=m {
            let term = &traces[j - 1] * &c[m - j];
            acc = if j % 2 == 1 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        c.push(acc.scale(Complex64::new(1.0 / m as f64, 0.0)));
    }
    Ok(c)
}

/// `Q_A = Σ_m z0^{k-m} c_m(A_*(z'))` assembled from power traces.
pub fn charpoly_ps(t: &MatrixTuple) -> Result<MultiPoly> {
    let c = power_trace_coefficients(t)?;
    let z0 = MultiPoly::var(t.nvars(), 0);
    let k = t.k as u32;
    Ok(c.iter()
        .enumerate()
        .fold(MultiPoly::zero(t.nvars()), |acc, (m, cm)| {
            &acc + &(&z0.pow(k - m as u32) * cm)
        }))
}

/// `q1(z') = Σ_j z_j tr A_j`, in the `n` variables `z1..zn`.
pub fn q1_closed_form(t: &MatrixTuple) -> MultiPoly {
    let coeffs: Vec<Complex64> = t.mats.iter().map(CMatrix::trace).collect();
    MultiPoly::linear(&coeffs)
}

/// `q2(z') = ½ Σ_{i,j} z_i z_j (tr A_i tr A_j − tr(A_i A_j))`.
pub fn q2_closed_form(t: &MatrixTuple) -> MultiPoly {
    let n = t.n();
    let traces: Vec<Complex64> = t.mats.iter().map(CMatrix::trace).collect();
    let mut terms = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut exps = vec![0u32; n];
            exps[i] += 1;
            exps[j] += 1;
            let w = traces[i] * traces[j] - (&t.mats[i] * &t.mats[j]).trace();
            terms.push((exps, w * 0.5));
        }
    }
    MultiPoly::from_terms(n, terms).expect("exponent vectors have length n")
}

/// Tolerance for agreement of the closed forms of `q1`, `q2` with the expansion.
pub const CLOSED_FORM_TOL: f64 = 1e-9;

/// `q_0..q_k` (polynomials in `z1..zn`) from `Q_A = Σ z0^{k-m} q_m(z')`.
///
/// `q1` and `q2` are cross-checked against their trace closed forms.
pub fn q_coefficients(t: &MatrixTuple) -> Result<Vec<MultiPoly>> {
    let q = charpoly_det(t)?;
    let k = t.k as u32;
    let qs = (0..=k)
        .map(|m| q.coefficient_of(0, k - m))
        .collect::<Result<Vec<_>>>()?;
    let mut checks = vec![(1, q1_closed_form(t))];
    if t.k >= 2 {
        checks.push((2, q2_closed_form(t)));
    }
    for (m, closed) in checks {
        if !qs[m].canonical_equal(&closed, CLOSED_FORM_TOL)? {
            return Err(Error::Numerical(format!(
                "q{m} from the expansion disagrees with its trace closed form by {:.3e}",
                qs[m].max_coeff_diff(&closed)?
            )));
        }
    }
    Ok(qs)
}

/// Cofactor matrix `C_ij = (−1)^{i+j} det(minor_ij A(z))` of the pencil.
pub fn cofactor_matrix(t: &MatrixTuple) -> Result<PolyMatrix> {
    check_cap(t.k, COFACTOR_MAX_K, "cofactor matrix")?;
    Ok(cofactors(&build_pencil(t)))
}

/// Cofactor matrix of an arbitrary polynomial matrix.
pub fn cofactors(a: &PolyMatrix) -> PolyMatrix {
    let k = a.k;
    let mut entries = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let d = a.minor(i, j).determinant();
            entries.push(if (i + j) % 2 == 0 { d } else { -&d });
        }
    }
    PolyMatrix {
        k,
        nvars: a.nvars,
        entries,
    }
}

/// `q_{k-m}(z') = (1/m!) ∂^{m-1}/∂z0^{m-1} tr C_A(z)` at `z0 = 0`.
pub fn qkm_via_cofactor(t: &MatrixTuple, m: usize) -> Result<MultiPoly> {
    if m < 1 || m >= t.k {
        return Err(Error::Input(format!(
            "m must satisfy 1 <= m <= k-1 = {}, got {m}",
            t.k.saturating_sub(1)
        )));
    }
    let mut d = cofactor_matrix(t)?.trace();
    for _ in 1..m {
        d = d.partial(0)?;
    }
    let factorial: f64 = (1..=m).map(|x| x as f64).product();
    Ok(d.coefficient_of(0, 0)?
        .scale(Complex64::new(1.0 / factorial, 0.0)))
}

pub const DK_MAX_ITER: usize = 500;
pub const DK_TOL: f64 = 1e-10;

/// All roots of a polynomial given by ascending coefficients, by
/// Durand-Kerner (Weierstrass) iteration.
///
/// Starting points lie on the circle of radius `1 + max |a_i / a_d|` at
/// angles `2πj/d + 0.4`. Iteration stops when every update is below
/// `DK_TOL (1 + |z|)` or after `DK_MAX_ITER` sweeps; multiple roots converge
/// only linearly and are returned at the accuracy reached.
pub fn durand_kerner(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let degree = coeffs
        .iter()
        .rposition(|c| c.norm() != 0.0)
        .ok_or_else(|| Error::Input("zero polynomial has no roots".into()))?;
    if degree == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[degree];
    let monic: Vec<Complex64> = coeffs[..=degree].iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic[..degree].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let eval = |z: Complex64| {
        monic
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    };
    let mut roots: Vec<Complex64> = (0..degree)
        .map(|j| {
            let angle = 2.0 * std::f64::consts::PI * j as f64 / degree as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    for _ in 0..DK_MAX_ITER {
        let mut converged = true;
        let previous = roots.clone();
        for j in 0..degree {
            let zj = previous[j];
            let mut denom = Complex64::new(1.0, 0.0);
            for (l, &zl) in previous.iter().enumerate() {
                if l != j {
                    denom *= zj - zl;
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(f64::EPSILON, 0.0);
            }
            let step = eval(zj) / denom;
            roots[j] = zj - step;
            if step.norm() > DK_TOL * (1.0 + zj.norm()) {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }
    Ok(merge_multiple_roots(&monic, roots))
}

/// Distance (relative to `1 + |z|`) under which roots are grouped.
const CLUSTER_RADIUS: f64 = 1e-2;

/// Replaces each cluster of `m` nearby roots by a single `m`-fold root when
/// one fits to rounding accuracy. Iterates on an `m`-fold root only reach
/// about `eps^(1/m)`, but the root is a simple zero of the `(m-1)`-th
/// derivative, where Newton's method is well conditioned. Distinct close
/// roots fail the residual test and are kept.
fn merge_multiple_roots(monic: &[Complex64], mut roots: Vec<Complex64>) -> Vec<Complex64> {
    let n = roots.len();
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in 0..i {
            if (roots[i] - roots[j]).norm() < CLUSTER_RADIUS * (1.0 + roots[i].norm()) {
                let (a, b) = (label[i], label[j]);
                label.iter_mut().filter(|l| **l == a).for_each(|l| *l = b);
            }
        }
    }
    for group in 0..n {
        let members: Vec<usize> = (0..n).filter(|&i| label[i] == group).collect();
        let m = members.len();
        if m < 2 {
            continue;
        }
        let centre = members.iter().map(|&i| roots[i]).sum::<Complex64>() / m as f64;
        let spread = members
            .iter()
            .map(|&i| (roots[i] - centre).norm())
            .fold(0.0, f64::max);
        let d = derivative(monic, m - 1);
        let dd = derivative(&d, 1);
        let mut x = centre;
        for _ in 0..50 {
            let slope = horner(&dd, x);
            if slope.norm() == 0.0 {
                break;
            }
            let step = horner(&d, x) / slope;
            x -= step;
            if step.norm() <= 1e-16 * (1.0 + x.norm()) {
                break;
            }
        }
        if (x - centre).norm() > 2.0 * spread + 1e-12 * (1.0 + centre.norm()) {
            continue;
        }
        let worst = members
            .iter()
            .map(|&i| horner(monic, roots[i]).norm())
            .fold(0.0, f64::max);
        let floor = 1e-14 * horner_abs(monic, x);
        if horner(monic, x).norm() <= 100.0 * worst.max(floor) {
            members.iter().for_each(|&i| roots[i] = x);
        }
    }
    roots
}

/// `order`-th derivative of an ascending coefficient list.
fn derivative(coeffs: &[Complex64], order: usize) -> Vec<Complex64> {
    (order..coeffs.len())
        .map(|j| {
            let falling: f64 = (j + 1 - order..=j).map(|f| f as f64).product();
            coeffs[j] * falling
        })
        .collect()
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

fn horner_abs(coeffs: &[Complex64], z: Complex64) -> f64 {
    coeffs
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * z.norm() + c.norm())
}

/// The `k` roots in `z0` of `Q_A(z0, z')`, with multiplicity, sorted by
/// real then imaginary part. They are the negated eigenvalues of `A_*(z')`.
pub fn pencil_spectrum(t: &MatrixTuple, zprime: &[Complex64]) -> Result<Vec<Complex64>> {
    if zprime.len() != t.n() {
        return Err(Error::Input(format!(
            "expected {} pencil parameters, got {}",
            t.n(),
            zprime.len()
        )));
    }
    let q = charpoly_det(t)?;
    let coeffs = q.univariate(0, zprime)?;
    let mut roots = durand_kerner(&coeffs)?;
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
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

    fn generic_pair() -> MatrixTuple {
        MatrixTuple::from_matrices(vec![
            CMatrix::diag_real(&[1.0, 0.0]),
            CMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]),
        ])
        .unwrap()
    }

    /// z0^2 + z0 (z1 + z2) + ½ z1 z2
    fn generic_pair_poly() -> MultiPoly {
        &(&z(3, 0).pow(2) + &(&z(3, 0) * &(&z(3, 1) + &z(3, 2))))
            + &(&z(3, 1) * &z(3, 2)).scale(c(0.5))
    }

    #[test]
    fn pencil_of_identity() {
        let t = MatrixTuple::from_matrices(vec![CMatrix::identity(2)]).unwrap();
        let a = build_pencil(&t);
        let d = &z(2, 0) + &z(2, 1);
        assert_eq!(a.get(0, 0), &d);
        assert_eq!(a.get(1, 1), &d);
        assert!(a.get(0, 1).is_zero() && a.get(1, 0).is_zero());
    }

    #[test]
    fn pencil_of_generic_pair() {
        let a = build_pencil(&generic_pair());
        let half = |p: MultiPoly| p.scale(c(0.5));
        assert_eq!(a.get(0, 0), &(&(&z(3, 0) + &z(3, 1)) + &half(z(3, 2))));
        assert_eq!(a.get(0, 1), &half(z(3, 2)));
        assert_eq!(a.get(1, 0), &half(z(3, 2)));
        assert_eq!(a.get(1, 1), &(&z(3, 0) + &half(z(3, 2))));
    }

    #[test]
    fn pencil_of_zero_tuple() {
        let t = MatrixTuple::from_matrices(vec![CMatrix::zeros(3, 3)]).unwrap();
        let a = build_pencil(&t);
        for i in 0..3 {
            assert_eq!(a.get(i, i), &z(2, 0));
        }
        assert_eq!(charpoly_det(&t).unwrap(), z(2, 0).pow(3));
        assert_eq!(charpoly_ps(&t).unwrap(), z(2, 0).pow(3));
    }

    #[test]
    fn tuple_validation() {
        assert!(MatrixTuple::new(2, vec![CMatrix::zeros(2, 3)]).is_err());
        assert!(MatrixTuple::from_matrices(vec![]).is_err());
        let bad = r#"{"k":2,"matrices":[{"rows":3,"cols":3,"entries":[]}]}"#;
        assert!(serde_json::from_str::<MatrixTuple>(bad).is_err());
    }

    #[test]
    fn diagonal_corner_pair() {
        let t = MatrixTuple::from_matrices(vec![
            CMatrix::diag_real(&[1.0, 1.0, 0.0, 0.0]),
            CMatrix::diag_real(&[1.0, 0.0, 1.0, 0.0]),
        ])
        .unwrap();
        let expect = [
            z(3, 0),
            &z(3, 0) + &z(3, 1),
            &z(3, 0) + &z(3, 2),
            &(&z(3, 0) + &z(3, 1)) + &z(3, 2),
        ]
        .iter()
        .fold(MultiPoly::one(3), |acc, f| &acc * f);
        assert_eq!(charpoly_det(&t).unwrap(), expect);
        assert!(charpoly_ps(&t)
            .unwrap()
            .canonical_equal(&expect, 1e-12)
            .unwrap());
    }

    #[test]
    fn identity_gives_binomial_power() {
        for k in 1..=5 {
            let t = MatrixTuple::from_matrices(vec![CMatrix::identity(k)]).unwrap();
            let expect = (&z(2, 0) + &z(2, 1)).pow(k as u32);
            assert_eq!(charpoly_det(&t).unwrap(), expect);
        }
    }

    #[test]
    fn generic_pair_charpoly_both_routes() {
        let t = generic_pair();
        let q = charpoly_det(&t).unwrap();
        assert!(q.canonical_equal(&generic_pair_poly(), 1e-15).unwrap());
        assert!(charpoly_ps(&t).unwrap().canonical_equal(&q, 1e-12).unwrap());
    }

    #[test]
    fn newton_recursion_by_hand() {
        let t = MatrixTuple::from_matrices(vec![CMatrix::diag_real(&[1.0, 2.0])]).unwrap();
        let coeffs = power_trace_coefficients(&t).unwrap();
        assert_eq!(coeffs[1], z(2, 1).scale(c(3.0)));
        assert_eq!(coeffs[2], z(2, 1).pow(2).scale(c(2.0)));
        let expect = &(&z(2, 0) + &z(2, 1)) * &(&z(2, 0) + &z(2, 1).scale(c(2.0)));
        assert_eq!(charpoly_ps(&t).unwrap(), expect);
    }

    #[test]
    fn size_caps() {
        let big = MatrixTuple::from_matrices(vec![CMatrix::zeros(15, 15)]).unwrap();
        assert!(matches!(charpoly_det(&big), Err(Error::Capability(_))));
        let mid = MatrixTuple::from_matrices(vec![CMatrix::zeros(11, 11)]).unwrap();
        assert!(matches!(charpoly_ps(&mid), Err(Error::Capability(_))));
        assert!(matches!(cofactor_matrix(&mid), Err(Error::Capability(_))));
    }

    #[test]
    fn q_coefficients_of_generic_pair() {
        let qs = q_coefficients(&generic_pair()).unwrap();
        assert_eq!(qs.len(), 3);
        assert_eq!(qs[0], MultiPoly::one(2));
        assert!(qs[1]
            .canonical_equal(&(&z(2, 0) + &z(2, 1)), 1e-15)
            .unwrap());
        let half = (&z(2, 0) * &z(2, 1)).scale(c(0.5));
        assert!(qs[2].canonical_equal(&half, 1e-15).unwrap());
        assert!(q2_closed_form(&generic_pair())
            .canonical_equal(&half, 1e-15)
            .unwrap());
    }

    #[test]
    fn cofactors_of_symbolic_2x2() {
        let a = PolyMatrix::new(2, vec![z(4, 0), z(4, 1), z(4, 2), z(4, 3)]).unwrap();
        let cof = cofactors(&a);
        assert_eq!(cof.get(0, 0), &z(4, 3));
        assert_eq!(cof.get(0, 1), &-&z(4, 2));
        assert_eq!(cof.get(1, 0), &-&z(4, 1));
        assert_eq!(cof.get(1, 1), &z(4, 0));
    }

    #[test]
    fn cofactor_of_zero_tuple() {
        let t = MatrixTuple::from_matrices(vec![CMatrix::zeros(2, 2)]).unwrap();
        let cof = cofactor_matrix(&t).unwrap();
        assert_eq!(cof.get(0, 0), &z(2, 0));
        assert_eq!(cof.get(1, 1), &z(2, 0));
        assert_eq!(cof.trace(), charpoly_det(&t).unwrap().partial(0).unwrap());
    }

    #[test]
    fn qkm_on_small_examples() {
        let q1 = qkm_via_cofactor(&generic_pair(), 1).unwrap();
        assert!(q1.canonical_equal(&(&z(2, 0) + &z(2, 1)), 1e-15).unwrap());
        let k = 4;
        let t = MatrixTuple::from_matrices(vec![CMatrix::identity(k)]).unwrap();
        let q1 = qkm_via_cofactor(&t, k - 1).unwrap();
        assert!(q1
            .canonical_equal(&z(1, 0).scale(c(k as f64)), 1e-14)
            .unwrap());
        assert!(matches!(qkm_via_cofactor(&t, 0), Err(Error::Input(_))));
        assert!(matches!(qkm_via_cofactor(&t, k), Err(Error::Input(_))));
    }

    #[test]
    fn spectrum_examples() {
        let t = MatrixTuple::from_matrices(vec![CMatrix::identity(2)]).unwrap();
        for r in pencil_spectrum(&t, &[c(1.0)]).unwrap() {
            assert!((r - c(-1.0)).norm() < 1e-6, "{r}");
        }
        let roots = pencil_spectrum(&generic_pair(), &[c(1.0), c(1.0)]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((roots[0] - c(-1.0 - s)).norm() < 1e-10);
        assert!((roots[1] - c(-1.0 + s)).norm() < 1e-10);
        let zero = pencil_spectrum(&generic_pair(), &[c(0.0), c(0.0)]).unwrap();
        assert_eq!(zero.len(), 2);
        assert!(zero.iter().all(|r| r.norm() < 1e-6));
        assert!(pencil_spectrum(&generic_pair(), &[c(0.0)]).is_err());
    }

    #[test]
    fn durand_kerner_simple_cubic() {
        // (x - 1)(x - 2)(x + 3) = x^3 - 7x + 6
        let mut roots = durand_kerner(&[c(6.0), c(-7.0), c(0.0), c(1.0)]).unwrap();
        roots.sort_by(|a, b| a.re.total_cmp(&b.re));
        for (r, e) in roots.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((r - c(e)).norm() < 1e-10);
        }
    }

    #[test]
    fn multiple_roots_are_resolved() {
        // (z - 1)^3 (z + 2)(z - 0.5)^2
        let mut coeffs = vec![c(1.0)];
        for r in [1.0, 1.0, 1.0, -2.0, 0.5, 0.5] {
            let mut next = vec![c(0.0); coeffs.len() + 1];
            for (i, a) in coeffs.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            coeffs = next;
        }
        let mut roots: Vec<f64> = durand_kerner(&coeffs)
            .unwrap()
            .iter()
            .map(|z| z.re)
            .collect();
        roots.sort_by(f64::total_cmp);
        for (got, want) in roots.iter().zip([-2.0, 0.5, 0.5, 1.0, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
    }

    #[test]
    fn close_distinct_roots_are_kept_apart() {
        let (a, b) = (0.3, 0.3 + 1e-4);
        let coeffs = [c(a * b), c(-(a + b)), c(1.0)];
        let mut roots: Vec<f64> = durand_kerner(&coeffs)
            .unwrap()
            .iter()
            .map(|z| z.re)
            .collect();
        roots.sort_by(f64::total_cmp);
        assert!((roots[0] - a).abs() < 1e-10 && (roots[1] - b).abs() < 1e-10);
    }
}
