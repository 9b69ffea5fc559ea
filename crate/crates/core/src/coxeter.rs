//! Coxeter matrices, their reflection (Tits) representations, and the
//! characteristic polynomial of the reflection generators.
//!
//! The representation sends `g_i` to `ρ_i` with `ρ_i e_j = e_j + 2 α_ij e_i`,
//! `α_ij = cos(π / m_ij)` (`α_ii = -1`, `α_ij = 1` for `m_ij = ∞`). In the
//! `z0` expansion of `Q_ρ`, the `z_i z_j` coefficient of `q2` is
//! `(n-2)² - (n-4) - 4 α_ij²`, so the Coxeter matrix can be read back from
//! the polynomial.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::pencil::{charpoly_det, MatrixTuple};
use crate::poly::MultiPoly;

pub const MAX_RANK: usize = 10;
/// `α` at or above `1 - ALPHA_INF_TOL` is read as `m = ∞`.
pub const ALPHA_INF_TOL: f64 = 1e-9;
/// Rounded `m` above this is read as `∞`.
pub const M_INF_GUARD: u64 = 1000;
pub const RECOVERY_TOL: f64 = 1e-6;

/// One entry `m_ij` of a Coxeter matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    /// `cos(π / m)`, with `1` for `∞`.
    pub fn alpha(self) -> f64 {
        match self {
            Order::Finite(1) => -1.0,
            Order::Finite(2) => 0.0,
            Order::Finite(m) => (PI / m as f64).cos(),
            Order::Infinite => 1.0,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(m) => s.serialize_u64(*m),
            Order::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Order {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(m) => Ok(Order::Finite(m)),
            Raw::Str(s) if s == "inf" => Ok(Order::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected a positive integer or \"inf\", got {s:?}"
            ))),
        }
    }
}

/// Symmetric matrix `(m_ij)` with `m_ii = 1` and `m_ij >= 2` off the diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CoxeterJson", into = "CoxeterJson")]
pub struct CoxeterMatrix {
    n: usize,
    m: Vec<Order>,
}

impl CoxeterMatrix {
    pub fn new(n: usize, m: Vec<Order>) -> Result<Self> {
        if n == 0 || m.len() != n * n {
            return Err(Error::Input(format!(
                "Coxeter matrix of rank {n} needs {} entries",
                n * n
            )));
        }
        for i in 0..n {
            if m[i * n + i] != Order::Finite(1) {
                return Err(Error::Input(format!("m_{i}{i} must be 1")));
            }
            for j in 0..n {
                if m[i * n + j] != m[j * n + i] {
                    return Err(Error::Input(format!(
                        "Coxeter matrix not symmetric at ({i}, {j})"
                    )));
                }
                if i != j && matches!(m[i * n + j], Order::Finite(x) if x < 2) {
                    return Err(Error::Input(format!("m_{i}{j} must be at least 2")));
                }
            }
        }
        Ok(CoxeterMatrix { n, m })
    }

    /// Builds from the strictly upper triangle, listed row by row.
    pub fn from_upper(n: usize, upper: &[Order]) -> Result<Self> {
        if upper.len() != n * (n.saturating_sub(1)) / 2 {
            return Err(Error::Input(
                "wrong number of upper-triangle entries".into(),
            ));
        }
        let mut m = vec![Order::Finite(1); n * n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = *it.next().expect("length checked");
                m[i * n + j] = v;
                m[j * n + i] = v;
            }
        }
        Self::new(n, m)
    }

    /// `A_n` (path with `m = 3` edges).
    pub fn type_a(n: usize) -> Self {
        Self::linear(n, |_| Order::Finite(3))
    }

    /// `B_n`: path with the last edge labelled 4.
    pub fn type_b(n: usize) -> Self {
        Self::linear(n, |i| Order::Finite(if i + 2 == n { 4 } else { 3 }))
    }

    /// `H_3`: path `5 - 3`.
    pub fn type_h3() -> Self {
        Self::linear(3, |i| Order::Finite(if i == 0 { 5 } else { 3 }))
    }

    /// Dihedral `I_2(m)`.
    pub fn dihedral(m: Order) -> Self {
        Self::linear(2, |_| m)
    }

    /// Linear diagram: `m_{i,i+1} = edge(i)`, non-adjacent pairs commute.
    fn linear(n: usize, edge: impl Fn(usize) -> Order) -> Self {
        let mut m = vec![Order::Finite(2); n * n];
        for i in 0..n {
            m[i * n + i] = Order::Finite(1);
            if i + 1 < n {
                m[i * n + i + 1] = edge(i);
                m[(i + 1) * n + i] = edge(i);
            }
        }
        CoxeterMatrix { n, m }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Order {
        self.m[i * self.n + j]
    }
}

/// Wire form: `{"n": n, "m": [[1, 3], [3, 1]]}`, `"inf"` for `∞`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoxeterJson {
    n: usize,
    m: Vec<Vec<Order>>,
}

impl From<CoxeterMatrix> for CoxeterJson {
    fn from(c: CoxeterMatrix) -> Self {
        CoxeterJson {
            n: c.n,
            m: c.m.chunks(c.n).map(<[Order]>::to_vec).collect(),
        }
    }
}

impl TryFrom<CoxeterJson> for CoxeterMatrix {
    type Error = Error;
    fn try_from(j: CoxeterJson) -> Result<Self> {
        if j.m.len() != j.n || j.m.iter().any(|r| r.len() != j.n) {
            return Err(Error::Input(format!("Coxeter matrix must be {0}x{0}", j.n)));
        }
        CoxeterMatrix::new(j.n, j.m.into_iter().flatten().collect())
    }
}

/// Reflection representation of a Coxeter system.
#[derive(Clone, Debug)]
pub struct TitsRep {
    pub n: usize,
    /// `α_ij`, row-major.
    pub alphas: Vec<f64>,
    /// `ρ(g_1), ..., ρ(g_n)`.
    pub gens: Vec<CMatrix>,
    /// `B(e_i, e_j) = -α_ij`, row-major.
    pub bform: Vec<f64>,
}

impl TitsRep {
    pub fn alpha(&self, i: usize, j: usize) -> f64 {
        self.alphas[i * self.n + j]
    }

    pub fn tuple(&self) -> MatrixTuple {
        MatrixTuple::new(self.n, self.gens.clone()).expect("square generators")
    }

    /// `B` as a real matrix.
    pub fn bform_matrix(&self) -> CMatrix {
        CMatrix::from_fn(self.n, self.n, |i, j| {
            Complex64::new(self.bform[i * self.n + j], 0.0)
        })
    }

    /// `max_k |ρ_kᵀ B ρ_k - B|_F`, the failure of `B`-invariance.
    pub fn bform_defect(&self) -> f64 {
        let b = self.bform_matrix();
        self.gens
            .iter()
            .map(|g| (&(&(&g.transpose() * &b) * g) - &b).frobenius())
            .fold(0.0, f64::max)
    }
}

/// `ρ(g_i) = I + 2 e_i α_iᵀ`, i.e. row `i` becomes `δ_ij + 2 α_ij`.
pub fn tits_representation(cm: &CoxeterMatrix) -> TitsRep {
    let n = cm.n;
    let alphas: Vec<f64> = cm.m.iter().map(|o| o.alpha()).collect();
    let gens = (0..n)
        .map(|i| {
            let mut g = CMatrix::identity(n);
            for j in 0..n {
                g[(i, j)] += Complex64::new(2.0 * alphas[i * n + j], 0.0);
            }
            g
        })
        .collect();
    let bform = alphas.iter().map(|a| -a).collect();
    TitsRep {
        n,
        alphas,
        gens,
        bform,
    }
}

/// `Q_ρ = det(z0 I + Σ z_i ρ(g_i))`.
pub fn coxeter_charpoly(cm: &CoxeterMatrix) -> Result<MultiPoly> {
    if cm.n > MAX_RANK {
        return Err(Error::Capability(format!(
            "Coxeter rank is capped at {MAX_RANK}, got {}",
            cm.n
        )));
    }
    let rep = tits_representation(cm);
    let tuple = rep.tuple();
    let q = charpoly_det(&tuple)?;
    let n = cm.n as u32;
    let q1 = q.coefficient_of(0, n - 1)?;
    let expect = MultiPoly::linear(&vec![Complex64::new(f64::from(n) - 2.0, 0.0); cm.n]);
    if !q1.canonical_equal(&expect, 1e-9)? {
        return Err(Error::Numerical(
            "q1 of the reflection generators is not (n-2) Σ z_i".into(),
        ));
    }
    Ok(q)
}

/// `z_i z_j` coefficient of `q2` for a given `α_ij`.
pub fn q2_cross_coefficient(n: usize, alpha: f64) -> f64 {
    let n = n as f64;
    (n - 2.0).powi(2) - (n - 4.0) - 4.0 * alpha * alpha
}

fn exps(nvars: usize, pairs: &[(usize, u32)]) -> Vec<u32> {
    let mut e = vec![0; nvars];
    for &(i, p) in pairs {
        e[i] += p;
    }
    e
}

fn near(c: Complex64, target: f64) -> bool {
    (c - Complex64::new(target, 0.0)).norm() <= RECOVERY_TOL
}

/// Reads the Coxeter matrix back from a polynomial produced by
/// [`coxeter_charpoly`].
pub fn recover_coxeter(q: &MultiPoly) -> Result<CoxeterMatrix> {
    let nvars = q.nvars();
    if nvars < 2 {
        return Err(Error::NotTits("needs at least the variables z0, z1".into()));
    }
    let n = nvars - 1;
    let deg = n as u32;
    if q.total_degree() != Some(deg) {
        return Err(Error::NotTits(format!("total degree must be {n}")));
    }
    if !near(q.coeff(&exps(nvars, &[(0, deg)])), 1.0) {
        return Err(Error::NotTits(format!("coefficient of z0^{n} must be 1")));
    }
    let q1 = n as f64 - 2.0;
    for i in 1..=n {
        let got = q.coeff(&exps(nvars, &[(0, deg - 1), (i, 1)]));
        if !near(got, q1) {
            return Err(Error::NotTits(format!(
                "coefficient of z0^{}*z{i} is {got}, expected n-2 = {q1}",
                n - 1
            )));
        }
    }
    let mut m = vec![Order::Finite(1); n * n];
    if n >= 2 {
        let square = 0.5 * (n as f64 - 1.0) * (n as f64 - 4.0);
        for i in 1..=n {
            let got = q.coeff(&exps(nvars, &[(0, deg - 2), (i, 2)]));
            if !near(got, square) {
                return Err(Error::NotTits(format!(
                    "coefficient of z0^{}*z{i}^2 is {got}, expected (n-1)(n-4)/2 = {square}",
                    n - 2
                )));
            }
        }
        let top = q2_cross_coefficient(n, 0.0);
        for i in 0..n {
            for j in i + 1..n {
                let got = q.coeff(&exps(nvars, &[(0, deg - 2), (i + 1, 1), (j + 1, 1)]));
                if got.im.abs() > RECOVERY_TOL {
                    return Err(Error::NotTits(format!(
                        "complex z{}*z{} coefficient",
                        i + 1,
                        j + 1
                    )));
                }
                let alpha_sq = (top - got.re) / 4.0;
                if !(-RECOVERY_TOL..=1.0 + RECOVERY_TOL).contains(&alpha_sq) {
                    return Err(Error::NotTits(format!(
                        "z{}*z{} coefficient {} gives α² = {alpha_sq} outside [0, 1]",
                        i + 1,
                        j + 1,
                        got.re
                    )));
                }
                let order = order_from_alpha(alpha_sq.clamp(0.0, 1.0).sqrt()).ok_or_else(|| {
                    Error::NotTits(format!(
                        "α = {} for (z{}, z{}) is not cos(π/m) for an integer m",
                        alpha_sq.sqrt(),
                        i + 1,
                        j + 1
                    ))
                })?;
                m[i * n + j] = order;
                m[j * n + i] = order;
            }
        }
    }
    let cm = CoxeterMatrix::new(n, m)?;
    let rebuilt = coxeter_charpoly(&cm)?;
    if !rebuilt.canonical_equal(q, RECOVERY_TOL)? {
        return Err(Error::NotTits(format!(
            "polynomial differs from that of the recovered Coxeter matrix by {:.3e}",
            rebuilt.max_coeff_diff(q)?
        )));
    }
    Ok(cm)
}

fn order_from_alpha(alpha: f64) -> Option<Order> {
    if alpha >= 1.0 - ALPHA_INF_TOL {
        return Some(Order::Infinite);
    }
    let m = (PI / alpha.acos()).round();
    if m > M_INF_GUARD as f64 {
        return Some(Order::Infinite);
    }
    let m = m as u64;
    (m >= 2 && (Order::Finite(m).alpha() - alpha).abs() <= RECOVERY_TOL).then_some(Order::Finite(m))
}

/// `p_i = (I + ρ(g_i)) / 2`, the projections onto the `B`-orthogonal
/// complements of `e_i`.
pub fn hyperplane_projections(cm: &CoxeterMatrix) -> MatrixTuple {
    let rep = tits_representation(cm);
    let id = CMatrix::identity(cm.n);
    let mats = rep.gens.iter().map(|g| (&id + g).scale_real(0.5)).collect();
    MatrixTuple::new(cm.n, mats).expect("square")
}

pub const HYPERPLANE_TOL: f64 = 1e-7;
/// Minimum Gram determinant of the unit kernel vectors.
pub const INDEPENDENCE_GRAM_TOL: f64 = 1e-8;

/// Unit kernel vectors `e_i` of `n` idempotents of rank `n - 1`, phased as
/// described in [`hyperplane_equivalence`], with the coefficient matrix
/// `α_ij` defined by `(p_i - I) e_j = α_ij e_i`.
#[derive(Clone, Debug)]
pub struct KernelFrame {
    pub vectors: CMatrix,
    pub alphas: CMatrix,
}

pub fn kernel_frame(p: &MatrixTuple) -> Result<KernelFrame> {
    let n = p.k();
    if p.n() != n {
        return Err(Error::Input(format!(
            "need {n} projections in dimension {n}, got {}",
            p.n()
        )));
    }
    let id = CMatrix::identity(n);
    let mut vectors = Vec::with_capacity(n);
    for (i, pi) in p.matrices().iter().enumerate() {
        let scale = 1.0 + pi.frobenius();
        if (&(pi * pi) - pi).frobenius() > 1e-8 * scale {
            return Err(Error::Input(format!("matrix {} is not idempotent", i + 1)));
        }
        if (pi.trace() - Complex64::new(n as f64 - 1.0, 0.0)).norm() > 1e-6 {
            return Err(Error::Input(format!(
                "matrix {} does not have rank n-1",
                i + 1
            )));
        }
        // ker p_i = ran (I - p_i): take its largest column.
        let comp = &id - pi;
        let col = (0..n)
            .map(|j| comp.column(j))
            .max_by(|a, b| norm(a).total_cmp(&norm(b)))
            .expect("n >= 1");
        let len = norm(&col);
        let mut v: Vec<Complex64> = col.into_iter().map(|x| x / len).collect();
        let big = v
            .iter()
            .copied()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .expect("n >= 1");
        let phase = big.conj() / big.norm();
        v.iter_mut().for_each(|x| *x *= phase);
        vectors.push(v);
    }
    let mut e = CMatrix::from_columns(n, &vectors);
    let gram = &e.adjoint() * &e;
    let gram_det = gram.determinant()?.norm();
    if gram_det < INDEPENDENCE_GRAM_TOL {
        return Err(Error::Input(format!(
            "kernel vectors are not linearly independent (Gram determinant {gram_det:.3e})"
        )));
    }

    let alphas_of = |e: &CMatrix| -> CMatrix {
        CMatrix::from_fn(n, n, |i, j| {
            let ei = e.column(i);
            let w = (&p.matrices()[i] - &id).matvec(&e.column(j));
            ei.iter().zip(&w).map(|(a, b)| a.conj() * b).sum()
        })
    };

    // Rephase along a spanning forest so tree edges carry real α_ij >= 0.
    let alphas = alphas_of(&e);
    let mut visited = vec![false; n];
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if visited[j] || alphas[(i, j)].norm() <= HYPERPLANE_TOL {
                    continue;
                }
                // Rescaling e_j by a unit c multiplies α_ij by c; α_ij itself
                // was computed with the current phases of e_i and e_j, and
                // e_i is final once visited.
                let a = alphas_of(&e)[(i, j)];
                let c = a.conj() / a.norm();
                for r in 0..n {
                    e[(r, j)] *= c;
                }
                visited[j] = true;
                stack.push(j);
            }
        }
    }
    let alphas = alphas_of(&e);
    Ok(KernelFrame { vectors: e, alphas })
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Decides whether two tuples of hyperplane projections are similar via a
/// map sending kernel vectors to kernel vectors, and returns that map.
///
/// Kernel vectors are unit length, phased so the largest-modulus entry is
/// real positive, then rephased along a spanning forest of the `α` graph so
/// that tree edges carry real non-negative `α_ij`. Returns `None` when the
/// polynomials differ. When the polynomials agree but the phased `α`
/// matrices do not (possible for complex tuples with no real phasing), or
/// the witness fails verification, a numerical error is raised.
pub fn hyperplane_equivalence(p: &MatrixTuple, p2: &MatrixTuple) -> Result<Option<CMatrix>> {
    if p.k() != p2.k() || p.n() != p2.n() {
        return Err(Error::Input("tuples differ in size".into()));
    }
    let fa = kernel_frame(p)?;
    let fb = kernel_frame(p2)?;
    if !charpoly_det(p)?.canonical_equal(&charpoly_det(p2)?, HYPERPLANE_TOL)? {
        return Ok(None);
    }
    let gram_gap = (&fa.alphas - &fb.alphas).frobenius();
    if gram_gap > HYPERPLANE_TOL {
        return Err(Error::Numerical(format!(
            "polynomials agree but the phased α matrices differ by {gram_gap:.3e}; \
             the tuples admit no common real phasing"
        )));
    }
    let u = &fb.vectors * &fa.vectors.inverse()?;
    let u_inv = u.inverse()?;
    let residual = p
        .matrices()
        .iter()
        .zip(p2.matrices())
        .map(|(a, b)| (&(&(&u * a) * &u_inv) - b).frobenius())
        .fold(0.0, f64::max);
    if residual > HYPERPLANE_TOL {
        return Err(Error::Numerical(format!(
            "hyperplane witness residual {residual:.3e} exceeds {HYPERPLANE_TOL:e}"
        )));
    }
    Ok(Some(u))
}

/// `(I - p_1, ..., I - p_n)` for rank-one projections `p_i`.
pub fn rank1_reduction(p: &MatrixTuple) -> Result<MatrixTuple> {
    let id = CMatrix::identity(p.k());
    for (i, m) in p.matrices().iter().enumerate() {
        if (m.trace() - Complex64::new(1.0, 0.0)).norm() > 1e-6 {
            return Err(Error::Input(format!(
                "matrix {} does not have rank 1",
                i + 1
            )));
        }
    }
    MatrixTuple::new(p.k(), p.matrices().iter().map(|m| &id - m).collect())
}

/// `Q_{I-p}(z0, z') = Q_p(z0 + Σ z_i, -z')`.
pub fn complement_charpoly(q: &MultiPoly) -> Result<MultiPoly> {
    let nvars = q.nvars();
    let mut images = Vec::with_capacity(nvars);
    let shifted: Vec<Complex64> = vec![Complex64::new(1.0, 0.0); nvars];
    images.push(MultiPoly::linear(&shifted));
    for i in 1..nvars {
        images.push(-&MultiPoly::var(nvars, i));
    }
    q.substitute(&images)
}

/// Equivalence of rank-one tuples through their complements.
pub fn rank1_equivalence(p: &MatrixTuple, p2: &MatrixTuple) -> Result<Option<CMatrix>> {
    hyperplane_equivalence(&rank1_reduction(p)?, &rank1_reduction(p2)?)
}
