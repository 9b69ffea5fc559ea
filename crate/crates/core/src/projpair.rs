//! Pairs of orthogonal projections.
//!
//! Any pair `(P, Q)` splits the space into the four "corner" subspaces
//! `L∩N, L∩N⊥, L⊥∩N, L⊥∩N⊥` (with `L = ran P`, `N = ran Q`) and a generic
//! part `M0 ⊕ M1` of even dimension on which, in a suitable basis,
//!
//! ```text
//! P = [ I  0 ]      Q = [ H            √(H(I-H)) ]
//!     [ 0  0 ]          [ √(H(I-H))    I-H       ]
//! ```
//!
//! with `H` diagonal and `0 < H < I`. The corner dimensions and the spectrum
//! of `H` form a complete unitary invariant, and they determine
//! `det(z0 I + z1 P + z2 Q)` in closed form.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, is_orthogonal_projection, unitary_residual, CMatrix};
use crate::pencil::{charpoly_det, MatrixTuple};
use crate::poly::MultiPoly;

/// Eigenvalues within this distance of 0 or 1 belong to a corner subspace.
pub const BAND: f64 = 1e-7;
/// Tolerance for matching `H` spectra of two pairs.
pub const SPECTRUM_MATCH_TOL: f64 = 1e-6;
/// Default tolerance for `Q_a == Q_b`.
pub const POLY_EQUAL_TOL: f64 = 1e-7;
pub const WITNESS_TOL: f64 = 1e-7;
pub const WITNESS_UNITARY_TOL: f64 = 1e-8;
/// Canonical-form residual beyond which the decomposition is rejected.
pub const CANONICAL_FAIL_TOL: f64 = 1e-6;

/// Two orthogonal projections of equal size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PairJson", into = "PairJson")]
pub struct ProjectionPair {
    p: CMatrix,
    q: CMatrix,
}

impl ProjectionPair {
    pub fn new(p: CMatrix, q: CMatrix) -> Result<Self> {
        if !p.is_square() || p.rows() != q.rows() || !q.is_square() {
            return Err(Error::Input(
                "projections must be square and of equal size".into(),
            ));
        }
        for (name, m) in [("p", &p), ("q", &q)] {
            if !is_orthogonal_projection(m) {
                return Err(Error::Input(format!(
                    "{name} is not an orthogonal projection (needs p* = p = p^2)"
                )));
            }
        }
        Ok(ProjectionPair { p, q })
    }

    pub fn k(&self) -> usize {
        self.p.rows()
    }

    pub fn p(&self) -> &CMatrix {
        &self.p
    }

    pub fn q(&self) -> &CMatrix {
        &self.q
    }

    pub fn to_tuple(&self) -> MatrixTuple {
        MatrixTuple::new(self.k(), vec![self.p.clone(), self.q.clone()]).expect("square pair")
    }

    /// `Q_p(z0, z1, z2) = det(z0 I + z1 P + z2 Q)`.
    pub fn charpoly(&self) -> Result<MultiPoly> {
        charpoly_det(&self.to_tuple())
    }
}

/// Wire form: `{"k": k, "p": matrix, "q": matrix}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairJson {
    k: usize,
    p: CMatrix,
    q: CMatrix,
}

impl From<ProjectionPair> for PairJson {
    fn from(pp: ProjectionPair) -> Self {
        PairJson {
            k: pp.k(),
            p: pp.p,
            q: pp.q,
        }
    }
}

impl TryFrom<PairJson> for ProjectionPair {
    type Error = Error;
    fn try_from(j: PairJson) -> Result<Self> {
        if j.p.rows() != j.k {
            return Err(Error::Input(format!(
                "declared k = {} but p is {}x{}",
                j.k,
                j.p.rows(),
                j.p.cols()
            )));
        }
        ProjectionPair::new(j.p, j.q)
    }
}

/// Complete unitary invariant of a projection pair.
///
/// `k1..k4` are the dimensions of `L⊥∩N⊥`, `L∩N⊥`, `L⊥∩N`, `L∩N`;
/// `h_spectrum` (ascending) is the spectrum of `H = PQP` on `M0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalmosInvariants {
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
    pub k4: usize,
    pub m0: usize,
    pub h_spectrum: Vec<f64>,
    /// Some eigenvalue sat within a factor 10 of a classification band edge.
    #[serde(skip)]
    pub near_band_edge: bool,
}

impl HalmosInvariants {
    /// Validates and sorts `h_spectrum`; `m0` is its length.
    pub fn new(
        k1: usize,
        k2: usize,
        k3: usize,
        k4: usize,
        mut h_spectrum: Vec<f64>,
    ) -> Result<Self> {
        if let Some(h) = h_spectrum.iter().find(|&&h| !(h > BAND && h < 1.0 - BAND)) {
            return Err(Error::Input(format!(
                "H eigenvalue {h} outside ({BAND}, 1 - {BAND})"
            )));
        }
        h_spectrum.sort_by(f64::total_cmp);
        Ok(HalmosInvariants {
            k1,
            k2,
            k3,
            k4,
            m0: h_spectrum.len(),
            h_spectrum,
            near_band_edge: false,
        })
    }

    /// `k1 + k2 + k3 + k4 + 2 m0`.
    pub fn k(&self) -> usize {
        self.k1 + self.k2 + self.k3 + self.k4 + 2 * self.m0
    }

    /// Spectrum of `I - H`, ascending.
    pub fn sigma_ih(&self) -> Vec<f64> {
        self.h_spectrum.iter().rev().map(|h| 1.0 - h).collect()
    }

    pub fn is_generic(&self) -> bool {
        self.k1 == 0 && self.k2 == 0 && self.k3 == 0 && self.k4 == 0
    }

    /// Same corner dimensions and `H` spectra within `tol` under sorted pairing.
    pub fn matches(&self, other: &HalmosInvariants, tol: f64) -> bool {
        (self.k1, self.k2, self.k3, self.k4, self.m0)
            == (other.k1, other.k2, other.k3, other.k4, other.m0)
            && self
                .h_spectrum
                .iter()
                .zip(&other.h_spectrum)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

fn near_edge(lambda: f64) -> bool {
    let d = lambda.abs().min((1.0 - lambda).abs());
    (BAND / 10.0..=BAND * 10.0).contains(&d)
}

/// Orthonormal bases of the six summands, plus the invariants.
struct Decomposition {
    inv: HalmosInvariants,
    /// Columns: `L∩N, L∩N⊥, L⊥∩N, L⊥∩N⊥, M0 (h ascending), M1 (partners)`.
    basis: CMatrix,
}

/// Splits the eigenvectors of `B* Q B` (`B` an orthonormal basis of a
/// subspace) into those near 0, those near 1, and the rest.
struct Split {
    zero: Vec<Vec<Complex64>>,
    one: Vec<Vec<Complex64>>,
    middle: Vec<(f64, Vec<Complex64>)>,
    near_edge: bool,
}

fn split_compression(basis: &CMatrix, q: &CMatrix) -> Result<Split> {
    let mut split = Split {
        zero: Vec::new(),
        one: Vec::new(),
        middle: Vec::new(),
        near_edge: false,
    };
    if basis.cols() == 0 {
        return Ok(split);
    }
    let compressed = &(&basis.adjoint() * q) * basis;
    let eig = hermitian_eigen(&compressed)?;
    for (j, &lambda) in eig.values.iter().enumerate() {
        split.near_edge |= near_edge(lambda);
        let v = basis.matvec(&eig.vectors.column(j));
        if lambda <= BAND {
            split.zero.push(v);
        } else if lambda >= 1.0 - BAND {
            split.one.push(v);
        } else {
            split.middle.push((lambda, v));
        }
    }
    Ok(split)
}

fn rounded_rank(m: &CMatrix) -> usize {
    m.trace().re.round().max(0.0) as usize
}

fn decompose(pp: &ProjectionPair) -> Result<Decomposition> {
    let k = pp.k();
    let (p, q) = (&pp.p, &pp.q);
    // Orthonormal bases of ran P and ker P from the spectrum of P.
    let eig_p = hermitian_eigen(p)?;
    let split_at = eig_p.values.iter().position(|&v| v > 0.5).unwrap_or(k);
    let cols: Vec<Vec<Complex64>> = (0..k).map(|j| eig_p.vectors.column(j)).collect();
    let ker_p = CMatrix::from_columns(k, &cols[..split_at]);
    let ran_p = CMatrix::from_columns(k, &cols[split_at..]);
    if ran_p.cols() != rounded_rank(p) {
        return Err(Error::Numerical(
            "rank of p disagrees with its trace".into(),
        ));
    }

    let on_l = split_compression(&ran_p, q)?;
    let on_lperp = split_compression(&ker_p, q)?;

    let k4 = on_l.one.len();
    let k2 = on_l.zero.len();
    let m0 = on_l.middle.len();
    let rank_p = rounded_rank(p) as isize;
    let rank_q = rounded_rank(q) as isize;
    let k3 = rank_q - k4 as isize - m0 as isize;
    let k1 = k as isize - rank_p - k3 - m0 as isize;
    if k3 < 0 || k1 < 0 {
        return Err(Error::Numerical(format!(
            "negative corner dimension (k1 = {k1}, k3 = {k3}); input is ill-conditioned"
        )));
    }
    if on_lperp.one.len() as isize != k3
        || on_lperp.zero.len() as isize != k1
        || on_lperp.middle.len() != m0
    {
        return Err(Error::Numerical(
            "corner dimensions on ker p disagree with the trace count".into(),
        ));
    }

    let mut h_spectrum = Vec::with_capacity(m0);
    let mut m0_basis = Vec::with_capacity(m0);
    let mut m1_basis = Vec::with_capacity(m0);
    let complement = &CMatrix::identity(k) - p;
    let partner_map = &complement * q;
    for (h, u) in &on_l.middle {
        let w = partner_map.matvec(u);
        let norm = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm <= BAND {
            return Err(Error::Numerical("degenerate M1 partner vector".into()));
        }
        h_spectrum.push(*h);
        m0_basis.push(u.clone());
        m1_basis.push(w.into_iter().map(|x| x / norm).collect::<Vec<_>>());
    }

    let columns: Vec<Vec<Complex64>> = on_l
        .one
        .into_iter()
        .chain(on_l.zero)
        .chain(on_lperp.one)
        .chain(on_lperp.zero)
        .chain(m0_basis)
        .chain(m1_basis)
        .collect();
    let inv = HalmosInvariants {
        k1: k1 as usize,
        k2,
        k3: k3 as usize,
        k4,
        m0,
        h_spectrum,
        near_band_edge: on_l.near_edge || on_lperp.near_edge,
    };
    Ok(Decomposition {
        inv,
        basis: CMatrix::from_columns(k, &columns),
    })
}

/// Corner dimensions and `H` spectrum of the pair.
pub fn halmos_invariants(pp: &ProjectionPair) -> Result<HalmosInvariants> {
    Ok(decompose(pp)?.inv)
}

/// The canonical pair determined by `inv`: corners ordered
/// `(L∩N, L∩N⊥, L⊥∩N, L⊥∩N⊥)`, then the `2 m0` generic block.
pub fn canonical_model(inv: &HalmosInvariants) -> (CMatrix, CMatrix) {
    let m0 = inv.m0;
    let corner_p: Vec<f64> = [(1.0, inv.k4), (1.0, inv.k2), (0.0, inv.k3), (0.0, inv.k1)]
        .iter()
        .flat_map(|&(v, n)| std::iter::repeat_n(v, n))
        .collect();
    let corner_q: Vec<f64> = [(1.0, inv.k4), (0.0, inv.k2), (1.0, inv.k3), (0.0, inv.k1)]
        .iter()
        .flat_map(|&(v, n)| std::iter::repeat_n(v, n))
        .collect();
    let mut gp = CMatrix::zeros(2 * m0, 2 * m0);
    let mut gq = CMatrix::zeros(2 * m0, 2 * m0);
    for (i, &h) in inv.h_spectrum.iter().enumerate() {
        let s = (h * (1.0 - h)).sqrt();
        gp[(i, i)] = Complex64::new(1.0, 0.0);
        gq[(i, i)] = Complex64::new(h, 0.0);
        gq[(i, m0 + i)] = Complex64::new(s, 0.0);
        gq[(m0 + i, i)] = Complex64::new(s, 0.0);
        gq[(m0 + i, m0 + i)] = Complex64::new(1.0 - h, 0.0);
    }
    (
        CMatrix::direct_sum(&[CMatrix::diag_real(&corner_p), gp]),
        CMatrix::direct_sum(&[CMatrix::diag_real(&corner_q), gq]),
    )
}

/// Unitary `U` with `U P U*`, `U Q U*` equal to [`canonical_model`] of the
/// returned invariants.
pub fn canonical_form(pp: &ProjectionPair) -> Result<(CMatrix, HalmosInvariants)> {
    let d = decompose(pp)?;
    let u = d.basis.adjoint();
    let ures = unitary_residual(&u);
    if ures > CANONICAL_FAIL_TOL {
        return Err(Error::Numerical(format!(
            "canonical basis is not unitary (residual {ures:.3e})"
        )));
    }
    let (cp, cq) = canonical_model(&d.inv);
    let residual = (&pp.p.conjugate_by(&u) - &cp)
        .frobenius()
        .max((&pp.q.conjugate_by(&u) - &cq).frobenius());
    if residual > CANONICAL_FAIL_TOL {
        return Err(Error::Numerical(format!(
            "canonical form residual {residual:.3e} exceeds {CANONICAL_FAIL_TOL:e}"
        )));
    }
    Ok((u, d.inv))
}

/// `z0^k1 (z0+z1)^k2 (z0+z2)^k3 (z0+z1+z2)^k4 Π_x (z0² + z0(z1+z2) + z1 z2 x)`
/// over `x` in the spectrum of `I - H`, expanded.
pub fn cpp_polynomial(inv: &HalmosInvariants) -> MultiPoly {
    factorization(inv).iter().fold(MultiPoly::one(3), |acc, f| {
        &acc * &f.poly.pow(f.multiplicity)
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FactorKind {
    Linear,
    /// `z0² + z0(z1+z2) + z1 z2 x`; irreducible exactly when `0 < x < 1`.
    Quadratic {
        x: f64,
        irreducible: bool,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    pub poly: MultiPoly,
    pub multiplicity: u32,
    pub kind: FactorKind,
}

/// Linear factors `z0, z0+z1, z0+z2, z0+z1+z2` (those with nonzero
/// multiplicity), then one quadratic per `x` in the spectrum of `I - H`,
/// `x` ascending.
pub fn factorization(inv: &HalmosInvariants) -> Vec<Factor> {
    let z = |i| MultiPoly::var(3, i);
    let z0 = z(0);
    let mut out = Vec::new();
    let linear = [
        (z0.clone(), inv.k1),
        (&z0 + &z(1), inv.k2),
        (&z0 + &z(2), inv.k3),
        (&(&z0 + &z(1)) + &z(2), inv.k4),
    ];
    for (poly, mult) in linear {
        if mult > 0 {
            out.push(Factor {
                poly,
                multiplicity: mult as u32,
                kind: FactorKind::Linear,
            });
        }
    }
    let base = &z0.pow(2) + &(&z0 * &(&z(1) + &z(2)));
    let z1z2 = &z(1) * &z(2);
    for x in inv.sigma_ih() {
        out.push(Factor {
            poly: &base + &z1z2.scale(Complex64::new(x, 0.0)),
            multiplicity: 1,
            kind: FactorKind::Quadratic {
                x,
                irreducible: x > BAND && x < 1.0 - BAND,
            },
        });
    }
    out
}

/// All four corner subspaces trivial.
pub fn generic_position(pp: &ProjectionPair) -> Result<bool> {
    Ok(halmos_invariants(pp)?.is_generic())
}

/// Trace criterion for pairs: equal traces of `p1`, `p2` and of `(p1 p2)^j` for
/// `1 <= j <= k-1`, each within `1e-8 k`.
pub fn trace_word_criterion(a: &ProjectionPair, b: &ProjectionPair) -> bool {
    let k = a.k();
    if k != b.k() {
        return false;
    }
    let tol = 1e-8 * k as f64;
    if (a.p.trace() - b.p.trace()).norm() > tol || (a.q.trace() - b.q.trace()).norm() > tol {
        return false;
    }
    let (ab_a, ab_b) = (&a.p * &a.q, &b.p * &b.q);
    let (mut pa, mut pb) = (ab_a.clone(), ab_b.clone());
    for j in 1..k {
        if (pa.trace() - pb.trace()).norm() > tol {
            return false;
        }
        if j + 1 < k {
            pa = &pa * &ab_a;
            pb = &pb * &ab_b;
        }
    }
    true
}

/// Largest word count `(2n)^max_len` [`specht_words`] will enumerate.
pub const SPECHT_MAX_WORDS: f64 = 1e6;

/// Default word length bound `2 k²`. Sufficiency of any finite bound for
/// general tuples is assumed here, not proven.
pub fn default_specht_len(k: usize) -> usize {
    2 * k * k
}

/// Compares traces of all words of length `1..=max_len` in the letters
/// `A_1..A_n, A_1*..A_n*` of two tuples, within `1e-7 k`.
pub fn specht_words(a: &MatrixTuple, b: &MatrixTuple, max_len: usize) -> Result<bool> {
    if a.k() != b.k() || a.n() != b.n() {
        return Err(Error::Input("tuples differ in size or length".into()));
    }
    if max_len == 0 {
        return Err(Error::Input("max_len must be at least 1".into()));
    }
    let letters = 2 * a.n();
    if (letters as f64).powi(max_len as i32) > SPECHT_MAX_WORDS {
        return Err(Error::Capability(format!(
            "{letters}^{max_len} words exceed the enumeration limit of {SPECHT_MAX_WORDS:e}"
        )));
    }
    let alphabet = |t: &MatrixTuple| -> Vec<CMatrix> {
        t.matrices()
            .iter()
            .cloned()
            .chain(t.matrices().iter().map(CMatrix::adjoint))
            .collect()
    };
    let (la, lb) = (alphabet(a), alphabet(b));
    let tol = 1e-7 * a.k() as f64;

    fn walk(
        wa: &CMatrix,
        wb: &CMatrix,
        depth: usize,
        max_len: usize,
        la: &[CMatrix],
        lb: &[CMatrix],
        tol: f64,
    ) -> bool {
        if depth > 0 && (wa.trace() - wb.trace()).norm() > tol {
            return false;
        }
        if depth == max_len {
            return true;
        }
        la.iter()
            .zip(lb)
            .all(|(x, y)| walk(&(wa * x), &(wb * y), depth + 1, max_len, la, lb, tol))
    }

    let id = CMatrix::identity(a.k());
    Ok(walk(&id, &id, 0, max_len, &la, &lb, tol))
}

/// `p = (r + I)/2` for a self-adjoint involution `r`.
pub fn involution_to_projection(r: &CMatrix) -> Result<CMatrix> {
    if !r.is_square() {
        return Err(Error::Input("involution must be square".into()));
    }
    let id = CMatrix::identity(r.rows());
    let scale = 1.0 + r.frobenius();
    if r.hermitian_defect() > 1e-8 * scale || (&(r * r) - &id).frobenius() > 1e-8 * scale {
        return Err(Error::Input(
            "matrix is not a self-adjoint involution".into(),
        ));
    }
    Ok((r + &id).scale_real(0.5))
}

/// `r = 2p - I` for an orthogonal projection `p`.
pub fn projection_to_involution(p: &CMatrix) -> Result<CMatrix> {
    if !is_orthogonal_projection(p) {
        return Err(Error::Input(
            "matrix is not an orthogonal projection".into(),
        ));
    }
    Ok(&p.scale_real(2.0) - &CMatrix::identity(p.rows()))
}

/// Whether `Q_p` is symmetric under `z1 <-> z2`; if so the two projections
/// have equal rank.
pub fn rank_symmetry_check(pp: &ProjectionPair) -> Result<bool> {
    let q = pp.charpoly()?;
    q.canonical_equal(&q.permute_vars(&[0, 2, 1])?, POLY_EQUAL_TOL)
}

/// Outcome of [`equivalent_pairs`].
#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub poly_equal: bool,
    pub trace_words_equal: bool,
    /// `U` with `U a_i U* = b_i`, present when equivalent.
    pub witness: Option<CMatrix>,
    /// `max_i |U a_i U* - b_i|_F`.
    pub witness_residual: Option<f64>,
    /// Invariants of the first pair.
    pub invariants: HalmosInvariants,
    /// Some spectral classification was close to a band edge.
    pub near_band_edge: bool,
}

/// Decides unitary equivalence by three concurring criteria: polynomial
/// equality, the trace criterion and matching invariants (which also yield
/// the witness).
pub fn equivalent_pairs(
    a: &ProjectionPair,
    b: &ProjectionPair,
    tol: f64,
) -> Result<EquivalenceVerdict> {
    let (ua, inv_a) = canonical_form(a)?;
    if a.k() != b.k() {
        return Ok(EquivalenceVerdict {
            equivalent: false,
            poly_equal: false,
            trace_words_equal: false,
            witness: None,
            witness_residual: None,
            near_band_edge: inv_a.near_band_edge,
            invariants: inv_a,
        });
    }
    let (ub, inv_b) = canonical_form(b)?;
    let poly_equal = a.charpoly()?.canonical_equal(&b.charpoly()?, tol)?;
    let trace_words_equal = trace_word_criterion(a, b);
    if poly_equal != trace_words_equal {
        return Err(Error::Consistency(format!(
            "polynomial equality ({poly_equal}) and trace criterion ({trace_words_equal}) disagree"
        )));
    }
    let invariants_match = inv_a.matches(&inv_b, SPECTRUM_MATCH_TOL);
    if invariants_match != poly_equal {
        return Err(Error::Consistency(format!(
            "polynomial equality ({poly_equal}) and canonical invariants ({invariants_match}) disagree"
        )));
    }
    let near_band_edge = inv_a.near_band_edge || inv_b.near_band_edge;
    let (witness, witness_residual) = if poly_equal {
        // Both canonical models are the same matrix, so U_b* U_a carries a to b.
        let w = &ub.adjoint() * &ua;
        let residual = (&a.p.conjugate_by(&w) - &b.p)
            .frobenius()
            .max((&a.q.conjugate_by(&w) - &b.q).frobenius());
        let ures = unitary_residual(&w);
        if residual > WITNESS_TOL || ures > WITNESS_UNITARY_TOL {
            return Err(Error::Numerical(format!(
                "witness failed verification (residual {residual:.3e}, unitarity {ures:.3e})"
            )));
        }
        (Some(w), Some(residual))
    } else {
        (None, None)
    };
    Ok(EquivalenceVerdict {
        equivalent: poly_equal,
        poly_equal,
        trace_words_equal,
        witness,
        witness_residual,
        invariants: inv_a,
        near_band_edge,
    })
}
