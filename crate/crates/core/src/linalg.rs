//! Dense complex matrices and the small amount of numerical linear algebra
//! the rest of the crate needs: a cyclic Jacobi eigensolver for Hermitian
//! matrices, modified Gram-Schmidt, and Gaussian elimination.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Off-diagonal Frobenius norm at which Jacobi iteration stops, relative to
/// `max(1, |A|_F)`.
pub const JACOBI_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Eigenvalues closer than this are treated as one cluster.
pub const CLUSTER_TOL: f64 = 1e-7;
/// Minimum residual norm for a normalized column during Gram-Schmidt.
pub const INDEPENDENCE_TOL: f64 = 1e-8;

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::Input(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(CMatrix { rows, cols, data })
    }

    /// Builds a real matrix from row slices. Panics on ragged rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        CMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Complex64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, c: Complex64) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn try_matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::Input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[l * other.cols + j];
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn pow(&self, e: u32) -> CMatrix {
        assert!(self.is_square());
        let mut acc = CMatrix::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `|A - A*|_F`.
    pub fn hermitian_defect(&self) -> f64 {
        (self - &self.adjoint()).frobenius()
    }

    /// Conjugation `U A U*`.
    pub fn conjugate_by(&self, u: &CMatrix) -> CMatrix {
        &(u * self) * &u.adjoint()
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(blocks: &[CMatrix]) -> CMatrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = CMatrix::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)];
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn determinant(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::Input("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = ONE;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()))
                .unwrap();
            if a[(pivot, col)] == ZERO {
                return Ok(ZERO);
            }
            if pivot != col {
                a.swap_rows(pivot, col);
                det = -det;
            }
            let p = a[(col, col)];
            det *= p;
            for r in col + 1..n {
                let f = a[(r, col)] / p;
                if f == ZERO {
                    continue;
                }
                for c in col..n {
                    let v = a[(col, c)];
                    a[(r, c)] -= f * v;
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<CMatrix> {
        if !self.is_square() {
            return Err(Error::Input("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = CMatrix::identity(n);
        let scale = 1.0 + self.frobenius();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()))
                .unwrap();
            if a[(pivot, col)].norm() <= 1e-14 * scale {
                return Err(Error::Numerical("matrix is numerically singular".into()));
            }
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let p = a[(col, col)];
            for c in 0..n {
                a[(col, c)] /= p;
                inv[(col, c)] /= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f == ZERO {
                    continue;
                }
                for c in 0..n {
                    let (av, iv) = (a[(col, c)], inv[(col, c)]);
                    a[(r, c)] -= f * av;
                    inv[(r, c)] -= f * iv;
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.try_matmul(rhs).expect("matrix shape mismatch")
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix shape mismatch"
        );
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix shape mismatch"
        );
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Wire form: `{"rows": r, "cols": c, "entries": [[re, im], ...]}`, row-major.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

impl From<CMatrix> for MatrixJson {
    fn from(m: CMatrix) -> Self {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            entries: m.data.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for CMatrix {
    type Error = Error;
    fn try_from(j: MatrixJson) -> Result<Self> {
        if j.entries.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Input("non-finite matrix entry".into()));
        }
        CMatrix::from_vec(
            j.rows,
            j.cols,
            j.entries
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }
}

/// Spectral decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct EigenResult {
    /// Ascending.
    pub values: Vec<f64>,
    /// Unit eigenvectors as columns, in the order of `values`.
    pub vectors: CMatrix,
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Pivot pairs are visited in fixed row-major order; the input is symmetrized
/// as `(A + A*)/2` first. Eigenvectors belonging to eigenvalues closer than
/// [`CLUSTER_TOL`] are re-orthonormalized together.
pub fn hermitian_eigen(a: &CMatrix) -> Result<EigenResult> {
    if !a.is_square() {
        return Err(Error::Input(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows, a.cols
        )));
    }
    let norm = a.frobenius();
    let defect = a.hermitian_defect();
    if defect > 1e-8 * (1.0 + norm) {
        return Err(Error::Input(format!(
            "matrix is not Hermitian (|A - A*|_F = {defect:.3e})"
        )));
    }
    let k = a.rows;
    let mut m = (a + &a.adjoint()).scale_real(0.5);
    let mut v = CMatrix::identity(k);
    let stop = JACOBI_TOL * norm.max(1.0);

    let off = |m: &CMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    s += m[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off(&m) > stop {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::Numerical(format!(
                "Jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps"
            )));
        }
        sweeps += 1;
        for p in 0..k {
            for q in p + 1..k {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&x, &y| m[(x, x)].re.total_cmp(&m[(y, y)].re));
    let values: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut columns: Vec<Vec<Complex64>> = order.iter().map(|&i| v.column(i)).collect();

    let mut start = 0;
    while start < k {
        let mut end = start + 1;
        while end < k && values[end] - values[end - 1] < CLUSTER_TOL {
            end += 1;
        }
        if end - start > 1 {
            let block = CMatrix::from_columns(k, &columns[start..end]);
            let q = orthonormalize(&block)?;
            for (off, col) in columns[start..end].iter_mut().enumerate() {
                *col = q.column(off);
            }
        }
        start = end;
    }

    Ok(EigenResult {
        values,
        vectors: CMatrix::from_columns(k, &columns),
    })
}

/// One complex Jacobi rotation annihilating `m[p][q]`, accumulated into `v`.
fn rotate(m: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    // Phase e^{-i phi} turns a_pq real positive; then a real rotation.
    let phase = apq.conj() / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] acting on columns (p, q).
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase * s;
    let jqq = phase * c;
    let k = m.rows;
    for r in 0..k {
        let (x, y) = (m[(r, p)], m[(r, q)]);
        m[(r, p)] = x * jpp + y * jqp;
        m[(r, q)] = x * jpq + y * jqq;
        let (x, y) = (v[(r, p)], v[(r, q)]);
        v[(r, p)] = x * jpp + y * jqp;
        v[(r, q)] = x * jpq + y * jqq;
    }
    for col in 0..k {
        let (x, y) = (m[(p, col)], m[(q, col)]);
        m[(p, col)] = jpp.conj() * x + jqp.conj() * y;
        m[(q, col)] = jpq.conj() * x + jqq.conj() * y;
    }
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Modified Gram-Schmidt (two passes) on the columns of `vecs`.
///
/// Columns are normalized before orthogonalization; a column whose residual
/// falls below [`INDEPENDENCE_TOL`] is reported by index.
pub fn orthonormalize(vecs: &CMatrix) -> Result<CMatrix> {
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(vecs.cols);
    for j in 0..vecs.cols {
        let mut col = vecs.column(j);
        let n0 = norm(&col);
        if n0 == 0.0 {
            return Err(Error::Input(format!("column {j} is zero")));
        }
        col.iter_mut().for_each(|x| *x /= n0);
        for _pass in 0..2 {
            for q in &out {
                let r = dot(q, &col);
                for (x, y) in col.iter_mut().zip(q) {
                    *x -= r * y;
                }
            }
        }
        let n = norm(&col);
        if n < INDEPENDENCE_TOL {
            return Err(Error::Input(format!(
                "column {j} is linearly dependent on the preceding columns"
            )));
        }
        col.iter_mut().for_each(|x| *x /= n);
        out.push(col);
    }
    Ok(CMatrix::from_columns(vecs.rows, &out))
}

/// `|U* U - I|_F`.
pub fn unitary_residual(u: &CMatrix) -> f64 {
    (&(&u.adjoint() * u) - &CMatrix::identity(u.cols)).frobenius()
}

/// Unitary polar factor `M (M* M)^{-1/2}` of a square, nonsingular matrix.
pub fn polar_unitary(m: &CMatrix) -> Result<CMatrix> {
    let gram = &m.adjoint() * m;
    let eig = hermitian_eigen(&gram)?;
    if eig
        .values
        .first()
        .is_some_and(|&v| v <= 1e-14 * (1.0 + gram.frobenius()))
    {
        return Err(Error::Numerical("polar factor of a singular matrix".into()));
    }
    let inv_sqrt: Vec<f64> = eig.values.iter().map(|v| 1.0 / v.sqrt()).collect();
    let root = &(&eig.vectors * &CMatrix::diag_real(&inv_sqrt)) * &eig.vectors.adjoint();
    Ok(m * &root)
}

/// `|P^2 - P|_F` and `|P - P*|_F` both within `1e-8 (1 + |P|_F)`.
pub fn is_orthogonal_projection(p: &CMatrix) -> bool {
    if !p.is_square() {
        return false;
    }
    let scale = 1.0 + p.frobenius();
    (&(p * p) - p).frobenius() <= 1e-8 * scale && p.hermitian_defect() <= 1e-8 * scale
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn assert_close(a: &CMatrix, b: &CMatrix, tol: f64) {
        let d = (a - b).frobenius();
        assert!(d <= tol, "matrices differ by {d:.3e}\n{a:?}\n{b:?}");
    }

    fn check_eigen(a: &CMatrix, e: &EigenResult) {
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        assert!(unitary_residual(&e.vectors) <= 1e-10);
        let scale = 1.0 + a.frobenius();
        for (j, &l) in e.values.iter().enumerate() {
            let v = e.vectors.column(j);
            let av = a.matvec(&v);
            let r: f64 = av
                .iter()
                .zip(&v)
                .map(|(x, y)| (x - y * l).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(r <= 1e-9 * scale, "residual {r:.3e} for eigenpair {j}");
        }
    }

    #[test]
    fn eigen_of_diagonal() {
        let a = CMatrix::diag_real(&[1.0, 0.0]);
        let e = hermitian_eigen(&a).unwrap();
        assert_eq!(e.values, vec![0.0, 1.0]);
        assert_close(
            &e.vectors,
            &CMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]),
            0.0,
        );
    }

    #[test]
    fn eigen_of_rank_one_projection() {
        let a = CMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]);
        let e = hermitian_eigen(&a).unwrap();
        assert!((e.values[0]).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // Eigenvectors are determined up to phase.
        let v0 = e.vectors.column(0);
        let v1 = e.vectors.column(1);
        assert!((dot(&v0, &[c(s), c(-s)]).norm() - 1.0).abs() < 1e-12);
        assert!((dot(&v1, &[c(s), c(s)]).norm() - 1.0).abs() < 1e-12);
        check_eigen(&a, &e);
    }

    #[test]
    fn eigen_of_pqp() {
        let p = CMatrix::diag_real(&[1.0, 0.0]);
        let q = CMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]);
        let pqp = &(&p * &q) * &p;
        assert_close(&pqp, &CMatrix::diag_real(&[0.5, 0.0]), 0.0);
        let e = hermitian_eigen(&pqp).unwrap();
        assert_eq!(e.values, vec![0.0, 0.5]);
    }

    #[test]
    fn eigen_of_complex_hermitian() {
        let i = Complex64::new(0.0, 1.0);
        let a = CMatrix::from_vec(
            3,
            3,
            vec![
                c(2.0),
                i,
                c(0.5),
                -i,
                c(1.0),
                i * 0.3,
                c(0.5),
                -i * 0.3,
                c(-1.0),
            ],
        )
        .unwrap();
        let e = hermitian_eigen(&a).unwrap();
        check_eigen(&a, &e);
        let sum: f64 = e.values.iter().sum();
        assert!((sum - a.trace().re).abs() < 1e-12);
    }

    #[test]
    fn eigen_rejects_non_hermitian() {
        let a = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hermitian_eigen(&a), Err(Error::Input(_))));
        assert!(hermitian_eigen(&CMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn eigen_with_degenerate_cluster() {
        let a = CMatrix::identity(4);
        let e = hermitian_eigen(&a).unwrap();
        assert_eq!(e.values, vec![1.0; 4]);
        assert!(unitary_residual(&e.vectors) < 1e-14);
    }

    #[test]
    fn gram_schmidt_by_hand() {
        let id = CMatrix::identity(3);
        assert_close(&orthonormalize(&id).unwrap(), &id, 0.0);
        let m = CMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]);
        assert_close(&orthonormalize(&m).unwrap(), &CMatrix::identity(2), 1e-15);
    }

    #[test]
    fn gram_schmidt_rejects_dependent_columns() {
        let m = CMatrix::from_real_rows(&[&[1.0, 2.0, 0.0], &[1.0, 2.0, 1.0]]);
        match orthonormalize(&m) {
            Err(Error::Input(msg)) => assert!(msg.contains("column 1"), "{msg}"),
            other => panic!("expected input error, got {other:?}"),
        }
    }

    #[test]
    fn unitary_residual_examples() {
        assert_eq!(unitary_residual(&CMatrix::identity(3)), 0.0);
        let mut d = CMatrix::identity(2);
        d[(1, 1)] = Complex64::from_polar(1.0, 0.7);
        assert!(unitary_residual(&d) < 1e-15);
        assert!((unitary_residual(&CMatrix::diag_real(&[2.0, 1.0])) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_and_determinant() {
        let a = CMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 3.0]]);
        assert!((a.determinant().unwrap() - c(5.0)).norm() < 1e-14);
        let inv = a.inverse().unwrap();
        assert_close(&(&a * &inv), &CMatrix::identity(2), 1e-14);
        let sing = CMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(sing.inverse().is_err());
        assert_eq!(sing.determinant().unwrap(), c(0.0));
    }

    #[test]
    fn polar_factor_is_unitary() {
        let m = CMatrix::from_vec(2, 2, vec![c(2.0), Complex64::new(0.0, 1.0), c(0.3), c(1.0)])
            .unwrap();
        let u = polar_unitary(&m).unwrap();
        assert!(unitary_residual(&u) < 1e-12);
    }

    #[test]
    fn matrix_json_round_trip() {
        let m = CMatrix::from_vec(1, 2, vec![c(0.5), Complex64::new(-1.0, 2.0)]).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(
            text,
            r#"{"rows":1,"cols":2,"entries":[[0.5,0.0],[-1.0,2.0]]}"#
        );
        let back: CMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<CMatrix>(r#"{"rows":2,"cols":2,"entries":[]}"#).is_err());
    }
}
