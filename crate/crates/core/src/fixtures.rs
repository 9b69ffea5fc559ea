//! Deterministic pseudo-random fixtures.
//!
//! All randomness goes through [`seeded_rng`], Marsaglia's xorshift128
//! (`t = x ^ (x << 11); x, y, z = y, z, w; w = w ^ (w >> 19) ^ t ^ (t >> 8)`)
//! with its state expanded from a 64-bit seed by PCG32, as implemented by
//! `rand_xorshift`. Uniform `f64` samples take the top 53 bits of a 64-bit
//! draw (two 32-bit outputs, low word first).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_xorshift::XorShiftRng;

use crate::linalg::{orthonormalize, CMatrix};
use crate::pencil::MatrixTuple;
use crate::projpair::{canonical_model, HalmosInvariants, ProjectionPair};

pub fn seeded_rng(seed: u64) -> XorShiftRng {
    XorShiftRng::seed_from_u64(seed)
}

/// Uniform on `[-1, 1)`.
fn symmetric(rng: &mut impl Rng) -> f64 {
    2.0 * rng.random::<f64>() - 1.0
}

/// Uniform in the closed unit disc, by rejection from the square.
pub fn unit_disc(rng: &mut impl Rng) -> Complex64 {
    loop {
        let z = Complex64::new(symmetric(rng), symmetric(rng));
        if z.norm_sqr() <= 1.0 {
            return z;
        }
    }
}

/// Matrix with entries uniform in the unit disc.
pub fn random_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
    let data = (0..rows * cols).map(|_| unit_disc(rng)).collect();
    CMatrix::from_vec(rows, cols, data).expect("shape")
}

pub fn random_real_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
    let data = (0..rows * cols)
        .map(|_| Complex64::new(symmetric(rng), 0.0))
        .collect();
    CMatrix::from_vec(rows, cols, data).expect("shape")
}

/// `k x r` matrix with orthonormal columns spanning a random subspace.
pub fn random_isometry(k: usize, r: usize, rng: &mut impl Rng) -> CMatrix {
    loop {
        if let Ok(q) = orthonormalize(&random_matrix(k, r, rng)) {
            return q;
        }
    }
}

pub fn random_unitary(k: usize, rng: &mut impl Rng) -> CMatrix {
    random_isometry(k, k, rng)
}

/// Random real orthogonal matrix.
pub fn random_orthogonal(k: usize, rng: &mut impl Rng) -> CMatrix {
    loop {
        if let Ok(q) = orthonormalize(&random_real_matrix(k, k, rng)) {
            return q;
        }
    }
}

/// Rank-`r` orthogonal projection `V V*` onto a random subspace.
pub fn random_projection(k: usize, r: usize, rng: &mut impl Rng) -> CMatrix {
    if r == 0 {
        return CMatrix::zeros(k, k);
    }
    let v = random_isometry(k, r, rng);
    &v * &v.adjoint()
}

/// Two independent random projections with ranks drawn uniformly from `0..=k`.
pub fn random_projection_pair(k: usize, rng: &mut impl Rng) -> ProjectionPair {
    let r1 = rng.random_range(0..=k);
    let r2 = rng.random_range(0..=k);
    let p = random_projection(k, r1, rng);
    let q = random_projection(k, r2, rng);
    ProjectionPair::new(p, q).expect("constructed projections are valid")
}

/// `n` random `k x k` matrices with entries in the unit disc.
pub fn random_tuple(k: usize, n: usize, rng: &mut impl Rng) -> MatrixTuple {
    let mats = (0..n).map(|_| random_matrix(k, k, rng)).collect();
    MatrixTuple::new(k, mats).expect("shape")
}

/// `n` random Hermitian `k x k` matrices `(M + M*)/2`.
pub fn random_hermitian_tuple(k: usize, n: usize, rng: &mut impl Rng) -> MatrixTuple {
    let mats = (0..n)
        .map(|_| {
            let m = random_matrix(k, k, rng);
            (&m + &m.adjoint()).scale_real(0.5)
        })
        .collect();
    MatrixTuple::new(k, mats).expect("shape")
}

/// The canonical pair for `inv`, conjugated by a random unitary.
pub fn pair_from_invariants(inv: &HalmosInvariants, rng: &mut impl Rng) -> ProjectionPair {
    let (p, q) = canonical_model(inv);
    let u = random_unitary(inv.k(), rng);
    ProjectionPair::new(p.conjugate_by(&u), q.conjugate_by(&u))
        .expect("conjugated canonical pair is valid")
}

/// Conjugates both members of a pair by a random unitary.
pub fn conjugate_pair(pair: &ProjectionPair, rng: &mut impl Rng) -> ProjectionPair {
    let u = random_unitary(pair.k(), rng);
    ProjectionPair::new(pair.p().conjugate_by(&u), pair.q().conjugate_by(&u))
        .expect("conjugation preserves projections")
}
