//! Seeded random sampling of Gaussian and Haar-distributed matrices.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::dense::{CMatrix, RMatrix};
use super::factor::householder_qr;

/// The generator used throughout the crate.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream seed from a base seed and a tag.
pub fn derive_seed(base: u64, tag: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = base ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn gaussian_real<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> RMatrix {
    RMatrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

/// Entries with independent standard normal real and imaginary parts.
pub fn gaussian_complex<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    })
}

/// Haar-distributed unitary matrix: QR of a complex Gaussian matrix with the
/// phases of `diag(R)` moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let g = gaussian_complex(n, n, rng);
    let (mut q, r) = householder_qr(&g);
    for j in 0..n {
        let d = r[(j, j)];
        let ph = if d.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { d / d.norm() };
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }
    q
}

/// Haar-distributed real orthogonal matrix.
pub fn haar_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RMatrix {
    let g = gaussian_real(n, n, rng);
    let (mut q, r) = householder_qr(&g);
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unitarity_defect(q: &CMatrix) -> f64 {
        let n = q.rows();
        (&(&q.adjoint() * q) - &CMatrix::identity(n)).norm_max()
    }

    #[test]
    fn one_by_one_is_a_phase() {
        let mut rng = seeded_rng(3);
        let q = haar_unitary(1, &mut rng);
        assert!((q[(0, 0)].norm() - 1.0).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn four_by_four_is_unitary() {
        let mut rng = seeded_rng(11);
        let q = haar_unitary(4, &mut rng);
        assert!(unitarity_defect(&q) <= 1e-13);
    }

    #[test]
    fn orthogonal_is_orthogonal() {
        let mut rng = seeded_rng(5);
        let q = haar_orthogonal(9, &mut rng);
        let d = (&(&q.transpose() * &q) - &RMatrix::identity(9)).norm_max();
        assert!(d <= 64.0 * 9.0 * f64::EPSILON);
    }

    #[test]
    fn same_seed_same_matrix() {
        let a = haar_unitary(3, &mut seeded_rng(42));
        let b = haar_unitary(3, &mut seeded_rng(42));
        assert_eq!(a, b);
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(1, 0), derive_seed(1, 1));
        assert_ne!(derive_seed(1, 0), derive_seed(2, 0));
    }
}
