//! Seeded random sources: complex Gaussians and Haar-distributed isometries.
//!
//! Every sampler takes an explicit RNG so that callers control the seed
//! schedule. `ChaCha8Rng` is used throughout because its stream is fixed
//! across platforms and crate versions.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matcore::ComplexMatrix;

/// The RNG used for all seeded sampling.
pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian, `E|z|^2 = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<Complex64> {
    (0..len).map(|_| complex_gaussian(rng)).collect()
}

/// Random unit vector, uniform on the complex sphere.
pub fn haar_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<Complex64> {
    loop {
        let v = gaussian_vector(len, rng);
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-150 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-random isometry with `rows >= cols` (orthonormal columns).
///
/// QR of a Ginibre matrix, with the phases of `R`'s diagonal pushed into `Q`
/// so the result is invariant in distribution.
pub fn haar_isometry<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    assert!(rows >= cols && cols >= 1, "isometry needs rows >= cols >= 1");
    let g = DMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng));
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let phases: Vec<Complex64> = (0..cols)
        .map(|j| {
            let d = r[(j, j)];
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                Complex64::new(1.0, 0.0)
            }
        })
        .collect();
    ComplexMatrix::from_fn(rows, cols, |i, j| q[(i, j)] * phases[j])
}

pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    haar_isometry(n, n, rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isometry_columns_are_orthonormal() {
        let mut rng = rng_from_seed(7);
        for (rows, cols) in [(2, 2), (4, 2), (9, 3), (6, 1)] {
            let u = haar_isometry(rows, cols, &mut rng);
            assert!(u.unitarity_deviation() < 1e-12, "{rows}x{cols}");
        }
    }

    #[test]
    fn haar_vector_is_normalized_and_seeded() {
        let a = haar_vector(8, &mut rng_from_seed(3));
        let b = haar_vector(8, &mut rng_from_seed(3));
        assert_eq!(a, b);
        let norm: f64 = a.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }
}
