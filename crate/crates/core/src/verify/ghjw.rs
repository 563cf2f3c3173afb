//! Random pure-state ensembles of a two-qubit density.
//!
//! Every ensemble of `ρ = Σⱼ qⱼ|eⱼ⟩⟨eⱼ|` (rank `r`) arises as
//! `|φ̃ᵢ⟩ = Σⱼ Uᵢⱼ √qⱼ |eⱼ⟩` for an isometry `U` of shape `length × r`, with
//! `pᵢ = ‖φ̃ᵢ‖²`. Sampling `U` from the Haar measure gives random ensembles.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::matcore::{self, ComplexMatrix, HERMITIAN_TOL};
use crate::measures::{Decomposition, KERNEL_FLOOR};
use crate::sampling::{self, rng_from_seed};
use crate::states::TwoQubitDensity;

/// Nonzero eigenvalues `qⱼ` of `rho` with their eigenvectors `|eⱼ⟩`.
pub fn eigen_ensemble(rho: &TwoQubitDensity) -> Result<Vec<(f64, [Complex64; 4])>> {
    let (values, vectors) = matcore::hermitian_eigh(rho.matrix(), HERMITIAN_TOL)?;
    Ok(values
        .iter()
        .enumerate()
        .filter(|(_, &q)| q > KERNEL_FLOOR)
        .map(|(j, &q)| (q, std::array::from_fn(|i| vectors.get(i, j))))
        .collect())
}

/// The ensemble obtained by mixing the eigen-ensemble of `rho` with `u`
/// (shape `length × rank`, orthonormal columns).
pub fn ghjw_decomposition_from_isometry(rho: &TwoQubitDensity, u: &ComplexMatrix) -> Result<Decomposition> {
    let eig = eigen_ensemble(rho)?;
    let rank = eig.len();
    if u.cols() != rank {
        return Err(Error::DimensionMismatch(format!("isometry has {} columns but rank is {rank}", u.cols())));
    }
    if u.rows() < rank {
        return Err(Error::LengthTooSmall { length: u.rows(), rank });
    }
    let mut weights = Vec::with_capacity(u.rows());
    let mut members = Vec::with_capacity(u.rows());
    for i in 0..u.rows() {
        let mut v = [Complex64::new(0.0, 0.0); 4];
        for (j, (q, e)) in eig.iter().enumerate() {
            let coeff = u.get(i, j) * q.sqrt();
            for (slot, ej) in v.iter_mut().zip(e) {
                *slot += coeff * ej;
            }
        }
        let p: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if p > 0.0 {
            let s = p.sqrt();
            members.push(v.map(|z| z / s));
        } else {
            // zero-weight member; any unit vector will do
            members.push(eig[0].1);
        }
        weights.push(p);
    }
    Decomposition::new(weights, members, rho.clone())
}

/// Random ensemble of `length ≥ rank(rho)` members.
pub fn ghjw_decomposition_sample(rho: &TwoQubitDensity, length: usize, seed: u64) -> Result<Decomposition> {
    ghjw_decomposition_sample_with(rho, length, &mut rng_from_seed(seed))
}

pub fn ghjw_decomposition_sample_with<R: Rng + ?Sized>(
    rho: &TwoQubitDensity,
    length: usize,
    rng: &mut R,
) -> Result<Decomposition> {
    let rank = eigen_ensemble(rho)?.len();
    if length < rank {
        return Err(Error::LengthTooSmall { length, rank });
    }
    let u = sampling::haar_isometry(length, rank, rng);
    ghjw_decomposition_from_isometry(rho, &u)
}
