//! Concurrence, negativity, concurrence of assistance and the residuals built
//! from them.
//!
//! Concurrence and concurrence of assistance share one spectrum: the square
//! roots `λ₁ ≥ … ≥ λ₄` of the eigenvalues of `√ρ ρ̃ √ρ`, with `ρ̃` the spin-flipped
//! density. With `A = √ρ̃ √ρ` we have `A†A = √ρ ρ̃ √ρ`, so the `λᵢ` are read
//! directly as singular values of `A`. Taking square roots of computed
//! eigenvalues instead would turn `1e-16` rounding into `1e-8` errors in the
//! zero part of the spectrum.
//!
//! | quantity | value |
//! |---|---|
//! | `C`   | `max(0, λ₁ − λ₂ − λ₃ − λ₄)` |
//! | `N`   | `‖ρ^{T_A}‖₁ − 1` |
//! | `C_a` | `λ₁ + λ₂ + λ₃ + λ₄` |
//! | `τ`   | `√(C_a² − C²)` |
//! | `χ`   | `√(C_a² − N²)` |
//! | `ϖ`   | `C² − N²` |
//! | `η`   | `C − N` |

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{self, ComplexMatrix, HERMITIAN_TOL};
use crate::states::{self, TripartitePureState, TwoQubitDensity};

/// Eigenvalues of `ρ` at or below this are treated as an exact kernel when
/// forming `√ρ`.
pub const KERNEL_FLOOR: f64 = 1e-13;

/// Negative rounding tolerated in radicands and in `C² − N²`.
pub const RADICAND_TOL: f64 = 1e-12;

/// Negative rounding tolerated in `C − N`.
pub const ETA_TOL: f64 = 1e-9;

/// Tolerance for rebuilding a density from a decomposition.
pub const RECONSTRUCTION_TOL: f64 = 1e-9;

fn clip_nonneg(what: &'static str, value: f64, tol: f64) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -tol {
        Ok(0.0)
    } else {
        Err(Error::Consistency { what, value })
    }
}

/// Spectral data every measure is built from.
#[derive(Debug, Clone, Copy)]
struct Spectra {
    lambdas: [f64; 4],
    negativity: f64,
}

/// A numerically rank-one `ρ = q|ψ⟩⟨ψ|` is handled in closed form:
/// `√ρ ρ̃ √ρ` then has rank one, so `λ = (q·C(ψ), 0, 0, 0)`, and the
/// negativity of a pure state equals its concurrence. Going through the
/// generic path instead leaves `C_a − N` at rounding level, and its square
/// root (`χ`) at `1e-8`.
fn spectra(rho: &TwoQubitDensity) -> Result<Spectra> {
    let (q, vecs) = matcore::hermitian_eigh(rho.matrix(), HERMITIAN_TOL)?;
    if q[1] <= KERNEL_FLOOR {
        let psi: [Complex64; 4] = std::array::from_fn(|i| vecs.get(i, 0));
        let lambda1 = q[0].max(0.0) * pure_concurrence(&psi);
        return Ok(Spectra { lambdas: [lambda1, 0.0, 0.0, 0.0], negativity: lambda1 });
    }
    Ok(Spectra { lambdas: concurrence_spectrum(rho)?, negativity: negativity_generic(rho)? })
}

/// The `λᵢ` shared by concurrence and concurrence of assistance, in
/// non-increasing order.
pub fn concurrence_spectrum(rho: &TwoQubitDensity) -> Result<[f64; 4]> {
    let sqrt_rho = matcore::psd_sqrt_with_floor(rho.matrix(), HERMITIAN_TOL, KERNEL_FLOOR)?;
    // √ρ̃ = (σ_y⊗σ_y) (√ρ)* (σ_y⊗σ_y)
    let sqrt_flip = matcore::spin_flip(&sqrt_rho);
    let sv = matcore::singular_values(&(&sqrt_flip * &sqrt_rho))?;
    Ok([sv[0], sv[1], sv[2], sv[3]])
}

fn concurrence_from(l: &[f64; 4]) -> f64 {
    (l[0] - l[1] - l[2] - l[3]).max(0.0)
}

fn coa_from(l: &[f64; 4]) -> f64 {
    l.iter().sum()
}

pub fn concurrence(rho: &TwoQubitDensity) -> Result<f64> {
    Ok(concurrence_from(&spectra(rho)?.lambdas))
}

fn negativity_generic(rho: &TwoQubitDensity) -> Result<f64> {
    let mu = matcore::hermitian_eigvals(&rho.partial_transpose(), HERMITIAN_TOL)?;
    Ok(2.0 * mu.iter().filter(|&&x| x < 0.0).fold(0.0, |acc, x| acc - x))
}

/// Twice the magnitude of the negative part of the spectrum of `ρ^{T_A}`,
/// which is `‖ρ^{T_A}‖₁ − 1` for a unit-trace `ρ`.
pub fn negativity(rho: &TwoQubitDensity) -> Result<f64> {
    Ok(spectra(rho)?.negativity)
}

/// Concurrence of assistance, `tr √(√ρ ρ̃ √ρ)`.
pub fn coa(rho: &TwoQubitDensity) -> Result<f64> {
    Ok(coa_from(&spectra(rho)?.lambdas))
}

/// GHZ-type residual, `√(C_a² − C²)` of the reduced qubit pair.
pub fn tau(s: &TripartitePureState) -> Result<f64> {
    let l = spectra(&states::reduced_ab(s))?.lambdas;
    tau_from(coa_from(&l), concurrence_from(&l))
}

fn tau_from(ca: f64, c: f64) -> Result<f64> {
    Ok(clip_nonneg("C_a² − C²", (ca - c) * (ca + c), RADICAND_TOL)?.sqrt())
}

/// Total tripartite residual, `√(C_a² − N²)` of the reduced qubit pair.
pub fn chi(s: &TripartitePureState) -> Result<f64> {
    let sp = spectra(&states::reduced_ab(s))?;
    chi_from(coa_from(&sp.lambdas), sp.negativity)
}

fn chi_from(ca: f64, n: f64) -> Result<f64> {
    Ok(clip_nonneg("C_a² − N²", (ca - n) * (ca + n), RADICAND_TOL)?.sqrt())
}

fn varpi_from(c: f64, n: f64) -> Result<f64> {
    clip_nonneg("C² − N²", (c - n) * (c + n), RADICAND_TOL)
}

fn eta_from(c: f64, n: f64) -> Result<f64> {
    clip_nonneg("C − N", c - n, ETA_TOL)
}

/// Anything that determines a two-qubit density: the density itself, or a
/// tripartite pure state through its reduction.
pub trait TwoQubitSource {
    fn two_qubit_density(&self) -> TwoQubitDensity;
}

impl TwoQubitSource for TwoQubitDensity {
    fn two_qubit_density(&self) -> TwoQubitDensity {
        self.clone()
    }
}

impl TwoQubitSource for TripartitePureState {
    fn two_qubit_density(&self) -> TwoQubitDensity {
        states::reduced_ab(self)
    }
}

/// `C² − N²`.
pub fn varpi<S: TwoQubitSource + ?Sized>(source: &S) -> Result<f64> {
    let sp = spectra(&source.two_qubit_density())?;
    varpi_from(concurrence_from(&sp.lambdas), sp.negativity)
}

/// `C − N`.
pub fn eta<S: TwoQubitSource + ?Sized>(source: &S) -> Result<f64> {
    let sp = spectra(&source.two_qubit_density())?;
    eta_from(concurrence_from(&sp.lambdas), sp.negativity)
}

/// The seven scalars for one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub concurrence: f64,
    pub negativity: f64,
    pub coa: f64,
    pub tau: f64,
    pub chi: f64,
    pub varpi: f64,
    pub eta: f64,
}

impl MeasureReport {
    pub const FIELD_NAMES: [&'static str; 7] = ["concurrence", "negativity", "coa", "tau", "chi", "varpi", "eta"];

    pub fn values(&self) -> [f64; 7] {
        [self.concurrence, self.negativity, self.coa, self.tau, self.chi, self.varpi, self.eta]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values().iter().zip(other.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Checks the ordering and the algebraic identities tying the fields
    /// together, returning the first one that fails.
    pub fn check_invariants(&self, tol: f64) -> std::result::Result<(), String> {
        let Self { concurrence: c, negativity: n, coa: ca, tau, chi, varpi, eta } = *self;
        let checks = [
            ("C_a ≥ C", ca - c + tol),
            ("C ≥ N", c - n + tol),
            ("τ² + C² = C_a²", tol - (tau * tau + c * c - ca * ca).abs()),
            ("χ² + N² = C_a²", tol - (chi * chi + n * n - ca * ca).abs()),
            ("ϖ = C² − N²", tol - (varpi - (c * c - n * n)).abs()),
            ("η = C − N", tol - (eta - (c - n)).abs()),
            ("χ ≥ τ", chi - tau + tol),
            ("χ² − τ² = ϖ", tol - (chi * chi - tau * tau - varpi).abs()),
        ];
        match checks.iter().find(|(_, margin)| *margin < 0.0) {
            Some((name, margin)) => Err(format!("{name} violated by {:e}", -margin)),
            None => Ok(()),
        }
    }
}

/// All seven measures of a two-qubit density.
pub fn report_for_density(rho: &TwoQubitDensity) -> Result<MeasureReport> {
    let sp = spectra(rho)?;
    let c = concurrence_from(&sp.lambdas);
    let ca = coa_from(&sp.lambdas);
    let n = sp.negativity;
    Ok(MeasureReport {
        concurrence: c,
        negativity: n,
        coa: ca,
        tau: tau_from(ca, c)?,
        chi: chi_from(ca, n)?,
        varpi: varpi_from(c, n)?,
        eta: eta_from(c, n)?,
    })
}

/// All seven measures from a single reduction of `s`.
pub fn full_report(s: &TripartitePureState) -> Result<MeasureReport> {
    report_for_density(&states::reduced_ab(s))
}

/// Concurrence of a pure two-qubit vector, `|⟨φ|σ_y⊗σ_y|φ*⟩|`.
pub fn pure_concurrence(phi: &[Complex64; 4]) -> f64 {
    let yy = matcore::sigma_yy();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            acc += phi[i].conj() * yy.get(i, j) * phi[j].conj();
        }
    }
    acc.norm()
}

/// A pure-state ensemble `{pᵢ, |φᵢ⟩}` for a stated two-qubit density.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    weights: Vec<f64>,
    members: Vec<[Complex64; 4]>,
    target: TwoQubitDensity,
}

impl Decomposition {
    pub fn new(weights: Vec<f64>, members: Vec<[Complex64; 4]>, target: TwoQubitDensity) -> Result<Self> {
        if weights.len() != members.len() || weights.is_empty() {
            return Err(Error::DimensionMismatch(format!("{} weights for {} members", weights.len(), members.len())));
        }
        if weights.iter().any(|&p| p.is_nan() || p < 0.0 || !p.is_finite()) {
            return Err(Error::InvalidParams("weights must be finite and non-negative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > states::NORM_TOL {
            return Err(Error::InvalidParams(format!("weights sum to {total}")));
        }
        for m in &members {
            let nm = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if (nm - 1.0).abs() > states::NORM_TOL {
                return Err(Error::NotNormalized(nm));
            }
        }
        let d = Self { weights, members, target };
        d.check_reconstruction()?;
        Ok(d)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn members(&self) -> &[[Complex64; 4]] {
        &self.members
    }

    pub fn target(&self) -> &TwoQubitDensity {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `Σ pᵢ |φᵢ⟩⟨φᵢ|`.
    pub fn density(&self) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(4, 4);
        for (p, m) in self.weights.iter().zip(&self.members) {
            let v = ComplexMatrix::column(m);
            acc = &acc + &(&v * &v.dagger()).scale(*p);
        }
        acc
    }

    fn check_reconstruction(&self) -> Result<()> {
        let dev = self.density().max_abs_diff(self.target.matrix());
        if dev > RECONSTRUCTION_TOL {
            return Err(Error::InconsistentDecomposition(dev));
        }
        Ok(())
    }
}

/// `Σ pᵢ C(|φᵢ⟩)` over the ensemble.
pub fn average_concurrence(d: &Decomposition) -> Result<f64> {
    d.check_reconstruction()?;
    Ok(d.weights.iter().zip(&d.members).map(|(p, m)| p * pure_concurrence(m)).sum())
}
