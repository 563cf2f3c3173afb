use rand::Rng;
use rayon::prelude::*;

use super::ghjw::{eigen_ensemble, ghjw_decomposition_sample_with};
use super::kraus::{average_chi, average_chi_on, sample_kraus_channel_with, KrausChannel};
use super::{aggregate, Outcome, PropertyResult, TrialConfig, Witness};
use crate::format::{MatrixJson, StateJson};
use crate::measures::{self, average_concurrence};
use crate::sampling::{self, rng_from_seed, SeededRng};
use crate::states::{
    self, apply_local_unitaries, ghz_state, random_haar_pure_with, standard_state, w_state, GhzParams,
    LocalUnitaryTriple, Party, StandardState, TripartitePureState, WParams,
};

/// Values at or below this count as an analytic zero.
pub const VANISH_TOL: f64 = 1e-9;

/// Values above this count as an analytic positive.
pub const NONZERO_THRESHOLD: f64 = 1e-4;

/// Lower bound on `λ̃₀, λ̃₁, λ̃₂` for random W-class fixtures.
pub const W_FLOOR: f64 = 0.1;

/// Positivity threshold for `ϖ` on the W family. Its minimum over the family
/// is about `1.55e-5`, reached at `λ̃₀ = λ̃₁ = λ̃₂ = 0.1`.
pub const W_VARPI_THRESHOLD: f64 = 1e-5;

const IDENTITY_TOL: f64 = 1e-9;

fn witness(seed: u64, s: &TripartitePureState, operators: &[&crate::matcore::ComplexMatrix], note: String) -> Witness {
    Witness {
        trial_seed: seed,
        state: StateJson::from_state(s),
        operators: operators.iter().map(|m| MatrixJson::from_matrix(m)).collect(),
        note,
    }
}

fn run_trials(trials: usize, f: impl Fn(usize) -> Outcome + Sync + Send) -> Vec<Outcome> {
    (0..trials).into_par_iter().map(f).collect()
}

/// `χ̄ ≤ χ + tol` for random complete channels on party C.
///
/// Trial `i` uses `n = n_values[i % |n|]` and
/// `k = k_range[(i / |n|) % |k|]`, so every `(n, k)` pair is covered evenly.
pub fn check_chi_monotonicity(cfg: &TrialConfig, k_range: &[usize]) -> PropertyResult {
    assert!(!k_range.is_empty(), "k_range must be nonempty");
    let n_len = cfg.n_values.len();
    check_chi_monotonicity_with(cfg, "monotonicity", |trial, n, rng| {
        let k = k_range[(trial / n_len) % k_range.len()];
        sample_kraus_channel_with(n, k, rng)
    })
}

/// Monotonicity check with a caller-supplied channel for each trial.
pub fn check_chi_monotonicity_with<F>(cfg: &TrialConfig, name: &str, channel: F) -> PropertyResult
where
    F: Fn(usize, usize, &mut SeededRng) -> KrausChannel + Sync + Send,
{
    let outcomes = run_trials(cfg.trials, |i| {
        let seed = cfg.trial_seed(i);
        let mut rng = rng_from_seed(seed);
        let n = cfg.n_for(i);
        let s = random_haar_pure_with(n, &mut rng);
        let ch = channel(i, n, &mut rng);
        let (chi, avg) = match (measures::chi(&s), average_chi(&s, &ch)) {
            (Ok(c), Ok(a)) => (c, a),
            (Err(e), _) | (_, Err(e)) => return Outcome::error(seed, &s, &e),
        };
        let margin = chi - avg;
        let violated = margin < -cfg.tol;
        Outcome {
            margin,
            violated,
            witness: violated.then(|| {
                let ops: Vec<_> = ch.operators().iter().collect();
                witness(seed, &s, &ops, format!("χ = {chi:.17e}, χ̄ = {avg:.17e}"))
            }),
        }
    });
    aggregate(name, outcomes)
}

/// `C_a ≥ C ≥ N − tol` on reductions of Haar states.
///
/// Also records the largest residuals of the two monogamy identities as
/// `max_tau_identity_residual` and `max_chi_identity_residual`.
pub fn check_ordering(cfg: &TrialConfig) -> PropertyResult {
    let residuals: Vec<(Outcome, f64, f64)> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let seed = cfg.trial_seed(i);
            let s = random_haar_pure_with(cfg.n_for(i), &mut rng_from_seed(seed));
            let r = match measures::full_report(&s) {
                Ok(r) => r,
                Err(e) => return (Outcome::error(seed, &s, &e), f64::MAX, f64::MAX),
            };
            let margin = (r.coa - r.concurrence).min(r.concurrence - r.negativity);
            let violated = margin < -cfg.tol;
            let tau_res = (r.coa * r.coa - r.concurrence * r.concurrence - r.tau * r.tau).abs();
            let chi_res = (r.coa * r.coa - r.negativity * r.negativity - r.chi * r.chi).abs();
            let outcome =
                Outcome { margin, violated, witness: violated.then(|| witness(seed, &s, &[], format!("{r:?}"))) };
            (outcome, tau_res, chi_res)
        })
        .collect();
    let tau_max = residuals.iter().map(|r| r.1).fold(0.0, f64::max);
    let chi_max = residuals.iter().map(|r| r.2).fold(0.0, f64::max);
    let mut result = aggregate("ordering", residuals.into_iter().map(|r| r.0).collect());
    result.extras.insert("max_tau_identity_residual".into(), tau_max);
    result.extras.insert("max_chi_identity_residual".into(), chi_max);
    result
}

/// Every report field moves by at most `tol` under random local unitaries.
pub fn check_lu_invariance(cfg: &TrialConfig) -> PropertyResult {
    let outcomes = run_trials(cfg.trials, |i| {
        let seed = cfg.trial_seed(i);
        let mut rng = rng_from_seed(seed);
        let n = cfg.n_for(i);
        let s = random_haar_pure_with(n, &mut rng);
        let u = LocalUnitaryTriple::random(n, &mut rng);
        let moved = match apply_local_unitaries(&s, &u) {
            Ok(m) => m,
            Err(e) => return Outcome::error(seed, &s, &e),
        };
        let (before, after) = match (measures::full_report(&s), measures::full_report(&moved)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return Outcome::error(seed, &s, &e),
        };
        let change = before.max_abs_diff(&after);
        let violated = change > cfg.tol;
        Outcome {
            margin: -change,
            violated,
            witness: violated.then(|| witness(seed, &s, &[u.ua(), u.ub(), u.uc()], format!("max change {change:e}"))),
        }
    });
    aggregate("lu_invariance", outcomes)
}

#[derive(Clone, Copy)]
enum Expect {
    Vanishes,
    Positive,
    Above(f64),
}

fn signature_outcome(
    seed: u64,
    s: &TripartitePureState,
    label: &str,
    chi: Expect,
    varpi: Expect,
    eta: Option<Expect>,
    zero_tol: f64,
) -> Outcome {
    let r = match measures::full_report(s) {
        Ok(r) => r,
        Err(e) => return Outcome::error(seed, s, &e),
    };
    let mut margin = f64::MAX;
    let mut violated = false;
    let mut checks = vec![("chi", r.chi, chi), ("varpi", r.varpi, varpi)];
    if let Some(e) = eta {
        checks.push(("eta", r.eta, e));
    }
    let mut failed = Vec::new();
    for (name, value, expect) in checks {
        let (m, bad) = match expect {
            Expect::Vanishes => (-value, value > zero_tol),
            Expect::Positive => (value - NONZERO_THRESHOLD, value <= NONZERO_THRESHOLD),
            Expect::Above(t) => (value - t, value <= t),
        };
        margin = margin.min(m);
        if bad {
            violated = true;
            failed.push(name);
        }
    }
    let identity_failure = r.check_invariants(IDENTITY_TOL).err();
    if let Some(msg) = &identity_failure {
        violated = true;
        failed.push(msg.as_str());
    }
    Outcome {
        margin,
        violated,
        witness: violated.then(|| witness(seed, s, &[], format!("{label}: {} failed; {r:?}", failed.join(", ")))),
    }
}

/// Random unit vector of length `len`.
fn unit<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<num_complex::Complex64> {
    sampling::haar_vector(len, rng)
}

fn random_w_params<R: Rng + ?Sized>(rng: &mut R) -> WParams {
    loop {
        let l: [f64; 3] = std::array::from_fn(|_| rng.random_range(W_FLOOR..1.0));
        if let Ok(p) = WParams::from_free(l[0], l[1], l[2]) {
            return p;
        }
    }
}

/// Class fingerprints of χ and ϖ.
///
/// * separable `|ψ⟩_AB ⊗ |φ⟩_C` and `|φ⟩_A ⊗ |ψ⟩_BC`: χ, ϖ, η vanish;
/// * GHZ family: χ positive, ϖ vanishes;
/// * W family with `λ̃₀, λ̃₁, λ̃₂ ≥ 0.1`: χ positive, ϖ above `1e-5`;
/// * the three high local-rank standard states: χ positive, ϖ vanishes.
///
/// `samples` random instances are drawn per random family. "Vanishes" means
/// `≤ zero_tol`; "positive" means `> 1e-4`. Every fixture must also satisfy
/// the report's identities.
pub fn check_class_signatures(zero_tol: f64, seed: u64, samples: usize) -> PropertyResult {
    use Expect::*;
    let families = 4;
    let total = families * samples + StandardState::ALL.len();
    let outcomes = run_trials(total, |i| {
        let trial_seed = seed.wrapping_add(i as u64);
        let mut rng = rng_from_seed(trial_seed);
        if i >= families * samples {
            let which = StandardState::ALL[i - families * samples];
            let s = standard_state(which);
            return signature_outcome(trial_seed, &s, which.label(), Positive, Vanishes, None, zero_tol);
        }
        let n = 2 + (i / families) % 3;
        match i % families {
            0 => {
                let s = states::product_ab_c(&unit(4, &mut rng), &unit(n, &mut rng)).expect("unit vectors");
                signature_outcome(trial_seed, &s, "AB ⊗ C", Vanishes, Vanishes, Some(Vanishes), zero_tol)
            }
            1 => {
                let s = states::product_a_bc(&unit(2, &mut rng), &unit(2 * n, &mut rng)).expect("unit vectors");
                signature_outcome(trial_seed, &s, "A ⊗ BC", Vanishes, Vanishes, Some(Vanishes), zero_tol)
            }
            2 => {
                let l0 = rng.random_range(0.05..0.95);
                let theta = rng.random_range(0.0..=std::f64::consts::PI);
                let p = GhzParams::from_lambda0(l0, theta).expect("interior lambda0");
                let s = ghz_state(&p).expect("valid params");
                signature_outcome(trial_seed, &s, "GHZ", Positive, Vanishes, None, zero_tol)
            }
            _ => {
                let s = w_state(&random_w_params(&mut rng)).expect("valid params");
                signature_outcome(trial_seed, &s, "W", Positive, Above(W_VARPI_THRESHOLD), None, zero_tol)
            }
        }
    });
    let mut result = aggregate("class_signatures", outcomes);
    result.extras.insert("w_floor".into(), W_FLOOR);
    result.extras.insert("nonzero_threshold".into(), NONZERO_THRESHOLD);
    result.extras.insert("w_varpi_threshold".into(), W_VARPI_THRESHOLD);
    result.extras.insert("zero_tol".into(), zero_tol);
    result
}

/// `Σ pᵢ C(φᵢ) ≤ C_a + tol` over random ensembles of lengths `rank..=6`.
///
/// The best ensemble found for each state is reported as a fraction of `C_a`
/// (`min_best_ratio`, `mean_best_ratio`); it is informational only.
pub fn check_coa_bound(cfg: &TrialConfig, decomps_per_state: usize) -> PropertyResult {
    let per_state: Vec<(Outcome, Option<f64>)> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let seed = cfg.trial_seed(i);
            let mut rng = rng_from_seed(seed);
            let s = random_haar_pure_with(cfg.n_for(i), &mut rng);
            let rho = states::reduced_ab(&s);
            let mut eval = || -> crate::error::Result<(f64, f64)> {
                let ca = measures::coa(&rho)?;
                let rank = eigen_ensemble(&rho)?.len();
                let mut best: f64 = 0.0;
                for d in 0..decomps_per_state {
                    let length = rank + d % (7 - rank);
                    let dec = ghjw_decomposition_sample_with(&rho, length, &mut rng)?;
                    best = best.max(average_concurrence(&dec)?);
                }
                Ok((ca, best))
            };
            match eval() {
                Ok((ca, best)) => {
                    let margin = ca - best;
                    let violated = margin < -cfg.tol;
                    let ratio = (ca > 1e-12).then(|| best / ca);
                    let outcome = Outcome {
                        margin,
                        violated,
                        witness: violated
                            .then(|| witness(seed, &s, &[], format!("C_a = {ca:.17e}, best = {best:.17e}"))),
                    };
                    (outcome, ratio)
                }
                Err(e) => (Outcome::error(seed, &s, &e), None),
            }
        })
        .collect();
    let ratios: Vec<f64> = per_state.iter().filter_map(|r| r.1).collect();
    let mut result = aggregate("coa_bound", per_state.into_iter().map(|r| r.0).collect());
    if !ratios.is_empty() {
        let min = ratios.iter().copied().fold(f64::MAX, f64::min);
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        result.extras.insert("min_best_ratio".into(), min);
        result.extras.insert("mean_best_ratio".into(), mean);
    }
    result.extras.insert("decomps_per_state".into(), decomps_per_state as f64);
    result
}

/// Empirical behaviour of `χ̄ − χ` under random operations on qubit A or B.
///
/// Nothing here is a pass/fail condition.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ExplorationReport {
    pub party: String,
    pub trials: usize,
    /// Largest `χ̄ − χ` seen; positive values mean χ increased on average.
    pub max_increase: f64,
    /// Fraction of trials with `χ̄ > χ + tol`.
    pub fraction_increasing: f64,
}

pub fn explore_qubit_side_monotonicity(cfg: &TrialConfig, party: Party, k_range: &[usize]) -> ExplorationReport {
    assert!(party != Party::C, "use check_chi_monotonicity for party C");
    let diffs: Vec<f64> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_from_seed(cfg.trial_seed(i));
            let s = random_haar_pure_with(cfg.n_for(i), &mut rng);
            let k = k_range[i % k_range.len()];
            let ch = sample_kraus_channel_with(2, k, &mut rng);
            match (measures::chi(&s), average_chi_on(&s, party, &ch)) {
                (Ok(c), Ok(a)) => a - c,
                _ => f64::NAN,
            }
        })
        .collect();
    let increasing = diffs.iter().filter(|&&d| d > cfg.tol).count();
    ExplorationReport {
        party: format!("{party:?}"),
        trials: cfg.trials,
        max_increase: diffs.iter().copied().fold(f64::MIN, f64::max),
        fraction_increasing: increasing as f64 / cfg.trials as f64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(trials: usize) -> TrialConfig {
        TrialConfig::new(7, trials, vec![2, 3], 1e-8).unwrap()
    }

    #[test]
    fn identity_channel_margin_is_zero() {
        let r = check_chi_monotonicity_with(&cfg(30), "identity", |_, n, _| KrausChannel::identity(n));
        assert!(r.passed());
        assert!(r.worst_margin.abs() < 1e-12, "{}", r.worst_margin);
    }

    #[test]
    fn small_suites_pass() {
        assert!(check_chi_monotonicity(&cfg(40), &[2, 3]).passed());
        assert!(check_ordering(&cfg(40)).passed());
        assert!(check_lu_invariance(&cfg(40)).passed());
        assert!(check_coa_bound(&cfg(5), 20).passed());
        let sig = check_class_signatures(VANISH_TOL, 3, 10);
        assert!(sig.passed(), "{sig:?}");
        assert_eq!(sig.trials_run, 43);
    }

    #[test]
    fn impossible_tolerance_yields_witness() {
        // a negative zero threshold makes every "vanishes" check fail
        let r = check_class_signatures(-1.0, 0, 1);
        assert!(!r.passed());
        let w = r.witness.expect("witness on failure");
        assert!(w.state.to_state().is_ok());
    }
}
