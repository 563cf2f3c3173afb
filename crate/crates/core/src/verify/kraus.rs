use rand::Rng;

use crate::error::{Error, Result};
use crate::matcore::{self, ComplexMatrix};
use crate::measures;
use crate::sampling::{self, rng_from_seed};
use crate::states::{self, Party, TripartitePureState};

const COMPLETENESS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    /// `Σ M†M = I`
    Complete,
    /// `Σ M†M ≤ I`
    SubNormalized,
}

/// A local operation given by Kraus operators, all with the same input
/// dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    operators: Vec<ComplexMatrix>,
    completeness: Completeness,
}

impl KrausChannel {
    pub fn new(operators: Vec<ComplexMatrix>, completeness: Completeness) -> Result<Self> {
        let first = operators.first().ok_or_else(|| Error::InvalidChannel("no operators".into()))?;
        let n = first.cols();
        if operators.iter().any(|m| m.cols() != n) {
            return Err(Error::InvalidChannel("operators disagree on input dimension".into()));
        }
        let mut gram = ComplexMatrix::zeros(n, n);
        for m in &operators {
            gram = &gram + &(&m.dagger() * m);
        }
        let id = ComplexMatrix::identity(n);
        match completeness {
            Completeness::Complete => {
                let dev = gram.max_abs_diff(&id);
                if dev > COMPLETENESS_TOL {
                    return Err(Error::InvalidChannel(format!("Σ M†M deviates from I by {dev:e}")));
                }
            }
            Completeness::SubNormalized => {
                let slack = matcore::hermitian_eigvals(&(&id - &gram), COMPLETENESS_TOL)?;
                let min = slack.last().copied().unwrap_or(0.0);
                if min < -COMPLETENESS_TOL {
                    return Err(Error::InvalidChannel(format!("I − Σ M†M has eigenvalue {min:e}")));
                }
            }
        }
        Ok(Self { operators, completeness })
    }

    pub fn identity(n: usize) -> Self {
        Self { operators: vec![ComplexMatrix::identity(n)], completeness: Completeness::Complete }
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn completeness(&self) -> Completeness {
        self.completeness
    }

    pub fn input_dim(&self) -> usize {
        self.operators[0].cols()
    }

    /// Multiplies every operator by `√s`, so `Σ M†M = s·I` for a complete
    /// channel.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::InvalidChannel(format!("scale {s} outside (0, 1]")));
        }
        Self::new(self.operators.iter().map(|m| m.scale(s.sqrt())).collect(), Completeness::SubNormalized)
    }
}

/// Complete channel with `k` operators on an `n`-dimensional party, cut from
/// a Haar-random isometry `n → k·n`.
pub fn sample_kraus_channel(n: usize, k: usize, seed: u64) -> KrausChannel {
    sample_kraus_channel_with(n, k, &mut rng_from_seed(seed))
}

pub fn sample_kraus_channel_with<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> KrausChannel {
    assert!(n >= 1 && k >= 1, "need n >= 1 and k >= 1");
    let v = sampling::haar_isometry(k * n, n, rng);
    let operators = (0..k).map(|block| ComplexMatrix::from_fn(n, n, |i, j| v.get(block * n + i, j))).collect();
    KrausChannel { operators, completeness: Completeness::Complete }
}

/// Branch probabilities and post-measurement states of `channel` acting on
/// `party`. Null branches are dropped.
pub fn branches(
    s: &TripartitePureState,
    party: Party,
    channel: &KrausChannel,
) -> Result<Vec<(f64, TripartitePureState)>> {
    let mut out = Vec::with_capacity(channel.operators.len());
    for m in &channel.operators {
        if let (p, Some(branch)) = states::apply_kraus_branch_on(s, party, m)? {
            out.push((p, branch));
        }
    }
    Ok(out)
}

/// `χ̄ = Σₖ pₖ χ(branchₖ)` for a channel on party C.
pub fn average_chi(s: &TripartitePureState, channel: &KrausChannel) -> Result<f64> {
    average_chi_on(s, Party::C, channel)
}

pub fn average_chi_on(s: &TripartitePureState, party: Party, channel: &KrausChannel) -> Result<f64> {
    let mut acc = 0.0;
    for (p, branch) in branches(s, party, channel)? {
        acc += p * measures::chi(&branch)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{ghz_state, random_haar_pure, GhzParams};

    #[test]
    fn single_block_is_unitary() {
        let ch = sample_kraus_channel(3, 1, 5);
        assert_eq!(ch.operators().len(), 1);
        assert!(ch.operators()[0].unitarity_deviation() < 1e-12);
    }

    #[test]
    fn sampled_channels_are_complete() {
        for (n, k) in [(2, 2), (3, 3), (4, 2)] {
            let ch = sample_kraus_channel(n, k, 17);
            let mut gram = ComplexMatrix::zeros(n, n);
            for m in ch.operators() {
                gram = &gram + &(&m.dagger() * m);
            }
            assert!(gram.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-10);
            assert!(KrausChannel::new(ch.operators().to_vec(), Completeness::Complete).is_ok());
        }
    }

    #[test]
    fn branch_probabilities_sum_to_one() {
        let ch = sample_kraus_channel(2, 2, 3);
        let s = random_haar_pure(2, 8);
        let total: f64 = branches(&s, Party::C, &ch).unwrap().iter().map(|(p, _)| p).sum();
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn scaled_channel_is_subnormalized() {
        let ch = sample_kraus_channel(3, 2, 1).scaled(0.4).unwrap();
        assert_eq!(ch.completeness(), Completeness::SubNormalized);
        let total: f64 = branches(&random_haar_pure(3, 2), Party::C, &ch).unwrap().iter().map(|(p, _)| p).sum();
        assert!((total - 0.4).abs() < 1e-10);
        assert!(KrausChannel::new(ch.operators().to_vec(), Completeness::Complete).is_err());
    }

    #[test]
    fn overcomplete_is_rejected() {
        let ops = vec![ComplexMatrix::identity(2), ComplexMatrix::identity(2).scale(0.5)];
        assert!(KrausChannel::new(ops.clone(), Completeness::SubNormalized).is_err());
        assert!(KrausChannel::new(ops, Completeness::Complete).is_err());
        assert!(KrausChannel::new(vec![], Completeness::Complete).is_err());
    }

    #[test]
    fn identity_channel_preserves_chi() {
        let s = random_haar_pure(3, 77);
        let chi = measures::chi(&s).unwrap();
        assert!((average_chi(&s, &KrausChannel::identity(3)).unwrap() - chi).abs() < 1e-12);
    }

    #[test]
    fn projective_measurement_on_ghz_kills_chi() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let g = ghz_state(&GhzParams::new(h, h, 0.0).unwrap()).unwrap();
        let ch = KrausChannel::new(
            vec![ComplexMatrix::from_diagonal(&[1.0, 0.0]), ComplexMatrix::from_diagonal(&[0.0, 1.0])],
            Completeness::Complete,
        )
        .unwrap();
        assert!(average_chi(&g, &ch).unwrap() < 1e-12);
        assert!((measures::chi(&g).unwrap() - 1.0).abs() < 1e-12);
    }
}
