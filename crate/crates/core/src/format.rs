//! JSON encodings of states and matrices.
//!
//! A state file looks like
//!
//! ```json
//! {"n": 1, "amplitudes": [[0.7071067811865476, 0.0], [0.0, 0.0], [0.0, 0.0], [0.7071067811865476, 0.0]]}
//! ```
//!
//! with amplitude index `a·2n + b·n + c`. Complex numbers are `[re, im]`
//! pairs. Matrices are arrays of rows of such pairs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::ComplexMatrix;
use crate::states::TripartitePureState;

/// Wire form of a [`TripartitePureState`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub n: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateJson {
    pub fn from_state(s: &TripartitePureState) -> Self {
        Self { n: s.n(), amplitudes: s.amplitudes().iter().map(|z| [z.re, z.im]).collect() }
    }

    /// Validates and normalizes into a state.
    pub fn to_state(&self) -> Result<TripartitePureState> {
        if self.n == 0 {
            return Err(Error::Format("n must be at least 1".into()));
        }
        if self.amplitudes.len() != 4 * self.n {
            return Err(Error::Format(format!(
                "amplitudes length ≠ 4n (got {}, n = {})",
                self.amplitudes.len(),
                self.n
            )));
        }
        if self.amplitudes.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Format("amplitudes contain non-finite numbers".into()));
        }
        let amps = self.amplitudes.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        TripartitePureState::new(self.n, amps)
    }
}

pub fn state_from_json(text: &str) -> Result<TripartitePureState> {
    let raw: StateJson = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    raw.to_state()
}

pub fn state_to_json(s: &TripartitePureState) -> String {
    serde_json::to_string(&StateJson::from_state(s)).expect("state serializes")
}

/// Wire form of a [`ComplexMatrix`]: rows of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixJson(pub Vec<Vec<[f64; 2]>>);

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self(
            (0..m.rows())
                .map(|i| {
                    (0..m.cols())
                        .map(|j| {
                            let z = m.get(i, j);
                            [z.re, z.im]
                        })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let rows = self.0.len();
        let cols = self.0.first().map_or(0, Vec::len);
        if self.0.iter().any(|r| r.len() != cols) {
            return Err(Error::Format("ragged matrix rows".into()));
        }
        let entries = self.0.iter().flatten().map(|&[re, im]| Complex64::new(re, im)).collect();
        ComplexMatrix::new(rows, cols, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::random_haar_pure;

    #[test]
    fn wrong_length_is_rejected() {
        let err = state_from_json(r#"{"n": 2, "amplitudes": [[1, 0], [0, 0], [0, 0]]}"#).unwrap_err();
        assert!(err.to_string().contains("amplitudes length ≠ 4n"), "{err}");
    }

    #[test]
    fn garbage_is_rejected() {
        assert!(state_from_json("{").is_err());
        assert!(state_from_json(r#"{"n": 1, "amplitudes": [[1e999, 0], [0, 0], [0, 0], [0, 0]]}"#).is_err());
        assert!(state_from_json(r#"{"n": 0, "amplitudes": []}"#).is_err());
        assert!(state_from_json(r#"{"n": 1, "amplitudes": [[0, 0], [0, 0], [0, 0], [0, 0]]}"#).is_err());
    }

    #[test]
    fn unnormalized_input_is_normalized() {
        let s = state_from_json(r#"{"n": 1, "amplitudes": [[3, 0], [0, 0], [0, 0], [0, 4]]}"#).unwrap();
        assert!((s.amplitudes()[0].re - 0.6).abs() < 1e-15);
        assert!((s.amplitudes()[3].im - 0.8).abs() < 1e-15);
    }

    #[test]
    fn state_round_trip_is_exact() {
        let s = random_haar_pure(3, 99);
        let back = state_from_json(&state_to_json(&s)).unwrap();
        for (a, b) in s.amplitudes().iter().zip(back.amplitudes()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn matrix_round_trip() {
        let m = ComplexMatrix::new(2, 3, (0..6).map(|k| Complex64::new(k as f64, -0.5)).collect()).unwrap();
        let text = serde_json::to_string(&MatrixJson::from_matrix(&m)).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_matrix().unwrap(), m);
    }
}
