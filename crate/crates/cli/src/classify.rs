//! Local-rank classes of `2 ⊗ 2 ⊗ n` pure states.
//!
//! The ranks `(r_A, r_B, r_C)` are always reported. A named label is added
//! only when the numbers are unambiguous:
//!
//! | ranks | condition | label |
//! |---|---|---|
//! | `r_A = 1` or `r_C = 1` | | `separable (A-BC or AB-C)` |
//! | `r_B = 1` | | `separable (B-AC)` |
//! | `(2,2,2)` | `ϖ > 1e-4` | `W-type (2,2,2)` |
//! | `(2,2,2)` | `χ > 1e-4`, `ϖ ≤ 1e-9` | `GHZ-type (2,2,2)` |
//! | `(2,2,3)` | | `(2,2,3) class` |
//! | `(2,2,4)` | | `(2,2,4) class` |
//!
//! Anything else is `undetermined`.

use monogamy::verify::{NONZERO_THRESHOLD, VANISH_TOL};
use monogamy::{Result, TripartitePureState};

use crate::output::{human, Measured};

pub struct Classification {
    pub label: &'static str,
    pub ranks: (usize, usize, usize),
    pub chi: f64,
    pub varpi: f64,
}

pub fn label_for(ranks: (usize, usize, usize), chi: f64, varpi: f64) -> &'static str {
    match ranks {
        (1, _, _) | (_, _, 1) => "separable (A-BC or AB-C)",
        (_, 1, _) => "separable (B-AC)",
        (2, 2, 2) if varpi > NONZERO_THRESHOLD => "W-type (2,2,2)",
        (2, 2, 2) if chi > NONZERO_THRESHOLD && varpi <= VANISH_TOL => "GHZ-type (2,2,2)",
        (2, 2, 3) => "(2,2,3) class",
        (2, 2, 4) => "(2,2,4) class",
        _ => "undetermined",
    }
}

pub fn classify(s: &TripartitePureState) -> Result<Classification> {
    let m = Measured::of(s)?;
    Ok(Classification {
        label: label_for(m.ranks, m.report.chi, m.report.varpi),
        ranks: m.ranks,
        chi: m.report.chi,
        varpi: m.report.varpi,
    })
}

impl Classification {
    pub fn render(&self) -> String {
        let (a, b, c) = self.ranks;
        format!(
            "class: {}\nlocal ranks (A, B, C): ({a}, {b}, {c})\nchi = {}, varpi = {}\nthresholds: zero <= {VANISH_TOL:e}, nonzero > {NONZERO_THRESHOLD:e}\n",
            self.label,
            human(self.chi),
            human(self.varpi),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use monogamy::states::{ghz_state, standard_state, w_state, GhzParams, StandardState, WParams};

    #[test]
    fn fixtures_get_their_labels() {
        let w = w_state(&WParams::symmetric()).unwrap();
        assert_eq!(classify(&w).unwrap().label, "W-type (2,2,2)");
        let ghz = ghz_state(&GhzParams::from_lambda0(0.5f64.sqrt(), 0.0).unwrap()).unwrap();
        assert_eq!(classify(&ghz).unwrap().label, "GHZ-type (2,2,2)");
        assert_eq!(classify(&standard_state(StandardState::S224)).unwrap().label, "(2,2,4) class");
        assert_eq!(classify(&standard_state(StandardState::S223)).unwrap().label, "(2,2,3) class");
    }

    #[test]
    fn in_between_values_are_undetermined() {
        assert_eq!(label_for((2, 2, 2), 1e-6, 1e-6), "undetermined");
        assert_eq!(label_for((2, 2, 2), 0.5, 1e-6), "undetermined");
        assert_eq!(label_for((2, 1, 2), 0.0, 0.0), "separable (B-AC)");
        assert_eq!(label_for((2, 2, 1), 0.0, 0.0), "separable (A-BC or AB-C)");
    }
}
