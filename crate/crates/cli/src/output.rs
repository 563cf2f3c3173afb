use monogamy::measures::full_report;
use monogamy::states::{local_ranks, RANK_TOL};
use monogamy::{MeasureReport, Result, TripartitePureState};

/// 17 significant digits, enough to reproduce the `f64` exactly.
pub fn machine(v: f64) -> String {
    format!("{v:.16e}")
}

/// Six significant digits.
pub fn human(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        format!("{v:.*}", (5 - mag) as usize)
    } else {
        format!("{v:.5e}")
    }
}

pub struct Measured {
    pub report: MeasureReport,
    pub ranks: (usize, usize, usize),
}

impl Measured {
    pub fn of(s: &TripartitePureState) -> Result<Self> {
        Ok(Self { report: full_report(s)?, ranks: local_ranks(s, RANK_TOL) })
    }

    pub fn to_json(&self) -> String {
        let fields: Vec<String> = MeasureReport::FIELD_NAMES
            .iter()
            .zip(self.report.values())
            .map(|(k, v)| format!("\"{k}\":{}", machine(v)))
            .collect();
        let (a, b, c) = self.ranks;
        format!("{{{},\"ranks\":[{a},{b},{c}]}}", fields.join(","))
    }

    pub fn to_csv(&self) -> String {
        let values: Vec<String> = self.report.values().iter().map(|&v| machine(v)).collect();
        let (a, b, c) = self.ranks;
        format!("{},rank_a,rank_b,rank_c\n{},{a},{b},{c}\n", MeasureReport::FIELD_NAMES.join(","), values.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_format_round_trips() {
        for v in [0.1, 1.0 / 3.0, 2f64.sqrt(), 1e-300, -7.25e-9, 0.0] {
            assert_eq!(machine(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn human_format_has_six_digits() {
        assert_eq!(human(2.0 / 3.0), "0.666667");
        assert_eq!(human(123.456789), "123.457");
        assert_eq!(human(1.5e-7), "1.50000e-7");
        assert_eq!(human(0.0), "0");
    }
}
