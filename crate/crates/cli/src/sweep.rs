//! Parameter sweeps over the GHZ and W families.
//!
//! Column layout (header row always present):
//!
//! | family | columns |
//! |---|---|
//! | `ghz` | `lambda0,lambda1,theta,concurrence,negativity,coa,tau,chi,varpi,eta` |
//! | `w`   | `lt0,lt1,lt2,lt3,concurrence,negativity,coa,tau,chi,varpi,eta` |
//!
//! The dependent amplitude (`lambda1`, `lt3`) is solved from the
//! normalization and cannot be swept or fixed.

use clap::ValueEnum;
use monogamy::measures::full_report;
use monogamy::states::{ghz_state, w_state, GhzParams, WParams};
use monogamy::MeasureReport;

use crate::output::machine;
use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Ghz,
    W,
}

impl Family {
    fn free_params(self) -> &'static [&'static str] {
        match self {
            Family::Ghz => &["lambda0", "theta"],
            Family::W => &["lt0", "lt1", "lt2"],
        }
    }

    fn default_of(self, name: &str) -> Option<f64> {
        (self == Family::Ghz && name == "theta").then_some(0.0)
    }

    fn header(self) -> String {
        let params = match self {
            Family::Ghz => "lambda0,lambda1,theta",
            Family::W => "lt0,lt1,lt2,lt3",
        };
        format!("{params},{}", MeasureReport::FIELD_NAMES.join(","))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Axis {
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let h = (self.stop - self.start) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| if i + 1 == self.steps { self.stop } else { self.start + h * i as f64 }).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub family: Family,
    pub axes: Vec<Axis>,
    pub fixed: Vec<(String, f64)>,
}

fn split_assignment(s: &str) -> Result<(&str, &str), UsageError> {
    s.split_once('=').ok_or_else(|| UsageError(format!("expected NAME=VALUE, got {s:?}")))
}

fn number(s: &str, what: &str) -> Result<f64, UsageError> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(UsageError(format!("{what}: {s:?} is not a finite number"))),
    }
}

impl SweepSpec {
    pub fn parse(family: Family, params: &[String], fixes: &[String]) -> Result<Self, UsageError> {
        let mut seen: Vec<String> = Vec::new();
        let mut claim = |name: &str| -> Result<String, UsageError> {
            if !family.free_params().contains(&name) {
                return Err(UsageError(format!(
                    "unknown parameter {name:?} for this family (expected one of {})",
                    family.free_params().join(", ")
                )));
            }
            if seen.iter().any(|s| s == name) {
                return Err(UsageError(format!("parameter {name:?} given twice")));
            }
            seen.push(name.to_string());
            Ok(name.to_string())
        };
        let mut axes = Vec::new();
        for p in params {
            let (name, range) = split_assignment(p)?;
            let name = claim(name.trim())?;
            let parts: Vec<&str> = range.split(':').collect();
            let [start, stop, steps] = parts[..] else {
                return Err(UsageError(format!("expected NAME=START:STOP:STEPS, got {p:?}")));
            };
            let steps: usize = steps
                .trim()
                .parse()
                .ok()
                .filter(|&k| k >= 1)
                .ok_or_else(|| UsageError(format!("{name}: steps must be a positive integer")))?;
            axes.push(Axis { start: number(start, &name)?, stop: number(stop, &name)?, steps, name });
        }
        let mut fixed = Vec::new();
        for f in fixes {
            let (name, value) = split_assignment(f)?;
            let name = claim(name.trim())?;
            fixed.push((name.clone(), number(value, &name)?));
        }
        for &name in family.free_params() {
            if !seen.iter().any(|s| s == name) {
                match family.default_of(name) {
                    Some(v) => fixed.push((name.to_string(), v)),
                    None => return Err(UsageError(format!("parameter {name:?} needs --param or --fix"))),
                }
            }
        }
        Ok(Self { family, axes, fixed })
    }

    /// All grid points as name → value lists, first axis outermost.
    fn grid(&self) -> Vec<Vec<(String, f64)>> {
        let mut rows = vec![self.fixed.clone()];
        for axis in &self.axes {
            rows = rows
                .into_iter()
                .flat_map(|row| {
                    axis.points().into_iter().map(move |v| {
                        let mut r = row.clone();
                        r.push((axis.name.clone(), v));
                        r
                    })
                })
                .collect();
        }
        rows
    }
}

enum Point {
    Ghz(GhzParams),
    W(WParams),
}

fn resolve(family: Family, values: &[(String, f64)]) -> Result<Point, UsageError> {
    let get = |name: &str| values.iter().find(|(n, _)| n == name).map(|(_, v)| *v).expect("complete grid point");
    let point = match family {
        Family::Ghz => GhzParams::from_lambda0(get("lambda0"), get("theta")).map(Point::Ghz),
        Family::W => WParams::from_free(get("lt0"), get("lt1"), get("lt2")).map(Point::W),
    };
    point.map_err(|e| {
        let at: Vec<String> = values.iter().map(|(n, v)| format!("{n}={v}")).collect();
        UsageError(format!("infeasible grid point ({}): {e}", at.join(", ")))
    })
}

/// The CSV table for `spec`. Every grid point is validated before any
/// measure is computed.
pub fn run(spec: &SweepSpec) -> Result<String, UsageError> {
    let points = spec.grid().iter().map(|values| resolve(spec.family, values)).collect::<Result<Vec<_>, _>>()?;
    let mut out = spec.family.header();
    out.push('\n');
    for point in points {
        let (params, state) = match point {
            Point::Ghz(p) => (vec![p.lambda0, p.lambda1, p.theta], ghz_state(&p)?),
            Point::W(p) => (vec![p.lt0, p.lt1, p.lt2, p.lt3], w_state(&p)?),
        };
        let report = full_report(&state)?;
        let cells: Vec<String> = params.into_iter().chain(report.values()).map(machine).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn axis_points_hit_both_ends() {
        let a = Axis { name: "x".into(), start: 0.05, stop: 0.95, steps: 19 };
        let p = a.points();
        assert_eq!(p.len(), 19);
        assert_eq!((p[0], p[18]), (0.05, 0.95));
        assert!((p[1] - 0.1).abs() < 1e-15);
    }

    #[test]
    fn parse_fills_defaults_and_rejects_bad_names() {
        let s = SweepSpec::parse(Family::Ghz, &strings(&["lambda0=0.1:0.9:3"]), &[]).unwrap();
        assert_eq!(s.fixed, vec![("theta".to_string(), 0.0)]);
        assert!(SweepSpec::parse(Family::Ghz, &strings(&["lambda1=0.1:0.9:3"]), &[]).is_err());
        assert!(SweepSpec::parse(Family::W, &strings(&["lt0=0.1:0.5:3"]), &strings(&["lt1=0.3"])).is_err());
        assert!(SweepSpec::parse(Family::W, &strings(&["lt0=0.1:0.5:0"]), &strings(&["lt1=0.3", "lt2=0.3"])).is_err());
        assert!(SweepSpec::parse(Family::W, &strings(&["lt0=0.1:0.5:2", "lt0=0.1:0.2:2"]), &[]).is_err());
    }

    #[test]
    fn grid_is_cartesian_with_first_axis_outermost() {
        let s =
            SweepSpec::parse(Family::W, &strings(&["lt0=0.1:0.2:2", "lt1=0.3:0.4:3"]), &strings(&["lt2=0.2"])).unwrap();
        let g = s.grid();
        assert_eq!(g.len(), 6);
        let lt1_of = |row: &Vec<(String, f64)>| row.iter().find(|(n, _)| n == "lt1").unwrap().1;
        assert_eq!(lt1_of(&g[0]), 0.3);
        assert!((lt1_of(&g[1]) - 0.35).abs() < 1e-15);
    }

    #[test]
    fn infeasible_grid_is_rejected() {
        let s = SweepSpec::parse(Family::W, &strings(&["lt0=0.5:0.9:3"]), &strings(&["lt1=0.5", "lt2=0.5"])).unwrap();
        assert!(run(&s).unwrap_err().0.contains("infeasible"));
    }
}
