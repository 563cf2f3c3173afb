//! Entanglement measures and monogamy residuals for pure states of a
//! `2 ⊗ 2 ⊗ n` system.
//!
//! The qubit pair A, B is described by its reduced density `ρ_AB`; party C
//! has arbitrary dimension `n` and purifies it. From `ρ_AB` we compute
//!
//! * concurrence `C`, negativity `N` and concurrence of assistance `C_a`;
//! * `τ = √(C_a² − C²)`, the GHZ-type residual;
//! * `χ = √(C_a² − N²)`, the total tripartite residual;
//! * `ϖ = C² − N²` and `η = C − N`, both W-type witnesses.
//!
//! ```
//! use monogamy::measures::full_report;
//! use monogamy::states::{w_state, WParams};
//!
//! let w = w_state(&WParams::symmetric()).unwrap();
//! let r = full_report(&w).unwrap();
//! assert!((r.concurrence - 2.0 / 3.0).abs() < 1e-12);
//! assert!((r.negativity - (5f64.sqrt() - 1.0) / 3.0).abs() < 1e-12);
//! assert!(r.varpi > 0.27);
//! ```
//!
//! The [`verify`] module holds seeded Monte-Carlo suites for the identities
//! and inequalities these quantities obey.

#![forbid(unsafe_code)]

pub mod error;
pub mod format;
pub mod matcore;
pub mod measures;
pub mod sampling;
pub mod states;
pub mod verify;

pub use error::{Error, Result};
pub use matcore::ComplexMatrix;
pub use measures::MeasureReport;
pub use states::{TripartitePureState, TwoQubitDensity};

pub use num_complex::Complex64;
