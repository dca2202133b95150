//! Gaussian covariance-matrix model of central-broadcast key distribution
//! from thermal light with an untrusted source.
//!
//! A source (possibly the eavesdropper) emits one arm of a two-mode squeezed
//! state; the other arm is kept as `E`. The emitted light is split between
//! Alice (`A`) and Bob (`B`). The crate computes the information the legal
//! parties share independently of the source, `I(A:B|E)`, their mutual
//! information `I(A:B)` and the homodyne Gaussian discord `D(B|A)`, for three
//! channel topologies. It also simulates the `g²(0) > 1` intensity-correlation
//! check Alice and Bob use to confirm the source is thermal.
//!
//! ```
//! use thermokey::scenarios::{build_basic, ScenarioParams};
//!
//! let params = ScenarioParams { nu: 2.0, eta_ab: 0.5, ..Default::default() };
//! let report = build_basic(&params)?.analyze()?;
//! assert!(report.cmi > 0.0 && report.discord > 0.0);
//! # Ok::<(), thermokey::Error>(())
//! ```
//!
//! The `book/` directory at the repository root walks through the model
//! chapter by chapter; its code listings are compiled as doctests of this crate.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gaussian;
pub mod hbt;
pub mod info;
pub mod scenarios;
pub mod sweep;

pub use error::{Error, Result};
pub use gaussian::{Beamsplitter, CovarianceMatrix, SymplecticForm};
pub use info::InfoReport;
pub use scenarios::{ScenarioKind, ScenarioParams, ScenarioState};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/covariance.md")]
    mod covariance {}
    #[doc = include_str!("../../../book/src/information.md")]
    mod information {}
    #[doc = include_str!("../../../book/src/scenarios.md")]
    mod scenarios {}
    #[doc = include_str!("../../../book/src/hbt.md")]
    mod hbt {}
    #[doc = include_str!("../../../book/src/sweeps.md")]
    mod sweeps {}
}
