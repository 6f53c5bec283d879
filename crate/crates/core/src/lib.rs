//! Beta laws parametrized by mean and variance over the MV-dome
//! `{(m, v) : 0 < m < 1, 0 < v < m - m²}` and its closure.
//!
//! The crate covers the numerical kernels (log-gamma, digamma, regularized
//! incomplete beta), the dome geometry and its bijection with the classical
//! `(α, β)` quadrant, the closed family of laws including the Dirac and
//! two-point boundary laws, first- and second-order stochastic dominance with
//! mean-preserving-spread magnitudes and Hasse paths, and the CARA portfolio
//! problem together with the exhaustive dome sweep.
//!
//! Everything here is pure computation and builds without `std`; file formats,
//! parallel sweeps and the command line live in the `betadome-cli` crate.
//!
//! ```
//! use betadome::dominance::ssd_compare;
//! use betadome::{BetaLaw, PortfolioProblem, Verdict};
//!
//! let a = BetaLaw::from_mean_variance(0.3, 0.05)?;
//! let b = BetaLaw::from_mean_variance(0.3, 0.02)?;
//! assert_eq!(ssd_compare(&a, &b)?.verdict, Verdict::SecondDominates);
//!
//! let best = PortfolioProblem::new(b, 4.0, 0.05)?.optimal_gamma()?;
//! assert!((0.0..=1.0).contains(&best.gamma_star));
//! # Ok::<(), betadome::Error>(())
//! ```
#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` is used on purpose so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
mod math;

pub mod beta_law;
pub mod dome;
pub mod dominance;
pub mod portfolio;
pub mod quadrature;
pub mod special_fn;
pub mod sweep;

pub use beta_law::{BetaLaw, InteriorLaw, MomentSummary};
pub use dome::{DomeLocation, DomePoint, DomeRegion};
pub use dominance::{DominanceOrder, DominanceResult, HassePath, Verdict};
pub use error::{Error, Result};
pub use portfolio::{BoundaryActive, OptimalAllocation, PortfolioProblem};
pub use special_fn::ShapeParams;
pub use sweep::{SweepCell, SweepGrid};
