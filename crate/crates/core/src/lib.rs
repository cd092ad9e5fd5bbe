//! Statistical mechanics of the 1D oscillator gas with bounded level
//! occupation, exact and asymptotic.
//!
//! The crate has two kinds of kernels:
//!
//! - **Exact counting** ([`partition`]): arbitrary-precision counts and
//!   enumeration of restricted integer partitions — the ground truth that
//!   every asymptotic formula is scored against.
//! - **Floating-point kernels** ([`special`], [`asymptotics`], [`thermo`],
//!   [`equivalence`]): log-space microstate formulas, the bounded-occupation
//!   distribution, fugacity solving and the M ↔ N mapping. These are generic
//!   over the scalar type (f32 or f64) through the [`Real`] trait; the
//!   aliases below pin the common f64 instantiations.
//!
//! Units: ħω = 1 for energy and temperature everywhere.

#![forbid(unsafe_code)]
// Domain guards are written as `!(x > 0)` on purpose: NaN must fail them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod equivalence;
pub mod error;
pub mod partition;
mod scalar;
pub mod special;
pub mod thermo;

pub use error::{Error, Result};
pub use scalar::Real;

pub use asymptotics::{SaddlePoint, SpectrumModel};
pub use equivalence::{EquivalenceReport, Route, RouteResidual, ValidationOptions};
pub use partition::{CountResult, PartitionConstraint};
pub use thermo::{GentileGas, MaxOccupation, ThermoState};

/// f64 instantiations of the generic kernels.
pub type SpectrumModel64 = SpectrumModel<f64>;
pub type SaddlePoint64 = SaddlePoint<f64>;
pub type GentileGas64 = GentileGas<f64>;
pub type ThermoState64 = ThermoState<f64>;

/// f32 instantiations, for callers that trade precision for footprint.
pub type SpectrumModel32 = SpectrumModel<f32>;
pub type SaddlePoint32 = SaddlePoint<f32>;
pub type GentileGas32 = GentileGas<f32>;
pub type ThermoState32 = ThermoState<f32>;
