//! Resonant excitation of a two-state system by a hyperbolic-secant pulse
//! in the presence of pure dephasing.
//!
//! The crate pairs the exact gamma-function solution for the final
//! population inversion (and its hypergeometric time dependence) with an
//! independent adaptive Runge–Kutta integrator of the Bloch equation.
//!
//! All numerical code is generic over [`Real`] (`f32` or `f64`); the
//! `*64` aliases below fix the scalar to `f64`, which is what every stated
//! tolerance refers to.

// `!(x > 0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// reference constants keep their full published digits
#![allow(clippy::excessive_precision)]

pub mod analytic;
pub mod bloch_ode;
pub mod error;
pub mod real;
pub mod specfun;
pub mod sweep;
pub mod verify;

pub use analytic::{w_infinity, w_infinity_cos_form, AsymptoticEstimate, BlochState, DimensionlessParams, Regime};
pub use bloch_ode::{final_inversion, integrate, IntegratorConfig, PulseShape, SechPulseModel, Trajectory};
pub use error::{Error, Result};
pub use real::Real;
pub use sweep::{RootResult, SweepResult, SweepSpec};

pub type DimensionlessParams64 = DimensionlessParams<f64>;
pub type BlochState64 = BlochState<f64>;
pub type AsymptoticEstimate64 = AsymptoticEstimate<f64>;
pub type SechPulseModel64 = SechPulseModel<f64>;
pub type IntegratorConfig64 = IntegratorConfig<f64>;
pub type Trajectory64 = Trajectory<f64>;
pub type SweepSpec64 = SweepSpec<f64>;
pub type SweepResult64 = SweepResult<f64>;
pub type RootResult64 = RootResult<f64>;
