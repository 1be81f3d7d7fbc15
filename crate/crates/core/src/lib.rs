//! Two-sided estimates for the optimal constants of discrete weighted Hardy
//! inequalities on a finite interval `[-M, N]`.
//!
//! Four boundary regimes are covered:
//!
//! * `ND`: `x_{N+1} = 0`, forward differences;
//! * `DN`: `x_{-M-1} = 0`, backward differences;
//! * `DD`: `x_{-M-1} = x_N = 0`;
//! * `NN`: `x_{-M-1} = x_{-M}`, numerator centred at the mean-like constant `m(x)`.
//!
//! For each regime [`bounds`] computes the constants `B_*` and `B^*` with
//! `B_* <= A <= k_{q,p} B^*`, [`variational`] produces certified lower bounds
//! on `A` itself, and [`splitting`] exposes the constructions that reduce the
//! two-sided regimes to one-sided ones.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bounds;
pub mod error;
pub mod examples;
pub mod meanzero;
pub mod model;
pub mod operators;
pub mod special;
pub mod splitting;
pub mod sum;
pub mod variational;

pub use bounds::{Argmax, BoundsReport, Case};
pub use error::{HardyError, Result};
pub use model::{Exponents, LeftBoundary, RightBoundary, Sequence, WeightedInterval};
pub use special::{k_qp, FactorKqp, Regime};
pub use variational::{estimate_a, EstimateConfig, EstimateResult};
