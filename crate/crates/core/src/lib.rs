//! Arbitrarily high-order, unconditionally maximum-bound-preserving
//! exponential integrators for Allen-Cahn equations on periodic domains.
//!
//! The crate is organized around five pieces:
//!
//! - [`quadrature`]: Gauss-Legendre, Gauss-Radau and Gauss-Lobatto rules on
//!   [0,1], plus the exponential-remainder sign classification that decides
//!   which families preserve the maximum bound.
//! - [`grid`] and [`operator`]: periodic grids, scalar fields, and the
//!   FFT-diagonalized stabilized operator `eps^2 Lap_h - kappa I` with
//!   `e^{tL}` and `phi_1(tau L)` application.
//! - [`model`]: polynomial and Flory-Huggins nonlinearities, their bounds
//!   `beta` and stabilization constants `kappa`.
//! - [`integrator`]: the recursive EI*k* stepper of arbitrary order.
//! - [`diagnostics`] and [`cli`]: energy/error diagnostics, convergence
//!   tables, and the experiment front end.

// `!(x > 0.0)` guards are deliberate: they reject NaN along with the sign
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod diagnostics;
pub mod grid;
pub mod integrator;
pub mod model;
pub mod operator;
pub mod quadrature;

pub use grid::{Field, Grid2};
pub use integrator::{SchemeSpec, StepContext};
pub use model::Nonlinearity;
pub use operator::StabilizedOperator;
pub use quadrature::{build_rule, exp_residue_sign, QuadratureFamily, QuadratureRule};
