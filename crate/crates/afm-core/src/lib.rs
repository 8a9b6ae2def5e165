//! Auxiliary-field treatment of radial Schrödinger problems.
//!
//! The crate turns a power-law potential into a solvable starting problem
//! plus a variational field, and packages everything around that idea:
//!
//! - [`potentials`]: potential specifications, the named two-term families,
//!   their dimensionless β-reductions and canonical embeddings, scaling laws.
//! - [`engine`]: the generic minimizer. It locates the stationary field ν₀
//!   through the mean point r₀ and returns the approximate energy.
//! - [`closed_form`]: the same energies in closed form for the named
//!   families, the cubic/quartic root functions they need, duality factors,
//!   and asymptotic expansions used as cross-checks.
//! - [`spectral`]: a finite-difference eigensolver with Richardson
//!   extrapolation, the numeric reference the approximations are judged
//!   against.
//! - [`calibration`]: β-dependent level-number models N = b(β)n + l + c(β),
//!   the χ quality measure, and constrained curve fits.

pub mod calibration;
pub mod closed_form;
pub mod engine;
pub mod error;
pub mod potentials;
pub mod spectral;

pub use error::{Error, Result};
