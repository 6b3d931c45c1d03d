//! Eigenvalues of the one-dimensional Schrödinger equation with the
//! cosh-sech "volcano" potential by the asymptotic iteration method (AIM).
//!
//! The crate is `no_std` (with `alloc`). Coefficient data lives in truncated
//! Taylor jets whose coefficients are polynomials in the unquantized energy;
//! each AIM step is a handful of jet products and one derivative, and the
//! quantization condition is a polynomial in the energy whose roots are the
//! eigenvalue estimates.
//!
//! ```
//! use volcano_core::{solve_spec, PotentialSpec, SolverConfig};
//!
//! let spec = PotentialSpec::cosh_sech(1.0, 1.0).unwrap();
//! let cfg = SolverConfig::new(&spec, 12);
//! let solution = solve_spec(&spec, &cfg).unwrap();
//! assert!(solution
//!     .candidates
//!     .iter()
//!     .any(|c| c.converged && (c.energy.re + 0.25).abs() < 1e-6));
//! ```
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod aim;
mod complex;
mod dd;
mod error;
pub mod fd;
pub mod potential;
mod real;
pub mod series;
pub mod spectrum;
pub mod units;

pub use aim::{
    aim_step, discriminant, poly_roots, solve, solve_spec, AimIterate, EigenvalueCandidate, ExpansionPoint, Precision,
    Solution, SolverConfig,
};
pub use complex::{Complex, ComplexScalar};
pub use dd::DoubleDouble;
pub use error::{Error, Result};
pub use potential::{CoefficientPair, Family, Param, PotentialExtrema, PotentialSpec, S0Form};
pub use real::Real;
pub use series::{EnergyPoly, Jet, ScalarJet};
