//! Discrete fractional Laplacian on cyclic chains.
//!
//! The fractional Laplacian matrix on the N-periodic chain is the power
//! `Delta_alpha = -mu W^2 (2*1 - D - D^dagger)^(alpha/2)` of the
//! Born-von-Karman second-difference generator. This crate computes:
//!
//! * closed-form matrix elements on the infinite chain ([`elements`]),
//! * the exact `N x N` matrices on the finite cyclic chain by two
//!   independent constructions, spectral sum and periodization
//!   ([`chain`]),
//! * the dispersion relation
//!   `omega^2_alpha(kappa) = W^2 2^alpha |sin(kappa/2)|^alpha`,
//! * continuum-limit kernels: the infinite-space Riesz fractional
//!   derivative and the L-periodic kernel through Hurwitz-type zeta
//!   functions ([`kernels`], [`zeta`]),
//! * quadrature oracles for every closed form, including the
//!   n-dimensional cubic-lattice element ([`quadrature`]),
//! * exact spectral fractional diffusion on the ring ([`diffusion`]),
//! * a self-contained verification suite ([`verify`]).
//!
//! Everything is generic over the scalar type through [`scalar::Real`]
//! (`f32` or `f64`); the aliases below pin the common `f64`
//! instantiations. All routines are pure functions of their inputs and
//! safe to call concurrently.
//!
//! ```
//! use fraclatt::chain::{characteristic_matrix, ChainSpec, Method};
//! use fraclatt::order::FractionalOrder;
//!
//! // half-order chain of 16 particles, unit mass and scales
//! let order = FractionalOrder::new(1.0)?;
//! let spec = ChainSpec::unit(16, order)?;
//! let f = characteristic_matrix(&spec, Method::Spectral)?;
//!
//! // rows sum to zero: uniform translations carry no energy
//! let row_sum: f64 = f.first_row().iter().sum();
//! assert!(row_sum.abs() < 1e-12);
//! # Ok::<(), fraclatt::Error>(())
//! ```

// `!(x > 0)` also rejects NaN, which `x <= 0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Quadrature node tables and Stirling constants keep their published digits.
#![allow(clippy::excessive_precision)]

pub mod chain;
pub mod dft;
pub mod diffusion;
pub mod elements;
pub mod error;
pub mod gamma;
pub mod kernels;
pub mod order;
pub mod quadrature;
pub mod scalar;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
pub use scalar::Real;

/// `f64` instantiations used by the CLI and the verification suite.
pub type FractionalOrder64 = order::FractionalOrder<f64>;
pub type ChainSpec64 = chain::ChainSpec<f64>;
pub type CirculantMatrix64 = chain::CirculantMatrix<f64>;
pub type FieldOnRing64 = diffusion::FieldOnRing<f64>;
pub type EvolutionSpec64 = diffusion::EvolutionSpec<f64>;
pub type ContinuumScaling64 = kernels::ContinuumScaling<f64>;
pub type QuadratureSpec64 = quadrature::QuadratureSpec<f64>;

/// Single-precision aliases for callers that can live with ~7 digits.
pub type FractionalOrder32 = order::FractionalOrder<f32>;
pub type ChainSpec32 = chain::ChainSpec<f32>;
pub type CirculantMatrix32 = chain::CirculantMatrix<f32>;
pub type FieldOnRing32 = diffusion::FieldOnRing<f32>;
