//! Certified numerics for the functions equivalent to the Riemann zeta
//! function on the half-plane Re s > 1.
//!
//! The members are `ζ_x(s) = Σ e^{i⟨r_n,x⟩} n^{-s} = Π (1 − e^{ix_k} p_k^{-s})^{-1}`
//! for phase vectors `x`, one phase per prime. The crate evaluates them with
//! proven error radii, computes the argument functional `A` and the continuous
//! argument `φ`, counts winding numbers of the curves σ ↦ ζ_x(σ + it), bounds
//! the abscissa beyond which a given argument cannot be attained, and searches
//! for translation times `t` at which ζ_x(σ + it) follows ζ_{π/2}(σ).
//!
//! ```
//! use zeta_vortex::{primes, zeta::{self, ComplexPoint, PhaseVector, TruncationPlan}};
//!
//! let table = primes::sieve(100_000).unwrap();
//! let s = ComplexPoint::real(2.0).unwrap();
//! let plan = TruncationPlan::new(100_000, table.len(), 1.0).unwrap();
//! let v = zeta::dirichlet_eval(&PhaseVector::zero(), &s, &plan, &table).unwrap();
//! let exact = std::f64::consts::PI.powi(2) / 6.0;
//! assert!(v.contains(exact.into()));
//! ```

// `!(x > 0.0)` style guards reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod argument;
pub mod bounds;
pub mod cli;
pub mod config;
pub mod error;
pub mod frontier;
pub mod primes;
pub mod sum;
pub mod vortex;
pub mod zeta;

pub use error::{Error, Result};
