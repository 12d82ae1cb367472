//! Exact-arithmetic engine for the spaces of weight-4 modular forms on
//! Gamma_0(24) and the representation numbers of two families of octonary
//! quadratic forms.
//!
//! Everything is computed over exact rationals; no floating-point value ever
//! enters a q-expansion. The crate is organized as follows:
//!
//! - [`arith`]: Kronecker symbols, real Dirichlet characters, divisor sums
//!   (plain and character-twisted), Bernoulli and generalized Bernoulli numbers
//! - [`series`]: truncated q-expansions over exact rationals ([`QSeries`])
//!   with ring operations, dilation `f(z) -> f(dz)` and character twists
//! - [`generators`]: the named generating functions — the theta function,
//!   the hexagonal-lattice theta function, eta quotients and Eisenstein series
//! - [`bases`]: explicit bases of the four spaces `M_4(Gamma_0(24), chi)`,
//!   with rank checking and the chi24 duplicate-entry remediation
//! - [`repcount`]: the quadratic-form catalog, brute-force lattice counting
//!   and the matching theta products
//! - [`solver`]: expressing each theta product in its basis, evaluating the
//!   resulting formulas and auditing the embedded coefficient tables
//! - [`engine`]: a facade that caches the four bases behind one handle
//!
//! The reference coefficient tables and the eta-quotient catalog live under
//! `data/` as plain structured text and are embedded at compile time.

pub mod arith;
pub mod bases;
pub mod engine;
pub mod error;
pub mod generators;
pub mod linalg;
pub mod rational;
pub mod repcount;
pub mod series;
pub mod solver;
pub mod tables;

pub use arith::DirichletCharacter;
pub use bases::{Basis, BasisElement, SpaceId};
pub use engine::Engine;
pub use error::Error;
pub use generators::EtaQuotientSpec;
pub use rational::Q;
pub use repcount::QuadraticForm;
pub use series::QSeries;
pub use solver::CoefficientVector;

/// Default working precision (number of q-expansion coefficients).
///
/// The identification bound for weight 4 on Gamma_0(24) is 16, so anything
/// past ~32 rows is already overdetermined; 200 leaves a wide margin for the
/// consistency checks.
pub const DEFAULT_PREC: usize = 200;
