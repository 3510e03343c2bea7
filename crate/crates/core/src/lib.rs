//! Exact q-series computations for one-dimensional lattice vertex algebras.
//!
//! The crate is layered bottom-up:
//!
//! - [`exactpoly`]: exact Laurent polynomials in `q` (rational exponents)
//!   and `z` (integer exponents), plus the cyclic ring `Z[x]/(x^p - 1)`.
//! - [`qgauss`]: q-Pochhammer symbols, Gaussian binomials and the extended
//!   binomials `[n, m]^+` defined for negative tops.
//! - [`supernomial`]: q-supernomial coefficients, the tridiagonal `T_m`
//!   matrices and the site-vector to `L`-vector transform.
//! - [`fermionic`]: the quadratic form `A`, certified support boxes and
//!   fermionic lattice sums with extended binomial factors.
//! - [`verlinde`]: fusion-ring products and coinvariant dimensions.
//! - [`characters`]: character formulas with exact prefactor bookkeeping.
//! - [`verify`]: identity sweeps producing machine-readable reports.

pub mod characters;
pub mod error;
pub mod exactpoly;
pub mod fermionic;
pub mod qgauss;
pub mod supernomial;
pub mod verify;
pub mod verlinde;

pub use error::{Error, Result};
pub use exactpoly::{BiLaurent, CyclotomicVector, ExactRational, UniLaurent};
