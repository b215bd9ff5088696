//! Quantum-defect model of an electron bound above a liquid-helium surface.
//!
//! The image charge induced in the helium produces a one-dimensional
//! Coulomb potential `-Ze²/x` for `x > 0` with a hard wall at the surface.
//! Adding a small inverse-square term turns the Balmer series into a
//! quantum-defect series `E = -ℰ₀/(n-δ)²`, which is still exactly solvable
//! with generalized Laguerre polynomials of real order.
//!
//! Modules:
//!
//! - [`specfun`]: Gamma, upper incomplete Gamma, Laguerre polynomials.
//! - [`model`]: physical scales, spectrum, wavefunctions, potential.
//! - [`matelem`]: closed-form expectation values and matrix elements.
//! - [`fit`]: recover `(ℰ₀, δ)` from measured transition frequencies.
//! - [`isospectral`]: a strictly isospectral partner Hamiltonian.
//! - [`oracle`]: finite-difference eigensolver and adaptive quadrature used
//!   to cross-check everything above.
//!
//! Internally, lengths are measured in `x₀` and energies in `4ℰ₀`
//! ("reduced units"). In these units the Hamiltonian is
//! `-d²/du² - 1/u + (δ²-δ)/u²` with eigenvalues `-1/(4n*²)`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;

mod error;
mod math;

pub mod fit;
pub mod isospectral;
pub mod matelem;
pub mod model;
pub mod oracle;
pub mod specfun;

pub use error::{Error, Result};
