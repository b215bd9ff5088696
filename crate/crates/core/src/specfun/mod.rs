//! Special functions: Gamma, upper incomplete Gamma and generalized
//! Laguerre polynomials of real order.

mod gamma;
mod laguerre;

pub use gamma::{gamma_fn, gamma_upper, log_gamma};
pub use laguerre::{
    connection_coefficients, laguerre, laguerre_connection_check, ConnectionPolynomials,
    LaguerreParams,
};
