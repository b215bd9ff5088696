use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Degree and (real) order of a generalized Laguerre polynomial `L_n^{(α)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreParams {
    degree: u32,
    alpha: f64,
}

impl LaguerreParams {
    /// `alpha > -1` keeps the weight `x^α e^{-x}` integrable at the origin.
    pub fn new(degree: u32, alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(Error::ParameterDomain {
                what: "Laguerre order alpha must exceed -1",
                value: alpha,
            });
        }
        Ok(Self { degree, alpha })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Evaluates `L_n^{(α)}(x)` by the upward three-term recurrence
///
/// `(k+1) L_{k+1} = (2k+1+α-x) L_k - (k+α) L_{k-1}`, `L_0 = 1`, `L_1 = 1+α-x`.
pub fn laguerre(params: LaguerreParams, x: f64) -> f64 {
    let alpha = params.alpha;
    let n = params.degree;
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Largest `n + j` whose factorial is exact in both `f64` and the integer
/// coefficient arithmetic.
const MAX_CONNECTION_ORDER: u32 = 18;

/// Integer coefficient vectors (ascending powers of `x`) for both sides of
/// `L_{n+j}^j(x) = (-1)^j (n+j)! L_n^{(j)}(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionPolynomials {
    /// `d^j/dx^j [ (n+j)! L_{n+j}(x) ]`, the derivative-based associated form.
    pub associated: Vec<i128>,
    /// `(-1)^j (n+j)!` times the finite-series generalized form.
    pub generalized: Vec<i128>,
}

fn factorial(m: u32) -> i128 {
    (1..=i128::from(m)).product()
}

fn binomial(top: u32, bottom: u32) -> i128 {
    if bottom > top {
        return 0;
    }
    let bottom = bottom.min(top - bottom);
    let mut acc: i128 = 1;
    for i in 0..bottom {
        acc = acc * i128::from(top - i) / i128::from(i + 1);
    }
    acc
}

/// Builds both sides of the associated/generalized Laguerre connection in
/// exact integer arithmetic.
pub fn connection_coefficients(n: u32, j: u32) -> Result<ConnectionPolynomials> {
    let m = n
        .checked_add(j)
        .filter(|&m| m <= MAX_CONNECTION_ORDER)
        .ok_or(Error::ParameterDomain {
            what: "n + j exceeds the exact factorial range (18)",
            value: f64::from(n) + f64::from(j),
        })?;

    // m! L_m(x) = Σ_k C(m,k) m!/k! (-x)^k, all integer coefficients.
    let m_fact = factorial(m);
    let mut poly: Vec<i128> = (0..=m)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            sign * binomial(m, k) * (m_fact / factorial(k))
        })
        .collect();
    for _ in 0..j {
        poly = poly
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as i128)
            .collect();
    }
    let associated = poly;

    // (-1)^j (n+j)! Σ_k C(n+j, n-k) (-x)^k / k!
    let outer_sign: i128 = if j.is_multiple_of(2) { 1 } else { -1 };
    let mut generalized = vec![0i128; n as usize + 1];
    for (k, slot) in generalized.iter_mut().enumerate() {
        let k = k as u32;
        let sign: i128 = if k.is_multiple_of(2) { 1 } else { -1 };
        *slot = outer_sign * sign * binomial(m, n - k) * (m_fact / factorial(k));
    }

    Ok(ConnectionPolynomials {
        associated,
        generalized,
    })
}

fn horner(coeffs: &[i128], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
}

/// Evaluates `(lhs, rhs)` of `L_{n+j}^j(x) = (-1)^j (n+j)! L_n^{(j)}(x)`.
///
/// The left side comes from the exact associated-Laguerre coefficients, the
/// right side from the floating-point generalized evaluator.
pub fn laguerre_connection_check(n: u32, j: u32, x: f64) -> Result<(f64, f64)> {
    let polys = connection_coefficients(n, j)?;
    let lhs = horner(&polys.associated, x);
    let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    let rhs = sign * factorial(n + j) as f64 * laguerre(LaguerreParams::new(n, f64::from(j))?, x);
    Ok((lhs, rhs))
}
