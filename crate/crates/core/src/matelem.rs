//! Closed-form expectation values and matrix elements between the exact
//! quantum-defect eigenstates.
//!
//! Signs follow the wavefunction convention of [`crate::model::wavefunction`]
//! (positive next to the wall); only magnitudes are physical.

use alloc::vec::Vec;

use crate::math::{exp, ln, powf};
use crate::model::{DefectModel, StateSpec};
use crate::specfun::log_gamma;
use crate::{Error, Result};

/// Largest power accepted by [`moment`].
pub const MAX_POWER: u32 = 20;

/// `⟨bra*| x^power |ket*⟩` within one model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixElementSpec {
    pub bra_n: u32,
    pub ket_n: u32,
    pub power: u32,
    pub model: DefectModel,
}

impl MatrixElementSpec {
    pub fn new(bra_n: u32, ket_n: u32, power: u32, model: DefectModel) -> Result<Self> {
        if bra_n == 0 || ket_n == 0 {
            return Err(Error::ParameterDomain {
                what: "principal quantum numbers must be at least 1",
                value: 0.0,
            });
        }
        Ok(Self {
            bra_n,
            ket_n,
            power,
            model,
        })
    }
}

/// `⟨x⟩_{n*} = x₀ [3n² - δ(6n - 1 - 2δ)]`.
pub fn expectation_x(state: &StateSpec) -> f64 {
    let n = f64::from(state.n());
    let m = state.model();
    let d = m.delta();
    m.x0() * (3.0 * n * n - d * (6.0 * n - 1.0 - 2.0 * d))
}

/// `⟨1*| x |n*⟩` in closed form:
///
/// `(x₀ g^{4-2δ}/2) (n*/1*)^{2-δ} [Γ(n+1-2δ) Γ(n) / Γ(2-2δ)]^{1/2}
///   Σ_{k=0}^{n-1} (-g)^k/k! (k+3-2δ)(k+2-2δ)/(n-1-k)!`
///
/// with `g = 2·1*/(n* + 1*)`.
pub fn dipole_ground(ket_n: u32, model: &DefectModel) -> Result<f64> {
    if ket_n == 0 {
        return Err(Error::ParameterDomain {
            what: "principal quantum number must be at least 1",
            value: 0.0,
        });
    }
    let d = model.delta();
    let n = f64::from(ket_n);
    let one = model.n_star(1);
    let ns = model.n_star(ket_n);
    let g = 2.0 * one / (ns + one);

    let log_prefactor = ln(0.5 * model.x0())
        + (4.0 - 2.0 * d) * ln(g)
        + (2.0 - d) * ln(ns / one)
        + 0.5 * (log_gamma(n + 1.0 - 2.0 * d)? + log_gamma(n)? - log_gamma(2.0 - 2.0 * d)?);

    let mut sum = 0.0;
    for k in 0..ket_n {
        let kf = f64::from(k);
        let rest = f64::from(ket_n - 1 - k);
        let magnitude = kf * ln(g) - log_gamma(kf + 1.0)? - log_gamma(rest + 1.0)?
            + ln((kf + 3.0 - 2.0 * d) * (kf + 2.0 - 2.0 * d));
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * exp(magnitude + log_prefactor);
    }
    Ok(sum)
}

// ln|c_a| for the finite series L_{n-1}^{(α)}(z) = Σ_a c_a z^a,
// c_a = (-1)^a Γ(n+α) / (Γ(a+α+1) Γ(n-a) a!).
fn laguerre_log_coefficients(n: u32, alpha: f64) -> Result<Vec<f64>> {
    let nf = f64::from(n);
    let top = log_gamma(nf + alpha)?;
    (0..n)
        .map(|a| {
            let af = f64::from(a);
            Ok(top - log_gamma(af + alpha + 1.0)? - log_gamma(nf - af)? - log_gamma(af + 1.0)?)
        })
        .collect()
}

/// General moment `⟨j*| x^t |k*⟩` as a double sum of Gamma functions.
///
/// Both Laguerre factors are expanded in their finite series and every
/// product term integrates to `Γ(q)/β^q` against `e^{-βx}`,
/// `β = (j* + k*)/(2 j* k* x₀)`.
pub fn moment(spec: &MatrixElementSpec) -> Result<f64> {
    if spec.power > MAX_POWER {
        return Err(Error::ParameterDomain {
            what: "moment power above 20",
            value: f64::from(spec.power),
        });
    }
    let model = &spec.model;
    let (j, k) = if spec.bra_n <= spec.ket_n {
        (spec.bra_n, spec.ket_n)
    } else {
        (spec.ket_n, spec.bra_n)
    };
    let d = model.delta();
    let alpha = 1.0 - 2.0 * d;
    let p = 1.0 - d;
    let t = f64::from(spec.power);
    let js = model.n_star(j);
    let ks = model.n_star(k);
    // Reduced units (x₀ = 1); x₀^t restored at the end.
    let beta = 0.5 * (1.0 / js + 1.0 / ks);

    let log_norm = |n: u32, ns: f64| -> Result<f64> {
        let nf = f64::from(n);
        Ok(0.5 * (log_gamma(nf)? - log_gamma(nf + alpha)? - ln(2.0 * ns * ns)))
    };
    let log_nn = log_norm(j, js)? + log_norm(k, ks)?;
    let cj = laguerre_log_coefficients(j, alpha)?;
    let ck = laguerre_log_coefficients(k, alpha)?;

    // Neumaier-compensated sum; the alternating terms cancel strongly.
    let mut sum = 0.0;
    let mut comp = 0.0;
    for (a, la) in cj.iter().enumerate() {
        for (b, lb) in ck.iter().enumerate() {
            let q = t + 2.0 * p + (a + b) as f64 + 1.0;
            let log_term = log_nn + la + lb - (p + a as f64) * ln(js) - (p + b as f64) * ln(ks)
                + log_gamma(q)?
                - q * ln(beta);
            let sign = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
            let term = sign * exp(log_term);
            let next = sum + term;
            if crate::math::abs(sum) >= crate::math::abs(term) {
                comp += (sum - next) + term;
            } else {
                comp += (term - next) + sum;
            }
            sum = next;
        }
    }
    Ok((sum + comp) * powf(model.x0(), t))
}
