//! An inequivalent Hamiltonian with exactly the quantum-defect spectrum.
//!
//! Working in reduced units (`x₀ = 1`, energies in `4ℰ₀`), the ground
//! state `φ(u) = t^{1-δ} e^{-t/2}`, `t = u/1*`, generates the added
//! potential
//!
//! `V₂ = (2/1*²) [((2-2δ)/t - 1) Y + Y²]`,
//! `Y = e^{-t} t^{2-2δ} / (Γ(3-2δ, t) - R)`,
//!
//! which equals `(2/1*²) dY/dt`. Excited states map through the one-sided
//! kernel `K(u, y) = (1/1*) φ(u) φ(y) / (Γ(3-2δ, t_u) - R)`; the ground
//! state becomes `ψ_{1*}/(Γ(3-2δ, t) - R)`.
//!
//! The family is regular when the denominator never vanishes, which,
//! since `Γ(3-2δ, t)` sweeps `(0, Γ(3-2δ)]`, means `R < 0` or
//! `R > Γ(3-2δ)`.

use alloc::vec::Vec;

use crate::math::{abs, exp, ln, sqrt};
use crate::model::{wavefunction, DefectModel, StateSpec};
use crate::oracle::{decay_extent, integrate};
use crate::specfun::{gamma_fn, gamma_upper};
use crate::{Error, Result};

/// Default constant `R`.
pub const DEFAULT_R: f64 = -2.0;
/// Closest approach of the denominator to zero that is still accepted.
pub const SINGULAR_THRESHOLD: f64 = 1e-12;
/// Absolute tolerance of the transformation integral.
pub const VOLTERRA_TOLERANCE: f64 = 1e-10;
/// The transformation integral is truncated where `ψ_{n*}` has decayed
/// by this factor.
const INTEGRAL_CUTOFF: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsospectralFamily {
    delta: f64,
    r_param: f64,
    gamma: f64,
    one_star: f64,
    full_gamma: f64,
    model: DefectModel,
}

impl IsospectralFamily {
    pub fn new(delta: f64, r_param: f64) -> Result<Self> {
        let model = DefectModel::reduced(delta)?;
        if !r_param.is_finite() {
            return Err(Error::ParameterDomain {
                what: "R must be finite",
                value: r_param,
            });
        }
        let full_gamma = gamma_fn(3.0 - 2.0 * delta)?;
        let min_denominator = if r_param < 0.0 {
            -r_param
        } else if r_param > full_gamma {
            r_param - full_gamma
        } else {
            0.0
        };
        if min_denominator < SINGULAR_THRESHOLD {
            return Err(Error::SingularFamily {
                r_param,
                min_denominator,
            });
        }
        Ok(Self {
            delta,
            r_param,
            gamma: full_gamma / (r_param - full_gamma),
            one_star: 1.0 - delta,
            full_gamma,
            model,
        })
    }

    /// Family from `γ` through `R = (γ+1) Γ(3-2δ)/γ`.
    pub fn from_gamma(delta: f64, gamma: f64) -> Result<Self> {
        if gamma == 0.0 || gamma == -1.0 || !gamma.is_finite() {
            return Err(Error::ParameterDomain {
                what: "gamma must be finite and differ from 0 and -1",
                value: gamma,
            });
        }
        let full_gamma = gamma_fn(3.0 - 2.0 * delta)?;
        Self::new(delta, (gamma + 1.0) * full_gamma / gamma)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn r_param(&self) -> f64 {
        self.r_param
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn one_star(&self) -> f64 {
        self.one_star
    }

    /// The reduced-unit model whose spectrum the family shares.
    pub fn model(&self) -> &DefectModel {
        &self.model
    }

    fn order(&self) -> f64 {
        3.0 - 2.0 * self.delta
    }

    fn check_u(u: f64) -> Result<()> {
        if u > 0.0 && u.is_finite() {
            Ok(())
        } else {
            Err(Error::ParameterDomain {
                what: "isospectral quantities need 0 < u < inf",
                value: u,
            })
        }
    }

    /// `Γ(3-2δ, t) - R` at `t = u/1*`.
    pub fn denominator(&self, u: f64) -> Result<f64> {
        let d = gamma_upper(self.order(), u / self.one_star)? - self.r_param;
        if abs(d) < SINGULAR_THRESHOLD {
            return Err(Error::SingularFamily {
                r_param: self.r_param,
                min_denominator: d,
            });
        }
        Ok(d)
    }

    // t^{1-δ} e^{-t/2}
    fn ground_shape(&self, u: f64) -> f64 {
        let t = u / self.one_star;
        exp((1.0 - self.delta) * ln(t) - 0.5 * t)
    }

    /// Added potential `V₂(u)` in units of `4ℰ₀`.
    pub fn v2(&self, u: f64) -> Result<f64> {
        Self::check_u(u)?;
        let t = u / self.one_star;
        let y = exp(-t + (2.0 - 2.0 * self.delta) * ln(t)) / self.denominator(u)?;
        let s2 = self.one_star * self.one_star;
        Ok(2.0 / s2 * (((2.0 - 2.0 * self.delta) / t - 1.0) * y + y * y))
    }

    /// Transformation kernel `K(u, y)`. Not symmetric: the denominator
    /// depends on `u` only.
    pub fn kernel(&self, u: f64, y: f64) -> Result<f64> {
        Self::check_u(u)?;
        Self::check_u(y)?;
        Ok(self.ground_shape(u) * self.ground_shape(y) / (self.one_star * self.denominator(u)?))
    }

    fn excited(&self, n: u32) -> Result<StateSpec> {
        if n < 2 {
            return Err(Error::ParameterDomain {
                what: "transformed excited states need n >= 2 (use chi_ground for n = 1)",
                value: f64::from(n),
            });
        }
        StateSpec::new(n, self.model)
    }

    fn integral_cutoff(&self, n: u32) -> Result<f64> {
        decay_extent(n, self.delta, INTEGRAL_CUTOFF)
    }

    /// `χ_{n*}(u) = ψ_{n*}(u) + ∫_0^u K(u, y) ψ_{n*}(y) dy` for `n ≥ 2`.
    pub fn chi(&self, n: u32, u: f64) -> Result<f64> {
        let state = self.excited(n)?;
        Self::check_u(u)?;
        let upper = u.min(self.integral_cutoff(n)?);
        let overlap = integrate(
            |y| {
                if y <= 0.0 {
                    0.0
                } else {
                    self.ground_shape(y) * wavefunction(&state, y).unwrap_or(0.0)
                }
            },
            0.0,
            upper,
            VOLTERRA_TOLERANCE,
        )?;
        let psi = wavefunction(&state, u)?;
        Ok(psi + self.ground_shape(u) * overlap / (self.one_star * self.denominator(u)?))
    }

    /// `χ_{n*}` at increasing positive `nodes`, accumulating the
    /// transformation integral interval by interval.
    pub fn chi_samples(&self, n: u32, nodes: &[f64]) -> Result<Vec<f64>> {
        let state = self.excited(n)?;
        let cutoff = self.integral_cutoff(n)?;
        let integrand = |y: f64| {
            if y <= 0.0 {
                0.0
            } else {
                self.ground_shape(y) * wavefunction(&state, y).unwrap_or(0.0)
            }
        };
        let tol = VOLTERRA_TOLERANCE / (nodes.len().max(1) as f64);
        let mut out = Vec::with_capacity(nodes.len());
        let mut overlap = 0.0;
        let mut last = 0.0;
        for &u in nodes {
            Self::check_u(u)?;
            if u < last {
                return Err(Error::Input("chi_samples needs increasing nodes".into()));
            }
            let upper = u.min(cutoff);
            if upper > last {
                overlap += integrate(integrand, last, upper, tol)?;
                last = upper;
            }
            let psi = wavefunction(&state, u)?;
            out.push(psi + self.ground_shape(u) * overlap / (self.one_star * self.denominator(u)?));
        }
        Ok(out)
    }

    /// Unnormalized transformed ground state `ψ_{1*}(u)/(Γ(3-2δ, t) - R)`.
    pub fn chi_ground(&self, u: f64) -> Result<f64> {
        Self::check_u(u)?;
        let ground = StateSpec::new(1, self.model)?;
        Ok(wavefunction(&ground, u)? / self.denominator(u)?)
    }

    /// Norm of [`Self::chi_ground`] by quadrature, with the nominal
    /// closed-form prefactor `-Γ(3-2δ)/γ^{1/2}` and norm `γ/(γ+1)` as
    /// metadata.
    pub fn ground_normalization(&self) -> Result<GroundNormalization> {
        let squared_norm = integrate(
            |u| {
                if u <= 0.0 {
                    0.0
                } else {
                    self.chi_ground(u).map(|v| v * v).unwrap_or(f64::NAN)
                }
            },
            0.0,
            f64::INFINITY,
            1e-13,
        )?;
        Ok(GroundNormalization {
            squared_norm,
            nominal_prefactor: (self.gamma > 0.0).then(|| -self.full_gamma / sqrt(self.gamma)),
            nominal_norm: self.gamma / (self.gamma + 1.0),
        })
    }

    /// Normalized transformed ground state at `nodes`.
    pub fn ground_samples(&self, nodes: &[f64]) -> Result<Vec<f64>> {
        let scale = 1.0 / sqrt(self.ground_normalization()?.squared_norm);
        nodes
            .iter()
            .map(|&u| self.chi_ground(u).map(|v| v * scale))
            .collect()
    }

    /// Checks the family against the properties wanted for a physical
    /// surface potential: (i) `+∞` at the origin at least as fast as
    /// `δ(1-δ)/u²`, (ii) negative further out, (iii) zero at infinity from
    /// below.
    pub fn validate(&self, grid: &ValidationGrid) -> Result<ValidationReport> {
        if !(grid.u_min > 0.0 && grid.u_max > grid.u_min && grid.points >= 2) {
            return Err(Error::ParameterDomain {
                what: "validation grid needs 0 < u_min < u_max and >= 2 points",
                value: grid.u_min,
            });
        }
        let ratio = ln(grid.u_max / grid.u_min) / (grid.points as f64 - 1.0);
        let mut d_min = f64::INFINITY;
        let mut d_max = f64::NEG_INFINITY;
        let mut values = Vec::with_capacity(grid.points);
        for i in 0..grid.points {
            let u = grid.u_min * exp(ratio * i as f64);
            let d = self.denominator(u)?;
            d_min = d_min.min(d);
            d_max = d_max.max(d);
            values.push((u, self.v2(u)?));
        }
        let origin_limit = values[0].1;
        let barrier = self.delta * (1.0 - self.delta) / (grid.u_min * grid.u_min);
        let (u_last, large_u_value) = values[grid.points - 1];
        // Last sign change marks the start of the asymptotic tail.
        let tail_start = values
            .windows(2)
            .rposition(|w| (w[0].1 < 0.0) != (w[1].1 < 0.0))
            .map_or(0, |i| i + 1);
        let tail = &values[tail_start..];
        let tail_negative = tail.iter().all(|&(_, v)| v < 0.0);
        let peak = tail
            .iter()
            .enumerate()
            .fold(
                (0, 0.0),
                |acc, (i, &(_, v))| if abs(v) > acc.1 { (i, abs(v)) } else { acc },
            )
            .0;
        let tail_monotone = tail[peak..].windows(2).all(|w| abs(w[1].1) <= abs(w[0].1));
        Ok(ValidationReport {
            denominator_sign_constant: (d_min > 0.0) == (d_max > 0.0),
            denominator_range: (d_min, d_max),
            origin_u: grid.u_min,
            origin_limit,
            fails_property_i: !(origin_limit >= barrier),
            negative_region: values.iter().any(|&(_, v)| v < 0.0),
            large_u: u_last,
            large_u_value,
            decays_to_zero: abs(large_u_value) < grid.decay_tolerance && tail_monotone,
            approaches_from_below: tail_negative && large_u_value < 0.0,
        })
    }
}

/// Result of [`IsospectralFamily::ground_normalization`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundNormalization {
    /// `∫ |chi_ground|² du`.
    pub squared_norm: f64,
    /// `-Γ(3-2δ)/γ^{1/2}`; `None` when `γ < 0` makes it non-real.
    pub nominal_prefactor: Option<f64>,
    /// `γ/(γ+1)`, reported as is (negative for `-Γ(3-2δ)/2 ... R < 0`).
    pub nominal_norm: f64,
}

/// Logarithmically spaced sample points for [`IsospectralFamily::validate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationGrid {
    pub u_min: f64,
    pub u_max: f64,
    pub points: usize,
    /// `|V₂(u_max)|` below this counts as decayed.
    pub decay_tolerance: f64,
}

impl Default for ValidationGrid {
    fn default() -> Self {
        Self {
            u_min: 1e-8,
            u_max: 400.0,
            points: 2000,
            decay_tolerance: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    pub denominator_sign_constant: bool,
    pub denominator_range: (f64, f64),
    pub origin_u: f64,
    /// `V₂` at the innermost sample.
    pub origin_limit: f64,
    /// `V₂` does not rise to `+∞` like `δ(1-δ)/u²` at the origin.
    pub fails_property_i: bool,
    pub negative_region: bool,
    pub large_u: f64,
    pub large_u_value: f64,
    pub decays_to_zero: bool,
    pub approaches_from_below: bool,
}
