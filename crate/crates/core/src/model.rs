//! Physical scales, the quantum-defect spectrum and the exact
//! wavefunctions.
//!
//! Lengths are in the same unit as [`DefectModel::x0`] and energies in the
//! unit of [`DefectModel::e0`] (GHz for physical models).
//! [`DefectModel::reduced`] gives the reduced-unit model with `x₀ = 1` and
//! `ℰ₀ = 1/4`, so that energies come out in units of `4ℰ₀`.

use crate::math::{exp, ln, powi, sqrt};
use crate::specfun::{laguerre, log_gamma, LaguerreParams};
use crate::{Error, Result};

/// Reference constants (CODATA 2022).
pub mod constants {
    /// Rydberg energy `R_∞` in eV.
    pub const RYDBERG_EV: f64 = 13.605_693_122_990;
    /// Bohr radius `a₀` in Å.
    pub const BOHR_RADIUS_ANGSTROM: f64 = 0.529_177_210_544;
    /// `1 meV / h` in GHz.
    pub const GHZ_PER_MEV: f64 = 241.798_924_2;
    /// Dielectric constant of liquid helium.
    pub const HELIUM_EPSILON: f64 = 1.05723;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalSetup {
    epsilon: f64,
    rydberg_inf_ev: f64,
    bohr_radius_angstrom: f64,
    ghz_per_mev: f64,
}

impl PhysicalSetup {
    /// Setup with the default reference constants.
    pub fn new(epsilon: f64) -> Result<Self> {
        Self::with_constants(
            epsilon,
            constants::RYDBERG_EV,
            constants::BOHR_RADIUS_ANGSTROM,
            constants::GHZ_PER_MEV,
        )
    }

    pub fn helium() -> Self {
        Self::new(constants::HELIUM_EPSILON).expect("helium binds")
    }

    pub fn with_constants(
        epsilon: f64,
        rydberg_inf_ev: f64,
        bohr_radius_angstrom: f64,
        ghz_per_mev: f64,
    ) -> Result<Self> {
        if !(epsilon > 1.0) || !epsilon.is_finite() {
            return Err(Error::NoBinding { epsilon });
        }
        for (what, value) in [
            ("Rydberg energy must be positive", rydberg_inf_ev),
            ("Bohr radius must be positive", bohr_radius_angstrom),
            ("GHz per meV must be positive", ghz_per_mev),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::ParameterDomain { what, value });
            }
        }
        Ok(Self {
            epsilon,
            rydberg_inf_ev,
            bohr_radius_angstrom,
            ghz_per_mev,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn rydberg_inf_ev(&self) -> f64 {
        self.rydberg_inf_ev
    }

    pub fn bohr_radius_angstrom(&self) -> f64 {
        self.bohr_radius_angstrom
    }

    pub fn ghz_per_mev(&self) -> f64 {
        self.ghz_per_mev
    }
}

/// Image-charge coupling `Z = (ε-1)/(4(ε+1))`.
pub fn coupling_from_epsilon(setup: &PhysicalSetup) -> f64 {
    let e = setup.epsilon;
    (e - 1.0) / (4.0 * (e + 1.0))
}

/// Energy and length scales of the image-charge atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scales {
    pub coupling: f64,
    /// `ℰ₀ = Z² R_∞` in meV.
    pub e0_mev: f64,
    /// `ℰ₀` in GHz.
    pub e0_ghz: f64,
    /// `b₀ = a₀/Z` in Å.
    pub b0_angstrom: f64,
    /// `x₀ = b₀/2` in Å.
    pub x0_angstrom: f64,
}

impl Scales {
    /// Pure Coulomb (δ = 0) model in GHz and Å.
    pub fn model(&self) -> DefectModel {
        DefectModel {
            e0: self.e0_ghz,
            delta: 0.0,
            x0: self.x0_angstrom,
        }
    }
}

pub fn derive_scales(setup: &PhysicalSetup) -> Scales {
    scales_for_coupling(setup, coupling_from_epsilon(setup))
}

/// Scales for an explicit coupling, using the reference constants of
/// `setup`. `Z = 1` returns the hydrogen values `R_∞` and `a₀`.
pub fn scales_for_coupling(setup: &PhysicalSetup, z: f64) -> Scales {
    let e0_mev = z * z * setup.rydberg_inf_ev * 1e3;
    let b0 = setup.bohr_radius_angstrom / z;
    Scales {
        coupling: z,
        e0_mev,
        e0_ghz: e0_mev * setup.ghz_per_mev,
        b0_angstrom: b0,
        x0_angstrom: 0.5 * b0,
    }
}

/// The quantum-defect Hamiltonian: Rydberg scale `ℰ₀`, defect `δ` and
/// length scale `x₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefectModel {
    e0: f64,
    delta: f64,
    x0: f64,
}

impl DefectModel {
    pub fn new(e0: f64, delta: f64, x0: f64) -> Result<Self> {
        if !(e0 > 0.0) || !e0.is_finite() {
            return Err(Error::ParameterDomain {
                what: "Rydberg scale e0 must be positive",
                value: e0,
            });
        }
        if !(0.0..1.0).contains(&delta) {
            return Err(Error::ParameterDomain {
                what: "quantum defect must lie in [0, 1)",
                value: delta,
            });
        }
        if !(x0 > 0.0) || !x0.is_finite() {
            return Err(Error::ParameterDomain {
                what: "length scale x0 must be positive",
                value: x0,
            });
        }
        Ok(Self { e0, delta, x0 })
    }

    /// `x₀ = 1`, energies in units of `4ℰ₀`.
    pub fn reduced(delta: f64) -> Result<Self> {
        Self::new(0.25, delta, 1.0)
    }

    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        Self::new(self.e0, delta, self.x0)
    }

    pub fn e0(&self) -> f64 {
        self.e0
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    /// `n* = n - δ`.
    pub fn n_star(&self, n: u32) -> f64 {
        f64::from(n) - self.delta
    }

    /// `E_{n*} = -ℰ₀/(n-δ)²`.
    pub fn level(&self, n: u32) -> f64 {
        let ns = self.n_star(n);
        -self.e0 / (ns * ns)
    }

    /// `|E_{lower*}| - |E_{upper*}|`.
    pub fn transition_frequency(&self, upper: u32, lower: u32) -> Result<f64> {
        if lower == 0 || upper <= lower {
            return Err(Error::Ordering { upper, lower });
        }
        Ok(self.level(upper) - self.level(lower))
    }
}

/// Principal quantum number `n ≥ 1` within a model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateSpec {
    n: u32,
    model: DefectModel,
}

impl StateSpec {
    pub fn new(n: u32, model: DefectModel) -> Result<Self> {
        if n == 0 {
            return Err(Error::ParameterDomain {
                what: "principal quantum number must be at least 1",
                value: 0.0,
            });
        }
        Ok(Self { n, model })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn model(&self) -> &DefectModel {
        &self.model
    }

    pub fn n_star(&self) -> f64 {
        self.model.n_star(self.n)
    }

    /// `N_{n*} = [Γ(n) / (2 n*² x₀ Γ(n+1-2δ))]^{1/2}`, via log-Gamma.
    pub fn normalization(&self) -> f64 {
        let n = f64::from(self.n);
        let d = self.model.delta;
        let ns = self.n_star();
        let log_ratio = log_gamma(n).unwrap_or(0.0) - log_gamma(n + 1.0 - 2.0 * d).unwrap_or(0.0);
        sqrt(exp(log_ratio) / (2.0 * ns * ns * self.model.x0))
    }
}

pub fn energy(state: &StateSpec) -> f64 {
    state.model.level(state.n)
}

/// Transition frequency between two states of the same model.
pub fn transition(state_hi: &StateSpec, state_lo: &StateSpec) -> Result<f64> {
    if state_hi.model != state_lo.model {
        return Err(Error::Input("transition between different models".into()));
    }
    state_hi.model.transition_frequency(state_hi.n, state_lo.n)
}

/// Terms of the small-δ expansion of the `n → 1` transition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefectExpansion {
    /// `ℰ₀(1 - 1/n²)`
    pub balmer: f64,
    /// `2δℰ₀(1 - 1/n³)`
    pub first_order: f64,
    /// `3δ²ℰ₀(1 - 1/n⁴)`
    pub second_order: f64,
}

impl DefectExpansion {
    pub fn sum(&self) -> f64 {
        self.balmer + self.first_order + self.second_order
    }
}

pub fn defect_expansion(n: u32, model: &DefectModel) -> Result<DefectExpansion> {
    if n < 2 {
        return Err(Error::ParameterDomain {
            what: "expansion needs n >= 2",
            value: f64::from(n),
        });
    }
    if model.delta >= 0.5 {
        return Err(Error::ParameterDomain {
            what: "expansion needs delta < 0.5",
            value: model.delta,
        });
    }
    let nf = f64::from(n);
    let (e0, d) = (model.e0, model.delta);
    Ok(DefectExpansion {
        balmer: e0 * (1.0 - 1.0 / powi(nf, 2)),
        first_order: 2.0 * d * e0 * (1.0 - 1.0 / powi(nf, 3)),
        second_order: 3.0 * d * d * e0 * (1.0 - 1.0 / powi(nf, 4)),
    })
}

/// `ψ_{n*}(x) = N_{n*} z^{1-δ} e^{-z/2} L_{n-1}^{(1-2δ)}(z)`, `z = x/(n* x₀)`.
pub fn wavefunction(state: &StateSpec, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::ParameterDomain {
            what: "wavefunction vanishes behind the wall (x < 0)",
            value: x,
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let d = state.model.delta;
    let z = x / (state.n_star() * state.model.x0);
    let envelope = exp((1.0 - d) * ln(z) - 0.5 * z);
    let poly = laguerre(LaguerreParams::new(state.n - 1, 1.0 - 2.0 * d)?, z);
    Ok(state.normalization() * envelope * poly)
}

/// Reduced potential `-1/u + (δ²-δ)/u²` in units of `4ℰ₀`.
pub fn reduced_potential(delta: f64, u: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(Error::ParameterDomain {
            what: "potential is an infinite wall for x <= 0",
            value: u,
        });
    }
    Ok(-1.0 / u + (delta * delta - delta) / (u * u))
}

/// Defect potential at `x`, in the energy unit of the model.
pub fn potential(model: &DefectModel, x: f64) -> Result<f64> {
    Ok(4.0 * model.e0 * reduced_potential(model.delta, x / model.x0)?)
}
