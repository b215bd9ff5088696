//! Independent numerical oracle for the analytic results: a
//! finite-difference bound-state solver for the reduced Hamiltonian
//!
//! `H = -d²/du² + (δ²-δ)/u² - 1/u + W(u)`
//!
//! (optional extra potential `W`) and a general adaptive quadrature.

mod quadrature;
mod tridiag;

use alloc::vec::Vec;

pub use quadrature::integrate;
pub use tridiag::SymTridiagonal;

use crate::math::{abs, ln, powf, sqrt};

use crate::{Error, Result};

/// Extra potential added to the reduced Hamiltonian, in units of `4ℰ₀`.
pub type ExtraPotential<'a> = Option<&'a dyn Fn(f64) -> f64>;

/// Nodes used by the standard grid.
pub const STANDARD_POINTS: usize = 40_000;
/// Minimum resolution accepted by the solver.
pub const MIN_POINTS: usize = 1000;
/// Largest relative change between the two meshes of the Richardson pair
/// before the grid is declared too coarse.
const RICHARDSON_LIMIT: f64 = 1e-2;
/// Required decay of the outermost wavefunction at `u_max`, relative to
/// its peak.
const TAIL_RATIO: f64 = 1e-12;

/// Uniform interior nodes `u_min, u_min + h, ..., u_max`. The Dirichlet
/// walls sit one step outside on either side, at `u_min - h` and
/// `u_max + h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    u_min: f64,
    u_max: f64,
    points: usize,
}

impl GridSpec {
    pub fn new(u_min: f64, u_max: f64, points: usize) -> Result<Self> {
        if points < MIN_POINTS {
            return Err(Error::ParameterDomain {
                what: "grid needs at least 1000 points",
                value: points as f64,
            });
        }
        if !(u_min > 0.0 && u_max > u_min && u_max.is_finite()) {
            return Err(Error::ParameterDomain {
                what: "grid needs 0 < u_min < u_max",
                value: u_min,
            });
        }
        let grid = Self {
            u_min,
            u_max,
            points,
        };
        if grid.left_wall() < -1e-12 * grid.step() {
            return Err(Error::ParameterDomain {
                what: "left wall u_min - h must not be negative",
                value: grid.left_wall(),
            });
        }
        Ok(grid)
    }

    /// Grid whose left wall is the origin: `length` is split into
    /// `points + 1` equal steps.
    pub fn from_origin(length: f64, points: usize) -> Result<Self> {
        let h = length / (points as f64 + 1.0);
        Self::new(h, length - h, points)
    }

    /// The standard grid for states up to `n_max`: 40000 nodes from the
    /// origin out to `u_max ≥ 8 n_max²`, extended until the envelope
    /// `z^n e^{-z/2}` of the outermost state has decayed by `1e-12`.
    pub fn standard(n_max: u32, delta: f64) -> Result<Self> {
        Self::from_origin(standard_extent(n_max, delta)?, STANDARD_POINTS)
    }

    pub fn u_min(&self) -> f64 {
        self.u_min
    }

    pub fn u_max(&self) -> f64 {
        self.u_max
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn step(&self) -> f64 {
        (self.u_max - self.u_min) / (self.points as f64 - 1.0)
    }

    fn left_wall(&self) -> f64 {
        self.u_min - self.step()
    }

    fn right_wall(&self) -> f64 {
        self.u_max + self.step()
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.points)
            .map(|i| self.u_min + h * i as f64)
            .collect()
    }

    /// Same walls, twice the step (rounded to a whole number of intervals).
    fn coarsened(&self) -> Result<Self> {
        let a = self.left_wall();
        let b = self.right_wall();
        let intervals = self.points.div_ceil(2);
        let h = (b - a) / intervals as f64;
        Ok(Self {
            u_min: a + h,
            u_max: b - h,
            points: intervals - 1,
        })
    }
}

fn standard_extent(n_max: u32, delta: f64) -> Result<f64> {
    decay_extent(n_max, delta, TAIL_RATIO)
}

/// Distance beyond which the envelope `z^n e^{-z/2}` of state `n` stays
/// below `ratio` times its peak, but never less than `8 n²`.
pub(crate) fn decay_extent(n_max: u32, delta: f64, ratio: f64) -> Result<f64> {
    check_delta(delta)?;
    if n_max == 0 {
        return Err(Error::ParameterDomain {
            what: "n_max must be at least 1",
            value: 0.0,
        });
    }
    let n = f64::from(n_max);
    let n_star = n - delta;
    let log_peak = n * ln(2.0 * n) - n;
    let mut z = 2.0 * n;
    while n * ln(z) - 0.5 * z - log_peak > ln(ratio) {
        z += 0.25;
    }
    Ok((8.0 * n * n).max(z * n_star))
}

fn check_delta(delta: f64) -> Result<()> {
    if (0.0..1.0).contains(&delta) {
        Ok(())
    } else {
        Err(Error::ParameterDomain {
            what: "quantum defect must lie in [0, 1)",
            value: delta,
        })
    }
}

// (1+s)^p + (1-s)^p - 2, accurate for small s.
fn even_power_defect(p: f64, s: f64) -> f64 {
    if s < 0.25 {
        let mut coeff = 1.0;
        let mut sum = 0.0;
        let mut s_pow = 1.0;
        for k in 1..=40 {
            coeff *= (p - f64::from(k) + 1.0) / f64::from(k);
            s_pow *= s;
            if k % 2 == 0 {
                let term = 2.0 * coeff * s_pow;
                sum += term;
                if abs(term) < 1e-18 * abs(sum) {
                    break;
                }
            }
        }
        sum
    } else {
        let left = if s >= 1.0 { 0.0 } else { powf(1.0 - s, p) };
        powf(1.0 + s, p) + left - 2.0
    }
}

/// Inverse-square coefficient used at node `u` for step `h`.
///
/// The regular solution near the wall is `w = u^p (1 - u/(2p) + ...)`,
/// `p = 1-δ`. For `u < p` the coefficient is chosen so that the three-point
/// operator reproduces the continuum `H w` exactly on the first two terms;
/// further out it is matched on `u^p` alone. Both tend to `(δ²-δ)/u²` as
/// `h/u → 0`; the matching keeps the scheme second order despite the
/// singular derivatives of `u^{1-δ}` at the wall.
fn matched_barrier(delta: f64, u: f64, h: f64) -> f64 {
    if delta == 0.0 {
        return 0.0;
    }
    let p = 1.0 - delta;
    let s = h / u;
    let lead = even_power_defect(p, s) / (s * s * u * u);
    if u >= p {
        return lead;
    }
    // H w = u^p/(2p) for the two-term w.
    let next = even_power_defect(p + 1.0, s) / (2.0 * p * s * s * u);
    let shape = 1.0 - u / (2.0 * p);
    (1.0 / (2.0 * p) + lead - next + shape / u) / shape
}

/// Three-point discretization of the reduced Hamiltonian on `grid`, with
/// Dirichlet walls one step outside the first and last node. The
/// inverse-square term is matched to the local solution at the wall, see
/// [`matched_barrier`].
pub fn hamiltonian(
    grid: &GridSpec,
    delta: f64,
    extra: ExtraPotential<'_>,
) -> Result<SymTridiagonal> {
    check_delta(delta)?;
    let h = grid.step();
    let inv_h2 = 1.0 / (h * h);
    let mut diag = Vec::with_capacity(grid.points);
    for u in grid.nodes() {
        let w = extra.map_or(0.0, |f| f(u));
        let d = 2.0 * inv_h2 + matched_barrier(delta, u, h) - 1.0 / u + w;
        if !d.is_finite() {
            return Err(Error::Numeric("non-finite potential on the grid"));
        }
        diag.push(d);
    }
    let off = alloc::vec![-inv_h2; grid.points - 1];
    SymTridiagonal::new(diag, off)
}

/// One numerically determined bound state.
#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Richardson-extrapolated eigenvalue (units of `4ℰ₀`).
    pub eigenvalue: f64,
    /// Eigenvalue of the fine mesh alone.
    pub mesh_eigenvalue: f64,
    /// Eigenvector on the grid nodes, normalized to `Σ v² h = 1` and
    /// positive next to the left wall.
    pub samples: Vec<f64>,
    /// `‖(H - λ)v‖ / ‖v‖` on the fine mesh.
    pub residual: f64,
}

fn lowest_eigenvalues(t: &SymTridiagonal, count: usize) -> Result<Vec<f64>> {
    if t.count_below(0.0) < count {
        return Err(Error::Numeric(
            "fewer bound states on the grid than requested",
        ));
    }
    let (lo, _) = t.gershgorin();
    Ok((0..count).map(|k| t.eigenvalue_in(k, lo, 0.0)).collect())
}

/// Lowest `count` bound states of the reduced Hamiltonian on `grid`.
///
/// Eigenvalues come from Sturm bisection on the grid and on a mesh with
/// twice the step; the pair is Richardson-extrapolated assuming
/// second-order convergence. Eigenvectors are from inverse iteration on
/// the fine mesh.
pub fn solve_bound_states(
    grid: &GridSpec,
    delta: f64,
    extra: ExtraPotential<'_>,
    count: usize,
) -> Result<Vec<EigenResult>> {
    if count == 0 {
        return Err(Error::ParameterDomain {
            what: "count must be at least 1",
            value: 0.0,
        });
    }
    let needed = 8.0 * (count as f64) * (count as f64);
    if grid.right_wall() < needed {
        return Err(Error::ParameterDomain {
            what: "grid extent must reach 8 n_max²",
            value: grid.u_max,
        });
    }
    let fine = hamiltonian(grid, delta, extra)?;
    let coarse_grid = grid.coarsened()?;
    let coarse = hamiltonian(&coarse_grid, delta, extra)?;
    let fine_values = lowest_eigenvalues(&fine, count)?;
    let coarse_values = lowest_eigenvalues(&coarse, count)?;

    let ratio = coarse_grid.step() / grid.step();
    let r2 = ratio * ratio;
    let h = grid.step();

    let mut states = Vec::with_capacity(count);
    for (&ef, &ec) in fine_values.iter().zip(&coarse_values) {
        let extrapolated = (r2 * ef - ec) / (r2 - 1.0);
        let change = abs(ef - ec) / abs(extrapolated);
        if change > RICHARDSON_LIMIT {
            return Err(Error::Accuracy {
                relative_change: change,
            });
        }
        let mut v = fine.eigenvector(ef)?;
        let residual = residual_norm(&fine, &v, ef);
        let peak = v.iter().fold(0.0f64, |m, x| m.max(abs(*x)));
        let first = v
            .iter()
            .find(|x| abs(**x) > 1e-6 * peak)
            .copied()
            .unwrap_or(1.0);
        let scale = first.signum() / sqrt(h);
        v.iter_mut().for_each(|x| *x *= scale);
        states.push(EigenResult {
            eigenvalue: extrapolated,
            mesh_eigenvalue: ef,
            samples: v,
            residual,
        });
    }
    Ok(states)
}

fn residual_norm(t: &SymTridiagonal, v: &[f64], lambda: f64) -> f64 {
    let tv = t.matvec(v);
    let num: f64 = tv
        .iter()
        .zip(v)
        .map(|(a, b)| (a - lambda * b) * (a - lambda * b))
        .sum();
    let den: f64 = v.iter().map(|x| x * x).sum();
    sqrt(num / den)
}

/// Rayleigh quotient `⟨φ|H|φ⟩/⟨φ|φ⟩` and relative residual
/// `‖(H - q)φ‖/‖φ‖` of sampled values under the same discretization as
/// [`solve_bound_states`].
pub fn rayleigh_residual(
    grid: &GridSpec,
    delta: f64,
    extra: ExtraPotential<'_>,
    samples: &[f64],
) -> Result<(f64, f64)> {
    if samples.len() != grid.points {
        return Err(Error::Input("sample count does not match the grid".into()));
    }
    let norm2: f64 = samples.iter().map(|x| x * x).sum();
    if !(norm2 > 0.0) || !norm2.is_finite() {
        return Err(Error::Input("samples have zero or non-finite norm".into()));
    }
    let t = hamiltonian(grid, delta, extra)?;
    let hv = t.matvec(samples);
    let quotient = hv.iter().zip(samples).map(|(a, b)| a * b).sum::<f64>() / norm2;
    Ok((quotient, residual_norm(&t, samples, quotient)))
}
