//! Recovering `(ℰ₀, δ)` from measured transition frequencies.
//!
//! The exact defect formula `Δ = ℰ₀[1/(n_l-δ)² - 1/(n_u-δ)²]` is fitted,
//! never its small-δ expansion.

use alloc::format;
use alloc::vec::Vec;

use crate::math::{abs, sqrt};
use crate::{Error, Result};

/// Admissible range of δ for the two-line solve.
pub const TWO_POINT_BRACKET: (f64, f64) = (0.0, 0.5);
const MAX_ITERATIONS: usize = 200;
const STEP_TOLERANCE: f64 = 1e-10;
const DELTA_CEILING: f64 = 0.999;

/// One measured line `n_upper → n_lower`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub n_upper: u32,
    pub n_lower: u32,
    /// GHz
    pub frequency: f64,
    pub weight: f64,
}

impl Transition {
    pub fn new(n_upper: u32, n_lower: u32, frequency: f64) -> Self {
        Self::weighted(n_upper, n_lower, frequency, 1.0)
    }

    pub fn weighted(n_upper: u32, n_lower: u32, frequency: f64, weight: f64) -> Self {
        Self {
            n_upper,
            n_lower,
            frequency,
            weight,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_lower == 0 || self.n_upper <= self.n_lower {
            return Err(Error::Ordering {
                upper: self.n_upper,
                lower: self.n_lower,
            });
        }
        if !(self.frequency > 0.0) || !self.frequency.is_finite() {
            return Err(Error::Input(format!(
                "frequency must be positive, got {}",
                self.frequency
            )));
        }
        if !(self.weight > 0.0) || !self.weight.is_finite() {
            return Err(Error::Input(format!(
                "weight must be positive, got {}",
                self.weight
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionSet {
    records: Vec<Transition>,
}

impl TransitionSet {
    pub fn new(records: Vec<Transition>) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::Input("transition set is empty".into()));
        }
        for r in &records {
            r.validate()?;
        }
        Ok(Self { records })
    }

    pub fn records(&self) -> &[Transition] {
        &self.records
    }

    /// Lines with identical `(n_upper, n_lower)` collapsed into their
    /// weighted mean, carrying the summed weight. Order of first
    /// appearance is kept.
    pub fn merged(&self) -> Vec<Transition> {
        let mut out: Vec<Transition> = Vec::new();
        for r in &self.records {
            match out
                .iter_mut()
                .find(|m| m.n_upper == r.n_upper && m.n_lower == r.n_lower)
            {
                Some(m) => {
                    let w = m.weight + r.weight;
                    m.frequency = (m.frequency * m.weight + r.frequency * r.weight) / w;
                    m.weight = w;
                }
                None => out.push(*r),
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    /// GHz
    pub e0: f64,
    pub delta: f64,
    /// measured − predicted, one per input record (GHz).
    pub residuals: Vec<f64>,
    /// `ℰ₀[1/(1-δ)² - 1]`, the limit of the blue shift of the `n → 1`
    /// lines relative to Balmer.
    pub shift_infinity: f64,
    /// Bisection or Gauss–Newton steps taken.
    pub iterations: usize,
}

impl FitResult {
    fn assemble(data: &TransitionSet, e0: f64, delta: f64, iterations: usize) -> Self {
        let residuals = data
            .records
            .iter()
            .map(|r| r.frequency - predicted(r.n_upper, r.n_lower, e0, delta))
            .collect();
        Self {
            e0,
            delta,
            residuals,
            shift_infinity: shift(e0, delta),
            iterations,
        }
    }

    pub fn rms_residual(&self) -> f64 {
        let n = self.residuals.len() as f64;
        sqrt(self.residuals.iter().map(|r| r * r).sum::<f64>() / n)
    }
}

fn level_gap(n_upper: u32, n_lower: u32, delta: f64) -> f64 {
    let lo = f64::from(n_lower) - delta;
    let hi = f64::from(n_upper) - delta;
    1.0 / (lo * lo) - 1.0 / (hi * hi)
}

/// Exact transition frequency of the defect model.
pub fn predicted(n_upper: u32, n_lower: u32, e0: f64, delta: f64) -> f64 {
    e0 * level_gap(n_upper, n_lower, delta)
}

/// `(Δ, ∂Δ/∂ℰ₀, ∂Δ/∂δ)` for one line.
pub fn transition_partials(n_upper: u32, n_lower: u32, e0: f64, delta: f64) -> (f64, f64, f64) {
    let lo = f64::from(n_lower) - delta;
    let hi = f64::from(n_upper) - delta;
    let gap = 1.0 / (lo * lo) - 1.0 / (hi * hi);
    let d_delta = e0 * (2.0 / (lo * lo * lo) - 2.0 / (hi * hi * hi));
    (e0 * gap, gap, d_delta)
}

fn shift(e0: f64, delta: f64) -> f64 {
    let one = 1.0 - delta;
    e0 * (1.0 / (one * one) - 1.0)
}

pub fn asymptotic_shift(result: &FitResult) -> f64 {
    shift(result.e0, result.delta)
}

fn distinct_lines(data: &TransitionSet) -> Result<Vec<Transition>> {
    let merged = data.merged();
    if merged.len() < 2 {
        return Err(Error::FitDomain(
            "two parameters need at least two distinct transitions",
        ));
    }
    Ok(merged)
}

/// Solves `Δ(n_i; ℰ₀, δ) = f_i` exactly for two `n → 1` lines.
///
/// `ℰ₀` cancels in the ratio `f₁/f₂`, which leaves a single equation in δ
/// that is bisected on `[0, 0.5]`.
pub fn fit_two_point(data: &TransitionSet) -> Result<FitResult> {
    let recs = data.records();
    if recs.len() != 2 {
        return Err(Error::FitDomain("two-point fit needs exactly two lines"));
    }
    if recs[0].n_upper == recs[1].n_upper && recs[0].n_lower == recs[1].n_lower {
        return Err(Error::Input("duplicate transition in two-point fit".into()));
    }
    if recs.iter().any(|r| r.n_lower != 1) {
        return Err(Error::FitDomain(
            "two-point fit needs lines ending in n = 1",
        ));
    }
    let (a, b) = (recs[0], recs[1]);
    // h_a(δ) f_b - h_b(δ) f_a = 0
    let g = |delta: f64| {
        level_gap(a.n_upper, 1, delta) * b.frequency - level_gap(b.n_upper, 1, delta) * a.frequency
    };
    let (mut lo, mut hi) = TWO_POINT_BRACKET;
    let (g_lo, g_hi) = (g(lo), g(hi));
    let mut steps = 0;
    let delta = if g_lo == 0.0 {
        lo
    } else if g_hi == 0.0 {
        hi
    } else if (g_lo > 0.0) == (g_hi > 0.0) {
        return Err(Error::FitDomain(
            "no quantum defect in [0, 0.5] reproduces both lines",
        ));
    } else {
        let lo_positive = g_lo > 0.0;
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break 0.5 * (lo + hi);
            }
            steps += 1;
            let gm = g(mid);
            if gm == 0.0 {
                break mid;
            }
            if (gm > 0.0) == lo_positive {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    };
    let e0 = a.frequency / level_gap(a.n_upper, 1, delta);
    Ok(FitResult::assemble(data, e0, delta, steps))
}

fn weighted_cost(lines: &[Transition], e0: f64, delta: f64) -> f64 {
    lines
        .iter()
        .map(|l| {
            let r = l.frequency - predicted(l.n_upper, l.n_lower, e0, delta);
            l.weight * r * r
        })
        .sum()
}

/// Balmer (δ = 0) estimate of ℰ₀ by weighted linear least squares.
fn balmer_start(lines: &[Transition]) -> f64 {
    let (num, den) = lines.iter().fold((0.0, 0.0), |(num, den), l| {
        let b = level_gap(l.n_upper, l.n_lower, 0.0);
        (num + l.weight * l.frequency * b, den + l.weight * b * b)
    });
    num / den
}

/// Weighted nonlinear least squares by Gauss–Newton with analytic
/// partials, a backtracking line search and the bound `0 ≤ δ < 1` held by
/// an active set.
///
/// Parameters are scaled as `(ℰ₀/ℰ₀_start, δ)`; the iteration stops when
/// the accepted step is shorter than `1e-10` in that scaling.
pub fn fit_least_squares(data: &TransitionSet, init: Option<(f64, f64)>) -> Result<FitResult> {
    let lines = distinct_lines(data)?;
    let (mut e0, mut delta) = match init {
        Some((e0, delta)) => {
            if !(e0 > 0.0) || !(0.0..1.0).contains(&delta) {
                return Err(Error::ParameterDomain {
                    what: "initial guess needs e0 > 0 and 0 <= delta < 1",
                    value: delta,
                });
            }
            (e0, delta.min(DELTA_CEILING))
        }
        None => (balmer_start(&lines), 0.0),
    };
    let scale = e0;
    let mut cost = weighted_cost(&lines, e0, delta);

    for iteration in 1..=MAX_ITERATIONS {
        // Normal equations in the scaled parameters (u = ℰ₀/scale, δ).
        let (mut a11, mut a12, mut a22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for l in &lines {
            let (f, de0, dd) = transition_partials(l.n_upper, l.n_lower, e0, delta);
            let ju = de0 * scale;
            let r = l.frequency - f;
            a11 += l.weight * ju * ju;
            a12 += l.weight * ju * dd;
            a22 += l.weight * dd * dd;
            b1 += l.weight * ju * r;
            b2 += l.weight * dd * r;
        }
        let det = a11 * a22 - a12 * a12;
        let (mut du, mut dd) = if det > 1e-14 * a11 * a22 {
            ((a22 * b1 - a12 * b2) / det, (a11 * b2 - a12 * b1) / det)
        } else {
            (b1 / a11, 0.0)
        };
        let pinned_low = delta + dd < 0.0;
        let pinned_high = delta + dd > DELTA_CEILING;
        if pinned_low || pinned_high {
            // Move δ onto the bound, then refit ℰ₀ alone.
            dd = if pinned_low {
                -delta
            } else {
                DELTA_CEILING - delta
            };
            let mut b1p = 0.0;
            let mut a11p = 0.0;
            for l in &lines {
                let (f, de0, ddp) = transition_partials(l.n_upper, l.n_lower, e0, delta);
                let ju = de0 * scale;
                let r = l.frequency - f - ddp * dd;
                a11p += l.weight * ju * ju;
                b1p += l.weight * ju * r;
            }
            du = b1p / a11p;
        }

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let e_try = e0 + step * du * scale;
            let d_try = delta + step * dd;
            if e_try > 0.0 {
                let c = weighted_cost(&lines, e_try, d_try);
                if c <= cost {
                    accepted = Some((e_try, d_try, c));
                    break;
                }
            }
            step *= 0.5;
        }
        let step_norm = step * sqrt(du * du + dd * dd);
        match accepted {
            Some((e_new, d_new, c)) => {
                e0 = e_new;
                delta = d_new.clamp(0.0, DELTA_CEILING);
                cost = c;
            }
            // No decrease possible: already at the minimum to rounding.
            None => return Ok(FitResult::assemble(data, e0, delta, iteration)),
        }
        if step_norm < STEP_TOLERANCE || abs(cost) == 0.0 {
            return Ok(FitResult::assemble(data, e0, delta, iteration));
        }
    }
    Err(Error::Convergence {
        iterations: MAX_ITERATIONS,
        e0,
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn synthetic(e0: f64, delta: f64, uppers: &[u32]) -> TransitionSet {
        TransitionSet::new(
            uppers
                .iter()
                .map(|&n| Transition::new(n, 1, predicted(n, 1, e0, delta)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn two_point_round_trip() {
        let data = synthetic(158.4, 0.0237, &[2, 3]);
        let fit = fit_two_point(&data).unwrap();
        assert!((fit.e0 - 158.4).abs() < 1e-9);
        assert!((fit.delta - 0.0237).abs() < 1e-12);
        assert!(fit.residuals.iter().all(|r| r.abs() < 1e-9));
    }

    #[test]
    fn two_point_printed_lines() {
        // The lines rounded to 1 MHz still land on the published pair.
        let data = TransitionSet::new(vec![
            Transition::new(2, 1, 125.628),
            Transition::new(3, 1, 148.302),
        ])
        .unwrap();
        let fit = fit_two_point(&data).unwrap();
        assert!((fit.e0 - 158.4).abs() < 0.01, "{}", fit.e0);
        assert!((fit.delta - 0.0237).abs() < 1e-4, "{}", fit.delta);
        assert!(fit.residuals.iter().all(|r| r.abs() < 1e-9));
    }

    #[test]
    fn two_point_balmer() {
        let data = synthetic(159.123, 0.0, &[2, 3]);
        let fit = fit_two_point(&data).unwrap();
        assert!(fit.delta.abs() < 1e-6);
        assert!((fit.e0 - 159.123).abs() < 1e-3);
    }

    #[test]
    fn two_point_errors() {
        let one = TransitionSet::new(vec![Transition::new(2, 1, 125.0)]).unwrap();
        assert!(matches!(fit_two_point(&one), Err(Error::FitDomain(_))));
        assert!(matches!(
            fit_least_squares(&one, None),
            Err(Error::FitDomain(_))
        ));
        let dup = TransitionSet::new(vec![
            Transition::new(2, 1, 125.0),
            Transition::new(2, 1, 125.1),
        ])
        .unwrap();
        assert!(matches!(fit_two_point(&dup), Err(Error::Input(_))));
        // Ratio below the Balmer ratio would need δ < 0.
        let negative = TransitionSet::new(vec![
            Transition::new(2, 1, 119.0),
            Transition::new(3, 1, 142.0),
        ])
        .unwrap();
        assert!(matches!(fit_two_point(&negative), Err(Error::FitDomain(_))));
    }

    #[test]
    fn set_validation() {
        assert!(TransitionSet::new(vec![]).is_err());
        assert!(TransitionSet::new(vec![Transition::new(1, 2, 1.0)]).is_err());
        assert!(TransitionSet::new(vec![Transition::new(2, 1, -1.0)]).is_err());
        assert!(TransitionSet::new(vec![Transition::weighted(2, 1, 1.0, 0.0)]).is_err());
    }

    #[test]
    fn merging_averages_with_summed_weights() {
        let set = TransitionSet::new(vec![
            Transition::weighted(2, 1, 10.0, 1.0),
            Transition::new(3, 1, 20.0),
            Transition::weighted(2, 1, 13.0, 2.0),
        ])
        .unwrap();
        let m = set.merged();
        assert_eq!(m.len(), 2);
        assert_eq!(m[0].weight, 3.0);
        assert!((m[0].frequency - 12.0).abs() < 1e-15);
    }

    #[test]
    fn least_squares_round_trip() {
        let data = synthetic(158.4, 0.0237, &[2, 3, 4, 5, 6]);
        let fit = fit_least_squares(&data, None).unwrap();
        assert!(((fit.e0 - 158.4) / 158.4).abs() < 1e-6);
        assert!(((fit.delta - 0.0237) / 0.0237).abs() < 1e-6);
    }

    #[test]
    fn least_squares_with_noise() {
        let perturbation = [0.1, -0.1, 0.1, -0.1, 0.1];
        let records = (2..=6)
            .zip(perturbation)
            .map(|(n, p)| Transition::new(n, 1, predicted(n, 1, 158.4, 0.0237) + p))
            .collect();
        let fit = fit_least_squares(&TransitionSet::new(records).unwrap(), None).unwrap();
        assert!(fit.rms_residual() <= 0.12, "{}", fit.rms_residual());
    }

    #[test]
    fn least_squares_balmer_data() {
        let data = synthetic(159.123, 0.0, &[2, 3, 4]);
        let fit = fit_least_squares(&data, Some((150.0, 0.05))).unwrap();
        assert!(fit.delta.abs() < 1e-8);
        assert!((fit.e0 - 159.123).abs() < 1e-6);
    }

    #[test]
    fn least_squares_rejects_bad_start() {
        let data = synthetic(159.123, 0.0, &[2, 3]);
        assert!(fit_least_squares(&data, Some((-1.0, 0.0))).is_err());
        assert!(fit_least_squares(&data, Some((150.0, 1.0))).is_err());
    }

    #[test]
    fn shift_values() {
        let fit = fit_two_point(&synthetic(158.4, 0.0237, &[2, 3])).unwrap();
        assert!((asymptotic_shift(&fit) - 7.78).abs() < 0.1);
        assert!((fit.shift_infinity - asymptotic_shift(&fit)).abs() < 1e-15);
        assert!((shift(159.123, 0.0237) - 7.82).abs() < 5e-3);
        assert_eq!(shift(170.0, 0.0), 0.0);
    }
}
