//! Adaptive Gauss–Kronrod (7/15) quadrature with global subdivision.

use alloc::vec::Vec;

use crate::math::abs;
use crate::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_3,
    0.949_107_912_342_758_524_526_189_684_047_9,
    0.864_864_423_359_769_072_789_712_788_640_9,
    0.741_531_185_599_394_439_863_864_773_280_8,
    0.586_087_235_467_691_130_294_144_845_693_0,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_2,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_2,
    0.104_790_010_322_250_183_839_876_322_541_5,
    0.140_653_259_715_525_918_745_189_590_510_2,
    0.169_004_726_639_267_902_826_583_426_598_6,
    0.190_350_578_064_785_409_913_256_402_421_0,
    0.204_432_940_075_298_892_414_161_999_234_6,
    0.209_482_141_084_727_828_012_999_174_891_7,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_1,
    0.279_705_391_489_276_667_901_467_771_423_8,
    0.381_830_050_505_118_944_950_369_775_489_0,
    0.417_959_183_673_469_387_755_102_040_816_3,
];

const MAX_INTERVALS: usize = 4000;

#[derive(Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Piece {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = f(center - dx) + f(center + dx);
        kron += WGK[i] * pair;
        // Gauss nodes are the odd-indexed Kronrod nodes.
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Piece {
        a,
        b,
        value: kron * half,
        error: abs((kron - gauss) * half),
    }
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    let mut pieces: Vec<Piece> = Vec::with_capacity(64);
    pieces.push(kronrod(f, a, b));
    loop {
        let total: f64 = pieces.iter().map(|p| p.value).sum();
        let error: f64 = pieces.iter().map(|p| p.error).sum();
        if !total.is_finite() || !error.is_finite() {
            return Err(Error::Numeric("non-finite integrand"));
        }
        if error <= tol * abs(total).max(1.0) {
            return Ok((total, error));
        }
        if pieces.len() >= MAX_INTERVALS {
            return Err(Error::Numeric("quadrature interval limit reached"));
        }
        let (worst, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one piece");
        let p = pieces.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a && mid < p.b) {
            return Err(Error::Numeric("quadrature subdivision depth exhausted"));
        }
        pieces.push(kronrod(f, p.a, mid));
        pieces.push(kronrod(f, mid, p.b));
    }
}

/// `∫_a^b f`, with `b` possibly `+∞`.
///
/// Converges when the summed error estimate is below `tol · max(1, |I|)`,
/// i.e. `tol` acts as an absolute tolerance for small integrals and a
/// relative one for large ones. Integrable endpoint singularities of the
/// form `x^p`, `p > -1`, are handled by subdivision.
///
/// For `b = +∞` the half-line is marched in geometrically growing segments
/// until two consecutive segments contribute less than `tol/10` each; the
/// integrand must decay at least exponentially.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) || !a.is_finite() || b.is_nan() {
        return Err(Error::ParameterDomain {
            what: "integration needs finite a and positive tol",
            value: tol,
        });
    }
    if b == f64::INFINITY {
        return integrate_half_line(&f, a, tol);
    }
    if !b.is_finite() {
        return Err(Error::ParameterDomain {
            what: "upper limit must be finite or +inf",
            value: b,
        });
    }
    if a == b {
        return Ok(0.0);
    }
    adaptive(&f, a, b, tol).map(|(v, _)| v)
}

fn integrate_half_line<F: Fn(f64) -> f64>(f: &F, a: f64, tol: f64) -> Result<f64> {
    const MAX_SEGMENTS: usize = 60;
    let seg_tol = tol / 16.0;
    let mut total = 0.0;
    let mut lo = a;
    let mut width = 1.0;
    let mut quiet = 0;
    for _ in 0..MAX_SEGMENTS {
        let hi = lo + width;
        let (v, e) = adaptive(f, lo, hi, seg_tol)?;
        total += v;
        if abs(v) + e < tol / 10.0 {
            quiet += 1;
            if quiet >= 2 && hi - a >= 16.0 {
                return Ok(total);
            }
        } else {
            quiet = 0;
        }
        lo = hi;
        width *= 2.0;
    }
    Err(Error::Numeric("integrand does not decay on the half line"))
}
