//! Adaptive Gauss–Kronrod (7/15) quadrature of the region masses.
//!
//! The inner `y`-integral of `(x − y)^{-2}` is done exactly; the outer
//! `x`-integral is adaptive, with breakpoints at `1/sinh z` and `x_z` where the
//! upper limit switches between `W_z(x)` and the region clip.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Result};
use crate::hyperbolic::tangency_w;
use crate::regions::{ConeConstants, RegionContext};

use super::{IntegralEstimate, Method};

const MAX_INTERVALS: usize = 4000;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the odd Kronrod nodes (indices 1, 3, 5, 7).
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Piece {}

impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Piece {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Piece { a, b, value: kron * h, error: ((kron - gauss) * h).abs() }
}

/// Integrates `f` over consecutive `breaks` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, breaks: &[f64], tol: f64) -> IntegralEstimate {
    let mut heap: BinaryHeap<Piece> = breaks
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| gk15(&f, w[0], w[1]))
        .collect();
    let mut evals = 15 * heap.len();
    loop {
        let error: f64 = heap.iter().map(|p| p.error).sum();
        if error <= tol || heap.len() >= MAX_INTERVALS {
            break;
        }
        let worst = heap.pop().expect("nonempty while error > tol");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            break;
        }
        heap.push(gk15(&f, worst.a, mid));
        heap.push(gk15(&f, mid, worst.b));
        evals += 30;
    }
    let mut pieces = heap.into_vec();
    pieces.sort_by(|p, q| p.a.total_cmp(&q.a));
    IntegralEstimate {
        value: pieces.iter().map(|p| p.value).sum(),
        abs_error: pieces.iter().map(|p| p.error).sum(),
        n_evals: evals as u64,
        method: Method::Quadrature,
    }
}

/// Breakpoints for the positive half: `[0, 1/sinh z, x_z, x_max]`, kept when inside.
fn breakpoints(cc: &ConeConstants, z: f64, x_max: f64) -> Vec<f64> {
    let mut b = vec![0.0, x_max];
    let s = z.sinh();
    b.push(s.recip());
    if let Ok(xz) = cc.x_z(z) {
        b.push(xz);
    }
    b.retain(|v| v.is_finite() && *v >= 0.0 && *v <= x_max);
    b.sort_by(f64::total_cmp);
    b.dedup();
    b
}

/// Mass of the `ψ > 0` half of the region with depth at most `z`.
fn positive_half(cc: &ConeConstants, z: f64, ctx: RegionContext, tol: f64) -> Result<IntegralEstimate> {
    let x_max = match ctx {
        RegionContext::Omega => cc.a,
        RegionContext::OmegaStar => cc.j_extent(),
    };
    let clip = ctx.clip(cc);
    let inner = |x: f64| {
        let hi = tangency_w(z, x).unwrap_or(f64::NEG_INFINITY).min(clip);
        let lo = -1.0 / x;
        if x <= 0.0 || hi <= lo {
            return 0.0;
        }
        1.0 / (x - hi) - x / (1.0 + x * x)
    };
    Ok(integrate(inner, &breakpoints(cc, z, x_max), tol))
}

/// Mass of the `ψ < 0` half, integrated directly from the mirrored tangency
/// formula rather than by symmetry.
pub fn negative_half(cc: &ConeConstants, z: f64, ctx: RegionContext, tol: f64) -> Result<IntegralEstimate> {
    check(z, tol)?;
    let x_max = match ctx {
        RegionContext::Omega => cc.a,
        RegionContext::OmegaStar => cc.j_extent(),
    };
    let clip = -ctx.clip(cc);
    let inner = |u: f64| {
        // x = −u ∈ (−x_max, 0), y ∈ [max(−W_z(−x), clip), −1/x]
        let x = -u;
        let lo = tangency_w(z, x).unwrap_or(f64::INFINITY).max(clip);
        let hi = -1.0 / x;
        if u <= 0.0 || lo >= hi {
            return 0.0;
        }
        x / (1.0 + x * x) - 1.0 / (x - lo)
    };
    let mut breaks = breakpoints(cc, z, x_max);
    breaks.iter_mut().for_each(|b| *b = b.abs());
    Ok(integrate(inner, &breaks, tol))
}

fn check(z: f64, tol: f64) -> Result<()> {
    if !(z >= 0.0 && z.is_finite()) {
        return Err(domain("z", z));
    }
    if !(tol > 0.0) {
        return Err(domain("tol", tol));
    }
    Ok(())
}

fn doubled(half: IntegralEstimate) -> IntegralEstimate {
    IntegralEstimate {
        value: 2.0 * half.value,
        abs_error: 2.0 * half.abs_error,
        ..half
    }
}

/// Quadrature of `Λ(z)` to absolute tolerance `tol`.
pub fn quad_lambda(cc: &ConeConstants, z: f64, tol: f64) -> Result<IntegralEstimate> {
    check(z, tol)?;
    if z == 0.0 {
        return Ok(IntegralEstimate::exact_zero(Method::Quadrature));
    }
    Ok(doubled(positive_half(cc, z, RegionContext::Omega, 0.5 * tol)?))
}

/// Quadrature of `Λ*(z)` to absolute tolerance `tol`.
pub fn quad_lambda_star(cc: &ConeConstants, z: f64, tol: f64) -> Result<IntegralEstimate> {
    check(z, tol)?;
    if z == 0.0 {
        return Ok(IntegralEstimate::exact_zero(Method::Quadrature));
    }
    Ok(doubled(positive_half(cc, z, RegionContext::OmegaStar, 0.5 * tol)?))
}
