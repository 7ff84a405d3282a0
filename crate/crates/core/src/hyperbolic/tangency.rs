//! Endpoints of geodesics tangent to the disc of radius ρ about `i`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{domain, Result};

/// Bisection steps for the oracle; the bracket has length π/2 so 64 halvings
/// reach the float spacing of θ.
const ORACLE_STEPS: usize = 64;

/// Backward endpoint `w` such that the geodesic from `x` to `w` is tangent to
/// the disc of radius `rho` about `i`.
///
/// For `x ≥ 0` the result lies in `[−1/x, x)`, for `x < 0` it is the mirror
/// image `−W(−x)`. `rho = 0` gives `−1/x`, the geodesic through `i`, which is
/// undefined at `x = 0`.
pub fn tangency_w(rho: f64, x: f64) -> Result<f64> {
    if !(rho >= 0.0) {
        return Err(domain("rho", rho));
    }
    if !x.is_finite() {
        return Err(domain("x", x));
    }
    if x < 0.0 {
        return tangency_w(rho, -x).map(|w| -w);
    }
    if rho == 0.0 {
        if x == 0.0 {
            return Err(domain("x (with rho = 0)", x));
        }
        return Ok(-1.0 / x);
    }
    let s = rho.sinh();
    Ok((x * s - 1.0) / (x + s))
}

/// `sinh D(x, tan θ)` written without the tangent so that `θ = −π/2` is fine.
fn sinh_depth_angle(x: f64, theta: f64) -> f64 {
    let (sn, cs) = theta.sin_cos();
    (cs + x * sn).abs() / (x * cs - sn).abs()
}

/// Independent solver for [`tangency_w`] on `x ≥ 0`, `rho > 0`.
///
/// Writes `y = tan θ` with `θ ∈ [atan x − π/2, atan x)`, where the depth of
/// the geodesic `(x, y)` rises monotonically from 0 to ∞, and bisects.
pub fn tangency_oracle(x: f64, rho: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(domain("x", x));
    }
    if !(rho > 0.0) {
        return Err(domain("rho", rho));
    }
    let target = rho.sinh();
    let mut lo = x.atan() - FRAC_PI_2;
    let mut hi = x.atan();
    for _ in 0..ORACLE_STEPS {
        let mid = 0.5 * (lo + hi);
        if sinh_depth_angle(x, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi)).tan())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::depth_finite;
    use proptest::prelude::*;

    const TOL: f64 = 1e-9;

    #[test]
    fn w_at_zero() {
        for rho in [0.1, 1.0, 2.5] {
            assert!((tangency_w(rho, 0.0).unwrap() + 1.0 / rho.sinh()).abs() < 1e-15);
        }
        assert!(tangency_w(0.0, 0.0).is_err());
        assert_eq!(tangency_w(0.0, 2.0).unwrap(), -0.5);
        assert!(tangency_w(-0.1, 1.0).is_err());
    }

    #[test]
    fn w_hits_sector_corners() {
        for k in 3..=12u32 {
            let t = std::f64::consts::PI / k as f64;
            let a = t.tan();
            let rk = (1.0 / a).asinh();
            assert!(tangency_w(rk, a).unwrap().abs() < 1e-12, "k = {k}");
            if k >= 5 {
                let dk = (1.0 / (2.0 * t).tan()).asinh();
                assert!((tangency_w(dk, a).unwrap() + a).abs() < 1e-12, "k = {k}");
            }
        }
    }

    #[test]
    fn oracle_example() {
        let rho = 3f64.sqrt().ln();
        let w = tangency_w(rho, 1.0).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((w - (s - 1.0) / (1.0 + s)).abs() < 1e-15);
        assert!((tangency_oracle(1.0, rho).unwrap() - w).abs() < 1e-12);
        assert!((tangency_oracle(0.0, rho).unwrap() - tangency_w(rho, 0.0).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn w_is_increasing() {
        let xs: Vec<f64> = (1..200).map(|i| i as f64 * 0.03).collect();
        for rho in [0.1, 1.0, 2.0] {
            let ws: Vec<f64> = xs.iter().map(|&x| tangency_w(rho, x).unwrap()).collect();
            assert!(ws.windows(2).all(|p| p[0] < p[1]));
        }
        for x in [0.3, 2.0] {
            let ws: Vec<f64> = (1..100).map(|i| tangency_w(i as f64 * 0.03, x).unwrap()).collect();
            assert!(ws.windows(2).all(|p| p[0] < p[1]));
        }
    }

    proptest! {
        #[test]
        fn tangent_geodesic_has_depth_rho(x in 1e-3..5.0f64, rho in 1e-3..3.0f64) {
            let w = tangency_w(rho, x).unwrap();
            prop_assert!(w >= -1.0 / x && w < x);
            prop_assert!((depth_finite(x, w) - rho).abs() <= TOL);
            let o = tangency_oracle(x, rho).unwrap();
            prop_assert!((o - w).abs() <= TOL);
        }

        #[test]
        fn mirror_symmetry(x in 1e-3..5.0f64, rho in 1e-3..3.0f64) {
            let w = tangency_w(rho, -x).unwrap();
            prop_assert_eq!(w, -tangency_w(rho, x).unwrap());
            prop_assert!(w > -x && w <= 1.0 / x);
            prop_assert!((depth_finite(-x, w) - rho).abs() <= TOL);
        }
    }
}
