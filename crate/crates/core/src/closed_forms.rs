//! Closed forms for the region masses `Λ(z)`, `Λ*(z)` under the measure
//! `dψ dζ / (ψ − ζ)²`, the depth distributions built from their ratios, and
//! the area reparameterization.
//!
//! The values here are the masses of the crossing-restricted regions, which is
//! what [`crate::verify`] measures. The [`published`] submodule keeps the
//! other normalization verbatim so the two can be compared.


use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::regions::ConeConstants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    BelowRk,
    AboveRk,
    BelowDelta,
    Middle,
    Saturated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaValue {
    pub value: f64,
    pub branch: Branch,
}

fn check_z(z: f64) -> Result<()> {
    if z >= 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(domain("z", z))
    }
}

/// `2π/k`.
fn wedge(cc: &ConeConstants) -> f64 {
    2.0 * cc.angle()
}

/// Mass of `Ω(z)`.
pub fn lambda(cc: &ConeConstants, z: f64) -> Result<LambdaValue> {
    check_z(z)?;
    let s = z.sinh();
    if z <= cc.r_k {
        return Ok(LambdaValue { value: wedge(cc) * s, branch: Branch::BelowRk });
    }
    let half = s * s.recip().atan() + (cc.angle().sin() * z.cosh()).ln();
    Ok(LambdaValue { value: 2.0 * half, branch: Branch::AboveRk })
}

/// Mass of `Ω*(z)`.
///
/// For `k = 3` the `ψ`-range of `J` ends at `1/a_3` rather than `a_3`, which
/// changes the middle and saturated branches.
pub fn lambda_star(cc: &ConeConstants, z: f64) -> Result<LambdaValue> {
    check_z(z)?;
    let t = cc.angle();
    if cc.k >= 5 && z <= cc.delta_k {
        return Ok(LambdaValue { value: wedge(cc) * z.sinh(), branch: Branch::BelowDelta });
    }
    if z <= cc.r_k {
        let s = z.sinh();
        let log_term = if cc.k == 3 {
            z.cosh().ln()
        } else {
            (2.0 * z.cosh() * t.sin() * t.cos()).ln()
        };
        let half = s * cc.phi(s)?.atan() + log_term;
        return Ok(LambdaValue { value: 2.0 * half, branch: Branch::Middle });
    }
    Ok(LambdaValue { value: lambda_star_saturated(cc), branch: Branch::Saturated })
}

/// `Λ*` on `[r_k, ∞)`, i.e. the mass of `J`.
pub fn lambda_star_saturated(cc: &ConeConstants) -> f64 {
    if cc.k == 3 {
        2.0 * (2.0 / 3f64.sqrt()).ln()
    } else {
        2.0 * (2.0 * cc.angle().cos()).ln()
    }
}

/// Limiting fraction of `r`-excursions with depth at most `z`.
pub fn dist(cc: &ConeConstants, r: f64, z: f64) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(domain("r", r));
    }
    if !(z >= 0.0 && z <= r) {
        return Err(domain("z", z));
    }
    Ok(lambda(cc, z)?.value / lambda(cc, r)?.value)
}

/// Limiting fraction of approximating excursions with depth at most `z`.
pub fn dist_star(cc: &ConeConstants, z: f64) -> Result<f64> {
    if !(z >= 0.0 && z <= cc.r_k) {
        return Err(domain("z", z));
    }
    Ok(lambda_star(cc, z)?.value / lambda_star(cc, cc.r_k)?.value)
}

/// Area depth `(2π/k)(cosh d − 1)`.
pub fn area_depth(cc: &ConeConstants, d: f64) -> Result<f64> {
    if !(d >= 0.0) {
        return Err(domain("d", d));
    }
    let h = (0.5 * d).sinh();
    // cosh d − 1 = 2 sinh²(d/2), without cancellation near 0
    Ok(wedge(cc) * 2.0 * h * h)
}

/// Inverse of [`area_depth`].
pub fn depth_from_area(cc: &ConeConstants, area: f64) -> Result<f64> {
    if !(area >= 0.0) {
        return Err(domain("area", area));
    }
    Ok(acosh1p(area / wedge(cc)))
}

/// `acosh(1 + e)` accurate for small `e`.
fn acosh1p(e: f64) -> f64 {
    (e + (e * (2.0 + e)).sqrt()).ln_1p()
}

/// Depth distribution in area coordinates: fraction of `R`-excursions with
/// area depth at most `Z`.
pub fn adist(cc: &ConeConstants, big_r: f64, big_z: f64) -> Result<f64> {
    if !(big_r > 0.0 && big_r.is_finite()) {
        return Err(domain("R", big_r));
    }
    if !(big_z >= 0.0 && big_z <= big_r) {
        return Err(domain("Z", big_z));
    }
    if big_r <= area_depth(cc, cc.r_k)? {
        let c = wedge(cc);
        let num = big_z * (big_z + 2.0 * c);
        let den = big_r * (big_r + 2.0 * c);
        return Ok((num / den).sqrt());
    }
    adist_composed(cc, big_r, big_z)
}

/// [`adist`] through the change of variables only.
pub fn adist_composed(cc: &ConeConstants, big_r: f64, big_z: f64) -> Result<f64> {
    let r = depth_from_area(cc, big_r)?;
    let z = depth_from_area(cc, big_z)?.min(r);
    dist(cc, r, z)
}

/// Approximating-excursion distribution in area coordinates.
pub fn adist_star(cc: &ConeConstants, big_z: f64) -> Result<f64> {
    let top = area_depth(cc, cc.r_k)?;
    if !(big_z >= 0.0 && big_z <= top) {
        return Err(domain("Z", big_z));
    }
    if cc.k >= 5 && big_z <= area_depth(cc, cc.delta_k)? {
        let c = wedge(cc);
        return Ok((big_z * (big_z + 2.0 * c)).sqrt() / lambda_star_saturated(cc));
    }
    adist_star_composed(cc, big_z)
}

pub fn adist_star_composed(cc: &ConeConstants, big_z: f64) -> Result<f64> {
    let z = depth_from_area(cc, big_z)?.min(cc.r_k);
    dist_star(cc, z)
}

/// The masses and distributions in the normalization in which they were
/// first written down, kept for the audit. Values are reproduced exactly as
/// stated, including the `k = 3` approximating denominator that vanishes.
pub mod published {
    use super::*;

    /// `log(2cos(π/k))`, exactly 0 for `k = 3`.
    fn log_two_cos(cc: &ConeConstants) -> f64 {
        if cc.k == 3 {
            0.0
        } else {
            (2.0 * cc.angle().cos()).ln()
        }
    }

    pub fn lambda(cc: &ConeConstants, z: f64) -> Result<f64> {
        check_z(z)?;
        let s = z.sinh();
        if z <= cc.r_k {
            Ok(wedge(cc) * s)
        } else {
            Ok(s * s.recip().atan() + (cc.angle().sin() * z.cosh()).ln())
        }
    }

    pub fn lambda_star(cc: &ConeConstants, z: f64) -> Result<f64> {
        check_z(z)?;
        let t = cc.angle();
        if z <= cc.delta_k {
            Ok(wedge(cc) * z.sinh())
        } else if z < cc.r_k {
            let s = z.sinh();
            Ok(s * cc.phi(s)?.atan() + (2.0 * z.cosh() * t.sin() * t.cos()).ln())
        } else {
            Ok(log_two_cos(cc))
        }
    }

    /// The two-regime depth distribution, as a direct formula.
    pub fn dist(cc: &ConeConstants, r: f64, z: f64) -> Result<f64> {
        if !(r > 0.0) || !(z >= 0.0 && z <= r) {
            return Err(domain("z", z));
        }
        if r <= cc.r_k {
            return Ok(z.sinh() / r.sinh());
        }
        let t = cc.angle();
        let big = |x: f64| {
            let s = x.sinh();
            s * s.recip().atan() + (t.sin() * x.cosh()).ln()
        };
        if z <= cc.r_k {
            Ok(t * z.sinh() / big(r))
        } else {
            Ok(big(z) / big(r))
        }
    }

    /// The approximating distribution as a direct formula. Returns a
    /// non-finite value for `k = 3`, where the denominator is `log 1 = 0`.
    pub fn dist_star(cc: &ConeConstants, z: f64) -> Result<f64> {
        if !(z >= 0.0 && z <= cc.r_k) {
            return Err(domain("z", z));
        }
        let t = cc.angle();
        let den = log_two_cos(cc);
        if z <= cc.delta_k {
            Ok(t * z.sinh() / den)
        } else {
            let s = z.sinh();
            Ok((s * cc.phi(s)?.atan() + (2.0 * z.cosh() * t.sin() * t.cos()).ln()) / den)
        }
    }
}
