//! Per-order constants and the endpoint regions `I`, `J`, `Ω(z)`, `Ω*(z)`.
//!
//! A pair `(ψ, ζ)` is the (forward, backward) endpoint pair of a geodesic in
//! normalized coordinates, where the cone-point lift sits at `i` and the
//! distinguished ray runs from `i` down to `0`. The "raw" predicates test the
//! sector products as literally stated; the plain ones additionally require
//! that the geodesic meets that ray, i.e. `ψζ ≥ −1`. Everything downstream
//! uses the crossing-restricted versions.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::hyperbolic::{depth_finite, tangency_w, Boundary};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeConstants {
    pub k: u64,
    /// `tan(π/k)`.
    pub a: f64,
    /// `asinh(cot(π/k))`: the largest radius at which the lifted cone discs are disjoint.
    pub r_k: f64,
    /// `asinh(cot(2π/k))`; nonpositive for `k ∈ {3, 4}`.
    pub delta_k: f64,
}

impl ConeConstants {
    pub fn new(k: u64) -> Result<Self> {
        if k < 3 {
            return Err(Error::ConeOrder { k });
        }
        let t = PI / k as f64;
        Ok(ConeConstants {
            k,
            a: t.tan(),
            r_k: (t.cos() / t.sin()).asinh(),
            // cot(π/2) is exactly 0, which the float quotient misses
            delta_k: if k == 4 { 0.0 } else { ((2.0 * t).cos() / (2.0 * t).sin()).asinh() },
        })
    }

    /// `π/k`.
    pub fn angle(&self) -> f64 {
        PI / self.k as f64
    }

    /// Lower end of the middle branch of `Λ*`: `δ_k` clamped at 0.
    pub fn delta_floor(&self) -> f64 {
        self.delta_k.max(0.0)
    }

    /// Right end of the `ψ`-range of `J` on the positive side: `min(a_k, 1/a_k)`.
    pub fn j_extent(&self) -> f64 {
        self.a.min(1.0 / self.a)
    }

    /// `φ_k(x) = (1 − x·a_k)/(x + a_k)`.
    pub fn phi(&self, x: f64) -> Result<f64> {
        let den = x + self.a;
        if den == 0.0 || !x.is_finite() {
            return Err(domain("phi_k argument", x));
        }
        Ok((1.0 - x * self.a) / den)
    }

    /// The `x` with `W_z(x) = −a_k`, defined for `max(δ_k, 0) ≤ z ≤ r_k`.
    pub fn x_z(&self, z: f64) -> Result<f64> {
        if !(z >= self.delta_floor() && z <= self.r_k) {
            return Err(domain("z", z));
        }
        self.phi(z.sinh())
    }
}

/// `φ_k(x)` without constructing the constants first.
pub fn phi_k(k: u64, x: f64) -> Result<f64> {
    ConeConstants::new(k)?.phi(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndpointPair {
    pub psi: Boundary,
    pub zeta: Boundary,
}

impl EndpointPair {
    pub fn new(psi: Boundary, zeta: Boundary) -> Result<Self> {
        if psi == zeta {
            return Err(Error::DegenerateGeodesic);
        }
        Ok(EndpointPair { psi, zeta })
    }

    pub fn finite(psi: f64, zeta: f64) -> Result<Self> {
        EndpointPair::new(Boundary::from(psi), Boundary::from(zeta))
    }

    /// Both endpoints when finite.
    pub fn reals(&self) -> Option<(f64, f64)> {
        Some((self.psi.finite()?, self.zeta.finite()?))
    }

    /// Distance from `i` to the geodesic.
    pub fn depth(&self) -> f64 {
        match self.reals() {
            Some((x, y)) => depth_finite(x, y),
            None => {
                let v = self.psi.finite().or(self.zeta.finite()).unwrap_or(0.0);
                v.abs().asinh()
            }
        }
    }

    pub fn mirrored(&self) -> Self {
        let neg = |b: Boundary| match b {
            Boundary::Finite(x) => Boundary::Finite(-x),
            Boundary::Infinity => Boundary::Infinity,
        };
        EndpointPair { psi: neg(self.psi), zeta: neg(self.zeta) }
    }
}

/// Sector test with backward endpoint beyond `bound` on the opposite side.
fn in_sector(cc: &ConeConstants, p: &EndpointPair, bound: f64) -> bool {
    let Some(psi) = p.psi.finite() else { return false };
    let Some(zeta) = p.zeta.finite() else { return false };
    (psi > -cc.a && psi < 0.0 && zeta > bound) || (psi > 0.0 && psi < cc.a && zeta < -bound)
}

/// `I` as printed, without the crossing constraint.
pub fn in_i_raw(cc: &ConeConstants, p: &EndpointPair) -> bool {
    in_sector(cc, p, 0.0)
}

/// `J` as printed, without the crossing constraint.
pub fn in_j_raw(cc: &ConeConstants, p: &EndpointPair) -> bool {
    in_sector(cc, p, cc.a)
}

fn crosses_ray(p: &EndpointPair) -> bool {
    match p.reals() {
        Some((psi, zeta)) => psi * zeta >= -1.0,
        None => false,
    }
}

/// `I` restricted to geodesics meeting the segment from `i` to `0`.
pub fn in_i(cc: &ConeConstants, p: &EndpointPair) -> bool {
    in_i_raw(cc, p) && crosses_ray(p)
}

/// `J` restricted to geodesics meeting the segment from `i` to `0`.
pub fn in_j(cc: &ConeConstants, p: &EndpointPair) -> bool {
    in_j_raw(cc, p) && crosses_ray(p)
}

pub fn in_omega(cc: &ConeConstants, z: f64, p: &EndpointPair) -> bool {
    z >= 0.0 && in_i(cc, p) && p.depth() <= z
}

pub fn in_omega_star(cc: &ConeConstants, z: f64, p: &EndpointPair) -> bool {
    z >= 0.0 && in_j(cc, p) && p.depth() <= z
}

/// Which region an interval query refers to; fixes the upper clip of `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionContext {
    Omega,
    OmegaStar,
}

impl RegionContext {
    pub fn clip(self, cc: &ConeConstants) -> f64 {
        match self {
            RegionContext::Omega => 0.0,
            RegionContext::OmegaStar => -cc.a,
        }
    }
}

/// Backward endpoints `y` with `(x, y)` in the region and `D(x, y) ≤ z`, for
/// `x ∈ (0, a_k)`: the interval `[−1/x, min(W_z(x), clip)]`. `None` when empty.
pub fn omega_y_interval(
    cc: &ConeConstants,
    x: f64,
    z: f64,
    ctx: RegionContext,
) -> Result<Option<(f64, f64)>> {
    if !(x > 0.0 && x < cc.a) {
        return Err(domain("x", x));
    }
    if !(z >= 0.0) {
        return Err(domain("z", z));
    }
    let lo = -1.0 / x;
    let hi = tangency_w(z, x)?.min(ctx.clip(cc));
    Ok((hi >= lo).then_some((lo, hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::{dist_point_geodesic, Geodesic, HPoint};
    use proptest::prelude::*;

    fn cc(k: u64) -> ConeConstants {
        ConeConstants::new(k).unwrap()
    }

    fn pair(x: f64, y: f64) -> EndpointPair {
        EndpointPair::finite(x, y).unwrap()
    }

    #[test]
    fn constants_identities() {
        for k in 3..=40 {
            let c = cc(k);
            assert!((c.r_k.sinh() * c.a - 1.0).abs() < 1e-12);
            assert!((c.a / c.angle().tan() - 1.0).abs() < 1e-15);
            assert!(c.delta_k < c.r_k);
            assert_eq!(c.delta_k <= 0.0, k <= 4, "k = {k}");
        }
        assert!(ConeConstants::new(2).is_err());
        assert!((cc(3).r_k - 3f64.sqrt().ln()).abs() < 1e-15);
        assert!(cc(4).delta_k.abs() < 1e-15);
    }

    #[test]
    fn phi_examples() {
        let c3 = cc(3);
        assert!(c3.phi(1.0 / 3f64.sqrt()).unwrap().abs() < 1e-15);
        for k in 5..=12 {
            let c = cc(k);
            let x = 1.0 / (2.0 * c.angle()).tan();
            assert!((c.phi(x).unwrap() - c.a).abs() < 1e-12);
        }
        assert!((phi_k(4, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(cc(4).phi(-cc(4).a).is_err());
    }

    #[test]
    fn crossing_constraint_examples() {
        let c3 = cc(3);
        assert!(in_i(&c3, &pair(0.1, -0.1)));
        assert!(in_i_raw(&c3, &pair(0.1, -20.0)));
        assert!(!in_i(&c3, &pair(0.1, -20.0)));
        // that geodesic passes above i, so it misses the segment from i to 0
        let g = Geodesic::from_reals(0.1, -20.0).unwrap();
        let axis = Geodesic::from_reals(0.0, f64::INFINITY).unwrap();
        let s = g.crossing_param(&axis).unwrap();
        assert!(g.point_at(s).y() > 1.0);
        let c5 = cc(5);
        let psi = c5.a / 2.0;
        let zeta = -c5.a - 0.01;
        assert!(psi * (c5.a + 0.01) < 1.0);
        assert!(in_j(&c5, &pair(psi, zeta)));
        assert!(!in_i(&c3, &EndpointPair::new(Boundary::Finite(0.1), Boundary::Infinity).unwrap()));
    }

    #[test]
    fn boundary_of_crossing_is_inside() {
        let c = cc(3);
        for x in [0.2, 1.0, 1.5] {
            let p = pair(x, -1.0 / x);
            assert!(in_omega(&c, 0.0, &p));
        }
    }

    #[test]
    fn interval_examples() {
        let c = cc(3);
        let (lo, hi) = omega_y_interval(&c, 0.5, 0.0, RegionContext::Omega).unwrap().unwrap();
        assert_eq!(lo, hi);
        assert_eq!(lo, -2.0);
        let x = 0.5;
        let z = depth_finite(x, 0.0) + 0.01;
        let (_, hi) = omega_y_interval(&c, x, z, RegionContext::Omega).unwrap().unwrap();
        assert_eq!(hi, 0.0);
        let rho = 3f64.sqrt().ln();
        let (_, hi) = omega_y_interval(&c, 1.0, rho, RegionContext::Omega).unwrap().unwrap();
        let oracle = crate::hyperbolic::tangency_oracle(1.0, rho).unwrap();
        assert!((hi - oracle).abs() < 1e-12);
        // J is empty above 1/a_3
        assert!(omega_y_interval(&c, 0.9, 2.0, RegionContext::OmegaStar).unwrap().is_none());
    }

    #[test]
    fn x_z_examples() {
        let c = cc(7);
        let z = 0.5 * (c.delta_k + c.r_k);
        let x = c.x_z(z).unwrap();
        assert!((tangency_w(z, x).unwrap() + c.a).abs() < 1e-12);
        assert!(c.x_z(c.r_k).unwrap().abs() < 1e-12);
        assert!((c.x_z(c.delta_k).unwrap() - c.a).abs() < 1e-12);
        assert!(c.x_z(c.r_k + 0.1).is_err());
        assert!(cc(3).x_z(-0.01).is_err());
        let xs: Vec<f64> = (1..20).map(|i| c.x_z(c.delta_k + i as f64 * (c.r_k - c.delta_k) / 20.0).unwrap()).collect();
        assert!(xs.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn k3_j_extent_by_rejection() {
        use rand::{Rng, SeedableRng};
        let c = cc(3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut max_psi: f64 = 0.0;
        for _ in 0..200_000 {
            let psi = rng.gen_range(0.0..c.a);
            let zeta = -c.a - rng.gen_range(0.0..5.0);
            if in_j(&c, &pair(psi, zeta)) {
                max_psi = max_psi.max(psi);
            }
        }
        assert!(max_psi < 1.0 / 3f64.sqrt());
        assert!(max_psi > 0.99 / 3f64.sqrt());
    }

    fn arb_pair() -> impl Strategy<Value = (u64, f64, f64)> {
        (3u64..13, -3.0..3.0f64, -30.0..30.0f64)
    }

    proptest! {
        #[test]
        fn omega_monotone_in_z((k, x, y) in arb_pair(), z1 in 0.0..3.0f64, dz in 0.0..2.0f64) {
            prop_assume!(x != y);
            let c = cc(k);
            let p = pair(x, y);
            if in_omega(&c, z1, &p) {
                prop_assert!(in_omega(&c, z1 + dz, &p));
            }
            if in_omega_star(&c, z1, &p) {
                prop_assert!(in_omega_star(&c, z1 + dz, &p));
            }
        }

        #[test]
        fn j_is_inside_i((k, x, y) in arb_pair()) {
            prop_assume!(x != y);
            let c = cc(k);
            let p = pair(x, y);
            if in_j(&c, &p) {
                prop_assert!(in_i(&c, &p));
            }
        }

        #[test]
        fn j_is_shallow(k in 3u64..25, u in 0.0..1.0f64, v in 0.0..1.0f64) {
            let c = cc(k);
            let psi = u * c.j_extent();
            prop_assume!(psi > 0.0);
            let zeta = -c.a - v * (1.0 / psi - c.a);
            let p = pair(psi, zeta);
            if in_j(&c, &p) {
                prop_assert!(p.depth() <= c.r_k + 1e-9);
                prop_assert!(in_omega_star(&c, c.r_k + 1e-9, &p));
            }
        }

        #[test]
        fn interval_matches_predicate(k in 3u64..13, u in 0.01..0.99f64, z in 0.0..2.5f64, v in 0.0..1.0f64) {
            let c = cc(k);
            let x = u * c.a;
            let y = -1.0 / x + v * (x + 1.0 / x);
            prop_assume!(y < x);
            let p = pair(x, y);
            let inside = match omega_y_interval(&c, x, z, RegionContext::Omega).unwrap() {
                Some((lo, hi)) => y >= lo && y <= hi,
                None => false,
            };
            let margin = (p.depth() - z).abs() > 1e-9 && y.abs() > 1e-12;
            if margin {
                prop_assert_eq!(inside, in_omega(&c, z, &p));
            }
            let d = dist_point_geodesic(HPoint::I, &Geodesic::from_reals(x, y).unwrap());
            prop_assert!((d - p.depth()).abs() < 1e-9);
        }
    }
}
