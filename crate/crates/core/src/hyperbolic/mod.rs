//! Upper half-plane geometry: points, boundary points, Möbius maps and
//! geodesics, plus the distance formulas used for excursion depths.
//!
//! Everything here is plain `f64`. Exact arithmetic lives in the
//! [`fuchsian`](crate::fuchsian) layer, which only needs it for group
//! identity tests.

pub mod disc;
pub mod tangency;

use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use tangency::{tangency_oracle, tangency_w};

/// A point `x + iy` with `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HPoint {
    x: f64,
    y: f64,
}

impl HPoint {
    /// The point `i`, the lift of the cone point in normalized coordinates.
    pub const I: HPoint = HPoint { x: 0.0, y: 1.0 };

    pub fn new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() && y > 0.0 {
            Ok(HPoint { x, y })
        } else {
            Err(Error::NotInUpperHalfPlane { x, y })
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }
}

/// A point of the extended real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Boundary {
    Finite(f64),
    Infinity,
}

impl Boundary {
    pub fn finite(self) -> Option<f64> {
        match self {
            Boundary::Finite(x) => Some(x),
            Boundary::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Boundary::Infinity)
    }
}

impl From<f64> for Boundary {
    fn from(x: f64) -> Self {
        if x.is_finite() {
            Boundary::Finite(x)
        } else {
            Boundary::Infinity
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Finite(x) => write!(f, "{x}"),
            Boundary::Infinity => write!(f, "inf"),
        }
    }
}

/// An orientation-preserving isometry `z ↦ (az+b)/(cz+d)`.
///
/// Stored with determinant 1 and the first nonzero entry of `(a, b, c, d)`
/// positive, so the two matrix representatives of one map coincide.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobiusMap {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl MobiusMap {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::NonPositiveDeterminant { det });
        }
        let s = det.sqrt().recip();
        let (mut a, mut b, mut c, mut d) = (a * s, b * s, c * s, d * s);
        let lead = [a, b, c, d].into_iter().find(|v| *v != 0.0).unwrap_or(1.0);
        if lead < 0.0 {
            a = -a;
            b = -b;
            c = -c;
            d = -d;
        }
        Ok(MobiusMap { a, b, c, d })
    }

    pub fn identity() -> Self {
        MobiusMap { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    /// `z ↦ z + t`.
    pub fn translation(t: f64) -> Self {
        MobiusMap { a: 1.0, b: t, c: 0.0, d: 1.0 }
    }

    /// `z ↦ -1/z`, the half-turn about `i`.
    pub fn inversion() -> Self {
        MobiusMap { a: 0.0, b: 1.0, c: -1.0, d: 0.0 }
            .renormalized()
    }

    /// Rotation about `i` by angle `2θ` (matrix `[[cos θ, sin θ], [-sin θ, cos θ]]`).
    pub fn rotation_about_i(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        MobiusMap { a: c, b: s, c: -s, d: c }.renormalized()
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    fn renormalized(self) -> Self {
        MobiusMap::new(self.a, self.b, self.c, self.d).expect("positive determinant")
    }

    pub fn apply(&self, z: HPoint) -> HPoint {
        let (x, y) = (z.x, z.y);
        let den_re = self.c * x + self.d;
        let den_im = self.c * y;
        let den = den_re * den_re + den_im * den_im;
        let num_re = self.a * x + self.b;
        let num_im = self.a * y;
        let x1 = (num_re * den_re + num_im * den_im) / den;
        // Im((az+b)/(cz+d)) = det * y / |cz+d|^2 with det = 1.
        let y1 = y / den;
        HPoint { x: x1, y: y1 }
    }

    pub fn apply_boundary(&self, x: Boundary) -> Boundary {
        match x {
            Boundary::Infinity => {
                if self.c == 0.0 {
                    Boundary::Infinity
                } else {
                    Boundary::Finite(self.a / self.c)
                }
            }
            Boundary::Finite(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    Boundary::Infinity
                } else {
                    Boundary::from((self.a * x + self.b) / den)
                }
            }
        }
    }

    pub fn inverse(&self) -> Self {
        MobiusMap { a: self.d, b: -self.b, c: -self.c, d: self.a }.renormalized()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusMap) -> Self {
        MobiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
        .renormalized()
    }

    pub fn pow(&self, n: i32) -> Self {
        let base = if n < 0 { self.inverse() } else { *self };
        let mut acc = MobiusMap::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// Projective closeness: compares normalized entries up to a global sign.
    pub fn approx_eq(&self, other: &MobiusMap, tol: f64) -> bool {
        let p = self.entries();
        let q = other.entries();
        let same = p.iter().zip(q.iter()).all(|(u, v)| (u - v).abs() <= tol);
        let flipped = p.iter().zip(q.iter()).all(|(u, v)| (u + v).abs() <= tol);
        same || flipped
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&MobiusMap::identity(), tol)
    }
}

impl Mul for MobiusMap {
    type Output = MobiusMap;

    fn mul(self, rhs: MobiusMap) -> MobiusMap {
        self.compose(&rhs)
    }
}

/// The elliptic generator `T_k` of the stabilizer of `i`: rotation by `2π/k`.
pub fn elliptic_tk(k: u64) -> Result<MobiusMap> {
    if k < 3 {
        return Err(Error::ConeOrder { k });
    }
    Ok(MobiusMap::rotation_about_i(PI / k as f64))
}

/// An oriented complete geodesic, identified by its forward and backward
/// endpoints on the extended real line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geodesic {
    fwd: Boundary,
    bwd: Boundary,
}

impl Geodesic {
    pub fn new(fwd: Boundary, bwd: Boundary) -> Result<Self> {
        let distinct = match (fwd, bwd) {
            (Boundary::Infinity, Boundary::Infinity) => false,
            (Boundary::Finite(a), Boundary::Finite(b)) => a != b,
            _ => true,
        };
        if distinct {
            Ok(Geodesic { fwd, bwd })
        } else {
            Err(Error::DegenerateGeodesic)
        }
    }

    pub fn from_reals(fwd: f64, bwd: f64) -> Result<Self> {
        Geodesic::new(Boundary::from(fwd), Boundary::from(bwd))
    }

    pub fn fwd(&self) -> Boundary {
        self.fwd
    }

    pub fn bwd(&self) -> Boundary {
        self.bwd
    }

    pub fn image(&self, m: &MobiusMap) -> Result<Geodesic> {
        Geodesic::new(m.apply_boundary(self.fwd), m.apply_boundary(self.bwd))
    }

    /// The isometry carrying this geodesic onto the positive imaginary axis,
    /// backward end to 0, forward end to ∞. The Euclidean top of a
    /// semicircle lands on `i`.
    pub fn axis_map(&self) -> MobiusMap {
        let m = match (self.fwd, self.bwd) {
            (Boundary::Finite(f), Boundary::Finite(b)) if f > b => MobiusMap::new(1.0, -b, -1.0, f),
            (Boundary::Finite(f), Boundary::Finite(b)) => MobiusMap::new(1.0, -b, 1.0, -f),
            (Boundary::Infinity, Boundary::Finite(b)) => MobiusMap::new(1.0, -b, 0.0, 1.0),
            (Boundary::Finite(f), Boundary::Infinity) => MobiusMap::new(0.0, -1.0, 1.0, -f),
            (Boundary::Infinity, Boundary::Infinity) => unreachable!("endpoints are distinct"),
        };
        m.expect("axis map has positive determinant")
    }

    /// Signed arc-length coordinate of a point on the geodesic, increasing
    /// toward the forward endpoint, zero at the Euclidean top.
    pub fn param_of(&self, p: HPoint) -> f64 {
        self.axis_map().apply(p).y().ln()
    }

    pub fn point_at(&self, s: f64) -> HPoint {
        let on_axis = HPoint { x: 0.0, y: s.exp() };
        self.axis_map().inverse().apply(on_axis)
    }

    /// Coordinate on `self` of its transverse intersection with `other`.
    pub fn crossing_param(&self, other: &Geodesic) -> Option<f64> {
        let a = self.axis_map();
        let u = a.apply_boundary(other.fwd).finite()?;
        let v = a.apply_boundary(other.bwd).finite()?;
        let prod = u * v;
        if prod < 0.0 {
            Some(0.5 * (-prod).ln())
        } else {
            None
        }
    }
}

/// A geodesic together with an arc-length origin: `t(p) = param_of(p) - origin`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamGeodesic {
    pub geodesic: Geodesic,
    pub origin: f64,
}

impl ParamGeodesic {
    pub fn new(geodesic: Geodesic, origin: f64) -> Self {
        ParamGeodesic { geodesic, origin }
    }

    pub fn t_of(&self, p: HPoint) -> f64 {
        self.geodesic.param_of(p) - self.origin
    }

    pub fn point_at(&self, t: f64) -> HPoint {
        self.geodesic.point_at(t + self.origin)
    }

    pub fn t_of_crossing(&self, other: &Geodesic) -> Option<f64> {
        self.geodesic.crossing_param(other).map(|s| s - self.origin)
    }

    /// The image under an isometry, carrying the arc-length parameter along.
    pub fn transform(&self, m: &MobiusMap) -> Result<ParamGeodesic> {
        self.transform_at(m, -self.origin)
    }

    /// [`ParamGeodesic::transform`], matching parameters at `t` rather than
    /// at the Euclidean top. Pick `t` near where the image will be used: far
    /// from it, points underflow toward the boundary.
    pub fn transform_at(&self, m: &MobiusMap, t: f64) -> Result<ParamGeodesic> {
        let geodesic = self.geodesic.image(m)?;
        let reference = m.apply(self.point_at(t));
        Ok(ParamGeodesic { geodesic, origin: geodesic.param_of(reference) - t })
    }
}

pub fn hyp_dist(p: HPoint, q: HPoint) -> f64 {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    let chord = (dx * dx + dy * dy).sqrt();
    2.0 * (chord / (2.0 * (p.y * q.y).sqrt())).asinh()
}

/// Hyperbolic distance from a point to a complete geodesic.
pub fn dist_point_geodesic(p: HPoint, g: &Geodesic) -> f64 {
    let (x, y) = (p.x, p.y);
    let sinh_d = match (g.fwd, g.bwd) {
        (Boundary::Finite(f), Boundary::Finite(b)) => {
            // (x-c)^2 + y^2 - R^2 with c, R the center and radius.
            ((x - f) * (x - b) + y * y).abs() / ((f - b).abs() * y)
        }
        (Boundary::Finite(v), Boundary::Infinity) | (Boundary::Infinity, Boundary::Finite(v)) => {
            (x - v).abs() / y
        }
        (Boundary::Infinity, Boundary::Infinity) => unreachable!("endpoints are distinct"),
    };
    sinh_d.asinh()
}

/// Distance from `i` to the geodesic with endpoints `(x, y)`.
pub fn depth_d(x: Boundary, y: Boundary) -> Result<f64> {
    let g = Geodesic::new(x, y)?;
    Ok(dist_point_geodesic(HPoint::I, &g))
}

/// [`depth_d`] for finite endpoints, without the `Result`.
#[inline]
pub(crate) fn depth_finite(x: f64, y: f64) -> f64 {
    ((1.0 + x * y).abs() / (x - y).abs()).asinh()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TOL: f64 = 1e-12;

    fn pt(x: f64, y: f64) -> HPoint {
        HPoint::new(x, y).unwrap()
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(HPoint::new(0.0, 0.0).is_err());
        assert!(HPoint::new(1.0, -2.0).is_err());
        assert!(HPoint::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn apply_examples() {
        let id = MobiusMap::identity();
        assert_eq!(id.apply(HPoint::I), HPoint::I);
        let t4 = elliptic_tk(4).unwrap();
        let w = t4.apply(HPoint::I);
        assert!((w.x()).abs() < TOL && (w.y() - 1.0).abs() < TOL);
        let shift = MobiusMap::translation(1.0);
        assert_eq!(shift.apply(HPoint::I), pt(1.0, 1.0));
    }

    #[test]
    fn apply_boundary_examples() {
        let id = MobiusMap::identity();
        assert_eq!(id.apply_boundary(Boundary::Finite(5.0)), Boundary::Finite(5.0));
        let inv = MobiusMap::inversion();
        assert_eq!(inv.apply_boundary(Boundary::Finite(0.0)), Boundary::Infinity);
        assert_eq!(inv.apply_boundary(Boundary::Infinity), Boundary::Finite(0.0));
        let t3 = elliptic_tk(3).unwrap();
        let x = t3.apply_boundary(Boundary::Finite(0.0)).finite().unwrap();
        assert!((x - 3f64.sqrt()).abs() < TOL);
    }

    #[test]
    fn tk_entries_and_order() {
        let t4 = elliptic_tk(4).unwrap();
        let h = (PI / 4.0).cos();
        let [a, b, c, d] = t4.entries();
        assert!((a - h).abs() < TOL && (b - h).abs() < TOL);
        assert!((c + h).abs() < TOL && (d - h).abs() < TOL);
        for k in 3..=12 {
            let t = elliptic_tk(k).unwrap();
            assert!(t.pow(k as i32).is_identity(1e-12), "k = {k}");
            assert!(!t.pow(1).is_identity(1e-6));
        }
        assert!(elliptic_tk(2).is_err());
    }

    #[test]
    fn t3_orbit_of_zero() {
        let t = elliptic_tk(3).unwrap();
        let a = 3f64.sqrt();
        let mut orbit: Vec<f64> = (0..3)
            .map(|j| t.pow(j).apply_boundary(Boundary::Finite(0.0)).finite().unwrap())
            .collect();
        orbit.sort_by(f64::total_cmp);
        let expected = [-a, 0.0, a];
        for (u, v) in orbit.iter().zip(expected) {
            assert!((u - v).abs() < 1e-12);
        }
    }

    #[test]
    fn normalization_is_projective() {
        let m = MobiusMap::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let n = MobiusMap::new(-4.0, -2.0, -2.0, -2.0).unwrap();
        assert_eq!(m, n);
        assert!(MobiusMap::new(1.0, 2.0, 3.0, 4.0).is_err());
    }

    #[test]
    fn hyp_dist_examples() {
        assert_eq!(hyp_dist(HPoint::I, HPoint::I), 0.0);
        let d = hyp_dist(pt(0.0, 1.0), pt(0.0, std::f64::consts::E));
        assert!((d - 1.0).abs() < TOL);
    }

    #[test]
    fn dist_point_geodesic_examples() {
        let g = Geodesic::from_reals(1.0, -1.0).unwrap();
        assert!(dist_point_geodesic(HPoint::I, &g) < TOL);
        for x in [0.1, 0.7, 3.0, 40.0] {
            let g = Geodesic::from_reals(x, -1.0 / x).unwrap();
            assert!(dist_point_geodesic(HPoint::I, &g) < 1e-12);
        }
        let g = Geodesic::from_reals(0.0, -3f64.sqrt()).unwrap();
        let expected = (1.0 / 3f64.sqrt()).asinh();
        assert!((dist_point_geodesic(HPoint::I, &g) - expected).abs() < TOL);
        assert!((expected - 0.549_306_144_334_054_9).abs() < 1e-15);
        // vertical geodesic through 2
        let g = Geodesic::new(Boundary::Infinity, Boundary::Finite(2.0)).unwrap();
        assert!((dist_point_geodesic(HPoint::I, &g) - 2f64.asinh()).abs() < TOL);
    }

    #[test]
    fn depth_rejects_equal_endpoints() {
        assert!(depth_d(Boundary::Finite(1.0), Boundary::Finite(1.0)).is_err());
        assert!(depth_d(Boundary::Infinity, Boundary::Infinity).is_err());
    }

    #[test]
    fn param_round_trip_and_orientation() {
        for (f, b) in [(2.0, -1.0), (-3.0, 0.5), (0.0, f64::INFINITY), (f64::INFINITY, 1.5)] {
            let g = Geodesic::from_reals(f, b).unwrap();
            let p0 = g.point_at(0.0);
            let p1 = g.point_at(1.0);
            assert!((g.param_of(p1) - 1.0).abs() < 1e-12);
            assert!((hyp_dist(p0, p1) - 1.0).abs() < 1e-12);
            assert!(dist_point_geodesic(p1, &g) < 1e-12);
            // far forward approaches the forward endpoint
            let far = g.point_at(30.0);
            match g.fwd() {
                Boundary::Finite(f) => assert!((far.x() - f).abs() < 1e-6),
                Boundary::Infinity => assert!(far.y() > 1e6),
            }
        }
    }

    #[test]
    fn crossing_param_on_imaginary_axis() {
        let g = Geodesic::from_reals(0.5, -0.5).unwrap();
        let axis = Geodesic::new(Boundary::Finite(0.0), Boundary::Infinity).unwrap();
        let s = g.crossing_param(&axis).unwrap();
        let p = g.point_at(s);
        assert!(p.x().abs() < 1e-12 && (p.y() - 0.5).abs() < 1e-12);
        let disjoint = Geodesic::from_reals(2.0, 3.0).unwrap();
        assert!(g.crossing_param(&disjoint).is_none());
    }

    #[test]
    fn param_geodesic_transform_preserves_t() {
        let g = ParamGeodesic::new(Geodesic::from_reals(0.3, -1.7).unwrap(), 0.4);
        let m = MobiusMap::new(2.0, 1.0, 3.0, 2.5).unwrap();
        let h = g.transform(&m).unwrap();
        for t in [-2.0, 0.0, 1.3] {
            let p = m.apply(g.point_at(t));
            assert!((h.t_of(p) - t).abs() < 1e-10);
        }
    }

    fn arb_map() -> impl Strategy<Value = MobiusMap> {
        (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64)
            .prop_filter_map("det > 0.1", |(a, b, c, d)| {
                if a * d - b * c > 0.1 {
                    MobiusMap::new(a, b, c, d).ok()
                } else {
                    None
                }
            })
    }

    fn arb_point() -> impl Strategy<Value = HPoint> {
        (-3.0..3.0f64, 0.05..4.0f64).prop_map(|(x, y)| HPoint::new(x, y).unwrap())
    }

    proptest! {
        #[test]
        fn distance_is_isometry_invariant(m in arb_map(), p in arb_point(), q in arb_point()) {
            let d0 = hyp_dist(p, q);
            let d1 = hyp_dist(m.apply(p), m.apply(q));
            prop_assert!((d0 - d1).abs() <= 1e-8 * (1.0 + d0));
        }

        #[test]
        fn distance_is_a_metric(p in arb_point(), q in arb_point(), r in arb_point()) {
            prop_assert!((hyp_dist(p, q) - hyp_dist(q, p)).abs() < 1e-12);
            prop_assert!(hyp_dist(p, r) <= hyp_dist(p, q) + hyp_dist(q, r) + 1e-10);
        }

        #[test]
        fn image_stays_in_upper_half_plane(m in arb_map(), p in arb_point()) {
            prop_assert!(m.apply(p).y() > 0.0);
        }

        #[test]
        fn depth_is_invariant_under_half_turn(x in -5.0..5.0f64, y in -5.0..5.0f64) {
            prop_assume!((x - y).abs() > 1e-3 && x.abs() > 1e-3 && y.abs() > 1e-3);
            let d0 = depth_d(Boundary::Finite(x), Boundary::Finite(y)).unwrap();
            let d1 = depth_d(Boundary::Finite(-1.0 / x), Boundary::Finite(-1.0 / y)).unwrap();
            let d2 = depth_d(Boundary::Finite(-x), Boundary::Finite(-y)).unwrap();
            prop_assert!((d0 - d1).abs() < 1e-10);
            prop_assert!((d0 - d2).abs() < 1e-12);
            prop_assert!((d0 - depth_finite(x, y)).abs() < 1e-12);
        }
    }
}
