//! Unit-disc model: the Cayley map to the half-plane and the tangent-chord
//! constructions around the disc center.

use num_complex::Complex64;

use super::{Boundary, HPoint};
use crate::error::{domain, Error, Result};

const UNIT_TOL: f64 = 1e-12;

/// `w ↦ i(1 − w)/(1 + w)`: disc center to `i`, boundary `1` to `0`, `−1` to `∞`.
pub fn cayley_to_halfplane(w: Complex64) -> Result<HPoint> {
    if !(w.norm() < 1.0) {
        return Err(Error::NotInDisc { re: w.re, im: w.im });
    }
    let z = Complex64::i() * (1.0 - w) / (1.0 + w);
    HPoint::new(z.re, z.im)
}

/// Inverse of [`cayley_to_halfplane`]: `z ↦ (i − z)/(i + z)`.
pub fn halfplane_to_disc(z: HPoint) -> Complex64 {
    let z = Complex64::new(z.x(), z.y());
    (Complex64::i() - z) / (Complex64::i() + z)
}

/// Boundary version of the Cayley map. `e^{iα} ↦ tan(α/2)`.
pub fn cayley_boundary(w: Complex64) -> Result<Boundary> {
    if (w.norm() - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotInDisc { re: w.re, im: w.im });
    }
    let half = 0.5 * w.arg();
    if (half.abs() - std::f64::consts::FRAC_PI_2).abs() < 1e-15 || w == Complex64::new(-1.0, 0.0) {
        return Ok(Boundary::Infinity);
    }
    Ok(Boundary::Finite(half.tan()))
}

/// Inverse of [`cayley_boundary`].
pub fn boundary_to_disc(x: Boundary) -> Complex64 {
    match x {
        Boundary::Infinity => Complex64::new(-1.0, 0.0),
        Boundary::Finite(x) => Complex64::from_polar(1.0, 2.0 * x.atan()),
    }
}

/// Euclidean radius of the hyperbolic disc of radius `rho` about the center.
pub fn disc_euclidean_radius(rho: f64) -> Result<f64> {
    if !(rho >= 0.0) {
        return Err(domain("rho", rho));
    }
    Ok((0.5 * rho).tanh())
}

/// Hyperbolic distance from the disc center to `w`.
pub fn disc_dist_from_center(w: Complex64) -> f64 {
    2.0 * w.norm().atanh()
}

/// Euclidean length of a chord tangent to the radius-`rho` disc about the center.
pub fn tangent_chord_length(rho: f64) -> Result<f64> {
    if !(rho >= 0.0) {
        return Err(domain("rho", rho));
    }
    Ok(2.0 / rho.cosh())
}

/// The other endpoint of the geodesic from boundary point `z` tangent to the
/// radius-`rho` disc about the center, on the right of the ray from `z` to 0.
pub fn tangent_point_disc(z: Complex64, rho: f64) -> Result<Complex64> {
    if (z.norm() - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotInDisc { re: z.re, im: z.im });
    }
    if !(rho >= 0.0) {
        return Err(domain("rho", rho));
    }
    let sech = rho.cosh().recip();
    let c = 1.0 - 2.0 * sech * sech;
    let s = (1.0 - c * c).max(0.0).sqrt();
    Ok(z * Complex64::new(c, -s))
}

/// Half-plane image of [`tangent_point_disc`] for a finite boundary point.
pub fn tangent_endpoint_halfplane(x: f64, rho: f64) -> Result<Boundary> {
    let xi = tangent_point_disc(boundary_to_disc(Boundary::Finite(x)), rho)?;
    cayley_boundary(xi)
}
