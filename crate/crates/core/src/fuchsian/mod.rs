//! Concrete Fuchsian groups with a cone point: the modular group (exact
//! integer matrices) and Hecke groups (floating matrices).
//!
//! Both use the fundamental domain `{|Re z| ≤ w, |z| ≥ 1}` with `w` half the
//! cusp width, translation `T`, inversion `S`, and elliptic generator
//! `E = T·S` whose fixed point `p` is the right corner of the domain. The
//! distinguished ray runs from `p` straight up the cusp, so it is the right
//! wall of the domain.

mod walk;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperbolic::{elliptic_tk, HPoint, MobiusMap};

pub use walk::{coset_key, neighbor_ring, tile_walk, Side, TileStep, TileWalk};

/// Matching tolerance for the model and normalization checks.
pub const MODEL_TOL: f64 = 1e-12;
/// Grid for the quantized keys of floating-point groups.
pub const KEY_GRID: f64 = 1e-9;

/// An element of `PSL(2, ℤ)`: determinant 1, first nonzero entry positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMatrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl IntMatrix {
    pub const IDENTITY: IntMatrix = IntMatrix { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(Error::NonPositiveDeterminant { det: det as f64 });
        }
        Ok(IntMatrix { a, b, c, d }.canonical())
    }

    fn canonical(self) -> Self {
        let lead = [self.a, self.b, self.c, self.d].into_iter().find(|v| *v != 0).unwrap_or(1);
        if lead < 0 {
            IntMatrix { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
        } else {
            self
        }
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn mul(&self, o: &IntMatrix) -> Result<IntMatrix> {
        let e = |x: i64, y: i64, u: i64, v: i64| -> Result<i64> {
            let s = x as i128 * y as i128 + u as i128 * v as i128;
            i64::try_from(s).map_err(|_| Error::Overflow)
        };
        Ok(IntMatrix {
            a: e(self.a, o.a, self.b, o.c)?,
            b: e(self.a, o.b, self.b, o.d)?,
            c: e(self.c, o.a, self.d, o.c)?,
            d: e(self.c, o.b, self.d, o.d)?,
        }
        .canonical())
    }

    pub fn inverse(&self) -> IntMatrix {
        IntMatrix { a: self.d, b: -self.b, c: -self.c, d: self.a }.canonical()
    }

    pub fn to_mobius(&self) -> MobiusMap {
        MobiusMap::new(self.a as f64, self.b as f64, self.c as f64, self.d as f64)
            .expect("determinant 1")
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::IDENTITY
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// A group element, exact when the group allows it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GroupElem {
    Int(IntMatrix),
    Real(MobiusMap),
}

/// Hashable identity of a tile or a coset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Key {
    Int([i64; 4]),
    Grid([i64; 2]),
}

impl Key {
    pub fn words(&self) -> Vec<i64> {
        match self {
            Key::Int(e) => e.to_vec(),
            Key::Grid(g) => g.to_vec(),
        }
    }
}

fn grid_key(z: HPoint) -> Key {
    Key::Grid([(z.x() / KEY_GRID).round() as i64, (z.y() / KEY_GRID).round() as i64])
}

impl GroupElem {
    pub fn mul(&self, o: &GroupElem) -> Result<GroupElem> {
        match (self, o) {
            (GroupElem::Int(a), GroupElem::Int(b)) => Ok(GroupElem::Int(a.mul(b)?)),
            _ => Ok(GroupElem::Real(self.to_mobius().compose(&o.to_mobius()))),
        }
    }

    pub fn inverse(&self) -> GroupElem {
        match self {
            GroupElem::Int(m) => GroupElem::Int(m.inverse()),
            GroupElem::Real(m) => GroupElem::Real(m.inverse()),
        }
    }

    pub fn to_mobius(&self) -> MobiusMap {
        match self {
            GroupElem::Int(m) => m.to_mobius(),
            GroupElem::Real(m) => *m,
        }
    }

    pub fn apply(&self, z: HPoint) -> HPoint {
        self.to_mobius().apply(z)
    }

    /// Identifies the tile `g(FD)`: exact entries, or the quantized image of
    /// an interior point.
    pub fn tile_key(&self) -> Key {
        match self {
            GroupElem::Int(m) => Key::Int(m.entries()),
            GroupElem::Real(m) => grid_key(m.apply(fd_interior())),
        }
    }
}

/// A point strictly inside every fundamental domain used here.
pub fn fd_interior() -> HPoint {
    HPoint::new(0.0, 2.0).expect("upper half-plane")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FuchsianModel {
    pub name: String,
    /// Order of the cone point.
    pub k: u64,
    /// Translation length of the cusp generator.
    pub cusp_width: f64,
    pub translation: GroupElem,
    pub translation_inv: GroupElem,
    pub inversion: GroupElem,
    pub elliptic: GroupElem,
    pub identity: GroupElem,
    pub elliptic_fixed_point: HPoint,
}

impl FuchsianModel {
    /// Half-width of the fundamental domain.
    pub fn half_width(&self) -> f64 {
        0.5 * self.cusp_width
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.identity, GroupElem::Int(_))
    }

    /// `T^n`.
    pub fn translation_pow(&self, n: i64) -> GroupElem {
        match self.identity {
            GroupElem::Int(_) => GroupElem::Int(IntMatrix { a: 1, b: n, c: 0, d: 1 }),
            GroupElem::Real(_) => GroupElem::Real(MobiusMap::translation(n as f64 * self.cusp_width)),
        }
    }

    pub fn elliptic_pow(&self, j: u64) -> Result<GroupElem> {
        let mut acc = self.identity;
        for _ in 0..j {
            acc = acc.mul(&self.elliptic)?;
        }
        Ok(acc)
    }

    /// Checks the elliptic generator's order and fixed point.
    pub fn verify(&self) -> Result<()> {
        // products of floating matrices drift roughly linearly in the number of factors
        let tol = 1e-12 * (self.k * self.k) as f64;
        let mut acc = self.identity;
        for j in 1..self.k {
            acc = acc.mul(&self.elliptic)?;
            if acc.to_mobius().is_identity(tol) {
                return Err(Error::Model(format!("elliptic generator of {} has order {j}", self.name)));
            }
        }
        if !acc.mul(&self.elliptic)?.to_mobius().is_identity(tol) {
            return Err(Error::Model(format!("elliptic generator of {} does not have order {}", self.name, self.k)));
        }
        let p = self.elliptic_fixed_point;
        let q = self.elliptic.apply(p);
        if (q.x() - p.x()).abs() > MODEL_TOL || (q.y() - p.y()).abs() > MODEL_TOL {
            return Err(Error::Model(format!("{} elliptic point is not fixed", self.name)));
        }
        Ok(())
    }
}

/// `PSL(2, ℤ)` with its order-3 cone point at `(1 + i√3)/2`.
pub fn modular_group() -> FuchsianModel {
    let t = IntMatrix { a: 1, b: 1, c: 0, d: 1 };
    let s = IntMatrix::new(0, -1, 1, 0).expect("det 1");
    let e = IntMatrix::new(1, -1, 1, 0).expect("det 1");
    FuchsianModel {
        name: "modular".into(),
        k: 3,
        cusp_width: 1.0,
        translation: GroupElem::Int(t),
        translation_inv: GroupElem::Int(t.inverse()),
        inversion: GroupElem::Int(s),
        elliptic: GroupElem::Int(e),
        identity: GroupElem::Int(IntMatrix::IDENTITY),
        elliptic_fixed_point: HPoint::new(0.5, 0.75f64.sqrt()).expect("upper half-plane"),
    }
}

/// The Hecke group generated by `z ↦ z + 2cos(π/q)` and `z ↦ −1/z`, with a
/// cone point of order `q`.
pub fn hecke_group(q: u64) -> Result<FuchsianModel> {
    if q < 4 {
        // q = 3 is the modular group, which has its own exact model
        return Err(crate::error::domain("Hecke order (at least 4)", q as f64));
    }
    let lambda = 2.0 * (std::f64::consts::PI / q as f64).cos();
    let t = MobiusMap::translation(lambda);
    let s = MobiusMap::inversion();
    let e = t.compose(&s);
    let model = FuchsianModel {
        name: format!("hecke:{q}"),
        k: q,
        cusp_width: lambda,
        translation: GroupElem::Real(t),
        translation_inv: GroupElem::Real(t.inverse()),
        inversion: GroupElem::Real(s),
        elliptic: GroupElem::Real(e),
        identity: GroupElem::Real(MobiusMap::identity()),
        elliptic_fixed_point: HPoint::new(0.5 * lambda, (1.0 - 0.25 * lambda * lambda).sqrt())?,
    };
    model.verify()?;
    Ok(model)
}

/// Conjugation taking the model's cone point to `i` and the cusp to `0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Normalization {
    pub m: MobiusMap,
    pub m_inv: MobiusMap,
    /// `M E M⁻¹ = T_k^orientation`.
    pub orientation: i32,
}

impl Normalization {
    /// `M ∘ g⁻¹`, which pulls the geodesic back along `g` into normalized coordinates.
    pub fn pull_back(&self, g: &GroupElem) -> MobiusMap {
        self.m.compose(&g.inverse().to_mobius())
    }
}

pub fn normalize(model: &FuchsianModel) -> Result<Normalization> {
    let p = model.elliptic_fixed_point;
    // z ↦ −v/(z − u): p ↦ i, ∞ ↦ 0, u + it ↦ iv/t
    let m = MobiusMap::new(0.0, -p.y(), 1.0, -p.x())?;
    let m_inv = m.inverse();
    let image = m.apply(p);
    if (image.x()).abs() > MODEL_TOL || (image.y() - 1.0).abs() > MODEL_TOL {
        return Err(Error::Model("normalization does not send the cone point to i".into()));
    }
    let conj = m.compose(&model.elliptic.to_mobius()).compose(&m_inv);
    let tk = elliptic_tk(model.k)?;
    let orientation = if conj.approx_eq(&tk, MODEL_TOL) {
        1
    } else if conj.approx_eq(&tk.inverse(), MODEL_TOL) {
        -1
    } else {
        return Err(Error::Model(format!("conjugated elliptic generator of {} is not T_k^±1", model.name)));
    };
    Ok(Normalization { m, m_inv, orientation })
}

/// Moves `z` into the closed fundamental domain. Returns the image and the
/// element `g` with `g(z)` equal to it.
pub fn reduce_to_fd(model: &FuchsianModel, z: HPoint) -> Result<(HPoint, GroupElem)> {
    const MAX_STEPS: usize = 10_000;
    let w = model.half_width();
    let mut g = model.identity;
    let mut cur = z;
    for _ in 0..MAX_STEPS {
        let n = (cur.x() / model.cusp_width).round();
        if n != 0.0 {
            let shift = model.translation_pow(-(n as i64));
            g = shift.mul(&g)?;
            cur = HPoint::new(cur.x() - n * model.cusp_width, cur.y())?;
        }
        // ties at the side walls go to the left wall
        if cur.x() > w {
            g = model.translation_inv.mul(&g)?;
            cur = HPoint::new(cur.x() - model.cusp_width, cur.y())?;
        }
        if cur.x() * cur.x() + cur.y() * cur.y() < 1.0 {
            g = model.inversion.mul(&g)?;
            cur = model.inversion.apply(cur);
        } else {
            return Ok((g.apply(z), g));
        }
    }
    Err(Error::WalkLimit { limit: MAX_STEPS })
}

/// Closed fundamental-domain membership with slack `tol`.
pub fn in_fd(model: &FuchsianModel, z: HPoint, tol: f64) -> bool {
    z.x().abs() <= model.half_width() + tol && z.x() * z.x() + z.y() * z.y() >= 1.0 - tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn int_matrix_basics() {
        let m = IntMatrix::new(-2, -1, -1, -1).unwrap();
        assert_eq!(m.entries(), [2, 1, 1, 1]);
        assert!(IntMatrix::new(1, 2, 3, 4).is_err());
        assert!(m.mul(&m.inverse()).unwrap().is_identity());
        let big = IntMatrix { a: 1, b: i64::MAX / 2 + 1, c: 0, d: 1 };
        assert_eq!(big.mul(&big).unwrap_err(), Error::Overflow);
    }

    #[test]
    fn modular_model() {
        let g = modular_group();
        g.verify().unwrap();
        let e = g.elliptic_pow(3).unwrap();
        assert_eq!(e, GroupElem::Int(IntMatrix::IDENTITY));
        let p = g.elliptic_fixed_point;
        // z² − z + 1 = 0
        let re = p.x() * p.x() - p.y() * p.y() - p.x() + 1.0;
        let im = 2.0 * p.x() * p.y() - p.y();
        assert!(re.abs() < 1e-15 && im.abs() < 1e-15);
        assert_eq!(p.x(), g.half_width());
    }

    #[test]
    fn hecke_models() {
        let h = hecke_group(4).unwrap();
        assert!((h.cusp_width - 2f64.sqrt()).abs() < 1e-15);
        let p = h.elliptic_fixed_point;
        assert!((p.x().hypot(p.y()) - 1.0).abs() < 1e-15);
        for q in [5, 6, 7, 12] {
            hecke_group(q).unwrap().verify().unwrap();
        }
        assert!((hecke_group(1000).unwrap().cusp_width - 2.0).abs() < 1e-4);
        assert!(hecke_group(3).is_err());
    }

    #[test]
    fn modular_normalization() {
        let g = modular_group();
        let n = normalize(&g).unwrap();
        let p = g.elliptic_fixed_point;
        let i = n.m.apply(p);
        assert!(i.x().abs() < 1e-15 && (i.y() - 1.0).abs() < 1e-15);
        assert!(n.m.apply_boundary(crate::hyperbolic::Boundary::Infinity) == crate::hyperbolic::Boundary::Finite(0.0));
        let expected = MobiusMap::new(0.0, -3f64.sqrt(), 2.0, -1.0).unwrap();
        assert!(n.m.approx_eq(&expected, 1e-15));
        for t in [1.0, 10.0] {
            let q = n.m.apply(HPoint::new(p.x(), p.y() + t).unwrap());
            assert!(q.x().abs() < 1e-15 && q.y() < 1.0);
        }
        assert_eq!(n.orientation, -1);
        for q in [4, 5, 9] {
            let h = hecke_group(q).unwrap();
            let n = normalize(&h).unwrap();
            assert_eq!(n.orientation.abs(), 1);
        }
    }

    #[test]
    fn reduce_examples() {
        let g = modular_group();
        let z = HPoint::new(0.3, 2.0).unwrap();
        let (w, m) = reduce_to_fd(&g, z).unwrap();
        assert_eq!(w, z);
        assert_eq!(m, g.identity);
        let z = HPoint::new(5.3, 0.7).unwrap();
        let (w, m) = reduce_to_fd(&g, z).unwrap();
        assert!(in_fd(&g, w, 1e-12));
        let (w2, m2) = reduce_to_fd(&g, w).unwrap();
        assert_eq!(m2, g.identity);
        assert_eq!(w2, w);
        let back = m.apply(z);
        assert!((back.x() - w.x()).abs() < 1e-10 && (back.y() - w.y()).abs() < 1e-10);
    }

    proptest! {
        #[test]
        fn reduction_lands_in_fd(x in -20.0..20.0f64, y in 1e-3..5.0f64, q in 3u64..8) {
            let model = if q == 3 { modular_group() } else { hecke_group(q).unwrap() };
            let z = HPoint::new(x, y).unwrap();
            let (w, g) = reduce_to_fd(&model, z).unwrap();
            prop_assert!(in_fd(&model, w, 1e-9));
            let again = g.apply(z);
            prop_assert!((again.x() - w.x()).abs() <= 1e-10 && (again.y() - w.y()).abs() <= 1e-10);
        }
    }
}
