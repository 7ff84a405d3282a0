//! Walking a geodesic through the tessellation by fundamental-domain tiles.
//!
//! A tile is `g(FD)`. Its three sides are images of the right wall
//! `Re z = w`, the left wall `Re z = −w` and the unit circle, and the
//! neighbours across them are `g·T`, `g·T⁻¹` and `g·S`. In the coordinates of
//! the geodesic's axis map each side bounds the parameter from one side, so
//! the tile's parameter interval is an intersection of half-lines.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperbolic::{Boundary, HPoint, MobiusMap, ParamGeodesic};

use super::{fd_interior, grid_key, reduce_to_fd, FuchsianModel, GroupElem, Key};

/// Largest overlap allowed between consecutive tile intervals before the
/// walk is declared lost.
const WALK_TOL: f64 = 1e-9;
/// Exits closer than this count as passing through a vertex.
const VERTEX_TOL: f64 = 1e-12;
const MAX_STEPS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Right,
    Left,
    Bottom,
}

impl Side {
    const ALL: [Side; 3] = [Side::Right, Side::Left, Side::Bottom];

    fn opposite(self) -> Side {
        match self {
            Side::Right => Side::Left,
            Side::Left => Side::Right,
            Side::Bottom => Side::Bottom,
        }
    }

    fn line(self, w: f64) -> (Boundary, Boundary) {
        match self {
            Side::Right => (Boundary::Finite(w), Boundary::Infinity),
            Side::Left => (Boundary::Finite(-w), Boundary::Infinity),
            Side::Bottom => (Boundary::Finite(1.0), Boundary::Finite(-1.0)),
        }
    }

    fn neighbor(self, model: &FuchsianModel) -> GroupElem {
        match self {
            Side::Right => model.translation,
            Side::Left => model.translation_inv,
            Side::Bottom => model.inversion,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TileStep {
    pub elem: GroupElem,
    pub t_enter: f64,
    pub t_exit: f64,
    /// `None` when the geodesic ends in this tile's cusp.
    pub exit: Option<Side>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct TileWalk {
    pub steps: Vec<TileStep>,
    pub vertex_events: usize,
}

enum Bound {
    Lower(f64),
    Upper(f64),
    All,
    Empty,
}

/// Signed side of `z` relative to the geodesic line `(u, v)`: positive
/// outside a semicircle, or to the right of a vertical line.
fn side_of(u: Boundary, v: Boundary, z: HPoint) -> f64 {
    match (u, v) {
        (Boundary::Finite(a), Boundary::Finite(b)) => (z.x() - a) * (z.x() - b) + z.y() * z.y(),
        (Boundary::Finite(a), Boundary::Infinity) | (Boundary::Infinity, Boundary::Finite(a)) => z.x() - a,
        (Boundary::Infinity, Boundary::Infinity) => 0.0,
    }
}

/// The half-plane of one side, seen from the geodesic's axis frame.
fn bound(p: &MobiusMap, side: Side, w: f64) -> Bound {
    let (u, v) = side.line(w);
    let (u, v) = (p.apply_boundary(u), p.apply_boundary(v));
    let inside = side_of(u, v, p.apply(fd_interior()));
    if let (Boundary::Finite(a), Boundary::Finite(b)) = (u, v) {
        if a * b < 0.0 {
            let s = 0.5 * (-a * b).ln();
            // the forward end ∞ lies outside the semicircle
            return if inside > 0.0 { Bound::Lower(s) } else { Bound::Upper(s) };
        }
    }
    if side_of(u, v, HPoint::I) * inside > 0.0 {
        Bound::All
    } else {
        Bound::Empty
    }
}

struct Interval {
    lo: f64,
    hi: f64,
    exit: Option<Side>,
    tie: bool,
}

fn tile_interval(axis: &MobiusMap, g: &GroupElem, w: f64, entered: Option<Side>) -> Option<Interval> {
    let p = axis.compose(&g.to_mobius());
    let mut lo = f64::NEG_INFINITY;
    let mut uppers: Vec<(f64, Side)> = Vec::with_capacity(3);
    for side in Side::ALL {
        match bound(&p, side, w) {
            Bound::Lower(s) => lo = lo.max(s),
            Bound::Upper(s) if Some(side) != entered => uppers.push((s, side)),
            Bound::Upper(s) => lo = lo.max(s),
            Bound::All => {}
            Bound::Empty => return None,
        }
    }
    uppers.sort_by(|a, b| a.0.total_cmp(&b.0));
    let tie = uppers.len() > 1 && uppers[1].0 - uppers[0].0 < VERTEX_TOL;
    let (hi, exit) = uppers.first().map_or((f64::INFINITY, None), |&(s, side)| (s, Some(side)));
    Some(Interval { lo, hi, exit, tie })
}

/// Tiles met by the geodesic for parameters in `[t_start, t_end]`, in order.
pub fn tile_walk(model: &FuchsianModel, geod: &ParamGeodesic, t_start: f64, t_end: f64) -> Result<TileWalk> {
    let axis = geod.geodesic.axis_map();
    let w = model.half_width();
    let (_, g0) = reduce_to_fd(model, geod.point_at(t_start))?;
    let mut g = g0.inverse();
    let mut entered = None;
    let mut walk = TileWalk::default();
    let mut prev_exit = f64::NEG_INFINITY;
    for _ in 0..MAX_STEPS {
        let iv = tile_interval(&axis, &g, w, entered).ok_or(Error::LostGeodesic { t: prev_exit })?;
        let (t_in, t_out) = (iv.lo - geod.origin, iv.hi - geod.origin);
        if t_out < t_in - WALK_TOL || t_out < prev_exit - WALK_TOL {
            return Err(Error::LostGeodesic { t: t_in });
        }
        walk.vertex_events += usize::from(iv.tie);
        walk.steps.push(TileStep { elem: g, t_enter: t_in, t_exit: t_out, exit: iv.exit });
        let Some(side) = iv.exit else { break };
        if t_out >= t_end {
            break;
        }
        prev_exit = t_out;
        g = g.mul(&side.neighbor(model))?;
        entered = Some(side.opposite());
    }
    if walk.steps.last().is_some_and(|s| s.exit.is_some() && s.t_exit < t_end) {
        return Err(Error::WalkLimit { limit: MAX_STEPS });
    }
    Ok(walk)
}

/// The tiles within `m` side-adjacency steps of `tiles`, deduplicated,
/// starting with `tiles` themselves.
pub fn neighbor_ring(model: &FuchsianModel, tiles: &[GroupElem], m: usize) -> Result<Vec<GroupElem>> {
    let mut seen: HashSet<Key> = HashSet::new();
    let mut out = Vec::new();
    for g in tiles {
        if seen.insert(g.tile_key()) {
            out.push(*g);
        }
    }
    let mut frontier_start = 0;
    for _ in 0..m {
        let frontier_end = out.len();
        for i in frontier_start..frontier_end {
            for side in Side::ALL {
                let h = out[i].mul(&side.neighbor(model))?;
                if seen.insert(h.tile_key()) {
                    out.push(h);
                }
            }
        }
        frontier_start = frontier_end;
    }
    Ok(out)
}

/// Key of the coset `c·⟨E⟩`: the least canonical matrix among `c·E^j` for
/// exact groups, the quantized cone point `c(p)` otherwise.
pub fn coset_key(model: &FuchsianModel, c: &GroupElem) -> Result<Key> {
    match c {
        GroupElem::Int(_) => {
            let mut acc = *c;
            let mut best = c.tile_key();
            for _ in 1..model.k {
                acc = acc.mul(&model.elliptic)?;
                best = best.min(acc.tile_key());
            }
            Ok(best)
        }
        GroupElem::Real(m) => Ok(grid_key(m.apply(model.elliptic_fixed_point))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuchsian::{hecke_group, in_fd, modular_group};
    use crate::hyperbolic::{Geodesic, ParamGeodesic};

    fn geod(f: f64, b: f64) -> ParamGeodesic {
        ParamGeodesic::new(Geodesic::from_reals(f, b).unwrap(), 0.0)
    }

    fn check_walk(model: &FuchsianModel, g: &ParamGeodesic, t0: f64, t1: f64) -> TileWalk {
        let walk = tile_walk(model, g, t0, t1).unwrap();
        assert!(walk.steps.first().unwrap().t_enter <= t0 + 1e-9);
        assert!(walk.steps.last().unwrap().t_exit >= t1);
        for pair in walk.steps.windows(2) {
            assert!((pair[0].t_exit - pair[1].t_enter).abs() < 1e-8, "{pair:?}");
        }
        for s in &walk.steps {
            if s.t_exit.is_finite() && s.t_exit - s.t_enter > 1e-6 {
                let mid = g.point_at(0.5 * (s.t_enter + s.t_exit));
                let back = s.elem.inverse().apply(mid);
                assert!(in_fd(model, back, 1e-7), "{back:?}");
            }
        }
        walk
    }

    #[test]
    fn walks_modular_geodesics() {
        let m = modular_group();
        let g = geod(0.377, -2.913);
        let walk = check_walk(&m, &g, -6.0, 6.0);
        assert!(walk.steps.len() > 4);
        // vertical geodesic stays in the tile column above x
        let v = ParamGeodesic::new(Geodesic::new(Boundary::Infinity, Boundary::Finite(0.1)).unwrap(), 0.0);
        let walk = check_walk(&m, &v, -3.0, 3.0);
        assert!(walk.steps.last().unwrap().exit.is_none());
    }

    #[test]
    fn walks_hecke_geodesics() {
        for q in [4, 5, 7] {
            let h = hecke_group(q).unwrap();
            check_walk(&h, &geod(1.234, -0.567), -5.0, 5.0);
        }
    }

    #[test]
    fn ring_sizes() {
        let m = modular_group();
        let r1 = neighbor_ring(&m, &[m.identity], 1).unwrap();
        assert_eq!(r1.len(), 4);
        let r2 = neighbor_ring(&m, &[m.identity], 2).unwrap();
        assert!(r2.len() > r1.len());
        assert_eq!(&r2[..4], &r1[..]);
    }

    #[test]
    fn coset_keys_are_class_invariant() {
        let m = modular_group();
        let c = GroupElem::Int(crate::fuchsian::IntMatrix::new(2, 1, 5, 3).unwrap());
        let k0 = coset_key(&m, &c).unwrap();
        let ce = c.mul(&m.elliptic).unwrap();
        assert_eq!(coset_key(&m, &ce).unwrap(), k0);
        assert_ne!(coset_key(&m, &m.identity).unwrap(), k0);
        // the two corners of the domain are distinct lifts
        assert_ne!(coset_key(&m, &m.translation_inv).unwrap(), coset_key(&m, &m.identity).unwrap());
        let h = hecke_group(5).unwrap();
        let c = h.translation.mul(&h.inversion).unwrap();
        assert_eq!(coset_key(&h, &c).unwrap(), coset_key(&h, &c.mul(&h.elliptic).unwrap()).unwrap());
    }
}
