//! Excursions of sampled geodesics into the cone-point neighborhood.
//!
//! A geodesic starts in normalized coordinates with its endpoint pair in the
//! crossing region, is carried to the model's frame by `M⁻¹`, and is walked
//! through the tiling. Every cone-point lift `c(p)` near the walked tiles
//! within distance `r` of the geodesic gives one excursion: among the lifts
//! `c·E^j` exactly one pulls the geodesic back into the crossing-restricted
//! `I`, and `t_e` is where the geodesic crosses that lift's ray.
//!
//! Long walks are split into chunks. Each chunk re-expresses the geodesic in
//! the frame of the tile where it starts, which keeps matrix entries and
//! rounding small; consecutive frames differ by an exact group element.

pub mod distribution;

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::fuchsian::{coset_key, neighbor_ring, normalize, tile_walk, FuchsianModel, GroupElem, Key, Normalization, Side, TileWalk};
use crate::hyperbolic::{dist_point_geodesic, Boundary, Geodesic, ParamGeodesic};
use crate::regions::{in_i_raw, in_j, ConeConstants, EndpointPair};

pub use distribution::{compare, Comparison, EmpiricalDistribution};

/// Records at `t = 0` are kept despite rounding in the crossing parameter.
const WINDOW_SLACK: f64 = 1e-9;
/// Below `r_k − SECTOR_TOL` every nearby lift must have exactly one crossing-restricted rotation.
const SECTOR_TOL: f64 = 1e-9;
/// Tiles whose corners are all farther than `r` plus this are not expanded into rings.
const RING_SEED_SLACK: f64 = 1.0;
pub const DEFAULT_CHUNK: f64 = 8.0;
pub const DEFAULT_PAD: f64 = 1.0;
pub const DEFAULT_RING: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExcursionRecord {
    pub geodesic_id: u64,
    pub t_e: f64,
    pub depth: f64,
    pub approximating: bool,
    pub coset_key_hash: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum SamplingLaw {
    /// `ψ` uniform on `(0, a_k)`, `ζ` with density `∝ (ψ − ζ)^{-2}` on `(−1/ψ, 0)`.
    #[default]
    Uniform,
    /// The invariant measure restricted to `Ω(r)`: starts at an excursion.
    CrossSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimConfig {
    pub r: f64,
    pub t_max: f64,
    /// Records with `t_e > t_max − margin` are dropped; defaults to `r`.
    pub margin: Option<f64>,
    pub ring: usize,
    pub law: SamplingLaw,
    pub chunk_len: f64,
    pub pad: f64,
    /// Accept `r > r_k`, where the nearby-lift search is not known to be complete.
    pub allow_large_r: bool,
}

impl SimConfig {
    pub fn new(r: f64, t_max: f64) -> Self {
        SimConfig {
            r,
            t_max,
            margin: None,
            ring: DEFAULT_RING,
            law: SamplingLaw::Uniform,
            chunk_len: DEFAULT_CHUNK,
            pad: DEFAULT_PAD,
            allow_large_r: false,
        }
    }

    pub fn margin(&self) -> f64 {
        self.margin.unwrap_or(self.r)
    }

    pub fn validate(&self, cc: &ConeConstants) -> Result<()> {
        if !(self.r > 0.0 && self.r.is_finite()) {
            return Err(domain("r", self.r));
        }
        if self.r > cc.r_k && !self.allow_large_r {
            return Err(domain("r (above r_k; pass allow_large_r)", self.r));
        }
        if self.law == SamplingLaw::CrossSection && self.r > cc.r_k {
            return Err(domain("r (cross-section sampling needs r ≤ r_k)", self.r));
        }
        if !(self.margin() >= 0.0) {
            return Err(domain("margin", self.margin()));
        }
        if !(self.t_max.is_finite() && self.t_max > self.margin()) {
            return Err(domain("t_max (must exceed the margin)", self.t_max));
        }
        if !(self.chunk_len > 0.0 && self.chunk_len.is_finite()) {
            return Err(domain("chunk length", self.chunk_len));
        }
        if !(self.pad >= 0.0 && self.pad.is_finite()) {
            return Err(domain("pad", self.pad));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStats {
    pub geodesics: u64,
    pub chunks: u64,
    pub tiles: u64,
    /// Lifts within distance `r` of the geodesic.
    pub candidates: u64,
    /// Lifts below `r_k` without exactly one crossing-restricted rotation.
    pub degenerate: u64,
    /// Lifts at or above `r_k` with no crossing-restricted rotation.
    pub outside_sector: u64,
    pub vertex_events: u64,
}

impl EnumerationStats {
    pub fn add(&mut self, o: &EnumerationStats) {
        self.geodesics += o.geodesics;
        self.chunks += o.chunks;
        self.tiles += o.tiles;
        self.candidates += o.candidates;
        self.degenerate += o.degenerate;
        self.outside_sector += o.outside_sector;
        self.vertex_events += o.vertex_events;
    }

    pub fn degenerate_fraction(&self) -> f64 {
        if self.candidates == 0 {
            0.0
        } else {
            self.degenerate as f64 / self.candidates as f64
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct GeodesicRun {
    pub records: Vec<ExcursionRecord>,
    pub stats: EnumerationStats,
}

/// Draws a starting geodesic in normalized coordinates, strictly inside the
/// crossing region.
pub fn sample_geodesic<R: Rng + ?Sized>(cc: &ConeConstants, law: SamplingLaw, r: f64, rng: &mut R) -> Result<EndpointPair> {
    if law == SamplingLaw::CrossSection && !(r > 0.0 && r <= cc.r_k) {
        return Err(domain("r", r));
    }
    loop {
        let u: f64 = rng.gen();
        let (psi, v_hi) = match law {
            SamplingLaw::Uniform => {
                let psi = u * cc.a;
                (psi, 1.0 / psi)
            }
            SamplingLaw::CrossSection => {
                // ψ-marginal ∝ sinh r/(1 + ψ²) on (0, a_k)
                let psi = (u * cc.angle()).tan();
                (psi, (psi + r.sinh()) / (1.0 + psi * psi))
            }
        };
        let v_lo = psi / (1.0 + psi * psi);
        // v = 1/(ψ − ζ) is uniform under dζ/(ψ − ζ)²
        let v: f64 = rng.gen_range(0.0..1.0) * (v_hi - v_lo) + v_lo;
        let zeta = psi - 1.0 / v;
        let mirror: bool = rng.gen();
        if !(psi > 0.0 && v > v_lo && zeta < 0.0 && psi * zeta > -1.0 && zeta.is_finite()) {
            continue;
        }
        let p = EndpointPair::finite(psi, zeta)?;
        return Ok(if mirror { p.mirrored() } else { p });
    }
}

/// In `I` and meeting the open ray segment from `i` to `0`.
fn in_i_strict(cc: &ConeConstants, p: &EndpointPair) -> bool {
    in_i_raw(cc, p) && p.reals().is_some_and(|(x, y)| x * y > -1.0)
}

fn fnv1a(chunk: u64, key: &Key) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let words = std::iter::once(chunk as i64).chain(key.words());
    for w in words {
        for b in w.to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(PRIME);
        }
    }
    h
}

/// Everything a chunk handler needs about the current frame.
struct Chunk<'a> {
    index: u64,
    geod: &'a ParamGeodesic,
    walk: &'a TileWalk,
    lo: f64,
    hi: f64,
    last: bool,
}

impl Chunk<'_> {
    fn contains(&self, t: f64) -> bool {
        t >= self.lo && (t < self.hi || (self.last && t <= self.hi))
    }
}

struct Context<'a> {
    model: &'a FuchsianModel,
    norm: &'a Normalization,
    cc: ConeConstants,
    cfg: &'a SimConfig,
    /// The distinguished ray's full line in the model frame.
    ray_line: Geodesic,
}

impl<'a> Context<'a> {
    fn new(model: &'a FuchsianModel, norm: &'a Normalization, cfg: &'a SimConfig) -> Result<Self> {
        let cc = ConeConstants::new(model.k)?;
        cfg.validate(&cc)?;
        let p = model.elliptic_fixed_point;
        let ray_line = Geodesic::new(Boundary::Finite(p.x()), Boundary::Infinity)?;
        Ok(Context { model, norm, cc, cfg, ray_line })
    }

    /// Normalized endpoints of the geodesic pulled back along `h`.
    fn pulled_back(&self, h: &GroupElem, geod: &ParamGeodesic) -> Result<EndpointPair> {
        let m = self.norm.pull_back(h);
        EndpointPair::new(m.apply_boundary(geod.geodesic.fwd()), m.apply_boundary(geod.geodesic.bwd()))
    }

    fn record(&self, id: u64, chunk: u64, key: &Key, t_e: f64, pair: &EndpointPair) -> ExcursionRecord {
        ExcursionRecord {
            geodesic_id: id,
            t_e,
            depth: pair.depth(),
            approximating: in_j(&self.cc, pair),
            coset_key_hash: fnv1a(chunk, key),
        }
    }

    /// Runs `handle` on consecutive chunks of the window `[0, t_max − margin]`.
    fn chunked<F>(&self, pair: &EndpointPair, mut handle: F) -> Result<EnumerationStats>
    where
        F: FnMut(&Chunk<'_>, &mut EnumerationStats) -> Result<()>,
    {
        let (psi, zeta) = pair.reals().ok_or(Error::DegenerateGeodesic)?;
        if !(psi * zeta < 0.0 && psi * zeta > -1.0) {
            return Err(domain("starting pair (must cross the ray from i to 0)", psi * zeta));
        }
        let normalized = Geodesic::new(pair.psi, pair.zeta)?;
        let axis = Geodesic::new(Boundary::Infinity, Boundary::Finite(0.0))?;
        let origin = normalized.crossing_param(&axis).ok_or(Error::DegenerateGeodesic)?;
        let mut geod = ParamGeodesic::new(normalized, origin).transform(&self.norm.m_inv)?;

        let cfg = self.cfg;
        let end = cfg.t_max - cfg.margin();
        let mut stats = EnumerationStats { geodesics: 1, ..Default::default() };
        let mut lo = -WINDOW_SLACK;
        let mut index = 0u64;
        loop {
            let hi = (lo + cfg.chunk_len).min(end);
            let last = hi >= end;
            let walk = tile_walk(self.model, &geod, lo - cfg.pad, hi + cfg.pad)?;
            stats.chunks += 1;
            stats.tiles += walk.steps.len() as u64;
            stats.vertex_events += walk.vertex_events as u64;
            handle(&Chunk { index, geod: &geod, walk: &walk, lo, hi, last }, &mut stats)?;
            if last {
                break;
            }
            // next frame: the tile where the next chunk's walk begins
            let t_anchor = hi - cfg.pad;
            let anchor = walk
                .steps
                .iter()
                .find(|s| s.t_enter <= t_anchor && t_anchor <= s.t_exit)
                .ok_or(Error::LostGeodesic { t: t_anchor })?;
            geod = geod.transform_at(&anchor.elem.inverse().to_mobius(), t_anchor)?;
            lo = hi;
            index += 1;
        }
        Ok(stats)
    }
}

fn excursions_in_chunk(ctx: &Context<'_>, id: u64, ch: &Chunk<'_>, stats: &mut EnumerationStats, out: &mut Vec<ExcursionRecord>) -> Result<()> {
    let model = ctx.model;
    let p = model.elliptic_fixed_point;
    let corner_dist = |c: &GroupElem| dist_point_geodesic(c.apply(p), &ch.geod.geodesic);
    // only tiles with a corner near the geodesic seed the ring; high up a
    // cusp the walk can cross millions of tiles whose rings hold nothing
    let mut seeds = Vec::new();
    let mut tiles = Vec::new();
    for step in &ch.walk.steps {
        let g = step.elem;
        let left = g.mul(&model.translation_inv)?;
        if corner_dist(&g).min(corner_dist(&left)) <= ctx.cfg.r + RING_SEED_SLACK {
            seeds.push(g);
        } else {
            tiles.push(g);
        }
    }
    tiles.extend(neighbor_ring(model, &seeds, ctx.cfg.ring)?);
    let mut seen: HashSet<Key> = HashSet::new();
    for g in &tiles {
        // the two cone-point corners of the tile: g(p) and g(T⁻¹p)
        for c in [*g, g.mul(&model.translation_inv)?] {
            let d = corner_dist(&c);
            if d > ctx.cfg.r + SECTOR_TOL {
                continue;
            }
            let key = coset_key(model, &c)?;
            if !seen.insert(key) {
                continue;
            }
            let mut found = None;
            let mut matches = 0;
            let mut h = c;
            for _ in 0..model.k {
                let pair = ctx.pulled_back(&h, ch.geod)?;
                if in_i_strict(&ctx.cc, &pair) {
                    matches += 1;
                    found = Some((h, pair));
                }
                h = h.mul(&model.elliptic)?;
            }
            let (h, pair) = match (matches, found) {
                (1, Some(f)) => f,
                _ => {
                    if d < ctx.cc.r_k - SECTOR_TOL {
                        stats.candidates += 1;
                        stats.degenerate += 1;
                    } else {
                        stats.outside_sector += 1;
                    }
                    continue;
                }
            };
            if pair.depth() > ctx.cfg.r {
                continue;
            }
            stats.candidates += 1;
            let line = ctx.ray_line.image(&h.to_mobius())?;
            let Some(t_e) = ch.geod.t_of_crossing(&line) else {
                stats.degenerate += 1;
                continue;
            };
            if ch.contains(t_e) {
                out.push(ctx.record(id, ch.index, &key, t_e, &pair));
            }
        }
    }
    Ok(())
}

/// All `r`-excursions of the geodesic with normalized endpoints `pair`, found
/// through nearby cone-point lifts, ordered by `t_e`.
pub fn enumerate_excursions(
    model: &FuchsianModel,
    norm: &Normalization,
    pair: &EndpointPair,
    geodesic_id: u64,
    cfg: &SimConfig,
) -> Result<GeodesicRun> {
    let ctx = Context::new(model, norm, cfg)?;
    let mut records = Vec::new();
    let stats = ctx.chunked(pair, |ch, stats| excursions_in_chunk(&ctx, geodesic_id, ch, stats, &mut records))?;
    records.sort_by(|a, b| a.t_e.total_cmp(&b.t_e));
    Ok(GeodesicRun { records, stats })
}

/// The same excursions found independently, from the walk's crossings of
/// side walls: every such wall is a lift of the distinguished ray.
pub fn enumerate_crossings(
    model: &FuchsianModel,
    norm: &Normalization,
    pair: &EndpointPair,
    geodesic_id: u64,
    cfg: &SimConfig,
) -> Result<GeodesicRun> {
    let ctx = Context::new(model, norm, cfg)?;
    let mut records = Vec::new();
    let stats = ctx.chunked(pair, |ch, _| {
        for step in &ch.walk.steps {
            let h = match step.exit {
                Some(Side::Right) => step.elem,
                Some(Side::Left) => step.elem.mul(&model.translation_inv)?,
                _ => continue,
            };
            if !ch.contains(step.t_exit) {
                continue;
            }
            let pair = ctx.pulled_back(&h, ch.geod)?;
            if in_i_strict(&ctx.cc, &pair) && pair.depth() <= cfg.r {
                let key = coset_key(model, &h)?;
                records.push(ctx.record(geodesic_id, ch.index, &key, step.t_exit, &pair));
            }
        }
        Ok(())
    })?;
    records.sort_by(|a, b| a.t_e.total_cmp(&b.t_e));
    Ok(GeodesicRun { records, stats })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Simulation {
    pub model: String,
    pub config: SimConfig,
    pub n_geodesics: u64,
    pub seed: u64,
    pub records: Vec<ExcursionRecord>,
    pub stats: EnumerationStats,
}

impl Simulation {
    pub fn depths(&self, approximating_only: bool) -> Vec<f64> {
        self.records
            .iter()
            .filter(|r| !approximating_only || r.approximating)
            .map(|r| r.depth)
            .collect()
    }
}

/// Samples `n_geodesics` geodesics (ChaCha stream `id` of `seed` each) and
/// enumerates their excursions in parallel. Records are ordered by
/// `(geodesic_id, t_e)` whatever the thread count.
pub fn simulate(model: &FuchsianModel, cfg: &SimConfig, n_geodesics: u64, seed: u64) -> Result<Simulation> {
    if n_geodesics == 0 {
        return Err(Error::Empty("geodesics"));
    }
    let norm = normalize(model)?;
    let cc = ConeConstants::new(model.k)?;
    cfg.validate(&cc)?;
    let runs: Vec<GeodesicRun> = (0..n_geodesics)
        .into_par_iter()
        .map(|id| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(id);
            let pair = sample_geodesic(&cc, cfg.law, cfg.r, &mut rng)?;
            enumerate_excursions(model, &norm, &pair, id, cfg)
        })
        .collect::<Result<_>>()?;
    let mut stats = EnumerationStats::default();
    let mut records = Vec::new();
    for run in runs {
        stats.add(&run.stats);
        records.extend(run.records);
    }
    Ok(Simulation { model: model.name.clone(), config: cfg.clone(), n_geodesics, seed, records, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuchsian::{hecke_group, modular_group};
    use crate::regions::in_i;

    fn pair_rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn samples_lie_in_crossing_region() {
        let cc = ConeConstants::new(3).unwrap();
        let mut rng = pair_rng(1);
        for law in [SamplingLaw::Uniform, SamplingLaw::CrossSection] {
            for _ in 0..10_000 {
                let p = sample_geodesic(&cc, law, 0.3, &mut rng).unwrap();
                assert!(in_i_strict(&cc, &p));
                if law == SamplingLaw::CrossSection {
                    assert!(p.depth() <= 0.3 + 1e-12);
                }
            }
        }
        let a = sample_geodesic(&cc, SamplingLaw::Uniform, 0.3, &mut pair_rng(7)).unwrap();
        let b = sample_geodesic(&cc, SamplingLaw::Uniform, 0.3, &mut pair_rng(7)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn uniform_law_has_uniform_psi() {
        let cc = ConeConstants::new(3).unwrap();
        let mut rng = pair_rng(3);
        let n = 100_000;
        let mut xs: Vec<f64> = (0..n)
            .map(|_| sample_geodesic(&cc, SamplingLaw::Uniform, 0.3, &mut rng).unwrap().psi.finite().unwrap().abs() / cc.a)
            .collect();
        xs.sort_by(f64::total_cmp);
        let ks = xs
            .iter()
            .enumerate()
            .map(|(i, x)| ((i + 1) as f64 / n as f64 - x).max(x - i as f64 / n as f64))
            .fold(0.0, f64::max);
        // 1% critical value of the Kolmogorov distribution
        assert!(ks < 1.63 / (n as f64).sqrt(), "ks = {ks}");
    }

    #[test]
    fn starting_excursion_is_found_at_zero() {
        let model = modular_group();
        let norm = normalize(&model).unwrap();
        let cc = ConeConstants::new(3).unwrap();
        let p = EndpointPair::finite(0.8, -0.9).unwrap();
        assert!(in_i(&cc, &p) && p.depth() < 0.5);
        let cfg = SimConfig::new(0.5, 10.0);
        let run = enumerate_excursions(&model, &norm, &p, 0, &cfg).unwrap();
        let first = run.records[0];
        assert!(first.t_e.abs() < 1e-9);
        assert!((first.depth - p.depth()).abs() < 1e-12);
        assert_eq!(first.coset_key_hash, fnv1a(0, &coset_key(&model, &model.identity).unwrap()));
        assert!(enumerate_excursions(&model, &norm, &EndpointPair::finite(2.0, -0.5).unwrap(), 0, &cfg).is_err());
    }

    #[test]
    fn routes_agree_and_records_are_well_formed() {
        let model = modular_group();
        let norm = normalize(&model).unwrap();
        let cc = ConeConstants::new(3).unwrap();
        let cfg = SimConfig::new(0.5, 60.0);
        let mut rng = pair_rng(11);
        let mut total = 0;
        for id in 0..100 {
            let p = sample_geodesic(&cc, SamplingLaw::Uniform, cfg.r, &mut rng).unwrap();
            let a = enumerate_excursions(&model, &norm, &p, id, &cfg).unwrap();
            let b = enumerate_crossings(&model, &norm, &p, id, &cfg).unwrap();
            assert_eq!(a.records.len(), b.records.len(), "geodesic {id}");
            for (x, y) in a.records.iter().zip(&b.records) {
                assert!((x.t_e - y.t_e).abs() < 1e-7);
                assert!((x.depth - y.depth).abs() < 1e-9);
                assert_eq!(x.coset_key_hash, y.coset_key_hash);
            }
            assert!(a.records.windows(2).all(|w| w[0].t_e < w[1].t_e));
            let keys: HashSet<u64> = a.records.iter().map(|r| r.coset_key_hash).collect();
            assert_eq!(keys.len(), a.records.len());
            for r in &a.records {
                assert!(r.depth <= cfg.r + 1e-12);
                assert!(!r.approximating || r.depth < cc.r_k + 1e-9);
                assert!(r.t_e >= -1e-9 && r.t_e <= cfg.t_max - cfg.margin());
            }
            assert_eq!(a.stats.degenerate, 0);
            total += a.records.len();
        }
        assert!(total > 100);
    }

    #[test]
    fn hecke_routes_agree() {
        for q in [4, 5, 7] {
            let model = hecke_group(q).unwrap();
            let norm = normalize(&model).unwrap();
            let cc = ConeConstants::new(q).unwrap();
            let cfg = SimConfig::new(0.4f64.min(cc.r_k), 40.0);
            let mut rng = pair_rng(q);
            for id in 0..20 {
                let p = sample_geodesic(&cc, SamplingLaw::Uniform, cfg.r, &mut rng).unwrap();
                let a = enumerate_excursions(&model, &norm, &p, id, &cfg).unwrap();
                let b = enumerate_crossings(&model, &norm, &p, id, &cfg).unwrap();
                let ta: Vec<f64> = a.records.iter().map(|r| r.t_e).collect();
                let tb: Vec<f64> = b.records.iter().map(|r| r.t_e).collect();
                assert_eq!(ta.len(), tb.len(), "q={q} geodesic {id}");
                assert!(ta.iter().zip(&tb).all(|(x, y)| (x - y).abs() < 1e-7));
            }
        }
    }

    #[test]
    fn simulation_is_thread_count_independent() {
        let model = modular_group();
        let cfg = SimConfig::new(0.3, 40.0);
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| simulate(&model, &cfg, 16, 5).unwrap())
        };
        let a = run(1);
        let b = run(3);
        assert_eq!(a.records, b.records);
        assert!(a.records.windows(2).all(|w| (w[0].geodesic_id, w[0].t_e) < (w[1].geodesic_id, w[1].t_e)));
    }

    #[test]
    fn rejects_bad_config() {
        let model = modular_group();
        let cc = ConeConstants::new(3).unwrap();
        assert!(SimConfig::new(0.0, 10.0).validate(&cc).is_err());
        assert!(SimConfig::new(0.7, 10.0).validate(&cc).is_err());
        let mut big = SimConfig::new(0.7, 10.0);
        big.allow_large_r = true;
        assert!(big.validate(&cc).is_ok());
        assert!(SimConfig::new(0.3, 0.2).validate(&cc).is_err());
        assert!(simulate(&model, &SimConfig::new(0.3, 10.0), 0, 1).is_err());
    }
}
