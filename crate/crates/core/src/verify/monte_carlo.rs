//! Monte Carlo estimates of the region masses that use only the region and
//! depth predicates.
//!
//! Both endpoints are drawn as points of the unit circle, `e^{iα}` and
//! `e^{iβ}`, and sent to the real line by the Cayley map. In these angles the
//! measure `dψ dζ/(ψ − ζ)²` becomes `dα dβ / |e^{iα} − e^{iβ}|²`, and a
//! geodesic at depth `D` from the center has chord length `2 sech D`, so the
//! weight is bounded on every sublevel set and the estimator has finite
//! variance. `α` is restricted to the arc whose image is `(−a_k, a_k)`.
//!
//! Work is split into a fixed number of shards, each with its own ChaCha
//! stream (`seed`, stream = shard index), and reduced in shard order, so the
//! result does not depend on the thread count.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::hyperbolic::disc::{boundary_to_disc, cayley_boundary};
use crate::hyperbolic::Boundary;
use crate::regions::{in_i, in_j, ConeConstants, EndpointPair, RegionContext};

use super::{IntegralEstimate, Method};

pub const MIN_SAMPLES: u64 = 10_000;
pub const SHARDS: u64 = 64;

/// Per-grid-point accumulators: `Σw` and `Σw²` over samples with depth ≤ z.
#[derive(Debug, Clone, Default)]
struct Sums {
    w: Vec<f64>,
    w2: Vec<f64>,
}

impl Sums {
    fn new(len: usize) -> Self {
        Sums { w: vec![0.0; len], w2: vec![0.0; len] }
    }

    fn add(&mut self, other: &Sums) {
        for (a, b) in self.w.iter_mut().zip(&other.w) {
            *a += b;
        }
        for (a, b) in self.w2.iter_mut().zip(&other.w2) {
            *a += b;
        }
    }
}

/// Estimates of the region mass on a grid of depth cutoffs, plus the mass of
/// the whole region, all from one set of samples.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct McGrid {
    pub context: RegionContext,
    pub z: Vec<f64>,
    pub estimates: Vec<IntegralEstimate>,
    /// Mass of the full region (`I` or `J`).
    pub total: IntegralEstimate,
    /// `mass(z) / total` with delta-method standard errors.
    pub ratios: Vec<(f64, f64)>,
}

fn in_region(cc: &ConeConstants, ctx: RegionContext, p: &EndpointPair) -> bool {
    match ctx {
        RegionContext::Omega => in_i(cc, p),
        RegionContext::OmegaStar => in_j(cc, p),
    }
}

fn shard_sizes(n: u64) -> Vec<u64> {
    (0..SHARDS).map(|s| n / SHARDS + u64::from(s < n % SHARDS)).collect()
}

/// One-pass Monte Carlo over a sorted grid of cutoffs.
pub fn mc_grid(
    cc: &ConeConstants,
    ctx: RegionContext,
    z_grid: &[f64],
    n: u64,
    seed: u64,
) -> Result<McGrid> {
    if n < MIN_SAMPLES {
        return Err(domain("sample count", n as f64));
    }
    if z_grid.is_empty() {
        return Err(Error::Empty("z grid"));
    }
    if z_grid.iter().any(|z| !(*z >= 0.0)) || z_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(domain("z grid (must be sorted and nonnegative)", f64::NAN));
    }
    let half_arc = 2.0 * cc.angle();
    let weight_scale = (2.0 * half_arc) * std::f64::consts::TAU;
    let len = z_grid.len() + 1;

    let shards: Vec<Sums> = shard_sizes(n)
        .into_par_iter()
        .enumerate()
        .map(|(shard, count)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard as u64);
            // bucket j < grid len: first grid index with depth ≤ z; last: region only
            let mut buckets = Sums::new(len);
            for _ in 0..count {
                let alpha = rng.gen_range(-half_arc..half_arc);
                let beta = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
                let u = Complex64::from_polar(1.0, alpha);
                let v = Complex64::from_polar(1.0, beta);
                let (Ok(psi), Ok(zeta)) = (cayley_boundary(u), cayley_boundary(v)) else {
                    continue;
                };
                let Ok(p) = EndpointPair::new(psi, zeta) else { continue };
                if !in_region(cc, ctx, &p) {
                    continue;
                }
                let chord2 = (u - v).norm_sqr();
                let w = weight_scale / chord2;
                let d = p.depth();
                let j = z_grid.partition_point(|z| *z < d);
                buckets.w[j] += w;
                buckets.w2[j] += w * w;
            }
            buckets
        })
        .collect();

    let mut sums = Sums::new(len);
    for s in &shards {
        sums.add(s);
    }
    // cumulative: mass with depth ≤ z_i is the sum of buckets 0..=i
    let nf = n as f64;
    let estimate = |w: f64, w2: f64| {
        let mean = w / nf;
        let var = (w2 / nf - mean * mean).max(0.0);
        IntegralEstimate {
            value: mean,
            abs_error: (var / nf).sqrt(),
            n_evals: n,
            method: Method::MonteCarlo,
        }
    };
    let mut cw = 0.0;
    let mut cw2 = 0.0;
    let mut estimates = Vec::with_capacity(z_grid.len());
    let mut cum = Vec::with_capacity(z_grid.len());
    for i in 0..z_grid.len() {
        cw += sums.w[i];
        cw2 += sums.w2[i];
        estimates.push(estimate(cw, cw2));
        cum.push((cw, cw2));
    }
    let tw = cw + sums.w[len - 1];
    let tw2 = cw2 + sums.w2[len - 1];
    let total = estimate(tw, tw2);
    let ratios = cum
        .iter()
        .map(|&(w, w2)| {
            if tw == 0.0 {
                return (0.0, 0.0);
            }
            let r = w / tw;
            // Var of w·(1_z − r) per sample, with 1_z ⊂ region
            let m2 = (w2 * (1.0 - 2.0 * r) + r * r * tw2) / nf;
            let mean_x = tw / nf;
            (r, (m2 / nf).sqrt() / mean_x)
        })
        .collect();
    Ok(McGrid { context: ctx, z: z_grid.to_vec(), estimates, total, ratios })
}

/// Monte Carlo estimate of `Λ(z)`.
pub fn mc_lambda(cc: &ConeConstants, z: f64, n: u64, seed: u64) -> Result<IntegralEstimate> {
    if !(z >= 0.0) {
        return Err(domain("z", z));
    }
    Ok(mc_grid(cc, RegionContext::Omega, &[z], n, seed)?.estimates[0])
}

/// Monte Carlo estimate of `Λ*(z)`.
pub fn mc_lambda_star(cc: &ConeConstants, z: f64, n: u64, seed: u64) -> Result<IntegralEstimate> {
    if !(z >= 0.0) {
        return Err(domain("z", z));
    }
    Ok(mc_grid(cc, RegionContext::OmegaStar, &[z], n, seed)?.estimates[0])
}

/// The sampling map from angles to endpoints, exposed for checks.
pub fn chord_endpoints(alpha: f64, beta: f64) -> Result<(Boundary, Boundary)> {
    Ok((
        cayley_boundary(Complex64::from_polar(1.0, alpha))?,
        cayley_boundary(Complex64::from_polar(1.0, beta))?,
    ))
}

/// Euclidean chord between two boundary points, through the disc model.
pub fn chord_length(x: Boundary, y: Boundary) -> f64 {
    (boundary_to_disc(x) - boundary_to_disc(y)).norm()
}
