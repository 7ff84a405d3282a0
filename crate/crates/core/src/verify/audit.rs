//! Side-by-side table of the closed forms, their published normalization,
//! quadrature and Monte Carlo.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::closed_forms::{self, published, Branch};
use crate::error::{Error, Result};
use crate::regions::{ConeConstants, RegionContext};

use super::monte_carlo::mc_grid;
use super::quadrature::{quad_lambda, quad_lambda_star};

/// Relative tolerance for quadrature against the closed forms.
pub const QUAD_REL_TOL: f64 = 1e-8;
/// Monte Carlo agreement radius in standard errors.
pub const MC_SIGMAS: f64 = 3.0;
/// Fraction of cells that must fall within `MC_SIGMAS`.
pub const MC_PASS_FRACTION: f64 = 0.99;
/// A measured/published ratio farther than this from 1 is flagged.
pub const RATIO_FLAG_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Lambda,
    LambdaStar,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditRow {
    pub quantity: Quantity,
    pub k: u64,
    pub z: f64,
    pub branch: Branch,
    pub published: f64,
    pub closed_form: f64,
    pub quadrature: f64,
    pub quadrature_error: f64,
    pub monte_carlo: f64,
    pub monte_carlo_sigma: f64,
    /// Quadrature divided by the published value; `None` when that is 0.
    pub ratio_to_published: Option<f64>,
    pub differs_from_published: bool,
    pub quadrature_converged: bool,
    pub quadrature_agrees: bool,
    pub monte_carlo_agrees: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditReport {
    pub tol: f64,
    pub samples: u64,
    pub seed: u64,
    pub rows: Vec<AuditRow>,
    pub monte_carlo_pass_fraction: f64,
    /// Quadrature converged and agreed everywhere, and Monte Carlo agreed in
    /// at least [`MC_PASS_FRACTION`] of the cells. Published-value
    /// discrepancies are informational.
    pub passed: bool,
}

pub fn audit_report(ks: &[u64], z_grid: &[f64], tol: f64, samples: u64, seed: u64) -> Result<AuditReport> {
    if ks.is_empty() {
        return Err(Error::Empty("cone orders"));
    }
    if z_grid.is_empty() {
        return Err(Error::Empty("z grid"));
    }
    let mut grid = z_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let mut rows = Vec::new();
    for (ki, &k) in ks.iter().enumerate() {
        let cc = ConeConstants::new(k)?;
        for (qi, quantity) in [Quantity::Lambda, Quantity::LambdaStar].into_iter().enumerate() {
            let ctx = match quantity {
                Quantity::Lambda => RegionContext::Omega,
                Quantity::LambdaStar => RegionContext::OmegaStar,
            };
            let stream_seed = seed.wrapping_add(((ki as u64) << 1) | qi as u64);
            let mc = mc_grid(&cc, ctx, &grid, samples, stream_seed)?;
            for (i, &z) in grid.iter().enumerate() {
                let (cf, printed, quad) = match quantity {
                    Quantity::Lambda => (
                        closed_forms::lambda(&cc, z)?,
                        published::lambda(&cc, z)?,
                        quad_lambda(&cc, z, tol)?,
                    ),
                    Quantity::LambdaStar => (
                        closed_forms::lambda_star(&cc, z)?,
                        published::lambda_star(&cc, z)?,
                        quad_lambda_star(&cc, z, tol)?,
                    ),
                };
                let est = mc.estimates[i];
                let ratio = (printed != 0.0).then(|| quad.value / printed);
                let differs = match ratio {
                    Some(r) => (r - 1.0).abs() > RATIO_FLAG_TOL,
                    None => quad.value.abs() > RATIO_FLAG_TOL,
                };
                rows.push(AuditRow {
                    quantity,
                    k,
                    z,
                    branch: cf.branch,
                    published: printed,
                    closed_form: cf.value,
                    quadrature: quad.value,
                    quadrature_error: quad.abs_error,
                    monte_carlo: est.value,
                    monte_carlo_sigma: est.abs_error,
                    ratio_to_published: ratio,
                    differs_from_published: differs,
                    quadrature_converged: quad.abs_error <= tol,
                    quadrature_agrees: (quad.value - cf.value).abs() <= tol.max(QUAD_REL_TOL * cf.value.abs()),
                    monte_carlo_agrees: (est.value - cf.value).abs() <= MC_SIGMAS * est.abs_error,
                });
            }
        }
    }
    let mc_ok = rows.iter().filter(|r| r.monte_carlo_agrees).count();
    let fraction = mc_ok as f64 / rows.len() as f64;
    let passed = rows.iter().all(|r| r.quadrature_converged && r.quadrature_agrees) && fraction >= MC_PASS_FRACTION;
    Ok(AuditReport { tol, samples, seed, rows, monte_carlo_pass_fraction: fraction, passed })
}

impl AuditReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Model(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<11} {:>3} {:>7} {:<11} {:>12} {:>12} {:>12} {:>12} {:>10} {:>9}  flags",
            "quantity", "k", "z", "branch", "published", "closed", "quadrature", "monte_carlo", "mc_sigma", "ratio"
        );
        for r in &self.rows {
            let name = match r.quantity {
                Quantity::Lambda => "lambda",
                Quantity::LambdaStar => "lambda_star",
            };
            let branch = serde_json::to_value(r.branch).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
            let ratio = r.ratio_to_published.map_or_else(|| "-".to_owned(), |v| format!("{v:.6}"));
            let mut flags = Vec::new();
            if r.differs_from_published {
                flags.push("differs-from-published");
            }
            if !r.quadrature_converged {
                flags.push("quad-unconverged");
            }
            if !r.quadrature_agrees {
                flags.push("quad-mismatch");
            }
            if !r.monte_carlo_agrees {
                flags.push("mc-outside-3sigma");
            }
            let _ = writeln!(
                out,
                "{:<11} {:>3} {:>7.4} {:<11} {:>12.8} {:>12.8} {:>12.8} {:>12.8} {:>10.2e} {:>9}  {}",
                name,
                r.k,
                r.z,
                branch,
                r.published,
                r.closed_form,
                r.quadrature,
                r.monte_carlo,
                r.monte_carlo_sigma,
                ratio,
                flags.join(",")
            );
        }
        let _ = writeln!(
            out,
            "monte carlo within {MC_SIGMAS} sigma: {:.2}% of {} cells; overall: {}",
            100.0 * self.monte_carlo_pass_fraction,
            self.rows.len(),
            if self.passed { "PASS" } else { "FAIL" }
        );
        out
    }
}
