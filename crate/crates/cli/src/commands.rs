use std::fmt::Write as _;
use std::fs;

use anyhow::{Context, Result};
use serde::Serialize;

use cone_excursions::closed_forms::{self, published, Branch};
use cone_excursions::excursion::{self, compare, EmpiricalDistribution, SimConfig};
use cone_excursions::fuchsian::{hecke_group, modular_group, FuchsianModel};
use cone_excursions::regions::ConeConstants;
use cone_excursions::verify::{audit_report, AuditReport};

use crate::grid::parse_grid;
use crate::output::{emit, Header};
use crate::{invalid, AreaArgs, EvalArgs, Failure, Format, OutputArgs, ReportArgs, SimulateArgs, VerifyArgs};

/// Points in the default comparison grids.
const DEFAULT_GRID_POINTS: usize = 51;
const DEFAULT_AREA_POINTS: usize = 21;

fn grid(spec: &str) -> Result<Vec<f64>> {
    let g = parse_grid(spec).map_err(|e| invalid(format!("{e:#}")))?;
    if let Some(z) = g.iter().find(|z| **z < 0.0) {
        return Err(invalid(format!("z grid value {z} is negative")));
    }
    Ok(g)
}

fn linspace(top: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| if i + 1 == n { top } else { top * i as f64 / (n - 1) as f64 }).collect()
}

fn cone(k: u64) -> Result<ConeConstants> {
    ConeConstants::new(k).map_err(invalid)
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

fn format_or(o: &OutputArgs, default: Format, text_ok: bool) -> Result<Format> {
    let f = o.format.unwrap_or(default);
    if f == Format::Text && !text_ok {
        return Err(invalid("text format is only available for verify and report"));
    }
    Ok(f)
}

fn write_table<T: Serialize>(h: &Header, o: &OutputArgs, format: Format, rows: &[T]) -> Result<()> {
    let bytes = match format {
        Format::Json => h.json(&rows)?,
        _ => h.csv(rows)?,
    };
    emit(o.out.as_deref(), &bytes)
}

#[derive(Serialize)]
struct EvalRow {
    z: f64,
    lambda: f64,
    lambda_branch: Branch,
    lambda_star: f64,
    lambda_star_branch: Branch,
    /// Empty for `z > r`.
    dist: Option<f64>,
    /// Empty for `z > r_k`.
    dist_star: Option<f64>,
}

pub fn eval(a: &EvalArgs) -> Result<()> {
    let format = format_or(&a.output, Format::Csv, false)?;
    let cc = cone(a.k)?;
    let r = positive("r", a.r.unwrap_or(cc.r_k))?;
    let z_grid = grid(&a.z_grid)?;
    let rows = z_grid
        .iter()
        .map(|&z| {
            let l = closed_forms::lambda(&cc, z)?;
            let ls = closed_forms::lambda_star(&cc, z)?;
            Ok(EvalRow {
                z,
                lambda: l.value,
                lambda_branch: l.branch,
                lambda_star: ls.value,
                lambda_star_branch: ls.branch,
                dist: (z <= r).then(|| closed_forms::dist(&cc, r, z)).transpose()?,
                dist_star: (z <= cc.r_k).then(|| closed_forms::dist_star(&cc, z)).transpose()?,
            })
        })
        .collect::<cone_excursions::Result<Vec<_>>>()?;
    let mut h = Header::new("eval", a)?;
    h.note("r_used", r)?;
    h.note("r_k", cc.r_k)?;
    h.note("delta_k", cc.delta_floor())?;
    if cc.k == 3 {
        h.note("dist_star", "corrected k=3 formula")?;
    }
    write_table(&h, &a.output, format, &rows)
}

pub fn verify(a: &VerifyArgs) -> Result<()> {
    let format = format_or(&a.output, Format::Text, true)?;
    positive("tol", a.tol)?;
    if a.n == 0 {
        return Err(invalid("--n must be at least 1"));
    }
    let z_grid = grid(&a.z_grid)?;
    for &k in &a.k {
        cone(k)?;
    }
    let report = audit_report(&a.k, &z_grid, a.tol, a.n, a.seed)?;
    let h = Header::new("verify", a)?;
    let bytes = match format {
        Format::Text => report.to_text().into_bytes(),
        Format::Json => h.json(&report)?,
        Format::Csv => h.csv(&report.rows)?,
    };
    emit(a.output.out.as_deref(), &bytes)?;
    let flagged = report.rows.iter().filter(|r| r.differs_from_published).count();
    eprintln!(
        "verify: {} rows, monte carlo pass fraction {:.4}, {} rows differ from the published values, {}",
        report.rows.len(),
        report.monte_carlo_pass_fraction,
        flagged,
        if report.passed { "PASS" } else { "FAIL" }
    );
    if !report.passed {
        let bad = report.rows.iter().filter(|r| !(r.quadrature_converged && r.quadrature_agrees)).count();
        return Err(Failure::Threshold(format!(
            "{bad} rows with quadrature not converged or not agreeing, monte carlo pass fraction {}",
            report.monte_carlo_pass_fraction
        ))
        .into());
    }
    Ok(())
}

fn model_for(group: &str) -> Result<FuchsianModel> {
    let g = group.trim();
    if g == "modular" {
        return Ok(modular_group());
    }
    let q = g
        .strip_prefix("hecke:")
        .and_then(|q| q.parse::<u64>().ok())
        .ok_or_else(|| invalid(format!("group must be `modular` or `hecke:q`, got {group:?}")))?;
    hecke_group(q).map_err(invalid)
}

#[derive(Serialize)]
struct DistRow {
    z: f64,
    empirical: f64,
    theory: f64,
}

#[derive(Serialize)]
struct SimSummary<'a> {
    model: &'a str,
    k: u64,
    records_total: usize,
    compared: usize,
    sup_norm: f64,
    ks: f64,
    max_sup: f64,
    passed: bool,
    max_approximating_depth: Option<f64>,
    stats: excursion::EnumerationStats,
    comparison: &'a excursion::Comparison,
}

pub fn simulate(a: &SimulateArgs) -> Result<()> {
    let format = format_or(&a.output, Format::Csv, false)?;
    let model = model_for(&a.group)?;
    if let Some(k) = a.k {
        if k != model.k {
            return Err(invalid(format!("--k {k} does not match group {} of order {}", model.name, model.k)));
        }
    }
    positive("max-sup", a.max_sup)?;
    if a.geodesics == 0 {
        return Err(invalid("--geodesics must be at least 1"));
    }
    let cc = cone(model.k)?;
    let mut cfg = SimConfig::new(a.r, a.t_max);
    cfg.ring = a.ring;
    cfg.law = a.law.into();
    cfg.validate(&cc).map_err(invalid)?;

    // depth ceiling of the compared law, in the chosen coordinates
    let top = if a.area { closed_forms::area_depth(&cc, a.r)? } else { a.r };
    let z_grid = match &a.z_grid {
        Some(s) => grid(s)?,
        None => linspace(top, DEFAULT_GRID_POINTS),
    };

    let sim = excursion::simulate(&model, &cfg, a.geodesics, a.seed)?;
    let depths = sim.depths(a.approximating);
    let samples: Vec<f64> = if a.area {
        depths.iter().map(|&d| closed_forms::area_depth(&cc, d)).collect::<cone_excursions::Result<_>>()?
    } else {
        depths.clone()
    };
    if samples.len() < a.min_records.max(1) {
        return Err(Failure::Threshold(format!(
            "insufficient records: {} compared of {} total from {} geodesics, need {}",
            samples.len(),
            sim.records.len(),
            a.geodesics,
            a.min_records.max(1)
        ))
        .into());
    }

    let r = a.r;
    let theory = |z: f64| -> f64 {
        let z = z.clamp(0.0, top);
        let v = match (a.approximating, a.area) {
            // approximating excursions of depth at most r, conditioned on that
            (true, false) => closed_forms::dist_star(&cc, z).and_then(|f| Ok(f / closed_forms::dist_star(&cc, r)?)),
            (true, true) => closed_forms::adist_star(&cc, z).and_then(|f| Ok(f / closed_forms::adist_star(&cc, top)?)),
            (false, false) => closed_forms::dist(&cc, r, z),
            (false, true) => closed_forms::adist(&cc, top, z),
        };
        v.unwrap_or(f64::NAN)
    };
    let emp = EmpiricalDistribution::new(&samples, &z_grid)?;
    let cmp = compare(&emp, theory);
    let passed = cmp.ks <= a.max_sup;
    let max_approx = sim.records.iter().filter(|x| x.approximating).map(|x| x.depth).reduce(f64::max);

    let mut h = Header::new("simulate", a)?;
    h.note("model", &model.name)?;
    h.note("cone_order", model.k)?;
    h.note("theory", match (a.approximating, a.area) {
        (true, false) if model.k == 3 => "dist_star (corrected k=3 formula) conditioned on depth <= r",
        (true, false) => "dist_star conditioned on depth <= r",
        (true, true) => "adist_star conditioned on area depth <= R",
        (false, false) => "dist",
        (false, true) => "adist",
    })?;
    h.note("records_total", sim.records.len())?;
    h.note("compared", samples.len())?;
    h.note("sup_norm", cmp.sup_norm)?;
    h.note("ks", cmp.ks)?;
    h.note("passed", passed)?;
    h.note("degenerate", sim.stats.degenerate)?;
    h.note("vertex_events", sim.stats.vertex_events)?;
    if let Some(m) = max_approx {
        h.note("max_approximating_depth", m)?;
    }

    let bytes = match format {
        Format::Json => h.json(&SimSummary {
            model: &model.name,
            k: model.k,
            records_total: sim.records.len(),
            compared: samples.len(),
            sup_norm: cmp.sup_norm,
            ks: cmp.ks,
            max_sup: a.max_sup,
            passed,
            max_approximating_depth: max_approx,
            stats: sim.stats,
            comparison: &cmp,
        })?,
        _ => {
            let rows: Vec<DistRow> = cmp
                .z
                .iter()
                .zip(&cmp.empirical)
                .zip(&cmp.theory)
                .map(|((&z, &empirical), &theory)| DistRow { z, empirical, theory })
                .collect();
            h.csv(&rows)?
        }
    };
    emit(a.output.out.as_deref(), &bytes)?;
    if let Some(path) = &a.records {
        let rh = Header::new("simulate", a)?;
        let bytes = match format {
            Format::Json => rh.json(&sim.records)?,
            _ => rh.csv(&sim.records)?,
        };
        emit(Some(path), &bytes)?;
    }

    eprintln!(
        "simulate: {} records ({} compared) from {} geodesics, sup-norm {:.5} on grid, ks {:.5}, bound {}, {}",
        sim.records.len(),
        samples.len(),
        a.geodesics,
        cmp.sup_norm,
        cmp.ks,
        a.max_sup,
        if passed { "PASS" } else { "FAIL" }
    );
    if !passed {
        return Err(Failure::Threshold(format!("ks distance {} exceeds {}", cmp.ks, a.max_sup)).into());
    }
    Ok(())
}

#[derive(Serialize)]
struct AreaRow {
    z: f64,
    adist: f64,
    adist_composed: f64,
    /// Empty above the area depth of `r_k`.
    adist_star: Option<f64>,
    adist_star_composed: Option<f64>,
    /// `Z/R`, the large-order limit of `adist`.
    limit_adist: f64,
    /// `Z/(2 log 2)`, the large-order limit of `adist_star`.
    limit_adist_star: f64,
}

pub fn area(a: &AreaArgs) -> Result<()> {
    let format = format_or(&a.output, Format::Csv, false)?;
    let cc = cone(a.k)?;
    let big_r = positive("r", a.r)?;
    let z_grid = match &a.z_grid {
        Some(s) => grid(s)?,
        None => linspace(big_r, DEFAULT_AREA_POINTS),
    };
    if let Some(z) = z_grid.iter().find(|z| **z > big_r) {
        return Err(invalid(format!("area depth {z} exceeds R = {big_r}")));
    }
    let top = closed_forms::area_depth(&cc, cc.r_k)?;
    let mut max_gap: f64 = 0.0;
    let mut rows = Vec::with_capacity(z_grid.len());
    for &z in &z_grid {
        let adist = closed_forms::adist(&cc, big_r, z)?;
        let adist_composed = closed_forms::adist_composed(&cc, big_r, z)?;
        let (star, star_composed) = if z <= top {
            (Some(closed_forms::adist_star(&cc, z)?), Some(closed_forms::adist_star_composed(&cc, z)?))
        } else {
            (None, None)
        };
        max_gap = max_gap.max((adist - adist_composed).abs());
        if let (Some(s), Some(c)) = (star, star_composed) {
            max_gap = max_gap.max((s - c).abs());
        }
        rows.push(AreaRow {
            z,
            adist,
            adist_composed,
            adist_star: star,
            adist_star_composed: star_composed,
            limit_adist: z / big_r,
            limit_adist_star: z / (2.0 * 2f64.ln()),
        });
    }
    let mut h = Header::new("area", a)?;
    h.note("area_r_k", top)?;
    h.note("max_discrepancy", max_gap)?;
    write_table(&h, &a.output, format, &rows)
}

#[derive(Serialize)]
struct ConstantsRow {
    k: u64,
    a_k: f64,
    r_k: f64,
    delta_k: f64,
    lambda_at_r_k: f64,
    lambda_star_saturated: f64,
    published_lambda_star_saturated: f64,
    area_at_r_k: f64,
}

fn constants_text(rows: &[ConstantsRow]) -> String {
    let mut out = format!(
        "{:>4} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}\n",
        "k", "a_k", "r_k", "delta_k", "lambda(r_k)", "lambda*_sat", "published", "area(r_k)"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>4} {:>12.8} {:>12.8} {:>12.8} {:>12.8} {:>12.8} {:>12.8} {:>12.8}",
            r.k, r.a_k, r.r_k, r.delta_k, r.lambda_at_r_k, r.lambda_star_saturated, r.published_lambda_star_saturated, r.area_at_r_k
        );
    }
    out
}

pub fn report(a: &ReportArgs) -> Result<()> {
    let format = format_or(&a.output, Format::Text, true)?;
    let h = Header::new("report", a)?;
    if let Some(path) = &a.audit {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        // accept both the wrapped artifact and a bare report
        let data = value.get("data").cloned().unwrap_or(value);
        let report: AuditReport = serde_json::from_value(data).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        let bytes = match format {
            Format::Text => report.to_text().into_bytes(),
            Format::Json => h.json(&report)?,
            Format::Csv => h.csv(&report.rows)?,
        };
        return emit(a.output.out.as_deref(), &bytes);
    }
    let rows = a
        .k
        .iter()
        .map(|&k| {
            let cc = cone(k)?;
            Ok(ConstantsRow {
                k,
                a_k: cc.a,
                r_k: cc.r_k,
                delta_k: cc.delta_k,
                lambda_at_r_k: closed_forms::lambda(&cc, cc.r_k)?.value,
                lambda_star_saturated: closed_forms::lambda_star_saturated(&cc),
                published_lambda_star_saturated: published::lambda_star(&cc, cc.r_k)?,
                area_at_r_k: closed_forms::area_depth(&cc, cc.r_k)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let bytes = match format {
        Format::Text => constants_text(&rows).into_bytes(),
        Format::Json => h.json(&rows)?,
        Format::Csv => h.csv(&rows)?,
    };
    emit(a.output.out.as_deref(), &bytes)
}
