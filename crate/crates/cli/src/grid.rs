//! Parsing of `--z-grid` values: `start:step:end` (inclusive) or a comma list.

use anyhow::{bail, Context, Result};

/// Slack when deciding whether `end` is reached by the last step.
const STEP_SLACK: f64 = 1e-9;
const MAX_POINTS: usize = 1_000_000;

pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let spec = spec.trim();
    if spec.is_empty() {
        bail!("z grid is empty");
    }
    let grid = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            bail!("range grid must be start:step:end, got {spec:?}");
        }
        let num = |s: &str| s.trim().parse::<f64>().with_context(|| format!("bad number {s:?} in z grid"));
        let (start, step, end) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(step > 0.0 && step.is_finite() && start.is_finite() && end.is_finite()) {
            bail!("range grid needs finite bounds and a positive step, got {spec:?}");
        }
        if end < start {
            bail!("z grid is empty: end {end} is below start {start}");
        }
        let n = ((end - start) / step + STEP_SLACK).floor() as usize + 1;
        if n > MAX_POINTS {
            bail!("z grid has {n} points, more than {MAX_POINTS}");
        }
        // multiply rather than accumulate, and land exactly on `end` when it is hit
        (0..n)
            .map(|i| if i + 1 == n && (start + i as f64 * step - end).abs() < STEP_SLACK * step { end } else { start + i as f64 * step })
            .collect()
    } else {
        spec.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<f64>().with_context(|| format!("bad number {s:?} in z grid")))
            .collect::<Result<Vec<_>>>()?
    };
    if grid.is_empty() {
        bail!("z grid is empty");
    }
    if let Some(z) = grid.iter().find(|z| !z.is_finite()) {
        bail!("z grid value {z} is not finite");
    }
    if grid.windows(2).any(|w| w[0] > w[1]) {
        bail!("z grid must be nondecreasing");
    }
    Ok(grid)
}
