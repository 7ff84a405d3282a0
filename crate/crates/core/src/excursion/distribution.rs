//! Empirical depth distributions and their distance to a limiting CDF.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalDistribution {
    pub z_grid: Vec<f64>,
    /// Fraction of samples with depth ≤ z, per grid point.
    pub cdf: Vec<f64>,
    pub n: usize,
    /// The pooled samples, sorted.
    #[serde(skip)]
    sorted: Vec<f64>,
}

impl EmpiricalDistribution {
    pub fn new(samples: &[f64], z_grid: &[f64]) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Empty("depth samples"));
        }
        if z_grid.is_empty() {
            return Err(Error::Empty("z grid"));
        }
        if let Some(bad) = samples.iter().find(|v| !v.is_finite()) {
            return Err(domain("depth sample", *bad));
        }
        if z_grid.windows(2).any(|w| !(w[0] <= w[1])) {
            return Err(domain("z grid (must be sorted)", f64::NAN));
        }
        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        let cdf = z_grid
            .iter()
            .map(|z| sorted.partition_point(|v| v <= z) as f64 / n as f64)
            .collect();
        Ok(EmpiricalDistribution { z_grid: z_grid.to_vec(), cdf, n, sorted })
    }

    /// Empirical CDF at an arbitrary `z`.
    pub fn eval(&self, z: f64) -> f64 {
        self.sorted.partition_point(|v| *v <= z) as f64 / self.n as f64
    }

    /// Kolmogorov distance to a continuous CDF: the sup over all `z`, not
    /// just the grid.
    pub fn ks_distance<F: Fn(f64) -> f64>(&self, cdf: F) -> f64 {
        let n = self.n as f64;
        self.sorted
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = cdf(x);
                ((i + 1) as f64 / n - f).max(f - i as f64 / n)
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub z: Vec<f64>,
    pub empirical: Vec<f64>,
    pub theory: Vec<f64>,
    /// Largest pointwise gap on the grid.
    pub sup_norm: f64,
    /// Largest gap over all `z`.
    pub ks: f64,
    pub n: usize,
}

pub fn compare<F: Fn(f64) -> f64>(emp: &EmpiricalDistribution, theory: F) -> Comparison {
    let th: Vec<f64> = emp.z_grid.iter().map(|z| theory(*z)).collect();
    let sup_norm = emp.cdf.iter().zip(&th).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Comparison {
        z: emp.z_grid.clone(),
        empirical: emp.cdf.clone(),
        ks: if emp.sorted.is_empty() { sup_norm } else { emp.ks_distance(&theory) },
        theory: th,
        sup_norm,
        n: emp.n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_function() {
        let e = EmpiricalDistribution::new(&[0.2], &[0.0, 0.1, 0.2, 0.3]).unwrap();
        assert_eq!(e.cdf, vec![0.0, 0.0, 1.0, 1.0]);
        assert_eq!(e.eval(0.19), 0.0);
        assert!(EmpiricalDistribution::new(&[], &[0.1]).is_err());
    }

    #[test]
    fn comparisons() {
        let samples: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        let e = EmpiricalDistribution::new(&samples, &grid).unwrap();
        assert_eq!(*e.cdf.last().unwrap(), 1.0);
        let c = compare(&e, |z| z);
        assert!(c.sup_norm < 1e-12);
        assert!((c.ks - 0.0005).abs() < 1e-12);
        let zero = compare(&e, |_| 0.0);
        assert_eq!(zero.sup_norm, 1.0);
        assert!(e.cdf.windows(2).all(|w| w[0] <= w[1]));
    }
}
