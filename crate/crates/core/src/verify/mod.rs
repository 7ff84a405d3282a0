//! Independent numerical checks of the region masses.

pub mod audit;
pub mod monte_carlo;
pub mod quadrature;

use serde::{Deserialize, Serialize};

pub use audit::{audit_report, AuditReport, AuditRow, Quantity};
pub use monte_carlo::{mc_grid, mc_lambda, mc_lambda_star, McGrid};
pub use quadrature::{quad_lambda, quad_lambda_star};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Quadrature,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralEstimate {
    pub value: f64,
    /// Quadrature error bound, or Monte Carlo standard error.
    pub abs_error: f64,
    pub n_evals: u64,
    pub method: Method,
}

impl IntegralEstimate {
    pub(crate) fn exact_zero(method: Method) -> Self {
        IntegralEstimate { value: 0.0, abs_error: 0.0, n_evals: 0, method }
    }
}
