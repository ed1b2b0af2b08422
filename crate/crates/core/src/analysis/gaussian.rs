use std::f64::consts::PI;

use crate::error::{Error, Result};

/// KL-optimal centered Gaussian for `Y = D + W`: i.i.d. coordinates with
/// variance `1 + ρ` (per real coordinate in `R^n`, per complex symbol in `C^n`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianApprox {
    pub variance_per_coordinate: f64,
}

pub fn gaussian_approx(rho: f64) -> Result<GaussianApprox> {
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(Error::domain(
            "gaussian_approx",
            format!("rho = {rho} must be finite and >= 0"),
        ));
    }
    Ok(GaussianApprox {
        variance_per_coordinate: 1.0 + rho,
    })
}

impl GaussianApprox {
    /// `ln N(y; 0, σ² I_n)` at `‖y‖ = y_norm`.
    pub fn ln_density_real(&self, y_norm: f64, n: usize) -> f64 {
        let v = self.variance_per_coordinate;
        -0.5 * n as f64 * (2.0 * PI * v).ln() - 0.5 * y_norm * y_norm / v
    }

    /// `ln CN(y; 0, σ² I_n)` at `‖y‖ = y_norm`.
    pub fn ln_density_complex(&self, y_norm: f64, n: usize) -> f64 {
        let v = self.variance_per_coordinate;
        -(n as f64) * (PI * v).ln() - y_norm * y_norm / v
    }
}
