use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::{log_bessel_i, log_gamma, LogValue};

fn check(function: &'static str, y_norm: f64, n: usize, rho: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::domain(function, "dimension n must be at least 1"));
    }
    if !(y_norm.is_finite() && y_norm >= 0.0) {
        return Err(Error::domain(
            function,
            format!("‖y‖ = {y_norm} must be finite and >= 0"),
        ));
    }
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(Error::domain(function, format!("rho = {rho} must be finite and >= 0")));
    }
    Ok(())
}

/// Density of `Y = D + W` in `R^n` at any point with `‖y‖ = y_norm`, where `D`
/// is uniform on the sphere of radius `√(nρ)` and `W ~ N(0, I_n)`.
///
/// `rho = 0` gives the standard normal density.
pub fn pdf_y_real(y_norm: f64, n: usize, rho: f64) -> Result<LogValue> {
    check("pdf_y_real", y_norm, n, rho)?;
    let nf = n as f64;
    let half_n = 0.5 * nf;
    if rho == 0.0 {
        return Ok(LogValue::from_ln(-half_n * (2.0 * PI).ln() - 0.5 * y_norm * y_norm));
    }
    let n_rho = nf * rho;
    if y_norm == 0.0 {
        // ‖y‖^{1-n/2} I_{n/2-1}(‖y‖√(nρ)) → (√(nρ)/2)^{n/2-1} / Γ(n/2)
        return Ok(LogValue::from_ln(-half_n * (2.0 * PI).ln() - 0.5 * n_rho));
    }
    let bessel = log_bessel_i(half_n - 1.0, y_norm * n_rho.sqrt())?;
    let ln = log_gamma(half_n)? - 2f64.ln() - half_n * PI.ln()
        + (0.5 - 0.25 * nf) * n_rho.ln()
        + (1.0 - half_n) * y_norm.ln()
        - 0.5 * (y_norm * y_norm + n_rho)
        + bessel.ln_abs();
    Ok(LogValue::from_ln(ln))
}

/// Complex-space counterpart of [`pdf_y_real`]: `D` uniform on the complex
/// sphere of radius `√(nρ)` in `C^n`, `W ~ CN(0, I_n)`.
pub fn pdf_y_complex(y_norm: f64, n: usize, rho: f64) -> Result<LogValue> {
    check("pdf_y_complex", y_norm, n, rho)?;
    let nf = n as f64;
    if rho == 0.0 {
        return Ok(LogValue::from_ln(-nf * PI.ln() - y_norm * y_norm));
    }
    let n_rho = nf * rho;
    if y_norm == 0.0 {
        return Ok(LogValue::from_ln(-nf * PI.ln() - n_rho));
    }
    let bessel = log_bessel_i(nf - 1.0, 2.0 * y_norm * n_rho.sqrt())?;
    let ln = log_gamma(nf)? - nf * PI.ln() + 0.5 * (1.0 - nf) * n_rho.ln() + (1.0 - nf) * y_norm.ln()
        - (y_norm * y_norm + n_rho)
        + bessel.ln_abs();
    Ok(LogValue::from_ln(ln))
}
