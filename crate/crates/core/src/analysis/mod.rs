//! Closed-form results: received-signal densities, the KL-optimal Gaussian
//! approximation, pairwise and union sync-error bounds, the finite-blocklength
//! decoding error and the overhead optimizer.

mod bound;
mod fbl;
mod gaussian;
mod kl;
mod optimize;
mod pdf;

pub use bound::{
    frame_error_upper, frame_error_upper_at, ln_pairwise_sync_error, ln_union_bound, pairwise_sync_error, union_bound,
    BoundReport, SyncModel,
};
pub use fbl::{channel_capacity, channel_dispersion, epsilon_star, ln_epsilon_star};
pub use gaussian::{gaussian_approx, GaussianApprox};
pub use kl::{kl_divergence, KlEstimate};
pub use optimize::{golden_section, grid_scan, optimize_alpha, optimize_alpha_with, AlphaOptimum};
pub use pdf::{pdf_y_complex, pdf_y_real};

/// Smallest nonzero probability exposed in linear reports.
pub const PROBABILITY_FLOOR: f64 = 1e-300;

/// Exponentiates a log-probability, flooring underflow at [`PROBABILITY_FLOOR`].
/// An exact zero (`-inf`) stays zero.
pub fn to_probability(ln_p: f64) -> f64 {
    if ln_p == f64::NEG_INFINITY {
        0.0
    } else {
        ln_p.exp().clamp(PROBABILITY_FLOOR, 1.0)
    }
}

/// `ln(e^a + e^b)` without overflow.
pub(crate) fn ln_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_and_zero() {
        assert_eq!(to_probability(f64::NEG_INFINITY), 0.0);
        assert_eq!(to_probability(-1e4), PROBABILITY_FLOOR);
        assert_eq!(to_probability(0.0), 1.0);
        assert!((ln_add(2f64.ln(), 3f64.ln()) - 5f64.ln()).abs() < 1e-15);
        assert_eq!(ln_add(f64::NEG_INFINITY, -3.0), -3.0);
    }
}
