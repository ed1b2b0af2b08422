use crate::specfun::ln_q;

const LOG2_E: f64 = std::f64::consts::LOG2_E;

/// `C(ρ) = log₂(1 + ρ)` bits per complex channel use.
pub fn channel_capacity(rho: f64) -> f64 {
    rho.ln_1p() * LOG2_E
}

/// `V(ρ) = log₂²(e) ρ(ρ+2)/(ρ+1)²` bits² per complex channel use.
pub fn channel_dispersion(rho: f64) -> f64 {
    LOG2_E * LOG2_E * rho * (rho + 2.0) / ((rho + 1.0) * (rho + 1.0))
}

/// Log of the normal-approximation packet error `ε*(n, k, ρ)`.
///
/// At `ρ = 0` the dispersion vanishes and the sign of the numerator decides:
/// 1 if `k > ½log₂(2n)`, ½ on equality, 0 otherwise.
pub fn ln_epsilon_star(n: usize, k: usize, rho: f64) -> f64 {
    let nf = n as f64;
    let numerator = nf * channel_capacity(rho) - k as f64 + 0.5 * (2.0 * nf).log2();
    let dispersion = channel_dispersion(rho);
    if dispersion <= 0.0 {
        return if numerator < 0.0 {
            0.0
        } else if numerator == 0.0 {
            0.5f64.ln()
        } else {
            f64::NEG_INFINITY
        };
    }
    ln_q(numerator / (nf * dispersion).sqrt())
}

pub fn epsilon_star(n: usize, k: usize, rho: f64) -> f64 {
    super::to_probability(ln_epsilon_star(n, k, rho))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(channel_capacity(0.0), 0.0);
        assert_eq!(channel_dispersion(0.0), 0.0);
        assert!((channel_capacity(1.0) - 1.0).abs() < 1e-15);
        assert!((channel_dispersion(1e12) - LOG2_E * LOG2_E).abs() < 1e-9);
        assert!((LOG2_E * LOG2_E - 2.0814).abs() < 1e-4);
    }

    #[test]
    fn zero_snr_rule() {
        // ½log₂(2n) = 3 at n = 32
        assert_eq!(epsilon_star(32, 4, 0.0), 1.0);
        assert_eq!(epsilon_star(32, 3, 0.0), 0.5);
        assert_eq!(epsilon_star(32, 2, 0.0), 0.0);
    }

    #[test]
    fn half_at_zero_argument() {
        // n = 2, ρ = 1: nC - k + ½log₂4 = 2 - k + 1 = 0 at k = 3
        assert!((epsilon_star(2, 3, 1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn monotone() {
        let mut prev = 1.0;
        for i in 1..200 {
            let rho = i as f64 * 0.02;
            let e = epsilon_star(63, 32, rho);
            assert!(e <= prev);
            prev = e;
        }
        for k in 1..60 {
            assert!(epsilon_star(63, k, 1.5) <= epsilon_star(63, k + 1, 1.5));
        }
    }
}
