use rand::Rng;
use rand_distr::StandardNormal;

use super::gaussian::gaussian_approx;
use super::pdf::pdf_y_real;
use crate::channel::sample_real_spherical;
use crate::error::{Error, Result};
use crate::parallel::map_chunks;
use crate::rng::substream;

/// Monte-Carlo estimate of a KL divergence in nats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KlEstimate {
    pub nats: f64,
    pub std_error: f64,
    pub samples: u64,
}

/// Streaming mean/variance accumulator, merged in chunk order.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2 + other.m2 + delta * delta * (self.count as f64 * other.count as f64) / count as f64;
        Moments { count, mean, m2 }
    }
}

/// `D(p_Y ‖ p_Q)` for the real-space model, averaged over draws of
/// `Y = D + W` with `D` uniform on the sphere of radius `√(nρ)` in `R^n` and
/// `p_Q = N(0, (1+ρ) I_n)`.
///
/// Sample `i` uses substream `(seed, i)`; `threads` only affects speed.
pub fn kl_divergence(n: usize, rho: f64, samples: u64, seed: u64, threads: Option<usize>) -> Result<KlEstimate> {
    if n == 0 {
        return Err(Error::invalid("n", "dimension must be at least 1"));
    }
    if samples == 0 {
        return Err(Error::invalid("samples", "must be at least 1"));
    }
    let approx = gaussian_approx(rho)?;
    if rho == 0.0 {
        return Ok(KlEstimate {
            nats: 0.0,
            std_error: 0.0,
            samples,
        });
    }
    let parts = map_chunks(samples, threads, |range| -> Result<Moments> {
        let mut acc = Moments::default();
        for i in range {
            let mut rng = substream(seed, i);
            let d = sample_real_spherical(n, rho, &mut rng);
            let norm2: f64 = d
                .iter()
                .map(|x| {
                    let w: f64 = rng.sample(StandardNormal);
                    (x + w) * (x + w)
                })
                .sum();
            let r = norm2.sqrt();
            let ln_p = pdf_y_real(r, n, rho)?.ln_abs();
            acc.push(ln_p - approx.ln_density_real(r, n));
        }
        Ok(acc)
    })?;
    let mut total = Moments::default();
    for part in parts {
        total = total.merge(part?);
    }
    let variance = if total.count > 1 {
        total.m2 / (total.count - 1) as f64
    } else {
        0.0
    };
    Ok(KlEstimate {
        nats: total.mean,
        std_error: (variance / total.count as f64).sqrt(),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rho_is_exact() {
        let e = kl_divergence(8, 0.0, 10, 1, None).unwrap();
        assert_eq!(e.nats, 0.0);
    }

    #[test]
    fn tiny_rho_is_near_zero() {
        let e = kl_divergence(4, 1e-3, 20_000, 3, None).unwrap();
        assert!(e.nats.abs() < 1e-5 + 3.0 * e.std_error, "{e:?}");
    }

    #[test]
    fn rejects_zero_samples() {
        assert!(kl_divergence(4, 1.0, 0, 3, None).is_err());
        assert!(kl_divergence(0, 1.0, 5, 3, None).is_err());
    }

    #[test]
    fn moments_merge_matches_sequential() {
        let xs: Vec<f64> = (0..100).map(|i| (i as f64 * 0.37).sin()).collect();
        let mut seq = Moments::default();
        xs.iter().for_each(|&x| seq.push(x));
        let mut a = Moments::default();
        let mut b = Moments::default();
        xs[..37].iter().for_each(|&x| a.push(x));
        xs[37..].iter().for_each(|&x| b.push(x));
        let m = a.merge(b);
        assert!((m.mean - seq.mean).abs() < 1e-14);
        assert!((m.m2 - seq.m2).abs() < 1e-12);
    }
}
