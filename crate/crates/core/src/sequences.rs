//! Synchronization words, circular shifts and the correlation decision metric.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A known sequence superimposed on the data symbols of every frame.
#[derive(Debug, Clone, PartialEq)]
pub struct SyncWord {
    symbols: Vec<Complex64>,
    rho_s: f64,
}

impl SyncWord {
    /// Wraps raw symbols; the per-symbol energy is measured from them.
    pub fn new(symbols: Vec<Complex64>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::invalid("symbols", "a sync word needs at least one symbol"));
        }
        let rho_s = energy(&symbols) / symbols.len() as f64;
        Ok(SyncWord { symbols, rho_s })
    }

    /// All-zero word of length `n` (no synchronization power).
    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(0.0, 0.0); n])
    }

    pub fn symbols(&self) -> &[Complex64] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Average energy per symbol.
    pub fn rho_s(&self) -> f64 {
        self.rho_s
    }

    /// `‖s‖²`.
    pub fn energy(&self) -> f64 {
        energy(&self.symbols)
    }

    /// Rescales the word so that `‖s‖² = n · rho_s`, keeping each symbol's phase.
    pub fn scale_to_energy(&self, rho_s: f64) -> Result<SyncWord> {
        if !(rho_s.is_finite() && rho_s >= 0.0) {
            return Err(Error::invalid("rho_s", format!("{rho_s} is not a finite energy")));
        }
        let n = self.len() as f64;
        if rho_s == 0.0 {
            return Ok(SyncWord {
                symbols: vec![Complex64::new(0.0, 0.0); self.len()],
                rho_s: 0.0,
            });
        }
        let current = self.energy();
        if current == 0.0 {
            return Err(Error::invalid(
                "word",
                "cannot scale a zero-energy word to positive energy",
            ));
        }
        let gain = (n * rho_s / current).sqrt();
        Ok(SyncWord {
            symbols: self.symbols.iter().map(|s| s * gain).collect(),
            rho_s,
        })
    }

    /// Right circular shift: `out[i] = s[(i - tau) mod n]`.
    pub fn circular_shift(&self, tau: i64) -> SyncWord {
        let n = self.len();
        let r = reduce_shift(tau, n);
        let mut symbols = self.symbols.clone();
        symbols.rotate_right(r);
        SyncWord {
            symbols,
            rho_s: self.rho_s,
        }
    }

    /// Symbol `i` of the word shifted right by `tau`.
    #[inline]
    pub(crate) fn shifted_symbol(&self, i: usize, tau: usize) -> Complex64 {
        let n = self.len();
        self.symbols[(i + n - tau) % n]
    }
}

/// Reduces an arbitrary integer shift into `[0, n)`.
pub fn reduce_shift(tau: i64, n: usize) -> usize {
    tau.rem_euclid(n as i64) as usize
}

fn energy(symbols: &[Complex64]) -> f64 {
    symbols.iter().map(|s| s.norm_sqr()).sum()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Zadoff-Chu word of odd length `n`: `s_k = exp(-jπ u k(k+1) / n)`, unit energy per symbol.
pub fn zadoff_chu(n: usize, root: i64) -> Result<SyncWord> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::invalid("n", format!("Zadoff-Chu length must be odd, got {n}")));
    }
    let modulus = 2 * n as i128;
    let u = i128::from(root).rem_euclid(n as i128);
    if gcd(u as u64, n as u64) != 1 {
        return Err(Error::invalid(
            "root",
            format!("root {root} is not coprime to length {n}"),
        ));
    }
    // exponent reduced mod 2n keeps the phase exact for long words
    let root = i128::from(root).rem_euclid(modulus);
    let symbols = (0..n as i128)
        .map(|k| {
            let e = (root * k % modulus) * (k + 1) % modulus;
            let phase = -std::f64::consts::PI * e as f64 / n as f64;
            Complex64::from_polar(1.0, phase)
        })
        .collect();
    SyncWord::new(symbols)
}

/// Correlation rule `f(z, τ) = Re{s_τ^H z}`.
pub fn correlation_metric(z: &[Complex64], word: &SyncWord, tau: i64) -> Result<f64> {
    if z.len() != word.len() {
        return Err(Error::DimensionMismatch {
            expected: word.len(),
            actual: z.len(),
        });
    }
    let tau = reduce_shift(tau, word.len());
    Ok(z.iter()
        .enumerate()
        .map(|(i, zi)| (word.shifted_symbol(i, tau).conj() * zi).re)
        .sum())
}

/// `(Re{s_τ^H s_μ}, ‖s_μ - s_τ‖²)` for the pairwise error expression.
pub fn cross_shift_correlation(word: &SyncWord, mu: i64, tau: i64) -> (f64, f64) {
    let n = word.len();
    let mu = reduce_shift(mu, n);
    let tau = reduce_shift(tau, n);
    let mut inner = 0.0;
    let mut distance = 0.0;
    for i in 0..n {
        let a = word.shifted_symbol(i, mu);
        let b = word.shifted_symbol(i, tau);
        inner += (b.conj() * a).re;
        distance += (a - b).norm_sqr();
    }
    (inner, distance)
}
