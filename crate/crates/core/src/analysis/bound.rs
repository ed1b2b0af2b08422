use super::fbl::ln_epsilon_star;
use super::{ln_add, to_probability};
use crate::channel::FrameConfig;
use crate::error::{Error, Result};
use crate::sequences::{cross_shift_correlation, reduce_shift, SyncWord};
use crate::specfun::ln_q;

/// Log of the Gaussian-approximated pairwise error
/// `Pr{f(Z,μ) ≤ f(Z,τ)} ≈ Q((‖s‖² - Re{s_τ^H s_μ}) / √((1+ρ)/2 ‖s_μ - s_τ‖²))`.
///
/// `word` carries its actual energy and `rho` is the data energy per symbol.
/// Indistinguishable shifts (`s_μ = s_τ`, including the zero word) give ½.
pub fn ln_pairwise_sync_error(word: &SyncWord, mu: i64, tau: i64, rho: f64) -> Result<f64> {
    let n = word.len();
    if reduce_shift(mu, n) == reduce_shift(tau, n) {
        return Err(Error::invalid("tau", "pairwise error is undefined for tau == mu"));
    }
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(Error::invalid("rho", format!("{rho} is not a finite energy")));
    }
    let (inner, distance) = cross_shift_correlation(word, mu, tau);
    if distance == 0.0 {
        return Ok(0.5f64.ln());
    }
    let numerator = word.energy() - inner;
    Ok(ln_q(numerator / (0.5 * (1.0 + rho) * distance).sqrt()))
}

pub fn pairwise_sync_error(word: &SyncWord, mu: i64, tau: i64, rho: f64) -> Result<f64> {
    ln_pairwise_sync_error(word, mu, tau, rho).map(to_probability)
}

/// Log of `min(1, Σ_{τ≠μ} P_e(τ))`.
pub fn ln_union_bound(word: &SyncWord, mu: i64, rho: f64) -> Result<f64> {
    let n = word.len();
    let mu = reduce_shift(mu, n) as i64;
    let mut total = f64::NEG_INFINITY;
    for tau in 0..n as i64 {
        if tau != mu {
            total = ln_add(total, ln_pairwise_sync_error(word, mu, tau, rho)?);
        }
    }
    Ok(total.min(0.0))
}

pub fn union_bound(word: &SyncWord, mu: i64, rho: f64) -> Result<f64> {
    ln_union_bound(word, mu, rho).map(to_probability)
}

/// Which sync word the frame bound is evaluated for.
#[derive(Debug, Clone, PartialEq)]
pub enum SyncModel {
    /// A concrete word, given up to scale; it is rescaled to `α ρ_tot`.
    Word(SyncWord),
    /// Any word with ideal periodic autocorrelation (Zadoff-Chu), in closed form.
    IdealZc,
}

/// Sync-error and decoding-error terms of the frame-error bound for one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub mu: usize,
    /// `(τ, P_e(τ))` for every `τ ≠ μ`.
    pub pairwise_terms: Vec<(usize, f64)>,
    pub p_e_union: f64,
    pub epsilon_star: f64,
    pub p_f_upper: f64,
    pub ln_p_e_union: f64,
    pub ln_epsilon_star: f64,
    pub ln_p_f_upper: f64,
}

/// `ln(1 - (1 - P)(1 - ε))` from the logs of both terms.
pub(crate) fn ln_combine(ln_pe: f64, ln_eps: f64) -> f64 {
    if ln_pe >= 0.0 || ln_eps >= 0.0 {
        return 0.0;
    }
    // P + ε(1 - P)
    ln_add(ln_pe, ln_eps + (-ln_pe.exp()).ln_1p()).min(0.0)
}

/// Log of the frame-error upper bound `P_{f,u}` for the ideal-autocorrelation
/// word; no per-shift terms are materialised.
pub(crate) fn ln_frame_error_ideal(config: &FrameConfig) -> (f64, f64, f64, f64) {
    let n = config.n as f64;
    let ln_term = ln_q((n * config.rho_s() / (1.0 + config.rho())).sqrt());
    let ln_pe = if config.n > 1 {
        ((n - 1.0).ln() + ln_term).min(0.0)
    } else {
        f64::NEG_INFINITY
    };
    let ln_eps = ln_epsilon_star(config.n, config.k, config.rho());
    (ln_term, ln_pe, ln_eps, ln_combine(ln_pe, ln_eps))
}

/// [`frame_error_upper_at`] with the frame starting at offset 0.
pub fn frame_error_upper(config: &FrameConfig, model: &SyncModel) -> Result<BoundReport> {
    frame_error_upper_at(config, model, 0)
}

/// `P_{f,u} = 1 - (1 - P_{e,u})(1 - ε*)` with the sync word at offset `mu`.
pub fn frame_error_upper_at(config: &FrameConfig, model: &SyncModel, mu: usize) -> Result<BoundReport> {
    let n = config.n;
    if mu >= n {
        return Err(Error::invalid("mu", format!("offset {mu} is outside [0, {n})")));
    }
    let (pairwise_terms, ln_pe, ln_eps, ln_pf) = match model {
        SyncModel::IdealZc => {
            let (ln_term, ln_pe, ln_eps, ln_pf) = ln_frame_error_ideal(config);
            let term = to_probability(ln_term);
            let terms = (0..n).filter(|&t| t != mu).map(|t| (t, term)).collect();
            (terms, ln_pe, ln_eps, ln_pf)
        }
        SyncModel::Word(shape) => {
            if shape.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: shape.len(),
                });
            }
            let word = shape.scale_to_energy(config.rho_s())?;
            let rho = config.rho();
            let mut total = f64::NEG_INFINITY;
            let mut terms = Vec::with_capacity(n.saturating_sub(1));
            for tau in (0..n).filter(|&t| t != mu) {
                let ln_t = ln_pairwise_sync_error(&word, mu as i64, tau as i64, rho)?;
                total = ln_add(total, ln_t);
                terms.push((tau, to_probability(ln_t)));
            }
            let ln_pe = total.min(0.0);
            let ln_eps = ln_epsilon_star(n, config.k, rho);
            (terms, ln_pe, ln_eps, ln_combine(ln_pe, ln_eps))
        }
    };
    Ok(BoundReport {
        mu,
        pairwise_terms,
        p_e_union: to_probability(ln_pe),
        epsilon_star: to_probability(ln_eps),
        p_f_upper: to_probability(ln_pf),
        ln_p_e_union: ln_pe,
        ln_epsilon_star: ln_eps,
        ln_p_f_upper: ln_pf,
    })
}
