use super::bound::{frame_error_upper, ln_frame_error_ideal, SyncModel};
use super::to_probability;
use crate::channel::FrameConfig;
use crate::error::{Error, Result};

/// Evaluates `f` on `points` evenly spaced abscissae of `[lo, hi]` and returns
/// `(index, x, f(x))` of the first minimum.
pub fn grid_scan<F>(mut f: F, lo: f64, hi: f64, points: usize) -> (usize, f64, f64)
where
    F: FnMut(f64) -> f64,
{
    assert!(points >= 2, "grid scan needs at least two points");
    let step = (hi - lo) / (points - 1) as f64;
    let mut best = (0, lo, f64::INFINITY);
    for i in 0..points {
        let x = if i == points - 1 { hi } else { lo + step * i as f64 };
        let v = f(x);
        if v < best.2 {
            best = (i, x, v);
        }
    }
    best
}

/// Golden-section search for a minimum of `f` on `[a, b]`, stopping once the
/// bracket is narrower than `tol`.
pub fn golden_section<F>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Result of the overhead optimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaOptimum {
    pub alpha: f64,
    pub p_f_upper: f64,
    pub p_e_union: f64,
    pub epsilon_star: f64,
    /// Grid point the refinement started from.
    pub coarse_alpha: f64,
}

const REFINE_TOL: f64 = 1e-7;

/// `α̂ = argmin_{0≤α≤1} P_{f,u}` for an ideal-autocorrelation sync word.
pub fn optimize_alpha(n: usize, k: usize, rho_tot: f64, grid_resolution: usize) -> Result<AlphaOptimum> {
    let base = FrameConfig::new(n, k, rho_tot, 0.0)?;
    optimize_alpha_with(&base, &SyncModel::IdealZc, grid_resolution)
}

/// Coarse scan of `ln P_{f,u}` over `grid_resolution` points of `[0, 1]`, then
/// golden-section refinement between the neighbours of the best grid point.
/// The `alpha` of `base` is ignored. Ties go to the smaller overhead.
pub fn optimize_alpha_with(base: &FrameConfig, model: &SyncModel, grid_resolution: usize) -> Result<AlphaOptimum> {
    if grid_resolution < 2 {
        return Err(Error::invalid("grid_resolution", "needs at least 2 points"));
    }
    let objective = |alpha: f64| -> Result<f64> {
        let config = base.with_alpha(alpha.clamp(0.0, 1.0))?;
        Ok(match model {
            SyncModel::IdealZc => ln_frame_error_ideal(&config).3,
            SyncModel::Word(_) => frame_error_upper(&config, model)?.ln_p_f_upper,
        })
    };
    // surface the first evaluation error, if any, after the scan
    let mut failure = None;
    let mut eval = |alpha: f64| match objective(alpha) {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            f64::INFINITY
        }
    };
    let (index, coarse_alpha, coarse_value) = grid_scan(&mut eval, 0.0, 1.0, grid_resolution);
    let step = 1.0 / (grid_resolution - 1) as f64;
    let lo = if index == 0 { 0.0 } else { coarse_alpha - step };
    let hi = if index == grid_resolution - 1 {
        1.0
    } else {
        coarse_alpha + step
    };
    let (refined, refined_value) = golden_section(&mut eval, lo, hi, REFINE_TOL);
    if let Some(e) = failure {
        return Err(e);
    }
    let alpha = if refined_value < coarse_value {
        refined
    } else {
        coarse_alpha
    };
    let report = frame_error_upper(&base.with_alpha(alpha)?, model)?;
    Ok(AlphaOptimum {
        alpha,
        p_f_upper: to_probability(report.ln_p_f_upper),
        p_e_union: report.p_e_union,
        epsilon_star: report.epsilon_star,
        coarse_alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_finds_parabola_minimum() {
        let (x, fx) = golden_section(|x| (x - 0.3).powi(2), 0.0, 1.0, 1e-9);
        assert!((x - 0.3).abs() < 1e-8);
        assert!(fx < 1e-16);
    }

    #[test]
    fn grid_scan_prefers_first_minimum() {
        let (i, x, _) = grid_scan(|x| if x < 0.5 { 1.0 } else { 0.0 }, 0.0, 1.0, 11);
        assert_eq!(i, 5);
        assert!((x - 0.5).abs() < 1e-15);
        let (i, _, _) = grid_scan(|_| 3.0, 0.0, 1.0, 5);
        assert_eq!(i, 0);
    }

    #[test]
    fn flat_objective_returns_zero_alpha() {
        // with almost no power every overhead fails
        let opt = optimize_alpha(63, 32, 1e-6, 21).unwrap();
        assert_eq!(opt.alpha, 0.0);
        assert_eq!(opt.p_f_upper, 1.0);
    }

    #[test]
    fn argmin_contract() {
        let opt = optimize_alpha(63, 32, 10f64.powf(0.3), 41).unwrap();
        assert!(opt.alpha > 0.0 && opt.alpha < 1.0);
        for i in 0..41 {
            let c = FrameConfig::new(63, 32, 10f64.powf(0.3), i as f64 / 40.0).unwrap();
            let r = frame_error_upper(&c, &SyncModel::IdealZc).unwrap();
            assert!(opt.p_f_upper <= r.p_f_upper);
        }
        assert!(optimize_alpha(63, 32, 2.0, 1).is_err());
    }
}
