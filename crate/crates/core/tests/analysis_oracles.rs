//! Densities, divergences and bounds checked by quadrature, sampling and
//! high-precision values frozen from `oracles/gen_oracles.py`.
#![allow(clippy::excessive_precision)]

mod common;

use std::f64::consts::PI;

use common::{integrate, ks_p_value, ks_statistic};
use proptest::prelude::*;
use statrs::function::gamma::ln_gamma;
use supersync_core::analysis::{
    epsilon_star, frame_error_upper, gaussian_approx, kl_divergence, optimize_alpha, pdf_y_complex, pdf_y_real,
    union_bound, SyncModel,
};
use supersync_core::channel::{sample_awgn, sample_spherical_codeword, FrameConfig};
use supersync_core::rng::substream;
use supersync_core::sequences::zadoff_chu;

fn db(x: f64) -> f64 {
    10f64.powf(x / 10.0)
}

/// Surface area of the unit sphere in `R^d`, as a log.
fn ln_sphere_area(d: usize) -> f64 {
    (2.0f64).ln() + 0.5 * d as f64 * PI.ln() - ln_gamma(0.5 * d as f64)
}

fn complex_radial(r: f64, n: usize, rho: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    (pdf_y_complex(r, n, rho).unwrap().ln_abs() + ln_sphere_area(2 * n) + (2 * n - 1) as f64 * r.ln()).exp()
}

fn real_radial(r: f64, n: usize, rho: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    (pdf_y_real(r, n, rho).unwrap().ln_abs() + ln_sphere_area(n) + (n - 1) as f64 * r.ln()).exp()
}

#[test]
fn densities_integrate_to_one() {
    for &n in &[1usize, 2, 4, 8] {
        for &rho in &[0.5, 2.0, 8.0] {
            let upper = (n as f64 * rho).sqrt() + 12.0;
            let mass = integrate(|r| complex_radial(r, n, rho), 0.0, upper, 400);
            assert!((mass - 1.0).abs() < 1e-6, "complex n={n} ρ={rho}: {mass}");
        }
    }
    for &rho in &[0.5, 2.0, 8.0] {
        let upper = (2.0f64 * rho).sqrt() + 15.0;
        let mass = integrate(|r| real_radial(r, 2, rho), 0.0, upper, 400);
        assert!((mass - 1.0).abs() < 1e-6, "real n=2 ρ={rho}: {mass}");
    }
}

#[test]
fn sampled_norm_follows_density() {
    let (n, rho, samples) = (4usize, 2.0, 20_000u64);
    let mut norms: Vec<f64> = (0..samples)
        .map(|i| {
            let mut rng = substream(314, i);
            let d = sample_spherical_codeword(n, rho, &mut rng);
            let w = sample_awgn(n, &mut rng);
            d.iter().zip(&w).map(|(a, b)| (a + b).norm_sqr()).sum::<f64>().sqrt()
        })
        .collect();
    // tabulate the CDF on a fine grid and interpolate
    let h = 2e-3;
    let upper = (n as f64 * rho).sqrt() + 10.0;
    let steps = (upper / h) as usize;
    let mut table = vec![0.0; steps + 1];
    for i in 0..steps {
        let a = i as f64 * h;
        table[i + 1] = table[i] + integrate(|r| complex_radial(r, n, rho), a, a + h, 1);
    }
    let cdf = |x: f64| {
        let t = x / h;
        let i = t.floor() as usize;
        if i >= steps {
            return 1.0;
        }
        table[i] + (t - i as f64) * (table[i + 1] - table[i])
    };
    let d = ks_statistic(&mut norms, cdf);
    let p = ks_p_value(d, samples as usize);
    assert!(p > 0.01, "KS D = {d}, p = {p}");
}

#[test]
fn gaussian_approximation_matches_second_moment() {
    let (n, rho, samples) = (16usize, 2.0, 20_000u64);
    let mut sum = 0.0;
    let mut sum2 = 0.0;
    for i in 0..samples {
        let mut rng = substream(2718, i);
        let d = sample_spherical_codeword(n, rho, &mut rng);
        let w = sample_awgn(n, &mut rng);
        for (a, b) in d.iter().zip(&w) {
            let e = (a + b).norm_sqr();
            sum += e;
            sum2 += e * e;
        }
    }
    let count = (samples * n as u64) as f64;
    let mean = sum / count;
    // coordinates within one draw are dependent, so widen by √n
    let se = ((sum2 / count - mean * mean) / count).sqrt() * (n as f64).sqrt();
    let want = gaussian_approx(rho).unwrap().variance_per_coordinate;
    assert_eq!(want, 3.0);
    assert!((mean - want).abs() < 5.0 * se, "{mean} ± {se}");
}

/// `p_Y` in `R^2` as an explicit average of shifted Gaussians over the ring,
/// which does not go through any Bessel function.
fn ring_convolution_density(r: f64, radius: f64) -> f64 {
    let m = 256;
    let total: f64 = (0..m)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / m as f64;
            (-(r * r + radius * radius - 2.0 * r * radius * theta.cos()) / 2.0).exp()
        })
        .sum();
    total / m as f64 / (2.0 * PI)
}

#[test]
fn kl_estimate_matches_two_dimensional_integral() {
    let (n, rho) = (2usize, 1.0);
    let radius = (n as f64 * rho).sqrt();
    let v = 1.0 + rho;
    let exact = integrate(
        |r| {
            let p = ring_convolution_density(r, radius);
            let q = (-r * r / (2.0 * v)).exp() / (2.0 * PI * v);
            if p == 0.0 {
                0.0
            } else {
                2.0 * PI * r * p * (p / q).ln()
            }
        },
        0.0,
        radius + 14.0,
        400,
    );
    // the Bessel-based density agrees pointwise with the convolution
    for i in 1..40 {
        let r = 0.2 * i as f64;
        let a = pdf_y_real(r, n, rho).unwrap().value();
        let b = ring_convolution_density(r, radius);
        assert!(((a - b) / b).abs() < 1e-12, "r={r}: {a} vs {b}");
    }
    let est = kl_divergence(n, rho, 200_000, 77, None).unwrap();
    assert!((est.nats - exact).abs() < 4.0 * est.std_error, "{est:?} vs {exact}");
    assert!(est.std_error < 1e-3);
}

#[test]
fn decoding_term_matches_frozen_value() {
    let got = epsilon_star(63, 32, 10f64.powf(0.3));
    let want = 2.111501777993044899e-11;
    assert!(((got - want) / want).abs() < 1e-9, "{got} vs {want}");
}

#[test]
fn union_bound_matches_frozen_value() {
    let want = 4.032223980032788957e-11;
    let config = FrameConfig::new(63, 32, db(9.0), 0.5).unwrap();
    let word = zadoff_chu(63, 1).unwrap().scale_to_energy(config.rho_s()).unwrap();
    let got = union_bound(&word, 0, config.rho()).unwrap();
    assert!(((got - want) / want).abs() < 1e-9, "{got} vs {want}");
    let ideal = frame_error_upper(&config, &SyncModel::IdealZc).unwrap();
    assert!(((ideal.p_e_union - want) / want).abs() < 1e-9);
}

#[test]
fn optimum_is_stable_under_grid_refinement() {
    for &rho_db in &[0.0, 3.0, 6.0] {
        let coarse = optimize_alpha(63, 32, db(rho_db), 101).unwrap();
        let fine = optimize_alpha(63, 32, db(rho_db), 201).unwrap();
        assert!(
            (coarse.alpha - fine.alpha).abs() <= 0.01,
            "{rho_db} dB: {coarse:?} vs {fine:?}"
        );
        assert!(coarse.alpha > 0.0 && coarse.alpha < 1.0);
    }
}

#[test]
fn frame_bound_is_u_shaped_in_overhead() {
    let rho_tot = db(3.0);
    let opt = optimize_alpha(63, 32, rho_tot, 201).unwrap();
    let at = |alpha: f64| {
        let config = FrameConfig::new(63, 32, rho_tot, alpha).unwrap();
        frame_error_upper(&config, &SyncModel::IdealZc).unwrap().ln_p_f_upper
    };
    let mut prev = at(0.0);
    let mut alpha = 0.01;
    while alpha < opt.alpha - 0.01 {
        let cur = at(alpha);
        assert!(cur <= prev + 1e-12, "not decreasing at α={alpha}");
        prev = cur;
        alpha += 0.01;
    }
    let mut prev = at(opt.alpha + 0.01);
    let mut alpha = opt.alpha + 0.02;
    while alpha <= 1.0 {
        let cur = at(alpha);
        assert!(cur >= prev - 1e-12, "not increasing at α={alpha}");
        prev = cur;
        alpha += 0.01;
    }
    assert!(at(0.0) > at(opt.alpha) && at(1.0) > at(opt.alpha));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn frame_bound_algebra(
        n in prop::sample::select(vec![7usize, 15, 31, 63, 127]),
        k_frac in 0.05f64..0.9,
        rho_db in -10.0f64..12.0,
        alpha in 0.0f64..=1.0,
    ) {
        let k = ((n as f64 * k_frac) as usize).max(1);
        let config = FrameConfig::new(n, k, db(rho_db), alpha).unwrap();
        let r = frame_error_upper(&config, &SyncModel::IdealZc).unwrap();
        prop_assert!(r.p_f_upper <= 1.0);
        prop_assert!(r.p_f_upper >= r.p_e_union.max(r.epsilon_star) * (1.0 - 1e-12));
        prop_assert!(r.p_f_upper <= (r.p_e_union + r.epsilon_star).min(1.0) * (1.0 + 1e-12));
    }

    #[test]
    fn union_bound_is_shift_invariant_for_ideal_words(
        n in prop::sample::select(vec![7usize, 15, 31]),
        mu in 0usize..7,
        rho_db in -6.0f64..9.0,
    ) {
        let config = FrameConfig::new(n, 4, db(rho_db), 0.5).unwrap();
        let a = frame_error_upper(&config, &SyncModel::IdealZc).unwrap();
        let b = supersync_core::analysis::frame_error_upper_at(
            &config,
            &SyncModel::Word(zadoff_chu(n, 1).unwrap()),
            mu,
        ).unwrap();
        prop_assert!((a.ln_p_e_union - b.ln_p_e_union).abs() < 1e-9);
    }
}
