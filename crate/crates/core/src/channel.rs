//! Continuous-transmission AWGN model with a superimposed sync word.
//!
//! A receive buffer holds `n` consecutive symbols and therefore straddles two
//! frames: positions `[0, μ)` carry the tail of the previous codeword and
//! positions `[μ, n)` the head of the next one, whose sync word starts at `μ`.
//! The channel phase is taken as perfectly compensated.

use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::parallel::map_chunks;
use crate::rng::{complex_normal, substream};
use crate::sequences::{correlation_metric, SyncWord};

/// Frame parameters; energies are linear and relative to unit noise power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameConfig {
    pub n: usize,
    pub k: usize,
    pub rho_tot: f64,
    pub alpha: f64,
}

impl FrameConfig {
    pub fn new(n: usize, k: usize, rho_tot: f64, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n", "frame length must be at least 1"));
        }
        if k == 0 {
            return Err(Error::invalid("k", "at least one information bit is required"));
        }
        if !(rho_tot.is_finite() && rho_tot >= 0.0) {
            return Err(Error::invalid("rho_tot", format!("{rho_tot} is not a finite energy")));
        }
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::invalid("alpha", format!("{alpha} is outside [0, 1]")));
        }
        Ok(FrameConfig { n, k, rho_tot, alpha })
    }

    /// Sync-word energy per symbol, `α ρ_tot`.
    pub fn rho_s(&self) -> f64 {
        self.alpha * self.rho_tot
    }

    /// Data energy per symbol, `(1 - α) ρ_tot`.
    pub fn rho(&self) -> f64 {
        (1.0 - self.alpha) * self.rho_tot
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(self.n, self.k, self.rho_tot, alpha)
    }
}

/// `n` received samples containing one complete sync word at offset `mu`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReceiveBuffer {
    pub z: Vec<Complex64>,
    pub mu: usize,
}

/// The three additive parts of a receive buffer, kept apart for inspection.
#[derive(Debug, Clone, PartialEq)]
pub struct BufferComponents {
    pub sync: Vec<Complex64>,
    pub data: Vec<Complex64>,
    pub noise: Vec<Complex64>,
    pub mu: usize,
}

impl BufferComponents {
    pub fn assemble(&self) -> ReceiveBuffer {
        let z = self
            .sync
            .iter()
            .zip(&self.data)
            .zip(&self.noise)
            .map(|((s, d), w)| s + d + w)
            .collect();
        ReceiveBuffer { z, mu: self.mu }
    }
}

/// A Monte-Carlo probability estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub p_hat: f64,
    pub trials: u64,
    pub errors_observed: u64,
    /// 95% normal-approximation half-width, `1.96 √(p̂(1-p̂)/trials)`.
    pub ci_half_width: f64,
}

impl McEstimate {
    pub fn from_counts(errors_observed: u64, trials: u64) -> Self {
        assert!(trials > 0, "an estimate needs at least one trial");
        let p_hat = errors_observed as f64 / trials as f64;
        McEstimate {
            p_hat,
            trials,
            errors_observed,
            ci_half_width: 1.96 * (p_hat * (1.0 - p_hat) / trials as f64).sqrt(),
        }
    }

    /// Standard error of `p_hat`.
    pub fn std_error(&self) -> f64 {
        self.ci_half_width / 1.96
    }
}

/// How the true frame offset is chosen per trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OffsetMode {
    #[default]
    Uniform,
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McOptions {
    pub trials: u64,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub offset: OffsetMode,
}

impl McOptions {
    pub fn new(trials: u64, seed: u64) -> Self {
        McOptions {
            trials,
            seed,
            threads: None,
            offset: OffsetMode::Uniform,
        }
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    pub fn fixed_offset(mut self, mu: usize) -> Self {
        self.offset = OffsetMode::Fixed(mu);
        self
    }
}

fn fill_spherical<R: Rng + ?Sized>(out: &mut [Complex64], rho: f64, rng: &mut R) {
    if rho == 0.0 {
        out.fill(Complex64::new(0.0, 0.0));
        return;
    }
    loop {
        for d in out.iter_mut() {
            *d = complex_normal(rng, 1.0);
        }
        let norm2: f64 = out.iter().map(|d| d.norm_sqr()).sum();
        if norm2 > 0.0 {
            let gain = (out.len() as f64 * rho / norm2).sqrt();
            out.iter_mut().for_each(|d| *d *= gain);
            return;
        }
    }
}

fn fill_awgn<R: Rng + ?Sized>(out: &mut [Complex64], rng: &mut R) {
    for w in out.iter_mut() {
        *w = complex_normal(rng, 1.0);
    }
}

/// Codeword uniform on the complex sphere of radius `√(nρ)`.
pub fn sample_spherical_codeword<R: Rng + ?Sized>(n: usize, rho: f64, rng: &mut R) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    fill_spherical(&mut out, rho, rng);
    out
}

/// Point uniform on the real sphere of radius `√(nρ)` in `R^n`.
pub fn sample_real_spherical<R: Rng + ?Sized>(n: usize, rho: f64, rng: &mut R) -> Vec<f64> {
    if rho == 0.0 {
        return vec![0.0; n];
    }
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm2: f64 = v.iter().map(|x| x * x).sum();
        if norm2 > 0.0 {
            let gain = (n as f64 * rho / norm2).sqrt();
            return v.into_iter().map(|x| x * gain).collect();
        }
    }
}

/// i.i.d. `CN(0, 1)` noise.
pub fn sample_awgn<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    fill_awgn(&mut out, rng);
    out
}

/// Per-trial scratch memory.
struct TrialBuffers {
    previous: Vec<Complex64>,
    next: Vec<Complex64>,
    noise: Vec<Complex64>,
    z: Vec<Complex64>,
}

impl TrialBuffers {
    fn new(n: usize) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        TrialBuffers {
            previous: vec![zero; n],
            next: vec![zero; n],
            noise: vec![zero; n],
            z: vec![zero; n],
        }
    }

    /// Draws the two straddled codewords and the noise, then writes `z`.
    fn draw<R: Rng + ?Sized>(&mut self, word: &SyncWord, rho: f64, mu: usize, rng: &mut R) {
        let n = word.len();
        fill_spherical(&mut self.previous, rho, rng);
        fill_spherical(&mut self.next, rho, rng);
        fill_awgn(&mut self.noise, rng);
        for i in 0..n {
            self.z[i] = word.shifted_symbol(i, mu) + data_symbol(&self.previous, &self.next, mu, i) + self.noise[i];
        }
    }
}

#[inline]
fn data_symbol(previous: &[Complex64], next: &[Complex64], mu: usize, i: usize) -> Complex64 {
    let n = previous.len();
    if i < mu {
        previous[n - mu + i]
    } else {
        next[i - mu]
    }
}

/// Builds the three parts of `Z = s_μ + D_z + W_z`. `word` must already carry
/// energy `α ρ_tot` per symbol.
pub fn build_buffer_components<R: Rng + ?Sized>(
    config: &FrameConfig,
    word: &SyncWord,
    mu: usize,
    rng: &mut R,
) -> Result<BufferComponents> {
    let n = config.n;
    if word.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: word.len(),
        });
    }
    if mu >= n {
        return Err(Error::invalid("mu", format!("offset {mu} is outside [0, {n})")));
    }
    let mut bufs = TrialBuffers::new(n);
    bufs.draw(word, config.rho(), mu, rng);
    Ok(BufferComponents {
        sync: (0..n).map(|i| word.shifted_symbol(i, mu)).collect(),
        data: (0..n).map(|i| data_symbol(&bufs.previous, &bufs.next, mu, i)).collect(),
        noise: bufs.noise,
        mu,
    })
}

pub fn build_buffer<R: Rng + ?Sized>(
    config: &FrameConfig,
    word: &SyncWord,
    mu: usize,
    rng: &mut R,
) -> Result<ReceiveBuffer> {
    build_buffer_components(config, word, mu, rng).map(|c| c.assemble())
}

/// Argmax correlator evaluating all `n` shifts at once through the FFT.
///
/// Shifts whose FFT metric lies within rounding distance of the maximum are
/// re-scored with the direct sum, and exact ties go to the lowest index.
pub struct Synchronizer {
    word: SyncWord,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    /// `conj(DFT(s)) / n`
    conj_spectrum: Vec<Complex64>,
    scratch_len: usize,
}

/// Reusable buffers for [`Synchronizer::estimate_with`].
pub struct SyncWorkspace {
    spectrum: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl Synchronizer {
    pub fn new(word: &SyncWord) -> Self {
        let n = word.len();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let mut conj_spectrum = word.symbols().to_vec();
        forward.process(&mut conj_spectrum);
        let inv_n = 1.0 / n as f64;
        conj_spectrum.iter_mut().for_each(|c| *c = c.conj() * inv_n);
        let scratch_len = forward.get_inplace_scratch_len().max(inverse.get_inplace_scratch_len());
        Synchronizer {
            word: word.clone(),
            forward,
            inverse,
            conj_spectrum,
            scratch_len,
        }
    }

    pub fn word(&self) -> &SyncWord {
        &self.word
    }

    pub fn workspace(&self) -> SyncWorkspace {
        let zero = Complex64::new(0.0, 0.0);
        SyncWorkspace {
            spectrum: vec![zero; self.word.len()],
            scratch: vec![zero; self.scratch_len],
        }
    }

    /// `f(z, τ)` for every `τ ∈ [0, n)`, via the FFT.
    pub fn metrics(&self, z: &[Complex64]) -> Result<Vec<f64>> {
        let mut ws = self.workspace();
        self.fill_metrics(z, &mut ws)?;
        Ok(ws.spectrum.iter().map(|c| c.re).collect())
    }

    fn fill_metrics(&self, z: &[Complex64], ws: &mut SyncWorkspace) -> Result<()> {
        if z.len() != self.word.len() {
            return Err(Error::DimensionMismatch {
                expected: self.word.len(),
                actual: z.len(),
            });
        }
        ws.spectrum.copy_from_slice(z);
        self.forward.process_with_scratch(&mut ws.spectrum, &mut ws.scratch);
        for (c, s) in ws.spectrum.iter_mut().zip(&self.conj_spectrum) {
            *c *= s;
        }
        self.inverse.process_with_scratch(&mut ws.spectrum, &mut ws.scratch);
        Ok(())
    }

    pub fn estimate(&self, z: &[Complex64]) -> Result<usize> {
        let mut ws = self.workspace();
        self.estimate_with(z, &mut ws)
    }

    /// `argmax_τ f(z, τ)`, lowest index on ties.
    pub fn estimate_with(&self, z: &[Complex64], ws: &mut SyncWorkspace) -> Result<usize> {
        self.fill_metrics(z, ws)?;
        let metrics = &ws.spectrum;
        let (best, best_value) =
            metrics.iter().enumerate().fold(
                (0, f64::NEG_INFINITY),
                |(bi, bv), (i, c)| {
                    if c.re > bv {
                        (i, c.re)
                    } else {
                        (bi, bv)
                    }
                },
            );
        let z_energy: f64 = z.iter().map(|c| c.norm_sqr()).sum();
        let tolerance = 1e-10 * (self.word.energy() * z_energy).sqrt();
        let mut candidates = metrics
            .iter()
            .enumerate()
            .filter(|(_, c)| c.re >= best_value - tolerance)
            .map(|(i, _)| i);
        let first = candidates.next().unwrap_or(best);
        let rest: Vec<usize> = candidates.collect();
        if rest.is_empty() {
            return Ok(first);
        }
        let mut winner = first;
        let mut winner_value = correlation_metric(z, &self.word, first as i64)?;
        for tau in rest {
            let v = correlation_metric(z, &self.word, tau as i64)?;
            if v > winner_value {
                winner = tau;
                winner_value = v;
            }
        }
        Ok(winner)
    }
}

/// `τ̂ = argmax_{0 ≤ τ < n} Re{s_τ^H z}`, lowest index on ties.
pub fn synchronize(z: &[Complex64], word: &SyncWord) -> Result<usize> {
    Synchronizer::new(word).estimate(z)
}

fn draw_offset<R: Rng + ?Sized>(mode: OffsetMode, n: usize, rng: &mut R) -> usize {
    match mode {
        OffsetMode::Uniform => rng.random_range(0..n),
        OffsetMode::Fixed(mu) => mu,
    }
}

fn check_mc(config: &FrameConfig, shape: &SyncWord, opts: &McOptions) -> Result<SyncWord> {
    if opts.trials == 0 {
        return Err(Error::invalid("trials", "must be at least 1"));
    }
    if shape.len() != config.n {
        return Err(Error::DimensionMismatch {
            expected: config.n,
            actual: shape.len(),
        });
    }
    if let OffsetMode::Fixed(mu) = opts.offset {
        if mu >= config.n {
            return Err(Error::invalid(
                "mu",
                format!("offset {mu} is outside [0, {})", config.n),
            ));
        }
    }
    shape.scale_to_energy(config.rho_s())
}

/// Monte-Carlo frame-synchronization error probability `Pr{τ̂ ≠ μ}`.
///
/// `shape` fixes the sync word up to scale; it is rescaled to `α ρ_tot`.
/// Trial `i` draws from substream `(seed, i)`, so the estimate does not depend
/// on the thread count.
pub fn mc_sync_error(config: &FrameConfig, shape: &SyncWord, opts: &McOptions) -> Result<McEstimate> {
    let word = check_mc(config, shape, opts)?;
    let sync = Synchronizer::new(&word);
    let rho = config.rho();
    let n = config.n;
    let counts = map_chunks(opts.trials, opts.threads, |range| -> Result<u64> {
        let mut bufs = TrialBuffers::new(n);
        let mut ws = sync.workspace();
        let mut errors = 0;
        for trial in range {
            let mut rng = substream(opts.seed, trial);
            let mu = draw_offset(opts.offset, n, &mut rng);
            bufs.draw(&word, rho, mu, &mut rng);
            if sync.estimate_with(&bufs.z, &mut ws)? != mu {
                errors += 1;
            }
        }
        Ok(errors)
    })?;
    let errors = counts.into_iter().sum::<Result<u64>>()?;
    Ok(McEstimate::from_counts(errors, opts.trials))
}

/// Monte-Carlo pairwise error `Pr{f(Z, μ) ≤ f(Z, τ)}` for one wrong shift `τ`,
/// measured at the offset given by `opts.offset`.
pub fn mc_pairwise_error(config: &FrameConfig, shape: &SyncWord, tau: usize, opts: &McOptions) -> Result<McEstimate> {
    let word = check_mc(config, shape, opts)?;
    let n = config.n;
    if tau >= n {
        return Err(Error::invalid("tau", format!("shift {tau} is outside [0, {n})")));
    }
    let rho = config.rho();
    let counts = map_chunks(opts.trials, opts.threads, |range| -> Result<u64> {
        let mut bufs = TrialBuffers::new(n);
        let mut errors = 0;
        for trial in range {
            let mut rng = substream(opts.seed, trial);
            let mu = draw_offset(opts.offset, n, &mut rng);
            if mu == tau {
                return Err(Error::invalid("tau", "pairwise error needs tau != mu"));
            }
            bufs.draw(&word, rho, mu, &mut rng);
            let right = correlation_metric(&bufs.z, &word, mu as i64)?;
            let wrong = correlation_metric(&bufs.z, &word, tau as i64)?;
            if right <= wrong {
                errors += 1;
            }
        }
        Ok(errors)
    })?;
    let errors = counts.into_iter().sum::<Result<u64>>()?;
    Ok(McEstimate::from_counts(errors, opts.trials))
}

/// Draws `‖D + W‖²` for `samples` independent codeword-plus-noise vectors in
/// `C^n`, sample `i` from substream `(seed, i)`, returned in index order.
pub fn sample_received_energy(n: usize, rho: f64, samples: u64, seed: u64, threads: Option<usize>) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::invalid("n", "dimension must be at least 1"));
    }
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(Error::invalid("rho", format!("{rho} must be finite and >= 0")));
    }
    let parts = map_chunks(samples, threads, |range| {
        let mut d = vec![Complex64::new(0.0, 0.0); n];
        let mut w = vec![Complex64::new(0.0, 0.0); n];
        range
            .map(|i| {
                let mut rng = substream(seed, i);
                fill_spherical(&mut d, rho, &mut rng);
                fill_awgn(&mut w, &mut rng);
                d.iter().zip(&w).map(|(a, b)| (a + b).norm_sqr()).sum::<f64>()
            })
            .collect::<Vec<f64>>()
    })?;
    Ok(parts.concat())
}
