use std::io;
use std::time::Instant;

use serde::Serialize;
use supersync_core::analysis::{
    epsilon_star, frame_error_upper, kl_divergence, optimize_alpha, union_bound, SyncModel,
};
use supersync_core::channel::{mc_sync_error, FrameConfig, McOptions};
use supersync_core::sequences::zadoff_chu;

use crate::output::{emit, Cell, RunManifest, Table};
use crate::{AlphaArgs, KlArgs, OptimizeArgs, RunArgs, SyncErrorArgs};

#[derive(Debug)]
pub enum Failure {
    /// Bad flag values; exit code 2.
    Usage(String),
    /// A computation could not produce a valid number; exit code 3.
    Numeric(String),
    Io(io::Error),
}

impl From<supersync_core::Error> for Failure {
    fn from(e: supersync_core::Error) -> Self {
        match e {
            supersync_core::Error::InvalidParameter { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(), Failure>;

/// dB to linear power ratio. Nothing below the CLI sees decibels.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn finite(name: &str, v: f64) -> Result<f64, Failure> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Failure::Numeric(format!("{name} evaluated to {v}")))
    }
}

fn mc_options(trials: u64, run: &RunArgs) -> McOptions {
    let opts = McOptions::new(trials, run.seed);
    match run.threads {
        Some(t) => opts.threads(t as usize),
        None => opts,
    }
}

fn finish<P: Serialize>(
    command: &'static str,
    params: &P,
    seed: Option<u64>,
    started: Instant,
    table: &Table,
    run: &RunArgs,
) -> Outcome {
    let manifest = RunManifest {
        command,
        parameters: serde_json::to_value(params).map_err(|e| Failure::Io(io::Error::other(e)))?,
        seed,
        version: env!("CARGO_PKG_VERSION"),
        wall_clock_seconds: started.elapsed().as_secs_f64(),
    };
    emit(table, &manifest, run.out.as_deref())?;
    Ok(())
}

pub fn sync_error_sweep(args: &SyncErrorArgs) -> Outcome {
    let started = Instant::now();
    let with_mc = args.mc.enabled(true);
    let mut table = Table::new(&["n", "rho_tot_db", "p_e_mc", "ci_half_width", "p_e_union_analytic"]);
    for &n in &args.n {
        let shape = zadoff_chu(n, args.root)?;
        for &rho_db in &args.rho_tot_db {
            // the payload size does not enter the sync error
            let config = FrameConfig::new(n, 1, db_to_linear(rho_db), args.alpha)?;
            let word = shape.scale_to_energy(config.rho_s())?;
            let bound = finite("union bound", union_bound(&word, 0, config.rho())?)?;
            let (p, ci) = if with_mc {
                let est = mc_sync_error(&config, &shape, &mc_options(args.trials, &args.run))?;
                (Cell::Real(est.p_hat), Cell::Real(est.ci_half_width))
            } else {
                (Cell::Missing, Cell::Missing)
            };
            table.push(vec![Cell::Int(n as u64), Cell::Real(rho_db), p, ci, Cell::Real(bound)]);
        }
    }
    finish(
        "sync-error-sweep",
        args,
        with_mc.then_some(args.run.seed),
        started,
        &table,
        &args.run,
    )
}

pub fn kl_sweep(args: &KlArgs) -> Outcome {
    let started = Instant::now();
    let threads = args.run.threads.map(|t| t as usize);
    let mut table = Table::new(&["n", "rho_db", "kl_nats", "mc_std_err"]);
    for &rho_db in &args.rho_db {
        for &n in &args.n {
            let est = kl_divergence(n, db_to_linear(rho_db), args.samples, args.run.seed, threads)?;
            table.push(vec![
                Cell::Int(n as u64),
                Cell::Real(rho_db),
                Cell::Real(finite("KL estimate", est.nats)?),
                Cell::Real(est.std_error),
            ]);
        }
    }
    finish("kl-sweep", args, Some(args.run.seed), started, &table, &args.run)
}

pub fn alpha_sweep(args: &AlphaArgs) -> Outcome {
    let started = Instant::now();
    let with_mc = args.mc.enabled(false);
    let shape = zadoff_chu(args.n, args.root)?;
    let model = SyncModel::Word(shape.clone());
    let mut table = Table::new(&["rho_tot_db", "alpha", "p_f_upper_analytic", "p_f_mc", "ci"]);
    for &rho_db in &args.rho_tot_db {
        for &alpha in &args.alpha_grid {
            let config = FrameConfig::new(args.n, args.k, db_to_linear(rho_db), alpha)?;
            let report = frame_error_upper(&config, &model)?;
            let (p, ci) = if with_mc {
                let est = mc_sync_error(&config, &shape, &mc_options(args.trials, &args.run))?;
                let eps = epsilon_star(args.n, args.k, config.rho());
                let p_f = 1.0 - (1.0 - est.p_hat) * (1.0 - eps);
                (Cell::Real(p_f), Cell::Real(est.ci_half_width * (1.0 - eps)))
            } else {
                (Cell::Missing, Cell::Missing)
            };
            table.push(vec![
                Cell::Real(rho_db),
                Cell::Real(alpha),
                Cell::Real(finite("frame-error bound", report.p_f_upper)?),
                p,
                ci,
            ]);
        }
    }
    finish(
        "alpha-sweep",
        args,
        with_mc.then_some(args.run.seed),
        started,
        &table,
        &args.run,
    )
}

pub fn optimize(args: &OptimizeArgs) -> Outcome {
    let started = Instant::now();
    let opt = optimize_alpha(args.n, args.k, db_to_linear(args.rho_tot_db), args.grid_points)?;
    eprintln!(
        "n = {}, k = {}, rho_tot = {} dB\n  optimal overhead   {:.6}\n  frame-error bound  {:.6e}\n  sync-error bound   {:.6e}\n  decoding error     {:.6e}",
        args.n, args.k, args.rho_tot_db, opt.alpha, opt.p_f_upper, opt.p_e_union, opt.epsilon_star
    );
    let mut table = Table::new(&[
        "n",
        "k",
        "rho_tot_db",
        "alpha_hat",
        "p_f_upper_min",
        "p_e_union",
        "epsilon_star",
    ]);
    table.push(vec![
        Cell::Int(args.n as u64),
        Cell::Int(args.k as u64),
        Cell::Real(args.rho_tot_db),
        Cell::Real(finite("optimal overhead", opt.alpha)?),
        Cell::Real(opt.p_f_upper),
        Cell::Real(opt.p_e_union),
        Cell::Real(opt.epsilon_star),
    ]);
    finish("optimize", args, None, started, &table, &args.run)
}
