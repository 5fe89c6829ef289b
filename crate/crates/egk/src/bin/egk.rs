//! Command-line front end: `eval`, `sweep`, `validate`, `presets`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use egk::cli::{
    self, EvalRequest, MethodChoice, StatisticKind, SweepVar, EXIT_NUMERICAL, EXIT_USAGE,
    EXIT_VALIDATION,
};
use egk::params::{preset_params, ChannelParams, PresetFill, Shadowing};
use egk::{Error, Result};

#[derive(Parser)]
#[command(
    name = "egk",
    version,
    about = "Composite fading statistics: evaluate, sweep, and validate the EGK channel model"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one statistic and print it as a JSON object
    Eval(EvalArgs),
    /// Sweep a statistic over a grid and emit figure-ready CSV
    Sweep(SweepArgs),
    /// Validate the closed forms against the Monte Carlo sampler
    Validate(ValidateArgs),
    /// List the preset catalog
    Presets,
}

#[derive(Args)]
struct ChannelArgs {
    /// Preset name (see `egk presets`); free slots come from --m/--xi/--ms/--xis
    #[arg(long)]
    preset: Option<String>,
    /// Fading figure m
    #[arg(long)]
    m: Option<f64>,
    /// Fading shaping factor xi
    #[arg(long)]
    xi: Option<f64>,
    /// Shadowing figure m_s
    #[arg(long)]
    ms: Option<f64>,
    /// Shadowing shaping factor xi_s
    #[arg(long)]
    xis: Option<f64>,
    /// Mean envelope power
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
}

impl ChannelArgs {
    fn resolve(&self) -> Result<ChannelParams> {
        if let Some(name) = &self.preset {
            let fill = PresetFill {
                m: self.m,
                xi: self.xi,
                m_s: self.ms,
                xi_s: self.xis,
            };
            return preset_params(name, self.omega, &fill);
        }
        let m = self
            .m
            .ok_or_else(|| Error::InvalidParameter("--m is required without --preset".into()))?;
        let xi = self
            .xi
            .ok_or_else(|| Error::InvalidParameter("--xi is required without --preset".into()))?;
        let shadowing = match (self.ms, self.xis) {
            (Some(m_s), Some(xi_s)) => Shadowing::Finite { m_s, xi_s },
            (None, None) => Shadowing::None,
            _ => {
                return Err(Error::InvalidParameter(
                    "--ms and --xis must be given together".into(),
                ))
            }
        };
        ChannelParams::new(m, xi, shadowing, self.omega)
    }
}

#[derive(Args)]
struct StatArgs {
    /// Envelope level
    #[arg(long)]
    r: Option<f64>,
    /// Instantaneous SNR
    #[arg(long)]
    gamma: Option<f64>,
    /// Mean SNR
    #[arg(long)]
    gbar: Option<f64>,
    /// Outage SNR threshold
    #[arg(long)]
    gth: Option<f64>,
    /// Moment order
    #[arg(long)]
    k: Option<f64>,
    /// MGF argument
    #[arg(long)]
    s: Option<f64>,
    /// Modulation parameter (1 PSK, 1/2 FSK)
    #[arg(long)]
    a: Option<f64>,
    /// Detection parameter (1 non-coherent, 1/2 coherent)
    #[arg(long)]
    b: Option<f64>,
    /// Bandwidth in Hz
    #[arg(long)]
    w: Option<f64>,
    /// Capacity threshold in bits/s
    #[arg(long)]
    cth: Option<f64>,
    /// Shadowing max Doppler in Hz
    #[arg(long)]
    fs: Option<f64>,
    /// Multipath max Doppler in Hz
    #[arg(long)]
    fx: Option<f64>,
    /// Shadowing share of the mean-power split
    #[arg(long)]
    oms: Option<f64>,
    /// Multipath share of the mean-power split
    #[arg(long)]
    omx: Option<f64>,
    /// Computation path: default|quadrature|foxh|gcq|series
    #[arg(long, default_value = "default")]
    method: String,
    /// Series truncation for --method series
    #[arg(long, default_value_t = 8)]
    series_terms: usize,
    /// Node count for --method gcq
    #[arg(long, default_value_t = 512)]
    gcq_nodes: usize,
    /// Relative quadrature tolerance override
    #[arg(long)]
    tol: Option<f64>,
}

impl StatArgs {
    fn fill(&self, req: &mut EvalRequest) -> Result<()> {
        req.method = MethodChoice::parse(&self.method)?;
        req.r = self.r;
        req.gamma = self.gamma;
        req.gamma_bar = self.gbar;
        req.gamma_th = self.gth;
        req.moment_order = self.k;
        req.mgf_s = self.s;
        req.mod_a = self.a;
        req.mod_b = self.b;
        req.bandwidth = self.w;
        req.capacity_th = self.cth;
        req.f_s = self.fs;
        req.f_x = self.fx;
        req.omega_split = match (self.oms, self.omx) {
            (Some(s), Some(x)) => Some((s, x)),
            (None, None) => None,
            _ => {
                return Err(Error::InvalidParameter(
                    "--oms and --omx must be given together".into(),
                ))
            }
        };
        req.series_terms = self.series_terms;
        req.gcq_nodes = self.gcq_nodes;
        req.rel_tol = self.tol;
        Ok(())
    }
}

#[derive(Args)]
struct EvalArgs {
    /// Statistic name (pdf, cdf, snr-pdf, snr-cdf, moment, mgf, aof, abep,
    /// outage, outage-capacity, capacity, lcr, afd)
    statistic: String,
    #[command(flatten)]
    channel: ChannelArgs,
    #[command(flatten)]
    stat: StatArgs,
    /// Write the JSON here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Statistic name
    statistic: String,
    /// Swept variable: r, gamma, gamma_bar, m, xi, m_s, xi_s, gamma_th
    #[arg(long)]
    var: String,
    /// Grid: start:stop:count[:linear|log] or a comma list
    #[arg(long)]
    grid: String,
    #[command(flatten)]
    channel: ChannelArgs,
    #[command(flatten)]
    stat: StatArgs,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Mean SNR for the SNR-domain checks
    #[arg(long, default_value_t = 5.0)]
    gbar: f64,
    /// Monte Carlo sample count
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    /// RNG seed
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn write_or_print(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn run() -> std::result::Result<i32, (Error, i32)> {
    cli::init_threads();
    let args = Cli::parse();
    match args.cmd {
        Cmd::Eval(a) => {
            let usage = |e: Error| (e, EXIT_USAGE);
            let statistic = StatisticKind::parse(&a.statistic).map_err(usage)?;
            let params = a.channel.resolve().map_err(usage)?;
            let mut req = EvalRequest::new(statistic, params);
            a.stat.fill(&mut req).map_err(usage)?;
            let json = cli::run_eval(&req).map_err(|e| {
                let code = cli::exit_code_for(&e);
                (e, code)
            })?;
            let text = serde_json::to_string_pretty(&json).expect("json serializes");
            write_or_print(&text, a.out.as_ref()).map_err(|e| (e, EXIT_USAGE))?;
            Ok(0)
        }
        Cmd::Sweep(a) => {
            let usage = |e: Error| (e, EXIT_USAGE);
            let statistic = StatisticKind::parse(&a.statistic).map_err(usage)?;
            let params = a.channel.resolve().map_err(usage)?;
            let mut req = EvalRequest::new(statistic, params);
            a.stat.fill(&mut req).map_err(usage)?;
            let var = SweepVar::parse(&a.var).map_err(usage)?;
            let grid = cli::parse_grid(&a.grid).map_err(usage)?;
            let outcome = cli::run_sweep(&req, var, &grid).map_err(|e| {
                let code = cli::exit_code_for(&e);
                (e, code)
            })?;
            match &a.out {
                Some(path) => {
                    std::fs::write(path, &outcome.csv).map_err(|e| (e.into(), EXIT_USAGE))?
                }
                None => print!("{}", outcome.csv),
            }
            if outcome.failures > 0 {
                eprintln!("{} of {} rows failed", outcome.failures, grid.len());
                return Ok(EXIT_NUMERICAL);
            }
            Ok(0)
        }
        Cmd::Validate(a) => {
            let usage = |e: Error| (e, EXIT_USAGE);
            let params = a.channel.resolve().map_err(usage)?;
            let report =
                cli::run_validate(&params, a.gbar, a.samples, a.seed, 1.0).map_err(|e| {
                    let code = cli::exit_code_for(&e);
                    (e, code)
                })?;
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            write_or_print(&text, a.out.as_ref()).map_err(|e| (e, EXIT_USAGE))?;
            if report.passed {
                Ok(0)
            } else {
                eprintln!(
                    "validation failed: max |z| = {:.2} over {} checks",
                    report.max_abs_z,
                    report.checks.len()
                );
                Ok(EXIT_VALIDATION)
            }
        }
        Cmd::Presets => {
            print!("{}", cli::presets_table());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err((e, code)) => {
            eprintln!("error: {e}");
            ExitCode::from(code as u8)
        }
    }
}
