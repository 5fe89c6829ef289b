//! Machinery behind the `egk` binary: statistic dispatch, grid sweeps with
//! CSV output, the Monte Carlo validation report, and the preset table.
//! The binary itself is a thin argument parser over these functions.
//!
//! Exit-code contract: 0 success, 2 usage/validation error, 3 numerical
//! non-convergence, 4 Monte Carlo validation failure.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::metrics::{self, CapacitySpec, ModulationSpec};
use crate::montecarlo::{self, SimConfig, Statistic};
use crate::params::{ChannelParams, OmegaSplit, PresetCatalog, Shadowing, Slot};
use crate::secondorder::{self, DopplerSpec};
use crate::specfun::QuadratureSpec;
use crate::stats::{self, CdfPath, EvalPath};
use crate::{Error, Method, MetricResult, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;

/// Exit code for an error per the CLI contract.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Accuracy { .. }
        | Error::ContourDiverged(_)
        | Error::SeriesTerm { .. }
        | Error::Divergent(_) => EXIT_NUMERICAL,
        _ => EXIT_USAGE,
    }
}

/// Cap the rayon pool from `EGK_THREADS` (first call wins).
pub fn init_threads() {
    static ONCE: OnceLock<()> = OnceLock::new();
    ONCE.get_or_init(|| {
        if let Ok(v) = std::env::var("EGK_THREADS") {
            if let Ok(n) = v.parse::<usize>() {
                if n >= 1 {
                    let _ = rayon::ThreadPoolBuilder::new()
                        .num_threads(n)
                        .build_global();
                }
            }
        }
    });
}

/// Statistics the CLI can evaluate or sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatisticKind {
    Pdf,
    Cdf,
    SnrPdf,
    SnrCdf,
    Moment,
    Mgf,
    Aof,
    Abep,
    Outage,
    OutageCapacity,
    Capacity,
    Lcr,
    Afd,
}

impl StatisticKind {
    pub const ALL: [(&'static str, StatisticKind); 13] = [
        ("pdf", StatisticKind::Pdf),
        ("cdf", StatisticKind::Cdf),
        ("snr-pdf", StatisticKind::SnrPdf),
        ("snr-cdf", StatisticKind::SnrCdf),
        ("moment", StatisticKind::Moment),
        ("mgf", StatisticKind::Mgf),
        ("aof", StatisticKind::Aof),
        ("abep", StatisticKind::Abep),
        ("outage", StatisticKind::Outage),
        ("outage-capacity", StatisticKind::OutageCapacity),
        ("capacity", StatisticKind::Capacity),
        ("lcr", StatisticKind::Lcr),
        ("afd", StatisticKind::Afd),
    ];

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .find(|(n, _)| *n == name)
            .map(|&(_, k)| k)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "unknown statistic `{name}`; valid: {}",
                    Self::ALL.map(|(n, _)| n).join(", ")
                ))
            })
    }

    pub fn name(&self) -> &'static str {
        Self::ALL
            .iter()
            .find(|(_, k)| k == self)
            .map(|(n, _)| *n)
            .unwrap()
    }
}

/// Computation-path choice from `--method`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodChoice {
    /// The robust direct path of each statistic.
    #[default]
    Default,
    Quadrature,
    FoxH,
    Gcq,
    Series,
}

impl MethodChoice {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "default" => Ok(Self::Default),
            "quadrature" => Ok(Self::Quadrature),
            "foxh" => Ok(Self::FoxH),
            "gcq" => Ok(Self::Gcq),
            "series" => Ok(Self::Series),
            other => Err(Error::InvalidParameter(format!(
                "unknown method `{other}`; valid: default, quadrature, foxh, gcq, series"
            ))),
        }
    }
}

/// Fully resolved single-evaluation request.
#[derive(Debug, Clone)]
pub struct EvalRequest {
    pub statistic: StatisticKind,
    pub params: ChannelParams,
    pub method: MethodChoice,
    pub r: Option<f64>,
    pub gamma: Option<f64>,
    pub gamma_bar: Option<f64>,
    pub gamma_th: Option<f64>,
    pub moment_order: Option<f64>,
    pub mgf_s: Option<f64>,
    pub mod_a: Option<f64>,
    pub mod_b: Option<f64>,
    pub bandwidth: Option<f64>,
    pub capacity_th: Option<f64>,
    pub f_s: Option<f64>,
    pub f_x: Option<f64>,
    pub omega_split: Option<(f64, f64)>,
    pub series_terms: usize,
    pub gcq_nodes: usize,
    pub rel_tol: Option<f64>,
}

impl EvalRequest {
    pub fn new(statistic: StatisticKind, params: ChannelParams) -> Self {
        Self {
            statistic,
            params,
            method: MethodChoice::Default,
            r: None,
            gamma: None,
            gamma_bar: None,
            gamma_th: None,
            moment_order: None,
            mgf_s: None,
            mod_a: None,
            mod_b: None,
            bandwidth: None,
            capacity_th: None,
            f_s: None,
            f_x: None,
            omega_split: None,
            series_terms: 8,
            gcq_nodes: 512,
            rel_tol: None,
        }
    }

    fn quad(&self) -> QuadratureSpec {
        match self.rel_tol {
            Some(tol) => QuadratureSpec {
                abs_tol: (tol * 1e-2).max(1e-300),
                rel_tol: tol,
                max_subdivisions: 2000,
            },
            None => QuadratureSpec::default(),
        }
    }

    fn need(&self, v: Option<f64>, flag: &str) -> Result<f64> {
        v.ok_or_else(|| {
            Error::InvalidParameter(format!(
                "statistic `{}` needs --{flag}",
                self.statistic.name()
            ))
        })
    }

    fn cdf_path(&self) -> Result<CdfPath> {
        match self.method {
            MethodChoice::Default | MethodChoice::Quadrature => Ok(CdfPath::Quadrature),
            MethodChoice::FoxH => Ok(CdfPath::FoxH),
            MethodChoice::Gcq => Ok(CdfPath::Gcq {
                nodes: self.gcq_nodes,
            }),
            MethodChoice::Series => Err(Error::InvalidParameter(
                "series method applies only to lcr".into(),
            )),
        }
    }

    fn eval_path(&self) -> Result<EvalPath> {
        match self.method {
            MethodChoice::Default | MethodChoice::Quadrature => Ok(EvalPath::Quadrature),
            MethodChoice::FoxH => Ok(EvalPath::FoxH),
            _ => Err(Error::InvalidParameter(format!(
                "method not supported for `{}`",
                self.statistic.name()
            ))),
        }
    }

    fn doppler(&self) -> Result<DopplerSpec> {
        DopplerSpec::new(self.need(self.f_s, "fs")?, self.need(self.f_x, "fx")?)
    }

    fn split(&self) -> Result<OmegaSplit> {
        match self.omega_split {
            Some((s, x)) => OmegaSplit::new(s, x),
            None => Ok(OmegaSplit::for_omega(self.params.omega())),
        }
    }
}

/// Evaluate the statistic described by the request.
pub fn compute(req: &EvalRequest) -> Result<MetricResult> {
    let quad = req.quad();
    match req.statistic {
        StatisticKind::Pdf => {
            let r = req.need(req.r, "r")?;
            match req.method {
                MethodChoice::FoxH => {
                    let v = stats::envelope_pdf_foxh(&req.params, r)?;
                    Ok(MetricResult::new(v, v.abs() * 1e-9, Method::FoxH))
                }
                _ => {
                    let v = stats::envelope_pdf(&req.params, r)?;
                    Ok(MetricResult::new(v, v.abs() * 1e-10, Method::ClosedForm))
                }
            }
        }
        StatisticKind::Cdf => {
            let r = req.need(req.r, "r")?;
            stats::envelope_cdf_with(&req.params, r, req.cdf_path()?, &quad)
        }
        StatisticKind::SnrPdf => {
            let g = req.need(req.gamma, "gamma")?;
            let gbar = req.need(req.gamma_bar, "gbar")?;
            let v = stats::snr_pdf(&req.params, gbar, g)?;
            Ok(MetricResult::new(v, v.abs() * 1e-10, Method::ClosedForm))
        }
        StatisticKind::SnrCdf => {
            let g = req.need(req.gamma, "gamma")?;
            let gbar = req.need(req.gamma_bar, "gbar")?;
            stats::snr_cdf_with(&req.params, gbar, g, req.cdf_path()?, &quad)
        }
        StatisticKind::Moment => {
            let k = req.need(req.moment_order, "k")?;
            let v = stats::moment(&req.params, k)?;
            Ok(MetricResult::new(v, v.abs() * 1e-13, Method::ClosedForm))
        }
        StatisticKind::Mgf => {
            let s = req.need(req.mgf_s, "s")?;
            let gbar = req.need(req.gamma_bar, "gbar")?;
            stats::mgf_with(&req.params, gbar, s, req.eval_path()?, &quad)
        }
        StatisticKind::Aof => {
            let v = metrics::aof(&req.params);
            Ok(MetricResult::new(v, v.abs() * 1e-13, Method::ClosedForm))
        }
        StatisticKind::Abep => {
            let gbar = req.need(req.gamma_bar, "gbar")?;
            let modulation =
                ModulationSpec::new(req.need(req.mod_a, "a")?, req.need(req.mod_b, "b")?)?;
            metrics::abep_with(&req.params, gbar, &modulation, req.eval_path()?, &quad)
        }
        StatisticKind::Outage => {
            let gbar = req.need(req.gamma_bar, "gbar")?;
            let gth = req.need(req.gamma_th, "gth")?;
            metrics::outage_probability_with(&req.params, gbar, gth, req.cdf_path()?, &quad)
        }
        StatisticKind::OutageCapacity => {
            let gbar = req.need(req.gamma_bar, "gbar")?;
            let cap = CapacitySpec::new(req.need(req.bandwidth, "w")?, gbar)?;
            let cth = req.need(req.capacity_th, "cth")?;
            metrics::outage_capacity_with(&req.params, &cap, cth, req.cdf_path()?, &quad)
        }
        StatisticKind::Capacity => {
            let gbar = req.need(req.gamma_bar, "gbar")?;
            let cap = CapacitySpec::new(req.bandwidth.unwrap_or(1.0), gbar)?;
            metrics::avg_capacity_with(&req.params, &cap, req.eval_path()?, &quad)
        }
        StatisticKind::Lcr => {
            let r = req.need(req.r, "r")?;
            let dop = req.doppler()?;
            let split = req.split()?;
            match req.method {
                MethodChoice::Series => {
                    let s =
                        secondorder::lcr_series(&req.params, &split, &dop, r, req.series_terms)?;
                    Ok(MetricResult::new(s.value, s.last_term, Method::Series))
                }
                MethodChoice::Default | MethodChoice::Quadrature => {
                    let v = secondorder::lcr_integral(&req.params, &split, &dop, r, &quad)?;
                    Ok(MetricResult::new(
                        v,
                        v.abs() * quad.rel_tol,
                        Method::Quadrature,
                    ))
                }
                _ => Err(Error::InvalidParameter(
                    "lcr supports methods: default, quadrature, series".into(),
                )),
            }
        }
        StatisticKind::Afd => {
            let r = req.need(req.r, "r")?;
            let dop = req.doppler()?;
            let split = req.split()?;
            let v = secondorder::afd(&req.params, &split, &dop, r)?;
            Ok(MetricResult::new(v, v.abs() * 1e-8, Method::Quadrature))
        }
    }
}

fn inputs_json(req: &EvalRequest) -> serde_json::Value {
    let (ms, xis) = match req.params.shadowing() {
        Shadowing::Finite { m_s, xi_s } => (Some(m_s), Some(xi_s)),
        Shadowing::None => (None, None),
    };
    let mut map = serde_json::Map::new();
    map.insert("m".into(), json!(req.params.m()));
    map.insert("xi".into(), json!(req.params.xi()));
    map.insert("ms".into(), json!(ms));
    map.insert("xis".into(), json!(xis));
    map.insert("omega".into(), json!(req.params.omega()));
    let mut opt = |k: &str, v: Option<f64>| {
        if let Some(v) = v {
            map.insert(k.into(), json!(v));
        }
    };
    opt("r", req.r);
    opt("gamma", req.gamma);
    opt("gbar", req.gamma_bar);
    opt("gth", req.gamma_th);
    opt("k", req.moment_order);
    opt("s", req.mgf_s);
    opt("a", req.mod_a);
    opt("b", req.mod_b);
    opt("w", req.bandwidth);
    opt("cth", req.capacity_th);
    opt("fs", req.f_s);
    opt("fx", req.f_x);
    serde_json::Value::Object(map)
}

/// `eval` subcommand: one statistic, one JSON object.
pub fn run_eval(req: &EvalRequest) -> Result<serde_json::Value> {
    let res = compute(req)?;
    let mut out = json!({
        "statistic": req.statistic.name(),
        "inputs": inputs_json(req),
        "value": res.value,
        "err_est": res.err_est,
        "method": res.method.to_string(),
    });
    if let Some(note) = res.note {
        out["note"] = json!(note);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

/// Swept variable of a grid run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    R,
    Gamma,
    GammaBar,
    M,
    Xi,
    Ms,
    Xis,
    GammaTh,
}

impl SweepVar {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "r" => Ok(Self::R),
            "gamma" => Ok(Self::Gamma),
            "gamma_bar" | "gbar" => Ok(Self::GammaBar),
            "m" => Ok(Self::M),
            "xi" => Ok(Self::Xi),
            "m_s" | "ms" => Ok(Self::Ms),
            "xi_s" | "xis" => Ok(Self::Xis),
            "gamma_th" | "gth" => Ok(Self::GammaTh),
            other => Err(Error::InvalidParameter(format!(
                "unknown sweep variable `{other}`; valid: r, gamma, gamma_bar, m, xi, m_s, xi_s, gamma_th"
            ))),
        }
    }
}

/// Parse `start:stop:count[:linear|log]` or a comma-separated list into a
/// strictly increasing grid.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let bad = |msg: String| Error::InvalidParameter(msg);
    let grid: Vec<f64> = if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(bad(format!(
                "grid `{text}` must be start:stop:count[:linear|log]"
            )));
        }
        let start: f64 = parts[0]
            .parse()
            .map_err(|_| bad(format!("bad grid start `{}`", parts[0])))?;
        let stop: f64 = parts[1]
            .parse()
            .map_err(|_| bad(format!("bad grid stop `{}`", parts[1])))?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| bad(format!("bad grid count `{}`", parts[2])))?;
        let log = match parts.get(3) {
            None | Some(&"linear") => false,
            Some(&"log") => true,
            Some(other) => return Err(bad(format!("bad grid scale `{other}`"))),
        };
        if count < 2 {
            return Err(bad("grid count must be >= 2".into()));
        }
        if log && !(start > 0.0) {
            return Err(bad("log grid needs start > 0".into()));
        }
        (0..count)
            .map(|i| {
                let f = i as f64 / (count - 1) as f64;
                if log {
                    (start.ln() + f * (stop.ln() - start.ln())).exp()
                } else {
                    start + f * (stop - start)
                }
            })
            .collect()
    } else {
        text.split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| bad(format!("bad grid value `{s}`")))
            })
            .collect::<Result<_>>()?
    };
    if grid.is_empty() {
        return Err(bad("grid is empty".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(bad("grid must be strictly increasing".into()));
    }
    Ok(grid)
}

fn apply_var(base: &EvalRequest, var: SweepVar, x: f64) -> Result<EvalRequest> {
    let mut req = base.clone();
    match var {
        SweepVar::R => req.r = Some(x),
        SweepVar::Gamma => req.gamma = Some(x),
        SweepVar::GammaBar => req.gamma_bar = Some(x),
        SweepVar::GammaTh => req.gamma_th = Some(x),
        SweepVar::M | SweepVar::Xi | SweepVar::Ms | SweepVar::Xis => {
            let p = &base.params;
            let (mut m, mut xi) = (p.m(), p.xi());
            let mut shadow = p.shadowing();
            match var {
                SweepVar::M => m = x,
                SweepVar::Xi => xi = x,
                SweepVar::Ms | SweepVar::Xis => match shadow {
                    Shadowing::Finite { m_s, xi_s } => {
                        shadow = if var == SweepVar::Ms {
                            Shadowing::Finite { m_s: x, xi_s }
                        } else {
                            Shadowing::Finite { m_s, xi_s: x }
                        };
                    }
                    Shadowing::None => {
                        return Err(Error::InvalidParameter(
                            "cannot sweep a shadowing parameter without a shadowing component"
                                .into(),
                        ))
                    }
                },
                _ => unreachable!(),
            }
            req.params = ChannelParams::new(m, xi, shadow, p.omega())?;
        }
    }
    Ok(req)
}

/// Outcome of a sweep: the CSV body plus the number of failed rows.
#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub csv: String,
    pub failures: usize,
}

/// `sweep` subcommand: evaluate the statistic across the grid (rows are
/// computed in parallel, emitted in grid order). Failed rows keep their
/// grid value with `method=failed` and empty value columns.
pub fn run_sweep(base: &EvalRequest, var: SweepVar, grid: &[f64]) -> Result<SweepOutcome> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("grid is empty".into()));
    }
    let rows: Vec<(f64, Result<MetricResult>)> = grid
        .par_iter()
        .map(|&x| {
            let res = apply_var(base, var, x).and_then(|req| compute(&req));
            (x, res)
        })
        .collect();

    let mut csv = String::from("variable,value,method,err_est\n");
    let mut failures = 0;
    for (x, res) in rows {
        match res {
            Ok(r) => csv.push_str(&format!("{},{},{},{}\n", x, r.value, r.method, r.err_est)),
            Err(_) => {
                failures += 1;
                csv.push_str(&format!("{x},,failed,\n"));
            }
        }
    }
    Ok(SweepOutcome { csv, failures })
}

// ---------------------------------------------------------------------------
// Monte Carlo validation
// ---------------------------------------------------------------------------

/// One closed-form-vs-empirical comparison row.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationCheck {
    pub name: String,
    pub closed_form: f64,
    pub estimate: f64,
    pub std_error: f64,
    pub z: f64,
}

/// Full validation report; `passed` requires |z| <= 4 everywhere.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub inputs: serde_json::Value,
    pub tool_version: String,
    pub seed: u64,
    pub samples: u64,
    pub timestamp: String,
    pub checks: Vec<ValidationCheck>,
    pub max_abs_z: f64,
    pub passed: bool,
}

/// `validate` subcommand: run the sampler against the closed forms.
/// `reference_scale` is a test hook that corrupts every closed-form
/// reference by the given factor (1.0 = honest run).
pub fn run_validate(
    p: &ChannelParams,
    gamma_bar: f64,
    samples: u64,
    seed: u64,
    reference_scale: f64,
) -> Result<ValidationReport> {
    if !(gamma_bar > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "gamma_bar must be positive, got {gamma_bar}"
        )));
    }
    let cfg = SimConfig::for_params(p, samples, seed)?;
    let quad = QuadratureSpec::default();

    // Envelope levels at roughly quantile-spaced CDF targets, found by
    // bisection on the (monotone) GCQ CDF.
    let cdf_at = |r: f64| -> Result<f64> {
        Ok(stats::envelope_cdf_with(p, r, CdfPath::Gcq { nodes: 512 }, &quad)?.value)
    };
    let quantile = |q: f64| -> Result<f64> {
        let mut lo = 0.0_f64;
        let mut hi = p.omega().sqrt();
        while cdf_at(hi)? < q {
            hi *= 2.0;
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if cdf_at(mid)? < q {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    };

    let mut stats_list: Vec<(String, Statistic, f64)> = Vec::new();
    for &k in &[1.0, 2.0, 4.0] {
        stats_list.push((
            format!("moment k={k}"),
            Statistic::Moment { k },
            stats::moment(p, k)?,
        ));
    }
    for &q in &[0.1, 0.3, 0.5, 0.7, 0.9] {
        let r = quantile(q)?;
        stats_list.push((
            format!("cdf at r={r:.4} (q~{q})"),
            Statistic::CdfAt { r },
            cdf_at(r)?,
        ));
    }
    for (label, a, b) in [("dpsk", 1.0, 1.0), ("coherent-bpsk", 1.0, 0.5)] {
        let modu = ModulationSpec::new(a, b)?;
        stats_list.push((
            format!("abep {label}"),
            Statistic::Abep { a, b, gamma_bar },
            metrics::abep(p, gamma_bar, &modu, EvalPath::Quadrature)?.value,
        ));
    }
    for &frac in &[0.1, 1.0, 3.0] {
        let gth = frac * gamma_bar;
        stats_list.push((
            format!("outage at gth={gth}"),
            Statistic::Outage {
                gamma_bar,
                gamma_th: gth,
            },
            metrics::outage_probability(p, gamma_bar, gth, CdfPath::Quadrature)?.value,
        ));
    }
    stats_list.push((
        "capacity".into(),
        Statistic::Capacity { gamma_bar },
        metrics::avg_capacity(p, &CapacitySpec::new(1.0, gamma_bar)?, EvalPath::Quadrature)?.value,
    ));

    let mc_stats: Vec<Statistic> = stats_list.iter().map(|(_, s, _)| *s).collect();
    let estimates = montecarlo::estimate_many(&mc_stats, p, &cfg)?;

    let mut checks = Vec::new();
    for ((name, _, closed), est) in stats_list.iter().zip(estimates) {
        let reference = closed * reference_scale;
        checks.push(ValidationCheck {
            name: name.clone(),
            closed_form: reference,
            estimate: est.value,
            std_error: est.std_error,
            z: est.z_score(reference),
        });
    }

    // Amount of fading via the delta-method estimator.
    let aof_est = montecarlo::estimate_aof(p, &cfg)?;
    let aof_closed = metrics::aof(p) * reference_scale;
    checks.push(ValidationCheck {
        name: "aof".into(),
        closed_form: aof_closed,
        estimate: aof_est.value,
        std_error: aof_est.std_error,
        z: aof_est.z_score(aof_closed),
    });

    let max_abs_z = checks.iter().map(|c| c.z.abs()).fold(0.0, f64::max);
    let req = EvalRequest::new(StatisticKind::Aof, *p);
    Ok(ValidationReport {
        inputs: inputs_json(&req),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        seed,
        samples,
        timestamp: timestamp(),
        checks,
        max_abs_z,
        passed: max_abs_z <= 4.0,
    })
}

fn timestamp() -> String {
    let now = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("{now}")
}

// ---------------------------------------------------------------------------
// Preset table
// ---------------------------------------------------------------------------

fn slot_str(s: &Slot) -> String {
    match s {
        Slot::Fixed(v) => format!("{v}"),
        Slot::Free => "free".into(),
    }
}

/// `presets` subcommand: one row per catalog entry.
pub fn presets_table() -> String {
    let cat = PresetCatalog::builtin();
    let mut out = String::new();
    out.push_str(&format!(
        "{:<26} {:>6} {:>6} {:>6} {:>6}  source\n",
        "name", "m", "xi", "m_s", "xi_s"
    ));
    for p in cat.iter() {
        let (ms, xis) = match &p.shadow {
            crate::params::ShadowSlots::None => ("-".to_string(), "-".to_string()),
            crate::params::ShadowSlots::Finite { m_s, xi_s } => (slot_str(m_s), slot_str(xi_s)),
        };
        out.push_str(&format!(
            "{:<26} {:>6} {:>6} {:>6} {:>6}  {}\n",
            p.name,
            slot_str(&p.m),
            slot_str(&p.xi),
            ms,
            xis,
            p.source
        ));
    }
    out
}
