//! Extended generalized-K (EGK) composite fading channel statistics.
//!
//! The EGK envelope is the product of two generalized Nakagami-m variates
//! (multipath x shadowing), controlled by five parameters: the fading figure
//! `m`, the fading shaping factor `xi`, the shadowing figure `m_s`, the
//! shadowing shaping factor `xi_s`, and the mean power `omega`. This crate
//! provides:
//!
//! - [`specfun`]: log-gamma, incomplete gammas, the extended incomplete
//!   gamma pair, adaptive quadrature, and the Gauss-Chebyshev rule;
//! - [`foxh`]: a numerical Mellin-Barnes evaluator for the gamma-kernel
//!   Fox H-functions used as closed-form cross-checks;
//! - [`params`]: channel parameterization and the named preset catalog;
//! - [`stats`]: envelope/SNR PDF, CDF, MGF, and fractional moments, each
//!   with at least two independent computation paths;
//! - [`montecarlo`]: a reproducible sampling oracle for every statistic;
//! - [`secondorder`]: level crossing rate, average fade duration, and a
//!   sum-of-sinusoids time-series validator;
//! - [`metrics`]: amount of fading, average bit error probability, outage
//!   probability/capacity, and average capacity;
//! - [`cli`]: the machinery behind the `egk` command-line tool.
//!
//! Every closed form is cross-validated in the test suite against direct
//! quadrature and against the Monte Carlo sampler.

// `!(x > 0.0)` is the NaN-rejecting validation form; `x <= 0.0` admits NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod foxh;
pub mod metrics;
pub mod montecarlo;
pub mod params;
pub mod secondorder;
pub mod specfun;
pub mod stats;

use serde::Serialize;

/// Errors produced by the numerical and validation layers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument fell outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A channel/config parameter violated its invariants.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An integral is provably divergent for the requested arguments.
    #[error("divergent integral: {0}")]
    Divergent(String),

    /// Adaptive quadrature stopped before reaching the requested tolerance.
    /// The best estimate and its error bound are carried along.
    #[error("quadrature did not converge: estimate {estimate:e} +/- {err_est:e} after {subdivisions} subdivisions")]
    Accuracy {
        estimate: f64,
        err_est: f64,
        subdivisions: usize,
    },

    /// No vertical contour separates the gamma-kernel pole families.
    #[error("infeasible Mellin-Barnes contour: {0}")]
    InfeasibleContour(String),

    /// The truncated contour integral failed its convergence checks.
    #[error("contour integral did not converge: {0}")]
    ContourDiverged(String),

    /// A term of the LCR series could not be evaluated.
    #[error("series term n={n} failed: {source}")]
    SeriesTerm {
        n: usize,
        #[source]
        source: Box<Error>,
    },

    /// Unknown preset name.
    #[error("unknown preset `{name}`; available: {available}")]
    UnknownPreset { name: String, available: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("preset file parse error: {0}")]
    PresetFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Computation path that produced a [`MetricResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Quadrature,
    Series,
    FoxH,
    Gcq,
    MonteCarlo,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Method::ClosedForm => "closed-form",
            Method::Quadrature => "quadrature",
            Method::Series => "series",
            Method::FoxH => "fox-h",
            Method::Gcq => "gcq",
            Method::MonteCarlo => "monte-carlo",
        };
        f.write_str(s)
    }
}

/// A computed statistic together with the path that produced it and an
/// error estimate. `note` records method downgrades (e.g. a Fox-H path
/// that fell back to quadrature).
#[derive(Debug, Clone, Serialize)]
pub struct MetricResult {
    pub value: f64,
    pub err_est: f64,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl MetricResult {
    pub fn new(value: f64, err_est: f64, method: Method) -> Self {
        Self {
            value,
            err_est,
            method,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

pub use params::{ChannelParams, DerivedBetas, OmegaSplit, Preset, PresetCatalog, Shadowing};
pub use specfun::QuadratureSpec;
