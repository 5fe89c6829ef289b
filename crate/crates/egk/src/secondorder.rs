//! Second-order statistics of the EGK envelope: level crossing rate (exact
//! integral and extended-gamma series), average fade duration, and a
//! sum-of-sinusoids time-series validator for integer fading figures.
//!
//! The exact LCR comes from the Rice formula with the conditional variance
//! `var(Rdot | R=r, S=u) = (r/u)^2 var(Sdot|S=u) + u^2 var(Xdot|X=r/u)`;
//! the series form converts the same integral into binomial-weighted
//! extended incomplete gammas split at the point where the two variance
//! terms balance. Both paths are evaluated in log space so near-degenerate
//! shadowing (large figures) stays finite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::params::{derive_betas, ChannelParams, OmegaSplit, Shadowing};
use crate::specfun::{
    ext_lower_gamma_with, ext_upper_gamma_with, integrate, ln_gamma, QuadratureSpec,
};
use crate::stats::{envelope_cdf, CdfPath};
use crate::{Error, Result};

const PI: f64 = std::f64::consts::PI;

/// Maximum Doppler shifts of the shadowing and multipath components. The
/// per-component envelope-derivative scales are `sigma = sqrt(2) pi f`
/// (isotropic scattering).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DopplerSpec {
    f_s: f64,
    f_x: f64,
}

impl DopplerSpec {
    pub fn new(f_s: f64, f_x: f64) -> Result<Self> {
        if !(f_s >= 0.0) || !(f_x > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "doppler spec needs f_s >= 0 and f_x > 0, got ({f_s}, {f_x})"
            )));
        }
        Ok(Self { f_s, f_x })
    }

    pub fn f_s(&self) -> f64 {
        self.f_s
    }

    pub fn f_x(&self) -> f64 {
        self.f_x
    }

    /// Envelope-derivative scale of one shadowing Gaussian component.
    pub fn sigma_dot_s(&self) -> f64 {
        std::f64::consts::SQRT_2 * PI * self.f_s
    }

    /// Envelope-derivative scale of one multipath Gaussian component.
    pub fn sigma_dot_x(&self) -> f64 {
        std::f64::consts::SQRT_2 * PI * self.f_x
    }
}

fn require_shadowing(p: &ChannelParams) -> Result<(f64, f64)> {
    p.finite_shadowing().ok_or_else(|| {
        Error::InvalidParameter("second-order statistics need a finite shadowing component".into())
    })
}

/// Conditional variance of the envelope derivative given the envelope and
/// the shadowing levels, transcribed term by term:
/// `sigma_S^2/(2 xi_s^2) (Omega_S/beta_s)^{xi_s} u^{2 xi_s (1/xi_s - 1)}
///  + sigma_X^2/(2 xi^2) (Omega_X/beta)^{xi} (r/u)^{2 xi (1/xi - 1)}`.
pub fn cond_variance(
    p: &ChannelParams,
    split: &OmegaSplit,
    dop: &DopplerSpec,
    r: f64,
    u: f64,
) -> Result<f64> {
    let (m_s, xi_s) = require_shadowing(p)?;
    let _ = m_s;
    split.check_matches(p)?;
    if !(r > 0.0) || !(u > 0.0) {
        return Err(Error::Domain(format!(
            "cond_variance requires r > 0 and u > 0, got ({r}, {u})"
        )));
    }
    let betas = derive_betas(p);
    let xi = p.xi();
    let ss2 = dop.sigma_dot_s().powi(2);
    let sx2 = dop.sigma_dot_x().powi(2);
    let t_s = ss2 / (2.0 * xi_s * xi_s)
        * (split.omega_s / betas.beta_s).powf(xi_s)
        * u.powf(2.0 * xi_s * (1.0 / xi_s - 1.0));
    let t_x = sx2 / (2.0 * xi * xi)
        * (split.omega_x / betas.beta).powf(xi)
        * (r / u).powf(2.0 * xi * (1.0 / xi - 1.0));
    Ok(t_s + t_x)
}

/// log(a + b) from log a and log b.
fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    hi + (lo - hi).exp().ln_1p()
}

struct LcrSetup {
    m: f64,
    xi: f64,
    m_s: f64,
    xi_s: f64,
    ln_ks: f64, // ln (beta_s / omega_s)^{xi_s}
    ln_kx: f64, // ln (beta / omega_x)^{xi}
    ln_gm: f64,
    ln_gms: f64,
    ss2: f64,
    sx2: f64,
}

fn lcr_setup(p: &ChannelParams, split: &OmegaSplit, dop: &DopplerSpec) -> Result<LcrSetup> {
    let (m_s, xi_s) = require_shadowing(p)?;
    split.check_matches(p)?;
    let betas = derive_betas(p);
    Ok(LcrSetup {
        m: p.m(),
        xi: p.xi(),
        m_s,
        xi_s,
        ln_ks: xi_s * (betas.beta_s / split.omega_s).ln(),
        ln_kx: p.xi() * (betas.beta / split.omega_x).ln(),
        ln_gm: ln_gamma(p.m())?,
        ln_gms: ln_gamma(m_s)?,
        ss2: dop.sigma_dot_s().powi(2),
        sx2: dop.sigma_dot_x().powi(2),
    })
}

/// Exact LCR: Rice-formula integral over the shadowing level, evaluated
/// after the `u -> tan(theta)` change of variable with a fully log-space
/// integrand.
pub fn lcr_integral(
    p: &ChannelParams,
    split: &OmegaSplit,
    dop: &DopplerSpec,
    r: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("lcr requires r > 0, got {r}")));
    }
    let s = lcr_setup(p, split, dop)?;
    let (m, xi, m_s, xi_s) = (s.m, s.xi, s.m_s, s.xi_s);
    let ln_r = r.ln();

    // ln of the two conditional-variance terms, each already weighted by
    // (r/u)^2 and u^2 respectively.
    let ln_a = (s.ss2 / (2.0 * xi_s * xi_s)).ln() - s.ln_ks;
    let ln_b = (s.sx2 / (2.0 * xi * xi)).ln() - s.ln_kx;

    let integrand = |u: f64| -> f64 {
        if !(u > 0.0) || !u.is_finite() {
            return 0.0;
        }
        let ln_u = u.ln();
        let ln_t1 = ln_a + 2.0 * ln_r - 2.0 * xi_s * ln_u;
        let ln_t2 = ln_b + (2.0 - 2.0 * xi) * ln_r + 2.0 * xi * ln_u;
        let ln_sigma = 0.5 * log_add_exp(ln_t1, ln_t2);

        let ln_ps = (2.0 * xi_s).ln() - s.ln_gms + m_s * s.ln_ks + (2.0 * m_s * xi_s - 1.0) * ln_u
            - (s.ln_ks + 2.0 * xi_s * ln_u).exp();
        let ln_px = (2.0 * xi).ln() - s.ln_gm + m * s.ln_kx + (2.0 * m * xi - 1.0) * (ln_r - ln_u)
            - (s.ln_kx + 2.0 * xi * (ln_r - ln_u)).exp();

        let total = ln_sigma + ln_ps + ln_px - ln_u;
        if total < -745.0 {
            0.0
        } else {
            total.exp()
        }
    };

    let value = integrate(
        |theta| {
            let u = theta.tan();
            let sec2 = 1.0 + u * u;
            integrand(u) * sec2
        },
        0.0,
        PI / 2.0,
        quad,
    )?
    .value;
    Ok(value / (2.0 * PI).sqrt())
}

/// Truncated LCR series value and the magnitude of its last term.
#[derive(Debug, Clone, Copy)]
pub struct LcrSeries {
    pub value: f64,
    pub last_term: f64,
}

/// Offsets added to the extended-gamma orders of the two series branches.
/// `Consistent` is the re-derivation that the exact integral confirms;
/// `Legacy` keeps the misprinted offsets (and prefactor) for regression
/// tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SeriesVariant {
    Consistent,
    Legacy,
}

/// Auxiliary scale of the LCR series,
/// `Q_n(r) = [sigma_S^2 xi^2/(sigma_X^2 xi_s^2) ((beta_s beta/omega) r^2)^xi]^n`;
/// `Q_0` is identically 1.
pub fn aux_q(
    p: &ChannelParams,
    split: &OmegaSplit,
    dop: &DopplerSpec,
    r: f64,
    order: f64,
) -> Result<f64> {
    let s = lcr_setup(p, split, dop)?;
    let ln_q = (s.ss2 * s.xi * s.xi / (s.sx2 * s.xi_s * s.xi_s)).ln()
        + s.ln_ks / s.xi_s * s.xi
        + s.ln_kx
        + 2.0 * s.xi * r.ln();
    Ok((order * ln_q).exp())
}

fn lcr_series_impl(
    p: &ChannelParams,
    split: &OmegaSplit,
    dop: &DopplerSpec,
    r: f64,
    n_terms: usize,
    variant: SeriesVariant,
) -> Result<LcrSeries> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("lcr requires r > 0, got {r}")));
    }
    if !(dop.f_s() > 0.0) {
        return Err(Error::InvalidParameter(
            "the LCR series needs f_s > 0 (use the integral path for a static shadow)".into(),
        ));
    }
    if n_terms == 0 {
        return Err(Error::InvalidParameter("series needs N >= 1".into()));
    }
    let s = lcr_setup(p, split, dop)?;
    let (m, xi, m_s, xi_s) = (s.m, s.xi, s.m_s, s.xi_s);

    // ln q, split point q^{xi_s/(xi_s+xi)}, and the b-argument of the
    // extended gammas, all shared across terms.
    let ln_q = (s.ss2 * xi * xi / (s.sx2 * xi_s * xi_s)).ln()
        + s.ln_ks / xi_s * xi
        + s.ln_kx
        + 2.0 * xi * r.ln();
    let x0 = (ln_q * xi_s / (xi_s + xi)).exp();
    let b_arg = (s.ln_ks / xi_s * xi + s.ln_kx + 2.0 * xi * r.ln()).exp();
    let beta_ext = xi / xi_s;

    // (beta_s beta / omega)^{m xi} needs xi on both factors, so the
    // shadow half is rescaled from its native xi_s power.
    let mut ln_pref = (xi / xi_s).ln()
        + 0.5 * (s.ss2 / PI).ln()
        + m * (s.ln_ks / xi_s * xi + s.ln_kx)
        + 2.0 * m * xi * r.ln()
        - s.ln_gm
        - s.ln_gms;
    if variant == SeriesVariant::Legacy {
        // The printed prefactor carries an extra sqrt(omega_s / beta_s).
        ln_pref += -0.5 * s.ln_ks / xi_s;
    }

    let quad = QuadratureSpec {
        abs_tol: 1e-14,
        rel_tol: 1e-11,
        max_subdivisions: 2000,
    };

    // Accumulate terms as (sign, ln magnitude) so extreme parameter sets
    // stay representable, then collapse with a max shift.
    let mut terms: Vec<(f64, f64)> = Vec::with_capacity(2 * (n_terms + 1));
    let mut binom = 1.0_f64; // C(1/2, 0)
    let mut last_term = 0.0_f64;
    for n in 0..=n_terms {
        let nf = n as f64;
        let (off_lower, off_upper) = match variant {
            SeriesVariant::Consistent => (-0.5, xi / (2.0 * xi_s)),
            SeriesVariant::Legacy => (-(xi_s - 1.0) / (2.0 * xi_s), -(xi + 1.0) / (2.0 * xi_s)),
        };
        let a_lower = (m_s + nf) - (xi / xi_s) * (m - nf) + off_lower;
        let a_upper = (m_s - nf) - (xi / xi_s) * (m + nf) + off_upper;

        let err_map = |e: Error| Error::SeriesTerm {
            n,
            source: Box::new(e),
        };
        let g_lower = ext_lower_gamma_with(a_lower, x0, b_arg, beta_ext, &quad).map_err(err_map)?;
        let g_upper = ext_upper_gamma_with(a_upper, x0, b_arg, beta_ext, &quad).map_err(err_map)?;
        if !g_lower.is_finite() || !g_upper.is_finite() {
            return Err(Error::SeriesTerm {
                n,
                source: Box::new(Error::Domain("extended gamma overflowed".into())),
            });
        }

        let sign = binom.signum();
        let ln_c = binom.abs().ln();
        let t1 = ln_c - nf * ln_q + g_lower.max(0.0).ln();
        let t2 = ln_c + (nf - 0.5) * ln_q + g_upper.max(0.0).ln();
        terms.push((sign, t1));
        terms.push((sign, t2));
        last_term = (ln_pref + log_add_exp(t1, t2)).exp();

        binom *= (0.5 - nf) / (nf + 1.0);
    }

    let peak = terms
        .iter()
        .map(|&(_, l)| l)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut acc = 0.0;
    for &(sign, l) in &terms {
        acc += sign * (l - peak).exp();
    }
    let value = (ln_pref + peak).exp() * acc;
    Ok(LcrSeries { value, last_term })
}

/// Closed-form LCR series truncated at `n_terms` binomial terms.
pub fn lcr_series(
    p: &ChannelParams,
    split: &OmegaSplit,
    dop: &DopplerSpec,
    r: f64,
    n_terms: usize,
) -> Result<LcrSeries> {
    lcr_series_impl(p, split, dop, r, n_terms, SeriesVariant::Consistent)
}

/// Average fade duration `CDF(r) / LCR(r)` using the integral LCR path.
/// Returns `f64::INFINITY` when the crossing rate underflows.
pub fn afd(p: &ChannelParams, split: &OmegaSplit, dop: &DopplerSpec, r: f64) -> Result<f64> {
    let quad = QuadratureSpec::default();
    let lcr = lcr_integral(p, split, dop, r, &quad)?;
    let cdf = envelope_cdf(p, r, CdfPath::Quadrature)?.value;
    if lcr < 1e-300 {
        return Ok(f64::INFINITY);
    }
    Ok(cdf / lcr)
}

// ---------------------------------------------------------------------------
// Sum-of-sinusoids time-series validator
// ---------------------------------------------------------------------------

/// Time-grid and synthesis settings for [`simulate_process`].
#[derive(Debug, Clone, Copy)]
pub struct ProcessConfig {
    pub duration: f64,
    pub dt: f64,
    pub n_sinusoids: usize,
    pub seed: u64,
}

impl ProcessConfig {
    pub fn new(duration: f64, dt: f64, n_sinusoids: usize, seed: u64) -> Result<Self> {
        if !(duration > 0.0) || !(dt > 0.0) || n_sinusoids == 0 {
            return Err(Error::InvalidParameter(
                "process config needs positive duration/dt and n_sinusoids >= 1".into(),
            ));
        }
        Ok(Self {
            duration,
            dt,
            n_sinusoids,
            seed,
        })
    }

    fn validate_against(&self, dop: &DopplerSpec) -> Result<usize> {
        let f_max = dop.f_s().max(dop.f_x());
        if self.dt > 1.0 / (20.0 * f_max) {
            return Err(Error::InvalidParameter(format!(
                "dt = {} undersamples the Doppler bandwidth; need dt <= {}",
                self.dt,
                1.0 / (20.0 * f_max)
            )));
        }
        let n = (self.duration / self.dt).floor() as usize;
        if n < 10_000 {
            return Err(Error::InvalidParameter(format!(
                "duration/dt = {n} is below the 1e4 sample floor"
            )));
        }
        Ok(n)
    }
}

/// Envelope sample path with helpers for empirical second-order statistics.
#[derive(Debug, Clone)]
pub struct TimeSeries {
    pub dt: f64,
    pub samples: Vec<f64>,
}

impl TimeSeries {
    /// Mean of the squared envelope.
    pub fn mean_power(&self) -> f64 {
        self.samples.iter().map(|&x| x * x).sum::<f64>() / self.samples.len() as f64
    }

    /// Downward crossings of `level` per second.
    pub fn empirical_lcr(&self, level: f64) -> f64 {
        let crossings = self
            .samples
            .windows(2)
            .filter(|w| w[0] >= level && w[1] < level)
            .count();
        crossings as f64 / (self.dt * (self.samples.len() - 1) as f64)
    }

    /// Fraction of time spent below `level`.
    pub fn empirical_cdf(&self, level: f64) -> f64 {
        self.samples.iter().filter(|&&x| x < level).count() as f64 / self.samples.len() as f64
    }

    /// Mean dwell time below `level` per downward crossing.
    pub fn empirical_afd(&self, level: f64) -> f64 {
        let below = self.samples.iter().filter(|&&x| x < level).count();
        let crossings = self
            .samples
            .windows(2)
            .filter(|w| w[0] >= level && w[1] < level)
            .count();
        if crossings == 0 {
            return f64::INFINITY;
        }
        self.dt * below as f64 / crossings as f64
    }

    /// Two-column export: time and envelope.
    pub fn export_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "time,envelope")?;
        for (i, &x) in self.samples.iter().enumerate() {
            writeln!(w, "{},{}", i as f64 * self.dt, x)?;
        }
        Ok(())
    }
}

/// One real Gaussian process from `n` sinusoids with isotropic-scattering
/// statistics: arrival angles stratified over the first quadrant (one per
/// equal slice, jittered), so that the Doppler frequencies are distinct,
/// bounded away from zero, and reproduce both the Jakes autocorrelation
/// and the `2 (pi f)^2` derivative variance per unit power.
struct SinusoidBank {
    omegas: Vec<f64>,
    phases: Vec<f64>,
    scale: f64,
}

impl SinusoidBank {
    fn draw<R: Rng + ?Sized>(f_d: f64, n: usize, rng: &mut R) -> Self {
        let omegas = (0..n)
            .map(|k| {
                let alpha = (PI / 2.0) * (k as f64 + rng.gen::<f64>()) / n as f64;
                2.0 * PI * f_d * alpha.sin()
            })
            .collect();
        let phases = (0..n).map(|_| 2.0 * PI * rng.gen::<f64>()).collect();
        SinusoidBank {
            omegas,
            phases,
            scale: (2.0 / n as f64).sqrt(),
        }
    }

    fn sample(&self, t: f64) -> f64 {
        self.scale
            * self
                .omegas
                .iter()
                .zip(&self.phases)
                .map(|(&w, &p)| (w * t + p).cos())
                .sum::<f64>()
    }
}

/// Synthesize an EGK envelope path for integer fading figures: each factor
/// is `sqrt(omega/beta) * G(t)^{1/(2 xi)}` where `G(t)` sums the squared
/// Gaussian components (two per unit of the figure, halved), matching the
/// law of the gamma-transformation sampler pointwise.
pub fn simulate_process(
    p: &ChannelParams,
    split: &OmegaSplit,
    dop: &DopplerSpec,
    cfg: &ProcessConfig,
) -> Result<TimeSeries> {
    split.check_matches(p)?;
    let n = cfg.validate_against(dop)?;
    let integer = |v: f64, name: &str| -> Result<usize> {
        if (v - v.round()).abs() > 1e-9 || v < 0.5 {
            return Err(Error::InvalidParameter(format!(
                "simulate_process needs integer {name}, got {v}"
            )));
        }
        Ok(v.round() as usize)
    };
    let m = integer(p.m(), "m")?;
    let betas = derive_betas(p);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut multipath: Vec<SinusoidBank> = Vec::with_capacity(2 * m);
    for _ in 0..2 * m {
        multipath.push(SinusoidBank::draw(dop.f_x(), cfg.n_sinusoids, &mut rng));
    }
    let shadow = match p.shadowing() {
        Shadowing::Finite { m_s, .. } => {
            let m_s = integer(m_s, "m_s")?;
            let mut banks = Vec::with_capacity(2 * m_s);
            for _ in 0..2 * m_s {
                banks.push(SinusoidBank::draw(dop.f_s(), cfg.n_sinusoids, &mut rng));
            }
            Some(banks)
        }
        Shadowing::None => None,
    };

    let xi = p.xi();
    let xi_s = p.finite_shadowing().map(|(_, x)| x).unwrap_or(1.0);
    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let t = i as f64 * cfg.dt;
        let g_x: f64 = multipath.iter().map(|b| b.sample(t).powi(2)).sum::<f64>() / 2.0;
        let x = (split.omega_x / betas.beta).sqrt() * g_x.powf(1.0 / (2.0 * xi));
        let s = match &shadow {
            Some(banks) => {
                let g_s: f64 = banks.iter().map(|b| b.sample(t).powi(2)).sum::<f64>() / 2.0;
                (split.omega_s / betas.beta_s).sqrt() * g_s.powf(1.0 / (2.0 * xi_s))
            }
            None => split.omega_s.sqrt(),
        };
        samples.push(s * x);
    }
    Ok(TimeSeries {
        dt: cfg.dt,
        samples,
    })
}
