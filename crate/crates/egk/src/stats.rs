//! First-order statistics of the EGK envelope and its SNR law: PDF, CDF,
//! MGF, and fractional moments. Each statistic has a direct path built on
//! the extended incomplete gamma and at least one independent cross-check
//! path (Fox-H Mellin-Barnes form, Gauss-Chebyshev sum, or raw quadrature).

use crate::foxh::{
    foxh_ccdf_spec, foxh_cdf_spec, foxh_eval, foxh_mgf_spec, foxh_pdf_spec, gamma_norm,
};
use crate::params::{derive_betas, ChannelParams, Shadowing};
use crate::specfun::{ext_upper_gamma, gcq_rule, integrate, ln_gamma, QuadratureSpec};
use crate::{Error, Method, MetricResult, Result};

/// CDF computation path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CdfPath {
    /// Adaptive quadrature of the PDF (the robust default).
    #[default]
    Quadrature,
    /// Mellin-Barnes evaluation of the closed H form.
    FoxH,
    /// Gauss-Chebyshev sum with the given node count (>= 30).
    Gcq { nodes: usize },
}

/// Computation path for MGF-like integrals (MGF, ABEP, capacity).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalPath {
    #[default]
    Quadrature,
    FoxH,
}

/// Relative accuracy target of the auto-tuned Mellin-Barnes path, used as
/// its reported error estimate.
pub(crate) const FOXH_REL_EST: f64 = 1e-9;

fn check_r(r: f64) -> Result<()> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!(
            "envelope level must be >= 0, got {r}"
        )));
    }
    Ok(())
}

/// Envelope PDF, direct extended-incomplete-gamma path.
///
/// With shadowing: `p(r) = 2 xi/(G(m_s)G(m)) x^{m xi} r^{2 m xi - 1}
/// Gamma(m_s - m xi/xi_s, 0, (x r^2)^xi, xi/xi_s)` with `x = beta_s beta / omega`.
/// Without: the generalized Nakagami-m density
/// `2 xi/G(m) (beta/omega)^{m xi} r^{2 m xi - 1} exp(-((beta/omega) r^2)^xi)`.
///
/// At `r = 0` the analytic limit is returned: 0 when `2 m xi > 1`, the
/// finite constant when `2 m xi = 1`, and an error when the density is
/// unbounded at the origin (`2 m xi < 1`).
pub fn envelope_pdf(p: &ChannelParams, r: f64) -> Result<f64> {
    check_r(r)?;
    let (m, xi, omega) = (p.m(), p.xi(), p.omega());
    let betas = derive_betas(p);
    let power = 2.0 * m * xi - 1.0;

    if r == 0.0 {
        if power > 0.0 {
            return Ok(0.0);
        }
        if power < 0.0 {
            return Err(Error::Domain(
                "density unbounded at the origin (2 m xi < 1)".into(),
            ));
        }
        // 2 m xi = 1: finite constant.
        return match p.shadowing() {
            Shadowing::None => {
                let lg = ln_gamma(m)?;
                Ok(2.0 * xi * (-lg).exp() * (betas.beta / omega).powf(m * xi))
            }
            Shadowing::Finite { m_s, xi_s } => {
                let alpha = m_s - m * xi / xi_s;
                if alpha <= 0.0 {
                    return Err(Error::Domain(
                        "density unbounded at the origin (shadowing tail dominates)".into(),
                    ));
                }
                let norm = gamma_norm(p);
                let x = betas.beta_s * betas.beta / omega;
                Ok(2.0 * xi * norm * x.powf(m * xi) * ln_gamma(alpha)?.exp())
            }
        };
    }

    match p.shadowing() {
        Shadowing::None => {
            let lg = ln_gamma(m)?;
            let k = betas.beta / omega;
            let e = (k * r * r).powf(xi);
            let ln_v = (2.0 * xi).ln() - lg + m * xi * k.ln() + power * r.ln() - e;
            Ok(if ln_v < -745.0 { 0.0 } else { ln_v.exp() })
        }
        Shadowing::Finite { m_s, xi_s } => {
            let norm = gamma_norm(p);
            let x = betas.beta_s * betas.beta / omega;
            let b = (x * r * r).powf(xi);
            let g = ext_upper_gamma(m_s - m * xi / xi_s, 0.0, b, xi / xi_s)?;
            Ok(2.0 * xi * norm * x.powf(m * xi) * r.powf(power) * g)
        }
    }
}

/// Envelope PDF through the Fox-H kernel (the cross-check path).
pub fn envelope_pdf_foxh(p: &ChannelParams, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Domain("fox-h pdf path requires r > 0".into()));
    }
    let spec = foxh_pdf_spec(p);
    let z = crate::foxh::arg_scale(p) * r * r;
    Ok(2.0 * gamma_norm(p) / r * foxh_eval(&spec, z, None)?)
}

/// SNR (power-domain) PDF: the envelope law re-scaled to mean SNR
/// `gamma_bar` and transformed by `gamma = r^2`.
pub fn snr_pdf(p: &ChannelParams, gamma_bar: f64, gamma: f64) -> Result<f64> {
    if !(gamma_bar > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "gamma_bar must be positive, got {gamma_bar}"
        )));
    }
    if !(gamma > 0.0) {
        return Err(Error::Domain(format!(
            "snr_pdf requires gamma > 0, got {gamma}"
        )));
    }
    let scaled = p.with_omega(gamma_bar)?;
    let r = gamma.sqrt();
    Ok(envelope_pdf(&scaled, r)? / (2.0 * r))
}

fn cdf_quadrature(p: &ChannelParams, r: f64, quad: &QuadratureSpec) -> Result<MetricResult> {
    let integral = integrate(|u| envelope_pdf(p, u).unwrap_or(f64::NAN), 0.0, r, quad)?;
    Ok(MetricResult::new(
        integral.value.clamp(0.0, 1.0),
        integral.err_est,
        Method::Quadrature,
    ))
}

fn cdf_gcq(p: &ChannelParams, r: f64, nodes: usize) -> Result<MetricResult> {
    if nodes < 30 {
        return Err(Error::InvalidParameter(format!(
            "GCQ CDF path needs at least 30 nodes, got {nodes}"
        )));
    }
    let sum = |n: usize| -> Result<f64> {
        let rule = gcq_rule(n)?;
        let mut acc = 0.0;
        for (&w, &v) in rule.weights().iter().zip(rule.nodes()) {
            acc += w * envelope_pdf(p, r * v)?;
        }
        Ok(r * acc)
    };
    let value = sum(nodes)?;
    let refined = sum(2 * nodes)?;
    Ok(MetricResult::new(
        value,
        (refined - value).abs(),
        Method::Gcq,
    ))
}

/// Envelope CDF `P(R <= r)` through the chosen path. A Fox-H failure falls
/// back to quadrature and records the downgrade in the result note.
pub fn envelope_cdf(p: &ChannelParams, r: f64, path: CdfPath) -> Result<MetricResult> {
    envelope_cdf_with(p, r, path, &QuadratureSpec::default())
}

/// [`envelope_cdf`] with caller-supplied quadrature tolerances.
pub fn envelope_cdf_with(
    p: &ChannelParams,
    r: f64,
    path: CdfPath,
    quad: &QuadratureSpec,
) -> Result<MetricResult> {
    check_r(r)?;
    if r == 0.0 {
        return Ok(MetricResult::new(0.0, 0.0, Method::ClosedForm));
    }
    match path {
        CdfPath::Quadrature => cdf_quadrature(p, r, quad),
        CdfPath::Gcq { nodes } => cdf_gcq(p, r, nodes),
        CdfPath::FoxH => {
            let spec = foxh_cdf_spec(p);
            let z = crate::foxh::arg_scale(p) * r * r;
            match foxh_eval(&spec, z, None) {
                Ok(h) => {
                    let v = gamma_norm(p) * h;
                    Ok(MetricResult::new(
                        v.clamp(0.0, 1.0),
                        v.abs() * FOXH_REL_EST,
                        Method::FoxH,
                    ))
                }
                Err(e) => Ok(cdf_quadrature(p, r, quad)?
                    .with_note(format!("fox-h path failed ({e}); downgraded to quadrature"))),
            }
        }
    }
}

/// Complementary CDF through the alternative H form; used to test the
/// complement identity between the two closed representations.
pub fn envelope_ccdf_foxh(p: &ChannelParams, r: f64) -> Result<f64> {
    check_r(r)?;
    let spec = foxh_ccdf_spec(p);
    let z = crate::foxh::arg_scale(p) * r * r;
    Ok(gamma_norm(p) * foxh_eval(&spec, z, None)?)
}

/// SNR CDF: `P_G(gamma) = P_R(sqrt(gamma))` with the power re-scaled.
pub fn snr_cdf(
    p: &ChannelParams,
    gamma_bar: f64,
    gamma: f64,
    path: CdfPath,
) -> Result<MetricResult> {
    snr_cdf_with(p, gamma_bar, gamma, path, &QuadratureSpec::default())
}

/// [`snr_cdf`] with caller-supplied quadrature tolerances.
pub fn snr_cdf_with(
    p: &ChannelParams,
    gamma_bar: f64,
    gamma: f64,
    path: CdfPath,
    quad: &QuadratureSpec,
) -> Result<MetricResult> {
    if !(gamma_bar > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "gamma_bar must be positive, got {gamma_bar}"
        )));
    }
    if !(gamma >= 0.0) {
        return Err(Error::Domain(format!(
            "snr_cdf requires gamma >= 0, got {gamma}"
        )));
    }
    let scaled = p.with_omega(gamma_bar)?;
    envelope_cdf_with(&scaled, gamma.sqrt(), path, quad)
}

/// Fractional moment `E[R^k]`, closed form:
/// `G(m_s + k/2xi_s) G(m + k/2xi) / (G(m_s) G(m)) * (omega/(beta_s beta))^{k/2}`
/// (shadowing factor dropped when absent).
pub fn moment(p: &ChannelParams, k: f64) -> Result<f64> {
    if !(k >= 0.0) || !k.is_finite() {
        return Err(Error::Domain(format!("moment order must be >= 0, got {k}")));
    }
    let betas = derive_betas(p);
    let mut ln_v = ln_gamma(p.m() + k / (2.0 * p.xi()))? - ln_gamma(p.m())?;
    if let Shadowing::Finite { m_s, xi_s } = p.shadowing() {
        ln_v += ln_gamma(m_s + k / (2.0 * xi_s))? - ln_gamma(m_s)?;
    }
    ln_v += 0.5 * k * (p.omega() / (betas.beta_s * betas.beta)).ln();
    Ok(ln_v.exp())
}

/// SNR moment `E[G^k]`: the envelope moment of order `2k` with the power
/// slot carrying `gamma_bar`.
pub fn snr_moment(p: &ChannelParams, gamma_bar: f64, k: f64) -> Result<f64> {
    moment(&p.with_omega(gamma_bar)?, 2.0 * k)
}

/// SNR MGF `E[exp(-s G)]`.
pub fn mgf(p: &ChannelParams, gamma_bar: f64, s: f64, path: EvalPath) -> Result<MetricResult> {
    mgf_with(p, gamma_bar, s, path, &QuadratureSpec::default())
}

/// [`mgf`] with caller-supplied quadrature tolerances.
pub fn mgf_with(
    p: &ChannelParams,
    gamma_bar: f64,
    s: f64,
    path: EvalPath,
    quad: &QuadratureSpec,
) -> Result<MetricResult> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("mgf requires s > 0, got {s}")));
    }
    if !(gamma_bar > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "gamma_bar must be positive, got {gamma_bar}"
        )));
    }
    // Integrate in units of gamma_bar so the spike stays at O(1) abscissae
    // for any mean SNR.
    let direct = |note: Option<String>| -> Result<MetricResult> {
        let integral = integrate(
            |t| {
                let g = gamma_bar * t;
                gamma_bar * (-s * g).exp() * snr_pdf(p, gamma_bar, g).unwrap_or(f64::NAN)
            },
            0.0,
            f64::INFINITY,
            quad,
        )?;
        let mut res = MetricResult::new(
            integral.value.min(1.0),
            integral.err_est,
            Method::Quadrature,
        );
        res.note = note;
        Ok(res)
    };
    match path {
        EvalPath::Quadrature => direct(None),
        EvalPath::FoxH => {
            let spec = foxh_mgf_spec(p);
            let betas = derive_betas(p);
            let z = betas.beta_s * betas.beta / (gamma_bar * s);
            match foxh_eval(&spec, z, None) {
                Ok(h) => {
                    let v = gamma_norm(p) * h;
                    Ok(MetricResult::new(
                        v.min(1.0),
                        v.abs() * FOXH_REL_EST,
                        Method::FoxH,
                    ))
                }
                Err(e) => direct(Some(format!(
                    "fox-h path failed ({e}); downgraded to quadrature"
                ))),
            }
        }
    }
}
