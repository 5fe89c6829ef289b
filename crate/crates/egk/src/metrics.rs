//! Link performance measures over the EGK law: amount of fading, average
//! bit error probability of the binary modulation family, outage
//! probability, outage capacity, and average (ergodic) capacity. Each
//! integral measure has a quadrature path and a Fox-H path.

use crate::foxh::{foxh_abep_spec, foxh_capacity_spec, foxh_eval, gamma_norm};
use crate::params::{derive_betas, ChannelParams, Shadowing};
use crate::specfun::{integrate, ln_gamma, reg_gamma_q, QuadratureSpec};
use crate::stats::{snr_cdf_with, snr_pdf, CdfPath, EvalPath};
use crate::{Error, Method, MetricResult, Result};

/// Binary modulation/detection pair of the conditional error probability
/// `P_E(gamma) = Gamma(b, a gamma) / (2 Gamma(b))`: `a` is 1 for antipodal
/// PSK and 1/2 for orthogonal FSK; `b` is 1 for non-coherent and 1/2 for
/// coherent detection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulationSpec {
    a: f64,
    b: f64,
}

impl ModulationSpec {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let ok = |v: f64| v == 1.0 || v == 0.5;
        if !ok(a) || !ok(b) {
            return Err(Error::InvalidParameter(format!(
                "modulation parameters must lie in {{1/2, 1}}, got a={a}, b={b}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Differentially coherent BPSK.
    pub fn dpsk() -> Self {
        Self { a: 1.0, b: 1.0 }
    }

    /// Non-coherent binary FSK.
    pub fn ncfsk() -> Self {
        Self { a: 0.5, b: 1.0 }
    }

    /// Coherent BPSK.
    pub fn coherent_bpsk() -> Self {
        Self { a: 1.0, b: 0.5 }
    }

    /// Coherent binary FSK.
    pub fn coherent_bfsk() -> Self {
        Self { a: 0.5, b: 0.5 }
    }
}

/// Bandwidth and mean SNR for the capacity measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacitySpec {
    pub bandwidth_w: f64,
    pub gamma_bar: f64,
}

impl CapacitySpec {
    pub fn new(bandwidth_w: f64, gamma_bar: f64) -> Result<Self> {
        if !(bandwidth_w > 0.0) || !(gamma_bar > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "capacity spec needs positive bandwidth and mean SNR, got ({bandwidth_w}, {gamma_bar})"
            )));
        }
        Ok(Self {
            bandwidth_w,
            gamma_bar,
        })
    }
}

/// Amount of fading `var[G]/E[G]^2`, closed form
/// `G(m_s)G(m_s + 2/xi_s)G(m)G(m + 2/xi) / (G^2(m_s + 1/xi_s) G^2(m + 1/xi)) - 1`
/// (shadowing factors dropped when absent). Scale-free: independent of the
/// mean power.
pub fn aof(p: &ChannelParams) -> f64 {
    let lg = |x: f64| ln_gamma(x).expect("positive by ChannelParams invariants");
    let factor = |m: f64, xi: f64| lg(m) + lg(m + 2.0 / xi) - 2.0 * lg(m + 1.0 / xi);
    let mut ln_v = factor(p.m(), p.xi());
    if let Shadowing::Finite { m_s, xi_s } = p.shadowing() {
        ln_v += factor(m_s, xi_s);
    }
    ln_v.exp() - 1.0
}

/// Average bit error probability over the fading law. The quadrature path
/// averages `Gamma(b, a gamma)/(2 Gamma(b))` against the SNR PDF; the
/// Fox-H path evaluates the closed kernel with argument
/// `beta_s beta / (a gamma_bar)` and prefactor `1/(2 G(b) G(m_s) G(m))`.
pub fn abep(
    p: &ChannelParams,
    gamma_bar: f64,
    modulation: &ModulationSpec,
    path: EvalPath,
) -> Result<MetricResult> {
    abep_with(p, gamma_bar, modulation, path, &QuadratureSpec::default())
}

/// [`abep`] with caller-supplied quadrature tolerances.
pub fn abep_with(
    p: &ChannelParams,
    gamma_bar: f64,
    modulation: &ModulationSpec,
    path: EvalPath,
    quad: &QuadratureSpec,
) -> Result<MetricResult> {
    if !(gamma_bar > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "gamma_bar must be positive, got {gamma_bar}"
        )));
    }
    let (a, b) = (modulation.a(), modulation.b());
    // Integrate in units of gamma_bar so the SNR spike stays at O(1)
    // abscissae for any mean SNR.
    let direct = |note: Option<String>| -> Result<MetricResult> {
        let integral = integrate(
            |t| {
                let g = gamma_bar * t;
                let pe = 0.5 * reg_gamma_q(b, a * g).unwrap_or(f64::NAN);
                gamma_bar * pe * snr_pdf(p, gamma_bar, g).unwrap_or(f64::NAN)
            },
            0.0,
            f64::INFINITY,
            quad,
        )?;
        let mut res = MetricResult::new(
            integral.value.clamp(0.0, 0.5),
            integral.err_est,
            Method::Quadrature,
        );
        res.note = note;
        Ok(res)
    };
    match path {
        EvalPath::Quadrature => direct(None),
        EvalPath::FoxH => {
            let spec = foxh_abep_spec(p, b);
            let betas = derive_betas(p);
            let z = betas.beta_s * betas.beta / (a * gamma_bar);
            match foxh_eval(&spec, z, None) {
                Ok(h) => {
                    let v = gamma_norm(p) * h / (2.0 * ln_gamma(b)?.exp());
                    Ok(MetricResult::new(
                        v.clamp(0.0, 0.5),
                        v.abs() * crate::stats::FOXH_REL_EST,
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

/// Outage probability `P(gamma < gamma_th)`, i.e. the SNR CDF at the
/// threshold.
pub fn outage_probability(
    p: &ChannelParams,
    gamma_bar: f64,
    gamma_th: f64,
    path: CdfPath,
) -> Result<MetricResult> {
    outage_probability_with(p, gamma_bar, gamma_th, path, &QuadratureSpec::default())
}

/// [`outage_probability`] with caller-supplied quadrature tolerances.
pub fn outage_probability_with(
    p: &ChannelParams,
    gamma_bar: f64,
    gamma_th: f64,
    path: CdfPath,
    quad: &QuadratureSpec,
) -> Result<MetricResult> {
    if !(gamma_th > 0.0) {
        return Err(Error::Domain(format!(
            "outage threshold must be positive, got {gamma_th}"
        )));
    }
    snr_cdf_with(p, gamma_bar, gamma_th, path, quad)
}

/// Outage capacity `P(C < c_th) = P_G(2^{c_th/W} - 1)`.
pub fn outage_capacity(
    p: &ChannelParams,
    cap: &CapacitySpec,
    c_th: f64,
    path: CdfPath,
) -> Result<MetricResult> {
    outage_capacity_with(p, cap, c_th, path, &QuadratureSpec::default())
}

/// [`outage_capacity`] with caller-supplied quadrature tolerances.
pub fn outage_capacity_with(
    p: &ChannelParams,
    cap: &CapacitySpec,
    c_th: f64,
    path: CdfPath,
    quad: &QuadratureSpec,
) -> Result<MetricResult> {
    if !(c_th > 0.0) {
        return Err(Error::Domain(format!(
            "capacity threshold must be positive, got {c_th}"
        )));
    }
    let gamma_th = (c_th / cap.bandwidth_w).exp2() - 1.0;
    snr_cdf_with(p, cap.gamma_bar, gamma_th, path, quad)
}

/// Average (ergodic) Shannon capacity `W E[log2(1 + gamma)]` in bits/s.
pub fn avg_capacity(p: &ChannelParams, cap: &CapacitySpec, path: EvalPath) -> Result<MetricResult> {
    avg_capacity_with(p, cap, path, &QuadratureSpec::default())
}

/// [`avg_capacity`] with caller-supplied quadrature tolerances.
pub fn avg_capacity_with(
    p: &ChannelParams,
    cap: &CapacitySpec,
    path: EvalPath,
    quad: &QuadratureSpec,
) -> Result<MetricResult> {
    let direct = |note: Option<String>| -> Result<MetricResult> {
        let integral = integrate(
            |t| {
                let g = cap.gamma_bar * t;
                cap.gamma_bar * (1.0 + g).log2() * snr_pdf(p, cap.gamma_bar, g).unwrap_or(f64::NAN)
            },
            0.0,
            f64::INFINITY,
            quad,
        )?;
        let mut res = MetricResult::new(
            cap.bandwidth_w * integral.value,
            cap.bandwidth_w * integral.err_est,
            Method::Quadrature,
        );
        res.note = note;
        Ok(res)
    };
    match path {
        EvalPath::Quadrature => direct(None),
        EvalPath::FoxH => {
            let spec = foxh_capacity_spec(p);
            let betas = derive_betas(p);
            let z = betas.beta_s * betas.beta / cap.gamma_bar;
            match foxh_eval(&spec, z, None) {
                Ok(h) => {
                    let v = cap.bandwidth_w * gamma_norm(p) * h / std::f64::consts::LN_2;
                    Ok(MetricResult::new(
                        v,
                        v.abs() * crate::stats::FOXH_REL_EST,
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::preset;

    fn gk(m: f64, m_s: f64) -> ChannelParams {
        ChannelParams::new(m, 1.0, Shadowing::Finite { m_s, xi_s: 1.0 }, 1.0).unwrap()
    }

    #[test]
    fn aof_closed_values() {
        let ray = preset("rayleigh", 1.0).unwrap();
        assert!((aof(&ray) - 1.0).abs() < 1e-12);
        assert!((aof(&gk(1.0, 1.0)) - 3.0).abs() < 1e-12);
        assert!((aof(&gk(2.0, 2.0)) - 1.25).abs() < 1e-12);
    }

    #[test]
    fn aof_decreases_in_each_parameter() {
        let base = (2.0, 1.0, 2.0, 1.0);
        let grids = [0.5_f64, 1.0, 2.0, 4.0];
        for slot in 0..4 {
            let mut last = f64::INFINITY;
            for &v in &grids {
                let (mut m, mut xi, mut ms, mut xis) = base;
                match slot {
                    0 => m = v,
                    1 => xi = v,
                    2 => ms = v,
                    _ => xis = v,
                }
                let p = ChannelParams::new(m, xi, Shadowing::Finite { m_s: ms, xi_s: xis }, 1.0)
                    .unwrap();
                let v = aof(&p);
                assert!(v < last, "aof not decreasing in slot {slot}");
                last = v;
            }
        }
    }

    #[test]
    fn abep_rayleigh_closed_values() {
        let ray = preset("rayleigh", 1.0).unwrap();
        let dpsk = abep(&ray, 10.0, &ModulationSpec::dpsk(), EvalPath::Quadrature)
            .unwrap()
            .value;
        assert!((dpsk - 1.0 / 22.0).abs() < 1e-10, "dpsk {dpsk}");

        let cbpsk = abep(
            &ray,
            10.0,
            &ModulationSpec::coherent_bpsk(),
            EvalPath::Quadrature,
        )
        .unwrap()
        .value;
        let want = 0.5 * (1.0 - (10.0_f64 / 11.0).sqrt());
        assert!((cbpsk - want).abs() < 1e-10, "cbpsk {cbpsk}");

        // Fox-H path reproduces both through the reduced kernel.
        let h = abep(&ray, 10.0, &ModulationSpec::dpsk(), EvalPath::FoxH)
            .unwrap()
            .value;
        assert!((h - 1.0 / 22.0).abs() < 1e-10, "fox-h dpsk {h}");
    }

    #[test]
    fn abep_nakagami_matches_quadrature_oracle() {
        // Nakagami m=2, DPSK, mean SNR 5: frozen from the independent
        // quadrature of the defining integral.
        let p = ChannelParams::new(2.0, 1.0, Shadowing::None, 1.0).unwrap();
        let v = abep(&p, 5.0, &ModulationSpec::dpsk(), EvalPath::Quadrature)
            .unwrap()
            .value;
        assert!((v - 0.040_816_326_530_613_6).abs() < 1e-8, "got {v}");
        // Closed Nakagami form (m/(m + a gbar))^m evaluated via the
        // binomial-free route: for b = 1 the ABEP is 0.5 (m/(m+a g))^m.
        let closed = 0.5 * (2.0_f64 / 7.0).powi(2);
        assert!((v - closed).abs() < 1e-10);
    }

    #[test]
    fn abep_paths_agree_with_shadowing() {
        let p = gk(2.0, 2.0);
        let q = abep(&p, 5.0, &ModulationSpec::dpsk(), EvalPath::Quadrature)
            .unwrap()
            .value;
        let h = abep(&p, 5.0, &ModulationSpec::dpsk(), EvalPath::FoxH)
            .unwrap()
            .value;
        assert!(((q - h) / q).abs() < 1e-7, "{q} vs {h}");
    }

    #[test]
    fn abep_limits_and_orderings() {
        let p = gk(2.0, 2.0);
        // gamma_bar -> 0 gives 1/2.
        let v = abep(&p, 1e-8, &ModulationSpec::dpsk(), EvalPath::Quadrature)
            .unwrap()
            .value;
        assert!((v - 0.5).abs() < 1e-4, "got {v}");
        // Decreasing in gamma_bar.
        let mut last = 0.6;
        for &g in &[0.1, 1.0, 5.0, 20.0] {
            let v = abep(&p, g, &ModulationSpec::dpsk(), EvalPath::Quadrature)
                .unwrap()
                .value;
            assert!(v < last);
            last = v;
        }
        // Coherent detection dominates non-coherent at fixed a.
        for &g in &[0.5, 2.0, 10.0] {
            let nc = abep(&p, g, &ModulationSpec::dpsk(), EvalPath::Quadrature)
                .unwrap()
                .value;
            let co = abep(
                &p,
                g,
                &ModulationSpec::coherent_bpsk(),
                EvalPath::Quadrature,
            )
            .unwrap()
            .value;
            assert!(co <= nc, "coherent {co} > noncoherent {nc} at {g}");
        }
        // Decreasing in m (fixed xi, m_s, xi_s, gamma_bar).
        let mut last = 1.0;
        for &m in &[0.5, 1.0, 2.0, 4.0] {
            let p = gk(m, 2.0);
            let v = abep(&p, 5.0, &ModulationSpec::dpsk(), EvalPath::Quadrature)
                .unwrap()
                .value;
            assert!(v < last, "abep not decreasing in m");
            last = v;
        }
    }

    #[test]
    fn modulation_spec_validation() {
        assert!(ModulationSpec::new(1.0, 0.5).is_ok());
        assert!(ModulationSpec::new(0.7, 1.0).is_err());
        assert!(ModulationSpec::new(1.0, 0.0).is_err());
    }

    #[test]
    fn outage_known_point_and_limits() {
        let ray = preset("rayleigh", 1.0).unwrap();
        let v = outage_probability(&ray, 1.0, 1.0, CdfPath::Quadrature)
            .unwrap()
            .value;
        assert!((v - 0.632_120_558_828_557_7).abs() < 1e-10);
        let v = outage_probability(&ray, 1.0, 1e-9, CdfPath::Quadrature)
            .unwrap()
            .value;
        assert!(v < 1e-8);
        assert!(outage_probability(&ray, 1.0, 0.0, CdfPath::Quadrature).is_err());
    }

    #[test]
    fn outage_decreases_in_m_and_xi() {
        // Fixed gamma_th/gamma_bar = 0.1.
        let mut last = 1.0;
        for &m in &[0.5, 1.0, 2.0, 4.0] {
            let p = ChannelParams::new(
                m,
                1.0,
                Shadowing::Finite {
                    m_s: 2.0,
                    xi_s: 1.0,
                },
                1.0,
            )
            .unwrap();
            let v = outage_probability(&p, 1.0, 0.1, CdfPath::Quadrature)
                .unwrap()
                .value;
            assert!(v < last, "outage not decreasing in m");
            last = v;
        }
        let mut last = 1.0;
        for &xi in &[0.5, 1.0, 2.0, 3.0] {
            let p = ChannelParams::new(
                2.0,
                xi,
                Shadowing::Finite {
                    m_s: 2.0,
                    xi_s: 1.0,
                },
                1.0,
            )
            .unwrap();
            let v = outage_probability(&p, 1.0, 0.1, CdfPath::Quadrature)
                .unwrap()
                .value;
            assert!(v < last, "outage not decreasing in xi");
            last = v;
        }
    }

    #[test]
    fn outage_capacity_substitution_identity() {
        let p = gk(2.0, 2.0);
        let cap = CapacitySpec::new(1.0, 1.0).unwrap();
        // c_th = W log2(1 + gbar) makes the threshold equal gbar.
        let c_th = (1.0_f64 + 1.0).log2();
        let a = outage_capacity(&p, &cap, c_th, CdfPath::Quadrature)
            .unwrap()
            .value;
        let b = outage_probability(&p, 1.0, 1.0, CdfPath::Quadrature)
            .unwrap()
            .value;
        assert!((a - b).abs() < 1e-9);

        let ray = preset("rayleigh", 1.0).unwrap();
        let v = outage_capacity(&ray, &cap, 1.0, CdfPath::Quadrature)
            .unwrap()
            .value;
        assert!((v - 0.632_120_558_828_557_7).abs() < 1e-9);

        let tiny = outage_capacity(&p, &cap, 1e-9, CdfPath::Quadrature)
            .unwrap()
            .value;
        assert!(tiny < 1e-6);
    }

    #[test]
    fn capacity_rayleigh_value_and_paths() {
        let ray = preset("rayleigh", 1.0).unwrap();
        let cap = CapacitySpec::new(1.0, 1.0).unwrap();
        // log2(e) e E1(1), E1 from the series oracle (frozen).
        let want = 0.860_347_382_270_886_8;
        let q = avg_capacity(&ray, &cap, EvalPath::Quadrature)
            .unwrap()
            .value;
        assert!((q - want).abs() < 1e-6, "quadrature {q}");
        let h = avg_capacity(&ray, &cap, EvalPath::FoxH).unwrap().value;
        assert!((h - want).abs() < 1e-6, "fox-h {h}");

        let p = gk(2.0, 2.0);
        let q = avg_capacity(
            &p,
            &CapacitySpec::new(1.0, 5.0).unwrap(),
            EvalPath::Quadrature,
        )
        .unwrap()
        .value;
        let h = avg_capacity(&p, &CapacitySpec::new(1.0, 5.0).unwrap(), EvalPath::FoxH)
            .unwrap()
            .value;
        assert!(((q - h) / q).abs() < 1e-7, "{q} vs {h}");
    }

    #[test]
    fn capacity_limits_and_monotonicity() {
        let p = gk(2.0, 2.0);
        // Vanishing mean SNR: C < 2e-6 log2(e) at gbar = 1e-6.
        let v = avg_capacity(
            &p,
            &CapacitySpec::new(1.0, 1e-6).unwrap(),
            EvalPath::Quadrature,
        )
        .unwrap()
        .value;
        assert!(v < 2e-6 * std::f64::consts::LOG2_E, "got {v}");
        // Increasing in gamma_bar.
        let mut last = 0.0;
        for i in 1..=10 {
            let g = 0.8 * i as f64;
            let v = avg_capacity(
                &p,
                &CapacitySpec::new(1.0, g).unwrap(),
                EvalPath::Quadrature,
            )
            .unwrap()
            .value;
            assert!(v > last);
            last = v;
        }
    }

    #[test]
    fn capacity_increases_in_each_shape_parameter() {
        let grids = [0.6_f64, 1.0, 1.8, 3.0];
        for slot in 0..4 {
            let mut last = 0.0;
            for &v in &grids {
                let (mut m, mut xi, mut ms, mut xis) = (1.2, 1.0, 1.2, 1.0);
                match slot {
                    0 => m = v,
                    1 => xi = v,
                    2 => ms = v,
                    _ => xis = v,
                }
                let p = ChannelParams::new(m, xi, Shadowing::Finite { m_s: ms, xi_s: xis }, 1.0)
                    .unwrap();
                let c = avg_capacity(
                    &p,
                    &CapacitySpec::new(1.0, 3.0).unwrap(),
                    EvalPath::Quadrature,
                )
                .unwrap()
                .value;
                assert!(c > last, "capacity not increasing in slot {slot}");
                last = c;
            }
        }
    }
}
