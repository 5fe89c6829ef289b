//! Reproducible Monte Carlo oracle: draws EGK variates from the product
//! construction and estimates every statistic empirically.
//!
//! Sampling rides on the gamma transformation behind the generalized
//! Nakagami-m law, `R = sqrt(omega/beta) G^{1/(2 xi)}` with `G ~ Gamma(m)`,
//! which is exact for fractional figures as well. Streams are ChaCha8
//! substreams derived from `(seed, stream-index)`, so estimates are
//! bit-identical regardless of worker count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use rayon::prelude::*;

use crate::params::{ChannelParams, OmegaSplit, Shadowing};
use crate::specfun::reg_gamma_q;
use crate::{Error, Result};

/// Sample count, seed, and the mean-power split for a Monte Carlo run.
#[derive(Debug, Clone, Copy)]
pub struct SimConfig {
    pub n_samples: u64,
    pub seed: u64,
    pub omega_split: OmegaSplit,
}

impl SimConfig {
    pub fn new(n_samples: u64, seed: u64, omega_split: OmegaSplit) -> Result<Self> {
        if n_samples == 0 {
            return Err(Error::InvalidParameter("n_samples must be >= 1".into()));
        }
        Ok(Self {
            n_samples,
            seed,
            omega_split,
        })
    }

    /// Default split `(omega, 1)` taken from the channel parameters.
    pub fn for_params(p: &ChannelParams, n_samples: u64, seed: u64) -> Result<Self> {
        Self::new(n_samples, seed, OmegaSplit::for_omega(p.omega()))
    }
}

/// Sample-mean estimate with its standard error.
#[derive(Debug, Clone, Copy)]
pub struct EstimateResult {
    pub value: f64,
    pub std_error: f64,
    pub n: u64,
}

impl EstimateResult {
    /// z-score of the estimate against a reference value.
    pub fn z_score(&self, reference: f64) -> f64 {
        (self.value - reference) / self.std_error
    }
}

/// Unit-scale gamma variate (Marsaglia-Tsang via `rand_distr`).
pub fn gamma_variate<R: Rng + ?Sized>(shape: f64, rng: &mut R) -> Result<f64> {
    if !(shape > 0.0) {
        return Err(Error::Domain(format!(
            "gamma shape must be positive, got {shape}"
        )));
    }
    let dist = Gamma::new(shape, 1.0)
        .map_err(|e| Error::Domain(format!("gamma sampler rejected shape {shape}: {e}")))?;
    Ok(dist.sample(rng))
}

/// One generalized Nakagami-m envelope draw.
pub fn sample_gnm<R: Rng + ?Sized>(m: f64, xi: f64, omega: f64, rng: &mut R) -> Result<f64> {
    if !(m >= 0.5) || !(xi > 0.0) || !(omega > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "sample_gnm requires m >= 0.5, xi > 0, omega > 0 (got {m}, {xi}, {omega})"
        )));
    }
    let beta = {
        let lg =
            crate::specfun::ln_gamma(m + 1.0 / xi).unwrap() - crate::specfun::ln_gamma(m).unwrap();
        lg.exp()
    };
    let g = gamma_variate(m, rng)?;
    Ok((omega / beta).sqrt() * g.powf(1.0 / (2.0 * xi)))
}

/// One EGK envelope draw `S * X` under the configured power split; with no
/// shadowing the S factor degenerates to `sqrt(omega_s)`.
pub fn sample_egk<R: Rng + ?Sized>(p: &ChannelParams, cfg: &SimConfig, rng: &mut R) -> Result<f64> {
    cfg.omega_split.check_matches(p)?;
    let x = sample_gnm(p.m(), p.xi(), cfg.omega_split.omega_x, rng)?;
    let s = match p.shadowing() {
        Shadowing::Finite { m_s, xi_s } => sample_gnm(m_s, xi_s, cfg.omega_split.omega_s, rng)?,
        Shadowing::None => cfg.omega_split.omega_s.sqrt(),
    };
    Ok(s * x)
}

/// Statistic whose empirical counterpart the sampler estimates. SNR-domain
/// statistics rescale the squared envelope to the given mean SNR.
#[derive(Debug, Clone, Copy)]
pub enum Statistic {
    /// `E[R^k]`.
    Moment { k: f64 },
    /// `P(R <= r)`.
    CdfAt { r: f64 },
    /// Average bit error probability with per-sample `Q(b, a gamma)/2`.
    Abep { a: f64, b: f64, gamma_bar: f64 },
    /// Ergodic capacity `E[log2(1 + gamma)]` in bits/s/Hz.
    Capacity { gamma_bar: f64 },
    /// `P(gamma < gamma_th)`.
    Outage { gamma_bar: f64, gamma_th: f64 },
}

// Fixed chunk size keeps the stream layout (and thus every estimate)
// independent of the worker count.
const CHUNK: u64 = 1 << 16;

struct Moments {
    sum: f64,
    sum_sq: f64,
    n: u64,
}

impl Moments {
    fn merge(mut self, other: Moments) -> Moments {
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self.n += other.n;
        self
    }
}

fn per_sample_value(stat: &Statistic, r: f64, omega: f64) -> f64 {
    match *stat {
        Statistic::Moment { k } => r.powf(k),
        Statistic::CdfAt { r: level } => f64::from(u8::from(r <= level)),
        Statistic::Abep { a, b, gamma_bar } => {
            let g = gamma_bar * r * r / omega;
            0.5 * reg_gamma_q(b, a * g).expect("a, b validated upstream")
        }
        Statistic::Capacity { gamma_bar } => {
            let g = gamma_bar * r * r / omega;
            (1.0 + g).log2()
        }
        Statistic::Outage {
            gamma_bar,
            gamma_th,
        } => {
            let g = gamma_bar * r * r / omega;
            f64::from(u8::from(g < gamma_th))
        }
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Estimate several statistics from one shared sample pass.
pub fn estimate_many(
    stats: &[Statistic],
    p: &ChannelParams,
    cfg: &SimConfig,
) -> Result<Vec<EstimateResult>> {
    cfg.omega_split.check_matches(p)?;
    for s in stats {
        if let Statistic::Abep { a, b, .. } = s {
            crate::metrics::ModulationSpec::new(*a, *b)?;
        }
    }
    let omega = p.omega();
    let n_chunks = cfg.n_samples.div_ceil(CHUNK);

    let totals: Result<Vec<Moments>> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = stream_rng(cfg.seed, chunk);
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(cfg.n_samples);
            let mut acc: Vec<Moments> = stats
                .iter()
                .map(|_| Moments {
                    sum: 0.0,
                    sum_sq: 0.0,
                    n: 0,
                })
                .collect();
            for _ in lo..hi {
                let r = sample_egk(p, cfg, &mut rng)?;
                for (stat, m) in stats.iter().zip(acc.iter_mut()) {
                    let v = per_sample_value(stat, r, omega);
                    m.sum += v;
                    m.sum_sq += v * v;
                    m.n += 1;
                }
            }
            Ok(acc)
        })
        .reduce(
            || Ok(Vec::new()),
            |a, b| match (a, b) {
                (Ok(a), Ok(b)) => {
                    if a.is_empty() {
                        Ok(b)
                    } else if b.is_empty() {
                        Ok(a)
                    } else {
                        Ok(a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect())
                    }
                }
                (Err(e), _) | (_, Err(e)) => Err(e),
            },
        );

    let totals = totals?;
    Ok(totals
        .into_iter()
        .map(|m| {
            let n = m.n as f64;
            let mean = m.sum / n;
            let var = (m.sum_sq / n - mean * mean).max(0.0);
            EstimateResult {
                value: mean,
                std_error: (var / n).sqrt(),
                n: m.n,
            }
        })
        .collect())
}

/// Estimate a single statistic.
pub fn estimate(stat: &Statistic, p: &ChannelParams, cfg: &SimConfig) -> Result<EstimateResult> {
    Ok(estimate_many(std::slice::from_ref(stat), p, cfg)?.remove(0))
}

/// Empirical amount of fading `var[R^2]/E[R^2]^2` with a delta-method
/// standard error built from the 2nd through 8th envelope moments.
pub fn estimate_aof(p: &ChannelParams, cfg: &SimConfig) -> Result<EstimateResult> {
    cfg.omega_split.check_matches(p)?;
    let n_chunks = cfg.n_samples.div_ceil(CHUNK);
    let sums = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = stream_rng(cfg.seed, chunk);
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(cfg.n_samples);
            let mut acc = [0.0_f64; 4];
            for _ in lo..hi {
                let r = sample_egk(p, cfg, &mut rng)?;
                let p2 = r * r;
                let mut pw = p2;
                for slot in &mut acc {
                    *slot += pw;
                    pw *= p2;
                }
            }
            Ok((acc, hi - lo))
        })
        .reduce(
            || Ok::<([f64; 4], u64), Error>(([0.0; 4], 0)),
            |a, b| match (a, b) {
                (Ok((sa, na)), Ok((sb, nb))) => Ok((
                    [sa[0] + sb[0], sa[1] + sb[1], sa[2] + sb[2], sa[3] + sb[3]],
                    na + nb,
                )),
                (Err(e), _) | (_, Err(e)) => Err(e),
            },
        )?;
    let (acc, n) = sums;
    let nf = n as f64;
    let (m1, m2, m3, m4) = (acc[0] / nf, acc[1] / nf, acc[2] / nf, acc[3] / nf);
    let v11 = (m2 - m1 * m1).max(0.0);
    let v22 = (m4 - m2 * m2).max(0.0);
    let v12 = m3 - m1 * m2;
    let aof = m2 / (m1 * m1) - 1.0;
    let g1 = -2.0 * m2 / (m1 * m1 * m1);
    let g2 = 1.0 / (m1 * m1);
    let var = (g1 * g1 * v11 + 2.0 * g1 * g2 * v12 + g2 * g2 * v22).max(0.0) / nf;
    Ok(EstimateResult {
        value: aof,
        std_error: var.sqrt(),
        n,
    })
}
