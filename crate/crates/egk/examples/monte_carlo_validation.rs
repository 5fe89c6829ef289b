//! The sampling oracle against the closed forms: draws reproducible EGK
//! variates and reports z-scores for moments, outage, error rate, and
//! capacity.
//!
//! ```bash
//! cargo run --release -p egk --example monte_carlo_validation
//! ```

use egk::metrics::{self, CapacitySpec, ModulationSpec};
use egk::montecarlo::{estimate, estimate_aof, SimConfig, Statistic};
use egk::params::{ChannelParams, Shadowing};
use egk::stats::{self, EvalPath};

fn main() -> egk::Result<()> {
    let p = ChannelParams::new(
        2.5,
        0.8,
        Shadowing::Finite {
            m_s: 1.7,
            xi_s: 1.2,
        },
        1.0,
    )?;
    let gbar = 5.0;
    let cfg = SimConfig::for_params(&p, 1_000_000, 7)?;
    println!(
        "1e6 samples, seed {} (rerunning is bit-identical)\n",
        cfg.seed
    );
    println!(
        "{:<22} {:>12} {:>12} {:>8}",
        "statistic", "closed", "sampled", "z"
    );

    let row = |name: &str, closed: f64, stat: Statistic| -> egk::Result<()> {
        let est = estimate(&stat, &p, &cfg)?;
        println!(
            "{name:<22} {closed:>12.6} {:>12.6} {:>8.2}",
            est.value,
            est.z_score(closed)
        );
        Ok(())
    };

    for k in [1.0, 2.0, 4.0] {
        row(
            &format!("moment k={k}"),
            stats::moment(&p, k)?,
            Statistic::Moment { k },
        )?;
    }
    row(
        "outage gth=0.5 gbar",
        metrics::outage_probability(&p, gbar, 0.5 * gbar, Default::default())?.value,
        Statistic::Outage {
            gamma_bar: gbar,
            gamma_th: 0.5 * gbar,
        },
    )?;
    row(
        "abep dpsk",
        metrics::abep(&p, gbar, &ModulationSpec::dpsk(), EvalPath::Quadrature)?.value,
        Statistic::Abep {
            a: 1.0,
            b: 1.0,
            gamma_bar: gbar,
        },
    )?;
    row(
        "capacity",
        metrics::avg_capacity(&p, &CapacitySpec::new(1.0, gbar)?, EvalPath::Quadrature)?.value,
        Statistic::Capacity { gamma_bar: gbar },
    )?;

    let aof = estimate_aof(&p, &cfg)?;
    println!(
        "{:<22} {:>12.6} {:>12.6} {:>8.2}",
        "amount of fading",
        metrics::aof(&p),
        aof.value,
        aof.z_score(metrics::aof(&p))
    );

    Ok(())
}
