//! Link-level measures over the composite fading law: error rates for the
//! binary modulation family, outage, and ergodic capacity across a mean
//! SNR grid.
//!
//! ```bash
//! cargo run --release -p egk --example link_performance
//! ```

use egk::metrics::{abep, aof, avg_capacity, outage_probability, CapacitySpec, ModulationSpec};
use egk::params::{ChannelParams, Shadowing};
use egk::stats::EvalPath;

fn main() -> egk::Result<()> {
    let p = ChannelParams::new(
        2.0,
        1.0,
        Shadowing::Finite {
            m_s: 2.0,
            xi_s: 1.0,
        },
        1.0,
    )?;
    println!("amount of fading: {:.6}\n", aof(&p));

    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "gbar", "dpsk", "ncfsk", "coh bpsk", "outage", "capacity"
    );
    let mods = [
        ModulationSpec::dpsk(),
        ModulationSpec::ncfsk(),
        ModulationSpec::coherent_bpsk(),
    ];
    for i in 0..7 {
        let gbar = 10_f64.powf(-0.5 + i as f64 * 0.5); // -5 dB .. 25 dB
        let mut row = format!("{gbar:>8.3}");
        for m in &mods {
            let v = abep(&p, gbar, m, EvalPath::Quadrature)?.value;
            row.push_str(&format!(" {v:>12.3e}"));
        }
        let out = outage_probability(&p, gbar, 1.0, Default::default())?.value;
        let cap = avg_capacity(&p, &CapacitySpec::new(1.0, gbar)?, EvalPath::Quadrature)?.value;
        row.push_str(&format!(" {out:>12.4} {cap:>12.4}"));
        println!("{row}");
    }
    println!("\n(outage at the fixed threshold gamma_th = 1; capacity in bits/s/Hz)");
    Ok(())
}
