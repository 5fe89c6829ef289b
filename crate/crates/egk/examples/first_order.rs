//! First-order statistics of a composite fading channel: density, CDF
//! through three computation paths, and fractional moments.
//!
//! ```bash
//! cargo run --release -p egk --example first_order
//! ```

use egk::params::{ChannelParams, Shadowing};
use egk::stats::{self, CdfPath};

fn main() -> egk::Result<()> {
    // A heavily shadowed channel: multipath figure 2.5 with shaping 0.8,
    // shadowing figure 1.7 with shaping 1.2, unit mean power.
    let p = ChannelParams::new(
        2.5,
        0.8,
        Shadowing::Finite {
            m_s: 1.7,
            xi_s: 1.2,
        },
        1.0,
    )?;

    println!("envelope density and CDF, r in [0.25, 2.0]:");
    println!("{:>6} {:>12} {:>12}", "r", "pdf", "cdf");
    for i in 1..=8 {
        let r = 0.25 * i as f64;
        let pdf = stats::envelope_pdf(&p, r)?;
        let cdf = stats::envelope_cdf(&p, r, CdfPath::Quadrature)?.value;
        println!("{r:>6.2} {pdf:>12.6} {cdf:>12.6}");
    }

    let r = 1.0;
    println!("\nCDF at r = {r} through the three paths:");
    for (name, path) in [
        ("quadrature", CdfPath::Quadrature),
        ("fox-h", CdfPath::FoxH),
        ("gcq(512)", CdfPath::Gcq { nodes: 512 }),
    ] {
        let res = stats::envelope_cdf(&p, r, path)?;
        println!(
            "  {name:<12} {:.12}  (err est {:.1e})",
            res.value, res.err_est
        );
    }

    println!("\nfractional moments E[R^k]:");
    for k in [0.5, 1.0, 2.0, 3.0, 4.0] {
        println!("  k = {k:<4} {:.10}", stats::moment(&p, k)?);
    }
    println!("(E[R^2] equals the mean power by construction)");

    Ok(())
}
