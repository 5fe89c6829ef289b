//! Direct use of the Mellin-Barnes evaluator: the exponential reduction,
//! a custom gamma kernel, and the closed-form statistic kernels checked
//! against their defining integrals.
//!
//! ```bash
//! cargo run --release -p egk --example fox_h_cross_check
//! ```

use egk::foxh::{foxh_eval, foxh_pdf_spec, ContourSpec, FoxHSpec};
use egk::params::{ChannelParams, Shadowing};
use egk::stats;

fn main() -> egk::Result<()> {
    // H^{1,0}_{0,1}[z | -; (0,1)] is e^{-z}.
    let exp_spec = FoxHSpec::new(vec![], 0, vec![(0.0, 1.0)], 1)?;
    for z in [0.5, 1.0, 2.0] {
        let h = foxh_eval(&exp_spec, z, None)?;
        println!("H[{z}] = {h:.12}   e^-{z} = {:.12}", (-z).exp());
    }

    // The same evaluator with an explicit contour.
    let contour = ContourSpec::new(1.0, 60.0, 2400)?;
    let h = foxh_eval(&exp_spec, 1.0, Some(&contour))?;
    println!("explicit contour at c=1: {h:.12}");

    // Statistic kernels: the envelope-density kernel against the direct
    // extended-incomplete-gamma path.
    let p = ChannelParams::new(
        2.0,
        0.9,
        Shadowing::Finite {
            m_s: 1.6,
            xi_s: 1.1,
        },
        1.0,
    )?;
    let spec = foxh_pdf_spec(&p);
    println!(
        "\npdf kernel orders (m,n,p,q) = ({},{},{},{}), band {:?}",
        spec.m(),
        spec.n(),
        spec.p(),
        spec.q(),
        spec.feasible_band()
    );
    println!("{:>5} {:>14} {:>14}", "r", "direct", "mellin-barnes");
    for i in 1..=5 {
        let r = 0.4 * i as f64;
        let direct = stats::envelope_pdf(&p, r)?;
        let viah = stats::envelope_pdf_foxh(&p, r)?;
        println!("{r:>5.1} {direct:>14.10} {viah:>14.10}");
    }

    Ok(())
}
