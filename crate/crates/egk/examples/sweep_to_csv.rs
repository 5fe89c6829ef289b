//! Figure-ready CSV generation through the sweep machinery (the same code
//! path as `egk sweep`): a crossing-rate curve over a log grid of levels.
//!
//! ```bash
//! cargo run --release -p egk --example sweep_to_csv
//! ```

use egk::cli::{parse_grid, run_sweep, EvalRequest, StatisticKind, SweepVar};
use egk::params::{ChannelParams, Shadowing};

fn main() -> egk::Result<()> {
    let p = ChannelParams::new(
        1.0,
        1.0,
        Shadowing::Finite {
            m_s: 2.0,
            xi_s: 1.0,
        },
        1.0,
    )?;
    let mut req = EvalRequest::new(StatisticKind::Lcr, p);
    req.f_s = Some(10.0);
    req.f_x = Some(10.0);

    let grid = parse_grid("0.03:3:25:log")?;
    let outcome = run_sweep(&req, SweepVar::R, &grid)?;
    assert_eq!(outcome.failures, 0);

    let path = std::env::temp_dir().join("egk_lcr_sweep.csv");
    std::fs::write(&path, &outcome.csv)?;
    println!("{}", outcome.csv);
    println!("wrote {} rows to {}", grid.len(), path.display());
    Ok(())
}
