//! The named preset catalog: listing rows, instantiating templates with
//! free slots, and loading the same catalog from its shipped TOML file.
//!
//! ```bash
//! cargo run --release -p egk --example preset_catalog
//! ```

use egk::params::{preset, preset_params, PresetCatalog, PresetFill};
use egk::stats;

fn main() -> egk::Result<()> {
    let catalog = PresetCatalog::builtin();
    println!("{} presets shipped:", catalog.len());
    for p in catalog.iter() {
        let pins = if p.is_fully_pinned() {
            ""
        } else {
            "  (has free slots)"
        };
        println!("  {:<26} {}{}", p.name, p.source, pins);
    }

    // Fully pinned rows instantiate with just a mean power.
    let ray = preset("rayleigh", 2.0)?;
    println!(
        "\nrayleigh at omega = 2: E[R] = {:.6}",
        stats::moment(&ray, 1.0)?
    );

    // Parameterized rows take fills for their free slots.
    let gk = preset_params(
        "generalized-k",
        1.0,
        &PresetFill {
            m: Some(2.0),
            m_s: Some(1.5),
            ..Default::default()
        },
    )?;
    println!(
        "generalized-k (m=2, m_s=1.5): pdf(0.8) = {:.6}",
        stats::envelope_pdf(&gk, 0.8)?
    );

    // The same catalog is a plain TOML file, loadable by path.
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/presets.toml");
    let loaded = PresetCatalog::load(path)?;
    println!("\nreloaded {} rows from {path}", loaded.len());

    Ok(())
}
