//! Persistence round trip: gap-set files, run configs and report bundles.
//!
//! ```bash
//! cargo run --example save_load_reports
//! ```

use lplab::report::{run, save_set, load_set, CommandConfig, FamilyConfig, ProbeConfig, RunConfig};
use lplab::set::cantor_triadic;

fn main() -> lplab::Result<()> {
    let dir = std::env::temp_dir().join("lplab_example");
    std::fs::create_dir_all(&dir)?;

    // gap-set files round-trip bit-exactly
    let set = cantor_triadic(5)?;
    let path = dir.join("cantor5.json");
    save_set(&set, &path)?;
    let loaded = load_set(&path)?;
    let same = set
        .gaps()
        .iter()
        .zip(loaded.gaps())
        .all(|(a, b)| a.0.to_bits() == b.0.to_bits() && a.1.to_bits() == b.1.to_bits());
    println!("saved {} gaps to {}; bit-exact reload: {same}", set.gaps().len(), path.display());

    // a full run writes set + report and echoes the config hash
    let mut config = RunConfig::new(CommandConfig::Probe {
        family: Some(FamilyConfig::Dyadic { k_min: 0, k_max: 8 }),
        probe: ProbeConfig::Frame { p: 4.0 / 3.0, trials: 20, grid: 1024 },
    });
    config.seed = 42;
    config.out_dir = Some(dir.clone());
    let bundle = run(&config)?;
    println!("\nconfig hash {}", bundle.config_hash);
    println!("c1_hat {}, c2_hat {}", bundle.summary["c1_hat"], bundle.summary["c2_hat"]);
    println!("artifacts: {:?}", bundle.artifacts);

    // reruns agree modulo the timestamp
    let again = run(&config)?;
    println!("rerun identical: {}", bundle.stable_json()? == again.stable_json()?);
    Ok(())
}
