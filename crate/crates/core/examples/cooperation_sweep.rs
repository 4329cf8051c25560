//! Sweep the leasing fee, write a CSV and an SVG of the degree of cooperation,
//! and report where full cooperation stops.
//!
//! `cargo run --release --example cooperation_sweep -- out_dir`

use std::path::PathBuf;

use spne::experiment::{detect_threshold, run_sweep, svg_plot, write_csv, Config, SweepSpec};
use spne::{MarketParams, OracleConfig};

fn main() -> spne::Result<()> {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "sweep_out".into()),
    );
    std::fs::create_dir_all(&dir).map_err(|e| spne::SpneError::Numeric(e.to_string()))?;
    let spec = SweepSpec {
        config: Config {
            params: MarketParams::new(1.0, 0.5, 1.0),
            ..Default::default()
        },
        swept_param: "s".into(),
        lo: 0.6,
        hi: 5.0,
        n_steps: 100,
        oracle: Some(OracleConfig::default()),
    };
    let rows = run_sweep(&spec)?;
    let file = std::fs::File::create(dir.join("cooperation.csv"))
        .map_err(|e| spne::SpneError::Numeric(e.to_string()))?;
    write_csv(file, &rows, "s")?;
    for column in ["degree", "eu_resource_cost", "i_l"] {
        let svg = svg_plot(&rows, "s", column)?;
        std::fs::write(dir.join(format!("{column}.svg")), svg)
            .map_err(|e| spne::SpneError::Numeric(e.to_string()))?;
    }
    let verified = rows.iter().filter(|r| r.oracle == "pass").count();
    println!(
        "{} rows written to {}, oracle passed on {verified}",
        rows.len(),
        dir.display()
    );
    match detect_threshold(&rows) {
        Some(t) => println!(
            "full cooperation ends between s = {:.4} and s = {:.4}",
            t.last_full, t.first_partial
        ),
        None => println!("no switch in cooperation on this range"),
    }
    Ok(())
}
