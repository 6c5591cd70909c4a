//! Writes the l = 2 eigenfunction curves (Landau and singular gauge) to CSV.

use ringgauge::analytic::Figure;
use ringgauge::scenario::{cmd_figure, DEFAULT_FIGURE_SAMPLES};
use ringgauge::ScenarioConfig;
use std::path::PathBuf;

fn main() -> ringgauge::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("ringgauge-figures"));
    let cfg = ScenarioConfig::default();
    for fig in [Figure::Fig1, Figure::Fig3] {
        let report = cmd_figure(&cfg, fig, DEFAULT_FIGURE_SAMPLES, &out)?;
        for check in &report.checks {
            println!("{check}");
        }
    }
    println!("written to {}", out.display());
    Ok(())
}
