//! Built-in parameter bundles for the standard plots.

use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::output::{write_csv, write_svg, Quantity};
use crate::harness::sweep::{run_sweep, SweepConfig, SweepResult};
use crate::model::SystemParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    One,
    Two,
    Three,
}

impl Figure {
    pub const ALL: [Figure; 3] = [Figure::One, Figure::Two, Figure::Three];

    pub fn parse(which: &str) -> Result<Vec<Figure>> {
        match which.trim() {
            "1" | "fig1" => Ok(vec![Figure::One]),
            "2" | "fig2" => Ok(vec![Figure::Two]),
            "3" | "fig3" => Ok(vec![Figure::Three]),
            "all" => Ok(Self::ALL.to_vec()),
            other => Err(Error::config(
                "which",
                format!("expected 1, 2, 3 or all, got `{other}`"),
            )),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Figure::One => "fig1",
            Figure::Two => "fig2",
            Figure::Three => "fig3",
        }
    }

    /// Labelled sweeps making up the figure.
    pub fn bundles(self) -> Vec<(&'static str, SweepConfig)> {
        let params = |gamma, temperature| {
            SystemParams::new(1.0, gamma, 50.0, temperature).expect("bundle values are valid")
        };
        match self {
            Figure::One => vec![
                ("T0", SweepConfig::new(params(0.01, 0.0), 0.05)),
                ("T1", SweepConfig::new(params(0.01, 1.0), 0.05)),
            ],
            Figure::Two => vec![
                ("r0.1", SweepConfig::new(params(0.1, 0.0), 0.1)),
                ("r0", SweepConfig::new(params(0.1, 0.0), 0.0)),
            ],
            Figure::Three => vec![("r0.1", SweepConfig::new(params(0.1, 0.0), 0.1))],
        }
    }

    pub fn quantity(self) -> Quantity {
        match self {
            Figure::One => Quantity::Zeta,
            Figure::Two => Quantity::Lambda,
            Figure::Three => Quantity::Negativity,
        }
    }
}

/// Runs every bundle of `figure` and writes `<fig>_<label>.csv` and `.svg`
/// into `out_dir`.
pub fn render_figure(figure: Figure, out_dir: &Path) -> Result<Vec<(String, SweepResult)>> {
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut results = Vec::new();
    for (label, config) in figure.bundles() {
        let result = run_sweep(&config)?;
        let stem = format!("{}_{}", figure.name(), label);
        write_csv(&result.reports, &out_dir.join(format!("{stem}.csv")))?;
        write_svg(
            &result.reports,
            figure.quantity(),
            &out_dir.join(format!("{stem}.svg")),
        )?;
        results.push((stem, result));
    }
    Ok(results)
}
