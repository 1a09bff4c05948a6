//! The eight figure regimes: Δ ∈ {0.5, 1} × n̄ ∈ {10, 20} × {|ee⟩, |gg⟩}.

use std::path::Path;

use crate::config::{sweep_file_name, InitialState, ScenarioConfig, SweepPoint};
use crate::error::CliError;
use crate::plot::plot_csv_text;
use crate::run::{write_file, Trajectory};
use crate::sweep::{run_points, Manifest};

pub const FIGURE_DELTAS: [f64; 2] = [0.5, 1.0];
pub const FIGURE_NBARS: [f64; 2] = [10.0, 20.0];

pub fn figure_points() -> Vec<SweepPoint> {
    let mut out = Vec::new();
    for delta in FIGURE_DELTAS {
        for nbar in FIGURE_NBARS {
            for initial in [InitialState::Ee, InitialState::Gg] {
                out.push(SweepPoint {
                    file_name: sweep_file_name(delta, nbar, &initial),
                    delta,
                    nbar,
                    config: ScenarioConfig::figure(delta, nbar, initial),
                });
            }
        }
    }
    out
}

fn render_plots(
    p: &SweepPoint,
    traj: &Trajectory,
    out_dir: &Path,
) -> Result<Vec<String>, CliError> {
    let csv = traj.to_csv();
    let stem = p.file_name.trim_end_matches(".csv");
    let label = format!(
        "Δ/λ = {}, n̄ = {}, |{}⟩",
        p.delta,
        p.nbar,
        p.config.initial.label()
    );
    let mut files = Vec::new();
    for (suffix, cols, what) in [
        (
            "correlations",
            ["Tc", "Qc", "Cc"].as_slice(),
            "correlations",
        ),
        (
            "deficits",
            ["Q_def", "C_def"].as_slice(),
            "information deficits",
        ),
    ] {
        let columns: Vec<String> = cols.iter().map(|s| s.to_string()).collect();
        let svg = plot_csv_text(&csv, &columns, &format!("{what}: {label}"))?;
        let name = format!("{stem}_{suffix}.svg");
        write_file(&out_dir.join(&name), svg.as_bytes())?;
        files.push(name);
    }
    Ok(files)
}

/// Writes a CSV and two SVGs per regime plus the manifest.
pub fn run_figures(out_dir: &Path) -> Result<Manifest, CliError> {
    run_points(&figure_points(), out_dir, Some(&render_plots))
}
