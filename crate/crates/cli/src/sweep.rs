//! Batches of scenarios written to one directory with a manifest.

use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::{Origins, SweepConfig, SweepPoint};
use crate::error::{CliError, EXIT_CONFIG, EXIT_OK, EXIT_WARNINGS};
use crate::run::{run_scenario, write_file, Trajectory};

pub const MANIFEST_NAME: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManifestEntry {
    pub file: String,
    pub delta: f64,
    pub nbar: f64,
    pub initial: String,
    pub config_sha256: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv_sha256: Option<String>,
    /// `ok`, `warnings` or `error`.
    pub status: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub messages: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub extra_files: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub exit_code: i32,
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn write(&self, out_dir: &Path) -> Result<(), CliError> {
        let mut json = serde_json::to_string_pretty(self).expect("manifest serializes");
        json.push('\n');
        write_file(&out_dir.join(MANIFEST_NAME), json.as_bytes())
    }
}

/// Follow-up work on a finished trajectory; returns the names of any files written.
pub type PostHook<'a> =
    dyn Fn(&SweepPoint, &Trajectory, &Path) -> Result<Vec<String>, CliError> + Sync + 'a;

/// Runs every point in parallel and writes the CSVs, then the manifest. Failures are
/// recorded per entry; the manifest exit code is the worst one seen.
pub fn run_points(
    points: &[SweepPoint],
    out_dir: &Path,
    post: Option<&PostHook<'_>>,
) -> Result<Manifest, CliError> {
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let entries: Vec<ManifestEntry> = points
        .par_iter()
        .map(|p| run_point(p, out_dir, post))
        .collect();
    let exit_code = entries
        .iter()
        .map(|e| match e.status.as_str() {
            "ok" => EXIT_OK,
            "warnings" => EXIT_WARNINGS,
            _ => EXIT_CONFIG,
        })
        .max_by_key(|&c| severity(c))
        .unwrap_or(EXIT_OK);
    let manifest = Manifest { exit_code, entries };
    manifest.write(out_dir)?;
    Ok(manifest)
}

/// Errors outrank warnings.
fn severity(code: i32) -> u8 {
    match code {
        EXIT_OK => 0,
        EXIT_WARNINGS => 1,
        _ => 2,
    }
}

fn run_point(p: &SweepPoint, out_dir: &Path, post: Option<&PostHook<'_>>) -> ManifestEntry {
    let mut entry = ManifestEntry {
        file: p.file_name.clone(),
        delta: p.delta,
        nbar: p.nbar,
        initial: p.config.initial.label().to_string(),
        config_sha256: p.config.hash(),
        csv_sha256: None,
        status: "ok".into(),
        messages: Vec::new(),
        extra_files: Vec::new(),
    };
    let result = (|| {
        let traj = run_scenario(&p.config)?;
        let csv = traj.to_csv();
        write_file(&out_dir.join(&p.file_name), csv.as_bytes())?;
        entry.csv_sha256 = Some(hex::encode(Sha256::digest(csv.as_bytes())));
        if traj.has_warnings() {
            entry.status = "warnings".into();
            entry.messages = traj.warnings();
        }
        if let Some(hook) = post {
            entry.extra_files = hook(p, &traj, out_dir)?;
        }
        Ok::<_, CliError>(())
    })();
    if let Err(e) = result {
        entry.status = "error".into();
        entry.messages.push(e.to_string());
    }
    entry
}

pub fn run_sweep(sweep: &SweepConfig, origins: &Origins) -> Result<Manifest, CliError> {
    let points = sweep.points(origins)?;
    run_points(&points, &sweep.out_dir, None)
}
