//! Trajectory runs and CSV output.

use std::io::Write;
use std::path::Path;

use chargeq::dynamics::ManifoldEngine;
use chargeq::measures::{evaluate_all, evaluate_correlations, CorrelationRecord};
use rayon::prelude::*;

use crate::config::ScenarioConfig;
use crate::error::CliError;

pub const CSV_HEADER: &str = "tau,Tc,Qc,Cc,I_lo,I_loz,Q_def,C_def,S_ab,trace_err,min_eig,opt_evals";

/// One CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub tau: f64,
    pub tc: f64,
    pub qc: f64,
    pub cc: f64,
    pub i_lo: f64,
    pub i_loz: f64,
    pub q_def: f64,
    pub c_def: f64,
    pub s_ab: f64,
    pub trace_err: f64,
    pub min_eig: f64,
    pub opt_evals: usize,
    pub warnings: Vec<String>,
}

impl Row {
    fn from_record(rec: CorrelationRecord, config: &ScenarioConfig) -> Self {
        let keep = |on: bool, x: f64| if on { x } else { f64::NAN };
        let (c, d) = (config.measures.correlations, config.measures.deficits);
        Self {
            tau: rec.tau,
            tc: keep(c, rec.total),
            qc: keep(c, rec.quantum),
            cc: keep(c, rec.classical),
            i_lo: keep(c, rec.local_information),
            i_loz: keep(d, rec.localizable_information),
            q_def: keep(d, rec.quantum_deficit),
            c_def: keep(d, rec.classical_deficit),
            s_ab: keep(c, rec.s_ab),
            trace_err: rec.trace_error,
            min_eig: rec.min_eigenvalue,
            opt_evals: rec.optimizer_evals,
            warnings: rec.warnings,
        }
    }

    fn failed(tau: f64, message: String) -> Self {
        Self {
            tau,
            tc: f64::NAN,
            qc: f64::NAN,
            cc: f64::NAN,
            i_lo: f64::NAN,
            i_loz: f64::NAN,
            q_def: f64::NAN,
            c_def: f64::NAN,
            s_ab: f64::NAN,
            trace_err: f64::NAN,
            min_eig: f64::NAN,
            opt_evals: 0,
            warnings: vec![message],
        }
    }

    pub fn to_csv_line(&self) -> String {
        let vals = [
            self.tau,
            self.tc,
            self.qc,
            self.cc,
            self.i_lo,
            self.i_loz,
            self.q_def,
            self.c_def,
            self.s_ab,
            self.trace_err,
            self.min_eig,
        ];
        let mut line: Vec<String> = vals.iter().map(|&x| format_number(x)).collect();
        line.push(self.opt_evals.to_string());
        line.join(",")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub rows: Vec<Row>,
}

impl Trajectory {
    pub fn has_warnings(&self) -> bool {
        self.rows.iter().any(|r| !r.warnings.is_empty())
    }

    /// `τ = …: message` for every row diagnostic, in grid order.
    pub fn warnings(&self) -> Vec<String> {
        self.rows
            .iter()
            .flat_map(|r| {
                r.warnings
                    .iter()
                    .map(move |w| format!("tau = {}: {w}", format_number(r.tau)))
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::with_capacity(200 * (self.rows.len() + 1));
        s.push_str(CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.to_csv_line());
            s.push('\n');
        }
        s
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), CliError> {
        write_file(path, self.to_csv().as_bytes())
    }
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let mut f = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    f.write_all(bytes).map_err(|e| CliError::io(path, e))
}

/// Evolves the scenario and evaluates the requested measures at every grid point.
///
/// Setup failures (bad field, cutoff cap) are errors; a failure at a single time point
/// yields a NaN row carrying the diagnostic.
pub fn run_scenario(config: &ScenarioConfig) -> Result<Trajectory, CliError> {
    let engine = ManifoldEngine::new(&config.model_params())?;
    let rows = config
        .time_grid()
        .par_iter()
        .map(|&tau| match engine.reduced_at(tau) {
            Ok(rho) => {
                let rec = if config.measures.deficits {
                    evaluate_all(&rho, tau, &config.optimizer)
                } else {
                    evaluate_correlations(&rho, tau)
                };
                Row::from_record(rec, config)
            }
            Err(e) => Row::failed(tau, format!("state: {e}")),
        })
        .collect();
    Ok(Trajectory { rows })
}

/// Twelve significant digits in the style of C's `%.12g`. Negative zero prints as `0`.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let fixed = format!("{x:.*}", (11 - exp) as usize);
    trim_zeros(&fixed).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Parses a CSV produced by [`Trajectory::to_csv`] into its header and numeric columns.
pub fn read_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>), String> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<String> = lines
        .next()
        .ok_or("empty CSV")?
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let mut cols = vec![Vec::new(); header.len()];
    for (i, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != header.len() {
            return Err(format!(
                "line {}: expected {} fields, found {}",
                i + 2,
                header.len(),
                fields.len()
            ));
        }
        for (col, f) in cols.iter_mut().zip(fields) {
            let v = f
                .trim()
                .parse::<f64>()
                .map_err(|_| format!("line {}: cannot parse `{f}`", i + 2))?;
            col.push(v);
        }
    }
    Ok((header, cols))
}
