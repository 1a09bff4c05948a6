//! Manifold engine vs. dense oracle on a scenario's time grid.

use std::fmt::Write;

use chargeq::oracle::{
    deviation_report_with, DeviationOptions, DeviationReport, CONVENTION_MISMATCH_THRESHOLD,
    PASS_THRESHOLD,
};

use crate::config::{FieldChoice, ScenarioConfig};
use crate::error::{CliError, EXIT_OK, EXIT_VERIFY};
use crate::run::format_number;

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub report: DeviationReport,
    pub text: String,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            EXIT_OK
        } else {
            EXIT_VERIFY
        }
    }
}

/// `misorder_basis` relabels `|ee⟩ ↔ |gg⟩` on the manifold side; it exists to exercise
/// the failure path.
pub fn verify(config: &ScenarioConfig, misorder_basis: bool) -> Result<VerifyOutcome, CliError> {
    let taus = config.time_grid();
    let report = deviation_report_with(
        &config.model_params(),
        &taus,
        DeviationOptions {
            misorder_basis,
            ..Default::default()
        },
    )?;
    let text = render(config, &report);
    Ok(VerifyOutcome { report, text })
}

fn render(config: &ScenarioConfig, r: &DeviationReport) -> String {
    let field = match config.field {
        FieldChoice::Coherent { nbar } => format!("coherent, nbar = {}", format_number(nbar)),
        FieldChoice::Fock { n } => format!("fock, n = {n}"),
    };
    let status = if r.passed() {
        "PASS"
    } else if r.convention_mismatch {
        "FAIL (convention mismatch)"
    } else {
        "FAIL"
    };
    let mut s = String::new();
    let _ = writeln!(s, "chargeq oracle verification");
    let _ = writeln!(s, "delta             {}", format_number(config.delta));
    let _ = writeln!(s, "field             {field}");
    let _ = writeln!(s, "initial           {}", config.initial.label());
    let _ = writeln!(s, "epsilon           {}", format_number(config.epsilon));
    let _ = writeln!(
        s,
        "time grid         {} points on [0, {}]",
        r.points,
        format_number(config.tau_max)
    );
    let _ = writeln!(s, "field cutoff      {}", r.field_n_max);
    let _ = writeln!(s, "manifold cutoff   {}", r.manifold_n_max);
    let _ = writeln!(s, "oracle cutoff     {}", r.oracle_n_max);
    let _ = writeln!(s, "max deviation     {:.3e}", r.max_deviation);
    let _ = writeln!(s, "argmax tau        {}", format_number(r.argmax_tau));
    let _ = writeln!(s, "threshold         {:.0e}", PASS_THRESHOLD);
    let _ = writeln!(s, "status            {status}");
    if r.convention_mismatch {
        let _ = writeln!(
            s,
            "diagnostic        deviation exceeds {:.0e} at tau = {}; the engines disagree on \
             basis ordering or sign conventions rather than on numerical precision",
            CONVENTION_MISMATCH_THRESHOLD,
            format_number(r.argmax_tau)
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::InitialState;

    #[test]
    fn single_manifold_and_negative_control() {
        let mut c = ScenarioConfig::figure(0.0, 0.0, InitialState::Ee);
        c.field = FieldChoice::Fock { n: 0 };
        c.tau_max = 10.0;
        c.steps = 51;
        let ok = verify(&c, false).unwrap();
        assert!(ok.report.max_deviation < 1e-10);
        assert_eq!(ok.exit_code(), 0);
        assert!(ok.text.contains("status            PASS"));

        let bad = verify(&c, true).unwrap();
        assert_eq!(bad.exit_code(), 2);
        assert!(bad.report.convention_mismatch);
        assert!(bad.text.contains("convention mismatch"));
    }
}
