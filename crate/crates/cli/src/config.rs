//! Scenario and sweep configuration: a flat JSON schema whose fields can also be given
//! as command-line flags. Flags win over the file.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use chargeq::dynamics::{FieldSpec, ModelParams, DEFAULT_TRUNCATION_EPSILON};
use chargeq::measures::OptimizerConfig;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// A complex amplitude as written in JSON: a bare number or `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Amplitude {
    Real(f64),
    Complex([f64; 2]),
}

impl Amplitude {
    pub fn value(self) -> Complex64 {
        match self {
            Amplitude::Real(x) => Complex64::new(x, 0.0),
            Amplitude::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

impl From<Complex64> for Amplitude {
    fn from(z: Complex64) -> Self {
        if z.im == 0.0 {
            Amplitude::Real(z.re)
        } else {
            Amplitude::Complex([z.re, z.im])
        }
    }
}

/// Parses `a1,b1,a2,b2` where each entry is a real or complex literal such as `0.6+0.8i`.
pub fn parse_amplitudes(s: &str) -> Result<Vec<Amplitude>, String> {
    s.split(',')
        .map(|t| {
            Complex64::from_str(t.trim())
                .map(Amplitude::from)
                .map_err(|_| format!("cannot parse amplitude `{}`", t.trim()))
        })
        .collect()
}

/// Unresolved scenario fields. Every key is optional so file and flag layers can be merged.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScenario {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nbar: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fock: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<Amplitude>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opt_grid: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opt_grid_starts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opt_random_starts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opt_tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opt_max_evals: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opt_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measures: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

macro_rules! overlay_fields {
    ($dst:ident, $src:ident, $($f:ident),*) => {
        $( if $src.$f.is_some() { $dst.$f = $src.$f.clone(); } )*
    };
}

impl RawScenario {
    /// Fields set in `top` replace those in `self`. Setting either field model clears the other.
    pub fn overlay(&mut self, top: &RawScenario) {
        if top.nbar.is_some() || top.fock.is_some() {
            self.nbar = None;
            self.fock = None;
        }
        overlay_fields!(
            self,
            top,
            delta,
            nbar,
            fock,
            initial,
            amplitudes,
            tau_max,
            steps,
            epsilon,
            opt_grid,
            opt_grid_starts,
            opt_random_starts,
            opt_tolerance,
            opt_max_evals,
            opt_seed,
            measures,
            out
        );
    }
}

/// Where each value came from, for error messages.
#[derive(Debug, Clone, Default)]
pub struct Origins {
    file: Option<PathBuf>,
    text: String,
    flags: Vec<&'static str>,
}

impl Origins {
    pub fn from_file(path: &Path, text: &str) -> Self {
        Self {
            file: Some(path.to_path_buf()),
            text: text.to_string(),
            flags: Vec::new(),
        }
    }

    /// Marks `key` as set on the command line.
    pub fn flag(&mut self, key: &'static str) {
        self.flags.push(key);
    }

    pub fn flags_from(&mut self, raw: &RawScenario) {
        let set = [
            ("delta", raw.delta.is_some()),
            ("nbar", raw.nbar.is_some()),
            ("fock", raw.fock.is_some()),
            ("initial", raw.initial.is_some()),
            ("amplitudes", raw.amplitudes.is_some()),
            ("tau_max", raw.tau_max.is_some()),
            ("steps", raw.steps.is_some()),
            ("epsilon", raw.epsilon.is_some()),
            ("opt_grid", raw.opt_grid.is_some()),
            ("opt_grid_starts", raw.opt_grid_starts.is_some()),
            ("opt_random_starts", raw.opt_random_starts.is_some()),
            ("opt_tolerance", raw.opt_tolerance.is_some()),
            ("opt_max_evals", raw.opt_max_evals.is_some()),
            ("opt_seed", raw.opt_seed.is_some()),
            ("measures", raw.measures.is_some()),
            ("out", raw.out.is_some()),
        ];
        for (k, on) in set {
            if on {
                self.flag(k);
            }
        }
    }

    /// `--tau-max`, `run.json:4` or `<config>`.
    pub fn locate(&self, key: &str) -> String {
        if self.flags.contains(&key) {
            return format!("--{}", key.replace('_', "-"));
        }
        if let Some(path) = &self.file {
            let needle = format!("\"{key}\"");
            for (i, line) in self.text.lines().enumerate() {
                if let Some(pos) = line.find(&needle) {
                    if line[pos + needle.len()..].trim_start().starts_with(':') {
                        return format!("{}:{}", path.display(), i + 1);
                    }
                }
            }
            return path.display().to_string();
        }
        "<config>".to_string()
    }

    pub fn error(&self, key: &str, message: impl fmt::Display) -> CliError {
        CliError::Config(format!("{}: {message}", self.locate(key)))
    }
}

/// Parses JSON, turning syntax and schema errors into `path:line:column: message`.
pub fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let msg = msg
            .rsplit_once(" at line ")
            .map_or(msg.as_str(), |(m, _)| m);
        CliError::Config(format!(
            "{}:{}:{}: {msg}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldChoice {
    Coherent { nbar: f64 },
    Fock { n: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialState {
    Ee,
    Gg,
    Custom([Complex64; 4]),
}

impl InitialState {
    /// Short label used in file names.
    pub fn label(&self) -> &'static str {
        match self {
            InitialState::Ee => "ee",
            InitialState::Gg => "gg",
            InitialState::Custom(_) => "custom",
        }
    }

    /// `(a1, b1, a2, b2)`.
    pub fn amplitudes(&self) -> [Complex64; 4] {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        match self {
            InitialState::Ee => [one, zero, one, zero],
            InitialState::Gg => [zero, one, zero, one],
            InitialState::Custom(a) => *a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Measures {
    pub correlations: bool,
    pub deficits: bool,
}

impl Default for Measures {
    fn default() -> Self {
        Self {
            correlations: true,
            deficits: true,
        }
    }
}

/// A validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub delta: f64,
    pub field: FieldChoice,
    pub initial: InitialState,
    pub tau_max: f64,
    pub steps: usize,
    pub epsilon: f64,
    pub optimizer: OptimizerConfig,
    pub measures: Measures,
    pub out: Option<PathBuf>,
}

pub const DEFAULT_TAU_MAX: f64 = 25.0;
pub const DEFAULT_STEPS: usize = 251;

impl ScenarioConfig {
    /// Figure-style scenario with default grid and optimizer.
    pub fn figure(delta: f64, nbar: f64, initial: InitialState) -> Self {
        Self {
            delta,
            field: FieldChoice::Coherent { nbar },
            initial,
            tau_max: DEFAULT_TAU_MAX,
            steps: DEFAULT_STEPS,
            epsilon: DEFAULT_TRUNCATION_EPSILON,
            optimizer: OptimizerConfig::default(),
            measures: Measures::default(),
            out: None,
        }
    }

    pub fn resolve(raw: &RawScenario, origins: &Origins) -> Result<Self, CliError> {
        let delta = raw
            .delta
            .ok_or_else(|| origins.error("delta", "missing required field `delta`"))?;
        if !delta.is_finite() {
            return Err(origins.error("delta", format!("delta must be finite, got {delta}")));
        }

        let field = match (raw.nbar, raw.fock) {
            (Some(_), Some(_)) => {
                return Err(origins.error("fock", "give either `nbar` or `fock`, not both"))
            }
            (Some(nbar), None) => {
                if !(nbar >= 0.0 && nbar.is_finite()) {
                    return Err(origins.error("nbar", format!("nbar must be ≥ 0, got {nbar}")));
                }
                FieldChoice::Coherent { nbar }
            }
            (None, Some(n)) => FieldChoice::Fock { n },
            (None, None) => {
                return Err(origins.error("nbar", "missing field model: set `nbar` or `fock`"))
            }
        };

        let initial = match raw.initial.as_deref().unwrap_or("ee") {
            "ee" | "gg" if raw.amplitudes.is_some() => {
                return Err(
                    origins.error("amplitudes", "`amplitudes` requires `initial` = \"custom\"")
                )
            }
            "ee" => InitialState::Ee,
            "gg" => InitialState::Gg,
            "custom" => {
                let amps = raw.amplitudes.as_ref().ok_or_else(|| {
                    origins.error("initial", "custom initial state needs `amplitudes`")
                })?;
                if amps.len() != 4 {
                    return Err(origins.error(
                        "amplitudes",
                        format!("expected 4 amplitudes (a1, b1, a2, b2), got {}", amps.len()),
                    ));
                }
                let a = [
                    amps[0].value(),
                    amps[1].value(),
                    amps[2].value(),
                    amps[3].value(),
                ];
                for (name, x, y) in [("qubit 1", a[0], a[1]), ("qubit 2", a[2], a[3])] {
                    let norm = x.norm_sqr() + y.norm_sqr();
                    if (norm - 1.0).abs() > 1e-10 {
                        return Err(origins.error(
                            "amplitudes",
                            format!("{name} amplitudes have squared norm {norm}, expected 1"),
                        ));
                    }
                }
                InitialState::Custom(a)
            }
            other => {
                return Err(origins.error(
                    "initial",
                    format!("unknown initial state `{other}` (expected ee, gg or custom)"),
                ))
            }
        };

        let tau_max = raw.tau_max.unwrap_or(DEFAULT_TAU_MAX);
        if !(tau_max > 0.0 && tau_max.is_finite()) {
            return Err(origins.error("tau_max", format!("tau_max must be > 0, got {tau_max}")));
        }
        let steps = raw.steps.unwrap_or(DEFAULT_STEPS);
        if steps < 2 {
            return Err(origins.error("steps", format!("steps must be ≥ 2, got {steps}")));
        }
        let epsilon = raw.epsilon.unwrap_or(DEFAULT_TRUNCATION_EPSILON);
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(origins.error(
                "epsilon",
                format!("epsilon must be in (0, 1), got {epsilon}"),
            ));
        }

        let mut optimizer = OptimizerConfig::default();
        if let Some(g) = raw.opt_grid {
            if g == 0 {
                return Err(origins.error("opt_grid", "opt_grid must be ≥ 1"));
            }
            optimizer.grid = g;
        }
        if let Some(n) = raw.opt_grid_starts {
            optimizer.grid_starts = n;
        }
        if let Some(n) = raw.opt_random_starts {
            optimizer.random_starts = n;
        }
        if let Some(t) = raw.opt_tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return Err(origins.error(
                    "opt_tolerance",
                    format!("opt_tolerance must be > 0, got {t}"),
                ));
            }
            optimizer.tolerance = t;
        }
        if let Some(n) = raw.opt_max_evals {
            if n == 0 {
                return Err(origins.error("opt_max_evals", "opt_max_evals must be ≥ 1"));
            }
            optimizer.max_evals = n;
        }
        if let Some(s) = raw.opt_seed {
            optimizer.seed = s;
        }

        let measures = match &raw.measures {
            None => Measures::default(),
            Some(list) => {
                let mut m = Measures {
                    correlations: false,
                    deficits: false,
                };
                for item in list {
                    match item.as_str() {
                        "correlations" => m.correlations = true,
                        "deficits" => m.deficits = true,
                        other => return Err(origins.error(
                            "measures",
                            format!(
                                "unknown measure group `{other}` (expected correlations, deficits)"
                            ),
                        )),
                    }
                }
                m
            }
        };

        let config = Self {
            delta,
            field,
            initial,
            tau_max,
            steps,
            epsilon,
            optimizer,
            measures,
            out: raw.out.clone(),
        };
        config
            .model_params()
            .validate()
            .map_err(|e| origins.error("amplitudes", e))?;
        Ok(config)
    }

    pub fn field_spec(&self) -> FieldSpec {
        let spec = match self.field {
            FieldChoice::Coherent { nbar } => FieldSpec::coherent(nbar),
            FieldChoice::Fock { n } => FieldSpec::fock(n),
        };
        spec.with_epsilon(self.epsilon)
    }

    pub fn model_params(&self) -> ModelParams {
        let [a1, b1, a2, b2] = self.initial.amplitudes();
        ModelParams {
            delta: self.delta,
            field: self.field_spec(),
            a1,
            b1,
            a2,
            b2,
        }
    }

    /// `steps` equally spaced points on `[0, tau_max]`, both ends included.
    pub fn time_grid(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| self.tau_max * i as f64 / last)
            .collect()
    }

    /// Fully populated raw form. Round-trips through [`ScenarioConfig::resolve`].
    pub fn to_raw(&self) -> RawScenario {
        let (nbar, fock) = match self.field {
            FieldChoice::Coherent { nbar } => (Some(nbar), None),
            FieldChoice::Fock { n } => (None, Some(n)),
        };
        let amplitudes = match &self.initial {
            InitialState::Custom(a) => Some(a.iter().map(|&z| Amplitude::from(z)).collect()),
            _ => None,
        };
        let mut measures = Vec::new();
        if self.measures.correlations {
            measures.push("correlations".to_string());
        }
        if self.measures.deficits {
            measures.push("deficits".to_string());
        }
        RawScenario {
            delta: Some(self.delta),
            nbar,
            fock,
            initial: Some(self.initial.label().to_string()),
            amplitudes,
            tau_max: Some(self.tau_max),
            steps: Some(self.steps),
            epsilon: Some(self.epsilon),
            opt_grid: Some(self.optimizer.grid),
            opt_grid_starts: Some(self.optimizer.grid_starts),
            opt_random_starts: Some(self.optimizer.random_starts),
            opt_tolerance: Some(self.optimizer.tolerance),
            opt_max_evals: Some(self.optimizer.max_evals),
            opt_seed: Some(self.optimizer.seed),
            measures: Some(measures),
            out: None,
        }
    }

    /// SHA-256 of the canonical JSON form, excluding the output path.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(&self.to_raw()).expect("config serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }
}

/// A cartesian product of scenarios sharing a common base.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSweep {
    pub deltas: Option<Vec<f64>>,
    pub nbars: Option<Vec<f64>>,
    pub initials: Option<Vec<String>>,
    #[serde(default)]
    pub base: RawScenario,
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub deltas: Vec<f64>,
    pub nbars: Vec<f64>,
    pub initials: Vec<InitialState>,
    pub base: RawScenario,
    pub out_dir: PathBuf,
}

/// One point of a sweep with its output file name.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub file_name: String,
    pub delta: f64,
    pub nbar: f64,
    pub config: ScenarioConfig,
}

impl SweepConfig {
    pub fn resolve(raw: &RawSweep, origins: &Origins) -> Result<Self, CliError> {
        let nonempty = |key: &str, len: Option<usize>| -> Result<(), CliError> {
            match len {
                None => Err(origins.error(key, format!("missing required field `{key}`"))),
                Some(0) => Err(origins.error(key, format!("`{key}` must not be empty"))),
                Some(_) => Ok(()),
            }
        };
        nonempty("deltas", raw.deltas.as_ref().map(Vec::len))?;
        nonempty("nbars", raw.nbars.as_ref().map(Vec::len))?;
        nonempty("initials", raw.initials.as_ref().map(Vec::len))?;
        let initials = raw
            .initials
            .as_ref()
            .unwrap()
            .iter()
            .map(|s| match s.as_str() {
                "ee" => Ok(InitialState::Ee),
                "gg" => Ok(InitialState::Gg),
                other => Err(origins.error(
                    "initials",
                    format!("unknown initial state `{other}` in a sweep (expected ee or gg)"),
                )),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if raw.base.delta.is_some() || raw.base.nbar.is_some() || raw.base.fock.is_some() {
            return Err(origins.error(
                "base",
                "`base` must not set delta, nbar or fock; they come from the sweep lists",
            ));
        }
        if raw.base.initial.is_some() || raw.base.amplitudes.is_some() {
            return Err(origins.error("base", "`base` must not set the initial state"));
        }
        let out_dir = raw
            .out_dir
            .clone()
            .ok_or_else(|| origins.error("out_dir", "missing required field `out_dir`"))?;
        let sweep = Self {
            deltas: raw.deltas.clone().unwrap(),
            nbars: raw.nbars.clone().unwrap(),
            initials,
            base: raw.base.clone(),
            out_dir,
        };
        // Validate every combination up front so no work starts on a bad sweep.
        sweep.points(origins)?;
        Ok(sweep)
    }

    /// Combinations in `delta`-major, then `nbar`, then initial-state order.
    pub fn points(&self, origins: &Origins) -> Result<Vec<SweepPoint>, CliError> {
        let mut out = Vec::new();
        for &delta in &self.deltas {
            for &nbar in &self.nbars {
                for initial in &self.initials {
                    let mut raw = self.base.clone();
                    raw.delta = Some(delta);
                    raw.nbar = Some(nbar);
                    raw.initial = Some(initial.label().to_string());
                    raw.out = None;
                    let config = ScenarioConfig::resolve(&raw, origins)?;
                    out.push(SweepPoint {
                        file_name: sweep_file_name(delta, nbar, initial),
                        delta,
                        nbar,
                        config,
                    });
                }
            }
        }
        Ok(out)
    }
}

/// `d{delta}_n{nbar}_{initial}.csv`, numbers in shortest round-trip form.
pub fn sweep_file_name(delta: f64, nbar: f64, initial: &InitialState) -> String {
    format!("d{delta}_n{nbar}_{}.csv", initial.label())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn origins(text: &str) -> Origins {
        Origins::from_file(Path::new("run.json"), text)
    }

    #[test]
    fn file_then_flags() {
        let text = "{\n  \"delta\": 0.5,\n  \"nbar\": 10,\n  \"steps\": 11\n}";
        let mut raw: RawScenario = parse_json(Path::new("run.json"), text).unwrap();
        let flags = RawScenario {
            steps: Some(21),
            fock: Some(3),
            ..Default::default()
        };
        raw.overlay(&flags);
        let mut o = origins(text);
        o.flags_from(&flags);
        let c = ScenarioConfig::resolve(&raw, &o).unwrap();
        assert_eq!(c.steps, 21);
        assert_eq!(c.field, FieldChoice::Fock { n: 3 });
        assert_eq!(c.initial, InitialState::Ee);
        assert_eq!(c.time_grid().len(), 21);
        assert_eq!(*c.time_grid().last().unwrap(), 25.0);
    }

    #[test]
    fn errors_reference_lines() {
        let text = "{\n  \"delta\": 0.5,\n  \"nbar\": 10,\n  \"steps\": 1\n}";
        let raw: RawScenario = parse_json(Path::new("run.json"), text).unwrap();
        let err = ScenarioConfig::resolve(&raw, &origins(text)).unwrap_err();
        assert_eq!(err.to_string(), "run.json:4: steps must be ≥ 2, got 1");

        let bad = "{\n  \"delta\": 0.5,\n  \"stepz\": 3\n}";
        let err = parse_json::<RawScenario>(Path::new("run.json"), bad).unwrap_err();
        assert!(err.to_string().starts_with("run.json:3:"), "{err}");
        assert!(err.to_string().contains("stepz"));
    }

    #[test]
    fn flag_errors_name_the_flag() {
        let raw = RawScenario {
            delta: Some(0.0),
            nbar: Some(1.0),
            tau_max: Some(-1.0),
            ..Default::default()
        };
        let mut o = Origins::default();
        o.flags_from(&raw);
        let err = ScenarioConfig::resolve(&raw, &o).unwrap_err();
        assert!(err.to_string().starts_with("--tau-max:"), "{err}");
    }

    #[test]
    fn custom_amplitudes() {
        let amps = parse_amplitudes("0.6,0.8i,1,0").unwrap();
        let raw = RawScenario {
            delta: Some(0.0),
            fock: Some(0),
            initial: Some("custom".into()),
            amplitudes: Some(amps),
            ..Default::default()
        };
        let c = ScenarioConfig::resolve(&raw, &Origins::default()).unwrap();
        assert_eq!(c.initial.amplitudes()[1], Complex64::new(0.0, 0.8));
        let back = ScenarioConfig::resolve(&c.to_raw(), &Origins::default()).unwrap();
        assert_eq!(back, c);

        let raw = RawScenario {
            amplitudes: Some(parse_amplitudes("1,1,1,0").unwrap()),
            ..raw
        };
        assert!(ScenarioConfig::resolve(&raw, &Origins::default()).is_err());
    }

    #[test]
    fn hash_ignores_output_path() {
        let mut a = ScenarioConfig::figure(0.5, 10.0, InitialState::Ee);
        let h = a.hash();
        a.out = Some("x.csv".into());
        assert_eq!(a.hash(), h);
        a.steps = 101;
        assert_ne!(a.hash(), h);
    }

    #[test]
    fn sweep_points_and_names() {
        let text = r#"{"deltas": [0.5, 1.0], "nbars": [10], "initials": ["ee", "gg"], "base": {"steps": 5}, "out_dir": "o"}"#;
        let raw: RawSweep = parse_json(Path::new("s.json"), text).unwrap();
        let o = origins(text);
        let s = SweepConfig::resolve(&raw, &o).unwrap();
        let names: Vec<String> = s
            .points(&o)
            .unwrap()
            .into_iter()
            .map(|p| p.file_name)
            .collect();
        assert_eq!(
            names,
            [
                "d0.5_n10_ee.csv",
                "d0.5_n10_gg.csv",
                "d1_n10_ee.csv",
                "d1_n10_gg.csv"
            ]
        );

        let empty = r#"{"deltas": [], "nbars": [10], "initials": ["ee"], "out_dir": "o"}"#;
        let raw: RawSweep = parse_json(Path::new("s.json"), empty).unwrap();
        assert!(SweepConfig::resolve(&raw, &origins(empty)).is_err());
    }
}
