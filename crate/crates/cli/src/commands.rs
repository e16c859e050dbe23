//! Subcommand implementations. Each returns tables; rendering happens in `lib`.

use std::path::{Path, PathBuf};

use cryolink_core::catalog::{capacity, BUILTIN_NAMES};
use cryolink_core::noise::DEFAULT_IMPEDANCE;
use cryolink_core::optimizer::{
    min_photocurrent, noise_vs_photocurrent_sweep, optimize_attenuation_split, required_total_attenuation, SplitProblem,
};

use crate::config::{builtin_config, Scenario, ScenarioConfig};
use crate::error::CliError;
use crate::output::{count, sci, sha256_hex, Table};

pub const DEFAULT_DUTY: f64 = 0.33;

/// Where a scenario comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Builtin(String),
    File(PathBuf),
}

/// A resolved scenario and its canonical TOML.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub scenario: Scenario,
    pub canonical: String,
}

impl Loaded {
    /// Builtins go through the same text path as files, so a dumped builtin
    /// re-ingested from disk produces identical results.
    pub fn from_source(source: &Source) -> Result<Self, CliError> {
        let (text, base) = match source {
            Source::Builtin(name) => (builtin_config(name)?.to_toml()?, PathBuf::from(".")),
            Source::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
                let base = path.parent().map_or_else(|| PathBuf::from("."), Path::to_path_buf);
                (text, base)
            }
        };
        Self::from_text(&text, &base)
    }

    pub fn from_text(text: &str, base_dir: &Path) -> Result<Self, CliError> {
        let scenario = ScenarioConfig::from_toml(text)?.resolve(base_dir)?;
        let canonical = ScenarioConfig::from_scenario(&scenario).to_toml()?;
        Ok(Self { scenario, canonical })
    }

    pub fn digest(&self) -> String {
        sha256_hex(&self.canonical)
    }

    pub fn duty(&self, flag: Option<f64>) -> f64 {
        flag.or(self.scenario.duty).unwrap_or(DEFAULT_DUTY)
    }
}

/// Result of a command: tables to emit, plus an error to report after
/// emitting them (used when only part of an optimization is infeasible).
#[derive(Debug)]
pub struct Outcome {
    pub tables: Vec<Table>,
    pub digest: String,
    pub failure: Option<CliError>,
}

fn duty_note(t: &mut Table, duty: f64) {
    t.note("duty", sci(duty));
}

/// Per-line heat load on every refrigerated stage.
pub fn report(loaded: &Loaded, duty: f64) -> Result<Outcome, CliError> {
    let s = &loaded.scenario;
    let cap = capacity(&s.architecture, &s.fridge, duty, &s.library)?;
    let mut t = Table::new(
        "report.csv",
        vec!["stage", "temperature_K", "cooling_W", "passive_W", "active_W", "total_W", "headroom_ratio"],
    );
    t.note("scenario", s.architecture.name.clone());
    duty_note(&mut t, duty);
    for row in &cap.stages {
        t.push(vec![
            row.stage.clone(),
            sci(s.fridge.stage(&row.stage)?.temperature),
            sci(row.cooling_power),
            sci(row.per_line_passive),
            sci(row.per_line_active),
            sci(row.per_line_total),
            sci(row.headroom_ratio),
        ]);
    }
    Ok(Outcome {
        tables: vec![t],
        digest: loaded.digest(),
        failure: None,
    })
}

fn receiver<'a>(s: &'a Scenario, cmd: &str) -> Result<&'a cryolink_core::catalog::Receiver, CliError> {
    s.architecture
        .receiver
        .as_ref()
        .ok_or_else(|| CliError::Config(format!("{cmd}: scenario '{}' has no [receiver]", s.architecture.name)))
}

/// Qubit noise versus mean photocurrent for each configured noise figure.
pub fn sweep(loaded: &Loaded) -> Result<Outcome, CliError> {
    let s = &loaded.scenario;
    let rx = receiver(s, "sweep")?;
    let rows = noise_vs_photocurrent_sweep(
        &rx.front_end,
        &rx.amplifier,
        &s.sweep.noise_figures_db,
        s.architecture.qubit_power,
        s.sweep.range,
        s.sweep.points,
        DEFAULT_IMPEDANCE,
    )?;
    let mut t = Table::new("sweep.csv", vec!["photocurrent_A", "nf_dB", "noise_asd_A_per_sqrtHz"]);
    t.note("scenario", s.architecture.name.clone());
    t.note("qubit_power_W", sci(s.architecture.qubit_power.watts()));
    t.note("target_noise_asd_A_per_sqrtHz", sci(s.noise_target.as_current_psd(DEFAULT_IMPEDANCE)?.sqrt()));
    for p in rows {
        t.push(vec![sci(p.photocurrent), sci(p.noise_figure_db), sci(p.noise_asd)]);
    }
    Ok(Outcome {
        tables: vec![t],
        digest: loaded.digest(),
        failure: None,
    })
}

/// Attenuator placement and/or minimum photocurrent, depending on the scenario.
pub fn optimize(loaded: &Loaded, duty: f64) -> Result<Outcome, CliError> {
    let s = &loaded.scenario;
    let mut tables = Vec::new();
    let mut failure = None;
    let has_split = !s.optimize.stages.is_empty();
    if !has_split && s.architecture.receiver.is_none() {
        return Err(CliError::Config(
            "optimize: nothing to optimize (set optimize.stages or add a [receiver])".into(),
        ));
    }

    if has_split {
        let problem = SplitProblem {
            fridge: s.fridge.clone(),
            source_temperature: s.optimize.source_temperature,
            stages: s.optimize.stages.clone(),
            grid_step_db: s.optimize.grid_step_db,
            qubit_power: s.architecture.qubit_power,
            target: s.thermal_target,
            duty,
            impedance: DEFAULT_IMPEDANCE,
        };
        match optimize_attenuation_split(&problem) {
            Ok(plan) => {
                let mut t = Table::new(
                    "optimize_plan.csv",
                    vec!["stage", "temperature_K", "attenuation_dB", "dissipation_W", "load_ratio"],
                );
                t.note("scenario", s.architecture.name.clone());
                duty_note(&mut t, duty);
                let required =
                    required_total_attenuation(s.optimize.source_temperature, &s.thermal_target, DEFAULT_IMPEDANCE)?;
                t.note("required_total_dB", sci(required));
                t.note("total_dB", sci(plan.total_db()));
                t.note("target_occupation", sci(plan.target_occupation));
                t.note("achieved_occupation", sci(plan.achieved_occupation));
                t.note("worst_load_ratio", sci(plan.objective));
                for a in &plan.stages {
                    t.push(vec![
                        a.stage.clone(),
                        sci(a.temperature),
                        sci(a.attenuation_db),
                        sci(a.dissipation),
                        sci(a.load_ratio),
                    ]);
                }
                tables.push(t);
            }
            Err(e @ cryolink_core::Error::Infeasible { .. }) => failure = Some(CliError::Model(e)),
            Err(e) => return Err(e.into()),
        }
    }

    if let Some(rx) = &s.architecture.receiver {
        match min_photocurrent(&rx.front_end, &rx.amplifier, &s.noise_target, s.architecture.qubit_power, DEFAULT_IMPEDANCE) {
            Ok(sol) => {
                let mut t = Table::new(
                    "optimize_photocurrent.csv",
                    vec![
                        "photocurrent_A",
                        "noise_asd_A_per_sqrtHz",
                        "target_asd_A_per_sqrtHz",
                        "shot_A2_per_Hz",
                        "rin_A2_per_Hz",
                        "drive_A2_per_Hz",
                        "amplifier_A2_per_Hz",
                    ],
                );
                t.note("scenario", s.architecture.name.clone());
                t.note("qubit_power_W", sci(s.architecture.qubit_power.watts()));
                t.note("dominant_term", sol.terms.dominant());
                t.push(vec![
                    sci(sol.photocurrent),
                    sci(sol.noise_asd),
                    sci(sol.target_asd),
                    sci(sol.terms.shot),
                    sci(sol.terms.rin),
                    sci(sol.terms.drive),
                    sci(sol.terms.amplifier),
                ]);
                tables.push(t);
            }
            Err(e @ cryolink_core::Error::Infeasible { .. }) => {
                failure.get_or_insert(CliError::Model(e));
            }
            Err(e) => return Err(e.into()),
        }
    }

    Ok(Outcome {
        tables,
        digest: loaded.digest(),
        failure,
    })
}

/// Line capacity of several scenarios, stage by stage.
pub fn compare(loaded: &[Loaded], duty: f64) -> Result<Outcome, CliError> {
    let mut stages = Table::new("compare.csv", vec!["architecture", "stage", "max_lines", "headroom_ratio"]);
    let mut summary = Table::new(
        "compare_summary.csv",
        vec!["architecture", "overall_max_lines", "bottleneck", "active_W_per_qubit", "passive_W_per_qubit"],
    );
    for t in [&mut stages, &mut summary] {
        duty_note(t, duty);
    }
    summary.note(
        "per_qubit_normalization",
        "4K-equivalent: each stage load scaled by 4K cooling power / stage cooling power",
    );
    for l in loaded {
        let s = &l.scenario;
        let cap = capacity(&s.architecture, &s.fridge, duty, &s.library)?;
        for row in &cap.stages {
            stages.push(vec![cap.architecture.clone(), row.stage.clone(), count(row.max_lines), sci(row.headroom_ratio)]);
        }
        summary.push(vec![
            cap.architecture.clone(),
            count(cap.overall_max_lines),
            cap.bottleneck.clone().unwrap_or_else(|| "none".into()),
            sci(cap.per_qubit.active),
            sci(cap.per_qubit.passive),
        ]);
    }
    let joined: Vec<&str> = loaded.iter().map(|l| l.canonical.as_str()).collect();
    Ok(Outcome {
        tables: vec![stages, summary],
        digest: sha256_hex(&joined.join("\n")),
        failure: None,
    })
}

/// All builtin names as sources, in canonical order.
pub fn builtin_sources() -> Vec<Source> {
    BUILTIN_NAMES.iter().map(|n| Source::Builtin((*n).to_string())).collect()
}
