//! Scenario files: a TOML schema whose physical quantities all carry units.
//!
//! Parsing happens in two steps. Serde checks the shape and rejects unknown
//! keys; [`ScenarioConfig::resolve`] then parses every quantity and builds the
//! model objects, reporting failures by key path.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use cryolink_core::catalog::{Architecture, Receiver};
use cryolink_core::noise::{CryoAmplifier, PhotonicFrontEnd, StageAttenuator};
use cryolink_core::optimizer::{NoiseTarget, TargetLevel};
use cryolink_core::thermal::{Layer, LinkKind};
use cryolink_core::{ActiveComponent, AttenuationFactor, FridgeModel, Frequency, MaterialLibrary, PowerLevel, Stage, ThermalLink};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::units::{self, Unit};

/// Literal accepted in place of a cooling power for an infinite heat sink.
pub const UNBOUNDED: &str = "unbounded";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub qubit_power: String,
    #[serde(default = "one")]
    pub lines_share_factor: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duty: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fridge: Option<FridgeConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub materials: Option<MaterialsConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub links: Vec<LinkConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub actives: Vec<ActiveConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub attenuators: Vec<AttenuatorConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub receiver: Option<ReceiverConfig>,
    #[serde(default)]
    pub targets: TargetsConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimize: Option<OptimizeConfig>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub provenance: BTreeMap<String, String>,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FridgeConfig {
    pub stages: Vec<StageConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageConfig {
    pub name: String,
    pub temperature: String,
    pub cooling_power: String,
}

/// Extra conductivity tables merged over the bundled set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialsConfig {
    /// CSV file, relative to the scenario file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inline_csv: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkConfig {
    pub name: String,
    pub kind: String,
    pub hot_stage: String,
    pub cold_stage: String,
    pub length: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_load: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub layers: Vec<LayerConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerConfig {
    pub material: String,
    pub cross_section: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActiveConfig {
    pub name: String,
    pub stage: String,
    pub dissipation: String,
    pub duty_cycled: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttenuatorConfig {
    pub stage: String,
    /// `"20 dB"`, or a linear factor such as `"100 x"`.
    pub attenuation: String,
    /// Defaults to the stage temperature.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub temperature: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub impedance: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReceiverConfig {
    pub stage: String,
    pub front_end: FrontEndConfig,
    #[serde(default = "AmplifierConfig::none")]
    pub amplifier: AmplifierConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrontEndConfig {
    pub laser_rin: String,
    pub v_pi: String,
    pub drive_temperature: String,
    pub drive_impedance: String,
    pub responsivity: String,
    pub bandwidth: String,
    pub photocurrent: String,
    pub carrier: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmplifierConfig {
    pub noise_figure: String,
    pub transimpedance: String,
    pub dissipation: String,
    pub ambient: String,
}

impl AmplifierConfig {
    fn none() -> Self {
        Self::from_domain(&CryoAmplifier::none())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetsConfig {
    /// Thermal photon occupation allowed at the qubit (dimensionless).
    pub thermal_occupation: f64,
    /// Qubit current-noise bound for photonic links.
    pub qubit_noise_asd: String,
    pub frequency: String,
}

impl Default for TargetsConfig {
    fn default() -> Self {
        Self {
            thermal_occupation: 1e-3,
            qubit_noise_asd: "2 pA/rtHz".into(),
            frequency: "6 GHz".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub noise_figures: Vec<String>,
    pub photocurrent_min: String,
    pub photocurrent_max: String,
    pub points: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            noise_figures: ["0 dB", "1 dB", "2 dB", "3 dB"].map(String::from).to_vec(),
            photocurrent_min: "0.1 uA".into(),
            photocurrent_max: "100 uA".into(),
            points: 61,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizeConfig {
    /// Stages that may host an attenuator, warmest first.
    #[serde(default)]
    pub stages: Vec<String>,
    pub grid_step: String,
    pub source_temperature: String,
}

impl Default for OptimizeConfig {
    fn default() -> Self {
        Self {
            stages: Vec::new(),
            grid_step: "1 dB".into(),
            source_temperature: "300 K".into(),
        }
    }
}

/// Sweep request in base units.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSettings {
    pub noise_figures_db: Vec<f64>,
    pub range: (f64, f64),
    pub points: usize,
}

/// Optimizer request in base units.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeSettings {
    pub stages: Vec<String>,
    pub grid_step_db: f64,
    pub source_temperature: f64,
}

/// A fully parsed scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub fridge: FridgeModel,
    pub library: MaterialLibrary,
    pub architecture: Architecture,
    pub duty: Option<f64>,
    pub thermal_target: NoiseTarget,
    pub noise_target: NoiseTarget,
    pub sweep: SweepSettings,
    pub optimize: OptimizeSettings,
    materials: Option<MaterialsConfig>,
}

fn quantity(path: &str, text: &str, unit: Unit) -> Result<f64, CliError> {
    units::parse(text, unit).map_err(|e| CliError::config(path, e))
}

fn core<T>(path: &str, r: cryolink_core::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::config(path, e))
}

fn attenuation(path: &str, text: &str) -> Result<AttenuationFactor, CliError> {
    let factor = match text.trim().strip_suffix('x') {
        Some(num) => {
            let v: f64 = num.trim().parse().map_err(|_| CliError::config(path, format!("'{text}' is not a linear factor")))?;
            AttenuationFactor::from_linear(v)
        }
        None => AttenuationFactor::from_db(quantity(path, text, Unit::Decibel)?),
    };
    core(path, factor)
}

fn format_attenuation(a: AttenuationFactor) -> String {
    match AttenuationFactor::from_db(a.db()) {
        Ok(back) if back == a => units::format(a.db(), Unit::Decibel),
        _ => format!("{} x", units::shortest(a.linear())),
    }
}

fn format_power(p: PowerLevel) -> String {
    match PowerLevel::from_dbm(p.dbm()) {
        Ok(back) if back == p => format!("{} dBm", units::shortest(p.dbm())),
        _ => units::format(p.watts(), Unit::Watt),
    }
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string().trim_end().to_string()))
    }

    pub fn to_toml(&self) -> Result<String, CliError> {
        toml::to_string(self).map_err(|e| CliError::Config(format!("cannot serialize scenario: {e}")))
    }

    /// Parses every quantity and builds the model objects. `base_dir` anchors
    /// relative material-file paths.
    pub fn resolve(&self, base_dir: &Path) -> Result<Scenario, CliError> {
        let fridge = match &self.fridge {
            None => FridgeModel::default(),
            Some(f) => {
                let mut stages = Vec::with_capacity(f.stages.len());
                for (i, s) in f.stages.iter().enumerate() {
                    let p = format!("fridge.stages[{i}]");
                    let t = quantity(&format!("{p}.temperature"), &s.temperature, Unit::Kelvin)?;
                    let c = if s.cooling_power.trim() == UNBOUNDED {
                        f64::INFINITY
                    } else {
                        quantity(&format!("{p}.cooling_power"), &s.cooling_power, Unit::Watt)?
                    };
                    stages.push(Stage::new(s.name.clone(), t, c));
                }
                core("fridge.stages", FridgeModel::new(stages))?
            }
        };

        let mut library = MaterialLibrary::bundled();
        if let Some(m) = &self.materials {
            if let Some(file) = &m.file {
                let path: PathBuf = base_dir.join(file);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::config("materials.file", format!("{}: {e}", path.display())))?;
                library.merge(core("materials.file", MaterialLibrary::from_csv_str(&text))?);
            }
            if let Some(text) = &m.inline_csv {
                library.merge(core("materials.inline_csv", MaterialLibrary::from_csv_str(text))?);
            }
        }

        let mut arch = Architecture::new(self.name.clone());
        arch.description = self.description.clone();
        arch.qubit_power = units::parse_power(&self.qubit_power).map_err(|e| CliError::config("qubit_power", e))?;
        arch.lines_share_factor = self.lines_share_factor;
        arch.provenance = self.provenance.clone();

        for (i, l) in self.links.iter().enumerate() {
            let p = format!("links[{i}]");
            let kind: LinkKind = core(&format!("{p}.kind"), l.kind.parse())?;
            let mut layers = Vec::with_capacity(l.layers.len());
            for (j, layer) in l.layers.iter().enumerate() {
                layers.push(Layer {
                    material: layer.material.clone(),
                    cross_section: quantity(&format!("{p}.layers[{j}].cross_section"), &layer.cross_section, Unit::SquareMetre)?,
                });
            }
            let fixed_load_override = l
                .fixed_load
                .as_deref()
                .map(|t| quantity(&format!("{p}.fixed_load"), t, Unit::Watt))
                .transpose()?;
            let link = ThermalLink {
                name: l.name.clone(),
                kind,
                layers,
                length: quantity(&format!("{p}.length"), &l.length, Unit::Metre)?,
                hot_stage: l.hot_stage.clone(),
                cold_stage: l.cold_stage.clone(),
                fixed_load_override,
            };
            core(&p, link.validate_shape())?;
            core(&p, link.endpoints(&fridge))?;
            if link.fixed_load_override.is_none() {
                for layer in &link.layers {
                    core(&p, library.get(&layer.material))?;
                }
            }
            arch.links.push(link);
        }

        for (i, a) in self.actives.iter().enumerate() {
            let p = format!("actives[{i}]");
            let d = quantity(&format!("{p}.dissipation"), &a.dissipation, Unit::Watt)?;
            core(&format!("{p}.stage"), fridge.index_of(&a.stage))?;
            arch.actives.push(ActiveComponent::new(a.name.clone(), a.stage.clone(), d, a.duty_cycled));
        }

        for (i, a) in self.attenuators.iter().enumerate() {
            let p = format!("attenuators[{i}]");
            let factor = attenuation(&format!("{p}.attenuation"), &a.attenuation)?;
            let mut att = core(&format!("{p}.stage"), StageAttenuator::at_stage(&fridge, &a.stage, factor))?;
            if let Some(t) = &a.temperature {
                att.physical_temperature = quantity(&format!("{p}.temperature"), t, Unit::Kelvin)?;
            }
            if let Some(z) = &a.impedance {
                att.impedance = quantity(&format!("{p}.impedance"), z, Unit::Ohm)?;
            }
            arch.attenuators.push(att);
        }

        if let Some(r) = &self.receiver {
            arch.receiver = Some(Receiver {
                stage: r.stage.clone(),
                front_end: r.front_end.resolve()?,
                amplifier: r.amplifier.resolve()?,
            });
        }
        core("scenario", arch.validate(&fridge))?;

        if let Some(d) = self.duty {
            core("duty", cryolink_core::thermal::check_duty(d))?;
        }

        let t = &self.targets;
        let frequency = core("targets.frequency", Frequency::from_hz(quantity("targets.frequency", &t.frequency, Unit::Hertz)?))?;
        if !(t.thermal_occupation > 0.0 && t.thermal_occupation.is_finite()) {
            return Err(CliError::config("targets.thermal_occupation", "must be positive"));
        }
        let asd = quantity("targets.qubit_noise_asd", &t.qubit_noise_asd, Unit::AmpPerRootHertz)?;
        if !(asd > 0.0) {
            return Err(CliError::config("targets.qubit_noise_asd", "must be positive"));
        }

        let sweep_cfg = self.sweep.clone().unwrap_or_default();
        let sweep = SweepSettings {
            noise_figures_db: sweep_cfg
                .noise_figures
                .iter()
                .enumerate()
                .map(|(i, nf)| quantity(&format!("sweep.noise_figures[{i}]"), nf, Unit::Decibel))
                .collect::<Result<_, _>>()?,
            range: (
                quantity("sweep.photocurrent_min", &sweep_cfg.photocurrent_min, Unit::Amp)?,
                quantity("sweep.photocurrent_max", &sweep_cfg.photocurrent_max, Unit::Amp)?,
            ),
            points: sweep_cfg.points,
        };

        let opt_cfg = self.optimize.clone().unwrap_or_default();
        for (i, s) in opt_cfg.stages.iter().enumerate() {
            core(&format!("optimize.stages[{i}]"), fridge.index_of(s))?;
        }
        let optimize = OptimizeSettings {
            stages: opt_cfg.stages.clone(),
            grid_step_db: quantity("optimize.grid_step", &opt_cfg.grid_step, Unit::Decibel)?,
            source_temperature: quantity("optimize.source_temperature", &opt_cfg.source_temperature, Unit::Kelvin)?,
        };

        Ok(Scenario {
            fridge,
            library,
            architecture: arch,
            duty: self.duty,
            thermal_target: NoiseTarget::occupation(t.thermal_occupation).at(frequency),
            noise_target: NoiseTarget::current_asd(asd).at(frequency),
            sweep,
            optimize,
            materials: self.materials.clone(),
        })
    }

    /// Config for an architecture wired into `fridge`, with default sections.
    pub fn from_architecture(arch: &Architecture, fridge: &FridgeModel) -> Self {
        let fridge_cfg = FridgeConfig {
            stages: fridge
                .stages()
                .iter()
                .map(|s| StageConfig {
                    name: s.name.clone(),
                    temperature: units::format(s.temperature, Unit::Kelvin),
                    cooling_power: if s.is_unbounded() {
                        UNBOUNDED.into()
                    } else {
                        units::format(s.cooling_power, Unit::Watt)
                    },
                })
                .collect(),
        };
        Self {
            name: arch.name.clone(),
            description: arch.description.clone(),
            qubit_power: format_power(arch.qubit_power),
            lines_share_factor: arch.lines_share_factor,
            duty: None,
            fridge: Some(fridge_cfg),
            materials: None,
            links: arch
                .links
                .iter()
                .map(|l| LinkConfig {
                    name: l.name.clone(),
                    kind: l.kind.as_str().into(),
                    hot_stage: l.hot_stage.clone(),
                    cold_stage: l.cold_stage.clone(),
                    length: units::format(l.length, Unit::Metre),
                    fixed_load: l.fixed_load_override.map(|w| units::format(w, Unit::Watt)),
                    layers: l
                        .layers
                        .iter()
                        .map(|x| LayerConfig {
                            material: x.material.clone(),
                            cross_section: units::format(x.cross_section, Unit::SquareMetre),
                        })
                        .collect(),
                })
                .collect(),
            actives: arch
                .actives
                .iter()
                .map(|a| ActiveConfig {
                    name: a.name.clone(),
                    stage: a.stage.clone(),
                    dissipation: units::format(a.dissipation, Unit::Watt),
                    duty_cycled: a.duty_cycled,
                })
                .collect(),
            attenuators: arch
                .attenuators
                .iter()
                .map(|a| AttenuatorConfig {
                    stage: a.stage.clone(),
                    attenuation: format_attenuation(a.attenuation),
                    temperature: Some(units::format(a.physical_temperature, Unit::Kelvin)),
                    impedance: Some(units::format(a.impedance, Unit::Ohm)),
                })
                .collect(),
            receiver: arch.receiver.as_ref().map(|r| ReceiverConfig {
                stage: r.stage.clone(),
                front_end: FrontEndConfig::from_domain(&r.front_end),
                amplifier: AmplifierConfig::from_domain(&r.amplifier),
            }),
            targets: TargetsConfig::default(),
            sweep: Some(SweepConfig::default()),
            optimize: Some(OptimizeConfig::default()),
            provenance: arch.provenance.clone(),
        }
    }

    /// Canonical config of a resolved scenario: every quantity in base units.
    pub fn from_scenario(s: &Scenario) -> Self {
        let mut cfg = Self::from_architecture(&s.architecture, &s.fridge);
        cfg.duty = s.duty;
        cfg.materials = s.materials.clone();
        let occupation = match s.thermal_target.level {
            TargetLevel::Occupation(n) => n,
            TargetLevel::CurrentAsd(_) => unreachable!("thermal target is built as an occupation"),
        };
        let asd = match s.noise_target.level {
            TargetLevel::CurrentAsd(a) => a,
            TargetLevel::Occupation(_) => unreachable!("noise target is built as a current ASD"),
        };
        cfg.targets = TargetsConfig {
            thermal_occupation: occupation,
            qubit_noise_asd: units::format(asd, Unit::AmpPerRootHertz),
            frequency: units::format(s.thermal_target.frequency.hz(), Unit::Hertz),
        };
        cfg.sweep = Some(SweepConfig {
            noise_figures: s.sweep.noise_figures_db.iter().map(|&nf| units::format(nf, Unit::Decibel)).collect(),
            photocurrent_min: units::format(s.sweep.range.0, Unit::Amp),
            photocurrent_max: units::format(s.sweep.range.1, Unit::Amp),
            points: s.sweep.points,
        });
        cfg.optimize = Some(OptimizeConfig {
            stages: s.optimize.stages.clone(),
            grid_step: units::format(s.optimize.grid_step_db, Unit::Decibel),
            source_temperature: units::format(s.optimize.source_temperature, Unit::Kelvin),
        });
        cfg
    }
}

impl FrontEndConfig {
    pub fn from_domain(f: &PhotonicFrontEnd) -> Self {
        Self {
            laser_rin: units::format(f.laser_rin_db, Unit::DecibelPerHertz),
            v_pi: units::format(f.v_pi, Unit::Volt),
            drive_temperature: units::format(f.drive_temperature, Unit::Kelvin),
            drive_impedance: units::format(f.drive_impedance, Unit::Ohm),
            responsivity: units::format(f.responsivity, Unit::AmpPerWatt),
            bandwidth: units::format(f.bandwidth, Unit::Hertz),
            photocurrent: units::format(f.photocurrent, Unit::Amp),
            carrier: units::format(f.carrier.hz(), Unit::Hertz),
        }
    }

    fn resolve(&self) -> Result<PhotonicFrontEnd, CliError> {
        let p = "receiver.front_end";
        let q = |key: &str, text: &str, unit| quantity(&format!("{p}.{key}"), text, unit);
        let carrier = q("carrier", &self.carrier, Unit::Hertz)?;
        let front = PhotonicFrontEnd {
            laser_rin_db: q("laser_rin", &self.laser_rin, Unit::DecibelPerHertz)?,
            v_pi: q("v_pi", &self.v_pi, Unit::Volt)?,
            drive_temperature: q("drive_temperature", &self.drive_temperature, Unit::Kelvin)?,
            drive_impedance: q("drive_impedance", &self.drive_impedance, Unit::Ohm)?,
            responsivity: q("responsivity", &self.responsivity, Unit::AmpPerWatt)?,
            bandwidth: q("bandwidth", &self.bandwidth, Unit::Hertz)?,
            photocurrent: q("photocurrent", &self.photocurrent, Unit::Amp)?,
            carrier: core(&format!("{p}.carrier"), Frequency::from_hz(carrier))?,
        };
        core(p, front.validate())?;
        Ok(front)
    }
}

impl AmplifierConfig {
    pub fn from_domain(a: &CryoAmplifier) -> Self {
        Self {
            noise_figure: units::format(a.noise_figure_db, Unit::Decibel),
            transimpedance: units::format(a.transimpedance, Unit::Ohm),
            dissipation: units::format(a.dissipation, Unit::Watt),
            ambient: units::format(a.ambient, Unit::Kelvin),
        }
    }

    fn resolve(&self) -> Result<CryoAmplifier, CliError> {
        let p = "receiver.amplifier";
        let q = |key: &str, text: &str, unit| quantity(&format!("{p}.{key}"), text, unit);
        let amp = CryoAmplifier {
            noise_figure_db: q("noise_figure", &self.noise_figure, Unit::Decibel)?,
            transimpedance: q("transimpedance", &self.transimpedance, Unit::Ohm)?,
            dissipation: q("dissipation", &self.dissipation, Unit::Watt)?,
            ambient: q("ambient", &self.ambient, Unit::Kelvin)?,
        };
        core(p, amp.validate())?;
        Ok(amp)
    }
}

/// Canonical config of a builtin architecture on the default fridge.
pub fn builtin_config(name: &str) -> Result<ScenarioConfig, CliError> {
    let seed = builtin_seed(name)?;
    Ok(ScenarioConfig::from_scenario(&seed.resolve(Path::new("."))?))
}

fn builtin_seed(name: &str) -> Result<ScenarioConfig, CliError> {
    let fridge = FridgeModel::default();
    let arch = cryolink_core::catalog::builtin(name, &fridge)?;
    let mut cfg = ScenarioConfig::from_architecture(&arch, &fridge);
    if name == cryolink_core::catalog::CONVENTIONAL {
        cfg.optimize = Some(OptimizeConfig {
            stages: arch.attenuators.iter().map(|a| a.stage.clone()).collect(),
            ..OptimizeConfig::default()
        });
    }
    if name == cryolink_core::catalog::PROPOSED {
        // The photonic operating point is sized against a tighter bound than the default.
        cfg.targets.qubit_noise_asd = "0.7 pA/rtHz".into();
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cryolink_core::catalog::BUILTIN_NAMES;

    #[test]
    fn builtins_round_trip() {
        for name in BUILTIN_NAMES {
            let cfg = builtin_config(name).unwrap();
            let text = cfg.to_toml().unwrap();
            let parsed = ScenarioConfig::from_toml(&text).unwrap();
            assert_eq!(parsed, cfg, "{name}");
            let scenario = parsed.resolve(Path::new(".")).unwrap();
            let fridge = FridgeModel::default();
            let arch = cryolink_core::catalog::builtin(name, &fridge).unwrap();
            assert_eq!(scenario.architecture, arch, "{name}");
            let again = ScenarioConfig::from_scenario(&scenario).to_toml().unwrap();
            assert_eq!(again, text, "{name}");
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let mut text = builtin_config("proposed").unwrap().to_toml().unwrap();
        text = text.replacen("lines_share_factor", "lines_shar_factor", 1);
        let err = ScenarioConfig::from_toml(&text).unwrap_err();
        assert!(err.to_string().contains("lines_shar_factor"), "{err}");
    }

    #[test]
    fn unitless_quantity_names_its_key() {
        let mut cfg = builtin_config("proposed").unwrap();
        cfg.links[0].length = "1".into();
        let err = cfg.resolve(Path::new(".")).unwrap_err();
        assert!(err.to_string().contains("links[0].length"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn minimal_scenario_uses_defaults() {
        let cfg = ScenarioConfig::from_toml("name = \"empty\"\nqubit_power = \"-70 dBm\"\n").unwrap();
        let s = cfg.resolve(Path::new(".")).unwrap();
        assert_eq!(s.fridge, FridgeModel::default());
        assert!(s.architecture.links.is_empty());
    }
}
