//! Control-line architectures and their line capacity.
//!
//! An [`Architecture`] describes the wiring and dissipation of a single XY
//! control line. Capacity is the number of such lines each stage can cool,
//! counting one line per qubit.

use std::collections::BTreeMap;

use crate::error::{validation, Result};
use crate::noise::{CryoAmplifier, PhotonicFrontEnd, StageAttenuator};
use crate::optimizer::attenuator_dissipation;
use crate::physics::{AttenuationFactor, PowerLevel};
use crate::thermal::fridge::{CP, MXC, RT, STAGE_4K};
use crate::thermal::link::Layer;
use crate::thermal::{check_duty, stage_heat_report, ActiveComponent, FridgeModel, LinkKind, MaterialLibrary, ThermalLink};

pub const CONVENTIONAL: &str = "conventional";
pub const CRYO_CMOS: &str = "cryo_cmos";
pub const DEEP_PHOTONIC: &str = "deep_photonic";
pub const PROPOSED: &str = "proposed";

/// Built-in architectures, in canonical report order.
pub const BUILTIN_NAMES: [&str; 4] = [CONVENTIONAL, CRYO_CMOS, DEEP_PHOTONIC, PROPOSED];

/// Stage used as the common reference when loads are expressed per qubit.
pub const REFERENCE_STAGE: &str = STAGE_4K;

/// Optical-to-electrical conversion point of an RF-photonic line.
#[derive(Debug, Clone, PartialEq)]
pub struct Receiver {
    pub stage: String,
    pub front_end: PhotonicFrontEnd,
    pub amplifier: CryoAmplifier,
}

/// One control-line design.
#[derive(Debug, Clone, PartialEq)]
pub struct Architecture {
    pub name: String,
    pub description: String,
    pub links: Vec<ThermalLink>,
    /// Explicit components; receiver and attenuator loads are derived.
    pub actives: Vec<ActiveComponent>,
    /// Attenuators on the line, warmest first.
    pub attenuators: Vec<StageAttenuator>,
    pub qubit_power: PowerLevel,
    pub receiver: Option<Receiver>,
    /// Control lines carried by each physical link.
    pub lines_share_factor: f64,
    /// Source note for every numeric parameter, keyed as in [`Architecture::parameter_keys`].
    pub provenance: BTreeMap<String, String>,
}

impl Architecture {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            description: String::new(),
            links: Vec::new(),
            actives: Vec::new(),
            attenuators: Vec::new(),
            qubit_power: PowerLevel::from_dbm(-70.0).expect("finite"),
            receiver: None,
            lines_share_factor: 1.0,
            provenance: BTreeMap::new(),
        }
    }

    pub fn validate(&self, fridge: &FridgeModel) -> Result<()> {
        if !(self.lines_share_factor >= 1.0 && self.lines_share_factor.is_finite()) {
            return Err(validation(format!(
                "architecture '{}': lines_share_factor must be >= 1",
                self.name
            )));
        }
        for link in &self.links {
            link.validate_shape()?;
            link.endpoints(fridge)?;
        }
        for a in &self.actives {
            fridge.index_of(&a.stage)?;
        }
        let mut last = None;
        for att in &self.attenuators {
            let idx = fridge.index_of(&att.stage)?;
            if last.is_some_and(|prev| idx <= prev) {
                return Err(validation(format!(
                    "architecture '{}': attenuators must be listed warmest first, one per stage",
                    self.name
                )));
            }
            last = Some(idx);
        }
        if let Some(rx) = &self.receiver {
            fridge.index_of(&rx.stage)?;
            rx.front_end.validate()?;
            rx.amplifier.validate()?;
        }
        Ok(())
    }

    /// Explicit components plus the loads implied by the receiver and attenuators.
    pub fn all_actives(&self) -> Vec<ActiveComponent> {
        let mut out = self.actives.clone();
        if let Some(rx) = &self.receiver {
            out.push(ActiveComponent::new("optical_power", &rx.stage, rx.front_end.optical_power(), true));
            if rx.amplifier.dissipation > 0.0 {
                out.push(ActiveComponent::new("amplifier", &rx.stage, rx.amplifier.dissipation, false));
            }
        }
        let diss = attenuator_dissipation(&self.attenuators, self.qubit_power, 1.0);
        for (att, d) in self.attenuators.iter().zip(diss) {
            out.push(ActiveComponent::new(format!("attenuator_{}", att.stage), &att.stage, d, true));
        }
        out
    }

    /// Keys of every numeric parameter, for provenance bookkeeping.
    pub fn parameter_keys(&self) -> Vec<String> {
        let mut keys = vec!["qubit_power".to_string(), "lines_share_factor".to_string()];
        for l in &self.links {
            keys.push(format!("link.{}.length", l.name));
            if l.fixed_load_override.is_some() {
                keys.push(format!("link.{}.fixed_load", l.name));
            }
            for layer in &l.layers {
                keys.push(format!("link.{}.layer.{}.cross_section", l.name, layer.material));
            }
        }
        for a in &self.actives {
            keys.push(format!("active.{}.dissipation", a.name));
        }
        for att in &self.attenuators {
            keys.push(format!("attenuator.{}.attenuation", att.stage));
            keys.push(format!("attenuator.{}.temperature", att.stage));
            keys.push(format!("attenuator.{}.impedance", att.stage));
        }
        if self.receiver.is_some() {
            for k in [
                "laser_rin",
                "v_pi",
                "drive_temperature",
                "drive_impedance",
                "responsivity",
                "bandwidth",
                "photocurrent",
                "carrier",
                "noise_figure",
                "transimpedance",
                "amplifier_dissipation",
                "amplifier_ambient",
            ] {
                keys.push(format!("receiver.{k}"));
            }
        }
        keys.sort();
        keys
    }
}

/// Capacity of one stage for a given architecture.
#[derive(Debug, Clone, PartialEq)]
pub struct StageCapacity {
    pub stage: String,
    pub cooling_power: f64,
    pub per_line_passive: f64,
    pub per_line_active: f64,
    pub per_line_total: f64,
    /// `cooling_power / per_line_total`; infinite when the line does not load the stage.
    pub headroom_ratio: f64,
    /// `floor(headroom_ratio)`; `None` when unbounded.
    pub max_lines: Option<u64>,
}

/// Per-qubit loads; the totals are 4K-equivalent.
#[derive(Debug, Clone, PartialEq)]
pub struct PerQubitPower {
    pub reference_stage: String,
    /// Σ active load × (reference cooling / stage cooling), W.
    pub active: f64,
    /// Σ passive load × (reference cooling / stage cooling), W.
    pub passive: f64,
    /// Raw per-stage (stage, active, passive) in watts.
    pub stages: Vec<(String, f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapacityReport {
    pub architecture: String,
    pub duty: f64,
    pub stages: Vec<StageCapacity>,
    pub bottleneck: Option<String>,
    pub overall_max_lines: Option<u64>,
    pub per_qubit: PerQubitPower,
}

impl CapacityReport {
    pub fn stage(&self, name: &str) -> Option<&StageCapacity> {
        self.stages.iter().find(|s| s.stage == name)
    }
}

fn per_line_stages(arch: &Architecture, fridge: &FridgeModel, duty: f64, library: &MaterialLibrary) -> Result<Vec<StageCapacity>> {
    arch.validate(fridge)?;
    let report = stage_heat_report(fridge, &arch.links, &arch.all_actives(), duty, library)?;
    Ok(report
        .rows
        .into_iter()
        .map(|r| {
            let passive = r.passive / arch.lines_share_factor;
            let total = passive + r.active;
            let headroom_ratio = if total > 0.0 { r.cooling_power / total } else { f64::INFINITY };
            StageCapacity {
                stage: r.stage,
                cooling_power: r.cooling_power,
                per_line_passive: passive,
                per_line_active: r.active,
                per_line_total: total,
                headroom_ratio,
                max_lines: headroom_ratio.is_finite().then(|| headroom_ratio.floor() as u64),
            }
        })
        .collect())
}

fn normalize(stages: &[StageCapacity], reference: &str) -> Result<PerQubitPower> {
    let ref_cooling = stages
        .iter()
        .find(|s| s.stage == reference)
        .ok_or_else(|| validation(format!("reference stage '{reference}' not in fridge")))?
        .cooling_power;
    let mut out = PerQubitPower {
        reference_stage: reference.to_string(),
        active: 0.0,
        passive: 0.0,
        stages: Vec::with_capacity(stages.len()),
    };
    for s in stages {
        let scale = ref_cooling / s.cooling_power;
        out.active += s.per_line_active * scale;
        out.passive += s.per_line_passive * scale;
        out.stages.push((s.stage.clone(), s.per_line_active, s.per_line_passive));
    }
    Ok(out)
}

/// Active and passive power per qubit, normalized to the 4K stage by the
/// ratio of cooling powers.
pub fn per_qubit_power(arch: &Architecture, fridge: &FridgeModel, duty: f64, library: &MaterialLibrary) -> Result<PerQubitPower> {
    normalize(&per_line_stages(arch, fridge, duty, library)?, REFERENCE_STAGE)
}

/// Maximum line count per stage and overall, at the given duty cycle.
pub fn capacity(arch: &Architecture, fridge: &FridgeModel, duty: f64, library: &MaterialLibrary) -> Result<CapacityReport> {
    let duty = check_duty(duty)?;
    let stages = per_line_stages(arch, fridge, duty, library)?;
    // Warmest stage wins ties.
    let bottleneck = stages
        .iter()
        .filter_map(|s| s.max_lines.map(|m| (m, s)))
        .fold(None::<(u64, &StageCapacity)>, |best, cur| match best {
            Some(b) if b.0 <= cur.0 => Some(b),
            _ => Some(cur),
        });
    let per_qubit = normalize(&stages, REFERENCE_STAGE)?;
    Ok(CapacityReport {
        architecture: arch.name.clone(),
        duty,
        bottleneck: bottleneck.map(|b| b.1.stage.clone()),
        overall_max_lines: bottleneck.map(|b| b.0),
        stages,
        per_qubit,
    })
}

/// Capacity of several architectures against one fridge, in the order given.
pub fn compare(archs: &[Architecture], fridge: &FridgeModel, duty: f64, library: &MaterialLibrary) -> Result<Vec<CapacityReport>> {
    archs.iter().map(|a| capacity(a, fridge, duty, library)).collect()
}

/// Looks up a built-in architecture wired into `fridge`.
pub fn builtin(name: &str, fridge: &FridgeModel) -> Result<Architecture> {
    let arch = match name {
        CONVENTIONAL => conventional(fridge)?,
        CRYO_CMOS => cryo_cmos(),
        DEEP_PHOTONIC => deep_photonic(),
        PROPOSED => proposed(fridge)?,
        other => {
            return Err(validation(format!(
                "unknown architecture '{other}' (expected one of {})",
                BUILTIN_NAMES.join(", ")
            )))
        }
    };
    arch.validate(fridge)?;
    Ok(arch)
}

fn note(p: &mut BTreeMap<String, String>, key: &str, text: &str) {
    p.insert(key.to_string(), text.to_string());
}

const QUBIT_POWER_NOTE: &str = "XY drive power at the qubit, about -70 dBm for a 6 GHz transmon";
const SHARE_NOTE: &str = "one physical line per XY control line (no multiplexing)";
const SC_COAX_CP: f64 = 0.06e-6;
const SC_COAX_MXC: f64 = 0.004e-6;
const SC_COAX_NOTE: &str = "measured SC coax load adjusted for 0.034in NbTi-NbTi cable";
const FIBER_LOAD: f64 = 5.6e-6;
const FIBER_NOTE: &str = "Fourier-law estimate for 1 m of SMF-28 from room temperature to 4K";

fn sc_coax_below_4k(arch: &mut Architecture) {
    arch.links.push(ThermalLink::fixed("sc_coax_4k_cp", LinkKind::ScCoax, STAGE_4K, CP, SC_COAX_CP));
    arch.links.push(ThermalLink::fixed("sc_coax_cp_mxc", LinkKind::ScCoax, CP, MXC, SC_COAX_MXC));
    for name in ["sc_coax_4k_cp", "sc_coax_cp_mxc"] {
        note(&mut arch.provenance, &format!("link.{name}.length"), "unused: load is fixed");
        note(&mut arch.provenance, &format!("link.{name}.fixed_load"), SC_COAX_NOTE);
    }
}

fn smf28_rt_4k(arch: &mut Architecture) {
    let mut fiber = ThermalLink::smf28("fiber_rt_4k", RT, STAGE_4K, 1.0);
    fiber.fixed_load_override = Some(FIBER_LOAD);
    arch.links.push(fiber);
    let p = &mut arch.provenance;
    note(p, "link.fiber_rt_4k.length", "approximate fiber run from room temperature to 4K");
    note(p, "link.fiber_rt_4k.fixed_load", FIBER_NOTE);
    note(p, "link.fiber_rt_4k.layer.silica.cross_section", "SMF-28 silica core and cladding, 125 um diameter");
    note(p, "link.fiber_rt_4k.layer.ptfe.cross_section", "SMF-28 polymer buffer annulus, 125 to 250 um");
}

fn common_notes(arch: &mut Architecture) {
    note(&mut arch.provenance, "qubit_power", QUBIT_POWER_NOTE);
    note(&mut arch.provenance, "lines_share_factor", SHARE_NOTE);
}

fn attenuator_notes(arch: &mut Architecture, text: &str) {
    let stages: Vec<String> = arch.attenuators.iter().map(|a| a.stage.clone()).collect();
    for s in stages {
        note(&mut arch.provenance, &format!("attenuator.{s}.attenuation"), text);
        note(&mut arch.provenance, &format!("attenuator.{s}.temperature"), "stage temperature of the host fridge");
        note(&mut arch.provenance, &format!("attenuator.{s}.impedance"), "50 ohm coaxial line");
    }
}

fn conventional(fridge: &FridgeModel) -> Result<Architecture> {
    let mut a = Architecture::new(CONVENTIONAL);
    a.description = "Room-temperature AWGs, stainless RF coax to 4K and 20 dB attenuators at 4K, CP and MXC".into();
    common_notes(&mut a);
    a.links.push(ThermalLink::fixed("coax_rt_4k", LinkKind::RfCoax, RT, STAGE_4K, 1e-3));
    note(&mut a.provenance, "link.coax_rt_4k.length", "unused: load is fixed");
    note(&mut a.provenance, "link.coax_rt_4k.fixed_load", "typical stainless-steel RF coax load at 4K, about 1 mW per cable");
    sc_coax_below_4k(&mut a);
    let twenty = AttenuationFactor::from_db(20.0)?;
    for s in [STAGE_4K, CP, MXC] {
        a.attenuators.push(StageAttenuator::at_stage(fridge, s, twenty)?);
    }
    attenuator_notes(&mut a, "about 20 dB per stage is the usual thermal-noise placement");
    Ok(a)
}

fn cryo_cmos() -> Architecture {
    let mut a = Architecture::new(CRYO_CMOS);
    a.description = "4K CMOS pulse generation fed by a DC/digital loom, SC coax to the qubit".into();
    common_notes(&mut a);
    a.links.push(ThermalLink::fixed("dc_loom_rt_4k", LinkKind::DcWire, RT, STAGE_4K, 10e-6));
    note(&mut a.provenance, "link.dc_loom_rt_4k.length", "unused: load is fixed");
    note(
        &mut a.provenance,
        "link.dc_loom_rt_4k.fixed_load",
        "DC loom runs about two orders of magnitude below stainless coax (1 mW)",
    );
    a.actives.push(ActiveComponent::new("cmos_controller", STAGE_4K, 2e-3, true));
    note(
        &mut a.provenance,
        "active.cmos_controller.dissipation",
        "lowest reported 28 nm cryo-CMOS controller power, about 2 mW per qubit",
    );
    sc_coax_below_4k(&mut a);
    a
}

fn deep_photonic() -> Architecture {
    let mut a = Architecture::new(DEEP_PHOTONIC);
    a.description = "Fiber to a photodiode at the mixing chamber".into();
    common_notes(&mut a);
    smf28_rt_4k(&mut a);
    for (name, hot, cold) in [("fiber_4k_cp", STAGE_4K, CP), ("fiber_cp_mxc", CP, MXC)] {
        a.links.push(ThermalLink::fixed(name, LinkKind::Fiber, hot, cold, 3e-12));
        note(&mut a.provenance, &format!("link.{name}.length"), "unused: load is fixed");
        note(
            &mut a.provenance,
            &format!("link.{name}.fixed_load"),
            "claimed 3 pW fiber load below 4K, not experimentally verified",
        );
    }
    a.actives.push(ActiveComponent::new("photodiode", MXC, 1e-6, true));
    note(
        &mut a.provenance,
        "active.photodiode.dissipation",
        "optical power dissipated at the MXC photodiode, about 1 uW; dark current and ring tuning excluded",
    );
    a
}

fn proposed(fridge: &FridgeModel) -> Result<Architecture> {
    let mut a = Architecture::new(PROPOSED);
    a.description = "Fiber to a 4K photodiode, SC coax from 4K to the qubit, no amplifier or attenuators".into();
    common_notes(&mut a);
    smf28_rt_4k(&mut a);
    sc_coax_below_4k(&mut a);
    for s in [CP, MXC] {
        a.attenuators.push(StageAttenuator::identity_at(fridge, s)?);
    }
    attenuator_notes(&mut a, "no cold attenuation: the 4K photodiode output already meets the noise target");
    a.receiver = Some(Receiver {
        stage: STAGE_4K.into(),
        front_end: PhotonicFrontEnd::default(),
        amplifier: CryoAmplifier::none(),
    });
    let p = &mut a.provenance;
    note(p, "receiver.laser_rin", "high-quality lasers are below -150 dB/Hz");
    note(p, "receiver.v_pi", "Mach-Zehnder modulator half-wave voltage of 2 V");
    note(p, "receiver.drive_temperature", "modulator driven from room temperature");
    note(p, "receiver.drive_impedance", "50 ohm driver");
    note(p, "receiver.responsivity", "cryogenic photodiode responsivity near 1 A/W");
    note(p, "receiver.bandwidth", "cryogenic photodiodes exceed 10 GHz bandwidth");
    note(p, "receiver.photocurrent", "smallest mean photocurrent meeting the qubit noise bound without amplifier");
    note(p, "receiver.carrier", "6 GHz qubit drive carrier");
    note(p, "receiver.noise_figure", "0 dB encodes the amplifier-free link");
    note(p, "receiver.transimpedance", "50 ohm: photodiode drives the line directly");
    note(p, "receiver.amplifier_dissipation", "no amplifier, no bias power");
    note(p, "receiver.amplifier_ambient", "4K stage ambient for the amplifier noise reference");
    Ok(a)
}

/// Layer helper for callers building custom links.
pub fn layer(material: &str, cross_section: f64) -> Layer {
    Layer {
        material: material.to_string(),
        cross_section,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (FridgeModel, MaterialLibrary) {
        (FridgeModel::default(), MaterialLibrary::bundled())
    }

    #[test]
    fn provenance_is_complete() {
        let (f, _) = setup();
        for name in BUILTIN_NAMES {
            let a = builtin(name, &f).unwrap();
            let keys = a.parameter_keys();
            let noted: Vec<String> = a.provenance.keys().cloned().collect();
            assert_eq!(keys, noted, "{name}");
            assert!(a.provenance.values().all(|v| !v.is_empty()));
        }
    }

    #[test]
    fn proposed_4k_line_load() {
        let (f, lib) = setup();
        let a = builtin(PROPOSED, &f).unwrap();
        let r = capacity(&a, &f, 0.33, &lib).unwrap();
        let s = r.stage("4K").unwrap();
        assert!((s.per_line_passive - 5.6e-6).abs() < 1e-15);
        assert!((s.per_line_active - 1.4e-6 * 0.33).abs() < 1e-15);
        assert_eq!(r.stage("CP").unwrap().per_line_active, 0.0);
        assert_eq!(r.bottleneck.as_deref(), Some("CP"));
    }

    #[test]
    fn conventional_4k_passive() {
        let (f, lib) = setup();
        let a = builtin(CONVENTIONAL, &f).unwrap();
        let r = capacity(&a, &f, 0.33, &lib).unwrap();
        assert_eq!(r.stage("4K").unwrap().per_line_passive, 1e-3);
    }

    #[test]
    fn deep_photonic_mxc() {
        let (f, lib) = setup();
        let a = builtin(DEEP_PHOTONIC, &f).unwrap();
        let r = capacity(&a, &f, 0.33, &lib).unwrap();
        let m = r.stage("MXC").unwrap();
        assert!((m.per_line_active - 0.33e-6).abs() < 1e-18);
        assert_eq!(m.per_line_passive, 3e-12);
        assert_eq!(r.bottleneck.as_deref(), Some("MXC"));
        assert!(r.overall_max_lines.unwrap() <= 60);
    }

    #[test]
    fn cryo_cmos_per_qubit_active() {
        let (f, lib) = setup();
        let a = builtin(CRYO_CMOS, &f).unwrap();
        let p = per_qubit_power(&a, &f, 1.0, &lib).unwrap();
        assert!((p.active - 2e-3).abs() < 1e-12);
    }

    #[test]
    fn empty_architecture_has_no_power() {
        let (f, lib) = setup();
        let a = Architecture::new("empty");
        let p = per_qubit_power(&a, &f, 0.5, &lib).unwrap();
        assert_eq!((p.active, p.passive), (0.0, 0.0));
        let r = capacity(&a, &f, 0.5, &lib).unwrap();
        assert_eq!(r.overall_max_lines, None);
        assert_eq!(r.bottleneck, None);
    }

    #[test]
    fn overall_is_min_of_stages() {
        let (f, lib) = setup();
        for name in BUILTIN_NAMES {
            let r = capacity(&builtin(name, &f).unwrap(), &f, 0.33, &lib).unwrap();
            let min = r.stages.iter().filter_map(|s| s.max_lines).min();
            assert_eq!(r.overall_max_lines, min);
        }
    }

    #[test]
    fn unknown_builtin() {
        assert!(builtin("mystery", &FridgeModel::default()).is_err());
    }

    #[test]
    fn share_factor_divides_passive_only() {
        let (f, lib) = setup();
        let mut a = builtin(PROPOSED, &f).unwrap();
        a.lines_share_factor = 4.0;
        let r = capacity(&a, &f, 0.33, &lib).unwrap();
        let s = r.stage("4K").unwrap();
        assert!((s.per_line_passive - 1.4e-6).abs() < 1e-15);
        a.lines_share_factor = 0.5;
        assert!(capacity(&a, &f, 0.33, &lib).is_err());
    }
}
