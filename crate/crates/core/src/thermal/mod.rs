//! Conduction loads through wiring and per-stage heat budgets.
//!
//! Passive load from a link is charged entirely to its cold endpoint. Active
//! components are charged to the stage they sit on, scaled by the duty cycle
//! only when flagged as signal-dependent.

pub mod fridge;
pub mod link;
pub mod materials;
pub mod quadrature;

pub use fridge::{FridgeModel, Stage};
pub use link::{conduction_load, Layer, LinkKind, ThermalLink};
pub use materials::{ConductivityModel, MaterialLibrary};

use crate::error::{domain, validation, Result};

/// Heat dissipated by a component sitting on one stage.
#[derive(Debug, Clone, PartialEq)]
pub struct ActiveComponent {
    pub name: String,
    pub stage: String,
    /// Watts while the signal is on.
    pub dissipation: f64,
    /// True for signal-dependent dissipation that scales with the duty cycle.
    pub duty_cycled: bool,
}

impl ActiveComponent {
    pub fn new(name: impl Into<String>, stage: impl Into<String>, dissipation: f64, duty_cycled: bool) -> Self {
        Self {
            name: name.into(),
            stage: stage.into(),
            dissipation,
            duty_cycled,
        }
    }

    /// Time-averaged dissipation at the given duty cycle.
    pub fn average_dissipation(&self, duty: f64) -> f64 {
        if self.duty_cycled {
            self.dissipation * duty
        } else {
            self.dissipation
        }
    }
}

/// Heat balance for one refrigerated stage.
#[derive(Debug, Clone, PartialEq)]
pub struct StageLoad {
    pub stage: String,
    pub temperature: f64,
    pub cooling_power: f64,
    pub passive: f64,
    pub active: f64,
    pub total: f64,
    /// `cooling_power / total`; `f64::INFINITY` when nothing loads the stage.
    pub headroom_ratio: f64,
}

/// Per-stage heat report, warmest stage first. Unbounded sinks are omitted.
#[derive(Debug, Clone, PartialEq)]
pub struct StageHeatReport {
    pub rows: Vec<StageLoad>,
}

impl StageHeatReport {
    pub fn row(&self, stage: &str) -> Option<&StageLoad> {
        self.rows.iter().find(|r| r.stage == stage)
    }

    /// Stage-wise sum of two reports over the same fridge.
    pub fn combine(&self, other: &StageHeatReport) -> Result<StageHeatReport> {
        if self.rows.len() != other.rows.len() || self.rows.iter().zip(&other.rows).any(|(a, b)| a.stage != b.stage) {
            return Err(validation("cannot combine reports over different fridges"));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| make_row(a.stage.clone(), a.temperature, a.cooling_power, a.passive + b.passive, a.active + b.active))
            .collect();
        Ok(StageHeatReport { rows })
    }
}

fn make_row(stage: String, temperature: f64, cooling_power: f64, passive: f64, active: f64) -> StageLoad {
    let total = passive + active;
    let headroom_ratio = if total > 0.0 { cooling_power / total } else { f64::INFINITY };
    StageLoad {
        stage,
        temperature,
        cooling_power,
        passive,
        active,
        total,
        headroom_ratio,
    }
}

pub fn check_duty(duty: f64) -> Result<f64> {
    if duty > 0.0 && duty <= 1.0 {
        Ok(duty)
    } else {
        Err(domain(format!("duty cycle must lie in (0, 1], got {duty}")))
    }
}

/// Aggregates passive conduction and active dissipation onto each stage.
pub fn stage_heat_report(
    fridge: &FridgeModel,
    links: &[ThermalLink],
    actives: &[ActiveComponent],
    duty: f64,
    library: &MaterialLibrary,
) -> Result<StageHeatReport> {
    let duty = check_duty(duty)?;
    let n = fridge.stages().len();
    let mut passive = vec![0.0; n];
    let mut active = vec![0.0; n];

    for link in links {
        let load = conduction_load(link, fridge, library)?;
        passive[fridge.index_of(&link.cold_stage)?] += load;
    }
    for a in actives {
        if !(a.dissipation >= 0.0 && a.dissipation.is_finite()) {
            return Err(validation(format!(
                "active component '{}': dissipation must be non-negative",
                a.name
            )));
        }
        let idx = fridge.index_of(&a.stage)?;
        if fridge.stages()[idx].is_unbounded() {
            continue;
        }
        active[idx] += a.average_dissipation(duty);
    }

    let rows = fridge
        .stages()
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_unbounded())
        .map(|(i, s)| make_row(s.name.clone(), s.temperature, s.cooling_power, passive[i], active[i]))
        .collect();
    Ok(StageHeatReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report() {
        let f = FridgeModel::default();
        let r = stage_heat_report(&f, &[], &[], 0.33, &MaterialLibrary::bundled()).unwrap();
        assert_eq!(r.rows.len(), 5);
        for row in &r.rows {
            assert_eq!((row.passive, row.active, row.total), (0.0, 0.0, 0.0));
            assert!(row.headroom_ratio.is_infinite());
        }
    }

    #[test]
    fn stainless_coax_to_4k() {
        let f = FridgeModel::default();
        let coax = ThermalLink::fixed("coax", LinkKind::RfCoax, "RT", "4K", 1e-3);
        let r = stage_heat_report(&f, &[coax], &[], 1.0, &MaterialLibrary::bundled()).unwrap();
        assert_eq!(r.row("4K").unwrap().passive, 1e-3);
        assert_eq!(r.row("50K").unwrap().passive, 0.0);
    }

    #[test]
    fn fiber_and_photodiode() {
        let f = FridgeModel::default();
        let lib = MaterialLibrary::bundled();
        let fiber = ThermalLink::smf28("fiber", "RT", "4K", 1.0);
        let pd = ActiveComponent::new("optical", "4K", 1.4e-6, true);
        let r = stage_heat_report(&f, &[fiber], &[pd], 1.0, &lib).unwrap();
        let row = r.row("4K").unwrap();
        assert!((row.total - 7.0e-6).abs() < 0.7e-6, "total {}", row.total);
        assert!((row.headroom_ratio - 2.1e5).abs() < 0.2e5, "headroom {}", row.headroom_ratio);
    }

    #[test]
    fn duty_only_scales_flagged_components() {
        let f = FridgeModel::default();
        let lib = MaterialLibrary::bundled();
        let a = [
            ActiveComponent::new("sig", "CP", 1e-6, true),
            ActiveComponent::new("bias", "CP", 1e-6, false),
        ];
        let r = stage_heat_report(&f, &[], &a, 0.25, &lib).unwrap();
        assert!((r.row("CP").unwrap().active - 1.25e-6).abs() < 1e-18);
        assert!(stage_heat_report(&f, &[], &a, 0.0, &lib).is_err());
        assert!(stage_heat_report(&f, &[], &a, 1.5, &lib).is_err());
    }

    #[test]
    fn unknown_stage_is_rejected() {
        let f = FridgeModel::default();
        let a = [ActiveComponent::new("x", "nowhere", 1.0, false)];
        assert!(stage_heat_report(&f, &[], &a, 1.0, &MaterialLibrary::bundled()).is_err());
    }
}
