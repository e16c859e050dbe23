use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{validation, Error, Result};
use crate::thermal::fridge::FridgeModel;
use crate::thermal::materials::MaterialLibrary;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinkKind {
    RfCoax,
    ScCoax,
    Fiber,
    DcWire,
}

impl LinkKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LinkKind::RfCoax => "rf_coax",
            LinkKind::ScCoax => "sc_coax",
            LinkKind::Fiber => "fiber",
            LinkKind::DcWire => "dc_wire",
        }
    }
}

impl fmt::Display for LinkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LinkKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rf_coax" => Ok(LinkKind::RfCoax),
            "sc_coax" => Ok(LinkKind::ScCoax),
            "fiber" => Ok(LinkKind::Fiber),
            "dc_wire" => Ok(LinkKind::DcWire),
            other => Err(validation(format!(
                "unknown link kind '{other}' (expected rf_coax, sc_coax, fiber or dc_wire)"
            ))),
        }
    }
}

/// One conducting layer of a link: a material and its cross-section in m².
#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub material: String,
    pub cross_section: f64,
}

/// A physical connection between a warmer and a colder stage.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalLink {
    pub name: String,
    pub kind: LinkKind,
    pub layers: Vec<Layer>,
    /// Metres.
    pub length: f64,
    pub hot_stage: String,
    pub cold_stage: String,
    /// Literature-measured load in watts; bypasses the conduction integral.
    pub fixed_load_override: Option<f64>,
}

/// SMF-28 cladding outer diameter; the 8.2 µm core is merged into it.
pub const SMF28_CLADDING_DIAMETER: f64 = 125e-6;
/// SMF-28 primary buffer outer diameter.
pub const SMF28_BUFFER_DIAMETER: f64 = 250e-6;

impl ThermalLink {
    /// Single-mode fiber: silica core+cladding to 125 µm, PTFE-like buffer to 250 µm.
    pub fn smf28(name: impl Into<String>, hot: impl Into<String>, cold: impl Into<String>, length: f64) -> Self {
        let r_clad = SMF28_CLADDING_DIAMETER / 2.0;
        let r_buf = SMF28_BUFFER_DIAMETER / 2.0;
        Self {
            name: name.into(),
            kind: LinkKind::Fiber,
            layers: vec![
                Layer {
                    material: "silica".into(),
                    cross_section: PI * r_clad * r_clad,
                },
                Layer {
                    material: "ptfe".into(),
                    cross_section: PI * (r_buf * r_buf - r_clad * r_clad),
                },
            ],
            length,
            hot_stage: hot.into(),
            cold_stage: cold.into(),
            fixed_load_override: None,
        }
    }

    /// A link whose load is a fixed measured value rather than an integral.
    pub fn fixed(
        name: impl Into<String>,
        kind: LinkKind,
        hot: impl Into<String>,
        cold: impl Into<String>,
        load_watts: f64,
    ) -> Self {
        Self {
            name: name.into(),
            kind,
            layers: Vec::new(),
            length: 1.0,
            hot_stage: hot.into(),
            cold_stage: cold.into(),
            fixed_load_override: Some(load_watts),
        }
    }

    /// Structural checks that need no fridge.
    pub fn validate_shape(&self) -> Result<()> {
        if !(self.length > 0.0 && self.length.is_finite()) {
            return Err(validation(format!("link '{}': length must be positive", self.name)));
        }
        for l in &self.layers {
            if !(l.cross_section > 0.0 && l.cross_section.is_finite()) {
                return Err(validation(format!(
                    "link '{}': layer '{}' cross-section must be positive",
                    self.name, l.material
                )));
            }
        }
        match self.fixed_load_override {
            Some(w) if !(w >= 0.0 && w.is_finite()) => Err(validation(format!(
                "link '{}': fixed load must be a non-negative finite power",
                self.name
            ))),
            None if self.layers.is_empty() => Err(validation(format!(
                "link '{}': needs at least one layer or a fixed load",
                self.name
            ))),
            _ => Ok(()),
        }
    }

    /// Returns (T_hot, T_cold) after checking both stages exist and are ordered.
    pub fn endpoints(&self, fridge: &FridgeModel) -> Result<(f64, f64)> {
        let hot = fridge.index_of(&self.hot_stage)?;
        let cold = fridge.index_of(&self.cold_stage)?;
        if hot >= cold {
            return Err(validation(format!(
                "link '{}': hot stage '{}' must be warmer than cold stage '{}'",
                self.name, self.hot_stage, self.cold_stage
            )));
        }
        let stages = fridge.stages();
        Ok((stages[hot].temperature, stages[cold].temperature))
    }

    /// Σ (A/L)·∫k dT between two explicit temperatures, ignoring any override.
    pub fn conduction_between(&self, library: &MaterialLibrary, t_hot: f64, t_cold: f64) -> Result<f64> {
        self.validate_shape()?;
        let mut total = 0.0;
        for layer in &self.layers {
            let model = library.get(&layer.material)?;
            total += layer.cross_section / self.length * model.integral(t_cold, t_hot)?;
        }
        Ok(total)
    }
}

/// Passive conduction load delivered to the link's cold stage, W.
pub fn conduction_load(link: &ThermalLink, fridge: &FridgeModel, library: &MaterialLibrary) -> Result<f64> {
    link.validate_shape()?;
    let (t_hot, t_cold) = link.endpoints(fridge)?;
    if let Some(w) = link.fixed_load_override {
        return Ok(w);
    }
    link.conduction_between(library, t_hot, t_cold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermal::fridge::Stage;

    fn two_stage(t_cold: f64) -> FridgeModel {
        FridgeModel::new(vec![Stage::new("RT", 300.0, f64::INFINITY), Stage::new("cold", t_cold, 1.0)]).unwrap()
    }

    #[test]
    fn smf28_geometry() {
        let l = ThermalLink::smf28("f", "RT", "4K", 1.0);
        let total: f64 = l.layers.iter().map(|l| l.cross_section).sum();
        let expected = PI * (125e-6f64).powi(2);
        assert!(((total - expected) / expected).abs() < 1e-12);
    }

    #[test]
    fn fixed_override_wins() {
        let lib = MaterialLibrary::bundled();
        let f = FridgeModel::default();
        let l = ThermalLink::fixed("coax", LinkKind::RfCoax, "RT", "4K", 1e-3);
        assert_eq!(conduction_load(&l, &f, &lib).unwrap(), 1e-3);
    }

    #[test]
    fn equal_temperatures_give_zero() {
        let lib = MaterialLibrary::bundled();
        let l = ThermalLink::smf28("f", "RT", "4K", 1.0);
        assert_eq!(l.conduction_between(&lib, 4.0, 4.0).unwrap(), 0.0);
    }

    #[test]
    fn reversed_endpoints_rejected() {
        let lib = MaterialLibrary::bundled();
        let f = FridgeModel::default();
        let l = ThermalLink::smf28("f", "MXC", "4K", 1.0);
        assert!(matches!(conduction_load(&l, &f, &lib), Err(Error::Validation(_))));
        let same = ThermalLink::smf28("f", "4K", "4K", 1.0);
        assert!(conduction_load(&same, &f, &lib).is_err());
    }

    #[test]
    fn below_table_is_a_range_error() {
        let lib = MaterialLibrary::bundled();
        let l = ThermalLink::smf28("f", "RT", "cold", 1.0);
        assert!(matches!(
            conduction_load(&l, &two_stage(0.5), &lib),
            Err(Error::Range { .. })
        ));
    }

    #[test]
    fn kind_parsing() {
        for k in [LinkKind::RfCoax, LinkKind::ScCoax, LinkKind::Fiber, LinkKind::DcWire] {
            assert_eq!(k.as_str().parse::<LinkKind>().unwrap(), k);
        }
        assert!("coax".parse::<LinkKind>().is_err());
    }
}
