use crate::error::{validation, Result};

/// One temperature stage of a dilution refrigerator.
#[derive(Debug, Clone, PartialEq)]
pub struct Stage {
    pub name: String,
    /// Kelvin.
    pub temperature: f64,
    /// Watts; `f64::INFINITY` marks an unbounded sink such as room temperature.
    pub cooling_power: f64,
}

impl Stage {
    pub fn new(name: impl Into<String>, temperature: f64, cooling_power: f64) -> Self {
        Self {
            name: name.into(),
            temperature,
            cooling_power,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        self.cooling_power.is_infinite()
    }
}

/// Stages ordered from warmest to coldest.
#[derive(Debug, Clone, PartialEq)]
pub struct FridgeModel {
    stages: Vec<Stage>,
}

pub const RT: &str = "RT";
pub const STAGE_50K: &str = "50K";
pub const STAGE_4K: &str = "4K";
pub const STILL: &str = "Still";
pub const CP: &str = "CP";
pub const MXC: &str = "MXC";

impl FridgeModel {
    pub fn new(stages: Vec<Stage>) -> Result<Self> {
        if stages.len() < 2 {
            return Err(validation("fridge needs at least 2 stages"));
        }
        for (i, s) in stages.iter().enumerate() {
            if s.name.is_empty() {
                return Err(validation(format!("fridge stage {i} has an empty name")));
            }
            if !(s.temperature > 0.0 && s.temperature.is_finite()) {
                return Err(validation(format!(
                    "stage '{}': temperature must be positive, got {}",
                    s.name, s.temperature
                )));
            }
            if !(s.cooling_power > 0.0) {
                return Err(validation(format!(
                    "stage '{}': cooling power must be positive, got {}",
                    s.name, s.cooling_power
                )));
            }
            if stages[..i].iter().any(|p| p.name == s.name) {
                return Err(validation(format!("duplicate stage name '{}'", s.name)));
            }
        }
        for w in stages.windows(2) {
            if w[1].temperature >= w[0].temperature {
                return Err(validation(format!(
                    "stage temperatures must strictly decrease: '{}' ({} K) follows '{}' ({} K)",
                    w[1].name, w[1].temperature, w[0].name, w[0].temperature
                )));
            }
        }
        Ok(Self { stages })
    }

    /// A Bluefors XLD400-class fridge with a room-temperature pseudo-stage.
    pub fn xld400() -> Self {
        Self::new(vec![
            Stage::new(RT, 300.0, f64::INFINITY),
            Stage::new(STAGE_50K, 35.0, 30.0),
            Stage::new(STAGE_4K, 2.85, 1.5),
            Stage::new(STILL, 0.882, 40e-3),
            Stage::new(CP, 0.082, 200e-6),
            Stage::new(MXC, 0.006, 19e-6),
        ])
        .expect("built-in fridge is valid")
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.stages
            .iter()
            .position(|s| s.name == name)
            .ok_or_else(|| validation(format!("unknown stage '{name}'")))
    }

    pub fn stage(&self, name: &str) -> Result<&Stage> {
        Ok(&self.stages[self.index_of(name)?])
    }

    /// Returns a copy with every finite cooling power multiplied by `factor`.
    pub fn scale_cooling(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.stages
                .iter()
                .map(|s| Stage::new(s.name.clone(), s.temperature, s.cooling_power * factor))
                .collect(),
        )
    }
}

impl Default for FridgeModel {
    fn default() -> Self {
        Self::xld400()
    }
}
