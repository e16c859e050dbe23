//! Shared fixtures for the criterion benchmarks.

use cryolink_core::catalog::{builtin, BUILTIN_NAMES};
use cryolink_core::optimizer::{NoiseTarget, SplitProblem};
use cryolink_core::{Architecture, FridgeModel, PowerLevel};

/// The four builtin architectures on the default fridge.
pub fn builtins(fridge: &FridgeModel) -> Vec<Architecture> {
    BUILTIN_NAMES.iter().map(|n| builtin(n, fridge).expect("builtin")).collect()
}

/// Conventional three-stage attenuator placement at the given grid step.
pub fn conventional_split(grid_step_db: f64) -> SplitProblem {
    let pq = PowerLevel::from_dbm(-70.0).expect("finite dBm");
    let mut p = SplitProblem::new(FridgeModel::default(), &["4K", "CP", "MXC"], pq, NoiseTarget::default(), 0.33);
    p.grid_step_db = grid_step_db;
    p
}
