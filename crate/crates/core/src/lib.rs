//! Heat-budget and noise models for cryogenic qubit control wiring.
//!
//! The crate is organised bottom-up:
//!
//! - [`physics`]: constants and unit newtypes, plus Bose-Einstein occupation.
//! - [`thermal`]: conduction integrals over tabulated conductivity, and
//!   per-stage heat budgets for a dilution refrigerator.
//! - [`noise`]: photonic source noise and its propagation through cold
//!   attenuators to the qubit.
//! - [`optimizer`]: attenuator placement and the minimum photocurrent for a
//!   qubit noise target.
//! - [`catalog`]: complete control architectures and their line capacity.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod error;
pub mod noise;
pub mod optimizer;
pub mod physics;
pub mod thermal;

pub use error::{Error, Result};
pub use physics::{AttenuationFactor, CurrentPsd, Frequency, PowerLevel, Sidedness};
pub use thermal::{ActiveComponent, FridgeModel, MaterialLibrary, Stage, ThermalLink};
pub use catalog::{Architecture, CapacityReport, Receiver, StageCapacity};
pub use noise::{CryoAmplifier, NoiseState, PhotonicFrontEnd, StageAttenuator};
pub use optimizer::{AttenuationPlan, NoiseTarget, SplitProblem, TargetLevel};
