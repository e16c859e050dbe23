//! Photonic source noise and its propagation down the attenuator chain.
//!
//! All densities here are one-sided current PSDs in A²/Hz. The photodiode
//! transfer function is taken as flat inside its bandwidth; carriers beyond
//! the bandwidth are rejected rather than rolled off.

use std::f64::consts::PI;

use crate::error::{domain, require_non_negative, require_positive, validation, Error, Result};
use crate::physics::{
    bose_einstein_occupation, db_to_linear, thermal_current_psd, AttenuationFactor, Frequency, PowerLevel, Sidedness,
    BOLTZMANN, ELECTRON_CHARGE,
};
use crate::thermal::FridgeModel;

/// Default line impedance, Ω.
pub const DEFAULT_IMPEDANCE: f64 = 50.0;

/// Transmit and receive ends of an RF-over-fiber link.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonicFrontEnd {
    /// Relative intensity noise, dB/Hz.
    pub laser_rin_db: f64,
    /// Modulator half-wave voltage, V.
    pub v_pi: f64,
    /// Temperature of the modulator drive source, K.
    pub drive_temperature: f64,
    /// Impedance of the modulator drive source, Ω.
    pub drive_impedance: f64,
    /// Photodiode responsivity, A/W.
    pub responsivity: f64,
    /// Photodiode bandwidth, Hz.
    pub bandwidth: f64,
    /// Mean photocurrent Ī, A.
    pub photocurrent: f64,
    /// Qubit drive carrier.
    pub carrier: Frequency,
}

impl Default for PhotonicFrontEnd {
    fn default() -> Self {
        Self {
            laser_rin_db: -150.0,
            v_pi: 2.0,
            drive_temperature: 300.0,
            drive_impedance: DEFAULT_IMPEDANCE,
            responsivity: 1.0,
            bandwidth: 10e9,
            photocurrent: 1.4e-6,
            carrier: Frequency::from_ghz(6.0).expect("6 GHz is positive"),
        }
    }
}

impl PhotonicFrontEnd {
    pub fn with_photocurrent(&self, amps: f64) -> Self {
        Self {
            photocurrent: amps,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_non_negative("mean photocurrent", self.photocurrent)?;
        if !(self.v_pi > 0.0) {
            return Err(domain(format!("v_pi must be positive, got {}", self.v_pi)));
        }
        if !(self.laser_rin_db <= -100.0) {
            return Err(domain(format!(
                "laser RIN must be <= -100 dB/Hz, got {}",
                self.laser_rin_db
            )));
        }
        if !(self.responsivity > 0.0 && self.responsivity <= 1.6) {
            return Err(domain(format!(
                "photodiode responsivity must lie in (0, 1.6] A/W, got {}",
                self.responsivity
            )));
        }
        require_positive("drive temperature", self.drive_temperature)?;
        require_positive("drive impedance", self.drive_impedance)?;
        require_positive("photodiode bandwidth", self.bandwidth)?;
        Ok(())
    }

    fn check_in_band(&self) -> Result<()> {
        if self.carrier.hz() > self.bandwidth {
            return Err(Error::Unsupported(format!(
                "carrier {} Hz exceeds photodiode bandwidth {} Hz",
                self.carrier.hz(),
                self.bandwidth
            )));
        }
        Ok(())
    }

    /// Linear RIN, 1/Hz.
    pub fn rin_linear(&self) -> f64 {
        db_to_linear(self.laser_rin_db)
    }

    /// Drive-voltage noise conversion factor 4k_B·T·Z·(π/V_π)², 1/Hz.
    pub fn drive_noise_factor(&self) -> f64 {
        4.0 * BOLTZMANN * self.drive_temperature * self.drive_impedance * (PI / self.v_pi).powi(2)
    }

    /// Optical power at the photodiode, Ī / responsivity, W.
    pub fn optical_power(&self) -> f64 {
        self.photocurrent / self.responsivity
    }
}

/// Cryogenic transimpedance amplifier after the photodiode.
///
/// NF = 0 dB with a 50 Ω gain and no dissipation is the amplifier-free link.
#[derive(Debug, Clone, PartialEq)]
pub struct CryoAmplifier {
    pub noise_figure_db: f64,
    /// Frequency-flat transimpedance gain A(ω), Ω.
    pub transimpedance: f64,
    /// Bias power, W.
    pub dissipation: f64,
    /// Ambient (reference) temperature T₀, K.
    pub ambient: f64,
}

impl CryoAmplifier {
    pub fn none() -> Self {
        Self {
            noise_figure_db: 0.0,
            transimpedance: DEFAULT_IMPEDANCE,
            dissipation: 0.0,
            ambient: 4.0,
        }
    }

    pub fn with_noise_figure(&self, nf_db: f64) -> Self {
        Self {
            noise_figure_db: nf_db,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.noise_figure_db >= 0.0 && self.noise_figure_db.is_finite()) {
            return Err(domain(format!(
                "noise figure must be >= 0 dB, got {}",
                self.noise_figure_db
            )));
        }
        require_positive("transimpedance gain", self.transimpedance)?;
        require_non_negative("amplifier dissipation", self.dissipation)?;
        require_positive("amplifier ambient temperature", self.ambient)?;
        Ok(())
    }

    pub fn noise_factor(&self) -> f64 {
        db_to_linear(self.noise_figure_db)
    }
}

impl Default for CryoAmplifier {
    fn default() -> Self {
        Self::none()
    }
}

/// A matched attenuator thermalized to a fridge stage.
#[derive(Debug, Clone, PartialEq)]
pub struct StageAttenuator {
    pub stage: String,
    pub attenuation: AttenuationFactor,
    /// Kelvin.
    pub physical_temperature: f64,
    /// Line impedance the attenuator is matched to, Ω.
    pub impedance: f64,
}

impl StageAttenuator {
    pub fn new(stage: impl Into<String>, attenuation: AttenuationFactor, physical_temperature: f64) -> Self {
        Self {
            stage: stage.into(),
            attenuation,
            physical_temperature,
            impedance: DEFAULT_IMPEDANCE,
        }
    }

    /// An attenuator at the temperature of `stage` in `fridge`.
    pub fn at_stage(fridge: &FridgeModel, stage: &str, attenuation: AttenuationFactor) -> Result<Self> {
        let t = fridge.stage(stage)?.temperature;
        Ok(Self::new(stage, attenuation, t))
    }

    /// Pass-through (0 dB) at the given stage.
    pub fn identity_at(fridge: &FridgeModel, stage: &str) -> Result<Self> {
        Self::at_stage(fridge, stage, AttenuationFactor::IDENTITY)
    }
}

/// Current noise at one point of the chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseState {
    pub frequency: Frequency,
    /// One-sided current PSD, A²/Hz.
    pub current_psd: f64,
    /// Ω.
    pub reference_impedance: f64,
}

impl NoiseState {
    pub fn new(frequency: Frequency, current_psd: f64, reference_impedance: f64) -> Result<Self> {
        require_non_negative("current PSD", current_psd)?;
        require_positive("reference impedance", reference_impedance)?;
        Ok(Self {
            frequency,
            current_psd,
            reference_impedance,
        })
    }

    /// Amplitude spectral density, A/√Hz.
    pub fn asd(&self) -> f64 {
        self.current_psd.sqrt()
    }
}

/// Shot noise 2qĪ.
pub fn shot_noise_psd(front: &PhotonicFrontEnd) -> Result<f64> {
    front.validate()?;
    front.check_in_band()?;
    Ok(2.0 * ELECTRON_CHARGE * front.photocurrent)
}

/// Laser intensity noise Ī²·RIN.
pub fn rin_noise_psd(front: &PhotonicFrontEnd) -> Result<f64> {
    front.validate()?;
    Ok(front.photocurrent.powi(2) * front.rin_linear())
}

/// Modulator drive thermal noise 4k_B·T·Z·(π/V_π)²·Ī².
pub fn eom_drive_noise_psd(front: &PhotonicFrontEnd) -> Result<f64> {
    front.validate()?;
    Ok(front.drive_noise_factor() * front.photocurrent.powi(2))
}

/// Input-referred TIA current noise (NF − 1)·4k_B·T₀/Z.
pub fn tia_input_noise_psd(amp: &CryoAmplifier, impedance: f64) -> Result<f64> {
    amp.validate()?;
    let z = require_positive("impedance", impedance)?;
    Ok((amp.noise_factor() - 1.0) * 4.0 * BOLTZMANN * amp.ambient / z)
}

/// Total photodiode current noise: shot + RIN + drive noise.
pub fn photodiode_noise_psd(front: &PhotonicFrontEnd) -> Result<f64> {
    Ok(shot_noise_psd(front)? + rin_noise_psd(front)? + eom_drive_noise_psd(front)?)
}

fn check_attenuator(att: &StageAttenuator) -> Result<()> {
    require_positive("attenuator temperature", att.physical_temperature)?;
    require_positive("attenuator impedance", att.impedance)?;
    if att.attenuation.linear() < 1.0 {
        return Err(domain("attenuation below 1 (gain) is not an attenuator"));
    }
    Ok(())
}

/// Photon occupation after a matched attenuator at temperature T:
/// n_out = n_in/A + (A−1)/A · n_BE(T, ω).
pub fn propagate_occupation(n_in: f64, att: &StageAttenuator, frequency: Frequency) -> Result<f64> {
    require_non_negative("occupation", n_in)?;
    check_attenuator(att)?;
    let a = att.attenuation.linear();
    let n_th = bose_einstein_occupation(att.physical_temperature, frequency)?;
    Ok(n_in / a + (a - 1.0) / a * n_th)
}

/// Current-PSD form of [`propagate_occupation`], one-sided throughout.
pub fn propagate_psd(state: NoiseState, att: &StageAttenuator) -> Result<NoiseState> {
    check_attenuator(att)?;
    if att.impedance != state.reference_impedance {
        return Err(validation(format!(
            "attenuator at '{}' is matched to {} Ω but the line is {} Ω",
            att.stage, att.impedance, state.reference_impedance
        )));
    }
    let a = att.attenuation.linear();
    let thermal = thermal_current_psd(
        att.physical_temperature,
        state.frequency,
        state.reference_impedance,
        Sidedness::OneSided,
    )?;
    NoiseState::new(
        state.frequency,
        state.current_psd / a + (a - 1.0) / a * thermal.value,
        state.reference_impedance,
    )
}

/// Current noise leaving the 4K stage: (S_PD + S_TIA)·|A(ω)/Z|².
pub fn noise_at_amplifier_output(front: &PhotonicFrontEnd, amp: &CryoAmplifier, impedance: f64) -> Result<NoiseState> {
    let s_pd = photodiode_noise_psd(front)?;
    let s_tia = tia_input_noise_psd(amp, impedance)?;
    let gain = amp.transimpedance / impedance;
    NoiseState::new(front.carrier, (s_pd + s_tia) * gain * gain, impedance)
}

/// Qubit-referred noise via the full recursion through every attenuator,
/// warmest first.
pub fn qubit_noise_full(
    front: &PhotonicFrontEnd,
    amp: &CryoAmplifier,
    attenuators: &[StageAttenuator],
    impedance: f64,
) -> Result<NoiseState> {
    let mut state = noise_at_amplifier_output(front, amp, impedance)?;
    for att in attenuators {
        state = propagate_psd(state, att)?;
    }
    Ok(state)
}

/// Signal power delivered to the qubit: (Ī·A(ω))² / (Z·ΠA_i).
pub fn qubit_signal_power(
    front: &PhotonicFrontEnd,
    amp: &CryoAmplifier,
    attenuators: &[StageAttenuator],
    impedance: f64,
) -> Result<PowerLevel> {
    front.validate()?;
    amp.validate()?;
    let z = require_positive("impedance", impedance)?;
    let total: f64 = attenuators.iter().map(|a| a.attenuation.linear()).product();
    PowerLevel::from_watts((front.photocurrent * amp.transimpedance).powi(2) / (z * total))
}

/// Closed-form qubit noise when the 4K output dominates the chain:
/// S ≈ P_Q/(Z·Ī²) · [2qĪ + (RIN + 4k_B·T_dr·Z_dr·(π/V_π)²)·Ī² + (NF−1)·4k_B·T₀/Z].
pub fn qubit_noise_closed_form(
    front: &PhotonicFrontEnd,
    amp: &CryoAmplifier,
    qubit_power: PowerLevel,
    impedance: f64,
) -> Result<f64> {
    let terms = closed_form_terms(front, amp, qubit_power, impedance)?;
    Ok(terms.total())
}

/// The individual contributions of the closed form, already scaled to the qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormTerms {
    pub shot: f64,
    pub rin: f64,
    pub drive: f64,
    pub amplifier: f64,
}

impl ClosedFormTerms {
    pub fn total(&self) -> f64 {
        self.shot + self.rin + self.drive + self.amplifier
    }

    /// Name of the largest contribution.
    pub fn dominant(&self) -> &'static str {
        let terms = [
            ("shot noise", self.shot),
            ("laser RIN", self.rin),
            ("modulator drive noise", self.drive),
            ("amplifier noise", self.amplifier),
        ];
        terms
            .iter()
            .fold(terms[0], |best, &t| if t.1 > best.1 { t } else { best })
            .0
    }
}

pub fn closed_form_terms(
    front: &PhotonicFrontEnd,
    amp: &CryoAmplifier,
    qubit_power: PowerLevel,
    impedance: f64,
) -> Result<ClosedFormTerms> {
    front.validate()?;
    front.check_in_band()?;
    if !(front.photocurrent > 0.0) {
        return Err(domain("closed-form qubit noise needs a positive photocurrent"));
    }
    let z = require_positive("impedance", impedance)?;
    let i = front.photocurrent;
    let scale = qubit_power.watts() / (z * i * i);
    Ok(ClosedFormTerms {
        shot: scale * 2.0 * ELECTRON_CHARGE * i,
        rin: scale * front.rin_linear() * i * i,
        drive: scale * front.drive_noise_factor() * i * i,
        amplifier: scale * tia_input_noise_psd(amp, z)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn front(i: f64) -> PhotonicFrontEnd {
        PhotonicFrontEnd::default().with_photocurrent(i)
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn att(db: f64, t: f64) -> StageAttenuator {
        StageAttenuator::new("s", AttenuationFactor::from_db(db).unwrap(), t)
    }

    #[test]
    fn shot_noise_values() {
        let s = shot_noise_psd(&front(1e-6)).unwrap();
        assert!(rel(s.sqrt(), 0.566e-12) < 2e-3);
        assert_eq!(shot_noise_psd(&front(0.0)).unwrap(), 0.0);
        let s4 = shot_noise_psd(&front(4e-6)).unwrap();
        assert!(rel(s4.sqrt(), 2.0 * s.sqrt()) < 1e-12);
    }

    #[test]
    fn shot_noise_out_of_band() {
        let mut f = front(1e-6);
        f.bandwidth = 1e9;
        assert!(matches!(shot_noise_psd(&f), Err(Error::Unsupported(_))));
    }

    #[test]
    fn rin_values() {
        let s = rin_noise_psd(&front(1e-6)).unwrap();
        assert!(rel(s.sqrt(), 31.62e-15) < 1e-3);
        assert_eq!(rin_noise_psd(&front(0.0)).unwrap(), 0.0);
        let mut quieter = front(1e-6);
        quieter.laser_rin_db = -160.0;
        let q = rin_noise_psd(&quieter).unwrap();
        assert!(rel(s.sqrt() / q.sqrt(), 10f64.sqrt()) < 1e-12);
    }

    #[test]
    fn eom_values() {
        let s = eom_drive_noise_psd(&front(1e-6)).unwrap();
        assert!(rel(s.sqrt(), 1.43e-15) < 5e-3, "{}", s.sqrt());
        assert_eq!(eom_drive_noise_psd(&front(0.0)).unwrap(), 0.0);
        let mut f = front(1e-6);
        f.v_pi = 4.0;
        assert!(rel(eom_drive_noise_psd(&f).unwrap(), s / 4.0) < 1e-12);
    }

    #[test]
    fn tia_noise() {
        let amp = CryoAmplifier::none();
        assert_eq!(tia_input_noise_psd(&amp, 50.0).unwrap(), 0.0);
        let s1 = tia_input_noise_psd(&amp.with_noise_figure(1.0), 50.0).unwrap();
        assert!(rel(s1, (10f64.powf(0.1) - 1.0) * 4.0 * BOLTZMANN * 4.0 / 50.0) < 1e-12);
        assert!(rel(s1, 1.1440e-24) < 1e-3, "{s1}");
        let nf2 = 10.0 * 2f64.log10();
        let s2 = tia_input_noise_psd(&amp.with_noise_figure(nf2), 50.0).unwrap();
        assert!(rel(s2, 4.0 * BOLTZMANN * 4.0 / 50.0) < 1e-12);
        assert!(tia_input_noise_psd(&amp.with_noise_figure(-1.0), 50.0).is_err());
    }

    #[test]
    fn photodiode_sum() {
        let f = front(1e-6);
        let total = photodiode_noise_psd(&f).unwrap();
        let shot = shot_noise_psd(&f).unwrap();
        assert!(rel(total, shot) < 5e-3);
        assert_eq!(photodiode_noise_psd(&front(0.0)).unwrap(), 0.0);
        let t14 = photodiode_noise_psd(&front(1.4e-6)).unwrap();
        // 2qĪ + RIN Ī² + drive Ī² at 1.4 µA
        assert!(rel(t14, 4.5058e-25) < 1e-3, "{t14}");
    }

    #[test]
    fn occupation_propagation() {
        let f = Frequency::from_ghz(6.0).unwrap();
        assert_eq!(propagate_occupation(5.0, &att(0.0, 4.0), f).unwrap(), 5.0);
        let n4 = bose_einstein_occupation(4.0, f).unwrap();
        let out = propagate_occupation(n4, &att(37.0, 4.0), f).unwrap();
        assert!(rel(out, n4) < 1e-12);
        let n300 = bose_einstein_occupation(300.0, f).unwrap();
        let out = propagate_occupation(n300, &att(20.0, 4.0), f).unwrap();
        assert!(rel(out, n300 / 100.0 + 0.99 * n4) < 1e-12);
        assert!((out - 23.67).abs() < 0.01, "{out}");
        assert!(propagate_occupation(-1.0, &att(3.0, 4.0), f).is_err());
    }

    #[test]
    fn psd_propagation_matches_occupation_form() {
        let f = Frequency::from_ghz(6.0).unwrap();
        let a = att(13.0, 0.082);
        let s_in = 3.7e-25;
        let state = NoiseState::new(f, s_in, 50.0).unwrap();
        let out = propagate_psd(state, &a).unwrap();
        let per_photon = 4.0 * f.photon_energy() / 50.0;
        let n_out = propagate_occupation(s_in / per_photon, &a, f).unwrap();
        assert!(rel(out.current_psd, n_out * per_photon) < 1e-9);
        assert_eq!(propagate_psd(state, &att(0.0, 0.082)).unwrap().current_psd, s_in);

        let mut mismatched = a.clone();
        mismatched.impedance = 75.0;
        assert!(matches!(propagate_psd(state, &mismatched), Err(Error::Validation(_))));
    }

    #[test]
    fn full_chain_without_attenuation() {
        let f = front(1.4e-6);
        let amp = CryoAmplifier::none();
        let chain = [att(0.0, 0.082), att(0.0, 0.006)];
        let s = qubit_noise_full(&f, &amp, &chain, 50.0).unwrap();
        let s4 = noise_at_amplifier_output(&f, &amp, 50.0).unwrap();
        assert_eq!(s.current_psd, s4.current_psd);
        assert!((s.asd() - 0.68e-12).abs() < 0.02e-12, "{}", s.asd());
        let zero = qubit_noise_full(&front(0.0), &amp, &chain, 50.0).unwrap();
        assert_eq!(zero.current_psd, 0.0);
    }

    #[test]
    fn full_chain_with_attenuation() {
        let fe = front(1.4e-6);
        let amp = CryoAmplifier::none();
        let chain = [att(20.0, 0.082), att(20.0, 0.006)];
        let s = qubit_noise_full(&fe, &amp, &chain, 50.0).unwrap().current_psd;
        let s4 = noise_at_amplifier_output(&fe, &amp, 50.0).unwrap().current_psd;
        let f = fe.carrier;
        let th = |t: f64| thermal_current_psd(t, f, 50.0, Sidedness::OneSided).unwrap().value;
        let expected = s4 / 1e4 + 0.99 / 100.0 * th(0.082) + 0.99 * th(0.006);
        assert!(rel(s, expected) < 1e-2);
    }

    #[test]
    fn signal_power_at_qubit() {
        let amp = CryoAmplifier::none();
        let p = qubit_signal_power(&front(1.4e-6), &amp, &[], 50.0).unwrap();
        assert!(rel(p.watts(), 9.8e-11) < 1e-12);
        assert!((p.dbm() + 70.09).abs() < 0.01);
        assert_eq!(qubit_signal_power(&front(0.0), &amp, &[], 50.0).unwrap().watts(), 0.0);
        let p100 = qubit_signal_power(&front(1.4e-6), &amp, &[att(10.0, 1.0), att(10.0, 1.0)], 50.0).unwrap();
        assert!(rel(p100.watts(), p.watts() / 100.0) < 1e-12);
    }

    #[test]
    fn closed_form_values() {
        let amp = CryoAmplifier::none();
        let pq = PowerLevel::from_dbm(-70.0).unwrap();
        let s = qubit_noise_closed_form(&front(1.4e-6), &amp, pq, 50.0).unwrap();
        assert!((s.sqrt() - 0.68e-12).abs() < 0.01e-12);
        assert!(qubit_noise_closed_form(&front(0.0), &amp, pq, 50.0).is_err());

        let mut pure = front(1.4e-6);
        pure.laser_rin_db = f64::NEG_INFINITY;
        pure.v_pi = f64::INFINITY;
        let s = qubit_noise_closed_form(&pure, &amp, pq, 50.0).unwrap();
        let floor = pq.watts() / (50.0 * 1.4e-6 * 1.4e-6) * 2.0 * ELECTRON_CHARGE * 1.4e-6;
        assert!(rel(s, floor) < 1e-12);
    }

    #[test]
    fn dominant_term() {
        let amp = CryoAmplifier::none();
        let pq = PowerLevel::from_dbm(-70.0).unwrap();
        let t = closed_form_terms(&front(1e-6), &amp, pq, 50.0).unwrap();
        assert_eq!(t.dominant(), "shot noise");
        let t = closed_form_terms(&front(1.0), &amp, pq, 50.0).unwrap();
        assert_eq!(t.dominant(), "laser RIN");
    }
}
