//! Physical constants with unit newtypes for thermal-noise work.
//!
//! Frequencies are stored as angular frequency; every public constructor and
//! accessor that a user sees works in Hz. Noise spectral densities that leave
//! this module are always tagged with their [`Sidedness`].

use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use crate::error::{domain, require_non_negative, require_positive, Result};

/// Reduced Planck constant, J·s (CODATA 2018, exact by SI definition of h).
pub const REDUCED_PLANCK: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K (exact).
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Elementary charge, C (exact).
pub const ELECTRON_CHARGE: f64 = 1.602_176_634e-19;

/// The fixed set of constants used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub reduced_planck: f64,
    pub boltzmann: f64,
    pub electron_charge: f64,
}

impl PhysicalConstants {
    pub const CODATA: PhysicalConstants = PhysicalConstants {
        reduced_planck: REDUCED_PLANCK,
        boltzmann: BOLTZMANN,
        electron_charge: ELECTRON_CHARGE,
    };
}

/// A strictly positive frequency.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Frequency {
    angular: f64,
}

impl Frequency {
    pub fn from_hz(hz: f64) -> Result<Self> {
        let hz = require_positive("frequency", hz)?;
        Ok(Self { angular: 2.0 * PI * hz })
    }

    pub fn from_ghz(ghz: f64) -> Result<Self> {
        Self::from_hz(ghz * 1e9)
    }

    pub fn from_angular(rad_per_s: f64) -> Result<Self> {
        let angular = require_positive("angular frequency", rad_per_s)?;
        Ok(Self { angular })
    }

    pub fn hz(self) -> f64 {
        self.angular / (2.0 * PI)
    }

    pub fn angular(self) -> f64 {
        self.angular
    }

    /// Photon energy ħω in joules.
    pub fn photon_energy(self) -> f64 {
        REDUCED_PLANCK * self.angular
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} Hz", self.hz())
    }
}

/// A non-negative signal power.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PowerLevel {
    watts: f64,
}

impl PowerLevel {
    pub const ZERO: PowerLevel = PowerLevel { watts: 0.0 };

    pub fn from_watts(watts: f64) -> Result<Self> {
        let watts = require_non_negative("power", watts)?;
        Ok(Self { watts })
    }

    pub fn from_dbm(dbm: f64) -> Result<Self> {
        if !dbm.is_finite() {
            return Err(domain(format!("power level must be finite, got {dbm} dBm")));
        }
        Ok(Self {
            watts: 1e-3 * 10f64.powf(dbm / 10.0),
        })
    }

    pub fn watts(self) -> f64 {
        self.watts
    }

    /// Power in dBm; `-inf` for zero power.
    pub fn dbm(self) -> f64 {
        10.0 * (self.watts / 1e-3).log10()
    }
}

/// Linear power attenuation, always `>= 1` (no gain).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct AttenuationFactor {
    linear: f64,
}

impl AttenuationFactor {
    pub const IDENTITY: AttenuationFactor = AttenuationFactor { linear: 1.0 };

    pub fn from_linear(linear: f64) -> Result<Self> {
        if linear >= 1.0 && linear.is_finite() {
            Ok(Self { linear })
        } else {
            Err(domain(format!(
                "attenuation must be a finite linear factor >= 1, got {linear}"
            )))
        }
    }

    pub fn from_db(db: f64) -> Result<Self> {
        if !(db >= 0.0 && db.is_finite()) {
            return Err(domain(format!("attenuation must be >= 0 dB, got {db} dB")));
        }
        Self::from_linear(10f64.powf(db / 10.0))
    }

    pub fn linear(self) -> f64 {
        self.linear
    }

    pub fn db(self) -> f64 {
        10.0 * self.linear.log10()
    }
}

impl Mul for AttenuationFactor {
    type Output = AttenuationFactor;

    fn mul(self, rhs: Self) -> Self::Output {
        AttenuationFactor {
            linear: self.linear * rhs.linear,
        }
    }
}

impl Default for AttenuationFactor {
    fn default() -> Self {
        Self::IDENTITY
    }
}

/// One- or two-sided spectral density convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sidedness {
    OneSided,
    TwoSided,
}

/// A current-noise spectral density in A²/Hz, tagged with its convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentPsd {
    pub value: f64,
    pub sidedness: Sidedness,
}

impl CurrentPsd {
    pub fn one_sided(value: f64) -> Self {
        Self {
            value,
            sidedness: Sidedness::OneSided,
        }
    }

    pub fn two_sided(value: f64) -> Self {
        Self {
            value,
            sidedness: Sidedness::TwoSided,
        }
    }

    /// Re-expresses the density in the requested convention.
    pub fn to(self, sidedness: Sidedness) -> Self {
        let value = match (self.sidedness, sidedness) {
            (Sidedness::OneSided, Sidedness::TwoSided) => self.value / 2.0,
            (Sidedness::TwoSided, Sidedness::OneSided) => self.value * 2.0,
            _ => self.value,
        };
        Self { value, sidedness }
    }

    /// Amplitude spectral density, A/√Hz.
    pub fn asd(self) -> f64 {
        self.value.sqrt()
    }
}

fn check_temperature(kelvin: f64) -> Result<f64> {
    require_positive("temperature", kelvin)
}

/// Mean thermal photon number per mode, `1 / (exp(ħω / k_B T) - 1)`.
pub fn bose_einstein_occupation(kelvin: f64, frequency: Frequency) -> Result<f64> {
    let kelvin = check_temperature(kelvin)?;
    let x = frequency.photon_energy() / (BOLTZMANN * kelvin);
    Ok(1.0 / x.exp_m1())
}

/// Two-sided thermal voltage PSD of a resistance `ohms`, V²/Hz.
pub fn thermal_voltage_psd_two_sided(kelvin: f64, frequency: Frequency, ohms: f64) -> Result<f64> {
    let ohms = require_positive("resistance", ohms)?;
    let n = bose_einstein_occupation(kelvin, frequency)?;
    Ok(2.0 * ohms * frequency.photon_energy() * n)
}

/// Thermal current PSD, `S_V / R²`, in the requested convention.
pub fn thermal_current_psd(
    kelvin: f64,
    frequency: Frequency,
    ohms: f64,
    sidedness: Sidedness,
) -> Result<CurrentPsd> {
    let sv = thermal_voltage_psd_two_sided(kelvin, frequency, ohms)?;
    Ok(CurrentPsd::two_sided(sv / (ohms * ohms)).to(sidedness))
}

/// Two-sided current PSD carried by a photon occupation `n` on a line of
/// impedance `ohms`: `2ħω n / R`.
pub fn occupation_to_current_psd(occupation: f64, frequency: Frequency, ohms: f64) -> Result<CurrentPsd> {
    let n = require_non_negative("occupation", occupation)?;
    let ohms = require_positive("resistance", ohms)?;
    Ok(CurrentPsd::two_sided(2.0 * frequency.photon_energy() * n / ohms))
}

/// Inverse of [`occupation_to_current_psd`]; accepts either convention.
pub fn current_psd_to_occupation(psd: CurrentPsd, frequency: Frequency, ohms: f64) -> Result<f64> {
    let ohms = require_positive("resistance", ohms)?;
    let two_sided = psd.to(Sidedness::TwoSided).value;
    require_non_negative("current PSD", two_sided)?;
    Ok(two_sided * ohms / (2.0 * frequency.photon_energy()))
}

/// Transition frequencies of a transmon in the weakly anharmonic limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmonLevels {
    /// ω01, rad/s.
    pub omega01: f64,
    /// ω12, rad/s.
    pub omega12: f64,
    /// η = ω12 − ω01 = −q²/(2ħC), rad/s. Always negative.
    pub anharmonicity: f64,
}

/// ω01 = ω0 − E_C/ħ and ω12 = ω0 − 2E_C/ħ with charging energy E_C = q²/2C.
pub fn transmon_frequencies(omega0: Frequency, capacitance: f64) -> Result<TransmonLevels> {
    let c = require_positive("qubit capacitance", capacitance)?;
    let shift = ELECTRON_CHARGE * ELECTRON_CHARGE / (2.0 * c) / REDUCED_PLANCK;
    let omega01 = omega0.angular() - shift;
    let omega12 = omega0.angular() - 2.0 * shift;
    Ok(TransmonLevels {
        omega01,
        omega12,
        anharmonicity: omega12 - omega01,
    })
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ghz6() -> Frequency {
        Frequency::from_ghz(6.0).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn occupation_at_room_temperature() {
        let n = bose_einstein_occupation(300.0, ghz6()).unwrap();
        assert!(rel(n, 1041.33) < 1e-4, "n = {n}");
        assert!((10.0 * (n / 1e-3).log10() - 60.2).abs() < 0.3);
    }

    #[test]
    fn occupation_is_one_at_ln2() {
        let f = ghz6();
        let t = f.photon_energy() / (BOLTZMANN * std::f64::consts::LN_2);
        let n = bose_einstein_occupation(t, f).unwrap();
        assert!((n - 1.0).abs() < 1e-12);
    }

    #[test]
    fn occupation_at_4k() {
        let n = bose_einstein_occupation(4.0, ghz6()).unwrap();
        // 1 / expm1(0.0719912...) evaluated with mpmath
        assert!(rel(n, 13.397_077_96) < 1e-8, "n = {n}");
    }

    #[test]
    fn occupation_rejects_bad_inputs() {
        assert!(bose_einstein_occupation(0.0, ghz6()).is_err());
        assert!(bose_einstein_occupation(-1.0, ghz6()).is_err());
        assert!(Frequency::from_hz(0.0).is_err());
        assert!(Frequency::from_hz(-5.0).is_err());
    }

    #[test]
    fn voltage_psd_classical_and_quantum() {
        let f = ghz6();
        let s = thermal_voltage_psd_two_sided(300.0, f, 50.0).unwrap();
        let classical = 2.0 * BOLTZMANN * 300.0 * 50.0;
        assert!(rel(s, classical) < 5e-4);
        let s2 = thermal_voltage_psd_two_sided(300.0, f, 100.0).unwrap();
        assert_eq!(s2, 2.0 * s);

        let cold = thermal_voltage_psd_two_sided(0.010, f, 50.0).unwrap();
        let n = bose_einstein_occupation(0.010, f).unwrap();
        assert!(n < 1e-12);
        assert!(rel(cold, 2.0 * 50.0 * f.photon_energy() * n) < 1e-12);
    }

    #[test]
    fn current_psd_sidedness() {
        let f = ghz6();
        let one = thermal_current_psd(4.0, f, 50.0, Sidedness::OneSided).unwrap();
        let two = thermal_current_psd(4.0, f, 50.0, Sidedness::TwoSided).unwrap();
        assert_eq!(one.value, 2.0 * two.value);
        let n4 = bose_einstein_occupation(4.0, f).unwrap();
        assert!(rel(two.value, 2.0 * f.photon_energy() * n4 / 50.0) < 1e-12);

        let warm = thermal_current_psd(300.0, f, 50.0, Sidedness::TwoSided).unwrap();
        assert!(rel(warm.value, 2.0 * BOLTZMANN * 300.0 / 50.0) < 1e-3);
        assert!(rel(warm.value, 1.657e-22) < 1e-3);
    }

    #[test]
    fn occupation_psd_bridge() {
        let f = ghz6();
        assert_eq!(occupation_to_current_psd(0.0, f, 50.0).unwrap().value, 0.0);
        assert!(occupation_to_current_psd(-1.0, f, 50.0).is_err());
        let n = bose_einstein_occupation(4.0, f).unwrap();
        let s = occupation_to_current_psd(n, f, 50.0).unwrap();
        let th = thermal_current_psd(4.0, f, 50.0, Sidedness::TwoSided).unwrap();
        assert!(rel(s.value, th.value) < 1e-15);
        let back = current_psd_to_occupation(s.to(Sidedness::OneSided), f, 50.0).unwrap();
        assert!(rel(back, n) < 1e-12);
    }

    #[test]
    fn transmon_levels() {
        let f = ghz6();
        let lv = transmon_frequencies(f, 77.4e-15).unwrap();
        let eta_mhz = lv.anharmonicity / (2.0 * PI) / 1e6;
        assert!((eta_mhz + 250.0).abs() < 1.0, "eta = {eta_mhz} MHz");
        assert_eq!(lv.omega12 - lv.omega01, lv.anharmonicity);
        assert!(lv.anharmonicity < 0.0);

        let big = transmon_frequencies(f, 1.0).unwrap();
        assert!(big.anharmonicity.abs() < 1e-12 * f.angular());
        assert!(rel(big.omega01, f.angular()) < 1e-13);

        assert!(transmon_frequencies(f, 0.0).is_err());
    }

    #[test]
    fn power_and_attenuation_conversions() {
        let p = PowerLevel::from_dbm(-70.0).unwrap();
        assert!(rel(p.watts(), 1e-10) < 1e-12);
        assert!((p.dbm() + 70.0).abs() < 1e-12);
        assert!(PowerLevel::from_watts(-1.0).is_err());

        let a = AttenuationFactor::from_db(20.0).unwrap();
        assert!(rel(a.linear(), 100.0) < 1e-12);
        assert_eq!(AttenuationFactor::IDENTITY * a, a);
        assert!(AttenuationFactor::from_linear(0.5).is_err());
        assert!(AttenuationFactor::from_db(-3.0).is_err());
    }
}
