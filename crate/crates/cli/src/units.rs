//! Quantity strings with explicit units, such as `"1.5 W"` or `"62.5 um"`.
//!
//! SI prefixes are applied by shifting the decimal exponent of the written
//! number before parsing it, so `"5.6 uW"` yields exactly the float `5.6e-6`.

use std::fmt;

use cryolink_core::PowerLevel;

/// Physical dimension of a configured quantity, named by its base unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    Kelvin,
    Watt,
    Metre,
    SquareMetre,
    Ohm,
    Volt,
    Hertz,
    AmpPerWatt,
    Amp,
    AmpPerRootHertz,
    Decibel,
    DecibelPerHertz,
}

impl Unit {
    pub fn symbol(self) -> &'static str {
        match self {
            Unit::Kelvin => "K",
            Unit::Watt => "W",
            Unit::Metre => "m",
            Unit::SquareMetre => "m^2",
            Unit::Ohm => "ohm",
            Unit::Volt => "V",
            Unit::Hertz => "Hz",
            Unit::AmpPerWatt => "A/W",
            Unit::Amp => "A",
            Unit::AmpPerRootHertz => "A/rtHz",
            Unit::Decibel => "dB",
            Unit::DecibelPerHertz => "dB/Hz",
        }
    }

    /// Power the prefix is raised to (2 for areas).
    fn prefix_power(self) -> Option<i32> {
        match self {
            Unit::Decibel | Unit::DecibelPerHertz => None,
            Unit::SquareMetre => Some(2),
            _ => Some(1),
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

const PREFIXES: [(&str, i32); 11] = [
    ("f", -15),
    ("p", -12),
    ("n", -9),
    ("u", -6),
    ("\u{b5}", -6),
    ("m", -3),
    ("c", -2),
    ("k", 3),
    ("M", 6),
    ("G", 9),
    ("T", 12),
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct UnitError(pub String);

fn split(text: &str) -> Result<(&str, &str), UnitError> {
    let text = text.trim();
    let bytes = text.as_bytes();
    // The number ends at the first byte that cannot continue a float literal;
    // an 'e' only counts as an exponent when a digit or sign follows.
    let end = (0..bytes.len())
        .find(|&i| match bytes[i] {
            b'0'..=b'9' | b'.' | b'+' | b'-' => false,
            b'e' | b'E' => !matches!(bytes.get(i + 1), Some(b'0'..=b'9' | b'+' | b'-')),
            _ => true,
        })
        .unwrap_or(bytes.len());
    let (num, unit) = (text[..end].trim(), text[end..].trim());
    if num.is_empty() {
        return Err(UnitError(format!("'{text}' has no number")));
    }
    if unit.is_empty() {
        return Err(UnitError(format!("'{text}' has no unit")));
    }
    Ok((num, unit))
}

/// Re-parses `num` with its decimal exponent shifted by `shift`.
fn shifted(num: &str, shift: i32) -> Result<f64, UnitError> {
    let bad = || UnitError(format!("'{num}' is not a number"));
    let (mantissa, exp) = match num.find(['e', 'E']) {
        Some(i) => (&num[..i], num[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (num, 0),
    };
    if mantissa.is_empty() || !mantissa.chars().all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+')) {
        return Err(bad());
    }
    let v: f64 = format!("{mantissa}e{}", exp + shift).parse().map_err(|_| bad())?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(UnitError(format!("'{num}' overflows")))
    }
}

/// Parses `text` as a quantity of dimension `unit`, returning base-unit value.
pub fn parse(text: &str, unit: Unit) -> Result<f64, UnitError> {
    let (num, suffix) = split(text)?;
    let base = unit.symbol();
    let exponent = if suffix == base {
        0
    } else {
        let power = unit.prefix_power();
        let prefix = suffix.strip_suffix(base);
        match (prefix, power) {
            (Some(p), Some(power)) => PREFIXES
                .iter()
                .find(|(s, _)| *s == p)
                .map(|(_, e)| e * power)
                .ok_or_else(|| UnitError(format!("'{text}': unknown prefix '{p}' for {base}")))?,
            _ => return Err(UnitError(format!("'{text}': expected a quantity in {base}"))),
        }
    };
    shifted(num, exponent)
}

/// Power level written in W or dBm.
pub fn parse_power(text: &str) -> Result<PowerLevel, UnitError> {
    let (num, suffix) = split(text)?;
    let level = if suffix == "dBm" {
        PowerLevel::from_dbm(shifted(num, 0)?)
    } else {
        PowerLevel::from_watts(parse(text, Unit::Watt)?)
    };
    level.map_err(|e| UnitError(format!("'{text}': {e}")))
}

/// Formats a base-unit value so that [`parse`] returns the same float.
pub fn format(value: f64, unit: Unit) -> String {
    format!("{} {}", shortest(value), unit.symbol())
}

/// Shortest round-tripping decimal, scientific outside [1e-3, 1e6).
pub fn shortest(value: f64) -> String {
    let a = value.abs();
    if a == 0.0 || (1e-3..1e6).contains(&a) {
        format!("{value}")
    } else {
        format!("{value:e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefixes_shift_the_exponent_exactly() {
        assert_eq!(parse("5.6 uW", Unit::Watt).unwrap(), 5.6e-6);
        assert_eq!(parse("5.6uW", Unit::Watt).unwrap(), 5.6e-6);
        assert_eq!(parse("1.5 W", Unit::Watt).unwrap(), 1.5);
        assert_eq!(parse("0.06 uW", Unit::Watt).unwrap(), 0.06e-6);
        assert_eq!(parse("6 GHz", Unit::Hertz).unwrap(), 6e9);
        assert_eq!(parse("82 mK", Unit::Kelvin).unwrap(), 82e-3);
        assert_eq!(parse("1e3 mm", Unit::Metre).unwrap(), 1.0);
        assert_eq!(parse("2 mm^2", Unit::SquareMetre).unwrap(), 2e-6);
        assert_eq!(parse("0.7 pA/rtHz", Unit::AmpPerRootHertz).unwrap(), 0.7e-12);
        assert_eq!(parse("-150 dB/Hz", Unit::DecibelPerHertz).unwrap(), -150.0);
        assert_eq!(parse("2 kohm", Unit::Ohm).unwrap(), 2e3);
    }

    #[test]
    fn m_is_metre_or_milli_by_position() {
        assert_eq!(parse("3 m", Unit::Metre).unwrap(), 3.0);
        assert_eq!(parse("3 mW", Unit::Watt).unwrap(), 3e-3);
        assert!(parse("3 m", Unit::Watt).is_err());
    }

    #[test]
    fn rejects_unitless_and_wrong_units() {
        assert!(parse("1.5", Unit::Watt).is_err());
        assert!(parse("1.5 K", Unit::Watt).is_err());
        assert!(parse("W", Unit::Watt).is_err());
        assert!(parse("20 mdB", Unit::Decibel).is_err());
        assert!(parse("1 xW", Unit::Watt).is_err());
        assert!(parse("1e999 W", Unit::Watt).is_err());
    }

    #[test]
    fn dbm_power() {
        let p = parse_power("-70 dBm").unwrap();
        assert_eq!(p, PowerLevel::from_dbm(-70.0).unwrap());
        assert_eq!(parse_power("1e-10 W").unwrap().watts(), 1e-10);
        assert!(parse_power("-1 W").is_err());
    }

    #[test]
    fn format_round_trips() {
        for v in [5.6e-6, 300.0, 1.5, 0.006, 1e-10, 1.2271846303085129e-8, 0.0, 6e9, 19e-6] {
            assert_eq!(parse(&format(v, Unit::Watt), Unit::Watt).unwrap(), v);
        }
        assert_eq!(format(300.0, Unit::Kelvin), "300 K");
        assert_eq!(format(5.6e-6, Unit::Watt), "5.6e-6 W");
    }
}
