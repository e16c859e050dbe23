//! Temperature-dependent thermal conductivity tables.

use std::collections::BTreeMap;
use std::io::Read;

use crate::error::{validation, Error, Result};
use crate::thermal::quadrature::{adaptive_simpson, DEFAULT_MAX_DEPTH};
#[cfg(doc)]
use crate::thermal::quadrature::DEFAULT_REL_TOL;

/// Bundled conductivity tables for common cryogenic wiring materials.
/// Per-segment tolerance. Tighter than [`DEFAULT_REL_TOL`] so that integrals
/// over adjacent ranges add up to the whole within 1e-9.
pub const SEGMENT_REL_TOL: f64 = 1e-10;

pub const BUNDLED_TABLE: &str = include_str!("../../data/conductivity.csv");

/// Tabulated k(T) for one material, interpolated linearly in log-log space.
#[derive(Debug, Clone, PartialEq)]
pub struct ConductivityModel {
    material: String,
    /// (kelvin, W/m/K), strictly increasing in temperature.
    points: Vec<(f64, f64)>,
}

impl ConductivityModel {
    pub fn new(material: impl Into<String>, mut points: Vec<(f64, f64)>) -> Result<Self> {
        let material = material.into();
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        if points.len() < 4 {
            return Err(validation(format!(
                "material '{material}': need at least 4 conductivity points, got {}",
                points.len()
            )));
        }
        for w in points.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(validation(format!(
                    "material '{material}': duplicate temperature {} K",
                    w[0].0
                )));
            }
        }
        for &(t, k) in &points {
            if !(t > 0.0 && t.is_finite() && k > 0.0 && k.is_finite()) {
                return Err(validation(format!(
                    "material '{material}': invalid point ({t} K, {k} W/m/K)"
                )));
            }
        }
        let (lo, hi) = (points[0].0, points[points.len() - 1].0);
        if lo > 1.0 || hi < 300.0 {
            return Err(validation(format!(
                "material '{material}': table spans [{lo}, {hi}] K, must cover [1, 300] K"
            )));
        }
        Ok(Self { material, points })
    }

    pub fn material(&self) -> &str {
        &self.material
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn min_temperature(&self) -> f64 {
        self.points[0].0
    }

    pub fn max_temperature(&self) -> f64 {
        self.points[self.points.len() - 1].0
    }

    fn check_range(&self, kelvin: f64) -> Result<()> {
        let (lo, hi) = (self.min_temperature(), self.max_temperature());
        if kelvin >= lo && kelvin <= hi {
            Ok(())
        } else {
            Err(Error::Range {
                what: format!("temperature for '{}'", self.material),
                value: kelvin,
                min: lo,
                max: hi,
            })
        }
    }

    /// Index `i` such that `points[i].0 <= t <= points[i + 1].0`.
    fn segment(&self, kelvin: f64) -> usize {
        let idx = self.points.partition_point(|p| p.0 <= kelvin);
        idx.saturating_sub(1).min(self.points.len() - 2)
    }

    fn eval_in_segment(&self, i: usize, kelvin: f64) -> f64 {
        let (t0, k0) = self.points[i];
        let (t1, k1) = self.points[i + 1];
        if kelvin == t0 {
            return k0;
        }
        if kelvin == t1 {
            return k1;
        }
        let slope = (k1 / k0).ln() / (t1 / t0).ln();
        k0 * (kelvin / t0).powf(slope)
    }

    /// Thermal conductivity at `kelvin`, W/m/K.
    pub fn conductivity_at(&self, kelvin: f64) -> Result<f64> {
        self.check_range(kelvin)?;
        Ok(self.eval_in_segment(self.segment(kelvin), kelvin))
    }

    /// ∫ k(T) dT over `[t_lo, t_hi]`, W/m.
    ///
    /// Panels are split at the table knots so the integrand is smooth on each.
    pub fn integral(&self, t_lo: f64, t_hi: f64) -> Result<f64> {
        if t_lo > t_hi {
            return Ok(-self.integral(t_hi, t_lo)?);
        }
        self.check_range(t_lo)?;
        self.check_range(t_hi)?;
        if t_lo == t_hi {
            return Ok(0.0);
        }
        let mut edges = vec![t_lo];
        edges.extend(
            self.points
                .iter()
                .map(|p| p.0)
                .filter(|&t| t > t_lo && t < t_hi),
        );
        edges.push(t_hi);
        let total = edges
            .windows(2)
            .map(|w| {
                let i = self.segment(0.5 * (w[0] + w[1]));
                adaptive_simpson(
                    |t| self.eval_in_segment(i, t),
                    w[0],
                    w[1],
                    SEGMENT_REL_TOL,
                    DEFAULT_MAX_DEPTH,
                )
            })
            .sum();
        Ok(total)
    }
}

/// Named collection of conductivity models.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MaterialLibrary {
    models: BTreeMap<String, ConductivityModel>,
}

impl MaterialLibrary {
    /// The library shipped with the crate.
    pub fn bundled() -> Self {
        Self::from_csv_str(BUNDLED_TABLE).expect("bundled conductivity table is valid")
    }

    /// Parses `material,T_kelvin,k_W_per_mK` rows; `#` lines are comments.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| validation(format!("material table: {e}")))?
            .clone();
        let expected = ["material", "T_kelvin", "k_W_per_mK"];
        if headers.len() != 3 || headers.iter().zip(expected).any(|(h, e)| h != e) {
            return Err(validation(format!(
                "material table: header must be '{}', got '{}'",
                expected.join(","),
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }

        let mut raw: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
        let mut last: Option<(String, f64)> = None;
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| validation(format!("material table: {e}")))?;
            let line = row + 2;
            let name = rec[0].to_string();
            let t: f64 = rec[1]
                .parse()
                .map_err(|_| validation(format!("material table line {line}: bad T_kelvin '{}'", &rec[1])))?;
            let k: f64 = rec[2]
                .parse()
                .map_err(|_| validation(format!("material table line {line}: bad k_W_per_mK '{}'", &rec[2])))?;
            if let Some((prev_name, prev_t)) = &last {
                let ordered = (prev_name.as_str(), *prev_t) < (name.as_str(), t);
                if !ordered {
                    return Err(validation(format!(
                        "material table line {line}: rows must be sorted by (material, T)"
                    )));
                }
            }
            last = Some((name.clone(), t));
            raw.entry(name).or_default().push((t, k));
        }

        let mut models = BTreeMap::new();
        for (name, points) in raw {
            let model = ConductivityModel::new(name.clone(), points)?;
            models.insert(name, model);
        }
        Ok(Self { models })
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        Self::from_csv_reader(text.as_bytes())
    }

    /// Adds or replaces a model; returns the previous one if any.
    pub fn insert(&mut self, model: ConductivityModel) -> Option<ConductivityModel> {
        self.models.insert(model.material().to_string(), model)
    }

    /// Overlays every model from `other` onto this library.
    pub fn merge(&mut self, other: MaterialLibrary) {
        self.models.extend(other.models);
    }

    pub fn get(&self, material: &str) -> Result<&ConductivityModel> {
        self.models
            .get(material)
            .ok_or_else(|| validation(format!("unknown material '{material}'")))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.models.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ConductivityModel> {
        self.models.values()
    }
}
