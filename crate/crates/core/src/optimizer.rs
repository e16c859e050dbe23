//! Sizing of attenuation and photocurrent against a qubit noise target.

use crate::error::{domain, require_positive, validation, Error, Result};
use crate::noise::{closed_form_terms, ClosedFormTerms, CryoAmplifier, PhotonicFrontEnd, StageAttenuator, DEFAULT_IMPEDANCE};
use crate::physics::{bose_einstein_occupation, AttenuationFactor, Frequency, PowerLevel, REDUCED_PLANCK};
use crate::thermal::{check_duty, FridgeModel};

/// Upper bound on the summed attenuation of a plan, dB.
pub const MAX_TOTAL_DB: f64 = 120.0;
/// Smallest photocurrent searched, A.
pub const MIN_PHOTOCURRENT: f64 = 1e-12;
/// Largest photocurrent searched, A.
pub const MAX_PHOTOCURRENT: f64 = 1.0;
/// Relative bracket width at which the photocurrent bisection stops.
pub const PHOTOCURRENT_REL_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TargetLevel {
    /// Thermal photon occupation at the qubit.
    Occupation(f64),
    /// One-sided current amplitude spectral density at the qubit, A/√Hz.
    CurrentAsd(f64),
}

/// Maximum tolerable noise at the qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseTarget {
    pub level: TargetLevel,
    pub frequency: Frequency,
}

impl NoiseTarget {
    pub fn occupation(n: f64) -> Self {
        Self {
            level: TargetLevel::Occupation(n),
            frequency: Frequency::from_ghz(6.0).expect("positive"),
        }
    }

    pub fn current_asd(amps_per_rthz: f64) -> Self {
        Self {
            level: TargetLevel::CurrentAsd(amps_per_rthz),
            frequency: Frequency::from_ghz(6.0).expect("positive"),
        }
    }

    pub fn at(self, frequency: Frequency) -> Self {
        Self { frequency, ..self }
    }

    fn validate(&self) -> Result<()> {
        match self.level {
            TargetLevel::Occupation(n) => require_positive("target occupation", n).map(|_| ()),
            TargetLevel::CurrentAsd(a) => require_positive("target current ASD", a).map(|_| ()),
        }
    }

    /// One-sided current PSD carried by one photon per mode on a line of `impedance`.
    fn psd_per_photon(&self, impedance: f64) -> f64 {
        4.0 * REDUCED_PLANCK * self.frequency.angular() / impedance
    }

    /// The target as a photon occupation.
    pub fn as_occupation(&self, impedance: f64) -> Result<f64> {
        self.validate()?;
        let z = require_positive("impedance", impedance)?;
        Ok(match self.level {
            TargetLevel::Occupation(n) => n,
            TargetLevel::CurrentAsd(a) => a * a / self.psd_per_photon(z),
        })
    }

    /// The target as a one-sided current PSD, A²/Hz.
    pub fn as_current_psd(&self, impedance: f64) -> Result<f64> {
        self.validate()?;
        let z = require_positive("impedance", impedance)?;
        Ok(match self.level {
            TargetLevel::Occupation(n) => n * self.psd_per_photon(z),
            TargetLevel::CurrentAsd(a) => a * a,
        })
    }
}

impl Default for NoiseTarget {
    fn default() -> Self {
        Self::occupation(1e-3)
    }
}

/// Total attenuation, dB, that brings a thermal source at `source_kelvin`
/// down to the target occupation. Zero when no attenuation is needed.
pub fn required_total_attenuation(source_kelvin: f64, target: &NoiseTarget, impedance: f64) -> Result<f64> {
    let n_source = bose_einstein_occupation(source_kelvin, target.frequency)?;
    let n_target = target.as_occupation(impedance)?;
    if n_target >= n_source {
        return Ok(0.0);
    }
    Ok(10.0 * (n_source / n_target).log10())
}

/// Inputs to the attenuator placement search.
#[derive(Debug, Clone)]
pub struct SplitProblem {
    pub fridge: FridgeModel,
    pub source_temperature: f64,
    /// Stages that may carry an attenuator.
    pub stages: Vec<String>,
    pub grid_step_db: f64,
    /// Signal power required at the qubit.
    pub qubit_power: PowerLevel,
    pub target: NoiseTarget,
    pub duty: f64,
    pub impedance: f64,
}

impl SplitProblem {
    pub fn new(fridge: FridgeModel, stages: &[&str], qubit_power: PowerLevel, target: NoiseTarget, duty: f64) -> Self {
        Self {
            fridge,
            source_temperature: 300.0,
            stages: stages.iter().map(|s| s.to_string()).collect(),
            grid_step_db: 1.0,
            qubit_power,
            target,
            duty,
            impedance: DEFAULT_IMPEDANCE,
        }
    }
}

/// One stage of an attenuation plan.
#[derive(Debug, Clone, PartialEq)]
pub struct PlannedAttenuator {
    pub stage: String,
    pub temperature: f64,
    pub attenuation_db: f64,
    /// Time-averaged signal power absorbed by the attenuator, W.
    pub dissipation: f64,
    /// `dissipation / cooling_power` of the stage.
    pub load_ratio: f64,
}

/// Attenuator allocation found by [`optimize_attenuation_split`], warmest first.
#[derive(Debug, Clone, PartialEq)]
pub struct AttenuationPlan {
    pub stages: Vec<PlannedAttenuator>,
    pub source_temperature: f64,
    pub achieved_occupation: f64,
    pub target_occupation: f64,
    /// Worst per-stage `dissipation / cooling_power`.
    pub objective: f64,
}

impl AttenuationPlan {
    pub fn total_db(&self) -> f64 {
        self.stages.iter().map(|s| s.attenuation_db).sum()
    }

    pub fn attenuators(&self) -> Result<Vec<StageAttenuator>> {
        self.stages
            .iter()
            .map(|s| {
                Ok(StageAttenuator::new(
                    s.stage.clone(),
                    AttenuationFactor::from_db(s.attenuation_db)?,
                    s.temperature,
                ))
            })
            .collect()
    }

    pub fn db_at(&self, stage: &str) -> Option<f64> {
        self.stages.iter().find(|s| s.stage == stage).map(|s| s.attenuation_db)
    }
}

/// Occupation at the qubit after a thermal source passes every attenuator.
pub fn chain_occupation(source_kelvin: f64, attenuators: &[StageAttenuator], frequency: Frequency) -> Result<f64> {
    let mut n = bose_einstein_occupation(source_kelvin, frequency)?;
    for att in attenuators {
        n = crate::noise::propagate_occupation(n, att, frequency)?;
    }
    Ok(n)
}

/// Time-averaged power each attenuator absorbs, warmest first.
///
/// The attenuator at stage i sees the qubit power scaled up by every colder
/// attenuator and absorbs (A_i − 1) times the power it passes on.
pub fn attenuator_dissipation(attenuators: &[StageAttenuator], qubit_power: PowerLevel, duty: f64) -> Vec<f64> {
    let mut out = vec![0.0; attenuators.len()];
    let mut downstream = qubit_power.watts();
    for (i, att) in attenuators.iter().enumerate().rev() {
        let a = att.attenuation.linear();
        out[i] = (a - 1.0) * downstream * duty;
        downstream *= a;
    }
    out
}

struct Search<'a> {
    /// Cold-to-hot order.
    cooling: Vec<f64>,
    thermal_n: Vec<f64>,
    levels: &'a [f64],
    max_level_sum: usize,
    n_source: f64,
    n_target: f64,
    signal: f64,
    best: Option<(f64, Vec<usize>)>,
    current: Vec<usize>,
}

impl Search<'_> {
    /// `idx` walks cold to hot; `downstream` is the product of colder factors.
    fn descend(&mut self, idx: usize, used: usize, downstream: f64, worst: f64) {
        if idx == self.cooling.len() {
            self.leaf(worst);
            return;
        }
        for k in 0..=(self.max_level_sum - used) {
            let a = self.levels[k];
            let ratio = (a - 1.0) * downstream * self.signal / self.cooling[idx];
            let worst = worst.max(ratio);
            if let Some((best, _)) = &self.best {
                // Ratios grow with k, so no larger level can win either.
                if worst > *best {
                    break;
                }
            }
            self.current.push(k);
            self.descend(idx + 1, used + k, downstream * a, worst);
            self.current.pop();
        }
    }

    fn leaf(&mut self, worst: f64) {
        // current[] is cold to hot; evaluate the chain hot to cold.
        let mut n = self.n_source;
        for (i, &k) in self.current.iter().enumerate().rev() {
            let a = self.levels[k];
            n = n / a + (a - 1.0) / a * self.thermal_n[i];
        }
        if n > self.n_target {
            return;
        }
        let better = match &self.best {
            None => true,
            Some((obj, alloc)) => worst < *obj || (worst == *obj && self.current < *alloc),
        };
        if better {
            self.best = Some((worst, self.current.clone()));
        }
    }
}

/// Exhaustive grid search for the attenuator allocation that meets the
/// occupation target while minimizing the worst stage's ratio of attenuator
/// dissipation to cooling power.
///
/// Ties go to the allocation with less attenuation at the coldest stage, then
/// the next coldest, and so on, so the result does not depend on search order.
pub fn optimize_attenuation_split(problem: &SplitProblem) -> Result<AttenuationPlan> {
    let step = problem.grid_step_db;
    if !(0.5..=5.0).contains(&step) {
        return Err(domain(format!("grid step must lie in [0.5, 5] dB, got {step}")));
    }
    if problem.stages.is_empty() {
        return Err(validation("attenuation split needs at least one stage"));
    }
    let duty = check_duty(problem.duty)?;
    require_positive("source temperature", problem.source_temperature)?;
    let z = require_positive("impedance", problem.impedance)?;
    let freq = problem.target.frequency;
    let n_target = problem.target.as_occupation(z)?;
    let n_source = bose_einstein_occupation(problem.source_temperature, freq)?;

    let fridge = &problem.fridge;
    let mut indices = Vec::with_capacity(problem.stages.len());
    for name in &problem.stages {
        let idx = fridge.index_of(name)?;
        if indices.contains(&idx) {
            return Err(validation(format!("stage '{name}' listed twice")));
        }
        indices.push(idx);
    }
    indices.sort_unstable();
    let warm_to_cold: Vec<_> = indices.iter().map(|&i| &fridge.stages()[i]).collect();

    let max_levels = (MAX_TOTAL_DB / step + 1e-9).floor() as usize;
    let levels: Vec<f64> = (0..=max_levels).map(|k| 10f64.powf(k as f64 * step / 10.0)).collect();

    let mut search = Search {
        cooling: warm_to_cold.iter().rev().map(|s| s.cooling_power).collect(),
        thermal_n: warm_to_cold
            .iter()
            .rev()
            .map(|s| bose_einstein_occupation(s.temperature, freq))
            .collect::<Result<_>>()?,
        levels: &levels,
        max_level_sum: max_levels,
        n_source,
        n_target,
        signal: problem.qubit_power.watts() * duty,
        best: None,
        current: Vec::with_capacity(warm_to_cold.len()),
    };
    search.descend(0, 0, 1.0, 0.0);

    let Some((_, alloc_cold_first)) = search.best else {
        let coldest = warm_to_cold[warm_to_cold.len() - 1];
        let floor = bose_einstein_occupation(coldest.temperature, freq)?;
        return Err(Error::Infeasible {
            limiting: coldest.name.clone(),
            detail: format!(
                "occupation target {n_target:.3e} unreachable within {MAX_TOTAL_DB} dB; \
                 the coldest attenuator stage '{}' at {} K has a thermal floor of {floor:.3e}",
                coldest.name, coldest.temperature
            ),
        });
    };

    let attenuators: Vec<StageAttenuator> = warm_to_cold
        .iter()
        .zip(alloc_cold_first.iter().rev())
        .map(|(s, &k)| {
            Ok(StageAttenuator::new(
                s.name.clone(),
                AttenuationFactor::from_db(k as f64 * step)?,
                s.temperature,
            ))
        })
        .collect::<Result<_>>()?;
    let dissipation = attenuator_dissipation(&attenuators, problem.qubit_power, duty);
    let achieved = chain_occupation(problem.source_temperature, &attenuators, freq)?;

    let stages: Vec<PlannedAttenuator> = warm_to_cold
        .iter()
        .zip(alloc_cold_first.iter().rev())
        .zip(&dissipation)
        .map(|((s, &k), &d)| PlannedAttenuator {
            stage: s.name.clone(),
            temperature: s.temperature,
            attenuation_db: k as f64 * step,
            dissipation: d,
            load_ratio: d / s.cooling_power,
        })
        .collect();
    let objective = stages.iter().map(|s| s.load_ratio).fold(0.0, f64::max);

    Ok(AttenuationPlan {
        stages,
        source_temperature: problem.source_temperature,
        achieved_occupation: achieved,
        target_occupation: n_target,
        objective,
    })
}

/// The smallest photocurrent meeting the target, with the noise breakdown there.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotocurrentSolution {
    pub photocurrent: f64,
    /// Qubit current ASD at the returned photocurrent, A/√Hz.
    pub noise_asd: f64,
    pub target_asd: f64,
    pub terms: ClosedFormTerms,
}

/// Bisects (in log space) for the smallest mean photocurrent whose
/// closed-form qubit noise is within the target.
pub fn min_photocurrent(
    front_template: &PhotonicFrontEnd,
    amp: &CryoAmplifier,
    target: &NoiseTarget,
    qubit_power: PowerLevel,
    impedance: f64,
) -> Result<PhotocurrentSolution> {
    let limit = target.as_current_psd(impedance)?;
    let eval = |i: f64| closed_form_terms(&front_template.with_photocurrent(i), amp, qubit_power, impedance);

    let at_max = eval(MAX_PHOTOCURRENT)?;
    if at_max.total() > limit {
        return Err(Error::Infeasible {
            limiting: at_max.dominant().to_string(),
            detail: format!(
                "qubit noise {:.3e} A/rtHz at {MAX_PHOTOCURRENT} A still exceeds the target {:.3e} A/rtHz",
                at_max.total().sqrt(),
                limit.sqrt()
            ),
        });
    }

    let (mut lo, mut hi) = (MIN_PHOTOCURRENT, MAX_PHOTOCURRENT);
    let solution = |i: f64, terms: ClosedFormTerms| PhotocurrentSolution {
        photocurrent: i,
        noise_asd: terms.total().sqrt(),
        target_asd: limit.sqrt(),
        terms,
    };
    let at_min = eval(lo)?;
    if at_min.total() <= limit {
        return Ok(solution(lo, at_min));
    }
    while hi / lo - 1.0 > PHOTOCURRENT_REL_TOL {
        let mid = (lo * hi).sqrt();
        if eval(mid)?.total() <= limit {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(solution(hi, eval(hi)?))
}

/// One point of a noise-versus-photocurrent curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub photocurrent: f64,
    pub noise_figure_db: f64,
    /// Qubit current ASD, A/√Hz.
    pub noise_asd: f64,
}

/// Log-spaced photocurrent grid from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    require_positive("sweep start", lo)?;
    require_positive("sweep end", hi)?;
    if points < 2 || hi <= lo {
        return Err(domain("sweep needs at least 2 points over an increasing positive range"));
    }
    let ratio = (hi / lo).ln();
    let last = (points - 1) as f64;
    Ok((0..points)
        .map(|k| match k {
            0 => lo,
            k if k == points - 1 => hi,
            k => lo * (ratio * k as f64 / last).exp(),
        })
        .collect())
}

/// Closed-form qubit noise over a log-spaced photocurrent grid for each
/// amplifier noise figure. Rows are grouped by noise figure in the order given.
pub fn noise_vs_photocurrent_sweep(
    front_template: &PhotonicFrontEnd,
    amp_template: &CryoAmplifier,
    noise_figures_db: &[f64],
    qubit_power: PowerLevel,
    range: (f64, f64),
    points: usize,
    impedance: f64,
) -> Result<Vec<SweepPoint>> {
    let grid = log_grid(range.0, range.1, points)?;
    let mut rows = Vec::with_capacity(grid.len() * noise_figures_db.len());
    for &nf in noise_figures_db {
        let amp = amp_template.with_noise_figure(nf);
        for &i in &grid {
            let s = closed_form_terms(&front_template.with_photocurrent(i), &amp, qubit_power, impedance)?;
            rows.push(SweepPoint {
                photocurrent: i,
                noise_figure_db: nf,
                noise_asd: s.total().sqrt(),
            });
        }
    }
    Ok(rows)
}
