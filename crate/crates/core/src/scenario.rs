//! Scenario data: probabilities plus every profile indexed by scenario —
//! hydro inflows (seasonal), renewable output, reserve requirements and
//! inelastic demand (hourly). Operation is multi-deterministic: each
//! scenario is dispatched with full foresight of its own data, sharing only
//! the investment decisions.

use std::collections::BTreeMap;

use crate::time::{TimeStructure, HOURS_PER_DAY};

/// Dense hourly profile over (scenario, season, typical day, hour).
#[derive(Clone, Debug, Default)]
pub struct HourlyProfile {
    /// `[scenario][season][typical_day][hour]`, ragged per structure.
    pub values: Vec<Vec<Vec<Vec<f64>>>>,
}

impl HourlyProfile {
    pub fn get(&self, s: usize, t: usize, d: usize, h: usize) -> f64 {
        self.values[s][t][d][h]
    }

    /// Shape check against a time structure and scenario count.
    pub fn covers(&self, time: &TimeStructure, scenarios: usize) -> bool {
        self.values.len() == scenarios
            && self.values.iter().all(|per_season| {
                per_season.len() == time.num_seasons()
                    && per_season.iter().zip(&time.seasons).all(|(days, season)| {
                        days.len() == season.typical_day_weights.len()
                            && days.iter().all(|hours| hours.len() == HOURS_PER_DAY)
                    })
            })
    }

    pub fn min_value(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .flatten()
            .flatten()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            values: self
                .values
                .iter()
                .map(|a| {
                    a.iter()
                        .map(|b| b.iter().map(|c| c.iter().map(|v| v * factor).collect()).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

/// Dense seasonal profile over (scenario, season).
#[derive(Clone, Debug, Default)]
pub struct SeasonalProfile {
    /// `[scenario][season]`
    pub values: Vec<Vec<f64>>,
}

impl SeasonalProfile {
    pub fn get(&self, s: usize, t: usize) -> f64 {
        self.values[s][t]
    }

    pub fn covers(&self, time: &TimeStructure, scenarios: usize) -> bool {
        self.values.len() == scenarios
            && self.values.iter().all(|v| v.len() == time.num_seasons())
    }

    pub fn min_value(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// All scenario-indexed data of an instance. Profile maps are keyed by the
/// owning entity id (hydro, renewable, reserve requirement, bus).
#[derive(Clone, Debug, Default)]
pub struct ScenarioSet {
    /// p_s, summing to one.
    pub probabilities: Vec<f64>,
    /// hm³ per season arriving laterally at each hydro.
    pub inflow: BTreeMap<String, SeasonalProfile>,
    /// MW available per renewable plant (factors already scaled by the
    /// plant capacity at load time).
    pub renewable_mw: BTreeMap<String, HourlyProfile>,
    /// MW required per reserve constraint.
    pub reserve: BTreeMap<String, HourlyProfile>,
    /// MW of inelastic demand per bus.
    pub inelastic_demand: BTreeMap<String, HourlyProfile>,
}

impl ScenarioSet {
    pub fn num_scenarios(&self) -> usize {
        self.probabilities.len()
    }

    pub fn equiprobable(n: usize) -> Self {
        Self {
            probabilities: vec![1.0 / n as f64; n],
            ..Self::default()
        }
    }
}
