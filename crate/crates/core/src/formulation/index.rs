//! Index spaces of the yearly model: the joint (scenario, season, typical
//! day, hour) slot enumeration and the dense map from semantic coordinates
//! to model variables and rows.

use gtep_milp::{RowId, VarId};
use serde_json::json;

use crate::scenario::ScenarioSet;
use crate::time::{TimeStructure, HOURS_PER_DAY};

/// One hourly cell of the operation, with its flat index.
#[derive(Copy, Clone, Debug)]
pub struct Slot {
    pub s: usize,
    pub t: usize,
    pub d: usize,
    /// 0-based hour in 0..24
    pub h: usize,
    pub idx: usize,
}

/// Joint index over (scenario, season, typical day, hour), scenario-major.
#[derive(Clone, Debug)]
pub struct SlotIndex {
    pub scenarios: usize,
    pub seasons: usize,
    pub days_per_season: Vec<usize>,
    day_offset: Vec<usize>,
    pub day_slots: usize,
}

impl SlotIndex {
    pub fn new(time: &TimeStructure, scenarios: &ScenarioSet) -> Self {
        let days_per_season: Vec<usize> = time
            .seasons
            .iter()
            .map(|s| s.typical_day_weights.len())
            .collect();
        let mut day_offset = Vec::with_capacity(days_per_season.len());
        let mut acc = 0usize;
        for &d in &days_per_season {
            day_offset.push(acc);
            acc += d;
        }
        Self {
            scenarios: scenarios.num_scenarios(),
            seasons: days_per_season.len(),
            days_per_season,
            day_offset,
            day_slots: acc,
        }
    }

    /// Hourly slots per scenario.
    pub fn hours_per_scenario(&self) -> usize {
        self.day_slots * HOURS_PER_DAY
    }

    /// Total hourly slots.
    pub fn num_slots(&self) -> usize {
        self.scenarios * self.hours_per_scenario()
    }

    pub fn slot(&self, s: usize, t: usize, d: usize, h: usize) -> usize {
        s * self.hours_per_scenario() + (self.day_offset[t] + d) * HOURS_PER_DAY + h
    }

    /// Seasonal slots (scenario, season).
    pub fn num_sslots(&self) -> usize {
        self.scenarios * self.seasons
    }

    pub fn sslot(&self, s: usize, t: usize) -> usize {
        s * self.seasons + t
    }

    /// Storage-point slots (scenario, season boundary 0..=T).
    pub fn num_vslots(&self) -> usize {
        self.scenarios * (self.seasons + 1)
    }

    pub fn vslot(&self, s: usize, t: usize) -> usize {
        s * (self.seasons + 1) + t
    }

    pub fn iter(&self) -> impl Iterator<Item = Slot> + use<> {
        let mut out = Vec::with_capacity(self.num_slots());
        for s in 0..self.scenarios {
            for t in 0..self.seasons {
                for d in 0..self.days_per_season[t] {
                    for h in 0..HOURS_PER_DAY {
                        out.push(Slot {
                            s,
                            t,
                            d,
                            h,
                            idx: self.slot(s, t, d, h),
                        });
                    }
                }
            }
        }
        out.into_iter()
    }

    /// (scenario, season, day) triples with their base slot of hour 0.
    pub fn iter_days(&self) -> impl Iterator<Item = (usize, usize, usize)> + use<> {
        let mut out = Vec::new();
        for s in 0..self.scenarios {
            for t in 0..self.seasons {
                for d in 0..self.days_per_season[t] {
                    out.push((s, t, d));
                }
            }
        }
        out.into_iter()
    }

    pub fn iter_sslots(&self) -> impl Iterator<Item = (usize, usize)> + use<> {
        let mut out = Vec::new();
        for s in 0..self.scenarios {
            for t in 0..self.seasons {
                out.push((s, t));
            }
        }
        out.into_iter()
    }
}

/// Dense maps from semantic coordinates to model variables, plus the row
/// handles the verification and reporting layers need. Option entries are
/// populated only where the entity carries that family (commitment status,
/// reserve provision).
#[derive(Clone, Debug, Default)]
pub struct VariableIndex {
    pub project_x: Vec<VarId>,

    pub thermal_gen: Vec<Vec<VarId>>,
    pub thermal_commit: Vec<Option<Vec<VarId>>>,
    pub thermal_startup: Vec<Option<Vec<VarId>>>,
    pub thermal_reserve: Vec<Option<Vec<VarId>>>,

    /// `[hydro][vslot]`: storage at season boundaries 0..=T per scenario.
    pub hydro_storage: Vec<Vec<VarId>>,
    /// `[hydro][sslot]`
    pub hydro_turbine: Vec<Vec<VarId>>,
    pub hydro_spill: Vec<Vec<VarId>>,
    pub hydro_slack_storage: Vec<Vec<VarId>>,
    pub hydro_slack_turbine: Vec<Vec<VarId>>,
    pub hydro_slack_outflow: Vec<Vec<VarId>>,
    /// `[hydro][slot]`
    pub hydro_gen: Vec<Vec<VarId>>,
    pub hydro_reserve: Vec<Option<Vec<VarId>>>,

    pub renewable_gen: Vec<Vec<VarId>>,

    pub battery_storage: Vec<Vec<VarId>>,
    pub battery_charge: Vec<Vec<VarId>>,
    pub battery_discharge: Vec<Vec<VarId>>,
    pub battery_reserve: Vec<Option<Vec<VarId>>>,

    pub flow_fwd: Vec<Vec<VarId>>,
    pub flow_bwd: Vec<Vec<VarId>>,
    pub theta: Vec<Vec<VarId>>,

    /// `[bus]`, present only for buses with a demand spec.
    pub deficit: Vec<Option<Vec<VarId>>>,
    /// `[bus][segment][slot]`
    pub elastic: Vec<Vec<Vec<VarId>>>,

    pub group_slack: Vec<Vec<VarId>>,
    pub reserve_slack: Vec<Vec<VarId>>,

    pub load_balance_rows: Vec<Vec<RowId>>,
    /// `[hydro][sslot]`
    pub water_balance_rows: Vec<Vec<RowId>>,
    /// `[hydro][scenario]`: the start = end storage identity.
    pub cyclic_rows: Vec<Vec<RowId>>,
    /// `[line][slot]`: the voltage-law row pair, circuits only.
    pub kvl_rows: Vec<Option<Vec<(RowId, RowId)>>>,
}

impl VariableIndex {
    /// JSON dump of the coordinate → column mapping, family by family.
    pub fn to_json(&self, model: &gtep_milp::Model) -> serde_json::Value {
        let flat = |vars: &Vec<Vec<VarId>>| -> Vec<Vec<usize>> {
            vars.iter()
                .map(|per| per.iter().map(|v| v.index()).collect())
                .collect()
        };
        json!({
            "variables": model.var_ids().map(|v| model.var_name(v).to_string()).collect::<Vec<_>>(),
            "project_x": self.project_x.iter().map(|v| v.index()).collect::<Vec<_>>(),
            "thermal_gen": flat(&self.thermal_gen),
            "hydro_gen": flat(&self.hydro_gen),
            "hydro_storage": flat(&self.hydro_storage),
            "hydro_turbine": flat(&self.hydro_turbine),
            "renewable_gen": flat(&self.renewable_gen),
            "battery_storage": flat(&self.battery_storage),
            "flow_fwd": flat(&self.flow_fwd),
            "flow_bwd": flat(&self.flow_bwd),
            "theta": flat(&self.theta),
        })
    }
}
