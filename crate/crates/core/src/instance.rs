//! The self-contained instance document: system, catalog, time structure,
//! scenarios and study horizon in one JSON file, with large profiles
//! optionally in sidecar CSV files referenced by relative path.
//!
//! Inline hourly profiles are nested arrays `[scenario][season][typical_day][hour]`;
//! sidecar CSVs carry one row per cell with 1-based indices
//! (`season,typical_day,hour,scenario,value`, seasonal profiles
//! `season,scenario,value`). See docs/instance-schema.md for the full
//! schema.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::json;
use thiserror::Error;

use crate::catalog::{DecisionKind, Project, ProjectCatalog, TargetKind};
use crate::planner::annualize_cost;
use crate::scenario::{HourlyProfile, ScenarioSet, SeasonalProfile};
use crate::system::PowerSystem;
use crate::time::{
    build_time_structure, season_rate_from_annual, DayAssignment, TimeError, TimeStructure,
    HOURS_PER_DAY,
};
use crate::validate::ValidationReport;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("i/o error reading {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error in {path}: {msg}")]
    Csv { path: PathBuf, msg: String },
    #[error("profile shape error: {0}")]
    Shape(String),
    #[error("time structure error: {0}")]
    Time(#[from] TimeError),
    #[error("project {id}: give either investment_cost or capex+lifetime_years")]
    ProjectCost { id: String },
}

/// Per-project availability window in 1-based study years.
#[derive(Clone, Copy, Debug, Deserialize)]
pub struct EntryWindow {
    #[serde(default = "one")]
    pub earliest: usize,
    #[serde(default)]
    pub latest: Option<usize>,
}

fn one() -> usize {
    1
}

impl Default for EntryWindow {
    fn default() -> Self {
        Self {
            earliest: 1,
            latest: None,
        }
    }
}

/// Study horizon: year count, discounting, demand growth and per-project
/// entry windows, plus optional per-year scenario overrides.
#[derive(Clone, Debug)]
pub struct StudyHorizon {
    pub years: usize,
    pub annual_discount_rate: f64,
    /// Multiplier on inelastic demand per year (length = `years`).
    pub demand_growth: Vec<f64>,
    pub entry_windows: BTreeMap<String, EntryWindow>,
    pub scenario_overrides: BTreeMap<usize, ScenarioSet>,
}

impl Default for StudyHorizon {
    fn default() -> Self {
        Self {
            years: 1,
            annual_discount_rate: 0.0,
            demand_growth: vec![1.0],
            entry_windows: BTreeMap::new(),
            scenario_overrides: BTreeMap::new(),
        }
    }
}

/// A fully resolved planning instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub system: PowerSystem,
    pub catalog: ProjectCatalog,
    pub time: TimeStructure,
    pub scenarios: ScenarioSet,
    pub horizon: StudyHorizon,
}

// ---------------------------------------------------------------------------
// file-level schema
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
struct InstanceFile {
    #[serde(default)]
    name: Option<String>,
    system: PowerSystem,
    catalog: CatalogFile,
    time: TimeFile,
    scenarios: ScenariosFile,
    #[serde(default)]
    horizon: Option<HorizonFile>,
}

#[derive(Deserialize)]
struct CatalogFile {
    projects: Vec<ProjectFile>,
    #[serde(default)]
    precedence: Vec<(String, String)>,
    #[serde(default)]
    exclusivity: Vec<Vec<String>>,
    #[serde(default)]
    association: Vec<(String, String)>,
    #[serde(default)]
    capacity_groups: Vec<crate::catalog::CapacityGroup>,
}

#[derive(Deserialize)]
struct ProjectFile {
    id: String,
    target_kind: TargetKind,
    target_id: String,
    #[serde(default)]
    investment_cost: Option<f64>,
    #[serde(default)]
    capex: Option<f64>,
    #[serde(default)]
    lifetime_years: Option<u32>,
    decision: DecisionKind,
}

#[derive(Deserialize)]
struct TimeFile {
    seasons: Vec<SeasonFile>,
    #[serde(default)]
    season_discount_rate: Option<f64>,
    #[serde(default)]
    day_assignment: Option<Vec<DayAssignment>>,
}

#[derive(Deserialize)]
struct SeasonFile {
    #[serde(default)]
    name: Option<String>,
    months: Vec<u32>,
    #[serde(default)]
    typical_day_weights: Option<Vec<f64>>,
}

#[derive(Deserialize)]
struct ScenariosFile {
    probabilities: Vec<f64>,
    #[serde(default)]
    inflows: BTreeMap<String, SeasonalSource>,
    /// Per-unit output factors, scaled by the plant capacity at load time.
    #[serde(default)]
    renewable_factors: BTreeMap<String, HourlySource>,
    /// Output already in MW; takes precedence over factors for the same id.
    #[serde(default)]
    renewable_mw: BTreeMap<String, HourlySource>,
    #[serde(default)]
    reserve_requirements: BTreeMap<String, HourlySource>,
    #[serde(default)]
    inelastic_demand: BTreeMap<String, HourlySource>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum HourlySource {
    Csv { csv: String },
    Inline(Vec<Vec<Vec<Vec<f64>>>>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SeasonalSource {
    Csv { csv: String },
    Inline(Vec<Vec<f64>>),
}

#[derive(Deserialize)]
struct HorizonFile {
    #[serde(default = "one")]
    years: usize,
    #[serde(default)]
    annual_discount_rate: f64,
    #[serde(default)]
    demand_growth: Option<Vec<f64>>,
    #[serde(default)]
    entry_windows: BTreeMap<String, EntryWindow>,
    #[serde(default)]
    scenario_overrides: BTreeMap<String, ScenariosFile>,
}

// ---------------------------------------------------------------------------
// loading
// ---------------------------------------------------------------------------

impl Instance {
    pub fn from_path(path: &Path) -> Result<Self, InstanceError> {
        let text = std::fs::read_to_string(path).map_err(|source| InstanceError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().unwrap_or_else(|| Path::new(".")).to_path_buf();
        Self::from_json(&text, &base)
    }

    pub fn from_json(text: &str, base_dir: &Path) -> Result<Self, InstanceError> {
        let file: InstanceFile = serde_json::from_str(text)?;
        resolve(file, base_dir)
    }

    /// Validate the whole instance; an empty report means well-formed.
    pub fn validate(&self) -> ValidationReport {
        crate::validate::validate_system(&self.system, &self.catalog, &self.time, &self.scenarios)
    }

    /// Scenario data for a study year (per-year override or the base set).
    pub fn scenarios_for_year(&self, year: usize) -> &ScenarioSet {
        self.horizon
            .scenario_overrides
            .get(&year)
            .unwrap_or(&self.scenarios)
    }

    /// Demand multiplier for a 1-based study year.
    pub fn demand_scale(&self, year: usize) -> f64 {
        self.horizon
            .demand_growth
            .get(year - 1)
            .copied()
            .unwrap_or(1.0)
    }
}

fn resolve(file: InstanceFile, base_dir: &Path) -> Result<Instance, InstanceError> {
    let horizon_file = file.horizon;
    let annual_rate = horizon_file
        .as_ref()
        .map(|h| h.annual_discount_rate)
        .unwrap_or(0.0);

    let time = resolve_time(&file.time, annual_rate)?;
    let num_scenarios = file.scenarios.probabilities.len();
    let scenarios = resolve_scenarios(file.scenarios, &file.system, &time, base_dir)?;

    let mut projects = Vec::with_capacity(file.catalog.projects.len());
    for p in file.catalog.projects {
        let investment_cost = match (p.investment_cost, p.capex, p.lifetime_years) {
            (Some(c), None, None) => c,
            (None, Some(capex), Some(life)) => annualize_cost(capex, life, annual_rate),
            _ => return Err(InstanceError::ProjectCost { id: p.id }),
        };
        projects.push(Project {
            id: p.id,
            target_kind: p.target_kind,
            target_id: p.target_id,
            investment_cost,
            decision: p.decision,
        });
    }
    let catalog = ProjectCatalog {
        projects,
        precedence: file.catalog.precedence,
        exclusivity: file.catalog.exclusivity,
        association: file.catalog.association,
        capacity_groups: file.catalog.capacity_groups,
    };

    let horizon = match horizon_file {
        None => StudyHorizon::default(),
        Some(h) => {
            let years = h.years.max(1);
            let demand_growth = match h.demand_growth {
                Some(g) if g.len() == years => g,
                Some(g) => {
                    return Err(InstanceError::Shape(format!(
                        "demand_growth has {} entries for {} years",
                        g.len(),
                        years
                    )))
                }
                None => vec![1.0; years],
            };
            let mut scenario_overrides = BTreeMap::new();
            for (year_key, sf) in h.scenario_overrides {
                let year: usize = year_key.parse().map_err(|_| {
                    InstanceError::Shape(format!("scenario override year {:?}", year_key))
                })?;
                if sf.probabilities.len() != num_scenarios {
                    return Err(InstanceError::Shape(format!(
                        "scenario override for year {} changes the scenario count",
                        year
                    )));
                }
                scenario_overrides
                    .insert(year, resolve_scenarios(sf, &file.system, &time, base_dir)?);
            }
            StudyHorizon {
                years,
                annual_discount_rate: h.annual_discount_rate,
                demand_growth,
                entry_windows: h.entry_windows,
                scenario_overrides,
            }
        }
    };

    Ok(Instance {
        name: file.name.unwrap_or_else(|| "instance".to_string()),
        system: file.system,
        catalog,
        time,
        scenarios,
        horizon,
    })
}

fn resolve_time(file: &TimeFile, annual_rate: f64) -> Result<TimeStructure, InstanceError> {
    let rt = file
        .season_discount_rate
        .unwrap_or_else(|| season_rate_from_annual(annual_rate, file.seasons.len().max(1)));

    if let Some(assignment) = &file.day_assignment {
        let mut month_to_season = [usize::MAX; 12];
        for (t, s) in file.seasons.iter().enumerate() {
            for &m in &s.months {
                if !(1..=12).contains(&m) {
                    return Err(InstanceError::Shape(format!("month {} out of range", m)));
                }
                month_to_season[m as usize - 1] = t;
            }
        }
        if let Some(m) = month_to_season.iter().position(|&t| t == usize::MAX) {
            return Err(InstanceError::Time(TimeError::UnmappedMonth(m as u32 + 1)));
        }
        let mut ts = build_time_structure(&month_to_season, assignment, rt)?;
        for (season, sf) in ts.seasons.iter_mut().zip(&file.seasons) {
            if let Some(name) = &sf.name {
                season.name = Some(name.clone());
            }
            if let Some(weights) = &sf.typical_day_weights {
                if weights != &season.typical_day_weights {
                    return Err(InstanceError::Shape(format!(
                        "typical_day_weights disagree with day_assignment for season {:?}",
                        season.name
                    )));
                }
            }
        }
        return Ok(ts);
    }

    let seasons = file
        .seasons
        .iter()
        .map(|s| {
            s.typical_day_weights
                .clone()
                .map(|weights| crate::time::Season {
                    name: s.name.clone(),
                    months: s.months.clone(),
                    typical_day_weights: weights,
                })
                .ok_or_else(|| {
                    InstanceError::Shape(
                        "seasons need typical_day_weights when no day_assignment is given".into(),
                    )
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TimeStructure {
        seasons,
        season_discount_rate: rt,
        day_assignment: file.day_assignment.clone(),
    })
}

fn resolve_scenarios(
    file: ScenariosFile,
    system: &PowerSystem,
    time: &TimeStructure,
    base_dir: &Path,
) -> Result<ScenarioSet, InstanceError> {
    let s_count = file.probabilities.len();
    let mut out = ScenarioSet {
        probabilities: file.probabilities,
        ..ScenarioSet::default()
    };
    for (id, src) in file.inflows {
        out.inflow
            .insert(id, resolve_seasonal(src, time, s_count, base_dir)?);
    }
    for (id, src) in file.renewable_factors {
        let factors = resolve_hourly(src, time, s_count, base_dir)?;
        let capacity = system
            .renewables
            .iter()
            .find(|r| r.id == id)
            .map(|r| r.capacity)
            .unwrap_or(1.0);
        out.renewable_mw.insert(id, factors.scale(capacity));
    }
    for (id, src) in file.renewable_mw {
        out.renewable_mw
            .insert(id, resolve_hourly(src, time, s_count, base_dir)?);
    }
    for (id, src) in file.reserve_requirements {
        out.reserve
            .insert(id, resolve_hourly(src, time, s_count, base_dir)?);
    }
    for (id, src) in file.inelastic_demand {
        out.inelastic_demand
            .insert(id, resolve_hourly(src, time, s_count, base_dir)?);
    }
    Ok(out)
}

fn resolve_hourly(
    src: HourlySource,
    time: &TimeStructure,
    scenarios: usize,
    base_dir: &Path,
) -> Result<HourlyProfile, InstanceError> {
    let profile = match src {
        HourlySource::Inline(values) => HourlyProfile { values },
        HourlySource::Csv { csv } => read_hourly_csv(&base_dir.join(csv), time, scenarios)?,
    };
    if !profile.covers(time, scenarios) {
        return Err(InstanceError::Shape(
            "hourly profile does not match the time structure and scenario count".into(),
        ));
    }
    Ok(profile)
}

fn resolve_seasonal(
    src: SeasonalSource,
    time: &TimeStructure,
    scenarios: usize,
    base_dir: &Path,
) -> Result<SeasonalProfile, InstanceError> {
    let profile = match src {
        SeasonalSource::Inline(values) => SeasonalProfile { values },
        SeasonalSource::Csv { csv } => read_seasonal_csv(&base_dir.join(csv), time, scenarios)?,
    };
    if !profile.covers(time, scenarios) {
        return Err(InstanceError::Shape(
            "seasonal profile does not match the time structure and scenario count".into(),
        ));
    }
    Ok(profile)
}

fn csv_err(path: &Path, msg: impl Into<String>) -> InstanceError {
    InstanceError::Csv {
        path: path.to_path_buf(),
        msg: msg.into(),
    }
}

/// `season,typical_day,hour,scenario,value` with 1-based indices, one row
/// per cell, every cell present exactly once.
fn read_hourly_csv(
    path: &Path,
    time: &TimeStructure,
    scenarios: usize,
) -> Result<HourlyProfile, InstanceError> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| csv_err(path, e.to_string()))?;
    let mut values: Vec<Vec<Vec<Vec<f64>>>> = (0..scenarios)
        .map(|_| {
            time.seasons
                .iter()
                .map(|s| vec![vec![f64::NAN; HOURS_PER_DAY]; s.typical_day_weights.len()])
                .collect()
        })
        .collect();
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| csv_err(path, e.to_string()))?;
        let field = |k: usize| -> Result<f64, InstanceError> {
            record
                .get(k)
                .ok_or_else(|| csv_err(path, format!("row {}: missing field {}", i + 2, k)))?
                .trim()
                .parse::<f64>()
                .map_err(|_| csv_err(path, format!("row {}: bad number", i + 2)))
        };
        let (t, d, h, s) = (
            field(0)? as usize,
            field(1)? as usize,
            field(2)? as usize,
            field(3)? as usize,
        );
        let v = field(4)?;
        let cell = values
            .get_mut(s.wrapping_sub(1))
            .and_then(|a| a.get_mut(t.wrapping_sub(1)))
            .and_then(|a| a.get_mut(d.wrapping_sub(1)))
            .and_then(|a| a.get_mut(h.wrapping_sub(1)))
            .ok_or_else(|| csv_err(path, format!("row {}: index out of range", i + 2)))?;
        if !cell.is_nan() {
            return Err(csv_err(path, format!("row {}: duplicate cell", i + 2)));
        }
        *cell = v;
    }
    if values.iter().flatten().flatten().flatten().any(|v| v.is_nan()) {
        return Err(csv_err(path, "missing cells"));
    }
    Ok(HourlyProfile { values })
}

/// `season,scenario,value` with 1-based indices.
fn read_seasonal_csv(
    path: &Path,
    time: &TimeStructure,
    scenarios: usize,
) -> Result<SeasonalProfile, InstanceError> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| csv_err(path, e.to_string()))?;
    let mut values = vec![vec![f64::NAN; time.num_seasons()]; scenarios];
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| csv_err(path, e.to_string()))?;
        let field = |k: usize| -> Result<f64, InstanceError> {
            record
                .get(k)
                .ok_or_else(|| csv_err(path, format!("row {}: missing field {}", i + 2, k)))?
                .trim()
                .parse::<f64>()
                .map_err(|_| csv_err(path, format!("row {}: bad number", i + 2)))
        };
        let (t, s, v) = (field(0)? as usize, field(1)? as usize, field(2)?);
        let cell = values
            .get_mut(s.wrapping_sub(1))
            .and_then(|a| a.get_mut(t.wrapping_sub(1)))
            .ok_or_else(|| csv_err(path, format!("row {}: index out of range", i + 2)))?;
        if !cell.is_nan() {
            return Err(csv_err(path, format!("row {}: duplicate cell", i + 2)));
        }
        *cell = v;
    }
    if values.iter().flatten().any(|v| v.is_nan()) {
        return Err(csv_err(path, "missing cells"));
    }
    Ok(SeasonalProfile { values })
}

// ---------------------------------------------------------------------------
// writing
// ---------------------------------------------------------------------------

impl Instance {
    /// Serialize back to the instance JSON schema with all profiles inline.
    /// Renewable profiles are written in MW (`renewable_mw`), the exact
    /// in-memory representation, so reloading is value-faithful.
    pub fn to_json(&self) -> serde_json::Value {
        let scen = |s: &ScenarioSet| -> serde_json::Value {
            json!({
                "probabilities": s.probabilities,
                "inflows": s.inflow.iter().map(|(k, p)| (k.clone(), json!(p.values))).collect::<BTreeMap<_, _>>(),
                "renewable_mw": s.renewable_mw.iter().map(|(k, p)| (k.clone(), json!(p.values))).collect::<BTreeMap<_, _>>(),
                "reserve_requirements": s.reserve.iter().map(|(k, p)| (k.clone(), json!(p.values))).collect::<BTreeMap<_, _>>(),
                "inelastic_demand": s.inelastic_demand.iter().map(|(k, p)| (k.clone(), json!(p.values))).collect::<BTreeMap<_, _>>(),
            })
        };
        let projects: Vec<serde_json::Value> = self
            .catalog
            .projects
            .iter()
            .map(|p| {
                json!({
                    "id": p.id,
                    "target_kind": p.target_kind,
                    "target_id": p.target_id,
                    "investment_cost": p.investment_cost,
                    "decision": p.decision,
                })
            })
            .collect();
        json!({
            "name": self.name,
            "system": self.system,
            "catalog": {
                "projects": projects,
                "precedence": self.catalog.precedence,
                "exclusivity": self.catalog.exclusivity,
                "association": self.catalog.association,
                "capacity_groups": self.catalog.capacity_groups,
            },
            "time": {
                "seasons": self.time.seasons,
                "season_discount_rate": self.time.season_discount_rate,
                "day_assignment": self.time.day_assignment,
            },
            "scenarios": scen(&self.scenarios),
            "horizon": {
                "years": self.horizon.years,
                "annual_discount_rate": self.horizon.annual_discount_rate,
                "demand_growth": self.horizon.demand_growth,
                "entry_windows": self.horizon.entry_windows.iter().map(|(k, w)| {
                    (k.clone(), json!({"earliest": w.earliest, "latest": w.latest}))
                }).collect::<BTreeMap<_, _>>(),
                "scenario_overrides": self.horizon.scenario_overrides.iter().map(|(y, s)| {
                    (y.to_string(), scen(s))
                }).collect::<BTreeMap<_, _>>(),
            },
        })
    }
}
