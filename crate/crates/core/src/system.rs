//! Static power-system data model: buses, areas, plants, storage, lines,
//! demands and grouping constraints. Entities reference each other by
//! string id; [`crate::validate`] enforces the invariants.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Bus {
    pub id: String,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub area_id: Option<String>,
}

/// Electrical area with optional import/export bands in MW.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Area {
    pub id: String,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub import_min: Option<f64>,
    #[serde(default)]
    pub import_max: Option<f64>,
    #[serde(default)]
    pub export_min: Option<f64>,
    #[serde(default)]
    pub export_max: Option<f64>,
}

/// Thermal plant. With `has_commitment` the plant carries a binary on/off
/// status and a startup charge; without it the commitment status is
/// eliminated and generation is simply capped by the investment decision.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ThermalPlant {
    pub id: String,
    pub bus_id: String,
    /// MW, active only while committed.
    #[serde(default)]
    pub g_min: f64,
    /// MW
    pub g_max: f64,
    /// MW per hour
    pub ramp_up: f64,
    /// MW per hour
    pub ramp_down: f64,
    /// $ per MWh
    pub op_cost: f64,
    /// $ per startup
    #[serde(default)]
    pub startup_cost: f64,
    #[serde(default)]
    pub has_commitment: bool,
}

/// Hydro plant with seasonal storage/turbining volumes (hm³ per season)
/// and an energy conversion factor `rho` in MWh per hm³. `upstream_ids`
/// lists the plants whose releases (turbined plus spilled) arrive here.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct HydroPlant {
    pub id: String,
    pub bus_id: String,
    /// hm³
    #[serde(default)]
    pub v_min: f64,
    /// hm³
    pub v_max: f64,
    /// hm³ per season
    #[serde(default)]
    pub u_min: f64,
    /// hm³ per season
    pub u_max: f64,
    /// hm³ per season, minimum total outflow (turbined + spilled)
    #[serde(default)]
    pub q_min: f64,
    /// hm³ per season, optional cap on total outflow
    #[serde(default)]
    pub q_max: Option<f64>,
    /// MWh per hm³
    pub rho: f64,
    /// MW
    pub g_max: f64,
    #[serde(default)]
    pub upstream_ids: Vec<String>,
    /// $ per MWh
    #[serde(default)]
    pub om_cost: f64,
    /// $ per hm³ of minimum-storage violation
    #[serde(default = "default_penalty")]
    pub penalty_storage: f64,
    /// $ per hm³ of minimum-turbining violation
    #[serde(default = "default_penalty")]
    pub penalty_turbining: f64,
    /// $ per hm³ of minimum-outflow violation
    #[serde(default = "default_penalty")]
    pub penalty_outflow: f64,
    /// Fixed start-of-year storage in hm³; `None` leaves it free between
    /// the storage bounds (tied to the end-of-year storage either way).
    #[serde(default)]
    pub initial_storage: Option<f64>,
}

fn default_penalty() -> f64 {
    1e6
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct RenewablePlant {
    pub id: String,
    pub bus_id: String,
    /// MW; scales the per-unit generation factors into MW profiles.
    pub capacity: f64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Battery {
    pub id: String,
    pub bus_id: String,
    /// MWh
    pub v_max: f64,
    /// MW
    pub charge_max: f64,
    /// MW
    pub discharge_max: f64,
    /// in (0, 1]
    pub eta_charge: f64,
    /// in (0, 1]
    pub eta_discharge: f64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LineKind {
    /// Carries a susceptance and is subject to the voltage-angle law.
    Circuit,
    /// Controllable link; only the flow bounds apply.
    DcLink,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct TransmissionLine {
    pub id: String,
    pub from_bus: String,
    pub to_bus: String,
    pub kind: LineKind,
    /// MW, from→to direction
    pub f_max_fwd: f64,
    /// MW, to→from direction
    pub f_max_bwd: f64,
    /// MW per radian; required for circuits
    #[serde(default)]
    pub susceptance: Option<f64>,
}

/// One elastic demand segment: served quantity pays off `price` per MWh up
/// to `max_quantity[h]` MW in hour `h` (same cap across seasons, days and
/// scenarios).
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ElasticSegment {
    pub price: f64,
    pub max_quantity: Vec<f64>,
}

/// Demand at a bus: deficit pricing and elastic segments. The inelastic
/// profile itself is scenario data and lives in
/// [`crate::scenario::ScenarioSet::inelastic_demand`], keyed by this bus id.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct DemandSpec {
    pub bus_id: String,
    /// $ per MWh of unserved energy; must exceed every elastic price.
    pub deficit_cost: f64,
    #[serde(default)]
    pub elastic: Vec<ElasticSegment>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Min,
    Max,
}

/// Keeps a group of generators above (min) or below (max) a MW threshold
/// in every hour, with a penalized slack.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct GenerationGroupConstraint {
    pub id: String,
    #[serde(default)]
    pub thermal_ids: Vec<String>,
    #[serde(default)]
    pub hydro_ids: Vec<String>,
    pub bound_kind: BoundKind,
    /// MW
    pub threshold: f64,
    /// $ per MWh of violation
    pub violation_penalty: f64,
}

/// Reserve product cleared jointly with energy. The requirement profile is
/// scenario data and lives in [`crate::scenario::ScenarioSet::reserve`],
/// keyed by this constraint id.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ReserveRequirement {
    pub id: String,
    #[serde(default)]
    pub thermal_ids: Vec<String>,
    #[serde(default)]
    pub hydro_ids: Vec<String>,
    #[serde(default)]
    pub battery_ids: Vec<String>,
    /// $ per MW of shortfall
    pub violation_penalty: f64,
}

/// The static world every formulation consumes. Immutable after
/// construction; shared freely across concurrent readers.
#[derive(Clone, Debug, Default, Deserialize, Serialize)]
pub struct PowerSystem {
    pub buses: Vec<Bus>,
    #[serde(default)]
    pub areas: Vec<Area>,
    #[serde(default)]
    pub thermals: Vec<ThermalPlant>,
    #[serde(default)]
    pub hydros: Vec<HydroPlant>,
    #[serde(default)]
    pub renewables: Vec<RenewablePlant>,
    #[serde(default)]
    pub batteries: Vec<Battery>,
    #[serde(default)]
    pub lines: Vec<TransmissionLine>,
    #[serde(default)]
    pub demands: Vec<DemandSpec>,
    #[serde(default)]
    pub generation_groups: Vec<GenerationGroupConstraint>,
    #[serde(default)]
    pub reserve_requirements: Vec<ReserveRequirement>,
}

impl PowerSystem {
    pub fn bus_index(&self, id: &str) -> Option<usize> {
        self.buses.iter().position(|b| b.id == id)
    }
}
