//! Seasons, typical days, duration weights and discount coefficients.
//!
//! A season groups calendar months; each season carries an ordered list of
//! typical days, and every calendar day of a 365-day baseline year maps to
//! exactly one (season, typical day). The duration weight `D[t][d]` counts
//! the calendar days a typical day stands for, so the weights of a season
//! sum to the day count of its months and the year total is always 365.
//! Feb 29 of leap years is folded onto Feb 28's assignment.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scenario::ScenarioSet;

pub const HOURS_PER_DAY: usize = 24;
pub const DAYS_IN_MONTH: [u32; 12] = [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31];
pub const DAYS_IN_YEAR: u32 = 365;

/// Calendar day → (season, typical day) entry. Month/day are 1-based
/// calendar values; season/typical day are 0-based structure indices.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
pub struct DayAssignment {
    pub month: u32,
    pub day: u32,
    pub season: usize,
    pub typical_day: usize,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Season {
    #[serde(default)]
    pub name: Option<String>,
    /// 1-based calendar months belonging to this season.
    pub months: Vec<u32>,
    /// D[t][d]: calendar days each typical day stands for.
    pub typical_day_weights: Vec<f64>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct TimeStructure {
    pub seasons: Vec<Season>,
    /// Per-season discount fraction `rt`; see [`season_rate_from_annual`].
    #[serde(default)]
    pub season_discount_rate: f64,
    /// The day-level mapping, when known (carried for reporting and for
    /// expanding concrete calendar years).
    #[serde(default)]
    pub day_assignment: Option<Vec<DayAssignment>>,
}

#[derive(Debug, Error, PartialEq)]
pub enum TimeError {
    #[error("month {0} is not mapped to any season")]
    UnmappedMonth(u32),
    #[error("calendar day {month}-{day} has no typical-day assignment")]
    UnmappedDay { month: u32, day: u32 },
    #[error("calendar day {month}-{day} assigned twice")]
    DuplicateDay { month: u32, day: u32 },
    #[error("day {month}-{day} assigned to season {assigned} but its month belongs to season {expected}")]
    SeasonMismatch {
        month: u32,
        day: u32,
        assigned: usize,
        expected: usize,
    },
    #[error("season {season} typical day {typical_day} receives no calendar days")]
    EmptyTypicalDay { season: usize, typical_day: usize },
    #[error("invalid calendar day {month}-{day}")]
    BadCalendarDay { month: u32, day: u32 },
}

impl TimeStructure {
    pub fn num_seasons(&self) -> usize {
        self.seasons.len()
    }

    /// D_{t,d} in days.
    pub fn weight(&self, season: usize, typical_day: usize) -> f64 {
        self.seasons[season].typical_day_weights[typical_day]
    }

    pub fn total_weight(&self) -> f64 {
        self.seasons
            .iter()
            .flat_map(|s| s.typical_day_weights.iter())
            .sum()
    }

    /// Assignment lookup with the leap-day fold (Feb 29 → Feb 28).
    pub fn assignment_for(&self, month: u32, day: u32) -> Option<DayAssignment> {
        let (month, day) = if month == 2 && day == 29 { (2, 28) } else { (month, day) };
        self.day_assignment
            .as_ref()?
            .iter()
            .find(|a| a.month == month && a.day == day)
            .copied()
    }
}

/// Per-season rate from an annual rate: `(1 + rt) = (1 + r_a)^(1/T)`.
pub fn season_rate_from_annual(annual_rate: f64, num_seasons: usize) -> f64 {
    (1.0 + annual_rate).powf(1.0 / num_seasons as f64) - 1.0
}

/// Objective weight of one (season, typical day, scenario) cell:
/// `p_s · D[t][d] / (1 + rt)^t` with the season exponent starting at zero
/// for the first season.
pub fn beta(
    season: usize,
    typical_day: usize,
    scenario: usize,
    structure: &TimeStructure,
    scenarios: &ScenarioSet,
) -> f64 {
    let p = scenarios.probabilities[scenario];
    let d = structure.weight(season, typical_day);
    p * d / (1.0 + structure.season_discount_rate).powi(season as i32)
}

/// Build a [`TimeStructure`] by counting a full calendar-day assignment.
///
/// `month_to_season[m]` gives the season of 1-based month `m+1`; the
/// assignment must cover the 365 days of a non-leap baseline year exactly
/// once each, and may only assign a day to a typical day of its month's
/// season.
pub fn build_time_structure(
    month_to_season: &[usize; 12],
    day_assignment: &[DayAssignment],
    season_discount_rate: f64,
) -> Result<TimeStructure, TimeError> {
    let num_seasons = month_to_season.iter().copied().max().map_or(0, |m| m + 1);
    for t in 0..num_seasons {
        if !month_to_season.contains(&t) {
            // a season index with no month can never receive days
            return Err(TimeError::EmptyTypicalDay {
                season: t,
                typical_day: 0,
            });
        }
    }

    let mut seen = vec![false; 366 + 31]; // indexed by month*31+day, sparse
    let mut counts: Vec<Vec<f64>> = vec![Vec::new(); num_seasons];
    for a in day_assignment {
        if a.month < 1 || a.month > 12 || a.day < 1 || a.day > DAYS_IN_MONTH[a.month as usize - 1] {
            return Err(TimeError::BadCalendarDay {
                month: a.month,
                day: a.day,
            });
        }
        let key = (a.month as usize - 1) * 31 + (a.day as usize - 1);
        if seen[key] {
            return Err(TimeError::DuplicateDay {
                month: a.month,
                day: a.day,
            });
        }
        seen[key] = true;
        let expected = month_to_season[a.month as usize - 1];
        if a.season != expected {
            return Err(TimeError::SeasonMismatch {
                month: a.month,
                day: a.day,
                assigned: a.season,
                expected,
            });
        }
        let bucket = &mut counts[a.season];
        if bucket.len() <= a.typical_day {
            bucket.resize(a.typical_day + 1, 0.0);
        }
        bucket[a.typical_day] += 1.0;
    }
    for month in 1..=12u32 {
        for day in 1..=DAYS_IN_MONTH[month as usize - 1] {
            if !seen[(month as usize - 1) * 31 + (day as usize - 1)] {
                return Err(TimeError::UnmappedDay { month, day });
            }
        }
    }
    for (t, bucket) in counts.iter().enumerate() {
        if bucket.is_empty() {
            return Err(TimeError::EmptyTypicalDay {
                season: t,
                typical_day: 0,
            });
        }
        for (d, &w) in bucket.iter().enumerate() {
            if w < 1.0 {
                return Err(TimeError::EmptyTypicalDay {
                    season: t,
                    typical_day: d,
                });
            }
        }
    }

    let seasons = counts
        .into_iter()
        .enumerate()
        .map(|(t, weights)| Season {
            name: Some(format!("season{}", t + 1)),
            months: (1..=12u32)
                .filter(|&m| month_to_season[m as usize - 1] == t)
                .collect(),
            typical_day_weights: weights,
        })
        .collect();
    Ok(TimeStructure {
        seasons,
        season_discount_rate,
        day_assignment: Some(day_assignment.to_vec()),
    })
}
