//! Typical-day suggestion: k-medoids clustering of calendar days per
//! season on normalized daily net-demand profiles (demand minus mean
//! renewable output), Euclidean distance.
//!
//! Medoids are grown incrementally (the best single medoid, then greedy
//! additions) with a swap-refinement pass after every addition; both steps
//! only ever lower the assignment cost, so the aggregation error is
//! non-increasing in `k` by construction, and the whole procedure is
//! deterministic (ties break to the lowest day index). The `seed` parameter
//! is accepted for interface stability and future randomized variants; the
//! current implementation is deterministic for any value.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::time::{DayAssignment, DAYS_IN_MONTH, DAYS_IN_YEAR, HOURS_PER_DAY};

/// Hourly profiles for every calendar day of a non-leap baseline year.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct DailyProfiles {
    /// `[day_of_year][hour]`, 365 × 24, MW.
    pub demand: Vec<Vec<f64>>,
    /// `[day_of_year][hour]`, 365 × 24, MW (mean across plants/scenarios);
    /// may be all zeros when the study has no renewables.
    #[serde(default)]
    pub renewable: Vec<Vec<f64>>,
}

#[derive(Debug, Error, PartialEq)]
pub enum ClusterError {
    #[error("profiles must cover {expected} days of {hours} hours; got {got}")]
    BadShape {
        expected: u32,
        hours: usize,
        got: usize,
    },
    #[error("k = {k} exceeds the {days} days of season {season}")]
    TooManyClusters { k: usize, season: usize, days: usize },
    #[error("k must be at least 1")]
    ZeroClusters,
}

/// Result of a clustering run: the per-day assignment plus the total
/// distance of days to their medoids in normalized space.
#[derive(Clone, Debug)]
pub struct Suggestion {
    pub assignment: Vec<DayAssignment>,
    pub aggregation_error: f64,
}

/// Pick `k` typical days per season and assign every calendar day to one.
pub fn suggest_typical_days(
    profiles: &DailyProfiles,
    month_to_season: &[usize; 12],
    k: usize,
    _seed: u64,
) -> Result<Suggestion, ClusterError> {
    if k == 0 {
        return Err(ClusterError::ZeroClusters);
    }
    let check = |p: &Vec<Vec<f64>>, allow_empty: bool| -> Result<(), ClusterError> {
        if allow_empty && p.is_empty() {
            return Ok(());
        }
        if p.len() != DAYS_IN_YEAR as usize || p.iter().any(|d| d.len() != HOURS_PER_DAY) {
            return Err(ClusterError::BadShape {
                expected: DAYS_IN_YEAR,
                hours: HOURS_PER_DAY,
                got: p.len(),
            });
        }
        Ok(())
    };
    check(&profiles.demand, false)?;
    check(&profiles.renewable, true)?;

    let num_seasons = month_to_season.iter().copied().max().map_or(1, |m| m + 1);
    // calendar day list as (month, day, day_of_year)
    let mut calendar = Vec::with_capacity(DAYS_IN_YEAR as usize);
    let mut doy = 0usize;
    for month in 1..=12u32 {
        for day in 1..=DAYS_IN_MONTH[month as usize - 1] {
            calendar.push((month, day, doy));
            doy += 1;
        }
    }

    let mut assignment = Vec::with_capacity(calendar.len());
    let mut total_error = 0.0;
    for season in 0..num_seasons {
        let member_days: Vec<usize> = calendar
            .iter()
            .filter(|(m, _, _)| month_to_season[*m as usize - 1] == season)
            .map(|&(_, _, d)| d)
            .collect();
        if member_days.is_empty() {
            continue;
        }
        if k > member_days.len() {
            return Err(ClusterError::TooManyClusters {
                k,
                season,
                days: member_days.len(),
            });
        }
        let vectors = normalized_net_demand(profiles, &member_days);
        let dm = DistanceMatrix::new(&vectors);
        let (medoids, error) = k_medoids(&vectors, k);
        total_error += error;

        // typical days ordered by medoid day-of-year
        let mut ordered: Vec<usize> = medoids.clone();
        ordered.sort_unstable();
        for (local, &d) in member_days.iter().enumerate() {
            let best = nearest_medoid(&dm, &ordered, local);
            let (month, day, _) = calendar.iter().find(|&&(_, _, dd)| dd == d).copied().unwrap();
            let medoid_rank = ordered
                .iter()
                .position(|&mi| mi == best)
                .expect("medoid present");
            assignment.push(DayAssignment {
                month,
                day,
                season,
                typical_day: medoid_rank,
            });
        }
    }
    assignment.sort_by_key(|a| (a.month, a.day));
    Ok(Suggestion {
        assignment,
        aggregation_error: total_error,
    })
}

/// Net demand (demand − renewable) per member day, normalized by the
/// season-wide mean and standard deviation over all hours.
fn normalized_net_demand(profiles: &DailyProfiles, member_days: &[usize]) -> Vec<Vec<f64>> {
    let mut vectors: Vec<Vec<f64>> = member_days
        .iter()
        .map(|&d| {
            (0..HOURS_PER_DAY)
                .map(|h| {
                    let ren = profiles.renewable.get(d).map(|r| r[h]).unwrap_or(0.0);
                    profiles.demand[d][h] - ren
                })
                .collect()
        })
        .collect();
    let n = (vectors.len() * HOURS_PER_DAY) as f64;
    let mean: f64 = vectors.iter().flatten().sum::<f64>() / n;
    let var: f64 = vectors.iter().flatten().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let sd = var.sqrt();
    let scale = if sd > 0.0 { 1.0 / sd } else { 0.0 };
    for v in vectors.iter_mut() {
        for x in v.iter_mut() {
            *x = (*x - mean) * scale;
        }
    }
    vectors
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    fn new(vectors: &[Vec<f64>]) -> Self {
        let n = vectors.len();
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = dist(&vectors[i], &vectors[j]);
                d[i * n + j] = v;
                d[j * n + i] = v;
            }
        }
        Self { n, d }
    }

    fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }
}

fn nearest_medoid(dm: &DistanceMatrix, medoids: &[usize], point: usize) -> usize {
    let mut best = medoids[0];
    let mut best_d = dm.get(point, best);
    for &m in &medoids[1..] {
        let d = dm.get(point, m);
        if d < best_d {
            best_d = d;
            best = m;
        }
    }
    best
}

fn assignment_cost(dm: &DistanceMatrix, medoids: &[usize]) -> f64 {
    (0..dm.n)
        .map(|p| dm.get(p, nearest_medoid(dm, medoids, p)))
        .sum()
}

/// Greedy growth + swap refinement. Every accepted step strictly lowers
/// the cost, so refinement terminates and cost is monotone in `k`.
fn k_medoids(vectors: &[Vec<f64>], k: usize) -> (Vec<usize>, f64) {
    let dm = DistanceMatrix::new(vectors);
    let n = dm.n;
    // best single medoid
    let mut medoids = vec![(0..n)
        .min_by(|&a, &b| {
            assignment_cost(&dm, &[a])
                .partial_cmp(&assignment_cost(&dm, &[b]))
                .unwrap()
        })
        .unwrap()];
    let mut cost = assignment_cost(&dm, &medoids);
    while medoids.len() < k {
        if cost <= 1e-15 {
            // already exact: extend with the lowest unused day, cost stays 0
            let cand = (0..n).find(|c| !medoids.contains(c)).expect("k <= n");
            medoids.push(cand);
            continue;
        }
        // greedy addition of the cost-minimizing new medoid
        let mut best: Option<(usize, f64)> = None;
        for cand in 0..n {
            if medoids.contains(&cand) {
                continue;
            }
            let mut with = medoids.clone();
            with.push(cand);
            let c = assignment_cost(&dm, &with);
            match best {
                Some((_, bc)) if c >= bc => {}
                _ => best = Some((cand, c)),
            }
        }
        let (cand, c) = best.expect("k <= n ensures a candidate");
        medoids.push(cand);
        cost = c;
        // swap refinement
        loop {
            if cost <= 1e-15 {
                break;
            }
            let mut improved = false;
            'outer: for mi in 0..medoids.len() {
                for cand in 0..n {
                    if medoids.contains(&cand) {
                        continue;
                    }
                    let mut with = medoids.clone();
                    with[mi] = cand;
                    let c = assignment_cost(&dm, &with);
                    if c < cost - 1e-12 {
                        medoids = with;
                        cost = c;
                        improved = true;
                        break 'outer;
                    }
                }
            }
            if !improved {
                break;
            }
        }
    }
    (medoids, cost)
}
