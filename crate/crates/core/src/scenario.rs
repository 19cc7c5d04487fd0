//! Replications, delay sweeps, bundling scenarios and calibration.
//!
//! Replication `i` of any two scenarios draws from the same named streams, so
//! paired differences isolate the intervention.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{CalibrationConfig, RunConfig};
use crate::error::{ConfigError, ScenarioError};
use crate::model::{EdSimulation, EsiLevel, ModelParams, OrderCountProfile, Reductions, SimOptions};
use crate::stats::{mean_ci, paired_t, welch_t, ConfidenceInterval, TTestResult};

pub const DEFAULT_ALPHA: f64 = 0.05;
pub const DEFAULT_LEVELS: [f64; 5] = [0.1, 0.2, 0.3, 0.5, 1.0];

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub params: ModelParams,
    pub replications: u32,
    pub horizon: f64,
    pub warmup: f64,
    pub drain: f64,
    pub base_seed: u64,
    pub alpha: f64,
}

impl ScenarioConfig {
    pub fn from_run_config(cfg: &RunConfig) -> Result<Self, ConfigError> {
        let r = &cfg.replication;
        Ok(ScenarioConfig {
            params: cfg.model_params()?,
            replications: r.count,
            horizon: r.horizon,
            warmup: r.warmup,
            drain: r.drain,
            base_seed: r.seed,
            alpha: DEFAULT_ALPHA,
        })
    }

    pub fn with_reductions(&self, reductions: Reductions) -> Self {
        let mut c = self.clone();
        c.params.reductions = reductions;
        c
    }

    pub fn with_orders(&self, orders: OrderCountProfile) -> Self {
        let mut c = self.clone();
        c.params.orders = orders;
        c
    }

    /// Patients are measured if their bed was assigned in `[warmup, warmup + horizon)`.
    pub fn window(&self) -> (f64, f64) {
        (self.warmup, self.warmup + self.horizon)
    }

    pub fn end(&self) -> f64 {
        self.warmup + self.horizon + self.drain
    }
}

/// Running sum and count of time-in-ED.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Stratum {
    pub sum: f64,
    pub count: usize,
}

impl Stratum {
    fn add(&mut self, x: f64) {
        self.sum += x;
        self.count += 1;
    }

    fn merge(&mut self, other: Stratum) {
        self.sum += other.sum;
        self.count += other.count;
    }

    pub fn mean(&self) -> Option<f64> {
        (self.count > 0).then(|| self.sum / self.count as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicationSummary {
    pub replication: u32,
    /// Mean time-in-ED by ESI; zero where no patient of that level was measured.
    pub esi_mean: [f64; 5],
    pub esi_count: [usize; 5],
    pub overall_mean: f64,
    pub patients: usize,
    pub bed_to_disposition: f64,
    pub disposition_to_departure: f64,
    pub waiting_room: f64,
    /// Mean over patients of direct physician time divided by time-in-ED.
    pub direct_care_share: f64,
    /// Time-in-ED by ESI and number of imaging orders.
    pub order_strata: [[Stratum; 4]; 5],
    /// Measured patients still in a bed when the run stopped.
    pub censored: usize,
    pub physician_utilization: f64,
}

pub fn run_replication(cfg: &ScenarioConfig, rep: u32) -> Result<ReplicationSummary, ScenarioError> {
    let outcome = EdSimulation::run(&cfg.params, cfg.base_seed, rep, cfg.end(), SimOptions::default())?;
    let (lo, hi) = cfg.window();
    let inside = |t: f64| t >= lo && t < hi;

    let mut by_esi = [Stratum::default(); 5];
    let mut strata = [[Stratum::default(); 4]; 5];
    let (mut b2d, mut d2d, mut wait, mut share) = (0.0, 0.0, 0.0, 0.0);
    let mut n = 0usize;
    for r in outcome.records.iter().filter(|r| inside(r.bed_assigned)) {
        let e = r.esi.index();
        by_esi[e].add(r.time_in_ed);
        strata[e][r.order_count().min(3)].add(r.time_in_ed);
        b2d += r.bed_to_disposition;
        d2d += r.disposition_to_departure;
        wait += r.waiting_room;
        share += r.direct_care_share();
        n += 1;
    }
    if n == 0 {
        return Err(ScenarioError::EmptyReplication { rep });
    }
    let total: f64 = by_esi.iter().map(|s| s.sum).sum();
    let nf = n as f64;
    Ok(ReplicationSummary {
        replication: rep,
        esi_mean: by_esi.map(|s| s.mean().unwrap_or(0.0)),
        esi_count: by_esi.map(|s| s.count),
        overall_mean: total / nf,
        patients: n,
        bed_to_disposition: b2d / nf,
        disposition_to_departure: d2d / nf,
        waiting_room: wait / nf,
        direct_care_share: share / nf,
        order_strata: strata,
        censored: outcome.unfinished_bed_times.iter().filter(|&&t| inside(t)).count(),
        physician_utilization: outcome.physician_utilization,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioResult {
    pub replications: Vec<ReplicationSummary>,
    pub overall: ConfidenceInterval,
    pub per_esi: [ConfidenceInterval; 5],
}

impl ScenarioResult {
    pub fn overall_means(&self) -> Vec<f64> {
        self.replications.iter().map(|r| r.overall_mean).collect()
    }

    /// Time-in-ED strata pooled over all replications.
    pub fn pooled_strata(&self) -> [[Stratum; 4]; 5] {
        let mut out = [[Stratum::default(); 4]; 5];
        for r in &self.replications {
            for (row, src) in out.iter_mut().zip(&r.order_strata) {
                for (s, o) in row.iter_mut().zip(src) {
                    s.merge(*o);
                }
            }
        }
        out
    }

    fn average(&self, f: impl Fn(&ReplicationSummary) -> f64) -> f64 {
        self.replications.iter().map(f).sum::<f64>() / self.replications.len() as f64
    }

    pub fn mean_direct_care_share(&self) -> f64 {
        self.average(|r| r.direct_care_share)
    }

    pub fn mean_utilization(&self) -> f64 {
        self.average(|r| r.physician_utilization)
    }

    pub fn mean_waiting_room(&self) -> f64 {
        self.average(|r| r.waiting_room)
    }

    pub fn censored(&self) -> usize {
        self.replications.iter().map(|r| r.censored).sum()
    }
}

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioResult, ScenarioError> {
    let replications = (0..cfg.replications)
        .into_par_iter()
        .map(|i| run_replication(cfg, i))
        .collect::<Result<Vec<_>, _>>()?;
    summarize(replications, cfg.alpha)
}

fn summarize(replications: Vec<ReplicationSummary>, alpha: f64) -> Result<ScenarioResult, ScenarioError> {
    let overall = mean_ci(
        &replications.iter().map(|r| r.overall_mean).collect::<Vec<_>>(),
        alpha,
    )?;
    let mut per_esi = [overall; 5];
    for (e, ci) in per_esi.iter_mut().enumerate() {
        let means: Vec<f64> = replications
            .iter()
            .filter(|r| r.esi_count[e] > 0)
            .map(|r| r.esi_mean[e])
            .collect();
        *ci = mean_ci(&means, alpha)?;
    }
    Ok(ScenarioResult {
        replications,
        overall,
        per_esi,
    })
}

/// Paired comparison of a scenario against its baseline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Comparison {
    /// Scenario mean minus baseline mean, minutes.
    pub difference: f64,
    /// Signed percent change; reductions are negative.
    pub pct_change: f64,
    pub paired: TTestResult,
    pub welch: TTestResult,
}

pub fn compare(baseline: &ScenarioResult, scenario: &ScenarioResult, alpha: f64) -> Result<Comparison, ScenarioError> {
    let a = baseline.overall_means();
    let b = scenario.overall_means();
    let diffs: Vec<f64> = b.iter().zip(&a).map(|(s, base)| s - base).collect();
    let difference = diffs.iter().sum::<f64>() / diffs.len() as f64;
    Ok(Comparison {
        difference,
        pct_change: 100.0 * difference / baseline.overall.mean,
        paired: paired_t(&diffs, alpha)?,
        welch: welch_t(&b, &a, alpha)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dimension {
    Otb,
    Etr,
    Both,
}

impl Dimension {
    pub const ALL: [Dimension; 3] = [Dimension::Otb, Dimension::Etr, Dimension::Both];

    pub fn reductions(self, level: f64) -> Reductions {
        match self {
            Dimension::Otb => Reductions::new(level, 0.0),
            Dimension::Etr => Reductions::new(0.0, level),
            Dimension::Both => Reductions::new(level, level),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dimension::Otb => "otb",
            Dimension::Etr => "etr",
            Dimension::Both => "both",
        })
    }
}

impl FromStr for Dimension {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "otb" => Ok(Dimension::Otb),
            "etr" => Ok(Dimension::Etr),
            "both" => Ok(Dimension::Both),
            other => Err(format!("unknown dimension `{other}` (expected otb, etr or both)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub level: f64,
    pub dimension: Dimension,
    pub result: ScenarioResult,
    pub comparison: Comparison,
}

impl SweepRow {
    pub fn pct_reduction(&self) -> f64 {
        -self.comparison.pct_change
    }

    pub fn reduction_min(&self) -> f64 {
        -self.comparison.difference
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub baseline: ScenarioResult,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn row(&self, dimension: Dimension, level: f64) -> Option<&SweepRow> {
        self.rows
            .iter()
            .find(|r| r.dimension == dimension && r.level == level)
    }
}

/// Runs the baseline, then every (dimension, level) pair against it.
///
/// The baseline uses the reductions already in `cfg`; levels replace them.
pub fn sweep_delays(
    cfg: &ScenarioConfig,
    levels: &[f64],
    dimensions: &[Dimension],
) -> Result<SweepTable, ScenarioError> {
    if let Some(&bad) = levels.iter().find(|l| !(0.0..=1.0).contains(*l)) {
        return Err(ConfigError::invalid("levels", format!("{bad} is outside [0, 1]")).into());
    }
    let baseline = run_scenario(cfg)?;
    let mut rows = Vec::new();
    for &dimension in dimensions {
        for &level in levels {
            let result = run_scenario(&cfg.with_reductions(dimension.reductions(level)))?;
            let comparison = compare(&baseline, &result, cfg.alpha)?;
            rows.push(SweepRow {
                level,
                dimension,
                result,
                comparison,
            });
        }
    }
    Ok(SweepTable { baseline, rows })
}

/// A named replacement for the order-count profile.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BundlingScenario {
    pub name: String,
    pub profile: [[f64; 4]; 5],
}

impl BundlingScenario {
    pub fn new(name: impl Into<String>, profile: [[f64; 4]; 5]) -> Result<Self, ConfigError> {
        let name = name.into();
        for (i, row) in profile.iter().enumerate() {
            let total: f64 = row.iter().sum();
            if row.iter().any(|p| !(0.0..=1.0).contains(p)) || (total - 1.0).abs() > 0.01 {
                return Err(ConfigError::invalid(
                    format!("{name}[{i}]"),
                    format!("order-count probabilities sum to {total}, not 1"),
                ));
            }
        }
        Ok(BundlingScenario { name, profile })
    }

    pub fn order_profile(&self) -> OrderCountProfile {
        OrderCountProfile::from_rows(&self.profile)
    }
}

/// Moves `amount` of probability in ESI row `esi` from `from` orders to `to` orders.
fn shift(rows: &mut [[f64; 4]; 5], esi: usize, from: usize, to: usize, amount: f64) {
    let moved = amount.min(rows[esi - 1][from]);
    rows[esi - 1][from] -= moved;
    rows[esi - 1][to] += moved;
}

/// The eight built-in bundling scenarios, built from `base` (ESI 1-3 only).
///
/// S1-S3 move ten points of two-order mass to one order for ESI 1, 2 and 3;
/// S4-S6 combine them pairwise; S7 folds three-order mass into two orders;
/// S8 folds all multi-order mass into one order.
pub fn builtin_bundling(base: &[[f64; 4]; 5]) -> Vec<BundlingScenario> {
    let make = |f: &dyn Fn(&mut [[f64; 4]; 5])| {
        let mut rows = *base;
        f(&mut rows);
        rows
    };
    let s1 = |r: &mut [[f64; 4]; 5]| shift(r, 1, 2, 1, 0.10);
    let s2 = |r: &mut [[f64; 4]; 5]| shift(r, 2, 2, 1, 0.10);
    let s3 = |r: &mut [[f64; 4]; 5]| shift(r, 3, 2, 1, 0.10);
    let list: Vec<(&str, [[f64; 4]; 5])> = vec![
        ("S1", make(&s1)),
        ("S2", make(&s2)),
        ("S3", make(&s3)),
        ("S4", make(&|r| {
            s1(r);
            s2(r)
        })),
        ("S5", make(&|r| {
            s2(r);
            s3(r)
        })),
        ("S6", make(&|r| {
            s1(r);
            s3(r)
        })),
        ("S7", make(&|r| {
            for esi in 1..=3 {
                shift(r, esi, 3, 2, 1.0);
            }
        })),
        ("S8", make(&|r| {
            for esi in 1..=3 {
                shift(r, esi, 2, 1, 1.0);
                shift(r, esi, 3, 1, 1.0);
            }
        })),
    ];
    list.into_iter()
        .map(|(name, profile)| BundlingScenario {
            name: name.to_string(),
            profile,
        })
        .collect()
}

pub fn bundling_scenario(base: &[[f64; 4]; 5], name: &str) -> Result<BundlingScenario, ScenarioError> {
    if name == "baseline" {
        return Ok(BundlingScenario {
            name: name.into(),
            profile: *base,
        });
    }
    builtin_bundling(base)
        .into_iter()
        .find(|s| s.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| ScenarioError::UnknownScenario(name.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BundlingRow {
    pub name: String,
    pub result: ScenarioResult,
    pub comparison: Comparison,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BundlingTable {
    pub baseline: ScenarioResult,
    pub rows: Vec<BundlingRow>,
}

impl BundlingTable {
    pub fn row(&self, name: &str) -> Option<&BundlingRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

pub fn sweep_bundling(
    cfg: &ScenarioConfig,
    scenarios: &[BundlingScenario],
) -> Result<BundlingTable, ScenarioError> {
    let baseline = run_scenario(cfg)?;
    let mut rows = Vec::new();
    for s in scenarios {
        let result = run_scenario(&cfg.with_orders(s.order_profile()))?;
        let comparison = compare(&baseline, &result, cfg.alpha)?;
        rows.push(BundlingRow {
            name: s.name.clone(),
            result,
            comparison,
        });
    }
    Ok(BundlingTable { baseline, rows })
}

/// A multiplier the calibration search may move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Knob {
    Departure(EsiLevel),
    ImagingEsi(EsiLevel),
    OrderToBegin,
    BeginToEnd,
    EndToRead,
    Charting,
}

impl Knob {
    fn value(self, c: &CalibrationConfig) -> f64 {
        match self {
            Knob::Departure(e) => c.departure_scale[e.index()],
            Knob::ImagingEsi(e) => c.imaging_esi_scale[e.index()],
            Knob::OrderToBegin => c.order_to_begin_scale,
            Knob::BeginToEnd => c.begin_to_end_scale,
            Knob::EndToRead => c.end_to_read_scale,
            Knob::Charting => c.charting_scale,
        }
    }

    fn set(self, c: &mut CalibrationConfig, v: f64) {
        match self {
            Knob::Departure(e) => c.departure_scale[e.index()] = v,
            Knob::ImagingEsi(e) => c.imaging_esi_scale[e.index()] = v,
            Knob::OrderToBegin => c.order_to_begin_scale = v,
            Knob::BeginToEnd => c.begin_to_end_scale = v,
            Knob::EndToRead => c.end_to_read_scale = v,
            Knob::Charting => c.charting_scale = v,
        }
    }

    /// The ESI level whose error steers this knob; `None` for global knobs.
    fn target(self) -> Option<EsiLevel> {
        match self {
            Knob::Departure(e) | Knob::ImagingEsi(e) => Some(e),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KnobBounds {
    pub knob: Knob,
    pub lo: f64,
    pub hi: f64,
}

impl KnobBounds {
    /// Per-ESI departure multipliers within `[lo, hi]`.
    pub fn departure(lo: f64, hi: f64) -> Vec<KnobBounds> {
        EsiLevel::ALL
            .into_iter()
            .map(|e| KnobBounds {
                knob: Knob::Departure(e),
                lo,
                hi,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationOptions {
    pub max_rounds: usize,
    pub bisection_steps: usize,
    /// Stop once every ESI is within this relative error.
    pub tolerance: f64,
    /// Give up with an error if the best max relative error exceeds this.
    pub failure_limit: f64,
}

impl Default for CalibrationOptions {
    fn default() -> Self {
        CalibrationOptions {
            max_rounds: 20,
            bisection_steps: 8,
            tolerance: 0.01,
            failure_limit: 0.10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CalibrationResult {
    pub calibration: CalibrationConfig,
    pub means: [f64; 5],
    /// Signed relative error by ESI, (simulated - target) / target.
    pub errors: [f64; 5],
    pub max_error: f64,
    pub rounds: usize,
    pub evaluations: usize,
}

struct Probe {
    means: [f64; 5],
    errors: [f64; 5],
    max_error: f64,
}

impl Probe {
    fn total_error(&self) -> f64 {
        self.errors.iter().map(|e| e.abs()).sum()
    }
}

/// Cyclic coordinate search: each knob in turn is bisected towards zero
/// error on its ESI (global knobs use the patient-weighted mean error), and
/// rounds repeat until the tolerance is met or `max_rounds` pass.
pub fn calibrate(
    cfg: &RunConfig,
    targets: [f64; 5],
    knobs: &[KnobBounds],
    opts: CalibrationOptions,
) -> Result<CalibrationResult, ScenarioError> {
    if targets.iter().any(|t| t.is_nan() || *t <= 0.0) {
        return Err(ConfigError::invalid("targets", "calibration targets must be positive").into());
    }
    let mut evaluations = 0usize;
    let mut probe = |c: &CalibrationConfig| -> Result<(Probe, [usize; 5]), ScenarioError> {
        let mut run = cfg.clone();
        run.calibration = c.clone();
        let result = run_scenario(&ScenarioConfig::from_run_config(&run)?)?;
        evaluations += 1;
        let means = result.per_esi.map(|ci| ci.mean);
        let mut counts = [0usize; 5];
        for r in &result.replications {
            for (c, n) in counts.iter_mut().zip(r.esi_count) {
                *c += n;
            }
        }
        let errors = std::array::from_fn(|i| (means[i] - targets[i]) / targets[i]);
        let max_error = errors.iter().fold(0.0f64, |m, e| m.max(e.abs()));
        Ok((
            Probe {
                means,
                errors,
                max_error,
            },
            counts,
        ))
    };
    let steer = |p: &Probe, counts: &[usize; 5], knob: Knob| match knob.target() {
        Some(e) => p.errors[e.index()],
        None => {
            let n: usize = counts.iter().sum();
            p.errors
                .iter()
                .zip(counts)
                .map(|(e, c)| e * *c as f64)
                .sum::<f64>()
                / n.max(1) as f64
        }
    };

    let mut best_cal = cfg.calibration.clone();
    let (mut best, mut counts) = probe(&best_cal)?;
    let mut rounds = 0;
    while best.max_error > opts.tolerance && rounds < opts.max_rounds {
        rounds += 1;
        let before = best.total_error();
        for kb in knobs {
            let err = steer(&best, &counts, kb.knob);
            if err.abs() <= opts.tolerance {
                continue;
            }
            let current = kb.knob.value(&best_cal);
            // Every knob lengthens time-in-ED as it grows.
            let (mut lo, mut hi) = if err < 0.0 {
                (current, kb.hi)
            } else {
                (kb.lo, current)
            };
            for _ in 0..opts.bisection_steps {
                let mid = 0.5 * (lo + hi);
                let mut trial = best_cal.clone();
                kb.knob.set(&mut trial, mid);
                let (p, c) = probe(&trial)?;
                let e = steer(&p, &c, kb.knob);
                if p.total_error() < best.total_error() {
                    best = p;
                    counts = c;
                    best_cal = trial;
                }
                if e < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if e.abs() <= opts.tolerance * 0.5 {
                    break;
                }
            }
        }
        if best.total_error() >= before - 1e-6 {
            break;
        }
    }
    if best.max_error > opts.failure_limit {
        return Err(ScenarioError::Calibration {
            achieved: best.max_error,
            limit: opts.failure_limit,
        });
    }
    Ok(CalibrationResult {
        calibration: best_cal,
        means: best.means,
        errors: best.errors,
        max_error: best.max_error,
        rounds,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::BASELINE_ORDER_SHARES;

    #[test]
    fn builtin_scenarios_keep_rows_normalized() {
        for s in builtin_bundling(&BASELINE_ORDER_SHARES) {
            for (i, row) in s.profile.iter().enumerate() {
                let base: f64 = BASELINE_ORDER_SHARES[i].iter().sum();
                let total: f64 = row.iter().sum();
                assert!((total - base).abs() < 1e-12, "{} row {i}", s.name);
                assert_eq!(row[0], BASELINE_ORDER_SHARES[i][0]);
            }
            assert_eq!(s.profile[3], BASELINE_ORDER_SHARES[3]);
            assert_eq!(s.profile[4], BASELINE_ORDER_SHARES[4]);
        }
    }

    #[test]
    fn s8_has_single_orders_only() {
        let s8 = bundling_scenario(&BASELINE_ORDER_SHARES, "S8").unwrap();
        for row in &s8.profile[..3] {
            assert_eq!(row[2], 0.0);
            assert_eq!(row[3], 0.0);
        }
        assert!((s8.profile[0][1] - 0.907).abs() < 1e-9);
    }

    #[test]
    fn s1_moves_ten_points() {
        let s1 = bundling_scenario(&BASELINE_ORDER_SHARES, "s1").unwrap();
        assert!((s1.profile[0][1] - 0.733).abs() < 1e-9);
        assert!((s1.profile[0][2] - 0.122).abs() < 1e-9);
    }

    #[test]
    fn unknown_scenario_is_an_error() {
        assert!(matches!(
            bundling_scenario(&BASELINE_ORDER_SHARES, "S9"),
            Err(ScenarioError::UnknownScenario(_))
        ));
    }

    #[test]
    fn dimension_parses() {
        assert_eq!("both".parse::<Dimension>().unwrap(), Dimension::Both);
        assert!("all".parse::<Dimension>().is_err());
        assert_eq!(Dimension::Etr.reductions(0.3), Reductions::new(0.0, 0.3));
    }

    #[test]
    fn bad_override_row_is_rejected() {
        let mut rows = BASELINE_ORDER_SHARES;
        rows[2] = [0.3, 0.5, 0.1, 0.0];
        assert!(BundlingScenario::new("custom", rows).is_err());
    }
}
