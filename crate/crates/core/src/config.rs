//! Declarative run configuration, read from TOML.
//!
//! Every section is optional and falls back to the built-in defaults. Unknown
//! keys are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::model::{
    EsiLevel, ImagingCycleParams, ModelParams, OrderCountProfile, PodSpec, Reductions,
    ShiftTemplate, BASELINE_ORDER_SHARES,
};
use crate::stochastic::{ArrivalProfile, CategoricalDist, TriangularDist, DAYS_PER_WEEK, HOURS_PER_DAY};

/// Tolerance on probability rows before they are normalized.
const PMF_TOLERANCE: f64 = 0.01;

pub type Tria = [f64; 3];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub arrivals: ArrivalsConfig,
    pub patients: PatientsConfig,
    pub orders: OrdersConfig,
    pub evaluations: EvaluationsConfig,
    pub imaging: ImagingConfig,
    pub disposition: DispositionConfig,
    pub layout: LayoutConfig,
    pub staffing: StaffingConfig,
    pub calibration: CalibrationConfig,
    pub scenario: ScenarioSection,
    pub replication: ReplicationConfig,
    pub validation: ValidationConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ArrivalsConfig {
    /// Patients per hour, one row of 24 per weekday starting Monday.
    pub rates: Vec<Vec<f64>>,
}

impl Default for ArrivalsConfig {
    fn default() -> Self {
        ArrivalsConfig {
            rates: ArrivalProfile::default()
                .rates()
                .iter()
                .map(|r| r.to_vec())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PatientsConfig {
    pub esi_mix: [f64; 5],
    /// Share of ESI 1 arrivals taken straight to a trauma bay.
    pub trauma_bypass: f64,
    pub triage: Tria,
    /// Probability of 1, 2, 3, ... images per order.
    pub image_count: Vec<f64>,
}

impl Default for PatientsConfig {
    fn default() -> Self {
        PatientsConfig {
            esi_mix: [0.031, 0.235, 0.472, 0.228, 0.034],
            trauma_bypass: 0.5,
            triage: [3.0, 5.0, 8.0],
            image_count: vec![0.70, 0.20, 0.09, 0.01],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OrdersConfig {
    /// Share of patients with 0, 1, 2, 3 imaging orders, one row per ESI.
    pub profile: [[f64; 4]; 5],
}

impl Default for OrdersConfig {
    fn default() -> Self {
        OrdersConfig {
            profile: BASELINE_ORDER_SHARES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvaluationsConfig {
    /// Physician visit lengths, one list per ESI, one triangle per interaction.
    pub visits: Vec<Vec<Tria>>,
    pub charting: Tria,
    /// Chance of going straight to another patient after a follow-up visit.
    pub chain_probability: f64,
    /// Minutes of receiving-physician time per handed-off patient.
    pub handoff_minutes: f64,
    /// A physician who started within this many minutes counts as arriving.
    pub handoff_window: f64,
}

impl Default for EvaluationsConfig {
    fn default() -> Self {
        EvaluationsConfig {
            visits: vec![
                vec![[13.0, 14.0, 15.0], [8.0, 9.0, 10.0], [8.0, 9.0, 10.0], [2.0, 3.0, 4.0]],
                vec![[9.0, 10.0, 11.0], [15.0, 16.0, 17.0], [7.0, 8.0, 9.0]],
                vec![[8.0, 9.0, 10.0], [14.0, 15.0, 16.0], [7.0, 8.0, 9.0]],
                vec![[10.0, 11.0, 12.0], [5.0, 6.0, 7.0]],
                vec![[10.0, 11.0, 12.0], [6.0, 7.0, 8.0]],
            ],
            charting: [4.0, 6.0, 9.0],
            chain_probability: 0.4,
            handoff_minutes: 1.0,
            handoff_window: 60.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ImagingConfig {
    pub order_to_begin: Tria,
    pub begin_to_end: Tria,
    pub end_to_read: Tria,
    pub min_order_separation: f64,
}

impl Default for ImagingConfig {
    fn default() -> Self {
        ImagingConfig {
            order_to_begin: [10.0, 25.0, 55.0],
            begin_to_end: [5.0, 10.0, 21.0],
            end_to_read: [5.0, 15.0, 34.0],
            min_order_separation: 20.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DispositionConfig {
    pub admit_probability: [f64; 5],
    pub discharge: Tria,
    pub admit: Tria,
}

impl Default for DispositionConfig {
    fn default() -> Self {
        DispositionConfig {
            admit_probability: [0.85, 0.45, 0.30, 0.05, 0.02],
            discharge: [10.0, 20.0, 40.0],
            admit: [30.0, 60.0, 120.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PodConfig {
    pub beds: usize,
    #[serde(default)]
    pub trauma_bays: usize,
    /// ESI levels this pod takes.
    pub accepts: Vec<u8>,
    /// Whether physicians staffing this pod may take ESI 1 and 2 patients.
    #[serde(default = "yes")]
    pub high_severity_staff: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LayoutConfig {
    pub pods: Vec<PodConfig>,
}

impl Default for LayoutConfig {
    fn default() -> Self {
        let general = |trauma_bays| PodConfig {
            beds: 12,
            trauma_bays,
            accepts: vec![1, 2, 3, 4, 5],
            high_severity_staff: true,
        };
        let low = || PodConfig {
            beds: 12,
            trauma_bays: 0,
            accepts: vec![3, 4, 5],
            high_severity_staff: false,
        };
        LayoutConfig {
            pods: vec![general(2), general(0), low(), low()],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftConfig {
    pub pod: usize,
    pub start_hour: f64,
    /// May be smaller than `start_hour` for shifts that cross midnight.
    pub end_hour: f64,
    #[serde(default = "one")]
    pub count: usize,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StaffingConfig {
    pub shifts: Vec<ShiftConfig>,
}

impl Default for StaffingConfig {
    fn default() -> Self {
        let mut shifts = Vec::new();
        for pod in 0..4 {
            for (start_hour, end_hour, count) in [(7.0, 16.0, 4), (15.0, 24.0, 4), (23.0, 8.0, 2)] {
                shifts.push(ShiftConfig {
                    pod,
                    start_hour,
                    end_hour,
                    count,
                });
            }
        }
        StaffingConfig { shifts }
    }
}

/// Multipliers fitted so simulated time-in-ED matches observed means.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CalibrationConfig {
    pub order_to_begin_scale: f64,
    pub begin_to_end_scale: f64,
    pub end_to_read_scale: f64,
    /// Extra imaging multiplier per ESI.
    pub imaging_esi_scale: [f64; 5],
    pub charting_scale: f64,
    /// Multiplier on the disposition-to-departure delay per ESI.
    pub departure_scale: [f64; 5],
}

impl CalibrationConfig {
    /// This section alone, ready to paste into a config file.
    pub fn to_toml_section(&self) -> String {
        #[derive(Serialize)]
        struct Wrapper<'a> {
            calibration: &'a CalibrationConfig,
        }
        toml::to_string(&Wrapper { calibration: self }).expect("calibration serializes")
    }
}

impl Default for CalibrationConfig {
    fn default() -> Self {
        CalibrationConfig {
            order_to_begin_scale: 2.3,
            begin_to_end_scale: 3.75,
            end_to_read_scale: 1.5,
            // ESI-1 studies are read stat; a full-length cycle for them
            // would dominate the short ESI-1 stay.
            imaging_esi_scale: [0.1, 1.0, 1.0, 0.5, 1.0],
            charting_scale: 1.0,
            departure_scale: [1.237, 1.895, 1.545, 0.4197, 1.578],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioSection {
    pub r_otb: f64,
    pub r_etr: f64,
    /// Replaces `orders.profile` when present.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_override: Option<[[f64; 4]; 5]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReplicationConfig {
    pub count: u32,
    /// Measured span in minutes, after the warm-up.
    pub horizon: f64,
    pub warmup: f64,
    /// Extra minutes simulated after the horizon so late patients can leave.
    pub drain: f64,
    pub seed: u64,
}

impl Default for ReplicationConfig {
    fn default() -> Self {
        ReplicationConfig {
            count: 60,
            horizon: 30240.0,
            warmup: 2880.0,
            drain: 1440.0,
            seed: 20230401,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ValidationConfig {
    /// Observed mean time-in-ED by ESI, minutes.
    pub targets: [f64; 5],
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig {
            targets: [149.0, 261.0, 228.0, 106.0, 122.0],
        }
    }
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Checks every value and builds the model parameters, which performs the
    /// remaining distribution checks.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.model_params().map(|_| ())
    }

    pub fn reductions(&self) -> Reductions {
        Reductions::new(self.scenario.r_otb, self.scenario.r_etr)
    }

    pub fn model_params(&self) -> Result<ModelParams, ConfigError> {
        let cal = &self.calibration;

        let arrivals = arrival_profile(&self.arrivals.rates)?;

        let p = &self.patients;
        let esi_mix = pmf("patients.esi_mix", &p.esi_mix)?;
        let esi_mix = CategoricalDist::new(EsiLevel::ALL.into_iter().zip(esi_mix).collect())
            .map_err(|e| ConfigError::invalid("patients.esi_mix", e.to_string()))?;
        probability("patients.trauma_bypass", p.trauma_bypass)?;
        let triage = tria("patients.triage", p.triage)?;
        let counts = pmf("patients.image_count", &p.image_count)?;
        let image_counts = CategoricalDist::new((1u32..).zip(counts).collect())
            .map_err(|e| ConfigError::invalid("patients.image_count", e.to_string()))?;

        let orders = order_profile("orders.profile", &self.orders.profile)?;
        let orders = match &self.scenario.order_override {
            Some(rows) => order_profile("scenario.order_override", rows)?,
            None => orders,
        };

        let ev = &self.evaluations;
        if ev.visits.len() != 5 {
            return Err(ConfigError::invalid(
                "evaluations.visits",
                format!("need one row per ESI level, got {}", ev.visits.len()),
            ));
        }
        let mut evaluations: [Vec<TriangularDist>; 5] = Default::default();
        for (i, row) in ev.visits.iter().enumerate() {
            let esi = EsiLevel::from_index(i);
            if row.len() != esi.interactions() {
                return Err(ConfigError::invalid(
                    format!("evaluations.visits[{i}]"),
                    format!(
                        "{esi} has {} interactions, got {} triangles",
                        esi.interactions(),
                        row.len()
                    ),
                ));
            }
            for (k, t) in row.iter().enumerate() {
                evaluations[i].push(tria(&format!("evaluations.visits[{i}][{k}]"), *t)?);
            }
        }
        positive("calibration.charting_scale", cal.charting_scale)?;
        let charting = tria("evaluations.charting", ev.charting)?.scaled(cal.charting_scale);
        probability("evaluations.chain_probability", ev.chain_probability)?;
        non_negative("evaluations.handoff_minutes", ev.handoff_minutes)?;
        non_negative("evaluations.handoff_window", ev.handoff_window)?;

        let im = &self.imaging;
        positive("calibration.order_to_begin_scale", cal.order_to_begin_scale)?;
        positive("calibration.begin_to_end_scale", cal.begin_to_end_scale)?;
        positive("calibration.end_to_read_scale", cal.end_to_read_scale)?;
        let imaging = ImagingCycleParams {
            order_to_begin: tria("imaging.order_to_begin", im.order_to_begin)?
                .scaled(cal.order_to_begin_scale),
            begin_to_end: tria("imaging.begin_to_end", im.begin_to_end)?
                .scaled(cal.begin_to_end_scale),
            end_to_read: tria("imaging.end_to_read", im.end_to_read)?
                .scaled(cal.end_to_read_scale),
        };
        non_negative("imaging.min_order_separation", im.min_order_separation)?;
        for (i, &s) in cal.imaging_esi_scale.iter().enumerate() {
            positive(&format!("calibration.imaging_esi_scale[{i}]"), s)?;
        }

        let d = &self.disposition;
        for (i, &a) in d.admit_probability.iter().enumerate() {
            probability(&format!("disposition.admit_probability[{i}]"), a)?;
        }
        let discharge_delay = tria("disposition.discharge", d.discharge)?;
        let admit_delay = tria("disposition.admit", d.admit)?;
        for (i, &s) in cal.departure_scale.iter().enumerate() {
            positive(&format!("calibration.departure_scale[{i}]"), s)?;
        }

        let pods = self.pod_specs()?;
        let shifts = self.shift_templates(&pods)?;

        let s = &self.scenario;
        probability("scenario.r_otb", s.r_otb)?;
        probability("scenario.r_etr", s.r_etr)?;

        let r = &self.replication;
        if r.count < 2 {
            return Err(ConfigError::invalid("replication.count", "need at least 2 replications"));
        }
        positive("replication.horizon", r.horizon)?;
        non_negative("replication.warmup", r.warmup)?;
        non_negative("replication.drain", r.drain)?;
        for (i, &t) in self.validation.targets.iter().enumerate() {
            positive(&format!("validation.targets[{i}]"), t)?;
        }

        Ok(ModelParams {
            arrivals,
            esi_mix,
            trauma_bypass: p.trauma_bypass,
            triage,
            evaluations,
            charting,
            chain_probability: ev.chain_probability,
            handoff_minutes: ev.handoff_minutes,
            handoff_window: ev.handoff_window,
            orders,
            image_counts,
            imaging,
            imaging_esi_scale: cal.imaging_esi_scale,
            min_order_separation: im.min_order_separation,
            admit_probability: d.admit_probability,
            discharge_delay,
            admit_delay,
            departure_scale: cal.departure_scale,
            pods,
            shifts,
            reductions: self.reductions(),
        })
    }

    fn pod_specs(&self) -> Result<Vec<PodSpec>, ConfigError> {
        if self.layout.pods.is_empty() {
            return Err(ConfigError::invalid("layout.pods", "at least one pod is required"));
        }
        let mut specs = Vec::new();
        for (i, pod) in self.layout.pods.iter().enumerate() {
            let key = format!("layout.pods[{i}]");
            let mut accepts = [false; 5];
            for &l in &pod.accepts {
                let esi = EsiLevel::new(l).ok_or_else(|| {
                    ConfigError::invalid(format!("{key}.accepts"), format!("no ESI level {l}"))
                })?;
                accepts[esi.index()] = true;
            }
            if pod.trauma_bays > 0 && !accepts[0] {
                return Err(ConfigError::invalid(
                    format!("{key}.trauma_bays"),
                    "trauma bays need a pod that accepts ESI 1",
                ));
            }
            if accepts[..2].iter().any(|&a| a) && !pod.high_severity_staff {
                return Err(ConfigError::invalid(
                    format!("{key}.high_severity_staff"),
                    "pod accepts ESI 1 or 2 but its physicians may not take them",
                ));
            }
            specs.push(PodSpec {
                beds: pod.beds,
                trauma_bays: pod.trauma_bays,
                accepts,
                high_severity_staff: pod.high_severity_staff,
            });
        }
        for esi in EsiLevel::ALL {
            if !specs.iter().any(|s| s.accepts[esi.index()] && s.beds > 0) {
                return Err(ConfigError::invalid(
                    "layout.pods",
                    format!("no pod with beds accepts {esi}"),
                ));
            }
        }
        Ok(specs)
    }

    fn shift_templates(&self, pods: &[PodSpec]) -> Result<Vec<ShiftTemplate>, ConfigError> {
        let mut out = Vec::new();
        for (i, s) in self.staffing.shifts.iter().enumerate() {
            let key = format!("staffing.shifts[{i}]");
            if s.pod >= pods.len() {
                return Err(ConfigError::invalid(
                    format!("{key}.pod"),
                    format!("no pod {} (layout has {})", s.pod, pods.len()),
                ));
            }
            for (name, h) in [("start_hour", s.start_hour), ("end_hour", s.end_hour)] {
                if !(0.0..=24.0).contains(&h) {
                    return Err(ConfigError::invalid(
                        format!("{key}.{name}"),
                        format!("hour must be within [0, 24], got {h}"),
                    ));
                }
            }
            if s.start_hour == s.end_hour || s.count == 0 {
                return Err(ConfigError::invalid(key, "shift has zero length or zero count"));
            }
            out.push(ShiftTemplate {
                pod: s.pod,
                start_hour: s.start_hour,
                end_hour: s.end_hour,
                count: s.count,
            });
        }
        for (p, _) in pods.iter().enumerate() {
            if !out.iter().any(|s| s.pod == p) {
                return Err(ConfigError::invalid(
                    "staffing.shifts",
                    format!("pod {p} has no shifts"),
                ));
            }
        }
        Ok(out)
    }
}

fn tria(key: &str, t: Tria) -> Result<TriangularDist, ConfigError> {
    TriangularDist::new(t[0], t[1], t[2]).map_err(|e| ConfigError::invalid(key, e.to_string()))
}

fn probability(key: &str, p: f64) -> Result<(), ConfigError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(ConfigError::invalid(key, format!("must be within [0, 1], got {p}")))
    }
}

fn positive(key: &str, v: f64) -> Result<(), ConfigError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(ConfigError::invalid(key, format!("must be positive, got {v}")))
    }
}

fn non_negative(key: &str, v: f64) -> Result<(), ConfigError> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(ConfigError::invalid(key, format!("must be non-negative, got {v}")))
    }
}

/// Checks a probability row and returns it normalized.
fn pmf(key: &str, row: &[f64]) -> Result<Vec<f64>, ConfigError> {
    if row.is_empty() {
        return Err(ConfigError::invalid(key, "empty distribution"));
    }
    for &p in row {
        probability(key, p)?;
    }
    let total: f64 = row.iter().sum();
    if (total - 1.0).abs() > PMF_TOLERANCE {
        return Err(ConfigError::invalid(key, format!("probabilities sum to {total}, not 1")));
    }
    Ok(row.iter().map(|p| p / total).collect())
}

fn order_profile(key: &str, rows: &[[f64; 4]; 5]) -> Result<OrderCountProfile, ConfigError> {
    for (i, row) in rows.iter().enumerate() {
        pmf(&format!("{key}[{i}]"), row)?;
    }
    Ok(OrderCountProfile::from_rows(rows))
}

fn arrival_profile(rows: &[Vec<f64>]) -> Result<ArrivalProfile, ConfigError> {
    let key = "arrivals.rates";
    if rows.len() != DAYS_PER_WEEK {
        return Err(ConfigError::invalid(
            key,
            format!("need {DAYS_PER_WEEK} rows (Monday first), got {}", rows.len()),
        ));
    }
    let mut rates = [[0.0; HOURS_PER_DAY]; DAYS_PER_WEEK];
    for (d, row) in rows.iter().enumerate() {
        if row.len() != HOURS_PER_DAY {
            return Err(ConfigError::invalid(
                format!("{key}[{d}]"),
                format!("need {HOURS_PER_DAY} hourly rates, got {}", row.len()),
            ));
        }
        rates[d].copy_from_slice(row);
    }
    ArrivalProfile::new(rates).map_err(|e| ConfigError::invalid(key, e.to_string()))
}
