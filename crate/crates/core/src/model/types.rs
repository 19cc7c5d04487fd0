use std::fmt;

use serde::{Deserialize, Serialize};

use crate::stochastic::{CategoricalDist, TriangularDist};

pub type PatientId = u64;
pub type PhysicianId = usize;
pub type PodId = usize;

/// Emergency Severity Index, 1 (most urgent) to 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct EsiLevel(u8);

impl EsiLevel {
    pub const ALL: [EsiLevel; 5] = [EsiLevel(1), EsiLevel(2), EsiLevel(3), EsiLevel(4), EsiLevel(5)];

    pub fn new(level: u8) -> Option<Self> {
        (1..=5).contains(&level).then_some(EsiLevel(level))
    }

    pub fn from_index(idx: usize) -> Self {
        Self::ALL[idx]
    }

    pub fn level(self) -> u8 {
        self.0
    }

    /// Zero-based position, for per-ESI arrays.
    pub fn index(self) -> usize {
        (self.0 - 1) as usize
    }

    /// Physician interactions per visit: 4 for ESI 1, 3 for ESI 2-3, 2 for ESI 4-5.
    pub fn interactions(self) -> usize {
        match self.0 {
            1 => 4,
            2 | 3 => 3,
            _ => 2,
        }
    }

    pub fn is_high_severity(self) -> bool {
        self.0 <= 2
    }
}

impl TryFrom<u8> for EsiLevel {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        EsiLevel::new(v).ok_or_else(|| format!("ESI level must be 1..=5, got {v}"))
    }
}

impl From<EsiLevel> for u8 {
    fn from(e: EsiLevel) -> u8 {
        e.0
    }
}

impl fmt::Display for EsiLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ESI {}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DispositionKind {
    Admit,
    Discharge,
}

/// One imaging order and its three-interval cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImagingOrder {
    pub patient: PatientId,
    pub placed_at: f64,
    pub begin_at: f64,
    pub end_at: f64,
    pub read_at: f64,
    pub image_count: u32,
}

impl ImagingOrder {
    pub fn order_to_begin(&self) -> f64 {
        self.begin_at - self.placed_at
    }

    pub fn begin_to_end(&self) -> f64 {
        self.end_at - self.begin_at
    }

    pub fn end_to_read(&self) -> f64 {
        self.read_at - self.end_at
    }
}

/// Base distributions of the three imaging intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImagingCycleParams {
    pub order_to_begin: TriangularDist,
    pub begin_to_end: TriangularDist,
    pub end_to_read: TriangularDist,
}

impl Default for ImagingCycleParams {
    fn default() -> Self {
        ImagingCycleParams {
            order_to_begin: TriangularDist::new(10.0, 25.0, 55.0).unwrap(),
            begin_to_end: TriangularDist::new(5.0, 10.0, 21.0).unwrap(),
            end_to_read: TriangularDist::new(5.0, 15.0, 34.0).unwrap(),
        }
    }
}

impl ImagingCycleParams {
    pub fn mean_cycle(&self) -> f64 {
        self.order_to_begin.mean() + self.begin_to_end.mean() + self.end_to_read.mean()
    }
}

/// Fractional cuts applied to the order-to-begin and end-to-read delays.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Reductions {
    pub order_to_begin: f64,
    pub end_to_read: f64,
}

impl Reductions {
    pub const NONE: Reductions = Reductions {
        order_to_begin: 0.0,
        end_to_read: 0.0,
    };

    pub fn new(order_to_begin: f64, end_to_read: f64) -> Self {
        Reductions {
            order_to_begin,
            end_to_read,
        }
    }
}

/// Per-ESI distribution over the number of imaging orders, 0 to 3.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderCountProfile {
    rows: [CategoricalDist<usize>; 5],
}

/// Table of observed order-count shares by ESI (columns 0, 1, 2, 3 orders).
#[allow(clippy::approx_constant)] // observed shares, not 1/pi
pub const BASELINE_ORDER_SHARES: [[f64; 4]; 5] = [
    [0.093, 0.633, 0.222, 0.052],
    [0.318, 0.520, 0.133, 0.029],
    [0.360, 0.520, 0.100, 0.021],
    [0.628, 0.340, 0.028, 0.000],
    [0.943, 0.057, 0.000, 0.000],
];

impl OrderCountProfile {
    /// Rows are normalized; callers validate them first.
    pub fn from_rows(rows: &[[f64; 4]; 5]) -> Self {
        let make = |r: &[f64; 4]| {
            CategoricalDist::new(r.iter().copied().enumerate().collect())
                .expect("validated order-count row")
        };
        OrderCountProfile {
            rows: [
                make(&rows[0]),
                make(&rows[1]),
                make(&rows[2]),
                make(&rows[3]),
                make(&rows[4]),
            ],
        }
    }

    pub fn row(&self, esi: EsiLevel) -> &CategoricalDist<usize> {
        &self.rows[esi.index()]
    }

    pub fn pick(&self, esi: EsiLevel, u: f64) -> usize {
        self.rows[esi.index()].pick(u)
    }

    pub fn expected_orders(&self, esi: EsiLevel) -> f64 {
        self.row(esi)
            .probabilities()
            .iter()
            .enumerate()
            .map(|(k, p)| k as f64 * p)
            .sum()
    }
}

impl Default for OrderCountProfile {
    fn default() -> Self {
        Self::from_rows(&BASELINE_ORDER_SHARES)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PodSpec {
    pub beds: usize,
    pub trauma_bays: usize,
    pub accepts: [bool; 5],
    pub high_severity_staff: bool,
}

impl PodSpec {
    pub fn trauma_capable(&self) -> bool {
        self.accepts[0]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftTemplate {
    pub pod: PodId,
    pub start_hour: f64,
    pub end_hour: f64,
    pub count: usize,
}

impl ShiftTemplate {
    pub fn length_hours(&self) -> f64 {
        if self.end_hour > self.start_hour {
            self.end_hour - self.start_hour
        } else {
            self.end_hour + 24.0 - self.start_hour
        }
    }
}

/// Live bed state of one pod.
#[derive(Debug, Clone, PartialEq)]
pub struct Pod {
    pub id: PodId,
    pub capacity: usize,
    pub occupied: usize,
    pub trauma_bays: usize,
    pub trauma_occupied: usize,
    pub accepts: [bool; 5],
}

impl Pod {
    pub fn from_spec(id: PodId, spec: &PodSpec) -> Self {
        Pod {
            id,
            capacity: spec.beds,
            occupied: 0,
            trauma_bays: spec.trauma_bays,
            trauma_occupied: 0,
            accepts: spec.accepts,
        }
    }

    pub fn accepts(&self, esi: EsiLevel) -> bool {
        self.accepts[esi.index()]
    }

    pub fn free_beds(&self) -> usize {
        self.capacity - self.occupied
    }

    pub fn trauma_capable(&self) -> bool {
        self.accepts[0]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BedKind {
    Bed,
    TraumaBay,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placement {
    pub pod: PodId,
    pub kind: BedKind,
}
