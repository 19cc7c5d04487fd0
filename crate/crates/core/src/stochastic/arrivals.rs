use super::RngStream;
use crate::error::DistError;

pub const DAYS_PER_WEEK: usize = 7;
pub const HOURS_PER_DAY: usize = 24;

const MINUTES_PER_HOUR: f64 = 60.0;
const MINUTES_PER_DAY: f64 = 1440.0;

/// Weekly piecewise-constant arrival rate, patients per hour.
///
/// Row 0 is Monday; simulation time 0 is Monday 00:00.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrivalProfile {
    rates: [[f64; HOURS_PER_DAY]; DAYS_PER_WEEK],
    peak: f64,
}

/// Hourly weekday shape, patients per hour (about 308 per day).
const DEFAULT_HOURLY: [f64; HOURS_PER_DAY] = [
    7.0, 7.0, 7.0, 7.0, 7.0, 7.0, 7.0, // 00-06
    10.0, 13.0, 15.0, 17.0, 18.0, // 07-11
    18.0, 18.0, 18.0, 18.0, 18.0, 18.0, 18.0, // 12-18
    16.0, 14.0, 12.0, 10.0, 8.0, // 19-23
];

/// Monday through Sunday.
const DEFAULT_DAY_MULTIPLIERS: [f64; DAYS_PER_WEEK] = [1.08, 1.04, 1.02, 1.00, 1.00, 0.94, 0.92];

impl Default for ArrivalProfile {
    fn default() -> Self {
        let mut rates = [[0.0; HOURS_PER_DAY]; DAYS_PER_WEEK];
        for (row, mult) in rates.iter_mut().zip(DEFAULT_DAY_MULTIPLIERS) {
            for (r, base) in row.iter_mut().zip(DEFAULT_HOURLY) {
                *r = base * mult;
            }
        }
        ArrivalProfile::new(rates).expect("default profile is valid")
    }
}

impl ArrivalProfile {
    pub fn new(rates: [[f64; HOURS_PER_DAY]; DAYS_PER_WEEK]) -> Result<Self, DistError> {
        for (d, row) in rates.iter().enumerate() {
            for (h, &r) in row.iter().enumerate() {
                if !r.is_finite() || r < 0.0 {
                    return Err(DistError::Profile(format!(
                        "rate for day {d} hour {h} must be finite and non-negative, got {r}"
                    )));
                }
            }
        }
        let totals: Vec<f64> = rates.iter().map(|row| row.iter().sum()).collect();
        let weekday_min = totals[..5].iter().cloned().fold(f64::INFINITY, f64::min);
        let weekend_max = totals[5..].iter().cloned().fold(0.0, f64::max);
        if weekday_min + 1e-9 < weekend_max {
            return Err(DistError::Profile(format!(
                "weekday daily totals (min {weekday_min:.3}) must not fall below weekend totals (max {weekend_max:.3})"
            )));
        }
        let peak = rates.iter().flatten().cloned().fold(0.0, f64::max);
        Ok(ArrivalProfile { rates, peak })
    }

    /// Same rate every hour of every day.
    pub fn constant(per_hour: f64) -> Result<Self, DistError> {
        Self::new([[per_hour; HOURS_PER_DAY]; DAYS_PER_WEEK])
    }

    pub fn rates(&self) -> &[[f64; HOURS_PER_DAY]; DAYS_PER_WEEK] {
        &self.rates
    }

    pub fn peak_rate(&self) -> f64 {
        self.peak
    }

    /// Patients per hour in effect at `minutes`.
    pub fn rate_at(&self, minutes: f64) -> f64 {
        let day = ((minutes / MINUTES_PER_DAY).floor() as i64).rem_euclid(DAYS_PER_WEEK as i64);
        let hour = ((minutes.rem_euclid(MINUTES_PER_DAY)) / MINUTES_PER_HOUR) as usize;
        self.rates[day as usize][hour.min(HOURS_PER_DAY - 1)]
    }

    pub fn daily_total(&self, day: usize) -> f64 {
        self.rates[day % DAYS_PER_WEEK].iter().sum()
    }

    /// Next arrival strictly after `now`, by thinning a homogeneous process
    /// at the peak rate.
    pub fn next_arrival(&self, now: f64, stream: &mut RngStream) -> Result<f64, DistError> {
        if self.peak <= 0.0 {
            return Err(DistError::NoArrival);
        }
        let per_minute = self.peak / MINUTES_PER_HOUR;
        let mut t = now;
        loop {
            t += stream.exponential(per_minute);
            if t > now && stream.uniform() * self.peak < self.rate_at(t) {
                return Ok(t);
            }
        }
    }
}
