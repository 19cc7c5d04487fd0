//! CSV tables with fixed precision: minutes and percents to one decimal,
//! p-values to four.

use std::fmt::Write;
use std::io;

use crate::model::EventLogEntry;

use crate::scenario::{BundlingTable, Dimension, ScenarioResult, SweepTable};

/// Formats with `digits` decimals and never prints a negative zero.
pub fn fixed(x: f64, digits: usize) -> String {
    let s = format!("{:.*}", digits, x);
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn table4_csv(result: &ScenarioResult, targets: &[f64; 5]) -> String {
    let mut out = String::from("esi,actual_min,simulated_min,ci_half_width,percent_diff\n");
    for (i, ci) in result.per_esi.iter().enumerate() {
        let actual = targets[i];
        let pct = (100.0 * (ci.mean - actual).abs() / actual).round();
        writeln!(
            out,
            "{},{},{},{},{}",
            i + 1,
            fixed(actual, 1),
            fixed(ci.mean, 1),
            fixed(ci.half_width, 1),
            fixed(pct, 0)
        )
        .unwrap();
    }
    out
}

/// Rows of `table` whose dimension is in `dimensions`.
pub fn sweep_csv(table: &SweepTable, dimensions: &[Dimension]) -> String {
    let mut out = String::from("level,dimension,pct_reduction,reduction_min,p_value\n");
    for row in table.rows.iter().filter(|r| dimensions.contains(&r.dimension)) {
        writeln!(
            out,
            "{},{},{},{},{}",
            fixed(row.level, 2),
            row.dimension,
            fixed(row.pct_reduction(), 1),
            fixed(row.reduction_min(), 1),
            fixed(row.comparison.paired.p_value, 4)
        )
        .unwrap();
    }
    out
}

pub fn bundling_csv(table: &BundlingTable) -> String {
    let mut out = String::from("scenario,pct_change,p_value,significant\n");
    for row in &table.rows {
        writeln!(
            out,
            "{},{},{},{}",
            row.name,
            fixed(row.comparison.pct_change, 1),
            fixed(row.comparison.paired.p_value, 4),
            row.comparison.paired.significant
        )
        .unwrap();
    }
    out
}

/// Per-replication summary of a single scenario.
pub fn replications_csv(result: &ScenarioResult) -> String {
    let mut out = String::from(
        "replication,patients,overall_min,esi1_min,esi2_min,esi3_min,esi4_min,esi5_min,bed_to_disposition_min,disposition_to_departure_min,waiting_room_min,direct_care_share,censored\n",
    );
    for r in &result.replications {
        write!(out, "{},{},{}", r.replication, r.patients, fixed(r.overall_mean, 1)).unwrap();
        for m in r.esi_mean {
            write!(out, ",{}", fixed(m, 1)).unwrap();
        }
        writeln!(
            out,
            ",{},{},{},{},{}",
            fixed(r.bed_to_disposition, 1),
            fixed(r.disposition_to_departure, 1),
            fixed(r.waiting_room, 1),
            fixed(r.direct_care_share, 4),
            r.censored
        )
        .unwrap();
    }
    out
}

/// Pooled time-in-ED by ESI and imaging-order count.
pub fn strata_csv(result: &ScenarioResult) -> String {
    let mut out = String::from("esi,orders,patients,mean_min\n");
    for (e, row) in result.pooled_strata().iter().enumerate() {
        for (k, s) in row.iter().enumerate() {
            if let Some(m) = s.mean() {
                writeln!(out, "{},{k},{},{}", e + 1, s.count, fixed(m, 1)).unwrap();
            }
        }
    }
    out
}

/// One JSON object per line.
pub fn write_event_log(out: &mut impl io::Write, entries: &[EventLogEntry]) -> io::Result<()> {
    for e in entries {
        serde_json::to_writer(&mut *out, e)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
