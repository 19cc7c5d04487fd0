use serde::Serialize;

use crate::error::ModelError;

use super::entities::Patient;
use super::types::{DispositionKind, EsiLevel, ImagingOrder, PatientId};

/// Completed-visit record for one departed patient.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowRecord {
    pub patient: PatientId,
    pub esi: EsiLevel,
    pub arrival: f64,
    pub triage_done: f64,
    pub bed_assigned: f64,
    pub first_eval_start: f64,
    pub disposition: f64,
    pub departure: f64,
    pub time_in_ed: f64,
    pub bed_to_disposition: f64,
    pub disposition_to_departure: f64,
    pub waiting_room: f64,
    pub orders: Vec<ImagingOrder>,
    pub direct_care: f64,
    pub evaluations: usize,
    pub interactions_total: usize,
    pub handoffs: usize,
    pub disposition_kind: DispositionKind,
}

impl FlowRecord {
    pub fn order_count(&self) -> usize {
        self.orders.len()
    }

    pub fn direct_care_share(&self) -> f64 {
        if self.time_in_ed > 0.0 {
            self.direct_care / self.time_in_ed
        } else {
            0.0
        }
    }
}

/// Builds the flow record of a departed patient, checking the timestamp
/// chain, the imaging intervals and the order spacing on the way.
pub fn collect_patient_metrics(
    patient: &Patient,
    min_order_separation: f64,
) -> Result<FlowRecord, ModelError> {
    let fail = |detail: String| ModelError::IncompleteTrail {
        patient: patient.id,
        detail,
    };
    let need = |v: Option<f64>, name: &str| v.ok_or_else(|| fail(format!("{name} not set")));

    let triage_done = need(patient.triage_done, "triage_done")?;
    let bed_assigned = need(patient.bed_assigned, "bed_assigned")?;
    let first_eval_start = need(patient.first_eval_start, "first_eval_start")?;
    let disposition = need(patient.disposition, "disposition")?;
    let departure = need(patient.departure, "departure")?;
    let kind = patient
        .disposition_kind
        .ok_or_else(|| fail("disposition kind not set".into()))?;

    let chain = [
        ("arrival", patient.arrival),
        ("triage_done", triage_done),
        ("bed_assigned", bed_assigned),
        ("first_eval_start", first_eval_start),
        ("disposition", disposition),
        ("departure", departure),
    ];
    for w in chain.windows(2) {
        if w[1].1 < w[0].1 {
            return Err(fail(format!(
                "{} ({}) precedes {} ({})",
                w[1].0, w[1].1, w[0].0, w[0].1
            )));
        }
    }

    for (i, o) in patient.orders.iter().enumerate() {
        let ok = o.placed_at <= o.begin_at && o.begin_at <= o.end_at && o.end_at <= o.read_at;
        if !ok || o.placed_at < first_eval_start || o.read_at > disposition {
            return Err(fail(format!("imaging order {i} timestamps out of order")));
        }
        if o.image_count == 0 {
            return Err(fail(format!("imaging order {i} has no images")));
        }
    }
    for (i, a) in patient.orders.iter().enumerate() {
        for b in &patient.orders[i + 1..] {
            if (a.placed_at - b.placed_at).abs() < min_order_separation - 1e-9 {
                return Err(fail("imaging orders placed too close together".into()));
            }
        }
    }
    if patient.evaluations_done != patient.interactions_total || patient.interactions_remaining != 0
    {
        return Err(fail(format!(
            "{} of {} evaluations completed",
            patient.evaluations_done, patient.interactions_total
        )));
    }

    Ok(FlowRecord {
        patient: patient.id,
        esi: patient.esi,
        arrival: patient.arrival,
        triage_done,
        bed_assigned,
        first_eval_start,
        disposition,
        departure,
        time_in_ed: departure - bed_assigned,
        bed_to_disposition: disposition - bed_assigned,
        disposition_to_departure: departure - disposition,
        waiting_room: bed_assigned - triage_done,
        orders: patient.orders.clone(),
        direct_care: patient.direct_care,
        evaluations: patient.evaluations_done,
        interactions_total: patient.interactions_total,
        handoffs: patient.handoffs,
        disposition_kind: kind,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::entities::PatientDraws;
    use crate::stochastic::fork_stream;

    fn finished(esi: u8) -> Patient {
        let esi = EsiLevel::new(esi).unwrap();
        let draws = PatientDraws::draw(&mut fork_stream(1, "p"));
        let mut p = Patient::new(7, esi, 90.0, draws);
        p.triage_done = Some(95.0);
        p.bed_assigned = Some(100.0);
        p.first_eval_start = Some(110.0);
        p.disposition = Some(250.0);
        p.departure = Some(280.0);
        p.disposition_kind = Some(DispositionKind::Discharge);
        p.evaluations_done = p.interactions_total;
        p.interactions_remaining = 0;
        p
    }

    #[test]
    fn time_in_ed_arithmetic() {
        let r = collect_patient_metrics(&finished(4), 20.0).unwrap();
        assert_eq!(r.time_in_ed, 180.0);
        assert_eq!(r.bed_to_disposition, 150.0);
        assert_eq!(r.disposition_to_departure, 30.0);
        assert_eq!(r.waiting_room, 5.0);
    }

    #[test]
    fn missing_departure_is_incomplete() {
        let mut p = finished(3);
        p.departure = None;
        assert!(matches!(
            collect_patient_metrics(&p, 20.0),
            Err(ModelError::IncompleteTrail { patient: 7, .. })
        ));
    }

    #[test]
    fn out_of_order_chain_is_rejected() {
        let mut p = finished(3);
        p.disposition = Some(300.0);
        assert!(collect_patient_metrics(&p, 20.0).is_err());
    }

    #[test]
    fn close_orders_are_rejected() {
        let mut p = finished(2);
        let order = |t: f64| ImagingOrder {
            patient: 7,
            placed_at: t,
            begin_at: t + 1.0,
            end_at: t + 2.0,
            read_at: t + 3.0,
            image_count: 1,
        };
        p.orders = vec![order(120.0), order(135.0)];
        assert!(collect_patient_metrics(&p, 20.0).is_err());
        p.orders = vec![order(120.0), order(140.0)];
        assert_eq!(collect_patient_metrics(&p, 20.0).unwrap().order_count(), 2);
    }
}
