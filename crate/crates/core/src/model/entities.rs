use std::collections::BTreeSet;

use crate::error::ModelError;
use crate::stochastic::RngStream;

use super::types::{
    DispositionKind, EsiLevel, ImagingOrder, PatientId, PhysicianId, Placement, Pod, PodId,
};

/// Uniform draws fixed for a patient at arrival.
///
/// Everything patient-specific is derived from these by inverse CDF, so two
/// scenarios that share a seed see the same patient regardless of how their
/// event interleavings differ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatientDraws {
    pub esi: f64,
    pub bypass: f64,
    pub triage: f64,
    pub orders: f64,
    pub evaluations: [f64; 4],
    pub imaging: [[f64; 3]; 3],
    pub disposition: f64,
    pub departure: f64,
}

impl PatientDraws {
    pub fn draw(stream: &mut RngStream) -> Self {
        let esi = stream.uniform();
        let bypass = stream.uniform();
        let triage = stream.uniform();
        let orders = stream.uniform();
        let mut evaluations = [0.0; 4];
        evaluations.iter_mut().for_each(|u| *u = stream.uniform());
        let mut imaging = [[0.0; 3]; 3];
        imaging.iter_mut().flatten().for_each(|u| *u = stream.uniform());
        let disposition = stream.uniform();
        let departure = stream.uniform();
        PatientDraws {
            esi,
            bypass,
            triage,
            orders,
            evaluations,
            imaging,
            disposition,
            departure,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Patient {
    pub id: PatientId,
    pub esi: EsiLevel,
    pub arrival: f64,
    pub triage_done: Option<f64>,
    pub bed_assigned: Option<f64>,
    pub first_eval_start: Option<f64>,
    pub disposition: Option<f64>,
    pub departure: Option<f64>,
    pub orders: Vec<ImagingOrder>,
    pub planned_orders: Option<usize>,
    pub interactions_total: usize,
    pub interactions_remaining: usize,
    pub evaluations_done: usize,
    pub assigned_physician: Option<PhysicianId>,
    pub disposition_kind: Option<DispositionKind>,
    pub placement: Option<Placement>,
    pub trauma_bypass: bool,
    pub direct_care: f64,
    pub handoffs: usize,
    pub(crate) ready_since: Option<f64>,
    pub(crate) pending_orders: usize,
    pub(crate) last_order_at: Option<f64>,
    pub(crate) draws: PatientDraws,
}

impl Patient {
    pub fn new(id: PatientId, esi: EsiLevel, arrival: f64, draws: PatientDraws) -> Self {
        Patient {
            id,
            esi,
            arrival,
            triage_done: None,
            bed_assigned: None,
            first_eval_start: None,
            disposition: None,
            departure: None,
            orders: Vec::new(),
            planned_orders: None,
            interactions_total: esi.interactions(),
            interactions_remaining: esi.interactions(),
            evaluations_done: 0,
            assigned_physician: None,
            disposition_kind: None,
            placement: None,
            trauma_bypass: false,
            direct_care: 0.0,
            handoffs: 0,
            ready_since: None,
            pending_orders: 0,
            last_order_at: None,
            draws,
        }
    }

    /// Waiting in bed for the next physician visit.
    pub fn is_ready(&self) -> bool {
        self.ready_since.is_some()
    }

    pub fn pending_orders(&self) -> usize {
        self.pending_orders
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Activity {
    ShiftStartCharting,
    Evaluation { patient: PatientId, k: usize },
    Charting,
    Handoff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhysicianState {
    Scheduled,
    Idle,
    Busy(Activity),
    OffShift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    AtWorkstation,
    WithPatient(PatientId),
    OffShift,
}

#[derive(Debug, Clone)]
pub struct Physician {
    pub id: PhysicianId,
    pub pod: PodId,
    pub shift_start: f64,
    pub shift_end: f64,
    pub panel: BTreeSet<PatientId>,
    pub can_take_high_severity: bool,
    pub state: PhysicianState,
    pub leaving: bool,
    pub busy_time: f64,
    pub(crate) handoff_backlog: f64,
    pub(crate) token: u64,
    pub(crate) stream: RngStream,
}

impl Physician {
    pub fn new(
        id: PhysicianId,
        pod: PodId,
        shift_start: f64,
        shift_end: f64,
        can_take_high_severity: bool,
        stream: RngStream,
    ) -> Self {
        Physician {
            id,
            pod,
            shift_start,
            shift_end,
            panel: BTreeSet::new(),
            can_take_high_severity,
            state: PhysicianState::Scheduled,
            leaving: false,
            busy_time: 0.0,
            handoff_backlog: 0.0,
            token: 0,
            stream,
        }
    }

    pub fn location(&self) -> Location {
        match self.state {
            PhysicianState::Scheduled | PhysicianState::OffShift => Location::OffShift,
            PhysicianState::Busy(Activity::Evaluation { patient, .. }) => {
                Location::WithPatient(patient)
            }
            PhysicianState::Idle | PhysicianState::Busy(_) => Location::AtWorkstation,
        }
    }

    /// On shift and not yet handing over.
    pub fn is_available(&self) -> bool {
        matches!(self.state, PhysicianState::Idle | PhysicianState::Busy(_)) && !self.leaving
    }

    pub fn permitted(&self, esi: EsiLevel) -> bool {
        self.can_take_high_severity || !esi.is_high_severity()
    }
}

/// Least-loaded permitted physician of `pod`, ties to the lowest id.
pub fn select_physician(
    physicians: &[Physician],
    pod: PodId,
    esi: EsiLevel,
) -> Result<PhysicianId, ModelError> {
    physicians
        .iter()
        .filter(|ph| ph.pod == pod && ph.is_available() && ph.permitted(esi))
        .min_by_key(|ph| (ph.panel.len(), ph.id))
        .map(|ph| ph.id)
        .ok_or(ModelError::NoPhysician {
            pod,
            esi: esi.level(),
        })
}

/// Pod that should take a patient of this ESI: the accepting pod with the
/// most free beds, ties to the lowest id.
pub fn choose_pod(pods: &[Pod], esi: EsiLevel) -> Option<PodId> {
    pods.iter()
        .filter(|p| p.accepts(esi) && p.free_beds() > 0)
        .min_by_key(|p| (std::cmp::Reverse(p.free_beds()), p.id))
        .map(|p| p.id)
}

/// Patients without a bed, served by ESI then arrival time.
#[derive(Debug, Clone, Default)]
pub struct WaitingRoom {
    queue: BTreeSet<(u8, u64, PatientId)>,
}

impl WaitingRoom {
    pub fn push(&mut self, esi: EsiLevel, arrival: f64, id: PatientId) {
        debug_assert!(arrival >= 0.0);
        // Bit patterns of non-negative floats sort like the floats.
        self.queue.insert((esi.level(), arrival.to_bits(), id));
    }

    /// Removes and returns the highest-priority patient whose ESI passes `accepts`.
    pub fn pop_first(&mut self, accepts: impl Fn(EsiLevel) -> bool) -> Option<PatientId> {
        let key = *self
            .queue
            .iter()
            .find(|(esi, _, _)| accepts(EsiLevel::new(*esi).expect("stored level")))?;
        self.queue.remove(&key);
        Some(key.2)
    }

    pub fn len(&self) -> usize {
        self.queue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queue.is_empty()
    }

    pub fn order(&self) -> Vec<PatientId> {
        self.queue.iter().map(|k| k.2).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stochastic::fork_stream;

    fn doc(id: PhysicianId, pod: PodId, panel: usize, high: bool) -> Physician {
        let mut ph = Physician::new(id, pod, 0.0, 540.0, high, fork_stream(1, "t"));
        ph.state = PhysicianState::Idle;
        ph.panel = (0..panel as u64).map(|p| p + 100 * id as u64).collect();
        ph
    }

    fn esi(l: u8) -> EsiLevel {
        EsiLevel::new(l).unwrap()
    }

    #[test]
    fn smaller_panel_wins() {
        let docs = vec![doc(0, 0, 5, true), doc(1, 0, 3, true)];
        assert_eq!(select_physician(&docs, 0, esi(3)).unwrap(), 1);
    }

    #[test]
    fn equal_panels_pick_lower_id() {
        let docs = vec![doc(4, 0, 2, true), doc(2, 0, 2, true)];
        assert_eq!(select_physician(&docs, 0, esi(3)).unwrap(), 2);
    }

    #[test]
    fn single_physician_regardless_of_load() {
        let docs = vec![doc(0, 0, 17, true), doc(1, 1, 0, true)];
        assert_eq!(select_physician(&docs, 0, esi(4)).unwrap(), 0);
    }

    #[test]
    fn unstaffed_pod_is_an_error() {
        let mut docs = vec![doc(0, 0, 0, true)];
        assert!(matches!(
            select_physician(&docs, 1, esi(3)),
            Err(ModelError::NoPhysician { pod: 1, .. })
        ));
        docs[0].leaving = true;
        assert!(select_physician(&docs, 0, esi(3)).is_err());
    }

    #[test]
    fn restricted_physicians_skip_high_severity() {
        let docs = vec![doc(0, 0, 0, false), doc(1, 0, 9, true)];
        assert_eq!(select_physician(&docs, 0, esi(1)).unwrap(), 1);
        assert_eq!(select_physician(&docs, 0, esi(4)).unwrap(), 0);
    }

    fn pod(id: PodId, cap: usize, occ: usize, accepts: [bool; 5]) -> Pod {
        Pod {
            id,
            capacity: cap,
            occupied: occ,
            trauma_bays: 0,
            trauma_occupied: 0,
            accepts,
        }
    }

    #[test]
    fn esi1_never_placed_in_non_trauma_pod() {
        let pods = vec![
            pod(0, 12, 12, [true; 5]),
            pod(1, 12, 0, [false, false, true, true, true]),
        ];
        assert_eq!(choose_pod(&pods, esi(1)), None);
        assert_eq!(choose_pod(&pods, esi(3)), Some(1));
    }

    #[test]
    fn most_free_beds_then_lowest_id() {
        let pods = vec![
            pod(0, 12, 10, [true; 5]),
            pod(1, 12, 4, [true; 5]),
            pod(2, 12, 4, [true; 5]),
        ];
        assert_eq!(choose_pod(&pods, esi(2)), Some(1));
    }

    #[test]
    fn waiting_room_orders_by_esi_then_arrival() {
        let mut room = WaitingRoom::default();
        room.push(esi(4), 10.0, 1);
        room.push(esi(2), 50.0, 2);
        room.push(esi(2), 20.0, 3);
        assert_eq!(room.order(), vec![3, 2, 1]);
        assert_eq!(room.pop_first(|e| e.level() >= 3), Some(1));
        assert_eq!(room.pop_first(|_| true), Some(3));
        assert_eq!(room.len(), 1);
    }
}
