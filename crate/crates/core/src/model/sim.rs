//! Event handlers for one replication of the ED model.

use serde::Serialize;

use crate::error::ModelError;
use crate::kernel::{run_until, Dispatch, EventCalendar, EventRecord, SimTime};
use crate::stochastic::{fork_stream, RngStream};

use super::entities::{
    choose_pod, select_physician, Activity, Patient, PatientDraws, Physician, PhysicianState,
    WaitingRoom,
};
use super::metrics::{collect_patient_metrics, FlowRecord};
use super::params::ModelParams;
use super::types::{
    BedKind, DispositionKind, EsiLevel, ImagingOrder, PatientId, PhysicianId, Placement, Pod,
    PodId,
};

const MINUTES_PER_DAY: f64 = 1440.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Event {
    Arrival,
    TriageDone(PatientId),
    ShiftStart(PhysicianId),
    ShiftEnd(PhysicianId),
    ActivityDone { physician: PhysicianId, token: u64 },
    OrderPlaced { patient: PatientId, order: usize },
    ImagingRead { patient: PatientId, order: usize },
    Departure(PatientId),
}

impl Event {
    pub fn kind(&self) -> &'static str {
        match self {
            Event::Arrival => "arrival",
            Event::TriageDone(_) => "triage_done",
            Event::ShiftStart(_) => "shift_start",
            Event::ShiftEnd(_) => "shift_end",
            Event::ActivityDone { .. } => "activity_done",
            Event::OrderPlaced { .. } => "order_placed",
            Event::ImagingRead { .. } => "imaging_read",
            Event::Departure(_) => "departure",
        }
    }

    /// Patient or physician id the event concerns; 0 for arrivals.
    pub fn subject(&self) -> u64 {
        match *self {
            Event::Arrival => 0,
            Event::TriageDone(p) | Event::Departure(p) => p,
            Event::OrderPlaced { patient, .. } | Event::ImagingRead { patient, .. } => patient,
            Event::ShiftStart(ph) | Event::ShiftEnd(ph) => ph as u64,
            Event::ActivityDone { physician, .. } => physician as u64,
        }
    }
}

/// One line of the dispatch trace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EventLogEntry {
    pub time: f64,
    pub seq: u64,
    pub kind: &'static str,
    pub subject: u64,
}

/// Result of running one replication.
#[derive(Debug, Clone)]
pub struct SimOutcome {
    pub records: Vec<FlowRecord>,
    pub patients_in_system: usize,
    /// Bed-assignment times of patients still in a bed at the end.
    pub unfinished_bed_times: Vec<f64>,
    /// Physician busy minutes over rostered minutes.
    pub physician_utilization: f64,
    pub final_clock: f64,
    pub event_log: Option<Vec<EventLogEntry>>,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SimOptions {
    pub event_log: bool,
    /// Check bed, panel and physician invariants after every event.
    pub audit: bool,
}

pub struct EdSimulation<'a> {
    params: &'a ModelParams,
    seed: u64,
    rep: u32,
    arrivals: RngStream,
    images: RngStream,
    patients: Vec<Patient>,
    physicians: Vec<Physician>,
    pods: Vec<Pod>,
    waiting: WaitingRoom,
    records: Vec<FlowRecord>,
    options: SimOptions,
    log: Vec<EventLogEntry>,
    violations: Vec<String>,
}

impl<'a> EdSimulation<'a> {
    pub fn new(params: &'a ModelParams, seed: u64, rep: u32, options: SimOptions) -> Self {
        EdSimulation {
            params,
            seed,
            rep,
            arrivals: fork_stream(seed, &format!("arrivals#{rep}")),
            images: fork_stream(seed, &format!("images#{rep}")),
            patients: Vec::new(),
            physicians: Vec::new(),
            pods: params
                .pods
                .iter()
                .enumerate()
                .map(|(i, s)| Pod::from_spec(i, s))
                .collect(),
            waiting: WaitingRoom::default(),
            records: Vec::new(),
            options,
            log: Vec::new(),
            violations: Vec::new(),
        }
    }

    /// Runs from time zero to `end` minutes.
    pub fn run(
        params: &'a ModelParams,
        seed: u64,
        rep: u32,
        end: f64,
        options: SimOptions,
    ) -> Result<SimOutcome, ModelError> {
        let mut sim = EdSimulation::new(params, seed, rep, options);
        let mut cal = EventCalendar::new();
        sim.start(&mut cal, end)?;
        let clock = run_until(&mut cal, &mut sim, SimTime::try_new(end)?)?;
        Ok(sim.finish(clock.minutes()))
    }

    pub fn patients(&self) -> &[Patient] {
        &self.patients
    }

    pub fn physicians(&self) -> &[Physician] {
        &self.physicians
    }

    pub fn pods(&self) -> &[Pod] {
        &self.pods
    }

    pub fn waiting_room(&self) -> &WaitingRoom {
        &self.waiting
    }

    /// Creates the physician roster for `[0, end)` and schedules the first arrival.
    pub fn start(&mut self, cal: &mut EventCalendar<Event>, end: f64) -> Result<(), ModelError> {
        let days = (end / MINUTES_PER_DAY).ceil() as i64;
        let mut shifts = Vec::new();
        for day in -1..=days {
            let base = day as f64 * MINUTES_PER_DAY;
            for (ti, t) in self.params.shifts.iter().enumerate() {
                let start = base + t.start_hour * 60.0;
                let stop = start + t.length_hours() * 60.0;
                if stop <= 0.0 || start >= end {
                    continue;
                }
                for slot in 0..t.count {
                    shifts.push((start.max(0.0), stop, t.pod, ti, slot));
                }
            }
        }
        shifts.sort_by(|a, b| {
            a.0.total_cmp(&b.0)
                .then(a.2.cmp(&b.2))
                .then(a.3.cmp(&b.3))
                .then(a.4.cmp(&b.4))
        });
        for (start, stop, pod, _, _) in shifts {
            let id = self.physicians.len();
            let stream = fork_stream(self.seed, &format!("physician#{}#{id}", self.rep));
            let high = self.params.pods[pod].high_severity_staff;
            self.physicians
                .push(Physician::new(id, pod, start, stop, high, stream));
            cal.schedule(SimTime::new(start), Event::ShiftStart(id))?;
            cal.schedule(SimTime::new(stop), Event::ShiftEnd(id))?;
        }
        let first = self.params.arrivals.next_arrival(0.0, &mut self.arrivals)?;
        cal.schedule(SimTime::new(first), Event::Arrival)?;
        Ok(())
    }

    pub fn finish(self, final_clock: f64) -> SimOutcome {
        let in_system = self
            .patients
            .iter()
            .filter(|p| p.departure.is_none())
            .count();
        let unfinished_bed_times = self
            .patients
            .iter()
            .filter(|p| p.departure.is_none())
            .filter_map(|p| p.bed_assigned)
            .collect();
        let busy: f64 = self.physicians.iter().map(|d| d.busy_time).sum();
        let rostered: f64 = self
            .physicians
            .iter()
            .map(|d| d.shift_end.min(final_clock) - d.shift_start)
            .filter(|m| *m > 0.0)
            .sum();
        SimOutcome {
            records: self.records,
            patients_in_system: in_system,
            unfinished_bed_times,
            physician_utilization: if rostered > 0.0 { busy / rostered } else { 0.0 },
            final_clock,
            event_log: self.options.event_log.then_some(self.log),
            violations: self.violations,
        }
    }

    fn now(cal: &EventCalendar<Event>) -> f64 {
        cal.clock().minutes()
    }

    fn on_arrival(&mut self, cal: &mut EventCalendar<Event>) -> Result<(), ModelError> {
        let now = Self::now(cal);
        let id = self.patients.len() as PatientId;
        let mut stream = fork_stream(self.seed, &format!("patient#{}#{id}", self.rep));
        let draws = PatientDraws::draw(&mut stream);
        let esi = self.params.esi_mix.pick(draws.esi);
        let mut patient = Patient::new(id, esi, now, draws);
        let bypass = esi.level() == 1 && draws.bypass < self.params.trauma_bypass;
        patient.trauma_bypass = bypass;
        self.patients.push(patient);

        if bypass {
            self.patients[id as usize].triage_done = Some(now);
            let bay = self
                .pods
                .iter()
                .find(|p| p.trauma_capable() && p.trauma_occupied < p.trauma_bays)
                .map(|p| p.id);
            match bay {
                Some(pod) => self.admit(
                    id,
                    Placement {
                        pod,
                        kind: BedKind::TraumaBay,
                    },
                    cal,
                )?,
                None => self.try_assign_bed(id, cal)?,
            }
        } else {
            let triage = self.params.triage.quantile(draws.triage);
            cal.schedule_in(triage, Event::TriageDone(id))?;
        }

        let next = self.params.arrivals.next_arrival(now, &mut self.arrivals)?;
        cal.schedule(SimTime::new(next), Event::Arrival)?;
        Ok(())
    }

    fn on_triage_done(
        &mut self,
        id: PatientId,
        cal: &mut EventCalendar<Event>,
    ) -> Result<(), ModelError> {
        self.patients[id as usize].triage_done = Some(Self::now(cal));
        self.try_assign_bed(id, cal)
    }

    fn try_assign_bed(
        &mut self,
        id: PatientId,
        cal: &mut EventCalendar<Event>,
    ) -> Result<(), ModelError> {
        let p = &self.patients[id as usize];
        match choose_pod(&self.pods, p.esi) {
            Some(pod) => self.admit(
                id,
                Placement {
                    pod,
                    kind: BedKind::Bed,
                },
                cal,
            ),
            None => {
                self.waiting.push(p.esi, p.arrival, id);
                Ok(())
            }
        }
    }

    fn admit(
        &mut self,
        id: PatientId,
        placement: Placement,
        cal: &mut EventCalendar<Event>,
    ) -> Result<(), ModelError> {
        let now = Self::now(cal);
        let pod = &mut self.pods[placement.pod];
        match placement.kind {
            BedKind::Bed => pod.occupied += 1,
            BedKind::TraumaBay => pod.trauma_occupied += 1,
        }
        let esi = self.patients[id as usize].esi;
        let ph = select_physician(&self.physicians, placement.pod, esi)?;
        self.physicians[ph].panel.insert(id);
        let p = &mut self.patients[id as usize];
        p.bed_assigned = Some(now);
        p.placement = Some(placement);
        p.assigned_physician = Some(ph);
        p.ready_since = Some(now);
        self.wake(ph, cal)
    }

    /// Starts the physician on the next piece of work if currently idle.
    fn wake(&mut self, ph: PhysicianId, cal: &mut EventCalendar<Event>) -> Result<(), ModelError> {
        if self.physicians[ph].state == PhysicianState::Idle {
            self.start_next(ph, cal)?;
        }
        Ok(())
    }

    fn start_next(
        &mut self,
        ph: PhysicianId,
        cal: &mut EventCalendar<Event>,
    ) -> Result<(), ModelError> {
        let doc = &mut self.physicians[ph];
        if doc.leaving {
            doc.state = PhysicianState::OffShift;
            return Ok(());
        }
        if doc.handoff_backlog > 0.0 {
            let minutes = std::mem::take(&mut doc.handoff_backlog);
            return self.begin(ph, Activity::Handoff, minutes, cal);
        }
        match self.next_patient(ph) {
            Some(p) => self.start_evaluation(ph, p, cal),
            None => {
                self.physicians[ph].state = PhysicianState::Idle;
                Ok(())
            }
        }
    }

    /// Highest-priority ready patient on the physician's panel.
    fn next_patient(&self, ph: PhysicianId) -> Option<PatientId> {
        self.physicians[ph]
            .panel
            .iter()
            .map(|&id| &self.patients[id as usize])
            .filter_map(|p| p.ready_since.map(|t| (p.esi, t, p.id)))
            .min_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.cmp(&b.2)))
            .map(|(_, _, id)| id)
    }

    fn begin(
        &mut self,
        ph: PhysicianId,
        activity: Activity,
        minutes: f64,
        cal: &mut EventCalendar<Event>,
    ) -> Result<(), ModelError> {
        let doc = &mut self.physicians[ph];
        doc.token += 1;
        doc.state = PhysicianState::Busy(activity);
        doc.busy_time += minutes;
        let token = doc.token;
        cal.schedule_in(minutes, Event::ActivityDone { physician: ph, token })?;
        Ok(())
    }

    fn start_charting(
        &mut self,
        ph: PhysicianId,
        activity: Activity,
        cal: &mut EventCalendar<Event>,
    ) -> Result<(), ModelError> {
        let minutes = self.params.charting.sample(&mut self.physicians[ph].stream);
        self.begin(ph, activity, minutes, cal)
    }

    fn start_evaluation(
        &mut self,
        ph: PhysicianId,
        id: PatientId,
        cal: &mut EventCalendar<Event>,
    ) -> Result<(), ModelError> {
        let now = Self::now(cal);
        let p = &mut self.patients[id as usize];
        let k = p.evaluations_done + 1;
        let dist = self
            .params
            .evaluation(p.esi, k)
            .ok_or(ModelError::UndefinedInteraction {
                esi: p.esi.level(),
                k,
            })?;
        let minutes = dist.quantile(p.draws.evaluations[k - 1]);
        if k == 1 {
            p.first_eval_start = Some(now);
        }
        p.ready_since = None;
        p.direct_care += minutes;
        self.begin(ph, Activity::Evaluation { patient: id, k }, minutes, cal)
    }

    fn on_activity_done(
        &mut self,
        ph: PhysicianId,
        token: u64,
        cal: &mut EventCalendar<Event>,
    ) -> Result<(), ModelError> {
        let doc = &self.physicians[ph];
        if doc.token != token {
            return Ok(()); // stale
        }
        let PhysicianState::Busy(activity) = doc.state else {
            return Ok(());
        };
        match activity {
            Activity::Evaluation { patient, k } => {
                self.complete_evaluation(patient, k, cal)?;
                if self.physicians[ph].leaving {
                    self.physicians[ph].state = PhysicianState::OffShift;
                    return Ok(());
                }
                if k >= 2 {
                    let chain = self.physicians[ph].stream.uniform()
                        < self.params.chain_probability;
                    if chain {
                        if let Some(next) = self.next_patient(ph) {
                            return self.start_evaluation(ph, next, cal);
                        }
                    }
                }
                self.start_charting(ph, Activity::Charting, cal)
            }
            Activity::Charting | Activity::Handoff | Activity::ShiftStartCharting => {
                self.start_next(ph, cal)
            }
        }
    }

    fn complete_evaluation(
        &mut self,
        id: PatientId,
        k: usize,
        cal: &mut EventCalendar<Event>,
    ) -> Result<(), ModelError> {
        let now = Self::now(cal);
        let sep = self.params.min_order_separation;
        let p = &mut self.patients[id as usize];
        p.evaluations_done = k;
        p.interactions_remaining -= 1;
        if k == 1 {
            let planned = self.params.orders.pick(p.esi, p.draws.orders);
            p.planned_orders = Some(planned.min(p.interactions_total));
        }
        if k <= p.planned_orders.unwrap_or(0) {
            let at = p.last_order_at.map_or(now, |last| now.max(last + sep));
            p.last_order_at = Some(at);
            p.pending_orders += 1;
            let order = k - 1;
            if at > now {
                cal.schedule(SimTime::new(at), Event::OrderPlaced { patient: id, order })?;
            } else {
                self.start_imaging(id, order, cal)?;
            }
        }
        let p = &mut self.patients[id as usize];
        if p.pending_orders == 0 {
            if p.interactions_remaining == 0 {
                self.dispose(id, cal)?;
            } else {
                p.ready_since = Some(now);
                let ph = p.assigned_physician.expect("bedded patient has a physician");
                self.wake(ph, cal)?;
            }
        }
        Ok(())
    }

    fn start_imaging(
        &mut self,
        id: PatientId,
        order: usize,
        cal: &mut EventCalendar<Event>,
    ) -> Result<(), ModelError> {
        let placed_at = Self::now(cal);
        let params = self.params;
        let p = &mut self.patients[id as usize];
        let scale = params.imaging_esi_scale[p.esi.index()];
        let [u_otb, u_bte, u_etr] = p.draws.imaging[order];
        let r = params.reductions;
        let otb = params.imaging.order_to_begin.quantile(u_otb) * scale;
        let bte = params.imaging.begin_to_end.quantile(u_bte) * scale;
        let etr = params.imaging.end_to_read.quantile(u_etr) * scale;
        let begin_at = placed_at + (1.0 - r.order_to_begin) * otb;
        let end_at = begin_at + bte;
        let read_at = end_at + (1.0 - r.end_to_read) * etr;
        let image_count = params.image_counts.sample(&mut self.images);
        p.orders.push(ImagingOrder {
            patient: id,
            placed_at,
            begin_at,
            end_at,
            read_at,
            image_count,
        });
        cal.schedule(SimTime::new(read_at), Event::ImagingRead { patient: id, order })?;
        Ok(())
    }

    fn on_imaging_read(
        &mut self,
        id: PatientId,
        cal: &mut EventCalendar<Event>,
    ) -> Result<(), ModelError> {
        let now = Self::now(cal);
        let p = &mut self.patients[id as usize];
        p.pending_orders -= 1;
        if p.pending_orders > 0 {
            return Ok(());
        }
        if p.interactions_remaining == 0 {
            self.dispose(id, cal)
        } else {
            p.ready_since = Some(now);
            let ph = p.assigned_physician.expect("bedded patient has a physician");
            self.wake(ph, cal)
        }
    }

    fn dispose(&mut self, id: PatientId, cal: &mut EventCalendar<Event>) -> Result<(), ModelError> {
        let now = Self::now(cal);
        let params = self.params;
        let p = &mut self.patients[id as usize];
        let e = p.esi.index();
        let (kind, dist) = if p.draws.disposition < params.admit_probability[e] {
            (DispositionKind::Admit, &params.admit_delay)
        } else {
            (DispositionKind::Discharge, &params.discharge_delay)
        };
        let delay = dist.quantile(p.draws.departure) * params.departure_scale[e];
        p.disposition = Some(now);
        p.disposition_kind = Some(kind);
        p.ready_since = None;
        if let Some(ph) = p.assigned_physician {
            self.physicians[ph].panel.remove(&id);
        }
        cal.schedule_in(delay, Event::Departure(id))?;
        Ok(())
    }

    fn on_departure(
        &mut self,
        id: PatientId,
        cal: &mut EventCalendar<Event>,
    ) -> Result<(), ModelError> {
        let now = Self::now(cal);
        let p = &mut self.patients[id as usize];
        p.departure = Some(now);
        let placement = p.placement.expect("departing patient was bedded");
        let record = collect_patient_metrics(p, self.params.min_order_separation)?;
        self.records.push(record);
        let pod = &mut self.pods[placement.pod];
        match placement.kind {
            BedKind::Bed => pod.occupied -= 1,
            BedKind::TraumaBay => pod.trauma_occupied -= 1,
        }
        if placement.kind == BedKind::Bed {
            self.fill_beds(placement.pod, cal)?;
        }
        Ok(())
    }

    fn fill_beds(&mut self, pod: PodId, cal: &mut EventCalendar<Event>) -> Result<(), ModelError> {
        while self.pods[pod].free_beds() > 0 {
            let accepts = self.pods[pod].accepts;
            let Some(id) = self.waiting.pop_first(|e: EsiLevel| accepts[e.index()]) else {
                break;
            };
            self.admit(
                id,
                Placement {
                    pod,
                    kind: BedKind::Bed,
                },
                cal,
            )?;
        }
        Ok(())
    }

    fn on_shift_start(
        &mut self,
        ph: PhysicianId,
        cal: &mut EventCalendar<Event>,
    ) -> Result<(), ModelError> {
        self.physicians[ph].state = PhysicianState::Idle;
        self.start_charting(ph, Activity::ShiftStartCharting, cal)
    }

    fn on_shift_end(
        &mut self,
        ph: PhysicianId,
        cal: &mut EventCalendar<Event>,
    ) -> Result<(), ModelError> {
        let now = Self::now(cal);
        self.physicians[ph].leaving = true;
        self.shift_change(ph, now, cal)?;
        if self.physicians[ph].state == PhysicianState::Idle {
            self.physicians[ph].state = PhysicianState::OffShift;
        }
        Ok(())
    }

    /// Hands the leaving physician's whole panel to one colleague in the same
    /// pod, preferring a physician who started within the handoff window.
    fn shift_change(
        &mut self,
        leaving: PhysicianId,
        now: f64,
        cal: &mut EventCalendar<Event>,
    ) -> Result<(), ModelError> {
        let panel: Vec<PatientId> = std::mem::take(&mut self.physicians[leaving].panel)
            .into_iter()
            .collect();
        if panel.is_empty() {
            return Ok(());
        }
        let pod = self.physicians[leaving].pod;
        let window = self.params.handoff_window;
        let candidates = || {
            self.physicians
                .iter()
                .filter(move |d| d.pod == pod && d.id != leaving && d.is_available())
        };
        let pick = |arriving_only: bool| {
            candidates()
                .filter(|d| !arriving_only || (d.shift_start <= now && now - d.shift_start <= window))
                .min_by_key(|d| (d.panel.len(), d.id))
                .map(|d| d.id)
        };
        let receiver = pick(true)
            .or_else(|| pick(false))
            .ok_or(ModelError::UnstaffedPod {
                pod,
                physician: leaving,
                panel: panel.len(),
            })?;

        let mut any_ready = false;
        for &id in &panel {
            let p = &mut self.patients[id as usize];
            p.assigned_physician = Some(receiver);
            p.handoffs += 1;
            any_ready |= p.is_ready();
        }
        let doc = &mut self.physicians[receiver];
        doc.panel.extend(panel.iter().copied());
        doc.handoff_backlog += self.params.handoff_minutes * panel.len() as f64;
        let _ = any_ready;
        self.wake(receiver, cal)
    }

    /// Bed conservation, panel consistency and one-patient-at-a-time checks.
    pub fn check_invariants(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut beds = vec![0usize; self.pods.len()];
        let mut bays = vec![0usize; self.pods.len()];
        for p in &self.patients {
            if let (Some(pl), None) = (p.placement, p.departure) {
                match pl.kind {
                    BedKind::Bed => beds[pl.pod] += 1,
                    BedKind::TraumaBay => bays[pl.pod] += 1,
                }
            }
        }
        for pod in &self.pods {
            if pod.occupied != beds[pod.id] || pod.occupied > pod.capacity {
                out.push(format!(
                    "pod {}: occupied {} but {} bedded patients (capacity {})",
                    pod.id, pod.occupied, beds[pod.id], pod.capacity
                ));
            }
            if pod.trauma_occupied != bays[pod.id] || pod.trauma_occupied > pod.trauma_bays {
                out.push(format!("pod {}: trauma bay count mismatch", pod.id));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for d in &self.physicians {
            for &id in &d.panel {
                if self.patients[id as usize].assigned_physician != Some(d.id) {
                    out.push(format!("physician {} holds patient {id} assigned elsewhere", d.id));
                }
            }
            if d.state == PhysicianState::OffShift && !d.panel.is_empty() {
                out.push(format!("off-shift physician {} still has a panel", d.id));
            }
            if let PhysicianState::Busy(Activity::Evaluation { patient, .. }) = d.state {
                if !seen.insert(patient) {
                    out.push(format!("patient {patient} seen by two physicians at once"));
                }
                if self.patients[patient as usize].is_ready() {
                    out.push(format!("patient {patient} marked ready while being seen"));
                }
            }
        }
        out
    }
}

impl Dispatch<Event> for EdSimulation<'_> {
    type Error = ModelError;

    fn dispatch(
        &mut self,
        cal: &mut EventCalendar<Event>,
        rec: EventRecord<Event>,
    ) -> Result<(), ModelError> {
        if self.options.event_log {
            self.log.push(EventLogEntry {
                time: rec.time.minutes(),
                seq: rec.seq,
                kind: rec.event.kind(),
                subject: rec.event.subject(),
            });
        }
        match rec.event {
            Event::Arrival => self.on_arrival(cal)?,
            Event::TriageDone(p) => self.on_triage_done(p, cal)?,
            Event::ShiftStart(ph) => self.on_shift_start(ph, cal)?,
            Event::ShiftEnd(ph) => self.on_shift_end(ph, cal)?,
            Event::ActivityDone { physician, token } => {
                self.on_activity_done(physician, token, cal)?
            }
            Event::OrderPlaced { patient, order } => self.start_imaging(patient, order, cal)?,
            Event::ImagingRead { patient, .. } => self.on_imaging_read(patient, cal)?,
            Event::Departure(p) => self.on_departure(p, cal)?,
        }
        if self.options.audit {
            let found = self.check_invariants();
            for v in found {
                self.violations.push(format!("t={:.3}: {v}", rec.time.minutes()));
            }
        }
        Ok(())
    }
}
