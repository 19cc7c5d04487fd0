//! Emergency-department entities and the event handlers that move patients
//! from arrival to departure.

mod entities;
mod metrics;
mod params;
mod sim;
mod types;

pub use entities::{
    choose_pod, select_physician, Activity, Location, Patient, PatientDraws, Physician,
    PhysicianState, WaitingRoom,
};
pub use metrics::{collect_patient_metrics, FlowRecord};
pub use params::ModelParams;
pub use sim::{EdSimulation, Event, EventLogEntry, SimOptions, SimOutcome};
pub use types::{
    BedKind, DispositionKind, EsiLevel, ImagingCycleParams, ImagingOrder, OrderCountProfile,
    PatientId, PhysicianId, Placement, Pod, PodId, PodSpec, Reductions, ShiftTemplate,
    BASELINE_ORDER_SHARES,
};
