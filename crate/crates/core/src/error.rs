use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("event scheduled at t={at} but the clock already reads {clock}")]
    PastTime { at: f64, clock: f64 },
    #[error("invalid simulation time {0}")]
    InvalidTime(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistError {
    #[error("triangular distribution requires min <= mode <= max and min < max, got ({min}, {mode}, {max})")]
    Triangular { min: f64, mode: f64, max: f64 },
    #[error("categorical distribution: {0}")]
    Categorical(String),
    #[error("arrival profile: {0}")]
    Profile(String),
    #[error("arrival rate is zero everywhere; no further arrivals")]
    NoArrival,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error("pod {pod} has no on-shift physician able to take an ESI {esi} patient")]
    NoPhysician { pod: usize, esi: u8 },
    #[error("physician {physician} left pod {pod} with {panel} patients and nobody to take them")]
    UnstaffedPod {
        pod: usize,
        physician: usize,
        panel: usize,
    },
    #[error("ESI {esi} patients have no interaction {k}")]
    UndefinedInteraction { esi: u8, k: usize },
    #[error("patient {patient}: incomplete or inconsistent timestamp trail ({detail})")]
    IncompleteTrail { patient: u64, detail: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("need at least 2 samples, got {0}")]
    InsufficientData(usize),
    #[error("argument out of domain: {0}")]
    Domain(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("invalid config value at `{key}`: {reason}")]
    Validation { key: String, reason: String },
    #[error("i/o error reading config: {0}")]
    Io(String),
}

impl ConfigError {
    pub(crate) fn invalid(key: impl Into<String>, reason: impl Into<String>) -> Self {
        ConfigError::Validation {
            key: key.into(),
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("calibration stopped with max relative error {achieved:.3} (limit {limit:.3})")]
    Calibration { achieved: f64, limit: f64 },
    #[error("replication {rep} produced no measured patients")]
    EmptyReplication { rep: u32 },
}

impl From<KernelError> for ScenarioError {
    fn from(e: KernelError) -> Self {
        ScenarioError::Model(e.into())
    }
}
