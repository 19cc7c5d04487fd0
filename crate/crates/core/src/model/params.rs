use crate::stochastic::{ArrivalProfile, CategoricalDist, TriangularDist};

use super::types::{
    EsiLevel, ImagingCycleParams, OrderCountProfile, PodSpec, Reductions, ShiftTemplate,
};

/// Fully resolved model inputs for one scenario.
///
/// Built from a [`RunConfig`](crate::config::RunConfig); calibration
/// multipliers are already folded into the distributions here, except the
/// per-ESI departure scale which is applied at draw time.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub arrivals: ArrivalProfile,
    pub esi_mix: CategoricalDist<EsiLevel>,
    pub trauma_bypass: f64,
    pub triage: TriangularDist,
    /// Visit-length distribution for each ESI and interaction.
    pub evaluations: [Vec<TriangularDist>; 5],
    pub charting: TriangularDist,
    pub chain_probability: f64,
    pub handoff_minutes: f64,
    pub handoff_window: f64,
    pub orders: OrderCountProfile,
    pub image_counts: CategoricalDist<u32>,
    pub imaging: ImagingCycleParams,
    /// Multiplier on all three imaging intervals, by ESI.
    pub imaging_esi_scale: [f64; 5],
    pub min_order_separation: f64,
    pub admit_probability: [f64; 5],
    pub discharge_delay: TriangularDist,
    pub admit_delay: TriangularDist,
    pub departure_scale: [f64; 5],
    pub pods: Vec<PodSpec>,
    pub shifts: Vec<ShiftTemplate>,
    pub reductions: Reductions,
}

impl Default for ModelParams {
    fn default() -> Self {
        crate::config::RunConfig::default()
            .model_params()
            .expect("built-in defaults are valid")
    }
}

impl ModelParams {
    pub fn evaluation(&self, esi: EsiLevel, k: usize) -> Option<&TriangularDist> {
        k.checked_sub(1)
            .and_then(|i| self.evaluations[esi.index()].get(i))
    }

    pub fn with_reductions(mut self, reductions: Reductions) -> Self {
        self.reductions = reductions;
        self
    }

    pub fn with_orders(mut self, orders: OrderCountProfile) -> Self {
        self.orders = orders;
        self
    }
}
