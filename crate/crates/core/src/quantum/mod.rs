//! Treewidth algorithms executed under a query-cost model.
//!
//! Minimum finding over `N` candidates is charged `⌈√N⌉` times the cost of
//! the most expensive candidate evaluation, which is the accounting of
//! quantum minimum finding with bounded-error oracles, minus constants and
//! error reduction. Every search is still carried out classically and exactly,
//! so the widths returned are the true ones; only the ledger reflects the
//! model.

mod algorithms;
mod dnc;
mod layered;
mod ledger;
mod qmin;

pub use algorithms::{
    improved_algorithm, quantum_dp, quantum_poly_space, QuantumOutcome, DIRECT, Q_DP_BETA, Q_MAIN_ALPHA, Q_MAIN_BETA,
    Q_MAIN_LAYERS, STAGE1, STAGE2,
};
pub use dnc::{dnc_charge, quantum_dnc, quantum_dnc_traced, DNC_PHASE};
pub use layered::{
    asym_dp, cached_layer_params, dispatch_subproblem, route, LayerPlan, PrecalcStore, Route, FETCH, GLOBAL_PRECALC,
    OUTER_MIN, PREFIX_CHAIN, PREFIX_PRECALC, SUFFIX_CHAIN, SUFFIX_PRECALC,
};
pub use ledger::CostLedger;
pub use qmin::{qmin_find, qmin_over_connected_sets, sqrt_charge};

pub use crate::exponents::LayerParams;
