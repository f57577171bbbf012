//! Running-time exponents of the treewidth algorithms.
//!
//! Everything here is numerical: binary entropy bounds on binomials, the
//! layer program of the asymmetric DP and the stage balances that fix `α` and
//! `β`. Results are deterministic.

mod balance;
mod cost;
mod entropy;
mod layers;
mod optimize;

pub use balance::{balance_parameters, ExponentReport, Variant};
pub use cost::{dispatch_charge, improved_charge, layered_charge, poly_space_charge};
pub use entropy::{binary_entropy, symmetric_exponent, SYMMETRIC_DP_BASE, SYMMETRIC_LAMBDA};
pub use layers::{curve_csv, emit_curve, layer_program, CurvePoint, LayerParams, MAX_LAYERS};
