//! Balancing the stages of each algorithm.
//!
//! Every exponent below is the base-2 logarithm of the running-time base,
//! normalised by `n`. The two stages of the polynomial-space algorithms trade
//! off through `β`; the improved algorithm adds the precalculated fraction `α`.

use std::str::FromStr;
use std::sync::Mutex;

use super::entropy::{be, symmetric_exponent, SYMMETRIC_LAMBDA};
use super::layers::layer_program;
use super::optimize::{bisect, golden_min, grid_max};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Classical polynomial-space two-stage algorithm.
    Classical,
    /// Its quantum version with divide and conquer inside.
    QuantumPoly,
    /// Quantum two-stage algorithm with the symmetric hypercube DP inside.
    QuantumDp,
    /// The improved quantum algorithm with asymmetric layers.
    QuantumMain,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Classical,
        Variant::QuantumPoly,
        Variant::QuantumDp,
        Variant::QuantumMain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Classical => "classical",
            Variant::QuantumPoly => "q-poly",
            Variant::QuantumDp => "q-dp",
            Variant::QuantumMain => "q-main",
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "variant",
                name: s.to_string(),
            })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExponentReport {
    pub variant: Variant,
    /// Layer count; only meaningful for [`Variant::QuantumMain`].
    pub k: usize,
    /// Precalculated fraction (0 when nothing is precalculated).
    pub alpha: f64,
    pub beta: f64,
    /// Running time is `O*(time_base^n)`.
    pub time_base: f64,
    /// Space is `O*(space_base^n)`, or polynomial when `None`.
    pub space_base: Option<f64>,
}

const DELTA_POINTS: usize = 4001;

/// Stage 2 of the classical algorithm: `max_δ (1 − δ) H(β/(1 − δ)) + 2δ`.
fn classical_stage2(beta: f64) -> f64 {
    grid_max(
        |d| (1.0 - d) * be(beta / (1.0 - d)) + 2.0 * d,
        beta,
        1.0 - beta,
        DELTA_POINTS,
    )
    .1
}

fn classical_beta() -> f64 {
    bisect(|b| 1.0 + b - classical_stage2(b), 0.3, 0.45)
}

fn quantum_dp_stage1(beta: f64) -> f64 {
    0.5 + beta * (symmetric_exponent() - 0.5)
}

fn quantum_dp_stage2(beta: f64) -> f64 {
    let c = symmetric_exponent();
    grid_max(
        |d| 0.5 * (1.0 - d) * be(beta / (1.0 - d)) + c * d,
        beta,
        1.0 - beta,
        DELTA_POINTS,
    )
    .1
}

/// `τ(λ)`: the exponent of one subproblem whose precalculated fraction is `λ`.
struct SubproblemCurve {
    start: f64,
    step: f64,
    values: Vec<f64>,
}

const CURVE_STEP: f64 = 0.0025;

impl SubproblemCurve {
    fn new(k: usize) -> Result<Self> {
        let points = ((1.0 - SYMMETRIC_LAMBDA) / CURVE_STEP).ceil() as usize + 1;
        let mut values = Vec::with_capacity(points);
        for i in 0..points {
            let lambda = (SYMMETRIC_LAMBDA + CURVE_STEP * i as f64).min(1.0);
            values.push(layer_program(k, lambda)?.1);
        }
        Ok(SubproblemCurve {
            start: SYMMETRIC_LAMBDA,
            step: CURVE_STEP,
            values,
        })
    }

    fn at(&self, lambda: f64) -> f64 {
        if lambda >= 1.0 {
            return 0.0;
        }
        if lambda <= self.start {
            return symmetric_exponent();
        }
        let x = (lambda - self.start) / self.step;
        let i = (x.floor() as usize).min(self.values.len() - 2);
        let t = x - i as f64;
        self.values[i] * (1.0 - t) + self.values[i + 1] * t
    }
}

struct MainProgram {
    tau: SubproblemCurve,
}

impl MainProgram {
    fn stage1(&self, alpha: f64, beta: f64) -> f64 {
        grid_max(
            |c| 0.5 * (1.0 - c) + c * self.tau.at(alpha / c.max(1e-12)),
            0.0,
            beta,
            401,
        )
        .1
    }

    fn stage2(&self, alpha: f64, beta: f64) -> f64 {
        let points = (((1.0 - 2.0 * beta) / 1e-3).ceil() as usize + 1).max(2);
        grid_max(
            |d| 0.5 * (1.0 - d) * be(beta / (1.0 - d)) + d * self.tau.at(alpha / d),
            beta,
            1.0 - beta,
            points,
        )
        .1
    }

    /// `α` balancing precalculation against both stages for a given `β`.
    fn balanced_alpha(&self, beta: f64) -> (f64, f64) {
        let stages = |a: f64| self.stage1(a, beta).max(self.stage2(a, beta));
        let alpha = bisect(|a| be(a) - stages(a), 1e-6, 0.5);
        (alpha, be(alpha).max(stages(alpha)))
    }
}

fn report(variant: Variant, k: usize, alpha: f64, beta: f64, exponent: f64, space: Option<f64>) -> ExponentReport {
    ExponentReport {
        variant,
        k,
        alpha,
        beta,
        time_base: exponent.exp2(),
        space_base: space,
    }
}

static MAIN_CACHE: Mutex<Vec<(usize, ExponentReport)>> = Mutex::new(Vec::new());

/// Optimal `α`, `β` and the resulting bases for `variant` (`k` is used by
/// [`Variant::QuantumMain`] only).
pub fn balance_parameters(variant: Variant, k: usize) -> Result<ExponentReport> {
    match variant {
        Variant::Classical => {
            let beta = classical_beta();
            Ok(report(variant, k, 0.0, beta, 1.0 + beta, None))
        }
        Variant::QuantumPoly => {
            let beta = classical_beta();
            Ok(report(variant, k, 0.0, beta, 0.5 * (1.0 + beta), None))
        }
        Variant::QuantumDp => {
            let beta = bisect(|b| quantum_dp_stage1(b) - quantum_dp_stage2(b), 0.3, 0.45);
            let space = ((1.0 - beta) * symmetric_exponent()).exp2();
            Ok(report(variant, k, 0.0, beta, quantum_dp_stage1(beta), Some(space)))
        }
        Variant::QuantumMain => {
            if let Some((_, r)) = MAIN_CACHE
                .lock()
                .unwrap_or_else(|e| e.into_inner())
                .iter()
                .find(|(kk, _)| *kk == k)
            {
                return Ok(r.clone());
            }
            let program = MainProgram {
                tau: SubproblemCurve::new(k)?,
            };
            let (beta, exponent) = golden_min(|b| program.balanced_alpha(b).1, 0.33, 0.45, 60);
            let (alpha, _) = program.balanced_alpha(beta);
            let r = report(variant, k, alpha, beta, exponent, Some(be(alpha).exp2()));
            MAIN_CACHE
                .lock()
                .unwrap_or_else(|e| e.into_inner())
                .push((k, r.clone()));
            Ok(r)
        }
    }
}
