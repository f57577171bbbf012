//! Layer fractions for the asymmetric layered DP.
//!
//! With a fraction `λ₁` of the small subsets precalculated, the DP walks up a
//! chain `λ₁ < λ₂ < … < μ` of prefix layers and down a chain `ρ₁ > ρ₂ > … > μ`
//! of suffix layers, the suffix side being fully precalculated from `ρ₁` on.
//! One step of a chain from fraction `a` to fraction `b` costs
//! `½ b H(a/b) + max(t, C (b − a))` in the exponent, where `t` is the cost of
//! the chain so far and `C = log2 1.81691`. Scaling a chain to end at 1 gives
//! a function `g_K(r)` of its relative start `r` for at most `K` steps, which
//! is tabulated once per `K` and then reused for every `λ₁`.

use std::sync::{Arc, Mutex};

use super::entropy::{be, symmetric_exponent};
use super::optimize::{golden_min, grid_min};
use crate::error::{Error, Result};

/// Largest number of intermediate layers per chain accepted by [`layer_program`].
pub const MAX_LAYERS: usize = 8;

const GRID: usize = 4000;
const COARSE: usize = 400;

/// Fractional layer sizes, relative to the number of vertices of the subproblem.
#[derive(Clone, Debug, PartialEq)]
pub struct LayerParams {
    /// Number of intermediate layers each chain may use.
    pub k: usize,
    /// Prefix layers, ascending; `lambda[0]` is the precalculated fraction.
    pub lambda: Vec<f64>,
    pub mu: f64,
    /// Suffix layers, descending; `rho[0]` is where suffix precalculation starts.
    /// Empty when the precalculation starts at `mu` itself.
    pub rho: Vec<f64>,
    /// Running-time exponent of these layers.
    pub exponent: f64,
}

impl LayerParams {
    /// Whether `λ₁ < … < μ < … < ρ₁ < 1` holds strictly.
    pub fn is_strict_chain(&self) -> bool {
        let mut seq: Vec<f64> = self.lambda.clone();
        seq.push(self.mu);
        seq.extend(self.rho.iter().rev());
        seq.windows(2).all(|w| w[0] < w[1]) && seq.last().is_some_and(|&x| x < 1.0)
    }
}

struct ChainLevel {
    g: Vec<f64>,
    /// Grid index of the last intermediate layer, or `None` if this level
    /// adds nothing to the previous one.
    step: Vec<Option<u32>>,
}

static LEVELS: Mutex<Vec<Arc<ChainLevel>>> = Mutex::new(Vec::new());

fn interp(g: &[f64], x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0) * GRID as f64;
    let i = (x.floor() as usize).min(GRID - 1);
    let t = x - i as f64;
    g[i] * (1.0 - t) + g[i + 1] * t
}

fn first_level() -> ChainLevel {
    let c = symmetric_exponent();
    let mut g: Vec<f64> = (0..=GRID)
        .map(|i| {
            let r = i as f64 / GRID as f64;
            0.5 * be(r) + c * (1.0 - r)
        })
        .collect();
    g[GRID] = 0.0;
    ChainLevel {
        g,
        step: vec![None; GRID + 1],
    }
}

fn next_level(prev: &ChainLevel) -> ChainLevel {
    let c = symmetric_exponent();
    let mut g = prev.g.clone();
    let mut step = vec![None; GRID + 1];
    let half_be: Vec<f64> = (0..=GRID).map(|i| 0.5 * be(i as f64 / GRID as f64)).collect();
    for i in 0..GRID {
        let r = i as f64 / GRID as f64;
        for (t, &h) in half_be.iter().enumerate().take(GRID).skip(i + 1) {
            let y = t as f64 / GRID as f64;
            let cand = h + (y * interp(&prev.g, r / y)).max(c * (1.0 - y));
            if cand < g[i] - 1e-15 {
                g[i] = cand;
                step[i] = Some(t as u32);
            }
        }
    }
    ChainLevel { g, step }
}

/// Tables for `1..=steps` chain steps.
fn levels(steps: usize) -> Vec<Arc<ChainLevel>> {
    let mut cache = LEVELS.lock().unwrap_or_else(|e| e.into_inner());
    while cache.len() < steps {
        let level = match cache.last() {
            None => first_level(),
            Some(prev) => next_level(prev),
        };
        cache.push(Arc::new(level));
    }
    cache[..steps].to_vec()
}

/// Intermediate layers of the best tabulated chain from `r` to 1, ascending.
fn backtrack(levels: &[Arc<ChainLevel>], r: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let (mut r, mut top) = (r, 1.0);
    let mut j = levels.len();
    while j > 1 {
        let i = (r * GRID as f64).round() as usize;
        match levels[j - 1].step[i.min(GRID)] {
            None => j -= 1,
            Some(t) => {
                let y = t as f64 / GRID as f64;
                top *= y;
                out.push(top);
                r /= y;
                j -= 1;
            }
        }
    }
    out.reverse();
    out
}

/// Exponent of a chain through the given ascending points.
fn chain_cost(points: &[f64]) -> f64 {
    let c = symmetric_exponent();
    let mut t = 0.0f64;
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= 0.0 {
            continue;
        }
        t = 0.5 * b * be(a / b) + t.max(c * (b - a));
    }
    t
}

/// Running-time exponent of explicit layers.
fn evaluate(lambda: &[f64], mu: f64, rho: &[f64]) -> f64 {
    let mut prefix = lambda.to_vec();
    prefix.push(mu);
    let mut suffix: Vec<f64> = rho.iter().map(|r| 1.0 - r).collect();
    suffix.push(1.0 - mu);
    let rho1 = rho.first().copied().unwrap_or(mu);
    be(rho1.max(0.5)).max(0.5 * be(mu) + chain_cost(&prefix).max(chain_cost(&suffix)))
}

/// Moves each free layer within its neighbours while the exponent improves.
fn polish(lambda: &mut [f64], mu: &mut f64, rho: &mut [f64]) {
    let mut current = evaluate(lambda, *mu, rho);
    for _ in 0..30 {
        let before = current;
        // Coordinates in increasing order: lambda[1..], mu, rho reversed.
        let free = lambda.len() - 1 + 1 + rho.len();
        for idx in 0..free {
            let mut seq: Vec<f64> = lambda.to_vec();
            seq.push(*mu);
            seq.extend(rho.iter().rev());
            seq.push(1.0);
            let pos = idx + 1;
            let (lo, hi) = (seq[pos - 1], seq[pos + 1]);
            if hi - lo < 1e-12 {
                continue;
            }
            let assign = |x: f64, lambda: &mut [f64], mu: &mut f64, rho: &mut [f64]| {
                if pos < lambda.len() {
                    lambda[pos] = x;
                } else if pos == lambda.len() {
                    *mu = x;
                } else {
                    let r = rho.len() - (pos - lambda.len());
                    rho[r] = x;
                }
            };
            let (mut l2, mut m2, mut r2) = (lambda.to_vec(), *mu, rho.to_vec());
            let (x, v) = golden_min(
                |x| {
                    assign(x, &mut l2, &mut m2, &mut r2);
                    evaluate(&l2, m2, &r2)
                },
                lo,
                hi,
                50,
            );
            if v < current {
                assign(x, lambda, mu, rho);
                current = v;
            }
        }
        if before - current < 1e-12 {
            break;
        }
    }
}

fn dedup(v: &mut Vec<f64>) {
    v.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
}

/// Best layers for precalculated fraction `lambda1` and up to `k` intermediate
/// layers per chain, together with their exponent.
///
/// `lambda1 ≥ 1` means everything is precalculated and the exponent is 0.
pub fn layer_program(k: usize, lambda1: f64) -> Result<(LayerParams, f64)> {
    if k > MAX_LAYERS {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds {MAX_LAYERS}")));
    }
    if lambda1.is_nan() || lambda1 < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "lambda1 = {lambda1} must be non-negative"
        )));
    }
    if lambda1 >= 1.0 {
        let p = LayerParams {
            k,
            lambda: vec![1.0],
            mu: 1.0,
            rho: vec![],
            exponent: 0.0,
        };
        return Ok((p, 0.0));
    }
    let tables = levels(k + 1);
    let g = &tables[k].g;

    let objective = |mu: f64, u1: f64| {
        let prefix = mu * interp(g, lambda1 / mu);
        let w = 1.0 - mu;
        let suffix = if w > 0.0 { w * interp(g, u1 / w) } else { 0.0 };
        be((1.0 - u1).max(0.5)).max(0.5 * be(mu) + prefix.max(suffix))
    };
    let inner = |mu: f64| grid_min(|u| objective(mu, u), 0.0, 1.0 - mu, COARSE);
    let (mu, _) = grid_min(|mu| inner(mu).1, lambda1, 1.0 - 1e-9, COARSE);
    let (u1, _) = inner(mu);

    let mut lambda = vec![lambda1];
    lambda.extend(backtrack(&tables, lambda1 / mu).into_iter().map(|y| y * mu));
    let w = 1.0 - mu;
    let mut us: Vec<f64> = vec![u1];
    if w > 0.0 {
        us.extend(backtrack(&tables, u1 / w).into_iter().map(|y| y * w));
    }
    let mut rho: Vec<f64> = us.iter().map(|u| 1.0 - u).filter(|&r| r > mu).collect();
    let mut mu = mu;
    dedup(&mut lambda);
    lambda.retain(|&x| x < mu || x == lambda1);
    dedup(&mut rho);
    polish(&mut lambda, &mut mu, &mut rho);
    dedup(&mut lambda);
    dedup(&mut rho);
    lambda.retain(|&x| x < mu - 1e-9 || x == lambda1);
    rho.retain(|&r| r > mu + 1e-9);
    let exponent = evaluate(&lambda, mu, &rho);
    Ok((
        LayerParams {
            k,
            lambda,
            mu,
            rho,
            exponent,
        },
        exponent,
    ))
}

/// One row of the exponent curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub lambda1: f64,
    pub k: usize,
    pub exponent: f64,
}

/// `T(λ₁)` for every `k` in `ks` and every grid value.
pub fn emit_curve(ks: &[usize], grid: &[f64]) -> Result<Vec<CurvePoint>> {
    let mut rows = Vec::with_capacity(ks.len() * grid.len());
    for &k in ks {
        for &lambda1 in grid {
            let (_, exponent) = layer_program(k, lambda1)?;
            rows.push(CurvePoint { lambda1, k, exponent });
        }
    }
    Ok(rows)
}

/// The curve as CSV with header `lambda1,k,T`.
pub fn curve_csv(rows: &[CurvePoint]) -> String {
    let mut out = String::from("lambda1,k,T\n");
    for r in rows {
        out.push_str(&format!("{:.6},{},{:.6}\n", r.lambda1, r.k, r.exponent));
    }
    out
}
