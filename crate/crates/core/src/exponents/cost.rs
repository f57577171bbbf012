//! Worst-case charges of the cost-model solvers for a given number of vertices.
//!
//! These follow the charging rules of the solvers with every data-dependent
//! quantity replaced by its maximum: every candidate is assumed present, a
//! fixed bag of `p` vertices is assumed to leave the most expensive split of
//! the remaining `n − p` vertices into components, and a graph is assumed to
//! split into the most expensive set of components.

use crate::enumeration::count_bound;
use crate::error::{Error, Result};
use crate::fv::{floor_frac, StageBounds};
use crate::ordering::twr_table_work;
use crate::quantum::{cached_layer_params, dnc_charge, route, sqrt_charge, LayerPlan, Route};
use crate::vertex_set::binomial;

use super::entropy::SYMMETRIC_LAMBDA;

/// `F(m) = max(f(m), max over 0 < a < m of F(a) + F(m − a))`, for `m ≤ n`.
fn superadditive(n: usize, f: impl Fn(usize) -> Result<u128>) -> Result<Vec<u128>> {
    let mut out = vec![0u128; n + 1];
    for m in 1..=n {
        let mut best = f(m)?;
        for a in 1..m {
            best = best.max(out[a].saturating_add(out[m - a]));
        }
        out[m] = best;
    }
    Ok(out)
}

/// Charge of both stages on a connected graph with `n` vertices, where `split[m]`
/// bounds the inner charge of `m` vertices left outside a fixed bag.
fn two_stage_charge(n: usize, beta: f64, split: &[u128]) -> Result<u128> {
    let b = StageBounds::new(n, beta);
    let per_call = |rest: usize| split[rest].max(1);
    let mut total = 0u128;
    for c in 0..=b.c1_max {
        for p in 1..=n - c {
            total = total.saturating_add(sqrt_charge(binomial(n, p)).saturating_mul(per_call(n - p)));
        }
    }
    for s in 1..=b.s_max {
        for c in b.c2_range(s) {
            let u = count_bound(c - 1, s);
            if u.saturated {
                return Err(Error::BoundOverflow(format!("C({}, {})", c - 1 + s, s)));
            }
            let domain = n as u128 * u.value as u128;
            total = total.saturating_add(sqrt_charge(domain).saturating_mul(per_call(n - s)));
        }
    }
    Ok(total)
}

fn check_fraction(name: &str, x: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&x) {
        return Err(Error::InvalidParameter(format!("{name} = {x} outside [0, 1/2]")));
    }
    Ok(())
}

/// Graphs with at most two vertices are answered directly for one unit.
fn component_charge(m: usize, connected: impl Fn(usize) -> Result<u128>) -> Result<u128> {
    if m <= 2 {
        Ok(1)
    } else {
        connected(m)
    }
}

/// Bound on the ledger total of the polynomial-space cost-model solver on `n` vertices.
pub fn poly_space_charge(n: usize, beta: f64) -> Result<u128> {
    check_fraction("beta", beta)?;
    let split = superadditive(n, |m| Ok(dnc_charge(m)))?;
    let per_graph = superadditive(n, |m| component_charge(m, |m| two_stage_charge(m, beta, &split)))?;
    Ok(per_graph[n])
}

fn sum_binomials(m: usize, sizes: impl Iterator<Item = usize>) -> u128 {
    sizes.fold(0u128, |acc, j| acc.saturating_add(binomial(m, j)))
}

/// Charge of the layered DP on a subproblem of `m` vertices for an integer plan.
pub fn layered_charge(plan: &LayerPlan) -> u128 {
    let m = plan.size;
    let suffix_precalc = sum_binomials(m, plan.suffix_base()..=m);
    let mut prefix = 1u128;
    let mut layers = plan.prefix.clone();
    layers.push(plan.middle);
    for w in layers.windows(2) {
        let step = sqrt_charge(binomial(w[1], w[0]));
        prefix = step.saturating_mul(prefix.saturating_add(twr_table_work(w[1] - w[0]) as u128));
    }
    let mut suffix = 1u128;
    let mut layers = plan.suffix.clone();
    layers.push(plan.middle);
    for w in layers.windows(2) {
        let step = sqrt_charge(binomial(m - w[1], w[0] - w[1]));
        suffix = step.saturating_mul(suffix.saturating_add(twr_table_work(w[0] - w[1]) as u128));
    }
    let outer = sqrt_charge(binomial(m, plan.middle)).saturating_mul(prefix.saturating_add(suffix));
    suffix_precalc.saturating_add(outer)
}

/// Charge of one dispatched subproblem of `m` vertices when subsets of up to
/// `limit` vertices are precalculated.
pub fn dispatch_charge(m: usize, limit: usize, k: usize) -> Result<u128> {
    match route(m, limit) {
        Route::Fetch => Ok(1),
        Route::Symmetric => {
            let params = cached_layer_params(k, SYMMETRIC_LAMBDA)?;
            let base = floor_frac(SYMMETRIC_LAMBDA * m as f64);
            let plan = LayerPlan::new(&params, m, base)?;
            Ok(sum_binomials(m, 0..=base).saturating_add(layered_charge(&plan)))
        }
        Route::Asymmetric => {
            let params = cached_layer_params(k, limit as f64 / m as f64)?;
            Ok(layered_charge(&LayerPlan::new(&params, m, limit)?))
        }
    }
}

/// Bound on the ledger total of the improved cost-model solver on `n` vertices.
pub fn improved_charge(n: usize, alpha: f64, beta: f64, k: usize) -> Result<u128> {
    check_fraction("alpha", alpha)?;
    check_fraction("beta", beta)?;
    let connected = |m: usize| -> Result<u128> {
        let limit = floor_frac(alpha * m as f64).min(m);
        let split = superadditive(m, |d| dispatch_charge(d, limit, k))?;
        let precalc = sum_binomials(m, 0..=limit);
        Ok(precalc.saturating_add(two_stage_charge(m, beta, &split)?))
    };
    let per_graph = superadditive(n, |m| component_charge(m, connected))?;
    Ok(per_graph[n])
}
