use super::ledger::CostLedger;
use crate::enumeration::{count_bound, unrank_connected_set, ConnectedSetQuery};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// `⌈√n⌉`.
pub fn sqrt_charge(n: u128) -> u128 {
    let r = n.isqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// Minimum of `oracle` over `0..n` under the square-root cost model.
///
/// Every index is evaluated, each against a fresh ledger, and the search costs
/// `⌈√n⌉` times the most expensive of those ledgers (one unit per call if no
/// call charged anything). One copy keeps the phases of that ledger; the
/// repetitions on top of it are booked under `phase`. Ties go to the smallest
/// index.
pub fn qmin_find<T, F>(n: u128, ledger: &mut CostLedger, phase: &'static str, mut oracle: F) -> Result<(T, u128)>
where
    T: Ord,
    F: FnMut(u128, &mut CostLedger) -> Result<T>,
{
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    let mut best: Option<(T, u128)> = None;
    let mut heaviest = CostLedger::new();
    for i in 0..n {
        let mut sub = CostLedger::new();
        let value = oracle(i, &mut sub)?;
        if sub.total() > heaviest.total() {
            heaviest = sub;
        }
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, i));
        }
    }
    let factor = sqrt_charge(n);
    if heaviest.total() == 0 {
        ledger.charge(phase, factor);
    } else {
        ledger.merge(&heaviest);
        ledger.charge(phase, heaviest.total().saturating_mul(factor - 1));
    }
    Ok(best.expect("non-empty domain"))
}

/// Minimum of `oracle` over the connected sets of `q`, searched over the leaf
/// indices of the branching tree. Leaves that do not decode to a member of the
/// family rank above every real value; an empty family gives the sentinel `n`.
pub fn qmin_over_connected_sets<F>(
    g: &Graph,
    q: ConnectedSetQuery,
    ledger: &mut CostLedger,
    phase: &'static str,
    mut oracle: F,
) -> Result<(u32, Option<VertexSet>)>
where
    F: FnMut(VertexSet, &mut CostLedger) -> Result<u32>,
{
    q.check(g)?;
    let bound = count_bound(q.b, q.f);
    if bound.saturated {
        return Err(Error::BoundOverflow(format!("C({}, {})", q.b + q.f, q.b)));
    }
    let ((absent, value, set), _) = qmin_find(
        bound.value as u128,
        ledger,
        phase,
        |i, sub| match unrank_connected_set(g, q, i as u64)? {
            Some(s) => Ok((false, oracle(s, sub)?, Some(s))),
            None => Ok((true, 0, None)),
        },
    )?;
    Ok(if absent { (g.n() as u32, None) } else { (value, set) })
}
