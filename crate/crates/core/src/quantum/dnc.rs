use super::ledger::CostLedger;
use super::qmin::{qmin_find, sqrt_charge};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ordering::twr_dnc;
use crate::vertex_set::{binomial, unrank_subset, VertexSet};

pub const DNC_PHASE: &str = "dnc";

/// Charge of the halving recursion on `m` vertices:
/// `D(0) = 0`, `D(1) = 1`, `D(m) = ⌈√C(m, ⌈m/2⌉)⌉ · (D(⌈m/2⌉) + D(⌊m/2⌋))`.
pub fn dnc_charge(m: usize) -> u128 {
    match m {
        0 => 0,
        1 => 1,
        _ => {
            let k = m.div_ceil(2);
            sqrt_charge(binomial(m, k)).saturating_mul(dnc_charge(k).saturating_add(dnc_charge(m - k)))
        }
    }
}

fn check(g: &Graph, l: VertexSet, s: VertexSet) -> Result<()> {
    g.check_subset(l)?;
    g.check_subset(s)?;
    if !l.is_disjoint(s) {
        return Err(Error::Overlap((l & s).bits()));
    }
    Ok(())
}

/// `TWR_G(L, S)` by halving, with each split searched by minimum finding.
///
/// The charge depends only on `|S|`, so it is booked from [`dnc_charge`] and
/// the value comes from the pruned classical recursion.
/// [`quantum_dnc_traced`] runs the searches one by one and books the same total.
pub fn quantum_dnc(g: &Graph, l: VertexSet, s: VertexSet, ledger: &mut CostLedger) -> Result<usize> {
    let value = twr_dnc(g, l, s)?;
    ledger.charge(DNC_PHASE, dnc_charge(s.len()));
    Ok(value)
}

/// [`quantum_dnc`] with every split routed through [`qmin_find`].
/// The work is exponential in `|S|` without pruning; meant for small sets.
pub fn quantum_dnc_traced(g: &Graph, l: VertexSet, s: VertexSet, ledger: &mut CostLedger) -> Result<usize> {
    check(g, l, s)?;
    traced(g, l, s, ledger).map(|v| v as usize)
}

fn traced(g: &Graph, l: VertexSet, s: VertexSet, ledger: &mut CostLedger) -> Result<u32> {
    match s.len() {
        0 => Ok(0),
        1 => {
            ledger.charge(DNC_PHASE, 1);
            Ok(g.q_size(l, s.first().unwrap()))
        }
        m => {
            let k = m.div_ceil(2);
            let (value, _) = qmin_find(binomial(m, k), ledger, DNC_PHASE, |i, sub| {
                let first = unrank_subset(s, k, i).expect("index below C(m, k)");
                let a = traced(g, l, first, sub)?;
                let b = traced(g, l | first, s - first, sub)?;
                Ok(a.max(b))
            })?;
            Ok(value)
        }
    }
}
