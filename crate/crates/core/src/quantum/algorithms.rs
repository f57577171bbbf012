use std::collections::HashMap;

use super::dnc::{dnc_charge, DNC_PHASE};
use super::layered::{dispatch_subproblem, PrecalcStore};
use super::ledger::CostLedger;
use super::qmin::qmin_find;
use crate::enumeration::{count_bound, is_bag_candidate, unrank_connected_set, ConnectedSetQuery};
use crate::error::{Error, Result};
use crate::exponents::MAX_LAYERS;
use crate::fv::StageBounds;
use crate::graph::Graph;
use crate::ordering::twr_dnc;
use crate::vertex_set::{binomial, unrank_subset, VertexSet};

pub const STAGE1: &str = "stage1";
pub const STAGE2: &str = "stage2";
pub const DIRECT: &str = "direct";

pub const Q_DP_BETA: f64 = 0.3755;
pub const Q_MAIN_ALPHA: f64 = 0.15447;
pub const Q_MAIN_BETA: f64 = 0.38640;
pub const Q_MAIN_LAYERS: usize = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuantumOutcome {
    pub width: i32,
    /// For each connected component, a bag of an optimal decomposition in the
    /// input's vertex indices; empty when the component was solved directly.
    pub bags: Vec<VertexSet>,
}

fn check_fraction(name: &str, x: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&x) {
        return Err(Error::InvalidParameter(format!("{name} = {x} outside [0, 1/2]")));
    }
    Ok(())
}

fn per_component<F>(g: &Graph, ledger: &mut CostLedger, mut solve: F) -> Result<QuantumOutcome>
where
    F: FnMut(&Graph, &mut CostLedger) -> Result<(i32, VertexSet)>,
{
    let mut out = QuantumOutcome {
        width: -1,
        bags: Vec::new(),
    };
    for comp in g.components(g.vertices()) {
        let (h, map) = g.induced_subgraph(comp)?;
        let (w, bag) = if h.n() <= 2 {
            ledger.charge(DIRECT, 1);
            (h.n() as i32 - 1, VertexSet::EMPTY)
        } else {
            solve(&h, ledger)?
        };
        out.width = out.width.max(w);
        out.bags.push(bag.iter().map(|v| map[v]).collect());
    }
    Ok(out)
}

/// `tw(G, χ)` from the components `D` of `G − χ`, each solved by `inner(D, N(D))`.
fn fixed_bag_value<I>(g: &Graph, chi: VertexSet, inner: &mut I, ledger: &mut CostLedger) -> Result<i32>
where
    I: FnMut(VertexSet, VertexSet, &mut CostLedger) -> Result<i32>,
{
    let mut width = chi.len() as i32 - 1;
    for d in g.components(g.vertices() - chi) {
        width = width.max(inner(d, g.neighborhood(d), ledger)?);
    }
    Ok(width)
}

/// Both stages on a connected graph, each candidate family searched by
/// minimum finding. Stage 1 searches all `p`-subsets for each `(c, p)`;
/// stage 2 searches the leaf indices of the branching trees of all anchors
/// for each `(s, c)`, keeping a set only at its smallest vertex.
fn two_stage<I>(g: &Graph, beta: f64, ledger: &mut CostLedger, inner: &mut I) -> Result<(i32, VertexSet)>
where
    I: FnMut(VertexSet, VertexSet, &mut CostLedger) -> Result<i32>,
{
    let n = g.n();
    let sentinel = n as i32;
    let bounds = StageBounds::new(n, beta);
    let mut best = (i32::MAX, VertexSet::EMPTY);

    for c in 0..=bounds.c1_max {
        for p in 1..=n - c {
            let (found, _) = qmin_find(binomial(n, p), ledger, STAGE1, |i, sub| {
                let omega = unrank_subset(g.vertices(), p, i).expect("index in range");
                if !is_bag_candidate(g, omega, c) {
                    return Ok((sentinel, VertexSet::EMPTY));
                }
                Ok((fixed_bag_value(g, omega, inner, sub)?, omega))
            })?;
            best = best.min(found);
        }
    }

    for s in 1..=bounds.s_max {
        for c in bounds.c2_range(s) {
            let leaves = count_bound(c - 1, s);
            if leaves.saturated {
                return Err(Error::BoundOverflow(format!("C({}, {})", c - 1 + s, s)));
            }
            let u = leaves.value as u128;
            let (found, _) = qmin_find(n as u128 * u, ledger, STAGE2, |i, sub| {
                let v = (i / u) as usize;
                let q = ConnectedSetQuery::new(v, c - 1, s);
                match unrank_connected_set(g, q, (i % u) as u64)? {
                    Some(comp) if comp.first() == Some(v) => {
                        let sep = g.neighborhood(comp);
                        Ok((fixed_bag_value(g, sep, inner, sub)?, sep))
                    }
                    _ => Ok((sentinel, VertexSet::EMPTY)),
                }
            })?;
            best = best.min(found);
        }
    }
    Ok(best)
}

/// Exact treewidth with both candidate searches under minimum finding and the
/// halving recursion inside; polynomial space.
pub fn quantum_poly_space(g: &Graph, beta: f64, ledger: &mut CostLedger) -> Result<QuantumOutcome> {
    check_fraction("beta", beta)?;
    per_component(g, ledger, |h, ledger| {
        let mut values: HashMap<VertexSet, i32> = HashMap::new();
        let mut inner = |d: VertexSet, _chi: VertexSet, sub: &mut CostLedger| -> Result<i32> {
            sub.charge(DNC_PHASE, dnc_charge(d.len()));
            if let Some(&v) = values.get(&d) {
                return Ok(v);
            }
            let v = twr_dnc(h, VertexSet::EMPTY, d)? as i32;
            values.insert(d, v);
            Ok(v)
        };
        two_stage(h, beta, ledger, &mut inner)
    })
}

/// Exact treewidth with a global precalculation of `TW_G(S)` for `|S| ≤ ⌊αn⌋`
/// and every fixed-bag subproblem handed to [`dispatch_subproblem`].
pub fn improved_algorithm(
    g: &Graph,
    alpha: f64,
    beta: f64,
    k: usize,
    ledger: &mut CostLedger,
) -> Result<QuantumOutcome> {
    check_fraction("alpha", alpha)?;
    check_fraction("beta", beta)?;
    if k > MAX_LAYERS {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds {MAX_LAYERS}")));
    }
    per_component(g, ledger, |h, ledger| {
        let pre = PrecalcStore::build(h, alpha, ledger)?;
        // Repeated subproblems are replayed with their recorded cost.
        let mut seen: HashMap<VertexSet, (i32, CostLedger)> = HashMap::new();
        let mut inner = |d: VertexSet, chi: VertexSet, sub: &mut CostLedger| -> Result<i32> {
            if let Some((v, cost)) = seen.get(&d) {
                sub.merge(cost);
                return Ok(*v);
            }
            let mut cost = CostLedger::new();
            let v = dispatch_subproblem(h, d, chi, &pre, k, &mut cost)?;
            sub.merge(&cost);
            seen.insert(d, (v, cost));
            Ok(v)
        };
        two_stage(h, beta, ledger, &mut inner)
    })
}

/// [`improved_algorithm`] without precalculation: every subproblem runs the
/// symmetric layered DP.
pub fn quantum_dp(g: &Graph, ledger: &mut CostLedger) -> Result<QuantumOutcome> {
    improved_algorithm(g, 0.0, Q_DP_BETA, Q_MAIN_LAYERS, ledger)
}
