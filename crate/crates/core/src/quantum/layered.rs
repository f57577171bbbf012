//! Layered hypercube DP on one subproblem `G' = G[C ∪ χ]`.
//!
//! Subsets of `C` are points of a hypercube. The DP picks a middle layer `M`
//! by minimum finding and joins the best prefix path into `S ∈ M` with the
//! best suffix path out of it. Prefix paths descend through layers `L_i` down
//! to a precalculated base layer; suffix paths ascend through layers `R_i` up
//! to a layer whose values were filled in by a classical DP over the larger
//! subsets of `C`. Between consecutive layers the bridge value is
//! `TWR_{G'}(T, S − T)`.

use std::collections::HashMap;
use std::sync::Mutex;

use super::ledger::CostLedger;
use super::qmin::qmin_find;
use crate::error::{Error, Result};
use crate::exponents::{layer_program, LayerParams, SYMMETRIC_LAMBDA};
use crate::fv::floor_frac;
use crate::graph::Graph;
use crate::ordering::{twr_dp, twr_table_work};
use crate::vertex_set::{binomial, unrank_subset, VertexSet};

pub const GLOBAL_PRECALC: &str = "global-precalc";
pub const PREFIX_PRECALC: &str = "prefix-precalc";
pub const SUFFIX_PRECALC: &str = "suffix-precalc";
pub const OUTER_MIN: &str = "outer-min";
pub const PREFIX_CHAIN: &str = "prefix-chain";
pub const SUFFIX_CHAIN: &str = "suffix-chain";
pub const FETCH: &str = "fetch";

/// `TW_G(S)` for every `S` of at most `limit` vertices inside a ground set.
#[derive(Clone, Debug)]
pub struct PrecalcStore {
    pub alpha: f64,
    pub limit: usize,
    table: HashMap<VertexSet, u8>,
}

impl PrecalcStore {
    /// Global store of `G` for `|S| ≤ ⌊αn⌋`; books one classical step per entry.
    pub fn build(g: &Graph, alpha: f64, ledger: &mut CostLedger) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} outside [0, 1]")));
        }
        let limit = floor_frac(alpha * g.n() as f64).min(g.n());
        Ok(Self::within(g, g.vertices(), alpha, limit, ledger, GLOBAL_PRECALC))
    }

    fn within(
        g: &Graph,
        ground: VertexSet,
        alpha: f64,
        limit: usize,
        ledger: &mut CostLedger,
        phase: &'static str,
    ) -> Self {
        let mut table = HashMap::new();
        table.insert(VertexSet::EMPTY, 0u8);
        for size in 1..=limit.min(ground.len()) {
            for s in ground.subsets_of_size(size) {
                let best = s
                    .iter()
                    .map(|v| {
                        let rest = s.without(v);
                        (table[&rest] as u32).max(g.q_size(rest, v))
                    })
                    .min()
                    .unwrap();
                table.insert(s, best as u8);
            }
        }
        ledger.classical(phase, table.len() as u128);
        PrecalcStore { alpha, limit, table }
    }

    pub fn get(&self, s: VertexSet) -> Option<u32> {
        self.table.get(&s).map(|&v| v as u32)
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (VertexSet, u32)> + '_ {
        self.table.iter().map(|(&s, &v)| (s, v as u32))
    }
}

/// Integer layer sizes for a subproblem with `size = |C|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerPlan {
    pub size: usize,
    /// Ascending; `prefix[0]` is the precalculated base layer.
    pub prefix: Vec<usize>,
    pub middle: usize,
    /// Descending; `suffix[0]` is the layer filled by the suffix precalculation.
    pub suffix: Vec<usize>,
}

impl LayerPlan {
    /// Rounds the fractions of `params` to sizes, with `base` as the bottom layer.
    ///
    /// Sizes are rounded to nearest. A layer whose size does not exceed its
    /// predecessor in the chain is dropped, and the middle layer is moved just
    /// above the base if it would otherwise not lie above it.
    pub fn new(params: &LayerParams, size: usize, base: usize) -> Result<Self> {
        if base >= size {
            return Err(Error::InvalidLayers(format!(
                "base layer {base} not below |C| = {size}"
            )));
        }
        let n = size as f64;
        let round = |x: f64| ((x * n).round().max(0.0) as usize).min(size);
        let middle = round(params.mu).max(base + 1);
        let mut prefix = vec![base];
        for &x in params.lambda.iter().skip(1) {
            let l = round(x);
            if l > *prefix.last().unwrap() && l < middle {
                prefix.push(l);
            }
        }
        let mut suffix: Vec<usize> = Vec::new();
        for &x in &params.rho {
            let r = round(x);
            if r > middle && suffix.last().is_none_or(|&prev| r < prev) {
                suffix.push(r);
            }
        }
        Ok(LayerPlan {
            size,
            prefix,
            middle,
            suffix,
        })
    }

    /// Smallest subset size covered by the suffix precalculation.
    pub fn suffix_base(&self) -> usize {
        self.suffix.first().copied().unwrap_or(self.middle)
    }
}

fn check_subproblem(g: &Graph, c: VertexSet, chi: VertexSet) -> Result<()> {
    g.check_subset(c)?;
    g.check_subset(chi)?;
    if !c.is_disjoint(chi) {
        return Err(Error::NotComponentUnion(format!(
            "C and chi share {:?}",
            (c & chi).to_vec()
        )));
    }
    let outside = g.neighborhood(c) - chi;
    if !outside.is_empty() {
        return Err(Error::NotComponentUnion(format!(
            "C has neighbours {:?} outside chi",
            outside.to_vec()
        )));
    }
    Ok(())
}

type Memo = HashMap<(bool, usize, VertexSet), (u32, CostLedger)>;

struct Run<'a> {
    gp: Graph,
    c: VertexSet,
    plan: LayerPlan,
    pre: &'a PrecalcStore,
    suffix_table: HashMap<VertexSet, u8>,
    memo: Memo,
}

impl Run<'_> {
    /// `TW'_{G'}(S)` for every `S ⊆ C` with `|S| ≥ base`, largest sets first.
    fn fill_suffix(&mut self, ledger: &mut CostLedger) {
        let mut table = HashMap::new();
        table.insert(self.c, 0u8);
        for size in (self.plan.suffix_base()..self.c.len()).rev() {
            for s in self.c.subsets_of_size(size) {
                let best = (self.c - s)
                    .iter()
                    .map(|v| (table[&s.with(v)] as u32).max(self.gp.q_size(s, v)))
                    .min()
                    .unwrap();
                table.insert(s, best as u8);
            }
        }
        ledger.classical(SUFFIX_PRECALC, table.len() as u128);
        self.suffix_table = table;
    }

    /// `TW_{G'}(S)` for `S` on prefix level `level` (`prefix.len()` is the middle layer).
    fn best_prefix(&mut self, level: usize, s: VertexSet) -> Result<(u32, CostLedger)> {
        if let Some(hit) = self.memo.get(&(false, level, s)) {
            return Ok(hit.clone());
        }
        let mut ledger = CostLedger::new();
        let value = if level == 0 {
            ledger.charge(PREFIX_CHAIN, 1);
            self.pre.get(s).ok_or(Error::IncompleteTable(s.bits()))?
        } else {
            let below = self.plan.prefix[level - 1];
            let (v, _) = qmin_find(binomial(s.len(), below), &mut ledger, PREFIX_CHAIN, |i, sub| {
                let t = unrank_subset(s, below, i).expect("index in range");
                let (head, cost) = self.best_prefix(level - 1, t)?;
                sub.merge(&cost);
                let bridge = twr_dp(&self.gp, t, s - t)? as u32;
                sub.charge(PREFIX_CHAIN, twr_table_work((s - t).len()) as u128);
                Ok(head.max(bridge))
            })?;
            v
        };
        self.memo.insert((false, level, s), (value, ledger.clone()));
        Ok((value, ledger))
    }

    /// `TW'_{G'}(S)` for `S` on suffix level `level` (`suffix.len()` is the middle layer).
    fn best_suffix(&mut self, level: usize, s: VertexSet) -> Result<(u32, CostLedger)> {
        if let Some(hit) = self.memo.get(&(true, level, s)) {
            return Ok(hit.clone());
        }
        let mut ledger = CostLedger::new();
        let value = if level == 0 {
            ledger.charge(SUFFIX_CHAIN, 1);
            *self.suffix_table.get(&s).ok_or(Error::IncompleteTable(s.bits()))? as u32
        } else {
            let above = self.plan.suffix[level - 1];
            let free = self.c - s;
            let grow = above - s.len();
            let (v, _) = qmin_find(binomial(free.len(), grow), &mut ledger, SUFFIX_CHAIN, |i, sub| {
                let extra = unrank_subset(free, grow, i).expect("index in range");
                let (tail, cost) = self.best_suffix(level - 1, s | extra)?;
                sub.merge(&cost);
                let bridge = twr_dp(&self.gp, s, extra)? as u32;
                sub.charge(SUFFIX_CHAIN, twr_table_work(grow) as u128);
                Ok(tail.max(bridge))
            })?;
            v
        };
        self.memo.insert((true, level, s), (value, ledger.clone()));
        Ok((value, ledger))
    }
}

/// `TW_{G'}(C)` for `G' = G[C ∪ χ]` by the layered DP.
///
/// `C` must be a union of components of `G − χ`, `pre` must hold `TW_G(S)` for
/// every `S ⊆ C` up to `pre.limit` vertices, and `params.lambda[0] · |C|` must
/// round down to `pre.limit`. If `|C| ≤ pre.limit` the value is looked up.
pub fn asym_dp(
    g: &Graph,
    c: VertexSet,
    chi: VertexSet,
    params: &LayerParams,
    pre: &PrecalcStore,
    ledger: &mut CostLedger,
) -> Result<u32> {
    check_subproblem(g, c, chi)?;
    let size = c.len();
    if size <= pre.limit {
        ledger.charge(FETCH, 1);
        return pre.get(c).ok_or(Error::IncompleteTable(c.bits()));
    }
    if !params.is_strict_chain() {
        return Err(Error::InvalidLayers(format!(
            "fractions not strictly increasing: {params:?}"
        )));
    }
    let lambda1 = params.lambda.first().copied().unwrap_or(0.0);
    if floor_frac(lambda1 * size as f64) != pre.limit {
        return Err(Error::InvalidLayers(format!(
            "lambda1 = {lambda1} does not match a base layer of {} out of {size}",
            pre.limit
        )));
    }
    let plan = LayerPlan::new(params, size, pre.limit)?;
    let mut run = Run {
        gp: g.restricted(c | chi)?,
        c,
        plan,
        pre,
        suffix_table: HashMap::new(),
        memo: HashMap::new(),
    };
    run.fill_suffix(ledger);
    let middle = run.plan.middle;
    let (top_prefix, top_suffix) = (run.plan.prefix.len(), run.plan.suffix.len());
    let (value, _) = qmin_find(binomial(size, middle), ledger, OUTER_MIN, |i, sub| {
        let s = unrank_subset(c, middle, i).expect("index in range");
        let (a, ca) = run.best_prefix(top_prefix, s)?;
        let (b, cb) = run.best_suffix(top_suffix, s)?;
        sub.merge(&ca);
        sub.merge(&cb);
        Ok(a.max(b))
    })?;
    Ok(value)
}

static PARAMS: Mutex<Vec<((usize, u64), LayerParams)>> = Mutex::new(Vec::new());

/// [`layer_program`] with results kept for reuse.
pub fn cached_layer_params(k: usize, lambda1: f64) -> Result<LayerParams> {
    let key = (k, lambda1.to_bits());
    if let Some((_, p)) = PARAMS
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .iter()
        .find(|(kk, _)| *kk == key)
    {
        return Ok(p.clone());
    }
    let (p, _) = layer_program(k, lambda1)?;
    PARAMS.lock().unwrap_or_else(|e| e.into_inner()).push((key, p.clone()));
    Ok(p)
}

/// Which way [`dispatch_subproblem`] handles a subproblem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    Fetch,
    Symmetric,
    Asymmetric,
}

/// The route for `|C| = size` when subsets up to `limit` are precalculated.
pub fn route(size: usize, limit: usize) -> Route {
    if size <= limit {
        Route::Fetch
    } else if limit as f64 <= SYMMETRIC_LAMBDA * size as f64 {
        Route::Symmetric
    } else {
        Route::Asymmetric
    }
}

/// `tw(G[C ∪ χ], χ) = max(TW_{G'}(C), |χ| − 1)`, choosing between a lookup, the
/// symmetric layered DP with its own base layer, and the asymmetric one on the
/// global store.
pub fn dispatch_subproblem(
    g: &Graph,
    c: VertexSet,
    chi: VertexSet,
    pre: &PrecalcStore,
    k: usize,
    ledger: &mut CostLedger,
) -> Result<i32> {
    check_subproblem(g, c, chi)?;
    let size = c.len();
    let tw = match route(size, pre.limit) {
        Route::Fetch => {
            ledger.charge(FETCH, 1);
            pre.get(c).ok_or(Error::IncompleteTable(c.bits()))?
        }
        Route::Symmetric => {
            let params = cached_layer_params(k, SYMMETRIC_LAMBDA)?;
            let base = floor_frac(SYMMETRIC_LAMBDA * size as f64);
            let gp = g.restricted(c | chi)?;
            let local = PrecalcStore::within(&gp, c, SYMMETRIC_LAMBDA, base, ledger, PREFIX_PRECALC);
            asym_dp(g, c, chi, &params, &local, ledger)?
        }
        Route::Asymmetric => {
            let params = cached_layer_params(k, pre.limit as f64 / size as f64)?;
            asym_dp(g, c, chi, &params, pre, ledger)?
        }
    };
    Ok((tw as i32).max(chi.len() as i32 - 1))
}
