//! One entry point for every solver, with a witness ordering for the answer.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fv::{solve_poly_space, solve_tradeoff, SolveConfig, DEFAULT_BETA};
use crate::graph::Graph;
use crate::ordering::{
    ordering_width, reconstruct_ordering, tw_dp, twr_dnc_counted, twr_dnc_ordering, twr_table_work,
    EliminationOrdering, Stats,
};
use crate::quantum::{
    improved_algorithm, quantum_poly_space, CostLedger, Q_DP_BETA, Q_MAIN_ALPHA, Q_MAIN_BETA, Q_MAIN_LAYERS,
};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Subset DP over all vertex sets.
    Dp,
    /// Divide and conquer in polynomial space.
    Dnc,
    /// Two-stage polynomial-space solver.
    FvPoly,
    /// Two-stage solver with the subset DP inside and `β = 1/2`.
    Tradeoff,
    QPoly,
    QDp,
    QMain,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Dp,
        Algorithm::Dnc,
        Algorithm::FvPoly,
        Algorithm::Tradeoff,
        Algorithm::QPoly,
        Algorithm::QDp,
        Algorithm::QMain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Dp => "dp",
            Algorithm::Dnc => "dnc",
            Algorithm::FvPoly => "fv-poly",
            Algorithm::Tradeoff => "tradeoff",
            Algorithm::QPoly => "q-poly",
            Algorithm::QDp => "q-dp",
            Algorithm::QMain => "q-main",
        }
    }

    /// Whether the algorithm runs under the cost model and produces a ledger.
    pub fn is_quantum(self) -> bool {
        matches!(self, Algorithm::QPoly | Algorithm::QDp | Algorithm::QMain)
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "algorithm",
                name: s.to_string(),
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    /// Stage balance; each algorithm has its own default.
    pub beta: Option<f64>,
    /// Precalculated fraction for `q-main`.
    pub alpha: Option<f64>,
    /// Intermediate layers per chain for `q-dp` and `q-main`.
    pub layers: usize,
    pub threads: usize,
    /// Classical solvers answer graphs up to this size with the subset DP.
    pub fallback_threshold: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            beta: None,
            alpha: None,
            layers: Q_MAIN_LAYERS,
            threads: 1,
            fallback_threshold: 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub width: i32,
    /// An ordering whose width is `width`.
    pub ordering: EliminationOrdering,
    /// Work counters of the classical solvers.
    pub stats: Stats,
    /// Present exactly for the cost-model solvers.
    pub ledger: Option<CostLedger>,
}

fn dp_ordering(g: &Graph, chi: VertexSet) -> Result<(i32, EliminationOrdering)> {
    let (w, table) = tw_dp(g, chi)?;
    Ok((w, reconstruct_ordering(&table, g, chi)?))
}

/// Concatenates, component by component, orderings that eliminate the
/// component's bag last.
fn ordering_from_bags(g: &Graph, bags: &[VertexSet]) -> Result<EliminationOrdering> {
    let comps = g.components(g.vertices());
    if comps.len() != bags.len() {
        return Err(Error::Internal(format!(
            "{} bags for {} components",
            bags.len(),
            comps.len()
        )));
    }
    let mut order = Vec::with_capacity(g.n());
    for (&comp, &bag) in comps.iter().zip(bags) {
        let (h, map) = g.induced_subgraph(comp)?;
        let local = VertexSet::from_bits(comp.extract(bag));
        let (_, pi) = dp_ordering(&h, local)?;
        order.extend(pi.as_slice().iter().map(|&v| map[v]));
    }
    EliminationOrdering::new(order, g.n())
}

/// Treewidth of `g` by `algorithm`, with a witness ordering.
pub fn treewidth(g: &Graph, algorithm: Algorithm, opts: &SolveOptions) -> Result<Solution> {
    let n = g.n();
    let classical_small = !algorithm.is_quantum() && n <= opts.fallback_threshold.max(1);
    let mut stats = Stats::default();
    let mut ledger = None;
    let (width, ordering) = if classical_small || algorithm == Algorithm::Dp {
        let (w, pi) = dp_ordering(g, VertexSet::EMPTY)?;
        stats.steps = twr_table_work(n);
        stats.peak_entries = 1usize << n;
        (w, pi)
    } else {
        match algorithm {
            Algorithm::Dp => unreachable!(),
            Algorithm::Dnc => {
                let w = twr_dnc_counted(g, VertexSet::EMPTY, g.vertices(), &mut stats.steps)? as i32;
                let (_, order) = twr_dnc_ordering(g, VertexSet::EMPTY, g.vertices())?;
                (w, EliminationOrdering::new(order, n)?)
            }
            Algorithm::FvPoly | Algorithm::Tradeoff => {
                let out = if algorithm == Algorithm::Tradeoff {
                    solve_tradeoff(g, opts.threads)?
                } else {
                    let cfg = SolveConfig {
                        beta: opts.beta.unwrap_or(DEFAULT_BETA),
                        threads: opts.threads,
                        fallback_threshold: opts.fallback_threshold,
                        ..Default::default()
                    };
                    solve_poly_space(g, &cfg)?
                };
                stats = out.stats;
                (out.width, ordering_from_bags(g, &out.bags)?)
            }
            Algorithm::QPoly | Algorithm::QDp | Algorithm::QMain => {
                let mut l = CostLedger::new();
                let out = match algorithm {
                    Algorithm::QPoly => quantum_poly_space(g, opts.beta.unwrap_or(DEFAULT_BETA), &mut l)?,
                    Algorithm::QDp => improved_algorithm(g, 0.0, opts.beta.unwrap_or(Q_DP_BETA), opts.layers, &mut l)?,
                    _ => improved_algorithm(
                        g,
                        opts.alpha.unwrap_or(Q_MAIN_ALPHA),
                        opts.beta.unwrap_or(Q_MAIN_BETA),
                        opts.layers,
                        &mut l,
                    )?,
                };
                ledger = Some(l);
                (out.width, ordering_from_bags(g, &out.bags)?)
            }
        }
    };
    let check = ordering_width(g, &ordering)?;
    if check != width {
        return Err(Error::Internal(format!(
            "witness ordering has width {check}, solver reported {width}"
        )));
    }
    Ok(Solution {
        width,
        ordering,
        stats,
        ledger,
    })
}
