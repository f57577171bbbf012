//! Two-stage polynomial-space treewidth and its time-space tradeoff.
//!
//! Some optimal decomposition has a bag of one of two kinds: a potential
//! maximal clique `Ω` leaving a component of at most `βn` vertices, or a
//! separator `S = N(C)` for a connected `C` with `βn ≤ |C| ≤ (1 − β)n − |S|`.
//! Stage 1 tries every bag candidate of the first kind, stage 2 every
//! neighbourhood of the second kind, and the answer is the smallest fixed-bag
//! width found.

use rayon::prelude::*;

use crate::enumeration::{enumerate_bag_candidates, enumerate_connected_sets, ConnectedSetQuery};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ordering::{tw_dp, tw_fixed_bag_counted, tw_split_components_counted, twr_table_work, InnerSolver, Stats};
use crate::vertex_set::VertexSet;

pub const DEFAULT_BETA: f64 = 0.38685;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveConfig {
    pub beta: f64,
    pub inner: InnerSolver,
    /// Components with at most this many vertices go straight to the subset DP.
    pub fallback_threshold: usize,
    /// Worker threads for candidate evaluation; 1 runs sequentially.
    pub threads: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            beta: DEFAULT_BETA,
            inner: InnerSolver::Dnc,
            fallback_threshold: 6,
            threads: 1,
        }
    }
}

impl SolveConfig {
    pub fn check(&self) -> Result<()> {
        if !(0.0..=0.5).contains(&self.beta) {
            return Err(Error::InvalidParameter(format!(
                "beta = {} outside [0, 1/2]",
                self.beta
            )));
        }
        if self.threads == 0 {
            return Err(Error::InvalidParameter("threads must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FvOutcome {
    pub width: i32,
    pub stats: Stats,
    /// For each connected component, a bag of some optimal decomposition of
    /// it (in the vertex indices of the input graph); empty when the component
    /// was solved directly.
    pub bags: Vec<VertexSet>,
}

/// `⌊x⌋` with a small tolerance so that products like `0.5 · 10` are not lost to rounding.
pub(crate) fn floor_frac(x: f64) -> usize {
    (x + 1e-9).floor().max(0.0) as usize
}

pub(crate) fn ceil_frac(x: f64) -> usize {
    (x - 1e-9).ceil().max(0.0) as usize
}

/// Integer ranges of both stages for a connected graph on `n` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StageBounds {
    /// Stage 1 component sizes `0..=c1_max`.
    pub c1_max: usize,
    /// Stage 2 separator sizes `1..=s_max`.
    pub s_max: usize,
    /// Stage 2 component sizes start at `c2_min` (at least 1).
    pub c2_min: usize,
    /// Stage 2 component sizes end at `c2_top - s`.
    pub c2_top: usize,
}

impl StageBounds {
    pub fn new(n: usize, beta: f64) -> Self {
        let nf = n as f64;
        StageBounds {
            c1_max: floor_frac(beta * nf).min(n),
            s_max: floor_frac((1.0 - 2.0 * beta) * nf),
            c2_min: ceil_frac(beta * nf).max(1),
            c2_top: floor_frac((1.0 - beta) * nf),
        }
    }

    /// Stage 2 component sizes for separator size `s`.
    pub fn c2_range(&self, s: usize) -> std::ops::RangeInclusive<usize> {
        self.c2_min..=self.c2_top.saturating_sub(s)
    }
}

/// Runs `solve` on every connected component and combines the answers.
pub(crate) fn per_component<F>(g: &Graph, mut solve: F) -> Result<FvOutcome>
where
    F: FnMut(&Graph) -> Result<(i32, VertexSet, Stats)>,
{
    let mut out = FvOutcome {
        width: -1,
        ..Default::default()
    };
    for comp in g.components(g.vertices()) {
        let (h, map) = g.induced_subgraph(comp)?;
        let (w, bag, stats) = solve(&h)?;
        out.width = out.width.max(w);
        out.stats.merge(stats);
        out.bags.push(bag.iter().map(|v| map[v]).collect());
    }
    Ok(out)
}

pub(crate) fn direct_dp(g: &Graph) -> Result<(i32, VertexSet, Stats)> {
    let (w, table) = tw_dp(g, VertexSet::EMPTY)?;
    let stats = Stats {
        steps: twr_table_work(g.n()),
        peak_entries: table.len(),
    };
    Ok((w, VertexSet::EMPTY, stats))
}

#[derive(Clone, Copy)]
struct Best {
    width: i32,
    bag: VertexSet,
    stats: Stats,
}

impl Best {
    fn none() -> Self {
        Best {
            width: i32::MAX,
            bag: VertexSet::EMPTY,
            stats: Stats::default(),
        }
    }

    fn offer(mut self, width: i32, bag: VertexSet) -> Self {
        if (width, bag) < (self.width, self.bag) {
            self.width = width;
            self.bag = bag;
        }
        self
    }

    fn join(self, other: Best) -> Self {
        let mut stats = self.stats;
        stats.merge(other.stats);
        let pick = if (other.width, other.bag) < (self.width, self.bag) {
            other
        } else {
            self
        };
        Best { stats, ..pick }
    }
}

fn fold_candidates<I, E>(cands: I, threads: usize, eval: E) -> Result<Best>
where
    I: Iterator<Item = VertexSet> + Send,
    E: Fn(VertexSet, &mut Stats) -> Result<i32> + Sync,
{
    let visit = |mut acc: Best, bag: VertexSet| -> Result<Best> {
        acc.stats.steps += 1;
        let w = eval(bag, &mut acc.stats)?;
        Ok(acc.offer(w, bag))
    };
    if threads <= 1 {
        let mut acc = Best::none();
        for bag in cands {
            acc = visit(acc, bag)?;
        }
        Ok(acc)
    } else {
        cands
            .par_bridge()
            .try_fold(Best::none, visit)
            .try_reduce(Best::none, |a, b| Ok(a.join(b)))
    }
}

/// Stage 1 and stage 2 on a connected graph.
fn two_stage(g: &Graph, cfg: &SolveConfig) -> Result<(i32, VertexSet, Stats)> {
    let n = g.n();
    if n <= cfg.fallback_threshold.max(1) {
        return direct_dp(g);
    }
    let bounds = StageBounds::new(n, cfg.beta);
    let inner = cfg.inner;
    let mut best = Best::none();

    for c in 0..=bounds.c1_max {
        for p in 1..=n - c {
            let found = fold_candidates(enumerate_bag_candidates(g, p, c), cfg.threads, |omega, st| {
                tw_split_components_counted(g, omega, inner, st)
            })?;
            best = best.join(found);
        }
    }

    for s in 1..=bounds.s_max {
        for c in bounds.c2_range(s) {
            let cands = (0..n).flat_map(|v| {
                enumerate_connected_sets(g, ConnectedSetQuery::new(v, c - 1, s))
                    .expect("anchor in range")
                    .filter(move |comp| comp.first() == Some(v))
            });
            let found = fold_candidates(
                cands,
                cfg.threads,
                |comp, st| Ok(separator_width(g, comp, inner, st)?.0),
            )?;
            // Stage 2 candidates are reported by their separator.
            let bag = if found.width == i32::MAX {
                VertexSet::EMPTY
            } else {
                g.neighborhood(found.bag)
            };
            best = best.join(Best { bag, ..found });
        }
    }
    Ok((best.width, best.bag, best.stats))
}

/// `tw(G, N(C))` as `max(tw(G[S ∪ C], S), tw(G[V − C], S))` with `S = N(C)`.
pub fn separator_width(g: &Graph, comp: VertexSet, inner: InnerSolver, stats: &mut Stats) -> Result<(i32, VertexSet)> {
    let sep = g.neighborhood(comp);
    let (left, _) = g.induced_subgraph(comp | sep)?;
    let left_chi = VertexSet::from_bits((comp | sep).extract(sep));
    let a = tw_fixed_bag_counted(&left, left_chi, inner, stats)?;
    let rest = g.vertices() - comp;
    let (right, _) = g.induced_subgraph(rest)?;
    let right_chi = VertexSet::from_bits(rest.extract(sep));
    let b = tw_split_components_counted(&right, right_chi, inner, stats)?;
    Ok((a.max(b), sep))
}

fn run<F: FnOnce() -> Result<FvOutcome> + Send>(threads: usize, f: F) -> Result<FvOutcome> {
    if threads <= 1 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
        .install(f)
}

/// Exact treewidth in polynomial space (with the divide and conquer inner solver).
pub fn solve_poly_space(g: &Graph, cfg: &SolveConfig) -> Result<FvOutcome> {
    cfg.check()?;
    run(cfg.threads, || per_component(g, |h| two_stage(h, cfg)))
}

/// Exact treewidth with the subset DP inside and `β = 1/2`; `stats.peak_entries`
/// is the largest DP table held at any time.
pub fn solve_tradeoff(g: &Graph, threads: usize) -> Result<FvOutcome> {
    let cfg = SolveConfig {
        beta: 0.5,
        inner: InnerSolver::Dp,
        threads,
        ..Default::default()
    };
    solve_poly_space(g, &cfg)
}
