use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ordering::{twr_dnc_counted, EliminationOrdering, InnerSolver, WidthTable};
use crate::vertex_set::VertexSet;

const UNSET: u8 = u8::MAX;

/// Work counters shared by the classical solvers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// `Q` evaluations, counted as performed by the divide and conquer and as
    /// `m·2^(m-1)` for a subset DP over `m` vertices.
    pub steps: u64,
    /// Largest number of DP entries held at once.
    pub peak_entries: usize,
}

impl Stats {
    pub fn merge(&mut self, other: Stats) {
        self.steps += other.steps;
        self.peak_entries = self.peak_entries.max(other.peak_entries);
    }
}

/// Number of `(T, v)` pairs visited by [`twr_table`] on an `m`-vertex set.
pub fn twr_table_work(m: usize) -> u64 {
    if m == 0 {
        0
    } else {
        (m as u64) << (m - 1)
    }
}

fn check_disjoint(g: &Graph, l: VertexSet, s: VertexSet) -> Result<()> {
    g.check_subset(l)?;
    g.check_subset(s)?;
    if !l.is_disjoint(s) {
        return Err(Error::Overlap((l & s).bits()));
    }
    Ok(())
}

/// `TWR_G(L, T)` for every `T ⊆ S`, swept layer by layer in increasing size.
///
/// Each entry records the vertex placed last; ties go to the smallest index.
pub fn twr_table(g: &Graph, l: VertexSet, s: VertexSet) -> Result<WidthTable> {
    check_disjoint(g, l, s)?;
    let verts = s.to_vec();
    let m = verts.len();
    let mut table = WidthTable::dense(s);
    table.set_code(0, 0, u8::MAX);
    for k in 1..=m {
        for code_set in VertexSet::full(m).subsets_of_size(k) {
            let code = code_set.bits();
            let t = s.deposit(code);
            let mut best = UNSET;
            let mut arg = u8::MAX;
            for i in code_set {
                let sub = table.value_at_code((code ^ (1 << i)) as usize);
                if sub >= best {
                    continue;
                }
                let v = verts[i];
                let q = g.q_size(l | t.without(v), v) as u8;
                let val = sub.max(q);
                if val < best {
                    best = val;
                    arg = v as u8;
                }
            }
            table.set_code(code as usize, best, arg);
        }
    }
    Ok(table)
}

/// `TWR_G(L, S)` by subset dynamic programming.
pub fn twr_dp(g: &Graph, l: VertexSet, s: VertexSet) -> Result<usize> {
    let table = twr_table(g, l, s)?;
    Ok(table.get(s).expect("full table") as usize)
}

fn bag_width(g: &Graph, chi: VertexSet, rest: usize) -> i32 {
    if g.n() == 0 {
        -1
    } else {
        (rest as i32).max(chi.len() as i32 - 1)
    }
}

/// `tw(G, χ) = max(TW_G(V − χ), |χ| − 1)` together with the table of `TW_G(S)`, `S ⊆ V − χ`.
pub fn tw_dp(g: &Graph, chi: VertexSet) -> Result<(i32, WidthTable)> {
    g.check_subset(chi)?;
    let rest = g.vertices() - chi;
    let table = twr_table(g, VertexSet::EMPTY, rest)?;
    let w = bag_width(g, chi, table.get(rest).expect("full table") as usize);
    Ok((w, table))
}

/// `tw(G, χ)` with `TW_G(V − χ)` from the chosen inner solver.
pub fn tw_fixed_bag(g: &Graph, chi: VertexSet, inner: InnerSolver) -> Result<i32> {
    tw_fixed_bag_counted(g, chi, inner, &mut Stats::default())
}

pub fn tw_fixed_bag_counted(g: &Graph, chi: VertexSet, inner: InnerSolver, stats: &mut Stats) -> Result<i32> {
    g.check_subset(chi)?;
    let rest = g.vertices() - chi;
    let tw = match inner {
        InnerSolver::Dp => {
            let table = twr_table(g, VertexSet::EMPTY, rest)?;
            stats.steps += twr_table_work(rest.len());
            stats.peak_entries = stats.peak_entries.max(table.len());
            table.get(rest).expect("full table") as usize
        }
        InnerSolver::Dnc => twr_dnc_counted(g, VertexSet::EMPTY, rest, &mut stats.steps)?,
    };
    Ok(bag_width(g, chi, tw))
}

/// `tw(G, χ)` as the maximum over the components `C` of `G[V − χ]` of `tw(G[C ∪ χ], χ)`.
pub fn tw_split_components(g: &Graph, chi: VertexSet, inner: InnerSolver) -> Result<i32> {
    tw_split_components_counted(g, chi, inner, &mut Stats::default())
}

pub fn tw_split_components_counted(g: &Graph, chi: VertexSet, inner: InnerSolver, stats: &mut Stats) -> Result<i32> {
    g.check_subset(chi)?;
    let mut width = bag_width(g, chi, 0);
    for c in g.components(g.vertices() - chi) {
        let (h, _) = g.induced_subgraph(c | chi)?;
        let local_chi = VertexSet::from_bits((c | chi).extract(chi));
        width = width.max(tw_fixed_bag_counted(&h, local_chi, inner, stats)?);
    }
    Ok(width)
}

/// Walks the recorded argmins from `V − χ` down to `∅`, then appends `χ` in increasing order.
pub fn reconstruct_ordering(table: &WidthTable, g: &Graph, chi: VertexSet) -> Result<EliminationOrdering> {
    g.check_subset(chi)?;
    let mut s = g.vertices() - chi;
    let mut rev = Vec::with_capacity(s.len());
    while !s.is_empty() {
        let v = table.argmin(s).ok_or(Error::IncompleteTable(s.bits()))?;
        if !s.contains(v) {
            return Err(Error::IncompleteTable(s.bits()));
        }
        rev.push(v);
        s.remove(v);
    }
    rev.reverse();
    rev.extend(chi.iter());
    EliminationOrdering::new(rev, g.n())
}
