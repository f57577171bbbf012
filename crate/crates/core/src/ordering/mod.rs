//! Treewidth through linear orderings.
//!
//! For an ordering `π` the cost of a vertex is `R_π(v) = |Q_G(π_<v, v)|` and the
//! width of `π` is the largest such cost. The minimum width over all orderings
//! of `V` is the treewidth. Everything here is phrased in terms of
//! `TWR_G(L, S)`, the best width of an ordering of `S` placed after a fixed
//! prefix `L`, with `TW_G(S) = TWR_G(∅, S)`.

mod decomposition;
mod dnc;
mod dp;
mod table;

pub use decomposition::{ordering_to_decomposition, validate_decomposition, TdViolation, TreeDecomposition};
pub use dnc::{twr_dnc, twr_dnc_counted, twr_dnc_ordering};
pub use dp::{
    reconstruct_ordering, tw_dp, tw_fixed_bag, tw_fixed_bag_counted, tw_split_components, tw_split_components_counted,
    twr_dp, twr_table, twr_table_work, Stats,
};
pub use table::WidthTable;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// A sequence of distinct vertices, first eliminated first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EliminationOrdering {
    order: Vec<usize>,
}

impl EliminationOrdering {
    pub fn new(order: Vec<usize>, n: usize) -> Result<Self> {
        let mut seen = VertexSet::EMPTY;
        for &v in &order {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if seen.contains(v) {
                return Err(Error::NotAPermutation(format!("vertex {v} repeated")));
            }
            seen.insert(v);
        }
        Ok(EliminationOrdering { order })
    }

    pub fn identity(n: usize) -> Self {
        EliminationOrdering {
            order: (0..n).collect(),
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn vertices(&self) -> VertexSet {
        self.order.iter().copied().collect()
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.order.iter().position(|&x| x == v)
    }

    /// `π_<v`.
    pub fn before(&self, v: usize) -> Result<VertexSet> {
        let pos = self.position(v).ok_or(Error::NotInOrdering(v))?;
        Ok(self.order[..pos].iter().copied().collect())
    }
}

/// Which exact algorithm computes `TW` inside the fixed-bag reductions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum InnerSolver {
    /// Divide and conquer in polynomial space.
    #[default]
    Dnc,
    /// Subset dynamic programming.
    Dp,
}

/// `R_π(v)`.
pub fn r_value(g: &Graph, pi: &EliminationOrdering, v: usize) -> Result<usize> {
    let before = pi.before(v)?;
    g.q_value(before, v)
}

/// Width of an ordering of all of `V`; `-1` for the empty graph.
pub fn ordering_width(g: &Graph, pi: &EliminationOrdering) -> Result<i32> {
    if pi.len() != g.n() || pi.vertices() != g.vertices() {
        return Err(Error::NotAPermutation(format!(
            "ordering covers {} of {} vertices",
            pi.len(),
            g.n()
        )));
    }
    let mut prefix = VertexSet::EMPTY;
    let mut width = -1i32;
    for &v in pi.as_slice() {
        width = width.max(g.q_size(prefix, v) as i32);
        prefix.insert(v);
    }
    Ok(width)
}
