//! Connected sets with prescribed size and neighbourhood size.
//!
//! For an anchor `v` and budgets `b, f`, the family of connected sets `B` with
//! `v ∈ B`, `|B| = b + 1` and `|N(B)| = f` has at most `C(b + f, b)` members.
//! The branching tree below realises that bound: a node grows `B` by one
//! neighbour `w_i` after forbidding the smaller candidates `w_1..w_{i-1}`,
//! which then must end up in `N(B)`. Its leaves are numbered, so a leaf index
//! can be decoded into a set without visiting the rest of the tree.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::{binomial, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConnectedSetQuery {
    /// Anchor vertex contained in every listed set.
    pub v: usize,
    /// Number of vertices besides the anchor.
    pub b: usize,
    /// Required neighbourhood size.
    pub f: usize,
}

impl ConnectedSetQuery {
    pub fn new(v: usize, b: usize, f: usize) -> Self {
        ConnectedSetQuery { v, b, f }
    }

    pub fn check(&self, g: &Graph) -> Result<()> {
        if self.v >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: self.v,
                n: g.n(),
            });
        }
        Ok(())
    }

    /// Whether `s` belongs to the family described by this query.
    pub fn matches(&self, g: &Graph, s: VertexSet) -> bool {
        s.contains(self.v) && s.len() == self.b + 1 && g.neighborhood(s).len() == self.f && g.is_connected_set(s)
    }
}

/// `C(b + f, b)`, with a flag set when the value does not fit in 64 bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountBound {
    pub value: u64,
    pub saturated: bool,
}

pub fn count_bound(b: usize, f: usize) -> CountBound {
    let c = binomial(b + f, b);
    match u64::try_from(c) {
        Ok(value) => CountBound {
            value,
            saturated: false,
        },
        Err(_) => CountBound {
            value: u64::MAX,
            saturated: true,
        },
    }
}

fn leaves(b: usize, f: usize) -> u64 {
    let bound = count_bound(b, f);
    assert!(!bound.saturated, "leaf count C({}, {b}) exceeds 64 bits", b + f);
    bound.value
}

/// Leaf count of child `i` (1-based) of a node with budgets `(b, f)`, `b ≥ 1`.
fn child_leaves(b: usize, f: usize, i: usize) -> u64 {
    if i > f + 1 {
        0
    } else {
        leaves(b - 1, f + 1 - i)
    }
}

/// A node of the branching tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchNode {
    pub set: VertexSet,
    pub forbidden: VertexSet,
    pub b: usize,
    pub f: usize,
}

impl BranchNode {
    pub fn root(q: &ConnectedSetQuery) -> Self {
        BranchNode {
            set: VertexSet::singleton(q.v),
            forbidden: VertexSet::EMPTY,
            b: q.b,
            f: q.f,
        }
    }

    /// `U(b, f)`, the number of leaf indices below this node.
    pub fn bound(&self) -> u64 {
        leaves(self.b, self.f)
    }

    /// Number of child slots, `b + f` (zero at a leaf).
    pub fn arity(&self) -> usize {
        if self.b == 0 {
            0
        } else {
            self.b + self.f
        }
    }

    /// Child `i` (1-based); `None` if the branching has fewer real candidates.
    pub fn child(&self, g: &Graph, i: usize) -> Option<BranchNode> {
        if self.b == 0 || i == 0 || i > self.f + 1 {
            return None;
        }
        let mut candidates = (g.neighborhood(self.set) - self.forbidden).iter();
        let mut forbidden = self.forbidden;
        for _ in 1..i {
            forbidden.insert(candidates.next()?);
        }
        let w = candidates.next()?;
        Some(BranchNode {
            set: self.set.with(w),
            forbidden,
            b: self.b - 1,
            f: self.f + 1 - i,
        })
    }

    /// Leaf-index budget of child `i`, whether or not the child exists.
    pub fn child_bound(&self, i: usize) -> u64 {
        child_leaves(self.b, self.f, i)
    }

    /// At a leaf, the set if it satisfies the neighbourhood condition of `q`.
    fn leaf_value(&self, g: &Graph, q: &ConnectedSetQuery) -> Option<VertexSet> {
        (self.b == 0 && g.neighborhood(self.set).len() == q.f).then_some(self.set)
    }
}

/// Depth-first listing of the family; memory is linear in `b`.
pub struct ConnectedSets<'g> {
    g: &'g Graph,
    q: ConnectedSetQuery,
    stack: Vec<(BranchNode, usize)>,
}

impl Iterator for ConnectedSets<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        while let Some((node, next_child)) = self.stack.pop() {
            if node.b == 0 {
                if let Some(s) = node.leaf_value(self.g, &self.q) {
                    return Some(s);
                }
                continue;
            }
            if let Some(child) = node.child(self.g, next_child) {
                self.stack.push((node, next_child + 1));
                self.stack.push((child, 1));
            }
        }
        None
    }
}

pub fn enumerate_connected_sets<'g>(g: &'g Graph, q: ConnectedSetQuery) -> Result<ConnectedSets<'g>> {
    q.check(g)?;
    Ok(ConnectedSets {
        g,
        q,
        stack: vec![(BranchNode::root(&q), 1)],
    })
}

/// The set at leaf `index` of the branching tree, or `None` for a pruned or failing leaf.
pub fn unrank_connected_set(g: &Graph, q: ConnectedSetQuery, index: u64) -> Result<Option<VertexSet>> {
    q.check(g)?;
    let mut node = BranchNode::root(&q);
    let size = node.bound();
    if index >= size {
        return Err(Error::IndexOutOfRange {
            index: index as u128,
            size: size as u128,
        });
    }
    let mut rest = index;
    while node.b > 0 {
        let mut i = 1;
        loop {
            let width = node.child_bound(i);
            if rest < width {
                break;
            }
            rest -= width;
            i += 1;
        }
        node = match node.child(g, i) {
            Some(c) => c,
            None => return Ok(None),
        };
    }
    Ok(node.leaf_value(g, &q))
}

/// Whether removing `omega` leaves a component of exactly `c` vertices
/// (`c = 0` asks for `omega = V`).
pub fn is_bag_candidate(g: &Graph, omega: VertexSet, c: usize) -> bool {
    let rest = g.vertices() - omega;
    if c == 0 {
        return rest.is_empty();
    }
    g.components(rest).iter().any(|comp| comp.len() == c)
}

/// Every `p`-set `Ω` such that `G[V − Ω]` has a component of exactly `c` vertices.
pub fn enumerate_bag_candidates(g: &Graph, p: usize, c: usize) -> impl Iterator<Item = VertexSet> + '_ {
    g.vertices()
        .subsets_of_size(p)
        .filter(move |&omega| is_bag_candidate(g, omega, c))
}
