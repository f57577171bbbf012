use thiserror::Error;

use crate::graph::Graph;
use crate::ordering::EliminationOrdering;
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<VertexSet>,
    pub tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Largest bag size minus one; `-1` without bags.
    pub fn width(&self) -> i32 {
        self.bags.iter().map(|b| b.len() as i32).max().unwrap_or(0) - 1
    }
}

/// The first condition a decomposition fails.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TdViolation {
    #[error("bag {bag} contains a vertex outside the graph")]
    BagOutOfRange { bag: usize },
    #[error("tree edge ({0}, {1}) names a missing bag")]
    TreeEdgeOutOfRange(usize, usize),
    #[error("tree edges do not form a tree on the bags")]
    NotATree,
    #[error("vertex {0} is in no bag")]
    VertexUncovered(usize),
    #[error("edge ({0}, {1}) is in no bag")]
    EdgeUncovered(usize, usize),
    #[error("bags containing vertex {0} are not connected in the tree")]
    DisconnectedOccurrences(usize),
}

impl TdViolation {
    /// Short name of the violated condition.
    pub fn condition(&self) -> &'static str {
        match self {
            TdViolation::BagOutOfRange { .. } => "bag-range",
            TdViolation::TreeEdgeOutOfRange(..) | TdViolation::NotATree => "tree",
            TdViolation::VertexUncovered(_) => "vertex-coverage",
            TdViolation::EdgeUncovered(..) => "edge-coverage",
            TdViolation::DisconnectedOccurrences(_) => "connectivity",
        }
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Checks a decomposition against `g` and returns its width.
pub fn validate_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<i32, TdViolation> {
    let nb = td.bags.len();
    for (i, bag) in td.bags.iter().enumerate() {
        if !bag.is_subset(g.vertices()) {
            return Err(TdViolation::BagOutOfRange { bag: i });
        }
    }
    let mut parent: Vec<usize> = (0..nb).collect();
    for &(a, b) in &td.tree_edges {
        if a >= nb || b >= nb {
            return Err(TdViolation::TreeEdgeOutOfRange(a, b));
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return Err(TdViolation::NotATree);
        }
        parent[ra] = rb;
    }
    if nb > 0 && td.tree_edges.len() != nb - 1 {
        return Err(TdViolation::NotATree);
    }
    let covered = td.bags.iter().fold(VertexSet::EMPTY, |acc, &b| acc | b);
    if let Some(v) = (g.vertices() - covered).first() {
        return Err(TdViolation::VertexUncovered(v));
    }
    for (u, v) in g.edges() {
        if !td.bags.iter().any(|b| b.contains(u) && b.contains(v)) {
            return Err(TdViolation::EdgeUncovered(u, v));
        }
    }
    for v in g.vertices() {
        let holding: Vec<usize> = (0..nb).filter(|&i| td.bags[i].contains(v)).collect();
        let mut parent: Vec<usize> = (0..nb).collect();
        let mut joins = 0;
        for &(a, b) in &td.tree_edges {
            if td.bags[a].contains(v) && td.bags[b].contains(v) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
                joins += 1;
            }
        }
        if joins + 1 != holding.len() {
            return Err(TdViolation::DisconnectedOccurrences(v));
        }
    }
    Ok(td.width())
}

/// Builds the decomposition of an elimination ordering.
///
/// The bag of `v` is `v` together with the vertices counted by `R_π(v)`, and it
/// hangs below the bag of the earliest eliminated of those vertices. Vertices
/// with no later witness end a component; their bags are chained together.
pub fn ordering_to_decomposition(g: &Graph, pi: &EliminationOrdering) -> TreeDecomposition {
    let order = pi.as_slice();
    if order.is_empty() {
        return TreeDecomposition {
            bags: vec![VertexSet::EMPTY],
            tree_edges: vec![],
        };
    }
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut bags = Vec::with_capacity(order.len());
    let mut tree_edges = Vec::with_capacity(order.len() - 1);
    let mut roots = Vec::new();
    let mut prefix = VertexSet::EMPTY;
    for (i, &v) in order.iter().enumerate() {
        let witnesses = g.q_set(prefix, v);
        bags.push(witnesses.with(v));
        match witnesses.iter().map(|w| pos[w]).min() {
            Some(p) => tree_edges.push((i, p)),
            None => roots.push(i),
        }
        prefix.insert(v);
    }
    for pair in roots.windows(2) {
        tree_edges.push((pair[0], pair[1]));
    }
    TreeDecomposition { bags, tree_edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordering::ordering_width;

    #[test]
    fn path_identity() {
        let g = Graph::path(4);
        let pi = EliminationOrdering::identity(4);
        let td = ordering_to_decomposition(&g, &pi);
        assert_eq!(validate_decomposition(&g, &td), Ok(1));
        assert_eq!(td.bags.iter().filter(|b| b.len() == 2).count(), 3);
    }

    #[test]
    fn small_cases() {
        let k3 = Graph::complete(3);
        let td = ordering_to_decomposition(&k3, &EliminationOrdering::identity(3));
        assert_eq!(validate_decomposition(&k3, &td), Ok(2));

        let e3 = Graph::new(3).unwrap();
        let td = ordering_to_decomposition(&e3, &EliminationOrdering::identity(3));
        assert_eq!(td.bags, (0..3).map(VertexSet::singleton).collect::<Vec<_>>());
        assert_eq!(validate_decomposition(&e3, &td), Ok(0));

        let e0 = Graph::new(0).unwrap();
        let td = ordering_to_decomposition(&e0, &EliminationOrdering::identity(0));
        assert_eq!(validate_decomposition(&e0, &td), Ok(-1));
    }

    #[test]
    fn violations() {
        let g = Graph::path(3);
        let single = TreeDecomposition {
            bags: vec![g.vertices()],
            tree_edges: vec![],
        };
        assert_eq!(validate_decomposition(&g, &single), Ok(2));
        let missing = TreeDecomposition {
            bags: vec![VertexSet::from_bits(0b011), VertexSet::from_bits(0b100)],
            tree_edges: vec![(0, 1)],
        };
        let e = validate_decomposition(&g, &missing).unwrap_err();
        assert_eq!(e, TdViolation::EdgeUncovered(1, 2));
        assert_eq!(e.condition(), "edge-coverage");
        let split = TreeDecomposition {
            bags: vec![
                VertexSet::from_bits(0b011),
                VertexSet::from_bits(0b100),
                VertexSet::from_bits(0b110),
            ],
            tree_edges: vec![(0, 1), (1, 2)],
        };
        assert_eq!(
            validate_decomposition(&g, &split),
            Err(TdViolation::DisconnectedOccurrences(1))
        );
        let cyclic = TreeDecomposition {
            bags: vec![g.vertices(); 2],
            tree_edges: vec![(0, 1), (1, 0)],
        };
        assert_eq!(validate_decomposition(&g, &cyclic), Err(TdViolation::NotATree));
    }

    #[test]
    fn width_matches_ordering() {
        let g = Graph::petersen();
        let pi = EliminationOrdering::new(vec![9, 3, 0, 5, 1, 8, 2, 7, 4, 6], 10).unwrap();
        let td = ordering_to_decomposition(&g, &pi);
        assert_eq!(
            validate_decomposition(&g, &td).unwrap(),
            ordering_width(&g, &pi).unwrap()
        );
    }
}
