//! Simple undirected graphs on at most 63 vertices.

use rand::Rng;

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `{u, v}`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn adj(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn check_subset(&self, s: VertexSet) -> Result<()> {
        if s.is_subset(self.vertices()) {
            Ok(())
        } else {
            Err(Error::SetOutOfRange {
                set: s.bits(),
                n: self.n,
            })
        }
    }

    /// Union of the neighbourhoods of the members of `s`, including members of `s`.
    #[inline]
    fn closed_reach(&self, s: VertexSet) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for u in s {
            out |= self.adj[u];
        }
        out
    }

    /// `N(S)`: vertices outside `s` with a neighbour in `s`.
    pub fn neighborhood(&self, s: VertexSet) -> VertexSet {
        self.closed_reach(s) - s
    }

    /// The connected component of `G[within]` containing `start`.
    pub fn component_of(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut comp = VertexSet::singleton(start);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let next = self.closed_reach(frontier) & (within - comp);
            comp |= next;
            frontier = next;
        }
        comp
    }

    /// Connected components of `G[s]`, ordered by smallest member.
    pub fn components(&self, s: VertexSet) -> Vec<VertexSet> {
        let mut rest = s;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.component_of(v, s);
            rest -= c;
            out.push(c);
        }
        out
    }

    pub fn is_connected_set(&self, s: VertexSet) -> bool {
        match s.first() {
            None => true,
            Some(v) => self.component_of(v, s) == s,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_set(self.vertices())
    }

    /// `|Q_G(S, v)|`: vertices outside `S ∪ {v}` joined to `v` by a path whose
    /// interior lies in `S`.
    pub fn q_value(&self, s: VertexSet, v: usize) -> Result<usize> {
        self.check_subset(s)?;
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if s.contains(v) {
            return Err(Error::VertexInPrefix(v));
        }
        Ok(self.q_size(s, v) as usize)
    }

    /// Unchecked [`Graph::q_value`] for inner loops. Requires `v ∉ s`.
    #[inline]
    pub fn q_size(&self, s: VertexSet, v: usize) -> u32 {
        self.q_set(s, v).len() as u32
    }

    /// The set counted by [`Graph::q_value`]. Requires `v ∉ s`.
    #[inline]
    pub fn q_set(&self, s: VertexSet, v: usize) -> VertexSet {
        debug_assert!(!s.contains(v));
        let mut comp = VertexSet::singleton(v);
        let mut frontier = comp;
        let mut reach = VertexSet::EMPTY;
        while !frontier.is_empty() {
            let nb = self.closed_reach(frontier);
            reach |= nb;
            let next = nb & (s - comp);
            comp |= next;
            frontier = next;
        }
        reach - comp
    }

    /// `G[s]` relabelled to `0..|s|`, with the map from new to old indices.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_subset(s)?;
        let map = s.to_vec();
        let adj = map
            .iter()
            .map(|&old| VertexSet::from_bits(s.extract(self.adj[old])))
            .collect();
        Ok((Graph { n: map.len(), adj }, map))
    }

    /// `G[s]` on the original vertex indices: vertices outside `s` become isolated.
    pub fn restricted(&self, s: VertexSet) -> Result<Graph> {
        self.check_subset(s)?;
        let adj = (0..self.n)
            .map(|v| {
                if s.contains(v) {
                    self.adj[v] & s
                } else {
                    VertexSet::EMPTY
                }
            })
            .collect();
        Ok(Graph { n: self.n, adj })
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n).expect("vertex count");
        for u in 0..n {
            g.adj[u] = VertexSet::full(n).without(u);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("vertex count")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("vertex count")
    }

    /// `K_{1,leaves}` with the centre at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("vertex count")
    }

    /// `rows × cols` grid, vertex `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut g = Graph::new(rows * cols).expect("vertex count");
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    g.add_edge(v, v + 1).unwrap();
                }
                if r + 1 < rows {
                    g.add_edge(v, v + cols).unwrap();
                }
            }
        }
        g
    }

    /// Outer cycle `0..5`, spokes `i, i+5`, inner pentagram on `5..10`.
    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, edges).unwrap()
    }

    /// Erdős–Rényi `G(n, p)`.
    pub fn random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut g = Graph::new(n).expect("vertex count");
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    /// Uniform random labelled tree (Prüfer decoding).
    pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut g = Graph::new(n).expect("vertex count");
        if n < 2 {
            return g;
        }
        let prufer: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        let mut degree = vec![1usize; n];
        for &x in &prufer {
            degree[x] += 1;
        }
        for &x in &prufer {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            g.add_edge(leaf, x).unwrap();
            degree[leaf] -= 1;
            degree[x] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        g.add_edge(rest[0], rest[1]).unwrap();
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    // Examples below use 1-based names; vertex i is index i-1.

    #[test]
    fn neighborhood_examples() {
        let p4 = Graph::path(4);
        assert_eq!(p4.neighborhood(set(&[1])), set(&[0, 2]));
        let k4 = Graph::complete(4);
        assert_eq!(k4.neighborhood(set(&[0, 1])), set(&[2, 3]));
        let c5 = Graph::cycle(5);
        let s = set(&[0, 1]);
        let naive: VertexSet = c5
            .edges()
            .flat_map(|(u, v)| [(u, v), (v, u)])
            .filter(|&(u, v)| s.contains(u) && !s.contains(v))
            .map(|(_, v)| v)
            .collect();
        assert_eq!(c5.neighborhood(s), naive);
        assert_eq!(naive, set(&[2, 4]));
    }

    #[test]
    fn component_examples() {
        let p4 = Graph::path(4);
        assert_eq!(p4.components(set(&[0, 1, 3])), vec![set(&[0, 1]), set(&[3])]);
        assert!(p4.components(VertexSet::EMPTY).is_empty());
        let pet = Graph::petersen();
        assert_eq!(pet.components(pet.vertices()), vec![pet.vertices()]);
    }

    #[test]
    fn q_value_examples() {
        let p4 = Graph::path(4);
        for v in 0..4 {
            assert_eq!(p4.q_value(VertexSet::EMPTY, v).unwrap(), p4.degree(v));
        }
        assert_eq!(p4.q_value(set(&[1]), 0).unwrap(), 1);
        let c5 = Graph::cycle(5);
        assert_eq!(c5.q_value(set(&[1]), 0).unwrap(), 2);
        assert_eq!(p4.q_value(set(&[1]), 1), Err(Error::VertexInPrefix(1)));
    }

    #[test]
    fn induced_subgraph_examples() {
        let (k3, map) = Graph::complete(4).induced_subgraph(set(&[0, 1, 2])).unwrap();
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(map, vec![0, 1, 2]);
        let (two, _) = Graph::path(4).induced_subgraph(set(&[0, 2])).unwrap();
        assert_eq!(two.edge_count(), 0);
        assert_eq!(two.n(), 2);
        let (outer, map) = Graph::petersen().induced_subgraph(set(&[0, 1, 2, 3, 4])).unwrap();
        assert_eq!(outer, Graph::cycle(5));
        assert_eq!(map, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = Graph::new(3).unwrap();
        assert_eq!(g.add_edge(1, 1), Err(Error::SelfLoop(1)));
        assert_eq!(g.add_edge(0, 3), Err(Error::VertexOutOfRange { vertex: 3, n: 3 }));
        assert!(Graph::new(64).is_err());
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 0).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn named_graphs() {
        assert_eq!(Graph::petersen().edge_count(), 15);
        assert!((0..10).all(|v| Graph::petersen().degree(v) == 3));
        assert_eq!(Graph::grid(3, 4).edge_count(), 17);
        let mut rng = rand::thread_rng();
        let t = Graph::random_tree(12, &mut rng);
        assert_eq!(t.edge_count(), 11);
        assert!(t.is_connected());
    }
}
