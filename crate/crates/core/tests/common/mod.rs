#![allow(dead_code)]

use proptest::prelude::*;
use qtw_core::graph::Graph;
use qtw_core::vertex_set::VertexSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Graphs on `lo..=hi` vertices, each pair joined independently.
pub fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n).unwrap();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            g
        })
    })
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random subset of `within`.
pub fn random_subset<R: Rng>(within: VertexSet, rng: &mut R) -> VertexSet {
    within.iter().filter(|_| rng.gen_bool(0.5)).collect()
}

/// Minimum ordering width over all permutations of the vertices.
pub fn brute_force_tw(g: &Graph) -> i32 {
    fn go(g: &Graph, placed: VertexSet, width: i32, best: &mut i32) {
        if width >= *best {
            return;
        }
        let rest = g.vertices() - placed;
        if rest.is_empty() {
            *best = width;
            return;
        }
        for v in rest.iter() {
            let r = g.q_value(placed, v).unwrap() as i32;
            go(g, placed.with(v), width.max(r), best);
        }
    }
    let mut best = g.n() as i32;
    go(g, VertexSet::EMPTY, -1, &mut best);
    best
}
