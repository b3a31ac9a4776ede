//! Test corpora: unlabelled trees, connected block graphs and seeded random
//! block graphs and glue pairs.

use std::collections::BTreeSet;

use bei_core::graph::{enumerate_trees, glue};
use bei_core::{Graph, GraphError, Vertex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canon::canonical_id;

/// Default seeds, fixed so that every run sees the same corpus.
pub const BLOCK_GRAPH_SEED: u64 = 0x6a65_7765_6c00_0001;
pub const GLUE_SEED: u64 = 0x6a65_7765_6c00_0002;

/// All unlabelled trees with `1..=max_n` vertices, by order then code.
pub fn trees_up_to(max_n: usize) -> Result<Vec<Graph>, GraphError> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(enumerate_trees(n)?.into_iter().map(|e| e.graph));
    }
    Ok(out)
}

/// Adds a clique on `v` and `k - 1` new vertices.
fn attach_clique(g: &mut Graph, v: Vertex, k: usize) {
    let mut members = vec![v];
    for _ in 1..k {
        members.push(g.add_vertex());
    }
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            g.add_edge(a, b).expect("fresh vertices");
        }
    }
}

/// Connected block graphs on exactly `1..=max_n` vertices up to isomorphism,
/// by order and then canonical id. Every such graph arises from a smaller
/// one by hanging a new leaf block, which is how they are generated.
pub fn block_graphs_up_to(max_n: usize) -> Vec<Graph> {
    let mut layers: Vec<Vec<Graph>> = vec![Vec::new(); max_n + 1];
    if max_n == 0 {
        return Vec::new();
    }
    layers[1].push(Graph::empty(1));
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for n in 1..max_n {
        let current = layers[n].clone();
        for g in &current {
            for v in g.vertices() {
                for k in 2..=(max_n - n + 1) {
                    let mut h = g.clone();
                    attach_clique(&mut h, v, k);
                    if seen.insert(canonical_id(&h)) {
                        layers[h.n()].push(h);
                    }
                }
            }
        }
    }
    for layer in &mut layers {
        layer.sort_by_cached_key(canonical_id);
    }
    layers.into_iter().flatten().collect()
}

/// A random connected block graph on exactly `n` vertices: leaf blocks of
/// size 2 to 4 hung at random vertices, then a random relabelling.
pub fn random_block_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut g = Graph::empty(1);
    while g.n() < n {
        let v = rng.gen_range(0..g.n());
        let room = n - g.n() + 1;
        let k = rng.gen_range(2..=room.min(4));
        attach_clique(&mut g, v, k);
    }
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

/// `count` random block graphs with orders drawn from `min_n..=max_n`.
pub fn random_block_graphs(seed: u64, count: usize, min_n: usize, max_n: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(min_n..=max_n);
            random_block_graph(&mut rng, n)
        })
        .collect()
}

/// Two graphs, a free vertex in each, and the graph obtained by
/// identifying them.
#[derive(Debug, Clone)]
pub struct GluePair {
    pub g1: Graph,
    pub v1: Vertex,
    pub g2: Graph,
    pub v2: Vertex,
    pub glued: Graph,
}

/// Seeded random block-graph pairs glued at free vertices, with
/// `glued.n() <= max_total`.
pub fn glue_pairs(seed: u64, count: usize, max_total: usize) -> Vec<GluePair> {
    assert!(max_total >= 3, "a glue pair needs at least three vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let total = rng.gen_range(3..=max_total);
            let n1 = rng.gen_range(2..=total - 1);
            let n2 = total + 1 - n1;
            let g1 = random_block_graph(&mut rng, n1);
            let g2 = random_block_graph(&mut rng, n2);
            let v1 = *g1.free_vertices().choose(&mut rng).expect("block graphs have free vertices");
            let v2 = *g2.free_vertices().choose(&mut rng).expect("block graphs have free vertices");
            let glued = glue(&g1, v1, &g2, v2).expect("vertices in range");
            GluePair { g1, v1, g2, v2, glued }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use bei_core::graph::is_block_graph;

    #[test]
    fn tree_counts() {
        assert_eq!(trees_up_to(8).unwrap().len(), 48);
        assert_eq!(trees_up_to(10).unwrap().len(), 201);
    }

    #[test]
    fn block_graph_counts() {
        // connected block graphs on n = 1..=7 vertices
        let all = block_graphs_up_to(7);
        let counts: Vec<usize> = (1..=7).map(|n| all.iter().filter(|g| g.n() == n).count()).collect();
        assert_eq!(counts, [1, 1, 2, 4, 9, 22, 59]);
        assert!(all.iter().all(|g| is_block_graph(g) && g.is_connected()));
    }

    #[test]
    fn random_graphs_are_block_graphs() {
        let gs = random_block_graphs(7, 40, 2, 8);
        assert_eq!(gs, random_block_graphs(7, 40, 2, 8));
        for g in gs {
            assert!(is_block_graph(&g) && g.is_connected());
            assert!((2..=8).contains(&g.n()));
        }
        for p in glue_pairs(3, 20, 9) {
            assert!(p.glued.n() <= 9);
            assert!(p.g1.is_free(p.v1) && p.g2.is_free(p.v2));
        }
    }
}
