//! Reconstructions of the example graphs discussed with the main results.
//!
//! Only the published invariants are reproduced (clique counts, internal
//! vertex counts, spine counts); the exact drawings are not recoverable.

use bei_core::graph::glue;
use bei_core::{build_jewel, Graph, Vertex};

#[derive(Debug, Clone)]
pub struct Figure {
    pub name: &'static str,
    pub graph: Graph,
    pub note: &'static str,
}

/// Center `0` joined to `1..=6`; vertex `b` carries two leaves. Any longest
/// path runs leaf–b–0–b'–leaf, leaving two whiskers and four limbs `K_{1,3}`.
pub fn double_jewel() -> Graph {
    let mut edges = Vec::new();
    for b in 1..=6 {
        edges.push((0, b));
        edges.push((b, 5 + 2 * b));
        edges.push((b, 6 + 2 * b));
    }
    Graph::from_edges(19, &edges).expect("static edge list")
}

fn add_clique(g: &mut Graph, v: Vertex, k: usize) -> Vec<Vertex> {
    let mut members = vec![v];
    for _ in 1..k {
        members.push(g.add_vertex());
    }
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            g.add_edge(a, b).expect("fresh vertices");
        }
    }
    members
}

/// A block graph with 22 maximal cliques, no vertex in more than two of
/// them. Cliques of sizes 2 to 4 are hung one at a time at vertices that so
/// far lie in a single clique.
pub fn figure2() -> Graph {
    const SIZES: [usize; 22] = [3, 2, 4, 2, 3, 3, 2, 4, 2, 3, 2, 3, 4, 2, 2, 3, 3, 2, 4, 2, 3, 2];
    let mut g = Graph::empty(1);
    let mut in_cliques = vec![0usize];
    let mut first = true;
    let mut cursor = 0;
    for k in SIZES {
        // next vertex (cyclically) still in at most one clique
        let hub = if first {
            0
        } else {
            loop {
                cursor = (cursor + 3) % g.n();
                if in_cliques[cursor] == 1 {
                    break cursor;
                }
            }
        };
        first = false;
        let members = add_clique(&mut g, hub, k);
        in_cliques.resize(g.n(), 0);
        for v in members {
            in_cliques[v] += 1;
        }
    }
    g
}

fn caterpillar(spine: usize, whiskers_at: &[usize]) -> Graph {
    let mut g = Graph::path(spine);
    for &v in whiskers_at {
        let w = g.add_vertex();
        g.add_edge(v, w).expect("fresh vertex");
    }
    g
}

/// A tree with 25 internal vertices that splits at three degree-2 vertices
/// into a pure lobster (8 internal vertices) and caterpillars with 5, 5 and
/// 4 internal vertices.
pub fn figure3() -> Graph {
    // pure lobster: spine 0..=5, pure limbs s - c - e at s = 1..=4
    let mut lobster = Graph::path(6);
    let mut tips = Vec::new();
    for s in 1..=4 {
        let c = lobster.add_vertex();
        let e = lobster.add_vertex();
        lobster.add_edge(s, c).unwrap();
        lobster.add_edge(c, e).unwrap();
        tips.push(e);
    }
    let c1 = caterpillar(7, &[2, 4]);
    let c2 = caterpillar(7, &[3]);
    let c3 = caterpillar(6, &[1, 3]);
    // each caterpillar is attached through spine end 0 to a lobster leaf;
    // glue keeps the first graph's labels
    let g = glue(&lobster, tips[0], &c1, 0).expect("in range");
    let g = glue(&g, tips[2], &c2, 0).expect("in range");
    glue(&g, 5, &c3, 0).expect("in range")
}

pub fn figure_graphs() -> Vec<Figure> {
    vec![
        Figure {
            name: "jewel",
            graph: build_jewel(),
            note: "smallest tree with reg above m + 1; reg 6 with m = 4",
        },
        Figure {
            name: "fig2",
            graph: figure2(),
            note: "block graph, c(G) = 22, every vertex in at most two maximal cliques",
        },
        Figure {
            name: "fig3",
            graph: figure3(),
            note: "tree, m = 25, splits into caterpillars and a pure lobster; m + 1 = 26",
        },
        Figure {
            name: "double-jewel",
            graph: double_jewel(),
            note: "lobster with l = 4, t = 4, r = 2; upper bound l + t + r + 2 = 12",
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use bei_core::graph::{blocks_and_cut_vertices, is_block_graph, maximal_cliques};
    use bei_core::taxonomy::{is_caterpillar, is_lobster, spine_decompositions};

    #[test]
    fn figure2_invariants() {
        let g = figure2();
        assert!(g.is_connected() && is_block_graph(&g));
        let cliques = maximal_cliques(&g);
        assert_eq!(cliques.len(), 22);
        let bd = blocks_and_cut_vertices(&g).unwrap();
        assert!(g.vertices().all(|v| bd.blocks_containing(v) <= 2));
    }

    #[test]
    fn figure3_invariants() {
        let g = figure3();
        assert!(g.is_tree());
        assert_eq!(g.vertices().filter(|&v| g.degree(v) > 1).count(), 25);
        assert!(!is_lobster(&g) && !is_caterpillar(&g));
    }

    #[test]
    fn double_jewel_invariants() {
        let g = double_jewel();
        assert_eq!(g.n(), 19);
        for d in spine_decompositions(&g).unwrap() {
            assert_eq!((d.ell, d.t(), d.r()), (4, 4, 2));
        }
    }
}
