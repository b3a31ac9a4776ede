use alloc::vec;
use alloc::vec::Vec;

use super::{Graph, GraphError, Vertex};

/// Maximal 2-connected subgraphs (bridges count as two-vertex blocks) and
/// the cut vertices between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Each block's vertex set, sorted; blocks ordered lexicographically.
    pub blocks: Vec<Vec<Vertex>>,
    /// Sorted.
    pub cut_vertices: Vec<Vertex>,
}

impl BlockDecomposition {
    /// Number of blocks containing `v`.
    pub fn blocks_containing(&self, v: Vertex) -> usize {
        self.blocks
            .iter()
            .filter(|b| b.binary_search(&v).is_ok())
            .count()
    }
}

/// Hopcroft–Tarjan lowpoint decomposition, iterative.
///
/// Requires a connected graph. A single vertex forms one block.
pub fn blocks_and_cut_vertices(g: &Graph) -> Result<BlockDecomposition, GraphError> {
    g.require_connected()?;
    let n = g.n();
    if n == 0 {
        return Ok(BlockDecomposition {
            blocks: Vec::new(),
            cut_vertices: Vec::new(),
        });
    }
    if n == 1 {
        return Ok(BlockDecomposition {
            blocks: vec![vec![0]],
            cut_vertices: Vec::new(),
        });
    }

    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    let mut time = 0;

    // frame: (vertex, parent, next neighbour index)
    let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(0, usize::MAX, 0)];
    disc[0] = 0;
    low[0] = 0;
    time += 1;
    let mut root_children = 0;

    while let Some(&mut (u, parent, ref mut next)) = stack.last_mut() {
        if *next < g.degree(u) {
            let w = g.neighbors(u)[*next];
            *next += 1;
            if disc[w] == usize::MAX {
                disc[w] = time;
                low[w] = time;
                time += 1;
                edge_stack.push((u, w));
                if u == 0 {
                    root_children += 1;
                }
                stack.push((w, u, 0));
            } else if w != parent && disc[w] < disc[u] {
                edge_stack.push((u, w));
                low[u] = low[u].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[u]);
                if low[u] >= disc[p] {
                    if p != 0 {
                        is_cut[p] = true;
                    }
                    let mut block = Vec::new();
                    while let Some((a, b)) = edge_stack.pop() {
                        block.push(a);
                        block.push(b);
                        if (a, b) == (p, u) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    block.dedup();
                    blocks.push(block);
                }
            }
        }
    }
    if root_children > 1 {
        is_cut[0] = true;
    }
    blocks.sort();
    Ok(BlockDecomposition {
        blocks,
        cut_vertices: (0..n).filter(|&v| is_cut[v]).collect(),
    })
}

/// Every block induces a clique. Disconnected graphs are judged per
/// component.
pub fn is_block_graph(g: &Graph) -> bool {
    g.components().iter().all(|comp| {
        let h = g.induced_subgraph(comp);
        let dec = blocks_and_cut_vertices(&h).expect("component is connected");
        dec.blocks.iter().all(|b| h.is_clique(b))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    /// Reference: v is a cut vertex iff deleting it disconnects the graph.
    fn brute_cut_vertices(g: &Graph) -> Vec<Vertex> {
        g.vertices()
            .filter(|&v| g.n() > 2 && !g.remove_vertex(v).is_connected())
            .collect()
    }

    #[test]
    fn path_blocks() {
        let d = blocks_and_cut_vertices(&Graph::path(3)).unwrap();
        assert_eq!(d.blocks, [vec![0, 1], vec![1, 2]]);
        assert_eq!(d.cut_vertices, [1]);
    }

    #[test]
    fn complete_graph_is_one_block() {
        let d = blocks_and_cut_vertices(&Graph::complete(4)).unwrap();
        assert_eq!(d.blocks, [vec![0, 1, 2, 3]]);
        assert!(d.cut_vertices.is_empty());
    }

    #[test]
    fn glued_triangles() {
        let g = two_triangles();
        let d = blocks_and_cut_vertices(&g).unwrap();
        assert_eq!(d.blocks, [vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(d.cut_vertices, brute_cut_vertices(&g));
        assert_eq!(d.cut_vertices, [2]);
        assert!(is_block_graph(&g));
    }

    #[test]
    fn cycle_is_one_block_but_not_block_graph() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let d = blocks_and_cut_vertices(&g).unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert!(!is_block_graph(&g));
    }

    #[test]
    fn disconnected_is_refused() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let err = blocks_and_cut_vertices(&g).unwrap_err();
        assert_eq!(
            err,
            GraphError::Disconnected {
                components: vec![vec![0, 1], vec![2, 3]]
            }
        );
    }

    #[test]
    fn cut_vertices_match_deletion_on_mixed_graph() {
        // triangle 0-1-2, bridge 2-3, 4-cycle 3-4-5-6, pendant 6-7
        let g = Graph::from_edges(
            8,
            &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 6), (6, 7)],
        )
        .unwrap();
        let d = blocks_and_cut_vertices(&g).unwrap();
        assert_eq!(d.cut_vertices, brute_cut_vertices(&g));
        let edges_in_blocks: usize = d
            .blocks
            .iter()
            .map(|b| g.induced_subgraph(b).edge_count())
            .sum();
        assert_eq!(edges_in_blocks, g.edge_count());
        for v in g.vertices() {
            assert_eq!(d.blocks_containing(v) >= 2, d.cut_vertices.contains(&v));
        }
    }
}
