use alloc::vec::Vec;

use super::{Graph, Vertex};

/// All inclusion-maximal cliques, each sorted, in lexicographic order.
///
/// Bron–Kerbosch with Tomita pivoting. Isolated vertices are reported as
/// singleton cliques.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut r = Vec::new();
    let p: Vec<Vertex> = g.vertices().collect();
    bron_kerbosch(g, &mut r, p, Vec::new(), &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<Vertex>,
    p: Vec<Vertex>,
    mut x: Vec<Vertex>,
    out: &mut Vec<Vec<Vertex>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| g.has_edge(u, v)).count())
        .expect("p is nonempty");
    let candidates: Vec<Vertex> = p.iter().copied().filter(|&v| !g.has_edge(pivot, v)).collect();
    let mut p = p;
    for v in candidates {
        let np: Vec<Vertex> = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        let nx: Vec<Vertex> = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        r.push(v);
        bron_kerbosch(g, r, np, nx, out);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn tree_cliques_are_edges() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let c = maximal_cliques(&g);
        let e: Vec<Vec<Vertex>> = g.edges().map(|(u, v)| vec![u, v]).collect();
        assert_eq!(c, e);
    }

    #[test]
    fn complete_graph_single_clique() {
        assert_eq!(maximal_cliques(&Graph::complete(4)), [vec![0, 1, 2, 3]]);
    }

    #[test]
    fn mixed_graph() {
        // K_4 on {0,1,2,3}, triangle {3,4,5}, edge {5,6}, isolated 7
        let g = Graph::from_edges(
            8,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5), (5, 6)],
        )
        .unwrap();
        assert_eq!(
            maximal_cliques(&g),
            [vec![0, 1, 2, 3], vec![3, 4, 5], vec![5, 6], vec![7]]
        );
    }

    #[test]
    fn four_cycle() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(
            maximal_cliques(&g),
            [vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]
        );
    }
}
