use alloc::vec::Vec;

use super::{Graph, GraphError, Vertex};

/// One part of a split: the subgraph induced on a component of `g - v`
/// together with `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub graph: Graph,
    /// `labels[i]` is the vertex of the split graph that became vertex `i`.
    pub labels: Vec<Vertex>,
    /// Index of the split vertex inside `graph`.
    pub cut: Vertex,
}

/// Identifies `v1` of `g1` with `v2` of `g2`.
///
/// Labelling: vertices of `g1` keep their indices; `v2` becomes `v1`; the
/// remaining vertices of `g2` follow in increasing order starting at
/// `g1.n()`. The result has `g1.n() + g2.n() - 1` vertices.
pub fn glue(g1: &Graph, v1: Vertex, g2: &Graph, v2: Vertex) -> Result<Graph, GraphError> {
    if v1 >= g1.n() {
        return Err(GraphError::VertexOutOfRange {
            vertex: v1,
            n: g1.n(),
        });
    }
    if v2 >= g2.n() {
        return Err(GraphError::VertexOutOfRange {
            vertex: v2,
            n: g2.n(),
        });
    }
    let offset = g1.n();
    let map = |u: Vertex| match u.cmp(&v2) {
        core::cmp::Ordering::Equal => v1,
        core::cmp::Ordering::Less => offset + u,
        core::cmp::Ordering::Greater => offset + u - 1,
    };
    let mut g = g1.clone();
    for _ in 1..g2.n() {
        g.add_vertex();
    }
    for (a, b) in g2.edges() {
        g.add_edge(map(a), map(b))?;
    }
    Ok(g)
}

/// Splits `g` at the cut vertex `v`: one piece per component of `g - v`,
/// ordered by the smallest original vertex of the component.
pub fn split(g: &Graph, v: Vertex) -> Result<Vec<Piece>, GraphError> {
    if v >= g.n() {
        return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n() });
    }
    let rest = g.remove_vertex(v);
    // components of `g` that do not contain v are untouched by the split
    let own_component = g
        .components()
        .into_iter()
        .find(|c| c.contains(&v))
        .expect("v belongs to some component");
    let comps: Vec<Vec<Vertex>> = rest
        .components()
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|w| if w >= v { w + 1 } else { w })
                .collect::<Vec<_>>()
        })
        .filter(|c| own_component.binary_search(&c[0]).is_ok())
        .collect();
    if comps.len() < 2 {
        return Err(GraphError::NotACutVertex(v));
    }
    Ok(comps
        .into_iter()
        .map(|mut labels| {
            let pos = labels.binary_search(&v).unwrap_err();
            labels.insert(pos, v);
            Piece {
                graph: g.induced_subgraph(&labels),
                labels,
                cut: pos,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_tree_code;

    #[test]
    fn glue_examples() {
        let k2 = Graph::path(2);
        assert_eq!(glue(&k2, 1, &k2, 0).unwrap(), Graph::path(3));
        let p3 = Graph::path(3);
        assert_eq!(glue(&p3, 2, &p3, 0).unwrap(), Graph::path(5));
        let k3 = Graph::complete(3);
        let g = glue(&k3, 0, &k3, 0).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.degree(0), 4);
    }

    #[test]
    fn split_examples() {
        let pieces = split(&Graph::path(3), 1).unwrap();
        assert_eq!(pieces.len(), 2);
        assert!(pieces.iter().all(|p| p.graph == Graph::path(2)));
        let k3 = Graph::complete(3);
        let g = glue(&k3, 0, &k3, 0).unwrap();
        let pieces = split(&g, 0).unwrap();
        assert!(pieces.iter().all(|p| p.graph == k3));
        assert_eq!(split(&Graph::path(3), 0), Err(GraphError::NotACutVertex(0)));
    }

    #[test]
    fn split_then_glue_reproduces_tree() {
        let g = Graph::from_edges(
            10,
            &[(0, 1), (1, 2), (1, 5), (2, 3), (2, 6), (3, 4), (6, 7), (6, 8), (6, 9)],
        )
        .unwrap();
        let pieces = split(&g, 2).unwrap();
        let sets: Vec<_> = pieces.iter().map(|p| p.labels.clone()).collect();
        assert_eq!(
            sets,
            [
                alloc::vec![0, 1, 2, 5],
                alloc::vec![2, 3, 4],
                alloc::vec![2, 6, 7, 8, 9]
            ]
        );
        let mut acc = pieces[0].graph.clone();
        let at = pieces[0].cut;
        for p in &pieces[1..] {
            acc = glue(&acc, at, &p.graph, p.cut).unwrap();
        }
        assert_eq!(canonical_tree_code(&acc), canonical_tree_code(&g));
    }
}
