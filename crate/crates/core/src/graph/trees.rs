//! Canonical codes and enumeration of unlabeled free trees.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{Graph, GraphError, Vertex};

pub const MAX_ENUMERATION_N: usize = 16;

/// An unlabeled tree in its canonical labelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCatalogEntry {
    /// Vertices numbered in preorder of the canonical code.
    pub graph: Graph,
    /// Balanced-parenthesis AHU code rooted at the center.
    pub canonical_code: Vec<u8>,
    pub n: usize,
}

/// AHU code of a free tree, rooted at its center (the smaller of the two
/// rooted codes for a bicentral tree). Equal codes iff isomorphic trees.
pub fn canonical_tree_code(g: &Graph) -> Result<Vec<u8>, GraphError> {
    if !g.is_tree() {
        return Err(GraphError::NotATree);
    }
    let centers = centers(g);
    let code = centers
        .iter()
        .map(|&c| rooted_code(g, c, usize::MAX))
        .min()
        .expect("a tree has a center");
    Ok(code)
}

/// The one or two central vertices, by repeated leaf stripping.
pub fn centers(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    if n <= 2 {
        return g.vertices().collect();
    }
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut layer: Vec<Vertex> = g.vertices().filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            degree[leaf] = 0;
            for &w in g.neighbors(leaf) {
                if degree[w] > 0 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn rooted_code(g: &Graph, v: Vertex, parent: Vertex) -> Vec<u8> {
    let mut children: Vec<Vec<u8>> = g
        .neighbors(v)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(g, w, v))
        .collect();
    children.sort_unstable();
    let mut code = Vec::with_capacity(2 + children.iter().map(Vec::len).sum::<usize>());
    code.push(b'(');
    for c in children {
        code.extend_from_slice(&c);
    }
    code.push(b')');
    code
}

/// Rebuilds the tree a code describes, numbering vertices in preorder.
pub fn tree_from_code(code: &[u8]) -> Graph {
    let mut g = Graph::empty(0);
    let mut stack: Vec<Vertex> = Vec::new();
    for &b in code {
        if b == b'(' {
            let v = g.add_vertex();
            if let Some(&p) = stack.last() {
                g.add_edge(p, v).expect("preorder edges are fresh");
            }
            stack.push(v);
        } else {
            stack.pop();
        }
    }
    g
}

/// One representative per isomorphism class of trees on `n` vertices,
/// sorted by canonical code.
///
/// Level `k + 1` is generated from level `k` by attaching a leaf at every
/// vertex of every representative and keeping the first child seen with
/// each canonical code.
pub fn enumerate_trees(n: usize) -> Result<Vec<TreeCatalogEntry>, GraphError> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(GraphError::EnumerationRange {
            n,
            max: MAX_ENUMERATION_N,
        });
    }
    let mut level: BTreeSet<Vec<u8>> = BTreeSet::from([b"()".to_vec()]);
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for code in &level {
            let t = tree_from_code(code);
            for v in t.vertices() {
                let mut child = t.clone();
                let leaf = child.add_vertex();
                child.add_edge(v, leaf).expect("new leaf");
                next.insert(canonical_tree_code(&child).expect("still a tree"));
            }
        }
        level = next;
    }
    Ok(level
        .into_iter()
        .map(|code| TreeCatalogEntry {
            graph: tree_from_code(&code),
            n,
            canonical_code: code,
        })
        .collect())
}

/// Decodes a Prüfer sequence over `0..n` into a labelled tree.
pub fn tree_from_pruefer(seq: &[Vertex]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut g = Graph::empty(n);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf remains");
        g.add_edge(leaf, s).expect("Prüfer edges are simple");
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let last: Vec<Vertex> = (0..n).filter(|&v| degree[v] == 1).collect();
    g.add_edge(last[0], last[1]).expect("final edge is simple");
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Number of unlabeled trees by brute force over all labelled trees.
    fn pruefer_class_count(n: usize) -> usize {
        if n <= 2 {
            return 1;
        }
        let mut seen = BTreeSet::new();
        let mut seq = vec![0; n - 2];
        loop {
            seen.insert(canonical_tree_code(&tree_from_pruefer(&seq)).unwrap());
            let mut i = 0;
            loop {
                if i == seq.len() {
                    return seen.len();
                }
                seq[i] += 1;
                if seq[i] < n {
                    break;
                }
                seq[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn enumeration_matches_pruefer_brute_force() {
        for n in 1..=9 {
            assert_eq!(
                enumerate_trees(n).unwrap().len(),
                pruefer_class_count(n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_trees(1).unwrap().len(), 1);
        assert_eq!(enumerate_trees(4).unwrap().len(), 2);
        assert_eq!(enumerate_trees(10).unwrap().len(), 106);
    }

    #[test]
    fn range_checked() {
        assert!(enumerate_trees(0).is_err());
        assert!(enumerate_trees(17).is_err());
    }

    #[test]
    fn entries_are_canonical() {
        for e in enumerate_trees(7).unwrap() {
            assert_eq!(canonical_tree_code(&e.graph).unwrap(), e.canonical_code);
            assert_eq!(e.graph.n(), 7);
        }
    }

    #[test]
    fn code_is_labelling_invariant() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 5)]).unwrap();
        let perm = [5, 3, 0, 1, 4, 2];
        assert_eq!(
            canonical_tree_code(&g).unwrap(),
            canonical_tree_code(&g.relabel(&perm)).unwrap()
        );
    }
}
