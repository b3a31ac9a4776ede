use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{Graph, GraphError, Vertex};

const NONE: usize = usize::MAX;

/// Whether `pattern` is isomorphic to a subgraph of `host` (both trees).
///
/// For trees a subgraph embedding is automatically induced on its image, so
/// this also answers induced containment.
///
/// Rooted dynamic programme: pattern vertex 0 is mapped to every host vertex
/// in turn, and a pattern vertex embeds below a host vertex when its
/// children can be matched injectively (bipartite matching) to host
/// children they embed under.
pub fn contains_subtree(host: &Graph, pattern: &Graph) -> Result<bool, GraphError> {
    if !host.is_tree() || !pattern.is_tree() {
        return Err(GraphError::NotATree);
    }
    if pattern.n() > host.n() {
        return Ok(false);
    }
    let mut dp = Embedder {
        host,
        pattern,
        memo: BTreeMap::new(),
    };
    Ok(host.vertices().any(|h| dp.embeds(0, NONE, h, NONE)))
}

struct Embedder<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    memo: BTreeMap<(Vertex, Vertex, Vertex, Vertex), bool>,
}

impl Embedder<'_> {
    fn embeds(&mut self, p: Vertex, p_parent: Vertex, h: Vertex, h_parent: Vertex) -> bool {
        let key = (p, p_parent, h, h_parent);
        if let Some(&ok) = self.memo.get(&key) {
            return ok;
        }
        let p_children: Vec<Vertex> = self
            .pattern
            .neighbors(p)
            .iter()
            .copied()
            .filter(|&c| c != p_parent)
            .collect();
        let h_children: Vec<Vertex> = self
            .host
            .neighbors(h)
            .iter()
            .copied()
            .filter(|&c| c != h_parent)
            .collect();
        let ok = if p_children.len() > h_children.len() {
            false
        } else {
            let mut compatible = vec![Vec::new(); p_children.len()];
            for (i, &pc) in p_children.iter().enumerate() {
                for (j, &hc) in h_children.iter().enumerate() {
                    if self.embeds(pc, p, hc, h) {
                        compatible[i].push(j);
                    }
                }
            }
            perfect_left_matching(&compatible, h_children.len())
        };
        self.memo.insert(key, ok);
        ok
    }
}

/// Kuhn's augmenting paths: can every left vertex be matched?
fn perfect_left_matching(adj: &[Vec<usize>], right: usize) -> bool {
    let mut owner = vec![NONE; right];
    for left in 0..adj.len() {
        let mut seen = vec![false; right];
        if !augment(left, adj, &mut owner, &mut seen) {
            return false;
        }
    }
    true
}

fn augment(left: usize, adj: &[Vec<usize>], owner: &mut [usize], seen: &mut [bool]) -> bool {
    for &r in &adj[left] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if owner[r] == NONE || augment(owner[r], adj, owner, seen) {
            owner[r] = left;
            return true;
        }
    }
    false
}
