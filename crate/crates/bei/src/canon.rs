//! Canonical identifiers used as record keys.
//!
//! Trees use the AHU code. Other graphs get the smallest graph6 string over
//! all labellings that respect a colour refinement; when that search would
//! be too large the labelled graph6 string is used instead, so the key is
//! still stable but no longer isomorphism-invariant.

use std::collections::BTreeMap;

use bei_core::graph::canonical_tree_code;
use bei_core::{Graph, Vertex};

use crate::formats::to_graph6;

/// Most labellings tried by the brute-force canonical form.
pub const CANON_PERMUTATION_CAP: usize = 200_000;

pub fn canonical_id(g: &Graph) -> String {
    if g.is_tree() {
        let code = canonical_tree_code(g).expect("checked tree");
        let mut s = String::with_capacity(2 + 2 * code.len());
        s.push_str("T:");
        for b in code {
            s.push_str(&format!("{b:02x}"));
        }
        return s;
    }
    match canonical_graph(g) {
        Some(h) => format!("G:{}", to_graph6(&h).expect("canonical forms respect the size limit")),
        None => format!("L:{}", to_graph6(g).unwrap_or_else(|_| format!("n{}", g.n()))),
    }
}

/// Stable colour refinement: colours are ranks of (colour, sorted
/// neighbour colours) signatures, so they are isomorphism-invariant.
fn refine(g: &Graph) -> Vec<usize> {
    let mut colour: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = g
            .vertices()
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut ranks: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for s in &sigs {
            ranks.insert(s, 0);
        }
        for (i, r) in ranks.values_mut().enumerate() {
            *r = i;
        }
        let next: Vec<usize> = sigs.iter().map(|s| ranks[s]).collect();
        let classes_before = colour.iter().collect::<std::collections::BTreeSet<_>>().len();
        let classes_after = ranks.len();
        colour = next;
        if classes_after == classes_before {
            return colour;
        }
    }
}

/// Canonical relabelling of `g`, or `None` past [`CANON_PERMUTATION_CAP`].
pub fn canonical_graph(g: &Graph) -> Option<Graph> {
    if g.n() > crate::formats::GRAPH6_MAX_N {
        return None;
    }
    let colour = refine(g);
    let mut classes: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
    for v in g.vertices() {
        classes.entry(colour[v]).or_default().push(v);
    }
    let mut classes: Vec<Vec<Vertex>> = classes.into_values().collect();
    let mut total: usize = 1;
    for c in &classes {
        for k in 2..=c.len() {
            total = total.checked_mul(k)?;
            if total > CANON_PERMUTATION_CAP {
                return None;
            }
        }
    }
    let mut best: Option<(String, Graph)> = None;
    loop {
        let order: Vec<Vertex> = classes.iter().flatten().copied().collect();
        let mut perm = vec![0; g.n()];
        for (label, &v) in order.iter().enumerate() {
            perm[v] = label;
        }
        let h = g.relabel(&perm);
        let key = to_graph6(&h).expect("size checked");
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, h));
        }
        // odometer over the classes' permutations
        let mut i = 0;
        while i < classes.len() && !next_permutation(&mut classes[i]) {
            i += 1;
        }
        if i == classes.len() {
            break;
        }
    }
    best.map(|(_, h)| h)
}

/// Advances to the next lexicographic permutation; on the last one, resets
/// to the first and returns false.
fn next_permutation(a: &mut [Vertex]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        a.reverse();
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphic_graphs_share_ids() {
        let k3 = Graph::complete(3);
        let a = bei_core::graph::glue(&k3, 0, &Graph::path(3), 0).unwrap();
        let b = bei_core::graph::glue(&Graph::path(3), 2, &k3, 1).unwrap();
        assert_eq!(canonical_id(&a), canonical_id(&b));
        assert!(canonical_id(&a).starts_with("G:"));
        assert_ne!(canonical_id(&a), canonical_id(&Graph::complete(5)));
    }

    #[test]
    fn tree_ids() {
        let p = Graph::path(4);
        let q = p.relabel(&[2, 0, 3, 1]);
        assert_eq!(canonical_id(&p), canonical_id(&q));
        assert!(canonical_id(&p).starts_with("T:"));
    }
}
