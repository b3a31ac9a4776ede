//! Property tests tying the rule engine, the two oracle tiers and the graph
//! operations together on small random inputs.

use bei_core::betti::{betti_koszul, hilbert_numerator, hochster_regularity};
use bei_core::graph::{canonical_tree_code, glue, split, tree_from_pruefer};
use bei_core::groebner::edge_ideal_basis;
use bei_core::taxonomy::{is_pure_lobster, spine_decompositions};
use bei_core::{apply_all_rules, build_jewel, regularity, Graph, OracleConfig, Vertex};
use proptest::prelude::*;

fn tree(n: usize) -> impl Strategy<Value = Graph> {
    let len = n.saturating_sub(2);
    proptest::collection::vec(0..n.max(1), len).prop_map(move |seq| {
        if n == 1 {
            Graph::empty(1)
        } else if n == 2 {
            Graph::path(2)
        } else {
            tree_from_pruefer(&seq)
        }
    })
}

fn small_tree(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(tree)
}

/// Block graph grown by hanging cliques of size 2..=4 at earlier vertices.
fn block_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    proptest::collection::vec((any::<prop::sample::Index>(), 2usize..=4), 1..max_n).prop_map(
        move |steps| {
            let mut g = Graph::empty(1);
            for (at, k) in steps {
                let k = k.min(max_n + 1 - g.n());
                if k < 2 {
                    break;
                }
                let v = at.index(g.n());
                let mut members = vec![v];
                for _ in 1..k {
                    members.push(g.add_vertex());
                }
                for (i, &a) in members.iter().enumerate() {
                    for &b in &members[i + 1..] {
                        g.add_edge(a, b).unwrap();
                    }
                }
            }
            g
        },
    )
}

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        g.add_edge(u, v).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<Vertex>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn oracle() -> OracleConfig {
    OracleConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn oracle_lies_in_rule_interval_trees(g in small_tree(8)) {
        let iv = apply_all_rules(&g).unwrap();
        let reg = regularity(&g, oracle()).unwrap().reg;
        prop_assert!(iv.contains(reg), "reg {} outside [{}, {:?}]", reg, iv.lo, iv.hi);
    }

    #[test]
    fn oracle_lies_in_rule_interval_block_graphs(g in block_graph(8)) {
        let iv = apply_all_rules(&g).unwrap();
        let reg = regularity(&g, oracle()).unwrap().reg;
        prop_assert!(iv.contains(reg), "reg {} outside [{}, {:?}]", reg, iv.lo, iv.hi);
    }

    #[test]
    fn rule_interval_is_relabelling_invariant(
        (g, perm) in block_graph(12).prop_flat_map(|g| { let n = g.n(); (Just(g), permutation(n)) })
    ) {
        let a = apply_all_rules(&g).unwrap();
        let b = apply_all_rules(&g.relabel(&perm)).unwrap();
        prop_assert_eq!((a.lo, a.hi), (b.lo, b.hi));
    }

    #[test]
    fn rules_never_contradict_on_larger_trees(g in small_tree(16)) {
        let iv = apply_all_rules(&g).unwrap();
        prop_assert!(iv.hi.is_some_and(|h| iv.lo <= h));
        prop_assert_eq!(iv.exact, iv.hi == Some(iv.lo));
        prop_assert!(!iv.provenance.is_empty());
    }

    #[test]
    fn tiers_agree_on_arbitrary_graphs(g in any_graph(5), two in any::<bool>()) {
        let p = if two { 2 } else { 32003 };
        let tor = betti_koszul(&g, p).unwrap().regularity();
        let comps: usize = g
            .components()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| hochster_regularity(&g.induced_subgraph(&c), p).unwrap())
            .sum();
        prop_assert_eq!(tor, comps);
    }

    #[test]
    fn hilbert_numerators_agree(g in any_graph(5)) {
        prop_assert!(hilbert_numerator(&g, 32003, None).unwrap().matches);
    }

    #[test]
    fn lex_basis_is_groebner_with_squarefree_initial_ideal(g in any_graph(6)) {
        let gb = edge_ideal_basis(&g, 32003).unwrap();
        prop_assert!(gb.is_groebner());
        prop_assert!(gb.initial_ideal().unwrap().iter().all(|m| m.is_squarefree()));
    }

    #[test]
    fn pendant_at_free_vertex_shifts_betti_table(g in small_tree(5), pick in any::<prop::sample::Index>()) {
        let free = g.free_vertices();
        let v = free[pick.index(free.len())];
        let mut h = g.clone();
        let w = h.add_vertex();
        h.add_edge(v, w).unwrap();
        let a = betti_koszul(&g, 32003).unwrap();
        let b = betti_koszul(&h, 32003).unwrap();
        for (i, j, x) in b.entries() {
            let shifted = if i >= 1 && j >= 2 { a.get(i - 1, j - 2) } else { 0 };
            prop_assert_eq!(x, a.get(i, j) + shifted, "entry ({}, {})", i, j);
        }
        prop_assert_eq!(b.regularity(), a.regularity() + 1);
    }

    #[test]
    fn induced_subgraphs_do_not_raise_regularity(g in small_tree(8), drop in any::<prop::sample::Index>()) {
        let v = drop.index(g.n());
        let h = g.remove_vertex(v);
        let rg = regularity(&g, oracle()).unwrap().reg;
        let rh = regularity(&h, oracle()).unwrap().reg;
        prop_assert!(rh <= rg);
    }

    #[test]
    fn split_then_glue_is_identity_on_trees(g in small_tree(14), pick in any::<prop::sample::Index>()) {
        let cuts: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) >= 2).collect();
        prop_assume!(!cuts.is_empty());
        let v = cuts[pick.index(cuts.len())];
        let pieces = split(&g, v).unwrap();
        let mut acc = pieces[0].graph.clone();
        let mut at = pieces[0].cut;
        for p in &pieces[1..] {
            acc = glue(&acc, at, &p.graph, p.cut).unwrap();
            at = pieces[0].cut;
        }
        prop_assert_eq!(canonical_tree_code(&acc).unwrap(), canonical_tree_code(&g).unwrap());
    }

    #[test]
    fn glue_adds_rule_exact_values(a in small_tree(7), b in small_tree(7), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let fa = a.free_vertices();
        let fb = b.free_vertices();
        let (va, vb) = (fa[i.index(fa.len())], fb[j.index(fb.len())]);
        let g = glue(&a, va, &b, vb).unwrap();
        let (ia, ib, ig) = (apply_all_rules(&a).unwrap(), apply_all_rules(&b).unwrap(), apply_all_rules(&g).unwrap());
        if ia.exact && ib.exact {
            prop_assert!(ig.exact);
            prop_assert_eq!(ig.lo, ia.lo + ib.lo);
        }
    }
}

#[test]
fn pure_lobsters_agree_symbolically() {
    for n in 3..=12 {
        for e in bei_core::graph::enumerate_trees(n).unwrap() {
            let g = e.graph;
            if !is_pure_lobster(&g) {
                continue;
            }
            let m = g.vertices().filter(|&v| g.degree(v) > 1).count();
            let d = spine_decompositions(&g)
                .unwrap()
                .into_iter()
                .find(|d| d.r() == 0 && d.all_limbs_pure())
                .unwrap();
            assert_eq!(d.ell + d.t(), m + 1);
            let iv = apply_all_rules(&g).unwrap();
            assert!(iv.exact && iv.lo == m + 1, "n = {n}");
        }
    }
}

#[test]
fn rules_never_empty_on_trees_up_to_ten() {
    for n in 1..=10 {
        for e in bei_core::graph::enumerate_trees(n).unwrap() {
            let iv = apply_all_rules(&e.graph).unwrap();
            assert!(iv.hi.is_some_and(|h| iv.lo <= h));
        }
    }
    let jewel = apply_all_rules(&build_jewel()).unwrap();
    assert_eq!((jewel.lo, jewel.hi), (6, Some(9)));
}
