use bei::canon::canonical_id;
use bei::formats::{parse_graph, parse_graph6_lines, serialize_graph, to_graph6, Format};
use bei_core::Graph;
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
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

proptest! {
    #[test]
    fn edge_list_round_trip(g in graph(20)) {
        let text = serialize_graph(&g, Format::EdgeList);
        prop_assert_eq!(parse_graph(text.as_bytes(), Format::EdgeList).unwrap(), g);
    }

    #[test]
    fn graph6_round_trip(g in graph(62)) {
        let text = serialize_graph(&g, Format::Graph6);
        prop_assert_eq!(parse_graph(text.as_bytes(), Format::Graph6).unwrap(), g);
    }

    #[test]
    fn canonical_id_ignores_labels(
        (g, perm) in graph(7).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        prop_assert_eq!(canonical_id(&g), canonical_id(&g.relabel(&perm)));
    }
}

#[test]
fn spec_examples() {
    assert_eq!(parse_graph(b"3\n1 2\n2 3\n", Format::EdgeList).unwrap(), Graph::path(3));
    assert_eq!(parse_graph(b"2\n1 2\n", Format::EdgeList).unwrap(), Graph::complete(2));
    assert_eq!(parse_graph(b"Bw", Format::Graph6).unwrap(), Graph::complete(3));
    assert_eq!(to_graph6(&Graph::complete(3)).unwrap(), "Bw");
}

#[test]
fn multi_record_graph6() {
    let gs = parse_graph6_lines("A_\n\nBw\n").unwrap();
    assert_eq!(gs, vec![Graph::path(2), Graph::complete(3)]);
    assert!(parse_graph6_lines("A_\nB\n").unwrap_err().to_string().starts_with("line 2"));
}

#[test]
fn rejects_oversized_graph6() {
    assert!(to_graph6(&Graph::empty(63)).is_err());
}
