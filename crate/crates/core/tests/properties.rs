mod common;

use proptest::prelude::*;

use snarkdefect::colouring::{is_colourable, is_proper};
use snarkdefect::io::{parse_graph, to_graph6, to_sparse6};
use snarkdefect::measures::{measure, MeasureOptions, Value};
use snarkdefect::{named, Budget, ColourPermutation, EdgeColouring, Graph};

fn small_graphs() -> Vec<(&'static str, Graph)> {
    named::small_cubic_corpus()
        .into_iter()
        .chain(named::snark_corpus())
        .filter(|(_, g)| g.vertex_count() <= 20)
        .collect()
}

fn sorted_edges(g: &Graph) -> Vec<(usize, usize)> {
    let mut e: Vec<_> = g.edge_list().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    e.sort_unstable();
    e
}

/// A graph from the corpus with its vertices renamed and its edges listed in
/// a shuffled order.
fn relabelled() -> impl Strategy<Value = (Graph, Graph)> {
    let graphs = small_graphs();
    (0..graphs.len()).prop_flat_map(move |i| {
        let g = graphs[i].1.clone();
        let n = g.vertex_count();
        let m = g.edge_count();
        (
            Just(g),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            Just((0..m).collect::<Vec<_>>()).prop_shuffle(),
        )
            .prop_map(|(g, perm, order)| {
                let edges: Vec<_> = order
                    .iter()
                    .map(|&e| {
                        let (a, b) = g.endpoints(e);
                        (perm[a], perm[b])
                    })
                    .collect();
                let h = Graph::from_edges(g.vertex_count(), &edges).unwrap();
                (g, h)
            })
    })
}

fn values(g: &Graph) -> Vec<Option<usize>> {
    let r = measure(g, &MeasureOptions::all()).unwrap();
    let v = |x: Option<Value>| x.and_then(|x| x.get());
    vec![
        v(r.defect),
        v(r.oddness),
        v(r.resistance),
        v(r.density),
        r.girth,
        r.colourable.map(usize::from),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn measures_ignore_labels((g, h) in relabelled()) {
        prop_assert_eq!(values(&g), values(&h));
    }

    #[test]
    fn defect_matches_oracle_after_relabelling((g, h) in relabelled()) {
        prop_assume!(h.vertex_count() <= 14 && h.is_bridgeless());
        let r = measure(&h, &MeasureOptions::all()).unwrap();
        prop_assert_eq!(r.defect.and_then(|v| v.get()), Some(common::defect(&h)));
        prop_assert_eq!(common::defect(&g), common::defect(&h));
    }

    #[test]
    fn sparse6_round_trip((_, h) in relabelled()) {
        let back = parse_graph(&to_sparse6(&h)).unwrap();
        prop_assert_eq!(back.vertex_count(), h.vertex_count());
        prop_assert_eq!(sorted_edges(&back), sorted_edges(&h));
    }

    #[test]
    fn graph6_round_trip((_, h) in relabelled()) {
        prop_assume!(h.is_simple());
        let back = parse_graph(&to_graph6(&h).unwrap()).unwrap();
        prop_assert_eq!(sorted_edges(&back), sorted_edges(&h));
    }

    #[test]
    fn colour_permutations_keep_colourings_proper(
        (_, h) in relabelled(),
        k in 0usize..6,
    ) {
        let c = is_colourable(h.multipole(), Budget::unlimited()).unwrap();
        if let Some(c) = c.found() {
            let p = ColourPermutation::all()[k];
            let d = EdgeColouring(c.colours().iter().map(|&x| p.apply(x)).collect());
            prop_assert!(is_proper(h.multipole(), &d));
            let raw: Vec<u8> = d.values();
            prop_assert!(common::kirchhoff_failures(&h, &raw).is_empty());
        } else {
            prop_assert!(!common::colourable(&h));
        }
    }
}

#[test]
fn multigraphs_round_trip_through_sparse6() {
    for g in [named::theta(), named::digon_ring(2), named::digon_ring(4)] {
        let back = parse_graph(&to_sparse6(&g)).unwrap();
        assert_eq!(sorted_edges(&back), sorted_edges(&g));
    }
}

#[test]
fn permutation_group_is_closed() {
    let all = ColourPermutation::all();
    for a in &all {
        for b in &all {
            let images = [1u8, 2, 3].map(|v| a.apply(b.apply(snarkdefect::Colour::new(v).unwrap())));
            assert!(all.iter().any(|p| [1u8, 2, 3]
                .map(|v| p.apply(snarkdefect::Colour::new(v).unwrap()))
                == images));
        }
    }
}
