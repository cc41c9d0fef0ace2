use proptest::prelude::*;

use signforge::criticality::{is_critical, Method};
use signforge::cycles::enumerate_cycles;
use signforge::frustration::{frustration_index, is_minimum_signature, to_minimum_signature};
use signforge::iso::{canonical_form, switching_isomorphism, witness_holds};
use signforge::subdivision::{reduce_to_irreducible, subdivide_multiedge};
use signforge::{Sign, SignedGraph, SwitchSet};

fn graph(max_n: usize, max_m: usize) -> impl Strategy<Value = SignedGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n, any::<bool>()), 0..=max_m).prop_map(move |es| {
            let edges: Vec<_> = es
                .into_iter()
                .map(|(u, v, neg)| (u, v, if neg { Sign::Negative } else { Sign::Positive }))
                .collect();
            SignedGraph::from_indexed(n, &edges)
        })
    })
}

fn graph_and_switch() -> impl Strategy<Value = (SignedGraph, u64)> {
    (graph(7, 12), any::<u64>())
}

fn subset(g: &SignedGraph, bits: u64) -> SwitchSet {
    SwitchSet::from_vertices((0..g.vertex_count()).filter(|v| bits >> v & 1 == 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn switching_is_an_involution((g, bits) in graph_and_switch()) {
        let x = subset(&g, bits);
        prop_assert_eq!(g.switch(x).switch(x), g);
    }

    #[test]
    fn switching_keeps_cycle_signs((g, bits) in graph_and_switch()) {
        let h = g.switch(subset(&g, bits));
        for c in enumerate_cycles(&g).unwrap() {
            prop_assert_eq!(c.sign(&g), c.sign(&h));
        }
    }

    #[test]
    fn switching_shifts_negatives_by_cut_balance((g, bits) in graph_and_switch()) {
        let x = subset(&g, bits);
        let cut = g.cut(x);
        let h = g.switch(x);
        prop_assert_eq!(h.negative_count() + cut.negative, g.negative_count() + cut.positive);
    }

    #[test]
    fn frustration_is_a_switching_invariant((g, bits) in graph_and_switch()) {
        let a = frustration_index(&g).unwrap().ell;
        let b = frustration_index(&g.switch(subset(&g, bits))).unwrap().ell;
        prop_assert_eq!(a, b);
        prop_assert!(a <= g.negative_count());
    }

    #[test]
    fn minimum_signature_attains_ell(g in graph(7, 12)) {
        let (h, sig) = to_minimum_signature(&g).unwrap();
        prop_assert_eq!(h.negative_count(), sig.ell);
        prop_assert!(is_minimum_signature(&h).unwrap());
    }

    #[test]
    fn deleting_an_edge_drops_ell_by_at_most_one(g in graph(6, 10)) {
        let ell = frustration_index(&g).unwrap().ell;
        for e in 0..g.edge_count() {
            let d = frustration_index(&g.delete_edge(e)).unwrap().ell;
            prop_assert!(d == ell || d + 1 == ell, "edge {} gives {} from {}", e, d, ell);
        }
    }

    #[test]
    fn subdivision_keeps_ell_and_criticality(g in graph(6, 10), pick in any::<usize>(), keep in any::<u64>()) {
        prop_assume!(g.edge_count() > 0);
        let e = pick % g.edge_count();
        let base = g.edge(e);
        let bundle: Vec<usize> = (0..g.edge_count())
            .filter(|&f| g.edge(f).pair() == base.pair() && g.edge(f).sign == base.sign)
            .filter(|&f| f == e || keep >> (f % 64) & 1 == 1)
            .collect();
        let s = subdivide_multiedge(&g, &bundle).unwrap();
        let a = is_critical(&g, Method::Deletion).unwrap();
        let b = is_critical(&s, Method::Deletion).unwrap();
        prop_assert_eq!(a.ell, b.ell);
        prop_assert_eq!(a.critical, b.critical);
    }

    #[test]
    fn reduction_keeps_ell(g in graph(6, 10)) {
        let r = reduce_to_irreducible(&g);
        prop_assert_eq!(frustration_index(&g).unwrap().ell, frustration_index(&r).unwrap().ell);
    }

    #[test]
    fn canonical_form_ignores_labels_and_switching((g, bits) in graph_and_switch(), seed in any::<u64>()) {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.switch(subset(&g, bits));
        let edges: Vec<_> = h.edges().iter().map(|e| (perm[e.u], perm[e.v], e.sign)).collect();
        let h = SignedGraph::from_indexed(n, &edges);
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        let w = switching_isomorphism(&g, &h).unwrap().expect("isomorphic");
        prop_assert!(witness_holds(&g, &h, &w));
    }

    #[test]
    fn sg_round_trip(g in graph(7, 12)) {
        let back = SignedGraph::parse_sg(&g.to_sg()).unwrap();
        prop_assert_eq!(back.edge_count(), g.edge_count());
        prop_assert_eq!(back.to_sg(), g.to_sg());
    }
}
