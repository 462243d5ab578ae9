use ctvd_core::expansion::{
    check_certificate, flower_or_hitting_set, new_q_expansion, q_expansion, Bipartition, ExpansionError,
    ExpansionVariant, FlowerResult,
};
use ctvd_core::{MultiGraph, VertexId, VertexSet};
use ctvd_testkit::{cycles_through, expansion_is_valid, is_cycle, max_petal_packing};
use proptest::prelude::*;

fn bipartition() -> impl Strategy<Value = Bipartition> {
    (1usize..=8, 0usize..=12).prop_flat_map(|(a, b)| {
        prop::collection::vec(any::<bool>(), a * b).prop_map(move |bits| {
            let mut edges = Vec::new();
            for i in 0..a {
                for j in 0..b {
                    if bits[i * b + j] {
                        edges.push((VertexId(i as u32), VertexId(j as u32)));
                    }
                }
            }
            Bipartition {
                a_side: (0..a as u32).map(VertexId).collect(),
                b_side: (0..b as u32).map(VertexId).collect(),
                edges,
            }
        })
    })
}

/// A random forest plus an apex `v = 0` joined to some forest vertices, with
/// occasional double edges at the apex.
fn apex_forest() -> impl Strategy<Value = MultiGraph> {
    (2usize..=12).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<prop::sample::Index>(), n - 1),
            prop::collection::vec(0u8..10, n - 1),
            prop::collection::vec(0u8..10, n),
        )
            .prop_map(move |(parents, keep, apex)| {
                let mut g = MultiGraph::with_vertices(n + 1);
                for i in 1..n {
                    if keep[i - 1] < 7 {
                        let p = parents[i - 1].index(i);
                        g.add_edge(VertexId(p as u32 + 1), VertexId(i as u32 + 1)).unwrap();
                    }
                }
                for (i, &a) in apex.iter().enumerate() {
                    let m = match a {
                        0..=4 => 0,
                        5..=8 => 1,
                        _ => 2,
                    };
                    if m > 0 {
                        g.set_multiplicity(VertexId(0), VertexId(i as u32 + 1), m).unwrap();
                    }
                }
                g
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn classic_expansion_meets_contract(h in bipartition(), q in prop::sample::select(vec![1usize, 2, 4])) {
        let isolated = h.b_side.iter().any(|b| !h.edges.iter().any(|e| e.1 == *b));
        match q_expansion(&h, q) {
            Ok(cert) => {
                prop_assert!(expansion_is_valid(&h, &cert, q, false));
                prop_assert!(check_certificate(&h, &cert, ExpansionVariant::Classic).is_empty());
            }
            Err(ExpansionError::TooFewB { .. }) => prop_assert!(h.b_side.len() < q * h.a_side.len()),
            Err(ExpansionError::IsolatedB(_)) => prop_assert!(isolated),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn new_expansion_meets_deficiency_bound(h in bipartition(), q in prop::sample::select(vec![1usize, 2, 4])) {
        let cert = new_q_expansion(&h, q).unwrap();
        prop_assert!(expansion_is_valid(&h, &cert, q, true));
        prop_assert!(check_certificate(&h, &cert, ExpansionVariant::Deficiency).is_empty());
    }

    #[test]
    fn flower_dichotomy(g in apex_forest(), order in 0usize..=4) {
        let v = VertexId(0);
        let best = max_petal_packing(&g, v);
        match flower_or_hitting_set(&g, v, order).unwrap() {
            FlowerResult::Flower { petals } => {
                prop_assert!(petals.len() > order);
                let mut used = VertexSet::new();
                for p in &petals {
                    prop_assert_eq!(p[0], v);
                    prop_assert!(is_cycle(&g, p));
                    for &u in &p[1..] {
                        prop_assert!(used.insert(u));
                    }
                }
                prop_assert!(best > order);
            }
            FlowerResult::Hitting { z } => {
                prop_assert!(z.len() <= order && !z.contains(&v));
                prop_assert!(cycles_through(&g.without(&z), v).is_empty());
                prop_assert!(best <= order);
            }
        }
    }
}
