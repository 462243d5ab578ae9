use ctvd_core::graph::is_solution;
use ctvd_core::solvers::{approx_deletion_set, brute_force, minimum_deletion_set, APPROX_FACTOR};
use ctvd_testkit::strategies::graph;
use ctvd_testkit::{exhaustive_feasible, exhaustive_optimum};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn brute_force_agrees_with_enumeration(g in graph(9, 3), k in 0usize..=4) {
        let r = brute_force(&g, k);
        prop_assert_eq!(r.feasible, exhaustive_feasible(&g, k as i64));
        if let Some(x) = &r.solution {
            prop_assert!(is_solution(&g, x, k));
            prop_assert_eq!(Some(x.len()), r.optimum);
        }
    }

    #[test]
    fn minimum_set_is_optimal(g in graph(8, 2)) {
        let x = minimum_deletion_set(&g);
        prop_assert!(is_solution(&g, &x, x.len()));
        prop_assert_eq!(x.len(), exhaustive_optimum(&g));
    }

    #[test]
    fn approximation_is_valid_and_within_factor(g in graph(10, 3)) {
        let m = approx_deletion_set(&g);
        prop_assert_eq!(m.factor, APPROX_FACTOR);
        prop_assert!(is_solution(&g, &m.s, m.s.len()));
        let opt = minimum_deletion_set(&g).len();
        prop_assert!(m.s.len() <= APPROX_FACTOR * opt, "|S| = {} opt = {}", m.s.len(), opt);
    }
}

#[test]
fn solve_examples() {
    use ctvd_core::{MultiGraph, VertexId};
    let v = VertexId;
    let paw = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
    assert_eq!(brute_force(&paw, 1).optimum, Some(1));
    let mut two_c4 = MultiGraph::with_vertices(8);
    for base in [0, 4] {
        for i in 0..4 {
            two_c4.add_edge(v(base + i), v(base + (i + 1) % 4)).unwrap();
        }
    }
    assert!(!brute_force(&two_c4, 1).feasible);
    assert_eq!(brute_force(&MultiGraph::new(), 0).optimum, Some(0));
}
