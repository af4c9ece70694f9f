use proptest::prelude::{prop, prop_assert, prop_assert_eq, prop_oneof, proptest, Just, ProptestConfig};

use outerlabel::construct::{label_graph, Mode, Strategy};
use outerlabel::generators::{gen_gl, random_outerplanar};
use outerlabel::graph::Graph;
use outerlabel::graph6;
use outerlabel::labeling::{is_valid_l21, verify, Labeling};
use outerlabel::solver::{k_feasible, k_feasible_with, Feasibility, SolverConfig};

fn mode() -> impl proptest::strategy::Strategy<Value = Mode> {
    prop_oneof![Just(Mode::CaseTables), Just(Mode::CertifiedSearch), Just(Mode::Hybrid)]
}

fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let mut g = Graph::new(a.n() + b.n());
    for (u, v) in a.edges() {
        g.add_edge(u, v).unwrap();
    }
    for (u, v) in b.edges() {
        g.add_edge(a.n() + u, a.n() + v).unwrap();
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn random_graphs_get_clean_labelings(n in 1usize..400, seed: u64, mode in mode()) {
        let g = random_outerplanar(n, seed);
        let out = label_graph(&g, &Strategy { mode, strict: false }).unwrap();
        prop_assert!(is_valid_l21(&g, &out.labeling));
        prop_assert!(out.labeling.max_label().unwrap_or(0) <= 6);
    }

    #[test]
    fn unions_are_labeled_per_component(n1 in 1usize..60, n2 in 1usize..60, seed: u64) {
        let g = disjoint_union(&random_outerplanar(n1, seed), &random_outerplanar(n2, seed ^ 1));
        let out = label_graph(&g, &Strategy::default()).unwrap();
        prop_assert!(is_valid_l21(&g, &out.labeling));
    }

    #[test]
    fn formats_round_trip(n in 1usize..200, seed: u64) {
        let g = random_outerplanar(n, seed);
        prop_assert_eq!(graph6::decode(&graph6::encode(&g).unwrap()).unwrap(), g.clone());
        prop_assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn verify_is_complement_symmetric(n in 1usize..40, seed: u64, labels in prop::collection::vec(0u32..=6, 40)) {
        let g = random_outerplanar(n, seed);
        let f = Labeling::from_total(6, &labels[..n]);
        let a = verify(&g, &f, 2, 1).unwrap().is_empty();
        let b = verify(&g, &f.complement(), 2, 1).unwrap().is_empty();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn feasibility_is_monotone(n in 2usize..12, seed: u64, k in 2u32..7) {
        let g = random_outerplanar(n, seed);
        if let Feasibility::Feasible(w) = k_feasible(&g, k).unwrap() {
            prop_assert!(is_valid_l21(&g, &w));
            prop_assert!(is_valid_l21(&g, &w.complement()));
            prop_assert!(matches!(k_feasible(&g, k + 1).unwrap(), Feasibility::Feasible(_)));
        }
    }

    #[test]
    fn workers_agree_with_sequential(n in 2usize..12, seed: u64, k in 3u32..7) {
        let g = random_outerplanar(n, seed);
        let seq = k_feasible(&g, k).unwrap();
        let par = k_feasible_with(&g, k, &SolverConfig { threads: 4, ..SolverConfig::default() }).unwrap();
        match (seq, par) {
            (Feasibility::Feasible(a), Feasibility::Feasible(b)) => prop_assert_eq!(a, b),
            (Feasibility::Infeasible { .. }, Feasibility::Infeasible { .. }) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }
}

#[test]
fn ladders_are_labeled() {
    for l in 3..=30 {
        let gl = gen_gl(l).unwrap();
        for mode in [Mode::CaseTables, Mode::CertifiedSearch, Mode::Hybrid] {
            let out = label_graph(&gl.graph, &Strategy { mode, strict: true }).unwrap();
            assert!(is_valid_l21(&gl.graph, &out.labeling));
        }
    }
}
