//! How the hand-derived case tables fare on the corpus.

use outerlabel::construct::{label_graph, Mode, Strategy, Telemetry};
use outerlabel::generators::{enumerate_2conn_outerplanar, random_outerplanar};
use outerlabel::graph::Graph;
use outerlabel::labeling::is_valid_l21;

fn corpus() -> Vec<Graph> {
    (3..=12).flat_map(|n| enumerate_2conn_outerplanar(n).unwrap()).collect()
}

#[test]
fn strict_case_tables_label_the_corpus() {
    let mut total = Telemetry::default();
    for g in corpus() {
        let out = label_graph(&g, &Strategy { mode: Mode::CaseTables, strict: true }).unwrap();
        assert!(is_valid_l21(&g, &out.labeling));
        total.absorb(&out.telemetry);
    }
    println!("case tables on the corpus: {total:?}");
    assert!(total.fast_path_hits > total.fallbacks + total.divergences);
    assert_eq!(total.face_escalations + total.solver_escalations, 0);
}

#[test]
fn certified_search_never_consults_the_tables() {
    for seed in 0..30 {
        let g = random_outerplanar(150, seed);
        let t = label_graph(&g, &Strategy { mode: Mode::CertifiedSearch, strict: true }).unwrap().telemetry;
        assert_eq!(t.divergences, 0);
        assert_eq!(t.relaxations, 0);
    }
}

#[test]
fn seed_faces_hit_the_fast_path() {
    for n in 3..=20 {
        let t = label_graph(&Graph::cycle(n), &Strategy { mode: Mode::CaseTables, strict: true }).unwrap().telemetry;
        assert_eq!(t, Telemetry::default(), "plain cycles take the seed directly");
        let mut g = Graph::cycle(n + 3);
        g.add_edge(0, 2).unwrap();
        let t = label_graph(&g, &Strategy { mode: Mode::CaseTables, strict: true }).unwrap().telemetry;
        assert!(t.fast_path_hits >= 1, "n = {n}: {t:?}");
    }
}

#[test]
fn escalations_stay_at_zero_on_random_graphs() {
    let mut total = Telemetry::default();
    for seed in 0..100 {
        let g = random_outerplanar(300, seed);
        for mode in [Mode::CaseTables, Mode::Hybrid] {
            total.absorb(&label_graph(&g, &Strategy { mode, strict: false }).unwrap().telemetry);
        }
    }
    println!("random graphs, both table modes: {total:?}");
    assert_eq!(total.face_escalations + total.solver_escalations, 0);
}
