use rand::Rng;
use rmis_core::construction::extract_rmis;
use rmis_core::generate::{random_connected_with, rng_from_seed};
use rmis_core::labeling::{decide, is_satisfiable};
use rmis_core::oracle::{exists_rmis_bf, is_robust_mis, suitable_rmis_exists};
use rmis_core::Graph;
use rmis_testkit::connected_labeled_graphs;

fn check(g: &Graph) {
    let decision = decide(g).unwrap();
    let expected = exists_rmis_bf(g).unwrap().is_some();
    assert_eq!(
        decision.accepts(),
        expected,
        "decision disagrees with brute force on {g:?}"
    );
    for check in decision.checks() {
        let oracle = suitable_rmis_exists(&check.problem).unwrap();
        assert_eq!(
            check.outcome.is_satisfied(),
            oracle,
            "component check disagrees on {:?}",
            check.problem
        );
        assert_eq!(is_satisfiable(&check.problem), check.outcome);
    }
    if decision.accepts() {
        let witness = extract_rmis(g, &decision).unwrap();
        assert!(
            is_robust_mis(g, witness.set()).unwrap(),
            "witness {:?} not robust in {g:?}",
            witness.set()
        );
    }
}

#[test]
fn all_labeled_graphs_up_to_six_vertices() {
    for n in 1..=6 {
        for sg in connected_labeled_graphs(n) {
            check(&Graph::new(sg.n, sg.edges).unwrap());
        }
    }
}

#[test]
fn random_graphs_up_to_ten_vertices() {
    let mut rng = rng_from_seed(0x5eed);
    for _ in 0..1500 {
        let n = rng.gen_range(7..=10);
        let p = rng.gen_range(0.05..0.6);
        check(&random_connected_with(n, p, &mut rng).unwrap());
    }
}
