mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zerosum_core::solver::plan_moves;
use zerosum_core::*;

fn lattices() -> Vec<WeightedGraph> {
    [
        "Z8", "Z12", "Z18", "Z45", "2*2", "3*3", "Z30", "2^2*2", "Z27",
    ]
    .iter()
    .map(|s| WeightedGraph::lattice(&parse_group_spec(s).unwrap()).unwrap())
    .collect()
}

fn random_counts(rng: &mut ChaCha8Rng, n: usize, max: u64) -> Vec<u64> {
    let mut counts = vec![0u64; n];
    for _ in 0..rng.gen_range(0..=max) {
        counts[rng.gen_range(0..n)] += 1;
    }
    counts
}

#[test]
fn solvable_certificates_replay() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let graphs = [
        WeightedGraph::complete(5),
        WeightedGraph::cube(3),
        WeightedGraph::path(&[2, 3, 5]).unwrap(),
        WeightedGraph::new(4, &[(0, 1, 2), (1, 2, 3), (2, 3, 2), (3, 0, 3)]).unwrap(),
    ];
    let mut checked = 0;
    for graph in graphs.iter().chain(lattices().iter()) {
        for _ in 0..200 {
            let n = graph.vertex_count();
            let counts = random_counts(&mut rng, n, 30);
            let config = Configuration::new(counts);
            let root = rng.gen_range(0..n);
            if let SolveCertificate::Solvable { moves } =
                is_solvable(graph, &config, root, SolverOptions::default()).unwrap()
            {
                let end = replay(graph, &config, &moves).unwrap();
                assert!(end.get(root) >= 1);
                checked += 1;
            }
        }
    }
    assert!(checked > 500, "{checked}");
}

#[test]
fn upward_solvable_implies_solvable() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let graphs = lattices();
    let (mut upward, mut total) = (0, 0);
    while total < 1000 {
        let graph = &graphs[rng.gen_range(0..graphs.len())];
        let counts = random_counts(&mut rng, graph.vertex_count(), 40);
        let config = Configuration::new(counts);
        let top = graph.default_root();
        total += 1;
        match upward_plan(
            graph,
            &config,
            &graph.lattice_info().unwrap().maxes,
            1_000_000,
        )
        .unwrap()
        {
            UpwardOutcome::Plan(plan) => {
                upward += 1;
                let end = replay(graph, &config, &plan_moves(graph, &plan).unwrap()).unwrap();
                assert!(end.get(top) >= 1);
                let general = is_solvable(graph, &config, top, SolverOptions::default()).unwrap();
                assert_eq!(general.verdict(), Some(true));
            }
            UpwardOutcome::Unsolvable => {}
            UpwardOutcome::Unknown => panic!("budget ran out"),
        }
    }
    assert!(upward > 100, "{upward}");
}

#[test]
fn exact_solver_matches_breadth_first_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let graphs = [
        WeightedGraph::complete(4),
        WeightedGraph::cube(2),
        WeightedGraph::path(&[3, 2, 2]).unwrap(),
        WeightedGraph::new(
            5,
            &[
                (0, 1, 2),
                (1, 2, 3),
                (2, 3, 2),
                (3, 4, 2),
                (4, 0, 3),
                (1, 3, 2),
            ],
        )
        .unwrap(),
        WeightedGraph::lattice(&parse_group_spec("Z12").unwrap()).unwrap(),
    ];
    for graph in &graphs {
        for _ in 0..300 {
            let n = graph.vertex_count();
            let counts = random_counts(&mut rng, n, 12);
            let root = rng.gen_range(0..n);
            for dominance in [Some(true), Some(false)] {
                let opts = SolverOptions {
                    dominance,
                    ..SolverOptions::default()
                };
                let got = is_solvable(graph, &Configuration::new(counts.clone()), root, opts)
                    .unwrap()
                    .verdict();
                assert_eq!(
                    got,
                    Some(common::brute_solvable(graph, &counts, root)),
                    "{counts:?} @ {root}"
                );
            }
        }
    }
}

#[test]
fn rejects_bad_inputs() {
    let g = WeightedGraph::complete(3);
    assert!(is_solvable(
        &g,
        &Configuration::new(vec![1, 2]),
        0,
        SolverOptions::default()
    )
    .is_err());
    assert!(is_solvable(
        &g,
        &Configuration::new(vec![1, 2, 0]),
        3,
        SolverOptions::default()
    )
    .is_err());
    assert!(is_upward_solvable(&g, &Configuration::new(vec![1, 2, 0]), 10).is_err());
    assert!(solve_path_graph(&g, &Configuration::new(vec![1, 2, 0]), 0).is_err());
}
