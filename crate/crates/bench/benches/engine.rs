use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use zerosum_bench::*;
use zerosum_core::lab::{estimate_probability, EstimateOptions, Event, Root};
use zerosum_core::*;

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    for (spec, len) in [("Z45", 45), ("3*3*5", 45), ("2^3*3^2", 14)] {
        let g = zerosum_bench::group(spec);
        let seqs = sequences(&g, len, 16);
        group.bench_with_input(BenchmarkId::new("min_cross", spec), &seqs, |b, seqs| {
            b.iter(|| {
                for s in seqs {
                    black_box(
                        min_cross_zero_sum(&g, s, &g.trivial_subgroup(), OracleLimits::default())
                            .unwrap(),
                    );
                }
            })
        });
    }
    group.finish();
}

fn extract_bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("extract");
    let (g, s) = worked_example();
    group.bench_function("worked_example", |b| {
        b.iter(|| {
            extract(
                &g,
                black_box(&s),
                &g.trivial_subgroup(),
                ExtractOptions::default(),
            )
            .unwrap()
        })
    });
    for spec in ["Z64", "3*3*5", "Z210"] {
        let g = zerosum_bench::group(spec);
        let seqs = sequences(&g, g.order() as usize, 8);
        group.bench_with_input(BenchmarkId::new("full_length", spec), &seqs, |b, seqs| {
            b.iter(|| {
                for s in seqs {
                    black_box(
                        extract(&g, s, &g.trivial_subgroup(), ExtractOptions::default()).unwrap(),
                    );
                }
            })
        });
    }
    group.finish();
}

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solver");
    for (name, graph, config, root) in unsolvable_fixtures() {
        group.bench_function(BenchmarkId::new("exact", name), |b| {
            b.iter(|| {
                is_solvable(&graph, black_box(&config), root, SolverOptions::default()).unwrap()
            })
        });
    }
    let path = WeightedGraph::path(&[2, 3, 2, 3, 2]).unwrap();
    let config = Configuration::new(vec![1, 2, 0, 1, 2, 1]);
    group.bench_function("path_sweep", |b| {
        b.iter(|| solve_path_graph(&path, black_box(&config), 2).unwrap())
    });
    let lattice = WeightedGraph::lattice(&zerosum_bench::group("2^3*3^2*5")).unwrap();
    let mut counts = vec![0u64; lattice.vertex_count()];
    counts[0] = 360;
    let config = Configuration::new(counts);
    group.bench_function("upward_360", |b| {
        b.iter(|| is_upward_solvable(&lattice, black_box(&config), 1_000_000).unwrap())
    });
    group.finish();
}

fn davenport(c: &mut Criterion) {
    let mut group = c.benchmark_group("davenport");
    group.sample_size(10);
    for spec in ["Z12", "2*2^2", "3*3", "2*2*2*3"] {
        let g = zerosum_bench::group(spec);
        group.bench_function(spec, |b| {
            b.iter(|| davenport_search(&g, 64, DavenportOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn lab(c: &mut Criterion) {
    let mut group = c.benchmark_group("lab");
    group.sample_size(10);
    let event = Event::Solvable {
        graph: WeightedGraph::complete(10),
        root: Root::All,
        group: None,
    };
    group.bench_function("complete10_t5_1000", |b| {
        b.iter(|| {
            estimate_probability(
                &event,
                RandomModel::Configuration,
                5,
                1000,
                SEED,
                EstimateOptions::default(),
            )
            .unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, oracle, extract_bench, solver, davenport, lab);
criterion_main!(benches);
