//! Deterministic inputs shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zerosum_core::lab::sample_sequence;
use zerosum_core::{parse_group_spec, Configuration, GroupSpec, WeightedGraph, ZSequence};

pub const SEED: u64 = 0xbe9c;

pub fn group(spec: &str) -> GroupSpec {
    parse_group_spec(spec).expect("valid group spec")
}

/// `count` random sequences of length `len`.
pub fn sequences(group: &GroupSpec, len: usize, count: usize) -> Vec<ZSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..count)
        .map(|_| sample_sequence(group, len, &mut rng))
        .collect()
}

pub fn worked_example() -> (GroupSpec, ZSequence) {
    let g = group("3^2*5");
    let s = ZSequence::from_integers(&g, &[32, -11, 31, 51, 42, -24, 48, 75, -15]).unwrap();
    (g, s)
}

/// Unsolvable instances, so the exact solver has to refute every branch.
pub fn unsolvable_fixtures() -> Vec<(&'static str, WeightedGraph, Configuration, usize)> {
    vec![
        (
            "cube3",
            WeightedGraph::cube(3),
            Configuration::new(vec![0, 0, 0, 1, 0, 1, 3, 1]),
            0,
        ),
        (
            "complete6",
            WeightedGraph::complete(6),
            Configuration::new(vec![0, 1, 1, 1, 1, 1]),
            0,
        ),
        (
            "path-interior",
            WeightedGraph::path(&[2, 3, 2, 3, 2]).unwrap(),
            Configuration::new(vec![1, 2, 0, 1, 2, 1]),
            2,
        ),
    ]
}
