//! Random models and their samplers.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::Configuration;
use crate::group::{GroupSpec, ZSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RandomModel {
    /// Independent uniform elements of the group.
    Sequence,
    /// Uniform size-`t` multisets of vertices.
    Configuration,
}

impl fmt::Display for RandomModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RandomModel::Sequence => "sequence",
            RandomModel::Configuration => "configuration",
        })
    }
}

impl FromStr for RandomModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sequence" => Ok(RandomModel::Sequence),
            "configuration" => Ok(RandomModel::Configuration),
            other => Err(format!("unknown model '{other}'")),
        }
    }
}

/// The generator for one trial. Streams depend only on `(seed, t, trial)`, so
/// results do not depend on how trials are spread over threads.
pub fn trial_rng(seed: u64, t: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ t.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(trial);
    rng
}

pub fn sample_sequence<R: Rng + ?Sized>(group: &GroupSpec, t: usize, rng: &mut R) -> ZSequence {
    let elements = (0..t)
        .map(|_| group.element_at(rng.gen_range(0..group.order())))
        .collect();
    ZSequence::new(group, elements).expect("sampled from the group")
}

/// Uniform multiset of size `t` on `n >= 1` vertices: a uniform `t`-subset of
/// `n + t - 1` slots, decoded as stars and bars.
pub fn sample_configuration<R: Rng + ?Sized>(n: usize, t: usize, rng: &mut R) -> Configuration {
    assert!(n >= 1, "configuration model needs at least one vertex");
    let mut counts = vec![0u64; n];
    if t == 0 {
        return Configuration::new(counts);
    }
    let mut stars = index::sample(rng, n + t - 1, t).into_vec();
    stars.sort_unstable();
    for (j, x) in stars.into_iter().enumerate() {
        counts[x - j] += 1;
    }
    Configuration::new(counts)
}

/// Exact probability that a uniform element lands on each lattice vertex,
/// indexed like the lattice graph.
pub fn vertex_placement_distribution(group: &GroupSpec) -> Vec<Ratio<u128>> {
    let per_coord: Vec<Vec<u128>> = group
        .factors()
        .iter()
        .map(|f| {
            let p = f.prime as u128;
            let k = f.exponent;
            (0..=k)
                .map(|j| {
                    if j == k {
                        1
                    } else {
                        p.pow(k - j) - p.pow(k - j - 1)
                    }
                })
                .collect()
        })
        .collect();
    let order = group.order() as u128;
    let mut out = vec![Ratio::from_integer(1u128)];
    for counts in &per_coord {
        out = out
            .iter()
            .flat_map(|acc| counts.iter().map(move |&c| acc * c))
            .collect();
    }
    out.into_iter().map(|c| c / order).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::group::parse_group_spec;
    use num_traits::{One, Zero};
    use statrs::distribution::{ChiSquared, ContinuousCDF};

    #[test]
    fn configuration_sampler_is_uniform() {
        // Six multisets of size 2 on 3 vertices.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut freq = std::collections::HashMap::new();
        let draws = 100_000;
        for _ in 0..draws {
            let c = sample_configuration(3, 2, &mut rng);
            assert_eq!(c.size(), 2);
            *freq.entry(c.counts().to_vec()).or_insert(0u64) += 1;
        }
        assert_eq!(freq.len(), 6);
        let expected = draws as f64 / 6.0;
        let stat: f64 = freq
            .values()
            .map(|&o| (o as f64 - expected).powi(2) / expected)
            .sum();
        let p = 1.0 - ChiSquared::new(5.0).unwrap().cdf(stat);
        assert!(p > 0.001, "chi-square p-value {p}");
    }

    #[test]
    fn empty_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(sample_configuration(4, 0, &mut rng).size(), 0);
        let g = GroupSpec::cyclic(5).unwrap();
        assert!(sample_sequence(&g, 0, &mut rng).is_empty());
    }

    #[test]
    fn sequence_sampler_is_uniform_per_coordinate() {
        let g = parse_group_spec("2^2*3").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = sample_sequence(&g, 60_000, &mut rng);
        for (coord, &m) in g.moduli().iter().enumerate() {
            let mut freq = vec![0u64; m as usize];
            for e in s.elements() {
                freq[e.residues()[coord] as usize] += 1;
            }
            let expected = s.len() as f64 / m as f64;
            let stat: f64 = freq
                .iter()
                .map(|&o| (o as f64 - expected).powi(2) / expected)
                .sum();
            let p = 1.0 - ChiSquared::new((m - 1) as f64).unwrap().cdf(stat);
            assert!(p > 0.001, "coordinate {coord}: p-value {p}");
        }
    }

    #[test]
    fn placement_distribution_values() {
        let z9 = GroupSpec::cyclic(9).unwrap();
        assert_eq!(
            vertex_placement_distribution(&z9),
            vec![Ratio::new(6, 9), Ratio::new(2, 9), Ratio::new(1, 9)]
        );
        let z7 = GroupSpec::cyclic(7).unwrap();
        assert_eq!(
            vertex_placement_distribution(&z7),
            vec![Ratio::new(6, 7), Ratio::new(1, 7)]
        );
        let z45 = GroupSpec::cyclic(45).unwrap();
        let dist = vertex_placement_distribution(&z45);
        assert_eq!(dist.len(), 6);
        assert!(dist.iter().fold(Ratio::zero(), |a, b| a + b).is_one());
        // Brute force: count elements by valuation vector.
        let lattice = WeightedGraph::lattice(&z45).unwrap();
        let info = lattice.lattice_info().unwrap();
        let mut counts = [0u128; 6];
        for g in z45.elements() {
            counts[info.index(&z45.valuations(&g))] += 1;
        }
        for (c, d) in counts.iter().zip(&dist) {
            assert_eq!(Ratio::new(*c, 45), *d);
        }
    }

    #[test]
    fn placement_frequencies_match_within_three_sigma() {
        let z45 = GroupSpec::cyclic(45).unwrap();
        let lattice = WeightedGraph::lattice(&z45).unwrap();
        let info = lattice.lattice_info().unwrap();
        let dist = vertex_placement_distribution(&z45);
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let t = 10_000;
        let s = sample_sequence(&z45, t, &mut rng);
        let mut counts = [0f64; 6];
        for g in s.elements() {
            counts[info.index(&z45.valuations(g))] += 1.0;
        }
        for (c, d) in counts.iter().zip(&dist) {
            let p = *d.numer() as f64 / *d.denom() as f64;
            let sigma = (t as f64 * p * (1.0 - p)).sqrt();
            assert!((c - t as f64 * p).abs() <= 3.0 * sigma, "{c} vs {p}");
        }
    }

    #[test]
    fn streams_are_independent_of_order() {
        let a: u64 = trial_rng(5, 3, 17).gen();
        let _ = trial_rng(5, 3, 16).gen::<u64>();
        let b: u64 = trial_rng(5, 3, 17).gen();
        assert_eq!(a, b);
        assert_ne!(a, trial_rng(5, 4, 17).gen::<u64>());
        assert_ne!(a, trial_rng(6, 3, 17).gen::<u64>());
    }
}
