//! Exact event probabilities: the complete-graph birthday formula and brute
//! enumeration of small sample spaces.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

use crate::graph::Configuration;
use crate::group::ZSequence;

use super::event::{Event, Sample};
use super::sample::RandomModel;
use super::LabError;

/// `1 - C(n, t) / C(n + t - 1, t)`, evaluated as written.
pub fn birthday_exact(n: u64, t: u64) -> BigRational {
    if t == 0 {
        return BigRational::from_integer(0.into());
    }
    let injective = binomial(BigInt::from(n), BigInt::from(t));
    let all = binomial(BigInt::from(n + t - 1), BigInt::from(t));
    BigRational::from_integer(1.into()) - BigRational::new(injective, all)
}

#[derive(Debug, Clone, Copy)]
pub struct ExactLimits {
    pub max_outcomes: u128,
    pub budget: u64,
}

impl Default for ExactLimits {
    fn default() -> Self {
        Self {
            max_outcomes: 1_000_000,
            budget: crate::solver::DEFAULT_BUDGET,
        }
    }
}

fn count_outcomes(event: &Event, model: RandomModel, t: usize) -> u128 {
    match (event, model) {
        (Event::Solvable { graph, .. }, RandomModel::Configuration) => {
            let n = graph.vertex_count() as u128;
            if t == 0 {
                return 1;
            }
            // C(n + t - 1, t), saturating.
            let mut acc: u128 = 1;
            for i in 0..t as u128 {
                acc = match acc.checked_mul(n + i) {
                    Some(x) => x / (i + 1),
                    None => return u128::MAX,
                };
            }
            acc
        }
        (Event::Solvable { group: Some(g), .. }, RandomModel::Sequence)
        | (Event::Good { group: g }, _)
        | (Event::ExtractSuccess { group: g, .. }, _) => (g.order() as u128)
            .checked_pow(t as u32)
            .unwrap_or(u128::MAX),
        _ => u128::MAX,
    }
}

/// Exact probability by enumerating every outcome of the model, each weighted
/// by its probability (sequences and multisets are both uniform).
pub fn exact_probability(
    event: &Event,
    model: RandomModel,
    t: usize,
    limits: ExactLimits,
) -> Result<BigRational, LabError> {
    event.check_model(model)?;
    let outcomes = count_outcomes(event, model, t);
    if outcomes > limits.max_outcomes {
        return Err(LabError::EnumerationLimit {
            outcomes,
            limit: limits.max_outcomes,
        });
    }
    let mut hits: u64 = 0;
    let mut total: u64 = 0;
    let mut visit = |sample: Sample| -> Result<(), LabError> {
        total += 1;
        match event.decide(&sample, limits.budget)? {
            Some(true) => hits += 1,
            Some(false) => {}
            None => {
                return Err(LabError::Tainted {
                    unknowns: 1,
                    trials: total,
                })
            }
        }
        Ok(())
    };
    match (event, model) {
        (Event::Solvable { graph, .. }, RandomModel::Configuration) => {
            let n = graph.vertex_count();
            // Non-decreasing vertex tuples of length t.
            let mut tuple = vec![0usize; t];
            loop {
                let mut counts = vec![0u64; n];
                for &v in &tuple {
                    counts[v] += 1;
                }
                visit(Sample::Configuration(Configuration::new(counts)))?;
                let Some(i) = (0..t).rev().find(|&i| tuple[i] + 1 < n) else {
                    break;
                };
                let next = tuple[i] + 1;
                for x in &mut tuple[i..] {
                    *x = next;
                }
            }
        }
        (Event::Solvable { group: Some(g), .. }, RandomModel::Sequence)
        | (Event::Good { group: g }, _)
        | (Event::ExtractSuccess { group: g, .. }, _) => {
            let order = g.order();
            let mut digits = vec![0u64; t];
            loop {
                let elements = digits.iter().map(|&d| g.element_at(d)).collect();
                visit(Sample::Sequence(ZSequence::new(g, elements)?))?;
                let Some(i) = (0..t).rev().find(|&i| digits[i] + 1 < order) else {
                    break;
                };
                digits[i] += 1;
                for d in &mut digits[i + 1..] {
                    *d = 0;
                }
            }
        }
        _ => unreachable!("rejected by check_model"),
    }
    Ok(BigRational::new(BigInt::from(hits), BigInt::from(total)))
}
