//! Exact minimum-cross H-sum oracle.
//!
//! Sums are tracked in the quotient `G/H = prod Z_{p_i^{h_i}}`, so a subsequence
//! is an H-sum exactly when its image there is zero. Costs are element orders
//! scaled by the group exponent `E`: `cost(g) = E / |g|` is an integer and the
//! cross number of a subset is `(sum of costs) / E`.

use thiserror::Error;

use crate::group::{CrossValue, GroupError, GroupSpec, SubgroupVertex, ZSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("oracle state space {states} exceeds the limit {limit}")]
    BoundExceeded { states: u64, limit: u64 },
}

#[derive(Debug, Clone, Copy)]
pub struct OracleLimits {
    /// Largest admissible quotient `|G/H|` (DP states per sequence position).
    pub max_states: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_states: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleWitness {
    /// Sorted indices into the input sequence.
    pub indices: Vec<usize>,
    pub cross: CrossValue,
}

const INF: u64 = u64::MAX;

struct Quotient {
    radices: Vec<u64>,
    size: usize,
}

impl Quotient {
    fn new(group: &GroupSpec, h: &SubgroupVertex) -> Self {
        let radices: Vec<u64> = group
            .factors()
            .iter()
            .zip(&h.levels)
            .map(|(f, &l)| f.prime.pow(l))
            .collect();
        let size = radices.iter().product::<u64>() as usize;
        Self { radices, size }
    }

    fn image(&self, residues: &[u64]) -> Vec<u64> {
        residues
            .iter()
            .zip(&self.radices)
            .map(|(&r, &m)| r % m)
            .collect()
    }

    fn encode(&self, digits: &[u64]) -> usize {
        digits
            .iter()
            .zip(&self.radices)
            .fold(0u64, |acc, (&d, &m)| acc * m + d) as usize
    }

    /// Precomputes `s -> s - g` for one element image.
    fn sub_table(&self, g: &[u64]) -> Vec<u32> {
        let mut digits = vec![0u64; self.radices.len()];
        let mut table = Vec::with_capacity(self.size);
        for _ in 0..self.size {
            let shifted: Vec<u64> = digits
                .iter()
                .zip(g)
                .zip(&self.radices)
                .map(|((&d, &x), &m)| (d + m - x % m) % m)
                .collect();
            table.push(self.encode(&shifted) as u32);
            for (d, &m) in digits.iter_mut().zip(&self.radices).rev() {
                *d += 1;
                if *d < m {
                    break;
                }
                *d = 0;
            }
        }
        table
    }
}

/// Among all nonempty subsequences whose sum lies in `h`, returns one of least
/// cross number; ties go to the lexicographically smallest sorted index list.
pub fn min_cross_zero_sum(
    group: &GroupSpec,
    seq: &ZSequence,
    h: &SubgroupVertex,
    limits: OracleLimits,
) -> Result<Option<OracleWitness>, OracleError> {
    for g in seq.elements() {
        group.check(g)?;
    }
    let h = group.subgroup(h.levels.clone())?;
    let quotient = Quotient::new(group, &h);
    if quotient.size as u64 > limits.max_states {
        return Err(OracleError::BoundExceeded {
            states: quotient.size as u64,
            limit: limits.max_states,
        });
    }
    let t = seq.len();
    if t == 0 {
        return Ok(None);
    }
    let exponent = group.exponent();
    let costs: Vec<u64> = seq
        .elements()
        .iter()
        .map(|g| group.element_order(g).map(|o| exponent / o))
        .collect::<Result<_, _>>()?;
    let images: Vec<Vec<u64>> = seq
        .elements()
        .iter()
        .map(|g| quotient.image(g.residues()))
        .collect();
    let subs: Vec<Vec<u32>> = images.iter().map(|g| quotient.sub_table(g)).collect();

    // best[i][s]: least cost of a (possibly empty) subset of positions i.. summing to s.
    let q = quotient.size;
    let mut best = vec![INF; (t + 1) * q];
    best[t * q] = 0;
    for i in (0..t).rev() {
        let (head, tail) = best.split_at_mut((i + 1) * q);
        let row = &mut head[i * q..];
        let next = &tail[..q];
        for s in 0..q {
            let skip = next[s];
            let prev = next[subs[i][s] as usize];
            let take = if prev == INF { INF } else { prev + costs[i] };
            row[s] = skip.min(take);
        }
    }
    let take_cost = |i: usize, need: usize| -> u64 {
        let rest = best[(i + 1) * q + subs[i][need] as usize];
        if rest == INF {
            INF
        } else {
            rest + costs[i]
        }
    };

    let optimum = (0..t).map(|i| take_cost(i, 0)).min().unwrap_or(INF);
    if optimum == INF {
        return Ok(None);
    }

    let mut indices = Vec::new();
    let mut need = 0usize;
    let mut budget = optimum;
    let mut start = 0;
    loop {
        let i = (start..t)
            .find(|&i| take_cost(i, need) == budget)
            .expect("optimal continuation exists");
        indices.push(i);
        budget -= costs[i];
        need = subs[i][need] as usize;
        if budget == 0 {
            debug_assert_eq!(need, 0);
            break;
        }
        start = i + 1;
    }
    Ok(Some(OracleWitness {
        indices,
        cross: CrossValue::new(optimum as u128, exponent as u128),
    }))
}

/// True iff `seq` has a nonempty zero-sum subsequence of cross number at most 1.
pub fn is_good(group: &GroupSpec, seq: &ZSequence) -> Result<bool, OracleError> {
    let witness = min_cross_zero_sum(
        group,
        seq,
        &group.trivial_subgroup(),
        OracleLimits::default(),
    )?;
    Ok(witness.is_some_and(|w| w.cross <= CrossValue::one()))
}

/// True iff `seq` has a nonempty H-sum subsequence of cross number at most `1/|H|`.
pub fn has_small_h_sum(
    group: &GroupSpec,
    seq: &ZSequence,
    h: &SubgroupVertex,
) -> Result<bool, OracleError> {
    let bound = CrossValue::new(1, group.subgroup_order(h) as u128);
    let witness = min_cross_zero_sum(group, seq, h, OracleLimits::default())?;
    Ok(witness.is_some_and(|w| w.cross <= bound))
}
