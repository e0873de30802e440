//! Davenport-type quantities: the invariant-factor formula `dav(G)` and an
//! exhaustive search for the Davenport constant `D(G)` of small groups.

use std::collections::HashMap;

use thiserror::Error;

use crate::group::{GroupElement, GroupSpec, ZSequence};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DavenportError {
    #[error("group order {order} exceeds the search limit {limit}")]
    OrderBound { order: u64, limit: u64 },
}

/// Invariant factors `n_1 | n_2 | ... | n_r`, ascending.
///
/// The j-th largest invariant factor is the product, over distinct primes, of
/// that prime's j-th largest prime-power factor.
pub fn invariant_factors(group: &GroupSpec) -> Vec<u64> {
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for f in group.factors() {
        match per_prime.iter_mut().find(|(p, _)| *p == f.prime) {
            Some((_, exps)) => exps.push(f.exponent),
            None => per_prime.push((f.prime, vec![f.exponent])),
        }
    }
    let rank = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut out = vec![1u64; rank];
    for (p, exps) in &mut per_prime {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (j, &e) in exps.iter().enumerate() {
            out[j] *= p.pow(e);
        }
    }
    out.reverse();
    out
}

/// `dav(G) = (sum n_i) - r + 1` over the invariant factors.
pub fn dav(group: &GroupSpec) -> u64 {
    let inv = invariant_factors(group);
    inv.iter().sum::<u64>() - inv.len() as u64 + 1
}

/// The zero-sum-free sequence of `n_i - 1` copies of each invariant-factor
/// generator; its length is `dav(G) - 1`.
pub fn canonical_zero_sum_free(group: &GroupSpec) -> ZSequence {
    // Factors are sorted by prime then exponent descending, so the j-th factor
    // of each prime belongs to the j-th largest invariant factor.
    let mut slot = vec![0usize; group.rank()];
    for i in 1..group.rank() {
        if group.factors()[i].prime == group.factors()[i - 1].prime {
            slot[i] = slot[i - 1] + 1;
        }
    }
    let rank = slot.iter().max().map_or(0, |m| m + 1);
    let mut elements = Vec::new();
    for j in 0..rank {
        let coords: Vec<i64> = slot.iter().map(|&s| i64::from(s == j)).collect();
        let generator = group.element(&coords).expect("rank matches");
        let order = group.element_order(&generator).expect("rank matches");
        elements.extend(std::iter::repeat_n(generator, order as usize - 1));
    }
    ZSequence::new(group, elements).expect("elements belong to group")
}

#[derive(Debug, Clone, Copy)]
pub struct DavenportOptions {
    /// Largest group order searched; at most 128 (one bit per element).
    pub max_order: u64,
    /// Start the branch-and-bound from the canonical construction's length.
    pub seed_with_construction: bool,
}

impl Default for DavenportOptions {
    fn default() -> Self {
        Self {
            max_order: 36,
            seed_with_construction: false,
        }
    }
}

struct Search {
    n: usize,
    /// add[a][b] as element indices.
    add: Vec<Vec<u8>>,
    candidates: Vec<u8>,
    best: usize,
    max_len: usize,
    hit_cap: bool,
    /// Longest prefix length already explored for a (reach, last) state.
    seen: HashMap<(u128, u8), usize>,
}

impl Search {
    fn shift(&self, reach: u128, by: u8) -> u128 {
        let mut out = 0u128;
        let mut bits = reach;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out |= 1u128 << self.add[b][by as usize];
        }
        out
    }

    /// `reach` is the set of nonempty subset sums of the current sequence.
    fn dfs(&mut self, reach: u128, len: usize, last: usize) {
        if self.hit_cap {
            return;
        }
        if len > self.best {
            self.best = len;
            if self.best >= self.max_len {
                self.hit_cap = true;
                return;
            }
        }
        // Each extension adds at least one new nonzero subset sum.
        let room = self.n - 1 - reach.count_ones() as usize;
        if len + room <= self.best {
            return;
        }
        match self.seen.get(&(reach, last as u8)) {
            Some(&seen_len) if seen_len >= len => return,
            _ => {
                self.seen.insert((reach, last as u8), len);
            }
        }
        for ci in (last..self.candidates.len()).rev() {
            let c = self.candidates[ci];
            let next = reach | self.shift(reach, c) | (1u128 << c);
            if next & 1 == 1 {
                continue;
            }
            self.dfs(next, len + 1, ci);
            if self.hit_cap {
                return;
            }
        }
    }
}

/// Davenport constant `D(G)`: one more than the longest zero-sum-free sequence.
///
/// Searches multisets of nonzero elements in a canonical non-decreasing order
/// of `(order, residues)`. Returns `None` when a zero-sum-free sequence of
/// length `max_len` exists, i.e. `D(G) > max_len`.
pub fn davenport_search(
    group: &GroupSpec,
    max_len: usize,
    options: DavenportOptions,
) -> Result<Option<u64>, DavenportError> {
    let limit = options.max_order.min(128);
    if group.order() > limit {
        return Err(DavenportError::OrderBound {
            order: group.order(),
            limit,
        });
    }
    let n = group.order() as usize;
    let elements: Vec<GroupElement> = group.elements().collect();
    let add = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| group.index_of(&group.add(a, b)) as u8)
                .collect()
        })
        .collect();
    let mut keyed: Vec<(u64, &GroupElement, u8)> = elements
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, g)| (group.element_order(g).expect("member"), g, i as u8))
        .collect();
    keyed.sort();
    let candidates = keyed.into_iter().map(|(_, _, i)| i).collect();
    let best = if options.seed_with_construction {
        (dav(group) - 1) as usize
    } else {
        0
    };
    if best >= max_len {
        return Ok(None);
    }
    let mut search = Search {
        n,
        add,
        candidates,
        best,
        max_len,
        hit_cap: false,
        seen: HashMap::new(),
    };
    search.dfs(0, 0, 0);
    if search.hit_cap {
        Ok(None)
    } else {
        Ok(Some(search.best as u64 + 1))
    }
}
