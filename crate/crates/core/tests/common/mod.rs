//! Independent reference implementations shared by the integration tests.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use num_rational::Ratio;
use zerosum_core::{GroupElement, GroupSpec, WeightedGraph, ZSequence};

/// Order by repeated addition.
pub fn order_by_addition(group: &GroupSpec, g: &GroupElement) -> u64 {
    let mut acc = g.clone();
    let mut m = 1;
    while !acc.is_zero() {
        acc = group.add(&acc, g);
        m += 1;
    }
    m
}

/// Exhaustive minimum-cross H-sum search in lexicographic order of sorted
/// index lists; returns the first subset of least cross number.
pub fn brute_min_cross(
    group: &GroupSpec,
    seq: &ZSequence,
    levels: &[u32],
) -> Option<(Vec<usize>, Ratio<u128>)> {
    let t = seq.len();
    let moduli: Vec<u64> = group
        .factors()
        .iter()
        .zip(levels)
        .map(|(f, &l)| f.prime.pow(l))
        .collect();
    let inv: Vec<Ratio<u128>> = seq
        .elements()
        .iter()
        .map(|g| Ratio::new(1, order_by_addition(group, g) as u128))
        .collect();
    let mut best: Option<(Vec<usize>, Ratio<u128>)> = None;
    for mask in 1u32..(1u32 << t) {
        let idx: Vec<usize> = (0..t).filter(|&i| mask >> i & 1 == 1).collect();
        let in_h = (0..moduli.len()).all(|c| {
            idx.iter()
                .map(|&i| seq.elements()[i].residues()[c])
                .sum::<u64>()
                % moduli[c]
                == 0
        });
        if !in_h {
            continue;
        }
        let cross: Ratio<u128> = idx.iter().map(|&i| inv[i]).sum();
        let better = match &best {
            None => true,
            Some((bi, bc)) => cross < *bc || (cross == *bc && idx < *bi),
        };
        if better {
            best = Some((idx, cross));
        }
    }
    best
}

/// Breadth-first search over every reachable configuration, no pruning.
pub fn brute_solvable(graph: &WeightedGraph, counts: &[u64], root: usize) -> bool {
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut queue = VecDeque::from([counts.to_vec()]);
    seen.insert(counts.to_vec());
    while let Some(c) = queue.pop_front() {
        if c[root] >= 1 {
            return true;
        }
        for (u, v, w) in graph.edges() {
            for (a, b) in [(u, v), (v, u)] {
                if c[a] >= w {
                    let mut next = c.clone();
                    next[a] -= w;
                    next[b] += 1;
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    false
}

/// Every vector of `n` nonnegative integers summing to `total`.
pub fn compositions(n: usize, total: u64) -> Vec<Vec<u64>> {
    fn go(n: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for c in 0..=left {
            cur.push(c);
            go(n, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    go(n, total, &mut Vec::new(), &mut out);
    out
}

/// Every finite abelian group of order `2..=max` as a spec string.
pub fn groups_up_to(max: u64) -> Vec<String> {
    fn partitions(e: u32, cap: u32) -> Vec<Vec<u32>> {
        if e == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in (1..=e.min(cap)).rev() {
            for mut rest in partitions(e - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut out = Vec::new();
    for n in 2..=max {
        let mut per_prime: Vec<Vec<String>> = Vec::new();
        let mut m = n;
        let mut p = 2;
        while m > 1 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e > 0 {
                per_prime.push(
                    partitions(e, e)
                        .into_iter()
                        .map(|parts| {
                            parts
                                .iter()
                                .map(|k| format!("{p}^{k}"))
                                .collect::<Vec<_>>()
                                .join("*")
                        })
                        .collect(),
                );
            }
            p += 1;
        }
        let mut combos = vec![String::new()];
        for options in per_prime {
            combos = combos
                .iter()
                .flat_map(|c| {
                    options.iter().map(move |o| {
                        if c.is_empty() {
                            o.clone()
                        } else {
                            format!("{c}*{o}")
                        }
                    })
                })
                .collect();
        }
        out.extend(combos);
    }
    out
}

/// True iff no nonempty subsequence sums to zero, by subset-sum closure.
pub fn zero_sum_free(group: &GroupSpec, seq: &ZSequence) -> bool {
    let mut reach: HashSet<GroupElement> = HashSet::new();
    for g in seq.elements() {
        let mut next = reach.clone();
        next.insert(g.clone());
        for r in &reach {
            next.insert(group.add(r, g));
        }
        if next.iter().any(|x| x.is_zero()) {
            return false;
        }
        reach = next;
    }
    true
}
