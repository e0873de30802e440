//! Zero-sum extraction through upward pebbling on the valuation lattice.
//!
//! Each sequence element becomes a labeled pebble at the vertex of its capped
//! valuations. A firing of coordinate `i` at vertex `v` takes the `p_i` oldest
//! pebbles there, reads their nicknames' `i`-th coordinates divided by
//! `p_i^{v_i}` modulo `p_i`, picks a contiguous block summing to zero and merges
//! it into one pebble at `v + e_i`. The merged nickname then has valuation at
//! least `v_i + 1` in coordinate `i`, so a pebble at the target vertex carries
//! an H-sum subsequence.

use std::collections::VecDeque;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Configuration, GraphError, WeightedGraph};
use crate::group::{
    cross_number, CrossValue, GroupElement, GroupError, GroupSpec, SubgroupVertex, ZSequence,
};
use crate::solver::{upward_plan, UpwardOutcome, DEFAULT_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("need at least {needed} values, got {got}")]
    TooFewValues { needed: usize, got: usize },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PebbleNode {
    Leaf(usize),
    Merge(Vec<LabeledPebble>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledPebble {
    pub vertex: Vec<u32>,
    pub nickname: GroupElement,
    pub cross: CrossValue,
    #[serde(flatten)]
    pub node: PebbleNode,
}

impl LabeledPebble {
    /// Sorted leaf indices.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(p) = stack.pop() {
            match &p.node {
                PebbleNode::Leaf(i) => out.push(*i),
                PebbleNode::Merge(children) => stack.extend(children),
            }
        }
        out.sort_unstable();
        out
    }

    pub fn merges(&self) -> usize {
        match &self.node {
            PebbleNode::Leaf(_) => 0,
            PebbleNode::Merge(children) => 1 + children.iter().map(|c| c.merges()).sum::<usize>(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroSumCertificate {
    pub group: GroupSpec,
    pub target: Vec<u32>,
    pub indices: Vec<usize>,
    pub cross: CrossValue,
    pub tree: LabeledPebble,
}

impl ZeroSumCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Diagnosis {
    #[error("certificate belongs to group {0}")]
    GroupMismatch(String),
    #[error("bad target levels: {0}")]
    Target(String),
    #[error("indices: {0}")]
    Indices(String),
    #[error("subsequence sum {0} is not in the target subgroup")]
    NotHSum(String),
    #[error("claimed cross {claimed} but the subsequence has {actual}")]
    ClaimedCross {
        claimed: CrossValue,
        actual: CrossValue,
    },
    #[error("cross {cross} exceeds the bound {bound}")]
    CrossBound {
        cross: CrossValue,
        bound: CrossValue,
    },
}

/// Checks a certificate against the sequence without consulting its tree.
/// Returns the cross bound `1/|H|` on acceptance.
pub fn verify_certificate(
    group: &GroupSpec,
    seq: &ZSequence,
    cert: &ZeroSumCertificate,
) -> Result<CrossValue, Diagnosis> {
    if &cert.group != group {
        return Err(Diagnosis::GroupMismatch(cert.group.to_string()));
    }
    let h = group
        .subgroup(cert.target.clone())
        .map_err(|e| Diagnosis::Target(e.to_string()))?;
    if cert.indices.is_empty() {
        return Err(Diagnosis::Indices("empty".into()));
    }
    let mut seen = vec![false; seq.len()];
    for &i in &cert.indices {
        if i >= seq.len() {
            return Err(Diagnosis::Indices(format!("{i} out of range")));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Diagnosis::Indices(format!("{i} repeated")));
        }
    }
    let sub = seq.select(&cert.indices);
    let total = group.sum(sub.elements());
    if !group.contains(&h, &total) {
        return Err(Diagnosis::NotHSum(total.to_string()));
    }
    let actual = cross_number(group, &sub).map_err(|e| Diagnosis::Indices(e.to_string()))?;
    if actual != cert.cross {
        return Err(Diagnosis::ClaimedCross {
            claimed: cert.cross,
            actual,
        });
    }
    let bound = CrossValue::new(1, group.subgroup_order(&h) as u128);
    if actual > bound {
        return Err(Diagnosis::CrossBound {
            cross: actual,
            bound,
        });
    }
    Ok(bound)
}

/// Lattice placement: the configuration and one leaf pebble per element, in
/// sequence order.
pub fn place(
    group: &GroupSpec,
    seq: &ZSequence,
) -> Result<(WeightedGraph, Configuration, Vec<LabeledPebble>), EngineError> {
    let lattice = WeightedGraph::lattice(group)?;
    let info = lattice.lattice_info().expect("lattice graph");
    let mut config = Configuration::empty(lattice.vertex_count());
    let mut leaves = Vec::with_capacity(seq.len());
    for (i, g) in seq.elements().iter().enumerate() {
        group.check(g)?;
        let vertex = group.valuations(g);
        config.add(info.index(&vertex), 1);
        leaves.push(LabeledPebble {
            vertex,
            nickname: g.clone(),
            cross: CrossValue::new(1, group.element_order(g)? as u128),
            node: PebbleNode::Leaf(i),
        });
    }
    Ok((lattice, config, leaves))
}

/// First contiguous block of `values` summing to 0 mod `p`, by pigeonhole on
/// prefix sums.
pub fn prefix_zero_subset(values: &[u64], p: u64) -> Result<Range<usize>, EngineError> {
    if (values.len() as u64) < p {
        return Err(EngineError::TooFewValues {
            needed: p as usize,
            got: values.len(),
        });
    }
    let mut first_seen = vec![usize::MAX; p as usize];
    first_seen[0] = 0;
    let mut acc = 0u64;
    for (j, &v) in values.iter().enumerate() {
        acc = (acc + v % p) % p;
        let slot = &mut first_seen[acc as usize];
        if *slot != usize::MAX {
            return Ok(*slot..j + 1);
        }
        *slot = j + 1;
    }
    unreachable!("p + 1 prefix sums over p residues repeat")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtractOutcome {
    /// The certificate passed every check.
    Verified(ZeroSumCertificate),
    /// H-sum is valid but the cross bound is not met.
    CrossExceeded {
        certificate: ZeroSumCertificate,
        diagnosis: Diagnosis,
    },
    /// No upward firing sequence reaches the target.
    NotSolvable,
    BudgetExhausted,
}

impl ExtractOutcome {
    pub fn certificate(&self) -> Option<&ZeroSumCertificate> {
        match self {
            ExtractOutcome::Verified(c) => Some(c),
            ExtractOutcome::CrossExceeded { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn is_verified(&self) -> bool {
        matches!(self, ExtractOutcome::Verified(_))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ExtractOptions {
    /// Expansion budget of the upward search.
    pub budget: u64,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
        }
    }
}

fn distinct_primes(group: &GroupSpec) -> bool {
    group.factors().windows(2).all(|w| w[0].prime != w[1].prime)
}

/// `prod p_i^{levels_i} / |G|`.
fn ledger_bound(group: &GroupSpec, levels: &[u32]) -> CrossValue {
    let num: u128 = group
        .factors()
        .iter()
        .zip(levels)
        .map(|(f, &l)| (f.prime as u128).pow(l))
        .product();
    CrossValue::new(num, group.order() as u128)
}

/// Runs the labeled-pebble reduction toward `target` and verifies the result.
pub fn extract(
    group: &GroupSpec,
    seq: &ZSequence,
    target: &SubgroupVertex,
    options: ExtractOptions,
) -> Result<ExtractOutcome, EngineError> {
    let target = group.subgroup(target.levels.clone())?;
    let (lattice, config, leaves) = place(group, seq)?;
    let info = lattice.lattice_info().expect("lattice graph").clone();
    let plan = match upward_plan(&lattice, &config, &target.levels, options.budget)? {
        UpwardOutcome::Plan(plan) => plan,
        UpwardOutcome::Unsolvable => return Ok(ExtractOutcome::NotSolvable),
        UpwardOutcome::Unknown => return Ok(ExtractOutcome::BudgetExhausted),
    };
    let check_ledger = distinct_primes(group);

    let mut piles: Vec<VecDeque<LabeledPebble>> = vec![VecDeque::new(); lattice.vertex_count()];
    for leaf in leaves {
        piles[info.index(&leaf.vertex)].push_back(leaf);
    }
    let target_idx = info.index(&target.levels);
    for firing in &plan {
        let p = info.primes[firing.coord];
        let level = info.levels(firing.vertex);
        let unit = p.pow(level[firing.coord]);
        let mut up = level.clone();
        up[firing.coord] += 1;
        let up_idx = info.index(&up);
        for _ in 0..firing.times {
            let pile = &mut piles[firing.vertex];
            if (pile.len() as u64) < p {
                return Err(EngineError::Invariant(format!(
                    "vertex {:?} holds {} pebbles, firing needs {p}",
                    level,
                    pile.len()
                )));
            }
            let mut batch: Vec<LabeledPebble> = pile.drain(..p as usize).collect();
            let values: Vec<u64> = batch
                .iter()
                .map(|b| b.nickname.residues()[firing.coord] / unit % p)
                .collect();
            let chosen = prefix_zero_subset(&values, p)?;
            let children: Vec<LabeledPebble> = batch.drain(chosen).collect();
            let nickname = group.sum(children.iter().map(|c| &c.nickname));
            let cross: CrossValue = children.iter().map(|c| c.cross).sum();
            if group
                .valuations(&nickname)
                .iter()
                .zip(&up)
                .any(|(a, b)| a < b)
            {
                return Err(EngineError::Invariant(format!(
                    "nickname {nickname} below vertex {up:?}"
                )));
            }
            if check_ledger && cross > ledger_bound(group, &up) {
                return Err(EngineError::Invariant(format!(
                    "cross {cross} above ledger bound at {up:?}"
                )));
            }
            piles[up_idx].push_back(LabeledPebble {
                vertex: up.clone(),
                nickname,
                cross,
                node: PebbleNode::Merge(children),
            });
        }
    }
    let Some(tree) = piles[target_idx].pop_front() else {
        return Err(EngineError::Invariant("plan left the target empty".into()));
    };
    let certificate = ZeroSumCertificate {
        group: group.clone(),
        target: target.levels.clone(),
        indices: tree.leaves(),
        cross: tree.cross,
        tree,
    };
    match verify_certificate(group, seq, &certificate) {
        Ok(_) => Ok(ExtractOutcome::Verified(certificate)),
        Err(diagnosis @ Diagnosis::CrossBound { .. }) => Ok(ExtractOutcome::CrossExceeded {
            certificate,
            diagnosis,
        }),
        Err(other) => Err(EngineError::Invariant(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{parse_group_spec, parse_sequence};

    fn z45() -> (GroupSpec, ZSequence) {
        let g = parse_group_spec("3^2*5").unwrap();
        let s = ZSequence::from_integers(&g, &[32, -11, 31, 51, 42, -24, 48, 75, -15]).unwrap();
        (g, s)
    }

    #[test]
    fn placement_follows_valuations() {
        let (g, s) = z45();
        let (_, config, leaves) = place(&g, &s).unwrap();
        assert_eq!(leaves[3].vertex, vec![1, 0]);
        assert_eq!(leaves[0].vertex, vec![0, 0]);
        assert_eq!(config.size(), 9);
        let zero = ZSequence::from_integers(&g, &[0]).unwrap();
        assert_eq!(place(&g, &zero).unwrap().2[0].vertex, vec![2, 1]);
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(prefix_zero_subset(&[2, 1, 1], 3).unwrap(), 0..2);
        assert_eq!(prefix_zero_subset(&[0, 4, 4], 3).unwrap(), 0..1);
        assert_eq!(prefix_zero_subset(&[1, 1, 1, 1, 1], 5).unwrap(), 0..5);
        assert_eq!(prefix_zero_subset(&[1, 2, 2], 3).unwrap(), 0..2);
        assert!(prefix_zero_subset(&[1], 3).is_err());
    }

    #[test]
    fn worked_example() {
        let (g, s) = z45();
        let out = extract(&g, &s, &g.trivial_subgroup(), ExtractOptions::default()).unwrap();
        let ExtractOutcome::Verified(cert) = out else {
            panic!("expected verified certificate, got {out:?}");
        };
        assert!(cert.cross <= CrossValue::new(38, 45));
        assert!(s.select(&cert.indices).elements().len() >= 2);
        assert_eq!(verify_certificate(&g, &s, &cert), Ok(CrossValue::one()));
        let back = ZeroSumCertificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.to_json(), cert.to_json());
    }

    #[test]
    fn z5_pair_fails() {
        let g = GroupSpec::cyclic(5).unwrap();
        let s = ZSequence::from_integers(&g, &[1, 4]).unwrap();
        let out = extract(&g, &s, &g.trivial_subgroup(), ExtractOptions::default()).unwrap();
        assert_eq!(out, ExtractOutcome::NotSolvable);
        let empty = ZSequence::default();
        let out = extract(&g, &empty, &g.trivial_subgroup(), ExtractOptions::default()).unwrap();
        assert_eq!(out, ExtractOutcome::NotSolvable);
    }

    fn cert(
        g: &GroupSpec,
        s: &ZSequence,
        target: Vec<u32>,
        indices: Vec<usize>,
    ) -> ZeroSumCertificate {
        let cross = if indices.iter().all(|&i| i < s.len()) {
            cross_number(g, &s.select(&indices)).unwrap()
        } else {
            CrossValue::zero()
        };
        ZeroSumCertificate {
            group: g.clone(),
            target,
            indices: indices.clone(),
            cross,
            tree: LabeledPebble {
                vertex: vec![0, 0],
                nickname: g.zero(),
                cross,
                node: PebbleNode::Merge(Vec::new()),
            },
        }
    }

    #[test]
    fn verification_diagnoses() {
        let (g, s) = z45();
        // 32 and -11 against the vertex (1,0): bound 1/15.
        let c = cert(&g, &s, vec![1, 0], vec![0, 1]);
        assert_eq!(verify_certificate(&g, &s, &c), Ok(CrossValue::new(1, 15)));
        assert_eq!(c.cross, CrossValue::new(2, 45));

        let c = cert(&g, &s, vec![2, 1], vec![0, 0]);
        assert!(matches!(
            verify_certificate(&g, &s, &c),
            Err(Diagnosis::Indices(_))
        ));
        let c = cert(&g, &s, vec![2, 1], vec![0, 9]);
        assert!(matches!(
            verify_certificate(&g, &s, &c),
            Err(Diagnosis::Indices(_))
        ));
        let c = cert(&g, &s, vec![2, 1], vec![0]);
        assert!(matches!(
            verify_certificate(&g, &s, &c),
            Err(Diagnosis::NotHSum(_))
        ));

        let other_set = ZSequence::from_integers(&g, &[75, -15, 51, 48, 32, -11]).unwrap();
        let c = cert(&g, &other_set, vec![2, 1], (0..6).collect());
        assert_eq!(c.cross, CrossValue::new(38, 45));
        assert_eq!(
            verify_certificate(&g, &other_set, &c),
            Ok(CrossValue::one())
        );

        let mut bad = c.clone();
        bad.cross = CrossValue::new(1, 45);
        assert!(matches!(
            verify_certificate(&g, &other_set, &bad),
            Err(Diagnosis::ClaimedCross { .. })
        ));

        // (0) at the whole-group target: H-sum, but cross 1 > 1/45.
        let zero = ZSequence::from_integers(&g, &[0]).unwrap();
        let c = cert(&g, &zero, vec![0, 0], vec![0]);
        assert!(matches!(
            verify_certificate(&g, &zero, &c),
            Err(Diagnosis::CrossBound { .. })
        ));
    }

    #[test]
    fn repeated_primes_are_flagged_not_claimed() {
        // Bottom pebbles of Z_3 x Z_3 have order 3 but are budgeted at 1/9 each.
        let g = parse_group_spec("3*3").unwrap();
        let s = parse_sequence(&g, "1,1\n1,0\n2,1\n2,1\n0,2\n1,1\n2,1\n2,1\n1,2\n").unwrap();
        let out = extract(&g, &s, &g.trivial_subgroup(), ExtractOptions::default()).unwrap();
        let ExtractOutcome::CrossExceeded {
            certificate,
            diagnosis,
        } = out
        else {
            panic!("expected a flagged certificate, got {out:?}");
        };
        assert!(certificate.cross > CrossValue::one());
        assert!(matches!(diagnosis, Diagnosis::CrossBound { .. }));
        let sub = s.select(&certificate.indices);
        assert!(crate::group::is_zero_sum(&g, &sub).unwrap());
    }
}
