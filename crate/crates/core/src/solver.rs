//! Solvability deciders for pebble configurations.
//!
//! - [`is_solvable`]: exact depth-first search over configurations, with
//!   memoization, a potential-function prune and an explicit state budget.
//! - [`solve_path_greedy`]: the carry sweep, exact on paths rooted at an end.
//! - [`potential_bound`]: `sum_v C(v) / D(v)` with `D(v)` the least product of
//!   edge costs on a `v`-root path. It never increases under a move, so a value
//!   below 1 certifies unsolvability.
//! - [`upward_plan`] / [`is_upward_solvable`]: lattice pebbling restricted to
//!   moves that raise one coordinate.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::graph::{Configuration, GraphError, GraphKind, LatticeInfo, Move, WeightedGraph};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Outcome of an exact solvability query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum SolveCertificate {
    /// Replaying `moves` puts a pebble on the root.
    Solvable { moves: Vec<Move> },
    /// The search space was exhausted after `visited` expansions.
    Unsolvable { visited: u64 },
    /// The budget ran out before a verdict.
    Unknown { visited: u64 },
}

impl SolveCertificate {
    pub fn verdict(&self) -> Option<bool> {
        match self {
            SolveCertificate::Solvable { .. } => Some(true),
            SolveCertificate::Unsolvable { .. } => Some(false),
            SolveCertificate::Unknown { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// Maximum number of expanded configurations.
    pub budget: u64,
    /// Skip configurations dominated by a known-unsolvable one. `None` enables
    /// it for lattice graphs only.
    pub dominance: Option<bool>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            dominance: None,
        }
    }
}

/// Least product of edge costs over `v`-`root` paths, saturating at `u128::MAX`;
/// `None` for vertices that cannot reach the root.
pub fn root_distances(graph: &WeightedGraph, root: usize) -> Vec<Option<u128>> {
    let n = graph.vertex_count();
    let mut dist: Vec<Option<u128>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    dist[root] = Some(1);
    heap.push(Reverse((1u128, root)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist[u].is_some_and(|best| best < d) {
            continue;
        }
        for &(v, w) in graph.neighbors(u) {
            let nd = d.saturating_mul(w as u128);
            if dist[v].is_none_or(|cur| nd < cur) {
                dist[v] = Some(nd);
                heap.push(Reverse((nd, v)));
            }
        }
    }
    dist
}

/// Exact value of `sum_v C(v) / D(v)`.
pub fn potential_bound(
    graph: &WeightedGraph,
    config: &Configuration,
    root: usize,
) -> Result<BigRational, GraphError> {
    config.check(graph)?;
    graph.check_vertex(root)?;
    let dist = root_distances(graph, root);
    let mut total = BigRational::from_integer(BigInt::from(0));
    for (v, &c) in config.counts().iter().enumerate() {
        if let (Some(d), true) = (dist[v], c > 0) {
            total += BigRational::new(BigInt::from(c), BigInt::from(d));
        }
    }
    Ok(total)
}

/// Integer form of the potential test: `sum C(v) * scale / D(v) >= scale`.
struct Potential {
    weights: Vec<u128>,
    scale: u128,
    /// Float fallback when the common denominator overflows.
    float_weights: Option<Vec<f64>>,
}

impl Potential {
    fn new(graph: &WeightedGraph, root: usize) -> Self {
        let dist = root_distances(graph, root);
        let mut scale: Option<u128> = Some(1);
        for d in dist.iter().flatten() {
            scale = scale.and_then(|s| {
                let g = gcd128(s, *d);
                (s / g).checked_mul(*d)
            });
        }
        match scale {
            Some(scale) if dist.iter().flatten().all(|&d| d != u128::MAX) => Self {
                weights: dist.iter().map(|d| d.map_or(0, |d| scale / d)).collect(),
                scale,
                float_weights: None,
            },
            _ => Self {
                weights: Vec::new(),
                scale: 0,
                float_weights: Some(
                    dist.iter()
                        .map(|d| d.map_or(0.0, |d| 1.0 / d as f64))
                        .collect(),
                ),
            },
        }
    }

    /// True when the potential is certainly below 1.
    fn below_one(&self, counts: &[u64]) -> bool {
        if let Some(fw) = &self.float_weights {
            let total: f64 = counts.iter().zip(fw).map(|(&c, &w)| c as f64 * w).sum();
            return total < 1.0 - 1e-9;
        }
        let mut total: u128 = 0;
        for (&c, &w) in counts.iter().zip(&self.weights) {
            match (c as u128)
                .checked_mul(w)
                .and_then(|x| total.checked_add(x))
            {
                Some(t) => total = t,
                None => return false,
            }
            if total >= self.scale {
                return false;
            }
        }
        true
    }
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

struct Frame {
    state: Vec<u64>,
    moves: Vec<Move>,
    next: usize,
}

/// Decides whether some move sequence puts a pebble on `root`.
pub fn is_solvable(
    graph: &WeightedGraph,
    config: &Configuration,
    root: usize,
    options: SolverOptions,
) -> Result<SolveCertificate, GraphError> {
    config.check(graph)?;
    graph.check_vertex(root)?;
    if config.get(root) >= 1 {
        return Ok(SolveCertificate::Solvable { moves: Vec::new() });
    }
    let potential = Potential::new(graph, root);
    let dist = root_distances(graph, root);
    let dominance = options
        .dominance
        .unwrap_or(graph.kind() == GraphKind::Lattice);
    let rank = |v: usize| dist[v].unwrap_or(u128::MAX);

    let moves_from = |state: &[u64]| -> Vec<Move> {
        let mut out = Vec::new();
        for (u, &c) in state.iter().enumerate() {
            for &(v, w) in graph.neighbors(u) {
                if c >= w {
                    out.push(Move { from: u, to: v });
                }
            }
        }
        // Moves landing closer to the root first.
        out.sort_by_key(|m| (rank(m.to), Reverse(rank(m.from)), m.from, m.to));
        out
    };

    let mut visited: HashSet<Vec<u64>> = HashSet::new();
    let mut failed: Vec<Vec<u64>> = Vec::new();
    let mut expanded: u64 = 0;
    let mut path: Vec<Move> = Vec::new();

    let start = config.counts().to_vec();
    if potential.below_one(&start) {
        return Ok(SolveCertificate::Unsolvable { visited: 0 });
    }
    visited.insert(start.clone());
    expanded += 1;
    let mut stack = vec![Frame {
        moves: moves_from(&start),
        state: start,
        next: 0,
    }];

    while let Some(frame) = stack.last_mut() {
        if frame.next == frame.moves.len() {
            let done = stack.pop().expect("nonempty");
            if dominance {
                failed.push(done.state);
            }
            path.pop();
            continue;
        }
        let mv = frame.moves[frame.next];
        frame.next += 1;
        let w = graph.cost(mv.from, mv.to).expect("edge exists");
        let mut child = frame.state.clone();
        child[mv.from] -= w;
        child[mv.to] += 1;
        if child[root] >= 1 {
            path.push(mv);
            return Ok(SolveCertificate::Solvable { moves: path });
        }
        if potential.below_one(&child) || visited.contains(&child) {
            continue;
        }
        if dominance
            && failed
                .iter()
                .rev()
                .take(256)
                .any(|f| f.iter().zip(&child).all(|(a, b)| a >= b))
        {
            continue;
        }
        if expanded >= options.budget {
            return Ok(SolveCertificate::Unknown { visited: expanded });
        }
        expanded += 1;
        visited.insert(child.clone());
        path.push(mv);
        stack.push(Frame {
            moves: moves_from(&child),
            state: child,
            next: 0,
        });
    }
    Ok(SolveCertificate::Unsolvable { visited: expanded })
}

/// Carry sweep on a path rooted at index 0: `costs[i]` joins vertices `i` and
/// `i + 1`, `counts` has one entry per vertex.
pub fn solve_path_greedy(costs: &[u64], counts: &[u64]) -> Result<bool, GraphError> {
    if counts.len() != costs.len() + 1 {
        return Err(GraphError::ConfigLength {
            expected: costs.len() + 1,
            got: counts.len(),
        });
    }
    let mut carry = 0u64;
    for i in (1..counts.len()).rev() {
        carry = (counts[i] + carry) / costs[i - 1];
    }
    Ok(counts[0] + carry >= 1)
}

/// Carry sweep on a path graph toward any root: moves that cross the root have
/// already reached it, so the two arms are independent.
pub fn solve_path_graph(
    graph: &WeightedGraph,
    config: &Configuration,
    root: usize,
) -> Result<bool, GraphError> {
    config.check(graph)?;
    graph.check_vertex(root)?;
    let end = (0..graph.vertex_count())
        .find(|&v| graph.neighbors(v).len() <= 1)
        .ok_or(GraphError::NotPath)?;
    let (order, costs) = graph.path_from(end).ok_or(GraphError::NotPath)?;
    let pos = order
        .iter()
        .position(|&v| v == root)
        .expect("path covers every vertex");
    let counts: Vec<u64> = order.iter().map(|&v| config.get(v)).collect();
    let arm = |idx: &mut dyn Iterator<Item = usize>, cost_of: &dyn Fn(usize) -> u64| {
        let mut carry = 0u64;
        for i in idx {
            carry = (counts[i] + carry) / cost_of(i);
        }
        carry
    };
    // Left arm: vertices 0..pos, edge i joins i and i + 1.
    let left = arm(&mut (0..pos), &|i| costs[i]);
    // Right arm: vertices pos+1.., edge i - 1 joins i - 1 and i.
    let right = arm(&mut (pos + 1..order.len()).rev(), &|i| costs[i - 1]);
    Ok(counts[pos] + left + right >= 1)
}

/// `times` firings of coordinate `coord` at lattice vertex `vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Firing {
    pub vertex: usize,
    pub coord: usize,
    pub times: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UpwardOutcome {
    /// Firings in topological order; replaying them reaches the target.
    Plan(Vec<Firing>),
    Unsolvable,
    Unknown,
}

struct UpwardSearch<'a> {
    info: &'a LatticeInfo,
    /// Box vertices in topological order; the target is last.
    order: Vec<usize>,
    /// For each position: eligible (coord, cost, destination position).
    moves: Vec<Vec<(usize, u64, usize)>>,
    weights: Vec<u128>,
    scale: u128,
    failed: HashSet<(usize, Vec<u64>)>,
    expanded: u64,
    budget: u64,
    exhausted: bool,
}

impl UpwardSearch<'_> {
    fn hopeless(&self, pos: usize, counts: &[u64]) -> bool {
        let mut total: u128 = 0;
        for (&c, &w) in counts[pos..].iter().zip(&self.weights[pos..]) {
            total = total.saturating_add((c as u128).saturating_mul(w));
            if total >= self.scale {
                return false;
            }
        }
        true
    }

    fn run(&mut self, pos: usize, counts: &mut Vec<u64>, plan: &mut Vec<Firing>) -> bool {
        let last = self.order.len() - 1;
        if pos == last {
            return counts[last] >= 1;
        }
        if counts[last] >= 1 {
            return true;
        }
        if self.hopeless(pos, counts) {
            return false;
        }
        let key = (pos, counts[pos..].to_vec());
        if self.failed.contains(&key) {
            return false;
        }
        if self.expanded >= self.budget {
            self.exhausted = true;
            return false;
        }
        self.expanded += 1;

        let have = counts[pos];
        let eligible = self.moves[pos].clone();
        let min_cost = eligible.iter().map(|m| m.1).min();
        let mut firing = vec![0u64; eligible.len()];
        let found = self.enumerate(pos, 0, have, min_cost, &eligible, &mut firing, counts, plan);
        if !found && !self.exhausted {
            self.failed.insert(key);
        }
        found
    }

    /// Tries maximal firing vectors at `pos`, lexicographically largest first.
    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &mut self,
        pos: usize,
        j: usize,
        left: u64,
        min_cost: Option<u64>,
        eligible: &[(usize, u64, usize)],
        firing: &mut Vec<u64>,
        counts: &mut Vec<u64>,
        plan: &mut Vec<Firing>,
    ) -> bool {
        if j == eligible.len() {
            if min_cost.is_some_and(|m| left >= m) {
                return false;
            }
            for (&(_, _, dest), &a) in eligible.iter().zip(firing.iter()) {
                counts[dest] += a;
            }
            let mark = plan.len();
            for (&(coord, _, _), &a) in eligible.iter().zip(firing.iter()) {
                if a > 0 {
                    plan.push(Firing {
                        vertex: self.order[pos],
                        coord,
                        times: a,
                    });
                }
            }
            let ok = self.run(pos + 1, counts, plan);
            if !ok {
                plan.truncate(mark);
                for (&(_, _, dest), &a) in eligible.iter().zip(firing.iter()) {
                    counts[dest] -= a;
                }
            }
            return ok;
        }
        let cost = eligible[j].1;
        for a in (0..=left / cost).rev() {
            firing[j] = a;
            if self.enumerate(
                pos,
                j + 1,
                left - a * cost,
                min_cost,
                eligible,
                firing,
                counts,
                plan,
            ) {
                return true;
            }
            if self.exhausted {
                return false;
            }
        }
        firing[j] = 0;
        false
    }
}

/// Upward-only pebbling on the box `[0, target]` of a lattice graph. Pebbles
/// outside the box are ignored; the target must be reached exactly.
pub fn upward_plan(
    graph: &WeightedGraph,
    config: &Configuration,
    target: &[u32],
    budget: u64,
) -> Result<UpwardOutcome, GraphError> {
    config.check(graph)?;
    let info = graph.lattice_info().ok_or(GraphError::NotLattice)?;
    if target.len() != info.maxes.len() || target.iter().zip(&info.maxes).any(|(t, k)| t > k) {
        return Err(GraphError::VertexRange {
            vertex: usize::MAX,
            n: graph.vertex_count(),
        });
    }
    let mut boxed: Vec<Vec<u32>> = (0..graph.vertex_count())
        .map(|v| info.levels(v))
        .filter(|l| l.iter().zip(target).all(|(a, b)| a <= b))
        .collect();
    boxed.sort_by(|a, b| {
        let sa: u32 = a.iter().sum();
        let sb: u32 = b.iter().sum();
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
    let order: Vec<usize> = boxed.iter().map(|l| info.index(l)).collect();
    let mut position = vec![usize::MAX; graph.vertex_count()];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    let moves = boxed
        .iter()
        .map(|levels| {
            (0..levels.len())
                .filter(|&i| levels[i] < target[i])
                .map(|i| {
                    let mut up = levels.clone();
                    up[i] += 1;
                    (i, info.primes[i], position[info.index(&up)])
                })
                .collect()
        })
        .collect();
    // weight(v) = prod p_i^{v_i}; reaching the target needs total weight >= prod p_i^{t_i}.
    let pow = |levels: &[u32]| -> u128 {
        levels
            .iter()
            .zip(&info.primes)
            .fold(1u128, |acc, (&l, &p)| {
                acc.saturating_mul((p as u128).saturating_pow(l))
            })
    };
    let weights = boxed.iter().map(|l| pow(l)).collect();
    let scale = pow(target);
    let mut counts: Vec<u64> = order.iter().map(|&v| config.get(v)).collect();
    let mut search = UpwardSearch {
        info,
        order,
        moves,
        weights,
        scale,
        failed: HashSet::new(),
        expanded: 0,
        budget,
        exhausted: false,
    };
    let mut plan = Vec::new();
    let found = search.run(0, &mut counts, &mut plan);
    let _ = search.info;
    Ok(if found {
        UpwardOutcome::Plan(plan)
    } else if search.exhausted {
        UpwardOutcome::Unknown
    } else {
        UpwardOutcome::Unsolvable
    })
}

/// Upward-only solvability toward the lattice root (the all-max vertex).
pub fn is_upward_solvable(
    graph: &WeightedGraph,
    config: &Configuration,
    budget: u64,
) -> Result<Option<bool>, GraphError> {
    let info = graph.lattice_info().ok_or(GraphError::NotLattice)?;
    let target = info.maxes.clone();
    Ok(match upward_plan(graph, config, &target, budget)? {
        UpwardOutcome::Plan(_) => Some(true),
        UpwardOutcome::Unsolvable => Some(false),
        UpwardOutcome::Unknown => None,
    })
}

/// Expands a firing plan into single moves.
pub fn plan_moves(graph: &WeightedGraph, plan: &[Firing]) -> Result<Vec<Move>, GraphError> {
    let info = graph.lattice_info().ok_or(GraphError::NotLattice)?;
    let mut out = Vec::new();
    for f in plan {
        let mut up = info.levels(f.vertex);
        up[f.coord] += 1;
        let to = info.index(&up);
        out.extend(std::iter::repeat_n(
            Move { from: f.vertex, to },
            f.times as usize,
        ));
    }
    Ok(out)
}
