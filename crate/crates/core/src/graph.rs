//! Weighted graphs and pebble configurations.
//!
//! A pebbling move along edge `uv` of cost `w` removes `w` pebbles from `u` and
//! adds one to `v`. Costs are integers of at least 2.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{parse_group_spec, GroupError, GroupSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexRange { vertex: usize, n: usize },
    #[error("edge cost {cost} on {u}-{v} is below 2")]
    Cost { u: usize, v: usize, cost: u64 },
    #[error("self-loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    MultiEdge(usize, usize),
    #[error("no edge between {0} and {1}")]
    MissingEdge(usize, usize),
    #[error("vertex {vertex} holds {have} pebbles but the move costs {cost}")]
    Insufficient { vertex: usize, have: u64, cost: u64 },
    #[error("lattice would have {vertices} vertices, above the limit {limit}")]
    TooLarge { vertices: u128, limit: u128 },
    #[error("configuration has {got} entries for a graph on {expected} vertices")]
    ConfigLength { expected: usize, got: usize },
    #[error("not a path rooted at an end vertex")]
    NotPath,
    #[error("not a lattice graph")]
    NotLattice,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Path,
    Complete,
    Cube,
    Lattice,
    General,
}

/// Product-of-paths structure of a lattice graph: vertex `v` is the level
/// vector with `0 <= v_i <= maxes[i]`, and moving up in coordinate `i` costs
/// `primes[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeInfo {
    pub primes: Vec<u64>,
    pub maxes: Vec<u32>,
}

impl LatticeInfo {
    pub fn vertex_count(&self) -> usize {
        self.maxes.iter().map(|&k| k as usize + 1).product()
    }

    /// Mixed-radix index, last coordinate fastest.
    pub fn index(&self, levels: &[u32]) -> usize {
        levels
            .iter()
            .zip(&self.maxes)
            .fold(0usize, |acc, (&l, &k)| acc * (k as usize + 1) + l as usize)
    }

    pub fn levels(&self, mut idx: usize) -> Vec<u32> {
        let mut out = vec![0u32; self.maxes.len()];
        for (slot, &k) in out.iter_mut().zip(&self.maxes).rev() {
            let radix = k as usize + 1;
            *slot = (idx % radix) as u32;
            idx /= radix;
        }
        out
    }

    pub fn top(&self) -> usize {
        self.index(&self.maxes)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    adj: Vec<Vec<(usize, u64)>>,
    kind: GraphKind,
    root: usize,
    lattice: Option<LatticeInfo>,
    descriptor: String,
}

pub const DEFAULT_MAX_LATTICE_VERTICES: u128 = 1 << 20;

impl WeightedGraph {
    /// A simple graph from an edge list; the default root is vertex 0.
    pub fn new(n: usize, edges: &[(usize, usize, u64)]) -> Result<Self, GraphError> {
        let mut adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
        for &(u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if w < 2 {
                return Err(GraphError::Cost { u, v, cost: w });
            }
            if adj[u].iter().any(|&(x, _)| x == v) {
                return Err(GraphError::MultiEdge(u, v));
            }
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self {
            adj,
            kind: GraphKind::General,
            root: 0,
            lattice: None,
            descriptor: format!("graph:{n}"),
        })
    }

    /// `P_n` with `w(v_i v_{i+1}) = costs[i]`, rooted at `v_1` (index 0).
    pub fn path(costs: &[u64]) -> Result<Self, GraphError> {
        let edges: Vec<_> = costs
            .iter()
            .enumerate()
            .map(|(i, &w)| (i, i + 1, w))
            .collect();
        let mut g = Self::new(costs.len() + 1, &edges)?;
        g.kind = GraphKind::Path;
        g.descriptor = format!(
            "path:{}",
            costs
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        );
        Ok(g)
    }

    /// `K_n` with every edge of cost 2.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v, 2));
            }
        }
        let mut g = Self::new(n, &edges).expect("valid complete graph");
        g.kind = GraphKind::Complete;
        g.descriptor = format!("complete:{n}");
        g
    }

    /// The d-cube `Q^d` on bit vectors, all costs 2, rooted at the zero vector.
    pub fn cube(d: u32) -> Self {
        let n = 1usize << d;
        let mut edges = Vec::new();
        for u in 0..n {
            for b in 0..d {
                let v = u ^ (1 << b);
                if u < v {
                    edges.push((u, v, 2));
                }
            }
        }
        let mut g = Self::new(n, &edges).expect("valid cube");
        g.kind = GraphKind::Cube;
        g.descriptor = format!("cube:{d}");
        g
    }

    /// The product of weighted paths `prod P_{maxes_i + 1}` with cost `primes[i]`
    /// in coordinate `i`, rooted at the all-max vertex.
    pub fn product_lattice(primes: &[u64], maxes: &[u32], limit: u128) -> Result<Self, GraphError> {
        let vertices: u128 = maxes.iter().map(|&k| k as u128 + 1).product();
        if vertices > limit {
            return Err(GraphError::TooLarge { vertices, limit });
        }
        let info = LatticeInfo {
            primes: primes.to_vec(),
            maxes: maxes.to_vec(),
        };
        let n = info.vertex_count();
        let mut edges = Vec::new();
        for idx in 0..n {
            let levels = info.levels(idx);
            for i in 0..levels.len() {
                if levels[i] < maxes[i] {
                    let mut up = levels.clone();
                    up[i] += 1;
                    edges.push((idx, info.index(&up), primes[i]));
                }
            }
        }
        let mut g = Self::new(n, &edges)?;
        g.kind = GraphKind::Lattice;
        g.root = info.top();
        g.descriptor = format!(
            "lattice:{}",
            primes
                .iter()
                .zip(maxes)
                .map(|(p, k)| format!("{p}^{k}"))
                .collect::<Vec<_>>()
                .join("*")
        );
        g.lattice = Some(info);
        Ok(g)
    }

    /// The valuation lattice `G(Gamma) = prod P_{k_i + 1}` of a group.
    pub fn lattice(group: &GroupSpec) -> Result<Self, GraphError> {
        Self::lattice_with_limit(group, DEFAULT_MAX_LATTICE_VERTICES)
    }

    pub fn lattice_with_limit(group: &GroupSpec, limit: u128) -> Result<Self, GraphError> {
        let primes: Vec<u64> = group.factors().iter().map(|f| f.prime).collect();
        let maxes: Vec<u32> = group.factors().iter().map(|f| f.exponent).collect();
        let mut g = Self::product_lattice(&primes, &maxes, limit)?;
        g.descriptor = format!("lattice:{group}");
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, u: usize) -> &[(usize, u64)] {
        &self.adj[u]
    }

    pub fn cost(&self, u: usize, v: usize) -> Option<u64> {
        self.adj
            .get(u)?
            .iter()
            .find(|&&(x, _)| x == v)
            .map(|&(_, w)| w)
    }

    /// Edges `(u, v, w)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for (u, list) in self.adj.iter().enumerate() {
            for &(v, w) in list {
                if u < v {
                    out.push((u, v, w));
                }
            }
        }
        out
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn default_root(&self) -> usize {
        self.root
    }

    pub fn lattice_info(&self) -> Option<&LatticeInfo> {
        self.lattice.as_ref()
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.vertex_count() {
            return Err(GraphError::VertexRange {
                vertex: v,
                n: self.vertex_count(),
            });
        }
        Ok(())
    }

    /// If the graph is a path and `root` one of its ends, returns the vertices
    /// in order starting at `root` and the costs along it.
    pub fn path_from(&self, root: usize) -> Option<(Vec<usize>, Vec<u64>)> {
        let n = self.vertex_count();
        if root >= n || self.edge_count() + 1 != n {
            return None;
        }
        if n > 1 && self.adj[root].len() != 1 {
            return None;
        }
        let mut order = vec![root];
        let mut costs = Vec::new();
        let mut prev = usize::MAX;
        let mut cur = root;
        loop {
            let next: Vec<_> = self.adj[cur].iter().filter(|&&(x, _)| x != prev).collect();
            match next.as_slice() {
                [] => break,
                [&(x, w)] => {
                    costs.push(w);
                    order.push(x);
                    prev = cur;
                    cur = x;
                }
                _ => return None,
            }
        }
        (order.len() == n).then_some((order, costs))
    }

    /// Adjacency dump, one edge per line as `u v w`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (u, v, w) in self.edges() {
            out.push_str(&format!("{u} {v} {w}\n"));
        }
        out
    }

    /// Parses the `u v w` dump; the vertex count is one more than the largest
    /// endpoint unless given.
    pub fn from_dump(text: &str, n: Option<usize>) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [u, v, w] = parts.as_slice() else {
                return Err(GraphError::Parse(format!("expected `u v w`, got {line:?}")));
            };
            let num = |s: &str| {
                s.parse::<u64>()
                    .map_err(|_| GraphError::Parse(format!("not a number: {s:?}")))
            };
            edges.push((num(u)? as usize, num(v)? as usize, num(w)?));
        }
        let inferred = edges
            .iter()
            .map(|&(u, v, _)| u.max(v) + 1)
            .max()
            .unwrap_or(0);
        Self::new(n.unwrap_or(inferred), &edges)
    }
}

/// Builds a graph from `path:3,5`, `complete:5`, `cube:3` or `lattice:3^2*5`.
pub fn parse_graph_descriptor(text: &str) -> Result<WeightedGraph, GraphError> {
    let (kind, arg) = text
        .split_once(':')
        .ok_or_else(|| GraphError::Parse(format!("expected kind:args, got {text:?}")))?;
    let number = |s: &str| {
        s.trim()
            .parse::<u64>()
            .map_err(|_| GraphError::Parse(format!("not a number: {s:?}")))
    };
    match kind.trim() {
        "path" => {
            let costs = if arg.trim().is_empty() {
                Vec::new()
            } else {
                arg.split(',').map(number).collect::<Result<Vec<_>, _>>()?
            };
            WeightedGraph::path(&costs)
        }
        "complete" => Ok(WeightedGraph::complete(number(arg)? as usize)),
        "cube" => {
            let d = number(arg)?;
            if d > 20 {
                return Err(GraphError::TooLarge {
                    vertices: 1u128 << d,
                    limit: 1 << 20,
                });
            }
            Ok(WeightedGraph::cube(d as u32))
        }
        "lattice" => WeightedGraph::lattice(&parse_group_spec(arg)?),
        other => Err(GraphError::Parse(format!("unknown graph kind {other:?}"))),
    }
}

/// Pebble counts per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Configuration {
    counts: Vec<u64>,
}

impl Configuration {
    pub fn new(counts: Vec<u64>) -> Self {
        Self { counts }
    }

    pub fn empty(n: usize) -> Self {
        Self { counts: vec![0; n] }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn size(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn get(&self, v: usize) -> u64 {
        self.counts[v]
    }

    pub fn add(&mut self, v: usize, k: u64) {
        self.counts[v] += k;
    }

    pub fn check(&self, graph: &WeightedGraph) -> Result<(), GraphError> {
        if self.counts.len() != graph.vertex_count() {
            return Err(GraphError::ConfigLength {
                expected: graph.vertex_count(),
                got: self.counts.len(),
            });
        }
        Ok(())
    }

    /// Parses `vertex:count` pairs separated by commas; repeated vertices add up.
    pub fn parse(text: &str, n: usize) -> Result<Self, GraphError> {
        let mut counts = vec![0u64; n];
        for item in text.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (v, c) = item
                .split_once(':')
                .ok_or_else(|| GraphError::Parse(format!("expected vertex:count, got {item:?}")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| GraphError::Parse(format!("bad vertex {v:?}")))?;
            let c: u64 = c
                .trim()
                .parse()
                .map_err(|_| GraphError::Parse(format!("bad count {c:?}")))?;
            if v >= n {
                return Err(GraphError::VertexRange { vertex: v, n });
            }
            counts[v] += c;
        }
        Ok(Self { counts })
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, &c) in self.counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{v}:{c}")?;
            first = false;
        }
        Ok(())
    }
}

/// One pebbling step `from -> to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub from: usize,
    pub to: usize,
}

pub fn apply_move(
    graph: &WeightedGraph,
    config: &Configuration,
    from: usize,
    to: usize,
) -> Result<Configuration, GraphError> {
    config.check(graph)?;
    graph.check_vertex(from)?;
    graph.check_vertex(to)?;
    let cost = graph
        .cost(from, to)
        .ok_or(GraphError::MissingEdge(from, to))?;
    let have = config.counts[from];
    if have < cost {
        return Err(GraphError::Insufficient {
            vertex: from,
            have,
            cost,
        });
    }
    let mut next = config.clone();
    next.counts[from] -= cost;
    next.counts[to] += 1;
    Ok(next)
}

/// Replays `moves` from `config`, failing on the first illegal step.
pub fn replay(
    graph: &WeightedGraph,
    config: &Configuration,
    moves: &[Move],
) -> Result<Configuration, GraphError> {
    moves
        .iter()
        .try_fold(config.clone(), |c, m| apply_move(graph, &c, m.from, m.to))
}
