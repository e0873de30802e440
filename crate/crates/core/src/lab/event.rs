//! Target events and their per-sample decision procedures.

use std::fmt;

use crate::engine::{extract, ExtractOptions, ExtractOutcome};
use crate::graph::{Configuration, WeightedGraph};
use crate::group::{GroupSpec, SubgroupVertex, ZSequence};
use crate::oracle::is_good;
use crate::solver::{is_solvable, solve_path_graph, SolverOptions};

use super::sample::RandomModel;
use super::LabError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Root {
    Vertex(usize),
    /// Solvable for every choice of root.
    All,
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Root::Vertex(v) => write!(f, "{v}"),
            Root::All => f.write_str("all"),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Event {
    /// The sequence contains a zero-sum subsequence of cross number at most 1.
    Good { group: GroupSpec },
    /// The placement (sequence model) or configuration is root-solvable.
    /// `group` is needed for the sequence model and must match the lattice.
    Solvable {
        graph: WeightedGraph,
        root: Root,
        group: Option<GroupSpec>,
    },
    /// Extraction toward `target` returns a verified certificate.
    ExtractSuccess {
        group: GroupSpec,
        target: SubgroupVertex,
    },
}

/// One draw from a random model.
#[derive(Debug, Clone)]
pub enum Sample {
    Sequence(ZSequence),
    Configuration(Configuration),
}

impl Event {
    /// Solvability on the valuation lattice of `group`, rooted at the top.
    pub fn lattice_solvable(group: &GroupSpec) -> Result<Self, LabError> {
        let graph = WeightedGraph::lattice(group)?;
        Ok(Event::Solvable {
            root: Root::Vertex(graph.default_root()),
            graph,
            group: Some(group.clone()),
        })
    }

    pub fn descriptor(&self) -> String {
        match self {
            Event::Good { group } => format!("good:{group}"),
            Event::Solvable { graph, root, .. } => {
                format!("solvable:{}@{root}", graph.descriptor())
            }
            Event::ExtractSuccess { group, target } => format!(
                "extract:{group}@{}",
                target
                    .levels
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }

    pub fn check_model(&self, model: RandomModel) -> Result<(), LabError> {
        match (self, model) {
            (Event::Solvable { graph, .. }, RandomModel::Configuration) => {
                if graph.vertex_count() == 0 {
                    return Err(LabError::ModelMismatch("graph has no vertices".into()));
                }
                Ok(())
            }
            (Event::Solvable { group: None, .. }, RandomModel::Sequence) => Err(
                LabError::ModelMismatch("the sequence model needs a group lattice".into()),
            ),
            (Event::Solvable { .. }, RandomModel::Sequence) => Ok(()),
            (_, RandomModel::Sequence) => Ok(()),
            (_, RandomModel::Configuration) => Err(LabError::ModelMismatch(
                "group events need the sequence model".into(),
            )),
        }
    }

    /// Draws one sample for this event under `model`.
    pub fn sample<R: rand::Rng + ?Sized>(
        &self,
        model: RandomModel,
        t: usize,
        rng: &mut R,
    ) -> Sample {
        match (self, model) {
            (Event::Solvable { graph, .. }, RandomModel::Configuration) => Sample::Configuration(
                super::sample::sample_configuration(graph.vertex_count(), t, rng),
            ),
            (Event::Solvable { group: Some(g), .. }, RandomModel::Sequence)
            | (Event::Good { group: g }, _)
            | (Event::ExtractSuccess { group: g, .. }, _) => {
                Sample::Sequence(super::sample::sample_sequence(g, t, rng))
            }
            (Event::Solvable { group: None, .. }, RandomModel::Sequence) => {
                unreachable!("rejected by check_model")
            }
        }
    }

    /// `None` when the decision procedure ran out of budget.
    pub fn decide(&self, sample: &Sample, budget: u64) -> Result<Option<bool>, LabError> {
        match (self, sample) {
            (Event::Good { group }, Sample::Sequence(s)) => Ok(Some(is_good(group, s)?)),
            (Event::ExtractSuccess { group, target }, Sample::Sequence(s)) => {
                match extract(group, s, target, ExtractOptions { budget })? {
                    ExtractOutcome::BudgetExhausted => Ok(None),
                    other => Ok(Some(other.is_verified())),
                }
            }
            (Event::Solvable { graph, root, group }, sample) => {
                let config = match sample {
                    Sample::Configuration(c) => c.clone(),
                    Sample::Sequence(s) => {
                        let group = group.as_ref().expect("checked by check_model");
                        lattice_placement(graph, group, s)
                    }
                };
                match root {
                    Root::Vertex(r) => solvable_at(graph, &config, *r, budget),
                    Root::All => {
                        let mut unknown = false;
                        for r in 0..graph.vertex_count() {
                            match solvable_at(graph, &config, r, budget)? {
                                Some(false) => return Ok(Some(false)),
                                None => unknown = true,
                                Some(true) => {}
                            }
                        }
                        Ok((!unknown).then_some(true))
                    }
                }
            }
            _ => Err(LabError::ModelMismatch(
                "sample does not fit the event".into(),
            )),
        }
    }
}

fn lattice_placement(graph: &WeightedGraph, group: &GroupSpec, s: &ZSequence) -> Configuration {
    let info = graph.lattice_info().expect("sequence model uses a lattice");
    let mut config = Configuration::empty(graph.vertex_count());
    for g in s.elements() {
        config.add(info.index(&group.valuations(g)), 1);
    }
    config
}

/// Paths use the exact carry sweep; everything else the general search.
fn solvable_at(
    graph: &WeightedGraph,
    config: &Configuration,
    root: usize,
    budget: u64,
) -> Result<Option<bool>, LabError> {
    let is_path = (0..graph.vertex_count())
        .find(|&v| graph.neighbors(v).len() <= 1)
        .is_some_and(|end| graph.path_from(end).is_some());
    if is_path {
        return Ok(Some(solve_path_graph(graph, config, root)?));
    }
    let options = SolverOptions {
        budget,
        ..SolverOptions::default()
    };
    Ok(is_solvable(graph, config, root, options)?.verdict())
}
