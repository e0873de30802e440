use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use zerosum_core::lab::{
    format_g17, formula_cube_bounds, formula_f, formula_path_tau, formula_prime_power,
    half_point_search, sweep as lab_sweep, write_csv, write_json, EstimateOptions, Event,
    ExperimentRecord, HalfPointOptions, Root, ThresholdFormulaParams,
};
use zerosum_core::solver::{plan_moves, DEFAULT_BUDGET};
use zerosum_core::*;

use crate::error::{CliError, Outcome};
use crate::{EventArgs, EventKind, Format, FormulaArgs, FormulaKind, GlobalArgs, GraphArgs};

pub type CmdResult = Result<Outcome, CliError>;

pub fn require_group(g: &GlobalArgs) -> Result<GroupSpec, CliError> {
    let spec = g
        .group
        .as_deref()
        .ok_or_else(|| CliError::Usage("--group is required".into()))?;
    Ok(parse_group_spec(spec)?)
}

pub fn require_seed(g: &GlobalArgs) -> Result<u64, CliError> {
    g.seed
        .ok_or_else(|| CliError::Usage("--seed is required for randomized commands".into()))
}

fn budget(g: &GlobalArgs) -> u64 {
    g.budget.unwrap_or(DEFAULT_BUDGET)
}

fn estimate_options(g: &GlobalArgs) -> EstimateOptions {
    EstimateOptions {
        threads: g.threads,
        budget: budget(g),
    }
}

/// Writes the primary output to `--out` or stdout.
pub fn emit(g: &GlobalArgs, text: &str) -> Result<(), CliError> {
    match &g.out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn read_sequence(group: &GroupSpec, path: &Path) -> Result<ZSequence, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    Ok(parse_sequence(group, &text)?)
}

fn parse_levels(group: &GroupSpec, text: Option<&str>) -> Result<SubgroupVertex, CliError> {
    let Some(text) = text else {
        return Ok(group.trivial_subgroup());
    };
    let levels = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("bad target level {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(group.subgroup(levels)?)
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn info(g: &GlobalArgs) -> CmdResult {
    let group = require_group(g)?;
    let mut out = String::new();
    writeln!(out, "group: {group}").unwrap();
    writeln!(out, "order: {}", group.order()).unwrap();
    writeln!(out, "exponent: {}", group.exponent()).unwrap();
    writeln!(out, "rank: {}", group.rank()).unwrap();
    writeln!(out, "cyclic: {}", group.is_cyclic()).unwrap();
    writeln!(
        out,
        "invariant_factors: {}",
        join(&invariant_factors(&group))
    )
    .unwrap();
    writeln!(out, "dav: {}", dav(&group)).unwrap();
    let vertices: u128 = group
        .factors()
        .iter()
        .map(|f| f.exponent as u128 + 1)
        .product();
    writeln!(out, "lattice_vertices: {vertices}").unwrap();
    emit(g, &out)?;
    Ok(Outcome::Ok)
}

pub fn extract(g: &GlobalArgs, file: &Path, target: Option<&str>) -> CmdResult {
    let group = require_group(g)?;
    let seq = read_sequence(&group, file)?;
    let h = parse_levels(&group, target)?;
    let outcome = zerosum_core::extract(&group, &seq, &h, ExtractOptions { budget: budget(g) })?;
    let bound = CrossValue::new(1, group.subgroup_order(&h) as u128);
    let (label, code) = match &outcome {
        ExtractOutcome::Verified(_) => ("verified", Outcome::Ok),
        ExtractOutcome::CrossExceeded { .. } => ("cross-exceeded", Outcome::Flagged),
        ExtractOutcome::NotSolvable => ("not-solvable", Outcome::Negative),
        ExtractOutcome::BudgetExhausted => ("budget-exhausted", Outcome::Budget),
    };
    let cert = outcome.certificate();
    if g.format == Format::Json {
        let value = serde_json::json!({
            "outcome": label,
            "bound": bound.to_string(),
            "certificate": cert,
        });
        emit(g, &format!("{}\n", serde_json::to_string_pretty(&value)?))?;
        return Ok(code);
    }
    let mut out = String::new();
    writeln!(out, "outcome: {label}").unwrap();
    writeln!(out, "target: {}", join(&h.levels)).unwrap();
    writeln!(out, "bound: {bound}").unwrap();
    if let Some(cert) = cert {
        writeln!(out, "indices: {}", join(&cert.indices)).unwrap();
        writeln!(out, "cross: {}", cert.cross).unwrap();
        writeln!(out, "merges: {}", cert.tree.merges()).unwrap();
    }
    if let ExtractOutcome::CrossExceeded { diagnosis, .. } = &outcome {
        writeln!(out, "diagnosis: {diagnosis}").unwrap();
    }
    emit(g, &out)?;
    Ok(code)
}

pub fn oracle(
    g: &GlobalArgs,
    file: Option<&Path>,
    target: Option<&str>,
    all: bool,
    length: Option<usize>,
) -> CmdResult {
    let group = require_group(g)?;
    let h = parse_levels(&group, target)?;
    let bound = CrossValue::new(1, group.subgroup_order(&h) as u128);
    let limits = OracleLimits::default();
    if all {
        if file.is_some() {
            return Err(CliError::Usage("--all takes no sequence file".into()));
        }
        let len = length.unwrap_or(group.order() as usize);
        let total = (group.order() as u128)
            .checked_pow(len as u32)
            .filter(|&n| n <= 100_000_000)
            .ok_or_else(|| {
                CliError::Usage(format!("{}^{len} sequences is too many", group.order()))
            })?;
        let mut good = 0u128;
        let mut first_bad = None;
        let mut digits = vec![0u64; len];
        for _ in 0..total {
            let seq = ZSequence::new(
                &group,
                digits.iter().map(|&d| group.element_at(d)).collect(),
            )?;
            let ok =
                min_cross_zero_sum(&group, &seq, &h, limits)?.is_some_and(|w| w.cross <= bound);
            if ok {
                good += 1;
            } else if first_bad.is_none() {
                first_bad = Some(format_sequence(&seq).trim_end().replace('\n', " | "));
            }
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < group.order() {
                    break;
                }
                *d = 0;
            }
        }
        let mut out = format!("checked: {total}\ngood: {good}\n");
        if let Some(bad) = first_bad {
            writeln!(out, "first_not_good: {bad}").unwrap();
        }
        emit(g, &out)?;
        return Ok(if good == total {
            Outcome::Ok
        } else {
            Outcome::Negative
        });
    }
    let file =
        file.ok_or_else(|| CliError::Usage("a sequence file or --all is required".into()))?;
    let seq = read_sequence(&group, file)?;
    let witness = min_cross_zero_sum(&group, &seq, &h, limits)?;
    let good = witness.as_ref().is_some_and(|w| w.cross <= bound);
    let mut out = String::new();
    writeln!(out, "good: {good}").unwrap();
    writeln!(out, "target: {}", join(&h.levels)).unwrap();
    writeln!(out, "bound: {bound}").unwrap();
    match &witness {
        Some(w) => {
            let values = format_sequence(&seq.select(&w.indices));
            writeln!(out, "witness: {}", join(&w.indices)).unwrap();
            writeln!(out, "elements: {}", values.trim_end().replace('\n', " | ")).unwrap();
            writeln!(out, "cross: {}", w.cross).unwrap();
        }
        None => writeln!(out, "witness: none").unwrap(),
    }
    emit(g, &out)?;
    Ok(if good { Outcome::Ok } else { Outcome::Negative })
}

/// The graph from `--graph`, or the lattice of `--group`. The group comes back
/// too when the graph is that group's lattice.
fn build_graph(
    g: &GlobalArgs,
    args: &GraphArgs,
) -> Result<(WeightedGraph, Option<GroupSpec>), CliError> {
    let group = g.group.as_deref().map(parse_group_spec).transpose()?;
    match &args.graph {
        Some(desc) => {
            let graph = parse_graph_descriptor(desc)?;
            let group = group.filter(|grp| {
                WeightedGraph::lattice(grp).is_ok_and(|l| l.descriptor() == graph.descriptor())
            });
            Ok((graph, group))
        }
        None => {
            let group =
                group.ok_or_else(|| CliError::Usage("--graph or --group is required".into()))?;
            Ok((WeightedGraph::lattice(&group)?, Some(group)))
        }
    }
}

fn parse_root(graph: &WeightedGraph, text: Option<&str>) -> Result<Root, CliError> {
    match text {
        None => Ok(match graph.kind() {
            GraphKind::Complete | GraphKind::Path => Root::All,
            _ => Root::Vertex(graph.default_root()),
        }),
        Some("all") => Ok(Root::All),
        Some("top") => Ok(Root::Vertex(graph.default_root())),
        Some(s) => {
            let v: usize = s
                .parse()
                .map_err(|_| CliError::Usage(format!("bad root {s:?} (vertex, top or all)")))?;
            graph.check_vertex(v)?;
            Ok(Root::Vertex(v))
        }
    }
}

pub fn solve(g: &GlobalArgs, args: &GraphArgs, config: &str, upward: bool) -> CmdResult {
    let (graph, _) = build_graph(g, args)?;
    let config = Configuration::parse(config, graph.vertex_count())?;
    let mut out = String::new();
    writeln!(out, "graph: {}", graph.descriptor()).unwrap();
    writeln!(out, "config: {config}").unwrap();
    if upward {
        let info = graph.lattice_info().ok_or(GraphError::NotLattice)?;
        let code = match upward_plan(&graph, &config, &info.maxes, budget(g))? {
            UpwardOutcome::Plan(plan) => {
                writeln!(out, "upward: solvable").unwrap();
                let firings: Vec<String> = plan
                    .iter()
                    .map(|f| format!("{}^{}x{}", f.vertex, f.coord, f.times))
                    .collect();
                writeln!(out, "firings: {}", firings.join(",")).unwrap();
                writeln!(out, "moves: {}", plan_moves(&graph, &plan)?.len()).unwrap();
                Outcome::Ok
            }
            UpwardOutcome::Unsolvable => {
                writeln!(out, "upward: unsolvable").unwrap();
                Outcome::Negative
            }
            UpwardOutcome::Unknown => {
                writeln!(out, "upward: unknown").unwrap();
                Outcome::Budget
            }
        };
        emit(g, &out)?;
        return Ok(code);
    }
    let roots: Vec<usize> = match parse_root(&graph, args.root.as_deref())? {
        Root::Vertex(r) => vec![r],
        Root::All => (0..graph.vertex_count()).collect(),
    };
    let options = SolverOptions {
        budget: budget(g),
        ..SolverOptions::default()
    };
    let mut code = Outcome::Ok;
    for r in roots {
        let potential = potential_bound(&graph, &config, r)?;
        let cert = is_solvable(&graph, &config, r, options)?;
        let verdict = match &cert {
            SolveCertificate::Solvable { moves } => {
                let moves: Vec<String> = moves
                    .iter()
                    .map(|m| format!("{}>{}", m.from, m.to))
                    .collect();
                format!("solvable moves={}", moves.join(","))
            }
            SolveCertificate::Unsolvable { visited } => {
                if code == Outcome::Ok {
                    code = Outcome::Negative;
                }
                format!("unsolvable visited={visited}")
            }
            SolveCertificate::Unknown { visited } => {
                code = Outcome::Budget;
                format!("unknown visited={visited}")
            }
        };
        writeln!(out, "root {r}: {verdict} potential={potential}").unwrap();
    }
    emit(g, &out)?;
    Ok(code)
}

fn build_event(g: &GlobalArgs, args: &EventArgs) -> Result<(Event, RandomModel), CliError> {
    match args.event {
        EventKind::Good => {
            let group = require_group(g)?;
            Ok((
                Event::Good { group },
                g.model.unwrap_or(RandomModel::Sequence),
            ))
        }
        EventKind::Extract => {
            let group = require_group(g)?;
            let target = parse_levels(&group, args.target.as_deref())?;
            Ok((
                Event::ExtractSuccess { group, target },
                g.model.unwrap_or(RandomModel::Sequence),
            ))
        }
        EventKind::Solvable => {
            let (graph, group) = build_graph(g, &args.graph)?;
            let root = parse_root(&graph, args.graph.root.as_deref())?;
            let model = g.model.unwrap_or(RandomModel::Configuration);
            Ok((Event::Solvable { graph, root, group }, model))
        }
    }
}

fn parse_ts(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = |s: &str| CliError::Usage(format!("bad size list entry {s:?}"));
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((a, b)) = item.split_once("..") {
            let a: usize = a.trim().parse().map_err(|_| bad(item))?;
            let b: usize = b.trim().parse().map_err(|_| bad(item))?;
            out.extend(a..=b);
        } else {
            out.push(item.parse().map_err(|_| bad(item))?);
        }
    }
    Ok(out)
}

fn render_records(g: &GlobalArgs, records: &[ExperimentRecord]) -> Result<String, CliError> {
    let mut buf = Vec::new();
    match g.format {
        Format::Csv => write_csv(records, &mut buf)?,
        Format::Json => write_json(records, &mut buf)?,
    }
    String::from_utf8(buf).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn sweep(g: &GlobalArgs, args: &EventArgs, ts: &str) -> CmdResult {
    let seed = require_seed(g)?;
    let (event, model) = build_event(g, args)?;
    let ts = parse_ts(ts)?;
    let records = lab_sweep(&event, model, &ts, g.trials, seed, estimate_options(g))?;
    emit(g, &render_records(g, &records)?)?;
    Ok(Outcome::Ok)
}

pub fn halfpoint(g: &GlobalArgs, args: &EventArgs, start: usize, max_t: usize) -> CmdResult {
    let seed = require_seed(g)?;
    let (event, model) = build_event(g, args)?;
    let search = HalfPointOptions { start, max_t };
    let hp = half_point_search(&event, model, g.trials, seed, estimate_options(g), &search)?;
    let text = match g.format {
        Format::Json => {
            let value = serde_json::json!({
                "descriptor": event.descriptor(),
                "model": model.to_string(),
                "t_star": hp.t_star,
                "bracket": [hp.bracket.0, hp.bracket.1],
                "probes": hp.probes,
            });
            format!("{}\n", serde_json::to_string_pretty(&value)?)
        }
        Format::Csv => {
            let mut out = format!(
                "# t_star={} bracket={},{}\n",
                hp.t_star, hp.bracket.0, hp.bracket.1
            );
            out.push_str(&render_records(g, &hp.probes)?);
            out
        }
    };
    emit(g, &text)?;
    Ok(Outcome::Ok)
}

pub fn formula(g: &GlobalArgs, args: &FormulaArgs) -> CmdResult {
    let need = |v: Option<f64>, name: &str| {
        v.ok_or_else(|| CliError::Usage(format!("--{name} is required")))
    };
    let conv = args.convention;
    let text = match args.kind {
        FormulaKind::F => {
            let params = ThresholdFormulaParams {
                primes: args.primes.clone(),
                k: need(args.k, "k")?,
                c: args.c,
                convention: conv,
            };
            format_g17(formula_f(&params)?)
        }
        FormulaKind::Path => format_g17(formula_path_tau(
            need(args.n, "n")?,
            need(args.w, "w")?,
            args.c,
            conv,
        )?),
        FormulaKind::PrimePower => {
            let [p] = args.primes[..] else {
                return Err(CliError::Usage(
                    "prime-power needs exactly one --primes value".into(),
                ));
            };
            format_g17(formula_prime_power(p, need(args.k, "k")?, args.c, conv)?)
        }
        FormulaKind::Cube => {
            let d = args
                .d
                .ok_or_else(|| CliError::Usage("--d is required".into()))?;
            let (lo, hi) = formula_cube_bounds(d, need(args.eps, "eps")?, conv)?;
            format!("{},{}", format_g17(lo), format_g17(hi))
        }
    };
    emit(g, &format!("{text}\n"))?;
    Ok(Outcome::Ok)
}

pub fn davenport(g: &GlobalArgs, max_len: usize) -> CmdResult {
    let group = require_group(g)?;
    let d = dav(&group);
    let canon = canonical_zero_sum_free(&group);
    let mut out = String::new();
    writeln!(out, "group: {group}").unwrap();
    writeln!(
        out,
        "invariant_factors: {}",
        join(&invariant_factors(&group))
    )
    .unwrap();
    writeln!(out, "dav: {d}").unwrap();
    writeln!(out, "canonical_zero_sum_free_length: {}", canon.len()).unwrap();
    let code = match davenport_search(&group, max_len, DavenportOptions::default()) {
        Ok(Some(found)) => {
            writeln!(out, "search: {found}").unwrap();
            Outcome::Ok
        }
        Ok(None) => {
            writeln!(out, "search: above {max_len}").unwrap();
            Outcome::Budget
        }
        Err(e) => {
            writeln!(out, "search: skipped ({e})").unwrap();
            Outcome::Ok
        }
    };
    emit(g, &out)?;
    Ok(code)
}
