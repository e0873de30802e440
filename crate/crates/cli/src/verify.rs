//! Built-in verification suites. Each assertion prints one `PASS`/`FAIL` line;
//! sampled suites use fixed seeds unless `--seed` is given.

use std::fmt::Write as _;

use clap::ValueEnum;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zerosum_core::lab::{
    birthday_exact, estimate_probability, sample_sequence, EstimateOptions, Event, Root,
};
use zerosum_core::*;

use crate::commands::{emit, CmdResult};
use crate::error::{CliError, Outcome};
use crate::GlobalArgs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Theorem2,
    Theorem3,
    Theorem5,
    PiPath,
    Birthday,
    Davenport,
}

struct Report {
    text: String,
    failures: usize,
}

impl Report {
    fn new() -> Self {
        Self {
            text: String::new(),
            failures: 0,
        }
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl AsRef<str>) {
        let verdict = if ok { "PASS" } else { "FAIL" };
        writeln!(self.text, "{verdict} {name}: {}", detail.as_ref()).unwrap();
        if !ok {
            self.failures += 1;
        }
    }
}

pub fn run(g: &GlobalArgs, suite: Suite) -> CmdResult {
    let mut report = Report::new();
    match suite {
        Suite::Theorem2 => theorem2(&mut report)?,
        Suite::Theorem3 => theorem3(&mut report, g.seed.unwrap_or(3))?,
        Suite::Theorem5 => theorem5(&mut report, g.seed.unwrap_or(5), g.budget)?,
        Suite::PiPath => pi_path(&mut report)?,
        Suite::Birthday => birthday(&mut report, g.seed.unwrap_or(20_261_015), g.threads)?,
        Suite::Davenport => davenport(&mut report)?,
    }
    let summary = if report.failures == 0 { "pass" } else { "fail" };
    writeln!(
        report.text,
        "suite {}: {summary}",
        suite.to_possible_value().unwrap().get_name()
    )
    .unwrap();
    emit(g, &report.text)?;
    Ok(if report.failures == 0 {
        Outcome::Ok
    } else {
        Outcome::Negative
    })
}

/// Calls `f` on every sequence of length `len` over `group`.
fn each_sequence(
    group: &GroupSpec,
    len: usize,
    mut f: impl FnMut(&ZSequence) -> Result<(), CliError>,
) -> Result<(), CliError> {
    let order = group.order();
    let mut digits = vec![0u64; len];
    loop {
        let seq = ZSequence::new(group, digits.iter().map(|&d| group.element_at(d)).collect())?;
        f(&seq)?;
        let Some(i) = (0..len).rev().find(|&i| digits[i] + 1 < order) else {
            return Ok(());
        };
        digits[i] += 1;
        digits[i + 1..].iter_mut().for_each(|d| *d = 0);
    }
}

fn theorem2(report: &mut Report) -> Result<(), CliError> {
    for n in 2..=6u64 {
        let group = GroupSpec::cyclic(n)?;
        let (mut total, mut good) = (0u64, 0u64);
        each_sequence(&group, n as usize, |s| {
            total += 1;
            good += u64::from(is_good(&group, s)?);
            Ok(())
        })?;
        report.check(
            &format!("Z{n}"),
            good == total,
            format!("{good}/{total} sequences good"),
        );
    }
    Ok(())
}

fn theorem3(report: &mut Report, seed: u64) -> Result<(), CliError> {
    let group = parse_group_spec("2*2")?;
    let (mut total, mut good) = (0u64, 0u64);
    each_sequence(&group, 4, |s| {
        total += 1;
        good += u64::from(is_good(&group, s)?);
        Ok(())
    })?;
    report.check(
        "Z2xZ2 exhaustive",
        good == total,
        format!("{good}/{total} sequences good"),
    );

    let group = parse_group_spec("2*2^2")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut good = 0u64;
    for _ in 0..100_000 {
        good += u64::from(is_good(&group, &sample_sequence(&group, 8, &mut rng))?);
    }
    report.check(
        "Z2xZ4 sampled",
        good == 100_000,
        format!("{good}/100000 length-8 sequences good (seed {seed})"),
    );
    Ok(())
}

fn theorem5(report: &mut Report, seed: u64, budget: Option<u64>) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let options = ExtractOptions {
        budget: budget.unwrap_or(ExtractOptions::default().budget),
    };
    for spec in ["Z12", "Z45"] {
        let group = parse_group_spec(spec)?;
        for h in group.coordinate_subgroups() {
            let len = group.subgroup_index(&h) as usize;
            let mut ok = 0;
            for _ in 0..1000 {
                let s = sample_sequence(&group, len, &mut rng);
                if extract(&group, &s, &h, options)?.is_verified()
                    || has_small_h_sum(&group, &s, &h)?
                {
                    ok += 1;
                }
            }
            let levels: Vec<String> = h.levels.iter().map(|l| l.to_string()).collect();
            report.check(
                &format!("{spec} H={}", levels.join(",")),
                ok == 1000,
                format!(
                    "{ok}/1000 length-{len} sequences have an H-sum with cross <= 1/{}",
                    group.subgroup_order(&h)
                ),
            );
        }
    }
    Ok(())
}

fn compositions(n: usize, total: u64, f: &mut impl FnMut(&[u64])) {
    fn go(n: usize, left: u64, cur: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
        if cur.len() + 1 == n {
            cur.push(left);
            f(cur);
            cur.pop();
            return;
        }
        for c in 0..=left {
            cur.push(c);
            go(n, left - c, cur, f);
            cur.pop();
        }
    }
    go(n, total, &mut Vec::new(), f);
}

fn pi_path(report: &mut Report) -> Result<(), CliError> {
    for costs in [vec![2u64, 2], vec![3, 5], vec![2, 3, 2]] {
        let graph = WeightedGraph::path(&costs)?;
        let n = costs.len() + 1;
        let pi: u64 = costs.iter().product();
        let (mut total, mut solved) = (0u64, 0u64);
        let mut err = None;
        compositions(n, pi, &mut |c| {
            total += 1;
            let config = Configuration::new(c.to_vec());
            match is_solvable(&graph, &config, 0, SolverOptions::default()) {
                Ok(SolveCertificate::Solvable { moves }) => {
                    if replay(&graph, &config, &moves).is_ok_and(|end| end.get(0) >= 1) {
                        solved += 1;
                    }
                }
                Ok(_) => {}
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e.into());
        }
        let mut far = vec![0u64; n];
        far[n - 1] = pi - 1;
        let far_unsolvable = is_solvable(
            &graph,
            &Configuration::new(far),
            0,
            SolverOptions::default(),
        )?
        .verdict()
            == Some(false);
        let name = format!(
            "path {}",
            costs
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        report.check(
            &name,
            solved == total && far_unsolvable,
            format!(
                "{solved}/{total} size-{pi} configurations solvable; far end with {} unsolvable: {far_unsolvable}",
                pi - 1
            ),
        );
    }
    Ok(())
}

fn birthday(report: &mut Report, seed: u64, threads: Option<usize>) -> Result<(), CliError> {
    let options = EstimateOptions {
        threads,
        ..EstimateOptions::default()
    };
    let mut covered = 0;
    let mut per_n = Vec::new();
    for n in [3usize, 5, 10] {
        let event = Event::Solvable {
            graph: WeightedGraph::complete(n),
            root: Root::All,
            group: None,
        };
        let mut misses = Vec::new();
        for t in 1..=10usize {
            let rec =
                estimate_probability(&event, RandomModel::Configuration, t, 10_000, seed, options)?;
            let exact = birthday_exact(n as u64, t as u64);
            let exact = exact.numer().to_f64().unwrap_or(f64::NAN)
                / exact.denom().to_f64().unwrap_or(f64::NAN);
            if rec.ci_lo <= exact && exact <= rec.ci_hi {
                covered += 1;
            } else {
                misses.push(t.to_string());
            }
        }
        per_n.push(format!("K{n} misses at t=[{}]", misses.join(",")));
    }
    report.check(
        "complete graphs 3,5,10 x t=1..10",
        covered >= 27,
        format!(
            "{covered}/30 cells inside the 95% interval (seed {seed}); {}",
            per_n.join("; ")
        ),
    );
    Ok(())
}

fn davenport(report: &mut Report) -> Result<(), CliError> {
    let opts = DavenportOptions::default();
    for n in 2..=12u64 {
        let group = GroupSpec::cyclic(n)?;
        let d = davenport_search(&group, 64, opts)?;
        report.check(&format!("Z{n}"), d == Some(n), format!("D = {d:?}"));
    }
    for spec in ["2*2", "3*3", "2*2^2"] {
        let group = parse_group_spec(spec)?;
        let d = davenport_search(&group, 64, opts)?;
        report.check(
            spec,
            d == Some(dav(&group)),
            format!("D = {d:?}, dav = {}", dav(&group)),
        );
    }
    let mut checked = 0;
    let mut bad = Vec::new();
    for order in 2..=36u64 {
        for spec in abelian_groups(order) {
            let group = parse_group_spec(&spec)?;
            let canon = canonical_zero_sum_free(&group);
            let free = zero_sum_free(&group, &canon);
            if canon.len() as u64 + 1 != dav(&group) || !free {
                bad.push(spec);
            }
            checked += 1;
        }
    }
    report.check(
        "D >= dav up to order 36",
        bad.is_empty(),
        format!("{checked} groups; canonical construction fails for {bad:?}"),
    );
    Ok(())
}

fn zero_sum_free(group: &GroupSpec, seq: &ZSequence) -> bool {
    // Subset sums as a bitset over element indices.
    let n = group.order() as usize;
    let mut reach = vec![false; n];
    for g in seq.elements() {
        let gi = group.index_of(g) as usize;
        let mut next = reach.clone();
        next[gi] = true;
        for (x, &r) in reach.iter().enumerate() {
            if r {
                let s = group.add(&group.element_at(x as u64), g);
                next[group.index_of(&s) as usize] = true;
            }
        }
        if next[group.index_of(&group.zero()) as usize] {
            return false;
        }
        reach = next;
    }
    true
}

/// Every abelian group of the given order, as spec strings.
fn abelian_groups(order: u64) -> Vec<String> {
    fn partitions(e: u32, cap: u32) -> Vec<Vec<u32>> {
        if e == 0 {
            return vec![Vec::new()];
        }
        (1..=e.min(cap))
            .rev()
            .flat_map(|first| {
                partitions(e - first, first)
                    .into_iter()
                    .map(move |mut rest| {
                        rest.insert(0, first);
                        rest
                    })
            })
            .collect()
    }
    let mut out = vec![String::new()];
    for (p, e) in zerosum_core::primes::factorize(order) {
        let options: Vec<String> = partitions(e, e)
            .iter()
            .map(|parts| {
                parts
                    .iter()
                    .map(|k| format!("{p}^{k}"))
                    .collect::<Vec<_>>()
                    .join("*")
            })
            .collect();
        out = out
            .iter()
            .flat_map(|prefix| {
                options.iter().map(move |o| {
                    if prefix.is_empty() {
                        o.clone()
                    } else {
                        format!("{prefix}*{o}")
                    }
                })
            })
            .collect();
    }
    out
}
