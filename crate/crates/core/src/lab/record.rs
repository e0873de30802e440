//! Experiment records and their CSV/JSON forms.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::sample::RandomModel;
use super::LabError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub descriptor: String,
    pub model: RandomModel,
    pub t: u64,
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub seed: u64,
    /// Trials whose decision ran out of budget.
    pub unknowns: u64,
    pub wall_ms: u64,
}

impl ExperimentRecord {
    pub fn is_tainted(&self) -> bool {
        self.unknowns > 0
    }
}

pub const CSV_HEADER: [&str; 11] = [
    "descriptor",
    "model",
    "t",
    "trials",
    "successes",
    "estimate",
    "ci_lo",
    "ci_hi",
    "seed",
    "unknowns",
    "wall_ms",
];

/// `%.17g`: 17 significant digits, trailing zeros dropped, exponent form
/// outside `[1e-4, 1e17)`.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (16 - exp).max(0) as usize;
    strip_zeros(&format!("{x:.decimals$}")).to_string()
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_csv<W: Write>(records: &[ExperimentRecord], out: W) -> Result<(), LabError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.descriptor.clone(),
            r.model.to_string(),
            r.t.to_string(),
            r.trials.to_string(),
            r.successes.to_string(),
            format_g17(r.estimate),
            format_g17(r.ci_lo),
            format_g17(r.ci_hi),
            r.seed.to_string(),
            r.unknowns.to_string(),
            r.wall_ms.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(records: &[ExperimentRecord], mut out: W) -> Result<(), LabError> {
    serde_json::to_writer_pretty(&mut out, records)?;
    writeln!(out)?;
    Ok(())
}
