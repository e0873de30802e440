//! Closed-form threshold expressions. Unspecified `O(1)`/`o(1)` terms become
//! the additive exponent constant `c` (default 0), so every value holds only up
//! to that constant.

use std::fmt;
use std::str::FromStr;

use super::LabError;

/// How `lg` and `exp` are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// `lg = log2`, `exp = e^x`.
    #[default]
    Lg2ExpE,
    /// `lg = log2`, `exp = 2^x`.
    Lg2Exp2,
    /// `lg = ln`, `exp = e^x`.
    Natural,
}

impl Convention {
    pub fn lg(self, x: f64) -> f64 {
        match self {
            Convention::Lg2ExpE | Convention::Lg2Exp2 => x.log2(),
            Convention::Natural => x.ln(),
        }
    }

    pub fn exp(self, x: f64) -> f64 {
        match self {
            Convention::Lg2ExpE | Convention::Natural => x.exp(),
            Convention::Lg2Exp2 => x.exp2(),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Lg2ExpE => "lg=log2,exp=e^x",
            Convention::Lg2Exp2 => "lg=log2,exp=2^x",
            Convention::Natural => "lg=ln,exp=e^x",
        })
    }
}

impl FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lg2-e" | "default" => Ok(Convention::Lg2ExpE),
            "lg2-2" => Ok(Convention::Lg2Exp2),
            "natural" | "ln-e" => Ok(Convention::Natural),
            other => Err(format!(
                "unknown convention '{other}' (lg2-e, lg2-2, natural)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdFormulaParams {
    pub primes: Vec<u64>,
    pub k: f64,
    pub c: f64,
    pub convention: Convention,
}

impl ThresholdFormulaParams {
    pub fn d(&self) -> usize {
        self.primes.len()
    }
}

/// The exponent of the product-group bound as
/// `(coefficient * lg k)^power - lglg_coefficient * lg lg k + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentStructure {
    /// `(d + 1)! / 2 * prod lg p_i`.
    pub coefficient: f64,
    /// `(d + 1)! / 2` alone.
    pub factorial_half: u64,
    pub power: f64,
    pub lglg_coefficient: f64,
}

pub fn formula_f_structure(primes: &[u64], convention: Convention) -> ExponentStructure {
    let d = primes.len() as u64;
    let factorial_half = (1..=d + 1).product::<u64>() / 2;
    let prod: f64 = primes.iter().map(|&p| convention.lg(p as f64)).product();
    ExponentStructure {
        coefficient: factorial_half as f64 * prod,
        factorial_half,
        power: 1.0 / (d as f64 + 1.0),
        lglg_coefficient: d as f64 / (d as f64 + 1.0),
    }
}

fn check_lglg(convention: Convention, x: f64, name: &str) -> Result<(), LabError> {
    let lglg = convention.lg(convention.lg(x));
    if !(lglg.is_finite()) || convention.lg(x) <= 0.0 {
        return Err(LabError::Domain(format!(
            "{name} = {x} leaves lg lg undefined"
        )));
    }
    Ok(())
}

/// `k^d exp[((d+1)! prod lg p_i / 2 * lg k)^{1/(d+1)} - d/(d+1) lg lg k + c]`.
pub fn formula_f(params: &ThresholdFormulaParams) -> Result<f64, LabError> {
    if params.primes.is_empty() {
        return Err(LabError::Domain("at least one prime is needed".into()));
    }
    if params.k < 2.0 {
        return Err(LabError::Domain(format!("k = {} is below 2", params.k)));
    }
    let conv = params.convention;
    check_lglg(conv, params.k, "k")?;
    let s = formula_f_structure(&params.primes, conv);
    let lgk = conv.lg(params.k);
    let exponent =
        (s.coefficient * lgk).powf(s.power) - s.lglg_coefficient * conv.lg(lgk) + params.c;
    Ok(params.k.powi(params.d() as i32) * conv.exp(exponent))
}

/// `n exp[sqrt(lg w lg n) - (lg lg n)/2 + c]`.
pub fn formula_path_tau(n: f64, w: f64, c: f64, convention: Convention) -> Result<f64, LabError> {
    if n < 2.0 {
        return Err(LabError::Domain(format!("n = {n} is below 2")));
    }
    if w < 2.0 {
        return Err(LabError::Domain(format!("w = {w} is below 2")));
    }
    check_lglg(convention, n, "n")?;
    let lgn = convention.lg(n);
    let exponent = (convention.lg(w) * lgn).sqrt() - convention.lg(lgn) / 2.0 + c;
    Ok(n * convention.exp(exponent))
}

/// `k exp[sqrt(lg p lg k) - (lg lg k)/2 + c]`, the single-prime displayed form.
pub fn formula_prime_power(
    p: u64,
    k: f64,
    c: f64,
    convention: Convention,
) -> Result<f64, LabError> {
    if !crate::primes::is_prime(p) {
        return Err(LabError::Domain(format!("{p} is not prime")));
    }
    if k < 2.0 {
        return Err(LabError::Domain(format!("k = {k} is below 2")));
    }
    check_lglg(convention, k, "k")?;
    let lgk = convention.lg(k);
    let exponent = (convention.lg(p as f64) * lgk).sqrt() - convention.lg(lgk) / 2.0 + c;
    Ok(k * convention.exp(exponent))
}

/// Lower and upper cube expressions with `n = 2^d`: `n^{1-eps}` and
/// `n / (lg lg n)^{1-eps}`.
pub fn formula_cube_bounds(
    d: u32,
    eps: f64,
    convention: Convention,
) -> Result<(f64, f64), LabError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(LabError::Domain(format!("eps = {eps} is outside (0, 1)")));
    }
    if d < 2 {
        return Err(LabError::Domain(format!(
            "d = {d} leaves lg lg n nonpositive"
        )));
    }
    let n = 2f64.powi(d as i32);
    let lglg = convention.lg(convention.lg(n));
    if lglg <= 0.0 {
        return Err(LabError::Domain(format!(
            "d = {d} leaves lg lg n nonpositive"
        )));
    }
    Ok((n.powf(1.0 - eps), n / lglg.powf(1.0 - eps)))
}
