//! Finite abelian groups written as products of cyclic prime-power factors.
//!
//! A [`GroupSpec`] is the ordered list of factors `Z_{p_i^{k_i}}`; elements are
//! residue vectors with one coordinate per factor. Element orders, cross
//! numbers and the zero-sum / H-sum predicates live here. The exact
//! minimum-cross oracle is in [`crate::oracle`].

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::primes::{self, valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed group spec {0:?}")]
    Malformed(String),
    #[error("factor base {0} is not prime")]
    NonPrimeBase(u64),
    #[error("exponent must be a positive integer in factor {0:?}")]
    BadExponent(String),
    #[error("group order does not fit in 64 bits")]
    Overflow,
    #[error("the trivial group has no prime-power factors")]
    Trivial,
    #[error("expected {expected} coordinates, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("single-integer elements need a cyclic group (pairwise distinct primes)")]
    NotCyclic,
    #[error("subgroup level {level} exceeds exponent {exponent} in coordinate {coord}")]
    Level {
        coord: usize,
        level: u32,
        exponent: u32,
    },
    #[error("sequence file line {line}: {msg}")]
    SequenceFile { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    pub fn modulus(&self) -> u64 {
        self.prime.pow(self.exponent)
    }
}

/// A finite abelian group `Z_{p_1^{k_1}} x ... x Z_{p_d^{k_d}}`.
///
/// Factors are kept in canonical order (prime ascending, then exponent
/// descending); element coordinates follow that order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    factors: Vec<PrimePower>,
    moduli: Vec<u64>,
    order: u64,
    exponent: u64,
}

impl GroupSpec {
    pub fn new(mut factors: Vec<PrimePower>) -> Result<Self, GroupError> {
        if factors.is_empty() {
            return Err(GroupError::Trivial);
        }
        for f in &factors {
            if !primes::is_prime(f.prime) {
                return Err(GroupError::NonPrimeBase(f.prime));
            }
            if f.exponent == 0 {
                return Err(GroupError::BadExponent(format!("{}^0", f.prime)));
            }
        }
        factors.sort_by(|a, b| a.prime.cmp(&b.prime).then(b.exponent.cmp(&a.exponent)));
        let mut moduli = Vec::with_capacity(factors.len());
        let mut order: u64 = 1;
        let mut exponent: u64 = 1;
        for f in &factors {
            let m = f
                .prime
                .checked_pow(f.exponent)
                .ok_or(GroupError::Overflow)?;
            order = order.checked_mul(m).ok_or(GroupError::Overflow)?;
            exponent = primes::lcm(exponent, m);
            moduli.push(m);
        }
        Ok(Self {
            factors,
            moduli,
            order,
            exponent,
        })
    }

    /// The cyclic group `Z_n`, split into its prime-power factors.
    pub fn cyclic(n: u64) -> Result<Self, GroupError> {
        if n < 2 {
            return Err(GroupError::Trivial);
        }
        Self::new(
            primes::factorize(n)
                .into_iter()
                .map(|(prime, exponent)| PrimePower { prime, exponent })
                .collect(),
        )
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Number of factors `d`.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Least common multiple of the factor moduli; every element order divides it.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// True when all primes are pairwise distinct, i.e. the group is cyclic.
    pub fn is_cyclic(&self) -> bool {
        self.factors.windows(2).all(|w| w[0].prime != w[1].prime)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            residues: vec![0; self.rank()],
        }
    }

    /// Builds an element from arbitrary integers, reducing each coordinate.
    pub fn element(&self, values: &[i64]) -> Result<GroupElement, GroupError> {
        if values.len() != self.rank() {
            return Err(GroupError::Dimension {
                expected: self.rank(),
                got: values.len(),
            });
        }
        Ok(GroupElement {
            residues: values
                .iter()
                .zip(&self.moduli)
                .map(|(&v, &m)| (v as i128).rem_euclid(m as i128) as u64)
                .collect(),
        })
    }

    /// Image of the integer `m` under `Z_n -> prod Z_{p_i^{k_i}}` (Chinese remainder map).
    pub fn element_from_integer(&self, m: i64) -> Result<GroupElement, GroupError> {
        if !self.is_cyclic() {
            return Err(GroupError::NotCyclic);
        }
        self.element(&vec![m; self.rank()])
    }

    /// Inverse of [`GroupSpec::element_from_integer`]: the residue in `[0, |G|)`.
    pub fn element_to_integer(&self, g: &GroupElement) -> Result<u64, GroupError> {
        if !self.is_cyclic() {
            return Err(GroupError::NotCyclic);
        }
        self.check(g)?;
        let n = self.order as u128;
        let mut acc: u128 = 0;
        for (&r, &m) in g.residues.iter().zip(&self.moduli) {
            let m = m as u128;
            let rest = n / m;
            let inv = mod_inverse(rest % m, m);
            acc = (acc + r as u128 % m * rest % n * inv % n) % n;
        }
        Ok(acc as u64)
    }

    pub fn check(&self, g: &GroupElement) -> Result<(), GroupError> {
        if g.residues.len() != self.rank() {
            return Err(GroupError::Dimension {
                expected: self.rank(),
                got: g.residues.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            residues: a
                .residues
                .iter()
                .zip(&b.residues)
                .zip(&self.moduli)
                .map(|((&x, &y), &m)| ((x as u128 + y as u128) % m as u128) as u64)
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            residues: a
                .residues
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| if x == 0 { 0 } else { m - x })
                .collect(),
        }
    }

    pub fn sum<'a, I>(&self, items: I) -> GroupElement
    where
        I: IntoIterator<Item = &'a GroupElement>,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, g| self.add(&acc, g))
    }

    /// Order of `g`: lcm over coordinates of `p^k / gcd(r, p^k)`.
    pub fn element_order(&self, g: &GroupElement) -> Result<u64, GroupError> {
        self.check(g)?;
        Ok(g.residues
            .iter()
            .zip(&self.moduli)
            .map(|(&r, &m)| m / primes::gcd(r, m))
            .fold(1, primes::lcm))
    }

    /// Valuation vector of `g`: per coordinate, the `p_i`-adic valuation of the
    /// residue capped at `k_i`.
    pub fn valuations(&self, g: &GroupElement) -> Vec<u32> {
        g.residues
            .iter()
            .zip(&self.factors)
            .map(|(&r, f)| valuation(r, f.prime, f.exponent))
            .collect()
    }

    /// Every element, coordinates varying fastest in the last factor.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |idx| self.element_at(idx))
    }

    /// Mixed-radix decoding of `idx` in `[0, |G|)`.
    pub fn element_at(&self, mut idx: u64) -> GroupElement {
        let mut residues = vec![0; self.rank()];
        for (slot, &m) in residues.iter_mut().zip(&self.moduli).rev() {
            *slot = idx % m;
            idx /= m;
        }
        GroupElement { residues }
    }

    /// Mixed-radix index of `g`, inverse of [`GroupSpec::element_at`].
    pub fn index_of(&self, g: &GroupElement) -> u64 {
        g.residues
            .iter()
            .zip(&self.moduli)
            .fold(0, |acc, (&r, &m)| acc * m + r)
    }

    pub fn trivial_subgroup(&self) -> SubgroupVertex {
        SubgroupVertex {
            levels: self.factors.iter().map(|f| f.exponent).collect(),
        }
    }

    pub fn whole_group(&self) -> SubgroupVertex {
        SubgroupVertex {
            levels: vec![0; self.rank()],
        }
    }

    pub fn subgroup(&self, levels: Vec<u32>) -> Result<SubgroupVertex, GroupError> {
        if levels.len() != self.rank() {
            return Err(GroupError::Dimension {
                expected: self.rank(),
                got: levels.len(),
            });
        }
        for (coord, (&level, f)) in levels.iter().zip(&self.factors).enumerate() {
            if level > f.exponent {
                return Err(GroupError::Level {
                    coord,
                    level,
                    exponent: f.exponent,
                });
            }
        }
        Ok(SubgroupVertex { levels })
    }

    /// All coordinate subgroups, levels in mixed-radix order.
    pub fn coordinate_subgroups(&self) -> Vec<SubgroupVertex> {
        let mut out = vec![Vec::new()];
        for f in &self.factors {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..=f.exponent).map(move |h| {
                        let mut next = prefix.clone();
                        next.push(h);
                        next
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|levels| SubgroupVertex { levels })
            .collect()
    }

    /// `|H| = prod p_i^{k_i - h_i}`.
    pub fn subgroup_order(&self, h: &SubgroupVertex) -> u64 {
        h.levels
            .iter()
            .zip(&self.factors)
            .map(|(&l, f)| f.prime.pow(f.exponent - l))
            .product()
    }

    /// `[G : H] = prod p_i^{h_i}`.
    pub fn subgroup_index(&self, h: &SubgroupVertex) -> u64 {
        h.levels
            .iter()
            .zip(&self.factors)
            .map(|(&l, f)| f.prime.pow(l))
            .product()
    }

    pub fn contains(&self, h: &SubgroupVertex, g: &GroupElement) -> bool {
        g.residues
            .iter()
            .zip(&self.factors)
            .zip(&h.levels)
            .all(|((&r, f), &l)| valuation(r, f.prime, f.exponent) >= l)
    }
}

fn mod_inverse(a: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m as i128) as u128
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, pp) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if pp.exponent == 1 {
                write!(f, "{}", pp.prime)?;
            } else {
                write!(f, "{}^{}", pp.prime, pp.exponent)?;
            }
        }
        Ok(())
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_group_spec(s)
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses `factor ("*" factor)*` where a factor is `p^k`, `p`, or `Z<n>` / `Z_<n>`.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec, GroupError> {
    let malformed = || GroupError::Malformed(text.to_string());
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(malformed());
    }
    let mut factors = Vec::new();
    for token in cleaned.split('*') {
        if token.is_empty() {
            return Err(malformed());
        }
        if let Some(rest) = token.strip_prefix('Z') {
            let digits = rest.strip_prefix('_').unwrap_or(rest);
            let n = parse_u64(digits).ok_or_else(malformed)?;
            if n < 2 {
                return Err(GroupError::Trivial);
            }
            factors.extend(
                primes::factorize(n)
                    .into_iter()
                    .map(|(prime, exponent)| PrimePower { prime, exponent }),
            );
            continue;
        }
        let (base, exponent) = match token.split_once('^') {
            Some((b, e)) => {
                let exp = match e.parse::<i64>() {
                    Ok(v) if v >= 1 => u32::try_from(v).map_err(|_| GroupError::Overflow)?,
                    Ok(_) => return Err(GroupError::BadExponent(token.to_string())),
                    Err(_) => return Err(malformed()),
                };
                (b, exp)
            }
            None => (token, 1),
        };
        let prime = parse_u64(base).ok_or_else(malformed)?;
        if !primes::is_prime(prime) {
            return Err(GroupError::NonPrimeBase(prime));
        }
        factors.push(PrimePower { prime, exponent });
    }
    GroupSpec::new(factors)
}

fn parse_u64(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Residue vector, one coordinate per factor, each in `[0, p_i^{k_i})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    residues: Vec<u64>,
}

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.residues.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// A finite sequence of elements of one group.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZSequence {
    elements: Vec<GroupElement>,
}

impl ZSequence {
    pub fn new(group: &GroupSpec, elements: Vec<GroupElement>) -> Result<Self, GroupError> {
        for g in &elements {
            group.check(g)?;
        }
        Ok(Self { elements })
    }

    pub fn from_integers(group: &GroupSpec, values: &[i64]) -> Result<Self, GroupError> {
        let elements = values
            .iter()
            .map(|&m| group.element_from_integer(m))
            .collect::<Result<_, _>>()?;
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, idx: usize) -> Option<&GroupElement> {
        self.elements.get(idx)
    }

    pub fn concat(&self, other: &ZSequence) -> ZSequence {
        let mut elements = self.elements.clone();
        elements.extend_from_slice(&other.elements);
        ZSequence { elements }
    }

    /// The subsequence at `indices` (caller guarantees they are in range).
    pub fn select(&self, indices: &[usize]) -> ZSequence {
        ZSequence {
            elements: indices.iter().map(|&i| self.elements[i].clone()).collect(),
        }
    }
}

/// Parses the sequence file format: one element per line as `d` comma-separated
/// integers, `#` starts a comment. A lone integer is accepted for cyclic groups
/// and mapped through the Chinese remainder isomorphism.
pub fn parse_sequence(group: &GroupSpec, text: &str) -> Result<ZSequence, GroupError> {
    let mut elements = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| GroupError::SequenceFile {
            line: lineno + 1,
            msg,
        };
        let values = line
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<i64>()
                    .map_err(|_| err(format!("not an integer: {:?}", tok.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let element = if values.len() == 1 && group.rank() > 1 {
            group
                .element_from_integer(values[0])
                .map_err(|e| err(e.to_string()))?
        } else {
            group.element(&values).map_err(|e| err(e.to_string()))?
        };
        elements.push(element);
    }
    Ok(ZSequence { elements })
}

/// Writes a sequence back in the file format (residues, one element per line).
pub fn format_sequence(seq: &ZSequence) -> String {
    let mut out = String::new();
    for g in seq.elements() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

/// Exact nonnegative rational, always reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossValue(Ratio<u128>);

impl CrossValue {
    pub fn zero() -> Self {
        CrossValue(Ratio::zero())
    }

    pub fn one() -> Self {
        CrossValue(Ratio::from_integer(1))
    }

    pub fn new(numer: u128, denom: u128) -> Self {
        CrossValue(Ratio::new(numer, denom))
    }

    pub fn numer(&self) -> u128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u128 {
        *self.0.denom()
    }

    pub fn as_ratio(&self) -> Ratio<u128> {
        self.0
    }
}

impl Add for CrossValue {
    type Output = CrossValue;

    fn add(self, rhs: CrossValue) -> CrossValue {
        CrossValue(self.0 + rhs.0)
    }
}

impl std::iter::Sum for CrossValue {
    fn sum<I: Iterator<Item = CrossValue>>(iter: I) -> Self {
        iter.fold(CrossValue::zero(), Add::add)
    }
}

impl fmt::Display for CrossValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for CrossValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| format!("expected num/den, got {s:?}"))?;
        let n: u128 = n
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: u128 = d
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in {s:?}"))?;
        if d == 0 {
            return Err("zero denominator".into());
        }
        Ok(CrossValue::new(n, d))
    }
}

impl Serialize for CrossValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CrossValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Coordinate subgroup `H = prod p_i^{h_i} Z_{p_i^{k_i}}`; doubles as a lattice vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubgroupVertex {
    pub levels: Vec<u32>,
}

pub fn cross_number(group: &GroupSpec, seq: &ZSequence) -> Result<CrossValue, GroupError> {
    seq.elements()
        .iter()
        .map(|g| {
            group
                .element_order(g)
                .map(|o| CrossValue::new(1, o as u128))
        })
        .sum()
}

/// Empty sequences count as zero-sum.
pub fn is_zero_sum(group: &GroupSpec, seq: &ZSequence) -> Result<bool, GroupError> {
    for g in seq.elements() {
        group.check(g)?;
    }
    Ok(group.sum(seq.elements()).is_zero())
}

pub fn is_h_sum(
    group: &GroupSpec,
    seq: &ZSequence,
    h: &SubgroupVertex,
) -> Result<bool, GroupError> {
    for g in seq.elements() {
        group.check(g)?;
    }
    if h.levels.len() != group.rank() {
        return Err(GroupError::Dimension {
            expected: group.rank(),
            got: h.levels.len(),
        });
    }
    Ok(group.contains(h, &group.sum(seq.elements())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z45() -> GroupSpec {
        parse_group_spec("3^2*5").unwrap()
    }

    #[test]
    fn parse_examples() {
        let g = z45();
        assert_eq!(
            g.factors(),
            &[
                PrimePower {
                    prime: 3,
                    exponent: 2
                },
                PrimePower {
                    prime: 5,
                    exponent: 1
                }
            ]
        );
        assert_eq!(g.order(), 45);
        assert_eq!(parse_group_spec("Z45").unwrap(), g);
        assert_eq!(parse_group_spec("Z_45").unwrap(), g);
        assert_eq!(parse_group_spec("5 * 3^2").unwrap(), g);

        let z5 = parse_group_spec("Z5").unwrap();
        assert_eq!(
            z5.factors(),
            &[PrimePower {
                prime: 5,
                exponent: 1
            }]
        );
        assert_eq!(z5.order(), 5);

        let g8 = parse_group_spec("2^2*2").unwrap();
        assert_eq!(g8.rank(), 2);
        assert_eq!(g8.order(), 8);
        assert_eq!(g8.moduli(), &[4, 2]);
        assert!(!g8.is_cyclic());
        assert_eq!(parse_group_spec("Z2*Z4").unwrap().to_string(), "2^2*2");
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert_eq!(parse_group_spec("4^2"), Err(GroupError::NonPrimeBase(4)));
        assert!(matches!(
            parse_group_spec("3^0"),
            Err(GroupError::BadExponent(_))
        ));
        assert!(matches!(
            parse_group_spec("3^-2"),
            Err(GroupError::BadExponent(_))
        ));
        assert_eq!(parse_group_spec("2^64"), Err(GroupError::Overflow));
        assert_eq!(parse_group_spec("2^40*2^30"), Err(GroupError::Overflow));
        assert!(matches!(
            parse_group_spec("3^"),
            Err(GroupError::Malformed(_))
        ));
        assert!(matches!(
            parse_group_spec("3**5"),
            Err(GroupError::Malformed(_))
        ));
        assert!(matches!(
            parse_group_spec(""),
            Err(GroupError::Malformed(_))
        ));
        assert!(matches!(
            parse_group_spec("x"),
            Err(GroupError::Malformed(_))
        ));
        assert_eq!(parse_group_spec("Z1"), Err(GroupError::Trivial));
        assert_eq!(parse_group_spec("1"), Err(GroupError::NonPrimeBase(1)));
    }

    #[test]
    fn negative_inputs_reduce() {
        let g = z45();
        let e = g.element_from_integer(-11).unwrap();
        assert_eq!(e.residues(), &[7, 4]);
        assert_eq!(g.element_to_integer(&e).unwrap(), 34);
        assert_eq!(g.element(&[-1, -6]).unwrap().residues(), &[8, 4]);
    }

    #[test]
    fn crt_round_trip() {
        let g = parse_group_spec("Z60").unwrap();
        for m in 0..60 {
            let e = g.element_from_integer(m).unwrap();
            assert_eq!(g.element_to_integer(&e).unwrap(), m as u64);
        }
        let nc = parse_group_spec("2*2").unwrap();
        assert_eq!(nc.element_from_integer(1), Err(GroupError::NotCyclic));
    }

    #[test]
    fn orders() {
        let g = z45();
        let ord = |m| {
            g.element_order(&g.element_from_integer(m).unwrap())
                .unwrap()
        };
        assert_eq!(ord(30), 3);
        assert_eq!(ord(0), 1);
        assert_eq!(ord(32), 45);
        let mut acc = g.zero();
        let e = g.element_from_integer(32).unwrap();
        let mut m = 0;
        loop {
            acc = g.add(&acc, &e);
            m += 1;
            if acc.is_zero() {
                break;
            }
        }
        assert_eq!(m, 45);
        assert_eq!(
            g.element_order(&GroupElement { residues: vec![1] }),
            Err(GroupError::Dimension {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn cross_numbers() {
        let g = z45();
        let s = ZSequence::from_integers(&g, &[75, -15, 51, 48, 32, -11]).unwrap();
        assert_eq!(cross_number(&g, &s).unwrap(), CrossValue::new(38, 45));
        assert!(is_zero_sum(&g, &s).unwrap());

        let z5 = GroupSpec::cyclic(5).unwrap();
        let s = ZSequence::from_integers(&z5, &[1, 4]).unwrap();
        assert_eq!(cross_number(&z5, &s).unwrap(), CrossValue::new(2, 5));
        assert!(is_zero_sum(&z5, &s).unwrap());

        assert_eq!(
            cross_number(&g, &ZSequence::default()).unwrap(),
            CrossValue::zero()
        );
        assert!(is_zero_sum(&g, &ZSequence::default()).unwrap());
    }

    #[test]
    fn h_sums() {
        let g = z45();
        let s = ZSequence::from_integers(&g, &[32, -11]).unwrap();
        let h = g.subgroup(vec![1, 0]).unwrap();
        assert!(is_h_sum(&g, &s, &h).unwrap());
        assert!(!is_zero_sum(&g, &s).unwrap());
        assert_eq!(g.subgroup_order(&h), 15);
        assert_eq!(g.subgroup_index(&h), 3);
        assert!(g.subgroup(vec![3, 0]).is_err());
        assert_eq!(g.coordinate_subgroups().len(), 6);
    }

    #[test]
    fn sequence_file() {
        let g = z45();
        let text = "# worked example\n32\n-11\n\n31 # trailing\n0,0\n";
        let s = parse_sequence(&g, text).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.elements()[1], g.element_from_integer(-11).unwrap());
        assert!(s.elements()[3].is_zero());
        let err = parse_sequence(&g, "1\nfoo\n").unwrap_err();
        assert!(matches!(err, GroupError::SequenceFile { line: 2, .. }));
        let err = parse_sequence(&g, "1,2,3\n").unwrap_err();
        assert!(matches!(err, GroupError::SequenceFile { line: 1, .. }));
        let back = parse_sequence(&g, &format_sequence(&s)).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn cross_value_text() {
        let v: CrossValue = "76/90".parse().unwrap();
        assert_eq!(v, CrossValue::new(38, 45));
        assert_eq!(v.to_string(), "38/45");
        assert_eq!(CrossValue::zero().to_string(), "0/1");
        assert!("1/0".parse::<CrossValue>().is_err());
    }
}
