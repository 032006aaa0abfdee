//! Closed-form lower bounds and exact values for `P_c(n,k,s)` and
//! `P_w(n,k,s)`, and the removal families that witness the lower bounds.
//!
//! Every formula checks its own range of validity and reports
//! [`Error::NotApplicable`] outside it. Values are never clamped.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DbSubgraph;
use crate::structure::{TheoremReport, Violation};
use crate::universal::{u_cycle_exists, UKind};
use crate::words::{binomial, compositions, render_letters, letters_of, BigCount, ExactRational, Params, WordSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    PcLowerGeneral,
    PwLowerGeneral,
    PcLowerN2,
    PwLowerN2,
    PcLowerK2,
    PwLowerK2,
    PcExactS1,
    PwExactS1,
    PcExactS2,
    PwExactS2,
}

impl Formula {
    pub const ALL: [Formula; 10] = [
        Formula::PcLowerGeneral,
        Formula::PwLowerGeneral,
        Formula::PcLowerN2,
        Formula::PwLowerN2,
        Formula::PcLowerK2,
        Formula::PwLowerK2,
        Formula::PcExactS1,
        Formula::PwExactS1,
        Formula::PcExactS2,
        Formula::PwExactS2,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Formula::PcLowerGeneral => "pc_lower_general",
            Formula::PwLowerGeneral => "pw_lower_general",
            Formula::PcLowerN2 => "pc_lower_n2",
            Formula::PwLowerN2 => "pw_lower_n2",
            Formula::PcLowerK2 => "pc_lower_k2",
            Formula::PwLowerK2 => "pw_lower_k2",
            Formula::PcExactS1 => "pc_exact_s1",
            Formula::PwExactS1 => "pw_exact_s1",
            Formula::PcExactS2 => "pc_exact_s2",
            Formula::PwExactS2 => "pw_exact_s2",
        }
    }

    pub fn kind(self) -> UKind {
        match self {
            Formula::PcLowerGeneral
            | Formula::PcLowerN2
            | Formula::PcLowerK2
            | Formula::PcExactS1
            | Formula::PcExactS2 => UKind::Cycle,
            _ => UKind::Word,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(
            self,
            Formula::PcExactS1 | Formula::PwExactS1 | Formula::PcExactS2 | Formula::PwExactS2
        )
    }

    /// Evaluates the formula at `(n, k, s)`.
    pub fn evaluate(self, n: u32, k: u32, s: u64) -> Result<Evaluation> {
        match self {
            Formula::PcLowerGeneral => pc_lower_general(n, k, s),
            Formula::PwLowerGeneral => pw_lower_general(n, k, s),
            Formula::PcLowerN2 => need_n(self, n, k, s, 2).and_then(|_| pc_lower_n2(k, s)),
            Formula::PwLowerN2 => need_n(self, n, k, s, 2).and_then(|_| pw_lower_n2(k, s)),
            Formula::PcLowerK2 => need_k(self, n, k, s, 2).and_then(|_| pc_lower_k2(n, s)),
            Formula::PwLowerK2 => need_k(self, n, k, s, 2).and_then(|_| pw_lower_k2(n, s)),
            Formula::PcExactS1 => need_s(self, n, k, s, 1).and_then(|_| pc_exact_s1(n, k)).map(Evaluation::plain),
            Formula::PwExactS1 => need_s(self, n, k, s, 1).and_then(|_| pw_exact_s1(n, k)).map(Evaluation::plain),
            Formula::PcExactS2 => need_s(self, n, k, s, 2).and_then(|_| pc_exact_s2(n, k)).map(Evaluation::plain),
            Formula::PwExactS2 => need_s(self, n, k, s, 2).and_then(|_| pw_exact_s2(n, k)).map(Evaluation::plain),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

fn not_applicable(formula: Formula, n: u32, k: u32, s: u64, reason: &'static str) -> Error {
    Error::NotApplicable {
        formula: formula.id(),
        n,
        k,
        s,
        reason,
    }
}

fn need_n(f: Formula, n: u32, k: u32, s: u64, want: u32) -> Result<()> {
    if n == want {
        Ok(())
    } else {
        Err(not_applicable(f, n, k, s, "requires n = 2"))
    }
}

fn need_k(f: Formula, n: u32, k: u32, s: u64, want: u32) -> Result<()> {
    if k == want {
        Ok(())
    } else {
        Err(not_applicable(f, n, k, s, "requires k = 2"))
    }
}

fn need_s(f: Formula, n: u32, k: u32, s: u64, want: u64) -> Result<()> {
    if s == want {
        Ok(())
    } else if want == 1 {
        Err(not_applicable(f, n, k, s, "requires s = 1"))
    } else {
        Err(not_applicable(f, n, k, s, "requires s = 2"))
    }
}

/// A formula value plus the named integer quantities it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub value: ExactRational,
    pub counts: BTreeMap<String, BigCount>,
}

impl Evaluation {
    fn plain(value: ExactRational) -> Self {
        Evaluation {
            value,
            counts: BTreeMap::new(),
        }
    }
}

fn word_space(n: u32, k: u32) -> Result<i64> {
    (k as i64)
        .checked_pow(n)
        .ok_or_else(|| Error::InvalidParams(format!("k^n overflows for n={n}, k={k}")))
}

fn big(c: BigCount) -> BigInt {
    BigInt::from(c.as_biguint().clone())
}

fn count_of(v: &BigInt) -> BigCount {
    BigCount::from(v.to_biguint().unwrap_or_default())
}

fn fraction(numer: BigInt, denom: &BigCount) -> ExactRational {
    ExactRational::from_big(numer, big(denom.clone()))
}

fn check_general(f: Formula, n: u32, k: u32, s: u64) -> Result<i64> {
    if n < 3 || k < 3 {
        return Err(not_applicable(f, n, k, s, "requires n >= 3 and k >= 3"));
    }
    let space = word_space(n, k)?;
    if s < 1 || s as i64 >= space {
        return Err(not_applicable(f, n, k, s, "requires 1 <= s < k^n"));
    }
    Ok(space)
}

/// Cycle-length classes used for `S(k, s)`: length `i` in `1..=n-2`, with `k`
/// loops and `(i-1) C(k,2)` binary `i`-cycles.
fn general_classes(n: u32, k: u32) -> Vec<(u64, u64)> {
    let pairs = (k as u64) * (k as u64 - 1) / 2;
    (1..=(n as u64).saturating_sub(2))
        .map(|i| (i, if i == 1 { k as u64 } else { (i - 1) * pairs }))
        .collect()
}

fn class_product(classes: &[(u64, u64)], mults: &[u64]) -> BigCount {
    classes
        .iter()
        .zip(mults)
        .fold(BigCount::from(1), |acc, (&(_, size), &m)| acc * binomial(size as i64, m as i64))
}

fn class_weights(classes: &[(u64, u64)]) -> Vec<(u64, Option<u64>)> {
    classes.iter().map(|&(len, size)| (len, Some(size))).collect()
}

/// `S(k, s)`: the number of ways to remove `s` words as a union of
/// edge-disjoint binary cycles of length at most `n - 2` in `B(n-1, k)`.
pub fn s_count(n: u32, k: u32, s: u64) -> Result<BigCount> {
    if n < 3 || k < 3 {
        return Err(Error::InvalidParams(format!(
            "S(k,s) is defined for n >= 3 and k >= 3, got n={n}, k={k}"
        )));
    }
    let classes = general_classes(n, k);
    Ok(compositions(s, &class_weights(&classes))
        .map(|m| class_product(&classes, &m))
        .sum())
}

pub fn pc_lower_general(n: u32, k: u32, s: u64) -> Result<Evaluation> {
    let space = check_general(Formula::PcLowerGeneral, n, k, s)?;
    let favorable = s_count(n, k, s)?;
    let total = binomial(space, s as i64);
    Ok(Evaluation {
        value: fraction(big(favorable.clone()), &total),
        counts: BTreeMap::from([("S".into(), favorable), ("total".into(), total)]),
    })
}

pub fn pw_lower_general(n: u32, k: u32, s: u64) -> Result<Evaluation> {
    let space = check_general(Formula::PwLowerGeneral, n, k, s)?;
    let classes = general_classes(n, k);
    let cycles = s_count(n, k, s)?;
    // one extra non-loop edge on top of s-1 removed cycle edges
    let extra: BigInt = compositions(s - 1, &class_weights(&classes))
        .map(|m| {
            let alpha = space - s as i64 + m[0] as i64 - k as i64 + 1;
            BigInt::from(alpha) * big(class_product(&classes, &m))
        })
        .sum();
    let total = binomial(space, s as i64);
    let mut counts = BTreeMap::from([("S".into(), cycles.clone()), ("total".into(), total.clone())]);
    counts.insert("alpha_terms".into(), count_of(&extra));
    Ok(Evaluation {
        value: fraction(big(cycles) + extra, &total),
        counts,
    })
}

/// Circular binary strings of length `k` with `i` ones, no two adjacent.
pub fn circular_count(k: u32, i: u32) -> BigCount {
    let (k, i) = (k as i64, i as i64);
    &binomial(k - i - 1, i - 1) + &binomial(k - i, i)
}

/// Direct count of what [`circular_count`] computes, over all `2^k` strings.
pub fn circular_count_brute(k: u32, i: u32) -> u64 {
    assert!((2..=24).contains(&k));
    let full = (1u32 << k) - 1;
    (0u32..=full)
        .filter(|&m| m.count_ones() == i)
        .filter(|&m| {
            let rotated = ((m << 1) | (m >> (k - 1))) & full;
            m & rotated == 0
        })
        .count() as u64
}

fn factorial(x: u64) -> BigCount {
    (1..=x).fold(BigCount::from(1), |acc, v| acc * BigCount::from(v))
}

/// `f(k, s)`.
pub fn f_count(k: u32, s: i64) -> BigCount {
    let kk = k as i64;
    let free = kk * (kk - 3) / 2;
    (0..=free.max(0))
        .map(|i| binomial(free, i) * binomial(kk, s - 2 * i))
        .sum()
}

/// `g(k, s)`; terms with `i > k/2` vanish, so the sum stops at `i = k`.
pub fn g_count(k: u32, s: i64) -> BigCount {
    let kk = k as i64;
    (3..=kk)
        .map(|i| factorial(i as u64 - 1) * circular_count(k, i as u32) * binomial(kk, s - i))
        .sum()
}

/// `U(k, s)`.
pub fn u_count(k: u32, s: i64) -> BigCount {
    let kk = k as i64;
    let two = BigCount::from(2);
    f_count(k, s) + &two * &f_count(k, s - kk) + g_count(k, s) + &two * &g_count(k, s - kk)
}

/// `V(k, s)`.
pub fn v_count(k: u32, s: i64) -> BigCount {
    let kk = k as i64;
    let loops = binomial(kk, s - 1) + BigCount::from(2) * binomial(kk, s - kk - 1);
    BigCount::from((kk * (kk - 3)).max(0) as u64) * loops
}

fn check_n2(f: Formula, k: u32, s: u64) -> Result<i64> {
    if k < 3 {
        return Err(not_applicable(f, 2, k, s, "requires n = 2 and k >= 3"));
    }
    let space = word_space(2, k)?;
    if s < 1 || s as i64 >= space {
        return Err(not_applicable(f, 2, k, s, "requires 1 <= s < k^2"));
    }
    Ok(space)
}

pub fn pc_lower_n2(k: u32, s: u64) -> Result<Evaluation> {
    let space = check_n2(Formula::PcLowerN2, k, s)?;
    let u = u_count(k, s as i64);
    let total = binomial(space, s as i64);
    Ok(Evaluation {
        value: fraction(big(u.clone()), &total),
        counts: BTreeMap::from([
            ("f".into(), f_count(k, s as i64)),
            ("g".into(), g_count(k, s as i64)),
            ("U".into(), u),
            ("total".into(), total),
        ]),
    })
}

pub fn pw_lower_n2(k: u32, s: u64) -> Result<Evaluation> {
    let space = check_n2(Formula::PwLowerN2, k, s)?;
    let s = s as i64;
    let u = u_count(k, s);
    let v = v_count(k, s);
    let paths: BigCount = (1..k as i64)
        .map(|j| f_count(k, s - j) + g_count(k, s - j))
        .sum();
    let paths = BigCount::from(2 * k as u64) * paths;
    let total = binomial(space, s);
    Ok(Evaluation {
        value: fraction(big(&(&u + &v) + &paths), &total),
        counts: BTreeMap::from([
            ("U".into(), u),
            ("V".into(), v),
            ("path_terms".into(), paths),
            ("total".into(), total),
        ]),
    })
}

/// Cycle classes behind `T(n, s)`: 2 loops, the 2-cycle, 2 cycles of length `n-1`.
fn binary_classes(n: u32) -> Vec<(u64, u64)> {
    vec![(1, 2), (2, 1), (n as u64 - 1, 2)]
}

/// `T(n, s)`, with the third factor `C(2, s_{n-1})` counting the two
/// `(n-1)`-cycles.
pub fn t_count(n: u32, s: u64) -> Result<BigCount> {
    if n < 5 {
        return Err(Error::InvalidParams(format!("T(n,s) is defined for n >= 5, got n={n}")));
    }
    let classes = binary_classes(n);
    Ok(compositions(s, &class_weights(&classes))
        .map(|m| class_product(&classes, &m))
        .sum())
}

fn check_k2(f: Formula, n: u32, s: u64) -> Result<i64> {
    if n < 5 {
        return Err(not_applicable(f, n, 2, s, "requires k = 2 and n >= 5"));
    }
    let space = word_space(n, 2)?;
    if s < 1 || s as i64 >= space {
        return Err(not_applicable(f, n, 2, s, "requires 1 <= s < 2^n"));
    }
    Ok(space)
}

pub fn pc_lower_k2(n: u32, s: u64) -> Result<Evaluation> {
    let space = check_k2(Formula::PcLowerK2, n, s)?;
    let t = t_count(n, s)?;
    let total = binomial(space, s as i64);
    Ok(Evaluation {
        value: fraction(big(t.clone()), &total),
        counts: BTreeMap::from([("T".into(), t), ("total".into(), total)]),
    })
}

pub fn pw_lower_k2(n: u32, s: u64) -> Result<Evaluation> {
    let space = check_k2(Formula::PwLowerK2, n, s)?;
    let classes = binary_classes(n);
    let t = t_count(n, s)?;
    let extra: BigInt = compositions(s - 1, &class_weights(&classes))
        .map(|m| BigInt::from(space - s as i64 + m[0] as i64 - 1) * big(class_product(&classes, &m)))
        .sum();
    let total = binomial(space, s as i64);
    let mut counts = BTreeMap::from([("T".into(), t.clone()), ("total".into(), total.clone())]);
    counts.insert("alpha_terms".into(), count_of(&extra));
    Ok(Evaluation {
        value: fraction(big(t) + extra, &total),
        counts,
    })
}

/// `P_c(n,k,1) = 1/k^{n-1}`: only loops may go.
pub fn pc_exact_s1(n: u32, k: u32) -> Result<ExactRational> {
    let p = Params::new(n, k)?;
    ExactRational::ratio(&1.into(), &p.node_count().into())
}

/// `P_w(n,k,1) = 1`.
pub fn pw_exact_s1(n: u32, k: u32) -> Result<ExactRational> {
    Params::new(n, k)?;
    Ok(ExactRational::one())
}

/// `P_c(n,k,2)`: two loops or a 2-cycle, `k(k-1)` of `C(k^n, 2)` pairs, except
/// `P_c(2,2,2) = 1/6`.
pub fn pc_exact_s2(n: u32, k: u32) -> Result<ExactRational> {
    let p = Params::new(n, k)?;
    if (n, k) == (2, 2) {
        return ExactRational::from_integers(1, 6);
    }
    let kk = k as u64;
    ExactRational::ratio(&(kk * (kk - 1)).into(), &binomial(p.word_count() as i64, 2))
}

/// `P_w(n,k,2)`.
pub fn pw_exact_s2(n: u32, k: u32) -> Result<ExactRational> {
    let p = Params::new(n, k)?;
    if (n, k) == (2, 2) {
        return ExactRational::from_integers(5, 6);
    }
    let space = BigInt::from(p.word_count());
    if k == 2 {
        let numer = &space - 3;
        let denom = (&space - 1) * BigInt::from(1u64 << (n - 3));
        return Ok(ExactRational::from_big(numer, denom));
    }
    let kk = BigInt::from(k);
    let numer = BigInt::from(2) * (BigInt::from(2) * &space - BigInt::from(3) * &kk + 1);
    let denom = BigInt::from(p.node_count()) * (&space - 1);
    Ok(ExactRational::from_big(numer, denom))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub formula: Formula,
    pub applicable: bool,
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub counts: BTreeMap<String, String>,
}

/// Every formula evaluated (or marked inapplicable) at one `(n, k, s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub n: u32,
    pub k: u32,
    pub s: u64,
    pub entries: Vec<(Formula, Result<Evaluation>)>,
}

impl BoundReport {
    pub fn value(&self, formula: Formula) -> Option<&ExactRational> {
        self.entries
            .iter()
            .find(|(f, _)| *f == formula)
            .and_then(|(_, r)| r.as_ref().ok())
            .map(|e| &e.value)
    }

    pub fn applicable(&self) -> impl Iterator<Item = (Formula, &Evaluation)> {
        self.entries
            .iter()
            .filter_map(|(f, r)| r.as_ref().ok().map(|e| (*f, e)))
    }

    pub fn to_entries(&self) -> Vec<BoundEntry> {
        self.entries
            .iter()
            .map(|(f, r)| match r {
                Ok(e) => BoundEntry {
                    formula: *f,
                    applicable: true,
                    value: Some(e.value.to_string()),
                    reason: None,
                    counts: e.counts.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
                },
                Err(err) => BoundEntry {
                    formula: *f,
                    applicable: false,
                    value: None,
                    reason: Some(err.to_string()),
                    counts: BTreeMap::new(),
                },
            })
            .collect()
    }
}

pub fn bound_report(n: u32, k: u32, s: u64) -> Result<BoundReport> {
    let p = Params::new(n, k)?;
    p.check_removed(s)?;
    Ok(BoundReport {
        n,
        k,
        s,
        entries: Formula::ALL.iter().map(|&f| (f, f.evaluate(n, k, s))).collect(),
    })
}

/// The exact value when an `s = 1` or `s = 2` formula applies, else the
/// applicable lower bound, else `None`.
pub fn best_lower_bound(n: u32, k: u32, s: u64, kind: UKind) -> Result<Option<(Formula, ExactRational)>> {
    let report = bound_report(n, k, s)?;
    let mut candidates: Vec<(Formula, &Evaluation)> =
        report.applicable().filter(|(f, _)| f.kind() == kind).collect();
    candidates.sort_by_key(|(f, _)| !f.is_exact());
    Ok(candidates.first().map(|(f, e)| (*f, e.value.clone())))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BestBound {
    pub formula: Formula,
    pub value: String,
}

/// Serializable view of a [`BoundReport`] plus the dispatcher's pick per kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSummary {
    pub n: u32,
    pub k: u32,
    pub s: u64,
    pub best_pc: Option<BestBound>,
    pub best_pw: Option<BestBound>,
    pub entries: Vec<BoundEntry>,
}

pub fn bound_summary(n: u32, k: u32, s: u64) -> Result<BoundSummary> {
    let report = bound_report(n, k, s)?;
    let best = |kind| -> Result<Option<BestBound>> {
        Ok(best_lower_bound(n, k, s, kind)?.map(|(formula, v)| BestBound {
            formula,
            value: v.to_string(),
        }))
    };
    Ok(BoundSummary {
        n,
        k,
        s,
        best_pc: best(UKind::Cycle)?,
        best_pw: best(UKind::Word)?,
        entries: report.to_entries(),
    })
}

/// Which cycle catalogue to draw removal families from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyScheme {
    /// Loops and binary cycles of length at most `n - 2` (`n, k >= 3`).
    General,
    /// Loops, the 2-cycle and the two `(n-1)`-cycles (`k = 2, n >= 5`).
    K2,
}

/// One directed cycle of `B(n-1, k)` given by the periodic word whose
/// length-`n` windows are its edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCycle {
    pub period: Vec<u32>,
    pub edges: Vec<u64>,
}

impl BinaryCycle {
    fn from_period(p: Params, period: Vec<u32>) -> Self {
        let (n, k) = (p.n() as usize, p.k() as u64);
        let mut edges: Vec<u64> = (0..period.len())
            .map(|r| (0..n).fold(0u64, |acc, j| acc * k + period[(r + j) % period.len()] as u64))
            .collect();
        edges.sort_unstable();
        BinaryCycle { period, edges }
    }

    pub fn len(&self) -> usize {
        self.period.len()
    }

    pub fn is_empty(&self) -> bool {
        self.period.is_empty()
    }
}

/// The catalogue of removable cycles, grouped by length.
pub fn cycle_catalogue(p: Params, scheme: FamilyScheme) -> Result<Vec<(u64, Vec<BinaryCycle>)>> {
    let (n, k) = (p.n(), p.k());
    match scheme {
        FamilyScheme::General => {
            if n < 3 || k < 3 {
                return Err(Error::InvalidParams("general families need n >= 3 and k >= 3".into()));
            }
            let mut classes = vec![(1, (0..k).map(|x| BinaryCycle::from_period(p, vec![x])).collect())];
            for i in 2..=n as usize - 2 {
                let mut class = Vec::new();
                for x in 0..k {
                    for y in x + 1..k {
                        for m in 1..i {
                            let mut period = vec![x; m];
                            period.resize(i, y);
                            class.push(BinaryCycle::from_period(p, period));
                        }
                    }
                }
                classes.push((i as u64, class));
            }
            Ok(classes)
        }
        FamilyScheme::K2 => {
            if k != 2 || n < 5 {
                return Err(Error::InvalidParams("binary families need k = 2 and n >= 5".into()));
            }
            let long = |x: u32| {
                let mut period = vec![x; n as usize - 2];
                period.push(1 - x);
                BinaryCycle::from_period(p, period)
            };
            Ok(vec![
                (1, vec![BinaryCycle::from_period(p, vec![0]), BinaryCycle::from_period(p, vec![1])]),
                (2, vec![BinaryCycle::from_period(p, vec![0, 1])]),
                (n as u64 - 1, vec![long(0), long(1)]),
            ])
        }
    }
}

/// A removal set built from whole cycles of the catalogue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovalFamily {
    /// `(cycle length, number of cycles of that length removed)`.
    pub multiplicities: Vec<(u64, u64)>,
    pub cycles: Vec<BinaryCycle>,
    pub removal: WordSet,
}

impl RemovalFamily {
    pub fn describe(&self) -> String {
        let k = self.removal.params().k();
        self.cycles
            .iter()
            .map(|c| format!("({})", render_letters(&c.period, k)))
            .collect::<Vec<_>>()
            .join("")
    }
}

/// Every removal of `s` words that is a union of catalogue cycles.
pub fn enumerate_removal_families(
    n: u32,
    k: u32,
    s: u64,
    scheme: FamilyScheme,
) -> Result<std::vec::IntoIter<RemovalFamily>> {
    let p = Params::new(n, k)?;
    p.ensure_enumerable()?;
    let catalogue = cycle_catalogue(p, scheme)?;
    let weights: Vec<(u64, Option<u64>)> = catalogue
        .iter()
        .map(|(len, class)| (*len, Some(class.len() as u64)))
        .collect();
    let mut out = Vec::new();
    for mults in compositions(s, &weights) {
        // all ways to pick mults[c] cycles from each class c
        let mut picks: Vec<Vec<usize>> = vec![Vec::new()];
        for ((_, class), &m) in catalogue.iter().zip(&mults) {
            let mut next = Vec::new();
            for chosen in combinations(class.len(), m as usize) {
                for prefix in &picks {
                    let mut v = prefix.clone();
                    v.extend(chosen.iter().copied());
                    next.push(v);
                }
            }
            picks = next;
        }
        for pick in picks {
            let mut cycles = Vec::new();
            let mut offset = 0;
            for ((_, class), &m) in catalogue.iter().zip(&mults) {
                for &idx in &pick[offset..offset + m as usize] {
                    cycles.push(class[idx].clone());
                }
                offset += m as usize;
            }
            let removal = WordSet::from_codes(p, cycles.iter().flat_map(|c| c.edges.iter().copied()))
                .map_err(|_| Error::InvalidParams("catalogue cycles overlap".into()))?;
            out.push(RemovalFamily {
                multiplicities: catalogue.iter().map(|(len, _)| *len).zip(mults.iter().copied()).collect(),
                cycles,
                removal,
            });
        }
    }
    Ok(out.into_iter())
}

fn combinations(universe: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    if r > universe {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..r).rev().find(|&i| cur[i] < universe - r + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Checks that the family count matches the closed form and that every
/// family leaves a set with a u-cycle whose graph is strongly connected.
pub fn verify_families(n: u32, k: u32, s: u64) -> Result<TheoremReport> {
    let scheme = if k == 2 { FamilyScheme::K2 } else { FamilyScheme::General };
    let p = Params::new(n, k)?;
    let expected = match scheme {
        FamilyScheme::General => s_count(n, k, s)?,
        FamilyScheme::K2 => t_count(n, s)?,
    };
    let mut report = TheoremReport {
        theorem: "families".into(),
        n,
        k,
        cases_checked: 0,
        exceptions: 0,
        violations: Vec::new(),
    };
    for family in enumerate_removal_families(n, k, s, scheme)? {
        report.cases_checked += 1;
        let survivors = WordSet::complement_of(p, &family.removal)?;
        let g = DbSubgraph::from_survivors(&survivors)?;
        let cycle = u_cycle_exists(&survivors)?;
        let strong = g.is_strongly_connected_on_support();
        if !(cycle && strong) {
            report.violations.push(Violation {
                case: family.describe(),
                expected: "u-cycle, strongly connected".into(),
                observed: format!("u-cycle: {cycle}, strongly connected: {strong}"),
            });
        }
    }
    if BigCount::from(report.cases_checked) != expected {
        report.violations.push(Violation {
            case: "family count".into(),
            expected: expected.to_string(),
            observed: report.cases_checked.to_string(),
        });
    }
    Ok(report)
}

/// Compares [`circular_count`] with direct enumeration for `2 <= k <= kmax`.
pub fn verify_circular_lemma(kmax: u32) -> Result<TheoremReport> {
    if !(2..=24).contains(&kmax) {
        return Err(Error::InvalidParams(format!("kmax must be in 2..=24, got {kmax}")));
    }
    let mut report = TheoremReport {
        theorem: "lemma-circular".into(),
        n: 0,
        k: kmax,
        cases_checked: 0,
        exceptions: 0,
        violations: Vec::new(),
    };
    for k in 2..=kmax {
        for i in 0..=k {
            report.cases_checked += 1;
            let formula = circular_count(k, i);
            let direct = circular_count_brute(k, i);
            if formula != BigCount::from(direct) {
                report.violations.push(Violation {
                    case: format!("k={k}, i={i}"),
                    expected: direct.to_string(),
                    observed: formula.to_string(),
                });
            }
        }
    }
    Ok(report)
}

/// Renders a word code of `B(n-1,k)` edges for diagnostics.
pub fn render_code(p: Params, code: u64) -> String {
    render_letters(&letters_of(code, p.n(), p.k()), p.k())
}
