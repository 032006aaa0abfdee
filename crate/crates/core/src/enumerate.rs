//! Exact `P_c(n,k,s)` and `P_w(n,k,s)` by scanning every removal subset.
//!
//! The colex rank range `[0, C(k^n, s))` is cut into chunks. Each worker
//! unranks the first subset of its chunk and walks the rest with the colex
//! successor, so chunk counts add up to the monolithic count exactly.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{default_workers, map_ordered};
use crate::universal::UKind;
use crate::words::{binomial, next_colex, unrank_subset_u64, BigCount, ExactRational, Params};

/// Default ceiling on the number of subsets one scan may visit.
pub const DEFAULT_WORK_CAP: u64 = 200_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOptions {
    pub workers: usize,
    /// Number of rank chunks; `None` picks a multiple of the worker count.
    pub chunks: Option<usize>,
    pub work_cap: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            workers: default_workers(),
            chunks: None,
            work_cap: DEFAULT_WORK_CAP,
        }
    }
}

impl ScanOptions {
    pub fn with_workers(workers: usize) -> Self {
        ScanOptions {
            workers: workers.max(1),
            ..ScanOptions::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ExactRecord", try_from = "ExactRecord")]
pub struct ExactResult {
    pub params: Params,
    pub s: u64,
    pub kind: UKind,
    pub favorable: BigCount,
    pub total: BigCount,
    pub probability: ExactRational,
}

/// Wire form of [`ExactResult`]: big integers and fractions as strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct ExactRecord {
    n: u32,
    k: u32,
    s: u64,
    kind: UKind,
    favorable: String,
    total: String,
    probability: String,
}

impl From<ExactResult> for ExactRecord {
    fn from(r: ExactResult) -> Self {
        ExactRecord {
            n: r.params.n(),
            k: r.params.k(),
            s: r.s,
            kind: r.kind,
            favorable: r.favorable.to_string(),
            total: r.total.to_string(),
            probability: r.probability.to_string(),
        }
    }
}

impl TryFrom<ExactRecord> for ExactResult {
    type Error = Error;

    fn try_from(r: ExactRecord) -> Result<Self> {
        let params = Params::new(r.n, r.k)?;
        let favorable: BigCount = r.favorable.parse()?;
        let total: BigCount = r.total.parse()?;
        let probability: ExactRational = r.probability.parse()?;
        if probability != ExactRational::ratio(&favorable, &total)? {
            return Err(Error::InvalidParams("probability does not equal favorable/total".into()));
        }
        Ok(ExactResult {
            params,
            s: r.s,
            kind: r.kind,
            favorable,
            total,
            probability,
        })
    }
}

/// Per-subset existence test over a reusable scratch state.
///
/// Degree defects are read off the removed edges alone, since the full graph
/// is `k`-regular. Connectivity on the support is a union-find pass over the
/// surviving edges, run only when the defects already allow a u-object.
pub(crate) struct Checker {
    kind: UKind,
    n: u64,
    k: u64,
    words: u64,
    nodes: u64,
    removed: Vec<bool>,
    removed_out: Vec<u32>,
    removed_in: Vec<u32>,
    seen: Vec<bool>,
    parent: Vec<u32>,
}

impl Checker {
    pub(crate) fn new(p: Params, kind: UKind) -> Self {
        let nodes = p.node_count() as usize;
        Checker {
            kind,
            n: p.n() as u64,
            k: p.k() as u64,
            words: p.word_count(),
            nodes: p.node_count(),
            removed: vec![false; p.word_count() as usize],
            removed_out: vec![0; nodes],
            removed_in: vec![0; nodes],
            seen: vec![false; nodes],
            parent: (0..nodes as u32).collect(),
        }
    }

    /// Whether `A^n` minus the sorted, distinct codes in `removal` admits a u-object.
    pub(crate) fn admits(&mut self, removal: &[u64]) -> bool {
        for &e in removal {
            self.removed[e as usize] = true;
            self.removed_out[(e / self.k) as usize] += 1;
            self.removed_in[(e % self.nodes) as usize] += 1;
        }
        let ok = self.degrees_ok(removal) && self.connected(removal.len() as u64);
        for &e in removal {
            self.removed[e as usize] = false;
            self.removed_out[(e / self.k) as usize] = 0;
            self.removed_in[(e % self.nodes) as usize] = 0;
        }
        ok
    }

    fn degrees_ok(&mut self, removal: &[u64]) -> bool {
        let survivors = self.words - removal.len() as u64;
        if self.kind == UKind::Cycle && survivors < self.n {
            return false;
        }
        // only endpoints of removed edges can be unbalanced
        let (mut plus, mut minus, mut bad) = (0u32, 0u32, false);
        for &e in removal {
            for v in [(e / self.k) as usize, (e % self.nodes) as usize] {
                if std::mem::replace(&mut self.seen[v], true) {
                    continue;
                }
                match self.removed_in[v] as i64 - self.removed_out[v] as i64 {
                    0 => {}
                    1 => plus += 1,
                    -1 => minus += 1,
                    _ => bad = true,
                }
            }
        }
        for &e in removal {
            self.seen[(e / self.k) as usize] = false;
            self.seen[(e % self.nodes) as usize] = false;
        }
        !bad && match self.kind {
            UKind::Cycle => plus == 0 && minus == 0,
            UKind::Word => plus <= 1 && minus <= 1,
        }
    }

    fn find(parent: &mut [u32], mut v: u32) -> u32 {
        while parent[v as usize] != v {
            let up = parent[parent[v as usize] as usize];
            parent[v as usize] = up;
            v = up;
        }
        v
    }

    fn connected(&mut self, removed: u64) -> bool {
        if removed == self.words {
            return false;
        }
        for (v, slot) in self.parent.iter_mut().enumerate() {
            *slot = v as u32;
        }
        for e in 0..self.words {
            if self.removed[e as usize] {
                continue;
            }
            let a = Self::find(&mut self.parent, (e / self.k) as u32);
            let b = Self::find(&mut self.parent, (e % self.nodes) as u32);
            if a != b {
                self.parent[a as usize] = b;
            }
        }
        let k = self.k as u32;
        let mut root = None;
        for v in 0..self.nodes as usize {
            if self.removed_out[v] == k && self.removed_in[v] == k {
                continue;
            }
            let r = Self::find(&mut self.parent, v as u32);
            match root {
                None => root = Some(r),
                Some(x) if x != r => return false,
                _ => {}
            }
        }
        true
    }
}

fn scan_total(p: Params, s: u64, cap: u64) -> Result<(BigCount, u64)> {
    p.ensure_enumerable()?;
    p.check_removed(s)?;
    let total = binomial(p.word_count() as i64, s as i64);
    match total.to_u64() {
        Some(t) if t <= cap => Ok((total, t)),
        _ => Err(Error::CapExceeded(format!(
            "C({}, {s}) = {total} subsets exceeds the work cap of {cap}; use the closed-form bounds instead",
            p.word_count()
        ))),
    }
}

fn count_range(p: Params, s: u64, kind: UKind, lo: u64, hi: u64) -> u64 {
    visit_range(p, s, kind, lo, hi, |_| {})
}

fn visit_range(p: Params, s: u64, kind: UKind, lo: u64, hi: u64, mut on_hit: impl FnMut(&[u64])) -> u64 {
    if lo >= hi {
        return 0;
    }
    let universe = p.word_count();
    let mut checker = Checker::new(p, kind);
    let mut subset = vec![0u64; s as usize];
    unrank_subset_u64(lo, universe, &mut subset);
    let mut hits = 0;
    for step in lo..hi {
        if checker.admits(&subset) {
            hits += 1;
            on_hit(&subset);
        }
        if step + 1 < hi {
            next_colex(&mut subset, universe);
        }
    }
    hits
}

/// Favorable count over the colex ranks `[rank_lo, rank_hi)`.
pub fn count_favorable_chunk(
    n: u32,
    k: u32,
    s: u64,
    kind: UKind,
    rank_lo: &BigCount,
    rank_hi: &BigCount,
) -> Result<BigCount> {
    let p = Params::new(n, k)?;
    let (total, _) = scan_total(p, s, u64::MAX)?;
    if rank_lo > rank_hi || rank_hi > &total {
        return Err(Error::InvalidParams(format!(
            "rank range [{rank_lo}, {rank_hi}) is not inside [0, {total})"
        )));
    }
    let (lo, hi) = (rank_lo.to_u64(), rank_hi.to_u64());
    match (lo, hi) {
        (Some(lo), Some(hi)) => Ok(count_range(p, s, kind, lo, hi).into()),
        _ => Err(Error::CapExceeded("rank range does not fit in 64 bits".into())),
    }
}

fn chunk_bounds(total: u64, chunks: usize) -> Vec<(u64, u64)> {
    let chunks = (chunks.max(1) as u64).min(total.max(1));
    (0..chunks)
        .map(|i| {
            let at = |j: u64| ((total as u128 * j as u128) / chunks as u128) as u64;
            (at(i), at(i + 1))
        })
        .collect()
}

pub fn exact_probability(n: u32, k: u32, s: u64, kind: UKind) -> Result<ExactResult> {
    exact_probability_with(n, k, s, kind, &ScanOptions::default())
}

pub fn exact_probability_with(n: u32, k: u32, s: u64, kind: UKind, opts: &ScanOptions) -> Result<ExactResult> {
    let p = Params::new(n, k)?;
    let (total, t) = scan_total(p, s, opts.work_cap)?;
    let chunks = opts.chunks.unwrap_or(opts.workers.max(1) * 8);
    let counts = map_ordered(chunk_bounds(t, chunks), opts.workers, |(lo, hi)| {
        count_range(p, s, kind, lo, hi)
    });
    let favorable = BigCount::from(counts.iter().sum::<u64>());
    let probability = ExactRational::ratio(&favorable, &total)?;
    Ok(ExactResult {
        params: p,
        s,
        kind,
        favorable,
        total,
        probability,
    })
}

/// One result per `s`, in increasing order; a cell that fails keeps its error.
pub fn probability_table(
    n: u32,
    k: u32,
    kind: UKind,
    s_range: RangeInclusive<u64>,
    opts: &ScanOptions,
) -> Vec<(u64, Result<ExactResult>)> {
    s_range
        .map(|s| (s, exact_probability_with(n, k, s, kind, opts)))
        .collect()
}

/// Calls `on_hit` with every favorable removal set, in colex order.
pub fn visit_favorable(
    n: u32,
    k: u32,
    s: u64,
    kind: UKind,
    work_cap: u64,
    on_hit: impl FnMut(&[u64]),
) -> Result<u64> {
    let p = Params::new(n, k)?;
    let (_, t) = scan_total(p, s, work_cap)?;
    Ok(visit_range(p, s, kind, 0, t, on_hit))
}
