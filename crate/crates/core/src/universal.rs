//! Existence, construction and verification of u-cycles and u-words.
//!
//! A word set `S` of length-`n` words has a u-word iff its edge graph (a
//! subgraph of `B(n-1, k)`) has an Eulerian trail, and a u-cycle iff that
//! graph has an Eulerian cycle and `|S| >= n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DbSubgraph;
use crate::words::{letters_of, render_letters, Params, WordSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UKind {
    Cycle,
    Word,
}

impl fmt::Display for UKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UKind::Cycle => "cycle",
            UKind::Word => "word",
        })
    }
}

impl std::str::FromStr for UKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cycle" => Ok(UKind::Cycle),
            "word" => Ok(UKind::Word),
            other => Err(Error::InvalidParams(format!(
                "kind must be `cycle` or `word`, got {other:?}"
            ))),
        }
    }
}

/// A u-cycle (circular, length `|S|`) or u-word (linear, length `|S| + n - 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UObject {
    pub kind: UKind,
    pub params: Params,
    pub letters: Vec<u32>,
}

impl UObject {
    pub fn parse(kind: UKind, params: Params, text: &str) -> Result<Self> {
        let bad = |reason: String| Error::InvalidWord {
            text: text.to_string(),
            reason,
        };
        let letters = if params.k() <= 10 {
            text.trim()
                .chars()
                .map(|c| c.to_digit(10).ok_or_else(|| bad(format!("{c:?} is not a digit"))))
                .collect::<Result<Vec<_>>>()?
        } else {
            text.split(',')
                .map(|p| p.trim().parse::<u32>().map_err(|_| bad(format!("{p:?} is not a letter"))))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(UObject { kind, params, letters })
    }

    pub fn text(&self) -> String {
        render_letters(&self.letters, self.params.k())
    }
}

impl fmt::Display for UObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// Trail condition on degrees: out - in is +1 on at most one node, -1 on at
/// most one node and 0 elsewhere.
pub(crate) fn trail_degrees_ok(defects: impl IntoIterator<Item = i64>) -> bool {
    let (mut plus, mut minus) = (0, 0);
    for d in defects {
        match d {
            0 => {}
            1 => plus += 1,
            -1 => minus += 1,
            _ => return false,
        }
    }
    plus <= 1 && minus <= 1 && plus == minus
}

pub fn graph_has_trail(g: &DbSubgraph) -> bool {
    trail_degrees_ok(g.degree_defects().into_iter().map(|(_, d)| d)) && g.is_connected_on_support()
}

pub fn graph_has_cycle(g: &DbSubgraph) -> bool {
    g.is_balanced() && g.is_connected_on_support()
}

pub fn u_word_exists(survivors: &WordSet) -> Result<bool> {
    Ok(graph_has_trail(&DbSubgraph::from_survivors(survivors)?))
}

pub fn u_cycle_exists(survivors: &WordSet) -> Result<bool> {
    if survivors.len() < survivors.params().n() as usize {
        return Ok(false);
    }
    Ok(graph_has_cycle(&DbSubgraph::from_survivors(survivors)?))
}

pub fn u_object_exists(kind: UKind, survivors: &WordSet) -> Result<bool> {
    match kind {
        UKind::Cycle => u_cycle_exists(survivors),
        UKind::Word => u_word_exists(survivors),
    }
}

/// Human-readable reason why no u-object exists (empty if one does).
pub fn explain_failure(kind: UKind, survivors: &WordSet) -> Result<String> {
    let g = DbSubgraph::from_survivors(survivors)?;
    let p = survivors.params();
    let mut reasons = Vec::new();
    if survivors.is_empty() {
        reasons.push("the word set is empty".to_string());
    }
    if kind == UKind::Cycle && survivors.len() < p.n() as usize {
        reasons.push(format!(
            "a u-cycle needs at least n = {} words, got {}",
            p.n(),
            survivors.len()
        ));
    }
    let defects = g.degree_defects();
    let degrees_ok = match kind {
        UKind::Cycle => defects.is_empty(),
        UKind::Word => trail_degrees_ok(defects.iter().map(|&(_, d)| d)),
    };
    if !degrees_ok {
        let listed: Vec<String> = defects
            .iter()
            .map(|&(v, d)| format!("{}:{d:+}", render_letters(&letters_of(v, g.m(), g.k()), g.k())))
            .collect();
        reasons.push(format!("degree defects (out - in) {}", listed.join(" ")));
    }
    let components = g.support_component_count();
    if components > 1 {
        reasons.push(format!("{components} disconnected components"));
    }
    Ok(reasons.join("; "))
}

/// Hierholzer's algorithm taking the smallest unused edge first. Returns the
/// node sequence of the trail, or `None` if not every edge was used.
fn eulerian_node_sequence(g: &DbSubgraph, start: u64) -> Option<Vec<u64>> {
    let k = g.k() as u64;
    let mut next_letter = vec![0u64; g.node_count() as usize];
    let mut stack = vec![start];
    let mut trail = Vec::with_capacity(g.edge_count() + 1);
    while let Some(&v) = stack.last() {
        let slot = &mut next_letter[v as usize];
        while *slot < k && !g.has_edge(v * k + *slot) {
            *slot += 1;
        }
        if *slot < k {
            let e = v * k + *slot;
            *slot += 1;
            stack.push(g.head(e));
        } else {
            trail.push(v);
            stack.pop();
        }
    }
    trail.reverse();
    (trail.len() == g.edge_count() + 1).then_some(trail)
}

fn trail_letters(g: &DbSubgraph, nodes: &[u64]) -> Vec<u32> {
    let k = g.k() as u64;
    let mut letters = letters_of(nodes[0], g.m(), g.k());
    letters.extend(nodes[1..].iter().map(|&v| (v % k) as u32));
    letters
}

fn not_universal(kind: UKind, survivors: &WordSet) -> Error {
    let why = explain_failure(kind, survivors).unwrap_or_default();
    Error::NotUniversal(format!("no u-{kind} exists: {why}"))
}

/// Canonical u-word: the trail starts at the node with surplus out-degree
/// (or the smallest node with an edge) and always takes the smallest edge.
pub fn construct_u_word(survivors: &WordSet) -> Result<UObject> {
    let g = DbSubgraph::from_survivors(survivors)?;
    if !graph_has_trail(&g) {
        return Err(not_universal(UKind::Word, survivors));
    }
    let start = g
        .degree_defects()
        .into_iter()
        .find(|&(_, d)| d == 1)
        .map(|(v, _)| v)
        .unwrap_or_else(|| g.tail(g.edges()[0]));
    let nodes = eulerian_node_sequence(&g, start)
        .ok_or_else(|| Error::NotUniversal("trail did not cover every word".into()))?;
    Ok(UObject {
        kind: UKind::Word,
        params: survivors.params(),
        letters: trail_letters(&g, &nodes),
    })
}

/// Canonical u-cycle, starting from the smallest node with an edge.
pub fn construct_u_cycle(survivors: &WordSet) -> Result<UObject> {
    let g = DbSubgraph::from_survivors(survivors)?;
    if survivors.len() < survivors.params().n() as usize || !graph_has_cycle(&g) {
        return Err(not_universal(UKind::Cycle, survivors));
    }
    let start = g.tail(g.edges()[0]);
    let nodes = eulerian_node_sequence(&g, start)
        .ok_or_else(|| Error::NotUniversal("cycle did not cover every word".into()))?;
    let mut letters = trail_letters(&g, &nodes);
    letters.truncate(survivors.len());
    Ok(UObject {
        kind: UKind::Cycle,
        params: survivors.params(),
        letters,
    })
}

pub fn construct(kind: UKind, survivors: &WordSet) -> Result<UObject> {
    match kind {
        UKind::Cycle => construct_u_cycle(survivors),
        UKind::Word => construct_u_word(survivors),
    }
}

/// True iff the windows of `candidate` list `survivors` exactly once each.
pub fn verify_u_object(candidate: &UObject, survivors: &WordSet) -> bool {
    let p = survivors.params();
    if candidate.params != p || candidate.letters.iter().any(|&x| x >= p.k()) {
        return false;
    }
    let n = p.n() as usize;
    let len = candidate.letters.len();
    let windows = match candidate.kind {
        UKind::Cycle => {
            if len != survivors.len() || len < n {
                return false;
            }
            len
        }
        UKind::Word => {
            if len < n || len - n + 1 != survivors.len() {
                return false;
            }
            len - n + 1
        }
    };
    let k = p.k() as u64;
    let mut codes: Vec<u64> = (0..windows)
        .map(|i| {
            (0..n).fold(0u64, |acc, j| acc * k + candidate.letters[(i + j) % len] as u64)
        })
        .collect();
    codes.sort_unstable();
    codes == survivors.codes()
}
