//! Subgraphs of the de Bruijn graph `B(m, k)`.
//!
//! Nodes are words of length `m`; an edge is a word `e` of length `m + 1`
//! running from its prefix `e / k` to its suffix `e % k^m`. Removing words of
//! length `n` from `A^n` therefore removes edges of `B(n - 1, k)`, and the
//! surviving words have a u-cycle (u-word) exactly when the surviving edges
//! carry an Eulerian cycle (trail).

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::words::{letters_of, WordSet, WORD_SPACE_CAP};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DbSubgraph {
    m: u32,
    k: u32,
    node_count: u64,
    edges: Vec<u64>,
    present: Vec<bool>,
    out_deg: Vec<u32>,
    in_deg: Vec<u32>,
}

/// Loop / special classification of a node `x_1..x_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NodeClass {
    /// `x^m`.
    pub is_loop: bool,
    /// `y x^{m-1}` with `y != x`.
    pub is_out_special: bool,
    /// `x^{m-1} y` with `y != x`.
    pub is_in_special: bool,
}

impl DbSubgraph {
    fn empty(m: u32, k: u32) -> Result<Self> {
        if m < 1 || k < 2 {
            return Err(Error::InvalidParams(format!(
                "de Bruijn graph needs m >= 1 and k >= 2, got m={m}, k={k}"
            )));
        }
        let edge_space = (k as u64)
            .checked_pow(m + 1)
            .filter(|&e| e <= WORD_SPACE_CAP)
            .ok_or_else(|| {
                Error::CapExceeded(format!(
                    "B({m},{k}) has more than {WORD_SPACE_CAP} edges"
                ))
            })?;
        let node_count = edge_space / k as u64;
        Ok(DbSubgraph {
            m,
            k,
            node_count,
            edges: Vec::new(),
            present: vec![false; edge_space as usize],
            out_deg: vec![0; node_count as usize],
            in_deg: vec![0; node_count as usize],
        })
    }

    fn with_edges<I: IntoIterator<Item = u64>>(m: u32, k: u32, edges: I) -> Result<Self> {
        let mut g = Self::empty(m, k)?;
        for e in edges {
            let (t, h) = (g.tail(e), g.head(e));
            g.present[e as usize] = true;
            g.out_deg[t as usize] += 1;
            g.in_deg[h as usize] += 1;
            g.edges.push(e);
        }
        Ok(g)
    }

    /// The complete de Bruijn graph `B(m, k)`.
    pub fn full(m: u32, k: u32) -> Result<Self> {
        let edge_space = (k as u64).checked_pow(m + 1).unwrap_or(u64::MAX);
        Self::with_edges(m, k, 0..edge_space)
    }

    /// The subgraph of `B(n - 1, k)` whose edges are exactly the surviving words.
    pub fn from_survivors(survivors: &WordSet) -> Result<Self> {
        let p = survivors.params();
        Self::with_edges(p.n() - 1, p.k(), survivors.codes().iter().copied())
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn node_count(&self) -> u64 {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge codes in ascending order.
    pub fn edges(&self) -> &[u64] {
        &self.edges
    }

    pub fn has_edge(&self, e: u64) -> bool {
        self.present.get(e as usize).copied().unwrap_or(false)
    }

    pub fn tail(&self, e: u64) -> u64 {
        e / self.k as u64
    }

    pub fn head(&self, e: u64) -> u64 {
        e % self.node_count
    }

    pub fn out_deg(&self, v: u64) -> u32 {
        self.out_deg[v as usize]
    }

    pub fn in_deg(&self, v: u64) -> u32 {
        self.in_deg[v as usize]
    }

    /// Present edges leaving `v`, smallest code first.
    pub fn out_edges(&self, v: u64) -> impl Iterator<Item = u64> + '_ {
        let base = v * self.k as u64;
        (base..base + self.k as u64).filter(move |&e| self.present[e as usize])
    }

    /// Present edges entering `v`.
    pub fn in_edges(&self, v: u64) -> impl Iterator<Item = u64> + '_ {
        let n = self.node_count;
        (0..self.k as u64)
            .map(move |c| c * n + v)
            .filter(move |&e| self.present[e as usize])
    }

    pub fn is_balanced(&self) -> bool {
        self.out_deg == self.in_deg
    }

    /// `(node, out_deg - in_deg)` for every node where this is nonzero.
    pub fn degree_defects(&self) -> Vec<(u64, i64)> {
        self.out_deg
            .iter()
            .zip(&self.in_deg)
            .enumerate()
            .filter(|(_, (o, i))| o != i)
            .map(|(v, (&o, &i))| (v as u64, o as i64 - i as i64))
            .collect()
    }

    fn on_support(&self, v: u64) -> bool {
        self.out_deg[v as usize] + self.in_deg[v as usize] > 0
    }

    fn support(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.node_count).filter(|&v| self.on_support(v))
    }

    /// Number of weakly connected components among nodes that touch an edge.
    pub fn support_component_count(&self) -> usize {
        let mut seen = vec![false; self.node_count as usize];
        let mut count = 0;
        for start in 0..self.node_count {
            if seen[start as usize] || !self.on_support(start) {
                continue;
            }
            count += 1;
            seen[start as usize] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let outs = self.out_edges(v).map(|e| self.head(e));
                let ins = self.in_edges(v).map(|e| self.tail(e));
                for w in outs.chain(ins).collect::<Vec<_>>() {
                    if !std::mem::replace(&mut seen[w as usize], true) {
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    /// Weak connectivity over nodes of positive degree. A graph with no edges
    /// is reported as not connected.
    pub fn is_connected_on_support(&self) -> bool {
        !self.edges.is_empty() && self.support_component_count() == 1
    }

    fn reaches_all_support(&self, start: u64, forward: bool) -> bool {
        let mut seen = vec![false; self.node_count as usize];
        seen[start as usize] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let next: Vec<u64> = if forward {
                self.out_edges(v).map(|e| self.head(e)).collect()
            } else {
                self.in_edges(v).map(|e| self.tail(e)).collect()
            };
            for w in next {
                if !std::mem::replace(&mut seen[w as usize], true) {
                    stack.push(w);
                }
            }
        }
        self.support().all(|v| seen[v as usize])
    }

    /// Strong connectivity over nodes of positive degree; false with no edges.
    pub fn is_strongly_connected_on_support(&self) -> bool {
        let Some(start) = self.support().next() else {
            return false;
        };
        self.reaches_all_support(start, true) && self.reaches_all_support(start, false)
    }

    pub fn classify(&self, node: u64) -> NodeClass {
        classify_node(self.m, self.k, node)
    }
}

/// Classifies `node` (a word of length `m`). For `m = 1` every node is a loop
/// and none is special.
pub fn classify_node(m: u32, k: u32, node: u64) -> NodeClass {
    let x = letters_of(node, m, k);
    let all_same = |s: &[u32]| s.windows(2).all(|w| w[0] == w[1]);
    let is_loop = all_same(&x);
    if m < 2 {
        return NodeClass {
            is_loop,
            ..NodeClass::default()
        };
    }
    let last = x.len() - 1;
    NodeClass {
        is_loop,
        is_out_special: all_same(&x[1..]) && x[0] != x[1],
        is_in_special: all_same(&x[..last]) && x[last] != x[last - 1],
    }
}
