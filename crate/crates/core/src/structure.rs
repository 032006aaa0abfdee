//! Exhaustive checks of two structural facts about full de Bruijn graphs
//! `B(n, k)` (nodes are words of length `n`):
//!
//! * every edge `a -> b` between distinct nodes lies on a Hamiltonian cycle,
//!   except when `k = 2`, `a` is out-special and `b` is in-special;
//! * between distinct non-loop nodes `u`, `v` there are `k` internally
//!   node-disjoint paths iff `u` is not out-special and `v` is not in-special.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::classify_node;
use crate::par::map_ordered;
use crate::words::{Params, Word};

/// Largest `k^n` for Hamiltonian search and path counting.
pub const STRUCTURE_CAP: u64 = 4096;

/// The graph sizes on which both facts are routinely verified.
pub const DEFAULT_GRID: [(u32, u32); 6] = [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (2, 4)];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub case: String,
    pub expected: String,
    pub observed: String,
}

/// Outcome of an exhaustive check on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub n: u32,
    pub k: u32,
    pub cases_checked: u64,
    /// Cases where the statement predicts a negative outcome.
    pub exceptions: u64,
    pub violations: Vec<Violation>,
}

impl TheoremReport {
    pub fn confirmed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_size(params: Params) -> Result<()> {
    if params.word_count() > STRUCTURE_CAP {
        return Err(Error::CapExceeded(format!(
            "k^n = {} exceeds the structure cap {STRUCTURE_CAP}",
            params.word_count()
        )));
    }
    Ok(())
}

/// A Hamiltonian cycle of `B(n, k)` using the edge `a -> b`, as the node
/// sequence starting `a, b, ..`; `None` if there is none. Backtracking takes
/// successors in code order.
pub fn hamiltonian_cycle_through_edge(params: Params, a: Word, b: Word) -> Result<Option<Vec<Word>>> {
    check_size(params)?;
    let n_nodes = params.word_count();
    let k = params.k() as u64;
    if a.params() != params || b.params() != params || (a.code() * k) % n_nodes != b.code() - b.code() % k {
        return Err(Error::NotAnEdge {
            tail: a.to_string(),
            head: b.to_string(),
        });
    }
    if a == b {
        return Ok(None);
    }
    let cycle = hamiltonian_search(n_nodes, k, a.code(), b.code());
    Ok(cycle.map(|codes| {
        codes
            .into_iter()
            .map(|c| params.word(c).expect("code in range"))
            .collect()
    }))
}

fn hamiltonian_search(n_nodes: u64, k: u64, a: u64, b: u64) -> Option<Vec<u64>> {
    struct Frame {
        node: u64,
        next_letter: u64,
        forced: Option<u64>,
    }

    let total = n_nodes as usize;
    let succ = |v: u64, c: u64| (v * k) % n_nodes + c;
    let mut visited = vec![false; total];
    // Unvisited in-neighbours per node. Once a node's count drops to zero,
    // the node just entered is its last way in, so it must come next; two
    // such nodes at once is a dead end.
    let mut free_in = vec![0u32; total];
    for v in 0..n_nodes {
        for c in 0..k {
            let w = succ(v, c);
            if w != v {
                free_in[w as usize] += 1;
            }
        }
    }

    let enter = |v: u64, visited: &mut [bool], free_in: &mut [u32]| -> (bool, Option<u64>) {
        visited[v as usize] = true;
        let mut forced = None;
        let mut dead = false;
        for c in 0..k {
            let w = succ(v, c);
            if w == v {
                continue;
            }
            free_in[w as usize] -= 1;
            if free_in[w as usize] == 0 && !visited[w as usize] {
                dead |= forced.is_some();
                forced = Some(w);
            }
        }
        (dead, forced)
    };
    let leave = |v: u64, visited: &mut [bool], free_in: &mut [u32]| {
        visited[v as usize] = false;
        for c in 0..k {
            let w = succ(v, c);
            if w != v {
                free_in[w as usize] += 1;
            }
        }
    };
    let closes = |v: u64| (0..k).any(|c| succ(v, c) == a);

    let (dead, forced) = enter(a, &mut visited, &mut free_in);
    if dead || forced.is_some_and(|w| w != b) {
        return None;
    }
    let (dead, forced) = enter(b, &mut visited, &mut free_in);
    let mut path = vec![a, b];
    let mut stack = vec![Frame {
        node: b,
        next_letter: if dead { k } else { 0 },
        forced,
    }];

    while let Some(top) = stack.last_mut() {
        if path.len() == total {
            if closes(top.node) {
                return Some(path);
            }
            top.next_letter = k;
        }
        let candidate = match top.forced {
            Some(w) if top.next_letter == 0 => {
                top.next_letter = k;
                Some(w)
            }
            Some(_) => None,
            None => loop {
                if top.next_letter >= k {
                    break None;
                }
                let w = succ(top.node, top.next_letter);
                top.next_letter += 1;
                if w != top.node && !visited[w as usize] {
                    break Some(w);
                }
            },
        };
        match candidate {
            Some(w) => {
                let (dead, forced) = enter(w, &mut visited, &mut free_in);
                path.push(w);
                stack.push(Frame {
                    node: w,
                    next_letter: if dead { k } else { 0 },
                    forced,
                });
            }
            None => {
                let node = top.node;
                leave(node, &mut visited, &mut free_in);
                stack.pop();
                path.pop();
            }
        }
    }
    None
}

/// Exhaustively checks the Hamiltonian-cycle-through-an-edge statement on
/// every non-loop edge of `B(n, k)`.
pub fn verify_ham_edge_theorem(params: Params, workers: usize) -> Result<TheoremReport> {
    check_size(params)?;
    let n_nodes = params.word_count();
    let k = params.k() as u64;
    let edges: Vec<(u64, u64)> = (0..n_nodes)
        .flat_map(|a| (0..k).map(move |c| (a, (a * k) % n_nodes + c)))
        .filter(|(a, b)| a != b)
        .collect();
    let outcomes = map_ordered(edges, workers, |(a, b)| {
        let ca = classify_node(params.n(), params.k(), a);
        let cb = classify_node(params.n(), params.k(), b);
        let expected = !(params.k() == 2 && ca.is_out_special && cb.is_in_special);
        let found = hamiltonian_search(n_nodes, k, a, b);
        let valid = found.as_ref().map(|p| is_hamiltonian_through(p, n_nodes, k, a, b));
        (a, b, expected, found.is_some(), valid)
    });

    let mut report = TheoremReport {
        theorem: "ham-edge".into(),
        n: params.n(),
        k: params.k(),
        cases_checked: outcomes.len() as u64,
        exceptions: 0,
        violations: Vec::new(),
    };
    for (a, b, expected, observed, valid) in outcomes {
        if !expected {
            report.exceptions += 1;
        }
        let case = format!(
            "{}->{}",
            params.word(a).expect("code"),
            params.word(b).expect("code")
        );
        if expected != observed {
            report.violations.push(Violation {
                case,
                expected: if expected { "cycle" } else { "none" }.into(),
                observed: if observed { "cycle" } else { "none" }.into(),
            });
        } else if valid == Some(false) {
            report.violations.push(Violation {
                case,
                expected: "valid cycle".into(),
                observed: "invalid cycle".into(),
            });
        }
    }
    Ok(report)
}

fn is_hamiltonian_through(path: &[u64], n_nodes: u64, k: u64, a: u64, b: u64) -> bool {
    let mut seen = vec![false; n_nodes as usize];
    let distinct = path.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true));
    let linked = (0..path.len()).all(|i| {
        let (x, y) = (path[i], path[(i + 1) % path.len()]);
        (x * k) % n_nodes == y - y % k
    });
    distinct && linked && path.len() as u64 == n_nodes && path[0] == a && path[1] == b
}

/// Whether loop nodes `x^n` may serve as interior path nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LoopPolicy {
    /// Interior nodes are non-loop nodes only (the setting of the statement).
    #[default]
    Exclude,
    Allow,
}

struct FlowNet {
    head: Vec<usize>,
    cap: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: u32) {
        self.adj[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.adj[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    /// Edmonds-Karp with unit augmentations.
    fn max_flow(&mut self, source: usize, sink: usize) -> u32 {
        let mut flow = 0;
        loop {
            let mut via = vec![usize::MAX; self.adj.len()];
            let mut queue = VecDeque::from([source]);
            let mut reached = false;
            while let Some(x) = queue.pop_front() {
                for &e in &self.adj[x] {
                    let y = self.head[e];
                    if self.cap[e] > 0 && via[y] == usize::MAX && y != source {
                        via[y] = e;
                        if y == sink {
                            reached = true;
                            break;
                        }
                        queue.push_back(y);
                    }
                }
                if reached {
                    break;
                }
            }
            if !reached {
                return flow;
            }
            let mut y = sink;
            while y != source {
                let e = via[y];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                y = self.head[e ^ 1];
            }
            flow += 1;
        }
    }
}

/// Internally node-disjoint `u -> v` paths of maximum number in `B(n, k)`,
/// each given as a node-code sequence from `u` to `v`.
pub fn node_disjoint_paths(params: Params, u: Word, v: Word, policy: LoopPolicy) -> Result<Vec<Vec<u64>>> {
    check_size(params)?;
    let (n, kk) = (params.n(), params.k());
    if u == v || u.params() != params || v.params() != params {
        return Err(Error::InvalidParams(format!("need two distinct nodes, got {u} and {v}")));
    }
    if classify_node(n, kk, u.code()).is_loop || classify_node(n, kk, v.code()).is_loop {
        return Err(Error::InvalidParams(format!("{u} and {v} must not be loops")));
    }
    let n_nodes = params.word_count() as usize;
    let k = kk as usize;
    let (su, sv) = (u.code() as usize, v.code() as usize);
    // node x splits into x_in = 2x and x_out = 2x + 1
    let mut net = FlowNet::new(2 * n_nodes);
    for x in 0..n_nodes {
        let through = if x == su || x == sv {
            k as u32
        } else if policy == LoopPolicy::Exclude && classify_node(n, kk, x as u64).is_loop {
            0
        } else {
            1
        };
        net.add(2 * x, 2 * x + 1, through);
        for c in 0..k {
            let y = (x * k) % n_nodes + c;
            if y != x {
                net.add(2 * x + 1, 2 * y, 1);
            }
        }
    }
    let flow = net.max_flow(2 * su + 1, 2 * sv);

    // Peel paths off the saturated out->in arcs.
    let mut used: Vec<bool> = (0..net.head.len())
        .map(|e| e.is_multiple_of(2) && net.cap[e ^ 1] > 0 && net.head[e].is_multiple_of(2) && !net.head[e ^ 1].is_multiple_of(2))
        .collect();
    let mut paths = Vec::with_capacity(flow as usize);
    for _ in 0..flow {
        let mut path = vec![su as u64];
        let mut x = su;
        while x != sv {
            let e = net.adj[2 * x + 1]
                .iter()
                .copied()
                .find(|&e| used[e])
                .expect("flow conservation");
            used[e] = false;
            x = net.head[e] / 2;
            path.push(x as u64);
        }
        paths.push(path);
    }
    Ok(paths)
}

/// Maximum number of internally node-disjoint `u -> v` paths.
pub fn max_node_disjoint_paths(params: Params, u: Word, v: Word, policy: LoopPolicy) -> Result<u32> {
    Ok(node_disjoint_paths(params, u, v, policy)?.len() as u32)
}

/// Checks, for every ordered pair of distinct non-loop nodes, that there are
/// `k` disjoint paths exactly when `u` is not out-special and `v` is not
/// in-special.
pub fn verify_menger_theorem(params: Params, workers: usize) -> Result<TheoremReport> {
    check_size(params)?;
    let (n, k) = (params.n(), params.k());
    let nodes: Vec<u64> = (0..params.word_count())
        .filter(|&x| !classify_node(n, k, x).is_loop)
        .collect();
    let pairs: Vec<(u64, u64)> = nodes
        .iter()
        .flat_map(|&u| nodes.iter().filter(move |&&v| v != u).map(move |&v| (u, v)))
        .collect();
    let outcomes = map_ordered(pairs, workers, |(u, v)| {
        let (wu, wv) = (params.word(u).expect("code"), params.word(v).expect("code"));
        let expected = !classify_node(n, k, u).is_out_special && !classify_node(n, k, v).is_in_special;
        let count = max_node_disjoint_paths(params, wu, wv, LoopPolicy::Exclude).expect("valid pair");
        (wu, wv, expected, count)
    });
    let mut report = TheoremReport {
        theorem: "menger".into(),
        n,
        k,
        cases_checked: outcomes.len() as u64,
        exceptions: 0,
        violations: Vec::new(),
    };
    for (u, v, expected, count) in outcomes {
        if !expected {
            report.exceptions += 1;
        }
        if (count == k) != expected {
            report.violations.push(Violation {
                case: format!("{u}->{v}"),
                expected: if expected { format!("{k} paths") } else { format!("< {k} paths") },
                observed: format!("{count} paths"),
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: Params, text: &str) -> Word {
        p.parse_word(text).unwrap()
    }

    #[test]
    fn ham_cycle_examples() {
        let p = Params::new(3, 2).unwrap();
        assert_eq!(hamiltonian_cycle_through_edge(p, w(p, "100"), w(p, "001")).unwrap(), None);
        let cyc = hamiltonian_cycle_through_edge(p, w(p, "000"), w(p, "001")).unwrap().unwrap();
        assert_eq!(cyc.len(), 8);
        assert_eq!((cyc[0], cyc[1]), (w(p, "000"), w(p, "001")));
        assert!(matches!(
            hamiltonian_cycle_through_edge(p, w(p, "000"), w(p, "011")),
            Err(Error::NotAnEdge { .. })
        ));

        let p = Params::new(2, 3).unwrap();
        for a in 0..9 {
            for c in 0..3 {
                let b = (a * 3) % 9 + c;
                let found = hamiltonian_cycle_through_edge(p, p.word(a).unwrap(), p.word(b).unwrap()).unwrap();
                assert_eq!(found.is_some(), a != b, "{a}->{b}");
            }
        }
        assert!(hamiltonian_cycle_through_edge(Params::new(13, 2).unwrap(), w(Params::new(13, 2).unwrap(), "0000000000000"), w(Params::new(13, 2).unwrap(), "0000000000001")).is_err());
    }

    /// Plain backtracking without pruning; answers whether any Hamiltonian
    /// cycle uses a -> b.
    fn brute_ham(n_nodes: u64, k: u64, a: u64, b: u64) -> bool {
        fn go(path: &mut Vec<u64>, seen: &mut [bool], n_nodes: u64, k: u64) -> bool {
            let top = *path.last().unwrap();
            if path.len() as u64 == n_nodes {
                return (0..k).any(|c| (top * k) % n_nodes + c == path[0]);
            }
            for c in 0..k {
                let x = (top * k) % n_nodes + c;
                if !seen[x as usize] {
                    seen[x as usize] = true;
                    path.push(x);
                    if go(path, seen, n_nodes, k) {
                        return true;
                    }
                    path.pop();
                    seen[x as usize] = false;
                }
            }
            false
        }
        let mut seen = vec![false; n_nodes as usize];
        seen[a as usize] = true;
        seen[b as usize] = true;
        go(&mut vec![a, b], &mut seen, n_nodes, k)
    }

    #[test]
    fn pruned_search_agrees_with_plain_backtracking() {
        for (n, k) in [(2u32, 2u32), (3, 2), (4, 2), (2, 3), (2, 4)] {
            let p = Params::new(n, k).unwrap();
            let (nn, kk) = (p.word_count(), k as u64);
            for a in 0..nn {
                for c in 0..kk {
                    let b = (a * kk) % nn + c;
                    if a != b {
                        assert_eq!(hamiltonian_search(nn, kk, a, b).is_some(), brute_ham(nn, kk, a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn ham_edge_reports() {
        let r = verify_ham_edge_theorem(Params::new(3, 2).unwrap(), 2).unwrap();
        assert!(r.confirmed(), "{r:?}");
        assert_eq!((r.cases_checked, r.exceptions), (14, 2));
        let r = verify_ham_edge_theorem(Params::new(2, 3).unwrap(), 2).unwrap();
        assert!(r.confirmed());
        assert_eq!(r.exceptions, 0);
    }

    #[test]
    fn disjoint_path_examples() {
        let p = Params::new(3, 2).unwrap();
        assert_eq!(max_node_disjoint_paths(p, w(p, "010"), w(p, "101"), LoopPolicy::Exclude).unwrap(), 2);
        assert_eq!(max_node_disjoint_paths(p, w(p, "010"), w(p, "101"), LoopPolicy::Allow).unwrap(), 2);
        assert!(max_node_disjoint_paths(p, w(p, "100"), w(p, "010"), LoopPolicy::Exclude).unwrap() <= 1);
        // 011 -> 110 directly and via the loop 111
        assert_eq!(max_node_disjoint_paths(p, w(p, "011"), w(p, "110"), LoopPolicy::Allow).unwrap(), 2);
        assert_eq!(max_node_disjoint_paths(p, w(p, "011"), w(p, "110"), LoopPolicy::Exclude).unwrap(), 1);

        let p = Params::new(2, 3).unwrap();
        // 01 is out-special when n = 2
        assert_eq!(max_node_disjoint_paths(p, w(p, "01"), w(p, "20"), LoopPolicy::Exclude).unwrap(), 2);
        assert_eq!(max_node_disjoint_paths(p, w(p, "01"), w(p, "20"), LoopPolicy::Allow).unwrap(), 2);

        assert!(max_node_disjoint_paths(p, w(p, "01"), w(p, "01"), LoopPolicy::Exclude).is_err());
        assert!(max_node_disjoint_paths(p, w(p, "00"), w(p, "01"), LoopPolicy::Exclude).is_err());
    }

    /// Largest family of pairwise internally disjoint simple u->v paths,
    /// found by enumerating all simple paths and searching packings.
    fn brute_packing(p: Params, u: u64, v: u64, policy: LoopPolicy) -> usize {
        let (nn, k) = (p.word_count(), p.k() as u64);
        let allowed = |x: u64| policy == LoopPolicy::Allow || !classify_node(p.n(), p.k(), x).is_loop;
        let mut all = Vec::new();
        let mut stack = vec![(vec![u], 0u64)];
        while let Some((path, _)) = stack.pop() {
            let top = *path.last().unwrap();
            for c in 0..k {
                let x = (top * k) % nn + c;
                if x == v {
                    let mut done = path.clone();
                    done.push(v);
                    all.push(done);
                } else if x != top && !path.contains(&x) && allowed(x) {
                    let mut next = path.clone();
                    next.push(x);
                    stack.push((next, 0));
                }
            }
        }
        all.sort();
        all.dedup();
        let interiors: Vec<u64> = all
            .iter()
            .map(|p| p[1..p.len() - 1].iter().fold(0u64, |m, &x| m | 1 << x))
            .collect();
        fn best(i: usize, used: u64, direct_used: bool, all: &[Vec<u64>], masks: &[u64]) -> usize {
            if i == all.len() {
                return 0;
            }
            let skip = best(i + 1, used, direct_used, all, masks);
            let is_direct = all[i].len() == 2;
            if masks[i] & used == 0 && !(is_direct && direct_used) {
                skip.max(1 + best(i + 1, used | masks[i], direct_used || is_direct, all, masks))
            } else {
                skip
            }
        }
        best(0, 0, false, &all, &interiors)
    }

    #[test]
    fn flow_matches_brute_force_packing() {
        for (n, k) in [(2u32, 2u32), (3, 2)] {
            let p = Params::new(n, k).unwrap();
            let nodes: Vec<u64> = (0..p.word_count()).filter(|&x| !classify_node(n, k, x).is_loop).collect();
            for &u in &nodes {
                for &v in &nodes {
                    if u == v {
                        continue;
                    }
                    for policy in [LoopPolicy::Exclude, LoopPolicy::Allow] {
                        let paths = node_disjoint_paths(p, p.word(u).unwrap(), p.word(v).unwrap(), policy).unwrap();
                        assert_eq!(paths.len(), brute_packing(p, u, v, policy), "{u}->{v} {policy:?}");
                        assert!(paths.len() <= k as usize);
                    }
                }
            }
        }
    }

    #[test]
    fn extracted_paths_are_disjoint_walks() {
        let p = Params::new(3, 3).unwrap();
        let (nn, k) = (p.word_count(), 3u64);
        for (u, v) in [(5u64, 7u64), (1, 21), (12, 14)] {
            let paths = node_disjoint_paths(p, p.word(u).unwrap(), p.word(v).unwrap(), LoopPolicy::Exclude).unwrap();
            let mut interior = std::collections::HashSet::new();
            for path in &paths {
                assert_eq!((path[0], *path.last().unwrap()), (u, v));
                for pair in path.windows(2) {
                    assert_eq!((pair[0] * k) % nn, pair[1] - pair[1] % k);
                }
                for &x in &path[1..path.len() - 1] {
                    assert!(interior.insert(x));
                    assert!(!classify_node(3, 3, x).is_loop);
                }
            }
        }
    }

    #[test]
    fn menger_small_reports() {
        let r = verify_menger_theorem(Params::new(3, 2).unwrap(), 2).unwrap();
        assert_eq!(r.cases_checked, 30);
        assert!(r.confirmed(), "{:?}", r.violations);
        let r = verify_menger_theorem(Params::new(2, 3).unwrap(), 2).unwrap();
        assert!(r.confirmed(), "{:?}", r.violations);
    }
}
