//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails. Every comparison is exact (zero tolerance)
//! except the wall-clock gate in criterion 10, which is pinned at 60 seconds.

use std::process::Command;
use std::time::{Duration, Instant};

use ucycle::bounds::{
    bound_report, enumerate_removal_families, pc_exact_s2, pw_exact_s2, s_count, t_count, verify_circular_lemma,
    FamilyScheme,
};
use ucycle::enumerate::{
    count_favorable_chunk, exact_probability_with, visit_favorable, ScanOptions, DEFAULT_WORK_CAP,
};
use ucycle::graph::DbSubgraph;
use ucycle::structure::{verify_ham_edge_theorem, verify_menger_theorem, DEFAULT_GRID};
use ucycle::universal::{construct, u_cycle_exists, verify_u_object, UKind};
use ucycle::words::{BigCount, ExactRational, Params, WordSet};

const TIME_LIMIT: Duration = Duration::from_secs(60);
const S2_GRID: [(u32, u32); 7] = [(2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3), (2, 4)];

const N2_PC: [&str; 3] = ["1/2", "1/6", "0"];
const N2_PW: [&str; 3] = ["1", "5/6", "1"];
const N3_PC: [&str; 7] = ["1/4", "1/14", "1/28", "3/70", "1/28", "0", "0"];
const N3_PW: [&str; 7] = ["1", "5/7", "13/28", "5/14", "5/14", "13/28", "1"];
const N4_PC: [&str; 15] = [
    "1/8", "1/60", "1/140", "3/910", "1/546", "1/728", "1/1144", "1/1287", "1/1430", "1/1144", "1/728", "3/1820",
    "1/280", "0", "0",
];
const N4_PW: [&str; 15] = [
    "1", "13/30", "13/70", "1/10", "23/364", "355/8008", "199/5720", "62/2145", "153/5720", "31/1144", "3/91",
    "1/20", "13/140", "29/120", "1",
];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn opts() -> ScanOptions {
    ScanOptions::default()
}

fn exact(n: u32, k: u32, s: u64, kind: UKind) -> ExactRational {
    exact_probability_with(n, k, s, kind, &opts())
        .unwrap_or_else(|e| panic!("exact({n},{k},{s},{kind}): {e}"))
        .probability
}

fn table_column(n: u32, k: u32, kind: &str) -> Result<Vec<String>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ucycle"))
        .args(["table", "--n", &n.to_string(), "--k", &k.to_string(), "--kind", kind])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let mut lines = text.lines();
    if lines.next() != Some("s,probability") {
        return Err("missing CSV header".into());
    }
    lines
        .enumerate()
        .map(|(i, l)| match l.split_once(',') {
            Some((s, p)) if s == (i + 1).to_string() => Ok(p.to_string()),
            _ => Err(format!("bad row {l:?}")),
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let cases: [(u32, &str, &[&str]); 6] = [
        (2, "cycle", &N2_PC),
        (2, "word", &N2_PW),
        (3, "cycle", &N3_PC),
        (3, "word", &N3_PW),
        (4, "cycle", &N4_PC),
        (4, "word", &N4_PW),
    ];
    let mut cells = 0;
    for (n, kind, expected) in cases {
        let got = table_column(n, 2, kind)?;
        if got != expected {
            return Err(format!("n={n} {kind}: got {got:?}, expected {expected:?}"));
        }
        cells += got.len();
    }
    Ok(format!("{cells} table cells reproduced exactly"))
}

fn criterion_2() -> Outcome {
    for (n, k) in S2_GRID {
        let pc = pc_exact_s2(n, k).map_err(|e| e.to_string())?;
        let pw = pw_exact_s2(n, k).map_err(|e| e.to_string())?;
        let (ec, ew) = (exact(n, k, 2, UKind::Cycle), exact(n, k, 2, UKind::Word));
        if pc != ec || pw != ew {
            return Err(format!("({n},{k}): formulas {pc}, {pw}; enumeration {ec}, {ew}"));
        }
    }
    Ok(format!("{} instances, both kinds", S2_GRID.len()))
}

fn criterion_3() -> Outcome {
    let sweep: Vec<(u32, u32, u64)> = (1..=6)
        .map(|s| (5, 2, s))
        .chain([2, 3].into_iter().flat_map(|n| (1..=4).map(move |s| (n, 3, s))))
        .collect();
    let mut compared = 0;
    let mut violations = Vec::new();
    for (n, k, s) in sweep {
        let report = bound_report(n, k, s).map_err(|e| e.to_string())?;
        let mut truth = [None, None];
        for (formula, eval) in report.applicable() {
            let slot = &mut truth[(formula.kind() == UKind::Word) as usize];
            let exact_value = slot.get_or_insert_with(|| exact(n, k, s, formula.kind())).clone();
            compared += 1;
            let ok = if formula.is_exact() {
                eval.value == exact_value
            } else {
                eval.value <= exact_value
            };
            if !ok {
                violations.push(format!("{formula}({n},{k},{s}) = {} vs exact {exact_value}", eval.value));
            }
        }
    }
    if violations.is_empty() {
        Ok(format!("{compared} applicable values, zero violations"))
    } else {
        Err(format!("{} violations: {}", violations.len(), violations.join("; ")))
    }
}

fn criterion_4() -> Outcome {
    let mut zero_cells = 0;
    for (n, k) in S2_GRID {
        let p = Params::new(n, k).unwrap();
        if exact(n, k, 1, UKind::Word) != ExactRational::one() {
            return Err(format!("P_w({n},{k},1) != 1"));
        }
        let expected = ExactRational::ratio(&1.into(), &p.node_count().into()).unwrap();
        if exact(n, k, 1, UKind::Cycle) != expected {
            return Err(format!("P_c({n},{k},1) != {expected}"));
        }
        for s in p.word_count() - n as u64 + 1..=p.word_count() {
            if !exact(n, k, s, UKind::Cycle).is_zero() {
                return Err(format!("P_c({n},{k},{s}) != 0"));
            }
            zero_cells += 1;
        }
    }
    Ok(format!("s=1 facts on {} instances, {zero_cells} zero cells", S2_GRID.len()))
}

fn check_families(n: u32, k: u32, s: u64, scheme: FamilyScheme, expected: BigCount) -> Result<u64, String> {
    let p = Params::new(n, k).unwrap();
    let mut count = 0u64;
    for fam in enumerate_removal_families(n, k, s, scheme).map_err(|e| e.to_string())? {
        count += 1;
        let survivors = WordSet::complement_of(p, &fam.removal).unwrap();
        let strong = DbSubgraph::from_survivors(&survivors).unwrap().is_strongly_connected_on_support();
        if fam.removal.len() as u64 != s || !u_cycle_exists(&survivors).unwrap() || !strong {
            return Err(format!("({n},{k},{s}) family {} fails", fam.describe()));
        }
    }
    if BigCount::from(count) != expected {
        return Err(format!("({n},{k},{s}): {count} families, closed form {expected}"));
    }
    Ok(count)
}

fn criterion_5() -> Outcome {
    let mut total = 0;
    for (n, k) in [(3, 3), (4, 3), (3, 4)] {
        for s in 1..=4 {
            total += check_families(n, k, s, FamilyScheme::General, s_count(n, k, s).unwrap())?;
        }
    }
    for n in [5, 6] {
        for s in 1..=n as u64 {
            total += check_families(n, 2, s, FamilyScheme::K2, t_count(n, s).unwrap())?;
        }
    }
    Ok(format!("{total} families, counts match, all admit u-cycles"))
}

fn criterion_6() -> Outcome {
    let workers = opts().workers;
    let mut cases = 0;
    for (n, k) in DEFAULT_GRID {
        let p = Params::new(n, k).unwrap();
        let ham = verify_ham_edge_theorem(p, workers).map_err(|e| e.to_string())?;
        let want = if k == 2 { 2 } else { 0 };
        if !ham.confirmed() || ham.exceptions != want {
            return Err(format!("ham-edge ({n},{k}): {ham:?}"));
        }
        let menger = verify_menger_theorem(p, workers).map_err(|e| e.to_string())?;
        if !menger.confirmed() {
            return Err(format!("menger ({n},{k}): {:?}", menger.violations));
        }
        cases += ham.cases_checked + menger.cases_checked;
    }
    Ok(format!("{cases} cases on {} instances, zero violations", DEFAULT_GRID.len()))
}

fn criterion_7() -> Outcome {
    let r = verify_circular_lemma(14).map_err(|e| e.to_string())?;
    if r.confirmed() {
        Ok(format!("{} (k, i) pairs", r.cases_checked))
    } else {
        Err(format!("{:?}", r.violations))
    }
}

fn criterion_8() -> Outcome {
    let p = Params::new(4, 2).unwrap();
    let mut built = 0u64;
    let mut failures = Vec::new();
    for kind in [UKind::Cycle, UKind::Word] {
        for s in 1..p.word_count() {
            visit_favorable(4, 2, s, kind, DEFAULT_WORK_CAP, |removal| {
                let removed = WordSet::from_codes(p, removal.iter().copied()).unwrap();
                let survivors = WordSet::complement_of(p, &removed).unwrap();
                built += 1;
                match construct(kind, &survivors) {
                    Ok(w) if verify_u_object(&w, &survivors) => {}
                    other => failures.push(format!("{kind} s={s} {removal:?}: {other:?}")),
                }
            })
            .map_err(|e| e.to_string())?;
        }
    }
    if failures.is_empty() {
        Ok(format!("{built} constructions verified"))
    } else {
        Err(format!("{} failures, first: {}", failures.len(), failures[0]))
    }
}

fn criterion_9() -> Outcome {
    let (n, k, s, kind) = (4, 2, 8, UKind::Word);
    let run = |workers: usize, chunks: Option<usize>| {
        exact_probability_with(n, k, s, kind, &ScanOptions { workers, chunks, work_cap: DEFAULT_WORK_CAP })
            .unwrap()
            .favorable
    };
    let reference = run(1, Some(1));
    for workers in [1, 2, 4, 8] {
        for chunks in [None, Some(1), Some(3), Some(7), Some(64), Some(12870)] {
            let got = run(workers, chunks);
            if got != reference {
                return Err(format!("workers={workers} chunks={chunks:?}: {got} != {reference}"));
            }
        }
    }
    // an uneven hand-made partition of the rank range
    let cuts = [0u64, 1, 17, 4000, 4001, 9999, 12870];
    let summed: BigCount = cuts
        .windows(2)
        .map(|w| count_favorable_chunk(n, k, s, kind, &w[0].into(), &w[1].into()).unwrap())
        .sum();
    if summed != reference {
        return Err(format!("uneven partition sums to {summed}, expected {reference}"));
    }
    Ok(format!("favorable = {reference} for 1, 2, 4, 8 workers and every partition"))
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let r = exact_probability_with(5, 2, 6, UKind::Word, &opts()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if r.total != BigCount::from(906_192) {
        return Err(format!("total {} != 906192", r.total));
    }
    if elapsed < TIME_LIMIT {
        Ok(format!("P_w(5,2,6) = {} in {:.2?} (limit {TIME_LIMIT:?})", r.probability, elapsed))
    } else {
        Err(format!("took {elapsed:.2?}, limit {TIME_LIMIT:?}"))
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("table reproduction", criterion_1),
        ("s=2 exact values vs enumeration", criterion_2),
        ("bound dominance sweep", criterion_3),
        ("s=1 facts and vanishing P_c", criterion_4),
        ("witness families", criterion_5),
        ("structural theorems", criterion_6),
        ("circular-string lemma", criterion_7),
        ("constructor round trip", criterion_8),
        ("determinism under parallelism", criterion_9),
        ("performance gate", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
