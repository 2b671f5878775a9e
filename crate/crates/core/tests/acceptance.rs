//! Acceptance suite: every criterion runs at zero tolerance and prints one
//! result line. Exits nonzero if any criterion fails unexpectedly.
//!
//! A criterion whose literal statement is contradicted by exact
//! computation is reported as `FAIL (known)` together with the exact
//! diagnosis; it only counts as expected when the diagnosis matches.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use qls_core::algebraic::{parse_rational, rat_int};
use qls_core::claims::{displayed_product_mismatches, slot1_sum_check, DISPLAYED_PRODUCTS, W2_W4_CORRECTED, W2_W4_LISTED_TYPO};
use qls_core::generators::{block_elements, generated, j_matrix, make_block_c, make_block_d, x_matrix, y_matrix};
use qls_core::square::{cardinality, cardinality_pairwise, count_new_elements};
use qls_core::synthesis::{execute_plan, high_diagonal_plan, plan, qls12_c105_plan, qls8_c57_plan, qls8_low_plan, qls8_low_table, synth, synth_qls8, QLS8_LOW_L};
use qls_core::{ElementSet, Error, GeneratorId, OrthoMatrix4, QVector, QlsGrid};
use rayon::prelude::*;

type Criterion<'a> = (usize, &'static str, Box<dyn Fn() -> Verdict + 'a>);

enum Verdict {
    Pass(String),
    Fail(String),
    KnownFail(String),
}

/// Records every grid the suite builds, for the oracle and `n+1` checks.
#[derive(Default)]
struct Tracker {
    grids: AtomicUsize,
    oracle_checked: AtomicUsize,
    oracle_mismatches: Mutex<Vec<String>>,
    n_plus_one: Mutex<Vec<String>>,
    errors: Mutex<Vec<String>>,
}

impl Tracker {
    /// Verifies and counts `grid`, cross-checking small grids against the
    /// pairwise oracle. Returns `None` if the grid is not a QLS.
    fn observe(&self, label: &str, grid: &QlsGrid) -> Option<usize> {
        self.grids.fetch_add(1, Ordering::Relaxed);
        if !grid.is_qls() {
            self.errors.lock().unwrap().push(format!("{label}: {}", grid.verify()));
            return None;
        }
        let c = cardinality(grid).ok()?.cardinality;
        if c == grid.order() + 1 {
            self.n_plus_one.lock().unwrap().push(label.to_string());
        }
        if grid.order() <= 16 {
            self.oracle_checked.fetch_add(1, Ordering::Relaxed);
            let pairwise = cardinality_pairwise(grid).ok();
            if pairwise != Some(c) {
                self.oracle_mismatches
                    .lock()
                    .unwrap()
                    .push(format!("{label}: canonical {c}, pairwise {pairwise:?}"));
            }
        }
        Some(c)
    }
}

fn rvec(text: &str) -> QVector {
    QVector::from_rationals(text.split_whitespace().map(|e| parse_rational(e).unwrap())).unwrap()
}

fn canon_set(rows: &[&str]) -> ElementSet {
    rows.iter().map(|r| rvec(r).canonicalize().unwrap()).collect()
}

fn elements(id: GeneratorId) -> ElementSet {
    generated(&id).unwrap().elements.clone()
}

fn criterion_1(t: &Tracker) -> Verdict {
    let mut total = 0;
    let mut bad = Vec::new();
    for m in 2..=5usize {
        let targets: Vec<usize> = (4 * m..=16 * m * m).filter(|&c| c != 4 * m + 1).collect();
        total += targets.len();
        let failures: Vec<String> = targets
            .par_iter()
            .filter_map(|&c| match synth(m, c) {
                Ok((_, grid)) => match t.observe(&format!("synth(m={m},c={c})"), &grid) {
                    Some(n) if n == c => None,
                    other => Some(format!("m={m} c={c}: counted {other:?}")),
                },
                Err(e) => Some(format!("m={m} c={c}: {e}")),
            })
            .collect();
        bad.extend(failures);
    }
    let detail = format!("{total} targets over m=2..5 synthesized, verified, counted exactly");
    if bad.is_empty() {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(format!("{detail}; failures: {bad:?}"))
    }
}

fn criterion_2(t: &Tracker) -> Verdict {
    let h0 = elements(GeneratorId::H(0));
    let base: ElementSet = h0.union(&elements(GeneratorId::H(1))).cloned().collect();
    let mut counts = Vec::new();
    for l in 2..=8u8 {
        let g = generated(&GeneratorId::H(l)).unwrap();
        t.observe(&format!("H({l})"), &g.grid);
        counts.push(count_new_elements(&g.grid, &base).unwrap());
    }
    let split: Vec<usize> = [make_block_c(&rat_int(0)), make_block_c(&rat_int(1)), make_block_d(&rat_int(0))]
        .iter()
        .map(|b| block_elements(b).difference(&h0).count())
        .collect();
    let detail = format!("new elements of H2..H8: {counts:?}; H5 split over C0, C1, D0: {split:?}");
    if counts == [2, 3, 4, 5, 6, 7, 8] && split == [1, 2, 2] {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn criterion_3(t: &Tracker) -> Verdict {
    let sets: Vec<ElementSet> = (1..=10i64)
        .map(|k| {
            let g = generated(&GeneratorId::w_pair(2 * k - 1, 2 * k)).unwrap();
            t.observe(&g.id.to_string(), &g.grid);
            g.elements.clone()
        })
        .collect();
    let mut bad = Vec::new();
    let mut pairs = 0;
    for k in 0..10 {
        for s in k + 1..10 {
            pairs += 1;
            if sets[k].len() != 16 || sets[k].union(&sets[s]).count() != 32 {
                bad.push((k + 1, s + 1));
            }
        }
    }
    let detail = format!("{pairs} pairs 1 <= k < t <= 10 checked, 32 distinct elements each");
    if bad.is_empty() {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(format!("{detail}; failures: {bad:?}"))
    }
}

fn criterion_4(t: &Tracker) -> Verdict {
    for id in [GeneratorId::W0, GeneratorId::Wk(1), GeneratorId::Wk(2), GeneratorId::Wk(3), GeneratorId::Wk(4)] {
        t.observe(&id.to_string(), &generated(&id).unwrap().grid);
    }
    let shared = |a: GeneratorId, b: GeneratorId| -> ElementSet { elements(a).intersection(&elements(b)).cloned().collect() };
    let p1 = shared(GeneratorId::W0, GeneratorId::Wk(1)) == canon_set(&["0 0 0 1"]);
    let p2 = shared(GeneratorId::W0, GeneratorId::Wk(2))
        == canon_set(&["0 0 1 0", "0 0 0 1", "0 0 -12/13 5/13", "0 0 5/13 12/13"]);
    let p3 = shared(GeneratorId::W0, GeneratorId::Wk(3)) == canon_set(&["0 0 0 1", "5/13 12/13 0 0"]);
    let p4_listed = [
        "0 0 1 0",
        "0 0 0 1",
        W2_W4_LISTED_TYPO,
        "-16/65 63/65 0 0",
        "0 0 -12/13 5/13",
        "0 0 5/13 12/13",
    ];
    let p4_set = shared(GeneratorId::Wk(2), GeneratorId::Wk(4));
    let p4 = p4_set == canon_set(&p4_listed);
    let corrected: Vec<&str> = p4_listed
        .iter()
        .map(|e| if *e == W2_W4_LISTED_TYPO { W2_W4_CORRECTED } else { e })
        .collect();
    let p4_corrected = p4_set == canon_set(&corrected);
    let detail = format!(
        "P1 {p1}, P2 {p2}, P3 {p3}, P4 verbatim {p4} (|W2 and W4 shared| = {})",
        p4_set.len()
    );
    match (p1 && p2 && p3, p4, p4_corrected) {
        (true, true, _) => Verdict::Pass(detail),
        (true, false, true) => Verdict::KnownFail(format!(
            "{detail}; the listed element ({W2_W4_LISTED_TYPO}) is not in W2; with ({W2_W4_CORRECTED}), the column the displayed X1 J2 X1^-1 X1 itself contains, the six-element set matches exactly"
        )),
        _ => Verdict::Fail(detail),
    }
}

fn criterion_5(t: &Tracker) -> Verdict {
    let mut bad = Vec::new();
    let mut built = 0;
    for (row, (base, ..)) in qls8_low_table().into_iter().enumerate() {
        for &l in &QLS8_LOW_L {
            built += 1;
            let grid = execute_plan(&qls8_low_plan(row, l).unwrap()).unwrap();
            if t.observe(&format!("qls8-low({base}+{l})"), &grid) != Some(base + l) {
                bad.push(format!("{base}+{l}"));
            }
        }
    }
    let high_values = [2usize, 4, 6, 8, 12, 14, 15, 16];
    for &l1 in &high_values {
        for &l2 in &high_values {
            built += 1;
            let grid = execute_plan(&high_diagonal_plan(2, &[l1, l2]).unwrap()).unwrap();
            if t.observe(&format!("qls8-high({l1},{l2})"), &grid) != Some(32 + l1 + l2) {
                bad.push(format!("32+{l1}+{l2}"));
            }
        }
    }
    let c57 = execute_plan(&qls8_c57_plan().unwrap()).unwrap();
    let c57_count = t.observe("qls8-c57", &c57);
    let mut produced = BTreeSet::new();
    for c in (8..=64).filter(|&c| c != 9) {
        match synth_qls8(c) {
            Ok(grid) if t.observe(&format!("qls8({c})"), &grid) == Some(c) => {
                produced.insert(c);
            }
            _ => bad.push(format!("synth {c}")),
        }
    }
    let detail = format!(
        "{built} table layouts counted, c=57 square counted {c57_count:?}, {} of 56 targets in [8,64] minus 9 produced",
        produced.len()
    );
    if bad.is_empty() && c57_count == Some(57) && produced.len() == 56 {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(format!("{detail}; failures: {bad:?}"))
    }
}

fn criterion_6(t: &Tracker) -> Verdict {
    let grid = execute_plan(&qls12_c105_plan().unwrap()).unwrap();
    let c = t.observe("qls12-c105", &grid);
    let detail = format!("displayed order-12 square counted {c:?}");
    if c == Some(105) {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn criterion_7() -> Verdict {
    let mut bad = Vec::new();
    for (k, i, rows) in DISPLAYED_PRODUCTS {
        let mismatch = displayed_product_mismatches(k, i, rows).unwrap();
        if !mismatch.is_empty() {
            bad.push(format!("X1 J{k} X1^-1 X{i} at {mismatch:?}"));
        }
    }
    let mut orthonormal = 0;
    for k in 1..=4u8 {
        for m in [j_matrix(k), x_matrix(k)] {
            match m {
                Ok(m) if OrthoMatrix4::is_orthonormal(m.rows()) => orthonormal += 1,
                _ => bad.push(format!("J{k} or X{k}")),
            }
        }
        for (a, b) in [(1, 2), (5, 6), (7, 8)] {
            match y_matrix(k, &rat_int(a), &rat_int(b)) {
                Ok(m) if OrthoMatrix4::is_orthonormal(m.rows()) => orthonormal += 1,
                _ => bad.push(format!("Y({k},{a},{b})")),
            }
        }
    }
    let spot = displayed_product_mismatches(3, 2, DISPLAYED_PRODUCTS[9].2).unwrap().is_empty()
        && qls_core::generators::wk_matrix(3, 2).unwrap().entry(0, 0) == &qls_core::RadExt::ratio(-164, 169);
    let detail = format!(
        "{} displayed products match entry for entry (X1 J3 X1^-1 X2 (1,1) = -164/169: {spot}); {orthonormal} matrices satisfy M^T M = I",
        DISPLAYED_PRODUCTS.len()
    );
    if bad.is_empty() && spot && orthonormal == 20 {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(format!("{detail}; failures: {bad:?}"))
    }
}

fn criterion_8(t: &Tracker) -> Verdict {
    let checked = t.oracle_checked.load(Ordering::Relaxed);
    let mismatches = t.oracle_mismatches.lock().unwrap();
    let detail = format!("{checked} grids of order <= 16 counted by canonical dedup and by pairwise overlap");
    if mismatches.is_empty() && checked > 0 {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(format!("{detail}; mismatches: {mismatches:?}"))
    }
}

fn criterion_9() -> Verdict {
    let checks: Vec<_> = (3..=8).map(slot1_sum_check).collect();
    let literal = checks.iter().all(|c| c.low_equal && c.high_equal);
    let understood = checks
        .iter()
        .all(|c| c.high_equal && c.low_window_equal && c.low_extra == [16 * c.m]);
    let high = checks.iter().all(|c| c.high_equal);
    let detail = format!(
        "m=3..8: high-regime sums equal [0,16m] minus {{1,3,...,13}}: {high}; low-regime sums equal [0,16m-8] minus {{1,16m-15}}: {}",
        checks.iter().all(|c| c.low_equal)
    );
    if literal {
        Verdict::Pass(detail)
    } else if understood {
        Verdict::KnownFail(format!(
            "{detail}; the low-regime set is exactly the stated set plus {{16m}} (every diagonal taking 16), and matches the stated set on [0,16m-8]"
        ))
    } else {
        Verdict::Fail(format!("{detail}; {:?}", checks.iter().map(|c| c.detail()).collect::<Vec<_>>()))
    }
}

fn criterion_10(t: &Tracker) -> Verdict {
    let mut bad = Vec::new();
    for m in 2..=8usize {
        match plan(m, 4 * m + 1) {
            Err(e @ Error::ImpossibleCardinality { .. }) if e.to_string().contains("cardinality n+1") => {}
            other => bad.push(format!("m={m}: {other:?}")),
        }
    }
    let hits = t.n_plus_one.lock().unwrap();
    let grids = t.grids.load(Ordering::Relaxed);
    let detail = format!("c = 4m+1 rejected for m=2..8; none of the {grids} grids built has cardinality n+1");
    if bad.is_empty() && hits.is_empty() {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(format!("{detail}; failures: {bad:?} {hits:?}"))
    }
}

fn main() -> ExitCode {
    let tracker = Tracker::default();
    let t = &tracker;
    let criteria: Vec<Criterion> = vec![
        (2, "new-element counts of H2..H8", Box::new(|| criterion_2(t))),
        (3, "W(2k-1,2k) families pairwise distinct", Box::new(|| criterion_3(t))),
        (4, "common elements of W0..W4", Box::new(|| criterion_4(t))),
        (5, "order-8 table, c=57, all order-8 targets", Box::new(|| criterion_5(t))),
        (6, "order-12 square with cardinality 105", Box::new(|| criterion_6(t))),
        (7, "matrix regressions and orthonormality", Box::new(criterion_7)),
        (9, "slot-1 reachable sums", Box::new(criterion_9)),
        (1, "full sweep m=2..5", Box::new(|| criterion_1(t))),
        (8, "canonical vs pairwise cardinality", Box::new(|| criterion_8(t))),
        (10, "rejection of n+1", Box::new(|| criterion_10(t))),
    ];
    let mut results = Vec::new();
    for (n, name, run) in criteria {
        let start = Instant::now();
        let verdict = run();
        results.push((n, name, verdict, start.elapsed()));
    }
    results.sort_by_key(|r| r.0);
    let mut unexpected = 0;
    for (n, name, verdict, elapsed) in &results {
        let secs = elapsed.as_secs_f64();
        match verdict {
            Verdict::Pass(d) => println!("PASS          criterion {n:>2} ({name}) [{secs:.1}s]: {d}"),
            Verdict::KnownFail(d) => println!("FAIL (known)  criterion {n:>2} ({name}) [{secs:.1}s]: {d}"),
            Verdict::Fail(d) => {
                unexpected += 1;
                println!("FAIL          criterion {n:>2} ({name}) [{secs:.1}s]: {d}");
            }
        }
    }
    let errors = tracker.errors.lock().unwrap();
    if !errors.is_empty() {
        unexpected += 1;
        println!("FAIL          grids failing verification: {errors:?}");
    }
    let passed = results.iter().filter(|r| matches!(r.2, Verdict::Pass(_))).count();
    println!("{passed}/{} criteria passed, {unexpected} unexpected failures", results.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
