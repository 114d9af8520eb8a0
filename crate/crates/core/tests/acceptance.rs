use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use familydd::experiments::{
    check_growth, measure_blowup, random_instance, run_blowup, run_equivalence_suite,
    run_order_study, verify_bounds, SuiteConfig,
};
use familydd::generators::{gen_base_family, BaseFamilyKind, HWB_OPS, PERMUTATION_OPS};
use familydd::oracle::OrderMode;
use familydd::{DiagramManager, ExplicitFamily, OpKind, SetBits};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One verdict line per criterion, written past the test harness's capture.
fn report(id: u32, name: &str, passed: bool, elapsed: Duration, detail: &str) {
    let verdict = if passed { "PASS" } else { "FAIL" };
    let line = format!(
        "criterion {id} [{verdict}] {name} ({:.1} s): {detail}\n",
        elapsed.as_secs_f64()
    );
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
}

fn finish(id: u32, name: &str, start: Instant, limit_s: u64, failures: &[String], detail: &str) {
    let elapsed = start.elapsed();
    let mut failures = failures.to_vec();
    if elapsed > Duration::from_secs(limit_s) {
        failures.push(format!("took {:.1} s, limit {limit_s} s", elapsed.as_secs_f64()));
    }
    let passed = failures.is_empty();
    let detail = if passed {
        detail.to_string()
    } else {
        failures.join("; ")
    };
    report(id, name, passed, elapsed, &detail);
    assert!(passed, "criterion {id}: {detail}");
}

fn suite_config() -> SuiteConfig {
    SuiteConfig {
        instances_per_kind: 500,
        ..SuiteConfig::default()
    }
}

#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    let report = run_equivalence_suite(&suite_config()).unwrap();
    let mut failures = Vec::new();
    assert_eq!(report.kinds.len(), 20);
    for k in &report.kinds {
        if k.instances < 500 {
            failures.push(format!("{} ran only {} instances", k.kind, k.instances));
        }
        if k.mismatches > 0 {
            failures.push(format!("{}: {} mismatches, e.g. {}", k.kind, k.mismatches, k.examples[0]));
        }
    }
    let total: usize = report.kinds.iter().map(|k| k.instances).sum();
    finish(1, "oracle equivalence", start, 120, &failures, &format!("{total} instances over 20 operations, 0 mismatches"));
}

#[test]
fn criterion_2_canonicity_and_round_trip() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = Vec::new();
    let universe: Vec<String> = (0..8).map(|i| format!("e{i}")).collect();
    let mut mgr = DiagramManager::zdd(&universe).unwrap();
    for trial in 0..1000 {
        let n = rng.gen_range(1..=8);
        let count = rng.gen_range(0..=24usize.min(1 << n));
        let mut sets: Vec<SetBits> = (0..count).map(|_| SetBits(rng.gen_range(0..1u128 << n))).collect();
        let explicit = ExplicitFamily::from_bits(universe.iter().cloned(), sets.iter().copied()).unwrap();
        let direct = mgr.from_explicit(&explicit).unwrap();
        let mut roots = Vec::new();
        for _ in 0..3 {
            sets.shuffle(&mut rng);
            // set-by-set unions in the shuffled order
            let mut acc = mgr.empty();
            for s in &sets {
                let one = mgr.single_set(explicit.names(*s)).unwrap();
                acc = mgr.union(acc, one).unwrap();
            }
            roots.push(acc);
            let reordered = ExplicitFamily::from_bits(universe.iter().cloned(), sets.iter().copied()).unwrap();
            roots.push(mgr.from_explicit(&reordered).unwrap());
        }
        if roots.iter().any(|&r| r != direct) {
            failures.push(format!("trial {trial}: roots differ for {explicit}"));
        }
        let back = mgr.to_explicit(direct, 1 << 20).unwrap();
        if back != explicit || mgr.from_explicit(&back).unwrap() != direct {
            failures.push(format!("trial {trial}: round trip changed {explicit}"));
        }
    }
    finish(2, "canonicity and round trip", start, 30, &failures, "1000 families, 3 shuffled insertions each, identical roots");
}

#[test]
fn criterion_3_size_bounds() {
    let start = Instant::now();
    let report = verify_bounds(24).unwrap();
    let failures: Vec<String> = report
        .violations
        .iter()
        .map(|v| format!("{}_{{{},{:?}}} order {:?}: {} > {}", v.kind, v.m, v.k, v.order_seed, v.size, v.bound))
        .collect();
    finish(
        3,
        "E/Q/C/T size bounds",
        start,
        60,
        &failures,
        &format!("{} natural-order checks, {} in all, 0 violations", report.natural_checks, report.checks),
    );
}

#[test]
fn criterion_4_proved_identities() {
    let start = Instant::now();
    let mut cells: Vec<(OpKind, usize, usize)> = vec![
        (OpKind::Join, 2, 10),
        (OpKind::DisjointJoin, 2, 10),
        (OpKind::JointJoin, 2, 10),
        (OpKind::Meet, 2, 10),
        (OpKind::Delta, 2, 8),
        (OpKind::Quotient, 2, 8),
        (OpKind::Remainder, 2, 8),
    ];
    for op in [OpKind::Permit, OpKind::Nonsubset, OpKind::Restrict, OpKind::Nonsuperset] {
        cells.push((op, 2, 6));
    }
    for op in [OpKind::Maximal, OpKind::Minimal, OpKind::Hitting, OpKind::Closure] {
        cells.push((op, 2, 3));
    }
    let mut failures = Vec::new();
    let mut checked = 0;
    for (op, lo, hi) in cells {
        // one m at a time so a mismatch does not hide the others
        for m in lo..=hi {
            checked += 1;
            if let Err(e) = run_blowup(op, m, m) {
                failures.push(e.to_string());
            }
        }
    }
    finish(4, "proved identities", start, 120, &failures, &format!("{checked} (op, m) cells, 0 mismatches"));
}

#[test]
fn criterion_5_blowup_growth() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut records = Vec::new();
    for op in HWB_OPS {
        records.extend(measure_blowup(op, 6, 18).unwrap());
    }
    for op in PERMUTATION_OPS {
        records.extend(measure_blowup(op, 3, 6).unwrap());
    }
    let verdicts = check_growth(&records).unwrap();
    assert_eq!(verdicts.len(), HWB_OPS.len() + PERMUTATION_OPS.len());
    for v in &verdicts {
        if !v.passed {
            failures.push(format!("{}: {}", v.op, v.failures.join(", ")));
        }
    }
    finish(5, "blow-up growth", start, 600, &failures, &format!("{} operations grow past the thresholds", verdicts.len()));
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn criterion_6_counting_closed_forms() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut count = |kind: BaseFamilyKind, m: usize, want: u64| {
        let mut mgr = DiagramManager::zdd(kind.universe(m)).unwrap();
        let f = gen_base_family(&mut mgr, kind, m, None, None).unwrap();
        let got = mgr.count_sets(f).unwrap();
        if got != want {
            failures.push(format!("|{kind}_{m}| = {got}, expected {want}"));
        }
    };
    for m in 1..=16 {
        count(BaseFamilyKind::H, m, 1 << (m - 1));
    }
    for m in 1..=7 {
        count(BaseFamilyKind::P, m, (1..=m as u64).product());
    }
    for m in 1..=6 {
        count(BaseFamilyKind::C, m, binomial((m * m) as u64, m as u64));
    }
    finish(6, "counting closed forms", start, 10, &failures, "H for m ≤ 16, P for m ≤ 7, C for m ≤ 6 exact");
}

#[test]
fn criterion_7_order_robustness() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let min_of = |m, mode, samples, seed| {
        run_order_study(OpKind::Meet, m, mode, samples, seed)
            .unwrap()
            .iter()
            .map(|r| r.z_out)
            .min()
            .unwrap()
    };
    let (min3, min4) = (min_of(3, OrderMode::Exhaustive, 0, 0), min_of(4, OrderMode::Exhaustive, 0, 0));
    if min4 <= min3 {
        failures.push(format!("exhaustive minimum {min3} at m=3 is not below {min4} at m=4"));
    }
    let sampled8 = min_of(8, OrderMode::Sampled, 200, 7);
    let natural6 = run_blowup(OpKind::Meet, 6, 6).unwrap()[0].z_out;
    if sampled8 < natural6 {
        failures.push(format!("sampled minimum {sampled8} at m=8 is below natural {natural6} at m=6"));
    }
    finish(
        7,
        "order robustness",
        start,
        300,
        &failures,
        &format!("min over orders {min3} (m=3) < {min4} (m=4); m=8 sampled min {sampled8} ≥ m=6 natural {natural6}"),
    );
}

#[test]
fn criterion_8_zdd_bdd_size_ratio() {
    let start = Instant::now();
    let report = run_equivalence_suite(&suite_config()).unwrap();
    let lemma = report.lemma1.unwrap();
    let mut failures = Vec::new();
    if !lemma.passed() {
        let v = &lemma.examples[0];
        failures.push(format!(
            "{} of {} families outside factor 2n, all at n ∈ {:?}; max B/(nZ) = {:.2}, max Z/(nB) = {:.2}; e.g. n={} Z={} B={} for {}",
            lemma.violation_count,
            lemma.families,
            lemma.violating_n,
            lemma.max_b_ratio,
            lemma.max_z_ratio,
            v.n,
            v.z,
            v.b,
            v.family
        ));
        failures.push(format!(
            "for n ≥ 2 the ratios peak at B/(nZ) = {:.2}, Z/(nB) = {:.2}",
            lemma.max_b_ratio_n2, lemma.max_z_ratio_n2
        ));
    }
    finish(
        8,
        "ZDD/BDD size ratio",
        start,
        60,
        &failures,
        &format!(
            "{} families, max B/(nZ) = {:.2}, max Z/(nB) = {:.2}",
            lemma.families, lemma.max_b_ratio, lemma.max_z_ratio
        ),
    );
}

#[test]
fn criterion_9_conditioning_bound() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut failures = Vec::new();
    for _ in 0..200 {
        let inst = random_instance(OpKind::Condition, &mut rng, 8);
        let cond = inst.cond.as_ref().unwrap();
        let f = &inst.f;
        let n = f.universe().len();
        let mut mgr = DiagramManager::zdd(f.universe()).unwrap();
        let root = mgr.from_explicit(f).unwrap();
        let out = mgr.condition(root, &cond.y, &cond.y_prime).unwrap();
        let (z_in, z_out) = (mgr.node_count(root).unwrap(), mgr.node_count(out).unwrap());
        if z_out > z_in * (n + 2) {
            failures.push(format!("{f} on {cond:?}: {z_out} nodes > {z_in}·{}", n + 2));
        }
        // S avoids Y ∪ Y′ and S ∪ Y is a member
        let y = f.bits_of(&cond.y).unwrap();
        let fixed = y.union(f.bits_of(&cond.y_prime).unwrap());
        let want: BTreeSet<SetBits> = (0..1u128 << n)
            .map(SetBits)
            .filter(|s| s.intersection(fixed).is_empty() && f.contains(s.union(y)))
            .collect();
        let got = mgr.to_explicit(out, 1 << 20).unwrap();
        if got.sets() != &want {
            failures.push(format!("{f} on {cond:?}: got {got}"));
        }
    }
    finish(9, "conditioning bound", start, 30, &failures, "200 random families within Z(F)·(n+2), contents match");
}
