//! Blow-up measurements, proved-identity checks and growth verdicts.

mod bounds;
mod enumerate;
mod orders;
mod suite;

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{
    self, gen_base_family, gen_theorem_instance, is_blowup_op, is_hwb_op, names, BaseFamilyKind,
    TheoremInstance,
};
use crate::kernel::{DiagramManager, Family};
use crate::ops::OpKind;

pub use bounds::{bound_for, verify_bounds, BoundCheck, BoundsReport};
pub use enumerate::enumerated_expected;
pub use orders::{run_order_study, summarize, OrderStudyRecord, OrderStudySummary};
pub use suite::{
    random_instance, run_conditioning_suite, run_equivalence_suite, ConditioningReport,
    KindReport, Lemma1Report, Lemma1Violation, RandomInstance, SuiteConfig, SuiteReport,
};

/// Largest m for the hidden-weighted-bit instances.
pub const HWB_M_CAP: usize = 18;
/// Largest m for the permutation instances.
pub const PERMUTATION_M_CAP: usize = 6;
/// Largest m at which outputs are also checked against predicate enumeration.
pub const ENUMERATION_M_CAP: usize = 3;

pub const GROWTH_INPUT_FACTOR: f64 = 32.0;
pub const GROWTH_MIN_BITS: f64 = 0.8;
/// Window width, in steps of m, for the hidden-weighted-bit growth check.
pub const HWB_GROWTH_WINDOW: usize = 5;

pub const CSV_HEADER: [&str; 7] = ["op", "m", "z_f", "z_g", "z_out", "count_out", "elapsed_ms"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlowupRecord {
    #[serde(serialize_with = "op_name")]
    pub op: OpKind,
    pub m: usize,
    pub z_f: usize,
    pub z_g: usize,
    pub z_out: usize,
    pub count_out: u64,
    pub elapsed_ms: f64,
}

fn op_name<S: serde::Serializer>(op: &OpKind, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(op.name())
}

pub fn m_cap(op: OpKind) -> usize {
    if is_hwb_op(op) {
        HWB_M_CAP
    } else {
        PERMUTATION_M_CAP
    }
}

/// Builds and evaluates the instance for every m in range, one manager per m,
/// checking each output against the proved identities.
pub fn run_blowup(op: OpKind, m_min: usize, m_max: usize) -> Result<Vec<BlowupRecord>> {
    sweep(op, m_min, m_max, true)
}

/// As [`run_blowup`] but records sizes only, skipping the identity checks.
pub fn measure_blowup(op: OpKind, m_min: usize, m_max: usize) -> Result<Vec<BlowupRecord>> {
    sweep(op, m_min, m_max, false)
}

fn sweep(op: OpKind, m_min: usize, m_max: usize, checked: bool) -> Result<Vec<BlowupRecord>> {
    if !is_blowup_op(op) {
        return Err(Error::UnsupportedOp(op));
    }
    let cap = m_cap(op);
    if m_min < 2 || m_min > m_max || m_max > cap {
        return Err(Error::InvalidParameter(format!(
            "m range {m_min}..={m_max} for {op} must lie within 2..={cap}"
        )));
    }
    let mut records: Vec<BlowupRecord> = (m_min..=m_max)
        .into_par_iter()
        .map(|m| run_cell(op, m, checked))
        .collect::<Result<_>>()?;
    records.sort_by_key(|r| r.m);
    Ok(records)
}

fn run_cell(op: OpKind, m: usize, checked: bool) -> Result<BlowupRecord> {
    let mut inst = gen_theorem_instance(op, m)?;
    let start = Instant::now();
    let out = inst.evaluate()?;
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    if checked {
        check_identities(&mut inst, out)?;
    }
    let mgr = &inst.manager;
    Ok(BlowupRecord {
        op,
        m,
        z_f: mgr.node_count(inst.f)?,
        z_g: inst.g.map(|g| mgr.node_count(g)).transpose()?.unwrap_or(0),
        z_out: mgr.node_count(out)?,
        count_out: mgr.count_sets(out)?,
        elapsed_ms,
    })
}

fn mismatch(op: OpKind, m: usize, what: impl Into<String>) -> Error {
    Error::IdentityMismatch {
        op,
        m,
        what: what.into(),
    }
}

fn expect_equal(op: OpKind, m: usize, got: Family, want: Family, what: &str) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(mismatch(op, m, what))
    }
}

/// Checks `out`, the evaluated output of `inst`, against every identity that
/// applies to the instance's operation.
pub fn check_identities(inst: &mut TheoremInstance, out: Family) -> Result<()> {
    let (op, m) = (inst.op, inst.m);
    if let Some(expected) = inst.expected {
        expect_equal(op, m, out, expected, "output differs from the proved family")?;
    }
    let mgr = &mut inst.manager;
    match op {
        OpKind::Remainder => {
            let want = generators::remainder_expected(mgr, m)?;
            expect_equal(op, m, out, want, "remainder differs from the composed family")?;
        }
        OpKind::Closure => {
            let c = gen_base_family(mgr, BaseFamilyKind::C, m, None, None)?;
            let p = gen_base_family(mgr, BaseFamilyKind::P, m, None, None)?;
            let cut = mgr.intersection(out, c)?;
            expect_equal(op, m, cut, p, "closure ∩ C differs from P")?;
        }
        _ => {}
    }
    check_conditioning(mgr, op, m, out)?;
    if m <= ENUMERATION_M_CAP {
        check_enumerated(mgr, op, m, out)?;
    }
    Ok(())
}

/// The conditioned views of the outputs that expose `H_m`, `P_m` or a
/// difference against them.
fn check_conditioning(mgr: &mut DiagramManager, op: OpKind, m: usize, out: Family) -> Result<()> {
    use BaseFamilyKind as K;
    let none: Vec<String> = Vec::new();
    let wx = || [vec!["w".to_string()], names("x", 2 * m)].concat();
    let (y, y_prime) = match op {
        OpKind::Join | OpKind::DisjointJoin | OpKind::JointJoin | OpKind::Delta => {
            (names("x", m), none)
        }
        OpKind::Remainder => (vec!["x1".to_string()], names("x", m)[1..].to_vec()),
        OpKind::Restrict | OpKind::Nonsuperset => (names("x", 2 * m), none),
        OpKind::Maximal => (none, wx()),
        OpKind::Minimal => (wx(), none),
        _ => return Ok(()),
    };
    let cond = mgr.condition(out, &y, &y_prime)?;
    let want = match op {
        OpKind::Remainder => {
            let e_c = gen_base_family(mgr, K::EComplement, m, Some(1), None)?;
            let h_c = gen_base_family(mgr, K::HComplement, m, None, None)?;
            mgr.difference(e_c, h_c)?
        }
        OpKind::Restrict => {
            let c = gen_base_family(mgr, K::C, m, None, None)?;
            let p = gen_base_family(mgr, K::P, m, None, None)?;
            mgr.difference(c, p)?
        }
        _ if is_hwb_op(op) => gen_base_family(mgr, K::H, m, None, None)?,
        _ => gen_base_family(mgr, K::P, m, None, None)?,
    };
    expect_equal(op, m, cond, want, "conditioned output differs from its target family")
}

fn check_enumerated(mgr: &mut DiagramManager, op: OpKind, m: usize, out: Family) -> Result<()> {
    let Some(want) = enumerated_expected(op, m)? else {
        return Ok(());
    };
    let want = mgr.from_explicit(&want)?;
    if op == OpKind::Closure {
        let c = gen_base_family(mgr, BaseFamilyKind::C, m, None, None)?;
        let cut = mgr.intersection(out, c)?;
        return expect_equal(op, m, cut, want, "closure ∩ C differs from enumerated P");
    }
    expect_equal(op, m, out, want, "output differs from the enumerated family")
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthVerdict {
    pub op: OpKind,
    pub m_min: usize,
    pub m_max: usize,
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Judges the records of each operation against the polynomial input bound
/// and the exponential output growth thresholds.
pub fn check_growth(records: &[BlowupRecord]) -> Result<Vec<GrowthVerdict>> {
    let mut ops: Vec<OpKind> = records.iter().map(|r| r.op).collect();
    ops.sort_by_key(|op| op.name());
    ops.dedup();
    ops.into_iter()
        .map(|op| {
            let mut rows: Vec<&BlowupRecord> = records.iter().filter(|r| r.op == op).collect();
            rows.sort_by_key(|r| r.m);
            growth_verdict(op, &rows)
        })
        .collect()
}

fn growth_verdict(op: OpKind, rows: &[&BlowupRecord]) -> Result<GrowthVerdict> {
    let hwb = is_hwb_op(op);
    let (needed, degree, window) = if hwb {
        (HWB_GROWTH_WINDOW + 1, 3, HWB_GROWTH_WINDOW)
    } else {
        (3, 4, 1)
    };
    let consecutive = rows.windows(2).all(|w| w[1].m == w[0].m + 1);
    if rows.len() < needed || !consecutive {
        return Err(Error::InsufficientRange(format!(
            "{op} needs at least {needed} consecutive values of m, got {:?}",
            rows.iter().map(|r| r.m).collect::<Vec<_>>()
        )));
    }
    let mut failures = Vec::new();
    for r in rows {
        let limit = GROWTH_INPUT_FACTOR * (r.m as f64).powi(degree);
        let input = (r.z_f + r.z_g) as f64;
        if input > limit {
            failures.push(format!(
                "m={}: input size {input} exceeds {GROWTH_INPUT_FACTOR}·m^{degree} = {limit}",
                r.m
            ));
        }
    }
    for w in rows.windows(2) {
        if w[1].z_out <= w[0].z_out {
            failures.push(format!(
                "m={}→{}: output size {} → {} is not increasing",
                w[0].m, w[1].m, w[0].z_out, w[1].z_out
            ));
        }
    }
    for w in rows.windows(window + 1) {
        let (a, b) = (w[0], w[window]);
        let gain = (b.z_out as f64).log2() - (a.z_out as f64).log2();
        if gain < GROWTH_MIN_BITS {
            failures.push(format!(
                "m={}→{}: log2 output gain {gain:.3} below {GROWTH_MIN_BITS}",
                a.m, b.m
            ));
        }
    }
    Ok(GrowthVerdict {
        op,
        m_min: rows[0].m,
        m_max: rows[rows.len() - 1].m,
        passed: failures.is_empty(),
        failures,
    })
}

/// Writes the records as CSV with header [`CSV_HEADER`].
pub fn write_csv<W: Write>(out: W, records: &[BlowupRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    if records.is_empty() {
        w.write_record(CSV_HEADER)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(m: usize, z_out: usize) -> BlowupRecord {
        BlowupRecord {
            op: OpKind::Nonsubset,
            m,
            z_f: 10,
            z_g: 10,
            z_out,
            count_out: 1,
            elapsed_ms: 0.0,
        }
    }

    #[test]
    fn constant_output_fails_growth() {
        let rows: Vec<_> = (3..=6).map(|m| record(m, 40)).collect();
        let v = check_growth(&rows).unwrap();
        assert_eq!(v.len(), 1);
        assert!(!v[0].passed);
    }

    #[test]
    fn doubling_output_passes_growth() {
        let rows: Vec<_> = (3..=6).map(|m| record(m, 10 << m)).collect();
        assert!(check_growth(&rows).unwrap()[0].passed);
    }

    #[test]
    fn short_range_rejected() {
        let rows: Vec<_> = (3..=4).map(|m| record(m, 10 << m)).collect();
        assert!(matches!(check_growth(&rows), Err(Error::InsufficientRange(_))));
        let mut gap: Vec<_> = (3..=6).map(|m| record(m, 10 << m)).collect();
        gap.remove(1);
        assert!(matches!(check_growth(&gap), Err(Error::InsufficientRange(_))));
    }

    #[test]
    fn non_blowup_ops_rejected() {
        assert!(matches!(run_blowup(OpKind::Union, 2, 3), Err(Error::UnsupportedOp(_))));
        assert!(matches!(
            run_blowup(OpKind::Permit, 2, 7),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn small_cells_meet_identities() {
        for op in generators::HWB_OPS {
            run_blowup(op, 2, 3).unwrap();
        }
        for op in generators::PERMUTATION_OPS {
            run_blowup(op, 2, 2).unwrap();
        }
    }

    #[test]
    fn meet_output_is_hwb() {
        let rec = run_blowup(OpKind::Meet, 5, 5).unwrap();
        let mut mgr = DiagramManager::zdd(names("y", 5)).unwrap();
        let h = gen_base_family(&mut mgr, BaseFamilyKind::H, 5, None, None).unwrap();
        assert_eq!(rec[0].z_out, mgr.node_count(h).unwrap());
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[record(3, 7)]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        assert_eq!(lines.next().unwrap(), "nonsubset,3,10,10,7,1,0.0");
        let mut empty = Vec::new();
        write_csv(&mut empty, &[]).unwrap();
        assert_eq!(String::from_utf8(empty).unwrap().trim_end(), CSV_HEADER.join(","));
    }
}
