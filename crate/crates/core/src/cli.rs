//! The `familydd` command line.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::experiments::{
    check_growth, measure_blowup, run_blowup, run_conditioning_suite, run_equivalence_suite, run_order_study,
    summarize, verify_bounds, write_csv, SuiteConfig,
};
use crate::generators::{gen_base_family, BaseFamilyKind};
use crate::kernel::{DiagramManager, Family, Semantics, VariableOrder, DEFAULT_EXPLICIT_CAP};
use crate::ops::OpKind;
use crate::oracle::OrderMode;
use crate::text;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "familydd", version, about = "Family algebra on zero-suppressed decision diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply one operation to families read from text files.
    Eval(EvalArgs),
    /// Emit a generated family.
    Gen(GenArgs),
    /// Sweep m for a blow-up instance and record output sizes.
    Blowup(BlowupArgs),
    /// Rebuild a blow-up output under other element orders.
    Orders(OrdersArgs),
    /// Check the node-count bounds of E, Q, C and T.
    Bounds(BoundsArgs),
    /// Compare every operation against the brute-force oracle.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long)]
    op: OpKind,
    #[arg(long)]
    f: PathBuf,
    #[arg(long)]
    g: Option<PathBuf>,
    /// Elements forced into every set (condition only).
    #[arg(long, value_delimiter = ',')]
    y: Vec<String>,
    /// Elements forced out of every set (condition only).
    #[arg(long = "y-prime", value_delimiter = ',')]
    y_prime: Vec<String>,
    /// Result file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    kind: BaseFamilyKind,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BlowupArgs {
    #[arg(long)]
    op: OpKind,
    #[arg(long)]
    mmin: usize,
    #[arg(long)]
    mmax: usize,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Also judge the growth thresholds; failure exits with status 1.
    #[arg(long)]
    check: bool,
    /// Record sizes without asserting the proved output families.
    #[arg(long)]
    skip_identities: bool,
}

#[derive(Args, Debug)]
struct OrdersArgs {
    #[arg(long)]
    op: OpKind,
    #[arg(long)]
    m: usize,
    #[arg(long, conflicts_with_all = ["samples", "seed"])]
    exhaustive: bool,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    mmax: usize,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(long, default_value_t = 500)]
    instances: usize,
    #[arg(long, default_value_t = SuiteConfig::default().seed)]
    seed: u64,
}

/// Runs the command line and returns the process exit status.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Eval(a) => eval(a),
        Command::Gen(a) => gen(a),
        Command::Blowup(a) => blowup(a),
        Command::Orders(a) => orders(a),
        Command::Bounds(a) => bounds(a),
        Command::Selftest(a) => selftest(a),
    };
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_ASSERTION,
        Err(e @ Error::IdentityMismatch { .. }) => {
            eprintln!("familydd: {e}");
            EXIT_ASSERTION
        }
        Err(e) => {
            eprintln!("familydd: {e}");
            EXIT_USAGE
        }
    }
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit(mgr: &DiagramManager, f: Family, out: Option<&Path>, dot: Option<&Path>) -> Result<()> {
    let explicit = mgr.to_explicit(f, DEFAULT_EXPLICIT_CAP)?;
    let mut w = open_out(out)?;
    w.write_all(text::write(&explicit).as_bytes())?;
    w.flush()?;
    if let Some(p) = dot {
        std::fs::write(p, mgr.export_dot(f)?)?;
    }
    Ok(())
}

fn eval(a: EvalArgs) -> Result<bool> {
    let f_explicit = text::read_file(&a.f)?;
    let mut mgr = DiagramManager::new(
        Semantics::Zdd,
        VariableOrder::new(f_explicit.universe().iter().cloned())?,
    );
    let f = mgr.from_explicit(&f_explicit)?;
    let g = match &a.g {
        Some(p) => Some(mgr.from_explicit(&text::read_file(p)?)?),
        None => None,
    };
    let out = if a.op == OpKind::Condition {
        mgr.condition(f, &a.y, &a.y_prime)?
    } else {
        if !a.y.is_empty() || !a.y_prime.is_empty() {
            return Err(Error::InvalidParameter("--y and --y-prime apply to condition only".into()));
        }
        mgr.apply(a.op, f, g)?
    };
    emit(&mgr, out, a.out.as_deref(), a.dot.as_deref())?;
    Ok(true)
}

fn gen(a: GenArgs) -> Result<bool> {
    let mut mgr = DiagramManager::new(Semantics::Zdd, VariableOrder::new(a.kind.universe(a.m))?);
    let f = gen_base_family(&mut mgr, a.kind, a.m, a.k, a.l)?;
    emit(&mgr, f, a.out.as_deref(), a.dot.as_deref())?;
    Ok(true)
}

fn blowup(a: BlowupArgs) -> Result<bool> {
    let records = if a.skip_identities {
        measure_blowup(a.op, a.mmin, a.mmax)?
    } else {
        run_blowup(a.op, a.mmin, a.mmax)?
    };
    write_csv(open_out(a.csv.as_deref())?, &records)?;
    if !a.check {
        return Ok(true);
    }
    let mut passed = true;
    for v in check_growth(&records)? {
        let verdict = if v.passed { "PASS" } else { "FAIL" };
        eprintln!("growth {} m={}..{}: {verdict}", v.op, v.m_min, v.m_max);
        for f in &v.failures {
            eprintln!("  {f}");
        }
        passed &= v.passed;
    }
    Ok(passed)
}

fn orders(a: OrdersArgs) -> Result<bool> {
    let mode = if a.exhaustive {
        OrderMode::Exhaustive
    } else {
        OrderMode::Sampled
    };
    let records = run_order_study(a.op, a.m, mode, a.samples, a.seed)?;
    let mut out = io::stdout().lock();
    writeln!(out, "op,m,order_id,z_out,order")?;
    for r in &records {
        writeln!(out, "{},{},{},{},{}", r.op, r.m, r.order_id, r.z_out, r.order.join(" "))?;
    }
    if let Some(s) = summarize(&records) {
        eprintln!(
            "{} orders: min {} max {} median {}",
            s.count, s.min, s.max, s.median
        );
    }
    Ok(true)
}

fn bounds(a: BoundsArgs) -> Result<bool> {
    let report = verify_bounds(a.mmax)?;
    println!(
        "{} checks ({} natural order), {} violations",
        report.checks,
        report.natural_checks,
        report.violations.len()
    );
    for v in &report.violations {
        let k = v.k.map(|k| format!(",{k}")).unwrap_or_default();
        let order = v.order_seed.map(|s| format!("seed {s}")).unwrap_or("natural".into());
        println!("  {}_{{{}{k}}} under {order}: {} > {}", v.kind, v.m, v.size, v.bound);
    }
    Ok(report.passed())
}

fn selftest(a: SelftestArgs) -> Result<bool> {
    let cfg = SuiteConfig {
        instances_per_kind: a.instances,
        seed: a.seed,
        ..SuiteConfig::default()
    };
    let report = run_equivalence_suite(&cfg)?;
    let mut passed = true;
    for k in &report.kinds {
        println!("{:<20} {:>5} instances {:>3} mismatches", k.kind, k.instances, k.mismatches);
        for e in &k.examples {
            println!("  {e}");
        }
        passed &= k.mismatches == 0;
    }
    let cond = run_conditioning_suite(a.instances, a.seed, cfg.max_n)?;
    println!(
        "condition size bound: {} instances, {} over bound, {} wrong",
        cond.instances,
        cond.bound_violations.len(),
        cond.content_mismatches.len()
    );
    passed &= cond.passed();
    if let Some(l) = &report.lemma1 {
        println!(
            "zdd/bdd sizes over {} families: max B/(nZ) {:.3}, max Z/(nB) {:.3}; {} outside factor 2n (n in {:?})",
            l.families, l.max_b_ratio, l.max_z_ratio, l.violation_count, l.violating_n
        );
    }
    println!("{}", if passed { "selftest passed" } else { "selftest FAILED" });
    Ok(passed)
}
