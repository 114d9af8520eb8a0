//! Seeded random comparison of the diagram operations against the oracle,
//! with ZDD/BDD size ratios measured on every family that passes through.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::explicit::{ExplicitFamily, SetBits};
use crate::kernel::{DiagramManager, Family, Semantics, VariableOrder, DEFAULT_EXPLICIT_CAP};
use crate::ops::{Arity, OpKind};
use crate::oracle::{oracle_apply, Conditioning};

/// How many failing instances are kept verbatim per report.
const KEPT_EXAMPLES: usize = 5;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub instances_per_kind: usize,
    pub seed: u64,
    pub max_n: usize,
    /// Also convert every family to BDD form and compare sizes.
    pub measure_conversion: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            instances_per_kind: 500,
            seed: 20_230_501,
            max_n: 8,
            measure_conversion: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub kind: OpKind,
    pub f: ExplicitFamily,
    pub g: Option<ExplicitFamily>,
    pub cond: Option<Conditioning>,
}

#[derive(Clone, Debug)]
pub struct KindReport {
    pub kind: OpKind,
    pub instances: usize,
    pub mismatches: usize,
    pub examples: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lemma1Violation {
    pub n: usize,
    pub z: usize,
    pub b: usize,
    pub family: String,
}

impl Lemma1Violation {
    /// `B / (n·Z)`; the bound `B ≤ 2nZ` fails above 2.
    pub fn b_ratio(&self) -> f64 {
        self.b as f64 / (self.n * self.z) as f64
    }

    /// `Z / (n·B)`; the bound `Z ≤ 2nB` fails above 2.
    pub fn z_ratio(&self) -> f64 {
        self.z as f64 / (self.n * self.b) as f64
    }
}

#[derive(Clone, Debug, Default)]
pub struct Lemma1Report {
    pub families: usize,
    pub max_b_ratio: f64,
    pub max_z_ratio: f64,
    pub violation_count: usize,
    /// Universe sizes at which some violation occurred.
    pub violating_n: BTreeSet<usize>,
    pub examples: Vec<Lemma1Violation>,
    /// Largest ratios among universes of at least two elements.
    pub max_b_ratio_n2: f64,
    pub max_z_ratio_n2: f64,
}

impl Lemma1Report {
    fn record(&mut self, n: usize, z: usize, b: usize, family: &ExplicitFamily) {
        self.families += 1;
        let b_ratio = b as f64 / (n * z) as f64;
        let z_ratio = z as f64 / (n * b) as f64;
        self.max_b_ratio = self.max_b_ratio.max(b_ratio);
        self.max_z_ratio = self.max_z_ratio.max(z_ratio);
        if n >= 2 {
            self.max_b_ratio_n2 = self.max_b_ratio_n2.max(b_ratio);
            self.max_z_ratio_n2 = self.max_z_ratio_n2.max(z_ratio);
        }
        if b > 2 * n * z || z > 2 * n * b {
            self.violation_count += 1;
            self.violating_n.insert(n);
            if self.examples.len() < KEPT_EXAMPLES {
                self.examples.push(Lemma1Violation {
                    n,
                    z,
                    b,
                    family: family.to_string(),
                });
            }
        }
    }

    fn merge(&mut self, other: Lemma1Report) {
        self.families += other.families;
        self.max_b_ratio = self.max_b_ratio.max(other.max_b_ratio);
        self.max_z_ratio = self.max_z_ratio.max(other.max_z_ratio);
        self.max_b_ratio_n2 = self.max_b_ratio_n2.max(other.max_b_ratio_n2);
        self.max_z_ratio_n2 = self.max_z_ratio_n2.max(other.max_z_ratio_n2);
        self.violation_count += other.violation_count;
        self.violating_n.extend(other.violating_n);
        for v in other.examples {
            if self.examples.len() < KEPT_EXAMPLES {
                self.examples.push(v);
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub kinds: Vec<KindReport>,
    pub lemma1: Option<Lemma1Report>,
}

impl SuiteReport {
    pub fn mismatches(&self) -> usize {
        self.kinds.iter().map(|k| k.mismatches).sum()
    }
}

fn universe(n: usize) -> Vec<String> {
    (0..n).map(|i| char::from(b'a' + i as u8).to_string()).collect()
}

fn random_set(rng: &mut ChaCha8Rng, n: usize, density: f64) -> SetBits {
    (0..n)
        .filter(|_| rng.gen_bool(density))
        .fold(SetBits::EMPTY, SetBits::with)
}

fn random_family(rng: &mut ChaCha8Rng, names: &[String], max_sets: usize) -> ExplicitFamily {
    let n = names.len();
    let empty = ExplicitFamily::new(names.iter().cloned()).expect("distinct names");
    match rng.gen_range(0..12) {
        0 => empty,
        1 => empty.with_sets([SetBits::EMPTY]),
        _ => {
            let count = rng.gen_range(1..=max_sets.min(1 << n));
            let density = [0.25, 0.5, 0.75][rng.gen_range(0..3)];
            empty.with_sets((0..count).map(|_| random_set(rng, n, density)))
        }
    }
}

/// Members of `f` with one element toggled now and then, plus stray sets.
fn perturbed(rng: &mut ChaCha8Rng, f: &ExplicitFamily) -> ExplicitFamily {
    let n = f.universe().len();
    let mut sets = Vec::new();
    for s in f.iter() {
        if !rng.gen_bool(0.6) {
            continue;
        }
        if rng.gen_bool(0.5) {
            sets.push(SetBits(s.0 ^ 1 << rng.gen_range(0..n)));
        } else {
            sets.push(s);
        }
    }
    while rng.gen_bool(0.3) {
        sets.push(random_set(rng, n, 0.5));
    }
    f.with_sets(sets)
}

fn pairwise_union(a: &ExplicitFamily, b: &ExplicitFamily) -> Vec<SetBits> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x.union(y)))
        .collect()
}

/// Draws one instance of `kind` over a universe of `1..=max_n` elements.
pub fn random_instance(kind: OpKind, rng: &mut ChaCha8Rng, max_n: usize) -> RandomInstance {
    let n = rng.gen_range(1..=max_n.max(1));
    let names = universe(n);
    let mut f = random_family(rng, &names, 10);
    let mut g = None;
    let mut cond = None;
    match kind.arity() {
        Arity::Binary if matches!(kind, OpKind::Quotient | OpKind::Remainder) => {
            let mut divisor = random_family(rng, &names, 3);
            if divisor.is_empty() {
                divisor = divisor.with_sets([random_set(rng, n, 0.3)]);
            }
            if rng.gen_bool(0.5) {
                // plant a nonempty quotient
                let q = random_family(rng, &names, 4);
                let noise = random_family(rng, &names, 3);
                f = f.with_sets(pairwise_union(&divisor, &q).into_iter().chain(noise.iter()));
            }
            g = Some(divisor);
        }
        Arity::Binary => {
            g = Some(if rng.gen_bool(0.5) {
                perturbed(rng, &f)
            } else {
                random_family(rng, &names, 10)
            });
        }
        Arity::Conditioning => {
            let (mut y, mut y_prime) = (Vec::new(), Vec::new());
            for name in &names {
                match rng.gen_range(0..4) {
                    0 => y.push(name.clone()),
                    1 => y_prime.push(name.clone()),
                    _ => {}
                }
            }
            cond = Some(Conditioning { y, y_prime });
        }
        Arity::Unary => {}
    }
    RandomInstance { kind, f, g, cond }
}

fn kind_seed(seed: u64, kind: OpKind) -> u64 {
    let idx = OpKind::ALL.iter().position(|&k| k == kind).expect("listed kind") as u64;
    seed ^ (idx + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

struct Managers {
    zdd: Vec<DiagramManager>,
    bdd: Vec<DiagramManager>,
}

impl Managers {
    fn new(max_n: usize) -> Result<Self> {
        let mut zdd = Vec::new();
        let mut bdd = Vec::new();
        for n in 0..=max_n {
            let order = VariableOrder::new(universe(n))?;
            zdd.push(DiagramManager::new(Semantics::Zdd, order.clone()));
            bdd.push(DiagramManager::new(Semantics::Bdd, order));
        }
        Ok(Managers { zdd, bdd })
    }
}

fn evaluate(mgr: &mut DiagramManager, inst: &RandomInstance) -> Result<(Vec<Family>, ExplicitFamily)> {
    let f = mgr.from_explicit(&inst.f)?;
    let g = inst.g.as_ref().map(|g| mgr.from_explicit(g)).transpose()?;
    let out = match &inst.cond {
        Some(c) => mgr.condition(f, &c.y, &c.y_prime)?,
        None => mgr.apply(inst.kind, f, g)?,
    };
    let explicit = mgr.to_explicit(out, DEFAULT_EXPLICIT_CAP)?;
    Ok(([f].into_iter().chain(g).chain([out]).collect(), explicit))
}

fn describe(inst: &RandomInstance, detail: &str) -> String {
    let mut s = format!("{} f={}", inst.kind, inst.f);
    if let Some(g) = &inst.g {
        s += &format!(" g={g}");
    }
    if let Some(c) = &inst.cond {
        s += &format!(" Y={:?} Y'={:?}", c.y, c.y_prime);
    }
    format!("{s}: {detail}")
}

fn run_kind(kind: OpKind, cfg: &SuiteConfig) -> Result<(KindReport, Lemma1Report)> {
    let mut rng = ChaCha8Rng::seed_from_u64(kind_seed(cfg.seed, kind));
    let mut managers = Managers::new(cfg.max_n)?;
    let mut report = KindReport {
        kind,
        instances: 0,
        mismatches: 0,
        examples: Vec::new(),
    };
    let mut lemma1 = Lemma1Report::default();
    for _ in 0..cfg.instances_per_kind {
        let inst = random_instance(kind, &mut rng, cfg.max_n);
        let n = inst.f.universe().len();
        report.instances += 1;
        let want = oracle_apply(kind, &inst.f, inst.g.as_ref(), inst.cond.as_ref());
        let got = evaluate(&mut managers.zdd[n], &inst);
        let failure = match (&got, &want) {
            (Ok((_, got)), Ok(want)) if got == want => None,
            (Ok((_, got)), Ok(want)) => Some(format!("diagram gave {got}, oracle gave {want}")),
            (Err(e), _) => Some(format!("diagram failed: {e}")),
            (_, Err(e)) => Some(format!("oracle failed: {e}")),
        };
        if let Some(detail) = failure {
            report.mismatches += 1;
            if report.examples.len() < KEPT_EXAMPLES {
                report.examples.push(describe(&inst, &detail));
            }
        }
        if cfg.measure_conversion {
            if let Ok((families, _)) = got {
                let zdd = &managers.zdd[n];
                for fam in families {
                    let z = zdd.node_count(fam)?;
                    let converted = zdd.convert_semantics(fam, &mut managers.bdd[n])?;
                    let b = managers.bdd[n].node_count(converted)?;
                    let explicit = zdd.to_explicit(fam, DEFAULT_EXPLICIT_CAP)?;
                    lemma1.record(n, z, b, &explicit);
                }
            }
        }
    }
    Ok((report, lemma1))
}

/// Runs every operation kind on `instances_per_kind` random instances.
pub fn run_equivalence_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let per_kind: Vec<(KindReport, Lemma1Report)> = OpKind::ALL
        .par_iter()
        .map(|&kind| run_kind(kind, cfg))
        .collect::<Result<_>>()?;
    let mut lemma1 = Lemma1Report::default();
    let mut kinds = Vec::new();
    for (k, l) in per_kind {
        kinds.push(k);
        lemma1.merge(l);
    }
    Ok(SuiteReport {
        kinds,
        lemma1: cfg.measure_conversion.then_some(lemma1),
    })
}

#[derive(Clone, Debug, Default)]
pub struct ConditioningReport {
    pub instances: usize,
    pub bound_violations: Vec<String>,
    pub content_mismatches: Vec<String>,
}

impl ConditioningReport {
    pub fn passed(&self) -> bool {
        self.bound_violations.is_empty() && self.content_mismatches.is_empty()
    }
}

/// Conditions `count` random families on random disjoint `(Y, Y′)`, checking
/// the size bound `Z(F|Y,Y′) ≤ Z(F)·(n+2)` and the contents against the oracle.
pub fn run_conditioning_suite(count: usize, seed: u64, max_n: usize) -> Result<ConditioningReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut managers = Managers::new(max_n)?;
    let mut report = ConditioningReport::default();
    for _ in 0..count {
        let mut inst = random_instance(OpKind::Condition, &mut rng, max_n);
        let n = inst.f.universe().len();
        // larger families than the equivalence suite draws
        if rng.gen_bool(0.5) {
            let names = inst.f.universe().to_vec();
            inst.f = random_family(&mut rng, &names, 40);
        }
        report.instances += 1;
        let mgr = &mut managers.zdd[n];
        let (families, got) = evaluate(mgr, &inst)?;
        let (z_in, z_out) = (mgr.node_count(families[0])?, mgr.node_count(families[1])?);
        if z_out > z_in * (n + 2) {
            report.bound_violations.push(describe(
                &inst,
                &format!("{z_out} nodes exceed {z_in}·{}", n + 2),
            ));
        }
        let want = oracle_apply(OpKind::Condition, &inst.f, None, inst.cond.as_ref())?;
        if got != want {
            report
                .content_mismatches
                .push(describe(&inst, &format!("diagram gave {got}, oracle gave {want}")));
        }
    }
    Ok(report)
}
