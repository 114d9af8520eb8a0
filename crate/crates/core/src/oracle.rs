//! Brute-force reference semantics over explicit families.
//!
//! Every operation is evaluated straight from its set-comprehension definition.
//! Quantifiers over "all sets S" run over the full powerset of the universe,
//! which caps those operations at [`MAX_ORACLE_UNIVERSE`] elements.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::explicit::{ExplicitFamily, SetBits};
use crate::kernel::{DiagramManager, VariableOrder};
use crate::ops::OpKind;

pub const MAX_ORACLE_UNIVERSE: usize = 16;

/// Largest universe for which exhaustive order search is allowed.
pub const MAX_EXHAUSTIVE_ORDER: usize = 8;

/// Conditioning sets `(Y, Y′)` by element name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Conditioning {
    pub y: Vec<String>,
    pub y_prime: Vec<String>,
}

impl Conditioning {
    pub fn new<I, J, S, T>(y: I, y_prime: J) -> Self
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = T>,
        S: Into<String>,
        T: Into<String>,
    {
        Conditioning {
            y: y.into_iter().map(Into::into).collect(),
            y_prime: y_prime.into_iter().map(Into::into).collect(),
        }
    }
}

fn all_subsets(n: usize) -> Result<impl Iterator<Item = SetBits>> {
    if n > MAX_ORACLE_UNIVERSE {
        return Err(Error::UniverseTooLarge {
            n,
            max: MAX_ORACLE_UNIVERSE,
        });
    }
    Ok((0u128..1 << n).map(SetBits))
}

fn pairwise(
    f: &ExplicitFamily,
    g: &ExplicitFamily,
    combine: impl Fn(SetBits, SetBits) -> Option<SetBits>,
) -> ExplicitFamily {
    f.with_sets(f.iter().cartesian_product(g.iter().collect_vec()).filter_map(|(a, b)| combine(a, b)))
}

fn quotient(f: &ExplicitFamily, g: &ExplicitFamily) -> Result<ExplicitFamily> {
    if g.is_empty() {
        return Err(Error::EmptyDivisor);
    }
    let n = f.universe().len();
    Ok(f.with_sets(all_subsets(n)?.filter(|&s| {
        g.iter()
            .all(|d| f.contains(s.union(d)) && s.intersection(d).is_empty())
    })))
}

fn minimal_members(f: &ExplicitFamily) -> ExplicitFamily {
    f.with_sets(
        f.iter()
            .filter(|&a| f.iter().all(|b| !b.is_subset(a) || a == b)),
    )
}

fn closure(f: &ExplicitFamily) -> ExplicitFamily {
    let members: Vec<SetBits> = f.iter().collect();
    if members.len() <= MAX_ORACLE_UNIVERSE {
        // one intersection per nonempty subfamily
        let out = (1u32..1 << members.len()).map(|mask| {
            members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &s)| s)
                .reduce(SetBits::intersection)
                .expect("nonempty subfamily")
        });
        return f.with_sets(out);
    }
    let mut current: BTreeSet<SetBits> = members.into_iter().collect();
    loop {
        let next: BTreeSet<SetBits> = current
            .iter()
            .cartesian_product(current.iter())
            .map(|(&a, &b)| a.intersection(b))
            .chain(current.iter().copied())
            .collect();
        if next.len() == current.len() {
            return f.with_sets(current);
        }
        current = next;
    }
}

fn condition(f: &ExplicitFamily, c: &Conditioning) -> Result<ExplicitFamily> {
    let y = f.bits_of(c.y.iter().map(String::as_str))?;
    let y_prime = f.bits_of(c.y_prime.iter().map(String::as_str))?;
    if let Some(p) = y.intersection(y_prime).positions().next() {
        return Err(Error::OverlappingCondition(f.universe()[p].clone()));
    }
    Ok(f.with_sets(
        f.iter()
            .filter(|s| y.is_subset(*s) && s.intersection(y_prime).is_empty())
            .map(|s| s.difference(y)),
    ))
}

/// Evaluates `kind` on explicit operands by its literal definition.
///
/// The result keeps the universe of `f`; conditioning removes the elements of
/// `Y` from every set but does not shrink the universe.
pub fn oracle_apply(
    kind: OpKind,
    f: &ExplicitFamily,
    g: Option<&ExplicitFamily>,
    cond: Option<&Conditioning>,
) -> Result<ExplicitFamily> {
    use crate::ops::Arity;
    let g = match (kind.arity(), g) {
        (Arity::Binary, Some(g)) => {
            if g.universe() != f.universe() {
                return Err(Error::UniverseMismatch);
            }
            Some(g)
        }
        (Arity::Binary, None) => return Err(Error::MissingOperand(kind, "a second operand")),
        (_, Some(_)) => return Err(Error::InvalidParameter(format!("{kind} is not binary"))),
        (_, None) => None,
    };
    let n = f.universe().len();
    let out = match kind {
        OpKind::Union => f.with_sets(f.iter().chain(g.unwrap().iter())),
        OpKind::Intersection => f.with_sets(f.iter().filter(|s| g.unwrap().contains(*s))),
        OpKind::Difference => f.with_sets(f.iter().filter(|s| !g.unwrap().contains(*s))),
        OpKind::SymmetricDifference => {
            let g = g.unwrap();
            f.with_sets(
                f.iter()
                    .filter(|s| !g.contains(*s))
                    .chain(g.iter().filter(|s| !f.contains(*s))),
            )
        }
        OpKind::Join => pairwise(f, g.unwrap(), |a, b| Some(a.union(b))),
        OpKind::DisjointJoin => pairwise(f, g.unwrap(), |a, b| {
            a.intersection(b).is_empty().then(|| a.union(b))
        }),
        OpKind::JointJoin => pairwise(f, g.unwrap(), |a, b| {
            (!a.intersection(b).is_empty()).then(|| a.union(b))
        }),
        OpKind::Meet => pairwise(f, g.unwrap(), |a, b| Some(a.intersection(b))),
        OpKind::Delta => pairwise(f, g.unwrap(), |a, b| Some(a.symmetric_difference(b))),
        OpKind::Quotient => quotient(f, g.unwrap())?,
        OpKind::Remainder => {
            let g = g.unwrap();
            let q = quotient(f, g)?;
            let covered = pairwise(g, &q, |a, b| Some(a.union(b)));
            f.with_sets(f.iter().filter(|s| !covered.contains(*s)))
        }
        OpKind::Restrict => {
            let g = g.unwrap();
            f.with_sets(f.iter().filter(|&s| g.iter().any(|w| w.is_subset(s))))
        }
        OpKind::Permit => {
            let g = g.unwrap();
            f.with_sets(f.iter().filter(|&s| g.iter().any(|w| s.is_subset(w))))
        }
        OpKind::Nonsuperset => {
            let g = g.unwrap();
            f.with_sets(f.iter().filter(|&s| g.iter().all(|w| !w.is_subset(s))))
        }
        OpKind::Nonsubset => {
            let g = g.unwrap();
            f.with_sets(f.iter().filter(|&s| g.iter().all(|w| !s.is_subset(w))))
        }
        OpKind::Maximal => f.with_sets(
            f.iter()
                .filter(|&a| f.iter().all(|b| !a.is_subset(b) || a == b)),
        ),
        OpKind::Minimal => minimal_members(f),
        OpKind::Hitting => {
            let hitting = f.with_sets(
                all_subsets(n)?.filter(|&s| f.iter().all(|m| !s.intersection(m).is_empty())),
            );
            minimal_members(&hitting)
        }
        OpKind::Closure => closure(f),
        OpKind::Condition => {
            let c = cond.ok_or(Error::MissingOperand(kind, "conditioning sets"))?;
            condition(f, c)?
        }
    };
    Ok(out)
}

/// Node count of the reduced ZDD of `f` under `order`, derived from residual
/// families alone without building a diagram.
///
/// Each internal node stands for a distinct residual family
/// `{S ∖ P : S ∈ F, S ∩ P = A}` over a prefix `P` of the order, other than
/// `∅` and `{∅}`. The ⊤ terminal is present whenever `F` is nonempty, and ⊥
/// whenever `F` is empty or some node's residual has its least element in
/// every member.
pub fn canonical_zdd_size(f: &ExplicitFamily, order: &VariableOrder) -> Result<usize> {
    if f.is_empty() {
        return Ok(1);
    }
    // rewrite every set as bits over levels
    let level_of: Vec<usize> = f
        .universe()
        .iter()
        .map(|name| order.level_of(name))
        .collect::<Result<_>>()?;
    let n = order.len();
    let sets: Vec<u128> = f
        .iter()
        .map(|s| s.positions().fold(0u128, |acc, p| acc | 1 << level_of[p]))
        .collect();
    let mut residuals: BTreeSet<BTreeSet<u128>> = BTreeSet::new();
    for i in 0..=n {
        let prefix = if i == 128 { u128::MAX } else { (1u128 << i) - 1 };
        let mut groups: BTreeMap<u128, BTreeSet<u128>> = BTreeMap::new();
        for &s in &sets {
            groups.entry(s & prefix).or_default().insert(s & !prefix);
        }
        residuals.extend(groups.into_values());
    }
    let unit: BTreeSet<u128> = [0u128].into();
    let mut internal = 0;
    let mut bottom = false;
    for k in &residuals {
        if *k == unit {
            continue;
        }
        internal += 1;
        let least = k.iter().fold(0u128, |acc, s| acc | s).trailing_zeros();
        if k.iter().all(|s| s >> least & 1 == 1) {
            bottom = true;
        }
    }
    Ok(internal + 1 + usize::from(bottom))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSearchResult {
    pub best_order: VariableOrder,
    pub best_size: usize,
    pub orders_examined: usize,
    pub mode: OrderMode,
}

/// Size of the reduced ZDD of `f` under `order`.
pub fn size_under_order(f: &ExplicitFamily, order: &VariableOrder) -> Result<usize> {
    let mut mgr = DiagramManager::new(crate::kernel::Semantics::Zdd, order.clone());
    let root = mgr.from_explicit(f)?;
    mgr.node_count(root)
}

/// A uniform shuffle of `universe` determined by `seed`.
pub fn shuffled_order(universe: &[String], seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut names = universe.to_vec();
    names.shuffle(&mut rng);
    names
}

/// The shuffles for seeds `seed, seed + 1, …`, `count` of them.
pub fn sampled_orders(universe: &[String], count: usize, seed: u64) -> Vec<Vec<String>> {
    (0..count as u64)
        .map(|i| shuffled_order(universe, seed.wrapping_add(i)))
        .collect()
}

/// Smallest reduced ZDD of `f` over all (or `sample_count` sampled) element orders.
pub fn min_size_over_orders(
    f: &ExplicitFamily,
    mode: OrderMode,
    sample_count: usize,
    seed: u64,
) -> Result<OrderSearchResult> {
    let universe = f.universe().to_vec();
    let n = universe.len();
    let orders: Box<dyn Iterator<Item = Vec<String>>> = match mode {
        OrderMode::Exhaustive => {
            if n > MAX_EXHAUSTIVE_ORDER {
                return Err(Error::UniverseTooLarge {
                    n,
                    max: MAX_EXHAUSTIVE_ORDER,
                });
            }
            Box::new(universe.clone().into_iter().permutations(n))
        }
        OrderMode::Sampled => {
            if sample_count == 0 {
                return Err(Error::InvalidParameter("sample count must be positive".into()));
            }
            Box::new(sampled_orders(&universe, sample_count, seed).into_iter())
        }
    };
    let mut best: Option<(usize, VariableOrder)> = None;
    let mut examined = 0;
    for names in orders {
        let order = VariableOrder::new(names)?;
        let size = size_under_order(f, &order)?;
        examined += 1;
        if best.as_ref().is_none_or(|(b, _)| size < *b) {
            best = Some((size, order));
        }
    }
    let (best_size, best_order) = best.expect("at least one order examined");
    debug_assert_eq!(size_under_order(f, &best_order)?, best_size);
    Ok(OrderSearchResult {
        best_order,
        best_size,
        orders_examined: examined,
        mode,
    })
}
