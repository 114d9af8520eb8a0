//! Named families from the blow-up constructions and the theorem instances built on them.
//!
//! Elements are named `x1..`, `y1..` and `w`. The families over `y` are built
//! by a level-wise counter network (the cardinality and exactly-one
//! primitives) or composed from those through the operation layer.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::kernel::{DiagramManager, Family, NodeRef, VariableOrder};
use crate::ops::OpKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseFamilyKind {
    /// `E_{m,k}`: subsets of `y1..ym` of size `k` containing `y_k`.
    E,
    /// `E′_{m,k} = 2^Y ∖ E_{m,k}` over `y1..ym`.
    EComplement,
    /// Hidden weighted bit family `H_m`.
    H,
    /// `H′_m = 2^Y ∖ H_m`.
    HComplement,
    /// `Q_{m,k}`: exactly one element from row `k` (or column `k − m`) of the `m × m` grid.
    Q,
    /// Permutation family `P_m`.
    P,
    /// `C_m`: the `m`-subsets of `y1..y_{m²}`.
    C,
    /// `T_{m,k} = C_m ∖ Q_{m,k}`.
    T,
    /// `2^X` over `x1..xm`.
    Powerset,
    /// `{{x1},…,{xm}}`.
    SingletonList,
    /// The one-set family `{S_k}` with `S_k` row `k` or column `k − m` of the grid.
    SRowCol,
    /// The one-set family `{R_{k,l}}` of the closure instance.
    RClosure,
}

impl BaseFamilyKind {
    pub const ALL: [BaseFamilyKind; 12] = [
        BaseFamilyKind::E,
        BaseFamilyKind::EComplement,
        BaseFamilyKind::H,
        BaseFamilyKind::HComplement,
        BaseFamilyKind::Q,
        BaseFamilyKind::P,
        BaseFamilyKind::C,
        BaseFamilyKind::T,
        BaseFamilyKind::Powerset,
        BaseFamilyKind::SingletonList,
        BaseFamilyKind::SRowCol,
        BaseFamilyKind::RClosure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BaseFamilyKind::E => "E",
            BaseFamilyKind::EComplement => "E_complement",
            BaseFamilyKind::H => "H",
            BaseFamilyKind::HComplement => "H_complement",
            BaseFamilyKind::Q => "Q",
            BaseFamilyKind::P => "P",
            BaseFamilyKind::C => "C",
            BaseFamilyKind::T => "T",
            BaseFamilyKind::Powerset => "powerset",
            BaseFamilyKind::SingletonList => "singleton_list",
            BaseFamilyKind::SRowCol => "S_row_col",
            BaseFamilyKind::RClosure => "R_closure",
        }
    }

    /// Element names the family is defined over, in the default order.
    pub fn universe(self, m: usize) -> Vec<String> {
        match self {
            BaseFamilyKind::E
            | BaseFamilyKind::EComplement
            | BaseFamilyKind::H
            | BaseFamilyKind::HComplement => names("y", m),
            BaseFamilyKind::Q
            | BaseFamilyKind::P
            | BaseFamilyKind::C
            | BaseFamilyKind::T
            | BaseFamilyKind::SRowCol => names("y", m * m),
            BaseFamilyKind::Powerset | BaseFamilyKind::SingletonList => names("x", m),
            BaseFamilyKind::RClosure => [names("x", 2 * m), names("y", m * m)].concat(),
        }
    }
}

impl fmt::Display for BaseFamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for BaseFamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('-', "_").to_ascii_lowercase();
        BaseFamilyKind::ALL
            .into_iter()
            .find(|k| k.name().to_ascii_lowercase() == key)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family kind `{s}`")))
    }
}

/// `prefix1..prefix{count}`.
pub fn names(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

/// 1-based `y` indices of row `k` (for `k ≤ m`) or column `k − m` of the `m × m` grid.
pub fn grid_line(m: usize, k: usize) -> Vec<usize> {
    if k <= m {
        (1..=m).map(|j| m * (k - 1) + j).collect()
    } else {
        let j = k - m;
        (0..m).map(|i| m * i + j).collect()
    }
}

fn check_index(what: &str, k: Option<usize>, max: usize) -> Result<usize> {
    match k {
        Some(k) if (1..=max).contains(&k) => Ok(k),
        Some(k) => Err(Error::InvalidParameter(format!(
            "{what} = {k} outside 1..={max}"
        ))),
        None => Err(Error::InvalidParameter(format!("{what} is required"))),
    }
}

/// Builds the family of subsets of `support` accepted by a counter network.
///
/// Elements of `support` are `(name, id)` pairs; they are visited in the
/// manager's level order and `step` folds each membership bit into the state.
fn build_network<S, F, A>(
    mgr: &mut DiagramManager,
    support: &[(String, usize)],
    start: S,
    step: F,
    accept: A,
) -> Result<Family>
where
    S: Copy + Eq + Hash,
    F: Fn(S, usize, bool) -> S,
    A: Fn(S) -> bool,
{
    let mut elems: Vec<(u32, usize)> = support
        .iter()
        .map(|(name, id)| Ok((mgr.order().level_of(name)? as u32, *id)))
        .collect::<Result<_>>()?;
    elems.sort_unstable();
    let mut memo = FxHashMap::default();
    let root = network_rec(mgr, &elems, 0, start, &step, &accept, &mut memo);
    Ok(mgr.wrap(root))
}

fn network_rec<S, F, A>(
    mgr: &mut DiagramManager,
    elems: &[(u32, usize)],
    pos: usize,
    state: S,
    step: &F,
    accept: &A,
    memo: &mut FxHashMap<(usize, S), NodeRef>,
) -> NodeRef
where
    S: Copy + Eq + Hash,
    F: Fn(S, usize, bool) -> S,
    A: Fn(S) -> bool,
{
    if pos == elems.len() {
        return if accept(state) {
            NodeRef::TOP
        } else {
            NodeRef::BOTTOM
        };
    }
    if let Some(&r) = memo.get(&(pos, state)) {
        return r;
    }
    let (level, id) = elems[pos];
    let lo = network_rec(mgr, elems, pos + 1, step(state, id, false), step, accept, memo);
    let hi = network_rec(mgr, elems, pos + 1, step(state, id, true), step, accept, memo);
    let r = mgr.mk(level, lo, hi);
    memo.insert((pos, state), r);
    r
}

fn y_support(count: usize) -> Vec<(String, usize)> {
    (1..=count).map(|i| (format!("y{i}"), i)).collect()
}

fn e_family(mgr: &mut DiagramManager, m: usize, k: usize, inverted: bool) -> Result<Family> {
    let cap = k as u32 + 1;
    build_network(
        mgr,
        &y_support(m),
        (0u32, false),
        |(count, seen), id, bit| {
            if bit {
                ((count + 1).min(cap), seen || id == k)
            } else {
                (count, seen)
            }
        },
        |(count, seen)| (count == k as u32 && seen) != inverted,
    )
}

/// Counts selected members of `line` (saturating at 2) and all members (saturating at `cap`).
fn grid_counter(
    mgr: &mut DiagramManager,
    m: usize,
    line: Option<&[usize]>,
    cap: u32,
    accept: impl Fn(u32, u32) -> bool,
) -> Result<Family> {
    let mut in_line = vec![false; m * m + 1];
    for &i in line.unwrap_or(&[]) {
        in_line[i] = true;
    }
    build_network(
        mgr,
        &y_support(m * m),
        (0u32, 0u32),
        |(all, sel), id, bit| {
            if !bit {
                return (all, sel);
            }
            let sel = if in_line[id] { (sel + 1).min(2) } else { sel };
            ((all + 1).min(cap), sel)
        },
        |(all, sel)| accept(all, sel),
    )
}

/// Builds one of the named families in `mgr`, whose order must contain the
/// family's elements.
pub fn gen_base_family(
    mgr: &mut DiagramManager,
    kind: BaseFamilyKind,
    m: usize,
    k: Option<usize>,
    l: Option<usize>,
) -> Result<Family> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    match kind {
        BaseFamilyKind::E => {
            let k = check_index("k", k, m)?;
            e_family(mgr, m, k, false)
        }
        BaseFamilyKind::EComplement => {
            let k = check_index("k", k, m)?;
            e_family(mgr, m, k, true)
        }
        BaseFamilyKind::H => {
            let mut h = mgr.empty();
            for k in 1..=m {
                let e = e_family(mgr, m, k, false)?;
                h = mgr.union(h, e)?;
            }
            Ok(h)
        }
        BaseFamilyKind::HComplement => {
            let h = gen_base_family(mgr, BaseFamilyKind::H, m, None, None)?;
            let all = mgr.powerset(names("y", m))?;
            mgr.difference(all, h)
        }
        BaseFamilyKind::Q => {
            let k = check_index("k", k, 2 * m)?;
            grid_counter(mgr, m, Some(&grid_line(m, k)), 0, |_, sel| sel == 1)
        }
        BaseFamilyKind::P => {
            let mut p = gen_base_family(mgr, BaseFamilyKind::Q, m, Some(1), None)?;
            for k in 2..=2 * m {
                let q = gen_base_family(mgr, BaseFamilyKind::Q, m, Some(k), None)?;
                p = mgr.intersection(p, q)?;
            }
            Ok(p)
        }
        BaseFamilyKind::C => {
            let target = m as u32;
            grid_counter(mgr, m, None, target + 1, move |all, _| all == target)
        }
        BaseFamilyKind::T => {
            let k = check_index("k", k, 2 * m)?;
            let target = m as u32;
            grid_counter(mgr, m, Some(&grid_line(m, k)), target + 1, move |all, sel| {
                all == target && sel != 1
            })
        }
        BaseFamilyKind::Powerset => mgr.powerset(names("x", m)),
        BaseFamilyKind::SingletonList => {
            let mut out = mgr.empty();
            for name in names("x", m) {
                let s = mgr.single_set([name])?;
                out = mgr.union(out, s)?;
            }
            Ok(out)
        }
        BaseFamilyKind::SRowCol => {
            let k = check_index("k", k, 2 * m)?;
            mgr.single_set(grid_line(m, k).into_iter().map(|i| format!("y{i}")))
        }
        BaseFamilyKind::RClosure => {
            let k = check_index("k", k, m)?;
            let l = check_index("l", l, m)?;
            let row = grid_line(m, k);
            let col = grid_line(m, m + l);
            let keep = m * (k - 1) + l;
            let xs = (1..=2 * m)
                .filter(|&i| i != k && i != m + l)
                .map(|i| format!("x{i}"));
            let ys = (1..=m * m)
                .filter(|i| *i == keep || (!row.contains(i) && !col.contains(i)))
                .map(|i| format!("y{i}"));
            mgr.single_set(xs.chain(ys))
        }
    }
}

/// Operations with a blow-up instance whose output contains `H_m`.
pub const HWB_OPS: [OpKind; 7] = [
    OpKind::Join,
    OpKind::DisjointJoin,
    OpKind::JointJoin,
    OpKind::Meet,
    OpKind::Delta,
    OpKind::Quotient,
    OpKind::Remainder,
];

/// Operations with a blow-up instance whose output contains `P_m`.
pub const PERMUTATION_OPS: [OpKind; 8] = [
    OpKind::Restrict,
    OpKind::Permit,
    OpKind::Nonsuperset,
    OpKind::Nonsubset,
    OpKind::Maximal,
    OpKind::Minimal,
    OpKind::Hitting,
    OpKind::Closure,
];

pub fn is_hwb_op(op: OpKind) -> bool {
    HWB_OPS.contains(&op)
}

pub fn is_blowup_op(op: OpKind) -> bool {
    is_hwb_op(op) || PERMUTATION_OPS.contains(&op)
}

/// Default element order of the instance for `op`.
pub fn theorem_universe(op: OpKind, m: usize) -> Result<Vec<String>> {
    if is_hwb_op(op) {
        Ok([names("x", m), names("y", m)].concat())
    } else if matches!(op, OpKind::Maximal | OpKind::Minimal) {
        Ok([vec!["w".to_string()], names("x", 2 * m), names("y", m * m)].concat())
    } else if is_blowup_op(op) {
        Ok([names("x", 2 * m), names("y", m * m)].concat())
    } else {
        Err(Error::UnsupportedOp(op))
    }
}

/// A blow-up instance together with the manager holding its families.
pub struct TheoremInstance {
    pub op: OpKind,
    pub m: usize,
    pub manager: DiagramManager,
    pub f: Family,
    pub g: Option<Family>,
    /// The proved output, when there is a single closed form for it.
    pub expected: Option<Family>,
}

impl TheoremInstance {
    pub fn universe(&self) -> &VariableOrder {
        self.manager.order()
    }

    /// Applies the instance's operation to its operands.
    pub fn evaluate(&mut self) -> Result<Family> {
        self.manager.apply(self.op, self.f, self.g)
    }
}

pub fn gen_theorem_instance(op: OpKind, m: usize) -> Result<TheoremInstance> {
    let universe = theorem_universe(op, m)?;
    gen_theorem_instance_with_order(op, m, VariableOrder::new(universe)?)
}

/// As [`gen_theorem_instance`] under a caller-chosen order of the same elements.
pub fn gen_theorem_instance_with_order(
    op: OpKind,
    m: usize,
    order: VariableOrder,
) -> Result<TheoremInstance> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("m = {m} must be at least 2")));
    }
    let mut expected_names = theorem_universe(op, m)?;
    let mut given: Vec<String> = order.names().to_vec();
    expected_names.sort();
    given.sort();
    if expected_names != given {
        return Err(Error::UniverseMismatch);
    }
    let mut mgr = DiagramManager::new(crate::kernel::Semantics::Zdd, order);
    let (f, g, expected) = build_instance(&mut mgr, op, m)?;
    Ok(TheoremInstance {
        op,
        m,
        manager: mgr,
        f,
        g,
        expected,
    })
}

type Parts = (Family, Option<Family>, Option<Family>);

fn build_instance(mgr: &mut DiagramManager, op: OpKind, m: usize) -> Result<Parts> {
    use BaseFamilyKind as K;
    if is_hwb_op(op) {
        let x = mgr.single_set(names("x", m))?;
        let h = gen_base_family(mgr, K::H, m, None, None)?;
        let x_join_h = mgr.join(x, h)?;
        let e_kind = if matches!(op, OpKind::Quotient | OpKind::Remainder) {
            K::EComplement
        } else {
            K::E
        };
        let mut f = mgr.empty();
        for k in 1..=m {
            let xk = mgr.single_set([format!("x{k}")])?;
            let e = gen_base_family(mgr, e_kind, m, Some(k), None)?;
            let part = mgr.join(xk, e)?;
            f = mgr.union(f, part)?;
        }
        return Ok(match op {
            OpKind::Join | OpKind::JointJoin => (f, Some(x), Some(x_join_h)),
            OpKind::DisjointJoin => {
                let mut g = mgr.empty();
                for k in 1..=m {
                    let rest = (1..=m).filter(|&i| i != k).map(|i| format!("x{i}"));
                    let s = mgr.single_set(rest)?;
                    g = mgr.union(g, s)?;
                }
                (f, Some(g), Some(x_join_h))
            }
            OpKind::Meet => {
                let y = mgr.single_set(names("y", m))?;
                (f, Some(y), Some(h))
            }
            OpKind::Delta => {
                let all_x = gen_base_family(mgr, K::Powerset, m, None, None)?;
                let expected = mgr.join(all_x, h)?;
                (f, Some(all_x), Some(expected))
            }
            OpKind::Quotient => {
                let g = gen_base_family(mgr, K::SingletonList, m, None, None)?;
                let h_c = gen_base_family(mgr, K::HComplement, m, None, None)?;
                (f, Some(g), Some(h_c))
            }
            _ => {
                let g = gen_base_family(mgr, K::SingletonList, m, None, None)?;
                (f, Some(g), None)
            }
        });
    }
    let xs = names("x", 2 * m);
    let p = gen_base_family(mgr, K::P, m, None, None)?;
    let c = gen_base_family(mgr, K::C, m, None, None)?;
    match op {
        OpKind::Hitting => {
            let mut f = mgr.empty();
            for k in 1..=2 * m {
                let s = gen_base_family(mgr, K::SRowCol, m, Some(k), None)?;
                f = mgr.union(f, s)?;
            }
            return Ok((f, None, Some(p)));
        }
        OpKind::Closure => {
            let mut f = mgr.empty();
            for k in 1..=m {
                for l in 1..=m {
                    let r = gen_base_family(mgr, K::RClosure, m, Some(k), Some(l))?;
                    f = mgr.union(f, r)?;
                }
            }
            return Ok((f, None, None));
        }
        _ => {}
    }
    let g = permutation_witnesses(mgr, m)?;
    let x = mgr.single_set(&xs)?;
    Ok(match op {
        OpKind::Permit => {
            let expected = mgr.difference(c, p)?;
            (c, Some(g), Some(expected))
        }
        OpKind::Nonsubset => (c, Some(g), Some(p)),
        OpKind::Restrict => {
            let f = mgr.join(x, c)?;
            let c_minus_p = mgr.difference(c, p)?;
            let expected = mgr.join(x, c_minus_p)?;
            (f, Some(g), Some(expected))
        }
        OpKind::Nonsuperset => {
            let f = mgr.join(x, c)?;
            let expected = mgr.join(x, p)?;
            (f, Some(g), Some(expected))
        }
        OpKind::Maximal => {
            let w = mgr.single_set(["w"])?;
            let wg = mgr.join(w, g)?;
            let f = mgr.union(c, wg)?;
            let expected = mgr.union(p, wg)?;
            (f, None, Some(expected))
        }
        OpKind::Minimal => {
            let wx = mgr.single_set(std::iter::once("w".to_string()).chain(xs))?;
            let wxc = mgr.join(wx, c)?;
            let f = mgr.union(g, wxc)?;
            let wxp = mgr.join(wx, p)?;
            let expected = mgr.union(g, wxp)?;
            (f, None, Some(expected))
        }
        _ => unreachable!("non-permutation op {op}"),
    })
}

/// `⋃_{k=1}^{2m} {{x_k}} ⊔ T_{m,k}`.
fn permutation_witnesses(mgr: &mut DiagramManager, m: usize) -> Result<Family> {
    let mut g = mgr.empty();
    for k in 1..=2 * m {
        let xk = mgr.single_set([format!("x{k}")])?;
        let t = gen_base_family(mgr, BaseFamilyKind::T, m, Some(k), None)?;
        let part = mgr.join(xk, t)?;
        g = mgr.union(g, part)?;
    }
    Ok(g)
}

/// `⋃_k {{x_k}} ⊔ (E′_{m,k} ∖ H′_m)`, the remainder of the quotient instance,
/// composed in `mgr`.
pub fn remainder_expected(mgr: &mut DiagramManager, m: usize) -> Result<Family> {
    let h_c = gen_base_family(mgr, BaseFamilyKind::HComplement, m, None, None)?;
    let mut out = mgr.empty();
    for k in 1..=m {
        let xk = mgr.single_set([format!("x{k}")])?;
        let e_c = gen_base_family(mgr, BaseFamilyKind::EComplement, m, Some(k), None)?;
        let rest = mgr.difference(e_c, h_c)?;
        let part = mgr.join(xk, rest)?;
        out = mgr.union(out, part)?;
    }
    Ok(out)
}
