//! Canonical reduced decision-diagram store.
//!
//! A [`DiagramManager`] owns a hash-consed node table. Every node it hands out
//! is reduced under the manager's [`Semantics`]: in ZDD mode no node has a
//! `⊥` hi-child, in BDD mode no node has equal children, and in both modes no
//! two nodes share `(level, lo, hi)`. Because of that, two families in one
//! manager are equal exactly when their root handles are equal.

mod convert;
mod dot;
mod order;

use std::sync::atomic::{AtomicU64, Ordering};

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};
use crate::explicit::{ExplicitFamily, SetBits, MAX_EXPLICIT_UNIVERSE};

pub use order::VariableOrder;

/// Default cap on the number of sets [`DiagramManager::to_explicit`] will enumerate.
pub const DEFAULT_EXPLICIT_CAP: u64 = 1 << 20;

/// Level assigned to both terminals; larger than any variable level.
pub(crate) const TERMINAL_LEVEL: u32 = u32::MAX;

/// Handle of a node inside one manager.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeRef(pub(crate) u32);

impl NodeRef {
    /// `⊥`: the empty family in ZDD mode, constant false in BDD mode.
    pub const BOTTOM: NodeRef = NodeRef(0);
    /// `⊤`: the family `{∅}` in ZDD mode, constant true in BDD mode.
    pub const TOP: NodeRef = NodeRef(1);

    pub fn is_terminal(self) -> bool {
        self.0 < 2
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub level: u32,
    pub lo: NodeRef,
    pub hi: NodeRef,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Semantics {
    Zdd,
    Bdd,
}

impl Semantics {
    pub fn name(self) -> &'static str {
        match self {
            Semantics::Zdd => "zdd",
            Semantics::Bdd => "bdd",
        }
    }
}

impl std::str::FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "zdd" => Ok(Semantics::Zdd),
            "bdd" => Ok(Semantics::Bdd),
            _ => Err(Error::InvalidParameter(format!("unknown semantics `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ManagerId(u64);

static NEXT_MANAGER_ID: AtomicU64 = AtomicU64::new(1);

/// A root node tagged with the manager that owns it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    manager: ManagerId,
    root: NodeRef,
}

impl Family {
    pub fn root(self) -> NodeRef {
        self.root
    }

    pub fn manager_id(self) -> ManagerId {
        self.manager
    }
}

/// Memo-table tags, one per recursive operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum CacheTag {
    Union,
    Intersection,
    Difference,
    SymmetricDifference,
    Join,
    DisjointJoin,
    JointJoin,
    Meet,
    Delta,
    Quotient,
    Restrict,
    Permit,
    Nonsuperset,
    Nonsubset,
    Maximal,
    Minimal,
    Hitting,
    Closure,
    Eliminate,
}

pub struct DiagramManager {
    id: ManagerId,
    semantics: Semantics,
    order: VariableOrder,
    nodes: Vec<Node>,
    unique: FxHashMap<Node, NodeRef>,
    pub(crate) cache: FxHashMap<(CacheTag, NodeRef, NodeRef), NodeRef>,
}

impl DiagramManager {
    pub fn new(semantics: Semantics, order: VariableOrder) -> Self {
        let terminal = |r| Node {
            level: TERMINAL_LEVEL,
            lo: r,
            hi: r,
        };
        DiagramManager {
            id: ManagerId(NEXT_MANAGER_ID.fetch_add(1, Ordering::Relaxed)),
            semantics,
            order,
            nodes: vec![terminal(NodeRef::BOTTOM), terminal(NodeRef::TOP)],
            unique: FxHashMap::default(),
            cache: FxHashMap::default(),
        }
    }

    pub fn zdd<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ok(DiagramManager::new(Semantics::Zdd, VariableOrder::new(names)?))
    }

    pub fn bdd<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ok(DiagramManager::new(Semantics::Bdd, VariableOrder::new(names)?))
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    pub fn order(&self) -> &VariableOrder {
        &self.order
    }

    pub fn num_vars(&self) -> usize {
        self.order.len()
    }

    /// Number of stored nodes, terminals included.
    pub fn store_size(&self) -> usize {
        self.nodes.len()
    }

    pub fn clear_caches(&mut self) {
        self.cache.clear();
    }

    pub fn empty(&self) -> Family {
        self.wrap(NodeRef::BOTTOM)
    }

    /// `{∅}` in ZDD mode. In BDD mode `⊤` is the full powerset.
    pub fn base(&self) -> Family {
        self.wrap(NodeRef::TOP)
    }

    pub(crate) fn wrap(&self, root: NodeRef) -> Family {
        Family {
            manager: self.id,
            root,
        }
    }

    pub(crate) fn check(&self, f: Family) -> Result<NodeRef> {
        if f.manager != self.id {
            return Err(Error::ManagerMismatch);
        }
        Ok(f.root)
    }

    pub(crate) fn require_zdd(&self) -> Result<()> {
        match self.semantics {
            Semantics::Zdd => Ok(()),
            Semantics::Bdd => Err(Error::SemanticsMismatch { expected: "zdd" }),
        }
    }

    pub fn node(&self, r: NodeRef) -> Node {
        self.nodes[r.0 as usize]
    }

    pub(crate) fn level(&self, r: NodeRef) -> u32 {
        self.nodes[r.0 as usize].level
    }

    /// Level of `r` with terminals mapped to `num_vars`.
    pub(crate) fn level_or_end(&self, r: NodeRef) -> u32 {
        if r.is_terminal() {
            self.num_vars() as u32
        } else {
            self.level(r)
        }
    }

    /// Canonical node constructor; callers guarantee the ordered property.
    pub(crate) fn mk(&mut self, level: u32, lo: NodeRef, hi: NodeRef) -> NodeRef {
        debug_assert!(level < self.level(lo) && level < self.level(hi));
        match self.semantics {
            Semantics::Zdd if hi == NodeRef::BOTTOM => return lo,
            Semantics::Bdd if lo == hi => return lo,
            _ => {}
        }
        let node = Node { level, lo, hi };
        if let Some(&r) = self.unique.get(&node) {
            return r;
        }
        let r = NodeRef(self.nodes.len() as u32);
        self.nodes.push(node);
        self.unique.insert(node, r);
        r
    }

    /// Returns the reduced node for `(level, lo, hi)`, creating it if needed.
    pub fn make_node(&mut self, level: usize, lo: NodeRef, hi: NodeRef) -> Result<NodeRef> {
        for r in [lo, hi] {
            if r.0 as usize >= self.nodes.len() {
                return Err(Error::InvalidHandle(r.0));
            }
        }
        let (lo_level, hi_level) = (self.level_or_end(lo), self.level_or_end(hi));
        if level >= self.num_vars() || level as u32 >= lo_level || level as u32 >= hi_level {
            return Err(Error::OrderViolation {
                level,
                lo_level: lo_level as usize,
                hi_level: hi_level as usize,
            });
        }
        Ok(self.mk(level as u32, lo, hi))
    }

    /// Wraps a handle produced by [`make_node`](Self::make_node) as a family.
    pub fn family(&self, root: NodeRef) -> Result<Family> {
        if root.0 as usize >= self.nodes.len() {
            return Err(Error::InvalidHandle(root.0));
        }
        Ok(self.wrap(root))
    }

    /// Builds the reduced diagram of an explicit family under this manager's order.
    pub fn from_explicit(&mut self, family: &ExplicitFamily) -> Result<Family> {
        let to_level: Vec<u32> = family
            .universe()
            .iter()
            .map(|name| self.order.level_of(name).map(|l| l as u32))
            .collect::<Result<_>>()?;
        let mut sets: Vec<Vec<u32>> = family
            .iter()
            .map(|bits| {
                let mut levels: Vec<u32> = bits.positions().map(|p| to_level[p]).collect();
                levels.sort_unstable();
                levels
            })
            .collect();
        sets.sort_unstable();
        let slices: Vec<&[u32]> = sets.iter().map(Vec::as_slice).collect();
        let root = self.build_sorted(&slices, 0);
        Ok(self.wrap(root))
    }

    fn build_sorted(&mut self, sets: &[&[u32]], level: u32) -> NodeRef {
        if sets.is_empty() {
            return NodeRef::BOTTOM;
        }
        let split = match self.semantics {
            Semantics::Zdd => match sets.iter().filter_map(|s| s.first()).min() {
                None => return NodeRef::TOP,
                Some(&v) => v,
            },
            Semantics::Bdd => {
                if level as usize == self.num_vars() {
                    return NodeRef::TOP;
                }
                level
            }
        };
        let (with, without): (Vec<&[u32]>, Vec<&[u32]>) =
            sets.iter().partition(|s| s.first() == Some(&split));
        let with: Vec<&[u32]> = with.into_iter().map(|s| &s[1..]).collect();
        let lo = self.build_sorted(&without, split + 1);
        let hi = self.build_sorted(&with, split + 1);
        self.mk(split, lo, hi)
    }

    /// Enumerates the sets denoted by `f`, failing if there are more than `cap`.
    pub fn to_explicit(&self, f: Family, cap: u64) -> Result<ExplicitFamily> {
        let root = self.check(f)?;
        let n = self.num_vars();
        if n > MAX_EXPLICIT_UNIVERSE {
            return Err(Error::UniverseTooLarge {
                n,
                max: MAX_EXPLICIT_UNIVERSE,
            });
        }
        let count = self.count_sets(f)?;
        if count > cap {
            return Err(Error::CapExceeded { count, cap });
        }
        let mut out = Vec::with_capacity(count as usize);
        match self.semantics {
            Semantics::Zdd => self.enumerate_zdd(root, SetBits::EMPTY, &mut out),
            Semantics::Bdd => self.enumerate_bdd(root, 0, SetBits::EMPTY, &mut out),
        }
        ExplicitFamily::from_bits(self.order.names().iter().cloned(), out)
    }

    fn enumerate_zdd(&self, r: NodeRef, acc: SetBits, out: &mut Vec<SetBits>) {
        match r {
            NodeRef::BOTTOM => {}
            NodeRef::TOP => out.push(acc),
            _ => {
                let node = self.node(r);
                self.enumerate_zdd(node.lo, acc, out);
                self.enumerate_zdd(node.hi, acc.with(node.level as usize), out);
            }
        }
    }

    fn enumerate_bdd(&self, r: NodeRef, level: u32, acc: SetBits, out: &mut Vec<SetBits>) {
        if r == NodeRef::BOTTOM {
            return;
        }
        if level as usize == self.num_vars() {
            out.push(acc);
            return;
        }
        let (lo, hi) = if self.level(r) == level {
            let node = self.node(r);
            (node.lo, node.hi)
        } else {
            (r, r)
        };
        self.enumerate_bdd(lo, level + 1, acc, out);
        self.enumerate_bdd(hi, level + 1, acc.with(level as usize), out);
    }

    /// Number of distinct nodes reachable from the root, terminals included.
    pub fn node_count(&self, f: Family) -> Result<usize> {
        let root = self.check(f)?;
        Ok(self.reachable(root).len())
    }

    /// Reachable non-terminal nodes.
    pub fn internal_node_count(&self, f: Family) -> Result<usize> {
        let root = self.check(f)?;
        Ok(self.reachable(root).iter().filter(|r| !r.is_terminal()).count())
    }

    pub(crate) fn reachable(&self, root: NodeRef) -> Vec<NodeRef> {
        let mut seen = FxHashSet::default();
        let mut order = Vec::new();
        let mut stack = vec![root];
        while let Some(r) = stack.pop() {
            if !seen.insert(r) {
                continue;
            }
            order.push(r);
            if !r.is_terminal() {
                let node = self.node(r);
                stack.push(node.hi);
                stack.push(node.lo);
            }
        }
        order
    }

    /// Exact number of sets in `f`.
    pub fn count_sets(&self, f: Family) -> Result<u64> {
        let root = self.check(f)?;
        let mut memo = FxHashMap::default();
        match self.semantics {
            Semantics::Zdd => self.count_zdd(root, &mut memo),
            Semantics::Bdd => {
                let below = self.count_bdd(root, &mut memo)?;
                scale(below, self.level_or_end(root))
            }
        }
    }

    fn count_zdd(&self, r: NodeRef, memo: &mut FxHashMap<NodeRef, u64>) -> Result<u64> {
        match r {
            NodeRef::BOTTOM => return Ok(0),
            NodeRef::TOP => return Ok(1),
            _ => {}
        }
        if let Some(&c) = memo.get(&r) {
            return Ok(c);
        }
        let node = self.node(r);
        let c = self
            .count_zdd(node.lo, memo)?
            .checked_add(self.count_zdd(node.hi, memo)?)
            .ok_or(Error::CountOverflow)?;
        memo.insert(r, c);
        Ok(c)
    }

    /// Satisfying assignments of the variables from `level(r)` downward.
    fn count_bdd(&self, r: NodeRef, memo: &mut FxHashMap<NodeRef, u64>) -> Result<u64> {
        match r {
            NodeRef::BOTTOM => return Ok(0),
            NodeRef::TOP => return Ok(1),
            _ => {}
        }
        if let Some(&c) = memo.get(&r) {
            return Ok(c);
        }
        let node = self.node(r);
        let mut total = 0u64;
        for child in [node.lo, node.hi] {
            let below = self.count_bdd(child, memo)?;
            let gap = self.level_or_end(child) - node.level - 1;
            total = total
                .checked_add(scale(below, gap)?)
                .ok_or(Error::CountOverflow)?;
        }
        memo.insert(r, total);
        Ok(total)
    }

    /// Scans everything reachable from `f` for reduction-rule or ordering violations.
    pub fn is_reduced(&self, f: Family) -> Result<bool> {
        let root = self.check(f)?;
        let mut seen = FxHashSet::default();
        for r in self.reachable(root) {
            if r.is_terminal() {
                continue;
            }
            let node = self.node(r);
            let suppressed = match self.semantics {
                Semantics::Zdd => node.hi == NodeRef::BOTTOM,
                Semantics::Bdd => node.lo == node.hi,
            };
            if suppressed
                || node.level >= self.level(node.lo)
                || node.level >= self.level(node.hi)
                || !seen.insert(node)
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn scale(count: u64, gap: u32) -> Result<u64> {
    if count == 0 {
        return Ok(0);
    }
    if gap >= 64 {
        return Err(Error::CountOverflow);
    }
    count.checked_mul(1u64 << gap).ok_or(Error::CountOverflow)
}
