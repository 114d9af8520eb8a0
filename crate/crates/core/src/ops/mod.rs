//! Family-algebra operations on reduced ZDDs.
//!
//! Every operation is a memoized recursion over node handles. The memo table
//! lives in the manager, is keyed by `(operation, operand handles)`, persists
//! across calls and is dropped with [`DiagramManager::clear_caches`].

mod boolean;
mod condition;
mod division;
mod extremal;
mod filters;
mod products;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kernel::{CacheTag, DiagramManager, Family, NodeRef};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
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
    Remainder,
    Restrict,
    Permit,
    Nonsuperset,
    Nonsubset,
    Maximal,
    Minimal,
    Hitting,
    Closure,
    Condition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arity {
    Unary,
    Binary,
    /// Unary with two element sets as extra arguments.
    Conditioning,
}

impl OpKind {
    pub const ALL: [OpKind; 20] = [
        OpKind::Union,
        OpKind::Intersection,
        OpKind::Difference,
        OpKind::SymmetricDifference,
        OpKind::Join,
        OpKind::DisjointJoin,
        OpKind::JointJoin,
        OpKind::Meet,
        OpKind::Delta,
        OpKind::Quotient,
        OpKind::Remainder,
        OpKind::Restrict,
        OpKind::Permit,
        OpKind::Nonsuperset,
        OpKind::Nonsubset,
        OpKind::Maximal,
        OpKind::Minimal,
        OpKind::Hitting,
        OpKind::Closure,
        OpKind::Condition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OpKind::Union => "union",
            OpKind::Intersection => "intersection",
            OpKind::Difference => "difference",
            OpKind::SymmetricDifference => "symmetric_difference",
            OpKind::Join => "join",
            OpKind::DisjointJoin => "disjoint_join",
            OpKind::JointJoin => "joint_join",
            OpKind::Meet => "meet",
            OpKind::Delta => "delta",
            OpKind::Quotient => "quotient",
            OpKind::Remainder => "remainder",
            OpKind::Restrict => "restrict",
            OpKind::Permit => "permit",
            OpKind::Nonsuperset => "nonsuperset",
            OpKind::Nonsubset => "nonsubset",
            OpKind::Maximal => "maximal",
            OpKind::Minimal => "minimal",
            OpKind::Hitting => "hitting",
            OpKind::Closure => "closure",
            OpKind::Condition => "condition",
        }
    }

    pub fn arity(self) -> Arity {
        match self {
            OpKind::Maximal | OpKind::Minimal | OpKind::Hitting | OpKind::Closure => Arity::Unary,
            OpKind::Condition => Arity::Conditioning,
            _ => Arity::Binary,
        }
    }

    pub fn is_binary(self) -> bool {
        self.arity() == Arity::Binary
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for OpKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        OpKind::ALL
            .iter()
            .copied()
            .find(|op| op.name() == key)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown operation `{s}`")))
    }
}

impl DiagramManager {
    pub(crate) fn cached(&self, tag: CacheTag, f: NodeRef, g: NodeRef) -> Option<NodeRef> {
        self.cache.get(&(tag, f, g)).copied()
    }

    pub(crate) fn store(&mut self, tag: CacheTag, f: NodeRef, g: NodeRef, r: NodeRef) -> NodeRef {
        self.cache.insert((tag, f, g), r);
        r
    }

    /// `(lo, hi)` cofactors of `r` with respect to the element at `level`,
    /// which must not lie below `r`'s own level.
    pub(crate) fn cofactors(&self, r: NodeRef, level: u32) -> (NodeRef, NodeRef) {
        if self.level(r) == level {
            let node = self.node(r);
            (node.lo, node.hi)
        } else {
            (r, NodeRef::BOTTOM)
        }
    }

    pub(crate) fn has_empty_set(&self, mut r: NodeRef) -> bool {
        while !r.is_terminal() {
            r = self.node(r).lo;
        }
        r == NodeRef::TOP
    }

    fn operands(&self, f: Family, g: Family) -> Result<(NodeRef, NodeRef)> {
        self.require_zdd()?;
        Ok((self.check(f)?, self.check(g)?))
    }

    fn operand(&self, f: Family) -> Result<NodeRef> {
        self.require_zdd()?;
        self.check(f)
    }

    /// Union, intersection, difference or symmetric difference.
    pub fn boolean_combine(&mut self, kind: OpKind, f: Family, g: Family) -> Result<Family> {
        let (f, g) = self.operands(f, g)?;
        let r = match kind {
            OpKind::Union => self.union_rec(f, g),
            OpKind::Intersection => self.intersection_rec(f, g),
            OpKind::Difference => self.difference_rec(f, g),
            OpKind::SymmetricDifference => self.symdiff_rec(f, g),
            other => return Err(Error::UnsupportedOp(other)),
        };
        Ok(self.wrap(r))
    }

    pub fn union(&mut self, f: Family, g: Family) -> Result<Family> {
        self.boolean_combine(OpKind::Union, f, g)
    }

    pub fn intersection(&mut self, f: Family, g: Family) -> Result<Family> {
        self.boolean_combine(OpKind::Intersection, f, g)
    }

    pub fn difference(&mut self, f: Family, g: Family) -> Result<Family> {
        self.boolean_combine(OpKind::Difference, f, g)
    }

    pub fn symmetric_difference(&mut self, f: Family, g: Family) -> Result<Family> {
        self.boolean_combine(OpKind::SymmetricDifference, f, g)
    }

    /// Join, disjoint join or joint join.
    pub fn join_family(&mut self, kind: OpKind, f: Family, g: Family) -> Result<Family> {
        let (f, g) = self.operands(f, g)?;
        let r = match kind {
            OpKind::Join => self.join_rec(f, g),
            OpKind::DisjointJoin => self.disjoint_join_rec(f, g),
            OpKind::JointJoin => self.joint_join_rec(f, g),
            other => return Err(Error::UnsupportedOp(other)),
        };
        Ok(self.wrap(r))
    }

    pub fn join(&mut self, f: Family, g: Family) -> Result<Family> {
        self.join_family(OpKind::Join, f, g)
    }

    pub fn meet(&mut self, f: Family, g: Family) -> Result<Family> {
        let (f, g) = self.operands(f, g)?;
        let r = self.meet_rec(f, g);
        Ok(self.wrap(r))
    }

    pub fn delta(&mut self, f: Family, g: Family) -> Result<Family> {
        let (f, g) = self.operands(f, g)?;
        let r = self.delta_rec(f, g);
        Ok(self.wrap(r))
    }

    /// Errors with [`Error::EmptyDivisor`] when `g` is the empty family.
    pub fn quotient(&mut self, f: Family, g: Family) -> Result<Family> {
        let (f, g) = self.operands(f, g)?;
        if g == NodeRef::BOTTOM {
            return Err(Error::EmptyDivisor);
        }
        let r = self.quotient_rec(f, g);
        Ok(self.wrap(r))
    }

    pub fn remainder(&mut self, f: Family, g: Family) -> Result<Family> {
        let q = self.quotient(f, g)?;
        let product = self.join(g, q)?;
        self.difference(f, product)
    }

    /// Restrict, permit, nonsuperset or nonsubset.
    pub fn containment_filter(&mut self, kind: OpKind, f: Family, g: Family) -> Result<Family> {
        let (f, g) = self.operands(f, g)?;
        let r = match kind {
            OpKind::Restrict => self.restrict_rec(f, g),
            OpKind::Permit => self.permit_rec(f, g),
            OpKind::Nonsuperset => self.nonsuperset_rec(f, g),
            OpKind::Nonsubset => self.nonsubset_rec(f, g),
            other => return Err(Error::UnsupportedOp(other)),
        };
        Ok(self.wrap(r))
    }

    /// Inclusion-maximal or inclusion-minimal members.
    pub fn extremal(&mut self, kind: OpKind, f: Family) -> Result<Family> {
        let f = self.operand(f)?;
        let r = match kind {
            OpKind::Maximal => self.maximal_rec(f),
            OpKind::Minimal => self.minimal_rec(f),
            other => return Err(Error::UnsupportedOp(other)),
        };
        Ok(self.wrap(r))
    }

    pub fn minimal_hitting_sets(&mut self, f: Family) -> Result<Family> {
        let f = self.operand(f)?;
        let r = self.hitting_rec(f);
        Ok(self.wrap(r))
    }

    /// Intersections of all nonempty subfamilies of `f`.
    pub fn closure(&mut self, f: Family) -> Result<Family> {
        let f = self.operand(f)?;
        let r = self.closure_rec(f);
        Ok(self.wrap(r))
    }

    /// The same family as [`closure`](Self::closure), computed as the fixpoint
    /// of `g ↦ g ∪ meet(g, g)` starting from `f`.
    pub fn closure_fixpoint(&mut self, f: Family) -> Result<Family> {
        let mut current = self.operand(f)?;
        loop {
            let squared = self.meet_rec(current, current);
            let next = self.union_rec(current, squared);
            if next == current {
                return Ok(self.wrap(current));
            }
            current = next;
        }
    }

    /// Dispatches a binary or unary operation by kind.
    pub fn apply(&mut self, kind: OpKind, f: Family, g: Option<Family>) -> Result<Family> {
        let need_g = || g.ok_or(Error::MissingOperand(kind, "a second operand"));
        match kind {
            OpKind::Union
            | OpKind::Intersection
            | OpKind::Difference
            | OpKind::SymmetricDifference => self.boolean_combine(kind, f, need_g()?),
            OpKind::Join | OpKind::DisjointJoin | OpKind::JointJoin => {
                self.join_family(kind, f, need_g()?)
            }
            OpKind::Meet => self.meet(f, need_g()?),
            OpKind::Delta => self.delta(f, need_g()?),
            OpKind::Quotient => self.quotient(f, need_g()?),
            OpKind::Remainder => self.remainder(f, need_g()?),
            OpKind::Restrict | OpKind::Permit | OpKind::Nonsuperset | OpKind::Nonsubset => {
                self.containment_filter(kind, f, need_g()?)
            }
            OpKind::Maximal | OpKind::Minimal => self.extremal(kind, f),
            OpKind::Hitting => self.minimal_hitting_sets(f),
            OpKind::Closure => self.closure(f),
            OpKind::Condition => Err(Error::MissingOperand(kind, "conditioning sets")),
        }
    }

    /// Powerset of the elements at `levels`.
    pub(crate) fn powerset_levels(&mut self, levels: &[u32]) -> NodeRef {
        let mut sorted = levels.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted
            .iter()
            .rev()
            .fold(NodeRef::TOP, |r, &l| self.mk(l, r, r))
    }

    /// The one-set family `{levels}`.
    pub(crate) fn single_set_levels(&mut self, levels: &[u32]) -> NodeRef {
        let mut sorted = levels.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted
            .iter()
            .rev()
            .fold(NodeRef::TOP, |r, &l| self.mk(l, NodeRef::BOTTOM, r))
    }

    /// The one-set family holding the named elements.
    pub fn single_set<I, S>(&mut self, names: I) -> Result<Family>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let levels = self.levels_of(names)?;
        let r = self.single_set_levels(&levels);
        Ok(self.wrap(r))
    }

    /// Every subset of the named elements.
    pub fn powerset<I, S>(&mut self, names: I) -> Result<Family>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let levels = self.levels_of(names)?;
        let r = self.powerset_levels(&levels);
        Ok(self.wrap(r))
    }

    pub(crate) fn levels_of<I, S>(&self, names: I) -> Result<Vec<u32>>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        names
            .into_iter()
            .map(|n| self.order().level_of(n.as_ref()).map(|l| l as u32))
            .collect()
    }
}
