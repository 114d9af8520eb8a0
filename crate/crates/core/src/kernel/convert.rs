use rustc_hash::FxHashMap;

use super::{DiagramManager, Family, NodeRef, Semantics};
use crate::error::{Error, Result};

impl DiagramManager {
    /// Rebuilds `f` inside `target`, which may use the other semantics.
    ///
    /// Levels skipped by an arc are materialized or suppressed one at a time:
    /// a ZDD skip means "element absent", a BDD skip means "either value".
    pub fn convert_semantics(&self, f: Family, target: &mut DiagramManager) -> Result<Family> {
        let root = self.check(f)?;
        if self.order != target.order {
            return Err(Error::OrderMismatch);
        }
        let mut memo = FxHashMap::default();
        let out = self.convert_rec(root, 0, target, &mut memo);
        Ok(target.wrap(out))
    }

    fn convert_rec(
        &self,
        r: NodeRef,
        level: u32,
        target: &mut DiagramManager,
        memo: &mut FxHashMap<(NodeRef, u32), NodeRef>,
    ) -> NodeRef {
        if r == NodeRef::BOTTOM {
            return NodeRef::BOTTOM;
        }
        if level as usize == self.num_vars() {
            debug_assert_eq!(r, NodeRef::TOP);
            return NodeRef::TOP;
        }
        if self.semantics == target.semantics && self.level_or_end(r) > level {
            // same semantics: jump straight to the node's own level
            let next = self.level_or_end(r);
            if r.is_terminal() {
                return r;
            }
            return self.convert_rec(r, next, target, memo);
        }
        if let Some(&out) = memo.get(&(r, level)) {
            return out;
        }
        let (lo, hi) = if self.level_or_end(r) == level {
            let node = self.node(r);
            (node.lo, node.hi)
        } else {
            match self.semantics {
                Semantics::Zdd => (r, NodeRef::BOTTOM),
                Semantics::Bdd => (r, r),
            }
        };
        let lo = self.convert_rec(lo, level + 1, target, memo);
        let hi = self.convert_rec(hi, level + 1, target, memo);
        let out = target.mk(level, lo, hi);
        memo.insert((r, level), out);
        out
    }
}
