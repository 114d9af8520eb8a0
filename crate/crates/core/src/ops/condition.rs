use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::kernel::{CacheTag, DiagramManager, Family, NodeRef};

impl DiagramManager {
    /// Sets of `f` holding all of `y` and none of `y_prime`, with `y` removed.
    ///
    /// Built as `f ∩ filter` followed by bypassing every node labeled in `y`.
    /// The filter has at most one node per level, so the result has at most
    /// `node_count(f) · (n + 2)` nodes.
    pub fn condition<S: AsRef<str>>(
        &mut self,
        f: Family,
        y: &[S],
        y_prime: &[S],
    ) -> Result<Family> {
        self.require_zdd()?;
        let root = self.check(f)?;
        let take = self.levels_of(y)?;
        let drop = self.levels_of(y_prime)?;
        if let Some(&l) = take.iter().find(|l| drop.contains(l)) {
            return Err(Error::OverlappingCondition(
                self.order().name(l as usize).to_string(),
            ));
        }
        let filter = self.condition_filter(&take, &drop);
        let kept = self.intersection_rec(root, filter);
        let key = self.single_set_levels(&take);
        let take: FxHashSet<u32> = take.into_iter().collect();
        let r = self.eliminate_rec(kept, key, &take);
        Ok(self.wrap(r))
    }

    /// `{S | y ⊆ S, S ∩ y_prime = ∅}` over the whole universe.
    fn condition_filter(&mut self, take: &[u32], drop: &[u32]) -> NodeRef {
        let mut r = NodeRef::TOP;
        for level in (0..self.num_vars() as u32).rev() {
            if take.contains(&level) {
                r = self.mk(level, NodeRef::BOTTOM, r);
            } else if !drop.contains(&level) {
                r = self.mk(level, r, r);
            }
        }
        r
    }

    /// Redirects arcs into `take`-labeled nodes to their hi-children.
    /// `key` identifies `take` in the memo table.
    fn eliminate_rec(&mut self, r: NodeRef, key: NodeRef, take: &FxHashSet<u32>) -> NodeRef {
        if r.is_terminal() {
            return r;
        }
        if let Some(out) = self.cached(CacheTag::Eliminate, r, key) {
            return out;
        }
        let n = self.node(r);
        let out = if take.contains(&n.level) {
            debug_assert_eq!(n.lo, NodeRef::BOTTOM);
            self.eliminate_rec(n.hi, key, take)
        } else {
            let lo = self.eliminate_rec(n.lo, key, take);
            let hi = self.eliminate_rec(n.hi, key, take);
            self.mk(n.level, lo, hi)
        };
        self.store(CacheTag::Eliminate, r, key, out)
    }
}
