use crate::kernel::{CacheTag, DiagramManager, NodeRef};

impl DiagramManager {
    pub(crate) fn maximal_rec(&mut self, f: NodeRef) -> NodeRef {
        if f.is_terminal() {
            return f;
        }
        if let Some(r) = self.cached(CacheTag::Maximal, f, f) {
            return r;
        }
        let n = self.node(f);
        // a set without the top element survives only if no set with it covers it
        let lo_max = self.maximal_rec(n.lo);
        let lo = self.nonsubset_rec(lo_max, n.hi);
        let hi = self.maximal_rec(n.hi);
        let r = self.mk(n.level, lo, hi);
        self.store(CacheTag::Maximal, f, f, r)
    }

    pub(crate) fn minimal_rec(&mut self, f: NodeRef) -> NodeRef {
        if f.is_terminal() {
            return f;
        }
        if let Some(r) = self.cached(CacheTag::Minimal, f, f) {
            return r;
        }
        let n = self.node(f);
        let lo = self.minimal_rec(n.lo);
        let hi_min = self.minimal_rec(n.hi);
        let hi = self.nonsuperset_rec(hi_min, n.lo);
        let r = self.mk(n.level, lo, hi);
        self.store(CacheTag::Minimal, f, f, r)
    }

    pub(crate) fn hitting_rec(&mut self, f: NodeRef) -> NodeRef {
        match f {
            NodeRef::BOTTOM => return NodeRef::TOP,
            NodeRef::TOP => return NodeRef::BOTTOM,
            _ => {}
        }
        if let Some(r) = self.cached(CacheTag::Hitting, f, f) {
            return r;
        }
        let n = self.node(f);
        // without the top element a hitting set must hit every member
        let all = self.union_rec(n.lo, n.hi);
        let lo = self.hitting_rec(all);
        // with it, the rest must hit the members lacking it, and must not
        // already hit everything on its own
        let rest = self.hitting_rec(n.lo);
        let hi = self.nonsuperset_rec(rest, lo);
        let r = self.mk(n.level, lo, hi);
        self.store(CacheTag::Hitting, f, f, r)
    }

    pub(crate) fn closure_rec(&mut self, f: NodeRef) -> NodeRef {
        if f.is_terminal() {
            return f;
        }
        if let Some(r) = self.cached(CacheTag::Closure, f, f) {
            return r;
        }
        let n = self.node(f);
        let c0 = self.closure_rec(n.lo);
        let c1 = self.closure_rec(n.hi);
        // mixed subfamilies lose the top element
        let mixed = self.meet_rec(c0, c1);
        let lo = self.union_rec(c0, mixed);
        let r = self.mk(n.level, lo, c1);
        self.store(CacheTag::Closure, f, f, r)
    }
}
