use crate::kernel::{CacheTag, DiagramManager, NodeRef};

impl DiagramManager {
    /// Members of `f` that contain some member of `g`.
    pub(crate) fn restrict_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        if f == NodeRef::BOTTOM || g == NodeRef::BOTTOM {
            return NodeRef::BOTTOM;
        }
        if g == NodeRef::TOP || f == g {
            return f;
        }
        if f == NodeRef::TOP {
            return if self.has_empty_set(g) {
                NodeRef::TOP
            } else {
                NodeRef::BOTTOM
            };
        }
        if let Some(r) = self.cached(CacheTag::Restrict, f, g) {
            return r;
        }
        let (lf, lg) = (self.level(f), self.level(g));
        let r = if lf < lg {
            let nf = self.node(f);
            let lo = self.restrict_rec(nf.lo, g);
            let hi = self.restrict_rec(nf.hi, g);
            self.mk(lf, lo, hi)
        } else if lg < lf {
            let g0 = self.node(g).lo;
            self.restrict_rec(f, g0)
        } else {
            let (nf, ng) = (self.node(f), self.node(g));
            let lo = self.restrict_rec(nf.lo, ng.lo);
            let either = self.union_rec(ng.lo, ng.hi);
            let hi = self.restrict_rec(nf.hi, either);
            self.mk(lf, lo, hi)
        };
        self.store(CacheTag::Restrict, f, g, r)
    }

    /// Members of `f` contained in some member of `g`.
    pub(crate) fn permit_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        if f == NodeRef::BOTTOM || g == NodeRef::BOTTOM {
            return NodeRef::BOTTOM;
        }
        if f == NodeRef::TOP || f == g {
            return f;
        }
        if g == NodeRef::TOP {
            return if self.has_empty_set(f) {
                NodeRef::TOP
            } else {
                NodeRef::BOTTOM
            };
        }
        if let Some(r) = self.cached(CacheTag::Permit, f, g) {
            return r;
        }
        let (lf, lg) = (self.level(f), self.level(g));
        let r = if lf < lg {
            let f0 = self.node(f).lo;
            self.permit_rec(f0, g)
        } else if lg < lf {
            let ng = self.node(g);
            let either = self.union_rec(ng.lo, ng.hi);
            self.permit_rec(f, either)
        } else {
            let (nf, ng) = (self.node(f), self.node(g));
            let either = self.union_rec(ng.lo, ng.hi);
            let lo = self.permit_rec(nf.lo, either);
            let hi = self.permit_rec(nf.hi, ng.hi);
            self.mk(lf, lo, hi)
        };
        self.store(CacheTag::Permit, f, g, r)
    }

    /// Members of `f` containing no member of `g`.
    pub(crate) fn nonsuperset_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        if f == NodeRef::BOTTOM || g == NodeRef::TOP || f == g {
            return NodeRef::BOTTOM;
        }
        if g == NodeRef::BOTTOM {
            return f;
        }
        if f == NodeRef::TOP {
            return if self.has_empty_set(g) {
                NodeRef::BOTTOM
            } else {
                NodeRef::TOP
            };
        }
        if let Some(r) = self.cached(CacheTag::Nonsuperset, f, g) {
            return r;
        }
        let (lf, lg) = (self.level(f), self.level(g));
        let r = if lf < lg {
            let nf = self.node(f);
            let lo = self.nonsuperset_rec(nf.lo, g);
            let hi = self.nonsuperset_rec(nf.hi, g);
            self.mk(lf, lo, hi)
        } else if lg < lf {
            let g0 = self.node(g).lo;
            self.nonsuperset_rec(f, g0)
        } else {
            let (nf, ng) = (self.node(f), self.node(g));
            let lo = self.nonsuperset_rec(nf.lo, ng.lo);
            let without = self.nonsuperset_rec(nf.hi, ng.lo);
            let with = self.nonsuperset_rec(nf.hi, ng.hi);
            let hi = self.intersection_rec(without, with);
            self.mk(lf, lo, hi)
        };
        self.store(CacheTag::Nonsuperset, f, g, r)
    }

    /// Members of `f` contained in no member of `g`.
    pub(crate) fn nonsubset_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        if f == NodeRef::BOTTOM || f == g {
            return NodeRef::BOTTOM;
        }
        if g == NodeRef::BOTTOM {
            return f;
        }
        if f == NodeRef::TOP {
            // ∅ sits inside every member of the nonempty g
            return NodeRef::BOTTOM;
        }
        if g == NodeRef::TOP {
            return self.difference_rec(f, NodeRef::TOP);
        }
        if let Some(r) = self.cached(CacheTag::Nonsubset, f, g) {
            return r;
        }
        let (lf, lg) = (self.level(f), self.level(g));
        let r = if lf < lg {
            let nf = self.node(f);
            let lo = self.nonsubset_rec(nf.lo, g);
            self.mk(lf, lo, nf.hi)
        } else if lg < lf {
            let ng = self.node(g);
            let either = self.union_rec(ng.lo, ng.hi);
            self.nonsubset_rec(f, either)
        } else {
            let (nf, ng) = (self.node(f), self.node(g));
            let either = self.union_rec(ng.lo, ng.hi);
            let lo = self.nonsubset_rec(nf.lo, either);
            let hi = self.nonsubset_rec(nf.hi, ng.hi);
            self.mk(lf, lo, hi)
        };
        self.store(CacheTag::Nonsubset, f, g, r)
    }
}
