//! Pairwise products: join and its disjoint/joint variants, meet and delta.
//!
//! Join splits on the top element `x` and recurses twice: the lo-child is
//! `lo(f) ⊔ lo(g)` while the hi-child is the union of the three products that
//! put `x` in the combined set. Those inner unions share the manager cache.

use crate::kernel::{CacheTag, DiagramManager, NodeRef};

impl DiagramManager {
    fn ordered(f: NodeRef, g: NodeRef) -> (NodeRef, NodeRef) {
        if f < g {
            (f, g)
        } else {
            (g, f)
        }
    }

    fn union3(&mut self, a: NodeRef, b: NodeRef, c: NodeRef) -> NodeRef {
        let ab = self.union_rec(a, b);
        self.union_rec(ab, c)
    }

    pub(crate) fn join_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        if f == NodeRef::BOTTOM || g == NodeRef::BOTTOM {
            return NodeRef::BOTTOM;
        }
        if f == NodeRef::TOP {
            return g;
        }
        if g == NodeRef::TOP {
            return f;
        }
        let (f, g) = Self::ordered(f, g);
        if let Some(r) = self.cached(CacheTag::Join, f, g) {
            return r;
        }
        let v = self.level(f).min(self.level(g));
        let (f0, f1) = self.cofactors(f, v);
        let (g0, g1) = self.cofactors(g, v);
        let lo = self.join_rec(f0, g0);
        let a = self.join_rec(f0, g1);
        let b = self.join_rec(f1, g0);
        let c = self.join_rec(f1, g1);
        let hi = self.union3(a, b, c);
        let r = self.mk(v, lo, hi);
        self.store(CacheTag::Join, f, g, r)
    }

    pub(crate) fn disjoint_join_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        if f == NodeRef::BOTTOM || g == NodeRef::BOTTOM {
            return NodeRef::BOTTOM;
        }
        if f == NodeRef::TOP {
            return g;
        }
        if g == NodeRef::TOP {
            return f;
        }
        let (f, g) = Self::ordered(f, g);
        if let Some(r) = self.cached(CacheTag::DisjointJoin, f, g) {
            return r;
        }
        let v = self.level(f).min(self.level(g));
        let (f0, f1) = self.cofactors(f, v);
        let (g0, g1) = self.cofactors(g, v);
        let lo = self.disjoint_join_rec(f0, g0);
        let a = self.disjoint_join_rec(f0, g1);
        let b = self.disjoint_join_rec(f1, g0);
        let hi = self.union_rec(a, b);
        let r = self.mk(v, lo, hi);
        self.store(CacheTag::DisjointJoin, f, g, r)
    }

    pub(crate) fn joint_join_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        // a pair with an empty member never intersects
        if f.is_terminal() || g.is_terminal() {
            return NodeRef::BOTTOM;
        }
        let (f, g) = Self::ordered(f, g);
        if let Some(r) = self.cached(CacheTag::JointJoin, f, g) {
            return r;
        }
        let v = self.level(f).min(self.level(g));
        let (f0, f1) = self.cofactors(f, v);
        let (g0, g1) = self.cofactors(g, v);
        let lo = self.joint_join_rec(f0, g0);
        let a = self.joint_join_rec(f0, g1);
        let b = self.joint_join_rec(f1, g0);
        let c = self.join_rec(f1, g1);
        let hi = self.union3(a, b, c);
        let r = self.mk(v, lo, hi);
        self.store(CacheTag::JointJoin, f, g, r)
    }

    pub(crate) fn meet_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        if f == NodeRef::BOTTOM || g == NodeRef::BOTTOM {
            return NodeRef::BOTTOM;
        }
        if f == NodeRef::TOP || g == NodeRef::TOP {
            return NodeRef::TOP;
        }
        let (f, g) = Self::ordered(f, g);
        if let Some(r) = self.cached(CacheTag::Meet, f, g) {
            return r;
        }
        let (lf, lg) = (self.level(f), self.level(g));
        let r = if lf != lg {
            // the top element occurs on one side only and drops out
            let (top, other) = if lf < lg { (f, g) } else { (g, f) };
            let n = self.node(top);
            let a = self.meet_rec(n.lo, other);
            let b = self.meet_rec(n.hi, other);
            self.union_rec(a, b)
        } else {
            let (nf, ng) = (self.node(f), self.node(g));
            let a = self.meet_rec(nf.lo, ng.lo);
            let b = self.meet_rec(nf.lo, ng.hi);
            let c = self.meet_rec(nf.hi, ng.lo);
            let lo = self.union3(a, b, c);
            let hi = self.meet_rec(nf.hi, ng.hi);
            self.mk(lf, lo, hi)
        };
        self.store(CacheTag::Meet, f, g, r)
    }

    pub(crate) fn delta_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        if f == NodeRef::BOTTOM || g == NodeRef::BOTTOM {
            return NodeRef::BOTTOM;
        }
        if f == NodeRef::TOP {
            return g;
        }
        if g == NodeRef::TOP {
            return f;
        }
        let (f, g) = Self::ordered(f, g);
        if let Some(r) = self.cached(CacheTag::Delta, f, g) {
            return r;
        }
        let v = self.level(f).min(self.level(g));
        let (f0, f1) = self.cofactors(f, v);
        let (g0, g1) = self.cofactors(g, v);
        let same = [self.delta_rec(f0, g0), self.delta_rec(f1, g1)];
        let cross = [self.delta_rec(f0, g1), self.delta_rec(f1, g0)];
        let lo = self.union_rec(same[0], same[1]);
        let hi = self.union_rec(cross[0], cross[1]);
        let r = self.mk(v, lo, hi);
        self.store(CacheTag::Delta, f, g, r)
    }
}
