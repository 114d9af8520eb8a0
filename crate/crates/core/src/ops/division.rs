use crate::kernel::{CacheTag, DiagramManager, NodeRef};

impl DiagramManager {
    /// `f ÷ g` for a nonempty divisor `g`.
    pub(crate) fn quotient_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        debug_assert_ne!(g, NodeRef::BOTTOM);
        if g == NodeRef::TOP {
            return f;
        }
        if f == NodeRef::BOTTOM {
            return NodeRef::BOTTOM;
        }
        if f == g {
            return NodeRef::TOP;
        }
        if let Some(r) = self.cached(CacheTag::Quotient, f, g) {
            return r;
        }
        let (lf, lg) = (self.level(f), self.level(g));
        let r = if lf < lg {
            // no divisor set holds f's top element, so quotient sets may
            let nf = self.node(f);
            let lo = self.quotient_rec(nf.lo, g);
            let hi = self.quotient_rec(nf.hi, g);
            self.mk(lf, lo, hi)
        } else if lg < lf {
            // some divisor set holds an element no set of f has
            NodeRef::BOTTOM
        } else {
            let (nf, ng) = (self.node(f), self.node(g));
            let q = self.quotient_rec(nf.hi, ng.hi);
            if ng.lo == NodeRef::BOTTOM || q == NodeRef::BOTTOM {
                q
            } else {
                let q0 = self.quotient_rec(nf.lo, ng.lo);
                self.intersection_rec(q, q0)
            }
        };
        self.store(CacheTag::Quotient, f, g, r)
    }
}
