use crate::kernel::{CacheTag, DiagramManager, NodeRef};

impl DiagramManager {
    pub(crate) fn union_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        if f == NodeRef::BOTTOM || f == g {
            return g;
        }
        if g == NodeRef::BOTTOM {
            return f;
        }
        let (f, g) = if f < g { (f, g) } else { (g, f) };
        if let Some(r) = self.cached(CacheTag::Union, f, g) {
            return r;
        }
        let v = self.level(f).min(self.level(g));
        let (f0, f1) = self.cofactors(f, v);
        let (g0, g1) = self.cofactors(g, v);
        let lo = self.union_rec(f0, g0);
        let hi = self.union_rec(f1, g1);
        let r = self.mk(v, lo, hi);
        self.store(CacheTag::Union, f, g, r)
    }

    pub(crate) fn intersection_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        if f == NodeRef::BOTTOM || g == NodeRef::BOTTOM {
            return NodeRef::BOTTOM;
        }
        if f == g {
            return f;
        }
        let (f, g) = if f < g { (f, g) } else { (g, f) };
        if let Some(r) = self.cached(CacheTag::Intersection, f, g) {
            return r;
        }
        let (lf, lg) = (self.level(f), self.level(g));
        let r = if lf < lg {
            let f0 = self.node(f).lo;
            self.intersection_rec(f0, g)
        } else if lg < lf {
            let g0 = self.node(g).lo;
            self.intersection_rec(f, g0)
        } else {
            let (nf, ng) = (self.node(f), self.node(g));
            let lo = self.intersection_rec(nf.lo, ng.lo);
            let hi = self.intersection_rec(nf.hi, ng.hi);
            self.mk(lf, lo, hi)
        };
        self.store(CacheTag::Intersection, f, g, r)
    }

    pub(crate) fn difference_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        if f == NodeRef::BOTTOM || f == g {
            return NodeRef::BOTTOM;
        }
        if g == NodeRef::BOTTOM {
            return f;
        }
        if let Some(r) = self.cached(CacheTag::Difference, f, g) {
            return r;
        }
        let (lf, lg) = (self.level(f), self.level(g));
        let r = if lf < lg {
            let nf = self.node(f);
            let lo = self.difference_rec(nf.lo, g);
            self.mk(lf, lo, nf.hi)
        } else if lg < lf {
            let g0 = self.node(g).lo;
            self.difference_rec(f, g0)
        } else {
            let (nf, ng) = (self.node(f), self.node(g));
            let lo = self.difference_rec(nf.lo, ng.lo);
            let hi = self.difference_rec(nf.hi, ng.hi);
            self.mk(lf, lo, hi)
        };
        self.store(CacheTag::Difference, f, g, r)
    }

    pub(crate) fn symdiff_rec(&mut self, f: NodeRef, g: NodeRef) -> NodeRef {
        if f == g {
            return NodeRef::BOTTOM;
        }
        if f == NodeRef::BOTTOM {
            return g;
        }
        if g == NodeRef::BOTTOM {
            return f;
        }
        let (f, g) = if f < g { (f, g) } else { (g, f) };
        if let Some(r) = self.cached(CacheTag::SymmetricDifference, f, g) {
            return r;
        }
        let v = self.level(f).min(self.level(g));
        let (f0, f1) = self.cofactors(f, v);
        let (g0, g1) = self.cofactors(g, v);
        let lo = self.symdiff_rec(f0, g0);
        let hi = self.symdiff_rec(f1, g1);
        let r = self.mk(v, lo, hi);
        self.store(CacheTag::SymmetricDifference, f, g, r)
    }
}

#[cfg(test)]
mod tests {
    use crate::explicit::ExplicitFamily;
    use crate::kernel::{DiagramManager, Family};

    const U: [&str; 3] = ["a", "b", "c"];

    fn build(mgr: &mut DiagramManager, sets: &[&[&str]]) -> Family {
        let e = ExplicitFamily::from_named_sets(U, sets.iter().map(|s| s.iter())).unwrap();
        mgr.from_explicit(&e).unwrap()
    }

    #[test]
    fn union_examples() {
        let mut mgr = DiagramManager::zdd(U).unwrap();
        let a = build(&mut mgr, &[&["a"]]);
        let empty = mgr.empty();
        assert_eq!(mgr.union(a, empty).unwrap(), a);
        let f = build(&mut mgr, &[&["a"], &["a", "b"]]);
        let g = build(&mut mgr, &[&["a", "b"], &["c"]]);
        let expected = build(&mut mgr, &[&["a"], &["a", "b"], &["c"]]);
        assert_eq!(mgr.union(f, g).unwrap(), expected);
    }

    #[test]
    fn symmetric_difference_with_self_is_empty() {
        let mut mgr = DiagramManager::zdd(U).unwrap();
        let f = build(&mut mgr, &[&["a"], &["b", "c"], &[]]);
        assert_eq!(mgr.symmetric_difference(f, f).unwrap(), mgr.empty());
    }

    #[test]
    fn intersection_and_difference() {
        let mut mgr = DiagramManager::zdd(U).unwrap();
        let f = build(&mut mgr, &[&["a"], &["a", "b"], &[]]);
        let g = build(&mut mgr, &[&["a", "b"], &["c"], &[]]);
        let both = build(&mut mgr, &[&["a", "b"], &[]]);
        let only_f = build(&mut mgr, &[&["a"]]);
        assert_eq!(mgr.intersection(f, g).unwrap(), both);
        assert_eq!(mgr.difference(f, g).unwrap(), only_f);
    }
}
