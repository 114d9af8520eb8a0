use std::collections::BTreeSet;

use familydd::{DiagramManager, ExplicitFamily, OpKind, SetBits};
use proptest::prelude::*;

const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

#[derive(Clone, Debug)]
struct Fam {
    n: usize,
    sets: Vec<u8>,
}

fn fam(max_sets: usize) -> impl Strategy<Value = Fam> {
    (1usize..=6).prop_flat_map(move |n| {
        prop::collection::vec(0u8..(1 << n), 0..=max_sets).prop_map(move |sets| Fam { n, sets })
    })
}

/// Two or three families sharing one universe.
fn fams(count: usize, max_sets: usize) -> impl Strategy<Value = (usize, Vec<Vec<u8>>)> {
    (1usize..=6).prop_flat_map(move |n| {
        (
            Just(n),
            prop::collection::vec(prop::collection::vec(0u8..(1 << n), 0..=max_sets), count),
        )
    })
}

fn explicit(n: usize, sets: &[u8]) -> ExplicitFamily {
    ExplicitFamily::from_bits(
        NAMES[..n].iter().copied(),
        sets.iter().map(|&s| SetBits(s as u128)),
    )
    .unwrap()
}

fn manager(n: usize) -> DiagramManager {
    DiagramManager::zdd(NAMES[..n].iter().copied()).unwrap()
}

fn set_of(f: &ExplicitFamily) -> BTreeSet<u128> {
    f.iter().map(|s| s.0).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn insertion_order_does_not_matter(f in fam(12), seed in any::<u64>()) {
        let mut mgr = manager(f.n);
        let a = mgr.from_explicit(&explicit(f.n, &f.sets)).unwrap();
        let mut shuffled = f.sets.clone();
        let len = shuffled.len().max(1);
        shuffled.rotate_left((seed as usize) % len);
        shuffled.reverse();
        let b = mgr.from_explicit(&explicit(f.n, &shuffled)).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(mgr.is_reduced(a).unwrap());
    }

    #[test]
    fn explicit_round_trip(f in fam(12)) {
        let mut mgr = manager(f.n);
        let e = explicit(f.n, &f.sets);
        let root = mgr.from_explicit(&e).unwrap();
        let back = mgr.to_explicit(root, 1 << 10).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(mgr.from_explicit(&back).unwrap(), root);
        prop_assert_eq!(mgr.count_sets(root).unwrap(), e.len() as u64);
    }

    #[test]
    fn join_is_a_commutative_monoid((n, fs) in fams(3, 6)) {
        let mut mgr = manager(n);
        let [f, g, h] = [0, 1, 2].map(|i| mgr.from_explicit(&explicit(n, &fs[i])).unwrap());
        let unit = mgr.base();
        let zero = mgr.empty();
        prop_assert_eq!(mgr.join(f, unit).unwrap(), f);
        prop_assert_eq!(mgr.join(f, zero).unwrap(), zero);
        prop_assert_eq!(mgr.join(f, g).unwrap(), mgr.join(g, f).unwrap());
        let fg = mgr.join(f, g).unwrap();
        let gh = mgr.join(g, h).unwrap();
        prop_assert_eq!(mgr.join(fg, h).unwrap(), mgr.join(f, gh).unwrap());
        let f_or_g = mgr.union(f, g).unwrap();
        let lhs = mgr.join(f_or_g, h).unwrap();
        let (fh, gh2) = (mgr.join(f, h).unwrap(), mgr.join(g, h).unwrap());
        prop_assert_eq!(lhs, mgr.union(fh, gh2).unwrap());
    }

    #[test]
    fn join_matches_pairwise_unions((n, fs) in fams(2, 8)) {
        let (ef, eg) = (explicit(n, &fs[0]), explicit(n, &fs[1]));
        let mut mgr = manager(n);
        let (f, g) = (mgr.from_explicit(&ef).unwrap(), mgr.from_explicit(&eg).unwrap());
        let got = mgr.join(f, g).unwrap();
        let want: BTreeSet<u128> = ef.iter().flat_map(|a| eg.iter().map(move |b| a.0 | b.0)).collect();
        prop_assert_eq!(set_of(&mgr.to_explicit(got, 1 << 10).unwrap()), want);
    }

    #[test]
    fn filter_complements((n, fs) in fams(2, 8)) {
        let mut mgr = manager(n);
        let (f, g) = (mgr.from_explicit(&explicit(n, &fs[0])).unwrap(), mgr.from_explicit(&explicit(n, &fs[1])).unwrap());
        let permit = mgr.apply(OpKind::Permit, f, Some(g)).unwrap();
        let restrict = mgr.apply(OpKind::Restrict, f, Some(g)).unwrap();
        let nonsubset = mgr.apply(OpKind::Nonsubset, f, Some(g)).unwrap();
        let nonsuperset = mgr.apply(OpKind::Nonsuperset, f, Some(g)).unwrap();
        prop_assert_eq!(nonsubset, mgr.difference(f, permit).unwrap());
        prop_assert_eq!(nonsuperset, mgr.difference(f, restrict).unwrap());
    }

    #[test]
    fn remainder_is_what_the_quotient_leaves((n, fs) in fams(2, 8)) {
        prop_assume!(!fs[1].is_empty());
        let mut mgr = manager(n);
        let (f, g) = (mgr.from_explicit(&explicit(n, &fs[0])).unwrap(), mgr.from_explicit(&explicit(n, &fs[1])).unwrap());
        let q = mgr.quotient(f, g).unwrap();
        let gq = mgr.join(g, q).unwrap();
        prop_assert_eq!(mgr.intersection(gq, f).unwrap(), gq);
        prop_assert_eq!(mgr.remainder(f, g).unwrap(), mgr.difference(f, gq).unwrap());
    }

    #[test]
    fn extremal_members_are_idempotent(f in fam(12)) {
        let mut mgr = manager(f.n);
        let e = explicit(f.n, &f.sets);
        let root = mgr.from_explicit(&e).unwrap();
        for kind in [OpKind::Maximal, OpKind::Minimal] {
            let once = mgr.extremal(kind, root).unwrap();
            prop_assert_eq!(mgr.extremal(kind, once).unwrap(), once);
            prop_assert_eq!(mgr.intersection(once, root).unwrap(), once);
        }
        let max = mgr.extremal(OpKind::Maximal, root).unwrap();
        let want: BTreeSet<u128> = e
            .iter()
            .filter(|s| !e.iter().any(|t| t != *s && s.is_subset(t)))
            .map(|s| s.0)
            .collect();
        prop_assert_eq!(set_of(&mgr.to_explicit(max, 1 << 10).unwrap()), want);
    }

    #[test]
    fn hitting_sets_are_minimal_transversals(f in fam(5)) {
        let e = explicit(f.n, &f.sets);
        let mut mgr = manager(f.n);
        let root = mgr.from_explicit(&e).unwrap();
        let hits = mgr.minimal_hitting_sets(root).unwrap();
        let hits_all = |s: u128| e.iter().all(|t| s & t.0 != 0);
        let want: BTreeSet<u128> = (0..1u128 << f.n)
            .filter(|&s| hits_all(s) && (0..f.n).all(|i| s >> i & 1 == 0 || !hits_all(s & !(1 << i))))
            .collect();
        prop_assert_eq!(set_of(&mgr.to_explicit(hits, 1 << 10).unwrap()), want);
    }

    #[test]
    fn closure_is_idempotent_and_contains_input(f in fam(10)) {
        let mut mgr = manager(f.n);
        let root = mgr.from_explicit(&explicit(f.n, &f.sets)).unwrap();
        let c = mgr.closure(root).unwrap();
        prop_assert_eq!(mgr.closure(c).unwrap(), c);
        prop_assert_eq!(mgr.union(c, root).unwrap(), c);
        prop_assert_eq!(mgr.closure_fixpoint(root).unwrap(), c);
    }

    #[test]
    fn boolean_results_stay_within_product((n, fs) in fams(2, 10)) {
        let mut mgr = manager(n);
        let (f, g) = (mgr.from_explicit(&explicit(n, &fs[0])).unwrap(), mgr.from_explicit(&explicit(n, &fs[1])).unwrap());
        // both terminals counted for every diagram
        let size = |mgr: &DiagramManager, h| mgr.internal_node_count(h).unwrap() + 2;
        let bound = size(&mgr, f) * size(&mgr, g);
        for kind in [OpKind::Union, OpKind::Intersection, OpKind::Difference, OpKind::SymmetricDifference] {
            let r = mgr.boolean_combine(kind, f, g).unwrap();
            prop_assert!(size(&mgr, r) <= bound);
            prop_assert!(mgr.is_reduced(r).unwrap());
        }
    }

    #[test]
    fn bdd_conversion_preserves_contents(f in fam(12)) {
        let e = explicit(f.n, &f.sets);
        let mut zdd = manager(f.n);
        let mut bdd = DiagramManager::bdd(NAMES[..f.n].iter().copied()).unwrap();
        let root = zdd.from_explicit(&e).unwrap();
        let b = zdd.convert_semantics(root, &mut bdd).unwrap();
        prop_assert_eq!(bdd.from_explicit(&e).unwrap(), b);
        prop_assert!(bdd.is_reduced(b).unwrap());
        prop_assert_eq!(bdd.to_explicit(b, 1 << 10).unwrap(), e.clone());
        prop_assert_eq!(bdd.convert_semantics(b, &mut zdd).unwrap(), root);
    }

    #[test]
    fn conditioning_stays_within_size_bound(f in fam(16), mask in any::<u16>()) {
        let mut mgr = manager(f.n);
        let root = mgr.from_explicit(&explicit(f.n, &f.sets)).unwrap();
        let (mut y, mut y_prime) = (Vec::new(), Vec::new());
        for (i, name) in NAMES[..f.n].iter().enumerate() {
            match mask >> (2 * i) & 3 {
                1 => y.push(*name),
                2 => y_prime.push(*name),
                _ => {}
            }
        }
        let c = mgr.condition(root, &y, &y_prime).unwrap();
        prop_assert!(mgr.node_count(c).unwrap() <= mgr.node_count(root).unwrap() * (f.n + 2));
    }
}

#[test]
fn reachable_count_can_exceed_product() {
    let mut mgr = manager(1);
    let f = mgr.from_explicit(&explicit(1, &[0])).unwrap();
    let g = mgr.from_explicit(&explicit(1, &[0, 1])).unwrap();
    let r = mgr.symmetric_difference(f, g).unwrap();
    assert_eq!((mgr.node_count(f).unwrap(), mgr.node_count(g).unwrap()), (1, 2));
    assert_eq!(mgr.node_count(r).unwrap(), 3);
}
