mod common;

use common::*;
use nilq::nil2::{cyclic, find_group_iso, nil2_coproduct, nil2_free, table_homs, Nil2Element, Nil2Group};
use nilq::qmap::{qmap_enumerate, qmap_from_z, qmap_sample};
use proptest::prelude::*;

const SMALL: [&str; 8] = ["trivial", "Z2", "Z3", "Z4", "Z2xZ2", "D4", "Q8", "Z2 v Z2"];

#[test]
fn enumeration_matches_brute_force() {
    for a in ["Z2", "Z4", "Z2xZ2", "D4", "Q8"] {
        for b in ["Z2", "Z4", "Z2xZ2", "D4", "Q8"] {
            let (s, t) = (Tab::new(&named(a)), Tab::new(&named(b)));
            let mut brute = brute_force_qmaps(&s, &t);
            let mut listed: Vec<Vec<usize>> = qmap_enumerate(&s.g, &t.g).unwrap().iter().map(|f| values(&s, &t, f)).collect();
            brute.sort();
            listed.sort();
            assert_eq!(brute, listed, "{a} -> {b}");
        }
    }
}

#[test]
fn abelian_targets_give_homomorphisms() {
    for a in ["Z4", "D4", "Q8", "Z2 v Z2"] {
        for b in ["Z2", "Z4", "Z2xZ2"] {
            let (s, t) = (Tab::new(&named(a)), Tab::new(&named(b)));
            let homs = table_homs(&s.g.table().unwrap(), &t.g.table().unwrap());
            assert_eq!(qmap_enumerate(&s.g, &t.g).unwrap().len(), homs.len(), "{a} -> {b}");
        }
    }
}

#[test]
fn coproduct_of_two_involutions_is_dihedral() {
    let w = nil2_coproduct(&named("Z2"), &named("Z2")).unwrap();
    assert!(find_group_iso(&w.group.table().unwrap(), &named("D4").table().unwrap()).is_some());
    assert!(find_group_iso(&w.group.table().unwrap(), &named("Q8").table().unwrap()).is_none());
}

#[test]
fn coproduct_universal_property() {
    let (g, h) = (named("Z2"), named("Z4"));
    let c = nil2_coproduct(&g, &h).unwrap();
    let tw = Tab::new(&c.group);
    let inc = |k: usize, x: &Nil2Group| -> Vec<usize> {
        x.elements().unwrap().iter().map(|e| tw.g.index_of(&c.inclusions[k].apply(e).unwrap())).collect()
    };
    let (ig, ih) = (inc(0, &g), inc(1, &h));
    for xn in ["Z2", "Z4", "D4", "Q8", "Z2xZ4"] {
        let x = named(xn).table().unwrap();
        let us = table_homs(&g.table().unwrap(), &x);
        let vs = table_homs(&h.table().unwrap(), &x);
        let ws = table_homs(&c.group.table().unwrap(), &x);
        assert_eq!(ws.len(), us.len() * vs.len(), "{xn}");
        for u in &us {
            for v in &vs {
                let n = ws
                    .iter()
                    .filter(|w| ig.iter().zip(u).all(|(&j, &y)| w[j] == y) && ih.iter().zip(v).all(|(&j, &y)| w[j] == y))
                    .count();
                assert_eq!(n, 1, "{xn}");
            }
        }
    }
}

#[test]
fn free_groups_have_expected_ranks() {
    for n in 0..=4usize {
        let g = nil2_free(n).unwrap();
        assert_eq!(g.ab().orders(), vec![0; n].as_slice());
        assert_eq!(g.comm().orders(), vec![0; n * n.saturating_sub(1) / 2].as_slice());
    }
}

#[test]
fn small_groups_satisfy_identities() {
    for n in SMALL.iter().chain(&["Heis3", "Z9sdZ3", "D4 x Z2"]) {
        group_identities(n, &Tab::new(&named(n)), 4).unwrap();
    }
}

fn free_element(g: &Nil2Group, c: &[i64]) -> Nil2Element {
    let r = g.rank();
    g.element(&c[..r], &c[r..]).unwrap()
}

fn coords() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..=20, 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn free_group_axioms(x in coords(), y in coords(), z in coords()) {
        let g = nil2_free(3).unwrap();
        let (x, y, z) = (free_element(&g, &x), free_element(&g, &y), free_element(&g, &z));
        let lhs = g.add(&g.add(&x, &y).unwrap(), &z).unwrap();
        let rhs = g.add(&x, &g.add(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(g.is_zero(&g.add(&x, &g.neg(&x).unwrap()).unwrap()));
        let c = g.commutator(&x, &y).unwrap();
        prop_assert!(g.ab().is_zero(&c.a));
        prop_assert_eq!(g.add(&c, &z).unwrap(), g.add(&z, &c).unwrap());
        let xz = g.add(&x, &z).unwrap();
        let split = g.add(&g.commutator(&x, &y).unwrap(), &g.commutator(&z, &y).unwrap()).unwrap();
        prop_assert_eq!(g.commutator(&xz, &y).unwrap(), split);
        prop_assert_eq!(g.commutator(&y, &x).unwrap(), g.neg(&c).unwrap());
    }

    #[test]
    fn scaling_matches_repeated_addition(x in coords(), n in -40i64..=40) {
        let g = nil2_free(3).unwrap();
        let x = free_element(&g, &x);
        prop_assert_eq!(g.scale(n, &x).unwrap(), g.scale_naive(n, &x).unwrap());
    }

    #[test]
    fn qmaps_from_integers(a in coords(), b in -9i64..=9, m in -12i64..=12, n in -12i64..=12) {
        let h = nil2_free(3).unwrap();
        let a = free_element(&h, &a);
        let b = h.element(&[0, 0, 0], &[b, 2 * b, -b]).unwrap();
        let f = qmap_from_z(&h, &a, &b).unwrap();
        let z = cyclic(0).unwrap();
        let at = |k: i64| f.eval(&z.element(&[k], &[]).unwrap()).unwrap();
        let direct = h.add(&h.scale_naive(m, &a).unwrap(), &h.scale_naive(m * (m - 1) / 2, &b).unwrap()).unwrap();
        prop_assert_eq!(at(m), direct);
        let cross = h.sub(&at(m + n), &h.add(&at(m), &at(n)).unwrap()).unwrap();
        prop_assert_eq!(cross, h.scale_naive(m * n, &b).unwrap());
    }

    #[test]
    fn sampled_qmaps_satisfy_identities(i in 0..SMALL.len(), j in 0..SMALL.len(), seed in any::<u64>()) {
        let (s, t) = (Tab::new(&named(SMALL[i])), Tab::new(&named(SMALL[j])));
        let name = format!("{} -> {}", SMALL[i], SMALL[j]);
        let fs = qmap_sample(&s.g, &t.g, 2, seed).unwrap();
        for f in &fs {
            prop_assert!(is_qmap_by_definition(&s, &t, &values(&s, &t, f)), "{}", name);
            if let Err(e) = qmap_identities(&name, &s, &t, f, 1) {
                return Err(TestCaseError::fail(e));
            }
        }
        if let [f, g] = &fs[..] {
            if let Err(e) = sum_identities(&name, &s, &t, f, g) {
                return Err(TestCaseError::fail(e));
            }
        }
    }

    #[test]
    fn sampled_compositions(i in 0..SMALL.len(), j in 0..SMALL.len(), k in 0..SMALL.len(), seed in any::<u64>()) {
        let (s, m, t) = (Tab::new(&named(SMALL[i])), Tab::new(&named(SMALL[j])), Tab::new(&named(SMALL[k])));
        let name = format!("{} -> {} -> {}", SMALL[i], SMALL[j], SMALL[k]);
        let fs = qmap_sample(&m.g, &t.g, 2, seed).unwrap();
        let gs = qmap_sample(&s.g, &m.g, 1, seed ^ 1).unwrap();
        if let ([f, f2], [g]) = (&fs[..], &gs[..]) {
            if let Err(e) = composition_identities(&name, &s, &m, &t, f, f2, g) {
                return Err(TestCaseError::fail(e));
            }
        }
    }
}
