use super::*;
use crate::abelian::ab_make;

fn el(v: &[i64]) -> AbElement {
    AbElement(v.to_vec())
}

/// Quaternion multiplication on `{±1, ±i, ±j, ±k}`, index `2 * unit + sign`.
fn q8_oracle() -> GroupOracle {
    // unit products: (unit, sign) for e_a * e_b with units 1,i,j,k
    let prod = |a: usize, b: usize| -> (usize, bool) {
        match (a, b) {
            (0, x) | (x, 0) => (x, false),
            (x, y) if x == y => (0, true),
            (1, 2) => (3, false),
            (2, 3) => (1, false),
            (3, 1) => (2, false),
            (2, 1) => (3, true),
            (3, 2) => (1, true),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    };
    let mut rows = vec![vec![0; 8]; 8];
    for x in 0..8 {
        for y in 0..8 {
            let (u, s) = prod(x / 2, y / 2);
            let neg = s ^ (x % 2 == 1) ^ (y % 2 == 1);
            rows[x][y] = 2 * u + usize::from(neg);
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    GroupOracle::new(labels, rows, 0).unwrap()
}

fn heis3_oracle() -> GroupOracle {
    // upper unitriangular 3x3 over F_3: (a, b, c) ~ [[1,a,c],[0,1,b],[0,0,1]]
    let idx = |a: i64, b: i64, c: i64| (a.rem_euclid(3) * 9 + b.rem_euclid(3) * 3 + c.rem_euclid(3)) as usize;
    let mut rows = vec![vec![0; 27]; 27];
    for x in 0..27i64 {
        let (a, b, c) = (x / 9, x / 3 % 3, x % 3);
        for y in 0..27i64 {
            let (a2, b2, c2) = (y / 9, y / 3 % 3, y % 3);
            rows[x as usize][y as usize] = idx(a + a2, b + b2, c + c2 + a * b2);
        }
    }
    let labels = (0..27).map(|i| format!("m{i}")).collect();
    GroupOracle::new(labels, rows, 0).unwrap()
}

fn involutions(g: &Nil2Group) -> usize {
    g.elements()
        .unwrap()
        .iter()
        .filter(|x| g.element_order(x).unwrap() == 2)
        .count()
}

fn finite_catalog() -> Vec<(&'static str, Nil2Group)> {
    catalog()
        .unwrap()
        .into_iter()
        .filter(|(_, g)| g.is_finite())
        .collect()
}

fn small_finite_catalog() -> Vec<(&'static str, Nil2Group)> {
    finite_catalog()
        .into_iter()
        .filter(|(_, g)| g.order().unwrap() <= 27)
        .collect()
}

#[test]
fn q8_from_standard_table() {
    let c = nil2_canonicalize_finite(&q8_oracle()).unwrap();
    assert_eq!(c.group.order(), Some(8));
    assert_eq!(c.group.ab().orders(), &[2, 2]);
    assert_eq!(involutions(&c.group), 1);
    let q8 = quaternion8().unwrap();
    assert_eq!(involutions(&q8), 1);
    assert!(find_group_iso(&q8.table().unwrap(), &q8_oracle().table).is_some());
    let d4 = dihedral4().unwrap();
    assert_eq!(involutions(&d4), 5);
    assert!(find_group_iso(&d4.table().unwrap(), &q8_oracle().table).is_none());
}

#[test]
fn heisenberg_exponent_and_order() {
    let h = heisenberg(3).unwrap();
    assert_eq!(h.order(), Some(27));
    assert_eq!(h.exponent().unwrap(), 3);
    let s = semidirect_encoded(3).unwrap();
    assert_eq!(s.exponent().unwrap(), 9);
    let c = nil2_canonicalize_finite(&heis3_oracle()).unwrap();
    assert!(find_group_iso(&c.group.table().unwrap(), &h.table().unwrap()).is_some());
}

#[test]
fn semidirect_encoding_matches_table() {
    let o = nil2_semidirect(9, 3, 4).unwrap();
    assert_eq!(o.len(), 27);
    let c = nil2_canonicalize_finite(&o).unwrap();
    assert_eq!(c.group.comm().order(), Some(3));
    let enc = semidirect_encoded(3).unwrap();
    assert!(find_group_iso(&enc.table().unwrap(), &o.table).is_some());
    let o5 = nil2_semidirect(25, 5, 6).unwrap();
    assert_eq!(o5.len(), 125);
    let enc5 = semidirect_encoded(5).unwrap();
    assert!(find_group_iso(&enc5.table().unwrap(), &o5.table).is_some());
    let d = nil2_semidirect(4, 2, 3).unwrap();
    assert!(find_group_iso(&dihedral4().unwrap().table().unwrap(), &d.table).is_some());
}

#[test]
fn semidirect_preconditions() {
    assert!(matches!(nil2_semidirect(9, 3, 2), Err(AlgebraError::NotAnAction(_))));
    assert!(matches!(nil2_semidirect(8, 2, 3), Err(AlgebraError::NotClassTwo(_))));
}

#[test]
fn make_rejects_bad_data() {
    let a = ab_make(&[2, 2]).unwrap();
    let b4 = ab_make(&[4]).unwrap();
    let z = el(&[0]);
    let bil = vec![vec![z.clone(), el(&[1])], vec![z.clone(), z.clone()]];
    assert!(matches!(
        nil2_make(a.clone(), b4, bil, vec![z.clone(), z.clone()]),
        Err(AlgebraError::InvalidCocycle(_))
    ));
    let b2 = ab_make(&[2]).unwrap();
    let zero_bil = vec![vec![z.clone(); 2]; 2];
    assert!(matches!(
        nil2_make(a, b2, zero_bil, vec![z.clone(), z]),
        Err(AlgebraError::CommutatorMismatch(_))
    ));
    let zz = ab_make(&[0]).unwrap();
    assert!(nil2_make(zz, FGAbelian::trivial(), vec![vec![el(&[])]], vec![el(&[])]).is_ok());
}

#[test]
fn q8_commutator_of_generators() {
    let q8 = quaternion8().unwrap();
    let c = q8.commutator(&q8.generator(1), &q8.generator(0)).unwrap();
    assert_eq!(c, q8.central(&el(&[1])));
    for i in 0..2 {
        assert_eq!(q8.element_order(&q8.generator(i)).unwrap(), 4);
    }
}

#[test]
fn group_axioms_on_catalog() {
    for (name, g) in small_finite_catalog() {
        let t = g.table().unwrap();
        let n = t.len();
        let rows = (0..n).map(|x| (0..n).map(|y| t.add(x, y)).collect()).collect();
        assert!(CayleyTable::new(rows, t.zero()).is_ok(), "{name}");
        assert!(t.is_class_two(), "{name}");
    }
}

#[test]
fn cocycle_identity() {
    for (name, g) in small_finite_catalog() {
        let xs = g.ab().elements().unwrap();
        for x in &xs {
            for y in &xs {
                for z in &xs {
                    let l = g
                        .comm()
                        .add(&g.beta(x, y).unwrap(), &g.beta(&g.ab().add(x, y).unwrap(), z).unwrap())
                        .unwrap();
                    let r = g
                        .comm()
                        .add(&g.beta(y, z).unwrap(), &g.beta(x, &g.ab().add(y, z).unwrap()).unwrap())
                        .unwrap();
                    assert_eq!(l, r, "{name}");
                }
            }
        }
    }
}

#[test]
fn closed_form_multiples() {
    for (name, g) in small_finite_catalog() {
        for x in g.elements().unwrap() {
            for n in -5..=5 {
                assert_eq!(g.scale(n, &x).unwrap(), g.scale_naive(n, &x).unwrap(), "{name} {n}");
            }
        }
    }
}

#[test]
fn multiples_of_sums_in_free_group() {
    let f = nil2_free(2).unwrap();
    let x = f.generator(0);
    let y = f.generator(1);
    for n in -5i64..=5 {
        let lhs = f.add(&f.scale(n, &x).unwrap(), &f.scale(n, &y).unwrap()).unwrap();
        let c = f.commutator(&x, &y).unwrap();
        let rhs = f
            .add(
                &f.scale(n, &f.add(&x, &y).unwrap()).unwrap(),
                &f.scale(n * (n - 1) / 2, &c).unwrap(),
            )
            .unwrap();
        assert_eq!(lhs, rhs, "{n}");
    }
}

#[test]
fn self_commutators_vanish() {
    for (_, g) in small_finite_catalog() {
        for x in g.elements().unwrap() {
            assert!(g.is_zero(&g.commutator(&x, &x).unwrap()));
        }
    }
}

#[test]
fn centers() {
    let q8 = quaternion8().unwrap();
    let z = nil2_center(&q8).unwrap();
    assert_eq!(z.order(), Some(2));
    for (_, g) in small_finite_catalog() {
        let z = nil2_center(&g).unwrap();
        let els = g.elements().unwrap();
        let mut count = 0;
        for x in &els {
            let central = els
                .iter()
                .all(|y| g.add(x, y).unwrap() == g.add(y, x).unwrap());
            assert_eq!(z.contains(x).unwrap(), central);
            count += usize::from(central);
        }
        assert_eq!(z.order(), Some(count as u64));
    }
    let free2 = nil2_free(2).unwrap();
    let c = nil2_center(&free2).unwrap();
    assert!(c.a_part.group.is_trivial());
    assert_eq!(c.b.orders(), &[0]);
    let ab = cyclic(6).unwrap();
    assert_eq!(nil2_center(&ab).unwrap().order(), Some(6));
}

#[test]
fn products() {
    let q8 = quaternion8().unwrap();
    let p = nil2_product(&q8, &cyclic(2).unwrap()).unwrap();
    assert_eq!(p.group.order(), Some(16));
    let d4 = dihedral4().unwrap();
    let dd = nil2_product(&d4, &d4).unwrap();
    assert_eq!(dd.group.order(), Some(64));
    assert_eq!(dd.group.comm().orders(), &[2, 2]);
    let t = nil2_product(&Nil2Group::trivial(), &q8).unwrap();
    assert_eq!(t.group, q8);
    for x in p.group.elements().unwrap() {
        for y in p.group.elements().unwrap().iter().step_by(3) {
            let s = p.group.add(&x, y).unwrap();
            for k in 0..2 {
                let pk = &p.projections[k];
                let lhs = pk.apply(&s).unwrap();
                let rhs = pk.target.add(&pk.apply(&x).unwrap(), &pk.apply(y).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn coproducts() {
    let z2 = cyclic(2).unwrap();
    let c = nil2_coproduct(&z2, &z2).unwrap();
    assert_eq!(c.group.order(), Some(8));
    assert!(find_group_iso(&c.group.table().unwrap(), &dihedral4().unwrap().table().unwrap()).is_some());
    let z = cyclic(0).unwrap();
    let zz = nil2_coproduct(&z, &z).unwrap();
    assert_eq!(zz.group.comm().orders(), &[0]);
    let q8 = quaternion8().unwrap();
    let t = nil2_coproduct(&Nil2Group::trivial(), &q8).unwrap();
    assert_eq!(t.group, q8);
    // [e_i, f_j] = e_i (x) f_j
    let g = &zz.group;
    let k = g.commutator(&g.generator(0), &g.generator(1)).unwrap();
    assert_eq!(k, g.central(&el(&[1])));
    // the injections are homomorphisms
    let h = nil2_coproduct(&z2, &cyclic(4).unwrap()).unwrap();
    for inc in &h.inclusions {
        let els = inc.source.elements().unwrap();
        for x in &els {
            for y in &els {
                let lhs = inc.apply(&inc.source.add(x, y).unwrap()).unwrap();
                let rhs = h.group.add(&inc.apply(x).unwrap(), &inc.apply(y).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn coproduct_cross_term_sign() {
    // (xi, g, h) + (xi', g', h') has tensor part xi + xi' - g'^ (x) h^
    let z3 = cyclic(3).unwrap();
    let c = nil2_coproduct(&z3, &z3).unwrap();
    let g = &c.group;
    for x in g.elements().unwrap() {
        for y in g.elements().unwrap() {
            let s = g.add(&x, &y).unwrap();
            let expected = (x.b.0[0] + y.b.0[0] - y.a.0[0] * x.a.0[1]).rem_euclid(3);
            assert_eq!(s.b.0[0], expected);
        }
    }
}

#[test]
fn free_groups() {
    assert!(nil2_free(1).unwrap().comm().is_trivial());
    assert_eq!(nil2_free(2).unwrap().comm().orders(), &[0]);
    assert_eq!(nil2_free(3).unwrap().comm().orders(), &[0, 0, 0]);
    assert!(nil2_free(0).unwrap().ab().is_trivial());
}

#[test]
fn p2_of_integers() {
    let z = cyclic(0).unwrap();
    let p = nil2_p2(&z);
    assert_eq!(p.kernel.orders(), &[0]);
    for (a, b, c, d) in [(1, 2, 3, 4), (-2, 5, 7, -3), (0, 1, 0, 1)] {
        let x = P2Element { xi: el(&[a]), g: z.element(&[b], &[]).unwrap() };
        let y = P2Element { xi: el(&[c]), g: z.element(&[d], &[]).unwrap() };
        let s = p.add(&x, &y).unwrap();
        assert_eq!(s.xi, el(&[a + c - b * d]));
        assert_eq!(s.g.a, el(&[b + d]));
    }
}

#[test]
fn p2_section_and_cross_effect() {
    for (_, g) in small_finite_catalog() {
        let p = nil2_p2(&g);
        for x in g.elements().unwrap() {
            assert_eq!(p.project(&p.p2(&x)), x);
        }
    }
    let q8 = quaternion8().unwrap();
    let p = nil2_p2(&q8);
    let (w, t) = (q8.generator(1), q8.generator(0));
    let s = p.add(&p.p2(&w), &p.p2(&t)).unwrap();
    let cross = p.add(&p.neg(&s).unwrap(), &p.p2(&q8.add(&w, &t).unwrap())).unwrap();
    let expect = p.iota(&p.tensor(&w.a, &t.a).unwrap());
    assert_eq!(cross, expect);
    assert!(!p.kernel.is_zero(&cross.xi));
}

#[test]
fn p2_group_axioms() {
    let p = nil2_p2(&dihedral4().unwrap());
    let els = p.elements().unwrap();
    assert_eq!(els.len(), 16 * 8);
    for x in els.iter().step_by(5) {
        assert_eq!(p.add(x, &p.neg(x).unwrap()).unwrap(), p.zero());
        for y in els.iter().step_by(7) {
            for z in els.iter().step_by(11) {
                let l = p.add(&p.add(x, y).unwrap(), z).unwrap();
                let r = p.add(x, &p.add(y, z).unwrap()).unwrap();
                assert_eq!(l, r);
            }
        }
    }
}

#[test]
fn canonicalize_round_trips() {
    for (name, g) in finite_catalog() {
        let t = g.table().unwrap();
        let c = nil2_canonicalize_finite(&GroupOracle::from_table(t.clone())).unwrap();
        assert_eq!(c.group.order(), g.order(), "{name}");
        assert!(find_group_iso(&c.group.table().unwrap(), &t).is_some(), "{name}");
    }
    let z4 = nil2_semidirect(4, 1, 1).unwrap();
    let c = nil2_canonicalize_finite(&z4).unwrap();
    assert_eq!(c.group.ab().orders(), &[4]);
    assert!(c.group.comm().is_trivial());
}

#[test]
fn canonicalize_rejects_class_three() {
    // dihedral group of order 16 has class three
    let n = 8i64;
    let idx = |a: i64, s: i64| (a.rem_euclid(n) * 2 + s) as usize;
    let mut rows = vec![vec![0; 16]; 16];
    for a in 0..n {
        for s in 0..2 {
            for b in 0..n {
                for t in 0..2 {
                    let b2 = if s == 1 { -b } else { b };
                    rows[idx(a, s)][idx(b, t)] = idx(a + b2, (s + t) % 2);
                }
            }
        }
    }
    let labels = (0..16).map(|i| i.to_string()).collect();
    let o = GroupOracle::new(labels, rows, 0).unwrap();
    assert!(matches!(nil2_canonicalize_finite(&o), Err(AlgebraError::NotClassTwo(_))));
}

#[test]
fn oracle_rejects_non_groups() {
    let rows = vec![vec![0, 1], vec![1, 1]];
    assert!(matches!(
        GroupOracle::new(vec!["a".into(), "b".into()], rows, 0),
        Err(AlgebraError::NotAGroup(_))
    ));
}

#[test]
fn enumeration_counts() {
    assert_eq!(quaternion8().unwrap().elements().unwrap().len(), 8);
    assert_eq!(heisenberg(3).unwrap().elements().unwrap().len(), 27);
    assert_eq!(Nil2Group::trivial().elements().unwrap().len(), 1);
    assert!(matches!(
        nil2_free(2).unwrap().elements(),
        Err(AlgebraError::UnsupportedEnumeration(_))
    ));
}

#[test]
fn homomorphism_counts() {
    let z2 = cyclic(2).unwrap().table().unwrap();
    let z4 = cyclic(4).unwrap().table().unwrap();
    assert_eq!(table_homs(&z4, &z2).len(), 2);
    assert_eq!(table_homs(&z2, &z4).len(), 2);
    let d4 = dihedral4().unwrap().table().unwrap();
    // Hom(D4, Z/2) = Hom(Z/2 x Z/2, Z/2)
    assert_eq!(table_homs(&d4, &z2).len(), 4);
    for h in table_homs(&d4, &d4) {
        assert!(d4.is_hom(&d4, &h));
    }
}
