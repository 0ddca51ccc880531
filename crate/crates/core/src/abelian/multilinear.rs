use super::FGAbelian;
use crate::error::Result;

/// gcd with `gcd(0, d) = d` and `gcd(0, 0) = 0`.
pub fn gcd0(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

/// Raw generator orders relabelled without the trivial factors: returns the
/// group and, for each raw slot, its index in the group (`None` if dropped).
pub fn compact_slots(raw: &[i64]) -> (FGAbelian, Vec<Option<usize>>) {
    let mut slots = Vec::with_capacity(raw.len());
    let mut orders = Vec::new();
    for &d in raw {
        if d == 1 {
            slots.push(None);
        } else {
            slots.push(Some(orders.len()));
            orders.push(d);
        }
    }
    (FGAbelian { orders }, slots)
}

fn tensor_raw(a: &FGAbelian, b: &FGAbelian) -> Vec<i64> {
    a.orders()
        .iter()
        .flat_map(|&d| b.orders().iter().map(move |&e| gcd0(d, e)))
        .collect()
}

/// `A ⊗ A'` with generators `e_i ⊗ f_j` (raw slot `i * rank(A') + j`); slots of
/// order one are dropped, see [`tensor_basis`].
pub fn ab_tensor(a: &FGAbelian, b: &FGAbelian) -> Result<FGAbelian> {
    Ok(tensor_basis(a, b).0)
}

pub fn tensor_basis(a: &FGAbelian, b: &FGAbelian) -> (FGAbelian, Vec<Option<usize>>) {
    compact_slots(&tensor_raw(a, b))
}

/// `Λ²A` with generators `e_i ∧ e_j`, `i < j`, in lexicographic order.
pub fn ab_exterior_sq(a: &FGAbelian) -> Result<FGAbelian> {
    let d = a.orders();
    let mut orders = Vec::new();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            orders.push(gcd0(d[i], d[j]));
        }
    }
    Ok(compact_slots(&orders).0)
}

/// Raw slots of `Λ²A` as in [`exterior_index`], relabelled like [`tensor_basis`].
pub fn exterior_basis(a: &FGAbelian) -> (FGAbelian, Vec<Option<usize>>) {
    let d = a.orders();
    let mut orders = Vec::new();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            orders.push(gcd0(d[i], d[j]));
        }
    }
    compact_slots(&orders)
}

/// `Sym²A` with generators `e_i e_j`, `i <= j`, in lexicographic order.
pub fn ab_sym_sq(a: &FGAbelian) -> Result<FGAbelian> {
    let d = a.orders();
    let mut orders = Vec::new();
    for i in 0..d.len() {
        for j in i..d.len() {
            orders.push(if i == j { d[i] } else { gcd0(d[i], d[j]) });
        }
    }
    Ok(compact_slots(&orders).0)
}

/// Index of `e_i ∧ e_j` (`i < j`) in [`ab_exterior_sq`] of a rank-`r` group.
pub fn exterior_index(i: usize, j: usize, r: usize) -> usize {
    debug_assert!(i < j && j < r);
    i * r - i * (i + 1) / 2 + (j - i - 1)
}

#[cfg(test)]
mod tests {
    use super::super::{ab_iso, ab_make, ab_snf_invariants};
    use super::*;

    #[test]
    fn gcd_convention() {
        assert_eq!(gcd0(0, 5), 5);
        assert_eq!(gcd0(0, 0), 0);
        assert_eq!(gcd0(4, 6), 2);
    }

    // presentation oracle: generators e_i⊗f_j, relations d_i(e_i⊗f_j), d'_j(e_i⊗f_j)
    fn tensor_by_presentation(a: &FGAbelian, b: &FGAbelian) -> FGAbelian {
        let (r, s) = (a.rank(), b.rank());
        let mut rels = Vec::new();
        for i in 0..r {
            for j in 0..s {
                for d in [a.orders()[i], b.orders()[j]] {
                    let mut row = vec![0; r * s];
                    row[i * s + j] = d;
                    rels.push(row);
                }
            }
        }
        ab_snf_invariants(&rels, r * s).unwrap()
    }

    #[test]
    fn tensor_examples() {
        let t = ab_tensor(&ab_make(&[4]).unwrap(), &ab_make(&[6]).unwrap()).unwrap();
        assert_eq!(t.orders(), &[2]);
        let a = ab_make(&[4]).unwrap();
        let b = ab_make(&[6]).unwrap();
        assert_eq!(tensor_by_presentation(&a, &b).orders(), &[2]);
        let zz = ab_tensor(&ab_make(&[0]).unwrap(), &ab_make(&[0, 5]).unwrap()).unwrap();
        assert_eq!(zz.orders(), &[0, 5]);
    }

    #[test]
    fn exterior_examples() {
        for n in [2, 5, 0] {
            let e = ab_exterior_sq(&ab_make(&[n]).unwrap()).unwrap();
            assert!(e.is_trivial());
        }
        let e = ab_exterior_sq(&ab_make(&[0, 0, 0]).unwrap()).unwrap();
        assert_eq!(e.orders(), &[0, 0, 0]);
        // SNF oracle: three free generators, no relations
        assert_eq!(ab_snf_invariants(&[], 3).unwrap(), e);
    }

    #[test]
    fn exterior_indexing() {
        let r = 4;
        let mut k = 0;
        for i in 0..r {
            for j in i + 1..r {
                assert_eq!(exterior_index(i, j, r), k);
                k += 1;
            }
        }
    }

    #[test]
    fn tensor_cardinality_matches_presentation() {
        let groups = [vec![2], vec![4], vec![2, 2], vec![3, 9], vec![2, 6], vec![4, 8, 3]];
        for x in &groups {
            for y in &groups {
                let a = ab_make(x).unwrap();
                let b = ab_make(y).unwrap();
                let t = ab_tensor(&a, &b).unwrap();
                let expected: i64 = x
                    .iter()
                    .flat_map(|&d| y.iter().map(move |&e| gcd0(d, e)))
                    .product();
                assert_eq!(t.order().unwrap() as i64, expected);
                assert!(ab_iso(&t, &tensor_by_presentation(&a, &b)).unwrap().is_some());
            }
        }
    }

    #[test]
    fn exterior_of_direct_sum_splits() {
        let groups = [vec![], vec![2], vec![4], vec![2, 2], vec![3, 9], vec![2, 6]];
        for x in &groups {
            for y in &groups {
                let a = ab_make(x).unwrap();
                let b = ab_make(y).unwrap();
                let lhs = ab_exterior_sq(&a.direct_sum(&b)).unwrap();
                let rhs = ab_exterior_sq(&a)
                    .unwrap()
                    .direct_sum(&ab_exterior_sq(&b).unwrap())
                    .direct_sum(&ab_tensor(&a, &b).unwrap());
                assert!(ab_iso(&lhs, &rhs).unwrap().is_some(), "{a} {b}");
            }
        }
    }

    #[test]
    fn symmetric_square_orders() {
        let s = ab_sym_sq(&ab_make(&[2, 4]).unwrap()).unwrap();
        assert_eq!(s.orders(), &[2, 2, 4]);
    }
}
