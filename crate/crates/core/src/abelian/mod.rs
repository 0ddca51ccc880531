//! Finitely generated abelian groups presented as direct sums of cyclic
//! groups, their elements and homomorphisms.

mod hom;
mod multilinear;
pub mod smith;
mod subgroup;

pub use hom::AbHom;
pub use multilinear::{
    ab_exterior_sq, ab_sym_sq, ab_tensor, compact_slots, exterior_basis, exterior_index, gcd0,
    tensor_basis,
};
pub use subgroup::{ab_kernel, ab_quotient, ab_subgroup_generated, Quotient, Subgroup};

use std::fmt;

use crate::error::{self, AlgebraError, Result};
use smith::smith;

/// `Z/d_1 + ... + Z/d_r`; an order of `0` is an infinite cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FGAbelian {
    orders: Vec<i64>,
}

/// Coordinates of an element, canonical: `0 <= x_i < d_i` when `d_i > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AbElement(pub Vec<i64>);

impl AbElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for AbElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for FGAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, d) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

/// Builds a group from generator orders, dropping trivial factors.
pub fn ab_make(orders: &[i64]) -> Result<FGAbelian> {
    if let Some(d) = orders.iter().find(|&&d| d < 0) {
        return Err(AlgebraError::InvalidArgument(format!("negative order {d}")));
    }
    Ok(FGAbelian {
        orders: orders.iter().copied().filter(|&d| d != 1).collect(),
    })
}

impl FGAbelian {
    pub fn trivial() -> Self {
        FGAbelian { orders: Vec::new() }
    }

    pub fn new(orders: &[i64]) -> Result<Self> {
        ab_make(orders)
    }

    pub fn cyclic(d: i64) -> Result<Self> {
        ab_make(&[d])
    }

    pub fn orders(&self) -> &[i64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.orders.iter().all(|&d| d > 0)
    }

    /// Cardinality, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        self.orders
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d as u64))
    }

    /// Least common multiple of the generator orders (0 if infinite).
    pub fn exponent(&self) -> i64 {
        if !self.is_finite() {
            return 0;
        }
        self.orders
            .iter()
            .fold(1i64, |acc, &d| acc / multilinear::gcd0(acc, d) * d)
    }

    pub fn direct_sum(&self, other: &FGAbelian) -> FGAbelian {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        FGAbelian { orders }
    }

    pub fn zero(&self) -> AbElement {
        AbElement(vec![0; self.rank()])
    }

    pub fn generator(&self, i: usize) -> AbElement {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        AbElement(v)
    }

    fn check(&self, x: &AbElement) -> Result<()> {
        if x.0.len() != self.rank() {
            return Err(AlgebraError::InvalidArgument(format!(
                "element {x} does not belong to group {self}"
            )));
        }
        Ok(())
    }

    /// Canonical representative of arbitrary integer coordinates.
    pub fn normalize(&self, coords: &[i64]) -> Result<AbElement> {
        if coords.len() != self.rank() {
            return Err(AlgebraError::InvalidArgument(format!(
                "coordinate vector of length {} for group {self}",
                coords.len()
            )));
        }
        Ok(AbElement(
            coords
                .iter()
                .zip(&self.orders)
                .map(|(&x, &d)| if d > 0 { x.rem_euclid(d) } else { x })
                .collect(),
        ))
    }

    pub fn element(&self, coords: &[i64]) -> Result<AbElement> {
        self.normalize(coords)
    }

    pub fn add(&self, x: &AbElement, y: &AbElement) -> Result<AbElement> {
        self.check(x)?;
        self.check(y)?;
        let mut out = Vec::with_capacity(self.rank());
        for ((&a, &b), &d) in x.0.iter().zip(&y.0).zip(&self.orders) {
            let s = error::add(a, b)?;
            out.push(if d > 0 { s.rem_euclid(d) } else { s });
        }
        Ok(AbElement(out))
    }

    pub fn neg(&self, x: &AbElement) -> Result<AbElement> {
        self.scale(-1, x)
    }

    pub fn sub(&self, x: &AbElement, y: &AbElement) -> Result<AbElement> {
        self.add(x, &self.neg(y)?)
    }

    pub fn scale(&self, n: i64, x: &AbElement) -> Result<AbElement> {
        self.check(x)?;
        let mut out = Vec::with_capacity(self.rank());
        for (&a, &d) in x.0.iter().zip(&self.orders) {
            if d > 0 {
                // reduce first so the product stays small
                let nn = n.rem_euclid(d);
                out.push(error::mul(nn, a)?.rem_euclid(d));
            } else {
                out.push(error::mul(n, a)?);
            }
        }
        Ok(AbElement(out))
    }

    pub fn is_zero(&self, x: &AbElement) -> bool {
        x.0.iter().all(|&c| c == 0)
    }

    pub fn contains(&self, x: &AbElement) -> bool {
        x.0.len() == self.rank()
            && x.0
                .iter()
                .zip(&self.orders)
                .all(|(&c, &d)| d == 0 || (0..d).contains(&c))
    }

    /// Additive order of `x`; 0 for elements of infinite order.
    pub fn element_order(&self, x: &AbElement) -> Result<i64> {
        self.check(x)?;
        let mut acc = 1i64;
        for (&c, &d) in x.0.iter().zip(&self.orders) {
            if c == 0 {
                continue;
            }
            if d == 0 {
                return Ok(0);
            }
            let o = d / multilinear::gcd0(c, d);
            acc = acc / multilinear::gcd0(acc, o) * o;
        }
        Ok(acc)
    }

    /// Position of `x` in the lexicographic enumeration (first coordinate most
    /// significant). Finite groups only.
    pub fn index_of(&self, x: &AbElement) -> usize {
        let mut idx = 0usize;
        for (&c, &d) in x.0.iter().zip(&self.orders) {
            idx = idx * d as usize + c as usize;
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> AbElement {
        let mut v = vec![0i64; self.rank()];
        for k in (0..self.rank()).rev() {
            let d = self.orders[k] as usize;
            v[k] = (idx % d) as i64;
            idx /= d;
        }
        AbElement(v)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Result<Vec<AbElement>> {
        ab_enumerate(self)
    }

    /// Elements `x` with `n x = 0`, in lexicographic order (finite count
    /// whenever `n != 0`).
    pub fn torsion(&self, n: i64) -> Result<Vec<AbElement>> {
        if n == 0 {
            return ab_enumerate(self);
        }
        let per: Vec<Vec<i64>> = self
            .orders
            .iter()
            .map(|&d| {
                if d == 0 {
                    vec![0]
                } else {
                    let step = d / multilinear::gcd0(n, d);
                    (0..d).step_by(step as usize).collect()
                }
            })
            .collect();
        Ok(product_lex(&per).into_iter().map(AbElement).collect())
    }
}

/// Lexicographic cartesian product of per-coordinate value lists.
pub(crate) fn product_lex(per: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(per.len())];
    for choices in per {
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for &c in choices {
                let mut p = prefix.clone();
                p.push(c);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// All elements of a finite group, lexicographically.
pub fn ab_enumerate(a: &FGAbelian) -> Result<Vec<AbElement>> {
    if !a.is_finite() {
        return Err(AlgebraError::UnsupportedEnumeration(format!(
            "group {a} is infinite"
        )));
    }
    let n = a.order().ok_or(AlgebraError::Overflow)? as usize;
    Ok((0..n).map(|i| a.element_at(i)).collect())
}

/// All homomorphisms `source -> target`, ordered lexicographically by columns.
pub fn ab_enumerate_homs(source: &FGAbelian, target: &FGAbelian) -> Result<Vec<AbHom>> {
    let mut columns = Vec::with_capacity(source.rank());
    for &d in source.orders() {
        if d == 0 && !target.is_finite() {
            return Err(AlgebraError::UnsupportedEnumeration(format!(
                "Hom({source}, {target}) is infinite"
            )));
        }
        columns.push(target.torsion(d)?);
    }
    let mut out = Vec::new();
    let idx: Vec<Vec<i64>> = columns
        .iter()
        .map(|c| (0..c.len() as i64).collect())
        .collect();
    for choice in product_lex(&idx) {
        let cols: Vec<AbElement> = choice
            .iter()
            .enumerate()
            .map(|(j, &k)| columns[j][k as usize].clone())
            .collect();
        out.push(AbHom::from_columns_unchecked(source.clone(), target.clone(), cols));
    }
    Ok(out)
}

/// Invariant factors of `Z^n / rowspace(relations)`: finite factors in a
/// divisibility chain, then infinite ones.
pub fn ab_snf_invariants(relations: &[Vec<i64>], n: usize) -> Result<FGAbelian> {
    let s = smith(&relations.to_vec(), n)?;
    let mut finite = Vec::new();
    let mut free = 0;
    for k in 0..n {
        match s.cokernel_order(k) {
            0 => free += 1,
            1 => {}
            d => finite.push(d),
        }
    }
    finite.extend(std::iter::repeat_n(0, free));
    ab_make(&finite)
}

/// Canonical invariant-factor form of `a` together with mutually inverse
/// isomorphisms.
#[derive(Debug, Clone)]
pub struct Canonical {
    pub invariants: FGAbelian,
    pub to_canonical: AbHom,
    pub from_canonical: AbHom,
}

pub fn ab_canonical(a: &FGAbelian) -> Result<Canonical> {
    let q = ab_quotient(a, &[])?;
    let from = AbHom::new(q.group.clone(), a.clone(), q.section_columns)?;
    Ok(Canonical {
        invariants: q.group,
        to_canonical: q.map,
        from_canonical: from,
    })
}

/// Isomorphism test by invariant factors; on success returns `(f, f^{-1})`.
pub fn ab_iso(a: &FGAbelian, b: &FGAbelian) -> Result<Option<(AbHom, AbHom)>> {
    let ca = ab_canonical(a)?;
    let cb = ab_canonical(b)?;
    if ca.invariants != cb.invariants {
        return Ok(None);
    }
    let f = cb.from_canonical.compose(&ca.to_canonical)?;
    let g = ca.from_canonical.compose(&cb.to_canonical)?;
    Ok(Some((f, g)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_drops_trivial_factors() {
        assert_eq!(ab_make(&[2, 1, 2]).unwrap().orders(), &[2, 2]);
        assert!(ab_make(&[]).unwrap().is_trivial());
        assert_eq!(ab_make(&[0, 3]).unwrap().orders(), &[0, 3]);
        assert!(matches!(
            ab_make(&[2, -1]),
            Err(AlgebraError::InvalidArgument(_))
        ));
    }

    #[test]
    fn arithmetic_examples() {
        let v4 = ab_make(&[2, 2]).unwrap();
        let x = v4.element(&[1, 0]).unwrap();
        let y = v4.element(&[1, 1]).unwrap();
        assert_eq!(v4.add(&x, &y).unwrap(), AbElement(vec![0, 1]));
        let z = ab_make(&[0]).unwrap();
        assert_eq!(z.scale(3, &AbElement(vec![2])).unwrap(), AbElement(vec![6]));
        let z4 = ab_make(&[4]).unwrap();
        assert_eq!(z4.neg(&AbElement(vec![3])).unwrap(), AbElement(vec![1]));
        assert!(matches!(
            v4.add(&x, &AbElement(vec![1])),
            Err(AlgebraError::InvalidArgument(_))
        ));
    }

    #[test]
    fn overflow_is_reported() {
        let z = ab_make(&[0]).unwrap();
        let big = AbElement(vec![i64::MAX / 2 + 1]);
        assert_eq!(z.add(&big, &big), Err(AlgebraError::Overflow));
        assert_eq!(z.scale(3, &big), Err(AlgebraError::Overflow));
    }

    #[test]
    fn snf_examples() {
        let g = ab_snf_invariants(&[vec![2, 0], vec![0, 2]], 2).unwrap();
        assert_eq!(g.orders(), &[2, 2]);
        let g = ab_snf_invariants(&[], 3).unwrap();
        assert_eq!(g.orders(), &[0, 0, 0]);
        let g = ab_snf_invariants(&[vec![2, 1], vec![0, 2]], 2).unwrap();
        assert_eq!(g.orders(), &[4]);
    }

    #[test]
    fn iso_examples() {
        let a = ab_make(&[2, 4]).unwrap();
        let b = ab_make(&[8]).unwrap();
        assert!(ab_iso(&a, &b).unwrap().is_none());
        let a = ab_make(&[2, 3]).unwrap();
        let b = ab_make(&[6]).unwrap();
        let (f, g) = ab_iso(&a, &b).unwrap().unwrap();
        for x in a.elements().unwrap() {
            assert_eq!(g.apply(&f.apply(&x).unwrap()).unwrap(), x);
        }
        for y in b.elements().unwrap() {
            assert_eq!(f.apply(&g.apply(&y).unwrap()).unwrap(), y);
        }
        let z2 = ab_make(&[0, 0]).unwrap();
        let (f, g) = ab_iso(&z2, &z2).unwrap().unwrap();
        assert_eq!(f, AbHom::identity(&z2));
        assert_eq!(g, AbHom::identity(&z2));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(ab_enumerate(&ab_make(&[2, 2]).unwrap()).unwrap().len(), 4);
        let homs = ab_enumerate_homs(&ab_make(&[2]).unwrap(), &ab_make(&[4]).unwrap()).unwrap();
        let cols: Vec<_> = homs.iter().map(|h| h.columns()[0].clone()).collect();
        assert_eq!(cols, vec![AbElement(vec![0]), AbElement(vec![2])]);
        let homs =
            ab_enumerate_homs(&ab_make(&[3]).unwrap(), &ab_make(&[3, 3]).unwrap()).unwrap();
        assert_eq!(homs.len(), 9);
        assert!(matches!(
            ab_enumerate(&ab_make(&[0]).unwrap()),
            Err(AlgebraError::UnsupportedEnumeration(_))
        ));
        assert!(matches!(
            ab_enumerate_homs(&ab_make(&[0]).unwrap(), &ab_make(&[0]).unwrap()),
            Err(AlgebraError::UnsupportedEnumeration(_))
        ));
        // Z -> Z/3 is fine, Z/2 -> Z only has the zero map
        assert_eq!(
            ab_enumerate_homs(&ab_make(&[0]).unwrap(), &ab_make(&[3]).unwrap())
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            ab_enumerate_homs(&ab_make(&[2]).unwrap(), &ab_make(&[0]).unwrap())
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn index_round_trip() {
        let a = ab_make(&[2, 3, 4]).unwrap();
        for (i, x) in a.elements().unwrap().iter().enumerate() {
            assert_eq!(a.index_of(x), i);
        }
    }

    #[test]
    fn element_orders_and_exponent() {
        let a = ab_make(&[4, 6]).unwrap();
        assert_eq!(a.exponent(), 12);
        assert_eq!(a.element_order(&AbElement(vec![2, 3])).unwrap(), 2);
        assert_eq!(a.element_order(&AbElement(vec![1, 2])).unwrap(), 12);
    }
}
