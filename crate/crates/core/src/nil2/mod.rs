//! Class-two nilpotent groups stored as central extensions
//! `0 -> B -> G -> A -> 0` with an explicit normalized 2-cocycle.
//!
//! Elements are pairs `(x, u)` with `x` in `A` and `u` in `B`; the law is
//! `(x,u) + (y,v) = (x + y, u + v + beta(x,y))` where
//! `beta(x,y) = sum x_i y_j bil[i][j] + sum_{d_i > 0} floor((x_i + y_i)/d_i) carry_i`.

mod catalog;
mod construct;
mod oracle;
mod table;

pub use catalog::{catalog, catalog_names, cyclic, dihedral4, heisenberg, quaternion8, semidirect_encoded};
pub use construct::{
    nil2_coproduct, nil2_free, nil2_p2, nil2_product, Coproduct, P2Element, P2Extension, Product,
    StrictHom,
};
pub use oracle::{
    find_group_iso, nil2_canonicalize_finite, nil2_semidirect, table_homs, Canonicalized,
    GroupOracle,
};
pub use table::CayleyTable;

use std::fmt;

use crate::abelian::{ab_kernel, ab_subgroup_generated, AbElement, AbHom, FGAbelian, Subgroup};
use crate::error::{self, AlgebraError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Nil2Group {
    a: FGAbelian,
    b: FGAbelian,
    bil: Vec<Vec<AbElement>>,
    carry: Vec<AbElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Nil2Element {
    pub a: AbElement,
    pub b: AbElement,
}

impl fmt::Display for Nil2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.a, self.b)
    }
}

impl fmt::Display for Nil2Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A={} B={}", self.a, self.b)
    }
}

/// `sum c_k * v_k` in `g`, accumulated without intermediate reduction.
pub(crate) fn lin_comb<'a>(
    g: &FGAbelian,
    terms: impl IntoIterator<Item = (i64, &'a AbElement)>,
) -> Result<AbElement> {
    let mut acc = vec![0i64; g.rank()];
    for (c, v) in terms {
        if c == 0 {
            continue;
        }
        for (s, &x) in acc.iter_mut().zip(&v.0) {
            if x != 0 {
                *s = error::add(*s, error::mul(c, x)?)?;
            }
        }
    }
    g.normalize(&acc)
}

/// Validates shapes, torsion compatibility and commutator surjectivity.
pub fn nil2_make(
    a: FGAbelian,
    b: FGAbelian,
    bil: Vec<Vec<AbElement>>,
    carry: Vec<AbElement>,
) -> Result<Nil2Group> {
    let r = a.rank();
    if bil.len() != r || bil.iter().any(|row| row.len() != r) {
        return Err(AlgebraError::InvalidArgument(format!(
            "bil must be {r}x{r} for A = {a}"
        )));
    }
    if carry.len() != r {
        return Err(AlgebraError::InvalidArgument(format!(
            "carry must have {r} entries for A = {a}"
        )));
    }
    let mut nb = Vec::with_capacity(r);
    for (i, row) in bil.iter().enumerate() {
        let mut nrow = Vec::with_capacity(r);
        for (j, v) in row.iter().enumerate() {
            let v = b.normalize(&v.0).map_err(|_| {
                AlgebraError::InvalidArgument(format!("bil[{}][{}] is not an element of B", i + 1, j + 1))
            })?;
            for d in [a.orders()[i], a.orders()[j]] {
                if d > 0 && !b.is_zero(&b.scale(d, &v)?) {
                    return Err(AlgebraError::InvalidCocycle(format!(
                        "bil[{}][{}] = {v} is not killed by {d}",
                        i + 1,
                        j + 1
                    )));
                }
            }
            nrow.push(v);
        }
        nb.push(nrow);
    }
    let mut nc = Vec::with_capacity(r);
    for (i, c) in carry.iter().enumerate() {
        let c = b.normalize(&c.0).map_err(|_| {
            AlgebraError::InvalidArgument(format!("carry[{}] is not an element of B", i + 1))
        })?;
        if a.orders()[i] == 0 && !b.is_zero(&c) {
            return Err(AlgebraError::InvalidCocycle(format!(
                "carry[{}] must vanish on an infinite generator",
                i + 1
            )));
        }
        nc.push(c);
    }
    let g = Nil2Group {
        a,
        b,
        bil: nb,
        carry: nc,
    };
    let gens = g.commutator_generators()?;
    let sub = ab_subgroup_generated(&g.b, &gens)?;
    if sub.index()? != Some(1) {
        return Err(AlgebraError::CommutatorMismatch(format!(
            "antisymmetrized bil generates a subgroup {} of B = {}",
            sub.group, g.b
        )));
    }
    Ok(g)
}

impl Nil2Group {
    /// Skips validation; used for extensions whose `B` is not generated by
    /// commutators (e.g. the additive group of a Lie ring).
    pub(crate) fn from_parts_unchecked(
        a: FGAbelian,
        b: FGAbelian,
        bil: Vec<Vec<AbElement>>,
        carry: Vec<AbElement>,
    ) -> Nil2Group {
        Nil2Group { a, b, bil, carry }
    }

    /// The abelian group `A` viewed as a class-two group with `B = 0`.
    pub fn abelian(a: &FGAbelian) -> Nil2Group {
        let r = a.rank();
        let b = FGAbelian::trivial();
        Nil2Group {
            a: a.clone(),
            b: b.clone(),
            bil: vec![vec![b.zero(); r]; r],
            carry: vec![b.zero(); r],
        }
    }

    pub fn trivial() -> Nil2Group {
        Nil2Group::abelian(&FGAbelian::trivial())
    }

    pub fn ab(&self) -> &FGAbelian {
        &self.a
    }

    pub fn comm(&self) -> &FGAbelian {
        &self.b
    }

    pub fn bil(&self) -> &[Vec<AbElement>] {
        &self.bil
    }

    pub fn carry(&self) -> &[AbElement] {
        &self.carry
    }

    pub fn rank(&self) -> usize {
        self.a.rank()
    }

    pub fn order(&self) -> Option<u64> {
        self.a.order()?.checked_mul(self.b.order()?)
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite()
    }

    pub fn is_abelian(&self) -> bool {
        self.b.is_trivial()
    }

    /// `T_i` with `d_i * (e_i, 0) = (0, T_i)`; zero for infinite generators.
    pub fn power_defect(&self, i: usize) -> Result<AbElement> {
        let d = self.a.orders()[i];
        if d == 0 {
            return Ok(self.b.zero());
        }
        lin_comb(
            &self.b,
            [(1, &self.carry[i]), (error::binom2(d)?, &self.bil[i][i])],
        )
    }

    /// `[e_i, e_j] = bil[i][j] - bil[j][i]`.
    pub fn gen_commutator(&self, i: usize, j: usize) -> Result<AbElement> {
        self.b.sub(&self.bil[i][j], &self.bil[j][i])
    }

    fn commutator_generators(&self) -> Result<Vec<AbElement>> {
        let r = self.rank();
        let mut out = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                out.push(self.gen_commutator(i, j)?);
            }
        }
        Ok(out)
    }

    pub fn zero(&self) -> Nil2Element {
        Nil2Element {
            a: self.a.zero(),
            b: self.b.zero(),
        }
    }

    /// The lift `(e_i, 0)` of generator `i` of `A`.
    pub fn generator(&self, i: usize) -> Nil2Element {
        Nil2Element {
            a: self.a.generator(i),
            b: self.b.zero(),
        }
    }

    /// The central element `(0, u)`.
    pub fn central(&self, u: &AbElement) -> Nil2Element {
        Nil2Element {
            a: self.a.zero(),
            b: u.clone(),
        }
    }

    pub fn element(&self, a: &[i64], b: &[i64]) -> Result<Nil2Element> {
        Ok(Nil2Element {
            a: self.a.normalize(a)?,
            b: self.b.normalize(b)?,
        })
    }

    pub fn contains(&self, z: &Nil2Element) -> bool {
        self.a.contains(&z.a) && self.b.contains(&z.b)
    }

    fn check(&self, z: &Nil2Element) -> Result<()> {
        if self.contains(z) {
            Ok(())
        } else {
            Err(AlgebraError::InvalidArgument(format!(
                "{z} is not a canonical element of {self}"
            )))
        }
    }

    /// Bilinear part `sum x_i y_j bil[i][j]`.
    pub fn bilinear(&self, x: &AbElement, y: &AbElement) -> Result<AbElement> {
        let mut terms = Vec::new();
        for (i, &xi) in x.0.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.0.iter().enumerate() {
                if yj != 0 {
                    terms.push((error::mul(xi, yj)?, &self.bil[i][j]));
                }
            }
        }
        lin_comb(&self.b, terms)
    }

    /// The full cocycle on canonical representatives.
    pub fn beta(&self, x: &AbElement, y: &AbElement) -> Result<AbElement> {
        let bl = self.bilinear(x, y)?;
        let mut terms = vec![(1, &bl)];
        for (i, &d) in self.a.orders().iter().enumerate() {
            if d > 0 {
                let w = error::add(x.0[i], y.0[i])?.div_euclid(d);
                terms.push((w, &self.carry[i]));
            }
        }
        lin_comb(&self.b, terms)
    }

    pub fn add(&self, x: &Nil2Element, y: &Nil2Element) -> Result<Nil2Element> {
        self.check(x)?;
        self.check(y)?;
        let beta = self.beta(&x.a, &y.a)?;
        Ok(Nil2Element {
            a: self.a.add(&x.a, &y.a)?,
            b: lin_comb(&self.b, [(1, &x.b), (1, &y.b), (1, &beta)])?,
        })
    }

    pub fn neg(&self, x: &Nil2Element) -> Result<Nil2Element> {
        self.check(x)?;
        let na = self.a.neg(&x.a)?;
        let beta = self.beta(&x.a, &na)?;
        Ok(Nil2Element {
            a: na,
            b: lin_comb(&self.b, [(-1, &x.b), (-1, &beta)])?,
        })
    }

    pub fn sub(&self, x: &Nil2Element, y: &Nil2Element) -> Result<Nil2Element> {
        self.add(x, &self.neg(y)?)
    }

    /// Sum of a sequence, left to right.
    pub fn sum<'a>(&self, xs: impl IntoIterator<Item = &'a Nil2Element>) -> Result<Nil2Element> {
        let mut acc = self.zero();
        for x in xs {
            acc = self.add(&acc, x)?;
        }
        Ok(acc)
    }

    /// `[x, y] = -x - y + x + y`.
    pub fn commutator(&self, x: &Nil2Element, y: &Nil2Element) -> Result<Nil2Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.central(&self.commutator_ab(&x.a, &y.a)?))
    }

    /// `B`-part of the commutator of any lifts of `x` and `y`.
    pub fn commutator_ab(&self, x: &AbElement, y: &AbElement) -> Result<AbElement> {
        self.b.sub(&self.bilinear(x, y)?, &self.bilinear(y, x)?)
    }

    /// `n * x` in closed form.
    pub fn scale(&self, n: i64, x: &Nil2Element) -> Result<Nil2Element> {
        self.check(x)?;
        if n < 0 {
            let m = n.checked_neg().ok_or(AlgebraError::Overflow)?;
            return self.scale(m, &self.neg(x)?);
        }
        let bxx = self.bilinear(&x.a, &x.a)?;
        let mut terms = vec![(n, &x.b), (error::binom2(n)?, &bxx)];
        for (i, &d) in self.a.orders().iter().enumerate() {
            if d > 0 {
                terms.push((error::mul(n, x.a.0[i])?.div_euclid(d), &self.carry[i]));
            }
        }
        Ok(Nil2Element {
            a: self.a.scale(n, &x.a)?,
            b: lin_comb(&self.b, terms)?,
        })
    }

    /// `n * x` by repeated addition (reference for [`Nil2Group::scale`]).
    pub fn scale_naive(&self, n: i64, x: &Nil2Element) -> Result<Nil2Element> {
        let step = if n < 0 { self.neg(x)? } else { x.clone() };
        let mut acc = self.zero();
        for _ in 0..n.unsigned_abs() {
            acc = self.add(&acc, &step)?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self, x: &Nil2Element) -> bool {
        self.a.is_zero(&x.a) && self.b.is_zero(&x.b)
    }

    /// Order of an element; `0` if infinite.
    pub fn element_order(&self, x: &Nil2Element) -> Result<i64> {
        self.check(x)?;
        let m = self.a.element_order(&x.a)?;
        if m == 0 {
            return Ok(0);
        }
        let y = self.scale(m, x)?;
        let t = self.b.element_order(&y.b)?;
        if t == 0 {
            return Ok(0);
        }
        error::mul(m, t)
    }

    /// Exponent of a finite group.
    pub fn exponent(&self) -> Result<i64> {
        let mut e = 1i64;
        for x in self.elements()? {
            let o = self.element_order(&x)?;
            e = e / crate::abelian::gcd0(e, o) * o;
        }
        Ok(e)
    }

    pub fn index_of(&self, x: &Nil2Element) -> usize {
        let nb = self.b.order().unwrap_or(1) as usize;
        self.a.index_of(&x.a) * nb + self.b.index_of(&x.b)
    }

    pub fn element_at(&self, idx: usize) -> Nil2Element {
        let nb = self.b.order().unwrap_or(1) as usize;
        Nil2Element {
            a: self.a.element_at(idx / nb),
            b: self.b.element_at(idx % nb),
        }
    }

    /// All elements, ordered by `(A-index, B-index)`.
    pub fn elements(&self) -> Result<Vec<Nil2Element>> {
        nil2_enumerate(self)
    }

    /// Multiplication table of a finite group, indexed as [`Nil2Group::elements`].
    pub fn table(&self) -> Result<CayleyTable> {
        CayleyTable::from_group(self)
    }

    /// `x -> (sum_i x_i [e_i, e_j])_j`; its kernel is the `A`-part of the center.
    fn pairing(&self) -> Result<AbHom> {
        let r = self.rank();
        let target = (0..r).fold(FGAbelian::trivial(), |acc, _| acc.direct_sum(&self.b));
        let mut cols = Vec::with_capacity(r);
        for i in 0..r {
            let mut col = Vec::new();
            for j in 0..r {
                col.extend(self.gen_commutator(i, j)?.0);
            }
            cols.push(AbElement(col));
        }
        AbHom::new(self.a.clone(), target, cols)
    }
}

/// The center: `{(x, u) : x in K}` where `K` is the kernel of the commutator
/// pairing on `A`.
#[derive(Debug, Clone)]
pub struct Center {
    pub a_part: Subgroup,
    pub b: FGAbelian,
}

impl Center {
    pub fn contains(&self, z: &Nil2Element) -> Result<bool> {
        self.a_part.contains(&z.a)
    }

    pub fn order(&self) -> Option<u64> {
        self.a_part.group.order()?.checked_mul(self.b.order()?)
    }
}

pub fn nil2_center(g: &Nil2Group) -> Result<Center> {
    Ok(Center {
        a_part: ab_kernel(&g.pairing()?)?,
        b: g.b.clone(),
    })
}

pub fn nil2_enumerate(g: &Nil2Group) -> Result<Vec<Nil2Element>> {
    if !g.is_finite() {
        return Err(AlgebraError::UnsupportedEnumeration(format!(
            "group {g} is infinite"
        )));
    }
    let n = g.order().ok_or(AlgebraError::Overflow)? as usize;
    Ok((0..n).map(|i| g.element_at(i)).collect())
}

/// Element arithmetic dispatched on an operation tag.
pub fn nil2_arith(g: &Nil2Group, op: ArithOp, x: &Nil2Element, y: Option<&Nil2Element>) -> Result<Nil2Element> {
    let need = |y: Option<&Nil2Element>| {
        y.cloned()
            .ok_or_else(|| AlgebraError::InvalidArgument("binary operation needs two operands".into()))
    };
    match op {
        ArithOp::Add => g.add(x, &need(y)?),
        ArithOp::Neg => g.neg(x),
        ArithOp::Commutator => g.commutator(x, &need(y)?),
        ArithOp::Scale(n) => g.scale(n, x),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Neg,
    Commutator,
    Scale(i64),
}

#[cfg(test)]
mod tests;
