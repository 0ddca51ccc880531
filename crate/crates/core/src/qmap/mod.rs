//! Q-maps between class-two groups, stored by generator data.
//!
//! A q-map `f: G -> H` is determined by `fab: G_ab -> H_ab`,
//! `fcomm: [G,G] -> [H,H]`, the values `f(e_i) = (fab(e_i), gamma_i)` on the
//! generator lifts and the cross-effects `delta[i][j] = (e_i | e_j)_f`.

mod enumerate;
mod quadratic;

pub use enumerate::{qmap_count, qmap_enumerate, qmap_sample, QMapSpace};
pub use quadratic::{qu_enumerate, QuadraticMap};

use std::fmt;

use crate::abelian::{ab_kernel, ab_quotient, AbElement, AbHom, Quotient, Subgroup};
use crate::error::{self, AlgebraError, QMapFailure, Result};
use crate::nil2::{lin_comb, nil2_p2, Nil2Element, Nil2Group, P2Element, P2Extension};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QMap {
    source: Nil2Group,
    target: Nil2Group,
    fab: AbHom,
    fcomm: AbHom,
    gamma: Vec<AbElement>,
    delta: Vec<Vec<AbElement>>,
}

fn invalid(kind: QMapFailure, detail: String) -> AlgebraError {
    AlgebraError::InvalidQMap { kind, detail }
}

/// Validates generator data against the torsion, commutator and order
/// relations.
pub fn qmap_make(
    source: &Nil2Group,
    target: &Nil2Group,
    fab: AbHom,
    fcomm: AbHom,
    gamma: Vec<AbElement>,
    delta: Vec<Vec<AbElement>>,
) -> Result<QMap> {
    let r = source.rank();
    if fab.source() != source.ab() || fab.target() != target.ab() {
        return Err(invalid(QMapFailure::Shape, "fab has the wrong endpoints".into()));
    }
    if fcomm.source() != source.comm() || fcomm.target() != target.comm() {
        return Err(invalid(QMapFailure::Shape, "fcomm has the wrong endpoints".into()));
    }
    if gamma.len() != r || delta.len() != r || delta.iter().any(|row| row.len() != r) {
        return Err(invalid(
            QMapFailure::Shape,
            format!("gamma needs {r} entries and delta must be {r}x{r}"),
        ));
    }
    let hb = target.comm();
    let gamma = gamma
        .iter()
        .enumerate()
        .map(|(i, v)| {
            hb.normalize(&v.0)
                .map_err(|_| invalid(QMapFailure::Shape, format!("gamma[{}] is not in [H,H]", i + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut nd = Vec::with_capacity(r);
    for (i, row) in delta.iter().enumerate() {
        let mut nrow = Vec::with_capacity(r);
        for (j, v) in row.iter().enumerate() {
            let v = hb.normalize(&v.0).map_err(|_| {
                invalid(QMapFailure::Shape, format!("delta[{}][{}] is not in [H,H]", i + 1, j + 1))
            })?;
            nrow.push(v);
        }
        nd.push(nrow);
    }
    let f = QMap {
        source: source.clone(),
        target: target.clone(),
        fab,
        fcomm,
        gamma,
        delta: nd,
    };
    f.validate()?;
    Ok(f)
}

impl QMap {
    pub(crate) fn from_parts_unchecked(
        source: &Nil2Group,
        target: &Nil2Group,
        fab: AbHom,
        fcomm: AbHom,
        gamma: Vec<AbElement>,
        delta: Vec<Vec<AbElement>>,
    ) -> QMap {
        QMap {
            source: source.clone(),
            target: target.clone(),
            fab,
            fcomm,
            gamma,
            delta,
        }
    }

    fn validate(&self) -> Result<()> {
        let (g, h) = (&self.source, &self.target);
        let hb = h.comm();
        let d = g.ab().orders();
        let r = g.rank();
        for i in 0..r {
            for j in 0..r {
                for o in [d[i], d[j]] {
                    if o > 0 && !hb.is_zero(&hb.scale(o, &self.delta[i][j])?) {
                        return Err(invalid(
                            QMapFailure::Torsion,
                            format!("delta[{}][{}] is not killed by {o}", i + 1, j + 1),
                        ));
                    }
                }
            }
        }
        for i in 0..r {
            for j in i + 1..r {
                if !self.commutator_relation_holds(i, j)? {
                    return Err(invalid(
                        QMapFailure::Commutator,
                        format!("generator pair ({}, {})", i + 1, j + 1),
                    ));
                }
            }
        }
        for i in 0..r {
            if !self.order_relation_holds(i)? {
                return Err(invalid(QMapFailure::Order, format!("generator {}", i + 1)));
            }
        }
        Ok(())
    }

    /// `fcomm([e_i, e_j]) = [f(e_i), f(e_j)] + delta_ij - delta_ji`.
    pub(crate) fn commutator_relation_holds(&self, i: usize, j: usize) -> Result<bool> {
        let (g, h) = (&self.source, &self.target);
        let lhs = self.fcomm.apply(&g.gen_commutator(i, j)?)?;
        let c = h.commutator_ab(&self.fab.columns()[i], &self.fab.columns()[j])?;
        let rhs = lin_comb(
            h.comm(),
            [(1, &c), (1, &self.delta[i][j]), (-1, &self.delta[j][i])],
        )?;
        Ok(lhs == rhs)
    }

    /// `d_i (fab e_i, gamma_i) + C(d_i, 2) (0, delta_ii) = (0, fcomm(T_i))`.
    pub(crate) fn order_relation_holds(&self, i: usize) -> Result<bool> {
        let (g, h) = (&self.source, &self.target);
        let d = g.ab().orders()[i];
        if d == 0 {
            return Ok(true);
        }
        let m = h.scale(d, &self.gen_image(i))?;
        let lhs = lin_comb(h.comm(), [(1, &m.b), (error::binom2(d)?, &self.delta[i][i])])?;
        let rhs = self.fcomm.apply(&g.power_defect(i)?)?;
        Ok(h.ab().is_zero(&m.a) && lhs == rhs)
    }

    pub fn source(&self) -> &Nil2Group {
        &self.source
    }

    pub fn target(&self) -> &Nil2Group {
        &self.target
    }

    pub fn fab(&self) -> &AbHom {
        &self.fab
    }

    pub fn fcomm(&self) -> &AbHom {
        &self.fcomm
    }

    pub fn gamma(&self) -> &[AbElement] {
        &self.gamma
    }

    pub fn delta(&self) -> &[Vec<AbElement>] {
        &self.delta
    }

    /// `f(e_i) = (fab(e_i), gamma_i)`.
    pub fn gen_image(&self, i: usize) -> Nil2Element {
        Nil2Element {
            a: self.fab.columns()[i].clone(),
            b: self.gamma[i].clone(),
        }
    }

    pub fn identity(g: &Nil2Group) -> QMap {
        let r = g.rank();
        QMap::from_parts_unchecked(
            g,
            g,
            AbHom::identity(g.ab()),
            AbHom::identity(g.comm()),
            vec![g.comm().zero(); r],
            vec![vec![g.comm().zero(); r]; r],
        )
    }

    pub fn zero(g: &Nil2Group, h: &Nil2Group) -> QMap {
        let r = g.rank();
        QMap::from_parts_unchecked(
            g,
            h,
            AbHom::zero(g.ab(), h.ab()),
            AbHom::zero(g.comm(), h.comm()),
            vec![h.comm().zero(); r],
            vec![vec![h.comm().zero(); r]; r],
        )
    }

    /// A homomorphism `(x, u) -> (ab(x), comm(u))`, validated.
    pub fn strict(g: &Nil2Group, h: &Nil2Group, ab: AbHom, comm: AbHom) -> Result<QMap> {
        let r = g.rank();
        qmap_make(
            g,
            h,
            ab,
            comm,
            vec![h.comm().zero(); r],
            vec![vec![h.comm().zero(); r]; r],
        )
    }

    /// The power map `x -> n x`.
    pub fn power(g: &Nil2Group, n: i64) -> Result<QMap> {
        let r = g.rank();
        let mut gamma = Vec::with_capacity(r);
        for i in 0..r {
            gamma.push(g.scale(n, &g.generator(i))?.b);
        }
        // (a|b) = -C(n,2) [a,b]
        let c = error::binom2(n)?;
        let mut delta = vec![vec![g.comm().zero(); r]; r];
        for (i, row) in delta.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = g.comm().scale(-c, &g.gen_commutator(i, j)?)?;
            }
        }
        qmap_make(
            g,
            g,
            AbHom::identity(g.ab()).scale(n)?,
            AbHom::identity(g.comm()).scale(n)?,
            gamma,
            delta,
        )
    }

    /// Value on `x_1 e_1 + ... + x_r e_r` (generator order ascending) together
    /// with the `B`-part `kappa(x)` of that sum in the source.
    fn eval_ab(&self, x: &AbElement) -> Result<(Nil2Element, AbElement)> {
        let (g, h) = (&self.source, &self.target);
        let r = g.rank();
        let mut acc = h.zero();
        let mut src = g.zero();
        for i in 0..r {
            let m = x.0[i];
            if m == 0 {
                continue;
            }
            let fm = h.scale(m, &self.gen_image(i))?;
            let corr = h.comm().scale(error::binom2(m)?, &self.delta[i][i])?;
            acc = h.add(&acc, &fm)?;
            acc = h.add(&acc, &h.central(&corr))?;
            src = g.add(&src, &g.scale(m, &g.generator(i))?)?;
        }
        let mut terms = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                let c = error::mul(x.0[i], x.0[j])?;
                if c != 0 {
                    terms.push((c, &self.delta[i][j]));
                }
            }
        }
        let cross = lin_comb(h.comm(), terms)?;
        Ok((h.add(&acc, &h.central(&cross))?, src.b))
    }

    pub fn eval(&self, z: &Nil2Element) -> Result<Nil2Element> {
        let (g, h) = (&self.source, &self.target);
        if !g.contains(z) {
            return Err(AlgebraError::InvalidArgument(format!(
                "{z} is not an element of the source"
            )));
        }
        let (v, kappa) = self.eval_ab(&z.a)?;
        let u = g.comm().sub(&z.b, &kappa)?;
        h.add(&v, &h.central(&self.fcomm.apply(&u)?))
    }

    /// `-(f(z) + f(w)) + f(z + w)`.
    pub fn cross(&self, z: &Nil2Element, w: &Nil2Element) -> Result<Nil2Element> {
        let (g, h) = (&self.source, &self.target);
        let s = h.add(&self.eval(z)?, &self.eval(w)?)?;
        h.add(&h.neg(&s)?, &self.eval(&g.add(z, w)?)?)
    }

    /// `(0, sum x_i y_j delta_ij)`.
    pub fn cross_bilinear(&self, z: &Nil2Element, w: &Nil2Element) -> Result<Nil2Element> {
        let h = &self.target;
        let mut terms = Vec::new();
        for (i, &x) in z.a.0.iter().enumerate() {
            for (j, &y) in w.a.0.iter().enumerate() {
                let c = error::mul(x, y)?;
                if c != 0 {
                    terms.push((c, &self.delta[i][j]));
                }
            }
        }
        Ok(h.central(&lin_comb(h.comm(), terms)?))
    }

    /// Values on all source elements, as target indices.
    pub fn values(&self) -> Result<Vec<usize>> {
        self.source
            .elements()?
            .iter()
            .map(|z| Ok(self.target.index_of(&self.eval(z)?)))
            .collect()
    }

    fn same_endpoints(&self, other: &QMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(AlgebraError::MismatchedEndpoints(
                "q-maps have different source or target".into(),
            ));
        }
        Ok(())
    }

    /// Pointwise sum `x -> f(x) + g(x)`.
    pub fn add(&self, other: &QMap) -> Result<QMap> {
        self.same_endpoints(other)?;
        let h = &self.target;
        let r = self.source.rank();
        let mut gamma = Vec::with_capacity(r);
        for i in 0..r {
            let s = h.add(&self.gen_image(i), &other.gen_image(i))?;
            gamma.push(s.b);
        }
        let mut delta = vec![vec![h.comm().zero(); r]; r];
        for (i, row) in delta.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                // [f(e_j), g(e_i)]
                let c = h.commutator_ab(&self.fab.columns()[j], &other.fab.columns()[i])?;
                *v = lin_comb(h.comm(), [(1, &self.delta[i][j]), (1, &other.delta[i][j]), (1, &c)])?;
            }
        }
        Ok(QMap::from_parts_unchecked(
            &self.source,
            h,
            self.fab.add(&other.fab)?,
            self.fcomm.add(&other.fcomm)?,
            gamma,
            delta,
        ))
    }

    /// Pointwise negation `x -> -f(x)`.
    pub fn neg(&self) -> Result<QMap> {
        let h = &self.target;
        let r = self.source.rank();
        let gamma = (0..r)
            .map(|i| Ok(h.neg(&self.gen_image(i))?.b))
            .collect::<Result<Vec<_>>>()?;
        let mut delta = vec![vec![h.comm().zero(); r]; r];
        for (i, row) in delta.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                let c = h.commutator_ab(&self.fab.columns()[j], &self.fab.columns()[i])?;
                *v = h.comm().sub(&c, &self.delta[i][j])?;
            }
        }
        Ok(QMap::from_parts_unchecked(
            &self.source,
            h,
            self.fab.neg()?,
            self.fcomm.neg()?,
            gamma,
            delta,
        ))
    }

    pub fn sub(&self, other: &QMap) -> Result<QMap> {
        self.add(&other.neg()?)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &QMap) -> Result<QMap> {
        if inner.target != self.source {
            return Err(AlgebraError::MismatchedEndpoints(
                "target of the inner map is not the source of the outer map".into(),
            ));
        }
        let g = &inner.source;
        let k = &self.target;
        let r = g.rank();
        let gamma = (0..r)
            .map(|i| Ok(self.eval(&inner.gen_image(i))?.b))
            .collect::<Result<Vec<_>>>()?;
        let mut delta = vec![vec![k.comm().zero(); r]; r];
        for (i, row) in delta.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                let first = self.fcomm.apply(&inner.delta[i][j])?;
                let second = self.cross_bilinear(&inner.gen_image(i), &inner.gen_image(j))?;
                *v = k.comm().add(&first, &second.b)?;
            }
        }
        Ok(QMap::from_parts_unchecked(
            g,
            k,
            self.fab.compose(&inner.fab)?,
            self.fcomm.compose(&inner.fcomm)?,
            gamma,
            delta,
        ))
    }

    /// Zero cross-effect, confirmed pointwise when the source is finite.
    pub fn is_hom(&self) -> Result<bool> {
        let hb = self.target.comm();
        if !self.delta.iter().flatten().all(|v| hb.is_zero(v)) {
            return Ok(false);
        }
        if self.source.is_finite() {
            let els = self.source.elements()?;
            for x in &els {
                for y in &els {
                    if !self.target.is_zero(&self.cross(x, y)?) {
                        return Err(AlgebraError::InternalInvariant(
                            "zero cross-effect data but nonzero cross-effect".into(),
                        ));
                    }
                }
            }
        }
        Ok(true)
    }

    /// Interpolates generator data from a function and checks that the
    /// resulting q-map agrees with it everywhere (finite source).
    pub fn from_function(
        g: &Nil2Group,
        h: &Nil2Group,
        f: &dyn Fn(&Nil2Element) -> Result<Nil2Element>,
    ) -> Result<QMap> {
        let r = g.rank();
        let gens: Vec<Nil2Element> = (0..r).map(|i| g.generator(i)).collect();
        let imgs = gens.iter().map(f).collect::<Result<Vec<_>>>()?;
        let fab = AbHom::new(g.ab().clone(), h.ab().clone(), imgs.iter().map(|v| v.a.clone()).collect())
            .map_err(|e| AlgebraError::NotAQMap(format!("induced map on abelianizations: {e}")))?;
        let mut fc = Vec::with_capacity(g.comm().rank());
        for k in 0..g.comm().rank() {
            let v = f(&g.central(&g.comm().generator(k)))?;
            if !h.ab().is_zero(&v.a) {
                return Err(AlgebraError::NotAQMap("[G,G] is not mapped into [H,H]".into()));
            }
            fc.push(v.b);
        }
        let fcomm = AbHom::new(g.comm().clone(), h.comm().clone(), fc)
            .map_err(|e| AlgebraError::NotAQMap(format!("restriction to [G,G]: {e}")))?;
        let mut delta = vec![vec![h.comm().zero(); r]; r];
        for i in 0..r {
            for j in 0..r {
                let s = h.add(&imgs[i], &imgs[j])?;
                let c = h.add(&h.neg(&s)?, &f(&g.add(&gens[i], &gens[j])?)?)?;
                if !h.ab().is_zero(&c.a) {
                    return Err(AlgebraError::NotAQMap(format!(
                        "cross-effect at ({}, {}) leaves [H,H]",
                        i + 1,
                        j + 1
                    )));
                }
                delta[i][j] = c.b;
            }
        }
        let gamma = imgs.iter().map(|v| v.b.clone()).collect();
        let q = qmap_make(g, h, fab, fcomm, gamma, delta)
            .map_err(|e| AlgebraError::NotAQMap(e.to_string()))?;
        if g.is_finite() {
            for z in g.elements()? {
                if q.eval(&z)? != f(&z)? {
                    return Err(AlgebraError::NotAQMap(format!("interpolation differs at {z}")));
                }
            }
        }
        Ok(q)
    }

    /// `x -> f(x) + q(x̂)` for a quadratic map `q: G_ab -> [H,H]`.
    pub fn add_quadratic(&self, q: &QuadraticMap) -> Result<QMap> {
        if q.source() != self.source.ab() || q.target() != self.target.comm() {
            return Err(AlgebraError::MismatchedEndpoints(
                "quadratic map must run G_ab -> [H,H]".into(),
            ));
        }
        let hb = self.target.comm();
        let gamma = self
            .gamma
            .iter()
            .zip(q.gamma())
            .map(|(a, b)| hb.add(a, b))
            .collect::<Result<Vec<_>>>()?;
        let delta = self
            .delta
            .iter()
            .zip(q.delta())
            .map(|(r1, r2)| r1.iter().zip(r2).map(|(a, b)| hb.add(a, b)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        qmap_make(
            &self.source,
            &self.target,
            self.fab.clone(),
            self.fcomm.clone(),
            gamma,
            delta,
        )
    }

    /// Pointwise equality on a finite source.
    pub fn agrees_with(&self, other: &QMap) -> Result<bool> {
        self.same_endpoints(other)?;
        for z in self.source.elements()? {
            if self.eval(&z)? != other.eval(&z)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for QMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "qmap {{ fab = {}; fcomm = {}; gamma = [", self.fab, self.fcomm)?;
        for (i, g) in self.gamma.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "];")?;
        let hb = self.target.comm();
        for (i, row) in self.delta.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !hb.is_zero(v) {
                    write!(f, " delta[{}][{}] = {v};", i + 1, j + 1)?;
                }
            }
        }
        write!(f, " }}")
    }
}

pub fn qmap_eval(f: &QMap, z: &Nil2Element) -> Result<Nil2Element> {
    f.eval(z)
}

pub fn qmap_cross(f: &QMap, z: &Nil2Element, w: &Nil2Element) -> Result<Nil2Element> {
    let c = f.cross(z, w)?;
    if c != f.cross_bilinear(z, w)? {
        return Err(AlgebraError::InternalInvariant(
            "cross-effect differs from its bilinear formula".into(),
        ));
    }
    Ok(c)
}

pub fn qmap_add(f: &QMap, g: &QMap) -> Result<QMap> {
    f.add(g)
}

pub fn qmap_neg(f: &QMap) -> Result<QMap> {
    f.neg()
}

pub fn qmap_compose(f: &QMap, g: &QMap) -> Result<QMap> {
    f.compose(g)
}

pub fn qmap_is_hom(f: &QMap) -> Result<bool> {
    f.is_hom()
}

/// `beta(f): Ker(fab) -> Coker(fcomm)`, `beta(a^) = f(a) mod f([G,G])`.
#[derive(Debug, Clone)]
pub struct BetaMap {
    pub kernel: Subgroup,
    pub cokernel: Quotient,
    pub map: AbHom,
}

pub fn qmap_beta(f: &QMap) -> Result<BetaMap> {
    let kernel = ab_kernel(&f.fab)?;
    let cokernel = ab_quotient(f.target.comm(), f.fcomm.columns())?;
    let g = &f.source;
    let cols = (0..kernel.group.rank())
        .map(|k| {
            let x = kernel.inclusion.apply(&kernel.group.generator(k))?;
            let v = f.eval(&Nil2Element {
                a: x,
                b: g.comm().zero(),
            })?;
            if !f.target.ab().is_zero(&v.a) {
                return Err(AlgebraError::InternalInvariant("kernel lift leaves [H,H]".into()));
            }
            cokernel.map.apply(&v.b)
        })
        .collect::<Result<Vec<_>>>()?;
    let map = AbHom::new(kernel.group.clone(), cokernel.group.clone(), cols)?;
    // the values f(a) mod f([G,G]) need not be additive on the kernel
    let ks = kernel.group.elements()?;
    for k in &ks {
        let x = kernel.inclusion.apply(k)?;
        let v = f.eval(&Nil2Element {
            a: x,
            b: g.comm().zero(),
        })?;
        if cokernel.map.apply(&v.b)? != map.apply(k)? {
            return Err(AlgebraError::NotAdditive(format!(
                "f(a) mod f([G,G]) on Ker(f_ab) at {}",
                v
            )));
        }
    }
    Ok(BetaMap {
        kernel,
        cokernel,
        map,
    })
}

/// `f_{a,b}(n) = n a + C(n,2) b` on `Z`; `b` must lie in `[H,H]`.
pub fn qmap_from_z(h: &Nil2Group, a: &Nil2Element, b: &Nil2Element) -> Result<QMap> {
    if !h.contains(a) || !h.contains(b) {
        return Err(AlgebraError::InvalidArgument("element not in H".into()));
    }
    if !h.ab().is_zero(&b.a) {
        return Err(AlgebraError::NotAQMap(format!("{b} is not in [H,H]")));
    }
    let z = crate::nil2::cyclic(0)?;
    let fab = AbHom::new(z.ab().clone(), h.ab().clone(), vec![a.a.clone()])?;
    qmap_make(
        &z,
        h,
        fab,
        AbHom::zero(z.comm(), h.comm()),
        vec![a.b.clone()],
        vec![vec![b.b.clone()]],
    )
}

/// The homomorphism `P2 G -> H`, `(xi, g) -> (0, sum xi_ij delta_ij) + q(g)`.
#[derive(Debug, Clone)]
pub struct P2Factorization {
    pub p2: P2Extension,
    pub q: QMap,
}

pub fn qmap_p2_factorize(q: &QMap) -> P2Factorization {
    P2Factorization {
        p2: nil2_p2(&q.source),
        q: q.clone(),
    }
}

impl P2Factorization {
    pub fn apply(&self, x: &P2Element) -> Result<Nil2Element> {
        let h = &self.q.target;
        let r = self.q.source.rank();
        let mut terms = Vec::new();
        for i in 0..r {
            for j in 0..r {
                if let Some(k) = self.p2.slot(i, j) {
                    terms.push((x.xi.0[k], &self.q.delta[i][j]));
                }
            }
        }
        let c = lin_comb(h.comm(), terms)?;
        h.add(&h.central(&c), &self.q.eval(&x.g)?)
    }
}
