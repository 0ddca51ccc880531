use super::{lie_log, Logarithm, Nil2LieRing};
use crate::abelian::{ab_enumerate_homs, AbElement, AbHom};
use crate::error::{self, AlgebraError, Result};
use crate::nil2::{lin_comb, Nil2Element};
use crate::qmap::QMap;

/// Additive map `L -> L'` given by generator images and its restriction to
/// `[L,L]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieLinear {
    pub images: Vec<Nil2Element>,
    pub comm: AbHom,
}

impl LieLinear {
    pub fn new(l: &Nil2LieRing, m: &Nil2LieRing, images: Vec<Nil2Element>, comm: AbHom) -> Result<LieLinear> {
        if images.len() != l.rank() || comm.source() != l.comm() || comm.target() != m.comm() {
            return Err(AlgebraError::InvalidArgument("linear map data has the wrong shape".into()));
        }
        let d = l.ab().orders();
        for (i, y) in images.iter().enumerate() {
            if !m.additive().contains(y) {
                return Err(AlgebraError::InvalidArgument(format!("image {} is not in the target", i + 1)));
            }
            let want = m.central(&comm.apply(&l.carry()[i])?);
            if m.scale(d[i], y)? != want {
                return Err(AlgebraError::InvalidHomomorphism(format!(
                    "{} * g(e_{}) differs from g of the carry",
                    d[i],
                    i + 1
                )));
            }
        }
        Ok(LieLinear { images, comm })
    }

    pub fn apply(&self, m: &Nil2LieRing, x: &Nil2Element) -> Result<Nil2Element> {
        let mut acc = m.central(&self.comm.apply(&x.b)?);
        for (i, &c) in x.a.0.iter().enumerate() {
            acc = m.add(&acc, &m.scale(c, &self.images[i])?)?;
        }
        Ok(acc)
    }
}

/// `f(a) = g(a) + ½ h(â, â)` with `g` linear and `h` symmetric bilinear into
/// `[L', L']`.
#[derive(Debug, Clone)]
pub struct QMapDecomposition {
    pub source: Logarithm,
    pub target: Logarithm,
    pub g: LieLinear,
    pub h: Vec<Vec<AbElement>>,
}

impl PartialEq for QMapDecomposition {
    fn eq(&self, o: &Self) -> bool {
        self.source.group == o.source.group && self.target.group == o.target.group && self.g == o.g && self.h == o.h
    }
}

impl QMapDecomposition {
    fn h_value(&self, x: &AbElement, y: &AbElement) -> Result<AbElement> {
        let mut terms = Vec::new();
        for (i, &p) in x.0.iter().enumerate() {
            for (j, &q) in y.0.iter().enumerate() {
                terms.push((error::mul(p, q)?, &self.h[i][j]));
            }
        }
        lin_comb(self.target.ring.comm(), terms)
    }

    /// On ring elements.
    pub fn eval_ring(&self, x: &Nil2Element) -> Result<Nil2Element> {
        let m = &self.target.ring;
        let q = m.half(&m.central(&self.h_value(&x.a, &x.a)?))?;
        m.add(&self.g.apply(m, x)?, &q)
    }

    /// On group elements.
    pub fn eval(&self, z: &Nil2Element) -> Result<Nil2Element> {
        self.target.from_ring(&self.eval_ring(&self.source.to_ring(z)?)?)
    }
}

fn ring_function<'a>(f: &'a QMap, lg: &'a Logarithm, lh: &'a Logarithm) -> impl Fn(&Nil2Element) -> Result<Nil2Element> + 'a {
    move |x| lh.to_ring(&f.eval(&lg.from_ring(x)?)?)
}

fn not_q(msg: String) -> AlgebraError {
    AlgebraError::NotAQMap(msg)
}

/// `g(a) = 2f(a) - ½f(2a)`, `h(â, b̂) = f(a+b) - f(a) - f(b)`, computed on the
/// Lie side and checked against `f` everywhere.
pub fn lie_qmap_decompose(f: &QMap) -> Result<QMapDecomposition> {
    let lg = lie_log(f.source())?;
    let lh = lie_log(f.target())?;
    let ff = ring_function(f, &lg, &lh);
    let (l, m) = (&lg.ring, &lh.ring);
    let gfun = |x: &Nil2Element| -> Result<Nil2Element> {
        m.sub(&m.scale(2, &ff(x)?)?, &m.half(&ff(&l.scale(2, x)?)?)?)
    };
    let r = l.rank();
    let images = (0..r).map(|i| gfun(&l.generator(i))).collect::<Result<Vec<_>>>()?;
    let mut cols = Vec::new();
    for k in 0..l.comm().rank() {
        let v = gfun(&l.central(&l.comm().generator(k)))?;
        if !m.ab().is_zero(&v.a) {
            return Err(not_q("linear part leaves [L',L'] on [L,L]".into()));
        }
        cols.push(v.b);
    }
    let comm = AbHom::new(l.comm().clone(), m.comm().clone(), cols).map_err(|e| not_q(e.to_string()))?;
    let g = LieLinear::new(l, m, images, comm).map_err(|e| not_q(e.to_string()))?;
    let mut h = vec![vec![m.comm().zero(); r]; r];
    for i in 0..r {
        for j in 0..r {
            let (a, b) = (l.generator(i), l.generator(j));
            let c = m.sub(&ff(&l.add(&a, &b)?)?, &m.add(&ff(&a)?, &ff(&b)?)?)?;
            if !m.ab().is_zero(&c.a) {
                return Err(not_q(format!("cross-effect at ({}, {}) leaves [L',L']", i + 1, j + 1)));
            }
            h[i][j] = c.b;
        }
    }
    let d = QMapDecomposition {
        source: lg.clone(),
        target: lh.clone(),
        g,
        h,
    };
    for x in l.elements()? {
        if d.eval_ring(&x)? != ff(&x)? {
            return Err(not_q(format!("decomposition differs at {x}")));
        }
    }
    Ok(d)
}

pub fn lie_qmap_recompose(d: &QMapDecomposition) -> Result<QMap> {
    QMap::from_function(&d.source.group, &d.target.group, &|z| d.eval(z))
}

type Candidates = (AbHom, Vec<Vec<Nil2Element>>);

/// Per commutator map: admissible generator images for `g`, plus admissible
/// values `h(e_i, e_j)` for `i <= j`.
fn candidates(l: &Nil2LieRing, m: &Nil2LieRing) -> Result<(Vec<Candidates>, Vec<(usize, usize, Vec<AbElement>)>)> {
    let r = l.rank();
    let d = l.ab().orders();
    let targets = m.elements()?;
    let hb = m.comm().elements()?;
    let killed = |o: i64, v: &AbElement| -> Result<bool> { Ok(m.comm().is_zero(&m.comm().scale(o, v)?)) };
    let mut pairs = Vec::new();
    for i in 0..r {
        for j in i..r {
            let mut c = Vec::new();
            for v in &hb {
                if killed(d[i], v)? && killed(d[j], v)? {
                    c.push(v.clone());
                }
            }
            pairs.push((i, j, c));
        }
    }
    let mut out = Vec::new();
    for comm in ab_enumerate_homs(l.comm(), m.comm())? {
        let mut digits = Vec::new();
        for i in 0..r {
            let want = m.central(&comm.apply(&l.carry()[i])?);
            let mut c = Vec::new();
            for y in &targets {
                if m.scale(d[i], y)? == want {
                    c.push(y.clone());
                }
            }
            digits.push(c);
        }
        out.push((comm, digits));
    }
    Ok((out, pairs))
}

/// Number of `(g, h)` pairs, without building them.
pub fn lie_decomposition_count(lg: &Logarithm, lh: &Logarithm) -> Result<u128> {
    let (cands, pairs) = candidates(&lg.ring, &lh.ring)?;
    let hs: u128 = pairs.iter().map(|p| p.2.len() as u128).product();
    Ok(cands
        .iter()
        .map(|(_, digits)| digits.iter().map(|c| c.len() as u128).product::<u128>() * hs)
        .sum())
}

/// All `(g, h)` pairs between the logarithms of two odd-order groups.
pub fn lie_decompositions(lg: &Logarithm, lh: &Logarithm) -> Result<Vec<QMapDecomposition>> {
    let (l, m) = (&lg.ring, &lh.ring);
    let r = l.rank();
    let (cands, pairs) = candidates(l, m)?;
    let mut out = Vec::new();
    for (comm, digits) in cands {
        let radices: Vec<usize> = digits.iter().map(Vec::len).chain(pairs.iter().map(|p| p.2.len())).collect();
        if radices.contains(&0) {
            continue;
        }
        let mut idx = vec![0usize; radices.len()];
        'odo: loop {
            let images = (0..r).map(|i| digits[i][idx[i]].clone()).collect();
            let mut h = vec![vec![m.comm().zero(); r]; r];
            for (k, (i, j, c)) in pairs.iter().enumerate() {
                h[*i][*j] = c[idx[r + k]].clone();
                h[*j][*i] = c[idx[r + k]].clone();
            }
            out.push(QMapDecomposition {
                source: lg.clone(),
                target: lh.clone(),
                g: LieLinear::new(l, m, images, comm.clone())?,
                h,
            });
            let mut p = radices.len();
            loop {
                if p == 0 {
                    break 'odo;
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < radices[p] {
                    break;
                }
                idx[p] = 0;
            }
        }
    }
    Ok(out)
}

/// Q-map of Lie rings: quadratic for `+`, cross-effect in `[L',L']`,
/// `f(a + c) = f(a) + f(c)` and `f(c) ∈ [L',L']` for `c ∈ [L,L]`.
pub fn is_lie_qmap(
    l: &Nil2LieRing,
    m: &Nil2LieRing,
    f: &dyn Fn(&Nil2Element) -> Result<Nil2Element>,
) -> Result<bool> {
    let els = l.elements()?;
    let vals = els.iter().map(f).collect::<Result<Vec<_>>>()?;
    let at = |x: &Nil2Element| &vals[l.index_of(x)];
    if !m.additive().is_zero(at(&l.zero())) {
        return Ok(false);
    }
    let cross = |a: &Nil2Element, b: &Nil2Element| -> Result<Nil2Element> {
        m.sub(at(&l.add(a, b)?), &m.add(at(a), at(b))?)
    };
    let comms: Vec<&Nil2Element> = els.iter().filter(|x| l.ab().is_zero(&x.a)).collect();
    for c in &comms {
        if !m.ab().is_zero(&at(c).a) {
            return Ok(false);
        }
    }
    for a in &els {
        for c in &comms {
            if *at(&l.add(a, c)?) != m.add(at(a), at(c))? {
                return Ok(false);
            }
        }
    }
    for a in &els {
        for b in &els {
            let c = cross(a, b)?;
            if !m.ab().is_zero(&c.a) {
                return Ok(false);
            }
        }
    }
    // bilinearity in the first slot; symmetry gives the second
    let gens: Vec<Nil2Element> = (0..l.rank()).map(|i| l.generator(i)).collect();
    for a in &els {
        for g in &gens {
            for b in &els {
                let lhs = cross(&l.add(a, g)?, b)?;
                let rhs = m.add(&cross(a, b)?, &cross(g, b)?)?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
