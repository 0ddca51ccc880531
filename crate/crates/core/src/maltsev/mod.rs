//! Class-two Lie rings of odd order and the correspondence
//! `a ⊕ b = a + b + ½[a,b]` with class-two groups.

mod decompose;

pub use decompose::{
    is_lie_qmap, lie_decomposition_count, lie_decompositions, lie_qmap_decompose, lie_qmap_recompose, LieLinear, QMapDecomposition,
};

use std::fmt;

use crate::abelian::{ab_enumerate_homs, ab_subgroup_generated, AbElement, AbHom, FGAbelian};
use crate::error::{self, AlgebraError, Result};
use crate::nil2::{lin_comb, nil2_make, Nil2Element, Nil2Group};

/// `L` as an extension of `A` by `B = [L,L]` with symmetric cocycle `carry`
/// and `bracket[i][j] = [e_i, e_j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Nil2LieRing {
    bracket: Vec<Vec<AbElement>>,
    under: Nil2Group,
}

impl fmt::Display for Nil2LieRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A={} B={}", self.ab(), self.comm())
    }
}

pub fn is_odd_order(g: &Nil2Group) -> bool {
    g.order().is_some_and(|n| n % 2 == 1)
}

fn odd(a: &FGAbelian, what: &str) -> Result<()> {
    if a.orders().iter().any(|&d| d == 0 || d % 2 == 0) {
        return Err(AlgebraError::NotUniquelyTwoDivisible(format!("{what} = {a} has even or infinite torsion")));
    }
    Ok(())
}

/// `(n + 1) / 2` for an odd group order `n`, acting as `½`.
fn half_factor(n: u64) -> i64 {
    n.div_ceil(2) as i64
}

pub fn lie_make(
    a: FGAbelian,
    b: FGAbelian,
    carry: Vec<AbElement>,
    bracket: Vec<Vec<AbElement>>,
) -> Result<Nil2LieRing> {
    odd(&a, "A")?;
    odd(&b, "B")?;
    let r = a.rank();
    if carry.len() != r || bracket.len() != r || bracket.iter().any(|row| row.len() != r) {
        return Err(AlgebraError::InvalidArgument("Lie ring data has the wrong shape".into()));
    }
    let carry = carry.iter().map(|c| b.normalize(&c.0)).collect::<Result<Vec<_>>>()?;
    let bracket = bracket
        .iter()
        .map(|row| row.iter().map(|v| b.normalize(&v.0)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    let d = a.orders();
    let mut gens = Vec::new();
    for i in 0..r {
        if !b.is_zero(&bracket[i][i]) {
            return Err(AlgebraError::InvalidBracket(format!("bracket[{0}][{0}] is not zero", i + 1)));
        }
        for j in 0..r {
            if bracket[i][j] != b.neg(&bracket[j][i])? {
                return Err(AlgebraError::InvalidBracket(format!(
                    "bracket[{}][{}] is not antisymmetric",
                    i + 1,
                    j + 1
                )));
            }
            for o in [d[i], d[j]] {
                if !b.is_zero(&b.scale(o, &bracket[i][j])?) {
                    return Err(AlgebraError::InvalidBracket(format!(
                        "bracket[{}][{}] is not killed by {o}",
                        i + 1,
                        j + 1
                    )));
                }
            }
            if i < j {
                gens.push(bracket[i][j].clone());
            }
        }
    }
    if ab_subgroup_generated(&b, &gens)?.index()? != Some(1) {
        return Err(AlgebraError::InvalidBracket("brackets do not generate B".into()));
    }
    let zero = vec![vec![b.zero(); r]; r];
    Ok(Nil2LieRing {
        bracket,
        under: Nil2Group::from_parts_unchecked(a, b, zero, carry),
    })
}

impl Nil2LieRing {
    pub fn ab(&self) -> &FGAbelian {
        self.under.ab()
    }

    pub fn comm(&self) -> &FGAbelian {
        self.under.comm()
    }

    pub fn carry(&self) -> &[AbElement] {
        self.under.carry()
    }

    pub fn bracket_matrix(&self) -> &[Vec<AbElement>] {
        &self.bracket
    }

    pub fn rank(&self) -> usize {
        self.under.rank()
    }

    pub fn order(&self) -> u64 {
        self.under.order().expect("Lie rings here are finite")
    }

    /// The additive group, as a class-two group with zero bilinear part.
    pub fn additive(&self) -> &Nil2Group {
        &self.under
    }

    pub fn zero(&self) -> Nil2Element {
        self.under.zero()
    }

    pub fn generator(&self, i: usize) -> Nil2Element {
        self.under.generator(i)
    }

    pub fn central(&self, u: &AbElement) -> Nil2Element {
        self.under.central(u)
    }

    pub fn elements(&self) -> Result<Vec<Nil2Element>> {
        self.under.elements()
    }

    pub fn index_of(&self, x: &Nil2Element) -> usize {
        self.under.index_of(x)
    }

    pub fn add(&self, x: &Nil2Element, y: &Nil2Element) -> Result<Nil2Element> {
        self.under.add(x, y)
    }

    pub fn neg(&self, x: &Nil2Element) -> Result<Nil2Element> {
        self.under.neg(x)
    }

    pub fn sub(&self, x: &Nil2Element, y: &Nil2Element) -> Result<Nil2Element> {
        self.under.add(x, &self.under.neg(y)?)
    }

    pub fn scale(&self, n: i64, x: &Nil2Element) -> Result<Nil2Element> {
        self.under.scale(n, x)
    }

    pub fn half(&self, x: &Nil2Element) -> Result<Nil2Element> {
        self.scale(half_factor(self.order()), x)
    }

    /// `[x, y] = sum x_i y_j bracket_ij`, as a central element.
    pub fn bracket(&self, x: &Nil2Element, y: &Nil2Element) -> Result<Nil2Element> {
        let mut terms = Vec::new();
        for (i, &p) in x.a.0.iter().enumerate() {
            for (j, &q) in y.a.0.iter().enumerate() {
                terms.push((error::mul(p, q)?, &self.bracket[i][j]));
            }
        }
        Ok(self.central(&lin_comb(self.comm(), terms)?))
    }
}

/// The group on the same set with `a ⊕ b = a + b + ½[a,b]`.
pub fn lie_exp(l: &Nil2LieRing) -> Result<Nil2Group> {
    let b = l.comm();
    let h = half_factor(b.order().expect("finite"));
    let bil = l
        .bracket
        .iter()
        .map(|row| row.iter().map(|v| b.scale(h, v)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    nil2_make(l.ab().clone(), b.clone(), bil, l.carry().to_vec())
}

/// `log G` with the coordinate change `ψ(x, u) = (x, u - φ(x))`, where
/// `φ(x) = ½ S(x, x)` for the symmetric part `S = ½(bil + bilᵀ)`.
#[derive(Debug, Clone)]
pub struct Logarithm {
    pub ring: Nil2LieRing,
    pub group: Nil2Group,
    sym: Vec<Vec<AbElement>>,
}

pub fn lie_log(g: &Nil2Group) -> Result<Logarithm> {
    if !is_odd_order(g) {
        return Err(AlgebraError::Unsupported(format!("logarithm of {g}: order is not odd")));
    }
    let b = g.comm();
    let h = half_factor(b.order().expect("finite"));
    let r = g.rank();
    let mut bracket = vec![vec![b.zero(); r]; r];
    let mut sym = vec![vec![b.zero(); r]; r];
    for i in 0..r {
        for j in 0..r {
            bracket[i][j] = g.gen_commutator(i, j)?;
            let s = b.add(&g.bil()[i][j], &g.bil()[j][i])?;
            sym[i][j] = b.scale(h, &s)?;
        }
    }
    let ring = lie_make(g.ab().clone(), b.clone(), g.carry().to_vec(), bracket)?;
    Ok(Logarithm {
        ring,
        group: g.clone(),
        sym,
    })
}

impl Logarithm {
    fn phi(&self, x: &AbElement) -> Result<AbElement> {
        let b = self.group.comm();
        let h = half_factor(b.order().expect("finite"));
        let mut terms = Vec::new();
        for (i, &p) in x.0.iter().enumerate() {
            for (j, &q) in x.0.iter().enumerate() {
                terms.push((error::mul(error::mul(p, q)?, h)?, &self.sym[i][j]));
            }
        }
        lin_comb(b, terms)
    }

    /// Group element to ring element.
    pub fn to_ring(&self, z: &Nil2Element) -> Result<Nil2Element> {
        let b = self.group.comm();
        Ok(Nil2Element {
            a: z.a.clone(),
            b: b.sub(&z.b, &self.phi(&z.a)?)?,
        })
    }

    pub fn from_ring(&self, z: &Nil2Element) -> Result<Nil2Element> {
        let b = self.group.comm();
        Ok(Nil2Element {
            a: z.a.clone(),
            b: b.add(&z.b, &self.phi(&z.a)?)?,
        })
    }
}

/// Abelian isomorphism `log G -> log H` carrying `[G,G]` onto `[H,H]`:
/// a bijection on the commutator parts plus generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoloWitness {
    pub comm: AbHom,
    pub images: Vec<Nil2Element>,
}

/// First witness in lexicographic order of (commutator map, images), if any.
pub fn bolo_decide(g: &Nil2Group, h: &Nil2Group) -> Result<Option<BoloWitness>> {
    let (lg, lh) = (lie_log(g)?.ring, lie_log(h)?.ring);
    if lg.order() != lh.order() {
        return Ok(None);
    }
    let targets = lh.elements()?;
    let d = lg.ab().orders().to_vec();
    let r = lg.rank();
    for comm in ab_enumerate_homs(lg.comm(), lh.comm())? {
        if !comm.is_bijective_finite()? {
            continue;
        }
        let mut cands = Vec::with_capacity(r);
        for i in 0..r {
            let want = lh.central(&comm.apply(&lg.carry()[i])?);
            let mut c = Vec::new();
            for y in &targets {
                if lh.scale(d[i], y)? == want {
                    c.push(y.clone());
                }
            }
            cands.push(c);
        }
        if cands.iter().any(Vec::is_empty) {
            continue;
        }
        let mut idx = vec![0usize; r];
        loop {
            let images: Vec<Nil2Element> = (0..r).map(|i| cands[i][idx[i]].clone()).collect();
            let ab = AbHom::new(lg.ab().clone(), lh.ab().clone(), images.iter().map(|y| y.a.clone()).collect())?;
            if ab.is_bijective_finite()? {
                return Ok(Some(BoloWitness { comm, images }));
            }
            let mut p = r;
            loop {
                if p == 0 {
                    break;
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < cands[p].len() {
                    break;
                }
                idx[p] = 0;
            }
            if idx.iter().all(|&k| k == 0) {
                break;
            }
        }
    }
    Ok(None)
}
