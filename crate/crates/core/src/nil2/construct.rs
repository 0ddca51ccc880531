use super::{lin_comb, nil2_make, Nil2Element, Nil2Group};
use crate::abelian::{exterior_basis, tensor_basis, AbElement, AbHom, FGAbelian};
use crate::error::{self, AlgebraError, Result};

/// A homomorphism of the form `(x, u) -> (ab(x), comm(u))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictHom {
    pub source: Nil2Group,
    pub target: Nil2Group,
    pub ab: AbHom,
    pub comm: AbHom,
}

impl StrictHom {
    pub fn apply(&self, z: &Nil2Element) -> Result<Nil2Element> {
        Ok(Nil2Element {
            a: self.ab.apply(&z.a)?,
            b: self.comm.apply(&z.b)?,
        })
    }
}

/// Block embedding of `g` at `offset` inside a group of rank `total`.
fn block(g: &FGAbelian, total: &FGAbelian, offset: usize) -> Result<AbHom> {
    let cols = (0..g.rank()).map(|i| total.generator(offset + i)).collect();
    AbHom::new(g.clone(), total.clone(), cols)
}

/// Block projection of `total` onto the coordinates `offset..offset+rank(g)`.
fn unblock(total: &FGAbelian, g: &FGAbelian, offset: usize) -> Result<AbHom> {
    let cols = (0..total.rank())
        .map(|k| {
            if k >= offset && k < offset + g.rank() {
                g.generator(k - offset)
            } else {
                g.zero()
            }
        })
        .collect();
    AbHom::new(total.clone(), g.clone(), cols)
}

fn embed(v: &AbElement, total: &FGAbelian, offset: usize) -> AbElement {
    let mut out = vec![0; total.rank()];
    out[offset..offset + v.0.len()].copy_from_slice(&v.0);
    AbElement(out)
}

#[derive(Debug, Clone)]
pub struct Product {
    pub group: Nil2Group,
    pub projections: [StrictHom; 2],
    pub inclusions: [StrictHom; 2],
}

pub fn nil2_product(g1: &Nil2Group, g2: &Nil2Group) -> Result<Product> {
    let (r1, r2) = (g1.rank(), g2.rank());
    let b1r = g1.comm().rank();
    let a = g1.ab().direct_sum(g2.ab());
    let b = g1.comm().direct_sum(g2.comm());
    let r = r1 + r2;
    let mut bil = vec![vec![b.zero(); r]; r];
    for i in 0..r1 {
        for j in 0..r1 {
            bil[i][j] = embed(&g1.bil()[i][j], &b, 0);
        }
    }
    for i in 0..r2 {
        for j in 0..r2 {
            bil[r1 + i][r1 + j] = embed(&g2.bil()[i][j], &b, b1r);
        }
    }
    let carry = g1
        .carry()
        .iter()
        .map(|c| embed(c, &b, 0))
        .chain(g2.carry().iter().map(|c| embed(c, &b, b1r)))
        .collect();
    let group = nil2_make(a.clone(), b.clone(), bil, carry)?;
    let hom = |s: &Nil2Group, t: &Nil2Group, ab: AbHom, comm: AbHom| StrictHom {
        source: s.clone(),
        target: t.clone(),
        ab,
        comm,
    };
    let projections = [
        hom(&group, g1, unblock(&a, g1.ab(), 0)?, unblock(&b, g1.comm(), 0)?),
        hom(&group, g2, unblock(&a, g2.ab(), r1)?, unblock(&b, g2.comm(), b1r)?),
    ];
    let inclusions = [
        hom(g1, &group, block(g1.ab(), &a, 0)?, block(g1.comm(), &b, 0)?),
        hom(g2, &group, block(g2.ab(), &a, r1)?, block(g2.comm(), &b, b1r)?),
    ];
    Ok(Product {
        group,
        projections,
        inclusions,
    })
}

/// `G1 v G2` with `B = B1 + B2 + (A1 (x) A2)`.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub group: Nil2Group,
    pub inclusions: [StrictHom; 2],
    /// Position of `e_i (x) f_j` in `B` (raw slot `i * rank(A2) + j`), if nontrivial.
    pub tensor_slots: Vec<Option<usize>>,
    /// Offset of the tensor summand in `B`.
    pub tensor_offset: usize,
}

pub fn nil2_coproduct(g1: &Nil2Group, g2: &Nil2Group) -> Result<Coproduct> {
    let (r1, r2) = (g1.rank(), g2.rank());
    let (t, slots) = tensor_basis(g1.ab(), g2.ab());
    let a = g1.ab().direct_sum(g2.ab());
    let b12 = g1.comm().direct_sum(g2.comm());
    let b = b12.direct_sum(&t);
    let (o2, ot) = (g1.comm().rank(), b12.rank());
    let r = r1 + r2;
    let mut bil = vec![vec![b.zero(); r]; r];
    for i in 0..r1 {
        for j in 0..r1 {
            bil[i][j] = embed(&g1.bil()[i][j], &b, 0);
        }
    }
    for i in 0..r2 {
        for j in 0..r2 {
            bil[r1 + i][r1 + j] = embed(&g2.bil()[i][j], &b, o2);
        }
    }
    // (f_j, e_i) -> -(e_i (x) f_j), so [e_i, f_j] = e_i (x) f_j
    for i in 0..r1 {
        for j in 0..r2 {
            if let Some(k) = slots[i * r2 + j] {
                let mut v = vec![0; b.rank()];
                v[ot + k] = -1;
                bil[r1 + j][i] = b.normalize(&v)?;
            }
        }
    }
    let carry = g1
        .carry()
        .iter()
        .map(|c| embed(c, &b, 0))
        .chain(g2.carry().iter().map(|c| embed(c, &b, o2)))
        .collect();
    let group = nil2_make(a.clone(), b.clone(), bil, carry)?;
    let inclusions = [
        StrictHom {
            source: g1.clone(),
            target: group.clone(),
            ab: block(g1.ab(), &a, 0)?,
            comm: block(g1.comm(), &b, 0)?,
        },
        StrictHom {
            source: g2.clone(),
            target: group.clone(),
            ab: block(g2.ab(), &a, r1)?,
            comm: block(g2.comm(), &b, o2)?,
        },
    ];
    Ok(Coproduct {
        group,
        inclusions,
        tensor_slots: slots,
        tensor_offset: ot,
    })
}

/// Free class-two group on `n` generators: `A = Z^n`, `B = Λ²Z^n`.
pub fn nil2_free(n: usize) -> Result<Nil2Group> {
    let a = FGAbelian::new(&vec![0; n])?;
    let (b, slots) = exterior_basis(&a);
    let mut bil = vec![vec![b.zero(); n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if let Some(s) = slots[k] {
                bil[i][j] = b.generator(s);
            }
            k += 1;
        }
    }
    let carry = vec![b.zero(); n];
    nil2_make(a, b, bil, carry)
}

/// `P2 G`: pairs `(xi, g)` with `xi` in `G_ab (x) G_ab` and
/// `(xi, g) + (xi', g') = (xi + xi' - g^ (x) g'^, g + g')`.
#[derive(Debug, Clone)]
pub struct P2Extension {
    pub base: Nil2Group,
    pub kernel: FGAbelian,
    slots: Vec<Option<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P2Element {
    pub xi: AbElement,
    pub g: Nil2Element,
}

pub fn nil2_p2(g: &Nil2Group) -> P2Extension {
    let (kernel, slots) = tensor_basis(g.ab(), g.ab());
    P2Extension {
        base: g.clone(),
        kernel,
        slots,
    }
}

impl P2Extension {
    /// `x (x) y` for `x, y` in `G_ab`.
    pub fn tensor(&self, x: &AbElement, y: &AbElement) -> Result<AbElement> {
        let r = self.base.rank();
        let mut v = vec![0i64; self.kernel.rank()];
        for i in 0..r {
            if x.0[i] == 0 {
                continue;
            }
            for j in 0..r {
                if let Some(k) = self.slots[i * r + j] {
                    v[k] = error::add(v[k], error::mul(x.0[i], y.0[j])?)?;
                }
            }
        }
        self.kernel.normalize(&v)
    }

    /// Position of `e_i (x) e_j` in the kernel, if that generator is nontrivial.
    pub fn slot(&self, i: usize, j: usize) -> Option<usize> {
        self.slots[i * self.base.rank() + j]
    }

    pub fn zero(&self) -> P2Element {
        P2Element {
            xi: self.kernel.zero(),
            g: self.base.zero(),
        }
    }

    fn check(&self, z: &P2Element) -> Result<()> {
        if self.kernel.contains(&z.xi) && self.base.contains(&z.g) {
            Ok(())
        } else {
            Err(AlgebraError::InvalidArgument("element is not in P2 G".into()))
        }
    }

    pub fn add(&self, x: &P2Element, y: &P2Element) -> Result<P2Element> {
        self.check(x)?;
        self.check(y)?;
        let t = self.tensor(&x.g.a, &y.g.a)?;
        Ok(P2Element {
            xi: lin_comb(&self.kernel, [(1, &x.xi), (1, &y.xi), (-1, &t)])?,
            g: self.base.add(&x.g, &y.g)?,
        })
    }

    pub fn neg(&self, x: &P2Element) -> Result<P2Element> {
        self.check(x)?;
        let t = self.tensor(&x.g.a, &x.g.a)?;
        Ok(P2Element {
            xi: lin_comb(&self.kernel, [(-1, &x.xi), (-1, &t)])?,
            g: self.base.neg(&x.g)?,
        })
    }

    /// `p2(g) = (0, g)`.
    pub fn p2(&self, g: &Nil2Element) -> P2Element {
        P2Element {
            xi: self.kernel.zero(),
            g: g.clone(),
        }
    }

    /// `(xi, 0)`.
    pub fn iota(&self, xi: &AbElement) -> P2Element {
        P2Element {
            xi: xi.clone(),
            g: self.base.zero(),
        }
    }

    pub fn project(&self, x: &P2Element) -> Nil2Element {
        x.g.clone()
    }

    pub fn elements(&self) -> Result<Vec<P2Element>> {
        let ks = self.kernel.elements()?;
        let gs = self.base.elements()?;
        let mut out = Vec::with_capacity(ks.len() * gs.len());
        for xi in &ks {
            for g in &gs {
                out.push(P2Element {
                    xi: xi.clone(),
                    g: g.clone(),
                });
            }
        }
        Ok(out)
    }
}
