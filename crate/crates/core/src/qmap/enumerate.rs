use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::QMap;
use crate::abelian::{ab_enumerate_homs, AbElement, AbHom};
use crate::error::{self, AlgebraError, Result};
use crate::nil2::{lin_comb, Nil2Element, Nil2Group};

/// The finite set of q-maps `G -> H` with `fab` and `fcomm` drawn from given
/// lists, enumerated in lexicographic order of
/// `(fab, fcomm, gamma_1..gamma_r, delta row-major)`.
///
/// For fixed `fab` and `fcomm` the relations split into independent blocks:
/// `{gamma_i, delta_ii}` (order relation) and `{delta_ij, delta_ji}`, `i < j`
/// (commutator relation); each block's admissible values are tabulated once.
pub struct QMapSpace {
    g: Nil2Group,
    h: Nil2Group,
    fabs: Vec<AbHom>,
    fcomms: Vec<AbHom>,
    hb: Vec<AbElement>,
}

/// Admissible value pairs of one block, as indices into `hb`.
struct Block {
    first: usize,
    second: usize,
    pairs: Vec<(usize, usize)>,
}

impl QMapSpace {
    pub fn all(g: &Nil2Group, h: &Nil2Group) -> Result<QMapSpace> {
        Self::check_finite(h)?;
        let fabs = ab_enumerate_homs(g.ab(), h.ab())?;
        let fcomms = ab_enumerate_homs(g.comm(), h.comm())?;
        QMapSpace::with_parts(g, h, fabs, fcomms)
    }

    /// Only `fab` and `fcomm` bijective; every such q-map is a bijection.
    pub fn bijective_parts(g: &Nil2Group, h: &Nil2Group) -> Result<QMapSpace> {
        Self::check_finite(h)?;
        Self::check_finite(g)?;
        let keep = |v: Vec<AbHom>| -> Result<Vec<AbHom>> {
            let mut out = Vec::new();
            for f in v {
                if f.is_bijective_finite()? {
                    out.push(f);
                }
            }
            Ok(out)
        };
        let fabs = keep(ab_enumerate_homs(g.ab(), h.ab())?)?;
        let fcomms = keep(ab_enumerate_homs(g.comm(), h.comm())?)?;
        QMapSpace::with_parts(g, h, fabs, fcomms)
    }

    pub fn with_parts(
        g: &Nil2Group,
        h: &Nil2Group,
        fabs: Vec<AbHom>,
        fcomms: Vec<AbHom>,
    ) -> Result<QMapSpace> {
        Self::check_finite(h)?;
        Ok(QMapSpace {
            g: g.clone(),
            h: h.clone(),
            fabs,
            fcomms,
            hb: h.comm().elements()?,
        })
    }

    fn check_finite(h: &Nil2Group) -> Result<()> {
        if !h.is_finite() {
            return Err(AlgebraError::UnsupportedEnumeration(format!(
                "group {h} is infinite"
            )));
        }
        Ok(())
    }

    fn blocks(&self, fab: &AbHom, fcomm: &AbHom) -> Result<Vec<Block>> {
        let (g, h) = (&self.g, &self.h);
        let hc = h.comm();
        let r = g.rank();
        let d = g.ab().orders();
        let hb = &self.hb;
        let killed = |o: i64, v: &AbElement| -> Result<bool> {
            Ok(o == 0 || hc.is_zero(&hc.scale(o, v)?))
        };
        let mut blocks = Vec::new();
        for i in 0..r {
            let img = &fab.columns()[i];
            let mut pairs = Vec::new();
            let target = fcomm.apply(&g.power_defect(i)?)?;
            for (gi, gv) in hb.iter().enumerate() {
                let m = if d[i] > 0 {
                    Some(h.scale(
                        d[i],
                        &Nil2Element {
                            a: img.clone(),
                            b: gv.clone(),
                        },
                    )?)
                } else {
                    None
                };
                for (di, dv) in hb.iter().enumerate() {
                    if !killed(d[i], dv)? {
                        continue;
                    }
                    let ok = match &m {
                        None => true,
                        Some(m) => {
                            lin_comb(hc, [(1, &m.b), (error::binom2(d[i])?, dv)])? == target
                        }
                    };
                    if ok {
                        pairs.push((gi, di));
                    }
                }
            }
            blocks.push(Block {
                first: i,
                second: r + i * r + i,
                pairs,
            });
        }
        for i in 0..r {
            for j in i + 1..r {
                let lhs = fcomm.apply(&g.gen_commutator(i, j)?)?;
                let c = h.commutator_ab(&fab.columns()[i], &fab.columns()[j])?;
                let t = hc.sub(&lhs, &c)?;
                let mut pairs = Vec::new();
                for (a, av) in hb.iter().enumerate() {
                    if !killed(d[i], av)? || !killed(d[j], av)? {
                        continue;
                    }
                    for (b, bv) in hb.iter().enumerate() {
                        if killed(d[i], bv)? && killed(d[j], bv)? && hc.sub(av, bv)? == t {
                            pairs.push((a, b));
                        }
                    }
                }
                blocks.push(Block {
                    first: r + i * r + j,
                    second: r + j * r + i,
                    pairs,
                });
            }
        }
        Ok(blocks)
    }

    fn build(&self, fab: &AbHom, fcomm: &AbHom, values: &[usize]) -> QMap {
        let r = self.g.rank();
        let gamma = values[..r].iter().map(|&k| self.hb[k].clone()).collect();
        let delta = (0..r)
            .map(|i| (0..r).map(|j| self.hb[values[r + i * r + j]].clone()).collect())
            .collect();
        QMap::from_parts_unchecked(&self.g, &self.h, fab.clone(), fcomm.clone(), gamma, delta)
    }

    /// Calls `visit` on every q-map in order until it breaks.
    pub fn visit(&self, visit: &mut dyn FnMut(&QMap) -> ControlFlow<()>) -> Result<ControlFlow<()>> {
        let r = self.g.rank();
        let npos = r + r * r;
        for fab in &self.fabs {
            for fcomm in &self.fcomms {
                let blocks = self.blocks(fab, fcomm)?;
                if blocks.iter().any(|b| b.pairs.is_empty()) {
                    continue;
                }
                // position -> (block, is_second)
                let mut owner = vec![(0usize, false); npos];
                for (k, b) in blocks.iter().enumerate() {
                    owner[b.first] = (k, false);
                    owner[b.second] = (k, true);
                }
                let mut values = vec![0usize; npos];
                let flow = self.dfs(0, &blocks, &owner, &mut values, fab, fcomm, visit);
                if flow.is_break() {
                    return Ok(flow);
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        p: usize,
        blocks: &[Block],
        owner: &[(usize, bool)],
        values: &mut Vec<usize>,
        fab: &AbHom,
        fcomm: &AbHom,
        visit: &mut dyn FnMut(&QMap) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if p == values.len() {
            return visit(&self.build(fab, fcomm, values));
        }
        let (k, second) = owner[p];
        let b = &blocks[k];
        if second {
            let first = values[b.first];
            for &(a, c) in &b.pairs {
                if a == first {
                    values[p] = c;
                    self.dfs(p + 1, blocks, owner, values, fab, fcomm, visit)?;
                }
            }
        } else {
            let mut last = None;
            for &(a, _) in &b.pairs {
                if last == Some(a) {
                    continue;
                }
                last = Some(a);
                values[p] = a;
                self.dfs(p + 1, blocks, owner, values, fab, fcomm, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    pub fn collect(&self) -> Result<Vec<QMap>> {
        let mut out = Vec::new();
        let _ = self.visit(&mut |f| {
            out.push(f.clone());
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    /// First q-map satisfying `pred`, in enumeration order.
    pub fn find(&self, pred: &mut dyn FnMut(&QMap) -> Result<bool>) -> Result<Option<QMap>> {
        let mut hit = None;
        let mut err = None;
        let _ = self.visit(&mut |f| match pred(f) {
            Ok(true) => {
                hit = Some(f.clone());
                ControlFlow::Break(())
            }
            Ok(false) => ControlFlow::Continue(()),
            Err(e) => {
                err = Some(e);
                ControlFlow::Break(())
            }
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(hit),
        }
    }

    fn part_counts(&self) -> Result<Vec<(usize, usize, Vec<Block>, u128)>> {
        let mut out = Vec::new();
        for (a, fab) in self.fabs.iter().enumerate() {
            for (c, fcomm) in self.fcomms.iter().enumerate() {
                let blocks = self.blocks(fab, fcomm)?;
                let mut n: u128 = 1;
                for b in &blocks {
                    n = n.checked_mul(b.pairs.len() as u128).ok_or(AlgebraError::Overflow)?;
                }
                out.push((a, c, blocks, n));
            }
        }
        Ok(out)
    }

    /// Number of q-maps, as a product over blocks.
    pub fn count(&self) -> Result<u128> {
        let mut total: u128 = 0;
        for (_, _, _, n) in self.part_counts()? {
            total = total.checked_add(n).ok_or(AlgebraError::Overflow)?;
        }
        Ok(total)
    }

    /// `k` uniform draws (with replacement) from a seeded generator.
    pub fn sample(&self, k: usize, seed: u64) -> Result<Vec<QMap>> {
        let parts = self.part_counts()?;
        let total: u128 = parts.iter().map(|p| p.3).sum();
        if total == 0 {
            return Ok(Vec::new());
        }
        let r = self.g.rank();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            let mut t = rng.gen_range(0..total);
            let (a, c, blocks, _) = parts
                .iter()
                .find(|p| {
                    if t < p.3 {
                        true
                    } else {
                        t -= p.3;
                        false
                    }
                })
                .expect("draw below total");
            let mut values = vec![0usize; r + r * r];
            for b in blocks {
                let n = b.pairs.len() as u128;
                let (x, y) = b.pairs[(t % n) as usize];
                t /= n;
                values[b.first] = x;
                values[b.second] = y;
            }
            out.push(self.build(&self.fabs[*a], &self.fcomms[*c], &values));
        }
        Ok(out)
    }
}

pub fn qmap_enumerate(g: &Nil2Group, h: &Nil2Group) -> Result<Vec<QMap>> {
    QMapSpace::all(g, h)?.collect()
}

pub fn qmap_count(g: &Nil2Group, h: &Nil2Group) -> Result<u128> {
    QMapSpace::all(g, h)?.count()
}

pub fn qmap_sample(g: &Nil2Group, h: &Nil2Group, k: usize, seed: u64) -> Result<Vec<QMap>> {
    QMapSpace::all(g, h)?.sample(k, seed)
}
