use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::equiv::{qmap_sim_equiv, rho};
use super::report::Report;
use crate::abelian::{ab_enumerate_homs, tensor_basis, AbHom};
use crate::error::{AlgebraError, Result};
use crate::nil2::{nil2_product, table_homs, Nil2Group};
use crate::qmap::{qmap_enumerate, qmap_sample, qmap_count, qu_enumerate, QMap, QuadraticMap};

/// Which quotient of which category is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Homomorphisms modulo `Hom(G_ab, [H,H])`.
    Nil,
    /// Q-maps modulo `α: G_ab ⊗ G_ab -> [H,H]`.
    NiqSim,
    /// Q-maps modulo quadratic maps `G_ab -> [H,H]`.
    NiqApprox,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Nil => "nil",
            Level::NiqSim => "niq-sim",
            Level::NiqApprox => "niq-approx",
        })
    }
}

impl FromStr for Level {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Level> {
        match s {
            "nil" => Ok(Level::Nil),
            "niq-sim" => Ok(Level::NiqSim),
            "niq-approx" => Ok(Level::NiqApprox),
            _ => Err(AlgebraError::InvalidArgument(format!("unknown level {s}"))),
        }
    }
}

fn morphisms(level: Level, g: &Nil2Group, h: &Nil2Group) -> Result<Vec<QMap>> {
    match level {
        Level::Nil => {
            let (tg, th) = (g.table()?, h.table()?);
            table_homs(&tg, &th)
                .into_iter()
                .map(|m| QMap::from_function(g, h, &|z| Ok(h.element_at(m[g.index_of(z)]))))
                .collect()
        }
        Level::NiqSim | Level::NiqApprox => qmap_enumerate(g, h),
    }
}

/// The acting group, as quadratic maps `G_ab -> [H,H]` (distinct as data).
fn acting(level: Level, g: &Nil2Group, h: &Nil2Group) -> Result<Vec<QuadraticMap>> {
    let (a, b) = (g.ab(), h.comm());
    let mut out: Vec<QuadraticMap> = match level {
        Level::Nil => ab_enumerate_homs(a, b)?.iter().map(QuadraticMap::from_hom).collect(),
        Level::NiqSim => {
            let t = tensor_basis(a, a).0;
            ab_enumerate_homs(&t, b)?
                .iter()
                .map(|alpha| rho(a, alpha))
                .collect::<Result<_>>()?
        }
        Level::NiqApprox => qu_enumerate(a, b)?,
    };
    let mut seen = HashSet::new();
    out.retain(|q| seen.insert(q.clone()));
    Ok(out)
}

fn fiber_key(f: &QMap) -> (AbHom, AbHom) {
    (f.fab().clone(), f.fcomm().clone())
}

fn same_fiber(level: Level, f: &QMap, g: &QMap) -> Result<bool> {
    match level {
        Level::NiqSim => Ok(qmap_sim_equiv(f, g)?.is_some()),
        Level::Nil | Level::NiqApprox => Ok(fiber_key(f) == fiber_key(g)),
    }
}

fn pick<T: Clone>(v: &[T], k: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
    if v.len() <= k {
        return v.to_vec();
    }
    let mut idx = sample(rng, v.len(), k).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| v[i].clone()).collect()
}

/// Checks that the action of `D(G,H)` on morphisms `G -> H` preserves the
/// fibers of the quotient, is free and transitive on them, and satisfies
/// `(α+a)(β+b) = αβ + P(α)_* b + P(β)^* a` for sampled `β: K -> G`.
pub fn linear_extension_verify(
    level: Level,
    g: &Nil2Group,
    h: &Nil2Group,
    k: &Nil2Group,
    instance: &str,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    let inst = format!("{level} {instance}");
    let mut report = Report::new();
    let maps = morphisms(level, g, h)?;
    let d = acting(level, g, h)?;
    let values: Vec<Vec<usize>> = maps.iter().map(QMap::values).collect::<Result<_>>()?;
    let index: HashMap<&Vec<usize>, usize> = values.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut buckets: HashMap<(AbHom, AbHom), Vec<usize>> = HashMap::new();
    for (i, f) in maps.iter().enumerate() {
        buckets.entry(fiber_key(f)).or_default().push(i);
    }
    // classes of the quotient, one representative scan per class
    let mut class = vec![usize::MAX; maps.len()];
    let mut sizes = Vec::new();
    for members in buckets.values() {
        for (p, &r) in members.iter().enumerate() {
            if class[r] != usize::MAX {
                continue;
            }
            class[r] = sizes.len();
            let mut size = 1;
            for &j in &members[p + 1..] {
                if class[j] == usize::MAX && same_fiber(level, &maps[r], &maps[j])? {
                    class[j] = sizes.len();
                    size += 1;
                }
            }
            sizes.push(size);
        }
    }
    // the action is pointwise: (f + q)(x) = f(x) + q(x mod [G,G])
    let th = h.table()?;
    let els = g.elements()?;
    let qvals = d
        .iter()
        .map(|q| els.iter().map(|x| Ok(h.index_of(&h.central(&q.eval(&x.a)?)))).collect())
        .collect::<Result<Vec<Vec<usize>>>>()?;
    let (mut fiber_ok, mut free_ok, mut trans_ok) = (true, true, true);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in sample(&mut rng, maps.len(), samples.min(maps.len())) {
        for (a, qv) in d.iter().zip(&qvals) {
            let direct: Vec<usize> = values[i].iter().zip(qv).map(|(&u, &w)| th.add(u, w)).collect();
            fiber_ok &= maps[i].add_quadratic(a)?.values()? == direct;
        }
    }
    for (i, v) in values.iter().enumerate() {
        let mut orbit = HashSet::new();
        for qv in &qvals {
            let w: Vec<usize> = v.iter().zip(qv).map(|(&u, &w)| th.add(u, w)).collect();
            let j = index.get(&w).copied();
            fiber_ok &= j.is_some_and(|j| class[j] == class[i]);
            orbit.insert(j.unwrap_or(usize::MAX));
        }
        free_ok &= orbit.len() == d.len();
        trans_ok &= orbit.len() == sizes[class[i]] && orbit.contains(&i);
    }
    report.push(fiber_ok, "linext.fiber", inst.clone());
    report.push(free_ok, "linext.effective", inst.clone());
    report.push(trans_ok, "linext.transitive", inst.clone());

    let inner = morphisms(level, k, g)?;
    let db = acting(level, k, g)?;
    let alphas = pick(&maps, samples, &mut rng);
    let betas = pick(&inner, samples, &mut rng);
    let as_ = pick(&d, samples, &mut rng);
    let bs = pick(&db, samples, &mut rng);
    let mut dist_ok = true;
    for al in &alphas {
        for be in &betas {
            let ab = al.compose(be)?;
            for a in &as_ {
                let lhs_outer = al.add_quadratic(a)?;
                let pull = a.precompose(be.fab())?;
                for b in bs.iter() {
                    let lhs = lhs_outer.compose(&be.add_quadratic(b)?)?;
                    let push = b.postcompose(al.fcomm())?;
                    let rhs = ab.add_quadratic(&push.add(&pull)?)?;
                    dist_ok &= lhs.agrees_with(&rhs)?;
                }
            }
        }
    }
    report.push(dist_ok, "linext.distributive", inst);
    Ok(report)
}

/// For `f_k: X_k -> Z`, checks that `f = f_1 p_1 + f_2 p_2` on `X_1 × X_2`
/// restricts to `f_k` along the inclusions. Pairs are sampled when there are
/// more than `limit`.
pub fn weak_coproduct_verify(
    x1: &Nil2Group,
    x2: &Nil2Group,
    z: &Nil2Group,
    instance: &str,
    limit: usize,
    seed: u64,
) -> Result<Report> {
    let p = nil2_product(x1, x2)?;
    let w = &p.group;
    let strict = |s: &crate::nil2::StrictHom| QMap::strict(&s.source, &s.target, s.ab.clone(), s.comm.clone());
    let (p1, p2) = (strict(&p.projections[0])?, strict(&p.projections[1])?);
    let (i1, i2) = (strict(&p.inclusions[0])?, strict(&p.inclusions[1])?);
    let per = (limit as f64).sqrt().ceil() as usize;
    let list = |x: &Nil2Group, s: u64| -> Result<Vec<QMap>> {
        if qmap_count(x, z)? <= per as u128 {
            qmap_enumerate(x, z)
        } else {
            qmap_sample(x, z, per, s)
        }
    };
    let (f1s, f2s) = (list(x1, seed)?, list(x2, seed.wrapping_add(1))?);
    let mut ok = true;
    let mut zero_ok = true;
    for f1 in &f1s {
        for f2 in &f2s {
            let f = f1.compose(&p1)?.add(&f2.compose(&p2)?)?;
            ok &= f.compose(&i1)?.agrees_with(f1)? && f.compose(&i2)?.agrees_with(f2)?;
        }
    }
    let f0 = QMap::zero(x1, z).compose(&p1)?.add(&QMap::zero(x2, z).compose(&p2)?)?;
    zero_ok &= f0.agrees_with(&QMap::zero(w, z))?;
    let mut report = Report::new();
    report.push(ok, "coproduct.weak", instance);
    report.push(zero_ok, "coproduct.weak-zero", instance);
    Ok(report)
}
