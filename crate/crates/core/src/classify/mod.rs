//! Decision procedures: similarity, q-splitness, isomorphism in the category
//! of q-maps, the `~` and `≈` relations on q-maps, and verifiers for the
//! linear-extension structure.

mod equiv;
mod linext;
mod report;

pub use equiv::{qmap_add_alpha, qmap_approx_equiv, qmap_sim_equiv, rho, tensor_element, EquivalenceWitness};
pub use linext::{linear_extension_verify, weak_coproduct_verify, Level};
pub use report::{Record, Report};

use std::fmt;

use crate::abelian::{ab_iso, AbHom};
use crate::error::{AlgebraError, Result};
use crate::maltsev::{bolo_decide, is_odd_order};
use crate::nil2::Nil2Group;
use crate::qmap::{QMap, QMapSpace};

/// Isomorphic abelianizations and isomorphic commutator subgroups.
pub fn similar(g: &Nil2Group, h: &Nil2Group) -> Result<bool> {
    Ok(ab_iso(g.ab(), h.ab())?.is_some() && ab_iso(g.comm(), h.comm())?.is_some())
}

/// Outcome of [`is_qsplit`]; the witness is a q-map section `G_ab -> G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Split(QMap),
    /// Infinite group whose cocycle is bilinear; the section is `x -> (x, 0)`.
    StructuralSplit(QMap),
    NotSplit,
}

impl Verdict {
    pub fn is_split(&self) -> bool {
        !matches!(self, Verdict::NotSplit)
    }

    pub fn witness(&self) -> Option<&QMap> {
        match self {
            Verdict::Split(s) | Verdict::StructuralSplit(s) => Some(s),
            Verdict::NotSplit => None,
        }
    }
}

/// Searches for a q-map `s: G_ab -> G` with `s_ab = id`. For finite `G` the
/// lexicographically first section is returned.
pub fn is_qsplit(g: &Nil2Group) -> Result<Verdict> {
    let a = Nil2Group::abelian(g.ab());
    if !g.is_finite() {
        if g.carry().iter().any(|c| !g.comm().is_zero(c)) {
            return Err(AlgebraError::Unsupported(format!(
                "q-splitness of the infinite group {g} with a nonzero carry"
            )));
        }
        let r = g.rank();
        let hb = g.comm();
        let delta = (0..r)
            .map(|i| (0..r).map(|j| hb.neg(&g.bil()[i][j])).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        let s = crate::qmap::qmap_make(
            &a,
            g,
            AbHom::identity(g.ab()),
            AbHom::zero(a.comm(), g.comm()),
            vec![hb.zero(); r],
            delta,
        )?;
        return Ok(Verdict::StructuralSplit(s));
    }
    let space = QMapSpace::with_parts(
        &a,
        g,
        vec![AbHom::identity(g.ab())],
        vec![AbHom::zero(a.comm(), g.comm())],
    )?;
    Ok(match space.find(&mut |_| Ok(true))? {
        Some(s) => Verdict::Split(s),
        None => Verdict::NotSplit,
    })
}

/// An isomorphism in the q-map category together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiqIso {
    pub forward: QMap,
    pub inverse: QMap,
}

fn bijective_values(f: &QMap) -> Result<Option<Vec<usize>>> {
    let vals = f.values()?;
    let n = f.target().order().ok_or_else(|| AlgebraError::Unsupported("infinite target".into()))? as usize;
    if vals.len() != n {
        return Ok(None);
    }
    let mut inv = vec![usize::MAX; n];
    for (k, &v) in vals.iter().enumerate() {
        if inv[v] != usize::MAX {
            return Ok(None);
        }
        inv[v] = k;
    }
    Ok(Some(inv))
}

/// The inverse of a bijective q-map, if that inverse is itself a q-map.
pub fn qmap_inverse(f: &QMap) -> Result<Option<QMap>> {
    let Some(inv) = bijective_values(f)? else {
        return Ok(None);
    };
    let (g, h) = (f.source(), f.target());
    match QMap::from_function(h, g, &|z| Ok(g.element_at(inv[h.index_of(z)]))) {
        Ok(q) => Ok(Some(q)),
        Err(AlgebraError::NotAQMap(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// First invertible q-map `G -> H`, searching q-maps whose abelian and
/// commutator parts are bijective.
pub fn find_niq_iso_witness(g: &Nil2Group, h: &Nil2Group) -> Result<Option<NiqIso>> {
    if g.order().is_none() || h.order().is_none() {
        return Err(AlgebraError::Unsupported("witness search needs finite groups".into()));
    }
    if g.order() != h.order() {
        return Ok(None);
    }
    let space = QMapSpace::bijective_parts(g, h)?;
    let mut inverse = None;
    let hit = space.find(&mut |f| {
        inverse = qmap_inverse(f)?;
        Ok(inverse.is_some())
    })?;
    let Some(forward) = hit else {
        return Ok(None);
    };
    let inverse = inverse.expect("inverse recorded with the hit");
    if !forward.compose(&inverse)?.agrees_with(&QMap::identity(h))?
        || !inverse.compose(&forward)?.agrees_with(&QMap::identity(g))?
    {
        return Err(AlgebraError::InternalInvariant("witness composites are not identities".into()));
    }
    Ok(Some(NiqIso { forward, inverse }))
}

/// Result of scanning every q-map `G -> H` for bijections.
#[derive(Debug, Clone)]
pub struct ExhaustiveSearch {
    pub qmaps: u128,
    pub bijective: usize,
    pub witness: Option<NiqIso>,
}

/// Unpruned scan: all q-maps, filtered by bijectivity, then by whether the
/// inverse is a q-map.
pub fn niq_iso_exhaustive(g: &Nil2Group, h: &Nil2Group) -> Result<ExhaustiveSearch> {
    let space = QMapSpace::all(g, h)?;
    let mut out = ExhaustiveSearch {
        qmaps: 0,
        bijective: 0,
        witness: None,
    };
    let mut err = None;
    let _ = space.visit(&mut |f| {
        out.qmaps += 1;
        let mut step = || -> Result<()> {
            if bijective_values(f)?.is_some() {
                out.bijective += 1;
                if out.witness.is_none() {
                    if let Some(inv) = qmap_inverse(f)? {
                        out.witness = Some(NiqIso {
                            forward: f.clone(),
                            inverse: inv,
                        });
                    }
                }
            }
            Ok(())
        };
        match step() {
            Ok(()) => std::ops::ControlFlow::Continue(()),
            Err(e) => {
                err = Some(e);
                std::ops::ControlFlow::Break(())
            }
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecisionPath {
    /// Orders or abelianness differ.
    Invariants,
    /// Both q-split: isomorphic iff similar.
    QSplit,
    /// Both of odd order: abelian isomorphism of logarithms.
    Bolo,
    Witness,
}

impl fmt::Display for DecisionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecisionPath::Invariants => "invariants",
            DecisionPath::QSplit => "qsplit-similar",
            DecisionPath::Bolo => "lie-logarithm",
            DecisionPath::Witness => "witness-search",
        })
    }
}

#[derive(Debug, Clone)]
pub struct NiqDecision {
    pub isomorphic: bool,
    pub paths: Vec<(DecisionPath, bool)>,
    pub witness: Option<NiqIso>,
}

/// Decides isomorphism in the q-map category, running every applicable path
/// and requiring agreement. Witness search is skipped for groups above
/// `max_order` when another path has already decided.
pub fn niq_iso_decide(g: &Nil2Group, h: &Nil2Group, max_order: Option<u64>) -> Result<NiqDecision> {
    let (Some(n), Some(m)) = (g.order(), h.order()) else {
        return Err(AlgebraError::Unsupported("isomorphism decision needs finite groups".into()));
    };
    let mut paths = Vec::new();
    if n != m || g.is_abelian() != h.is_abelian() {
        paths.push((DecisionPath::Invariants, false));
    }
    let (sg, sh) = (is_qsplit(g)?, is_qsplit(h)?);
    if sg.is_split() && sh.is_split() {
        paths.push((DecisionPath::QSplit, similar(g, h)?));
    }
    if is_odd_order(g) && is_odd_order(h) {
        paths.push((DecisionPath::Bolo, bolo_decide(g, h)?.is_some()));
    }
    let mut witness = None;
    let within = max_order.is_none_or(|k| n <= k);
    if within || paths.is_empty() {
        if !within {
            return Err(AlgebraError::Unsupported(format!(
                "witness search on order {n} exceeds the limit {}",
                max_order.unwrap_or(0)
            )));
        }
        witness = find_niq_iso_witness(g, h)?;
        paths.push((DecisionPath::Witness, witness.is_some()));
    }
    let isomorphic = paths[0].1;
    if paths.iter().any(|p| p.1 != isomorphic) {
        let detail = paths
            .iter()
            .map(|(p, v)| format!("{p}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        return Err(AlgebraError::InternalInvariant(format!("decision paths disagree: {detail}")));
    }
    Ok(NiqDecision {
        isomorphic,
        paths,
        witness,
    })
}
