use crate::abelian::{tensor_basis, AbElement, AbHom, FGAbelian};
use crate::error::{AlgebraError, Result};
use crate::qmap::{QMap, QuadraticMap};

/// Certificate for `f ~ g` (`g = f + α`) or for `f ≈ g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceWitness {
    Alpha(AbHom),
    SameParts,
}

/// `x ⊗ y` in the compacted tensor square of `a`.
pub fn tensor_element(a: &FGAbelian, x: &AbElement, y: &AbElement) -> Result<AbElement> {
    let (t, slots) = tensor_basis(a, a);
    let r = a.rank();
    let mut c = vec![0i64; t.rank()];
    for i in 0..r {
        for j in 0..r {
            if let Some(s) = slots[i * r + j] {
                c[s] = crate::error::add(c[s], crate::error::mul(x.0[i], y.0[j])?)?;
            }
        }
    }
    t.normalize(&c)
}

/// The quadratic map `x -> α(x ⊗ x)`.
pub fn rho(a: &FGAbelian, alpha: &AbHom) -> Result<QuadraticMap> {
    let r = a.rank();
    let b = alpha.target();
    let ev = |i: usize, j: usize| alpha.apply(&tensor_element(a, &a.generator(i), &a.generator(j))?);
    let mut gamma = Vec::with_capacity(r);
    let mut delta = vec![vec![b.zero(); r]; r];
    for i in 0..r {
        gamma.push(ev(i, i)?);
        for j in 0..r {
            delta[i][j] = b.add(&ev(i, j)?, &ev(j, i)?)?;
        }
    }
    QuadraticMap::new(a, b, gamma, delta)
}

/// `f + α`, i.e. `x -> f(x) + α(x̂ ⊗ x̂)`.
pub fn qmap_add_alpha(f: &QMap, alpha: &AbHom) -> Result<QMap> {
    f.add_quadratic(&rho(f.source().ab(), alpha)?)
}

/// Decides `f ~ g`. With `h = -f + g`, this holds iff `h` kills `[G,G]`, is
/// valued in `[H,H]`, and its quadratic data satisfy `d_i γ_i = 0` and
/// `δ_ii = 2 γ_i`; then `α(e_i⊗e_i) = γ_i`, `α(e_i⊗e_j) = δ_ij` for `i < j`.
pub fn qmap_sim_equiv(f: &QMap, g: &QMap) -> Result<Option<AbHom>> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(AlgebraError::MismatchedEndpoints("q-maps compared under ~".into()));
    }
    if f.fab() != g.fab() || f.fcomm() != g.fcomm() {
        return Ok(None);
    }
    let h = f.neg()?.add(g)?;
    let src = f.source().ab();
    let hb = f.target().comm();
    let d = src.orders();
    let r = src.rank();
    for i in 0..r {
        let gi = &h.gamma()[i];
        if d[i] > 0 && !hb.is_zero(&hb.scale(d[i], gi)?) {
            return Ok(None);
        }
        if h.delta()[i][i] != hb.scale(2, gi)? {
            return Ok(None);
        }
    }
    let (t, slots) = tensor_basis(src, src);
    let mut cols = vec![hb.zero(); t.rank()];
    for i in 0..r {
        for j in i..r {
            if let Some(s) = slots[i * r + j] {
                cols[s] = if i == j { h.gamma()[i].clone() } else { h.delta()[i][j].clone() };
            }
        }
    }
    let alpha = AbHom::new(t, hb.clone(), cols)
        .map_err(|e| AlgebraError::InternalInvariant(format!("α is not a homomorphism: {e}")))?;
    if f.source().is_finite() && !qmap_add_alpha(f, &alpha)?.agrees_with(g)? {
        return Err(AlgebraError::InternalInvariant("α fails pointwise".into()));
    }
    Ok(Some(alpha))
}

/// `f ≈ g`: equal maps on abelianizations and on commutator subgroups.
pub fn qmap_approx_equiv(f: &QMap, g: &QMap) -> Result<bool> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(AlgebraError::MismatchedEndpoints("q-maps compared under ≈".into()));
    }
    Ok(f.fab() == g.fab() && f.fcomm() == g.fcomm())
}
