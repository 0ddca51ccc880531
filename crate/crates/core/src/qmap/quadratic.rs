use crate::abelian::{AbElement, AbHom, FGAbelian};
use crate::error::{self, AlgebraError, Result};
use crate::nil2::lin_comb;

/// Quadratic map between abelian groups: `f(e_i) = gamma_i`, symmetric
/// cross-effect `(e_i | e_j) = delta[i][j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticMap {
    source: FGAbelian,
    target: FGAbelian,
    gamma: Vec<AbElement>,
    delta: Vec<Vec<AbElement>>,
}

impl QuadraticMap {
    pub fn new(
        source: &FGAbelian,
        target: &FGAbelian,
        gamma: Vec<AbElement>,
        delta: Vec<Vec<AbElement>>,
    ) -> Result<QuadraticMap> {
        let r = source.rank();
        if gamma.len() != r || delta.len() != r || delta.iter().any(|row| row.len() != r) {
            return Err(AlgebraError::InvalidArgument("quadratic map data has the wrong shape".into()));
        }
        let gamma = gamma
            .iter()
            .map(|v| target.normalize(&v.0))
            .collect::<Result<Vec<_>>>()?;
        let delta = delta
            .iter()
            .map(|row| row.iter().map(|v| target.normalize(&v.0)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        let d = source.orders();
        for i in 0..r {
            for j in 0..r {
                if delta[i][j] != delta[j][i] {
                    return Err(AlgebraError::NotAQMap(format!(
                        "cross-effect not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                for o in [d[i], d[j]] {
                    if o > 0 && !target.is_zero(&target.scale(o, &delta[i][j])?) {
                        return Err(AlgebraError::NotAQMap(format!(
                            "delta[{}][{}] is not killed by {o}",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
            if d[i] > 0 {
                let v = lin_comb(target, [(d[i], &gamma[i]), (error::binom2(d[i])?, &delta[i][i])])?;
                if !target.is_zero(&v) {
                    return Err(AlgebraError::NotAQMap(format!("order relation at generator {}", i + 1)));
                }
            }
        }
        Ok(QuadraticMap {
            source: source.clone(),
            target: target.clone(),
            gamma,
            delta,
        })
    }

    pub fn zero(source: &FGAbelian, target: &FGAbelian) -> QuadraticMap {
        let r = source.rank();
        QuadraticMap {
            source: source.clone(),
            target: target.clone(),
            gamma: vec![target.zero(); r],
            delta: vec![vec![target.zero(); r]; r],
        }
    }

    /// A homomorphism viewed as a quadratic map.
    pub fn from_hom(h: &AbHom) -> QuadraticMap {
        let r = h.source().rank();
        let t = h.target();
        QuadraticMap {
            source: h.source().clone(),
            target: t.clone(),
            gamma: h.columns().to_vec(),
            delta: vec![vec![t.zero(); r]; r],
        }
    }

    pub fn source(&self) -> &FGAbelian {
        &self.source
    }

    pub fn target(&self) -> &FGAbelian {
        &self.target
    }

    pub fn gamma(&self) -> &[AbElement] {
        &self.gamma
    }

    pub fn delta(&self) -> &[Vec<AbElement>] {
        &self.delta
    }

    pub fn eval(&self, x: &AbElement) -> Result<AbElement> {
        let r = self.source.rank();
        let mut coeffs = Vec::new();
        for i in 0..r {
            coeffs.push((x.0[i], &self.gamma[i]));
            coeffs.push((error::binom2(x.0[i])?, &self.delta[i][i]));
            for j in i + 1..r {
                coeffs.push((error::mul(x.0[i], x.0[j])?, &self.delta[i][j]));
            }
        }
        lin_comb(&self.target, coeffs)
    }

    /// `(x | y) = sum x_i y_j delta_ij`.
    pub fn cross(&self, x: &AbElement, y: &AbElement) -> Result<AbElement> {
        let mut coeffs = Vec::new();
        for (i, &a) in x.0.iter().enumerate() {
            for (j, &b) in y.0.iter().enumerate() {
                coeffs.push((error::mul(a, b)?, &self.delta[i][j]));
            }
        }
        lin_comb(&self.target, coeffs)
    }

    fn same(&self, o: &QuadraticMap) -> Result<()> {
        if self.source != o.source || self.target != o.target {
            return Err(AlgebraError::MismatchedEndpoints("quadratic maps".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &QuadraticMap) -> Result<QuadraticMap> {
        self.same(o)?;
        let t = &self.target;
        let gamma = self
            .gamma
            .iter()
            .zip(&o.gamma)
            .map(|(a, b)| t.add(a, b))
            .collect::<Result<Vec<_>>>()?;
        let delta = self
            .delta
            .iter()
            .zip(&o.delta)
            .map(|(r1, r2)| r1.iter().zip(r2).map(|(a, b)| t.add(a, b)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Ok(QuadraticMap {
            source: self.source.clone(),
            target: t.clone(),
            gamma,
            delta,
        })
    }

    pub fn neg(&self) -> Result<QuadraticMap> {
        let t = &self.target;
        Ok(QuadraticMap {
            source: self.source.clone(),
            target: t.clone(),
            gamma: self.gamma.iter().map(|a| t.neg(a)).collect::<Result<_>>()?,
            delta: self
                .delta
                .iter()
                .map(|row| row.iter().map(|a| t.neg(a)).collect())
                .collect::<Result<_>>()?,
        })
    }

    /// `h ∘ self`.
    pub fn postcompose(&self, h: &AbHom) -> Result<QuadraticMap> {
        if h.source() != &self.target {
            return Err(AlgebraError::MismatchedEndpoints("postcompose".into()));
        }
        Ok(QuadraticMap {
            source: self.source.clone(),
            target: h.target().clone(),
            gamma: self.gamma.iter().map(|a| h.apply(a)).collect::<Result<_>>()?,
            delta: self
                .delta
                .iter()
                .map(|row| row.iter().map(|a| h.apply(a)).collect())
                .collect::<Result<_>>()?,
        })
    }

    /// `self ∘ h`.
    pub fn precompose(&self, h: &AbHom) -> Result<QuadraticMap> {
        if h.target() != &self.source {
            return Err(AlgebraError::MismatchedEndpoints("precompose".into()));
        }
        let cols = h.columns();
        let gamma = cols.iter().map(|c| self.eval(c)).collect::<Result<_>>()?;
        let delta = cols
            .iter()
            .map(|x| cols.iter().map(|y| self.cross(x, y)).collect())
            .collect::<Result<_>>()?;
        Ok(QuadraticMap {
            source: h.source().clone(),
            target: self.target.clone(),
            gamma,
            delta,
        })
    }
}

/// All quadratic maps into a finite abelian group, in a fixed order.
pub fn qu_enumerate(a: &FGAbelian, b: &FGAbelian) -> Result<Vec<QuadraticMap>> {
    if !b.is_finite() {
        return Err(AlgebraError::UnsupportedEnumeration(format!("group {b} is infinite")));
    }
    let r = a.rank();
    let bs = b.elements()?;
    let d = a.orders();
    let killed = |o: i64, v: &AbElement| -> Result<bool> { Ok(o == 0 || b.is_zero(&b.scale(o, v)?)) };
    // per generator: admissible (gamma_i, delta_ii); per pair: delta_ij
    let mut diag: Vec<Vec<(usize, usize)>> = Vec::new();
    for i in 0..r {
        let mut v = Vec::new();
        for (gi, g) in bs.iter().enumerate() {
            for (di, dv) in bs.iter().enumerate() {
                if !killed(d[i], dv)? {
                    continue;
                }
                let ok = d[i] == 0
                    || b.is_zero(&lin_comb(b, [(d[i], g), (error::binom2(d[i])?, dv)])?);
                if ok {
                    v.push((gi, di));
                }
            }
        }
        diag.push(v);
    }
    let mut off: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let mut v = Vec::new();
            for (k, dv) in bs.iter().enumerate() {
                if killed(d[i], dv)? && killed(d[j], dv)? {
                    v.push(k);
                }
            }
            off.push((i, j, v));
        }
    }
    let radices: Vec<usize> = diag.iter().map(Vec::len).chain(off.iter().map(|o| o.2.len())).collect();
    let mut out = Vec::new();
    if radices.contains(&0) {
        return Ok(out);
    }
    let mut idx = vec![0usize; radices.len()];
    loop {
        let mut gamma = vec![b.zero(); r];
        let mut delta = vec![vec![b.zero(); r]; r];
        for i in 0..r {
            let (g, dd) = diag[i][idx[i]];
            gamma[i] = bs[g].clone();
            delta[i][i] = bs[dd].clone();
        }
        for (k, (i, j, v)) in off.iter().enumerate() {
            let e = bs[v[idx[r + k]]].clone();
            delta[*i][*j] = e.clone();
            delta[*j][*i] = e;
        }
        out.push(QuadraticMap {
            source: a.clone(),
            target: b.clone(),
            gamma,
            delta,
        });
        // odometer, last digit fastest
        let mut p = radices.len();
        loop {
            if p == 0 {
                return Ok(out);
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
