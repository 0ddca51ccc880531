use std::fmt;

use super::{AbElement, FGAbelian};
use crate::error::{self, AlgebraError, Result};

/// Homomorphism given by the images of the source generators.
///
/// Stored column-wise: `columns[j]` is the (canonical) image of generator `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbHom {
    source: FGAbelian,
    target: FGAbelian,
    columns: Vec<AbElement>,
}

impl AbHom {
    /// Validates torsion compatibility: `d_j * column_j = 0` for finite `d_j`.
    pub fn new(source: FGAbelian, target: FGAbelian, columns: Vec<AbElement>) -> Result<Self> {
        if columns.len() != source.rank() {
            return Err(AlgebraError::InvalidHomomorphism(format!(
                "{} columns for a source of rank {}",
                columns.len(),
                source.rank()
            )));
        }
        let mut canon = Vec::with_capacity(columns.len());
        for (j, c) in columns.iter().enumerate() {
            let c = target.normalize(&c.0).map_err(|_| {
                AlgebraError::InvalidHomomorphism(format!(
                    "column {} has the wrong length for target {target}",
                    j + 1
                ))
            })?;
            let d = source.orders()[j];
            if d > 0 && !target.is_zero(&target.scale(d, &c)?) {
                return Err(AlgebraError::InvalidHomomorphism(format!(
                    "generator {} has order {d} but its image {c} is not killed by {d}",
                    j + 1
                )));
            }
            canon.push(c);
        }
        Ok(AbHom {
            source,
            target,
            columns: canon,
        })
    }

    /// Builds from an `r_target x r_source` matrix.
    pub fn from_matrix(source: FGAbelian, target: FGAbelian, matrix: &[Vec<i64>]) -> Result<Self> {
        if matrix.len() != target.rank() {
            return Err(AlgebraError::InvalidHomomorphism(format!(
                "matrix has {} rows, target rank is {}",
                matrix.len(),
                target.rank()
            )));
        }
        if matrix.iter().any(|r| r.len() != source.rank()) {
            return Err(AlgebraError::InvalidHomomorphism(format!(
                "matrix rows must have length {}",
                source.rank()
            )));
        }
        let columns = (0..source.rank())
            .map(|j| AbElement(matrix.iter().map(|row| row[j]).collect()))
            .collect();
        Self::new(source, target, columns)
    }

    pub(crate) fn from_columns_unchecked(
        source: FGAbelian,
        target: FGAbelian,
        columns: Vec<AbElement>,
    ) -> Self {
        AbHom {
            source,
            target,
            columns,
        }
    }

    pub fn identity(a: &FGAbelian) -> Self {
        let columns = (0..a.rank()).map(|i| a.generator(i)).collect();
        AbHom::from_columns_unchecked(a.clone(), a.clone(), columns)
    }

    pub fn zero(source: &FGAbelian, target: &FGAbelian) -> Self {
        let columns = vec![target.zero(); source.rank()];
        AbHom::from_columns_unchecked(source.clone(), target.clone(), columns)
    }

    pub fn source(&self) -> &FGAbelian {
        &self.source
    }

    pub fn target(&self) -> &FGAbelian {
        &self.target
    }

    pub fn columns(&self) -> &[AbElement] {
        &self.columns
    }

    /// Row-major matrix view (`r_target x r_source`).
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..self.target.rank())
            .map(|k| self.columns.iter().map(|c| c.0[k]).collect())
            .collect()
    }

    pub fn apply(&self, x: &AbElement) -> Result<AbElement> {
        if !self.source.contains(x) {
            return Err(AlgebraError::InvalidArgument(format!(
                "{x} is not a canonical element of {}",
                self.source
            )));
        }
        let mut acc = vec![0i64; self.target.rank()];
        for (c, &xj) in self.columns.iter().zip(&x.0) {
            if xj == 0 {
                continue;
            }
            for (a, &cj) in acc.iter_mut().zip(&c.0) {
                *a = error::add(*a, error::mul(xj, cj)?)?;
            }
            // keep intermediates reduced
            acc = self.target.normalize(&acc)?.0;
        }
        self.target.normalize(&acc)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AbHom) -> Result<AbHom> {
        if inner.target != self.source {
            return Err(AlgebraError::MismatchedEndpoints(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, inner.source, inner.target
            )));
        }
        let columns = inner
            .columns
            .iter()
            .map(|c| self.apply(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(AbHom::from_columns_unchecked(
            inner.source.clone(),
            self.target.clone(),
            columns,
        ))
    }

    pub fn add(&self, other: &AbHom) -> Result<AbHom> {
        if self.source != other.source || self.target != other.target {
            return Err(AlgebraError::MismatchedEndpoints("hom sum".into()));
        }
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| self.target.add(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(AbHom::from_columns_unchecked(
            self.source.clone(),
            self.target.clone(),
            columns,
        ))
    }

    pub fn scale(&self, n: i64) -> Result<AbHom> {
        let columns = self
            .columns
            .iter()
            .map(|c| self.target.scale(n, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(AbHom::from_columns_unchecked(
            self.source.clone(),
            self.target.clone(),
            columns,
        ))
    }

    pub fn neg(&self) -> Result<AbHom> {
        self.scale(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| self.target.is_zero(c))
    }

    /// Bijectivity for finite source and target, by exhaustive image count.
    pub fn is_bijective_finite(&self) -> Result<bool> {
        let (Some(n), Some(m)) = (self.source.order(), self.target.order()) else {
            return Err(AlgebraError::Unsupported(
                "bijectivity test needs finite groups".into(),
            ));
        };
        if n != m {
            return Ok(false);
        }
        let mut seen = vec![false; n as usize];
        for x in self.source.elements()? {
            let y = self.apply(&x)?;
            let k = self.target.index_of(&y);
            if seen[k] {
                return Ok(false);
            }
            seen[k] = true;
        }
        Ok(true)
    }
}

impl fmt::Display for AbHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.matrix().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::super::ab_make;
    use super::*;

    #[test]
    fn identity_and_reduction() {
        let z6 = ab_make(&[6]).unwrap();
        let id = AbHom::identity(&z6);
        assert_eq!(id.apply(&AbElement(vec![5])).unwrap(), AbElement(vec![5]));
        let z = ab_make(&[0]).unwrap();
        let z2 = ab_make(&[2]).unwrap();
        let red = AbHom::from_matrix(z, z2, &[vec![1]]).unwrap();
        assert_eq!(red.apply(&AbElement(vec![7])).unwrap(), AbElement(vec![1]));
    }

    #[test]
    fn torsion_obstruction() {
        let z2 = ab_make(&[2]).unwrap();
        let z3 = ab_make(&[3]).unwrap();
        assert!(matches!(
            AbHom::from_matrix(z2, z3, &[vec![1]]),
            Err(AlgebraError::InvalidHomomorphism(_))
        ));
    }

    #[test]
    fn composition_is_associative() {
        let a = ab_make(&[4, 2]).unwrap();
        let homs = super::super::ab_enumerate_homs(&a, &a).unwrap();
        for f in homs.iter().step_by(7) {
            for g in homs.iter().step_by(5) {
                for h in homs.iter().step_by(11) {
                    let l = f.compose(&g.compose(h).unwrap()).unwrap();
                    let r = f.compose(g).unwrap().compose(h).unwrap();
                    assert_eq!(l, r);
                }
            }
            assert_eq!(&f.compose(&AbHom::identity(&a)).unwrap(), f);
            assert_eq!(&AbHom::identity(&a).compose(f).unwrap(), f);
        }
    }
}
