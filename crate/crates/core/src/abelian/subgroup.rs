use super::smith::{echelon, smith, Echelon, Matrix};
use super::{AbElement, AbHom, FGAbelian};
use crate::error::{AlgebraError, Result};

/// `A / <gens>` in invariant-factor form with the projection and a set
/// theoretic section on generators.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FGAbelian,
    /// `A -> group`.
    pub map: AbHom,
    /// `section_columns[k]` maps to generator `k` of `group`.
    pub section_columns: Vec<AbElement>,
}

fn relation_rows(a: &FGAbelian) -> Matrix {
    let r = a.rank();
    a.orders()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > 0)
        .map(|(i, &d)| {
            let mut row = vec![0; r];
            row[i] = d;
            row
        })
        .collect()
}

pub fn ab_quotient(a: &FGAbelian, gens: &[AbElement]) -> Result<Quotient> {
    let r = a.rank();
    let mut m = relation_rows(a);
    for g in gens {
        if g.0.len() != r {
            return Err(AlgebraError::InvalidArgument(format!(
                "element {g} does not belong to group {a}"
            )));
        }
        m.push(g.0.clone());
    }
    let s = smith(&m, r)?;
    // coordinates x -> x V; keep factors of order != 1
    let kept: Vec<usize> = (0..r).filter(|&k| s.cokernel_order(k) != 1).collect();
    let orders: Vec<i64> = kept.iter().map(|&k| s.cokernel_order(k)).collect();
    let group = FGAbelian { orders };
    let columns = (0..r)
        .map(|j| group.normalize(&kept.iter().map(|&k| s.right[j][k]).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    let map = AbHom::new(a.clone(), group.clone(), columns)?;
    let section_columns = kept
        .iter()
        .map(|&k| a.normalize(&s.right_inv[k]))
        .collect::<Result<Vec<_>>>()?;
    Ok(Quotient {
        group,
        map,
        section_columns,
    })
}

/// Subgroup generated by a list of elements, with its own invariant-factor
/// structure.
#[derive(Debug, Clone)]
pub struct Subgroup {
    pub ambient: FGAbelian,
    pub generators: Vec<AbElement>,
    pub group: FGAbelian,
    /// `group -> ambient`, injective.
    pub inclusion: AbHom,
    // Z^k -> group, coefficients over `generators`
    coeff_map: AbHom,
    lattice: Echelon,
}

/// Rows whose first `split` entries vanish after echelon reduction, restricted
/// to the remaining columns.
fn kernel_rows(m: &Matrix, split: usize, total: usize) -> Result<Vec<AbElement>> {
    let e = echelon(m, total)?;
    let p = e.pivots.iter().filter(|&&(_, c)| c < split).count();
    Ok(e.rows[p..]
        .iter()
        .filter(|row| row[split..].iter().any(|&x| x != 0))
        .map(|row| AbElement(row[split..].to_vec()))
        .collect())
}

pub fn ab_subgroup_generated(a: &FGAbelian, gens: &[AbElement]) -> Result<Subgroup> {
    let r = a.rank();
    let k = gens.len();
    let gens = gens
        .iter()
        .map(|g| a.normalize(&g.0))
        .collect::<Result<Vec<_>>>()?;
    // [g_i | e_i] over [d_j e_j | 0]
    let mut aug: Matrix = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let mut row = g.0.clone();
        row.extend((0..k).map(|j| i64::from(i == j)));
        aug.push(row);
    }
    for rel in relation_rows(a) {
        let mut row = rel;
        row.extend(std::iter::repeat_n(0, k));
        aug.push(row);
    }
    let ker = kernel_rows(&aug, r, r + k)?;
    let free = FGAbelian { orders: vec![0; k] };
    let q = ab_quotient(&free, &ker)?;
    let inclusion_cols = q
        .section_columns
        .iter()
        .map(|c| combine(a, &gens, &c.0))
        .collect::<Result<Vec<_>>>()?;
    let inclusion = AbHom::new(q.group.clone(), a.clone(), inclusion_cols)?;
    let mut lat: Matrix = gens.iter().map(|g| g.0.clone()).collect();
    lat.extend(relation_rows(a));
    let lattice = echelon(&lat, r)?;
    Ok(Subgroup {
        ambient: a.clone(),
        generators: gens,
        group: q.group,
        inclusion,
        coeff_map: q.map,
        lattice,
    })
}

fn combine(a: &FGAbelian, gens: &[AbElement], coeffs: &[i64]) -> Result<AbElement> {
    let mut acc = a.zero();
    for (g, &c) in gens.iter().zip(coeffs) {
        acc = a.add(&acc, &a.scale(c, g)?)?;
    }
    Ok(acc)
}

impl Subgroup {
    pub fn contains(&self, x: &AbElement) -> Result<bool> {
        self.lattice.contains(&x.0)
    }

    /// Preimage of `x` under [`Subgroup::inclusion`], if `x` lies in the subgroup.
    pub fn coordinates(&self, x: &AbElement) -> Result<Option<AbElement>> {
        let (rem, coeffs) = self.lattice.reduce(&x.0)?;
        if rem.iter().any(|&v| v != 0) {
            return Ok(None);
        }
        let k = self.generators.len();
        let c = AbElement(coeffs[..k].to_vec());
        Ok(Some(self.coeff_map.apply(&c)?))
    }

    /// `[ambient : subgroup]`, `None` when infinite.
    pub fn index(&self) -> Result<Option<u64>> {
        Ok(ab_quotient(&self.ambient, &self.generators)?.group.order())
    }

    pub fn elements(&self) -> Result<Vec<AbElement>> {
        self.group
            .elements()?
            .iter()
            .map(|y| self.inclusion.apply(y))
            .collect()
    }
}

/// Kernel of a homomorphism as a subgroup of its source.
pub fn ab_kernel(f: &AbHom) -> Result<Subgroup> {
    let (a, b) = (f.source(), f.target());
    let (r, s) = (a.rank(), b.rank());
    let mut aug: Matrix = Vec::new();
    for (i, c) in f.columns().iter().enumerate() {
        let mut row = c.0.clone();
        row.extend((0..r).map(|j| i64::from(i == j)));
        aug.push(row);
    }
    for rel in relation_rows(b) {
        let mut row = rel;
        row.extend(std::iter::repeat_n(0, r));
        aug.push(row);
    }
    let gens = kernel_rows(&aug, s, s + r)?;
    ab_subgroup_generated(a, &gens)
}

#[cfg(test)]
mod tests {
    use super::super::{ab_enumerate_homs, ab_make};
    use super::*;

    fn el(v: &[i64]) -> AbElement {
        AbElement(v.to_vec())
    }

    #[test]
    fn quotient_of_z4_by_2() {
        let z4 = ab_make(&[4]).unwrap();
        let q = ab_quotient(&z4, &[el(&[2])]).unwrap();
        assert_eq!(q.group.orders(), &[2]);
        assert_eq!(q.map.apply(&el(&[3])).unwrap(), el(&[1]));
    }

    #[test]
    fn quotient_section_is_a_section() {
        let a = ab_make(&[4, 6, 0]).unwrap();
        let q = ab_quotient(&a, &[el(&[2, 3, 0]), el(&[0, 0, 5])]).unwrap();
        for (k, s) in q.section_columns.iter().enumerate() {
            assert_eq!(q.map.apply(s).unwrap(), q.group.generator(k));
        }
        // |A / H| computed by brute force over the finite part
        assert_eq!(q.group.order(), Some(4 * 6 * 5 / 2));
    }

    #[test]
    fn subgroup_brute_force() {
        let a = ab_make(&[4, 6]).unwrap();
        let gens = [el(&[2, 3]), el(&[0, 2])];
        let h = ab_subgroup_generated(&a, &gens).unwrap();
        // closure oracle
        let mut span = vec![a.zero()];
        loop {
            let mut grown = span.clone();
            for x in &span {
                for g in &gens {
                    let y = a.add(x, g).unwrap();
                    if !grown.contains(&y) {
                        grown.push(y);
                    }
                }
            }
            if grown.len() == span.len() {
                break;
            }
            span = grown;
        }
        assert_eq!(h.group.order(), Some(span.len() as u64));
        let mut els = h.elements().unwrap();
        els.sort();
        span.sort();
        assert_eq!(els, span);
        for x in a.elements().unwrap() {
            assert_eq!(h.contains(&x).unwrap(), span.contains(&x));
            if let Some(y) = h.coordinates(&x).unwrap() {
                assert_eq!(h.inclusion.apply(&y).unwrap(), x);
            }
        }
        assert_eq!(h.index().unwrap(), Some(24 / span.len() as u64));
    }

    #[test]
    fn kernels_match_brute_force() {
        let a = ab_make(&[2, 4]).unwrap();
        let b = ab_make(&[4]).unwrap();
        for f in ab_enumerate_homs(&a, &b).unwrap() {
            let k = ab_kernel(&f).unwrap();
            let brute: Vec<_> = a
                .elements()
                .unwrap()
                .into_iter()
                .filter(|x| b.is_zero(&f.apply(x).unwrap()))
                .collect();
            assert_eq!(k.group.order(), Some(brute.len() as u64));
            for x in &brute {
                assert!(k.contains(x).unwrap());
            }
        }
    }

    #[test]
    fn kernel_of_infinite_map() {
        let z2 = ab_make(&[0, 0]).unwrap();
        let z = ab_make(&[0]).unwrap();
        let f = AbHom::from_matrix(z2.clone(), z, &[vec![2, 3]]).unwrap();
        let k = ab_kernel(&f).unwrap();
        assert_eq!(k.group.orders(), &[0]);
        assert!(k.contains(&el(&[3, -2])).unwrap());
        assert!(!k.contains(&el(&[1, 0])).unwrap());
    }
}
