//! Integer matrix reductions: Smith normal form with both transforms, and a
//! row echelon (Hermite-style) form used for lattice membership and kernels.
//!
//! Every entry operation is checked; intermediate growth past `i64` surfaces as
//! [`AlgebraError::Overflow`].

use crate::error::{self, AlgebraError, Result};

pub type Matrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, inner: usize, cols: usize) -> Result<Matrix> {
    let mut out = vec![vec![0i64; cols]; a.len()];
    for (i, row) in a.iter().enumerate() {
        for k in 0..inner {
            let aik = row[k];
            if aik == 0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] = error::add(out[i][j], error::mul(aik, b[k][j])?)?;
            }
        }
    }
    Ok(out)
}

/// `left * m * right = diag`, with `right_inv = right^{-1}`.
#[derive(Debug, Clone)]
pub struct Smith {
    /// Diagonal entries, nonnegative, each dividing the next (zeros last).
    pub diag: Vec<i64>,
    pub left: Matrix,
    pub right: Matrix,
    pub right_inv: Matrix,
    pub rows: usize,
    pub cols: usize,
}

impl Smith {
    /// Order of the `k`-th cyclic factor of the cokernel `Z^cols / rowspace`.
    pub fn cokernel_order(&self, k: usize) -> i64 {
        self.diag.get(k).copied().unwrap_or(0)
    }
}

fn row_add(m: &mut Matrix, target: usize, source: usize, c: i64) -> Result<()> {
    if c == 0 {
        return Ok(());
    }
    let cols = m[target].len();
    for j in 0..cols {
        let v = error::mul(c, m[source][j])?;
        m[target][j] = error::add(m[target][j], v)?;
    }
    Ok(())
}

fn col_add(m: &mut Matrix, target: usize, source: usize, c: i64) -> Result<()> {
    if c == 0 {
        return Ok(());
    }
    for row in m.iter_mut() {
        let v = error::mul(c, row[source])?;
        row[target] = error::add(row[target], v)?;
    }
    Ok(())
}

fn col_swap(m: &mut Matrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

struct Reducer {
    a: Matrix,
    u: Matrix,
    v: Matrix,
    v_inv: Matrix,
}

impl Reducer {
    fn row_add(&mut self, t: usize, s: usize, c: i64) -> Result<()> {
        row_add(&mut self.a, t, s, c)?;
        row_add(&mut self.u, t, s, c)
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    // column `t` += c * column `s`
    fn col_add(&mut self, t: usize, s: usize, c: i64) -> Result<()> {
        col_add(&mut self.a, t, s, c)?;
        col_add(&mut self.v, t, s, c)?;
        // inverse: row s -= c * row t
        row_add(&mut self.v_inv, s, t, error::mul(-1, c)?)
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        col_swap(&mut self.a, i, j);
        col_swap(&mut self.v, i, j);
        self.v_inv.swap(i, j);
    }

    fn negate_row(&mut self, i: usize) -> Result<()> {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = x.checked_neg().ok_or(AlgebraError::Overflow)?;
        }
        Ok(())
    }
}

/// Smith normal form of an `rows x cols` integer matrix.
pub fn smith(m: &Matrix, cols: usize) -> Result<Smith> {
    let rows = m.len();
    if m.iter().any(|r| r.len() != cols) {
        return Err(AlgebraError::InvalidArgument("ragged relation matrix".into()));
    }
    let mut r = Reducer {
        a: m.clone(),
        u: identity(rows),
        v: identity(cols),
        v_inv: identity(cols),
    };
    let n = rows.min(cols);
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = r.a[i][j];
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < r.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        r.row_swap(t, pi);
        r.col_swap(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if r.a[i][t] != 0 {
                    let q = r.a[i][t].div_euclid(r.a[t][t]);
                    r.row_add(i, t, error::mul(-1, q)?)?;
                    if r.a[i][t] != 0 {
                        dirty = true;
                        if r.a[i][t].abs() < r.a[t][t].abs() {
                            r.row_swap(t, i);
                        }
                    }
                }
            }
            for j in t + 1..cols {
                if r.a[t][j] != 0 {
                    let q = r.a[t][j].div_euclid(r.a[t][t]);
                    r.col_add(j, t, error::mul(-1, q)?)?;
                    if r.a[t][j] != 0 {
                        dirty = true;
                        if r.a[t][j].abs() < r.a[t][t].abs() {
                            r.col_swap(t, j);
                        }
                    }
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let p = r.a[t][t];
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| r.a[i][j] % p != 0));
            match offender {
                Some(i) => r.row_add(t, i, 1)?,
                None => break,
            }
        }
        if r.a[t][t] < 0 {
            r.negate_row(t)?;
        }
        diag.push(r.a[t][t]);
    }
    Ok(Smith {
        diag,
        left: r.u,
        right: r.v,
        right_inv: r.v_inv,
        rows,
        cols,
    })
}

/// Row echelon form `h = u * m` with positive pivots; zero rows at the bottom.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Matrix,
    pub transform: Matrix,
    /// `(row, column)` of each pivot, in order.
    pub pivots: Vec<(usize, usize)>,
}

pub fn echelon(m: &Matrix, cols: usize) -> Result<Echelon> {
    let nrows = m.len();
    let mut a = m.clone();
    let mut u = identity(nrows);
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..cols {
        if top >= nrows {
            break;
        }
        loop {
            // smallest nonzero in column c at or below `top`
            let best = (top..nrows)
                .filter(|&i| a[i][c] != 0)
                .min_by_key(|&i| a[i][c].abs());
            let Some(b) = best else { break };
            a.swap(top, b);
            u.swap(top, b);
            let mut clean = true;
            for i in top + 1..nrows {
                if a[i][c] != 0 {
                    let q = a[i][c].div_euclid(a[top][c]);
                    let nq = error::mul(-1, q)?;
                    row_add(&mut a, i, top, nq)?;
                    row_add(&mut u, i, top, nq)?;
                    if a[i][c] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if a[top][c] == 0 {
            continue;
        }
        if a[top][c] < 0 {
            for x in a[top].iter_mut().chain(u[top].iter_mut()) {
                *x = x.checked_neg().ok_or(AlgebraError::Overflow)?;
            }
        }
        // reduce entries above the pivot into [0, pivot)
        for i in 0..top {
            let q = a[i][c].div_euclid(a[top][c]);
            let nq = error::mul(-1, q)?;
            row_add(&mut a, i, top, nq)?;
            row_add(&mut u, i, top, nq)?;
        }
        pivots.push((top, c));
        top += 1;
    }
    Ok(Echelon {
        rows: a,
        transform: u,
        pivots,
    })
}

impl Echelon {
    /// Reduces `v` against the row lattice; returns the remainder and the
    /// coefficients (over the original rows) that were subtracted.
    pub fn reduce(&self, v: &[i64]) -> Result<(Vec<i64>, Vec<i64>)> {
        let mut rem = v.to_vec();
        let mut coeffs = vec![0i64; self.transform.first().map_or(0, |r| r.len())];
        for &(r, c) in &self.pivots {
            let p = self.rows[r][c];
            let q = rem[c].div_euclid(p);
            if q == 0 {
                continue;
            }
            for (x, y) in rem.iter_mut().zip(&self.rows[r]) {
                *x = error::sub(*x, error::mul(q, *y)?)?;
            }
            for (x, y) in coeffs.iter_mut().zip(&self.transform[r]) {
                *x = error::add(*x, error::mul(q, *y)?)?;
            }
        }
        Ok((rem, coeffs))
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        Ok(self.reduce(v)?.0.iter().all(|&x| x == 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(m: &Matrix, cols: usize) -> Smith {
        let s = smith(m, cols).unwrap();
        let um = mat_mul(&s.left, m, m.len(), cols).unwrap();
        let umv = mat_mul(&um, &s.right, cols, cols).unwrap();
        for (i, row) in umv.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let expect = if i == j { s.cokernel_order(i) } else { 0 };
                assert_eq!(x, expect, "U M V not diagonal at ({i},{j})");
            }
        }
        let vv = mat_mul(&s.right, &s.right_inv, cols, cols).unwrap();
        assert_eq!(vv, identity(cols));
        for w in s.diag.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0], 0);
            }
        }
        s
    }

    #[test]
    fn diagonal_relations() {
        let s = check_smith(&vec![vec![2, 0], vec![0, 2]], 2);
        assert_eq!(s.diag, vec![2, 2]);
    }

    #[test]
    fn non_chain_input_is_reordered() {
        let s = check_smith(&vec![vec![4, 0], vec![0, 6]], 2);
        assert_eq!(s.diag, vec![2, 12]);
    }

    #[test]
    fn triangular_relations_give_cyclic() {
        let s = check_smith(&vec![vec![2, 1], vec![0, 2]], 2);
        assert_eq!(s.diag, vec![1, 4]);
    }

    #[test]
    fn rank_deficient() {
        let s = check_smith(&vec![vec![2, 4, 6], vec![1, 2, 3]], 3);
        assert_eq!(s.diag, vec![1]);
    }

    #[test]
    fn echelon_membership() {
        let e = echelon(&vec![vec![2, 0], vec![0, 3]], 2).unwrap();
        assert!(e.contains(&[4, -3]).unwrap());
        assert!(!e.contains(&[1, 0]).unwrap());
        let (rem, coeffs) = e.reduce(&[4, 6]).unwrap();
        assert_eq!(rem, vec![0, 0]);
        assert_eq!(coeffs, vec![2, 2]);
    }
}
