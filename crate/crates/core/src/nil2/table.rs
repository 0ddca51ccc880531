use super::Nil2Group;
use crate::error::{AlgebraError, Result};

/// Finite group by operation table; the group is written additively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    op: Vec<u32>,
    neg: Vec<u32>,
    zero: usize,
}

impl CayleyTable {
    /// Validates closure, identity, inverses and associativity.
    pub fn new(rows: Vec<Vec<usize>>, zero: usize) -> Result<CayleyTable> {
        let n = rows.len();
        if n == 0 || zero >= n {
            return Err(AlgebraError::NotAGroup("empty table or bad identity".into()));
        }
        let mut op = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::NotAGroup(format!("row {i} is not total")));
            }
            for &c in row {
                if c >= n {
                    return Err(AlgebraError::NotAGroup(format!("entry {c} out of range")));
                }
                op.push(c as u32);
            }
        }
        let t = CayleyTable {
            n,
            op,
            neg: vec![0; n],
            zero,
        };
        for x in 0..n {
            if t.add(zero, x) != x || t.add(x, zero) != x {
                return Err(AlgebraError::NotAGroup(format!("element {x} breaks the identity law")));
            }
        }
        let mut neg = vec![0u32; n];
        for x in 0..n {
            let y = (0..n).find(|&y| t.add(x, y) == zero && t.add(y, x) == zero);
            match y {
                Some(y) => neg[x] = y as u32,
                None => return Err(AlgebraError::NotAGroup(format!("element {x} has no inverse"))),
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = t.add(x, y);
                for z in 0..n {
                    if t.add(xy, z) != t.add(x, t.add(y, z)) {
                        return Err(AlgebraError::NotAGroup(format!(
                            "associativity fails at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(CayleyTable { neg, ..t })
    }

    pub(crate) fn from_group(g: &Nil2Group) -> Result<CayleyTable> {
        let els = g.elements()?;
        let n = els.len();
        let mut op = Vec::with_capacity(n * n);
        for x in &els {
            for y in &els {
                op.push(g.index_of(&g.add(x, y)?) as u32);
            }
        }
        let neg = els
            .iter()
            .map(|x| Ok(g.index_of(&g.neg(x)?) as u32))
            .collect::<Result<Vec<_>>>()?;
        Ok(CayleyTable {
            n,
            op,
            neg,
            zero: g.index_of(&g.zero()),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.op[x * self.n + y] as usize
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x] as usize
    }

    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    /// `-x - y + x + y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let l = self.add(self.neg(x), self.neg(y));
        self.add(l, self.add(x, y))
    }

    pub fn scale(&self, n: i64, x: usize) -> usize {
        let step = if n < 0 { self.neg(x) } else { x };
        let mut acc = self.zero;
        for _ in 0..n.unsigned_abs() {
            acc = self.add(acc, step);
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.zero {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.add(x, y) == self.add(y, x)))
    }

    pub fn is_central(&self, z: usize) -> bool {
        (0..self.n).all(|y| self.add(z, y) == self.add(y, z))
    }

    /// All commutators are central.
    pub fn is_class_two(&self) -> bool {
        let mut seen = vec![false; self.n];
        for x in 0..self.n {
            for y in 0..self.n {
                let c = self.commutator(x, y);
                if !seen[c] {
                    seen[c] = true;
                    if !self.is_central(c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        inside[self.zero] = true;
        let mut list = vec![self.zero];
        let mut k = 0;
        while k < list.len() {
            let x = list[k];
            k += 1;
            for &g in gens {
                let y = self.add(x, g);
                if !inside[y] {
                    inside[y] = true;
                    list.push(y);
                }
            }
        }
        list.sort_unstable();
        list
    }

    /// Whether `map` is a homomorphism into `target`.
    pub fn is_hom(&self, target: &CayleyTable, map: &[usize]) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| map[self.add(x, y)] == target.add(map[x], map[y])))
    }
}
