use super::{nil2_make, CayleyTable, Nil2Group};
use crate::abelian::{ab_quotient, AbElement, FGAbelian};
use crate::error::{AlgebraError, Result};

/// A concrete finite group: labels plus an operation table.
#[derive(Debug, Clone)]
pub struct GroupOracle {
    pub labels: Vec<String>,
    pub table: CayleyTable,
}

impl GroupOracle {
    /// `rows[a][b]` is the index of `a * b`.
    pub fn new(labels: Vec<String>, rows: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        if labels.len() != rows.len() {
            return Err(AlgebraError::NotAGroup(format!(
                "{} labels for a table of size {}",
                labels.len(),
                rows.len()
            )));
        }
        let table = CayleyTable::new(rows, identity)?;
        Ok(GroupOracle { labels, table })
    }

    pub fn from_table(table: CayleyTable) -> Self {
        let labels = (0..table.len()).map(|i| format!("g{i}")).collect();
        GroupOracle { labels, table }
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// `Z/n x| Z/m` with the generator of `Z/m` acting by `a -> k a`.
pub fn nil2_semidirect(n: i64, m: i64, k: i64) -> Result<GroupOracle> {
    if n < 1 || m < 1 {
        return Err(AlgebraError::InvalidArgument("orders must be positive".into()));
    }
    let pw = |e: i64| -> i64 {
        let mut acc = 1i64;
        for _ in 0..e {
            acc = acc * k.rem_euclid(n) % n;
        }
        acc % n
    };
    if pw(m) != 1 % n {
        return Err(AlgebraError::NotAnAction(format!("{k}^{m} is not 1 mod {n}")));
    }
    let km1 = (k - 1).rem_euclid(n);
    if km1 * km1 % n != 0 {
        return Err(AlgebraError::NotClassTwo(format!("({k}-1)^2 is not 0 mod {n}")));
    }
    let size = (n * m) as usize;
    let idx = |a: i64, b: i64| (a.rem_euclid(n) * m + b.rem_euclid(m)) as usize;
    let powers: Vec<i64> = (0..m).map(pw).collect();
    let mut rows = vec![vec![0usize; size]; size];
    for a in 0..n {
        for b in 0..m {
            for a2 in 0..n {
                for b2 in 0..m {
                    rows[idx(a, b)][idx(a2, b2)] = idx(a + powers[b as usize] * a2, b + b2);
                }
            }
        }
    }
    let labels = (0..n)
        .flat_map(|a| (0..m).map(move |b| format!("({a},{b})")))
        .collect();
    GroupOracle::new(labels, rows, 0)
}

/// Invariant-factor structure of a finite abelian group given on `0..m` by an
/// operation; returns the group and, per generator, an element realizing it.
fn abelian_structure(
    m: usize,
    zero: usize,
    op: &dyn Fn(usize, usize) -> usize,
) -> Result<(FGAbelian, Vec<usize>)> {
    let scale = |c: i64, x: usize, ord: usize| -> usize {
        let c = c.rem_euclid(ord as i64);
        (0..c).fold(zero, |acc, _| op(acc, x))
    };
    let order = |x: usize| -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != zero {
            acc = op(acc, x);
            k += 1;
        }
        k
    };
    // greedy chain: coords[x] are coefficients over gens (0 <= c_j < m_j)
    let mut coords: Vec<Option<Vec<i64>>> = vec![None; m];
    coords[zero] = Some(Vec::new());
    let mut members = vec![zero];
    let mut gens: Vec<usize> = Vec::new();
    let mut rels: Vec<Vec<i64>> = Vec::new();
    for x in 0..m {
        if coords[x].is_some() {
            continue;
        }
        let k = gens.len();
        // smallest t with t*x in the current subgroup
        let mut t = 1;
        let mut tx = x;
        while coords[tx].is_none() {
            tx = op(tx, x);
            t += 1;
        }
        let mut rel = vec![0i64; k + 1];
        for (j, c) in coords[tx].as_ref().unwrap().iter().enumerate() {
            rel[j] = -c;
        }
        rel[k] = t;
        let mut grown = Vec::with_capacity(members.len() * t as usize);
        let mut sx = zero;
        for s in 0..t {
            for &y in &members {
                let z = op(sx, y);
                let mut c = coords[y].clone().unwrap();
                c.resize(k, 0);
                c.push(s);
                coords[z] = Some(c);
                grown.push(z);
            }
            sx = op(sx, x);
        }
        for c in coords.iter_mut().flatten() {
            c.resize(k + 1, 0);
        }
        members = grown;
        gens.push(x);
        for r in rels.iter_mut() {
            r.push(0);
        }
        rels.push(rel);
    }
    let k = gens.len();
    let free = FGAbelian::new(&vec![0; k])?;
    let rel_els: Vec<AbElement> = rels.into_iter().map(AbElement).collect();
    let q = ab_quotient(&free, &rel_els)?;
    let gen_orders: Vec<usize> = gens.iter().map(|&g| order(g)).collect();
    let basis = q
        .section_columns
        .iter()
        .map(|s| {
            s.0.iter()
                .zip(&gens)
                .zip(&gen_orders)
                .fold(zero, |acc, ((&c, &g), &o)| op(acc, scale(c, g, o)))
        })
        .collect();
    Ok((q.group, basis))
}

/// Output of [`nil2_canonicalize_finite`]: `to_oracle[i]` is the oracle index
/// of element `i` of `group` (in [`Nil2Group::elements`] order).
#[derive(Debug, Clone)]
pub struct Canonicalized {
    pub group: Nil2Group,
    pub to_oracle: Vec<usize>,
    pub from_oracle: Vec<usize>,
}

pub fn nil2_canonicalize_finite(o: &GroupOracle) -> Result<Canonicalized> {
    let t = &o.table;
    let n = t.len();
    if !t.is_class_two() {
        return Err(AlgebraError::NotClassTwo("some commutator is not central".into()));
    }
    let comms: Vec<usize> = {
        let mut seen = vec![false; n];
        for x in 0..n {
            for y in 0..n {
                seen[t.commutator(x, y)] = true;
            }
        }
        (0..n).filter(|&c| seen[c]).collect()
    };
    let gg = t.closure(&comms);
    // [G,G] as an abelian group on 0..|gg|
    let mut pos = vec![usize::MAX; n];
    for (k, &x) in gg.iter().enumerate() {
        pos[x] = k;
    }
    let (b, b_basis) = abelian_structure(gg.len(), pos[t.zero()], &|p, q| {
        pos[t.add(gg[p], gg[q])]
    })?;
    let b_basis: Vec<usize> = b_basis.iter().map(|&p| gg[p]).collect();
    // cosets of [G,G], represented by their least element
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &y in &gg {
            coset[t.add(x, y)] = c;
        }
    }
    let (a, a_basis) = abelian_structure(reps.len(), coset[t.zero()], &|p, q| {
        coset[t.add(reps[p], reps[q])]
    })?;
    let lifts: Vec<usize> = a_basis.iter().map(|&c| reps[c]).collect();
    let r = lifts.len();
    // B coordinates of every element of [G,G]
    let nb = b.order().unwrap_or(1) as usize;
    let mut b_elem = vec![0usize; nb];
    let mut b_coord: Vec<Option<usize>> = vec![None; n];
    for (k, slot) in b_elem.iter_mut().enumerate() {
        let u = b.element_at(k);
        let x = u
            .0
            .iter()
            .zip(&b_basis)
            .fold(t.zero(), |acc, (&c, &g)| t.add(acc, t.scale(c, g)));
        *slot = x;
        if b_coord[x].replace(k).is_some() {
            return Err(AlgebraError::InternalInvariant("[G,G] basis is not free".into()));
        }
    }
    let coord = |x: usize| -> Result<AbElement> {
        b_coord[x]
            .map(|k| b.element_at(k))
            .ok_or_else(|| AlgebraError::InternalInvariant("element outside [G,G]".into()))
    };
    let mut bil = vec![vec![b.zero(); r]; r];
    for i in 0..r {
        for j in i + 1..r {
            bil[i][j] = coord(t.commutator(lifts[i], lifts[j]))?;
        }
    }
    let carry = (0..r)
        .map(|k| coord(t.scale(a.orders()[k], lifts[k])))
        .collect::<Result<Vec<_>>>()?;
    let group = nil2_make(a, b, bil, carry)?;
    // phi(x, u) = x_r l_r + ... + x_1 l_1 + u
    let els = group.elements()?;
    let mut to_oracle = Vec::with_capacity(els.len());
    let mut from_oracle = vec![usize::MAX; n];
    for (idx, z) in els.iter().enumerate() {
        let mut acc = t.zero();
        for k in (0..r).rev() {
            acc = t.add(acc, t.scale(z.a.0[k], lifts[k]));
        }
        acc = t.add(acc, b_elem[group.comm().index_of(&z.b)]);
        if from_oracle[acc] != usize::MAX {
            return Err(AlgebraError::InternalInvariant("canonical map is not injective".into()));
        }
        from_oracle[acc] = idx;
        to_oracle.push(acc);
    }
    if els.len() != n {
        return Err(AlgebraError::InternalInvariant("canonical map is not onto".into()));
    }
    let gt = group.table()?;
    if !gt.is_hom(t, &to_oracle) {
        return Err(AlgebraError::InternalInvariant(
            "canonical bijection is not a homomorphism".into(),
        ));
    }
    Ok(Canonicalized {
        group,
        to_oracle,
        from_oracle,
    })
}

/// Greedy generating set: each element not yet generated is added.
fn generating_set(t: &CayleyTable) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![false; t.len()];
    span[t.zero()] = true;
    for x in 0..t.len() {
        if !span[x] {
            gens.push(x);
            for y in t.closure(&gens) {
                span[y] = true;
            }
        }
    }
    gens
}

/// Extends generator images to a homomorphism, if consistent.
fn extend_hom(s: &CayleyTable, t: &CayleyTable, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; s.len()];
    map[s.zero()] = t.zero();
    let mut queue = vec![s.zero()];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        k += 1;
        for (&g, &h) in gens.iter().zip(imgs) {
            let y = s.add(x, g);
            let v = t.add(map[x], h);
            if map[y] == usize::MAX {
                map[y] = v;
                queue.push(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    Some(map)
}

/// Group isomorphism `s -> t` by generator-image search; the first hit in
/// lexicographic order of images.
pub fn find_group_iso(s: &CayleyTable, t: &CayleyTable) -> Option<Vec<usize>> {
    if s.len() != t.len() {
        return None;
    }
    let gens = generating_set(s);
    let orders_t: Vec<usize> = (0..t.len()).map(|y| t.element_order(y)).collect();
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = s.element_order(g);
            (0..t.len()).filter(|&y| orders_t[y] == o).collect()
        })
        .collect();
    let mut imgs = vec![0usize; gens.len()];
    fn go(
        d: usize,
        s: &CayleyTable,
        t: &CayleyTable,
        gens: &[usize],
        cands: &[Vec<usize>],
        imgs: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if d == gens.len() {
            let map = extend_hom(s, t, gens, imgs)?;
            let mut hit = vec![false; t.len()];
            for &y in &map {
                if hit[y] {
                    return None;
                }
                hit[y] = true;
            }
            return Some(map);
        }
        for &c in &cands[d] {
            imgs[d] = c;
            if let Some(m) = go(d + 1, s, t, gens, cands, imgs) {
                return Some(m);
            }
        }
        None
    }
    go(0, s, t, &gens, &cands, &mut imgs)
}

/// All homomorphisms `s -> t` as index maps, in lexicographic order of the
/// images of a greedy generating set of `s`.
pub fn table_homs(s: &CayleyTable, t: &CayleyTable) -> Vec<Vec<usize>> {
    let gens = generating_set(s);
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = s.element_order(g);
            (0..t.len()).filter(|&y| o.is_multiple_of(t.element_order(y))).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut imgs = vec![0usize; gens.len()];
    let mut stack = vec![0usize; gens.len()];
    let mut d = 0;
    if gens.is_empty() {
        out.push(vec![t.zero(); s.len()]);
        return out;
    }
    loop {
        if stack[d] < cands[d].len() {
            imgs[d] = cands[d][stack[d]];
            stack[d] += 1;
            if d + 1 == gens.len() {
                if let Some(m) = extend_hom(s, t, &gens, &imgs) {
                    out.push(m);
                }
            } else {
                d += 1;
                stack[d] = 0;
            }
        } else if d == 0 {
            break;
        } else {
            d -= 1;
        }
    }
    out
}
