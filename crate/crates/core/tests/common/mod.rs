#![allow(dead_code)]

use nilq::nil2::{catalog, nil2_coproduct, nil2_product, Nil2Element, Nil2Group};
use nilq::qmap::QMap;

pub type Check = Result<(), String>;

pub fn named(n: &str) -> Nil2Group {
    if let Some((a, b)) = n.split_once(" v ") {
        return nil2_coproduct(&named(a), &named(b)).unwrap().group;
    }
    if let Some((a, b)) = n.split_once(" x ") {
        return nil2_product(&named(a), &named(b)).unwrap().group;
    }
    catalog().unwrap().into_iter().find(|e| e.0 == n).unwrap_or_else(|| panic!("no group {n}")).1
}

pub fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Element table of a finite group, computed once with the library's
/// arithmetic so that the checks below work on indices.
pub struct Tab {
    pub g: Nil2Group,
    pub els: Vec<Nil2Element>,
    pub add: Vec<Vec<usize>>,
    pub neg: Vec<usize>,
    pub zero: usize,
    /// Indices of elements of `[G,G]`.
    pub comm: Vec<usize>,
}

impl Tab {
    pub fn new(g: &Nil2Group) -> Tab {
        let els = g.elements().unwrap();
        let add = els
            .iter()
            .map(|x| els.iter().map(|y| g.index_of(&g.add(x, y).unwrap())).collect())
            .collect();
        let neg = els.iter().map(|x| g.index_of(&g.neg(x).unwrap())).collect();
        let comm = (0..els.len()).filter(|&i| g.ab().is_zero(&els[i].a)).collect();
        Tab {
            zero: g.index_of(&g.zero()),
            g: g.clone(),
            els,
            add,
            neg,
            comm,
        }
    }

    pub fn len(&self) -> usize {
        self.els.len()
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add[x][self.neg[y]]
    }

    /// `x + y - x - y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let s = self.add[x][y];
        self.add[self.add[s][self.neg[x]]][self.neg[y]]
    }

    pub fn is_central(&self, z: usize) -> bool {
        (0..self.len()).all(|x| self.add[x][z] == self.add[z][x])
    }

    /// `n x` by repeated addition.
    pub fn times(&self, n: i64, x: usize) -> usize {
        let y = if n < 0 { self.neg[x] } else { x };
        (0..n.unsigned_abs()).fold(self.zero, |acc, _| self.add[acc][y])
    }

    pub fn is_hom(&self, t: &Tab, f: &[usize]) -> bool {
        (0..self.len()).all(|x| (0..self.len()).all(|y| f[self.add[x][y]] == t.add[f[x]][f[y]]))
    }
}

/// `-(f(a) + f(b)) + f(a + b)`.
pub fn cross(s: &Tab, t: &Tab, f: &[usize], a: usize, b: usize) -> usize {
    t.add[t.neg[t.add[f[a]][f[b]]]][f[s.add[a][b]]]
}

/// Set-map predicate taken literally: the cross-effect is bilinear in both
/// arguments, commutes with the image and lies in `[H,H]`.
pub fn is_qmap_by_definition(s: &Tab, t: &Tab, f: &[usize]) -> bool {
    let n = s.len();
    let c: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| cross(s, t, f, a, b)).collect()).collect();
    let in_comm = |z: usize| t.comm.contains(&z);
    for a in 0..n {
        for b in 0..n {
            if !in_comm(c[a][b]) {
                return false;
            }
            for &y in f {
                if t.add[y][c[a][b]] != t.add[c[a][b]][y] {
                    return false;
                }
            }
        }
    }
    for a in 0..n {
        for a2 in 0..n {
            for b in 0..n {
                if c[s.add[a][a2]][b] != t.add[c[a][b]][c[a2][b]] || c[b][s.add[a][a2]] != t.add[c[b][a]][c[b][a2]] {
                    return false;
                }
            }
        }
    }
    true
}

/// All set maps `G -> H` satisfying [`is_qmap_by_definition`], by backtracking
/// over values in element order. Partial maps are discarded only when some
/// cross-effect between assigned elements already leaves `[H,H]`.
pub fn brute_force_qmaps(s: &Tab, t: &Tab) -> Vec<Vec<usize>> {
    let n = s.len();
    let mut out = Vec::new();
    let mut f = vec![usize::MAX; n];
    fn rec(s: &Tab, t: &Tab, f: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        let n = s.len();
        if k == n {
            if is_qmap_by_definition(s, t, f) {
                out.push(f.clone());
            }
            return;
        }
        for y in 0..t.len() {
            f[k] = y;
            let ok = (0..=k).all(|a| {
                (0..=k).all(|b| {
                    let ab = s.add[a][b];
                    ab > k || (a != k && b != k && ab != k) || t.comm.contains(&cross(s, t, f, a, b))
                })
            });
            if ok {
                rec(s, t, f, k + 1, out);
            }
        }
        f[k] = usize::MAX;
    }
    rec(s, t, &mut f, 0, &mut out);
    out
}

/// Identities for a class-two group on all elements and pairs, with `n` in
/// `-ns..=ns` for the power formula.
pub fn group_identities(name: &str, t: &Tab, ns: i64) -> Check {
    let g = &t.g;
    let n = t.len();
    for x in 0..n {
        for y in 0..n {
            let c = t.commutator(x, y);
            // [x, y] depends only on the classes in G_ab and is bilinear there
            let via_ab = g.index_of(&g.central(&g.commutator_ab(&t.els[x].a, &t.els[y].a).unwrap()));
            ensure(c == via_ab, || format!("{name}: [x,y] not induced from G_ab at ({x},{y})"))?;
            ensure(g.index_of(&g.commutator(&t.els[x], &t.els[y]).unwrap()) == c, || {
                format!("{name}: commutator differs from x+y-x-y at ({x},{y})")
            })?;
            ensure(t.is_central(c), || format!("{name}: [x,y] not central at ({x},{y})"))?;
            ensure(t.commutator(x, x) == t.zero, || format!("{name}: [x,x] != 0"))?;
            for k in -ns..=ns {
                let lhs = t.add[t.times(k, x)][t.times(k, y)];
                let rhs = t.add[t.times(k, t.add[x][y])][t.times(k * (k - 1) / 2, c)];
                ensure(lhs == rhs, || format!("{name}: power formula fails for n={k} at ({x},{y})"))?;
                ensure(g.index_of(&g.scale(k, &t.els[x]).unwrap()) == t.times(k, x), || {
                    format!("{name}: scale disagrees with repeated addition")
                })?;
            }
        }
    }
    for x in 0..n {
        for x2 in 0..n {
            for y in (0..n).step_by(1 + n / 16) {
                let lhs = t.commutator(t.add[x][x2], y);
                ensure(lhs == t.add[t.commutator(x, y)][t.commutator(x2, y)], || {
                    format!("{name}: commutator not additive in the first slot")
                })?;
            }
        }
    }
    Ok(())
}

pub fn values(s: &Tab, t: &Tab, f: &QMap) -> Vec<usize> {
    s.els.iter().map(|x| t.g.index_of(&f.eval(x).unwrap())).collect()
}

/// Properties of a q-map `f: G -> H`; triples are sampled with stride
/// `stride` in the outer slot.
pub fn qmap_identities(name: &str, s: &Tab, t: &Tab, f: &QMap, stride: usize) -> Check {
    let fv = values(s, t, f);
    let n = s.len();
    let c = |a: usize, b: usize| cross(s, t, &fv, a, b);
    ensure(fv[s.zero] == t.zero, || format!("{name}: f(0) != 0"))?;
    for a in 0..n {
        ensure(fv[s.neg[a]] == t.add[t.neg[fv[a]]][c(a, a)], || format!("{name}: f(-a) formula at {a}"))?;
        for &k in &s.comm {
            ensure(fv[s.add[a][k]] == t.add[fv[a]][fv[k]], || format!("{name}: f(a+c) != f(a)+f(c) at ({a},{k})"))?;
            ensure(c(k, a) == t.zero && c(a, k) == t.zero, || format!("{name}: cross-effect not killed by [G,G]"))?;
        }
        for b in 0..n {
            let cab = c(a, b);
            ensure(t.comm.contains(&cab), || format!("{name}: cross-effect leaves [H,H] at ({a},{b})"))?;
            ensure(t.g.index_of(&f.cross(&s.els[a], &s.els[b]).unwrap()) == cab, || {
                format!("{name}: library cross-effect differs at ({a},{b})")
            })?;
            let fab = fv[s.commutator(a, b)];
            let mid = t.add[t.neg[fv[s.add[b][a]]]][fv[s.add[a][b]]];
            let rhs = t.add[t.add[t.commutator(fv[a], fv[b])][cab]][t.neg[c(b, a)]];
            ensure(fab == mid && mid == rhs, || format!("{name}: f([a,b]) formula at ({a},{b})"))?;
        }
    }
    for a in (0..n).step_by(stride) {
        for a2 in 0..n {
            for b in 0..n {
                ensure(c(s.add[a][a2], b) == t.add[c(a, b)][c(a2, b)], || {
                    format!("{name}: cross-effect not bilinear at ({a},{a2},{b})")
                })?;
                let lhs = fv[s.commutator(a, s.commutator(a2, b))];
                let rhs = t.commutator(fv[a], t.commutator(fv[a2], fv[b]));
                ensure(lhs == rhs, || format!("{name}: f([a,[b,c]]) formula at ({a},{a2},{b})"))?;
            }
        }
    }
    Ok(())
}

/// Sum, negation and their cross-effects, pointwise.
pub fn sum_identities(name: &str, s: &Tab, t: &Tab, f: &QMap, g: &QMap) -> Check {
    let (fv, gv) = (values(s, t, f), values(s, t, g));
    let fg = f.add(g).map_err(|e| format!("{name}: f+g: {e}"))?;
    let nf = f.neg().map_err(|e| format!("{name}: -f: {e}"))?;
    let (sv, nv) = (values(s, t, &fg), values(s, t, &nf));
    let n = s.len();
    for x in 0..n {
        ensure(sv[x] == t.add[fv[x]][gv[x]], || format!("{name}: (f+g)(x) != f(x)+g(x)"))?;
        ensure(nv[x] == t.neg[fv[x]], || format!("{name}: (-f)(x) != -f(x)"))?;
    }
    for a in 0..n {
        for b in 0..n {
            let lhs = cross(s, t, &sv, a, b);
            let rhs = t.add[t.add[cross(s, t, &fv, a, b)][cross(s, t, &gv, a, b)]][t.commutator(fv[b], gv[a])];
            ensure(lhs == rhs, || format!("{name}: cross-effect of f+g at ({a},{b})"))?;
            let lhs = cross(s, t, &nv, a, b);
            let rhs = t.add[t.commutator(fv[b], fv[a])][t.neg[cross(s, t, &fv, a, b)]];
            ensure(lhs == rhs, || format!("{name}: cross-effect of -f at ({a},{b})"))?;
            ensure(t.comm.contains(&lhs), || format!("{name}: -f is not a q-map"))?;
        }
    }
    Ok(())
}

/// For `g: G1 -> G` and `f, f2: G -> H`: cross-effect of `fg`, pointwise
/// composition and `(f + f2) g = fg + f2 g`.
pub fn composition_identities(name: &str, s: &Tab, m: &Tab, t: &Tab, f: &QMap, f2: &QMap, g: &QMap) -> Check {
    let (fv, gv) = (values(m, t, f), values(s, m, g));
    let fg = f.compose(g).map_err(|e| format!("{name}: fg: {e}"))?;
    let fgv = values(s, t, &fg);
    let n = s.len();
    for x in 0..n {
        ensure(fgv[x] == fv[gv[x]], || format!("{name}: (fg)(x) != f(g(x))"))?;
    }
    for a in 0..n {
        for b in 0..n {
            let lhs = cross(s, t, &fgv, a, b);
            let rhs = t.add[fv[cross(s, m, &gv, a, b)]][cross(m, t, &fv, gv[a], gv[b])];
            ensure(lhs == rhs, || format!("{name}: cross-effect of fg at ({a},{b})"))?;
        }
    }
    let lhs = values(s, t, &f.add(f2).unwrap().compose(g).unwrap());
    let rhs = values(s, t, &fg.add(&f2.compose(g).unwrap()).unwrap());
    ensure(lhs == rhs, || format!("{name}: (f+f')g != fg+f'g"))?;
    let lhs = values(s, t, &f.compose(&g.add(g).unwrap()).unwrap());
    for x in 0..n {
        let rhs = t.add[t.add[fgv[x]][fgv[x]]][cross(m, t, &fv, gv[x], gv[x])];
        ensure(lhs[x] == rhs, || format!("{name}: f(g+g) != fg+fg+(g|g)_f"))?;
    }
    Ok(())
}
