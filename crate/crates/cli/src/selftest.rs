use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use nilq::abelian::AbHom;
use nilq::classify::{
    find_niq_iso_witness, is_qsplit, linear_extension_verify, niq_iso_decide, qmap_approx_equiv, qmap_sim_equiv,
    weak_coproduct_verify, Level, Report,
};
use nilq::error::{AlgebraError, Result};
use nilq::maltsev::{bolo_decide, lie_decompositions, lie_exp, lie_log};
use nilq::nil2::{table_homs, Nil2Group};
use nilq::qmap::{qmap_enumerate, qmap_sample, QMap};

use crate::parse::Env;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Qmap,
    Linext,
    Classify,
    Maltsev,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Suite, String> {
        Ok(match s {
            "identities" => Suite::Identities,
            "qmap" => Suite::Qmap,
            "linext" => Suite::Linext,
            "classify" => Suite::Classify,
            "maltsev" => Suite::Maltsev,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite '{s}' (identities, qmap, linext, classify, maltsev, all)")),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Identities => "identities",
            Suite::Qmap => "qmap",
            Suite::Linext => "linext",
            Suite::Classify => "classify",
            Suite::Maltsev => "maltsev",
            Suite::All => "all",
        })
    }
}

pub fn run(suite: Suite, env: &Env, max_order: u64) -> Result<Report> {
    let mut r = Report::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Identities {
        identities(env, max_order, &mut r)?;
    }
    if all || suite == Suite::Qmap {
        qmaps(env, &mut r)?;
    }
    if all || suite == Suite::Linext {
        linext(env, &mut r)?;
    }
    if all || suite == Suite::Classify {
        classify(env, max_order, &mut r)?;
    }
    if all || suite == Suite::Maltsev {
        maltsev(env, max_order, &mut r)?;
    }
    Ok(r)
}

fn group(env: &Env, e: &str) -> Result<Nil2Group> {
    env.group(e).map_err(|e| AlgebraError::InvalidArgument(e.to_string()))
}

/// Index tables of a finite group.
struct Tab {
    g: Nil2Group,
    add: Vec<Vec<usize>>,
    neg: Vec<usize>,
    zero: usize,
    comm: Vec<bool>,
}

impl Tab {
    fn new(g: &Nil2Group) -> Result<Tab> {
        let t = g.table()?;
        let n = t.len();
        let els = g.elements()?;
        Ok(Tab {
            g: g.clone(),
            add: (0..n).map(|x| (0..n).map(|y| t.add(x, y)).collect()).collect(),
            neg: (0..n).map(|x| t.neg(x)).collect(),
            zero: t.zero(),
            comm: els.iter().map(|x| g.ab().is_zero(&x.a)).collect(),
        })
    }

    fn len(&self) -> usize {
        self.neg.len()
    }

    fn comm(&self, x: usize, y: usize) -> usize {
        self.add[self.add[self.add[x][y]][self.neg[x]]][self.neg[y]]
    }

    fn times(&self, n: i64, x: usize) -> usize {
        let y = if n < 0 { self.neg[x] } else { x };
        (0..n.unsigned_abs()).fold(self.zero, |acc, _| self.add[acc][y])
    }

    fn values(&self, t: &Tab, f: &QMap) -> Result<Vec<usize>> {
        self.g.elements()?.iter().map(|x| Ok(t.g.index_of(&f.eval(x)?))).collect()
    }

    fn cross(&self, t: &Tab, f: &[usize], a: usize, b: usize) -> usize {
        t.add[t.neg[t.add[f[a]][f[b]]]][f[self.add[a][b]]]
    }
}

fn all_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

const IDENTITY_GROUPS: [&str; 9] = [
    "D4", "Q8", "Heis3", "Z9sdZ3", "coproduct(Z2,Z2)", "coproduct(Z2,Z4)", "product(D4,Z2)", "product(Q8,Z4)", "Heis5",
];

fn identities(env: &Env, max_order: u64, r: &mut Report) -> Result<()> {
    for e in IDENTITY_GROUPS {
        let g = group(env, e)?;
        if g.order().is_some_and(|n| n > max_order) {
            continue;
        }
        let t = Tab::new(&g)?;
        let n = t.len();
        let pairs: Vec<(usize, usize)> = all_pairs(n).collect();
        let central = pairs.iter().all(|&(x, y)| {
            let c = t.comm(x, y);
            t.comm[c] && (0..n).all(|z| t.add[z][c] == t.add[c][z])
        });
        r.push(central, "group.commutator-central", e);
        let els = g.elements()?;
        let mut induced = true;
        for &(x, y) in &pairs {
            let c = g.central(&g.commutator_ab(&els[x].a, &els[y].a)?);
            induced &= g.index_of(&c) == t.comm(x, y);
        }
        r.push(induced, "group.commutator-from-abelianization", e);
        let additive = all_pairs(n).all(|(x, x2)| {
            (0..n).all(|y| t.comm(t.add[x][x2], y) == t.add[t.comm(x, y)][t.comm(x2, y)])
        });
        r.push(additive, "group.commutator-bilinear", e);
        let power = pairs.iter().all(|&(x, y)| {
            (-5..=5).all(|k: i64| {
                t.add[t.times(k, x)][t.times(k, y)] == t.add[t.times(k, t.add[x][y])][t.times(k * (k - 1) / 2, t.comm(x, y))]
            })
        });
        r.push(power, "group.power-of-sum", e);

        let mut maps = vec![QMap::identity(&g), QMap::power(&g, 2)?, QMap::power(&g, -1)?];
        maps.extend(qmap_sample(&g, &g, 3, 7)?);
        let (mut zero, mut neg, mut central_add, mut comm_rule, mut triple, mut bilinear) = (true, true, true, true, true, true);
        for f in &maps {
            let fv = t.values(&t, f)?;
            let c = |a: usize, b: usize| t.cross(&t, &fv, a, b);
            zero &= fv[t.zero] == t.zero;
            for a in 0..n {
                neg &= fv[t.neg[a]] == t.add[t.neg[fv[a]]][c(a, a)];
                for k in (0..n).filter(|&k| t.comm[k]) {
                    central_add &= fv[t.add[a][k]] == t.add[fv[a]][fv[k]];
                }
            }
            for &(a, b) in &pairs {
                bilinear &= t.comm[c(a, b)];
                let lhs = fv[t.comm(a, b)];
                comm_rule &= lhs == t.add[t.add[t.comm(fv[a], fv[b])][c(a, b)]][t.neg[c(b, a)]];
                comm_rule &= lhs == t.add[t.neg[fv[t.add[b][a]]]][fv[t.add[a][b]]];
            }
            let stride = 1 + n / 32;
            for a in (0..n).step_by(stride) {
                for &(b, d) in &pairs {
                    triple &= fv[t.comm(a, t.comm(b, d))] == t.comm(fv[a], t.comm(fv[b], fv[d]));
                    bilinear &= c(t.add[a][b], d) == t.add[c(a, d)][c(b, d)];
                }
            }
        }
        r.push(bilinear, "qmap.cross-effect-bilinear", e);
        r.push(zero, "qmap.zero", e);
        r.push(neg, "qmap.negation", e);
        r.push(central_add, "qmap.additive-on-commutators", e);
        r.push(comm_rule, "qmap.commutator-rule", e);
        r.push(triple, "qmap.triple-commutator", e);
    }
    Ok(())
}

/// Set maps satisfying the defining conditions, by backtracking.
fn definition_filter(s: &Tab, t: &Tab) -> Vec<Vec<usize>> {
    fn rec(s: &Tab, t: &Tab, f: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        let n = s.len();
        if k == n {
            let c = |a: usize, b: usize| s.cross(t, f, a, b);
            let ok = all_pairs(n).all(|(a, b)| t.comm[c(a, b)])
                && all_pairs(n).all(|(a, a2)| {
                    (0..n).all(|b| {
                        c(s.add[a][a2], b) == t.add[c(a, b)][c(a2, b)] && c(b, s.add[a][a2]) == t.add[c(b, a)][c(b, a2)]
                    })
                });
            if ok {
                out.push(f.clone());
            }
            return;
        }
        for y in 0..t.len() {
            f[k] = y;
            let ok = all_pairs(k + 1).all(|(a, b)| {
                let ab = s.add[a][b];
                ab > k || (a != k && b != k && ab != k) || t.comm[s.cross(t, f, a, b)]
            });
            if ok {
                rec(s, t, f, k + 1, out);
            }
        }
    }
    let mut out = Vec::new();
    rec(s, t, &mut vec![0; s.len()], 0, &mut out);
    out
}

const SMALL: [&str; 8] = ["Z2", "Z4", "Z2xZ2", "Z2^3", "D4", "Q8", "Z3", "coproduct(Z2,Z2)"];

fn qmaps(env: &Env, r: &mut Report) -> Result<()> {
    let groups = SMALL.iter().map(|e| group(env, e)).collect::<Result<Vec<_>>>()?;
    let tabs = groups.iter().map(Tab::new).collect::<Result<Vec<_>>>()?;
    for (x, s) in SMALL.iter().zip(&tabs) {
        for (y, t) in SMALL.iter().zip(&tabs) {
            let inst = format!("{x}->{y}");
            let lib: HashSet<Vec<usize>> =
                qmap_enumerate(&s.g, &t.g)?.iter().map(|f| s.values(t, f)).collect::<Result<_>>()?;
            let brute: HashSet<Vec<usize>> = definition_filter(s, t).into_iter().collect();
            r.push(lib == brute, "qmap.enumeration-complete", &inst);
            if t.g.is_abelian() {
                let homs: HashSet<Vec<usize>> = table_homs(&s.g.table()?, &t.g.table()?).into_iter().collect();
                r.push(homs == lib, "qmap.abelian-target-homs", &inst);
            }
            let fs = qmap_sample(&s.g, &t.g, 3, 1)?;
            let mut sums = true;
            for f in &fs {
                let fv = s.values(t, f)?;
                for g in &fs {
                    let gv = s.values(t, g)?;
                    let sv = s.values(t, &f.add(g)?)?;
                    let nv = s.values(t, &f.neg()?)?;
                    for (a, b) in all_pairs(s.len()) {
                        let want = t.add[t.add[s.cross(t, &fv, a, b)][s.cross(t, &gv, a, b)]][t.comm(fv[b], gv[a])];
                        sums &= s.cross(t, &sv, a, b) == want;
                        let want = t.add[t.comm(fv[b], fv[a])][t.neg[s.cross(t, &fv, a, b)]];
                        sums &= s.cross(t, &nv, a, b) == want;
                    }
                }
            }
            r.push(sums, "qmap.sum-cross-effects", &inst);
        }
    }
    for (x, s) in SMALL.iter().zip(&tabs).take(6) {
        for (y, m) in SMALL.iter().zip(&tabs).take(6) {
            let (t, z) = (&tabs[5], SMALL[5]);
            let gs = qmap_sample(&s.g, &m.g, 2, 3)?;
            let fs = qmap_sample(&m.g, &t.g, 2, 4)?;
            let mut ok = true;
            for g in &gs {
                let gv = s.values(m, g)?;
                for f in &fs {
                    let fv = m.values(t, f)?;
                    let fg = s.values(t, &f.compose(g)?)?;
                    for (a, b) in all_pairs(s.len()) {
                        ok &= fg[a] == fv[gv[a]];
                        ok &= s.cross(t, &fg, a, b) == t.add[fv[s.cross(m, &gv, a, b)]][m.cross(t, &fv, gv[a], gv[b])];
                    }
                    for f2 in &fs {
                        ok &= f.add(f2)?.compose(g)?.agrees_with(&f.compose(g)?.add(&f2.compose(g)?)?)?;
                    }
                }
            }
            r.push(ok, "qmap.composition", format!("{x}->{y}->{z}"));
        }
    }
    Ok(())
}

fn linext(env: &Env, r: &mut Report) -> Result<()> {
    let names = ["Z2", "Z4", "Z2xZ2", "D4", "Q8"];
    let k = group(env, "Z2")?;
    for a in names {
        for b in names {
            let (g, h) = (group(env, a)?, group(env, b)?);
            for level in [Level::Nil, Level::NiqSim, Level::NiqApprox] {
                r.extend(linear_extension_verify(level, &g, &h, &k, &format!("{a},{b}"), 3, 5)?);
            }
        }
    }
    for (a, b, z) in [("Z2", "Z2", "Q8"), ("Z2", "Z4", "D4"), ("D4", "Q8", "Q8"), ("Z3", "Z3", "Heis3")] {
        let inst = format!("{a},{b}->{z}");
        r.extend(weak_coproduct_verify(&group(env, a)?, &group(env, b)?, &group(env, z)?, &inst, 64, 2)?);
    }
    Ok(())
}

fn classify(env: &Env, max_order: u64, r: &mut Report) -> Result<()> {
    for (e, want) in [("D4", true), ("Q8", true), ("Heis3", true), ("Z9sdZ3", false), ("Z25sdZ5", false)] {
        let g = group(env, e)?;
        let v = is_qsplit(&g)?;
        let section = match v.witness() {
            Some(s) => *s.fab() == AbHom::identity(g.ab()),
            None => true,
        };
        r.push(v.is_split() == want && section, "classify.qsplit", e);
    }
    for (a, b, want) in [
        ("D4", "Q8", true),
        ("coproduct(Z3,Z3)", "Z9sdZ3", false),
        ("Heis3", "Z9sdZ3", false),
        ("Z2^3", "coproduct(Z2,Z2)", false),
        ("Z4", "Z2xZ2", false),
    ] {
        let d = niq_iso_decide(&group(env, a)?, &group(env, b)?, Some(max_order))?;
        r.push(d.isomorphic == want, "classify.niq-iso", format!("{a},{b}"));
    }
    let (z4, q8) = (group(env, "Z4")?, group(env, "Q8")?);
    let maps = qmap_enumerate(&z4, &q8)?;
    let (mut implies, mut separated) = (true, false);
    for f in &maps {
        for g in &maps {
            let sim = qmap_sim_equiv(f, g)?.is_some();
            let approx = qmap_approx_equiv(f, g)?;
            implies &= !sim || approx;
            separated |= approx && !sim;
        }
    }
    r.push(implies, "classify.sim-implies-approx", "Z4,Q8");
    r.push(separated, "classify.approx-not-sim", "Z4,Q8");
    Ok(())
}

const ODD: [&str; 10] = [
    "Z3", "Z9", "Z27", "Z3xZ9", "Z3^3", "Heis3", "Z9sdZ3", "coproduct(Z3,Z3)", "Heis5", "Z25sdZ5",
];

fn maltsev(env: &Env, max_order: u64, r: &mut Report) -> Result<()> {
    for e in ODD {
        let g = group(env, e)?;
        let lg = lie_log(&g)?;
        let ex = lie_exp(&lg.ring)?;
        r.push(lie_log(&ex)?.ring == lg.ring, "maltsev.log-exp", e);
        let els = g.elements()?;
        let mut ok = true;
        for x in &els {
            ok &= lg.from_ring(&lg.to_ring(x)?)? == *x;
            for y in els.iter().step_by(3) {
                let (rx, ry) = (lg.to_ring(x)?, lg.to_ring(y)?);
                ok &= lg.to_ring(&g.add(x, y)?)? == ex.add(&rx, &ry)?;
                ok &= lg.to_ring(&g.commutator(x, y)?)? == lg.ring.bracket(&rx, &ry)?;
            }
        }
        r.push(ok, "maltsev.exp-log", e);
    }
    let order27 = ["Heis3", "Z9sdZ3", "Z3^3", "Z3xZ9"];
    for a in order27 {
        for b in order27 {
            let (g, h) = (group(env, a)?, group(env, b)?);
            let inst = format!("{a},{b}");
            if g.order().is_some_and(|n| n <= max_order) {
                let bolo = bolo_decide(&g, &h)?.is_some();
                let wit = find_niq_iso_witness(&g, &h)?.is_some();
                r.push(bolo == wit, "maltsev.logarithm-vs-witness", &inst);
            }
        }
    }
    for (a, b) in [("Heis3", "Z9sdZ3"), ("Z9sdZ3", "Heis3")] {
        let (g, h) = (group(env, a)?, group(env, b)?);
        let ds = lie_decompositions(&lie_log(&g)?, &lie_log(&h)?)?;
        let (tg, th) = (Tab::new(&g)?, Tab::new(&h)?);
        let els = g.elements()?;
        let dv: HashSet<Vec<usize>> =
            ds.iter().map(|d| els.iter().map(|x| Ok(h.index_of(&d.eval(x)?))).collect()).collect::<Result<_>>()?;
        let qv: HashSet<Vec<usize>> =
            qmap_enumerate(&g, &h)?.iter().map(|f| tg.values(&th, f)).collect::<Result<_>>()?;
        r.push(dv == qv && dv.len() == ds.len(), "maltsev.decompositions", format!("{a},{b}"));
    }
    Ok(())
}
