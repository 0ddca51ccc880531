mod parse;
mod selftest;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nilq::classify::{is_qsplit, niq_iso_decide, Verdict};
use nilq::error::AlgebraError;
use nilq::maltsev::{lie_exp, lie_log, Nil2LieRing};
use nilq::nil2::{find_group_iso, nil2_center, Nil2Group};
use nilq::qmap::{qmap_count, QMapSpace};

use parse::{Def, Env};
use selftest::Suite;

#[derive(Parser)]
#[command(name = "nilq", version, about = "Class-two nilpotent groups and quadratic maps")]
struct Cli {
    /// Group file to load (repeatable).
    #[arg(long = "file", short = 'f', global = true)]
    files: Vec<PathBuf>,
    /// Inline definitions in group-file syntax (repeatable).
    #[arg(long = "define", short = 'd', global = true)]
    defines: Vec<String>,
    /// Largest group order for which searches run.
    #[arg(long, default_value_t = 64, global = true)]
    max_order: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Category {
    Nil,
    Niq,
}

#[derive(Subcommand)]
enum Cmd {
    /// Order, abelianization, commutator subgroup, center and q-splitness.
    Info { group: String },
    /// Decide isomorphism in the category of homomorphisms or of q-maps.
    Iso {
        g: String,
        h: String,
        #[arg(long, value_enum, default_value = "niq")]
        category: Category,
        /// Print the isomorphism found.
        #[arg(long)]
        witness: bool,
    },
    /// Decide whether the projection onto the abelianization has a q-map section.
    Qsplit {
        group: String,
        #[arg(long)]
        witness: bool,
    },
    /// Count q-maps G -> H and list the first few, or describe a named q-map.
    Qmap {
        g: String,
        h: Option<String>,
        /// Number of q-maps to print.
        #[arg(long, default_value_t = 0)]
        list: usize,
    },
    /// Logarithm of an odd-order group, or exponential of a named Lie ring.
    Lie { name: String },
    /// Run a verification suite and print one PASS/FAIL line per check.
    Selftest {
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
    /// List the names known to the tool.
    List,
}

/// Outcome of a command: the report and whether the verdict was positive.
type Outcome = Result<(String, bool), Failure>;

enum Failure {
    Input(String),
    Internal(String),
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::InternalInvariant(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<parse::ParseError> for Failure {
    fn from(e: parse::ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn order_str(n: Option<u64>) -> String {
    n.map_or("infinite".into(), |n| n.to_string())
}

fn info(env: &Env, e: &str) -> Outcome {
    let g = env.group(e)?;
    let mut out = String::new();
    writeln!(out, "group {e}").ok();
    writeln!(out, "order {}", order_str(g.order())).ok();
    writeln!(out, "abelianization {}", g.ab()).ok();
    writeln!(out, "commutator {}", g.comm()).ok();
    writeln!(out, "abelian {}", yes(g.is_abelian())).ok();
    writeln!(out, "center-order {}", order_str(nil2_center(&g)?.order())).ok();
    if g.is_finite() {
        writeln!(out, "exponent {}", g.exponent()?).ok();
    }
    let split = match is_qsplit(&g) {
        Ok(Verdict::Split(_)) => "yes",
        Ok(Verdict::StructuralSplit(_)) => "structural-yes",
        Ok(Verdict::NotSplit) => "no",
        Err(AlgebraError::Unsupported(_)) => "unknown",
        Err(e) => return Err(e.into()),
    };
    writeln!(out, "q-split {split}").ok();
    Ok((out, true))
}

fn guard(g: &Nil2Group, max_order: u64) -> Result<(), Failure> {
    match g.order() {
        Some(n) if n <= max_order => Ok(()),
        Some(n) => Err(Failure::Input(format!("order {n} exceeds --max-order {max_order}"))),
        None => Err(Failure::Input("isomorphism decisions need finite groups".into())),
    }
}

fn iso(env: &Env, a: &str, b: &str, category: Category, witness: bool, max_order: u64) -> Outcome {
    let (g, h) = (env.group(a)?, env.group(b)?);
    let mut out = String::new();
    match category {
        Category::Nil => {
            guard(&g, max_order)?;
            guard(&h, max_order)?;
            writeln!(out, "category nil").ok();
            let found = if g.order() == h.order() { find_group_iso(&g.table()?, &h.table()?) } else { None };
            writeln!(out, "path group-iso-search {}", yes(found.is_some())).ok();
            writeln!(out, "isomorphic {}", yes(found.is_some())).ok();
            if let (true, Some(m)) = (witness, &found) {
                for i in 0..g.rank() {
                    let x = g.generator(i);
                    writeln!(out, "witness e{} -> {}", i + 1, h.element_at(m[g.index_of(&x)])).ok();
                }
            }
            Ok((out, found.is_some()))
        }
        Category::Niq => {
            let d = niq_iso_decide(&g, &h, Some(max_order))?;
            writeln!(out, "category niq").ok();
            for (p, v) in &d.paths {
                writeln!(out, "path {p} {}", yes(*v)).ok();
            }
            writeln!(out, "isomorphic {}", yes(d.isomorphic)).ok();
            if witness {
                if let Some(w) = &d.witness {
                    writeln!(out, "witness forward {}", w.forward).ok();
                    writeln!(out, "witness inverse {}", w.inverse).ok();
                }
            }
            Ok((out, d.isomorphic))
        }
    }
}

fn qsplit(env: &Env, e: &str, witness: bool) -> Outcome {
    let g = env.group(e)?;
    let v = is_qsplit(&g)?;
    let mut out = String::new();
    let label = match &v {
        Verdict::Split(_) => "yes",
        Verdict::StructuralSplit(_) => "structural-yes",
        Verdict::NotSplit => "no",
    };
    writeln!(out, "q-split {label}").ok();
    if let (true, Some(s)) = (witness, v.witness()) {
        writeln!(out, "section {s}").ok();
    }
    Ok((out, v.is_split()))
}

fn qmap(env: &Env, a: &str, b: Option<&str>, list: usize) -> Outcome {
    let mut out = String::new();
    let Some(b) = b else {
        let Some(Def::QMap(f)) = env.get(a) else {
            return Err(Failure::Input(format!("'{a}' is not a named q-map")));
        };
        writeln!(out, "{f}").ok();
        writeln!(out, "homomorphism {}", yes(f.is_hom()?)).ok();
        if f.source().is_finite() && f.target().is_finite() {
                let g = f.source();
            for x in g.elements()?.iter().take(64) {
                writeln!(out, "value {x} -> {}", f.eval(x)?).ok();
            }
        }
        return Ok((out, true));
    };
    let (g, h) = (env.group(a)?, env.group(b)?);
    writeln!(out, "count {}", qmap_count(&g, &h)?).ok();
    if list > 0 {
        let mut shown = 0;
        let space = QMapSpace::all(&g, &h)?;
        let _ = space.visit(&mut |f| {
            writeln!(out, "{f}").ok();
            shown += 1;
            if shown >= list {
                std::ops::ControlFlow::Break(())
            } else {
                std::ops::ControlFlow::Continue(())
            }
        })?;
    }
    Ok((out, true))
}

fn write_ring(out: &mut String, r: &Nil2LieRing) {
    writeln!(out, "abelianization {}", r.ab()).ok();
    writeln!(out, "commutator {}", r.comm()).ok();
    for (i, c) in r.carry().iter().enumerate() {
        writeln!(out, "carry[{}] {c}", i + 1).ok();
    }
    for (i, row) in r.bracket_matrix().iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i < j && !r.comm().is_zero(v) {
                writeln!(out, "bracket[{}][{}] {v}", i + 1, j + 1).ok();
            }
        }
    }
}

fn lie(env: &Env, name: &str) -> Outcome {
    let mut out = String::new();
    if let Some(Def::Lie(r)) = env.get(name) {
        let g = lie_exp(r)?;
        writeln!(out, "exp {name}").ok();
        writeln!(out, "order {}", order_str(g.order())).ok();
        writeln!(out, "abelianization {}", g.ab()).ok();
        writeln!(out, "commutator {}", g.comm()).ok();
        for (i, c) in g.carry().iter().enumerate() {
            writeln!(out, "carry[{}] {c}", i + 1).ok();
        }
        for (i, row) in g.bil().iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !g.comm().is_zero(v) {
                    writeln!(out, "bil[{}][{}] {v}", i + 1, j + 1).ok();
                }
            }
        }
        return Ok((out, true));
    }
    let g = env.group(name)?;
    let l = lie_log(&g)?;
    writeln!(out, "log {name}").ok();
    writeln!(out, "order {}", l.ring.order()).ok();
    write_ring(&mut out, &l.ring);
    Ok((out, true))
}

fn list(env: &Env) -> Outcome {
    let mut out = String::new();
    for n in env.names() {
        if let Some(d) = env.get(n) {
            let extra = match d {
                Def::Group(g) => format!(" order {}", order_str(g.order())),
                _ => String::new(),
            };
            writeln!(out, "{} {n}{extra}", d.kind()).ok();
        }
    }
    Ok((out, true))
}

fn run(cli: &Cli) -> Outcome {
    let mut env = Env::new();
    for p in &cli.files {
        let src = std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
        env.load(&src).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
    }
    for d in &cli.defines {
        env.load(d).map_err(|e| Failure::Input(format!("--define: {e}")))?;
    }
    match &cli.cmd {
        Cmd::Info { group } => info(&env, group),
        Cmd::Iso { g, h, category, witness } => iso(&env, g, h, *category, *witness, cli.max_order),
        Cmd::Qsplit { group, witness } => qsplit(&env, group, *witness),
        Cmd::Qmap { g, h, list } => qmap(&env, g, h.as_deref(), *list),
        Cmd::Lie { name } => lie(&env, name),
        Cmd::Selftest { suite } => {
            let r = selftest::run(*suite, &env, cli.max_order)?;
            let out = r.to_string();
            if r.passed() {
                Ok((out, true))
            } else {
                print!("{out}");
                Err(Failure::Internal(format!("{} check(s) failed", r.failures().count())))
            }
        }
        Cmd::List => list(&env),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, positive)) => {
            print!("{out}");
            ExitCode::from(if positive { 0 } else { 1 })
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}
