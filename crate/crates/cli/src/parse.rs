use std::collections::HashMap;
use std::fmt;

use nilq::abelian::{AbElement, AbHom, FGAbelian};
use nilq::error::AlgebraError;
use nilq::maltsev::{lie_make, Nil2LieRing};
use nilq::nil2::{
    catalog, cyclic, nil2_canonicalize_finite, nil2_coproduct, nil2_free, nil2_make, nil2_product, nil2_semidirect,
    GroupOracle, Nil2Group,
};
use nilq::qmap::{qmap_make, QMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

type Result<T> = std::result::Result<T, ParseError>;

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(ParseError { line, msg: msg.into() })
}

fn alg<T>(line: usize, r: std::result::Result<T, AlgebraError>) -> Result<T> {
    r.map_err(|e| ParseError { line, msg: e.to_string() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::Arrow => write!(f, "'->'"),
        }
    }
}

fn is_ident(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '^' | '\'' | '.')
}

fn lex(src: &str, first_line: usize) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut line = first_line;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push((Tok::Arrow, line));
            i += 2;
        } else if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            i += 1;
            while i < chars.len() && is_ident(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            match word.parse::<i64>() {
                Ok(n) => out.push((Tok::Int(n), line)),
                Err(_) if c != '-' => out.push((Tok::Ident(word), line)),
                Err(_) => return err(line, format!("bad number '{word}'")),
            }
        } else if is_ident(c) {
            let start = i;
            while i < chars.len() && is_ident(chars[i]) {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), line));
        } else if "{}[](),;=*:".contains(c) {
            out.push((Tok::Sym(c), line));
            i += 1;
        } else {
            return err(line, format!("unexpected character '{c}'"));
        }
    }
    Ok(out)
}

/// A nested list of integers, `[..]` and `(..)` being interchangeable.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Value {
    Int(i64),
    List(Vec<Value>),
}

impl Value {
    fn vector(&self, line: usize) -> Result<Vec<i64>> {
        match self {
            Value::List(xs) => xs
                .iter()
                .map(|x| match x {
                    Value::Int(n) => Ok(*n),
                    Value::List(_) => err(line, "expected a list of integers"),
                })
                .collect(),
            Value::Int(n) => Ok(vec![*n]),
        }
    }

    fn vectors(&self, line: usize) -> Result<Vec<Vec<i64>>> {
        match self {
            Value::List(xs) => xs.iter().map(|x| x.vector(line)).collect(),
            Value::Int(_) => err(line, "expected a list of lists"),
        }
    }
}

#[derive(Debug, Clone)]
struct Field {
    name: String,
    index: Option<(usize, usize)>,
    value: Value,
    line: usize,
}

/// An entry of a group file.
#[derive(Debug, Clone)]
pub enum Def {
    Group(Nil2Group),
    Lie(Nil2LieRing),
    QMap(QMap),
}

impl Def {
    pub fn kind(&self) -> &'static str {
        match self {
            Def::Group(_) => "group",
            Def::Lie(_) => "lie ring",
            Def::QMap(_) => "qmap",
        }
    }
}

/// Named definitions: the built-in catalog plus everything parsed so far.
pub struct Env {
    defs: HashMap<String, Def>,
    order: Vec<String>,
}

impl Default for Env {
    fn default() -> Self {
        Env::new()
    }
}

impl Env {
    pub fn new() -> Env {
        let mut defs = HashMap::new();
        let mut order = Vec::new();
        for (n, g) in catalog().expect("catalog groups are valid") {
            defs.insert(n.to_string(), Def::Group(g));
            order.push(n.to_string());
        }
        Env { defs, order }
    }

    pub fn get(&self, name: &str) -> Option<&Def> {
        self.defs.get(name)
    }

    pub fn names(&self) -> &[String] {
        &self.order
    }

    fn insert(&mut self, name: String, def: Def, line: usize) -> Result<()> {
        if self.defs.contains_key(&name) {
            return err(line, format!("'{name}' is already defined"));
        }
        self.order.push(name.clone());
        self.defs.insert(name, def);
        Ok(())
    }

    /// Parses a file and adds its definitions.
    pub fn load(&mut self, src: &str) -> Result<()> {
        let toks = lex(src, 1)?;
        let mut p = Parser { toks, pos: 0, env: self };
        p.file()
    }

    /// Resolves a group given by name or by a builder expression.
    pub fn group(&self, expr: &str) -> Result<Nil2Group> {
        let toks = lex(expr, 1)?;
        let mut p = Parser {
            toks,
            pos: 0,
            env: &mut Env {
                defs: self.defs.clone(),
                order: Vec::new(),
            },
        };
        let g = p.group_expr()?;
        if let Some((t, l)) = p.toks.get(p.pos) {
            return err(*l, format!("unexpected {t} after the group expression"));
        }
        Ok(g)
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    env: &'a mut Env,
}

impl Parser<'_> {
    fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .or(self.toks.last())
            .map_or(1, |t| t.1)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn next(&mut self) -> Result<Tok> {
        match self.toks.get(self.pos) {
            Some((t, _)) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => err(self.line(), "unexpected end of input"),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        let l = self.line();
        match self.next()? {
            Tok::Sym(d) if d == c => Ok(()),
            t => err(l, format!("expected '{c}', found {t}")),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        let l = self.line();
        match self.next()? {
            Tok::Ident(s) => Ok(s),
            t => err(l, format!("expected a name, found {t}")),
        }
    }

    fn int(&mut self) -> Result<i64> {
        let l = self.line();
        match self.next()? {
            Tok::Int(n) => Ok(n),
            t => err(l, format!("expected an integer, found {t}")),
        }
    }

    fn file(&mut self) -> Result<()> {
        while self.peek().is_some() {
            if self.eat(';') {
                continue;
            }
            let l = self.line();
            let kw = self.ident()?;
            match kw.as_str() {
                "group" => {
                    let name = self.ident()?;
                    let g = if self.eat('=') { self.group_expr()? } else { self.group_block()? };
                    self.env.insert(name, Def::Group(g), l)?;
                }
                "lie" => {
                    let name = self.ident()?;
                    let r = self.lie_block()?;
                    self.env.insert(name, Def::Lie(r), l)?;
                }
                "qmap" => {
                    let name = self.ident()?;
                    self.expect(':')?;
                    let g = self.group_expr()?;
                    let la = self.line();
                    if self.next()? != Tok::Arrow {
                        return err(la, "expected '->'");
                    }
                    let h = self.group_expr()?;
                    let f = self.qmap_block(&g, &h)?;
                    self.env.insert(name, Def::QMap(f), l)?;
                }
                _ => return err(l, format!("expected 'group', 'lie' or 'qmap', found '{kw}'")),
            }
        }
        Ok(())
    }

    fn value(&mut self) -> Result<Value> {
        let l = self.line();
        match self.next()? {
            Tok::Int(n) => Ok(Value::Int(n)),
            Tok::Sym(open @ ('[' | '(')) => {
                let close = if open == '[' { ']' } else { ')' };
                let mut xs = Vec::new();
                if self.eat(close) {
                    return Ok(Value::List(xs));
                }
                loop {
                    xs.push(self.value()?);
                    if self.eat(close) {
                        return Ok(Value::List(xs));
                    }
                    self.expect(',')?;
                }
            }
            t => err(l, format!("expected a value, found {t}")),
        }
    }

    fn fields(&mut self) -> Result<Vec<Field>> {
        self.expect('{')?;
        let mut out: Vec<Field> = Vec::new();
        loop {
            if self.eat('}') {
                return Ok(out);
            }
            if self.eat(';') {
                continue;
            }
            let line = self.line();
            let name = self.ident()?;
            let index = if self.eat('[') {
                let i = self.int()?;
                self.expect(']')?;
                self.expect('[')?;
                let j = self.int()?;
                self.expect(']')?;
                if i < 1 || j < 1 {
                    return err(line, "indices are 1-based");
                }
                Some((i as usize - 1, j as usize - 1))
            } else {
                None
            };
            self.expect('=')?;
            let value = self.value()?;
            if out.iter().any(|f| f.name == name && f.index == index) {
                return err(line, format!("'{name}' given twice"));
            }
            out.push(Field { name, index, value, line });
        }
    }

    /// `abelianization`, `commutator`, `carry` and one indexed family.
    fn extension_fields(&mut self, family: &str) -> Result<(FGAbelian, FGAbelian, Vec<AbElement>, Vec<Vec<AbElement>>)> {
        let start = self.line();
        let fields = self.fields()?;
        let get = |n: &str| fields.iter().find(|f| f.name == n && f.index.is_none());
        for f in &fields {
            let known = match f.index {
                None => ["abelianization", "commutator", "carry"].contains(&f.name.as_str()),
                Some(_) => f.name == family,
            };
            if !known {
                return err(f.line, format!("unknown field '{}'", f.name));
            }
        }
        let a = match get("abelianization") {
            Some(f) => alg(f.line, FGAbelian::new(&f.value.vector(f.line)?))?,
            None => return err(start, "missing 'abelianization'"),
        };
        let b = match get("commutator") {
            Some(f) => alg(f.line, FGAbelian::new(&f.value.vector(f.line)?))?,
            None => FGAbelian::trivial(),
        };
        let r = a.rank();
        let elem = |v: Vec<i64>, line: usize| -> Result<AbElement> {
            if v.len() != b.rank() {
                return err(line, format!("expected {} coordinates in [G,G], found {}", b.rank(), v.len()));
            }
            alg(line, b.normalize(&v))
        };
        let carry = match get("carry") {
            Some(f) => {
                let rows = f.value.vectors(f.line)?;
                if rows.len() != r {
                    return err(f.line, format!("carry needs {r} entries"));
                }
                rows.into_iter().map(|v| elem(v, f.line)).collect::<Result<_>>()?
            }
            None => vec![b.zero(); r],
        };
        let mut m = vec![vec![b.zero(); r]; r];
        for f in fields.iter().filter(|f| f.index.is_some()) {
            let (i, j) = f.index.expect("indexed");
            if i >= r || j >= r {
                return err(f.line, format!("index out of range for rank {r}"));
            }
            m[i][j] = elem(f.value.vector(f.line)?, f.line)?;
        }
        Ok((a, b, carry, m))
    }

    fn group_block(&mut self) -> Result<Nil2Group> {
        let l = self.line();
        let (a, b, carry, bil) = self.extension_fields("bil")?;
        alg(l, nil2_make(a, b, bil, carry))
    }

    fn lie_block(&mut self) -> Result<Nil2LieRing> {
        let l = self.line();
        let (a, b, carry, bracket) = self.extension_fields("bracket")?;
        alg(l, lie_make(a, b, carry, bracket))
    }

    fn qmap_block(&mut self, g: &Nil2Group, h: &Nil2Group) -> Result<QMap> {
        let l = self.line();
        let fields = self.fields()?;
        let get = |n: &str| fields.iter().find(|f| f.name == n && f.index.is_none());
        for f in &fields {
            let known = match f.index {
                None => ["fab", "fcomm", "gamma"].contains(&f.name.as_str()),
                Some(_) => f.name == "delta",
            };
            if !known {
                return err(f.line, format!("unknown field '{}'", f.name));
            }
        }
        let hom = |n: &str, s: &FGAbelian, t: &FGAbelian| -> Result<AbHom> {
            match get(n) {
                Some(f) => alg(f.line, AbHom::from_matrix(s.clone(), t.clone(), &f.value.vectors(f.line)?)),
                None => Ok(AbHom::zero(s, t)),
            }
        };
        let fab = hom("fab", g.ab(), h.ab())?;
        let fcomm = hom("fcomm", g.comm(), h.comm())?;
        let hb = h.comm();
        let r = g.rank();
        let elem = |v: Vec<i64>, line: usize| -> Result<AbElement> {
            if v.len() != hb.rank() {
                return err(line, format!("expected {} coordinates in [H,H], found {}", hb.rank(), v.len()));
            }
            alg(line, hb.normalize(&v))
        };
        let gamma = match get("gamma") {
            Some(f) => {
                let rows = f.value.vectors(f.line)?;
                if rows.len() != r {
                    return err(f.line, format!("gamma needs {r} entries"));
                }
                rows.into_iter().map(|v| elem(v, f.line)).collect::<Result<_>>()?
            }
            None => vec![hb.zero(); r],
        };
        let mut delta = vec![vec![hb.zero(); r]; r];
        for f in fields.iter().filter(|f| f.index.is_some()) {
            let (i, j) = f.index.expect("indexed");
            if i >= r || j >= r {
                return err(f.line, format!("index out of range for rank {r}"));
            }
            delta[i][j] = elem(f.value.vector(f.line)?, f.line)?;
        }
        alg(l, qmap_make(g, h, fab, fcomm, gamma, delta))
    }

    fn args(&mut self) -> Result<Vec<Arg>> {
        self.expect('(')?;
        let mut out = Vec::new();
        if self.eat(')') {
            return Ok(out);
        }
        loop {
            if let Some(Tok::Int(n)) = self.peek() {
                out.push(Arg::Int(*n));
                self.pos += 1;
            } else {
                out.push(Arg::Group(self.group_expr()?));
            }
            if self.eat(')') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn group_expr(&mut self) -> Result<Nil2Group> {
        let l = self.line();
        let name = self.ident()?;
        if name == "oracle" {
            return self.oracle_block();
        }
        if self.peek() != Some(&Tok::Sym('(')) {
            return match self.env.get(&name) {
                Some(Def::Group(g)) => Ok(g.clone()),
                Some(d) => err(l, format!("'{name}' is a {}, not a group", d.kind())),
                None => err(l, format!("unknown group '{name}'")),
            };
        }
        let args = self.args()?;
        let ints = |n: usize| -> Result<Vec<i64>> {
            let v: Vec<i64> = args
                .iter()
                .filter_map(|a| match a {
                    Arg::Int(k) => Some(*k),
                    Arg::Group(_) => None,
                })
                .collect();
            if v.len() != args.len() || (n > 0 && v.len() != n) {
                return err(l, format!("{name} expects {n} integer arguments"));
            }
            Ok(v)
        };
        let groups = || -> Result<(Nil2Group, Nil2Group)> {
            match args.as_slice() {
                [Arg::Group(x), Arg::Group(y)] => Ok((x.clone(), y.clone())),
                _ => err(l, format!("{name} expects two groups")),
            }
        };
        match name.as_str() {
            "semidirect" => {
                let v = ints(3)?;
                let o = alg(l, nil2_semidirect(v[0], v[1], v[2]))?;
                Ok(alg(l, nil2_canonicalize_finite(&o))?.group)
            }
            "coproduct" => {
                let (x, y) = groups()?;
                Ok(alg(l, nil2_coproduct(&x, &y))?.group)
            }
            "product" => {
                let (x, y) = groups()?;
                Ok(alg(l, nil2_product(&x, &y))?.group)
            }
            "free" => {
                let v = ints(1)?;
                if !(0..=16).contains(&v[0]) {
                    return err(l, "free(n) needs 0 <= n <= 16");
                }
                alg(l, nil2_free(v[0] as usize))
            }
            "cyclic" => alg(l, cyclic(ints(1)?[0])),
            "abelian" => Ok(Nil2Group::abelian(&alg(l, FGAbelian::new(&ints(0)?))?)),
            _ => err(l, format!("unknown builder '{name}'")),
        }
    }

    /// `oracle { elements = [..]; id = e; a * b = c; ... }`.
    fn oracle_block(&mut self) -> Result<Nil2Group> {
        let start = self.line();
        self.expect('{')?;
        let mut labels: Vec<String> = Vec::new();
        let mut declared = false;
        let mut id = None;
        let mut entries = Vec::new();
        let label = |p: &mut Self| -> Result<String> {
            let l = p.line();
            match p.next()? {
                Tok::Ident(s) => Ok(s),
                Tok::Int(n) => Ok(n.to_string()),
                t => err(l, format!("expected an element label, found {t}")),
            }
        };
        loop {
            if self.eat('}') {
                break;
            }
            if self.eat(';') {
                continue;
            }
            let l = self.line();
            let x = label(self)?;
            if x == "elements" && self.eat('=') {
                self.expect('[')?;
                while !self.eat(']') {
                    labels.push(label(self)?);
                    self.eat(',');
                }
                declared = true;
            } else if x == "id" && self.eat('=') {
                id = Some((label(self)?, l));
            } else {
                self.expect('*')?;
                let y = label(self)?;
                self.expect('=')?;
                let z = label(self)?;
                entries.push((x, y, z, l));
            }
        }
        let Some((id, idl)) = id else {
            return err(start, "oracle block needs an 'id = <label>' line");
        };
        if !declared {
            labels.push(id.clone());
            for (x, y, z, _) in &entries {
                for s in [x, y, z] {
                    if !labels.contains(s) {
                        labels.push(s.clone());
                    }
                }
            }
        }
        let n = labels.len();
        let pos = |s: &str, l: usize| -> Result<usize> {
            match labels.iter().position(|t| t == s) {
                Some(k) => Ok(k),
                None => err(l, format!("unknown element '{s}'")),
            }
        };
        let mut rows = vec![vec![usize::MAX; n]; n];
        for (x, y, z, l) in &entries {
            let (i, j, k) = (pos(x, *l)?, pos(y, *l)?, pos(z, *l)?);
            if rows[i][j] != usize::MAX && rows[i][j] != k {
                return err(*l, format!("{x} * {y} given twice"));
            }
            rows[i][j] = k;
        }
        for (i, row) in rows.iter().enumerate() {
            if let Some(j) = row.iter().position(|&k| k == usize::MAX) {
                return err(start, format!("table is not total: {} * {} missing", labels[i], labels[j]));
            }
        }
        let o = alg(start, GroupOracle::new(labels.clone(), rows, pos(&id, idl)?))?;
        Ok(alg(start, nil2_canonicalize_finite(&o))?.group)
    }
}

enum Arg {
    Int(i64),
    Group(Nil2Group),
}
