//! A small line-oriented language for formal matrix ring specs.
//!
//! ```text
//! # Wood's basic ring
//! ring wood-basic {
//!   base K = GF(2)
//!   bimodule E = zero_product(K)
//!   matrix = [[K, E], [E, K]]
//!   expand = [2, 1]
//! }
//! ```
//!
//! Bases are `GF(q)`, `Z/p^k`, `GF(q)[x]/(x^m)` and `trivext(S, B)`.
//! Bimodules are `zero_product(S)`, `regular(S)` and `power(S, k)`, where
//! `S` is a declared base or a literal. Diagonal matrix entries name bases,
//! the others name bimodules or are `0`.

use std::collections::HashMap;
use std::fmt;

use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::formal::{BimoduleSpec, FormalMatrixSpec};
use crate::local::{make_local, ExtModule, LocalRingSpec};

/// Source position, 1-based. Spans never take part in equality.
#[derive(Debug, Clone, Copy, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl Eq for Span {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseExpr {
    Gf(u32),
    Zpk(u32, u32),
    Truncated(u32, u32),
    TrivExt { base: String, module: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseRef {
    Named(String),
    Literal(BaseExpr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BimoduleExpr {
    ZeroProduct(BaseRef),
    Regular(BaseRef),
    Power(BaseRef, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decl<T> {
    pub name: String,
    pub value: T,
    pub span: Span,
}

/// A matrix entry; `None` is `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub name: Option<String>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpecAst {
    pub name: String,
    pub bases: Vec<Decl<BaseExpr>>,
    pub bimodules: Vec<Decl<BimoduleExpr>>,
    pub matrix: Vec<Vec<Entry>>,
    pub expand: Option<Vec<usize>>,
}

impl RingSpecAst {
    pub fn order(&self) -> usize {
        self.matrix.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Punct(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Punct(c) => write!(f, "`{c}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn syntax(span: Span, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: span.line,
        col: span.col,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let span = Span { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
        } else if c.is_ascii_digit() {
            let mut n: u64 = 0;
            while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add(d as u64))
                    .ok_or_else(|| syntax(span, "integer literal too large"))?;
                chars.next();
                col += 1;
            }
            out.push((Tok::Int(n), span));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars
                .peek()
                .filter(|c| c.is_ascii_alphanumeric() || **c == '_' || **c == '-')
            {
                s.push(c);
                chars.next();
                col += 1;
            }
            out.push((Tok::Ident(s), span));
        } else if "{}[](),=/^".contains(c) {
            chars.next();
            col += 1;
            out.push((Tok::Punct(c), span));
        } else {
            return Err(syntax(span, format!("unexpected character `{c}`")));
        }
    }
    out.push((Tok::Eof, Span { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn punct(&mut self, c: char) -> Result<()> {
        match self.bump() {
            (Tok::Punct(p), _) if p == c => Ok(()),
            (t, span) => Err(syntax(span, format!("expected `{c}`, found {t}"))),
        }
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Punct(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(String, Span)> {
        match self.bump() {
            (Tok::Ident(s), span) => Ok((s, span)),
            (t, span) => Err(syntax(span, format!("expected a name, found {t}"))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        match self.bump() {
            (Tok::Ident(s), _) if s == kw => Ok(()),
            (t, span) => Err(syntax(span, format!("expected `{kw}`, found {t}"))),
        }
    }

    fn int(&mut self) -> Result<u32> {
        match self.bump() {
            (Tok::Int(n), span) => {
                u32::try_from(n).map_err(|_| syntax(span, "integer literal too large"))
            }
            (t, span) => Err(syntax(span, format!("expected an integer, found {t}"))),
        }
    }

    fn ring(&mut self) -> Result<RingSpecAst> {
        self.keyword("ring")?;
        let (name, _) = self.ident()?;
        self.punct('{')?;
        let mut ast = RingSpecAst {
            name,
            bases: Vec::new(),
            bimodules: Vec::new(),
            matrix: Vec::new(),
            expand: None,
        };
        let mut have_matrix = false;
        let close =
            loop {
                let span = self.span();
                match self.bump().0 {
                    Tok::Punct('}') => break span,
                    Tok::Ident(kw) if kw == "base" => {
                        let (name, span) = self.ident()?;
                        self.punct('=')?;
                        let value = self.base_expr(true)?;
                        ast.bases.push(Decl { name, value, span });
                    }
                    Tok::Ident(kw) if kw == "bimodule" => {
                        let (name, span) = self.ident()?;
                        self.punct('=')?;
                        let value = self.bimodule_expr()?;
                        ast.bimodules.push(Decl { name, value, span });
                    }
                    Tok::Ident(kw) if kw == "matrix" => {
                        if have_matrix {
                            return Err(syntax(span, "matrix declared twice"));
                        }
                        have_matrix = true;
                        self.punct('=')?;
                        ast.matrix = self.matrix()?;
                    }
                    Tok::Ident(kw) if kw == "expand" => {
                        if ast.expand.is_some() {
                            return Err(syntax(span, "expand declared twice"));
                        }
                        self.punct('=')?;
                        self.punct('[')?;
                        let mut mu = vec![self.int()? as usize];
                        while self.eat_punct(',') {
                            mu.push(self.int()? as usize);
                        }
                        self.punct(']')?;
                        ast.expand = Some(mu);
                    }
                    t => return Err(syntax(
                        span,
                        format!(
                            "expected `base`, `bimodule`, `matrix`, `expand` or `}}`, found {t}"
                        ),
                    )),
                }
            };
        if !have_matrix {
            return Err(syntax(close, "missing `matrix` declaration"));
        }
        if let Some((i, row)) = ast
            .matrix
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != ast.matrix.len())
        {
            return Err(syntax(
                row[0].span,
                format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    ast.matrix.len()
                ),
            ));
        }
        Ok(ast)
    }

    fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    fn base_expr(&mut self, allow_trivext: bool) -> Result<BaseExpr> {
        let (head, span) = self.ident()?;
        match head.as_str() {
            "GF" => {
                self.punct('(')?;
                let q = self.int()?;
                self.punct(')')?;
                if !self.eat_punct('[') {
                    return Ok(BaseExpr::Gf(q));
                }
                self.keyword("x")?;
                self.punct(']')?;
                self.punct('/')?;
                self.punct('(')?;
                self.keyword("x")?;
                self.punct('^')?;
                let m = self.int()?;
                self.punct(')')?;
                Ok(BaseExpr::Truncated(q, m))
            }
            "Z" => {
                self.punct('/')?;
                let n = self.int()?;
                if self.eat_punct('^') {
                    return Ok(BaseExpr::Zpk(n, self.int()?));
                }
                Ok(BaseExpr::Zpk(n, 1))
            }
            "trivext" if allow_trivext => {
                self.punct('(')?;
                let (base, _) = self.ident()?;
                self.punct(',')?;
                let (module, _) = self.ident()?;
                self.punct(')')?;
                Ok(BaseExpr::TrivExt { base, module })
            }
            _ => Err(syntax(span, format!("unknown base ring `{head}`"))),
        }
    }

    fn base_ref(&mut self) -> Result<BaseRef> {
        let save = self.pos;
        let (name, _) = self.ident()?;
        if matches!(name.as_str(), "GF" | "Z") && matches!(self.peek(), Tok::Punct('(' | '/')) {
            self.pos = save;
            return Ok(BaseRef::Literal(self.base_expr(false)?));
        }
        Ok(BaseRef::Named(name))
    }

    fn bimodule_expr(&mut self) -> Result<BimoduleExpr> {
        let (head, span) = self.ident()?;
        self.punct('(')?;
        let base = self.base_ref()?;
        let expr = match head.as_str() {
            "zero_product" => BimoduleExpr::ZeroProduct(base),
            "regular" => BimoduleExpr::Regular(base),
            "power" => {
                self.punct(',')?;
                BimoduleExpr::Power(base, self.int()?)
            }
            _ => return Err(syntax(span, format!("unknown bimodule `{head}`"))),
        };
        self.punct(')')?;
        Ok(expr)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<Entry>>> {
        self.punct('[')?;
        let mut rows = vec![self.row()?];
        while self.eat_punct(',') {
            rows.push(self.row()?);
        }
        self.punct(']')?;
        Ok(rows)
    }

    fn row(&mut self) -> Result<Vec<Entry>> {
        self.punct('[')?;
        let mut row = vec![self.entry()?];
        while self.eat_punct(',') {
            row.push(self.entry()?);
        }
        self.punct(']')?;
        Ok(row)
    }

    fn entry(&mut self) -> Result<Entry> {
        match self.bump() {
            (Tok::Int(0), span) => Ok(Entry { name: None, span }),
            (Tok::Ident(s), span) => Ok(Entry {
                name: Some(s),
                span,
            }),
            (t, span) => Err(syntax(span, format!("expected a name or `0`, found {t}"))),
        }
    }
}

pub fn parse_spec(text: &str) -> Result<RingSpecAst> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let ast = p.ring()?;
    match p.bump() {
        (Tok::Eof, _) => Ok(ast),
        (t, span) => Err(syntax(span, format!("unexpected {t} after the ring"))),
    }
}

/// Any number of consecutive `ring` blocks.
pub fn parse_specs(text: &str) -> Result<Vec<RingSpecAst>> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let mut out = Vec::new();
    while !p.at_eof() {
        out.push(p.ring()?);
    }
    Ok(out)
}

fn unresolved(name: &str, span: Span, message: impl Into<String>) -> Error {
    Error::Resolution {
        name: name.to_string(),
        line: span.line,
        col: span.col,
        message: message.into(),
    }
}

struct Resolver<'a> {
    bases: HashMap<&'a str, &'a Decl<BaseExpr>>,
    bimodules: HashMap<&'a str, &'a Decl<BimoduleExpr>>,
    visiting: Vec<&'a str>,
}

impl<'a> Resolver<'a> {
    fn new(ast: &'a RingSpecAst) -> Result<Resolver<'a>> {
        let mut bases = HashMap::new();
        let mut bimodules = HashMap::new();
        for d in &ast.bases {
            if bases.insert(d.name.as_str(), d).is_some() {
                return Err(unresolved(&d.name, d.span, "declared twice"));
            }
        }
        for d in &ast.bimodules {
            if bases.contains_key(d.name.as_str()) || bimodules.insert(d.name.as_str(), d).is_some()
            {
                return Err(unresolved(&d.name, d.span, "declared twice"));
            }
        }
        Ok(Resolver {
            bases,
            bimodules,
            visiting: Vec::new(),
        })
    }

    fn base(&mut self, name: &'a str, span: Span) -> Result<LocalRingSpec> {
        let decl = *self
            .bases
            .get(name)
            .ok_or_else(|| unresolved(name, span, "no base ring of this name"))?;
        if self.visiting.contains(&name) {
            return Err(unresolved(name, decl.span, "cyclic definition"));
        }
        self.visiting.push(name);
        let out = self.base_expr(&decl.value, decl.span);
        self.visiting.pop();
        out
    }

    fn base_expr(&mut self, expr: &'a BaseExpr, span: Span) -> Result<LocalRingSpec> {
        Ok(match expr {
            BaseExpr::Gf(q) => LocalRingSpec::Gf { q: *q },
            BaseExpr::Zpk(n, 1) => match crate::local::prime_power(*n) {
                Some((p, k)) => LocalRingSpec::Zpk { p, k },
                None => LocalRingSpec::Zpk { p: *n, k: 1 },
            },
            BaseExpr::Zpk(p, k) => LocalRingSpec::Zpk { p: *p, k: *k },
            BaseExpr::Truncated(q, m) => LocalRingSpec::TruncatedPoly { q: *q, m: *m },
            BaseExpr::TrivExt { base, module } => {
                let s = self.base(base, span)?;
                let (b, m) = self.bimodule_base(module, span)?;
                if b != s {
                    return Err(unresolved(
                        module,
                        span,
                        format!("is a bimodule over {b}, not over {s}"),
                    ));
                }
                LocalRingSpec::TrivialExt {
                    base: Box::new(s),
                    module: match m {
                        BimoduleExpr::Power(_, k) => ExtModule::Power(*k),
                        _ => ExtModule::Regular,
                    },
                }
            }
        })
    }

    fn base_ref(&mut self, r: &'a BaseRef, span: Span) -> Result<LocalRingSpec> {
        match r {
            BaseRef::Named(n) => self.base(n, span),
            BaseRef::Literal(e) => self.base_expr(e, span),
        }
    }

    fn bimodule_base(
        &mut self,
        name: &'a str,
        span: Span,
    ) -> Result<(LocalRingSpec, &'a BimoduleExpr)> {
        let decl = *self
            .bimodules
            .get(name)
            .ok_or_else(|| unresolved(name, span, "no bimodule of this name"))?;
        let base = match &decl.value {
            BimoduleExpr::ZeroProduct(r) | BimoduleExpr::Regular(r) | BimoduleExpr::Power(r, _) => {
                r
            }
        };
        Ok((self.base_ref(base, decl.span)?, &decl.value))
    }

    fn entry(&mut self, name: &'a str, span: Span) -> Result<BimoduleSpec> {
        if self.bases.contains_key(name) {
            return Err(unresolved(
                name,
                span,
                "a base ring can only appear on the diagonal",
            ));
        }
        let (base, expr) = self.bimodule_base(name, span)?;
        Ok(match expr {
            BimoduleExpr::ZeroProduct(_) => BimoduleSpec::zero_product(base),
            BimoduleExpr::Regular(_) => BimoduleSpec::regular(base),
            BimoduleExpr::Power(_, k) => {
                BimoduleSpec::Table(Bimodule::power(&make_local(&base)?, *k as usize))
            }
        })
    }
}

/// Resolves names into a [`FormalMatrixSpec`]; does not build the ring.
pub fn resolve(ast: &RingSpecAst) -> Result<FormalMatrixSpec> {
    let mut r = Resolver::new(ast)?;
    let n = ast.order();
    let mut corners = Vec::with_capacity(n);
    for (i, row) in ast.matrix.iter().enumerate() {
        let e = &row[i];
        let Some(name) = e.name.as_deref() else {
            return Err(unresolved(
                "0",
                e.span,
                "diagonal entries must name a base ring",
            ));
        };
        if !r.bases.contains_key(name) {
            return Err(unresolved(
                name,
                e.span,
                "diagonal entries must name a base ring",
            ));
        }
        corners.push(r.base(name, e.span)?);
    }
    let mut grid = Vec::with_capacity(n);
    for (i, row) in ast.matrix.iter().enumerate() {
        let mut out = Vec::with_capacity(n);
        for (j, e) in row.iter().enumerate() {
            out.push(match (&e.name, i == j) {
                (_, true) => BimoduleSpec::Corner,
                (None, false) => BimoduleSpec::Zero,
                (Some(name), false) => r.entry(name, e.span)?,
            });
        }
        grid.push(out);
    }
    let spec = FormalMatrixSpec::new(corners, grid);
    Ok(match &ast.expand {
        Some(mu) => spec.with_expand(mu.clone()),
        None => spec,
    })
}

pub fn parse_and_resolve(text: &str) -> Result<(String, FormalMatrixSpec)> {
    let ast = parse_spec(text)?;
    let spec = resolve(&ast)?;
    Ok((ast.name, spec))
}

/// Every ring of a multi-ring file; names must be distinct.
pub fn parse_corpus(text: &str) -> Result<Vec<(String, FormalMatrixSpec)>> {
    let asts = parse_specs(text)?;
    let mut out: Vec<(String, FormalMatrixSpec)> = Vec::with_capacity(asts.len());
    for ast in &asts {
        if out.iter().any(|(n, _)| *n == ast.name) {
            return Err(Error::InvalidParameters(format!(
                "ring `{}` defined twice",
                ast.name
            )));
        }
        out.push((ast.name.clone(), resolve(ast)?));
    }
    Ok(out)
}

impl fmt::Display for BaseExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseExpr::Gf(q) => write!(f, "GF({q})"),
            BaseExpr::Zpk(p, k) => write!(f, "Z/{p}^{k}"),
            BaseExpr::Truncated(q, m) => write!(f, "GF({q})[x]/(x^{m})"),
            BaseExpr::TrivExt { base, module } => write!(f, "trivext({base}, {module})"),
        }
    }
}

impl fmt::Display for BaseRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRef::Named(n) => f.write_str(n),
            BaseRef::Literal(e) => e.fmt(f),
        }
    }
}

impl fmt::Display for BimoduleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BimoduleExpr::ZeroProduct(b) => write!(f, "zero_product({b})"),
            BimoduleExpr::Regular(b) => write!(f, "regular({b})"),
            BimoduleExpr::Power(b, k) => write!(f, "power({b}, {k})"),
        }
    }
}

impl fmt::Display for RingSpecAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {} {{", self.name)?;
        for d in &self.bases {
            writeln!(f, "  base {} = {}", d.name, d.value)?;
        }
        for d in &self.bimodules {
            writeln!(f, "  bimodule {} = {}", d.name, d.value)?;
        }
        let rows: Vec<String> = self
            .matrix
            .iter()
            .map(|row| {
                let cells: Vec<&str> = row
                    .iter()
                    .map(|e| e.name.as_deref().unwrap_or("0"))
                    .collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        writeln!(f, "  matrix = [{}]", rows.join(", "))?;
        if let Some(mu) = &self.expand {
            let mu: Vec<String> = mu.iter().map(usize::to_string).collect();
            writeln!(f, "  expand = [{}]", mu.join(", "))?;
        }
        f.write_str("}\n")
    }
}

fn literal(spec: &LocalRingSpec) -> Option<BaseExpr> {
    Some(match spec {
        LocalRingSpec::Gf { q } => BaseExpr::Gf(*q),
        LocalRingSpec::Zpk { p, k } => BaseExpr::Zpk(*p, *k),
        LocalRingSpec::TruncatedPoly { q, m } => BaseExpr::Truncated(*q, *m),
        LocalRingSpec::TrivialExt { .. } => return None,
    })
}

/// Source text for a spec built from catalog bases and `zero_product` /
/// `regular` entries; `None` for table bimodules or explicit products.
pub fn to_source(name: &str, spec: &FormalMatrixSpec) -> Option<String> {
    if !spec.products.is_empty() {
        return None;
    }
    let mut ast = RingSpecAst {
        name: name.to_string(),
        bases: Vec::new(),
        bimodules: Vec::new(),
        matrix: Vec::new(),
        expand: spec.expand.clone(),
    };
    let mut base_names: Vec<(LocalRingSpec, String)> = Vec::new();
    fn intern(
        ast: &mut RingSpecAst,
        names: &mut Vec<(LocalRingSpec, String)>,
        s: &LocalRingSpec,
    ) -> Option<String> {
        if let Some((_, n)) = names.iter().find(|(b, _)| b == s) {
            return Some(n.clone());
        }
        let value = match s {
            LocalRingSpec::TrivialExt { base, module } => {
                let b = intern(ast, names, base)?;
                let m = format!("M{}", ast.bimodules.len());
                let value = match module {
                    ExtModule::Regular => BimoduleExpr::Regular(BaseRef::Named(b.clone())),
                    ExtModule::Power(k) => BimoduleExpr::Power(BaseRef::Named(b.clone()), *k),
                };
                ast.bimodules.push(Decl {
                    name: m.clone(),
                    value,
                    span: Span::default(),
                });
                BaseExpr::TrivExt { base: b, module: m }
            }
            other => literal(other)?,
        };
        let n = format!("S{}", names.len());
        names.push((s.clone(), n.clone()));
        ast.bases.push(Decl {
            name: n.clone(),
            value,
            span: Span::default(),
        });
        Some(n)
    }
    let mut bim_names: Vec<(BimoduleSpec, String)> = Vec::new();
    for (i, row) in spec.bimodules.iter().enumerate() {
        let mut out = Vec::new();
        for b in row {
            let name = match b {
                BimoduleSpec::Corner => Some(intern(&mut ast, &mut base_names, &spec.corners[i])?),
                BimoduleSpec::Zero => None,
                BimoduleSpec::Ring {
                    base,
                    multiplicative,
                } => {
                    if let Some((_, n)) = bim_names.iter().find(|(x, _)| x == b) {
                        Some(n.clone())
                    } else {
                        let bn = intern(&mut ast, &mut base_names, base)?;
                        let n = format!("B{}", bim_names.len());
                        let value = if *multiplicative {
                            BimoduleExpr::Regular(BaseRef::Named(bn))
                        } else {
                            BimoduleExpr::ZeroProduct(BaseRef::Named(bn))
                        };
                        ast.bimodules.push(Decl {
                            name: n.clone(),
                            value,
                            span: Span::default(),
                        });
                        bim_names.push((b.clone(), n.clone()));
                        Some(n)
                    }
                }
                BimoduleSpec::Table(_) => return None,
            };
            out.push(Entry {
                name,
                span: Span::default(),
            });
        }
        ast.matrix.push(out);
    }
    Some(ast.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    const WOOD_BASIC: &str = "# Wood's basic ring\nring wood-basic {\n  base K = GF(2)\n  bimodule E = zero_product(K)\n  matrix = [[K, E], [E, K]]\n}\n";

    #[test]
    fn parses_wood_basic() {
        let ast = parse_spec(WOOD_BASIC).unwrap();
        assert_eq!(ast.name, "wood-basic");
        assert_eq!(ast.order(), 2);
        assert_eq!(ast.expand, None);
        assert_eq!(resolve(&ast).unwrap(), fixtures::wood_basic_spec());
    }

    #[test]
    fn several_rings() {
        let text = format!(
            "{WOOD_BASIC}\n{}",
            WOOD_BASIC.replace("wood-basic", "other")
        );
        let rings = parse_corpus(&text).unwrap();
        assert_eq!(rings.len(), 2);
        assert_eq!(rings[1].0, "other");
        assert!(parse_spec(&text).is_err());
        assert!(parse_corpus(&format!("{WOOD_BASIC}{WOOD_BASIC}")).is_err());
        assert!(parse_corpus("").unwrap().is_empty());
    }

    #[test]
    fn parses_expand() {
        let text = WOOD_BASIC.replace("]]\n", "]]\n  expand = [2, 1]\n");
        let ast = parse_spec(&text).unwrap();
        assert_eq!(ast.expand, Some(vec![2, 1]));
        assert_eq!(
            resolve(&ast).unwrap(),
            fixtures::wood_basic_spec().with_expand(vec![2, 1])
        );
    }

    #[test]
    fn base_literals() {
        let text = "ring r {\n base A = Z/2^2\n base B = GF(2)[x]/(x^2)\n base C = Z/9\n base D = trivext(K, M)\n base K = GF(4)\n bimodule M = power(K, 2)\n bimodule L = regular(GF(3))\n matrix = [[A, 0, 0, 0], [0, B, 0, 0], [0, 0, C, 0], [0, 0, 0, D]]\n}";
        let spec = resolve(&parse_spec(text).unwrap()).unwrap();
        assert_eq!(spec.corners[0], LocalRingSpec::Zpk { p: 2, k: 2 });
        assert_eq!(spec.corners[1], LocalRingSpec::TruncatedPoly { q: 2, m: 2 });
        assert_eq!(spec.corners[2], LocalRingSpec::Zpk { p: 3, k: 2 });
        assert_eq!(
            spec.corners[3],
            LocalRingSpec::TrivialExt {
                base: Box::new(LocalRingSpec::gf(4)),
                module: ExtModule::Power(2)
            }
        );
    }

    #[test]
    fn resolution_errors() {
        let undeclared = WOOD_BASIC.replace("[[K, E], [E, K]]", "[[K, F], [E, K]]");
        match parse_and_resolve(&undeclared) {
            Err(Error::Resolution {
                name, line, col, ..
            }) => {
                assert_eq!(name, "F");
                assert_eq!((line, col), (5, 17));
            }
            other => panic!("{other:?}"),
        }
        let base_off_diag = WOOD_BASIC.replace("[[K, E], [E, K]]", "[[K, K], [E, K]]");
        assert!(matches!(
            parse_and_resolve(&base_off_diag),
            Err(Error::Resolution { .. })
        ));
        let cyclic =
            "ring r {\n base A = trivext(A, M)\n bimodule M = regular(A)\n matrix = [[A]]\n}";
        assert!(matches!(
            parse_and_resolve(cyclic),
            Err(Error::Resolution { .. })
        ));
        let mismatch = "ring r {\n base K = GF(2)\n base A = trivext(K, M)\n bimodule M = regular(GF(4))\n matrix = [[A]]\n}";
        assert!(matches!(
            parse_and_resolve(mismatch),
            Err(Error::Resolution { .. })
        ));
        let dup = "ring r {\n base K = GF(2)\n bimodule K = regular(K)\n matrix = [[K]]\n}";
        assert!(matches!(
            parse_and_resolve(dup),
            Err(Error::Resolution { .. })
        ));
    }

    #[test]
    fn syntax_errors() {
        for (text, line, col) in [
            ("ring r {\n base K = GF(2\n matrix = [[K]]\n}", 3, 2),
            ("ring r {\n base K = GF(2)\n}", 3, 1),
            ("ring r {\n base K = GF(2)\n matrix = [[K, 0]]\n}", 3, 13),
            ("ring r {\n base K = Q(2)\n matrix = [[K]]\n}", 2, 11),
            ("ring r { matrix = [[K]] } extra", 1, 27),
            ("ring r {\n base K = GF(99999999999)\n}", 2, 14),
            ("ring r { ! }", 1, 10),
        ] {
            match parse_spec(text) {
                Err(Error::Syntax {
                    line: l, col: c, ..
                }) => assert_eq!((l, c), (line, col), "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn to_source_round_trips() {
        for spec in [
            fixtures::wood_basic_spec().with_expand(vec![2, 1]),
            fixtures::b3_spec(),
            fixtures::t2_spec(),
            FormalMatrixSpec::local(LocalRingSpec::TrivialExt {
                base: Box::new(LocalRingSpec::gf(2)),
                module: ExtModule::Power(2),
            }),
        ] {
            let text = to_source("x", &spec).unwrap();
            assert_eq!(parse_and_resolve(&text).unwrap().1, spec, "{text}");
        }
    }

    fn ident() -> impl Strategy<Value = String> {
        "[A-Za-z_][A-Za-z0-9_-]{0,6}".prop_filter("keyword", |s| {
            !matches!(
                s.as_str(),
                "GF" | "Z" | "x" | "ring" | "base" | "bimodule" | "matrix" | "expand" | "trivext"
            )
        })
    }

    fn base_expr() -> impl Strategy<Value = BaseExpr> {
        prop_oneof![
            (1u32..100).prop_map(BaseExpr::Gf),
            (1u32..100, 1u32..5).prop_map(|(p, k)| BaseExpr::Zpk(p, k)),
            (1u32..100, 1u32..5).prop_map(|(q, m)| BaseExpr::Truncated(q, m)),
            (ident(), ident()).prop_map(|(base, module)| BaseExpr::TrivExt { base, module }),
        ]
    }

    fn bimodule_expr() -> impl Strategy<Value = BimoduleExpr> {
        let r = prop_oneof![
            ident().prop_map(BaseRef::Named),
            (1u32..50).prop_map(|q| BaseRef::Literal(BaseExpr::Gf(q))),
            (1u32..50, 1u32..4).prop_map(|(q, m)| BaseRef::Literal(BaseExpr::Truncated(q, m))),
        ];
        (r, 0u8..3, 1u32..4).prop_map(|(r, kind, k)| match kind {
            0 => BimoduleExpr::ZeroProduct(r),
            1 => BimoduleExpr::Regular(r),
            _ => BimoduleExpr::Power(r, k),
        })
    }

    fn ast() -> impl Strategy<Value = RingSpecAst> {
        (1usize..4).prop_flat_map(|n| {
            (
                ident(),
                prop::collection::vec((ident(), base_expr()), 0..3),
                prop::collection::vec((ident(), bimodule_expr()), 0..3),
                prop::collection::vec(prop::collection::vec(prop::option::of(ident()), n), n),
                prop::option::of(prop::collection::vec(1usize..4, 1..4)),
            )
                .prop_map(|(name, bases, bims, grid, expand)| RingSpecAst {
                    name,
                    bases: bases
                        .into_iter()
                        .map(|(name, value)| Decl {
                            name,
                            value,
                            span: Span::default(),
                        })
                        .collect(),
                    bimodules: bims
                        .into_iter()
                        .map(|(name, value)| Decl {
                            name,
                            value,
                            span: Span::default(),
                        })
                        .collect(),
                    matrix: grid
                        .into_iter()
                        .map(|row| {
                            row.into_iter()
                                .map(|name| Entry {
                                    name,
                                    span: Span::default(),
                                })
                                .collect()
                        })
                        .collect(),
                    expand,
                })
        })
    }

    proptest! {
        #[test]
        fn pretty_print_round_trips(a in ast()) {
            let text = a.to_string();
            prop_assert_eq!(parse_spec(&text).unwrap(), a);
        }

        #[test]
        fn parsing_is_total(text in "\\PC{0,80}") {
            let _ = parse_spec(&text);
        }

        #[test]
        fn parsing_is_total_near_valid(cut in 0usize..120, junk in "[\\[\\](){},=/^0-9a-zA-Z# \n]{0,6}") {
            let mut text = WOOD_BASIC.to_string();
            let at = cut.min(text.len());
            text.insert_str(at, &junk);
            let _ = parse_and_resolve(&text);
        }
    }
}
