//! The surface language: a lexer, a recursive-descent parser producing a
//! [`Program`], and a printer whose output parses back to the same program.
//!
//! ```text
//! 0cells a b;
//! 1cell f: a -> b;
//! normalize (f + 0@a->b);
//! check [sym(f, f)] == [id(f + f)];
//! ```

use std::fmt;

use num_bigint::BigInt;

use crate::expr::OneCellExpr;
use crate::signature::ZeroCellId;
use crate::symbol::Symbol;
use crate::twocell::TwoCellExpr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub pos: Pos,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteKind {
    Pc,
    Strict,
    Instance,
}

impl SuiteKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteKind::Pc => "pc",
            SuiteKind::Strict => "strict",
            SuiteKind::Instance => "instance",
        }
    }
}

/// One apex element of a span literal: `x: p -> u`.
pub type SpanRow = (Symbol, Symbol, Symbol);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Carrier {
    /// Natural numbers, written `N{..}`.
    Naturals,
    /// Integers, written `Z{..}`.
    Integers,
    /// Booleans (or, and), written `B{..}` with values 0 and 1.
    Booleans,
}

impl Carrier {
    fn letter(self) -> &'static str {
        match self {
            Carrier::Naturals => "N",
            Carrier::Integers => "Z",
            Carrier::Booleans => "B",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceDecl {
    Semiring {
        carrier: Carrier,
        values: Vec<(Symbol, BigInt)>,
    },
    /// Sets for 0-cells, spans as `apex: left -> right` rows, and apex maps
    /// for generating 2-cells.
    Span {
        sets: Vec<(Symbol, Vec<Symbol>)>,
        spans: Vec<(Symbol, Vec<SpanRow>)>,
        maps: Vec<(Symbol, Vec<usize>)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceRef {
    Named(Symbol),
    Inline(InstanceDecl),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    ZeroCells(Vec<Symbol>),
    Gen1 {
        name: Symbol,
        src: Symbol,
        tgt: Symbol,
    },
    Gen2 {
        name: Symbol,
        src: OneCellExpr,
        tgt: OneCellExpr,
    },
    Instance {
        name: Symbol,
        decl: InstanceDecl,
    },
    Normalize(OneCellExpr),
    Check(Vec<TwoCellExpr>, Vec<TwoCellExpr>),
    Suite {
        kind: SuiteKind,
        depth: Option<usize>,
        seed: Option<u64>,
        samples: Option<usize>,
    },
    Eval {
        expr: OneCellExpr,
        instance: InstanceRef,
    },
    StrictifyReport,
}

impl Statement {
    pub fn is_declaration(&self) -> bool {
        matches!(
            self,
            Statement::ZeroCells(_) | Statement::Gen1 { .. } | Statement::Gen2 { .. }
        )
    }
}

/// A statement and where it starts. Positions do not take part in equality.
#[derive(Clone, Debug)]
pub struct Item {
    pub statement: Statement,
    pub pos: Pos,
}

impl PartialEq for Item {
    fn eq(&self, other: &Self) -> bool {
        self.statement == other.statement
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Program {
    pub items: Vec<Item>,
}

impl Program {
    pub fn statements(&self) -> impl Iterator<Item = &Statement> {
        self.items.iter().map(|i| &i.statement)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Keyword(&'static str),
    Option(String),
    Punct(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Num(s) => write!(f, "`{s}`"),
            Tok::Keyword(s) | Tok::Punct(s) => write!(f, "`{s}`"),
            Tok::Option(s) => write!(f, "`--{s}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

const PUNCT: [&str; 18] = [
    "->", "=>", "==", "--", "(", ")", "[", "]", "{", "}", ",", ";", ":", "=", "+", "*", "@", "-",
];

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        }
    };
    let is_ident_start = |c: char| c.is_ascii_alphabetic() || c == '_';
    let is_ident_char = |c: char| c.is_ascii_alphanumeric() || c == '_';
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, 1);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col, 1);
            }
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 17)].iter().collect();
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let digits: String = chars[i..j].iter().collect();
            let mut k = j;
            while k < chars.len() && is_ident_char(chars[k]) {
                k += 1;
            }
            let word: String = chars[i..k].iter().collect();
            let keyword = ["0cells", "1cell", "2cell"]
                .into_iter()
                .find(|kw| *kw == word);
            if let Some(kw) = keyword {
                out.push((Tok::Keyword(kw), pos));
                let n = k - i;
                advance(&mut i, &mut line, &mut col, n);
            } else {
                out.push((Tok::Num(digits), pos));
                let n = j - i;
                advance(&mut i, &mut line, &mut col, n);
            }
            continue;
        }
        if is_ident_start(c) {
            if rest.starts_with("strictify-report") {
                out.push((Tok::Keyword("strictify-report"), pos));
                advance(&mut i, &mut line, &mut col, "strictify-report".len());
                continue;
            }
            let mut j = i;
            while j < chars.len() && is_ident_char(chars[j]) {
                j += 1;
            }
            while j < chars.len() && chars[j] == '\'' {
                j += 1;
            }
            out.push((Tok::Ident(chars[i..j].iter().collect()), pos));
            let n = j - i;
            advance(&mut i, &mut line, &mut col, n);
            continue;
        }
        match PUNCT.iter().find(|p| rest.starts_with(**p)) {
            Some(&"--") => {
                let mut j = i + 2;
                while j < chars.len() && (is_ident_char(chars[j]) || chars[j] == '-') {
                    j += 1;
                }
                out.push((Tok::Option(chars[i + 2..j].iter().collect()), pos));
                let n = j - i;
                advance(&mut i, &mut line, &mut col, n);
            }
            Some(p) => {
                out.push((Tok::Punct(p), pos));
                advance(&mut i, &mut line, &mut col, p.len());
            }
            None => {
                return Err(ParseError {
                    pos,
                    expected: vec!["a token".into()],
                    found: format!("`{c}`"),
                })
            }
        }
    }
    out.push((Tok::Eof, Pos { line, column: col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

type PResult<T> = Result<T, ParseError>;

const STATEMENT_START: [&str; 9] = [
    "`0cells`",
    "`1cell`",
    "`2cell`",
    "`instance`",
    "`normalize`",
    "`check`",
    "`suite`",
    "`eval`",
    "`strictify-report`",
];

const CONSTRUCTORS: [&str; 14] = [
    "id", "vcomp", "inv", "assoc", "lunit", "runit", "addassoc", "addunitl", "addunitr", "sym",
    "distl", "distr", "nulll", "nullr",
];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> PResult<T> {
        Err(ParseError {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        })
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Tok::Punct(q) if *q == p)
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.is_punct(p) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn punct(&mut self, p: &'static str) -> PResult<()> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            self.fail(&[&format!("`{p}`")])
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn word(&mut self, w: &str) -> PResult<()> {
        if self.is_word(w) {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&format!("`{w}`")])
        }
    }

    fn ident(&mut self, what: &str) -> PResult<Symbol> {
        match self.peek() {
            Tok::Ident(s) => {
                let s = Symbol::new(s);
                self.bump();
                Ok(s)
            }
            _ => self.fail(&[what]),
        }
    }

    /// An identifier or a number, used for set elements.
    fn atom(&mut self) -> PResult<Symbol> {
        match self.peek() {
            Tok::Ident(s) | Tok::Num(s) => {
                let s = Symbol::new(s);
                self.bump();
                Ok(s)
            }
            _ => self.fail(&["element name"]),
        }
    }

    fn number<T: std::str::FromStr>(&mut self) -> PResult<T> {
        if let Tok::Num(s) = self.peek() {
            if let Ok(v) = s.parse() {
                self.bump();
                return Ok(v);
            }
        }
        self.fail(&["number"])
    }

    fn program(&mut self) -> PResult<Program> {
        let mut items = Vec::new();
        while *self.peek() != Tok::Eof {
            let pos = self.pos();
            let statement = self.statement()?;
            self.punct(";")?;
            items.push(Item { statement, pos });
        }
        Ok(Program { items })
    }

    fn statement(&mut self) -> PResult<Statement> {
        match self.peek().clone() {
            Tok::Keyword("0cells") => {
                self.bump();
                let mut names = Vec::new();
                while let Tok::Ident(_) = self.peek() {
                    names.push(self.ident("0-cell name")?);
                }
                Ok(Statement::ZeroCells(names))
            }
            Tok::Keyword("1cell") => {
                self.bump();
                let name = self.ident("generator name")?;
                self.punct(":")?;
                let src = self.ident("0-cell name")?;
                self.punct("->")?;
                let tgt = self.ident("0-cell name")?;
                Ok(Statement::Gen1 { name, src, tgt })
            }
            Tok::Keyword("2cell") => {
                self.bump();
                let name = self.ident("2-cell name")?;
                self.punct(":")?;
                let src = self.expr()?;
                self.punct("=>")?;
                let tgt = self.expr()?;
                Ok(Statement::Gen2 { name, src, tgt })
            }
            Tok::Keyword("strictify-report") => {
                self.bump();
                Ok(Statement::StrictifyReport)
            }
            Tok::Ident(w) if w == "instance" => {
                self.bump();
                let name = self.ident("instance name")?;
                self.punct("=")?;
                let decl = self.instance_decl()?;
                Ok(Statement::Instance { name, decl })
            }
            Tok::Ident(w) if w == "normalize" => {
                self.bump();
                Ok(Statement::Normalize(self.expr()?))
            }
            Tok::Ident(w) if w == "check" => {
                self.bump();
                let p1 = self.path()?;
                self.punct("==")?;
                let p2 = self.path()?;
                Ok(Statement::Check(p1, p2))
            }
            Tok::Ident(w) if w == "suite" => {
                self.bump();
                let kind = match self.peek() {
                    Tok::Ident(k) if k == "pc" => SuiteKind::Pc,
                    Tok::Ident(k) if k == "strict" => SuiteKind::Strict,
                    Tok::Ident(k) if k == "instance" => SuiteKind::Instance,
                    _ => return self.fail(&["`pc`", "`strict`", "`instance`"]),
                };
                self.bump();
                let (mut depth, mut seed, mut samples) = (None, None, None);
                while let Tok::Option(o) = self.peek().clone() {
                    self.bump();
                    match o.as_str() {
                        "depth" => depth = Some(self.number()?),
                        "seed" => seed = Some(self.number()?),
                        "samples" => samples = Some(self.number()?),
                        _ => {
                            self.at -= 1;
                            return self.fail(&["`--depth`", "`--seed`", "`--samples`"]);
                        }
                    }
                }
                Ok(Statement::Suite {
                    kind,
                    depth,
                    seed,
                    samples,
                })
            }
            Tok::Ident(w) if w == "eval" => {
                self.bump();
                let expr = self.expr()?;
                self.word("in")?;
                let instance = if matches!(self.peek2(), Tok::Punct("{")) {
                    InstanceRef::Inline(self.instance_decl()?)
                } else {
                    InstanceRef::Named(self.ident("instance")?)
                };
                Ok(Statement::Eval { expr, instance })
            }
            _ => self.fail(&STATEMENT_START),
        }
    }

    fn instance_decl(&mut self) -> PResult<InstanceDecl> {
        let carrier = match self.peek() {
            Tok::Ident(w) if w == "N" => Carrier::Naturals,
            Tok::Ident(w) if w == "Z" => Carrier::Integers,
            Tok::Ident(w) if w == "B" => Carrier::Booleans,
            Tok::Ident(w) if w == "span" => {
                self.bump();
                return self.span_body();
            }
            _ => return self.fail(&["`N`", "`Z`", "`B`", "`span`"]),
        };
        self.bump();
        self.punct("{")?;
        let mut values = Vec::new();
        if !self.is_punct("}") {
            loop {
                let name = self.ident("generator name")?;
                self.punct("=")?;
                let negative = carrier == Carrier::Integers && self.eat_punct("-");
                let v: BigInt = self.number()?;
                values.push((name, if negative { -v } else { v }));
                if !self.eat_punct(",") {
                    break;
                }
            }
        }
        self.punct("}")?;
        Ok(InstanceDecl::Semiring { carrier, values })
    }

    fn span_body(&mut self) -> PResult<InstanceDecl> {
        self.punct("{")?;
        let (mut sets, mut spans, mut maps) = (Vec::new(), Vec::new(), Vec::new());
        while !self.eat_punct("}") {
            match self.peek() {
                Tok::Ident(w) if w == "set" => {
                    self.bump();
                    let name = self.ident("0-cell name")?;
                    self.punct("=")?;
                    self.punct("{")?;
                    let mut elems = Vec::new();
                    if !self.is_punct("}") {
                        loop {
                            elems.push(self.atom()?);
                            if !self.eat_punct(",") {
                                break;
                            }
                        }
                    }
                    self.punct("}")?;
                    sets.push((name, elems));
                }
                Tok::Ident(w) if w == "span" => {
                    self.bump();
                    let name = self.ident("generator name")?;
                    self.punct("=")?;
                    self.punct("{")?;
                    let mut rows = Vec::new();
                    if !self.is_punct("}") {
                        loop {
                            let x = self.atom()?;
                            self.punct(":")?;
                            let l = self.atom()?;
                            self.punct("->")?;
                            let r = self.atom()?;
                            rows.push((x, l, r));
                            if !self.eat_punct(",") {
                                break;
                            }
                        }
                    }
                    self.punct("}")?;
                    spans.push((name, rows));
                }
                Tok::Ident(w) if w == "map" => {
                    self.bump();
                    let name = self.ident("2-cell name")?;
                    self.punct("=")?;
                    self.punct("[")?;
                    let mut map = Vec::new();
                    if !self.is_punct("]") {
                        loop {
                            map.push(self.number()?);
                            if !self.eat_punct(",") {
                                break;
                            }
                        }
                    }
                    self.punct("]")?;
                    maps.push((name, map));
                }
                _ => return self.fail(&["`set`", "`span`", "`map`", "`}`"]),
            }
            self.punct(";")?;
        }
        Ok(InstanceDecl::Span { sets, spans, maps })
    }

    fn path(&mut self) -> PResult<Vec<TwoCellExpr>> {
        self.punct("[")?;
        let mut cells = vec![self.cell()?];
        while self.eat_punct(",") {
            cells.push(self.cell()?);
        }
        self.punct("]")?;
        Ok(cells)
    }

    fn expr(&mut self) -> PResult<OneCellExpr> {
        let mut e = self.product()?;
        while self.eat_punct("+") {
            e = OneCellExpr::sum(e, self.product()?);
        }
        Ok(e)
    }

    fn product(&mut self) -> PResult<OneCellExpr> {
        let mut e = self.factor()?;
        while self.eat_punct("*") {
            e = OneCellExpr::hcomp(e, self.factor()?);
        }
        Ok(e)
    }

    fn factor(&mut self) -> PResult<OneCellExpr> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(OneCellExpr::gen(&name))
            }
            Tok::Num(n) if n == "1" && matches!(self.peek2(), Tok::Punct("@")) => {
                self.bump();
                self.bump();
                Ok(OneCellExpr::IdUnit(ZeroCellId(self.ident("0-cell name")?)))
            }
            Tok::Num(n) if n == "0" && matches!(self.peek2(), Tok::Punct("@")) => {
                self.bump();
                self.bump();
                let a = self.ident("0-cell name")?;
                self.punct("->")?;
                let b = self.ident("0-cell name")?;
                Ok(OneCellExpr::ZeroUnit(ZeroCellId(a), ZeroCellId(b)))
            }
            Tok::Punct("(") => {
                self.bump();
                let e = self.expr()?;
                self.punct(")")?;
                Ok(e)
            }
            _ => self.fail(&["generator", "`1@`", "`0@`", "`(`"]),
        }
    }

    fn cell(&mut self) -> PResult<TwoCellExpr> {
        let mut c = self.cell_product()?;
        while self.eat_punct("+") {
            c = TwoCellExpr::SumCells(c.into(), self.cell_product()?.into());
        }
        Ok(c)
    }

    fn cell_product(&mut self) -> PResult<TwoCellExpr> {
        let mut c = self.cell_factor()?;
        while self.eat_punct("*") {
            c = TwoCellExpr::HComp2(c.into(), self.cell_factor()?.into());
        }
        Ok(c)
    }

    fn args(&mut self, n: usize) -> PResult<Vec<OneCellExpr>> {
        self.punct("(")?;
        let mut out = vec![self.expr()?];
        for _ in 1..n {
            self.punct(",")?;
            out.push(self.expr()?);
        }
        self.punct(")")?;
        Ok(out)
    }

    fn cell_factor(&mut self) -> PResult<TwoCellExpr> {
        use TwoCellExpr::*;
        match self.peek().clone() {
            Tok::Ident(name) if matches!(self.peek2(), Tok::Punct("(")) => {
                if !CONSTRUCTORS.contains(&name.as_str()) {
                    return self.fail(&["2-cell constructor"]);
                }
                self.bump();
                Ok(match name.as_str() {
                    "id" => Id2(self.args(1)?.remove(0)),
                    "vcomp" => {
                        self.punct("(")?;
                        let later = self.cell()?;
                        self.punct(",")?;
                        let earlier = self.cell()?;
                        self.punct(")")?;
                        VComp(later.into(), earlier.into())
                    }
                    "inv" => {
                        self.punct("(")?;
                        let c = self.cell()?;
                        self.punct(")")?;
                        Inv(c.into())
                    }
                    "nulll" | "nullr" => {
                        self.punct("(")?;
                        let f = self.expr()?;
                        self.punct(",")?;
                        let z = ZeroCellId(self.ident("0-cell name")?);
                        self.punct(")")?;
                        if name == "nulll" {
                            NullL(f, z)
                        } else {
                            NullR(f, z)
                        }
                    }
                    "lunit" | "runit" | "addunitl" | "addunitr" => {
                        let f = self.args(1)?.remove(0);
                        match name.as_str() {
                            "lunit" => LUnit(f),
                            "runit" => RUnit(f),
                            "addunitl" => AddUnitL(f),
                            _ => AddUnitR(f),
                        }
                    }
                    "sym" => {
                        let mut a = self.args(2)?.into_iter();
                        Sym(a.next().unwrap(), a.next().unwrap())
                    }
                    _ => {
                        let mut a = self.args(3)?.into_iter();
                        let (f, g, h) = (a.next().unwrap(), a.next().unwrap(), a.next().unwrap());
                        match name.as_str() {
                            "assoc" => AssocH(f, g, h),
                            "addassoc" => AddAssoc(f, g, h),
                            "distl" => DistL(f, g, h),
                            _ => DistR(f, g, h),
                        }
                    }
                })
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(TwoCellExpr::gen(&name))
            }
            Tok::Punct("(") => {
                self.bump();
                let c = self.cell()?;
                self.punct(")")?;
                Ok(c)
            }
            _ => self.fail(&["2-cell", "`(`"]),
        }
    }
}

fn parse_with<T>(text: &str, f: impl FnOnce(&mut Parser) -> PResult<T>) -> PResult<T> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let out = f(&mut p)?;
    if *p.peek() != Tok::Eof {
        return p.fail(&["end of input"]);
    }
    Ok(out)
}

pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    parse_with(text, |p| p.program())
}

pub fn parse_one_cell(text: &str) -> Result<OneCellExpr, ParseError> {
    parse_with(text, |p| p.expr())
}

pub fn parse_two_cell(text: &str) -> Result<TwoCellExpr, ParseError> {
    parse_with(text, |p| p.cell())
}

/// Parses `[c, ...]`.
pub fn parse_path(text: &str) -> Result<Vec<TwoCellExpr>, ParseError> {
    parse_with(text, |p| p.path())
}

fn comma_list<T>(
    f: &mut fmt::Formatter<'_>,
    xs: &[T],
    each: impl Fn(&mut fmt::Formatter<'_>, &T) -> fmt::Result,
) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        each(f, x)?;
    }
    Ok(())
}

pub struct PathDisplay<'a>(pub &'a [TwoCellExpr]);

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        comma_list(f, self.0, |f, c| write!(f, "{c}"))?;
        write!(f, "]")
    }
}

impl fmt::Display for InstanceDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceDecl::Semiring { carrier, values } => {
                write!(f, "{}{{", carrier.letter())?;
                comma_list(f, values, |f, (n, v)| write!(f, "{n}={v}"))?;
                write!(f, "}}")
            }
            InstanceDecl::Span { sets, spans, maps } => {
                write!(f, "span {{")?;
                for (name, elems) in sets {
                    write!(f, " set {name} = {{")?;
                    comma_list(f, elems, |f, x| write!(f, "{x}"))?;
                    write!(f, "}};")?;
                }
                for (name, rows) in spans {
                    write!(f, " span {name} = {{")?;
                    comma_list(f, rows, |f, (x, l, r)| write!(f, "{x}: {l} -> {r}"))?;
                    write!(f, "}};")?;
                }
                for (name, map) in maps {
                    write!(f, " map {name} = [")?;
                    comma_list(f, map, |f, k| write!(f, "{k}"))?;
                    write!(f, "];")?;
                }
                write!(f, " }}")
            }
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::ZeroCells(names) => {
                write!(f, "0cells")?;
                for n in names {
                    write!(f, " {n}")?;
                }
                Ok(())
            }
            Statement::Gen1 { name, src, tgt } => write!(f, "1cell {name}: {src} -> {tgt}"),
            Statement::Gen2 { name, src, tgt } => write!(f, "2cell {name}: {src} => {tgt}"),
            Statement::Instance { name, decl } => write!(f, "instance {name} = {decl}"),
            Statement::Normalize(e) => write!(f, "normalize {e}"),
            Statement::Check(p1, p2) => {
                write!(f, "check {} == {}", PathDisplay(p1), PathDisplay(p2))
            }
            Statement::Suite {
                kind,
                depth,
                seed,
                samples,
            } => {
                write!(f, "suite {}", kind.as_str())?;
                if let Some(d) = depth {
                    write!(f, " --depth {d}")?;
                }
                if let Some(s) = seed {
                    write!(f, " --seed {s}")?;
                }
                if let Some(n) = samples {
                    write!(f, " --samples {n}")?;
                }
                Ok(())
            }
            Statement::Eval { expr, instance } => match instance {
                InstanceRef::Named(n) => write!(f, "eval {expr} in {n}"),
                InstanceRef::Inline(d) => write!(f, "eval {expr} in {d}"),
            },
            Statement::StrictifyReport => write!(f, "strictify-report"),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            writeln!(f, "{};", item.statement)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use OneCellExpr as E;

    #[test]
    fn parses_declarations_and_commands() {
        let p = parse_program("0cells a b; 1cell f: a -> b; normalize (f + 0@a->b);").unwrap();
        assert_eq!(p.items.len(), 3);
        assert_eq!(
            p.items[2].statement,
            Statement::Normalize(E::sum(E::gen("f"), E::zero("a", "b")))
        );
        assert_eq!(
            p.items[1].pos,
            Pos {
                line: 1,
                column: 13
            }
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse_one_cell("g * f + g' * f' + h").unwrap();
        let gf = E::hcomp(E::gen("g"), E::gen("f"));
        let gf2 = E::hcomp(E::gen("g'"), E::gen("f'"));
        assert_eq!(e, E::sum(E::sum(gf, gf2), E::gen("h")));
        let e = parse_one_cell("a * b * c").unwrap();
        assert_eq!(e, E::hcomp(E::hcomp(E::gen("a"), E::gen("b")), E::gen("c")));
        assert_eq!(
            parse_one_cell("1@a * f").unwrap(),
            E::hcomp(E::id_unit("a"), E::gen("f"))
        );
    }

    #[test]
    fn two_cells() {
        let c = parse_two_cell("vcomp(inv(distl(f, g, h)), sym(f, g) + id(1@a)) * alpha").unwrap();
        assert_eq!(
            c.to_string(),
            "vcomp(inv(distl(f, g, h)), sym(f, g) + id(1@a)) * alpha"
        );
        assert_eq!(
            parse_two_cell("nulll(f, c)").unwrap(),
            TwoCellExpr::NullL(E::gen("f"), "c".into())
        );
        let err = parse_two_cell("frob(f)").unwrap_err();
        assert_eq!(err.expected, vec!["2-cell constructor"]);
    }

    #[test]
    fn errors_carry_position_and_expectation() {
        let err = parse_program("0cells a b;\nnormalize (f + ;").unwrap_err();
        assert_eq!(
            err.pos,
            Pos {
                line: 2,
                column: 16
            }
        );
        assert!(err.expected.contains(&"generator".to_string()));
        assert_eq!(err.found, "`;`");
        let err = parse_program("frobnicate f;").unwrap_err();
        assert_eq!(err.expected.len(), STATEMENT_START.len());
        let err = parse_program("normalize f").unwrap_err();
        assert_eq!(err.found, "end of input");
    }

    #[test]
    fn comments_and_options() {
        let p =
            parse_program("# header\nsuite pc --depth 1 --seed 7; # trailing\nstrictify-report;")
                .unwrap();
        assert_eq!(
            p.items[0].statement,
            Statement::Suite {
                kind: SuiteKind::Pc,
                depth: Some(1),
                seed: Some(7),
                samples: None
            }
        );
        assert_eq!(p.items[1].statement, Statement::StrictifyReport);
    }

    #[test]
    fn instances_round_trip() {
        let text = "instance S = span { set a = {p}; set b = {1, 2}; span f = {x1: p -> 1, x2: p -> 2}; map alpha = [1, 0]; };\n\
                    instance M = Z{f=-3, g=4};\n\
                    eval (g * (f + f')) in N{f=2, f'=3, g=5};\n";
        let p = parse_program(text).unwrap();
        let printed = p.to_string();
        assert_eq!(parse_program(&printed).unwrap(), p);
        assert!(printed.contains("Z{f=-3, g=4}"));
    }
}
