//! The plain-text specification format.
//!
//! ```text
//! # comments run to the end of the line
//! description "Graph G"
//! carrier A = {a, b, c, d}
//! functor = P(X)
//! coalgebra G : A {
//!   a -> {b}
//!   b -> {}
//! }
//! algebra E : N { {} -> 0 ... }
//! para_algebra E : N over A { in1(*) @ 0 -> 1 ... }
//! ```
//!
//! Items may appear in any order; names are resolved after the whole file
//! has been read.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;
use wfcoalg::functor::{is_label_char, quote_label};
use wfcoalg::{Algebra, Carrier, Coalgebra, ConstSet, FValue, FunctorExpr, Limits, ParaAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{line}:{col}: unresolved name `{name}`")]
    Unresolved {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("{line}:{col}: table `{table}` is not total: no entry for {missing}")]
    NotTotal {
        line: usize,
        col: usize,
        table: String,
        missing: String,
    },
    #[error("{line}:{col}: {msg}")]
    Invalid {
        line: usize,
        col: usize,
        msg: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedCoalgebra {
    pub name: String,
    pub carrier_name: String,
    pub coalgebra: Coalgebra,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedAlgebra {
    pub name: String,
    pub carrier_name: String,
    pub algebra: Algebra,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedParaAlgebra {
    pub name: String,
    pub carrier_name: String,
    pub params_name: String,
    pub algebra: ParaAlgebra,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpecDocument {
    pub description: Option<String>,
    pub carriers: Vec<(String, Carrier)>,
    pub functor: Option<FunctorExpr>,
    pub coalgebras: Vec<NamedCoalgebra>,
    pub algebras: Vec<NamedAlgebra>,
    pub para_algebras: Vec<NamedParaAlgebra>,
}

impl SpecDocument {
    pub fn carrier(&self, name: &str) -> Option<&Carrier> {
        self.carriers
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
    }

    pub fn coalgebra(&self, name: Option<&str>) -> Option<&NamedCoalgebra> {
        match name {
            Some(n) => self.coalgebras.iter().find(|c| c.name == n),
            None => self.coalgebras.first(),
        }
    }

    pub fn algebra(&self, name: Option<&str>) -> Option<&NamedAlgebra> {
        match name {
            Some(n) => self.algebras.iter().find(|c| c.name == n),
            None => self.algebras.first(),
        }
    }

    pub fn para_algebra(&self, name: Option<&str>) -> Option<&NamedParaAlgebra> {
        match name {
            Some(n) => self.para_algebras.iter().find(|c| c.name == n),
            None => self.para_algebras.first(),
        }
    }
}

const RESERVED: [&str; 3] = ["X", "R", "P"];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Str(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Arrow,
    At,
    Plus,
    Star,
    Caret,
    Eq,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::Eof => "end of input".to_owned(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Colon => ":",
            Tok::Arrow => "->",
            Tok::At => "@",
            Tok::Plus => "+",
            Tok::Star => "*",
            Tok::Caret => "^",
            Tok::Eq => "=",
            _ => "",
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, SpecError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        let simple = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            ':' => Some(Tok::Colon),
            '@' => Some(Tok::At),
            '+' => Some(Tok::Plus),
            '*' | '×' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = simple {
            bump(&mut chars);
            out.push(Token {
                tok,
                line: tl,
                col: tc,
            });
            continue;
        }
        if c.is_whitespace() {
            bump(&mut chars);
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
        } else if c == '-' {
            bump(&mut chars);
            if chars.peek() != Some(&'>') {
                return Err(SpecError::Syntax {
                    line: tl,
                    col: tc,
                    msg: "expected `->`".into(),
                });
            }
            bump(&mut chars);
            out.push(Token {
                tok: Tok::Arrow,
                line: tl,
                col: tc,
            });
        } else if c == '"' {
            bump(&mut chars);
            let mut s = String::new();
            loop {
                match bump(&mut chars) {
                    None | Some('\n') => {
                        return Err(SpecError::Syntax {
                            line: tl,
                            col: tc,
                            msg: "unterminated string".into(),
                        })
                    }
                    Some('"') => break,
                    Some('\\') => match bump(&mut chars) {
                        Some(e @ ('"' | '\\')) => s.push(e),
                        _ => {
                            return Err(SpecError::Syntax {
                                line: tl,
                                col: tc,
                                msg: "bad escape in string".into(),
                            })
                        }
                    },
                    Some(ch) => s.push(ch),
                }
            }
            out.push(Token {
                tok: Tok::Str(s),
                line: tl,
                col: tc,
            });
        } else if is_label_char(c) {
            let mut w = String::new();
            while let Some(&ch) = chars.peek() {
                if !is_label_char(ch) {
                    break;
                }
                w.push(ch);
                bump(&mut chars);
            }
            out.push(Token {
                tok: Tok::Word(w),
                line: tl,
                col: tc,
            });
        } else {
            return Err(SpecError::Syntax {
                line: tl,
                col: tc,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

/// A functor expression before names are looked up.
#[derive(Debug, Clone)]
enum FAst {
    Id,
    R,
    Const(ConstAst),
    Sum(Vec<FAst>),
    Prod(Vec<FAst>),
    Pow(Box<FAst>),
    Exp(Box<FAst>, ConstAst),
}

#[derive(Debug, Clone)]
enum ConstAst {
    Numeral(usize),
    Name(String, usize, usize),
    Literal(Vec<String>, usize, usize),
}

#[derive(Debug, Clone)]
enum TableKind {
    Coalgebra,
    Algebra,
    Para(String, usize, usize),
}

/// A table whose body is parsed once the functor is known.
#[derive(Debug, Clone)]
struct RawTable {
    kind: TableKind,
    name: String,
    carrier: (String, usize, usize),
    body: std::ops::Range<usize>,
    close: (usize, usize),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, t: &Token, msg: impl Into<String>) -> Result<T, SpecError> {
        Err(SpecError::Syntax {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, SpecError> {
        let t = self.next();
        if t.tok == tok {
            Ok(t)
        } else {
            self.syntax(
                &t,
                format!("expected {}, found {}", tok.describe(), t.tok.describe()),
            )
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().tok == *tok {
            self.next();
            true
        } else {
            false
        }
    }

    fn word(&mut self, what: &str) -> Result<(String, usize, usize), SpecError> {
        let t = self.next();
        match &t.tok {
            Tok::Word(w) => Ok((w.clone(), t.line, t.col)),
            other => self.syntax(&t, format!("expected {what}, found {}", other.describe())),
        }
    }

    /// An element label: a bare word, `*`, or a quoted string.
    fn label(&mut self) -> Result<(String, usize, usize), SpecError> {
        let t = self.next();
        match &t.tok {
            Tok::Word(w) | Tok::Str(w) => Ok((w.clone(), t.line, t.col)),
            Tok::Star => Ok(("*".to_owned(), t.line, t.col)),
            other => self.syntax(
                &t,
                format!("expected an element, found {}", other.describe()),
            ),
        }
    }

    fn label_list(&mut self) -> Result<Vec<String>, SpecError> {
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBrace) {
            return Ok(out);
        }
        loop {
            out.push(self.label()?.0);
            if self.eat(&Tok::RBrace) {
                return Ok(out);
            }
            self.expect(Tok::Comma)?;
        }
    }

    fn functor_sum(&mut self) -> Result<FAst, SpecError> {
        let mut parts = vec![self.functor_prod()?];
        while self.eat(&Tok::Plus) {
            parts.push(self.functor_prod()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            FAst::Sum(parts)
        })
    }

    fn functor_prod(&mut self) -> Result<FAst, SpecError> {
        let mut parts = vec![self.functor_pow()?];
        while self.eat(&Tok::Star) {
            parts.push(self.functor_pow()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            FAst::Prod(parts)
        })
    }

    fn functor_pow(&mut self) -> Result<FAst, SpecError> {
        let mut base = self.functor_atom()?;
        while self.eat(&Tok::Caret) {
            let t = self.peek().clone();
            let alphabet = match self.functor_atom()? {
                FAst::Const(c) => c,
                _ => return self.syntax(&t, "an exponent must be a constant set"),
            };
            base = FAst::Exp(Box::new(base), alphabet);
        }
        Ok(base)
    }

    fn functor_atom(&mut self) -> Result<FAst, SpecError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::LParen => {
                self.next();
                let inner = self.functor_sum()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::LBrace => {
                let labels = self.label_list()?;
                Ok(FAst::Const(ConstAst::Literal(labels, t.line, t.col)))
            }
            Tok::Word(w) => {
                self.next();
                match w.as_str() {
                    "X" => Ok(FAst::Id),
                    "R" => Ok(FAst::R),
                    "P" => {
                        self.expect(Tok::LParen)?;
                        let inner = self.functor_sum()?;
                        self.expect(Tok::RParen)?;
                        Ok(FAst::Pow(Box::new(inner)))
                    }
                    _ if w.chars().all(|c| c.is_ascii_digit()) => match w.parse() {
                        Ok(n) => Ok(FAst::Const(ConstAst::Numeral(n))),
                        Err(_) => self.syntax(&t, "numeral too large"),
                    },
                    _ => Ok(FAst::Const(ConstAst::Name(w.clone(), t.line, t.col))),
                }
            }
            other => self.syntax(
                &t,
                format!("expected a functor, found {}", other.describe()),
            ),
        }
    }

    /// Skips a braced body, returning the token range inside it and the
    /// position of the closing brace.
    fn braced_body(&mut self) -> Result<(std::ops::Range<usize>, (usize, usize)), SpecError> {
        let open = self.expect(Tok::LBrace)?;
        let start = self.pos;
        let mut depth = 1usize;
        loop {
            let t = self.next();
            match t.tok {
                Tok::LBrace => depth += 1,
                Tok::RBrace => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok((start..self.pos - 1, (t.line, t.col)));
                    }
                }
                Tok::Eof => return self.syntax(&open, "unclosed `{`"),
                _ => {}
            }
        }
    }
}

/// Parses a specification document.
pub fn parse_spec(text: &str) -> Result<SpecDocument, SpecError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let mut doc = SpecDocument::default();
    let mut functor_ast: Option<FAst> = None;
    let mut tables: Vec<RawTable> = Vec::new();
    let mut names: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let mut claim = |name: &str, line: usize, col: usize| -> Result<(), SpecError> {
        if let Some((l, c)) = names.insert(name.to_owned(), (line, col)) {
            return Err(SpecError::Invalid {
                line,
                col,
                msg: format!("`{name}` is already defined at {l}:{c}"),
            });
        }
        Ok(())
    };

    loop {
        let t = p.next();
        let Tok::Word(kw) = &t.tok else {
            if t.tok == Tok::Eof {
                break;
            }
            return p.syntax(&t, format!("expected an item, found {}", t.tok.describe()));
        };
        match kw.as_str() {
            "description" => {
                let s = p.next();
                let Tok::Str(text) = s.tok else {
                    return p.syntax(&s, "expected a quoted description");
                };
                if doc.description.replace(text).is_some() {
                    return p.syntax(&t, "description given twice");
                }
            }
            "carrier" => {
                let (name, line, col) = p.word("a carrier name")?;
                if RESERVED.contains(&name.as_str()) || name.chars().all(|c| c.is_ascii_digit()) {
                    return Err(SpecError::Invalid {
                        line,
                        col,
                        msg: format!("`{name}` cannot name a carrier"),
                    });
                }
                claim(&name, line, col)?;
                p.expect(Tok::Eq)?;
                let labels = p.label_list()?;
                let carrier = Carrier::new(labels).map_err(|e| SpecError::Invalid {
                    line,
                    col,
                    msg: e.to_string(),
                })?;
                doc.carriers.push((name, carrier));
            }
            "functor" => {
                if functor_ast.is_some() {
                    return p.syntax(&t, "functor given twice");
                }
                p.expect(Tok::Eq)?;
                functor_ast = Some(p.functor_sum()?);
            }
            "coalgebra" | "algebra" | "para_algebra" => {
                let (name, line, col) = p.word("a table name")?;
                claim(&name, line, col)?;
                p.expect(Tok::Colon)?;
                let carrier = p.word("a carrier name")?;
                let kind = if kw == "para_algebra" {
                    let over = p.word("`over`")?;
                    if over.0 != "over" {
                        return p.syntax(&t, "expected `over` after the carrier");
                    }
                    let (params, l, c) = p.word("a carrier name")?;
                    TableKind::Para(params, l, c)
                } else if kw == "coalgebra" {
                    TableKind::Coalgebra
                } else {
                    TableKind::Algebra
                };
                let (body, close) = p.braced_body()?;
                tables.push(RawTable {
                    kind,
                    name,
                    carrier,
                    body,
                    close,
                });
            }
            other => return p.syntax(&t, format!("unknown item `{other}`")),
        }
    }

    let carriers: HashMap<&str, &Carrier> =
        doc.carriers.iter().map(|(n, c)| (n.as_str(), c)).collect();
    let functor = match &functor_ast {
        Some(ast) => Some(resolve_functor(ast, &carriers)?),
        None => None,
    };
    let lookup = |name: &(String, usize, usize)| -> Result<Carrier, SpecError> {
        carriers
            .get(name.0.as_str())
            .map(|c| (*c).clone())
            .ok_or_else(|| SpecError::Unresolved {
                line: name.1,
                col: name.2,
                name: name.0.clone(),
            })
    };

    for table in tables {
        let carrier = lookup(&table.carrier)?;
        let Some(functor) = &functor else {
            return Err(SpecError::Invalid {
                line: table.carrier.1,
                col: table.carrier.2,
                msg: format!("table `{}` needs a functor", table.name),
            });
        };
        let mut sub = Parser {
            toks: p.toks[table.body.clone()].to_vec(),
            pos: 0,
        };
        sub.toks.push(Token {
            tok: Tok::Eof,
            line: table.close.0,
            col: table.close.1,
        });
        match &table.kind {
            TableKind::Coalgebra => {
                let coalgebra = parse_coalgebra(&mut sub, &table, functor, &carrier)?;
                doc.coalgebras.push(NamedCoalgebra {
                    name: table.name.clone(),
                    carrier_name: table.carrier.0.clone(),
                    coalgebra,
                });
            }
            TableKind::Algebra => {
                let algebra = parse_algebra(&mut sub, &table, functor, &carrier)?;
                doc.algebras.push(NamedAlgebra {
                    name: table.name.clone(),
                    carrier_name: table.carrier.0.clone(),
                    algebra,
                });
            }
            TableKind::Para(params_name, l, c) => {
                let params = lookup(&(params_name.clone(), *l, *c))?;
                let algebra = parse_para(&mut sub, &table, functor, &carrier, &params)?;
                doc.para_algebras.push(NamedParaAlgebra {
                    name: table.name.clone(),
                    carrier_name: table.carrier.0.clone(),
                    params_name: params_name.clone(),
                    algebra,
                });
            }
        }
    }
    doc.functor = functor;
    Ok(doc)
}

fn resolve_const(c: &ConstAst, carriers: &HashMap<&str, &Carrier>) -> Result<ConstSet, SpecError> {
    match c {
        ConstAst::Numeral(n) => Ok(ConstSet::numeral(*n)),
        ConstAst::Name(name, line, col) => carriers
            .get(name.as_str())
            .map(|c| ConstSet::named(name.clone(), (*c).clone()))
            .ok_or_else(|| SpecError::Unresolved {
                line: *line,
                col: *col,
                name: name.clone(),
            }),
        ConstAst::Literal(labels, line, col) => Carrier::new(labels.clone())
            .map(ConstSet::literal)
            .map_err(|e| SpecError::Invalid {
                line: *line,
                col: *col,
                msg: e.to_string(),
            }),
    }
}

fn resolve_functor(
    ast: &FAst,
    carriers: &HashMap<&str, &Carrier>,
) -> Result<FunctorExpr, SpecError> {
    Ok(match ast {
        FAst::Id => FunctorExpr::Id,
        FAst::R => FunctorExpr::R,
        FAst::Const(c) => FunctorExpr::Const(resolve_const(c, carriers)?),
        FAst::Sum(fs) => FunctorExpr::Sum(
            fs.iter()
                .map(|f| resolve_functor(f, carriers))
                .collect::<Result<_, _>>()?,
        ),
        FAst::Prod(fs) => FunctorExpr::Prod(
            fs.iter()
                .map(|f| resolve_functor(f, carriers))
                .collect::<Result<_, _>>()?,
        ),
        FAst::Pow(g) => FunctorExpr::pow(resolve_functor(g, carriers)?),
        FAst::Exp(g, c) => {
            let sigma = resolve_const(c, carriers)?;
            if sigma.is_empty() {
                let (line, col) = match c {
                    ConstAst::Name(_, l, c) | ConstAst::Literal(_, l, c) => (*l, *c),
                    ConstAst::Numeral(_) => (0, 0),
                };
                return Err(SpecError::Invalid {
                    line,
                    col,
                    msg: "an exponent alphabet must be nonempty".into(),
                });
            }
            FunctorExpr::exp(sigma, resolve_functor(g, carriers)?)
        }
    })
}

fn element(p: &mut Parser, of: &Carrier) -> Result<usize, SpecError> {
    let (label, line, col) = p.label()?;
    of.index_of(&label).ok_or(SpecError::Unresolved {
        line,
        col,
        name: label,
    })
}

/// Reads one value of `F X`, guided by the shape of `F`.
fn value(p: &mut Parser, f: &FunctorExpr, x: &Carrier) -> Result<FValue, SpecError> {
    match f {
        FunctorExpr::Const(c) => Ok(FValue::Const(element(p, &c.carrier)?)),
        FunctorExpr::Id => Ok(FValue::Id(element(p, x)?)),
        FunctorExpr::R => {
            let t = p.peek().clone();
            if t.tok == Tok::Word("d".into()) {
                p.next();
                return Ok(FValue::Dot);
            }
            p.expect(Tok::LParen)?;
            let a = element(p, x)?;
            p.expect(Tok::Comma)?;
            let b = element(p, x)?;
            p.expect(Tok::RParen)?;
            if a == b {
                return Err(SpecError::Invalid {
                    line: t.line,
                    col: t.col,
                    msg: "the components of a pair in R X must differ".into(),
                });
            }
            Ok(FValue::Pair(a, b))
        }
        FunctorExpr::Sum(fs) => {
            let (w, line, col) = p.word("an injection `in<k>`")?;
            let k = w
                .strip_prefix("in")
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k < fs.len())
                .ok_or_else(|| SpecError::Syntax {
                    line,
                    col,
                    msg: format!(
                        "expected in0..in{} for `{f}`, found `{w}`",
                        fs.len().saturating_sub(1)
                    ),
                })?;
            p.expect(Tok::LParen)?;
            let inner = value(p, &fs[k], x)?;
            p.expect(Tok::RParen)?;
            Ok(FValue::Inj(k, Box::new(inner)))
        }
        FunctorExpr::Prod(fs) => {
            p.expect(Tok::LParen)?;
            let mut parts = Vec::with_capacity(fs.len());
            for (i, g) in fs.iter().enumerate() {
                if i > 0 {
                    p.expect(Tok::Comma)?;
                }
                parts.push(value(p, g, x)?);
            }
            p.expect(Tok::RParen)?;
            Ok(FValue::Tuple(parts))
        }
        FunctorExpr::Exp(sigma, g) => {
            let open = p.expect(Tok::LBracket)?;
            let mut slots: Vec<Option<FValue>> = vec![None; sigma.len()];
            loop {
                let letter = element(p, &sigma.carrier)?;
                p.expect(Tok::Colon)?;
                let v = value(p, g, x)?;
                if slots[letter].replace(v).is_some() {
                    return Err(SpecError::Invalid {
                        line: open.line,
                        col: open.col,
                        msg: format!("letter `{}` given twice", sigma.carrier.label(letter)),
                    });
                }
                if p.eat(&Tok::RBracket) {
                    break;
                }
                p.expect(Tok::Comma)?;
            }
            let parts = slots
                .into_iter()
                .enumerate()
                .map(|(i, s)| {
                    s.ok_or_else(|| SpecError::Invalid {
                        line: open.line,
                        col: open.col,
                        msg: format!("no value for letter `{}`", sigma.carrier.label(i)),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FValue::Func(parts))
        }
        FunctorExpr::Pow(g) => {
            p.expect(Tok::LBrace)?;
            let mut members = std::collections::BTreeSet::new();
            if !p.eat(&Tok::RBrace) {
                loop {
                    members.insert(value(p, g, x)?);
                    if p.eat(&Tok::RBrace) {
                        break;
                    }
                    p.expect(Tok::Comma)?;
                }
            }
            Ok(FValue::Set(members))
        }
    }
}

fn invalid(line: usize, col: usize, e: impl ToString) -> SpecError {
    SpecError::Invalid {
        line,
        col,
        msg: e.to_string(),
    }
}

fn parse_coalgebra(
    p: &mut Parser,
    table: &RawTable,
    f: &FunctorExpr,
    carrier: &Carrier,
) -> Result<Coalgebra, SpecError> {
    let mut rows: Vec<Option<FValue>> = vec![None; carrier.len()];
    while p.peek().tok != Tok::Eof {
        let t = p.peek().clone();
        let a = element(p, carrier)?;
        p.expect(Tok::Arrow)?;
        let v = value(p, f, carrier)?;
        if rows[a].replace(v).is_some() {
            return Err(invalid(
                t.line,
                t.col,
                format!("`{}` has two entries", carrier.label(a)),
            ));
        }
    }
    let structure = rows
        .into_iter()
        .enumerate()
        .map(|(a, v)| {
            v.ok_or_else(|| SpecError::NotTotal {
                line: table.close.0,
                col: table.close.1,
                table: table.name.clone(),
                missing: quote_label(carrier.label(a)),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Coalgebra::new(f.clone(), carrier.clone(), structure)
        .map_err(|e| invalid(table.carrier.1, table.carrier.2, e))
}

fn domain(table: &RawTable, f: &FunctorExpr, carrier: &Carrier) -> Result<Vec<FValue>, SpecError> {
    f.eval_obj(carrier, Limits::default().max_enum)
        .map_err(|e| invalid(table.carrier.1, table.carrier.2, e))
}

fn parse_algebra(
    p: &mut Parser,
    table: &RawTable,
    f: &FunctorExpr,
    carrier: &Carrier,
) -> Result<Algebra, SpecError> {
    let mut rows: HashMap<FValue, usize> = HashMap::new();
    while p.peek().tok != Tok::Eof {
        let t = p.peek().clone();
        let v = value(p, f, carrier)?;
        p.expect(Tok::Arrow)?;
        let x = element(p, carrier)?;
        if rows.insert(v.clone(), x).is_some() {
            return Err(invalid(
                t.line,
                t.col,
                format!("`{}` has two entries", f.render_over(&v, carrier)),
            ));
        }
    }
    let dom = domain(table, f, carrier)?;
    let tab = dom
        .iter()
        .map(|v| {
            rows.get(v).copied().ok_or_else(|| SpecError::NotTotal {
                line: table.close.0,
                col: table.close.1,
                table: table.name.clone(),
                missing: f.render_over(v, carrier),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Algebra::from_table(f.clone(), carrier.clone(), tab, &Limits::default())
        .map_err(|e| invalid(table.carrier.1, table.carrier.2, e))
}

fn parse_para(
    p: &mut Parser,
    table: &RawTable,
    f: &FunctorExpr,
    carrier: &Carrier,
    params: &Carrier,
) -> Result<ParaAlgebra, SpecError> {
    let mut rows: HashMap<(FValue, usize), usize> = HashMap::new();
    while p.peek().tok != Tok::Eof {
        let t = p.peek().clone();
        let v = value(p, f, carrier)?;
        p.expect(Tok::At)?;
        let a = element(p, params)?;
        p.expect(Tok::Arrow)?;
        let x = element(p, carrier)?;
        if rows.insert((v.clone(), a), x).is_some() {
            return Err(invalid(
                t.line,
                t.col,
                format!(
                    "`{} @ {}` has two entries",
                    f.render_over(&v, carrier),
                    params.label(a)
                ),
            ));
        }
    }
    let dom = domain(table, f, carrier)?;
    let mut tab = Vec::with_capacity(dom.len() * params.len());
    for v in &dom {
        for a in params.elements() {
            let x = rows
                .get(&(v.clone(), a))
                .copied()
                .ok_or_else(|| SpecError::NotTotal {
                    line: table.close.0,
                    col: table.close.1,
                    table: table.name.clone(),
                    missing: format!(
                        "{} @ {}",
                        f.render_over(v, carrier),
                        quote_label(params.label(a))
                    ),
                })?;
            tab.push(x);
        }
    }
    ParaAlgebra::from_table(
        f.clone(),
        carrier.clone(),
        params.clone(),
        tab,
        &Limits::default(),
    )
    .map_err(|e| invalid(table.carrier.1, table.carrier.2, e))
}

fn quote_description(s: &str) -> String {
    let mut out = String::from('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn indent(block: &str) -> String {
    block.lines().map(|l| format!("  {l}\n")).collect()
}

/// Writes a document back in canonical form; `parse_spec` reads it back
/// to an equal document.
pub fn render_spec(doc: &SpecDocument) -> String {
    let mut out = String::new();
    if let Some(d) = &doc.description {
        let _ = writeln!(out, "description {}", quote_description(d));
    }
    for (name, c) in &doc.carriers {
        let labels: Vec<String> = c.labels().iter().map(|l| quote_label(l)).collect();
        let _ = writeln!(out, "carrier {name} = {{{}}}", labels.join(", "));
    }
    if let Some(f) = &doc.functor {
        let _ = writeln!(out, "functor = {f}");
    }
    for c in &doc.coalgebras {
        let _ = writeln!(out, "\ncoalgebra {} : {} {{", c.name, c.carrier_name);
        out.push_str(&indent(&c.coalgebra.render()));
        out.push_str("}\n");
    }
    for a in &doc.algebras {
        let _ = writeln!(out, "\nalgebra {} : {} {{", a.name, a.carrier_name);
        out.push_str(&indent(&a.algebra.render()));
        out.push_str("}\n");
    }
    for a in &doc.para_algebras {
        let _ = writeln!(
            out,
            "\npara_algebra {} : {} over {} {{",
            a.name, a.carrier_name, a.params_name
        );
        out.push_str(&indent(&a.algebra.render()));
        out.push_str("}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const GRAPH_G: &str = "\
description \"a -> b, c <-> d\"
carrier A = {a, b, c, d}
functor = P(X)
coalgebra G : A {
  a -> {b}
  b -> {}
  c -> {d}
  d -> {c}
}
";

    #[test]
    fn parses_graph_g() {
        let doc = parse_spec(GRAPH_G).unwrap();
        let g = &doc.coalgebras[0];
        assert_eq!(g.coalgebra, wfcoalg::catalog::graph_g());
        assert_eq!(doc.description.as_deref(), Some("a -> b, c <-> d"));
        assert_eq!(parse_spec(&render_spec(&doc)).unwrap(), doc);
    }

    #[test]
    fn items_in_any_order() {
        let text = "coalgebra G : A { a -> {} }\nfunctor = P(X)\ncarrier A = {a}\n";
        let doc = parse_spec(text).unwrap();
        assert_eq!(doc.coalgebras[0].coalgebra.len(), 1);
    }

    #[test]
    fn empty_coalgebra_section_is_valid() {
        let doc = parse_spec("carrier E = {}\nfunctor = X + 1\ncoalgebra Z : E {}\n").unwrap();
        assert!(doc.coalgebras[0].coalgebra.is_empty());
        assert_eq!(parse_spec(&render_spec(&doc)).unwrap(), doc);
    }

    #[test]
    fn quicksort_shaped_functor() {
        let doc = parse_spec("carrier A = {1, 2}\nfunctor = 1 + A*X*X\n").unwrap();
        let f = doc.functor.unwrap();
        let a = Carrier::new(["1", "2"]).unwrap();
        assert_eq!(f, wfcoalg::catalog::Quicksort::functor(&a));
        assert_eq!(f.to_string(), "1 + A * X * X");
    }

    #[test]
    fn functor_syntax_round_trips() {
        for text in [
            "X",
            "R + 1",
            "P(Sigma * X)",
            "2 * X^Sigma",
            "(X + 1)^Sigma",
            "(X^Sigma)^{u,v}",
            "P(P(X)) + {a,b} * X",
            "(X + 1) + X",
            "X * (X * X)",
        ] {
            let doc = parse_spec(&format!("carrier Sigma = {{a, b}}\nfunctor = {text}\n")).unwrap();
            let f = doc.functor.clone().unwrap();
            let again = parse_spec(&format!("carrier Sigma = {{a, b}}\nfunctor = {f}\n")).unwrap();
            assert_eq!(again.functor.unwrap(), f, "{text} printed as {f}");
        }
    }

    #[test]
    fn value_syntax_for_every_constructor() {
        let text = "\
carrier S = {a, b}
carrier A = {p, q, r}
functor = S * R + P(S * X) + (X + 1)^S
coalgebra C : A {
  p -> in0((a, (p, q)))
  q -> in2([b: in1(*), a: in0(q)])
  r -> in1({(a, p), (b, r)})
}
";
        let doc = parse_spec(text).unwrap();
        let c = &doc.coalgebras[0].coalgebra;
        assert_eq!(
            c.at(0),
            &FValue::Inj(
                0,
                Box::new(FValue::Tuple(vec![FValue::Const(0), FValue::Pair(0, 1)]))
            )
        );
        assert_eq!(parse_spec(&render_spec(&doc)).unwrap(), doc);
    }

    #[test]
    fn errors_carry_locations() {
        match parse_spec("carrier A = {a}\nfunctor = P(Y)\n") {
            Err(SpecError::Unresolved {
                line: 2,
                col: 13,
                name,
            }) => assert_eq!(name, "Y"),
            other => panic!("{other:?}"),
        }
        match parse_spec("carrier A = {a, b}\nfunctor = P(X)\ncoalgebra G : A {\n  a -> {}\n}\n") {
            Err(SpecError::NotTotal {
                line: 5, missing, ..
            }) => assert_eq!(missing, "b"),
            other => panic!("{other:?}"),
        }
        match parse_spec("carrier A = {a}\nfunctor = P(X)\ncoalgebra G : A {\n  a -> {c}\n}\n") {
            Err(SpecError::Unresolved {
                line: 4,
                col: 9,
                name,
            }) => assert_eq!(name, "c"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_spec("functor = X +\n"),
            Err(SpecError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_spec("carrier A = {a}\nfunctor = R\ncoalgebra G : A { a -> (a, a) }\n"),
            Err(SpecError::Invalid { .. })
        ));
    }

    #[test]
    fn algebra_tables_must_be_total() {
        let text = "carrier N = {0, 1}\nfunctor = X + 1\nalgebra E : N {\n  in1(*) -> 0\n  in0(0) -> 1\n}\n";
        match parse_spec(text) {
            Err(SpecError::NotTotal { table, missing, .. }) => {
                assert_eq!(table, "E");
                assert_eq!(missing, "in0(1)");
            }
            other => panic!("{other:?}"),
        }
        let ok = text.replace("in0(0) -> 1", "in0(0) -> 1\n  in0(1) -> 1");
        let doc = parse_spec(&ok).unwrap();
        assert_eq!(parse_spec(&render_spec(&doc)).unwrap(), doc);
    }
}
