//! Lexer and recursive-descent parser for session scripts.

use std::collections::HashMap;

use gkverify::ClaimId;
use serde::{Deserialize, Serialize};

use crate::ast::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    UseBeforeDeclaration,
    Arity,
    Redeclaration,
    Type,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub location: Location,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match self.kind {
            ParseErrorKind::Lexical => "lexical error",
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::UseBeforeDeclaration => "use before declaration",
            ParseErrorKind::Arity => "arity mismatch",
            ParseErrorKind::Redeclaration => "redeclaration",
            ParseErrorKind::Type => "type error",
        };
        write!(f, "{}: {kind}: {}", self.location, self.message)
    }
}

impl std::error::Error for ParseError {}

const MAX_EXPONENT: u64 = u16::MAX as u64;
const MAX_NESTING: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    loc: Location,
    start: usize,
    end: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Int(v) => format!("'{v}'"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::Eof => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut it = src.char_indices().peekable();
    while let Some(&(start, c)) = it.peek() {
        let loc = Location { line, column: col };
        let mut bump = |it: &mut std::iter::Peekable<std::str::CharIndices>| {
            let (_, c) = it.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        };
        if c.is_whitespace() {
            bump(&mut it);
            continue;
        }
        if c == '#' {
            while let Some(&(_, c)) = it.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut it);
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek() {
                if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                    s.push(c);
                    bump(&mut it);
                } else {
                    break;
                }
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut v: u64 = 0;
            let mut overflow = false;
            while let Some(&(_, c)) = it.peek() {
                let Some(d) = c.to_digit(10) else { break };
                match v.checked_mul(10).and_then(|v| v.checked_add(d as u64)) {
                    Some(w) => v = w,
                    None => overflow = true,
                }
                bump(&mut it);
            }
            if overflow {
                return Err(ParseError {
                    kind: ParseErrorKind::Lexical,
                    location: loc,
                    message: "integer literal does not fit in 64 bits".into(),
                });
            }
            Tok::Int(v)
        } else if "=;[],()+-*^/".contains(c) {
            bump(&mut it);
            Tok::Sym(c)
        } else {
            return Err(ParseError {
                kind: ParseErrorKind::Lexical,
                location: loc,
                message: format!("unexpected character {c:?}"),
            });
        };
        let end = it.peek().map_or(src.len(), |&(i, _)| i);
        out.push(Token { tok, loc, start, end });
    }
    out.push(Token {
        tok: Tok::Eof,
        loc: Location { line, column: col },
        start: src.len(),
        end: src.len(),
    });
    Ok(out)
}

#[derive(Clone, Debug)]
enum Symbol {
    Ring { vars: Vec<String> },
    Ideal { ring: String },
    Module { ring: String, quotient: bool },
}

impl Symbol {
    fn kind(&self) -> &'static str {
        match self {
            Symbol::Ring { .. } => "a ring",
            Symbol::Ideal { .. } => "an ideal",
            Symbol::Module { .. } => "a module",
        }
    }
}

const KEYWORDS: &[&str] = &[
    "ring", "ideal", "module", "quotient", "coker", "betti", "depth", "dim", "hilbert", "localcoh", "ext",
    "hom", "canonical", "lyubeznik", "ass", "formal", "verify",
];

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
    symbols: HashMap<String, Symbol>,
    current_ring: Option<String>,
    depth: usize,
}

type PResult<T> = Result<T, ParseError>;

fn err<T>(kind: ParseErrorKind, location: Location, message: impl Into<String>) -> PResult<T> {
    Err(ParseError {
        kind,
        location,
        message: message.into(),
    })
}

impl<'a> Parser<'a> {
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

    fn unexpected<T>(&self, what: &str) -> PResult<T> {
        let t = self.peek();
        err(
            ParseErrorKind::Syntax,
            t.loc,
            format!("expected {what}, found {}", describe(&t.tok)),
        )
    }

    fn expect_sym(&mut self, c: char) -> PResult<Token> {
        if self.peek().tok == Tok::Sym(c) {
            Ok(self.next())
        } else {
            self.unexpected(&format!("'{c}'"))
        }
    }

    fn expect_ident(&mut self, what: &str) -> PResult<(String, Location)> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                let loc = self.next().loc;
                Ok((s, loc))
            }
            _ => self.unexpected(what),
        }
    }

    fn expect_int(&mut self, what: &str) -> PResult<(u64, Location)> {
        match self.peek().tok {
            Tok::Int(v) => {
                let loc = self.next().loc;
                Ok((v, loc))
            }
            _ => self.unexpected(what),
        }
    }

    fn new_name(&mut self) -> PResult<(String, Location)> {
        let (name, loc) = self.expect_ident("a name")?;
        if KEYWORDS.contains(&name.as_str()) {
            return err(ParseErrorKind::Syntax, loc, format!("keyword '{name}' cannot be used as a name"));
        }
        if let Some(s) = self.symbols.get(&name) {
            return err(
                ParseErrorKind::Redeclaration,
                loc,
                format!("'{name}' is already declared as {}", s.kind()),
            );
        }
        Ok((name, loc))
    }

    fn lookup(&self, name: &str, loc: Location) -> PResult<&Symbol> {
        match self.symbols.get(name) {
            Some(s) => Ok(s),
            None => err(
                ParseErrorKind::UseBeforeDeclaration,
                loc,
                format!("'{name}' is used before it is declared"),
            ),
        }
    }

    fn session(&mut self) -> PResult<SessionScript> {
        let mut statements = Vec::new();
        while self.peek().tok != Tok::Eof {
            statements.push(self.statement()?);
        }
        Ok(SessionScript { statements })
    }

    fn statement(&mut self) -> PResult<Statement> {
        let first = self.peek().clone();
        let (kw, loc) = self.expect_ident("a declaration or command")?;
        let kind = match kw.as_str() {
            "ring" => self.ring_decl()?,
            "ideal" => self.ideal_decl(loc)?,
            "module" => self.module_decl(loc)?,
            "verify" => self.verify(loc)?,
            _ => StatementKind::Command(self.command(&kw, loc)?),
        };
        let semi = self.expect_sym(';')?;
        Ok(Statement {
            location: first.loc,
            text: self.src[first.start..semi.start].trim().to_string(),
            kind,
        })
    }

    fn ring_decl(&mut self) -> PResult<StatementKind> {
        let (name, _) = self.new_name()?;
        self.expect_sym('=')?;
        let (f, floc) = self.expect_ident("a field (QQ or ZZ/p)")?;
        let field = match f.as_str() {
            "QQ" => FieldDecl::Rationals,
            "ZZ" => {
                self.expect_sym('/')?;
                let (p, _) = self.expect_int("a prime")?;
                FieldDecl::Prime(p)
            }
            _ => return err(ParseErrorKind::Syntax, floc, format!("unknown field '{f}', expected QQ or ZZ/p")),
        };
        self.expect_sym('[')?;
        let mut vars: Vec<String> = Vec::new();
        loop {
            let (v, vloc) = self.expect_ident("a variable name")?;
            if vars.contains(&v) {
                return err(ParseErrorKind::Redeclaration, vloc, format!("variable '{v}' appears twice"));
            }
            vars.push(v);
            if self.peek().tok == Tok::Sym(',') {
                self.next();
            } else {
                break;
            }
        }
        self.expect_sym(']')?;
        self.symbols.insert(name.clone(), Symbol::Ring { vars: vars.clone() });
        self.current_ring = Some(name.clone());
        Ok(StatementKind::Ring { name, field, vars })
    }

    fn ring_vars(&self, loc: Location) -> PResult<(String, Vec<String>)> {
        let Some(ring) = &self.current_ring else {
            return err(ParseErrorKind::UseBeforeDeclaration, loc, "no ring has been declared");
        };
        let Some(Symbol::Ring { vars }) = self.symbols.get(ring) else { unreachable!() };
        Ok((ring.clone(), vars.clone()))
    }

    fn ideal_decl(&mut self, loc: Location) -> PResult<StatementKind> {
        let (ring, vars) = self.ring_vars(loc)?;
        let (name, _) = self.new_name()?;
        self.expect_sym('=')?;
        let mut gens = vec![self.expr(&vars)?];
        while self.peek().tok == Tok::Sym(',') {
            self.next();
            gens.push(self.expr(&vars)?);
        }
        self.symbols.insert(name.clone(), Symbol::Ideal { ring: ring.clone() });
        Ok(StatementKind::Ideal { name, ring, gens })
    }

    fn module_decl(&mut self, loc: Location) -> PResult<StatementKind> {
        let (name, _) = self.new_name()?;
        self.expect_sym('=')?;
        let (how, hloc) = self.expect_ident("'quotient' or 'coker'")?;
        let (ring, def, quotient) = match how.as_str() {
            "quotient" => {
                let (ideal, iloc) = self.expect_ident("an ideal name")?;
                let ring = match self.lookup(&ideal, iloc)? {
                    Symbol::Ideal { ring } => ring.clone(),
                    s => return err(ParseErrorKind::Type, iloc, format!("'{ideal}' is {}, expected an ideal", s.kind())),
                };
                (ring, ModuleDef::Quotient(ideal), true)
            }
            "coker" => {
                let (ring, vars) = self.ring_vars(loc)?;
                (ring, ModuleDef::Coker(self.matrix(&vars)?), false)
            }
            _ => return err(ParseErrorKind::Syntax, hloc, format!("expected 'quotient' or 'coker', found '{how}'")),
        };
        self.symbols.insert(name.clone(), Symbol::Module { ring: ring.clone(), quotient });
        Ok(StatementKind::Module { name, ring, def })
    }

    fn matrix(&mut self, vars: &[String]) -> PResult<Vec<Vec<Expr>>> {
        self.expect_sym('[')?;
        let mut rows: Vec<Vec<Expr>> = Vec::new();
        loop {
            let open = self.expect_sym('[')?;
            let mut row = vec![self.expr(vars)?];
            while self.peek().tok == Tok::Sym(',') {
                self.next();
                row.push(self.expr(vars)?);
            }
            self.expect_sym(']')?;
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return err(
                        ParseErrorKind::Syntax,
                        open.loc,
                        format!("row has {} entries, expected {}", row.len(), first.len()),
                    );
                }
            }
            rows.push(row);
            if self.peek().tok == Tok::Sym(',') {
                self.next();
            } else {
                break;
            }
        }
        self.expect_sym(']')?;
        Ok(rows)
    }

    fn verify(&mut self, loc: Location) -> PResult<StatementKind> {
        let first = self.peek().clone();
        if matches!(first.tok, Tok::Sym(';') | Tok::Eof) {
            return err(ParseErrorKind::Arity, loc, "verify expects 1 argument, found 0");
        }
        // claim ids such as C3-betti-bass-duality span several tokens
        let mut end = first.end;
        self.next();
        while !matches!(self.peek().tok, Tok::Sym(';') | Tok::Eof) && self.peek().start == end {
            end = self.next().end;
        }
        if !matches!(self.peek().tok, Tok::Sym(';') | Tok::Eof) {
            return err(ParseErrorKind::Arity, loc, "verify expects 1 argument, found more");
        }
        let word = &self.src[first.start..end];
        if word == "all" {
            return Ok(StatementKind::Command(Command::Verify(None)));
        }
        match ClaimId::parse(word) {
            Some(c) => Ok(StatementKind::Command(Command::Verify(Some(c)))),
            None => err(ParseErrorKind::Syntax, first.loc, format!("unknown claim id '{word}'")),
        }
    }

    fn command(&mut self, kw: &str, loc: Location) -> PResult<Command> {
        // expected argument shapes: 'm' module, 'r' ring source, 'i' ideal, 'n' integer
        let shape: &str = match kw {
            "betti" | "depth" | "dim" | "hilbert" | "localcoh" | "ass" => "m",
            "canonical" | "lyubeznik" => "r",
            "ext" => "mmn",
            "hom" => "mm",
            "formal" => "min",
            _ => return err(ParseErrorKind::Syntax, loc, format!("unknown command '{kw}'")),
        };
        let mut args: Vec<Token> = Vec::new();
        while !matches!(self.peek().tok, Tok::Sym(';') | Tok::Eof) {
            let t = self.next();
            if !matches!(t.tok, Tok::Ident(_) | Tok::Int(_)) {
                return err(ParseErrorKind::Syntax, t.loc, format!("unexpected {} in arguments", describe(&t.tok)));
            }
            args.push(t);
        }
        if args.len() != shape.len() {
            let plural = if shape.len() == 1 { "" } else { "s" };
            return err(
                ParseErrorKind::Arity,
                loc,
                format!("{kw} expects {} argument{plural}, found {}", shape.len(), args.len()),
            );
        }
        let mut names: Vec<String> = Vec::new();
        let mut ints: Vec<u64> = Vec::new();
        let mut module_ring: Option<String> = None;
        for (t, s) in args.iter().zip(shape.chars()) {
            if s == 'n' {
                match t.tok {
                    Tok::Int(v) => ints.push(v),
                    _ => return err(ParseErrorKind::Syntax, t.loc, format!("expected an integer, found {}", describe(&t.tok))),
                }
                continue;
            }
            let Tok::Ident(name) = &t.tok else {
                return err(ParseErrorKind::Syntax, t.loc, format!("expected a name, found {}", describe(&t.tok)));
            };
            let sym = self.lookup(name, t.loc)?.clone();
            let ok = match (s, &sym) {
                ('m', Symbol::Module { ring, .. }) => {
                    if let Some(r) = &module_ring {
                        if r != ring {
                            return err(
                                ParseErrorKind::Type,
                                t.loc,
                                format!("'{name}' lives over {ring}, expected a module over {r}"),
                            );
                        }
                    }
                    module_ring = Some(ring.clone());
                    true
                }
                ('i', Symbol::Ideal { ring }) => module_ring.as_deref() == Some(ring.as_str()),
                ('r', Symbol::Ring { .. } | Symbol::Ideal { .. }) => true,
                ('r', Symbol::Module { quotient, .. }) => *quotient,
                _ => false,
            };
            if !ok {
                let want = match s {
                    'm' => "a module".to_string(),
                    'i' => format!("an ideal of {}", module_ring.as_deref().unwrap_or("the module's ring")),
                    _ => "a ring, an ideal or a quotient module".to_string(),
                };
                return err(ParseErrorKind::Type, t.loc, format!("'{name}' is {}, expected {want}", sym.kind()));
            }
            names.push(name.clone());
        }
        let int_arg = |k: usize, what: &str, max: u64| -> PResult<u64> {
            let v = ints[k];
            if v > max {
                let t = args.iter().filter(|t| matches!(t.tok, Tok::Int(_))).nth(k).unwrap();
                return err(ParseErrorKind::Syntax, t.loc, format!("{what} must be at most {max}"));
            }
            Ok(v)
        };
        let one = || names[0].clone();
        Ok(match kw {
            "betti" => Command::Betti(one()),
            "depth" => Command::Depth(one()),
            "dim" => Command::Dim(one()),
            "hilbert" => Command::Hilbert(one()),
            "localcoh" => Command::LocalCoh(one()),
            "ass" => Command::Ass(one()),
            "canonical" => Command::Canonical(one()),
            "lyubeznik" => Command::Lyubeznik(one()),
            "ext" => Command::Ext(names[0].clone(), names[1].clone(), int_arg(0, "the Ext index", 64)? as usize),
            "hom" => Command::Hom(names[0].clone(), names[1].clone()),
            "formal" => Command::Formal {
                module: names[0].clone(),
                ideal: names[1].clone(),
                t: int_arg(0, "the number of stages", 64)? as u32,
            },
            _ => unreachable!(),
        })
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek().tok, Tok::Int(_) | Tok::Ident(_) | Tok::Sym('('))
    }

    fn nest(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return err(ParseErrorKind::Syntax, self.peek().loc, "expression nested too deeply");
        }
        Ok(())
    }

    fn expr(&mut self, vars: &[String]) -> PResult<Expr> {
        let mut terms = vec![(false, self.term(vars)?)];
        loop {
            let negate = match self.peek().tok {
                Tok::Sym('+') => false,
                Tok::Sym('-') => true,
                _ => break,
            };
            self.next();
            terms.push((negate, self.term(vars)?));
        }
        Ok(if terms.len() == 1 && !terms[0].0 {
            terms.pop().unwrap().1
        } else {
            Expr::Sum(terms)
        })
    }

    fn term(&mut self, vars: &[String]) -> PResult<Expr> {
        let mut factors = vec![self.unary(vars)?];
        loop {
            if self.peek().tok == Tok::Sym('*') {
                self.next();
                factors.push(self.unary(vars)?);
            } else if self.starts_factor() {
                factors.push(self.power(vars)?);
            } else {
                break;
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::Product(factors)
        })
    }

    fn unary(&mut self, vars: &[String]) -> PResult<Expr> {
        self.nest()?;
        let out = match self.peek().tok {
            Tok::Sym('-') => {
                self.next();
                Expr::Neg(Box::new(self.unary(vars)?))
            }
            Tok::Sym('+') => {
                self.next();
                self.unary(vars)?
            }
            _ => self.power(vars)?,
        };
        self.depth -= 1;
        Ok(out)
    }

    fn power(&mut self, vars: &[String]) -> PResult<Expr> {
        let base = self.atom(vars)?;
        if self.peek().tok != Tok::Sym('^') {
            return Ok(base);
        }
        self.next();
        let (e, loc) = self.expect_int("an exponent")?;
        if e > MAX_EXPONENT {
            return err(ParseErrorKind::Syntax, loc, format!("exponent exceeds {MAX_EXPONENT}"));
        }
        Ok(Expr::Pow(Box::new(base), e as u32))
    }

    fn atom(&mut self, vars: &[String]) -> PResult<Expr> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(v) => {
                self.next();
                Ok(Expr::Int(*v))
            }
            Tok::Ident(name) => match vars.iter().position(|v| v == name) {
                Some(k) => {
                    self.next();
                    Ok(Expr::Var(k))
                }
                None => err(
                    ParseErrorKind::UseBeforeDeclaration,
                    t.loc,
                    format!("'{name}' is not a variable of ring {}", self.current_ring.as_deref().unwrap_or("?")),
                ),
            },
            Tok::Sym('(') => {
                self.nest()?;
                self.next();
                let e = self.expr(vars)?;
                self.expect_sym(')')?;
                self.depth -= 1;
                Ok(e)
            }
            _ => self.unexpected("a polynomial"),
        }
    }
}

pub fn parse_session(src: &str) -> Result<SessionScript, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        src,
        toks,
        pos: 0,
        symbols: HashMap::new(),
        current_ring: None,
        depth: 0,
    };
    p.session()
}

/// Like [`parse_session`], reporting invalid UTF-8 as a lexical error.
pub fn parse_bytes(bytes: &[u8]) -> Result<SessionScript, ParseError> {
    match std::str::from_utf8(bytes) {
        Ok(s) => parse_session(s),
        Err(e) => {
            let good = &bytes[..e.valid_up_to()];
            let line = 1 + good.iter().filter(|b| **b == b'\n').count();
            let tail = good.iter().rev().take_while(|b| **b != b'\n').count();
            let column = 1 + String::from_utf8_lossy(&good[good.len() - tail..]).chars().count();
            err(ParseErrorKind::Lexical, Location { line, column }, "invalid UTF-8")
        }
    }
}
