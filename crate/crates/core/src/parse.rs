//! Hand-written lexer and recursive-descent parser for the Prolog-like
//! surface syntax: terms, equations, types, definition files (`.types`),
//! signature files (`.sig`), contexts, programs (`.pl`) and queries.
//!
//! Operators are fixed: `=` and `is` between two terms in goal position,
//! `+` (left associative) inside terms, `:-`, `-->`, `,`, `*`, `->`, `:`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use ordered_float::OrderedFloat;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::env::{SigDecl, TypeDef};
use crate::print::is_ident_char;
use crate::syntax::{BaseType, Literal, Name, Term, TypeExpr, TypeScheme, CONS, NIL};
use crate::tsld::Clause;
use crate::typing::Context;

/// A 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SourceSpan {
    pub file: Arc<str>,
    pub line: u32,
    pub column: u32,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
}

const INLINE: &str = "<input>";

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Var(String),
    Name { text: String, quoted: bool },
    Int(i64),
    Float(f64),
    Str(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Bar,
    Comma,
    End,
    Neck,
    Produces,
    Plus,
    Star,
    Arrow,
    Colon,
    Eq,
    Query,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Var(v) => format!("variable `{v}`"),
            Tok::Name { text, .. } => format!("`{text}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Float(x) => format!("`{x:?}`"),
            Tok::Str(_) => "string".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Comma => "`,`".into(),
            Tok::End => "`.`".into(),
            Tok::Neck => "`:-`".into(),
            Tok::Produces => "`-->`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Query => "`?-`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    file: Arc<str>,
    line: u32,
    column: u32,
}

impl<'a> Lexer<'a> {
    fn span(&self) -> SourceSpan {
        SourceSpan { file: self.file.clone(), line: self.line, column: self.column }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next().map(|(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, span: SourceSpan, message: impl Into<String>) -> ParseError {
        ParseError { message: message.into(), span }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '%' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_trivia();
            let span = self.span();
            let Some(c) = self.peek() else {
                out.push((Tok::Eof, span));
                return Ok(out);
            };
            let tok = match c {
                '(' => self.single(Tok::LParen),
                ')' => self.single(Tok::RParen),
                '[' => self.single(Tok::LBrack),
                ']' => self.single(Tok::RBrack),
                '|' => self.single(Tok::Bar),
                ',' => self.single(Tok::Comma),
                '+' => self.single(Tok::Plus),
                '*' => self.single(Tok::Star),
                '=' => self.single(Tok::Eq),
                '.' => {
                    self.bump();
                    match self.peek() {
                        None => Tok::End,
                        Some(n) if n.is_whitespace() || n == '%' => Tok::End,
                        Some(n) => return Err(self.error(span, format!("unexpected `{n}` after `.`"))),
                    }
                }
                ':' => {
                    self.bump();
                    if self.peek() == Some('-') {
                        self.bump();
                        Tok::Neck
                    } else {
                        Tok::Colon
                    }
                }
                '?' if self.peek2() == Some('-') => {
                    self.bump();
                    self.bump();
                    Tok::Query
                }
                '-' if self.peek2().is_some_and(|d| d.is_ascii_digit()) => {
                    self.bump();
                    self.number(span.clone(), true)?
                }
                '-' if self.peek2() == Some('>') => {
                    self.bump();
                    self.bump();
                    Tok::Arrow
                }
                '-' if self.peek2() == Some('-') => {
                    self.bump();
                    self.bump();
                    if self.bump() != Some('>') {
                        return Err(self.error(span, "expected `-->`"));
                    }
                    Tok::Produces
                }
                '\'' => {
                    self.bump();
                    let text = self.quoted('\'', span.clone())?;
                    Tok::Name { text, quoted: true }
                }
                '"' => {
                    self.bump();
                    Tok::Str(self.quoted('"', span.clone())?)
                }
                c if c.is_ascii_digit() => self.number(span.clone(), false)?,
                c if c.is_uppercase() || c == '_' => Tok::Var(self.ident()),
                c if c.is_lowercase() => Tok::Name { text: self.ident(), quoted: false },
                other => return Err(self.error(span, format!("unexpected character `{other}`"))),
            };
            out.push((tok, span));
        }
    }

    fn single(&mut self, t: Tok) -> Tok {
        self.bump();
        t
    }

    fn ident(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if is_ident_char(c) {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        s
    }

    fn digits(&mut self, s: &mut String) {
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
    }

    fn number(&mut self, span: SourceSpan, negative: bool) -> Result<Tok, ParseError> {
        let mut s = String::new();
        if negative {
            s.push('-');
        }
        self.digits(&mut s);
        let mut float = false;
        if self.peek() == Some('.') && self.peek2().is_some_and(|d| d.is_ascii_digit()) {
            float = true;
            s.push('.');
            self.bump();
            self.digits(&mut s);
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let mut it = self.chars.clone();
            it.next();
            let next = it.next().map(|(_, c)| c);
            let after = it.next().map(|(_, c)| c);
            let exp = match next {
                Some(d) if d.is_ascii_digit() => true,
                Some('+' | '-') => after.is_some_and(|d| d.is_ascii_digit()),
                _ => false,
            };
            if exp {
                float = true;
                s.push('e');
                self.bump();
                if let Some(sign @ ('+' | '-')) = self.peek() {
                    s.push(sign);
                    self.bump();
                }
                self.digits(&mut s);
            }
        }
        if float {
            s.parse::<f64>().map(Tok::Float).map_err(|_| self.error(span, format!("bad float `{s}`")))
        } else {
            s.parse::<i64>()
                .map(Tok::Int)
                .map_err(|_| self.error(span, format!("integer `{s}` out of range")))
        }
    }

    fn quoted(&mut self, close: char, span: SourceSpan) -> Result<String, ParseError> {
        let mut s = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error(span, "unterminated quoted text")),
                Some(c) if c == close => return Ok(s),
                Some('\\') => match self.bump() {
                    Some('n') => s.push('\n'),
                    Some('t') => s.push('\t'),
                    Some(c) => s.push(c),
                    None => return Err(self.error(span, "unterminated quoted text")),
                },
                Some(c) => s.push(c),
            }
        }
    }
}

fn lex(text: &str, file: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    Lexer { chars: text.char_indices().peekable(), file: Arc::from(file), line: 1, column: 1 }.tokens()
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    /// Named variables in the input, so anonymous ones never clash.
    taken: BTreeSet<String>,
    anon: usize,
}

impl Parser {
    fn new(text: &str, file: &str) -> Result<Self, ParseError> {
        let toks = lex(text, file)?;
        let taken = toks
            .iter()
            .filter_map(|(t, _)| match t {
                Tok::Var(v) => Some(v.clone()),
                _ => None,
            })
            .collect();
        Ok(Parser { toks, pos: 0, taken, anon: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1.clone()
    }

    fn next(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn at(&self, t: &Tok) -> bool {
        self.peek() == t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.at(t) {
            self.next();
            true
        } else {
            false
        }
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ParseError> {
        Err(ParseError {
            message: format!("expected {wanted}, found {}", self.peek().describe()),
            span: self.span(),
        })
    }

    fn expect(&mut self, t: &Tok) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            self.unexpected(&t.describe())
        }
    }

    fn expect_eof(&mut self) -> Result<(), ParseError> {
        self.eat(&Tok::End);
        if self.at(&Tok::Eof) {
            Ok(())
        } else {
            self.unexpected("end of input")
        }
    }

    fn fresh_anon(&mut self) -> Name {
        loop {
            self.anon += 1;
            let n = format!("_G{}", self.anon);
            if !self.taken.contains(&n) {
                return Name::from(n);
            }
        }
    }

    fn nested_eq_check(&self) -> Result<(), ParseError> {
        if self.at(&Tok::Eq) {
            return Err(ParseError {
                message: "`=` may only appear at the top of an equation or goal".into(),
                span: self.span(),
            });
        }
        Ok(())
    }

    // term ::= primary ('+' primary)*
    fn term(&mut self) -> Result<Term, ParseError> {
        let mut t = self.primary()?;
        while self.eat(&Tok::Plus) {
            let r = self.primary()?;
            t = Term::Compound(Name::new("+"), vec![t, r]);
        }
        Ok(t)
    }

    fn inner_term(&mut self) -> Result<Term, ParseError> {
        let t = self.term()?;
        self.nested_eq_check()?;
        Ok(t)
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        let (tok, span) = self.next();
        match tok {
            Tok::Var(v) if v == "_" => Ok(Term::Var(self.fresh_anon())),
            Tok::Var(v) => Ok(Term::Var(Name::from(v))),
            Tok::Int(n) => Ok(Term::int(n)),
            Tok::Float(x) => Ok(Term::Const(Literal::Float(OrderedFloat(x)))),
            Tok::Str(s) => Ok(Term::string(&s)),
            Tok::Name { text, quoted } => {
                if self.eat(&Tok::LParen) {
                    let args = self.args()?;
                    let functor = if quoted && text == "." && args.len() == 2 { CONS } else { &text };
                    Ok(Term::Compound(Name::new(functor), args))
                } else {
                    Ok(Term::atom(&text))
                }
            }
            Tok::LBrack => {
                if self.eat(&Tok::RBrack) {
                    return Ok(Term::nil());
                }
                let mut items = vec![self.inner_term()?];
                while self.eat(&Tok::Comma) {
                    items.push(self.inner_term()?);
                }
                let tail = if self.eat(&Tok::Bar) { self.inner_term()? } else { Term::nil() };
                self.expect(&Tok::RBrack)?;
                Ok(items.into_iter().rev().fold(tail, |t, h| Term::cons(h, t)))
            }
            Tok::LParen => {
                let t = self.inner_term()?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            other => {
                Err(ParseError { message: format!("expected a term, found {}", other.describe()), span })
            }
        }
    }

    fn args(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = vec![self.inner_term()?];
        while self.eat(&Tok::Comma) {
            args.push(self.inner_term()?);
        }
        self.expect(&Tok::RParen)?;
        Ok(args)
    }

    // goal ::= term | term '=' term | term 'is' term
    fn goal(&mut self) -> Result<Term, ParseError> {
        let span = self.span();
        let lhs = self.term()?;
        if self.eat(&Tok::Eq) {
            let rhs = self.inner_term()?;
            return Ok(Term::Compound(Name::new("="), vec![lhs, rhs]));
        }
        if matches!(self.peek(), Tok::Name { text, quoted: false } if text == "is") {
            self.next();
            let rhs = self.inner_term()?;
            return Ok(Term::Compound(Name::new("is"), vec![lhs, rhs]));
        }
        match &lhs {
            Term::Const(Literal::Atom(_)) | Term::Compound(..) => Ok(lhs),
            other => Err(ParseError { message: format!("`{other}` is not a callable goal"), span }),
        }
    }

    fn goals(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut gs = vec![self.goal()?];
        while self.eat(&Tok::Comma) {
            gs.push(self.goal()?);
        }
        Ok(gs)
    }

    fn clause(&mut self) -> Result<Clause, ParseError> {
        let span = self.span();
        let head = self.inner_term()?;
        if !matches!(head, Term::Const(Literal::Atom(_)) | Term::Compound(..)) {
            return Err(ParseError { message: format!("`{head}` cannot head a clause"), span });
        }
        let body = if self.eat(&Tok::Neck) { self.goals()? } else { Vec::new() };
        self.expect(&Tok::End)?;
        Ok(Clause { head, body, span: Some(span) })
    }

    // type ::= Var | name ['(' type, .. ')'] | '[]' | '(' type ')'
    fn type_expr(&mut self) -> Result<TypeExpr, ParseError> {
        let (tok, span) = self.next();
        match tok {
            Tok::Var(v) if v == "_" => {
                Err(ParseError { message: "anonymous type variables are not allowed".into(), span })
            }
            Tok::Var(v) => Ok(TypeExpr::Var(Name::from(v))),
            Tok::LBrack => {
                self.expect(&Tok::RBrack)?;
                Ok(TypeExpr::ctor(NIL, vec![]))
            }
            Tok::LParen => {
                let t = self.type_expr()?;
                self.expect(&Tok::RParen)?;
                Ok(t)
            }
            Tok::Name { text, quoted } => {
                if self.eat(&Tok::LParen) {
                    let mut args = vec![self.type_expr()?];
                    while self.eat(&Tok::Comma) {
                        args.push(self.type_expr()?);
                    }
                    self.expect(&Tok::RParen)?;
                    return Ok(TypeExpr::sym(&text, args));
                }
                if !quoted {
                    if text == "bool" {
                        return Ok(TypeExpr::Bool);
                    }
                    if let Some(b) = BaseType::from_name(&text) {
                        return Ok(TypeExpr::Base(b));
                    }
                }
                Ok(TypeExpr::sym(&text, vec![]))
            }
            other => {
                Err(ParseError { message: format!("expected a type, found {}", other.describe()), span })
            }
        }
    }

    // scheme ::= type ('*' type)* ['->' type]
    fn scheme(&mut self) -> Result<TypeScheme, ParseError> {
        let mut domain = vec![self.type_expr()?];
        while self.eat(&Tok::Star) {
            domain.push(self.type_expr()?);
        }
        if self.eat(&Tok::Arrow) {
            let codomain = self.type_expr()?;
            Ok(TypeScheme::of_func(domain, codomain))
        } else if domain.len() == 1 {
            Ok(TypeScheme::of_type(domain.pop().expect("one type")))
        } else {
            self.unexpected("`->` after a product type")
        }
    }

    fn typedef(&mut self) -> Result<TypeDef, ParseError> {
        let span = self.span();
        let head = match self.next().0 {
            Tok::Name { text, .. } => text,
            other => {
                return Err(ParseError {
                    message: format!("expected a type symbol, found {}", other.describe()),
                    span,
                })
            }
        };
        let mut params = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                match self.next() {
                    (Tok::Var(v), _) if v != "_" => params.push(Name::from(v)),
                    (other, s) => {
                        return Err(ParseError {
                            message: format!("expected a type parameter, found {}", other.describe()),
                            span: s,
                        })
                    }
                }
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(&Tok::RParen)?;
        }
        self.expect(&Tok::Produces)?;
        let mut summands = vec![summand(self.type_expr()?)];
        while self.eat(&Tok::Plus) {
            summands.push(summand(self.type_expr()?));
        }
        self.expect(&Tok::End)?;
        Ok(TypeDef { head: Name::from(head), params, summands, span: Some(span) })
    }

    fn sig_decl(&mut self) -> Result<SigDecl, ParseError> {
        let span = self.span();
        let symbol = match self.next().0 {
            Tok::Name { text, .. } => Literal::atom(&text),
            Tok::Int(n) => Literal::Int(n),
            Tok::Float(x) => Literal::Float(OrderedFloat(x)),
            Tok::Str(s) => Literal::Str(Arc::from(s.as_str())),
            Tok::LBrack => {
                self.expect(&Tok::RBrack)?;
                Literal::atom(NIL)
            }
            other => {
                return Err(ParseError {
                    message: format!("expected a symbol, found {}", other.describe()),
                    span,
                })
            }
        };
        self.expect(&Tok::Colon)?;
        let scheme = self.scheme()?;
        self.expect(&Tok::End)?;
        Ok(SigDecl { symbol, scheme, span: Some(span) })
    }
}

/// Summands are type terms: a top-level application names a constructor.
fn summand(t: TypeExpr) -> TypeExpr {
    match t {
        TypeExpr::Sym(n, args) => TypeExpr::Ctor(n, args),
        other => other,
    }
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text, INLINE)?;
    let t = p.inner_term()?;
    p.expect_eof()?;
    Ok(t)
}

/// `t1 = t2`.
pub fn parse_equation(text: &str) -> Result<(Term, Term), ParseError> {
    let mut p = Parser::new(text, INLINE)?;
    let lhs = p.term()?;
    p.expect(&Tok::Eq)?;
    let rhs = p.inner_term()?;
    p.expect_eof()?;
    Ok((lhs, rhs))
}

/// A type as written by a user; names are resolved later against a
/// [`crate::env::TypeDefSet`].
pub fn parse_type(text: &str) -> Result<TypeExpr, ParseError> {
    let mut p = Parser::new(text, INLINE)?;
    let t = p.type_expr()?;
    p.expect_eof()?;
    Ok(t)
}

pub fn parse_typedefs(text: &str) -> Result<Vec<TypeDef>, ParseError> {
    parse_typedefs_in(text, INLINE)
}

/// `tsym(A, ..) --> summand + .. .` clauses, one per definition.
pub fn parse_typedefs_in(text: &str, file: &str) -> Result<Vec<TypeDef>, ParseError> {
    let mut p = Parser::new(text, file)?;
    let mut defs = Vec::new();
    while !p.at(&Tok::Eof) {
        defs.push(p.typedef()?);
    }
    Ok(defs)
}

pub fn parse_signatures(text: &str) -> Result<Vec<SigDecl>, ParseError> {
    parse_signatures_in(text, INLINE)
}

/// `symbol : t1 * .. * tn -> t.` declarations.
pub fn parse_signatures_in(text: &str, file: &str) -> Result<Vec<SigDecl>, ParseError> {
    let mut p = Parser::new(text, file)?;
    let mut decls = Vec::new();
    while !p.at(&Tok::Eof) {
        decls.push(p.sig_decl()?);
    }
    Ok(decls)
}

/// `X : int, Y : list(int)`, optionally ending in `.`; types are unresolved.
pub fn parse_context(text: &str) -> Result<Context, ParseError> {
    let mut p = Parser::new(text, INLINE)?;
    let mut ctx = Context::new();
    if p.at(&Tok::Eof) {
        return Ok(ctx);
    }
    loop {
        let span = p.span();
        let v = match p.next().0 {
            Tok::Var(v) if v != "_" => Name::from(v),
            other => {
                return Err(ParseError {
                    message: format!("expected a variable, found {}", other.describe()),
                    span,
                })
            }
        };
        if ctx.get(&v).is_some() {
            return Err(ParseError { message: format!("`{v}` is bound twice"), span });
        }
        p.expect(&Tok::Colon)?;
        ctx.bind(v, p.type_expr()?);
        if !p.eat(&Tok::Comma) {
            break;
        }
    }
    p.expect_eof()?;
    Ok(ctx)
}

pub fn parse_program(text: &str) -> Result<Vec<Clause>, ParseError> {
    parse_program_in(text, INLINE)
}

/// Horn clauses `head :- g1, .., gn.` and facts `head.`
pub fn parse_program_in(text: &str, file: &str) -> Result<Vec<Clause>, ParseError> {
    let mut p = Parser::new(text, file)?;
    let mut clauses = Vec::new();
    while !p.at(&Tok::Eof) {
        clauses.push(p.clause()?);
    }
    Ok(clauses)
}

/// `?- g1, .., gn.` with the prompt and final `.` optional.
pub fn parse_query(text: &str) -> Result<Vec<Term>, ParseError> {
    let mut p = Parser::new(text, INLINE)?;
    p.eat(&Tok::Query);
    let goals = p.goals()?;
    p.expect_eof()?;
    Ok(goals)
}
