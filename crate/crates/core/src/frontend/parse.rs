//! Lexer and recursive-descent parser for the ASCII surface syntax.
//!
//! ```text
//! type ::= forall X. type | prod [-> type]
//! prod ::= tatom [* prod]
//! tatom ::= Top | X | ( type )
//!
//! term ::= \x:type. term | /\X. term | app
//! app  ::= head { atom | [type] }
//! head ::= p1 atom | p2 atom | atom
//! atom ::= x | * | <term, term> | ( term ) | star tatom
//! ```
//!
//! Free term variables take their annotation from a [`Context`]; bound
//! ones take it from their binder.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::canon::{star, SystemId};
use crate::syntax::{Term, Type};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Annotations for free term variables.
pub type Context = BTreeMap<String, Type>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Backslash,
    TyLambda,
    Colon,
    Dot,
    Comma,
    LAngle,
    RAngle,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Star,
    Arrow,
    Lower(String),
    Upper(String),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Backslash => "`\\`".into(),
            Tok::TyLambda => "`/\\`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LAngle => "`<`".into(),
            Tok::RAngle => "`>`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Star => "`*`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Lower(s) | Tok::Upper(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let mut advance = 1;
        let tok = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => None,
            '\\' => Some(Tok::Backslash),
            '/' if chars.get(i + 1) == Some(&'\\') => {
                advance = 2;
                Some(Tok::TyLambda)
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                advance = 2;
                Some(Tok::Arrow)
            }
            ':' => Some(Tok::Colon),
            '.' => Some(Tok::Dot),
            ',' => Some(Tok::Comma),
            '<' => Some(Tok::LAngle),
            '>' => Some(Tok::RAngle),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '*' => Some(Tok::Star),
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                advance = j - i;
                let word: String = chars[i..j].iter().collect();
                Some(if c.is_ascii_uppercase() { Tok::Upper(word) } else { Tok::Lower(word) })
            }
            other => {
                return Err(ParseError {
                    line,
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        if let Some(tok) = tok {
            out.push(Spanned { tok, line: start_line, column: start_col });
        }
        i += advance;
        col += advance;
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}

const KEYWORDS: [&str; 4] = ["p1", "p2", "star", "forall"];

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    ctx: &'a Context,
    system: SystemId,
    /// Bound term variables, innermost last.
    scope: Vec<(String, Type)>,
}

impl<'a> Parser<'a> {
    fn new(src: &str, ctx: &'a Context, system: SystemId) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(src)?, pos: 0, ctx, system, scope: Vec::new() })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let s = &self.toks[self.pos];
        Err(ParseError { line: s.line, column: s.column, message: message.into() })
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {} but found {}", want.describe(), self.peek().describe()))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Lower(s) if s == kw)
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() != Tok::Eof {
            return self.error(format!("unexpected {}", self.peek().describe()));
        }
        Ok(())
    }

    fn type_var_name(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Upper(s) if s != "Top" => {
                self.bump();
                Ok(s)
            }
            other => self.error(format!("expected a type variable but found {}", other.describe())),
        }
    }

    fn term_var_name(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Lower(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            other => self.error(format!("expected a variable but found {}", other.describe())),
        }
    }

    fn ty(&mut self) -> Result<Type, ParseError> {
        if self.is_keyword("forall") {
            self.bump();
            let x = self.type_var_name()?;
            self.expect(Tok::Dot)?;
            return Ok(Type::Forall(x, Box::new(self.ty()?)));
        }
        let left = self.prod()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            return Ok(Type::arrow(left, self.ty()?));
        }
        Ok(left)
    }

    fn prod(&mut self) -> Result<Type, ParseError> {
        let left = self.type_atom()?;
        if *self.peek() == Tok::Star {
            self.bump();
            return Ok(Type::prod(left, self.prod()?));
        }
        Ok(left)
    }

    fn type_atom(&mut self) -> Result<Type, ParseError> {
        match self.peek().clone() {
            Tok::Upper(s) if s == "Top" => {
                self.bump();
                Ok(Type::Top)
            }
            Tok::Upper(s) => {
                self.bump();
                Ok(Type::Var(s))
            }
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            other => self.error(format!("expected a type but found {}", other.describe())),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Tok::Backslash => {
                self.bump();
                let x = self.term_var_name()?;
                self.expect(Tok::Colon)?;
                let ty = self.ty()?;
                self.expect(Tok::Dot)?;
                self.scope.push((x.clone(), ty.clone()));
                let body = self.term();
                self.scope.pop();
                Ok(Term::Abs(x, ty, Box::new(body?)))
            }
            Tok::TyLambda => {
                self.bump();
                let x = self.type_var_name()?;
                self.expect(Tok::Dot)?;
                Ok(Term::TyAbs(x, Box::new(self.term()?)))
            }
            _ => self.app(),
        }
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Lower(s) => s != "p1" && s != "p2",
            Tok::Star | Tok::LAngle | Tok::LParen => true,
            _ => false,
        }
    }

    fn app(&mut self) -> Result<Term, ParseError> {
        let mut acc = if self.is_keyword("p1") || self.is_keyword("p2") {
            let first = self.is_keyword("p1");
            self.bump();
            let arg = self.atom()?;
            if first { Term::proj1(arg) } else { Term::proj2(arg) }
        } else {
            self.atom()?
        };
        loop {
            if *self.peek() == Tok::LBracket {
                self.bump();
                let ty = self.ty()?;
                self.expect(Tok::RBracket)?;
                acc = Term::ty_app(acc, ty);
            } else if self.starts_atom() {
                acc = Term::app(acc, self.atom()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Star => {
                self.bump();
                Ok(Term::Star)
            }
            Tok::LAngle => {
                self.bump();
                let a = self.term()?;
                self.expect(Tok::Comma)?;
                let b = self.term()?;
                self.expect(Tok::RAngle)?;
                Ok(Term::pair(a, b))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Lower(s) if s == "star" => {
                let (line, column) = (self.toks[self.pos].line, self.toks[self.pos].column);
                self.bump();
                let ty = self.type_atom()?;
                star(&ty, self.system).map_err(|e| ParseError { line, column, message: e.to_string() })
            }
            Tok::Lower(_) if matches!(self.peek_at(0), Tok::Lower(s) if KEYWORDS.contains(&s.as_str())) => {
                self.error(format!("unexpected keyword {}", self.peek().describe()))
            }
            Tok::Lower(name) => {
                let ty = match self.scope.iter().rev().find(|(n, _)| *n == name) {
                    Some((_, ty)) => ty.clone(),
                    None => match self.ctx.get(&name) {
                        Some(ty) => ty.clone(),
                        None => {
                            return self.error(format!(
                                "free variable `{name}` has no type; add it to the context"
                            ))
                        }
                    },
                };
                self.bump();
                Ok(Term::Var(name, ty))
            }
            other => self.error(format!("expected a term but found {}", other.describe())),
        }
    }

    fn context(&mut self) -> Result<Context, ParseError> {
        let mut ctx = Context::new();
        if *self.peek() == Tok::Eof {
            return Ok(ctx);
        }
        loop {
            let name = self.term_var_name()?;
            self.expect(Tok::Colon)?;
            let ty = self.ty()?;
            ctx.insert(name, ty);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                return Ok(ctx);
            }
        }
    }
}

pub fn parse_type(src: &str) -> Result<Type, ParseError> {
    let ctx = Context::new();
    let mut p = Parser::new(src, &ctx, SystemId::Cd2Param)?;
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}

/// Parses a closed term (no free variables); `star T` is expanded with
/// the largest terminal-type table.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    parse_term_in(src, &Context::new(), SystemId::Cd2Param)
}

/// Parses a term whose free variables are typed by `ctx`. `star T` expands
/// to the canonical term of `T` in `system`.
pub fn parse_term_in(src: &str, ctx: &Context, system: SystemId) -> Result<Term, ParseError> {
    let mut p = Parser::new(src, ctx, system)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses `x:T, y:U, ...`.
pub fn parse_context(src: &str) -> Result<Context, ParseError> {
    let empty = Context::new();
    let mut p = Parser::new(src, &empty, SystemId::Cd2Param)?;
    let ctx = p.context()?;
    p.finish()?;
    Ok(ctx)
}
