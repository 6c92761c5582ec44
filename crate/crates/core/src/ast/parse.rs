//! Recursive-descent parser for the formula grammar.
//!
//! ```text
//! formula := iff
//! iff     := imp ("<->" imp)*
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | binder unary | atom | "(" formula ")"
//! binder  := "(" VAR ")" | "(" "E" VAR ")"
//! atom    := PRED ( "(" term ("," term)* ")" )?
//! ```

use super::{to_prenex_sentence, Atom, Formula, PrenexSentence, Term};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Comma,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Upper(String),
    Lower(String),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::Upper(s) | Tok::Lower(s) => format!("`{s}`"),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn is_lower_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut iter = text.char_indices().peekable();
    while let Some(&(pos, c)) = iter.peek() {
        match c {
            c if c.is_whitespace() => {
                iter.next();
            }
            '#' => {
                while let Some(&(_, c)) = iter.peek() {
                    if c == '\n' {
                        break;
                    }
                    iter.next();
                }
            }
            '(' | ')' | ',' | '~' | '&' | '|' => {
                iter.next();
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    '~' => Tok::Not,
                    '&' => Tok::And,
                    _ => Tok::Or,
                };
                out.push((pos, tok));
            }
            '-' => {
                iter.next();
                match iter.next() {
                    Some((_, '>')) => out.push((pos, Tok::Implies)),
                    _ => return Err(Error::parse(pos, "expected `->`")),
                }
            }
            '<' => {
                iter.next();
                match (iter.next(), iter.next()) {
                    (Some((_, '-')), Some((_, '>'))) => out.push((pos, Tok::Iff)),
                    _ => return Err(Error::parse(pos, "expected `<->`")),
                }
            }
            c if c.is_ascii_alphabetic() => {
                let mut ident = String::new();
                while let Some(&(_, c)) = iter.peek() {
                    if !is_ident_char(c) {
                        break;
                    }
                    ident.push(c);
                    iter.next();
                }
                if c.is_ascii_uppercase() {
                    out.push((pos, Tok::Upper(ident)));
                } else if is_lower_ident(&ident) {
                    out.push((pos, Tok::Lower(ident)));
                } else {
                    return Err(Error::parse(
                        pos,
                        format!("`{ident}` is not a valid variable or constant name"),
                    ));
                }
            }
            other => return Err(Error::parse(pos, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
    bound: Vec<String>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.idx + offset).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(Error::parse(
                pos,
                format!("expected {}, found {}", want.describe(), t.describe()),
            )),
            None => Err(Error::parse(pos, format!("expected {}, found end of input", want.describe()))),
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.imp()?;
        while self.peek() == Some(&Tok::Iff) {
            self.bump();
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Implies) {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.bump();
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    /// Recognizes `(x)`, `(Ex)` and `(E x)` at the cursor.
    fn binder(&self) -> Option<(bool, String, usize)> {
        if self.peek() != Some(&Tok::LParen) {
            return None;
        }
        match (self.peek_at(1), self.peek_at(2), self.peek_at(3)) {
            (Some(Tok::Lower(v)), Some(Tok::RParen), _) => Some((true, v.clone(), 3)),
            (Some(Tok::Upper(e)), Some(Tok::RParen), _)
                if e.len() > 1 && e.starts_with('E') && is_lower_ident(&e[1..]) =>
            {
                Some((false, e[1..].to_string(), 3))
            }
            (Some(Tok::Upper(e)), Some(Tok::Lower(v)), Some(Tok::RParen)) if e == "E" => {
                Some((false, v.clone(), 4))
            }
            _ => None,
        }
    }

    fn unary(&mut self) -> Result<Formula> {
        if let Some((universal, var, len)) = self.binder() {
            self.idx += len;
            self.bound.push(var.clone());
            let body = self.unary();
            self.bound.pop();
            let body = body?;
            return Ok(if universal {
                Formula::forall(var, body)
            } else {
                Formula::exists(var, body)
            });
        }
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Not) => Ok(Formula::not(self.unary()?)),
            Some(Tok::LParen) => {
                let inner = self.iff()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(Tok::Upper(pred)) => {
                let mut args = Vec::new();
                if self.peek() == Some(&Tok::LParen) {
                    self.bump();
                    loop {
                        args.push(self.term()?);
                        let pos = self.pos();
                        match self.bump() {
                            Some(Tok::Comma) => continue,
                            Some(Tok::RParen) => break,
                            Some(t) => {
                                return Err(Error::parse(
                                    pos,
                                    format!("expected `,` or `)` in argument list, found {}", t.describe()),
                                ))
                            }
                            None => return Err(Error::parse(pos, "unterminated argument list")),
                        }
                    }
                }
                Ok(Formula::Atom(Atom::new(pred, args)))
            }
            Some(t) => Err(Error::parse(pos, format!("expected a formula, found {}", t.describe()))),
            None => Err(Error::parse(pos, "expected a formula, found end of input")),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Lower(name)) => {
                if self.bound.iter().any(|b| *b == name) {
                    Ok(Term::Var(name))
                } else {
                    Ok(Term::Const(name))
                }
            }
            Some(t) => Err(Error::parse(pos, format!("expected a term, found {}", t.describe()))),
            None => Err(Error::parse(pos, "expected a term, found end of input")),
        }
    }
}

/// Parses a formula. Fails on malformed text and on predicates used with two arities.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        idx: 0,
        end: text.len(),
        bound: Vec::new(),
    };
    let f = p.iff()?;
    if let Some(t) = p.peek() {
        let msg = format!("unexpected {} after complete formula", t.describe());
        return Err(Error::parse(p.pos(), msg));
    }
    f.signature()?;
    Ok(f)
}

pub fn parse_prenex(text: &str) -> Result<PrenexSentence> {
    to_prenex_sentence(&parse_formula(text)?)
}
