//! System files: a `p <prime>` line, a `vars x, y, z` line, then one
//! polynomial per line. `#` starts a comment; LF and CRLF are accepted.
//!
//! Polynomials use integers, variable names, `+ - * ^ ( )`. Products need
//! an explicit `*`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::monomial::{Exponent, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::{Ring, RingError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        column,
        message: message.into(),
    })
}

/// A parsed system file.
#[derive(Clone, Debug)]
pub struct SystemFile {
    pub ring: Ring,
    pub polys: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number '{n}'"),
        Tok::Ident(s) => format!("identifier '{s}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
    }
}

/// Tokens with their 1-based columns.
fn lex(line: usize, text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(chars[start..i].iter().collect()), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else {
            return err(line, col, format!("unexpected character '{c}'"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        err(self.line, self.col(), message)
    }

    fn number(&self, digits: &str) -> Polynomial {
        let p = self.ring.prime() as u64;
        let v = digits.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
        self.ring.constant(v as i64)
    }

    fn sum(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(self.ring, &self.product()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(self.ring, &self.product()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = acc.mul(self.ring, &self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.factor()?.neg(self.ring))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek().cloned() {
            Some(Tok::Num(d)) => {
                let e: Exponent = match d.parse() {
                    Ok(e) => e,
                    Err(_) => return self.fail(format!("exponent {d} is too large")),
                };
                self.pos += 1;
                Ok(base.pow(self.ring, e as u32))
            }
            Some(t) => self.fail(format!("expected an exponent, found {}", describe(&t))),
            None => self.fail("expected an exponent, found end of line"),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(d)) => {
                self.pos += 1;
                Ok(self.number(&d))
            }
            Some(Tok::Ident(name)) => match self.ring.var_by_name(&name) {
                Some(v) => {
                    self.pos += 1;
                    Ok(v)
                }
                None => self.fail(format!("unknown identifier '{name}'")),
            },
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.fail("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => self.fail(format!("expected a term, found {}", describe(&t))),
            None => self.fail("expected a term, found end of line"),
        }
    }

    fn finish(mut self) -> Result<Polynomial, ParseError> {
        let p = self.sum()?;
        match self.peek() {
            None => Ok(p),
            Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen) => {
                self.fail("implicit multiplication is not allowed, use '*'")
            }
            Some(t) => {
                let t = t.clone();
                self.fail(format!("unexpected {}", describe(&t)))
            }
        }
    }
}

/// Parses one polynomial; errors report `line` and columns within `text`.
pub fn parse_polynomial_at(ring: &Ring, text: &str, line: usize) -> Result<Polynomial, ParseError> {
    let toks = lex(line, text)?;
    let parser = Parser {
        ring,
        toks,
        pos: 0,
        line,
        end_col: text.chars().count() + 1,
    };
    parser.finish()
}

pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial, ParseError> {
    parse_polynomial_at(ring, text, 1)
}

fn strip_comment(line: &str) -> &str {
    let line = line.strip_suffix('\r').unwrap_or(line);
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn leading_ws(s: &str) -> usize {
    s.chars().take_while(|c| c.is_whitespace()).count()
}

/// Parses a system file; the ring gets the given monomial order.
pub fn parse_system_with_order(text: &str, order: MonomialOrder) -> Result<SystemFile, ParseError> {
    let mut prime: Option<u64> = None;
    let mut ring: Option<Ring> = None;
    let mut polys = Vec::new();
    for (k, raw) in text.split('\n').enumerate() {
        let line = k + 1;
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let indent = leading_ws(body);
        let trimmed = body.trim();
        match (prime, &ring) {
            (None, _) => {
                let rest = match trimmed.strip_prefix('p') {
                    Some(r) if r.starts_with(char::is_whitespace) => r,
                    _ => return err(line, indent + 1, "expected 'p <prime>'"),
                };
                let num = rest.trim();
                let col = indent + 1 + (trimmed.len() - rest.len()) + leading_ws(rest);
                let value: u64 = match num.parse() {
                    Ok(v) => v,
                    Err(_) => return err(line, col, format!("invalid characteristic '{num}'")),
                };
                if Ring::new(value, ["x"], order).is_err() {
                    return err(line, col, format!("characteristic {value} is not a prime below 2^31"));
                }
                prime = Some(value);
            }
            (Some(p), None) => {
                let rest = match trimmed.strip_prefix("vars") {
                    Some(r) if r.is_empty() || r.starts_with(char::is_whitespace) => r,
                    _ => return err(line, indent + 1, "expected 'vars <names>'"),
                };
                let col = indent + 1 + 4 + leading_ws(rest);
                let names: Vec<&str> = rest.split(',').map(str::trim).collect();
                if names.iter().all(|n| n.is_empty()) {
                    return err(line, col, "no variables declared");
                }
                match Ring::new(p, names.iter().copied(), order) {
                    Ok(r) => ring = Some(r),
                    Err(RingError::DuplicateVariable(v)) => return err(line, col, format!("duplicate variable '{v}'")),
                    Err(RingError::InvalidVariable(v)) => {
                        return err(line, col, format!("invalid variable name '{v}'"))
                    }
                    Err(e) => return err(line, col, e.to_string()),
                }
            }
            (Some(_), Some(r)) => polys.push(parse_polynomial_at(r, body, line)?),
        }
    }
    match ring {
        Some(ring) => Ok(SystemFile { ring, polys }),
        None => {
            let line = text.split('\n').count();
            let what = if prime.is_none() {
                "missing 'p <prime>' line"
            } else {
                "missing 'vars' line"
            };
            err(line, 1, what)
        }
    }
}

/// Parses a system file with the default DegRevLex order.
pub fn parse_system(text: &str) -> Result<SystemFile, ParseError> {
    parse_system_with_order(text, MonomialOrder::DegRevLex)
}

/// Canonical text: header, then one polynomial per line. `comments` become
/// leading `#` lines.
pub fn write_system(ring: &Ring, polys: &[Polynomial], comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for l in c.lines() {
            let _ = writeln!(out, "# {l}");
        }
    }
    let _ = writeln!(out, "p {}", ring.prime());
    let _ = writeln!(out, "vars {}", ring.var_names().join(", "));
    for p in polys {
        let _ = writeln!(out, "{}", p.display(ring));
    }
    out
}
