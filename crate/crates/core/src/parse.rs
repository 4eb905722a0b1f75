//! A small expression reader for polynomials with GF(2) coefficients.
//!
//! Accepts sums and products of identifiers, integers, powers and
//! parenthesised subexpressions. Integer coefficients are reduced mod 2 and
//! `-` is read as `+`. The result is expanded into a set of monomials keyed
//! by variable name, with no knowledge of any ring or truncation; callers
//! map names onto ring generators or series variables.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// A monomial by variable name.
pub type NamedMonomial = BTreeMap<String, u32>;

/// An expanded polynomial over GF(2).
pub type NamedPoly = BTreeSet<NamedMonomial>;

const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Int(u64),
    Plus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' | '-' => {
                out.push(Token::Plus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("integer `{s}` is too large")))?;
                out.push(Token::Int(n));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

fn mul(a: &NamedPoly, b: &NamedPoly) -> NamedPoly {
    let mut out = NamedPoly::new();
    for x in a {
        for y in b {
            let mut m = x.clone();
            for (name, e) in y {
                *m.entry(name.clone()).or_insert(0) += e;
            }
            if !out.remove(&m) {
                out.insert(m);
            }
        }
    }
    out
}

fn add_into(acc: &mut NamedPoly, b: NamedPoly) {
    for m in b {
        if !acc.remove(&m) {
            acc.insert(m);
        }
    }
}

fn one() -> NamedPoly {
    let mut p = NamedPoly::new();
    p.insert(NamedMonomial::new());
    p
}

fn pow(base: &NamedPoly, mut e: u32) -> NamedPoly {
    let mut acc = one();
    let mut sq = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &sq);
        }
        e >>= 1;
        if e > 0 {
            sq = mul(&sq, &sq);
        }
    }
    acc
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<NamedPoly> {
        let mut acc = self.product()?;
        while self.peek() == Some(&Token::Plus) {
            self.pos += 1;
            let rhs = self.product()?;
            add_into(&mut acc, rhs);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<NamedPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let rhs = self.power()?;
                    acc = mul(&acc, &rhs);
                }
                // juxtaposition such as `2x` or `(x)(y)`
                Some(Token::Ident(_)) | Some(Token::LParen) | Some(Token::Int(_)) => {
                    let rhs = self.power()?;
                    acc = mul(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<NamedPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Token::Int(e)) if e <= MAX_EXPONENT as u64 => Ok(pow(&base, e as u32)),
                Some(Token::Int(e)) => Err(Error::Parse(format!("exponent {e} is too large"))),
                other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<NamedPoly> {
        match self.next() {
            Some(Token::Ident(name)) => {
                let mut m = NamedMonomial::new();
                m.insert(name, 1);
                let mut p = NamedPoly::new();
                p.insert(m);
                Ok(p)
            }
            Some(Token::Int(n)) => Ok(if n % 2 == 1 { one() } else { NamedPoly::new() }),
            Some(Token::LParen) => {
                let inner = self.sum()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    other => Err(Error::Parse(format!("expected `)`, found {other:?}"))),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses and fully expands `text` over GF(2).
pub fn parse_named_poly(text: &str) -> Result<NamedPoly> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { tokens, pos: 0 };
    let out = p.sum()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input after token {}",
            p.pos.min(p.tokens.len())
        )));
    }
    Ok(out)
}
