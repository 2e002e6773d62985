//! Text syntax for product expressions.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! expr     := term (('*'? term) | ('/' term))*
//! term     := group ('^' sint)?
//! group    := '(' arglist ';' modulus ')'
//! arglist  := monomial (',' monomial)*
//! monomial := ('-'|'+')? 'q' ('^' uint)?
//! modulus  := 'q' ('^' uint)?
//! sint     := ('-')? uint
//! ```
//!
//! `(a,b;m)` abbreviates `(a;m)(b;m)`, juxtaposition (or `*`) multiplies,
//! `/` divides, and `^` raises a group to an integer power.  [`format`]
//! prints the canonical form of an expression; parsing it back yields the
//! normalized factor list, so `parse(format(e)) == e.normalize()` whenever
//! the normalized product is nonempty.  (An empty product prints as `1`,
//! which the grammar deliberately does not accept — every expression must
//! contain at least one group.)

use thiserror::Error;

use crate::products::{Factor, ProductExpr, Sign};

/// Lexical token kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    LParen,
    RParen,
    Comma,
    Semicolon,
    Caret,
    Star,
    Slash,
    Plus,
    Minus,
    Q,
    Integer,
}

/// One token with its byte offset in the source string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub position: usize,
}

/// Parse failure: byte position, what the parser wanted, what it saw.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("expected {expected}, found {found} at position {position}")]
pub struct ParseError {
    pub position: usize,
    pub expected: String,
    pub found: String,
}

fn error(position: usize, expected: &str, found: impl Into<String>) -> ParseError {
    ParseError { position, expected: expected.to_string(), found: found.into() }
}

/// Splits the source into tokens; fails on any character outside the
/// grammar's alphabet.
pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        let kind = match ch {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            ',' => TokenKind::Comma,
            ';' => TokenKind::Semicolon,
            '^' => TokenKind::Caret,
            '*' => TokenKind::Star,
            '/' => TokenKind::Slash,
            '+' => TokenKind::Plus,
            '-' => TokenKind::Minus,
            'q' => TokenKind::Q,
            '0'..='9' => {
                let mut text = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        text.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token { kind: TokenKind::Integer, text, position: pos });
                continue;
            }
            other => {
                return Err(error(pos, "a valid token", format!("'{other}'")));
            }
        };
        chars.next();
        tokens.push(Token { kind, text: ch.to_string(), position: pos });
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_kind(&self) -> Option<TokenKind> {
        self.peek().map(|t| t.kind)
    }

    fn advance(&mut self) -> &Token {
        let t = &self.tokens[self.pos];
        self.pos += 1;
        t
    }

    fn fail(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => error(t.position, expected, format!("'{}'", t.text)),
            None => error(self.end, expected, "end of input"),
        }
    }

    fn expect(&mut self, kind: TokenKind, expected: &str) -> Result<&Token, ParseError> {
        if self.peek_kind() == Some(kind) {
            Ok(self.advance())
        } else {
            Err(self.fail(expected))
        }
    }

    fn uint(&mut self) -> Result<i64, ParseError> {
        let t = self.expect(TokenKind::Integer, "an integer")?;
        let position = t.position;
        let text = t.text.clone();
        text.parse::<i64>()
            .map_err(|_| error(position, "an integer small enough for 64 bits", format!("'{text}'")))
    }

    fn sint(&mut self) -> Result<i64, ParseError> {
        if self.peek_kind() == Some(TokenKind::Minus) {
            self.advance();
            Ok(-self.uint()?)
        } else {
            self.uint()
        }
    }

    /// `('-'|'+')? 'q' ('^' uint)?` — returns sign and exponent.
    fn monomial(&mut self) -> Result<(Sign, i64), ParseError> {
        let sign = match self.peek_kind() {
            Some(TokenKind::Minus) => {
                self.advance();
                Sign::Minus
            }
            Some(TokenKind::Plus) => {
                self.advance();
                Sign::Plus
            }
            _ => Sign::Plus,
        };
        self.expect(TokenKind::Q, "'q'")?;
        let exponent = if self.peek_kind() == Some(TokenKind::Caret) {
            self.advance();
            self.uint()?
        } else {
            1
        };
        Ok((sign, exponent))
    }

    /// `group ('^' sint)?` — pushes one factor per listed monomial.
    fn term(&mut self, factors: &mut Vec<Factor>, inverted: bool) -> Result<(), ParseError> {
        self.expect(TokenKind::LParen, "'('")?;
        let mut monomials = vec![self.monomial()?];
        while self.peek_kind() == Some(TokenKind::Comma) {
            self.advance();
            monomials.push(self.monomial()?);
        }
        self.expect(TokenKind::Semicolon, "',' or ';'")?;
        self.expect(TokenKind::Q, "'q'")?;
        let modulus = if self.peek_kind() == Some(TokenKind::Caret) {
            self.advance();
            self.uint()?
        } else {
            1
        };
        self.expect(TokenKind::RParen, "')'")?;
        let mut exponent = if self.peek_kind() == Some(TokenKind::Caret) {
            self.advance();
            self.sint()?
        } else {
            1
        };
        if inverted {
            exponent = -exponent;
        }
        if exponent == 0 {
            return Ok(());
        }
        let multiplicity: i32 = exponent
            .try_into()
            .map_err(|_| error(self.end, "a smaller exponent", format!("'{exponent}'")))?;
        for (sign, offset) in monomials {
            factors.push(Factor { sign, offset, modulus, multiplicity });
        }
        Ok(())
    }
}

/// Parses a product expression.  The factor list preserves source order;
/// call [`ProductExpr::normalize`] for the canonical form.
pub fn parse(src: &str) -> Result<ProductExpr, ParseError> {
    let tokens = tokenize(src)?;
    let mut p = Parser { tokens, pos: 0, end: src.len() };
    let mut factors = Vec::new();
    p.term(&mut factors, false)?;
    loop {
        match p.peek_kind() {
            None => break,
            Some(TokenKind::Slash) => {
                p.advance();
                p.term(&mut factors, true)?;
            }
            Some(TokenKind::Star) => {
                p.advance();
                p.term(&mut factors, false)?;
            }
            Some(TokenKind::LParen) => p.term(&mut factors, false)?,
            Some(_) => return Err(p.fail("'*', '/', or '('")),
        }
    }
    Ok(ProductExpr::new(factors))
}

fn push_monomial(out: &mut String, sign: Sign, offset: i64) {
    if sign == Sign::Minus {
        out.push('-');
    }
    out.push('q');
    if offset != 1 {
        out.push_str(&format!("^{offset}"));
    }
}

fn push_group(out: &mut String, group: &[Factor], exponent: i64) {
    out.push('(');
    for (i, f) in group.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        push_monomial(out, f.sign, f.offset);
    }
    out.push(';');
    out.push('q');
    let modulus = group[0].modulus;
    if modulus != 1 {
        out.push_str(&format!("^{modulus}"));
    }
    out.push(')');
    if exponent != 1 {
        out.push_str(&format!("^{exponent}"));
    }
}

/// Renders the canonical (normalized) form.  Factors sharing a modulus and
/// multiplicity collapse into one `(a,b,...;m)` group; denominator groups
/// follow `/`.  The empty product prints as `1`.
pub fn format(expr: &ProductExpr) -> String {
    let normal = expr.normalize();
    if normal.is_one() {
        return "1".to_string();
    }
    let mut groups: Vec<(i64, i32, Vec<Factor>)> = Vec::new();
    for f in normal.factors() {
        match groups.last_mut() {
            Some((m, mult, list)) if *m == f.modulus && *mult == f.multiplicity => list.push(*f),
            _ => groups.push((f.modulus, f.multiplicity, vec![*f])),
        }
    }
    let mut out = String::new();
    for (_, mult, list) in &groups {
        if *mult < 0 && !out.is_empty() {
            out.push('/');
            push_group(&mut out, list, i64::from(-*mult));
        } else {
            push_group(&mut out, list, i64::from(*mult));
        }
    }
    out
}
