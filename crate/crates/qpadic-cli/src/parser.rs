//! Expression grammar shared by every dialect:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-'* atom ('^' '-'? digits)?
//! atom   := rational | 'q' | generator | '(' expr ')'
//! rational := '-'? digits ('/' digits)?
//! generator := E | F | K | K_- | a | b | c | d | z
//! ```
//!
//! `q` is reserved and resolves to the session's deformation parameter.
//! Errors carry the 1-based line and column of the offending token.

use std::fmt;

use qpadic::PadicScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Scalar(PadicScalar),
    /// The reserved deformation literal `q`.
    QLit,
    Gen(String, Pos),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64, Pos),
}

#[derive(Clone, Debug, PartialEq)]
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

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {}
            '+' => out.push((Tok::Plus, pos)),
            '-' => out.push((Tok::Minus, pos)),
            '*' => out.push((Tok::Star, pos)),
            '^' => out.push((Tok::Caret, pos)),
            '(' => out.push((Tok::LParen, pos)),
            ')' => out.push((Tok::RParen, pos)),
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while i < chars.len() && chars[i].is_ascii_digit() {
                    s.push(chars[i]);
                    i += 1;
                    col += 1;
                }
                // rational literal n/d
                if i < chars.len() && chars[i] == '/' {
                    s.push('/');
                    i += 1;
                    col += 1;
                    if i >= chars.len() || !chars[i].is_ascii_digit() {
                        return Err(ParseError {
                            pos: Pos { line, col },
                            message: "expected digits after `/`".into(),
                        });
                    }
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        s.push(chars[i]);
                        i += 1;
                        col += 1;
                    }
                }
                out.push((Tok::Num(s), pos));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    s.push(chars[i]);
                    i += 1;
                    col += 1;
                }
                // the negative-Cartan generator K_-
                if s == "K" && i + 1 < chars.len() && chars[i] == '_' && chars[i + 1] == '-' {
                    s.push('_');
                    s.push('-');
                    i += 2;
                    col += 2;
                }
                out.push((Tok::Ident(s), pos));
                continue;
            }
            other => {
                return Err(ParseError {
                    pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
        col += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.pos(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            let pos = self.pos();
            self.bump();
            let negative = if self.peek() == Some(&Tok::Minus) {
                self.bump();
                true
            } else {
                false
            };
            let e = match self.bump() {
                Some(Tok::Num(s)) if !s.contains('/') => s
                    .parse::<i64>()
                    .map_err(|_| ParseError {
                        pos,
                        message: format!("exponent `{s}` overflows"),
                    })?,
                _ => {
                    return Err(ParseError {
                        pos,
                        message: "expected an integer exponent after `^`".into(),
                    })
                }
            };
            return Ok(Expr::Pow(
                Box::new(base),
                if negative { -e } else { e },
                pos,
            ));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(s)) => Ok(Expr::Scalar(s.parse().map_err(|_| ParseError {
                pos,
                message: format!("bad rational literal `{s}`"),
            })?)),
            Some(Tok::Ident(s)) if s == "q" => Ok(Expr::QLit),
            Some(Tok::Ident(s)) => Ok(Expr::Gen(s, pos)),
            Some(Tok::LParen) => {
                let inner = match self.expr() {
                    Ok(i) => i,
                    // ran off the end inside the group: blame the `(`
                    Err(e) if self.peek().is_none() => {
                        return Err(ParseError {
                            pos,
                            message: if e.message == "unexpected end of input" {
                                "unclosed parenthesis".into()
                            } else {
                                e.message
                            },
                        })
                    }
                    Err(e) => return Err(e),
                };
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(ParseError {
                        pos,
                        message: "unclosed parenthesis".into(),
                    }),
                }
            }
            Some(t) => Err(ParseError {
                pos,
                message: format!("unexpected token {t:?}"),
            }),
            None => Err(ParseError {
                pos,
                message: "unexpected end of input".into(),
            }),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let last_line = 1 + src.matches('\n').count() as u32;
    let end = Pos {
        line: last_line,
        col: src.lines().last().map_or(1, |l| l.chars().count() as u32 + 1),
    };
    let mut p = Parser { toks, at: 0, end };
    if p.peek().is_none() {
        return Err(p.err("empty expression"));
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input after expression"));
    }
    Ok(e)
}
