//! Tokenizer and recursive-descent parser shared by the term, potential and
//! rational-function text formats.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := product ("/" product)*        a/b*c means a/(b*c)
//! product := unary ("*" unary)*
//! unary   := "-" unary | power
//! power   := postfix [("^" | "**") ["-"] integer]
//! postfix := primary ["!"]
//! primary := integer | "n" | "k" | "H" "(" expr ")" | "(" expr ")"
//! ```
//!
//! Whitespace is ignored. Interpretation (which node kinds are legal where)
//! is left to the consumers.

use crate::error::{Error, Result};
use crate::numeric::{Integer, Rational};
use crate::poly::{Poly, RatFunc, Var};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(Integer),
    Var(Var),
    Harmonic(Box<Node>),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, i32),
    Factorial(Box<Node>),
}

/// An expression together with the byte offset where it starts.
#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub pos: usize,
    pub expr: Expr,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(Integer),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Bang,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: Integer = text[start..i].parse().unwrap();
                out.push((start, Tok::Int(v)));
                continue;
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            '*' if bytes.get(i + 1) == Some(&b'*') => {
                out.push((start, Tok::Caret));
                i += 2;
                continue;
            }
            _ => {}
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '!' => Tok::Bang,
            other => return Err(Error::syntax(start, format!("unexpected character '{other}'"))),
        };
        out.push((start, tok));
        i += c.len_utf8();
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(Error::syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Node {
                        pos,
                        expr: Expr::Add(Box::new(lhs), Box::new(rhs)),
                    };
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Node {
                        pos,
                        expr: Expr::Sub(Box::new(lhs), Box::new(rhs)),
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.product()?;
        while *self.peek() == Tok::Slash {
            let pos = self.pos();
            self.bump();
            let rhs = self.product()?;
            lhs = Node {
                pos,
                expr: Expr::Div(Box::new(lhs), Box::new(rhs)),
            };
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            let pos = self.pos();
            self.bump();
            let rhs = self.unary()?;
            lhs = Node {
                pos,
                expr: Expr::Mul(Box::new(lhs), Box::new(rhs)),
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node> {
        if *self.peek() == Tok::Minus {
            let pos = self.pos();
            self.bump();
            let inner = self.unary()?;
            return Ok(Node {
                pos,
                expr: Expr::Neg(Box::new(inner)),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.postfix()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let pos = self.pos();
        match self.bump().1 {
            Tok::Int(v) => {
                let e: i32 = i32::try_from(&v).map_err(|_| Error::syntax(pos, "exponent out of range"))?;
                let e = if neg { -e } else { e };
                Ok(Node {
                    pos: base.pos,
                    expr: Expr::Pow(Box::new(base), e),
                })
            }
            _ => Err(Error::syntax(pos, "expected integer exponent")),
        }
    }

    fn postfix(&mut self) -> Result<Node> {
        let base = self.primary()?;
        if *self.peek() == Tok::Bang {
            self.bump();
            return Ok(Node {
                pos: base.pos,
                expr: Expr::Factorial(Box::new(base)),
            });
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Node> {
        let (pos, tok) = self.bump();
        match tok {
            Tok::Int(v) => Ok(Node {
                pos,
                expr: Expr::Int(v),
            }),
            Tok::Ident(name) => match name.as_str() {
                "n" => Ok(Node {
                    pos,
                    expr: Expr::Var(Var::N),
                }),
                "k" => Ok(Node {
                    pos,
                    expr: Expr::Var(Var::K),
                }),
                "H" => {
                    self.expect(Tok::LParen, "'(' after H")?;
                    let inner = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Node {
                        pos,
                        expr: Expr::Harmonic(Box::new(inner)),
                    })
                }
                other => Err(Error::syntax(
                    pos,
                    format!("unknown name '{other}' (only n, k and H are allowed)"),
                )),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::End => Err(Error::syntax(pos, "unexpected end of input")),
            _ => Err(Error::syntax(pos, "expected a number, variable or '('")),
        }
    }
}

pub fn parse(text: &str) -> Result<Node> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0 };
    let node = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(Error::syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(node)
}

/// Interpret a node as a rational function (no factorials, no `H`).
pub fn to_ratfunc(node: &Node) -> Result<RatFunc> {
    Ok(match &node.expr {
        Expr::Int(v) => RatFunc::constant(Rational::from_integer(v.clone())),
        Expr::Var(v) => RatFunc::var(*v),
        Expr::Neg(a) => -to_ratfunc(a)?,
        Expr::Add(a, b) => &to_ratfunc(a)? + &to_ratfunc(b)?,
        Expr::Sub(a, b) => &to_ratfunc(a)? - &to_ratfunc(b)?,
        Expr::Mul(a, b) => &to_ratfunc(a)? * &to_ratfunc(b)?,
        Expr::Div(a, b) => {
            let d = to_ratfunc(b)?;
            if d.is_zero() {
                return Err(Error::syntax(b.pos, "division by zero"));
            }
            to_ratfunc(a)?.checked_div(&d)?
        }
        Expr::Pow(a, e) => {
            let base = to_ratfunc(a)?;
            if base.is_zero() && *e < 0 {
                return Err(Error::syntax(node.pos, "zero to a negative power"));
            }
            base.pow(*e)?
        }
        Expr::Factorial(_) => return Err(Error::syntax(node.pos, "factorial not allowed in a rational function")),
        Expr::Harmonic(_) => {
            return Err(Error::syntax(
                node.pos,
                "harmonic number not allowed in a rational function",
            ))
        }
    })
}

/// Interpret a node as a polynomial.
pub fn to_poly(node: &Node) -> Result<Poly> {
    let f = to_ratfunc(node)?;
    if !f.is_polynomial() {
        return Err(Error::syntax(node.pos, "expected a polynomial"));
    }
    Ok(f.num().clone())
}

/// Interpret a node as `a*n + b*k + c` with integer `a, b, c`.
pub fn to_linear(node: &Node) -> Result<(i64, i64, i64)> {
    let p = to_poly(node)?;
    let mut out = [0i64; 3];
    for (&(i, j), c) in p.terms() {
        let slot = match (i, j) {
            (1, 0) => 0,
            (0, 1) => 1,
            (0, 0) => 2,
            _ => return Err(Error::syntax(node.pos, "argument is not linear in n and k")),
        };
        if !c.is_integer() {
            return Err(Error::syntax(node.pos, "argument has non-integer coefficients"));
        }
        out[slot] = i64::try_from(c.to_integer()).map_err(|_| Error::syntax(node.pos, "coefficient out of range"))?;
    }
    Ok((out[0], out[1], out[2]))
}

pub fn parse_ratfunc(text: &str) -> Result<RatFunc> {
    to_ratfunc(&parse(text)?)
}

pub fn parse_poly(text: &str) -> Result<Poly> {
    to_poly(&parse(text)?)
}

/// True if the node is free of factorials and harmonic numbers.
pub fn is_rational(node: &Node) -> bool {
    match &node.expr {
        Expr::Int(_) | Expr::Var(_) => true,
        Expr::Harmonic(_) | Expr::Factorial(_) => false,
        Expr::Neg(a) | Expr::Pow(a, _) => is_rational(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => is_rational(a) && is_rational(b),
    }
}
