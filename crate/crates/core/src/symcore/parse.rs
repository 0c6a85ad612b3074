//! Recursive-descent parser for the coordinate DSL.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' '-'? integer)?
//! primary := integer | 'x'k | 'y'k | 'sigma' | func '(' expr ')' | '(' expr ')'
//! func    := 'sqrt' | 'exp' | 'log' | 'sin' | 'cos'
//! ```

use num_bigint::BigInt;

use super::expr::{Expr, Func};
use super::rational::Rational;
use super::SymError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

struct Lexer<'a> {
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn tokens(&self) -> Result<Vec<(usize, Tok)>, SymError> {
        let bytes = self.src.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = self.src[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
            } else if c.is_ascii_alphabetic() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(self.src[start..i].to_string())));
            } else if "+-*/^()".contains(c) {
                out.push((i, Tok::Op(c)));
                i += 1;
            } else {
                return Err(SymError::Syntax {
                    offset: i,
                    message: format!("unexpected character `{}`", self.src[i..].chars().next().unwrap()),
                });
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    dim: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, SymError> {
        Err(SymError::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, SymError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SymError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                acc = acc / self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, SymError> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, SymError> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                let Ok(k) = i32::try_from(n) else {
                    return self.err("exponent out of range");
                };
                self.pos += 1;
                Ok(Expr::powi(base, if neg { -k } else { k }))
            }
            _ => self.err("expected an integer exponent"),
        }
    }

    fn primary(&mut self) -> Result<Expr, SymError> {
        let offset = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::constant(Rational::from_integer(n)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "sigma" {
                    return Ok(Expr::sigma());
                }
                if let Some(f) = Func::from_name(&name) {
                    if !self.eat('(') {
                        return self.err(format!("expected `(` after `{name}`"));
                    }
                    let arg = self.expr()?;
                    if !self.eat(')') {
                        return self.err("expected `)`");
                    }
                    return Ok(Expr::func(f, arg));
                }
                self.variable(&name, offset)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }

    fn variable(&self, name: &str, offset: usize) -> Result<Expr, SymError> {
        let unknown = || SymError::UnknownVariable {
            name: name.to_string(),
            offset,
            dim: self.dim,
        };
        let (head, digits) = name.split_at(1);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(unknown());
        }
        let index: usize = digits.parse().map_err(|_| unknown())?;
        if index == 0 || index > self.dim {
            return Err(unknown());
        }
        match head {
            "x" => Ok(Expr::x(index)),
            "y" => Ok(Expr::y(index)),
            _ => Err(unknown()),
        }
    }
}

/// Parses `text` over coordinates `x1..xn`, `y1..yn`.
pub fn parse(text: &str, n: usize) -> Result<Expr, SymError> {
    let toks = Lexer { src: text }.tokens()?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        dim: n,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}
