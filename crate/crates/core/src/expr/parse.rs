//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)*
//! atom   := INT | IDENT | 'zeta' '(' INT ')' | '(' expr ')'
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`.

use num_bigint::BigInt;

use crate::algebra::{is_prime, is_valid_name};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    Int(BigInt),
    Var(String),
    Zeta(u32),
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ExprAst {
    /// Orders of every `zeta(p)` occurring in the tree.
    pub fn zeta_orders(&self, out: &mut Vec<u32>) {
        match self {
            ExprAst::Zeta(p) => out.push(*p),
            ExprAst::Int(_) | ExprAst::Var(_) => {}
            ExprAst::Neg(a) | ExprAst::Pow(a, _) => a.zeta_orders(out),
            ExprAst::Add(a, b) | ExprAst::Sub(a, b) | ExprAst::Mul(a, b) | ExprAst::Div(a, b) => {
                a.zeta_orders(out);
                b.zeta_orders(out);
            }
        }
    }
}

pub fn parse_expr(text: &str) -> Result<ExprAst, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(&format!("unexpected {:?}", p.peek_char())));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
            .unwrap_or(self.src[self.pos] as char)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else if self.at_end() {
            Err(self.error(&format!("expected '{}' but input ended", c as char)))
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = ExprAst::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<ExprAst, ParseError> {
        if self.eat(b'-') {
            return Ok(ExprAst::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ExprAst, ParseError> {
        let mut base = self.atom()?;
        while self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(ParseError {
                    offset: start,
                    message: "exponent must be a non-negative integer literal".into(),
                });
            }
            if self.peek() == Some(b'.') {
                return Err(ParseError {
                    offset: start,
                    message: "fractional exponent".into(),
                });
            }
            let e: u32 = digits.parse().map_err(|_| ParseError {
                offset: start,
                message: "exponent too large".into(),
            })?;
            base = ExprAst::Pow(Box::new(base), e);
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<ExprAst, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            None => Err(self.error("expected an operand but input ended")),
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                if self.peek() == Some(b')') {
                    return Err(self.error("empty parentheses"));
                }
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                if self.peek() == Some(b'.') {
                    return Err(self.error("decimal literals are not supported"));
                }
                Ok(ExprAst::Int(d.parse().expect("digit string")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos])
                    .expect("ascii")
                    .to_string();
                if name == "zeta" {
                    return self.zeta();
                }
                if !is_valid_name(&name) {
                    return Err(ParseError {
                        offset: start,
                        message: format!("invalid variable name {name:?}"),
                    });
                }
                Ok(ExprAst::Var(name))
            }
            Some(_) => Err(self.error(&format!("unexpected {:?}", self.peek_char()))),
        }
    }

    fn zeta(&mut self) -> Result<ExprAst, ParseError> {
        self.expect(b'(')?;
        self.skip_ws();
        let at = self.pos;
        let d = self.digits();
        if d.is_empty() {
            return Err(self.error("zeta expects an integer order"));
        }
        let p: u32 = d.parse().map_err(|_| ParseError {
            offset: at,
            message: "zeta order too large".into(),
        })?;
        if !is_prime(p) {
            return Err(ParseError {
                offset: at,
                message: format!("zeta({p}): order must be prime"),
            });
        }
        self.expect(b')')?;
        Ok(ExprAst::Zeta(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(n: &str) -> Box<ExprAst> {
        Box::new(ExprAst::Var(n.into()))
    }

    #[test]
    fn precedence() {
        let e = parse_expr("x1^2 - a*x2^2").unwrap();
        let expected = ExprAst::Sub(
            Box::new(ExprAst::Pow(var("x1"), 2)),
            Box::new(ExprAst::Mul(var("a"), Box::new(ExprAst::Pow(var("x2"), 2)))),
        );
        assert_eq!(e, expected);
        assert_eq!(
            parse_expr("-x^2").unwrap(),
            ExprAst::Neg(Box::new(ExprAst::Pow(var("x"), 2)))
        );
        assert_eq!(parse_expr("0").unwrap(), ExprAst::Int(0.into()));
    }

    #[test]
    fn left_associative() {
        let e = parse_expr("a - b - c").unwrap();
        assert_eq!(
            e,
            ExprAst::Sub(Box::new(ExprAst::Sub(var("a"), var("b"))), var("c"))
        );
        let e = parse_expr("a / b * c").unwrap();
        assert_eq!(
            e,
            ExprAst::Mul(Box::new(ExprAst::Div(var("a"), var("b"))), var("c"))
        );
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(parse_expr("(x + 1").unwrap_err().offset, 6);
        assert_eq!(parse_expr("x^y").unwrap_err().offset, 2);
        assert_eq!(parse_expr("x + * y").unwrap_err().offset, 4);
        assert_eq!(parse_expr("zeta(4)").unwrap_err().offset, 5);
        assert_eq!(parse_expr("").unwrap_err().offset, 0);
    }
}
