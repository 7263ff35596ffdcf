//! Polynomial expressions: `+ - * / ^`, parentheses, integer and decimal
//! literals, and named variables. Division is allowed only by constants and
//! exponents must be non-negative integers.

use fefferman_core::exact::{MultiPoly, Rational};
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    /// 1-based, relative to the start of the expression.
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ExprError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
    End,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { chars: src.char_indices().peekable(), line: 1, col: 1 }
    }

    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>, ExprError> {
        let mut out = Vec::new();
        loop {
            while self.peek().is_some_and(char::is_whitespace) {
                self.bump();
            }
            let (line, col) = (self.line, self.col);
            let Some(c) = self.peek() else {
                out.push((Tok::End, line, col));
                return Ok(out);
            };
            let tok = if c.is_ascii_digit() || c == '.' {
                self.number(line, col)?
            } else if c.is_alphabetic() || c == '_' {
                let mut s = String::new();
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    s.push(self.bump().unwrap());
                }
                Tok::Ident(s)
            } else if "+-*/^()".contains(c) {
                self.bump();
                Tok::Op(c)
            } else {
                return Err(err(line, col, format!("unexpected character '{c}'")));
            };
            out.push((tok, line, col));
        }
    }

    fn number(&mut self, line: usize, col: usize) -> Result<Tok, ExprError> {
        let mut int_part = String::new();
        let mut frac = String::new();
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            int_part.push(self.bump().unwrap());
        }
        if self.peek() == Some('.') {
            self.bump();
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                frac.push(self.bump().unwrap());
            }
        }
        if int_part.is_empty() && frac.is_empty() {
            return Err(err(line, col, "expected a number".into()));
        }
        let digits = format!("{int_part}{frac}");
        let num: num_bigint::BigInt = digits.parse().map_err(|_| err(line, col, "malformed number".into()))?;
        let den = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
        Ok(Tok::Num(Rational::new(num, den)))
    }
}

fn err(line: usize, column: usize, message: String) -> ExprError {
    ExprError { line, column, message }
}

struct Parser<'n> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    names: &'n [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> (usize, usize) {
        let (_, l, c) = self.toks[self.pos];
        (l, c)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        let (l, c) = self.here();
        Err(err(l, c, msg.into()))
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<MultiPoly, ExprError> {
        let mut acc = self.term()?;
        while let Tok::Op(op @ ('+' | '-')) = *self.peek() {
            self.next();
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    // term := unary (('*' | '/') unary)*
    fn term(&mut self) -> Result<MultiPoly, ExprError> {
        let mut acc = self.unary()?;
        while let Tok::Op(op @ ('*' | '/')) = *self.peek() {
            self.next();
            let at = self.here();
            let rhs = self.unary()?;
            if op == '*' {
                acc = &acc * &rhs;
            } else {
                match rhs.constant_value() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&(Rational::one() / c)),
                    Some(_) => return Err(err(at.0, at.1, "division by zero".into())),
                    None => return Err(err(at.0, at.1, "division is only allowed by constants".into())),
                }
            }
        }
        Ok(acc)
    }

    // unary := ('+' | '-') unary | power
    fn unary(&mut self) -> Result<MultiPoly, ExprError> {
        match self.peek() {
            Tok::Op('-') => {
                self.next();
                Ok(-self.unary()?)
            }
            Tok::Op('+') => {
                self.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    // power := atom ('^' integer)?
    fn power(&mut self) -> Result<MultiPoly, ExprError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.next();
        match self.peek().clone() {
            Tok::Num(e) if e.is_integer() => {
                let k: u32 = e.to_integer().try_into().or_else(|_| self.fail("exponent too large"))?;
                self.next();
                if *self.peek() == Tok::Op('^') {
                    return self.fail("chained exponents need parentheses");
                }
                Ok(base.pow(k))
            }
            _ => self.fail("exponent must be a non-negative integer literal"),
        }
    }

    // atom := number | variable | '(' expr ')'
    fn atom(&mut self) -> Result<MultiPoly, ExprError> {
        let (l, c) = self.here();
        match self.next() {
            Tok::Num(q) => Ok(MultiPoly::constant(self.nvars(), q)),
            Tok::Ident(name) => match self.names.iter().position(|n| *n == name) {
                Some(i) => Ok(MultiPoly::var(self.nvars(), i)),
                None => Err(err(l, c, format!("unknown variable '{name}' (expected one of {})", self.names.join(", ")))),
            },
            Tok::Op('(') => {
                let inner = self.expr()?;
                if self.next() != Tok::Op(')') {
                    return Err(err(l, c, "unclosed parenthesis".into()));
                }
                Ok(inner)
            }
            Tok::End => Err(err(l, c, "unexpected end of expression".into())),
            Tok::Op(o) => Err(err(l, c, format!("unexpected '{o}'"))),
        }
    }
}

/// Parses `src` as a polynomial in the variables `names`, in that order.
pub fn parse_poly(src: &str, names: &[String]) -> Result<MultiPoly, ExprError> {
    let toks = Lexer::new(src).tokens()?;
    let mut p = Parser { toks, pos: 0, names };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fefferman_core::exact::{int, rat};

    fn names() -> Vec<String> {
        vec!["x1".into(), "x2".into()]
    }

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &names()).unwrap()
    }

    #[test]
    fn precedence() {
        let x1 = MultiPoly::var(2, 0);
        let x2 = MultiPoly::var(2, 1);
        assert_eq!(p("x1 + x2*x2"), &x1 + &(&x2 * &x2));
        assert_eq!(p("-x1^2"), -(&x1 * &x1));
        assert_eq!(p("(x1 + 1)^2"), &(&(&x1 * &x1) + &x1.scale(&int(2))) + &MultiPoly::one(2));
        assert_eq!(p("2 - 3 - 4"), MultiPoly::from_int(2, -5));
    }

    #[test]
    fn rational_coefficients() {
        let x1 = MultiPoly::var(2, 0);
        assert_eq!(p("x1^2/3 + 1/2"), &(&x1 * &x1).scale(&rat(1, 3)) + &MultiPoly::constant(2, rat(1, 2)));
        assert_eq!(p("0.25*x1"), x1.scale(&rat(1, 4)));
        assert_eq!(p("x1/(2/3)"), x1.scale(&rat(3, 2)));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_poly("x1 +\n  y", &names()).unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.message.contains("unknown variable 'y'"));
        let e = parse_poly("x1 / x2", &names()).unwrap_err();
        assert_eq!(e.column, 6);
        assert!(parse_poly("x1^x2", &names()).is_err());
        assert!(parse_poly("x1^-1", &names()).is_err());
        assert!(parse_poly("(x1", &names()).is_err());
        assert!(parse_poly("x1 x2", &names()).is_err());
        assert!(parse_poly("x1 $", &names()).unwrap_err().message.contains("'$'"));
        assert!(parse_poly("", &names()).is_err());
        assert!(parse_poly("1/0", &names()).is_err());
    }
}
