//! The class-expression grammar.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" "-"? integer)?
//! atom   := integer | identifier | "(" expr ")"
//! ```
//!
//! In class expressions `L` is the Lefschetz class, `P` the log point, and
//! any other identifier a registered symbol. Negative exponents are accepted
//! only on units `±L^k`. E-polynomial expressions use the same grammar over
//! the variables `u` and `v` with nonnegative exponents.
//!
//! Every `Display` output of [`LogClass`], [`MotiveClass`] and
//! [`EPolynomial`] parses back to the same value.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::log_ring::LogClass;
use crate::motive::{MotiveClass, SymbolTable, LOG_POINT};
use crate::poly::EPolynomial;

const MAX_EXPONENT: i64 = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

fn err(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut pos = Pos { line: 1, column: 1 };
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let start = pos;
        let advance = |pos: &mut Pos, c: char| {
            if c == '\n' {
                pos.line += 1;
                pos.column = 1;
            } else {
                pos.column += 1;
            }
        };
        if c.is_whitespace() {
            chars.next();
            advance(&mut pos, c);
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                advance(&mut pos, d);
            }
            out.push((Tok::Int(s.parse().expect("digits")), start));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                advance(&mut pos, d);
            }
            out.push((Tok::Ident(s), start));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(err(start, format!("unexpected character `{c}`"))),
        };
        chars.next();
        advance(&mut pos, c);
        out.push((tok, start));
    }
    out.push((Tok::End, pos));
    Ok(out)
}

/// Values an expression can evaluate to.
trait Algebra: Sized {
    fn integer(n: BigInt) -> Self;
    fn add(a: Self, b: Self) -> Self;
    fn sub(a: Self, b: Self) -> Self;
    fn mul(a: Self, b: Self) -> Self;
    fn neg(a: Self) -> Self;
    fn pow(a: Self, exp: i64, pos: Pos) -> Result<Self>;
}

struct Parser<'a, C> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    ctx: &'a C,
}

/// Evaluation context for class expressions.
struct ClassCtx<'a>(&'a SymbolTable);

impl<'a, C> Parser<'a, C>
where
    C: Context,
{
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<C::Value> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = C::Value::add(acc, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = C::Value::sub(acc, self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<C::Value> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = C::Value::mul(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<C::Value> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(C::Value::neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<C::Value> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let (tok, pos) = self.bump();
        let Tok::Int(n) = tok else {
            return Err(err(pos, "expected an integer exponent"));
        };
        let exp = n
            .to_i64()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or_else(|| err(pos, format!("exponent exceeds {MAX_EXPONENT}")))?;
        C::Value::pow(base, if negative { -exp } else { exp }, pos)
    }

    fn atom(&mut self) -> Result<C::Value> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => Ok(C::Value::integer(n)),
            Tok::Ident(name) => self.ctx.atom(&name, pos),
            Tok::LParen => {
                let inner = self.expr()?;
                let (close, cpos) = self.bump();
                if close != Tok::RParen {
                    return Err(err(cpos, "expected `)`"));
                }
                Ok(inner)
            }
            Tok::End => Err(err(pos, "unexpected end of input")),
            other => Err(err(pos, format!("unexpected {}", describe(&other)))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Int(_) => "integer",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Caret => "`^`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
        Tok::End => "end of input",
    }
}

trait Context {
    type Value: Algebra;
    fn atom(&self, name: &str, pos: Pos) -> Result<Self::Value>;
}

impl Context for ClassCtx<'_> {
    type Value = LogClass;

    fn atom(&self, name: &str, pos: Pos) -> Result<LogClass> {
        if name == LOG_POINT {
            return Ok(LogClass::p());
        }
        self.0
            .class(name)
            .map(LogClass::from)
            .map_err(|_| err(pos, format!("unknown symbol `{name}`")))
    }
}

impl Algebra for LogClass {
    fn integer(n: BigInt) -> Self {
        MotiveClass::integer(n).into()
    }
    fn add(a: Self, b: Self) -> Self {
        &a + &b
    }
    fn sub(a: Self, b: Self) -> Self {
        &a - &b
    }
    fn mul(a: Self, b: Self) -> Self {
        &a * &b
    }
    fn neg(a: Self) -> Self {
        -&a
    }
    fn pow(a: Self, exp: i64, pos: Pos) -> Result<Self> {
        if exp >= 0 {
            return Ok(a.pow(exp as u32));
        }
        let inv = a
            .p_part
            .is_zero()
            .then(|| a.scalar_part.unit_inverse())
            .flatten()
            .ok_or_else(|| err(pos, "negative exponent on a class that is not ±L^k"))?;
        Ok(LogClass::from(inv.pow((-exp) as u32)))
    }
}

struct EPolyCtx;

impl Context for EPolyCtx {
    type Value = EPolynomial;

    fn atom(&self, name: &str, pos: Pos) -> Result<EPolynomial> {
        match name {
            "u" => Ok(EPolynomial::u()),
            "v" => Ok(EPolynomial::v()),
            _ => Err(err(pos, format!("unknown variable `{name}`; expected `u` or `v`"))),
        }
    }
}

impl Algebra for EPolynomial {
    fn integer(n: BigInt) -> Self {
        EPolynomial::constant(n)
    }
    fn add(a: Self, b: Self) -> Self {
        &a + &b
    }
    fn sub(a: Self, b: Self) -> Self {
        &a - &b
    }
    fn mul(a: Self, b: Self) -> Self {
        &a * &b
    }
    fn neg(a: Self) -> Self {
        -&a
    }
    fn pow(a: Self, exp: i64, pos: Pos) -> Result<Self> {
        if exp < 0 {
            if a == EPolynomial::one() || a == -&EPolynomial::one() {
                return Ok(a);
            }
            return Err(err(pos, "negative exponents are not allowed in e-polynomials"));
        }
        Ok(a.pow(exp as u32))
    }
}

fn run<C: Context>(ctx: &C, src: &str) -> Result<C::Value> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
        ctx,
    };
    let v = p.expr()?;
    let (tok, pos) = p.bump();
    if tok != Tok::End {
        return Err(err(pos, format!("unexpected {}", describe(&tok))));
    }
    Ok(v)
}

/// Parses a class expression and reduces it to normal form `a + b·P`.
pub fn parse_class(table: &SymbolTable, src: &str) -> Result<LogClass> {
    run(&ClassCtx(table), src)
}

/// Parses a class expression that must not involve `P`.
pub fn parse_motive(table: &SymbolTable, src: &str) -> Result<MotiveClass> {
    let x = parse_class(table, src)?;
    if !x.p_part.is_zero() {
        return Err(err(Pos { line: 1, column: 1 }, "`P` is not allowed here"));
    }
    Ok(x.scalar_part)
}

/// Parses an integer polynomial in `u` and `v`.
pub fn parse_e_poly(src: &str) -> Result<EPolynomial> {
    run(&EPolyCtx, src)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::UPoly;

    fn lp(c: &[i64]) -> MotiveClass {
        MotiveClass::from_l_poly(&UPoly::from_coeffs(c.iter().copied()))
    }

    #[test]
    fn presentation_relation_reduces_to_zero() {
        let t = SymbolTable::new();
        assert!(parse_class(&t, "P*(P+(L-1))").unwrap().is_zero());
    }

    #[test]
    fn basic_classes() {
        let t = SymbolTable::new();
        assert_eq!(parse_class(&t, "(L-1)^2").unwrap(), lp(&[1, -2, 1]).into());
        assert_eq!(parse_class(&t, "L^-1 * L").unwrap(), LogClass::one());
        assert_eq!(parse_class(&t, "-L^-2").unwrap(), LogClass::from(-&MotiveClass::lefschetz_pow(-2)));
        assert_eq!(
            parse_class(&t, "(L - 1) + 2*P").unwrap(),
            LogClass::new(lp(&[-1, 1]), lp(&[2]))
        );
        assert_eq!(parse_class(&t, "P^2").unwrap(), LogClass::new(MotiveClass::zero(), lp(&[1, -1])));
        assert_eq!(parse_class(&t, "3 − 1").unwrap(), LogClass::from(2));
    }

    #[test]
    fn symbols() {
        let mut t = SymbolTable::new();
        t.register("C", parse_e_poly("1 + u*v - 2*u").unwrap(), 1, true).unwrap();
        let c = parse_class(&t, "C*L + C").unwrap();
        assert_eq!(c.to_string(), "C*L + C");
        assert_eq!(parse_class(&t, &c.to_string()).unwrap(), c);
    }

    #[test]
    fn errors_have_positions() {
        let t = SymbolTable::new();
        let pos = |src: &str| match parse_class(&t, src) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(pos("L +"), (1, 4));
        assert_eq!(pos("L + X"), (1, 5));
        assert_eq!(pos("(L"), (1, 3));
        assert_eq!(pos("L\n  ^ x"), (2, 5));
        assert_eq!(pos("(L+1)^-1"), (1, 8));
        assert_eq!(pos("P^-1"), (1, 4));
        assert_eq!(pos("L $"), (1, 3));
        assert_eq!(pos("L L"), (1, 3));
        assert_eq!(pos("L^99999"), (1, 3));
        assert!(parse_motive(&t, "L + P").is_err());
    }

    #[test]
    fn e_poly_round_trip() {
        let e = parse_e_poly("1 + u - u*v + 3*u^2*v").unwrap();
        assert_eq!(e, EPolynomial::from_terms([(0, 0, 1), (1, 0, 1), (1, 1, -1), (2, 1, 3)]));
        assert_eq!(parse_e_poly(&e.to_string()).unwrap(), e);
        assert!(parse_e_poly("u^-1").is_err());
        assert!(parse_e_poly("L").is_err());
    }
}
