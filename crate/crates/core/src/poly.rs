//! Exact integer polynomials used as targets of the realization maps.
//!
//! [`EPolynomial`] is a bivariate polynomial in `u`, `v` with nonnegative
//! exponents, the home of Hodge-Deligne and log Hodge generating functions.
//! [`UPoly`] is a univariate Laurent polynomial, used for the two components
//! of the reduced pair and for the χ_y-genus after the substitution
//! `y = -1/u`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Bivariate integer polynomial in `u` and `v`.
///
/// Keys are `(deg_u, deg_v)`. Zero coefficients are never stored, so
/// structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EPolynomial {
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl EPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `u`
    pub fn u() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `v`
    pub fn v() -> Self {
        Self::monomial(0, 1, 1)
    }

    /// `c · u^p v^q`
    pub fn monomial(p: u32, q: u32, c: impl Into<BigInt>) -> Self {
        let mut out = Self::zero();
        out.add_term(p, q, c.into());
        out
    }

    /// Builds a polynomial from `(p, q, coefficient)` triples; repeated
    /// monomials are summed.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (u32, u32, C)>) -> Self {
        let mut out = Self::zero();
        for (p, q, c) in terms {
            out.add_term(p, q, c.into());
        }
        out
    }

    fn add_term(&mut self, p: u32, q: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((p, q)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&(p, q));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, p: u32, q: u32) -> BigInt {
        self.coeffs.get(&(p, q)).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending `(p, q)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.coeffs.iter().map(|(&(p, q), c)| (p, q, c))
    }

    /// Largest `p + q` over the support; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|&(p, q)| p + q).max()
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, u: &BigInt, v: &BigInt) -> BigInt {
        self.terms()
            .map(|(p, q, c)| c * u.pow(p) * v.pow(q))
            .sum()
    }

    /// Substitutes `v = -1`, leaving a polynomial in `u`.
    pub fn at_v_minus_one(&self) -> UPoly {
        UPoly::from_terms(self.terms().map(|(p, q, c)| {
            let sign = if q % 2 == 0 { c.clone() } else { -c };
            (i64::from(p), sign)
        }))
    }

    /// Substitutes `u = 0`, leaving a polynomial in `v`.
    pub fn at_u_zero(&self) -> UPoly {
        UPoly::from_terms(
            self.terms()
                .filter(|&(p, _, _)| p == 0)
                .map(|(_, q, c)| (i64::from(q), c.clone())),
        )
    }
}

impl From<i64> for EPolynomial {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add for &EPolynomial {
    type Output = EPolynomial;
    fn add(self, rhs: &EPolynomial) -> EPolynomial {
        let mut out = self.clone();
        for (p, q, c) in rhs.terms() {
            out.add_term(p, q, c.clone());
        }
        out
    }
}

impl Sub for &EPolynomial {
    type Output = EPolynomial;
    fn sub(self, rhs: &EPolynomial) -> EPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &EPolynomial {
    type Output = EPolynomial;
    fn neg(self) -> EPolynomial {
        EPolynomial {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul for &EPolynomial {
    type Output = EPolynomial;
    fn mul(self, rhs: &EPolynomial) -> EPolynomial {
        let mut out = EPolynomial::zero();
        for (p1, q1, c1) in self.terms() {
            for (p2, q2, c2) in rhs.terms() {
                out.add_term(p1 + p2, q1 + q2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned_ops {
    ($ty:ty) => {
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
    };
}
pub(crate) use forward_owned_ops;

forward_owned_ops!(EPolynomial);

/// Writes `c·m` terms joined by ` + ` / ` - `, highest terms first.
pub(crate) fn write_signed_terms<'a, W: fmt::Write>(
    f: &mut W,
    terms: impl Iterator<Item = (String, &'a BigInt)>,
) -> fmt::Result {
    let mut first = true;
    for (mono, c) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        if mono.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            f.write_str(&mono)?;
        } else {
            write!(f, "{abs}*{mono}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

fn power(var: &str, exp: i64) -> String {
    match exp {
        0 => String::new(),
        1 => var.to_string(),
        e => format!("{var}^{e}"),
    }
}

impl fmt::Display for EPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Ascending total degree reads naturally for Hodge polynomials.
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|&(p, q, _)| (p + q, std::cmp::Reverse(p)));
        write_signed_terms(
            f,
            terms.into_iter().map(|(p, q, c)| {
                let mono = [power("u", p.into()), power("v", q.into())]
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .collect::<Vec<_>>()
                    .join("*");
                (mono, c)
            }),
        )
    }
}

/// Univariate integer Laurent polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl UPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(exp: i64, c: impl Into<BigInt>) -> Self {
        let mut out = Self::zero();
        out.add_term(exp, c.into());
        out
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    /// Coefficients `c_0, c_1, …` of an ordinary polynomial.
    pub fn from_coeffs<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::from_terms(coeffs.into_iter().enumerate().map(|(i, c)| (i as i64, c)))
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.min_exponent().is_none_or(|e| e >= 0)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitutes `x ↦ 1/x`.
    pub fn invert_variable(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Substitutes `x ↦ c·x` for an integer `c`; only valid on polynomials
    /// (negative exponents would need division).
    pub fn scale_variable(&self, c: &BigInt) -> Self {
        assert!(self.is_polynomial(), "scale_variable on a Laurent polynomial");
        Self::from_terms(
            self.terms()
                .map(|(e, k)| (e, k * c.pow(e as u32))),
        )
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &BigInt) -> Option<BigInt> {
        if x.is_zero() && !self.is_polynomial() {
            return None;
        }
        Some(
            self.terms()
                .map(|(e, c)| {
                    if e >= 0 {
                        c * x.pow(e as u32)
                    } else {
                        // Only reached for x = ±1 in practice; keep it exact.
                        let d = x.pow((-e) as u32);
                        assert!(d.abs().is_one(), "non-integral Laurent evaluation");
                        c * d
                    }
                })
                .sum(),
        )
    }

    /// Renders with the given variable name.
    pub fn display<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        DisplayUPoly { poly: self, var }
    }
}

struct DisplayUPoly<'a> {
    poly: &'a UPoly,
    var: &'a str,
}

impl fmt::Display for DisplayUPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_terms(f, self.poly.terms().map(|(e, c)| (power(self.var, e), c)))
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display("x").fmt(f)
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        self + &(-rhs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        let mut out = UPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

forward_owned_ops!(UPoly);

#[cfg(test)]
mod tests {
    use super::*;

    fn uv() -> EPolynomial {
        EPolynomial::monomial(1, 1, 1)
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = &(&EPolynomial::one() + &uv()) - &uv();
        assert_eq!(p, EPolynomial::one());
        assert_eq!(p.terms().count(), 1);
        assert!((&uv() - &uv()).is_zero());
    }

    #[test]
    fn substitutions() {
        let p1 = &EPolynomial::one() + &uv();
        assert_eq!(p1.at_v_minus_one(), UPoly::from_coeffs([1, -1]));
        assert_eq!(p1.at_u_zero(), UPoly::one());
        let toric = &EPolynomial::one() + &EPolynomial::u();
        assert_eq!(toric.at_v_minus_one(), UPoly::from_coeffs([1, 1]));
        assert_eq!(toric.at_u_zero(), UPoly::one());
    }

    #[test]
    fn eval_at_one_one() {
        let p = (&uv() - &EPolynomial::one()).pow(3);
        assert_eq!(p.eval(&1.into(), &1.into()), BigInt::zero());
        assert_eq!(p.eval(&2.into(), &1.into()), BigInt::one());
    }

    #[test]
    fn display() {
        let p = EPolynomial::from_terms([(0, 0, 1), (1, 0, 1), (1, 1, -1), (2, 1, 3)]);
        assert_eq!(p.to_string(), "1 + u - u*v + 3*u^2*v");
        assert_eq!(EPolynomial::zero().to_string(), "0");
        let l = UPoly::from_terms([(-1, -1), (0, 2)]);
        assert_eq!(l.display("u").to_string(), "-u^-1 + 2");
    }

    #[test]
    fn laurent_helpers() {
        let p = UPoly::from_coeffs([1, 2, 3]);
        assert_eq!(p.invert_variable().shift(2), UPoly::from_coeffs([3, 2, 1]));
        assert_eq!(p.scale_variable(&BigInt::from(-1)), UPoly::from_coeffs([1, -2, 3]));
        assert_eq!(p.eval(&BigInt::from(2)), Some(BigInt::from(17)));
        assert!(!p.shift(-1).is_polynomial());
        assert_eq!(p.shift(-1).eval(&BigInt::zero()), None);
    }
}
