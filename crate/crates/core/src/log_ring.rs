//! The log Grothendieck ring as `K0[P] / (P² + P·[Gm])`.
//!
//! Every element has a unique normal form `a + b·P` with `a`, `b` in the
//! modeled `K0(Var)[L⁻¹]`. Multiplication reduces eagerly with
//! `P² = -(L-1)·P`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::motive::{MotiveClass, SymbolTable};
use crate::poly::{forward_owned_ops, EPolynomial, UPoly};

/// `a + b·P` in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LogClass {
    pub scalar_part: MotiveClass,
    pub p_part: MotiveClass,
}

impl LogClass {
    pub fn new(scalar_part: MotiveClass, p_part: MotiveClass) -> Self {
        Self {
            scalar_part,
            p_part,
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        MotiveClass::one().into()
    }

    /// The standard log point.
    pub fn p() -> Self {
        Self::new(MotiveClass::zero(), MotiveClass::one())
    }

    pub fn is_zero(&self) -> bool {
        self.scalar_part.is_zero() && self.p_part.is_zero()
    }

    pub fn is_l_pure(&self) -> bool {
        self.scalar_part.is_l_pure() && self.p_part.is_l_pure()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(
            self.scalar_part.checked_add(&other.scalar_part)?,
            self.p_part.checked_add(&other.p_part)?,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    /// `(a + bP)(c + dP) = ac + (ad + bc - bd(L-1))·P`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = (&self.scalar_part, &self.p_part);
        let (c, d) = (&other.scalar_part, &other.p_part);
        let bd = b.checked_mul(d)?;
        let p_part = a
            .checked_mul(d)?
            .checked_add(&b.checked_mul(c)?)?
            .checked_sub(&bd.checked_mul(&MotiveClass::torus())?)?;
        Ok(Self::new(a.checked_mul(c)?, p_part))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies both parts by a motive class.
    pub fn scale(&self, c: &MotiveClass) -> Self {
        Self::new(&self.scalar_part * c, &self.p_part * c)
    }
}

impl From<MotiveClass> for LogClass {
    fn from(scalar_part: MotiveClass) -> Self {
        Self::new(scalar_part, MotiveClass::zero())
    }
}

impl From<i64> for LogClass {
    fn from(c: i64) -> Self {
        MotiveClass::integer(c).into()
    }
}

impl Add for &LogClass {
    type Output = LogClass;
    fn add(self, rhs: &LogClass) -> LogClass {
        self.checked_add(rhs).expect("mixed symbol tables")
    }
}

impl Sub for &LogClass {
    type Output = LogClass;
    fn sub(self, rhs: &LogClass) -> LogClass {
        self.checked_sub(rhs).expect("mixed symbol tables")
    }
}

impl Mul for &LogClass {
    type Output = LogClass;
    fn mul(self, rhs: &LogClass) -> LogClass {
        self.checked_mul(rhs).expect("mixed symbol tables")
    }
}

impl Neg for &LogClass {
    type Output = LogClass;
    fn neg(self) -> LogClass {
        LogClass::new(-&self.scalar_part, -&self.p_part)
    }
}

forward_owned_ops!(LogClass);

fn wrap(x: &MotiveClass) -> String {
    if x.len() > 1 {
        format!("({x})")
    } else {
        x.to_string()
    }
}

impl fmt::Display for LogClass {
    /// Prints `a + b*P` in the class-expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = &self.p_part;
        if b.is_zero() {
            return write!(f, "{}", self.scalar_part);
        }
        let negative = b.terms().next_back().is_some_and(|(_, c)| c.is_negative());
        let abs = if negative { -b } else { b.clone() };
        let p_term = if abs.is_one() {
            "P".to_string()
        } else {
            format!("{}*P", wrap(&abs))
        };
        match (self.scalar_part.is_zero(), negative) {
            (true, false) => f.write_str(&p_term),
            (true, true) => write!(f, "-{p_term}"),
            (false, false) => write!(f, "{} + {p_term}", wrap(&self.scalar_part)),
            (false, true) => write!(f, "{} - {p_term}", wrap(&self.scalar_part)),
        }
    }
}

/// A polynomial in `P` with motive coefficients, before reduction.
///
/// Stratifications naturally produce these (`Σ [X_i]·P^i`); [`reduce`]
/// maps them to the normal form.
///
/// [`reduce`]: FormalPClass::reduce
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalPClass {
    coeffs: Vec<MotiveClass>,
}

impl FormalPClass {
    pub fn new(coeffs: Vec<MotiveClass>) -> Self {
        let mut out = Self { coeffs };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(MotiveClass::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Coefficient of `P^i`.
    pub fn coeff(&self, i: usize) -> MotiveClass {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add_to(&mut self, i: usize, c: &MotiveClass) {
        if self.coeffs.len() <= i {
            self.coeffs.resize(i + 1, MotiveClass::zero());
        }
        self.coeffs[i] = &self.coeffs[i] + c;
        self.trim();
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out.add_to(i + j, &(a * b));
            }
        }
        out
    }

    /// Applies `P^k = (-(L-1))^(k-1)·P` for `k ≥ 1`.
    pub fn reduce(&self) -> LogClass {
        let minus_torus = -&MotiveClass::torus();
        let mut p_part = MotiveClass::zero();
        let mut factor = MotiveClass::one();
        for c in self.coeffs.iter().skip(1) {
            p_part = &p_part + &(c * &factor);
            factor = &factor * &minus_torus;
        }
        LogClass::new(self.coeff(0), p_part)
    }

    /// Evaluates under a ring map that acts on coefficients by `on_scalar`
    /// and sends `P` to `p_image`.
    pub fn evaluate(
        &self,
        mut on_scalar: impl FnMut(&MotiveClass) -> Result<MotiveClass>,
        p_image: &LogClass,
    ) -> Result<LogClass> {
        let mut acc = LogClass::zero();
        let mut power = LogClass::one();
        for c in &self.coeffs {
            let image: LogClass = on_scalar(c)?.into();
            acc = acc.checked_add(&image.checked_mul(&power)?)?;
            power = power.checked_mul(p_image)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for FormalPClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let p = if i == 1 { "P".to_string() } else { format!("P^{i}") };
            match i {
                0 => write!(f, "{}", wrap(c))?,
                _ if c.is_one() => f.write_str(&p)?,
                _ => write!(f, "{}*{p}", wrap(c))?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// The log Betti map: `P ↦ 0`.
pub fn tau(x: &LogClass) -> MotiveClass {
    x.scalar_part.clone()
}

/// The log Hodge map: `P ↦ -[Gm]`.
pub fn rho(x: &LogClass) -> MotiveClass {
    &x.scalar_part - &(&x.p_part * &MotiveClass::torus())
}

/// The log Euler characteristic `χ_c ∘ τ`.
pub fn chi_log(table: &SymbolTable, x: &LogClass) -> Result<BigInt> {
    table.chi_c_of(&tau(x))
}

/// Integer values `f(P)` compatible with the relation `P(P + [Gm]) = 0`
/// under a ring map extending `χ_c`, i.e. the integer roots of
/// `f·(f + χ_c(Gm)) = 0`.
pub fn chi_log_p_values(table: &SymbolTable) -> Vec<BigInt> {
    let chi_gm = table
        .chi_c_of(&MotiveClass::torus())
        .expect("torus class is in K0");
    let mut roots = vec![BigInt::zero(), -chi_gm];
    roots.sort();
    roots.dedup();
    roots
}

/// The reduced Hodge pair `(t(u, -1), t(0, v))`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EBarPair {
    /// Polynomial in `u`.
    pub first: UPoly,
    /// Polynomial in `v`.
    pub second: UPoly,
}

impl EBarPair {
    pub fn from_e(e: &EPolynomial) -> Self {
        Self {
            first: e.at_v_minus_one(),
            second: e.at_u_zero(),
        }
    }
}

impl fmt::Display for EBarPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            self.first.display("u"),
            self.second.display("v")
        )
    }
}

/// `t = e ∘ ρ`.
pub fn t_of(table: &SymbolTable, x: &LogClass) -> Result<EPolynomial> {
    table.e_of(&rho(x))
}

/// `t` reduced modulo `uv + u`, realized as a pair.
pub fn tbar_of(table: &SymbolTable, x: &LogClass) -> Result<EBarPair> {
    Ok(EBarPair::from_e(&t_of(table, x)?))
}

/// `P ↦ 1`, then `e`, then `u = 0`.
pub fn b_of(table: &SymbolTable, x: &LogClass) -> Result<UPoly> {
    let collapsed = x.scalar_part.checked_add(&x.p_part)?;
    Ok(table.e_of(&collapsed)?.at_u_zero())
}

/// The two ring involutions extending classical duality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Involution {
    /// `P ↦ -P·L⁻¹`
    First,
    /// `P ↦ (P + [Gm])·L⁻¹`
    Second,
}

impl Involution {
    pub fn from_index(j: u8) -> Result<Self> {
        match j {
            1 => Ok(Self::First),
            2 => Ok(Self::Second),
            j => Err(Error::DualityIndex(j)),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Self::First => 1,
            Self::Second => 2,
        }
    }

    /// Image of `P`.
    pub fn p_image(self) -> LogClass {
        let linv = MotiveClass::lefschetz_pow(-1);
        match self {
            Self::First => LogClass::new(MotiveClass::zero(), -&linv),
            Self::Second => LogClass::new(&MotiveClass::torus() * &linv, linv),
        }
    }

    pub fn apply(self, table: &SymbolTable, x: &LogClass) -> Result<LogClass> {
        let a = table.dual_of(&x.scalar_part)?;
        let b = table.dual_of(&x.p_part)?;
        LogClass::from(a).checked_add(&self.p_image().checked_mul(&b.into())?)
    }

    /// Applies the involution to an unreduced class, term by term.
    pub fn apply_formal(self, table: &SymbolTable, x: &FormalPClass) -> Result<LogClass> {
        x.evaluate(|c| table.dual_of(c), &self.p_image())
    }
}

/// `duality(j, x)` for `j ∈ {1, 2}`.
pub fn duality(table: &SymbolTable, j: u8, x: &LogClass) -> Result<LogClass> {
    Involution::from_index(j)?.apply(table, x)
}

/// A would-be duality `F` on the log ring, extending classical duality,
/// with `F(P) = alpha + beta·P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityCandidate {
    pub alpha: MotiveClass,
    pub beta: MotiveClass,
}

impl DualityCandidate {
    fn image_of_p(&self) -> LogClass {
        LogClass::new(self.alpha.clone(), self.beta.clone())
    }

    /// Whether `F` intertwines `τ`, `ρ` with duality the way `inv` does.
    ///
    /// Both sides are ring maps agreeing on `K0`, so checking the generator
    /// `P` suffices.
    pub fn is_compatible(&self, table: &SymbolTable, inv: Involution) -> Result<bool> {
        let fp = self.image_of_p();
        let p = LogClass::p();
        let tau_dual = table.dual_of(&tau(&p))?;
        let rho_dual = table.dual_of(&rho(&p))?;
        Ok(match inv {
            Involution::First => tau(&fp) == tau_dual && rho(&fp) == rho_dual,
            Involution::Second => rho(&fp) == tau_dual && tau(&fp) == rho_dual,
        })
    }

    /// The constraints a compatible candidate must satisfy: `alpha` is
    /// forced and `[Gm]·(beta ∓ L⁻¹) = 0`.
    pub fn forced_constraints_hold(&self, inv: Involution) -> bool {
        let linv = MotiveClass::lefschetz_pow(-1);
        let gm = MotiveClass::torus();
        match inv {
            Involution::First => {
                self.alpha.is_zero() && (&gm * &(&self.beta + &linv)).is_zero()
            }
            Involution::Second => {
                self.alpha == &gm * &linv && (&gm * &(&self.beta - &linv)).is_zero()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> MotiveClass {
        MotiveClass::lefschetz()
    }

    fn gm() -> MotiveClass {
        MotiveClass::torus()
    }

    fn lp(coeffs: &[i64]) -> MotiveClass {
        MotiveClass::from_l_poly(&UPoly::from_coeffs(coeffs.iter().copied()))
    }

    fn p1_class() -> LogClass {
        LogClass::new(gm(), 2.into())
    }

    fn a2_class() -> LogClass {
        LogClass::new(gm().pow(2), gm())
    }

    #[test]
    fn presentation_relation() {
        let p = LogClass::p();
        assert_eq!(&p * &p, LogClass::new(MotiveClass::zero(), -&gm()));
        let rel = &LogClass::from(gm()) + &p;
        assert!((&rel * &p).is_zero());
        let a = LogClass::from(lp(&[1, 2]));
        let c = LogClass::from(lp(&[0, 0, 3]));
        assert_eq!(&a * &c, LogClass::from(lp(&[0, 0, 3, 6])));
    }

    #[test]
    fn tau_examples() {
        assert!(tau(&LogClass::p()).is_zero());
        assert_eq!(tau(&LogClass::from(lp(&[3, 1]))), lp(&[3, 1]));
        assert_eq!(tau(&a2_class()), gm().pow(2));
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&LogClass::p()), -&gm());
        assert_eq!(rho(&p1_class()), -&gm());
        assert!(rho(&a2_class()).is_zero());
    }

    #[test]
    fn chi_log_examples() {
        let t = SymbolTable::new();
        assert_eq!(chi_log(&t, &LogClass::p()).unwrap(), BigInt::zero());
        assert_eq!(chi_log(&t, &p1_class()).unwrap(), BigInt::zero());
        assert_eq!(chi_log(&t, &LogClass::one()).unwrap(), BigInt::from(1));
        assert_eq!(chi_log_p_values(&t), vec![BigInt::zero()]);
    }

    #[test]
    fn t_examples() {
        let t = SymbolTable::new();
        let p = LogClass::p();
        assert_eq!(
            t_of(&t, &p).unwrap(),
            EPolynomial::from_terms([(0, 0, 1), (1, 1, -1)])
        );
        assert_eq!(tbar_of(&t, &p).unwrap().first, UPoly::from_coeffs([1, 1]));
        assert_eq!(
            tbar_of(&t, &p1_class()).unwrap().first,
            UPoly::from_coeffs([1, 1])
        );
        assert_eq!(tbar_of(&t, &LogClass::zero()).unwrap(), EBarPair::default());
    }

    #[test]
    fn b_examples() {
        let t = SymbolTable::new();
        assert_eq!(b_of(&t, &LogClass::p()).unwrap(), UPoly::one());
        let killed = &LogClass::p() + &LogClass::from(gm());
        assert!(b_of(&t, &killed).unwrap().is_zero());
        assert_eq!(b_of(&t, &LogClass::from(lp(&[1, 1]))).unwrap(), UPoly::one());
    }

    #[test]
    fn duality_examples() {
        let t = SymbolTable::new();
        let linv = MotiveClass::lefschetz_pow(-1);
        let rel = FormalPClass::new(vec![MotiveClass::zero(), gm(), MotiveClass::one()]);
        assert!(Involution::First.apply_formal(&t, &rel).unwrap().is_zero());
        assert!(Involution::Second.apply_formal(&t, &rel).unwrap().is_zero());
        assert_eq!(
            duality(&t, 1, &p1_class()).unwrap(),
            p1_class().scale(&-&linv)
        );
        assert_eq!(duality(&t, 2, &p1_class()).unwrap(), p1_class().scale(&linv));
        assert_eq!(duality(&t, 3, &p1_class()), Err(Error::DualityIndex(3)));
    }

    #[test]
    fn involutions_square_to_identity_on_p() {
        let t = SymbolTable::new();
        for inv in [Involution::First, Involution::Second] {
            let once = inv.apply(&t, &LogClass::p()).unwrap();
            assert_eq!(inv.apply(&t, &once).unwrap(), LogClass::p());
        }
    }

    #[test]
    fn reduce_matches_stratifications() {
        let a2 = FormalPClass::new(vec![gm().pow(2), gm().scale(&2.into()), MotiveClass::one()]);
        let blown = FormalPClass::new(vec![gm().pow(2), gm().scale(&3.into()), 2.into()]);
        assert_eq!(a2.reduce(), a2_class());
        assert_eq!(blown.reduce(), a2_class());
        assert_eq!(a2.to_string(), "(L^2 - 2*L + 1) + (2*L - 2)*P + P^2");
    }

    #[test]
    fn display() {
        assert_eq!(p1_class().to_string(), "(L - 1) + 2*P");
        assert_eq!(LogClass::p().to_string(), "P");
        assert_eq!((-&LogClass::p()).to_string(), "-P");
        assert_eq!(LogClass::zero().to_string(), "0");
        assert_eq!(
            LogClass::new(l(), -&gm()).to_string(),
            "L - (L - 1)*P"
        );
        assert_eq!(LogClass::new(l(), (-2).into()).to_string(), "L - 2*P");
    }

    #[test]
    fn discrepancy_candidates() {
        let t = SymbolTable::new();
        for inv in [Involution::First, Involution::Second] {
            let image = inv.p_image();
            let own = DualityCandidate {
                alpha: image.scalar_part,
                beta: image.p_part,
            };
            assert!(own.is_compatible(&t, inv).unwrap());
            assert!(own.forced_constraints_hold(inv));
        }
        let wrong = DualityCandidate {
            alpha: MotiveClass::zero(),
            beta: MotiveClass::lefschetz_pow(-1),
        };
        assert!(!wrong.is_compatible(&t, Involution::First).unwrap());
    }
}
