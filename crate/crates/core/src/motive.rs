//! A computable model of the Grothendieck ring of varieties.
//!
//! `K0(Var)` itself is not computable. We work in the free commutative ring
//! generated by user-declared variety symbols together with the Lefschetz
//! class `L`, allowing negative powers of `L` so that duality is available
//! everywhere. Equality in this model implies equality in `K0(Var)`, not the
//! converse.
//!
//! The torus class `[Gm]` is never a symbol of its own: it is `L - 1`, which
//! keeps every toric computation inside `ℤ[L]`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{forward_owned_ops, write_signed_terms, EPolynomial, UPoly};

/// Name of the Lefschetz symbol.
pub const LEFSCHETZ: &str = "L";
/// Name reserved for the standard log point in class expressions.
pub const LOG_POINT: &str = "P";

const RESERVED: &[&str] = &[LEFSCHETZ, LOG_POINT, "u", "v"];

/// Identity of a [`SymbolTable`]; classes remember which table their
/// non-`L` symbols came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableId(u64);

static NEXT_TABLE: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietySymbol {
    pub name: Arc<str>,
    pub e_poly: EPolynomial,
    pub dimension: u32,
    pub smooth_projective: bool,
}

/// Append-only registry of variety symbols.
///
/// Registration takes `&mut self`; everything else borrows immutably, so a
/// populated table can be shared freely across threads.
#[derive(Debug)]
pub struct SymbolTable {
    id: TableId,
    symbols: BTreeMap<Arc<str>, VarietySymbol>,
}

impl Default for SymbolTable {
    fn default() -> Self {
        Self::new()
    }
}

impl SymbolTable {
    /// A fresh table containing only `L` (e = uv, dimension 1).
    pub fn new() -> Self {
        let id = TableId(NEXT_TABLE.fetch_add(1, AtomicOrdering::Relaxed));
        let mut symbols = BTreeMap::new();
        let name: Arc<str> = Arc::from(LEFSCHETZ);
        symbols.insert(
            name.clone(),
            VarietySymbol {
                name,
                e_poly: EPolynomial::monomial(1, 1, 1),
                dimension: 1,
                smooth_projective: false,
            },
        );
        Self { id, symbols }
    }

    pub fn id(&self) -> TableId {
        self.id
    }

    pub fn register(
        &mut self,
        name: &str,
        e_poly: EPolynomial,
        dimension: u32,
        smooth_projective: bool,
    ) -> Result<&VarietySymbol> {
        if RESERVED.contains(&name) {
            return Err(Error::ReservedSymbol(name.to_string()));
        }
        if !is_identifier(name) {
            return Err(Error::InvalidSymbolName(name.to_string()));
        }
        if self.symbols.contains_key(name) {
            return Err(Error::DuplicateSymbol(name.to_string()));
        }
        if e_poly.is_zero() {
            return Err(Error::ZeroEPolynomial(name.to_string()));
        }
        if smooth_projective {
            let degree = e_poly.total_degree().unwrap_or(0);
            if degree > 2 * dimension {
                return Err(Error::DegreeBound {
                    name: name.to_string(),
                    degree,
                    dimension,
                });
            }
        }
        let name: Arc<str> = Arc::from(name);
        let symbol = VarietySymbol {
            name: name.clone(),
            e_poly,
            dimension,
            smooth_projective,
        };
        Ok(self.symbols.entry(name).or_insert(symbol))
    }

    pub fn get(&self, name: &str) -> Option<&VarietySymbol> {
        self.symbols.get(name)
    }

    /// Registered symbols in name order, `L` included.
    pub fn symbols(&self) -> impl Iterator<Item = &VarietySymbol> {
        self.symbols.values()
    }

    /// The class of a registered symbol.
    pub fn class(&self, name: &str) -> Result<MotiveClass> {
        let sym = self
            .get(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        let table = (&*sym.name != LEFSCHETZ).then_some(self.id);
        Ok(MotiveClass::from_monomial(
            table,
            Monomial::var(sym.name.clone(), 1),
            BigInt::one(),
        ))
    }

    fn check(&self, x: &MotiveClass) -> Result<()> {
        match x.table {
            Some(id) if id != self.id => Err(Error::MixedSymbolTables),
            _ => Ok(()),
        }
    }

    fn symbol(&self, name: &str) -> Result<&VarietySymbol> {
        self.get(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    /// The Hodge-Deligne polynomial, a ring homomorphism `L ↦ uv`.
    pub fn e_of(&self, x: &MotiveClass) -> Result<EPolynomial> {
        self.check(x)?;
        if x.min_l_exponent() < 0 {
            return Err(Error::NegativeLefschetzExponent);
        }
        let mut out = EPolynomial::zero();
        for (mono, c) in x.terms() {
            let mut term = EPolynomial::constant(c.clone());
            for (name, exp) in mono.factors() {
                let e = &self.symbol(name)?.e_poly;
                term = &term * &e.pow(exp as u32);
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Compactly supported Euler characteristic, `e(1, 1)`.
    pub fn chi_c_of(&self, x: &MotiveClass) -> Result<BigInt> {
        Ok(self.e_of(x)?.eval(&BigInt::one(), &BigInt::one()))
    }

    /// Classical duality `[X] ↦ [X]·L^(-dim X)`, with `L ↦ L⁻¹`.
    ///
    /// Defined only when every non-`L` symbol is smooth projective.
    pub fn dual_of(&self, x: &MotiveClass) -> Result<MotiveClass> {
        self.check(x)?;
        let mut out = MotiveClass::zero();
        out.table = x.table;
        for (mono, c) in x.terms() {
            let mut shift = 0i64;
            let mut factors = Vec::with_capacity(mono.0.len());
            for (name, exp) in mono.factors() {
                if name == LEFSCHETZ {
                    shift -= exp;
                    continue;
                }
                let sym = self.symbol(name)?;
                if !sym.smooth_projective {
                    return Err(Error::NoDual(name.to_string()));
                }
                shift -= exp * i64::from(sym.dimension);
                factors.push((sym.name.clone(), exp));
            }
            let mono = Monomial::from_factors(factors).with_l_exponent(shift);
            out.add_term(mono, c.clone());
        }
        Ok(out)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A product of symbol powers. Only `L` may carry a negative exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Arc<str>, i64)>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    fn var(name: Arc<str>, exp: i64) -> Self {
        Self::from_factors([(name, exp)])
    }

    pub fn lefschetz(exp: i64) -> Self {
        Self::var(Arc::from(LEFSCHETZ), exp)
    }

    fn from_factors(factors: impl IntoIterator<Item = (Arc<str>, i64)>) -> Self {
        let mut map: BTreeMap<Arc<str>, i64> = BTreeMap::new();
        for (name, e) in factors {
            *map.entry(name).or_default() += e;
        }
        Self(map.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    /// `(name, exponent)` pairs sorted by name.
    pub fn factors(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(n, e)| (&**n, *e))
    }

    pub fn l_exponent(&self) -> i64 {
        self.factors()
            .find(|&(n, _)| n == LEFSCHETZ)
            .map_or(0, |(_, e)| e)
    }

    fn with_l_exponent(self, exp: i64) -> Self {
        let mut factors: Vec<_> = self.0.into_iter().filter(|(n, _)| &**n != LEFSCHETZ).collect();
        factors.push((Arc::from(LEFSCHETZ), exp));
        Self::from_factors(factors)
    }

    pub fn is_l_power(&self) -> bool {
        self.factors().all(|(n, _)| n == LEFSCHETZ)
    }

    fn mul(&self, other: &Self) -> Self {
        Self::from_factors(self.0.iter().chain(other.0.iter()).cloned())
    }
}

impl Ord for Monomial {
    /// Lexicographic on symbol name, then exponent; an absent symbol has
    /// exponent zero.
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some((_, ea)), None) => {
                    a.next();
                    ea.cmp(&0)
                }
                (None, Some((_, eb))) => {
                    b.next();
                    0.cmp(eb)
                }
                (Some((na, ea)), Some((nb, eb))) => match na.cmp(nb) {
                    Ordering::Equal => {
                        let o = ea.cmp(eb);
                        a.next();
                        b.next();
                        o
                    }
                    // `na` is missing from `other`.
                    Ordering::Less => {
                        let o = ea.cmp(&0);
                        a.next();
                        o
                    }
                    Ordering::Greater => {
                        let o = 0.cmp(eb);
                        b.next();
                        o
                    }
                },
            };
            if ord != Ordering::Equal {
                return ord;
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, e) in self.factors() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match e {
                1 => write!(f, "{name}")?,
                e => write!(f, "{name}^{e}")?,
            }
        }
        Ok(())
    }
}

/// An element of the modeled `K0(Var)[L⁻¹]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MotiveClass {
    /// `None` for classes that only involve `L`, which live in every table.
    table: Option<TableId>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MotiveClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(c: impl Into<BigInt>) -> Self {
        Self::from_monomial(None, Monomial::one(), c.into())
    }

    /// `L`
    pub fn lefschetz() -> Self {
        Self::lefschetz_pow(1)
    }

    /// `L^k` for any integer `k`.
    pub fn lefschetz_pow(k: i64) -> Self {
        Self::from_monomial(None, Monomial::lefschetz(k), BigInt::one())
    }

    /// `[Gm] = L - 1`
    pub fn torus() -> Self {
        Self::from_l_poly(&UPoly::from_coeffs([-1, 1]))
    }

    /// Reads a Laurent polynomial in `L`.
    pub fn from_l_poly(p: &UPoly) -> Self {
        let mut out = Self::zero();
        for (e, c) in p.terms() {
            out.add_term(Monomial::lefschetz(e), c.clone());
        }
        out
    }

    /// The Laurent polynomial in `L`, if the class is L-pure.
    pub fn to_l_poly(&self) -> Option<UPoly> {
        self.is_l_pure().then(|| {
            UPoly::from_terms(self.terms().map(|(m, c)| (m.l_exponent(), c.clone())))
        })
    }

    fn from_monomial(table: Option<TableId>, mono: Monomial, c: BigInt) -> Self {
        let mut out = Self {
            table,
            terms: BTreeMap::new(),
        };
        out.add_term(mono, c);
        out
    }

    fn add_term(&mut self, mono: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    /// Drops the table tag once no foreign symbol remains.
    fn normalize_table(mut self) -> Self {
        if self.is_l_pure() {
            self.table = None;
        }
        self
    }

    pub fn table(&self) -> Option<TableId> {
        self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// True when `L` is the only symbol present.
    pub fn is_l_pure(&self) -> bool {
        self.terms.keys().all(Monomial::is_l_power)
    }

    /// Nonzero terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// Smallest power of `L` present (0 for the zero class).
    pub fn min_l_exponent(&self) -> i64 {
        self.terms
            .keys()
            .map(Monomial::l_exponent)
            .min()
            .unwrap_or(0)
    }

    fn join_tables(&self, other: &Self) -> Result<Option<TableId>> {
        match (self.table, other.table) {
            (Some(a), Some(b)) if a != b => Err(Error::MixedSymbolTables),
            (a, b) => Ok(a.or(b)),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.table = self.join_tables(other)?;
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out.normalize_table())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self {
            table: self.join_tables(other)?,
            terms: BTreeMap::new(),
        };
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out.normalize_table())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self {
            table: self.table,
            terms: BTreeMap::new(),
        };
        for (m, k) in self.terms() {
            out.add_term(m.clone(), k * c);
        }
        out.normalize_table()
    }

    /// The multiplicative inverse, when the class is a unit `±L^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        let mut it = self.terms();
        let (m, c) = it.next()?;
        if it.next().is_some() || !m.is_l_power() || !(c.is_one() || (-c).is_one()) {
            return None;
        }
        Some(Self::from_monomial(
            None,
            Monomial::lefschetz(-m.l_exponent()),
            c.clone(),
        ))
    }
}

impl From<i64> for MotiveClass {
    fn from(c: i64) -> Self {
        Self::integer(c)
    }
}

// Operator forms panic on mixed symbol tables; use the `checked_*` methods
// when operands may come from different tables.
impl Add for &MotiveClass {
    type Output = MotiveClass;
    fn add(self, rhs: &MotiveClass) -> MotiveClass {
        self.checked_add(rhs).expect("mixed symbol tables")
    }
}

impl Sub for &MotiveClass {
    type Output = MotiveClass;
    fn sub(self, rhs: &MotiveClass) -> MotiveClass {
        self.checked_sub(rhs).expect("mixed symbol tables")
    }
}

impl Mul for &MotiveClass {
    type Output = MotiveClass;
    fn mul(self, rhs: &MotiveClass) -> MotiveClass {
        self.checked_mul(rhs).expect("mixed symbol tables")
    }
}

impl Neg for &MotiveClass {
    type Output = MotiveClass;
    fn neg(self) -> MotiveClass {
        MotiveClass {
            table: self.table,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

forward_owned_ops!(MotiveClass);

impl MotiveClass {
    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }
}

impl fmt::Display for MotiveClass {
    /// Prints in the class-expression grammar, highest monomial first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_terms(f, self.terms().rev().map(|(m, c)| (m.to_string(), c)))
    }
}
