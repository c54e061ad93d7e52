//! Log Hodge numbers computed directly from sheaf cohomology.
//!
//! This side never touches the log Grothendieck ring. It covers the inputs
//! where cohomology has a closed form:
//!
//! * split vector bundles on `P¹`, with `h⁰(O(d)) = max(d+1, 0)` and
//!   `h¹(O(d)) = max(-d-1, 0)`;
//! * constant free log structures `(X, ℕ^r)`, whose log differentials split
//!   off a trivial summand of rank `r`, giving `e(X°)·(1+u)^r`;
//! * smooth proper toric varieties, whose log differentials are trivial of
//!   rank `n` and whose structure sheaf has no higher cohomology, giving
//!   `(1+u)^n`.
//!
//! Agreement with the ring-side map `t̄` on these inputs is what the
//! verification suites certify.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::linalg::subsets_of_size;
use crate::log_ring::EBarPair;
use crate::poly::{EPolynomial, UPoly};

/// `(h⁰, h¹)` of `O(d)` on `P¹`.
pub fn p1_cohomology(d: i64) -> (u64, u64) {
    ((d + 1).max(0) as u64, (-d - 1).max(0) as u64)
}

/// `⊕ O(d_i)` on `P¹`, stored as the sorted multiset of degrees.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SplitBundle {
    degrees: Vec<i64>,
}

impl SplitBundle {
    pub fn new(degrees: impl IntoIterator<Item = i64>) -> Self {
        let mut degrees: Vec<i64> = degrees.into_iter().collect();
        degrees.sort_unstable();
        Self { degrees }
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `(h⁰, h¹)` summed over the summands.
    pub fn cohomology(&self) -> (u64, u64) {
        self.degrees
            .iter()
            .map(|&d| p1_cohomology(d))
            .fold((0, 0), |(a, b), (x, y)| (a + x, b + y))
    }

    /// Holomorphic Euler characteristic `h⁰ - h¹`.
    pub fn euler_characteristic(&self) -> i64 {
        let (h0, h1) = self.cohomology();
        h0 as i64 - h1 as i64
    }
}

/// `Λ^p` of a split bundle: one summand `O(Σ_{i∈S} d_i)` per `p`-subset.
/// Zero bundle when `p` exceeds the rank.
pub fn exterior_power(b: &SplitBundle, p: usize) -> SplitBundle {
    SplitBundle::new(
        subsets_of_size(b.rank(), p)
            .into_iter()
            .map(|s| s.iter().map(|&i| b.degrees[i]).sum()),
    )
}

/// Log Hodge numbers `h^{p,q}` keyed by `(p, q)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LogHodgeTable {
    entries: BTreeMap<(u32, u32), u64>,
}

impl LogHodgeTable {
    pub fn get(&self, p: u32, q: u32) -> u64 {
        self.entries.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Row `q` for `p = 0..=max_p`.
    pub fn row(&self, q: u32, max_p: u32) -> Vec<u64> {
        (0..=max_p).map(|p| self.get(p, q)).collect()
    }

    pub fn max_p(&self) -> u32 {
        self.entries.keys().map(|&(p, _)| p).max().unwrap_or(0)
    }

    /// `Σ h^{p,q} u^p v^q`
    pub fn e_polynomial(&self) -> EPolynomial {
        EPolynomial::from_terms(self.entries.iter().map(|(&(p, q), &h)| (p, q, h as i64)))
    }

    /// `χ(Λ^p) = Σ_q (-1)^q h^{p,q}`.
    pub fn euler_characteristics(&self) -> Vec<i64> {
        (0..=self.max_p())
            .map(|p| {
                self.entries
                    .iter()
                    .filter(|(&(pp, _), _)| pp == p)
                    .map(|(&(_, q), &h)| if q % 2 == 0 { h as i64 } else { -(h as i64) })
                    .sum()
            })
            .collect()
    }
}

impl fmt::Display for LogHodgeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let max_p = self.max_p();
        write!(f, "p:    ")?;
        for p in 0..=max_p {
            write!(f, " {p:>3}")?;
        }
        for q in 0..=1 {
            write!(f, "\nq = {q}:")?;
            for h in self.row(q, max_p) {
                write!(f, " {h:>3}")?;
            }
        }
        Ok(())
    }
}

/// Log Hodge table and `E^log` of `P¹` with log differentials `omega`.
pub fn elog_p1(omega: &SplitBundle) -> (LogHodgeTable, EPolynomial) {
    let mut table = LogHodgeTable::default();
    for p in 0..=omega.rank() {
        let (h0, h1) = exterior_power(omega, p).cohomology();
        table.entries.insert((p as u32, 0), h0);
        table.entries.insert((p as u32, 1), h1);
    }
    let e = table.e_polynomial();
    (table, e)
}

/// `(X°, ℕ^r)` over a smooth projective base of dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantFreeSpec {
    pub base_e_poly: EPolynomial,
    pub rank: u32,
    pub dimension: u32,
}

/// `e(X°)·(1+u)^r`
pub fn elog_constant_free(spec: &ConstantFreeSpec) -> EPolynomial {
    let one_plus_u = &EPolynomial::one() + &EPolynomial::u();
    &spec.base_e_poly * &one_plus_u.pow(spec.rank)
}

/// `(1+u)^n`
pub fn elog_smooth_proper_toric(n: u32) -> EPolynomial {
    (&EPolynomial::one() + &EPolynomial::u()).pow(n)
}

/// `(E(u, -1), E(0, v))`
pub fn ebar_of(e: &EPolynomial) -> EBarPair {
    EBarPair::from_e(e)
}

/// Witness that `E^log` cannot be extended additively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleCertificate {
    /// `E^log(P¹) - E^log((P¹)°) - 2·E^log(pt)`. Same parity as the
    /// `+ 2·E^log(pt)` combination.
    pub difference: EPolynomial,
    /// A monomial `(p, q)` of `difference` with odd coefficient.
    pub odd_witness: (u32, u32),
    /// `Ē₁(P¹) - 2·Ē₁(P)`, from the toric line and the log point.
    pub toric_reduction: UPoly,
    /// `Ē₁((P¹)°) - 2·Ē₁(pt)`, from the trivial line and the point.
    pub trivial_reduction: UPoly,
}

impl CounterexampleCertificate {
    /// The difference has an odd coefficient and the two `v = -1`
    /// reductions agree.
    pub fn holds(&self) -> bool {
        let odd = self.difference.coeff(self.odd_witness.0, self.odd_witness.1);
        odd.bit(0) && self.toric_reduction == self.trivial_reduction
    }
}

pub fn counterexample_certificate() -> CounterexampleCertificate {
    let (_, toric_line) = elog_p1(&SplitBundle::new([0]));
    let (_, trivial_line) = elog_p1(&SplitBundle::new([-2]));
    // The log point: a point with trivial rank-one differentials.
    let log_point = elog_constant_free(&ConstantFreeSpec {
        base_e_poly: EPolynomial::one(),
        rank: 1,
        dimension: 0,
    });
    let point = EPolynomial::one();
    let two = EPolynomial::constant(2);

    let difference = &(&toric_line - &trivial_line) - &(&two * &point);
    let odd_witness = difference
        .terms()
        .find(|(_, _, c)| c.bit(0))
        .map(|(p, q, _)| (p, q))
        .expect("difference has an odd coefficient");

    let toric_reduction = ebar_of(&(&toric_line - &(&two * &log_point))).first;
    let trivial_reduction = ebar_of(&(&trivial_line - &(&two * &point))).first;
    CounterexampleCertificate {
        difference,
        odd_witness,
        toric_reduction,
        trivial_reduction,
    }
}

/// Coefficients `χ(Λ^i)` of `Ē₁`, indices `0..=max`.
pub fn holomorphic_euler_characteristics(e: &EPolynomial) -> Vec<BigInt> {
    let ebar1 = e.at_v_minus_one();
    let max = ebar1.max_exponent().unwrap_or(0).max(0);
    (0..=max).map(|i| ebar1.coeff(i)).collect()
}

/// `χ(Λ^{k+n-i}) = (-1)^n χ(Λ^i)` for every `i`, with `χ` read off `Ē₁`,
/// for rank `k` over an `n`-fold.
///
/// The sign comes from `t̄₁(L) = -u`. It agrees with `(-1)^k` exactly when
/// `k ≡ n (mod 2)`; on `P¹` with `k = 0` only `(-1)^n` holds.
pub fn log_serre_duality_holds(chis: &[BigInt], rank: u32, dimension: u32) -> bool {
    serre_with_sign(chis, rank, dimension, dimension % 2 == 1)
}

/// The same identity with the sign `(-1)^k`.
pub fn log_serre_duality_holds_rank_sign(chis: &[BigInt], rank: u32, dimension: u32) -> bool {
    serre_with_sign(chis, rank, dimension, rank % 2 == 1)
}

fn serre_with_sign(chis: &[BigInt], rank: u32, dimension: u32, odd: bool) -> bool {
    let top = (rank + dimension) as usize;
    let at = |i: usize| chis.get(i).cloned().unwrap_or_default();
    if chis.len() > top + 1 && chis[top + 1..].iter().any(|c| !c.is_zero()) {
        return false;
    }
    (0..=top).all(|i| {
        let (lhs, rhs) = (at(top - i), at(i));
        if odd {
            lhs == -rhs
        } else {
            lhs == rhs
        }
    })
}

/// `Ω^log` of `P¹` with a divisor of `points` points (0, 1 or 2) and
/// `free_rank` constant free directions.
pub fn p1_log_differentials(points: usize, free_rank: usize) -> SplitBundle {
    SplitBundle::new(
        std::iter::once(-2 + points as i64).chain(std::iter::repeat_n(0, free_rank)),
    )
}
