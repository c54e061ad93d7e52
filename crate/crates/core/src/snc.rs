//! Strict normal crossings pairs presented by their strata.
//!
//! A pair `(X, D)` with components `D_1, …, D_k` is described by the classes
//! of its open strata: for each set `I` of components, the locus lying on
//! exactly the components in `I`. A stratum on `|I|` components carries the
//! constant rank-`|I|` log structure, so it contributes `[stratum]·P^|I|`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::log_ring::{rho, tbar_of, FormalPClass, LogClass};
use crate::motive::{MotiveClass, SymbolTable};
use crate::poly::UPoly;

/// Component indices, sorted.
pub type Stratum = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SncSpec {
    dim: usize,
    components: Vec<String>,
    /// Open strata; absent keys are empty.
    open_strata: BTreeMap<Stratum, MotiveClass>,
}

impl SncSpec {
    /// Builds a spec from open strata keyed by component names.
    pub fn from_open<'a, S: AsRef<str> + 'a>(
        dim: usize,
        components: impl IntoIterator<Item = S>,
        strata: impl IntoIterator<Item = (Vec<&'a str>, MotiveClass)>,
    ) -> Result<Self> {
        let components = collect_components(components)?;
        let open_strata = index_strata(&components, strata)?;
        let spec = Self {
            dim,
            components,
            open_strata,
        };
        spec.check()?;
        Ok(spec)
    }

    /// Builds a spec from closed strata `D_I = ∩_{i∈I} D_i` by Möbius
    /// inversion over the subset lattice. A missing superset means an empty
    /// intersection; a missing subset of a listed set is an error.
    pub fn from_closed<'a, S: AsRef<str> + 'a>(
        dim: usize,
        components: impl IntoIterator<Item = S>,
        closed: impl IntoIterator<Item = (Vec<&'a str>, MotiveClass)>,
    ) -> Result<Self> {
        let components = collect_components(components)?;
        let closed = index_strata(&components, closed)?;
        let open_strata = strata_open_from_closed(&components, &closed)?;
        let spec = Self {
            dim,
            components,
            open_strata,
        };
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<()> {
        if !self.open_strata.contains_key(&Vec::new()) {
            return Err(Error::MissingInterior);
        }
        for (s, c) in &self.open_strata {
            if s.len() > self.dim && !c.is_zero() {
                return Err(Error::StratumTooDeep {
                    subset: self.names(s),
                    count: s.len(),
                    dim: self.dim,
                });
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[String] {
        &self.components
    }

    pub fn names(&self, s: &[usize]) -> Vec<String> {
        s.iter().map(|&i| self.components[i].clone()).collect()
    }

    pub fn open_strata(&self) -> impl Iterator<Item = (&Stratum, &MotiveClass)> {
        self.open_strata.iter()
    }

    pub fn open_stratum(&self, names: &[&str]) -> Result<MotiveClass> {
        let key = stratum_key(&self.components, names)?;
        Ok(self.open_strata.get(&key).cloned().unwrap_or_default())
    }

    /// `[X° \ D°]`
    pub fn interior(&self) -> &MotiveClass {
        &self.open_strata[&Vec::new()]
    }

    /// Closed strata, recomputed by summing open strata over supersets.
    pub fn closed_strata(&self) -> BTreeMap<Stratum, MotiveClass> {
        let mut out: BTreeMap<Stratum, MotiveClass> = BTreeMap::new();
        for (s, c) in &self.open_strata {
            for sub in subsets(s) {
                let slot = out.entry(sub).or_default();
                *slot = &*slot + c;
            }
        }
        out
    }

    /// `Σ_I [open_I]·P^|I|` before reduction.
    pub fn formal_class(&self) -> FormalPClass {
        let mut out = FormalPClass::default();
        for (s, c) in &self.open_strata {
            out.add_to(s.len(), c);
        }
        out
    }

    /// The component `F` with the divisor dropped: `X'` keeps the remaining
    /// components, `F̂` is `F` with the restricted divisor.
    pub fn drop_component(&self, name: &str) -> Result<(SncSpec, SncSpec)> {
        let f = self
            .components
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::UnknownComponent(name.to_string()))?;
        let rest: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != f)
            .map(|(_, c)| c.clone())
            .collect();
        let reindex = |s: &Stratum| -> Stratum {
            s.iter()
                .filter(|&&i| i != f)
                .map(|&i| if i > f { i - 1 } else { i })
                .collect()
        };
        let mut x_prime: BTreeMap<Stratum, MotiveClass> = BTreeMap::new();
        let mut f_hat: BTreeMap<Stratum, MotiveClass> = BTreeMap::new();
        for (s, c) in &self.open_strata {
            let key = reindex(s);
            if s.contains(&f) {
                let slot = f_hat.entry(key.clone()).or_default();
                *slot = &*slot + c;
            }
            let slot = x_prime.entry(key).or_default();
            *slot = &*slot + c;
        }
        f_hat.entry(Vec::new()).or_default();
        let x_prime = SncSpec {
            dim: self.dim,
            components: rest.clone(),
            open_strata: x_prime,
        };
        let f_hat = SncSpec {
            dim: self.dim.saturating_sub(1),
            components: rest,
            open_strata: f_hat,
        };
        Ok((x_prime, f_hat))
    }

    /// `[F]`: the strata lying on `F`, each with its own rank.
    pub fn component_class(&self, name: &str) -> Result<LogClass> {
        let f = stratum_key(&self.components, &[name])?[0];
        let mut out = FormalPClass::default();
        for (s, c) in &self.open_strata {
            if s.contains(&f) {
                out.add_to(s.len(), c);
            }
        }
        Ok(out.reduce())
    }
}

fn collect_components<S: AsRef<str>>(components: impl IntoIterator<Item = S>) -> Result<Vec<String>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in components {
        let c = c.as_ref().to_string();
        if !seen.insert(c.clone()) {
            return Err(Error::DuplicateComponent(c));
        }
        out.push(c);
    }
    Ok(out)
}

fn stratum_key(components: &[String], names: &[&str]) -> Result<Stratum> {
    let mut key = Vec::with_capacity(names.len());
    for n in names {
        let i = components
            .iter()
            .position(|c| c == n)
            .ok_or_else(|| Error::UnknownComponent(n.to_string()))?;
        key.push(i);
    }
    key.sort_unstable();
    key.dedup();
    Ok(key)
}

fn index_strata<'a>(
    components: &[String],
    strata: impl IntoIterator<Item = (Vec<&'a str>, MotiveClass)>,
) -> Result<BTreeMap<Stratum, MotiveClass>> {
    let mut out = BTreeMap::new();
    for (names, c) in strata {
        let key = stratum_key(components, &names)?;
        if out.insert(key.clone(), c).is_some() {
            return Err(Error::DuplicateStratum(
                key.iter().map(|&i| components[i].clone()).collect(),
            ));
        }
    }
    Ok(out)
}

fn subsets(s: &[usize]) -> Vec<Stratum> {
    (0..1u64 << s.len())
        .map(|mask| {
            s.iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// `open[I] = Σ_{J ⊇ I} (-1)^(|J| - |I|)·closed[J]`.
pub fn strata_open_from_closed(
    components: &[String],
    closed: &BTreeMap<Stratum, MotiveClass>,
) -> Result<BTreeMap<Stratum, MotiveClass>> {
    let names = |s: &[usize]| s.iter().map(|&i| components[i].clone()).collect::<Vec<_>>();
    if !closed.contains_key(&Vec::new()) {
        return Err(Error::MissingInterior);
    }
    for present in closed.keys() {
        for sub in subsets(present) {
            if !closed.contains_key(&sub) {
                return Err(Error::MissingStratum {
                    missing: names(&sub),
                    present: names(present),
                });
            }
        }
    }
    let mut open = BTreeMap::new();
    for i in closed.keys() {
        let mut acc = MotiveClass::zero();
        for (j, c) in closed {
            if i.iter().all(|x| j.contains(x)) {
                let sign = if (j.len() - i.len()) % 2 == 0 { 1 } else { -1 };
                acc = &acc + &c.scale(&BigInt::from(sign));
            }
        }
        open.insert(i.clone(), acc);
    }
    Ok(open)
}

/// Log class of the pair: `Σ_I [open_I]·P^|I|`, reduced.
pub fn snc_class(spec: &SncSpec) -> LogClass {
    spec.formal_class().reduce()
}

/// `Σ_I (-[Gm])^|I|·[open_I]`, the log Hodge image written stratum by
/// stratum.
pub fn rho_expansion(spec: &SncSpec) -> MotiveClass {
    let minus_gm = -&MotiveClass::torus();
    spec.open_strata()
        .map(|(s, c)| c * &minus_gm.pow(s.len() as u32))
        .fold(MotiveClass::zero(), |a, b| &a + &b)
}

/// `χ_y(V) = e(V)(-y, -1)`, as a polynomial in `y`.
pub fn chi_y(table: &SymbolTable, v: &MotiveClass) -> Result<UPoly> {
    Ok(table
        .e_of(v)?
        .at_v_minus_one()
        .scale_variable(&BigInt::from(-1)))
}

/// Both sides of the χ_y bridge for an s.n.c. pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiYBridge {
    /// `(-u)^n · χ_{-1/u}(interior)`, a Laurent polynomial in `u`.
    pub lhs: UPoly,
    /// First component of `t̄` of the pair's class.
    pub rhs: UPoly,
    pub equal: bool,
}

pub fn chi_y_bridge(table: &SymbolTable, spec: &SncSpec) -> Result<ChiYBridge> {
    let n = spec.dim() as i64;
    let chi = chi_y(table, spec.interior())?;
    // Σ c_k (-1/u)^k · (-u)^n = Σ c_k (-1)^(k+n) u^(n-k)
    let lhs = UPoly::from_terms(chi.terms().map(|(k, c)| {
        let sign = if (k + n) % 2 == 0 { c.clone() } else { -c };
        (n - k, sign)
    }));
    let rhs = tbar_of(table, &snc_class(spec))?.first;
    Ok(ChiYBridge {
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Whether the stratum-wise expansion agrees with `ρ` of the class.
pub fn rho_expansion_agrees(spec: &SncSpec) -> bool {
    rho_expansion(spec) == rho(&snc_class(spec))
}

/// Standard pairs used by tests and the CLI.
pub mod presets {
    use super::SncSpec;
    use crate::motive::MotiveClass;
    use crate::poly::UPoly;

    fn lp(coeffs: &[i64]) -> MotiveClass {
        MotiveClass::from_l_poly(&UPoly::from_coeffs(coeffs.iter().copied()))
    }

    /// `(P¹, D)` with `D` the first `points` of `{0, ∞}`.
    pub fn p1_with_points(points: usize) -> SncSpec {
        let names = ["0", "inf"];
        assert!(points <= 2);
        let comps = &names[..points];
        let interior = lp(&[1 - points as i64, 1]);
        let strata = std::iter::once((vec![], interior))
            .chain(comps.iter().map(|&c| (vec![c], MotiveClass::one())));
        SncSpec::from_open(1, comps.iter().copied(), strata).expect("valid preset")
    }

    /// `P²` with the toric triangle of lines.
    pub fn p2_triangle() -> SncSpec {
        let closed = [
            (vec![], lp(&[1, 1, 1])),
            (vec!["l0"], lp(&[1, 1])),
            (vec!["l1"], lp(&[1, 1])),
            (vec!["l2"], lp(&[1, 1])),
            (vec!["l0", "l1"], lp(&[1])),
            (vec!["l0", "l2"], lp(&[1])),
            (vec!["l1", "l2"], lp(&[1])),
        ];
        SncSpec::from_closed(2, ["l0", "l1", "l2"], closed).expect("valid preset")
    }

    /// `P²` with a single line.
    pub fn p2_line() -> SncSpec {
        SncSpec::from_open(2, ["l0"], [(vec![], lp(&[0, 0, 1])), (vec!["l0"], lp(&[1, 1]))])
            .expect("valid preset")
    }

    /// `P²` with two lines.
    pub fn p2_two_lines() -> SncSpec {
        SncSpec::from_open(
            2,
            ["l0", "l1"],
            [
                (vec![], lp(&[0, -1, 1])),
                (vec!["l0"], lp(&[0, 1])),
                (vec!["l1"], lp(&[0, 1])),
                (vec!["l0", "l1"], lp(&[1])),
            ],
        )
        .expect("valid preset")
    }
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;

    fn lp(coeffs: &[i64]) -> MotiveClass {
        MotiveClass::from_l_poly(&UPoly::from_coeffs(coeffs.iter().copied()))
    }

    #[test]
    fn open_from_closed_examples() {
        let one_point = SncSpec::from_closed(1, ["0"], [(vec![], lp(&[1, 1])), (vec!["0"], lp(&[1]))])
            .unwrap();
        assert_eq!(one_point.interior(), &lp(&[0, 1]));
        assert_eq!(one_point.open_stratum(&["0"]).unwrap(), lp(&[1]));

        let two = SncSpec::from_closed(
            1,
            ["0", "inf"],
            [
                (vec![], lp(&[1, 1])),
                (vec!["0"], lp(&[1])),
                (vec!["inf"], lp(&[1])),
            ],
        )
        .unwrap();
        assert_eq!(two, p1_with_points(2));

        let empty = SncSpec::from_closed(1, Vec::<&str>::new(), [(vec![], lp(&[1, 1]))]).unwrap();
        assert_eq!(empty.interior(), &lp(&[1, 1]));
        assert_eq!(empty.open_strata().count(), 1);
    }

    #[test]
    fn open_from_closed_errors() {
        let missing = SncSpec::from_closed(
            2,
            ["a", "b"],
            [(vec![], lp(&[1])), (vec!["a"], lp(&[1])), (vec!["a", "b"], lp(&[1]))],
        );
        assert_eq!(
            missing,
            Err(Error::MissingStratum {
                missing: vec!["b".into()],
                present: vec!["a".into(), "b".into()]
            })
        );
        assert_eq!(
            SncSpec::from_closed(1, ["a"], [(vec!["a"], lp(&[1]))]),
            Err(Error::MissingInterior)
        );
        assert!(matches!(
            SncSpec::from_open(1, ["a"], [(vec![], lp(&[1])), (vec!["b"], lp(&[1]))]),
            Err(Error::UnknownComponent(_))
        ));
        assert!(matches!(
            SncSpec::from_open(1, ["a", "b"], [(vec![], lp(&[1])), (vec!["a", "b"], lp(&[1]))]),
            Err(Error::StratumTooDeep { count: 2, dim: 1, .. })
        ));
    }

    #[test]
    fn p2_triangle_strata() {
        let t = p2_triangle();
        assert_eq!(t.interior(), &lp(&[1, -2, 1]));
        assert_eq!(t.open_stratum(&["l1"]).unwrap(), lp(&[-1, 1]));
        assert_eq!(t.open_stratum(&["l0", "l2"]).unwrap(), lp(&[1]));
        assert_eq!(t.closed_strata()[&vec![]], lp(&[1, 1, 1]));
    }

    #[test]
    fn snc_class_examples() {
        let gm = MotiveClass::torus();
        assert_eq!(snc_class(&p1_with_points(2)), LogClass::new(gm, 2.into()));
        assert_eq!(snc_class(&p1_with_points(1)), LogClass::new(lp(&[0, 1]), 1.into()));
        assert_eq!(snc_class(&p1_with_points(0)), LogClass::from(lp(&[1, 1])));
    }

    #[test]
    fn rho_expansion_examples() {
        assert_eq!(rho_expansion(&p1_with_points(2)), -&MotiveClass::torus());
        assert_eq!(rho_expansion(&p1_with_points(0)), lp(&[1, 1]));
        assert_eq!(rho_expansion(&p1_with_points(1)), MotiveClass::one());
        for spec in [p1_with_points(1), p2_triangle(), p2_two_lines()] {
            assert!(rho_expansion_agrees(&spec));
        }
    }

    #[test]
    fn chi_y_bridge_examples() {
        let table = SymbolTable::new();
        let b = chi_y_bridge(&table, &p1_with_points(2)).unwrap();
        assert_eq!(b.lhs, UPoly::from_coeffs([1, 1]));
        assert!(b.equal);
        let b = chi_y_bridge(&table, &p1_with_points(1)).unwrap();
        assert_eq!(b.rhs, UPoly::one());
        assert!(b.equal);
        let point = SncSpec::from_open(0, Vec::<&str>::new(), [(vec![], lp(&[1]))]).unwrap();
        let b = chi_y_bridge(&table, &point).unwrap();
        assert_eq!((b.lhs.clone(), b.equal), (UPoly::one(), true));
    }

    #[test]
    fn chi_y_bridge_rejects_negative_powers() {
        let table = SymbolTable::new();
        let spec = SncSpec::from_open(1, Vec::<&str>::new(), [(vec![], MotiveClass::lefschetz_pow(-1))]).unwrap();
        assert_eq!(
            chi_y_bridge(&table, &spec),
            Err(Error::NegativeLefschetzExponent)
        );
    }

    #[test]
    fn drop_component_splits_strata() {
        let (x_prime, f_hat) = p1_with_points(2).drop_component("inf").unwrap();
        assert_eq!(x_prime, p1_with_points(1));
        assert_eq!(f_hat.dim(), 0);
        assert_eq!(f_hat.interior(), &lp(&[1]));
        let tri = p2_triangle();
        let (x_prime, f_hat) = tri.drop_component("l2").unwrap();
        assert_eq!(x_prime, p2_two_lines());
        assert_eq!(f_hat.interior(), &lp(&[-1, 1]));
        assert_eq!(f_hat.open_stratum(&["l0"]).unwrap(), lp(&[1]));
        assert_eq!(
            tri.component_class("l2").unwrap(),
            &snc_class(&f_hat) * &LogClass::p()
        );
    }
}
