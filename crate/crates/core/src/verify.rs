//! Verification suites.
//!
//! Each suite checks the identities of one part of the library on fixed
//! presets and on pseudo-random inputs from fixed seeds, so reports are
//! reproducible byte for byte.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::expr::parse_class;
use crate::fan::{self, presets as fans, Fan, FanSpec};
use crate::log_ring::{
    chi_log, chi_log_p_values, rho, tau, tbar_of, DualityCandidate, FormalPClass, Involution, LogClass,
};
use crate::motive::{MotiveClass, SymbolTable};
use crate::oracle::{self, ConstantFreeSpec, SplitBundle};
use crate::poly::{EPolynomial, UPoly};
use crate::snc::{self, presets as pairs, SncSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Presentation,
    Toric,
    Snc,
    Hodge,
    Duality,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Presentation,
        Suite::Toric,
        Suite::Snc,
        Suite::Hodge,
        Suite::Duality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Presentation => "presentation",
            Suite::Toric => "toric",
            Suite::Snc => "snc",
            Suite::Hodge => "hodge",
            Suite::Duality => "duality",
        }
    }

    pub fn run(self) -> Vec<Check> {
        let mut r = Recorder::new(self);
        match self {
            Suite::Presentation => presentation(&mut r),
            Suite::Toric => toric(&mut r),
            Suite::Snc => snc_suite(&mut r),
            Suite::Hodge => hodge(&mut r),
            Suite::Duality => duality(&mut r),
        }
        r.checks
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A suite name, or `all`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    One(Suite),
    All,
}

impl Selection {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            Selection::One(s) => vec![s],
            Selection::All => Suite::ALL.to_vec(),
        }
    }
}

impl FromStr for Selection {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "all" {
            return Ok(Selection::All);
        }
        Suite::ALL
            .iter()
            .find(|x| x.name() == s)
            .map(|&x| Selection::One(x))
            .ok_or_else(|| {
                format!("unknown suite `{s}`; expected presentation, toric, snc, hodge, duality or all")
            })
    }
}

/// One named check and its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    /// Number of cases examined.
    pub cases: usize,
    /// First failing case, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

pub fn run(selection: Selection) -> Vec<Check> {
    selection.suites().into_iter().flat_map(Suite::run).collect()
}

struct Recorder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: Suite) -> Self {
        Self {
            suite,
            checks: Vec::new(),
        }
    }

    /// Runs `case` on every input; the first failure or error is recorded.
    fn each<T>(&mut self, name: &str, inputs: impl IntoIterator<Item = T>, mut case: impl FnMut(&T) -> Result<Option<String>>) {
        let mut cases = 0;
        let mut failure = None;
        for input in inputs {
            cases += 1;
            match case(&input) {
                Ok(None) => {}
                Ok(Some(msg)) => {
                    failure = Some(msg);
                    break;
                }
                Err(e) => {
                    failure = Some(format!("error: {e}"));
                    break;
                }
            }
        }
        self.checks.push(Check {
            suite: self.suite,
            name: name.to_string(),
            passed: failure.is_none(),
            cases,
            failure,
        });
    }

    fn one(&mut self, name: &str, case: impl FnOnce() -> Result<Option<String>>) {
        let mut case = Some(case);
        self.each(name, [()], |_| (case.take().expect("single case"))());
    }
}

/// `None` when equal, otherwise a description of the mismatch.
fn expect_eq<T: PartialEq + fmt::Display>(what: &str, got: &T, want: &T) -> Option<String> {
    (got != want).then(|| format!("{what}: got {got}, expected {want}"))
}

fn first_failure(items: impl IntoIterator<Item = Option<String>>) -> Option<String> {
    items.into_iter().flatten().next()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random inputs shared by the suites and the test targets.
pub mod sample {
    use super::*;

    /// Symbols used by random classes: an elliptic curve `E`, a quadric
    /// surface `Q` and a point `pt`, all smooth projective.
    pub fn table() -> SymbolTable {
        let mut t = SymbolTable::new();
        t.register("E", EPolynomial::from_terms([(0, 0, 1), (1, 0, -1), (0, 1, -1), (1, 1, 1)]), 1, true)
            .expect("fresh table");
        t.register("Q", EPolynomial::from_terms([(0, 0, 1), (1, 1, 2), (2, 2, 1)]), 2, true)
            .expect("fresh table");
        t.register("pt", EPolynomial::one(), 0, true).expect("fresh table");
        t
    }

    pub const SYMBOLS: [&str; 3] = ["E", "Q", "pt"];

    /// Integer combination of `L^k` for `k` in `lo..=hi`.
    pub fn l_class(rng: &mut impl Rng, lo: i64, hi: i64) -> MotiveClass {
        MotiveClass::from_l_poly(&UPoly::from_terms((lo..=hi).map(|k| (k, rng.gen_range(-3i64..=3)))))
    }

    /// Up to four terms `c·L^k·E^a·Q^b·pt^c` with `k` in `lo..=hi`.
    pub fn class(rng: &mut impl Rng, table: &SymbolTable, lo: i64, hi: i64) -> MotiveClass {
        let mut out = MotiveClass::zero();
        for _ in 0..rng.gen_range(0..=4) {
            let mut term = MotiveClass::integer(rng.gen_range(-3i64..=3))
                * MotiveClass::lefschetz_pow(rng.gen_range(lo..=hi));
            for s in SYMBOLS {
                let exp = rng.gen_range(0..=2u32);
                term = term * table.class(s).expect("registered").pow(exp);
            }
            out = out + term;
        }
        out
    }

    pub fn log_class(rng: &mut impl Rng, table: &SymbolTable, lo: i64, hi: i64) -> LogClass {
        LogClass::new(class(rng, table, lo, hi), class(rng, table, lo, hi))
    }

    /// A pair with `components` named `d0, d1, …` and random L-polynomial
    /// open strata on at most `dim` components.
    pub fn snc_spec(rng: &mut impl Rng, dim: usize, components: usize) -> SncSpec {
        let names: Vec<String> = (0..components).map(|i| format!("d{i}")).collect();
        let mut strata = Vec::new();
        for mask in 0u32..1 << components {
            let subset: Vec<&str> = (0..components)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| names[i].as_str())
                .collect();
            if subset.len() > dim || (mask != 0 && rng.gen_bool(0.3)) {
                continue;
            }
            let top = (dim - subset.len()) as i64;
            strata.push((subset, l_class(rng, 0, top)));
        }
        SncSpec::from_open(dim, &names, strata).expect("well-formed random spec")
    }

    /// A preset fan refined by `steps` random barycentric subdivisions.
    pub fn refinement(rng: &mut impl Rng, base: &Fan, steps: usize) -> Fan {
        fan::refine_with(base, steps, |n| rng.gen_range(0..n))
    }
}

/// Named preset fans used across suites.
pub fn preset_fans() -> Vec<(String, Fan)> {
    let mut out: Vec<(String, Fan)> = (1..=4)
        .map(|n| (format!("A^{n}"), fans::affine_space(n)))
        .collect();
    out.push(("P^1".into(), fans::projective_line()));
    out.push(("P^2".into(), fans::projective_plane()));
    out.push(("P^1 x P^1".into(), fans::p1_times_p1()));
    out.push(("A^2 minus 0".into(), fans::punctured_plane()));
    out
}

/// Complete smooth presets for the Hodge comparison.
pub fn complete_fans() -> Vec<(String, Fan)> {
    vec![
        ("P^1".into(), fans::projective_line()),
        ("P^2".into(), fans::projective_plane()),
        ("P^1 x P^1".into(), fans::p1_times_p1()),
    ]
}

/// At least `count` refinements of the presets, deterministic in `seed`.
pub fn random_refinements(seed: u64, count: usize) -> Vec<(String, Fan, Fan)> {
    let mut rng = rng(seed);
    let bases: Vec<_> = preset_fans().into_iter().filter(|(_, f)| f.dim() >= 2).collect();
    (0..count)
        .map(|i| {
            let (name, base) = &bases[i % bases.len()];
            let steps = rng.gen_range(1..=3);
            let refined = sample::refinement(&mut rng, base, steps);
            (format!("{name} refinement {i}"), base.clone(), refined)
        })
        .collect()
}

fn lp(coeffs: &[i64]) -> MotiveClass {
    MotiveClass::from_l_poly(&UPoly::from_coeffs(coeffs.iter().copied()))
}

fn formal(coeffs: &[MotiveClass]) -> FormalPClass {
    FormalPClass::new(coeffs.to_vec())
}

fn presentation(r: &mut Recorder) {
    let t = sample::table();
    r.one("P*(P+[Gm]) = 0", || {
        let x = parse_class(&t, "P*(P+(L-1))")?;
        Ok(expect_eq("P*(P+(L-1))", &x, &LogClass::zero()))
    });
    r.one("two stratifications of A^2 agree", || {
        let gm = MotiveClass::torus();
        let coarse = formal(&[gm.pow(2), gm.scale(&2.into()), MotiveClass::one()]);
        let fine = formal(&[gm.pow(2), gm.scale(&3.into()), MotiveClass::integer(2)]);
        Ok(expect_eq("reduced classes", &fine.reduce(), &coarse.reduce()))
    });

    let mut g = rng(1);
    let triples: Vec<[LogClass; 3]> = (0..300)
        .map(|_| std::array::from_fn(|_| sample::log_class(&mut g, &t, -2, 2)))
        .collect();
    r.each("ring axioms", &triples, |[a, b, c]| {
        Ok(first_failure([
            expect_eq("a+b", &(a + b), &(b + a)),
            expect_eq("ab", &(a * b), &(b * a)),
            expect_eq("(ab)c", &(&(a * b) * c), &(a * &(b * c))),
            expect_eq("(a+b)+c", &(&(a + b) + c), &(a + &(b + c))),
            expect_eq("a(b+c)", &(a * &(b + c)), &(&(a * b) + &(a * c))),
            expect_eq("1a", &(&LogClass::one() * a), a),
            expect_eq("a+(-a)", &(a + &(-a)), &LogClass::zero()),
        ]))
    });
    r.each("product agrees with unreduced product", &triples, |[a, b, _]| {
        let fa = formal(&[a.scalar_part.clone(), a.p_part.clone()]);
        let fb = formal(&[b.scalar_part.clone(), b.p_part.clone()]);
        Ok(expect_eq("ab", &(a * b), &fa.mul(&fb).reduce()))
    });
    r.each("tau and rho are ring maps", &triples, |[a, b, _]| {
        Ok(first_failure([
            expect_eq("tau(ab)", &tau(&(a * b)), &(&tau(a) * &tau(b))),
            expect_eq("tau(a+b)", &tau(&(a + b)), &(&tau(a) + &tau(b))),
            expect_eq("rho(ab)", &rho(&(a * b)), &(&rho(a) * &rho(b))),
            expect_eq("rho(a+b)", &rho(&(a + b)), &(&rho(a) + &rho(b))),
        ]))
    });
    let k0: Vec<[LogClass; 2]> = (0..200)
        .map(|_| std::array::from_fn(|_| sample::log_class(&mut g, &t, 0, 2)))
        .collect();
    r.each("e is a ring map", &k0, |[a, b]| {
        let (x, y) = (&a.scalar_part, &b.scalar_part);
        let (ex, ey) = (t.e_of(x)?, t.e_of(y)?);
        Ok(first_failure([
            expect_eq("e(xy)", &t.e_of(&(x * y))?, &(&ex * &ey)),
            expect_eq("e(x+y)", &t.e_of(&(x + y))?, &(&ex + &ey)),
        ]))
    });
    r.each("chi_log is a ring map through tau", &k0, |[a, b]| {
        let (ca, cb) = (chi_log(&t, a)?, chi_log(&t, b)?);
        Ok(first_failure([
            expect_eq("chi_log(ab)", &chi_log(&t, &(a * b))?, &(&ca * &cb)),
            expect_eq("chi_log(a)", &ca, &t.chi_c_of(&tau(a))?),
            expect_eq("chi_log(P)", &chi_log(&t, &LogClass::p())?, &0.into()),
        ]))
    });
    r.one("chi_log(P) is forced to 0", || {
        let values = chi_log_p_values(&t);
        Ok((values != vec![0.into()]).then(|| format!("admissible values {values:?}")))
    });
}

fn toric(r: &mut Recorder) {
    let presets = preset_fans();
    r.each("stratification class = toric class", &presets, |(name, f)| {
        Ok(expect_eq(name, &f.stratification_class().1, &f.toric_class()))
    });
    let specializations: Vec<(String, Fan, LogClass)> = {
        let mut v = vec![
            ("P^2".to_string(), fans::projective_plane(), lp(&[1, -2, 1]).into()),
            ("P^1".to_string(), fans::projective_line(), LogClass::new(lp(&[-1, 1]), lp(&[2]))),
        ];
        for n in 1..=4u32 {
            let gm = MotiveClass::torus();
            v.push((format!("A^{n}"), fans::affine_space(n as usize), LogClass::new(gm.pow(n), gm.pow(n - 1))));
        }
        v
    };
    r.each("proper and affine specializations", &specializations, |(name, f, want)| {
        Ok(expect_eq(name, &f.toric_class(), want))
    });
    let refinements = random_refinements(7, 24);
    r.each("subdivision invariance", &refinements, |(name, base, refined)| {
        Ok(first_failure([
            expect_eq(name, &refined.stratification_class().1, &refined.toric_class()),
            expect_eq(name, &refined.toric_class(), &base.toric_class()),
            (base.is_smooth() && !refined.is_smooth()).then(|| format!("{name}: lost smoothness")),
        ]))
    });
    let t = SymbolTable::new();
    r.each("chi_log vanishes on toric classes", presets.iter().chain(&complete_fans()), |(name, f)| {
        let c = chi_log(&t, &f.toric_class())?;
        Ok(expect_eq(name, &c, &0.into()))
    });
    r.each("fan JSON round trip", presets.iter().map(|(n, f)| (n.clone(), f.clone())).chain(refinements.iter().map(|(n, _, f)| (n.clone(), f.clone()))), |(name, f)| {
        let json = serde_json::to_string(&f.to_spec()).expect("serializable");
        let spec: FanSpec = serde_json::from_str(&json).expect("own output parses");
        let back = Fan::from_spec(&spec)?;
        Ok((back != *f).then(|| format!("{name}: round trip changed the fan")))
    });
}

fn snc_suite(r: &mut Recorder) {
    let t = SymbolTable::new();
    let mut g = rng(3);
    let mut specs: Vec<(String, SncSpec)> = vec![
        ("P^1, 0 points".into(), pairs::p1_with_points(0)),
        ("P^1, 1 point".into(), pairs::p1_with_points(1)),
        ("P^1, 2 points".into(), pairs::p1_with_points(2)),
        ("P^2, line".into(), pairs::p2_line()),
        ("P^2, two lines".into(), pairs::p2_two_lines()),
        ("P^2, triangle".into(), pairs::p2_triangle()),
    ];
    for i in 0..60 {
        let dim = g.gen_range(1..=3);
        let comps = g.gen_range(0..=3);
        specs.push((format!("random {i}"), sample::snc_spec(&mut g, dim, comps)));
    }
    r.each("rho expansion = rho of class", &specs, |(name, s)| {
        Ok(expect_eq(name, &snc::rho_expansion(s), &rho(&snc::snc_class(s))))
    });
    r.each("closed strata round trip", &specs, |(name, s)| {
        let closed = s.closed_strata();
        let open = snc::strata_open_from_closed(s.components(), &closed)?;
        let same = s.open_strata().all(|(k, v)| open.get(k).cloned().unwrap_or_default() == *v)
            && open.iter().all(|(k, v)| v.is_zero() || s.open_strata().any(|(k2, _)| k2 == k));
        Ok((!same).then(|| format!("{name}: Möbius inversion mismatch")))
    });
    let bridges = [
        ("P^1 toric pair", pairs::p1_with_points(2)),
        ("P^2 triangle", pairs::p2_triangle()),
    ];
    r.each("chi_y bridge", &bridges, |(name, s)| {
        let b = snc::chi_y_bridge(&t, s)?;
        Ok((!b.equal).then(|| format!("{name}: {} vs {}", b.lhs.display("u"), b.rhs.display("u"))))
    });
    r.each("residue recursion", specs.iter().filter(|(_, s)| !s.components().is_empty()), |(name, s)| {
        let u = UPoly::x();
        let mut out = None;
        for c in s.components() {
            let (x_prime, f_hat) = s.drop_component(c)?;
            let lhs = tbar_of(&t, &snc::snc_class(s))?.first;
            let rhs = &tbar_of(&t, &snc::snc_class(&x_prime))?.first
                + &(&u * &tbar_of(&t, &snc::snc_class(&f_hat))?.first);
            out = out.or_else(|| expect_eq(&format!("{name}, drop {c}"), &lhs, &rhs));
            let comp = s.component_class(c)?;
            let want = &snc::snc_class(&f_hat) * &LogClass::p();
            out = out.or_else(|| expect_eq(&format!("{name}, [F] = [F^]P for {c}"), &comp, &want));
        }
        Ok(out)
    });
    r.one("toric pair on P^1 matches its fan", || {
        Ok(expect_eq(
            "P^1",
            &snc::snc_class(&pairs::p1_with_points(2)),
            &fans::projective_line().toric_class(),
        ))
    });
    r.one("triangle on P^2 matches its fan", || {
        Ok(expect_eq(
            "P^2",
            &snc::snc_class(&pairs::p2_triangle()),
            &fans::projective_plane().toric_class(),
        ))
    });
}

/// Bases `X°` for the constant free comparison, as L-polynomials.
pub fn constant_free_bases() -> Vec<(&'static str, MotiveClass, u32)> {
    vec![
        ("pt", lp(&[1]), 0),
        ("P^1", lp(&[1, 1]), 1),
        ("P^2", lp(&[1, 1, 1]), 2),
        ("P^1 x P^1", lp(&[1, 2, 1]), 2),
    ]
}

fn hodge(r: &mut Recorder) {
    let t = SymbolTable::new();
    r.one("counterexample certificate", || {
        let c = oracle::counterexample_certificate();
        let want = EPolynomial::from_terms([(0, 0, -2), (1, 0, 1), (1, 1, -1)]);
        let reduced = UPoly::from_coeffs([-1, -1]);
        Ok(first_failure([
            expect_eq("difference", &c.difference, &want),
            (!c.holds()).then(|| "certificate does not hold".to_string()),
            expect_eq("toric reduction", &c.toric_reduction, &reduced),
            expect_eq("trivial reduction", &c.trivial_reduction, &reduced),
        ]))
    });
    r.one("(P^1, N) rectangle", || {
        let (table, e) = oracle::elog_p1(&SplitBundle::new([-2, 0]));
        Ok(first_failure([
            (table.row(0, 2) != [1, 1, 0]).then(|| format!("row 0: {:?}", table.row(0, 2))),
            (table.row(1, 2) != [0, 1, 1]).then(|| format!("row 1: {:?}", table.row(1, 2))),
            expect_eq("E", &e, &EPolynomial::from_terms([(0, 0, 1), (1, 0, 1), (1, 1, 1), (2, 1, 1)])),
        ]))
    });
    let cf: Vec<_> = constant_free_bases()
        .into_iter()
        .flat_map(|(n, b, d)| (0..=3u32).map(move |r| (n, b.clone(), d, r)))
        .collect();
    r.each("oracle = ring on constant free presets", &cf, |(name, base, dim, rank)| {
        let spec = ConstantFreeSpec {
            base_e_poly: t.e_of(base)?,
            rank: *rank,
            dimension: *dim,
        };
        let ring = tbar_of(&t, &(&LogClass::from(base.clone()) * &LogClass::p().pow(*rank)))?;
        let oracle = oracle::ebar_of(&oracle::elog_constant_free(&spec));
        Ok(expect_eq(&format!("{name}, rank {rank}"), &ring, &oracle))
    });
    let mut toric_inputs = complete_fans();
    let mut g = rng(5);
    for (name, f) in complete_fans() {
        for i in 0..4 {
            let steps = g.gen_range(1..=3);
            toric_inputs.push((format!("{name} refinement {i}"), sample::refinement(&mut g, &f, steps)));
        }
    }
    r.each("oracle = ring on smooth proper toric presets", &toric_inputs, |(name, f)| {
        let oracle = oracle::ebar_of(&oracle::elog_smooth_proper_toric(f.dim() as u32));
        let ring = tbar_of(&t, &f.toric_class())?;
        Ok(first_failure([
            (!f.is_smooth()).then(|| format!("{name}: not smooth")),
            (!f.is_complete()?).then(|| format!("{name}: not complete")),
            expect_eq(name, &ring, &oracle),
        ]))
    });
    r.each("residue chain on P^1, both sides", [1usize, 2], |&k| {
        let u = UPoly::x();
        let oracle_side = |k| oracle::ebar_of(&oracle::elog_p1(&oracle::p1_log_differentials(k, 0)).1).first;
        let ring_side = |k| tbar_of(&t, &snc::snc_class(&pairs::p1_with_points(k))).map(|e| e.first);
        Ok(first_failure([
            expect_eq(&format!("oracle, {k} points"), &oracle_side(k), &(&oracle_side(k - 1) + &u)),
            expect_eq(&format!("ring, {k} points"), &ring_side(k)?, &(&ring_side(k - 1)? + &u)),
            expect_eq(&format!("oracle = ring, {k} points"), &ring_side(k)?, &oracle_side(k)),
        ]))
    });
    r.each("log Serre duality", &cf, |(name, base, dim, rank)| {
        let e = oracle::elog_constant_free(&ConstantFreeSpec {
            base_e_poly: t.e_of(base)?,
            rank: *rank,
            dimension: *dim,
        });
        let chis = oracle::holomorphic_euler_characteristics(&e);
        Ok((!oracle::log_serre_duality_holds(&chis, *rank, *dim))
            .then(|| format!("{name}, rank {rank}: {chis:?}")))
    });
}

fn duality(r: &mut Recorder) {
    let t = sample::table();
    let mut g = rng(11);
    let xs: Vec<LogClass> = (0..200).map(|_| sample::log_class(&mut g, &t, -2, 2)).collect();
    for inv in [Involution::First, Involution::Second] {
        let j = inv.index();
        r.each(&format!("i{j} is an involution"), &xs, |x| {
            let back = inv.apply(&t, &inv.apply(&t, x)?)?;
            Ok(expect_eq(&format!("i{j}(i{j}(x))"), &back, x))
        });
        r.each(&format!("i{j} is a ring map"), xs.windows(2), |w| {
            let (a, b) = (&w[0], &w[1]);
            Ok(expect_eq(
                &format!("i{j}(ab)"),
                &inv.apply(&t, &(a * b))?,
                &(&inv.apply(&t, a)? * &inv.apply(&t, b)?),
            ))
        });
        r.each(&format!("i{j} is compatible with tau and rho"), &xs, |x| {
            let y = inv.apply(&t, x)?;
            let (dt, dr) = (t.dual_of(&tau(x))?, t.dual_of(&rho(x))?);
            Ok(match inv {
                Involution::First => first_failure([
                    expect_eq("tau(i1 x)", &tau(&y), &dt),
                    expect_eq("rho(i1 x)", &rho(&y), &dr),
                ]),
                Involution::Second => first_failure([
                    expect_eq("tau(i2 x)", &tau(&y), &dr),
                    expect_eq("rho(i2 x)", &rho(&y), &dt),
                ]),
            })
        });
    }
    r.one("compatible images of P are forced", || {
        let linv = MotiveClass::lefschetz_pow(-1);
        let gm = MotiveClass::torus();
        let candidates = [
            (Involution::First, MotiveClass::zero(), -&linv, true),
            (Involution::Second, &gm * &linv, linv.clone(), true),
            (Involution::First, MotiveClass::zero(), linv.clone(), false),
            (Involution::Second, MotiveClass::zero(), linv.clone(), false),
            (Involution::First, &gm * &linv, -&linv, false),
        ];
        for (inv, alpha, beta, want) in candidates {
            let c = DualityCandidate { alpha, beta };
            let got = c.is_compatible(&t, inv)?;
            if got != want || c.forced_constraints_hold(inv) != want {
                return Ok(Some(format!("i{}: candidate {:?} gave {got}", inv.index(), c)));
            }
        }
        Ok(None)
    });
    let mut g = rng(13);
    let mut proper = complete_fans();
    for (name, f) in complete_fans() {
        proper.push((format!("{name} refined"), sample::refinement(&mut g, &f, 2)));
    }
    r.each("duals of proper toric classes", &proper, |(name, f)| {
        let n = f.dim() as i64;
        let x = f.toric_class();
        let scale = LogClass::from(MotiveClass::lefschetz_pow(-n));
        let sign = LogClass::from(if n % 2 == 0 { 1 } else { -1 });
        Ok(first_failure([
            expect_eq(&format!("{name}: i1"), &Involution::First.apply(&t, &x)?, &(&(&sign * &scale) * &x)),
            expect_eq(&format!("{name}: i2"), &Involution::Second.apply(&t, &x)?, &(&scale * &x)),
            expect_eq(
                &format!("{name}: i1 on strata"),
                &Involution::First.apply_formal(&t, &f.stratification_class().0)?,
                &Involution::First.apply(&t, &x)?,
            ),
        ]))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        let checks = run(Selection::All);
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        for s in Suite::ALL {
            assert!(checks.iter().any(|c| c.suite == s));
        }
    }

    #[test]
    fn selection_parsing() {
        assert_eq!("all".parse(), Ok(Selection::All));
        assert_eq!("snc".parse(), Ok(Selection::One(Suite::Snc)));
        assert!("nope".parse::<Selection>().is_err());
    }
}
