//! Command-line front end.
//!
//! Exit statuses: 0 on success, 1 when a verification check fails, 2 on
//! malformed input or a rejected operation.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expr::{parse_class, parse_e_poly, parse_motive};
use crate::fan::{Completeness, Fan, FanSpec, Validation};
use crate::log_ring::{b_of, chi_log, rho, t_of, tau, tbar_of, LogClass};
use crate::motive::{MotiveClass, SymbolTable};
use crate::oracle::{self, ConstantFreeSpec, SplitBundle};
use crate::poly::{EPolynomial, UPoly};
use crate::snc::{self, SncSpec};
use crate::verify::{self, Selection};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "logmotive", version, about = "Classes in the log Grothendieck ring of varieties")]
pub struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form and invariants of a class expression, fan or s.n.c. pair.
    Class {
        /// Class expression, e.g. "P*(P+(L-1))".
        expr: Option<String>,
        /// Fan, s.n.c. or expression JSON file; a non-JSON file is read as an expression.
        #[arg(long, conflicts_with = "expr")]
        input: Option<PathBuf>,
    },
    /// Run verification suites.
    Verify {
        /// presentation, toric, snc, hodge, duality or all.
        #[arg(long, default_value = "all")]
        suite: Selection,
    },
    /// Stellar subdivision of a fan at a ray.
    Subdivide {
        /// Fan JSON file.
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated integer coordinates.
        #[arg(long, allow_hyphen_values = true)]
        ray: String,
        /// Where to write the refined fan; printed otherwise.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Log Hodge polynomials from cohomology, compared with the ring side.
    Hodge {
        #[arg(long, value_enum, default_value = "all")]
        preset: HodgePreset,
        /// Split bundle on P^1 as comma-separated degrees, replacing the presets.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "input")]
        degrees: Option<String>,
        /// JSON with `degrees`, `toric`, or `base_e_poly` with `rank` and `dimension`.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Strata, class and identities of an s.n.c. pair.
    Snc {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum HodgePreset {
    All,
    P1Chain,
    Rectangle,
    Certificate,
    Toric,
    ConstantFree,
}

/// Captured result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Class { expr, input } => cmd_class(expr.as_deref(), input.as_deref(), cli.json),
        Command::Verify { suite } => Ok(cmd_verify(*suite, cli.json)),
        Command::Subdivide { input, ray, output } => cmd_subdivide(input, ray, output.as_deref(), cli.json),
        Command::Hodge { preset, degrees, input } => cmd_hodge(*preset, degrees.as_deref(), input.as_deref(), cli.json),
        Command::Snc { input } => cmd_snc(input, cli.json),
    };
    match result {
        Ok(out) => out,
        Err(e) => Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn ok(stdout: String) -> Outcome {
    Outcome { code: EXIT_OK, stdout, stderr: String::new() }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn json_error(e: serde_json::Error) -> Error {
    let text = e.to_string();
    let message = match text.rfind(" at line ") {
        Some(i) => text[..i].to_string(),
        None => text,
    };
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message,
    }
}

/// Integer as a JSON number when it fits, otherwise as a string.
fn int_json(n: &BigInt) -> Value {
    n.to_i64().map_or_else(|| Value::String(n.to_string()), Value::from)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolDecl {
    name: String,
    e_poly: String,
    dimension: u32,
    #[serde(default)]
    smooth_projective: bool,
}

fn build_table(decls: &[SymbolDecl]) -> Result<SymbolTable> {
    let mut table = SymbolTable::new();
    for d in decls {
        let e = parse_e_poly(&d.e_poly).map_err(|e| context(e, &format!("e_poly of `{}`", d.name)))?;
        table.register(&d.name, e, d.dimension, d.smooth_projective)?;
    }
    Ok(table)
}

fn context(e: Error, what: &str) -> Error {
    match e {
        Error::Parse { line, column, message } => Error::Parse {
            line,
            column,
            message: format!("in {what}: {message}"),
        },
        other => other,
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExprDoc {
    #[serde(default)]
    symbols: Vec<SymbolDecl>,
    expr: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SncDoc {
    dim: usize,
    components: Vec<String>,
    #[serde(default)]
    symbols: Vec<SymbolDecl>,
    strata: Option<BTreeMap<String, String>>,
    closed_strata: Option<BTreeMap<String, String>>,
}

fn stratum_names(key: &str) -> Vec<&str> {
    key.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn load_snc(text: &str) -> Result<(SymbolTable, SncSpec)> {
    let doc: SncDoc = serde_json::from_str(text).map_err(json_error)?;
    let table = build_table(&doc.symbols)?;
    let (map, closed) = match (&doc.strata, &doc.closed_strata) {
        (Some(m), None) => (m, false),
        (None, Some(m)) => (m, true),
        _ => {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: "give exactly one of `strata` and `closed_strata`".into(),
            })
        }
    };
    let mut strata = Vec::new();
    for (key, src) in map {
        let class = parse_motive(&table, src).map_err(|e| context(e, &format!("stratum `{key}`")))?;
        strata.push((stratum_names(key), class));
    }
    let spec = if closed {
        SncSpec::from_closed(doc.dim, &doc.components, strata)?
    } else {
        SncSpec::from_open(doc.dim, &doc.components, strata)?
    };
    Ok((table, spec))
}

fn load_fan(text: &str) -> Result<Fan> {
    let spec: FanSpec = serde_json::from_str(text).map_err(json_error)?;
    Fan::from_spec(&spec)
}

enum Input {
    Expr(SymbolTable, LogClass),
    Fan(Fan),
    Snc(SymbolTable, SncSpec),
}

fn load_input(text: &str) -> Result<Input> {
    if !text.trim_start().starts_with('{') {
        let table = SymbolTable::new();
        let x = parse_class(&table, text)?;
        return Ok(Input::Expr(table, x));
    }
    let value: Value = serde_json::from_str(text).map_err(json_error)?;
    let has = |k: &str| value.get(k).is_some();
    if has("rays") || has("cones") {
        Ok(Input::Fan(load_fan(text)?))
    } else if has("components") {
        let (t, s) = load_snc(text)?;
        Ok(Input::Snc(t, s))
    } else if has("expr") {
        let doc: ExprDoc = serde_json::from_str(text).map_err(json_error)?;
        let table = build_table(&doc.symbols)?;
        let x = parse_class(&table, &doc.expr).map_err(|e| context(e, "`expr`"))?;
        Ok(Input::Expr(table, x))
    } else {
        Err(Error::Parse {
            line: 1,
            column: 1,
            message: "expected a fan (`rays`, `cones`), an s.n.c. pair (`components`) or an expression (`expr`)".into(),
        })
    }
}

/// Invariants of a class. Maps that need `e` are undefined on classes with
/// negative powers of `L`.
struct Invariants {
    tau: MotiveClass,
    rho: MotiveClass,
    hodge: std::result::Result<HodgeSide, Error>,
}

struct HodgeSide {
    chi_log: BigInt,
    e_tau: EPolynomial,
    t: EPolynomial,
    tbar: (UPoly, UPoly),
    b: UPoly,
}

fn invariants(table: &SymbolTable, x: &LogClass) -> Invariants {
    let hodge = (|| {
        let tb = tbar_of(table, x)?;
        Ok(HodgeSide {
            chi_log: chi_log(table, x)?,
            e_tau: table.e_of(&tau(x))?,
            t: t_of(table, x)?,
            tbar: (tb.first, tb.second),
            b: b_of(table, x)?,
        })
    })();
    Invariants {
        tau: tau(x),
        rho: rho(x),
        hodge,
    }
}

fn class_json(table: &SymbolTable, x: &LogClass) -> Value {
    let inv = invariants(table, x);
    let mut invariants = json!({
        "tau": inv.tau.to_string(),
        "rho": inv.rho.to_string(),
    });
    let obj = invariants.as_object_mut().expect("object");
    match &inv.hodge {
        Ok(h) => {
            obj.insert("chi_log".into(), int_json(&h.chi_log));
            obj.insert("e_tau".into(), h.e_tau.to_string().into());
            obj.insert("t".into(), h.t.to_string().into());
            obj.insert(
                "tbar".into(),
                json!({"first": h.tbar.0.display("u").to_string(), "second": h.tbar.1.display("v").to_string()}),
            );
            obj.insert("b".into(), h.b.display("v").to_string().into());
        }
        Err(e) => {
            for k in ["chi_log", "e_tau", "t", "tbar", "b"] {
                obj.insert(k.into(), Value::Null);
            }
            obj.insert("undefined_reason".into(), e.to_string().into());
        }
    }
    json!({
        "class": {
            "normal_form": x.to_string(),
            "scalar": x.scalar_part.to_string(),
            "p_part": x.p_part.to_string(),
        },
        "invariants": invariants,
    })
}

fn class_text(table: &SymbolTable, x: &LogClass, out: &mut String) {
    let inv = invariants(table, x);
    let _ = writeln!(out, "class: {x}");
    let _ = writeln!(out, "tau: {}", inv.tau);
    let _ = writeln!(out, "rho: {}", inv.rho);
    match &inv.hodge {
        Ok(h) => {
            let _ = writeln!(out, "chi_log: {}", h.chi_log);
            let _ = writeln!(out, "e(tau): {}", h.e_tau);
            let _ = writeln!(out, "t: {}", h.t);
            let _ = writeln!(out, "tbar_1: {}", h.tbar.0.display("u"));
            let _ = writeln!(out, "tbar_2: {}", h.tbar.1.display("v"));
            let _ = writeln!(out, "b: {}", h.b.display("v"));
        }
        Err(e) => {
            let _ = writeln!(out, "chi_log, e(tau), t, tbar, b: undefined ({e})");
        }
    }
}

fn fan_json(f: &Fan) -> Result<Value> {
    let (formal, reduced) = f.stratification_class();
    Ok(json!({
        "dim": f.dim(),
        "f_vector": f.f_vector(),
        "maximal_cones": f.maximal_cones().iter().map(|c| c.rays().to_vec()).collect::<Vec<_>>(),
        "simplicial": f.is_simplicial(),
        "validation": match f.validation() { Validation::Full => "full", Validation::Partial => "partial" },
        "smooth": f.is_smooth(),
        "completeness": completeness_name(f.completeness()?),
        "chi_c": f.chi_c(),
        "stratification": formal.to_string(),
        "stratification_matches_toric_class": reduced == f.toric_class(),
    }))
}

fn completeness_name(c: Completeness) -> &'static str {
    match c {
        Completeness::Complete => "complete",
        Completeness::Incomplete => "incomplete",
        Completeness::Unknown => "unknown",
    }
}

fn fan_text(f: &Fan, out: &mut String) -> Result<()> {
    let (formal, reduced) = f.stratification_class();
    let _ = writeln!(
        out,
        "fan: dim {}, f-vector {:?}, {}{}, {}",
        f.dim(),
        f.f_vector(),
        if f.is_smooth() { "smooth" } else { "singular" },
        if f.validation() == Validation::Partial { " (partially validated)" } else { "" },
        completeness_name(f.completeness()?),
    );
    let _ = writeln!(out, "chi_c: {}", f.chi_c());
    let _ = writeln!(out, "stratification: {formal}");
    let _ = writeln!(
        out,
        "stratification reduces to toric class: {}",
        if reduced == f.toric_class() { "yes" } else { "NO" }
    );
    Ok(())
}

pub fn cmd_class(expr: Option<&str>, input: Option<&Path>, as_json: bool) -> Result<Outcome> {
    let loaded = match (expr, input) {
        (Some(e), None) => {
            let table = SymbolTable::new();
            let x = parse_class(&table, e)?;
            Input::Expr(table, x)
        }
        (None, Some(p)) => load_input(&read(p)?)?,
        _ => {
            return Err(Error::Parse {
                line: 0,
                column: 0,
                message: "give an expression or --input".into(),
            })
        }
    };
    let table_default = SymbolTable::new();
    let (table, x, extra) = match &loaded {
        Input::Expr(t, x) => (t, x.clone(), None),
        Input::Fan(f) => (&table_default, f.toric_class(), Some(("fan", f))),
        Input::Snc(t, s) => (t, snc::snc_class(s), None),
    };
    if as_json {
        let mut v = class_json(table, &x);
        if let Some((key, f)) = extra {
            v[key] = fan_json(f)?;
        }
        if let Input::Snc(_, s) = &loaded {
            v["snc"] = json!({"formal": s.formal_class().to_string()});
        }
        return Ok(ok(pretty(&v)));
    }
    let mut out = String::new();
    if let Some((_, f)) = extra {
        fan_text(f, &mut out)?;
    }
    if let Input::Snc(_, s) = &loaded {
        let _ = writeln!(out, "strata: {}", s.formal_class());
    }
    class_text(table, &x, &mut out);
    Ok(ok(out))
}

pub fn cmd_verify(selection: Selection, as_json: bool) -> Outcome {
    let checks = verify::run(selection);
    let passed = checks.iter().all(|c| c.passed);
    let stdout = if as_json {
        pretty(&json!({"passed": passed, "checks": checks}))
    } else {
        let mut out = String::new();
        for c in &checks {
            let _ = write!(
                out,
                "{} {:<12} {} ({} case{})",
                if c.passed { "PASS" } else { "FAIL" },
                c.suite.name(),
                c.name,
                c.cases,
                if c.cases == 1 { "" } else { "s" }
            );
            if let Some(f) = &c.failure {
                let _ = write!(out, ": {f}");
            }
            out.push('\n');
        }
        let failed = checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(out, "{} checks, {} failed", checks.len(), failed);
        out
    };
    Outcome {
        code: if passed { EXIT_OK } else { EXIT_FAILED },
        stdout,
        stderr: String::new(),
    }
}

/// Parses comma-separated integers.
pub fn parse_csv_ints(s: &str) -> Result<Vec<i64>> {
    let mut column = 1;
    let mut out = Vec::new();
    for part in s.split(',') {
        let trimmed = part.trim();
        out.push(trimmed.parse::<i64>().map_err(|_| Error::Parse {
            line: 1,
            column,
            message: format!("`{trimmed}` is not an integer"),
        })?);
        column += part.chars().count() + 1;
    }
    Ok(out)
}

pub fn cmd_subdivide(input: &Path, ray: &str, output: Option<&Path>, as_json: bool) -> Result<Outcome> {
    let fan = load_fan(&read(input)?)?;
    let w = parse_csv_ints(ray)?;
    let refined = fan.stellar_subdivide(&w)?;
    let before = fan.toric_class();
    let after = refined.toric_class();
    let strat_after = refined.stratification_class().1;
    let equal = before == after && after == strat_after;
    let fan_doc = serde_json::to_value(refined.to_spec()).expect("fan serializes");
    if let Some(path) = output {
        fs::write(path, format!("{fan_doc}\n")).map_err(|e| Error::Parse {
            line: 0,
            column: 0,
            message: format!("cannot write {}: {e}", path.display()),
        })?;
    }
    let stdout = if as_json {
        let mut v = json!({
            "before": before.to_string(),
            "after": after.to_string(),
            "stratification_after": strat_after.to_string(),
            "equal": equal,
            "maximal_cones": refined.maximal_cones().len(),
        });
        if output.is_none() {
            v["fan"] = fan_doc;
        }
        pretty(&v)
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "ray: {w:?}");
        let _ = writeln!(out, "maximal cones: {} -> {}", fan.maximal_cones().len(), refined.maximal_cones().len());
        let _ = writeln!(out, "class before: {before}");
        let _ = writeln!(out, "class after: {after}");
        let _ = writeln!(out, "classes equal: {}", if equal { "yes" } else { "NO" });
        match output {
            Some(p) => {
                let _ = writeln!(out, "wrote {}", p.display());
            }
            None => {
                let _ = writeln!(out, "{fan_doc}");
            }
        }
        out
    };
    Ok(Outcome {
        code: if equal { EXIT_OK } else { EXIT_FAILED },
        stdout,
        stderr: String::new(),
    })
}

/// One oracle computation and, where one exists, its ring-side value.
struct HodgeEntry {
    name: String,
    e_poly: EPolynomial,
    table: Option<oracle::LogHodgeTable>,
    ring: Option<(UPoly, UPoly)>,
}

impl HodgeEntry {
    fn ebar(&self) -> (UPoly, UPoly) {
        let p = oracle::ebar_of(&self.e_poly);
        (p.first, p.second)
    }

    fn agrees(&self) -> Option<bool> {
        self.ring.as_ref().map(|r| *r == self.ebar())
    }
}

fn lp(coeffs: &[i64]) -> MotiveClass {
    MotiveClass::from_l_poly(&UPoly::from_coeffs(coeffs.iter().copied()))
}

fn ring_tbar(x: &LogClass) -> Result<(UPoly, UPoly)> {
    let p = tbar_of(&SymbolTable::new(), x)?;
    Ok((p.first, p.second))
}

fn bundle_name(b: &SplitBundle) -> String {
    let parts: Vec<String> = b.degrees().iter().map(|d| format!("O({d})")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn p1_entry(name: &str, bundle: SplitBundle, ring: Option<LogClass>) -> Result<HodgeEntry> {
    let (table, e_poly) = oracle::elog_p1(&bundle);
    Ok(HodgeEntry {
        name: format!("{name}: Omega^log = {}", bundle_name(&bundle)),
        e_poly,
        table: Some(table),
        ring: ring.as_ref().map(ring_tbar).transpose()?,
    })
}

fn hodge_presets(preset: HodgePreset) -> Result<Vec<HodgeEntry>> {
    use HodgePreset as H;
    let want = |p: H| preset == H::All || preset == p;
    let mut out = Vec::new();
    if want(H::P1Chain) {
        for (k, name) in [(0, "P^1"), (1, "(P^1, {0})"), (2, "(P^1, {0, inf})")] {
            let class = snc::snc_class(&snc::presets::p1_with_points(k));
            out.push(p1_entry(name, oracle::p1_log_differentials(k, 0), Some(class))?);
        }
    }
    if want(H::Rectangle) {
        let class = &LogClass::from(lp(&[1, 1])) * &LogClass::p();
        out.push(p1_entry("(P^1, N)", SplitBundle::new([-2, 0]), Some(class))?);
    }
    if want(H::Toric) {
        for n in 1..=3u32 {
            let fan = crate::fan::presets::projective_space(n as usize);
            out.push(HodgeEntry {
                name: format!("smooth proper toric, P^{n}"),
                e_poly: oracle::elog_smooth_proper_toric(n),
                table: None,
                ring: Some(ring_tbar(&fan.toric_class())?),
            });
        }
    }
    if want(H::ConstantFree) {
        for (name, base, dim) in verify::constant_free_bases() {
            for rank in 0..=3u32 {
                let spec = ConstantFreeSpec {
                    base_e_poly: SymbolTable::new().e_of(&base)?,
                    rank,
                    dimension: dim,
                };
                let class = &LogClass::from(base.clone()) * &LogClass::p().pow(rank);
                out.push(HodgeEntry {
                    name: format!("({name}, N^{rank})"),
                    e_poly: oracle::elog_constant_free(&spec),
                    table: None,
                    ring: Some(ring_tbar(&class)?),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HodgeDoc {
    degrees: Option<Vec<i64>>,
    toric: Option<u32>,
    base_e_poly: Option<String>,
    rank: Option<u32>,
    dimension: Option<u32>,
}

fn hodge_from_doc(text: &str) -> Result<HodgeEntry> {
    let doc: HodgeDoc = serde_json::from_str(text).map_err(json_error)?;
    let bad = |m: &str| Error::Parse { line: 1, column: 1, message: m.into() };
    match doc {
        HodgeDoc { degrees: Some(d), toric: None, base_e_poly: None, rank: None, dimension: None } => {
            p1_entry("P^1", SplitBundle::new(d), None)
        }
        HodgeDoc { degrees: None, toric: Some(n), base_e_poly: None, rank: None, dimension: None } => {
            Ok(HodgeEntry {
                name: format!("smooth proper toric, dimension {n}"),
                e_poly: oracle::elog_smooth_proper_toric(n),
                table: None,
                ring: Some(ring_tbar(&crate::fan::presets::projective_space(n as usize).toric_class())?),
            })
        }
        HodgeDoc { degrees: None, toric: None, base_e_poly: Some(e), rank: Some(rank), dimension: Some(dimension) } => {
            let base = parse_e_poly(&e).map_err(|e| context(e, "`base_e_poly`"))?;
            Ok(HodgeEntry {
                name: format!("constant free rank {rank} over a {dimension}-fold"),
                e_poly: oracle::elog_constant_free(&ConstantFreeSpec { base_e_poly: base, rank, dimension }),
                table: None,
                ring: None,
            })
        }
        _ => Err(bad("expected `degrees`, `toric`, or `base_e_poly` with `rank` and `dimension`")),
    }
}

pub fn cmd_hodge(preset: HodgePreset, degrees: Option<&str>, input: Option<&Path>, as_json: bool) -> Result<Outcome> {
    let entries = match (degrees, input) {
        (Some(d), _) => vec![p1_entry("P^1", SplitBundle::new(parse_csv_ints(d)?), None)?],
        (None, Some(p)) => vec![hodge_from_doc(&read(p)?)?],
        (None, None) => hodge_presets(preset)?,
    };
    let show_certificate = degrees.is_none()
        && input.is_none()
        && matches!(preset, HodgePreset::All | HodgePreset::Certificate);
    let certificate = show_certificate.then(oracle::counterexample_certificate);
    let passed = entries.iter().all(|e| e.agrees() != Some(false))
        && certificate.as_ref().is_none_or(|c| c.holds());

    let stdout = if as_json {
        let list: Vec<Value> = entries
            .iter()
            .map(|e| {
                let (first, second) = e.ebar();
                let mut v = json!({
                    "name": e.name,
                    "e_log": e.e_poly.to_string(),
                    "ebar": {"first": first.display("u").to_string(), "second": second.display("v").to_string()},
                });
                if let Some(t) = &e.table {
                    let max_p = t.max_p();
                    v["table"] = json!([t.row(0, max_p), t.row(1, max_p)]);
                }
                if let Some((a, b)) = &e.ring {
                    v["ring_tbar"] = json!({"first": a.display("u").to_string(), "second": b.display("v").to_string()});
                    v["agrees"] = json!(e.agrees());
                }
                v
            })
            .collect();
        let mut v = json!({"passed": passed, "entries": list});
        if let Some(c) = &certificate {
            v["certificate"] = json!({
                "difference": c.difference.to_string(),
                "odd_witness": [c.odd_witness.0, c.odd_witness.1],
                "toric_reduction": c.toric_reduction.display("u").to_string(),
                "trivial_reduction": c.trivial_reduction.display("u").to_string(),
                "holds": c.holds(),
            });
        }
        pretty(&v)
    } else {
        let mut out = String::new();
        for e in &entries {
            let (first, second) = e.ebar();
            let _ = writeln!(out, "{}", e.name);
            if let Some(t) = &e.table {
                for line in t.to_string().lines() {
                    let _ = writeln!(out, "  {line}");
                }
            }
            let _ = writeln!(out, "  E^log: {}", e.e_poly);
            let _ = writeln!(out, "  Ebar: ({}, {})", first.display("u"), second.display("v"));
            if let Some((a, b)) = &e.ring {
                let _ = writeln!(
                    out,
                    "  ring tbar: ({}, {}) {}",
                    a.display("u"),
                    b.display("v"),
                    if e.agrees() == Some(true) { "agrees" } else { "DISAGREES" }
                );
            }
        }
        if let Some(c) = &certificate {
            let _ = writeln!(out, "certificate: E(P^1) - E(P^1 trivial) - 2E(pt) = {}", c.difference);
            let _ = writeln!(
                out,
                "  odd coefficient at u^{} v^{}; v = -1 reductions {} and {}: {}",
                c.odd_witness.0,
                c.odd_witness.1,
                c.toric_reduction.display("u"),
                c.trivial_reduction.display("u"),
                if c.holds() { "holds" } else { "FAILS" }
            );
        }
        out
    };
    Ok(Outcome {
        code: if passed { EXIT_OK } else { EXIT_FAILED },
        stdout,
        stderr: String::new(),
    })
}

pub fn cmd_snc(input: &Path, as_json: bool) -> Result<Outcome> {
    let (table, spec) = load_snc(&read(input)?)?;
    let class = snc::snc_class(&spec);
    let rho_ok = snc::rho_expansion_agrees(&spec);
    let bridge = snc::chi_y_bridge(&table, &spec).ok();

    // Per component: t̄₁(X) = t̄₁(X') + u·t̄₁(F̂) and [F] = [F̂]·P.
    let mut components = Vec::new();
    for c in spec.components() {
        let (x_prime, f_hat) = spec.drop_component(c)?;
        let recursion = match (
            tbar_of(&table, &class),
            tbar_of(&table, &snc::snc_class(&x_prime)),
            tbar_of(&table, &snc::snc_class(&f_hat)),
        ) {
            (Ok(a), Ok(b), Ok(f)) => Some(a.first == &b.first + &(&UPoly::x() * &f.first)),
            _ => None,
        };
        let f_class = spec.component_class(c)?;
        let product = f_class == &snc::snc_class(&f_hat) * &LogClass::p();
        components.push((c.clone(), f_class, recursion, product));
    }
    let passed = rho_ok && components.iter().all(|(_, _, r, p)| *r != Some(false) && *p);

    let names = |s: &[usize]| spec.names(s).join(",");
    let stdout = if as_json {
        let mut v = class_json(&table, &class);
        let open: BTreeMap<String, String> = spec.open_strata().map(|(s, c)| (names(s), c.to_string())).collect();
        let closed: BTreeMap<String, String> =
            spec.closed_strata().iter().map(|(s, c)| (names(s), c.to_string())).collect();
        v["snc"] = json!({
            "dim": spec.dim(),
            "components": spec.components(),
            "open_strata": open,
            "closed_strata": closed,
            "formal": spec.formal_class().to_string(),
            "rho_expansion": snc::rho_expansion(&spec).to_string(),
            "rho_expansion_agrees": rho_ok,
            "chi_y_bridge": bridge.as_ref().map(|b| json!({
                "lhs": b.lhs.display("u").to_string(),
                "rhs": b.rhs.display("u").to_string(),
                "equal": b.equal,
            })),
            "components_detail": components.iter().map(|(c, f, r, p)| json!({
                "name": c,
                "class": f.to_string(),
                "residue_recursion": r,
                "class_is_restriction_times_p": p,
            })).collect::<Vec<_>>(),
        });
        v["passed"] = json!(passed);
        pretty(&v)
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "dim: {}", spec.dim());
        let _ = writeln!(out, "components: {}", spec.components().join(", "));
        for (s, c) in spec.open_strata() {
            let _ = writeln!(out, "open stratum {{{}}}: {c}", names(s));
        }
        let _ = writeln!(out, "strata: {}", spec.formal_class());
        class_text(&table, &class, &mut out);
        let _ = writeln!(
            out,
            "rho expansion: {} ({})",
            snc::rho_expansion(&spec),
            if rho_ok { "agrees" } else { "DISAGREES" }
        );
        match &bridge {
            Some(b) => {
                let _ = writeln!(
                    out,
                    "chi_y bridge: {} vs {} ({})",
                    b.lhs.display("u"),
                    b.rhs.display("u"),
                    if b.equal { "equal" } else { "different" }
                );
            }
            None => {
                let _ = writeln!(out, "chi_y bridge: undefined");
            }
        }
        for (c, f, r, p) in &components {
            let _ = writeln!(
                out,
                "component {c}: [F] = {f}; residue recursion {}; [F] = [F^]*P {}",
                match r {
                    Some(true) => "holds",
                    Some(false) => "FAILS",
                    None => "undefined",
                },
                if *p { "holds" } else { "FAILS" }
            );
        }
        out
    };
    Ok(Outcome {
        code: if passed { EXIT_OK } else { EXIT_FAILED },
        stdout,
        stderr: String::new(),
    })
}
