//! Command-line front end: argument handling, dispatch and JSON output.
//!
//! Every command prints one JSON object on stdout. Exit status is 0 when the
//! command succeeded (or a check passed), 1 when a check found a violation
//! and 2 on any error.

pub mod expr;

use std::collections::BTreeMap;
use std::io::Read;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebras::{self, Algebra, AlgebraId, GradedElem};
use crate::azb::{self, Azb, AzbDual, AzbIndex};
use crate::combination::{Combination, Tensor};
use crate::envelope::{self, FunctionSet, GridDomain, Semicharacter};
use crate::hopf::{self, AxiomReport};
use crate::qcomb;
use crate::scalar::{GaussianRational, QParam};
use crate::seminorm::{self, Element, SeminormSpec, Space};
use crate::skew::{self, QuantumPair};
use crate::transform::{self, BasisMap, MapName};

use expr::{AtomKind, Expr, Gen};

pub use expr::{parse, SyntaxError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

const DEFAULT_WINDOW: u32 = 4;
const DEFAULT_TOL: f64 = 1e-9;
const MAX_LISTED_FAILURES: usize = 20;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown command {0:?}")]
    UnknownCommand(String),
    #[error("{0}")]
    Flag(String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Symbol(#[from] expr::SymbolError),
    #[error("{0}")]
    Domain(String),
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// Status line of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => EXIT_OK,
            Status::Violation => EXIT_VIOLATION,
            Status::Error => EXIT_ERROR,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::Error => "error",
        }
    }
}

/// A finished command: its status and JSON payload.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
}

impl CommandResult {
    fn ok(payload: Value) -> Self {
        Self { status: Status::Ok, payload }
    }

    fn report(report: &AxiomReport, mut extra: serde_json::Map<String, Value>) -> Self {
        let status = if report.passed() { Status::Ok } else { Status::Violation };
        extra.insert("status".into(), status.as_str().into());
        extra.insert("checked".into(), report.checked.into());
        extra.insert("failure_count".into(), report.failures.len().into());
        extra.insert(
            "failures".into(),
            report.failures.iter().take(MAX_LISTED_FAILURES).cloned().collect::<Vec<_>>().into(),
        );
        Self { status, payload: Value::Object(extra) }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.payload).expect("JSON values always serialize")
    }
}

/// Runs one command line (without the program name) and returns the exit
/// code with the text to print.
pub fn run(args: &[String], stdin: &mut dyn Read) -> (i32, String) {
    match dispatch(args, stdin) {
        Ok(r) => (r.status.exit_code(), r.to_json_string()),
        Err(e) => {
            let payload = json!({"status": "error", "error": e.to_string()});
            (EXIT_ERROR, payload.to_string())
        }
    }
}

/// Parsed command line: positional arguments and `--flag value` pairs.
struct Args<'a> {
    positional: Vec<String>,
    flags: BTreeMap<String, String>,
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl<'a> Args<'a> {
    fn parse(tokens: &[String], stdin: &'a mut dyn Read) -> Result<Self, CliError> {
        let mut positional = Vec::new();
        let mut flags = BTreeMap::new();
        let mut it = tokens.iter();
        while let Some(t) = it.next() {
            if let Some(name) = t.strip_prefix("--") {
                let (name, value) = match name.split_once('=') {
                    Some((n, v)) => (n.to_string(), v.to_string()),
                    None => {
                        let v = it.next().ok_or_else(|| CliError::Flag(format!("flag --{name} needs a value")))?;
                        (name.to_string(), v.clone())
                    }
                };
                if flags.insert(name.clone(), value).is_some() {
                    return Err(CliError::Flag(format!("flag --{name} given twice")));
                }
            } else {
                positional.push(t.clone());
            }
        }
        Ok(Self { positional, flags, stdin, stdin_used: false })
    }

    fn allow(&self, names: &[&str]) -> Result<(), CliError> {
        match self.flags.keys().find(|k| !names.contains(&k.as_str())) {
            Some(k) => Err(CliError::Flag(format!("unknown flag --{k}"))),
            None => Ok(()),
        }
    }

    fn positionals(&self, n: usize) -> Result<(), CliError> {
        if self.positional.len() != n {
            return Err(CliError::Flag(format!("expected {n} argument(s), got {}", self.positional.len())));
        }
        Ok(())
    }

    fn flag(&self, name: &str) -> Option<&str> {
        self.flags.get(name).map(String::as_str)
    }

    fn required(&self, name: &str) -> Result<&str, CliError> {
        self.flag(name).ok_or_else(|| CliError::Flag(format!("missing flag --{name}")))
    }

    fn parsed<T: FromStr>(&self, name: &str, default: T) -> Result<T, CliError> {
        match self.flag(name) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| CliError::Flag(format!("bad value for --{name}: {v:?}"))),
        }
    }

    fn q(&self) -> Result<QParam, CliError> {
        match self.flag("q") {
            None => Ok(QParam::one()),
            Some(v) => v.parse().map_err(|e| CliError::Flag(format!("bad value for --q: {e}"))),
        }
    }

    fn window(&self) -> Result<u32, CliError> {
        let default = match std::env::var("QSTEIN_WINDOW") {
            Ok(v) => v.trim().parse().map_err(|_| CliError::Flag(format!("bad QSTEIN_WINDOW {v:?}")))?,
            Err(_) => DEFAULT_WINDOW,
        };
        self.parsed("window", default)
    }

    fn tol(&self) -> Result<f64, CliError> {
        self.parsed("tol", DEFAULT_TOL)
    }

    /// Positional text; `-` reads stdin (once).
    fn text(&mut self, i: usize) -> Result<String, CliError> {
        let raw =
            self.positional.get(i).cloned().ok_or_else(|| CliError::Flag(format!("missing argument {}", i + 1)))?;
        if raw != "-" {
            return Ok(raw);
        }
        if self.stdin_used {
            return Err(CliError::Flag("stdin can be used for one argument only".into()));
        }
        self.stdin_used = true;
        let mut s = String::new();
        self.stdin.read_to_string(&mut s).map_err(|e| CliError::Flag(format!("reading stdin: {e}")))?;
        Ok(s.trim().to_string())
    }

    fn expr(&mut self, i: usize) -> Result<Expr, CliError> {
        Ok(parse(&self.text(i)?)?)
    }
}

/// Where an expression is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Azb,
    AzbDual,
    Graded(AlgebraId),
}

impl FromStr for Target {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.to_ascii_lowercase().as_str() {
            "azb" => Ok(Target::Azb),
            "azb-dual" | "azbdual" => Ok(Target::AzbDual),
            _ => s.parse().map(Target::Graded).map_err(domain),
        }
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::Azb => write!(f, "azb"),
            Target::AzbDual => write!(f, "azb-dual"),
            Target::Graded(id) => write!(f, "{id}"),
        }
    }
}

fn graded_symbol(id: AlgebraId, e: &Expr) -> Option<Combination<i64>> {
    use AlgebraId::*;
    let n = match (id, e) {
        (LaurentCx, Expr::Gen(Gen::Z)) | (PolyC, Expr::Gen(Gen::T)) => 1,
        (LaurentCx, Expr::Gen(Gen::Zinv)) => -1,
        (FunZ | CyclicFun(_), Expr::Atom(AtomKind::One, n))
        | (ChargesZ | CyclicCharges(_), Expr::Atom(AtomKind::D, n))
        | (CurrentsCx, Expr::Atom(AtomKind::Zeta, n))
        | (CurrentsC, Expr::Atom(AtomKind::Tau, n)) => *n,
        _ => return None,
    };
    id.index_set().normalize(n).ok().map(Combination::basis)
}

fn eval_graded(alg: &Algebra, e: &Expr) -> Result<Combination<i64>, CliError> {
    Ok(expr::eval_in(alg, e, &|x| graded_symbol(alg.id, x), &alg.id.to_string())?)
}

fn eval_azb(q: &QParam, e: &Expr) -> Result<Combination<AzbIndex>, CliError> {
    let symbol = |x: &Expr| match x {
        Expr::Gen(Gen::Z) => Some(Combination::basis((1, 0))),
        Expr::Gen(Gen::Zinv) => Some(Combination::basis((-1, 0))),
        Expr::Gen(Gen::T) => Some(Combination::basis((0, 1))),
        _ => None,
    };
    Ok(expr::eval_in(&Azb::new(q), e, &symbol, "azb")?)
}

/// `zeta[n]` is `ζ_n⊛τ⁰` and `tau[k]` is `τ^k = Σ_m ζ_m⊛τ^k` cut at the
/// truncation, so `zeta[n]*tau[k]` is the basis element `ζ_n⊛τ^k`.
fn eval_azb_dual(dual: &AzbDual, truncation: u32, e: &Expr) -> Result<Combination<AzbIndex>, CliError> {
    let t = truncation as i64;
    let symbol = |x: &Expr| match x {
        Expr::Atom(AtomKind::Zeta, n) => Some(Combination::basis((*n, 0))),
        Expr::Atom(AtomKind::Tau, k) => {
            Some((-t..=t).map(|m| ((m, *k as u32), GaussianRational::from_int(1))).collect())
        }
        _ => None,
    };
    Ok(expr::eval_in(dual, e, &symbol, "azb-dual")?)
}

/// Normal form of an `az+b` expression by rewriting its expanded words.
pub fn normalize_azb(q: &QParam, e: &Expr) -> Result<Combination<AzbIndex>, CliError> {
    let mut out = Combination::zero();
    for w in expr::expand_words(e)? {
        out = out + azb::normal_form(q, &w);
    }
    Ok(out)
}

trait IndexJson {
    fn json(&self) -> Value;
}

impl IndexJson for i64 {
    fn json(&self) -> Value {
        json!([self])
    }
}

impl IndexJson for (i64, u32) {
    fn json(&self) -> Value {
        json!([self.0, self.1])
    }
}

fn scalar_json(c: &GaussianRational) -> Value {
    Value::String(c.to_string())
}

fn basis_json<B: Ord + Clone + IndexJson>(c: &Combination<B>) -> Value {
    Value::Array(c.iter().map(|(b, x)| json!([b.json(), scalar_json(x)])).collect())
}

fn tensor_json<B: Ord + Clone + IndexJson>(t: &Tensor<B>) -> Value {
    Value::Array(t.iter().map(|((a, b), x)| json!([[a.json(), b.json()], scalar_json(x)])).collect())
}

/// Decimal text with 12 significant digits, trailing zeros removed.
pub fn format_f64(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let exponent = x.abs().log10().floor() as i32;
    if !(-6..=15).contains(&exponent) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - exponent).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn dispatch(tokens: &[String], stdin: &mut dyn Read) -> Result<CommandResult, CliError> {
    let (command, rest) = tokens.split_first().ok_or_else(|| CliError::UnknownCommand(String::new()))?;
    if command == "azb" {
        let (sub, rest) = rest.split_first().ok_or_else(|| CliError::UnknownCommand("azb".into()))?;
        let mut args = Args::parse(rest, stdin)?;
        args.flags.entry("algebra".into()).or_insert_with(|| "azb".into());
        return match sub.as_str() {
            "normalize" | "coproduct" | "antipode" | "counit" | "pair" | "check-hopf" => run_command(sub, args),
            _ => Err(CliError::UnknownCommand(format!("azb {sub}"))),
        };
    }
    if command == "seminorm" || command == "envelope" {
        let (sub, rest) = rest.split_first().ok_or_else(|| CliError::UnknownCommand(command.clone()))?;
        let args = Args::parse(rest, stdin)?;
        return run_command(&format!("{command} {sub}"), args);
    }
    run_command(command, Args::parse(rest, stdin)?)
}

fn run_command(command: &str, mut a: Args) -> Result<CommandResult, CliError> {
    const ALGEBRA_FLAGS: [&str; 3] = ["algebra", "q", "window"];
    match command {
        "normalize" => {
            a.allow(&ALGEBRA_FLAGS)?;
            a.positionals(1)?;
            let e = a.expr(0)?;
            let target: Target = a.flag("algebra").unwrap_or("azb").parse()?;
            let basis = match target {
                Target::Azb => basis_json(&normalize_azb(&a.q()?, &e)?),
                Target::AzbDual => {
                    let t = 4 * a.window()?.max(1);
                    basis_json(&eval_azb_dual(&AzbDual::new(&a.q()?, t), t, &e)?)
                }
                Target::Graded(id) => basis_json(&eval_graded(&Algebra::new(id, a.window()?), &e)?),
            };
            Ok(CommandResult::ok(json!({ "basis": basis })))
        }
        "coproduct" | "antipode" | "counit" => {
            a.allow(&ALGEBRA_FLAGS)?;
            a.positionals(1)?;
            let e = a.expr(0)?;
            let target: Target = a.flag("algebra").unwrap_or("azb").parse()?;
            let q = a.q()?;
            let w = a.window()?;
            let payload = match target {
                Target::Azb => {
                    let h = Azb::new(&q);
                    let u = eval_azb(&q, &e)?;
                    structure_payload(command, &h, &u)
                }
                Target::AzbDual => {
                    let t = 4 * w.max(1);
                    let h = AzbDual::new(&q, t);
                    let u = eval_azb_dual(&h, t, &e)?;
                    match command {
                        "coproduct" => json!({ "tensor": tensor_json(&azb::azb_dual_coproduct(&q, &u, w)) }),
                        _ => structure_payload(command, &h, &u),
                    }
                }
                Target::Graded(id) => {
                    let alg = Algebra::new(id, w);
                    let u = eval_graded(&alg, &e)?;
                    structure_payload(command, &alg, &u)
                }
            };
            Ok(CommandResult::ok(payload))
        }
        "pair" => {
            a.allow(&ALGEBRA_FLAGS)?;
            a.positionals(2)?;
            let (e, f) = (a.expr(0)?, a.expr(1)?);
            let target: Target = a.flag("algebra").unwrap_or("azb").parse()?;
            let q = a.q()?;
            let w = a.window()?;
            let value = match target {
                Target::Azb | Target::AzbDual => {
                    let t = 4 * w.max(1);
                    let (pe, de) = if target == Target::Azb { (&e, &f) } else { (&f, &e) };
                    let u = eval_azb(&q, pe)?;
                    let alpha = eval_azb_dual(&AzbDual::new(&q, t), t, de)?;
                    azb::azb_pair(&q, &u, &alpha)
                }
                Target::Graded(id) => {
                    let (partner, is_function) = id.dual();
                    let u = eval_graded(&Algebra::new(id, w), &e)?;
                    let v = eval_graded(&Algebra::new(partner, w), &f)?;
                    let u = GradedElem::from_combination(id.index_set(), &u).map_err(domain)?;
                    let v = GradedElem::from_combination(partner.index_set(), &v).map_err(domain)?;
                    if is_function { algebras::pair(id, &u, partner, &v) } else { algebras::pair(partner, &v, id, &u) }
                        .map_err(domain)?
                }
            };
            Ok(CommandResult::ok(json!({ "value": scalar_json(&value) })))
        }
        "qbinom" => {
            a.allow(&["q"])?;
            a.positionals(2)?;
            let n: u32 = a.text(0)?.parse().map_err(|_| CliError::Flag("n must be a nonnegative integer".into()))?;
            let k: i64 = a.text(1)?.parse().map_err(|_| CliError::Flag("k must be an integer".into()))?;
            let value = qcomb::q_binomial(n, k, &a.q()?);
            Ok(CommandResult::ok(json!({ "value": scalar_json(&value) })))
        }
        "fourier" => {
            a.allow(&["map", "window"])?;
            a.positionals(1)?;
            let e = a.expr(0)?;
            match parse_map(a.required("map")?)? {
                MapChoice::Basis(m) => {
                    let u = eval_graded(&Algebra::new(m.source, a.window()?), &e)?;
                    let u = GradedElem::from_combination(m.source.index_set(), &u).map_err(domain)?;
                    let image = m.apply(&u).map_err(domain)?;
                    Ok(CommandResult::ok(
                        json!({ "algebra": m.target.to_string(), "basis": basis_json(image.coeffs()) }),
                    ))
                }
                MapChoice::Cyclic(m) => {
                    let u = eval_graded(&Algebra::new(AlgebraId::CyclicCharges(m), 1), &e)?;
                    let algebra = AlgebraId::CyclicFun(m).to_string();
                    Ok(CommandResult::ok(match transform::cyclic_fourier_exact(m, &u) {
                        Some(image) => json!({ "algebra": algebra, "basis": basis_json(&image) }),
                        None => {
                            let values: Vec<Value> = transform::cyclic_fourier_f64(m, &u)
                                .iter()
                                .enumerate()
                                .map(|(j, c)| json!([[j], [format_f64(c.re), format_f64(c.im)]]))
                                .collect();
                            json!({ "algebra": algebra, "values": values })
                        }
                    }))
                }
            }
        }
        "check-hopf" => {
            a.allow(&ALGEBRA_FLAGS)?;
            a.positionals(0)?;
            let spec = a.required("algebra")?.to_string();
            let q = a.q()?;
            let w = a.window()?;
            let report = if let Some(base) = spec.strip_prefix("skew:") {
                let base: AlgebraId = base.parse().map_err(domain)?;
                skew::check_skew(base, &q, w).map_err(domain)?
            } else {
                match spec.parse::<Target>()? {
                    Target::Azb => azb::check_azb_hopf(&q, w),
                    Target::AzbDual => azb::check_azb_dual_hopf(&q, w),
                    Target::Graded(id) => Algebra::check_axioms(id, w),
                }
            };
            Ok(CommandResult::report(&report, obj(json!({ "algebra": spec, "q": q.to_string(), "window": w }))))
        }
        "check-qpair" => {
            a.allow(&["base", "q", "window"])?;
            let base: AlgebraId = a.flag("base").unwrap_or("LaurentCx").parse().map_err(domain)?;
            let q = a.q()?;
            let w = a.window()?;
            let mut pair = QuantumPair::dilation(base, &q, 4 * w.max(1)).map_err(domain)?;
            if !a.positional.is_empty() {
                a.positionals(1)?;
                let e = a.expr(0)?;
                let z = eval_graded(&Algebra::new(base, w), &e)?;
                pair = pair.with_z(GradedElem::from_combination(base.index_set(), &z).map_err(domain)?);
            }
            let mut report = AxiomReport::default();
            report.record(skew::check_quantum_pair(&pair), || "the quantum-pair identities fail".to_string());
            Ok(CommandResult::report(&report, obj(json!({ "base": base.to_string(), "q": q.to_string() }))))
        }
        "check-envelope" => {
            a.allow(&["map", "window", "seed", "seminorms", "samples", "tol"])?;
            a.positionals(0)?;
            let map = a.required("map")?.to_string();
            let report = match parse_map(&map)? {
                MapChoice::Basis(m) => {
                    let w = a.window()?;
                    let mut r = transform::verify_hopf_homomorphism(&m, w);
                    r.merge(transform::verify_am_envelope(
                        &m,
                        w,
                        a.parsed("seminorms", 4)?,
                        a.parsed("samples", 40)?,
                        a.parsed("seed", 0)?,
                    ));
                    r
                }
                MapChoice::Cyclic(m) => transform::verify_cyclic_fourier(m, a.tol()?),
            };
            Ok(CommandResult::report(&report, obj(json!({ "map": map }))))
        }
        "check-reflexivity" => {
            a.allow(&["q", "window", "seed"])?;
            a.positionals(0)?;
            let q = a.q()?;
            let w = a.window()?;
            let report = transform::verify_azb_reflexivity(&q, w, a.parsed("seed", 0)?);
            Ok(CommandResult::report(&report, obj(json!({ "q": q.to_string(), "window": w }))))
        }
        "seminorm eval" => {
            a.allow(&["family", "params", "q", "window"])?;
            a.positionals(1)?;
            let e = a.expr(0)?;
            let spec = parse_family(a.required("family")?, a.flag("params").unwrap_or(""), a.q()?)?;
            let u = element_in(&spec, &e, a.window()?)?;
            let value = spec.evaluate(&u).map_err(domain)?;
            let text = match value.exact() {
                Some(r) => r.to_string(),
                None => format_f64(value.to_f64()),
            };
            Ok(CommandResult::ok(
                json!({ "family": spec.family_name(), "exact": value.exact().is_some(), "value": text }),
            ))
        }
        "seminorm check-submult" => {
            a.allow(&["family", "params", "q", "samples", "tol", "seed", "degree", "path"])?;
            a.positionals(0)?;
            let spec = parse_family(a.required("family")?, a.flag("params").unwrap_or(""), a.q()?)?;
            let rational = match a.flag("path").unwrap_or("exact") {
                "exact" => true,
                "float" => false,
                other => return Err(CliError::Flag(format!("--path must be exact or float, got {other:?}"))),
            };
            let mut rng = ChaCha8Rng::seed_from_u64(a.parsed("seed", 0)?);
            let pairs = seminorm::random_pairs(
                spec.space(),
                &mut rng,
                a.parsed("samples", 1000)?,
                a.parsed("degree", 3)?,
                rational,
            );
            let report = seminorm::check_spec_submultiplicative(&spec, &pairs, a.tol()?).map_err(domain)?;
            let status = if report.passed() { Status::Ok } else { Status::Violation };
            let violations: Vec<Value> = report
                .violations
                .iter()
                .take(MAX_LISTED_FAILURES)
                .map(|v| json!({ "u": v.u.to_string(), "v": v.v.to_string(), "lhs": format_f64(v.lhs), "rhs": format_f64(v.rhs), "exact": v.exact }))
                .collect();
            Ok(CommandResult {
                status,
                payload: json!({
                    "status": status.as_str(),
                    "family": spec.family_name(),
                    "checked": report.checked,
                    "exact_checks": report.exact_checks,
                    "violation_count": report.violations.len(),
                    "violations": violations,
                }),
            })
        }
        "envelope outer" | "envelope inner" => {
            a.allow(&["grid", "set", "window"])?;
            a.positionals(0)?;
            let grid = parse_grid(&a)?;
            let set = parse_set(a.flag("set").unwrap_or("1"), a.window()?)?;
            let values = if command == "envelope outer" {
                envelope::outer_envelope(&set, &grid)
            } else {
                envelope::inner_envelope_of_polar(&set, &grid)
            }
            .map_err(domain)?;
            Ok(CommandResult::ok(json!({ "points": point_values(&grid, &values) })))
        }
        "envelope duality" => {
            a.allow(&["grid", "set", "f", "tol", "window"])?;
            a.positionals(0)?;
            let grid = parse_grid(&a)?;
            let f: Semicharacter = a.required("f")?.parse().map_err(domain)?;
            let set = parse_set(a.flag("set").unwrap_or("1"), a.window()?)?;
            let report = envelope::envelope_duality_suite(&f, &set, &grid, a.tol()?).map_err(domain)?;
            Ok(CommandResult::report(&report, obj(json!({ "f": f.to_string() }))))
        }
        "envelope closure" => {
            a.allow(&["grid", "f", "g", "tol"])?;
            a.positionals(0)?;
            let grid = parse_grid(&a)?;
            let f: Semicharacter = a.required("f")?.parse().map_err(domain)?;
            let g: Semicharacter = a.required("g")?.parse().map_err(domain)?;
            let report = envelope::semicharacter_closure_suite(&f, &g, &grid, a.tol()?).map_err(domain)?;
            Ok(CommandResult::report(&report, obj(json!({ "f": f.to_string(), "g": g.to_string() }))))
        }
        "envelope majorize" => {
            a.allow(&["grid", "g", "tol"])?;
            a.positionals(0)?;
            let grid = parse_grid(&a)?;
            let g: Semicharacter = a.required("g")?.parse().map_err(domain)?;
            let m = envelope::majorization_gl1(&g, &grid, a.tol()?);
            let extra = obj(json!({ "g": g.to_string(), "C": m.c.to_string(), "N": m.n }));
            Ok(CommandResult::report(&m.report, extra))
        }
        other => Err(CliError::UnknownCommand(other.to_string())),
    }
}

fn obj(v: Value) -> serde_json::Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => serde_json::Map::new(),
    }
}

fn structure_payload<H, B>(command: &str, h: &H, u: &Combination<B>) -> Value
where
    H: hopf::HopfAlgebra<Index = B>,
    B: Ord + Clone + std::fmt::Debug + IndexJson,
{
    match command {
        "coproduct" => json!({ "tensor": tensor_json(&hopf::coproduct(h, u)) }),
        "antipode" => json!({ "basis": basis_json(&hopf::antipode(h, u)) }),
        _ => json!({ "value": scalar_json(&hopf::counit(h, u)) }),
    }
}

enum MapChoice {
    Basis(BasisMap),
    Cyclic(u32),
}

fn parse_map(s: &str) -> Result<MapChoice, CliError> {
    if let Some(m) = s.to_ascii_lowercase().strip_prefix("cyclic:") {
        let m: u32 = m.parse().map_err(|_| CliError::Flag(format!("bad cyclic order in {s:?}")))?;
        if m == 0 {
            return Err(CliError::Flag("cyclic order must be positive".into()));
        }
        return Ok(MapChoice::Cyclic(m));
    }
    let name: MapName = s.parse().map_err(CliError::Flag)?;
    Ok(MapChoice::Basis(BasisMap::new(name)))
}

fn rational(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Flag(format!("bad rational parameter {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Family name plus comma-separated parameters: `C` for the `NormC`
/// families, `N` for `NormN` and `RN`, `D,K` for `PDK` (with `--q`), and
/// `r_0,r_1,...` for `Weighted_r`.
fn parse_family(name: &str, params: &str, q: QParam) -> Result<SeminormSpec, CliError> {
    let ps: Vec<&str> = params.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
    let one = |what: &str| -> Result<&str, CliError> {
        match ps.as_slice() {
            [p] => Ok(*p),
            _ => Err(CliError::Flag(format!("family {name} takes one parameter ({what})"))),
        }
    };
    let nat = |s: &str| s.parse::<u32>().map_err(|_| CliError::Flag(format!("bad integer parameter {s:?}")));
    let spec = match name.to_ascii_lowercase().as_str() {
        "normc_oc" => SeminormSpec::NormCOC(rational(one("C")?)?),
        "normc_ocx" => SeminormSpec::NormCOCx(rational(one("C")?)?),
        "normn_oz" => SeminormSpec::NormNOZ(nat(one("N")?)?),
        "normn_rstarcx" => SeminormSpec::NormNRstarCx(nat(one("N")?)?),
        "weighted_r" => SeminormSpec::WeightedR(
            ps.iter().enumerate().map(|(k, r)| Ok((k as i64, rational(r)?))).collect::<Result<_, CliError>>()?,
        ),
        "normc_charges" => SeminormSpec::NormCCharges(rational(one("C")?)?),
        "pdk" => match ps.as_slice() {
            [d, k] => SeminormSpec::Pdk { d: rational(d)?, k: nat(k)?, q },
            _ => return Err(CliError::Flag("family PDK takes two parameters (D,K)".into())),
        },
        "rn" => SeminormSpec::Rn(nat(one("N")?)?),
        "normc_azb" => SeminormSpec::NormCAzb(rational(one("C")?)?),
        _ => return Err(CliError::Flag(format!("unknown seminorm family {name:?}"))),
    };
    spec.validate().map_err(domain)?;
    Ok(spec)
}

fn element_in(spec: &SeminormSpec, e: &Expr, window: u32) -> Result<Element, CliError> {
    let q = spec.q();
    Ok(match spec.space() {
        Space::Graded(id) => Element::Graded(id, eval_graded(&Algebra::new(id, window), e)?),
        Space::Azb => Element::Azb(eval_azb(&q, e)?),
        Space::AzbDual => {
            let t = 4 * window.max(1);
            Element::AzbDual(eval_azb_dual(&AzbDual::new(&q, t), t, e)?)
        }
    })
}

fn parse_grid(a: &Args) -> Result<GridDomain, CliError> {
    a.flag("grid").unwrap_or("pow2:4").parse().map_err(domain)
}

/// Laurent polynomials separated by `;`.
fn parse_set(s: &str, window: u32) -> Result<FunctionSet, CliError> {
    let alg = Algebra::new(AlgebraId::LaurentCx, window);
    let members = s
        .split(';')
        .filter(|m| !m.trim().is_empty())
        .map(|m| eval_graded(&alg, &parse(m)?))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FunctionSet::new(members))
}

fn point_values(grid: &GridDomain, values: &[f64]) -> Value {
    Value::Array(grid.points.iter().zip(values).map(|(x, v)| json!([x.to_string(), format_f64(*v)])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(line: &[&str]) -> (i32, Value) {
        let args: Vec<String> = line.iter().map(|s| s.to_string()).collect();
        let (code, out) = run(&args, &mut std::io::empty());
        (code, serde_json::from_str(&out).expect("valid JSON"))
    }

    #[test]
    fn normalize_example() {
        let (code, v) = call(&["normalize", "t*z", "--q", "1/2"]);
        assert_eq!(code, 0);
        assert_eq!(v, json!({"basis": [[[1, 1], "1/2"]]}));
    }

    #[test]
    fn qbinom_example() {
        let (code, v) = call(&["qbinom", "4", "2", "--q", "1/2"]);
        assert_eq!(code, 0);
        assert_eq!(v["value"], "35/16");
    }

    #[test]
    fn errors_exit_two() {
        assert_eq!(call(&["normalize", "z^-1"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["qbinom", "4", "2", "--bogus", "1"]).0, 2);
        assert_eq!(call(&["normalize", "d[1]", "--algebra", "LaurentCx"]).0, 2);
    }

    #[test]
    fn graded_commands() {
        let (_, v) = call(&["coproduct", "t^2", "--algebra", "PolyC"]);
        assert_eq!(v["tensor"].as_array().unwrap().len(), 3);
        let (_, v) = call(&["antipode", "z+2*zinv", "--algebra", "LaurentCx"]);
        assert_eq!(v, json!({"basis": [[[-1], "1"], [[1], "2"]]}));
        let (_, v) = call(&["pair", "t^3", "tau[3]", "--algebra", "PolyC"]);
        assert_eq!(v["value"], "6");
        let (_, v) = call(&["counit", "d[5]", "--algebra", "ChargesZ"]);
        assert_eq!(v["value"], "1");
    }

    #[test]
    fn violation_exit_code() {
        let (code, v) = call(&["check-qpair", "--base", "LaurentCx", "--q", "1/2", "2*z"]);
        assert_eq!(code, 1, "{v}");
        assert_eq!(v["status"], "violation");
        let (code, _) = call(&["check-qpair", "--base", "LaurentCx", "--q", "1/2"]);
        assert_eq!(code, 0);
        let (code, _) =
            call(&["seminorm", "check-submult", "--family", "PDK", "--params", "1,1", "--q", "1/2", "--samples", "10"]);
        assert_eq!(code, 2);
        let (code, _) = call(&["envelope", "majorize", "--g", "rCN(1,3)"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn float_formatting() {
        assert_eq!(format_f64(0.1 + 0.2), "0.3");
        assert_eq!(format_f64(2.0), "2");
        assert_eq!(format_f64(-1234.5678), "-1234.5678");
        assert_eq!(format_f64(1.0 / 3.0), "0.333333333333");
    }
}
