//! Submultiplicative seminorms on the concrete algebras, on `az+b` and on its
//! dual. Every canonical family is a weighted ℓ¹ norm `Σ |u_i|·w(i)` in the
//! standard basis; composites (scaled copies, sums and maxima) are built on
//! top of them.
//!
//! Evaluation has two paths. The exact path runs in ℚ and applies when every
//! coefficient and every weight has a rational modulus. The float path uses
//! `f64` and is always available.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::algebras::{Algebra, AlgebraId};
use crate::azb::{Azb, AzbDual, AzbDualElem, AzbElem};
use crate::combination::Combination;
use crate::hopf;
use crate::scalar::{rational_to_f64, GaussianRational, ModulusClass, QParam};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeminormError {
    #[error("seminorm family {family} does not act on {element}")]
    FamilyMismatch { family: String, element: String },
    #[error("invalid seminorm parameter: {0}")]
    InvalidParameter(String),
    #[error("weight sequence is not submultiplicative: {0}")]
    NotSubmultiplicativeData(String),
    #[error("|q| = 1 has no vanishing bound")]
    ModulusOne,
    #[error("no weight given for index {0}")]
    MissingWeight(i64),
}

/// The space an element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Graded(AlgebraId),
    Azb,
    AzbDual,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Graded(id) => write!(f, "{id}"),
            Space::Azb => write!(f, "azb"),
            Space::AzbDual => write!(f, "azb-dual"),
        }
    }
}

/// An element of one of the spaces seminorms act on.
#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    Graded(AlgebraId, Combination<i64>),
    Azb(AzbElem),
    AzbDual(AzbDualElem),
}

impl Element {
    pub fn space(&self) -> Space {
        match self {
            Element::Graded(id, _) => Space::Graded(*id),
            Element::Azb(_) => Space::Azb,
            Element::AzbDual(_) => Space::AzbDual,
        }
    }

    /// Terms with indices flattened to `(n, k)`; graded indices use `k = 0`.
    pub fn terms(&self) -> Vec<((i64, u32), GaussianRational)> {
        match self {
            Element::Graded(_, c) => c.iter().map(|(n, x)| ((*n, 0), x.clone())).collect(),
            Element::Azb(c) | Element::AzbDual(c) => c.iter().map(|(i, x)| (*i, x.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Element {
        match self {
            Element::Graded(id, u) => Element::Graded(*id, u.scale(c)),
            Element::Azb(u) => Element::Azb(u.scale(c)),
            Element::AzbDual(u) => Element::AzbDual(u.scale(c)),
        }
    }

    /// Sum of two elements of the same space.
    pub fn add(&self, other: &Element) -> Option<Element> {
        match (self, other) {
            (Element::Graded(a, u), Element::Graded(b, v)) if a == b => Some(Element::Graded(*a, u + v)),
            (Element::Azb(u), Element::Azb(v)) => Some(Element::Azb(u + v)),
            (Element::AzbDual(u), Element::AzbDual(v)) => Some(Element::AzbDual(u + v)),
            _ => None,
        }
    }

    /// Product of two elements of the same space; `q` is used only on `az+b`.
    pub fn mul(&self, other: &Element, q: &QParam) -> Option<Element> {
        match (self, other) {
            (Element::Graded(a, u), Element::Graded(b, v)) if a == b => {
                Some(Element::Graded(*a, hopf::mul(&Algebra::new(*a, 0), u, v)))
            }
            (Element::Azb(u), Element::Azb(v)) => Some(Element::Azb(hopf::mul(&Azb::new(q), u, v))),
            (Element::AzbDual(u), Element::AzbDual(v)) => Some(Element::AzbDual(hopf::mul(&AzbDual::new(q, 0), u, v))),
            _ => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|((n, k), c)| match self {
                Element::Graded(..) => format!("({c})*e[{n}]"),
                _ => format!("({c})*e[{n},{k}]"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The canonical seminorm families.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq)]
pub enum SeminormSpec {
    /// `Σ_k |u_k| C^k` on polynomials.
    NormCOC(BigRational),
    /// `Σ_n |u_n| C^{|n|}` on Laurent polynomials.
    NormCOCx(BigRational),
    /// `Σ_{|n|≤N} |u_n|` on functions on ℤ.
    NormNOZ(u32),
    /// `Σ_{|n|≤N} |α_n|` on currents on ℂ×.
    NormNRstarCx(u32),
    /// `Σ_k |α_k| r_k` on currents on ℂ, coordinates in the `τ^k` basis.
    WeightedR(BTreeMap<i64, BigRational>),
    /// `Σ_n |α_n| C^{|n|}` on charges on ℤ.
    NormCCharges(BigRational),
    /// `p_{D,K}` on `az+b`: weight `(D|q|^k)^{|n|}` for `|q| < 1` and
    /// `(D/|q|^k)^{|n|}` for `|q| > 1`, on `k ≤ K`; zero for `k > K`.
    Pdk { d: BigRational, k: u32, q: QParam },
    /// `r_N(α) = Σ_{k≤N} Σ_{|n|≤N−k} |α_{n,k}|` on the dual of `az+b`.
    Rn(u32),
    /// `Σ |u_{n,k}| C^{k+|n|}` on `az+b`.
    NormCAzb(BigRational),
}

impl SeminormSpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            SeminormSpec::NormCOC(_) => "NormC_OC",
            SeminormSpec::NormCOCx(_) => "NormC_OCx",
            SeminormSpec::NormNOZ(_) => "NormN_OZ",
            SeminormSpec::NormNRstarCx(_) => "NormN_RstarCx",
            SeminormSpec::WeightedR(_) => "Weighted_r",
            SeminormSpec::NormCCharges(_) => "NormC_Charges",
            SeminormSpec::Pdk { .. } => "PDK",
            SeminormSpec::Rn(_) => "RN",
            SeminormSpec::NormCAzb(_) => "NormC_Azb",
        }
    }

    pub fn space(&self) -> Space {
        match self {
            SeminormSpec::NormCOC(_) => Space::Graded(AlgebraId::PolyC),
            SeminormSpec::NormCOCx(_) => Space::Graded(AlgebraId::LaurentCx),
            SeminormSpec::NormNOZ(_) => Space::Graded(AlgebraId::FunZ),
            SeminormSpec::NormNRstarCx(_) => Space::Graded(AlgebraId::CurrentsCx),
            SeminormSpec::WeightedR(_) => Space::Graded(AlgebraId::CurrentsC),
            SeminormSpec::NormCCharges(_) => Space::Graded(AlgebraId::ChargesZ),
            SeminormSpec::Pdk { .. } | SeminormSpec::NormCAzb(_) => Space::Azb,
            SeminormSpec::Rn(_) => Space::AzbDual,
        }
    }

    /// The parameter `q` used to multiply elements of this family's space.
    pub fn q(&self) -> QParam {
        match self {
            SeminormSpec::Pdk { q, .. } => q.clone(),
            _ => QParam::one(),
        }
    }

    /// Checks the legal parameter range: `C ≥ 1` for the `NormC` families,
    /// `D|q|^K ≥ 1` (or `D/|q|^K ≥ 1`) and `|q| ≠ 1` for `p_{D,K}`, and
    /// nonnegative weights.
    pub fn validate(&self) -> Result<(), SeminormError> {
        let at_least_one = |c: &BigRational, what: &str| {
            if *c >= BigRational::one() {
                Ok(())
            } else {
                Err(SeminormError::InvalidParameter(format!("{what} requires C ≥ 1, got {c}")))
            }
        };
        match self {
            SeminormSpec::NormCOC(c) => at_least_one(c, "NormC_OC"),
            SeminormSpec::NormCOCx(c) => at_least_one(c, "NormC_OCx"),
            SeminormSpec::NormCCharges(c) => at_least_one(c, "NormC_Charges"),
            SeminormSpec::NormCAzb(c) => at_least_one(c, "NormC_Azb"),
            SeminormSpec::NormNOZ(_) | SeminormSpec::NormNRstarCx(_) | SeminormSpec::Rn(_) => Ok(()),
            SeminormSpec::WeightedR(r) => match r.iter().find(|(_, w)| w.is_negative()) {
                Some((n, _)) => Err(SeminormError::InvalidParameter(format!("negative weight at {n}"))),
                None => Ok(()),
            },
            SeminormSpec::Pdk { d, k, q } => {
                let d2 = d * d;
                let a = q.value().abs_sq().pow(*k as i32);
                let ok = match q.modulus_class() {
                    ModulusClass::LessThanOne => d2 * a >= BigRational::one(),
                    ModulusClass::GreaterThanOne => d2 >= a,
                    ModulusClass::EqualOne => {
                        return Err(SeminormError::InvalidParameter("p_{D,K} needs |q| ≠ 1".into()))
                    }
                };
                if ok && !d.is_negative() {
                    Ok(())
                } else {
                    Err(SeminormError::InvalidParameter(format!(
                        "p_{{D,K}} with D = {d}, K = {k} breaks the D·|q|^K bound"
                    )))
                }
            }
        }
    }

    fn check_space(&self, u: &Element) -> Result<(), SeminormError> {
        if u.space() == self.space() {
            Ok(())
        } else {
            Err(SeminormError::FamilyMismatch { family: self.family_name().into(), element: u.space().to_string() })
        }
    }

    /// The weight of a basis index, exactly when it is rational.
    pub fn weight_exact(&self, (n, k): (i64, u32)) -> Result<Option<BigRational>, SeminormError> {
        let an = n.unsigned_abs() as i32;
        let pw = |c: &BigRational, e: i32| c.pow(e);
        let ind = |b: bool| if b { BigRational::one() } else { BigRational::zero() };
        Ok(Some(match self {
            SeminormSpec::NormCOC(c) | SeminormSpec::NormCOCx(c) | SeminormSpec::NormCCharges(c) => pw(c, an),
            SeminormSpec::NormNOZ(w) | SeminormSpec::NormNRstarCx(w) => ind(n.unsigned_abs() <= *w as u64),
            SeminormSpec::WeightedR(r) => r.get(&n).cloned().ok_or(SeminormError::MissingWeight(n))?,
            SeminormSpec::Rn(w) => ind(k <= *w && n.unsigned_abs() <= (*w - k.min(*w)) as u64),
            SeminormSpec::NormCAzb(c) => pw(c, an + k as i32),
            SeminormSpec::Pdk { d, k: kk, q } => {
                if k > *kk {
                    return Ok(Some(BigRational::zero()));
                }
                let Some(m) = q.value().rational_modulus() else { return Ok(None) };
                let base = match q.modulus_class() {
                    ModulusClass::GreaterThanOne => d / m.pow(k as i32),
                    _ => d * m.pow(k as i32),
                };
                pw(&base, an)
            }
        }))
    }

    /// The weight of a basis index in double precision.
    pub fn weight_f64(&self, idx: (i64, u32)) -> Result<f64, SeminormError> {
        if let SeminormSpec::Pdk { d, k: kk, q } = self {
            let (n, k) = idx;
            if k > *kk {
                return Ok(0.0);
            }
            let m = q.abs_f64();
            let base = match q.modulus_class() {
                ModulusClass::GreaterThanOne => rational_to_f64(d) / m.powi(k as i32),
                _ => rational_to_f64(d) * m.powi(k as i32),
            };
            return Ok(base.powi(n.unsigned_abs() as i32));
        }
        Ok(rational_to_f64(&self.weight_exact(idx)?.expect("non-PDK weights are rational")))
    }

    pub fn evaluate_exact(&self, u: &Element) -> Result<Option<BigRational>, SeminormError> {
        self.check_space(u)?;
        let mut total = BigRational::zero();
        for (idx, c) in u.terms() {
            let (Some(m), Some(w)) = (c.rational_modulus(), self.weight_exact(idx)?) else { return Ok(None) };
            total += m * w;
        }
        Ok(Some(total))
    }

    pub fn evaluate_f64(&self, u: &Element) -> Result<f64, SeminormError> {
        self.check_space(u)?;
        u.terms().into_iter().try_fold(0.0, |acc, (idx, c)| Ok(acc + c.abs_f64() * self.weight_f64(idx)?))
    }

    pub fn evaluate(&self, u: &Element) -> Result<Value, SeminormError> {
        Ok(match self.evaluate_exact(u)? {
            Some(x) => Value::Exact(x),
            None => Value::Float(self.evaluate_f64(u)?),
        })
    }
}

/// A seminorm value, exact when possible.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(x) => rational_to_f64(x),
            Value::Float(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Value::Exact(x) => Some(x),
            Value::Float(_) => None,
        }
    }
}

/// Scaled copies, sums and maxima of canonical seminorms. Each combinator
/// preserves submultiplicativity provided scale factors are `≥ 1`.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq)]
pub enum Seminorm {
    Basic(SeminormSpec),
    Scaled(BigRational, Box<Seminorm>),
    Sum(Vec<Seminorm>),
    Max(Vec<Seminorm>),
}

impl Seminorm {
    pub fn evaluate_exact(&self, u: &Element) -> Result<Option<BigRational>, SeminormError> {
        Ok(match self {
            Seminorm::Basic(s) => s.evaluate_exact(u)?,
            Seminorm::Scaled(c, s) => s.evaluate_exact(u)?.map(|x| c * x),
            Seminorm::Sum(v) => {
                let mut total = BigRational::zero();
                for s in v {
                    match s.evaluate_exact(u)? {
                        Some(x) => total += x,
                        None => return Ok(None),
                    }
                }
                Some(total)
            }
            Seminorm::Max(v) => {
                let mut best = BigRational::zero();
                for s in v {
                    match s.evaluate_exact(u)? {
                        Some(x) => best = best.max(x),
                        None => return Ok(None),
                    }
                }
                Some(best)
            }
        })
    }

    pub fn evaluate_f64(&self, u: &Element) -> Result<f64, SeminormError> {
        Ok(match self {
            Seminorm::Basic(s) => s.evaluate_f64(u)?,
            Seminorm::Scaled(c, s) => rational_to_f64(c) * s.evaluate_f64(u)?,
            Seminorm::Sum(v) => v.iter().map(|s| s.evaluate_f64(u)).sum::<Result<f64, _>>()?,
            Seminorm::Max(v) => v.iter().try_fold(0.0f64, |m, s| Ok::<_, SeminormError>(m.max(s.evaluate_f64(u)?)))?,
        })
    }

    pub fn evaluate(&self, u: &Element) -> Result<Value, SeminormError> {
        Ok(match self.evaluate_exact(u)? {
            Some(x) => Value::Exact(x),
            None => Value::Float(self.evaluate_f64(u)?),
        })
    }
}

impl From<SeminormSpec> for Seminorm {
    fn from(s: SeminormSpec) -> Self {
        Seminorm::Basic(s)
    }
}

/// A pair `(u, v)` with `p(uv) > p(u)p(v)`.
#[derive(Debug, Clone)]
pub struct Violation {
    pub u: Element,
    pub v: Element,
    pub lhs: f64,
    pub rhs: f64,
    pub exact: bool,
}

#[derive(Debug, Clone, Default)]
pub struct SubmultReport {
    pub checked: usize,
    pub exact_checks: usize,
    pub violations: Vec<Violation>,
}

impl SubmultReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Tests `p(uv) ≤ p(u)p(v)` on each pair: exactly when all three values are
/// exact, otherwise as `p(uv) ≤ p(u)p(v)(1 + tol)` in floating point.
pub fn check_submultiplicative(
    p: &Seminorm,
    q: &QParam,
    samples: &[(Element, Element)],
    tol: f64,
) -> Result<SubmultReport, SeminormError> {
    let mut report = SubmultReport::default();
    for (u, v) in samples {
        let uv = u.mul(v, q).ok_or_else(|| SeminormError::FamilyMismatch {
            family: "product".into(),
            element: format!("{} × {}", u.space(), v.space()),
        })?;
        report.checked += 1;
        let exact = (p.evaluate_exact(&uv)?, p.evaluate_exact(u)?, p.evaluate_exact(v)?);
        let (ok, exact_path) = match exact {
            (Some(a), Some(b), Some(c)) => (a <= b * c, true),
            _ => {
                let (a, b, c) = (p.evaluate_f64(&uv)?, p.evaluate_f64(u)?, p.evaluate_f64(v)?);
                (a <= b * c * (1.0 + tol), false)
            }
        };
        if exact_path {
            report.exact_checks += 1;
        }
        if !ok {
            let lhs = p.evaluate_f64(&uv)?;
            let rhs = p.evaluate_f64(u)? * p.evaluate_f64(v)?;
            report.violations.push(Violation { u: u.clone(), v: v.clone(), lhs, rhs, exact: exact_path });
        }
    }
    Ok(report)
}

/// Same as [`check_submultiplicative`] for a single canonical family, using
/// the family's own `q`.
pub fn check_spec_submultiplicative(
    s: &SeminormSpec,
    samples: &[(Element, Element)],
    tol: f64,
) -> Result<SubmultReport, SeminormError> {
    check_submultiplicative(&Seminorm::Basic(s.clone()), &s.q(), samples, tol)
}

fn random_coefficient(rng: &mut impl Rng, rational_path: bool) -> GaussianRational {
    if rational_path {
        GaussianRational::ratio(rng.gen_range(1..=9), rng.gen_range(1..=4))
    } else {
        loop {
            let c = GaussianRational::complex(
                rng.gen_range(-9..=9),
                rng.gen_range(1..=4),
                rng.gen_range(-9..=9),
                rng.gen_range(1..=4),
            );
            if !c.is_zero() {
                return c;
            }
        }
    }
}

fn random_index(space: Space, rng: &mut impl Rng, max_deg: u32) -> (i64, u32) {
    let d = max_deg as i64;
    match space {
        Space::Graded(id) => match id.index_set() {
            crate::algebras::IndexSet::Z => (rng.gen_range(-d..=d), 0),
            crate::algebras::IndexSet::N => (rng.gen_range(0..=d), 0),
            crate::algebras::IndexSet::Zmod(m) => (rng.gen_range(0..m as i64), 0),
        },
        Space::Azb | Space::AzbDual => {
            let k = rng.gen_range(0..=max_deg);
            let rest = d - k as i64;
            (rng.gen_range(-rest..=rest), k)
        }
    }
}

/// A random element with one to four terms of degree at most `max_deg`. On
/// the rational path the coefficients are positive rationals, which keeps
/// every seminorm value exact.
pub fn random_element(space: Space, rng: &mut impl Rng, max_deg: u32, rational_path: bool) -> Element {
    let terms = rng.gen_range(1..=4);
    let mut c: Combination<(i64, u32)> = Combination::zero();
    for _ in 0..terms {
        c.add_term(random_index(space, rng, max_deg), random_coefficient(rng, rational_path));
    }
    match space {
        Space::Graded(id) => Element::Graded(id, c.map_index(|(n, _)| *n)),
        Space::Azb => Element::Azb(c),
        Space::AzbDual => Element::AzbDual(c),
    }
}

pub fn random_pairs(
    space: Space,
    rng: &mut impl Rng,
    count: usize,
    max_deg: u32,
    rational_path: bool,
) -> Vec<(Element, Element)> {
    (0..count)
        .map(|_| {
            (random_element(space, rng, max_deg, rational_path), random_element(space, rng, max_deg, rational_path))
        })
        .collect()
}

/// The pair `u = z⊙t^K`, `v = z⁻¹` on which `p_{D,K}` fails to be
/// submultiplicative when `D|q|^K < 1`: `p(uv) = |q|^{-K}` while
/// `p(u)p(v) = D²|q|^K`.
pub fn pdk_witness(k: u32) -> (Element, Element) {
    (Element::Azb(Combination::basis((1, k))), Element::Azb(Combination::basis((-1, 0))))
}

/// Whether the witness pair violates submultiplicativity of `p_{D,K}`,
/// decided exactly by comparing squares: `|q|^{-2K}` against `D⁴|q|^{2K}`.
pub fn pdk_witness_violates(d: &BigRational, k: u32, q: &QParam) -> bool {
    let a = q.value().abs_sq().pow(k as i32);
    let lhs = BigRational::one() / &a;
    let rhs = d.pow(4) * a;
    lhs > rhs
}

/// Certificate that a seminorm on currents on ℂ is dominated by
/// `M·Σ_k |α_k| C^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurrentsDomination {
    pub c: BigRational,
    pub m: BigRational,
}

fn factorial(k: i64) -> BigRational {
    BigRational::from_integer((1..=k.max(0)).map(BigInt::from).product())
}

/// From `r_k = p(τ^k)/k!`, returns `C = A_1` and `M = max(1, A_0)` where
/// `A_k = r_k·k!`. Fails unless `A_{k+l} ≤ A_k A_l` on the given data, in
/// which case `A_k ≤ M·C^k` for every given `k`.
pub fn dominating_seminorm_currents_c(r: &BTreeMap<i64, BigRational>) -> Result<CurrentsDomination, SeminormError> {
    let a: BTreeMap<i64, BigRational> = r.iter().map(|(k, v)| (*k, v * factorial(*k))).collect();
    check_submultiplicative_data(&a)?;
    let c = a.get(&1).cloned().unwrap_or_else(BigRational::zero);
    let m = a.get(&0).cloned().unwrap_or_else(BigRational::one).max(BigRational::one());
    Ok(CurrentsDomination { c, m })
}

fn check_submultiplicative_data(a: &BTreeMap<i64, BigRational>) -> Result<(), SeminormError> {
    for (k, ak) in a {
        for (l, al) in a {
            if let Some(akl) = a.get(&(k + l)) {
                if *akl > ak * al {
                    return Err(SeminormError::NotSubmultiplicativeData(format!(
                        "value {akl} at {} exceeds {ak}·{al}",
                        k + l
                    )));
                }
            }
        }
    }
    Ok(())
}

/// From `r_n = p(δ_n)` on charges on ℤ returns `(M, C) = (r_0, max(r_1, r_{-1}))`,
/// so that `r_n ≤ M·C^{|n|}`.
pub fn dominating_seminorm_charges_z(
    r: &BTreeMap<i64, BigRational>,
) -> Result<(BigRational, BigRational), SeminormError> {
    check_submultiplicative_data(r)?;
    let get = |n: i64| r.get(&n).cloned().unwrap_or_else(BigRational::zero);
    let m = get(0);
    let c = get(1).max(get(-1));
    Ok((m, c))
}

/// True iff every `r_n` is `0` or at least `1` and nonzero entries occur
/// only at `|n| ≤ tail_window`.
pub fn finite_support_check(r: &BTreeMap<i64, BigRational>, tail_window: u32) -> bool {
    r.iter().all(|(n, v)| v.is_zero() || (*v >= BigRational::one() && n.unsigned_abs() <= tail_window as u64))
}

/// The least `K` with `|q|^K·rz·rzinv < 1` for `|q| < 1`, or
/// `|q|^{-K}·rz·rzinv < 1` for `|q| > 1`, compared through squares so that
/// the computation stays in ℚ. Any submultiplicative seminorm with
/// `p(z) = rz`, `p(z⁻¹) = rzinv` then vanishes on `t^k` for `k ≥ K`.
pub fn vanishing_bound(q: &QParam, rz: &BigRational, rzinv: &BigRational) -> Result<u32, SeminormError> {
    let a = match q.modulus_class() {
        ModulusClass::EqualOne => return Err(SeminormError::ModulusOne),
        ModulusClass::LessThanOne => q.value().abs_sq(),
        ModulusClass::GreaterThanOne => BigRational::one() / q.value().abs_sq(),
    };
    let prod = rz * rzinv;
    let target = BigRational::one() / (&prod * &prod);
    let mut k = 0u32;
    let mut power = BigRational::one();
    while power >= target {
        power *= &a;
        k += 1;
    }
    Ok(k)
}

/// The largest rational `x` with `x^2 ≤ y`, accurate to `1/den`.
pub(crate) fn rational_sqrt_floor(y: &BigRational, den: u64) -> BigRational {
    let scaled = (y * BigRational::from_integer(BigInt::from(den) * BigInt::from(den))).floor().to_integer();
    BigRational::new(scaled.sqrt(), BigInt::from(den))
}

/// A rational upper bound for `|q|`, exact when `|q|` is rational.
pub(crate) fn modulus_upper(q: &GaussianRational) -> BigRational {
    q.rational_modulus()
        .unwrap_or_else(|| rational_sqrt_floor(&q.abs_sq(), 1 << 20) + BigRational::new(1.into(), (1u64 << 20).into()))
}

/// A rational lower bound for `|q|`, exact when `|q|` is rational.
pub(crate) fn modulus_lower(q: &GaussianRational) -> BigRational {
    q.rational_modulus().unwrap_or_else(|| rational_sqrt_floor(&q.abs_sq(), 1 << 20))
}

/// Generator data of a submultiplicative seminorm on `az+b`, and the
/// `p_{D,K}` that dominates it.
#[derive(Debug, Clone)]
pub struct PdkDomination {
    pub k: u32,
    pub d: BigRational,
    pub factor: BigRational,
}

/// For a seminorm `p` on `az+b` with `|q| ≠ 1`, builds `K`, `D` and a factor
/// `F` with `p ≤ F·p_{D,K}`: `K` is the vanishing bound from `p(z)`,
/// `p(z⁻¹)`, `C = max(1, p(z), p(z⁻¹))`, `D = C/|q|^K` (or `C|q|^K`), and
/// `F = max_{k≤K} p(t^k) · max(1, p(1))`.
pub fn dominating_pdk(p: &Seminorm, q: &QParam) -> Result<PdkDomination, SeminormError> {
    let val = |u: AzbElem| -> Result<BigRational, SeminormError> {
        let e = Element::Azb(u);
        Ok(match p.evaluate_exact(&e)? {
            Some(x) => x,
            None => {
                let f = p.evaluate_f64(&e)?;
                BigRational::from_float(f * (1.0 + 1e-12)).unwrap_or_else(BigRational::zero)
            }
        })
    };
    let rz = val(Combination::basis((1, 0)))?;
    let rzinv = val(Combination::basis((-1, 0)))?;
    let one = BigRational::one();
    let k = if rz.is_zero() || rzinv.is_zero() { 0 } else { vanishing_bound(q, &rz, &rzinv)? };
    let c = one.clone().max(rz).max(rzinv);
    let d = match q.modulus_class() {
        ModulusClass::LessThanOne => &c / modulus_lower(q.value()).pow(k as i32),
        _ => &c * modulus_upper(q.value()).pow(k as i32),
    };
    let mut l = BigRational::zero();
    for j in 0..=k {
        l = l.max(val(Combination::basis((0, j)))?);
    }
    let factor = l * val(Combination::basis((0, 0)))?.max(one);
    Ok(PdkDomination { k, d, factor })
}

/// A random submultiplicative seminorm on `az+b`: a scaled sum or maximum of
/// two legal `p_{D,K}`.
pub fn random_azb_seminorm(q: &QParam, rng: &mut impl Rng) -> Seminorm {
    let pick = |rng: &mut dyn rand::RngCore| {
        let k = rng.gen_range(0..=3u32);
        let m = match q.modulus_class() {
            ModulusClass::LessThanOne => BigRational::one() / modulus_lower(q.value()),
            _ => modulus_upper(q.value()),
        };
        let d = m.pow(k as i32) * BigRational::new(rng.gen_range(2..=6).into(), 2.into());
        Seminorm::Basic(SeminormSpec::Pdk { d, k, q: q.clone() })
    };
    let (a, b) = (pick(rng), pick(rng));
    let scale = BigRational::new(rng.gen_range(2..=6).into(), 2.into());
    let inner = if rng.gen_bool(0.5) { Seminorm::Sum(vec![a, b]) } else { Seminorm::Max(vec![a, b]) };
    Seminorm::Scaled(scale, Box::new(inner))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn q(s: &str) -> QParam {
        s.parse().unwrap()
    }

    fn graded(id: AlgebraId, terms: &[(i64, i64)]) -> Element {
        Element::Graded(id, terms.iter().map(|(n, c)| (*n, GaussianRational::from_int(*c))).collect())
    }

    #[test]
    fn evaluation_examples() {
        let u = graded(AlgebraId::LaurentCx, &[(2, 1), (-1, 3)]);
        assert_eq!(SeminormSpec::NormCOCx(rat(2, 1)).evaluate(&u).unwrap(), Value::Exact(rat(10, 1)));
        let v = graded(AlgebraId::FunZ, &[(0, 1), (2, 5)]);
        assert_eq!(SeminormSpec::NormNOZ(1).evaluate(&v).unwrap(), Value::Exact(rat(1, 1)));
        let z = Element::Azb(Combination::basis((1, 0)));
        let p = SeminormSpec::Pdk { d: rat(4, 1), k: 2, q: q("1/2") };
        assert_eq!(p.evaluate(&z).unwrap(), Value::Exact(rat(4, 1)));
        assert!(matches!(p.evaluate(&u), Err(SeminormError::FamilyMismatch { .. })));
    }

    #[test]
    fn equality_case_and_witness() {
        let z = graded(AlgebraId::LaurentCx, &[(1, 1)]);
        let s = SeminormSpec::NormCOCx(rat(2, 1));
        let r = check_spec_submultiplicative(&s, &[(z.clone(), z.clone())], 1e-9).unwrap();
        assert!(r.passed() && r.exact_checks == 1);

        let bad = SeminormSpec::Pdk { d: rat(2, 1), k: 2, q: q("1/2") };
        assert!(bad.validate().is_err());
        let (u, v) = pdk_witness(2);
        let r = check_spec_submultiplicative(&bad, &[(u.clone(), v.clone())], 1e-9).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!((r.violations[0].lhs, r.violations[0].rhs), (4.0, 1.0));
        assert!(pdk_witness_violates(&rat(2, 1), 2, &q("1/2")));
        assert!(!pdk_witness_violates(&rat(4, 1), 2, &q("1/2")));
    }

    #[test]
    fn pdk_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (s, d, k) in [("1/2", rat(4, 1), 2), ("2", rat(4, 1), 2), ("1+1*i", rat(2, 1), 2), ("1/3", rat(27, 1), 3)] {
            let p = SeminormSpec::Pdk { d, k, q: q(s) };
            p.validate().unwrap();
            let pairs = random_pairs(Space::Azb, &mut rng, 300, 4, false);
            assert!(check_spec_submultiplicative(&p, &pairs, 1e-9).unwrap().passed(), "q = {s}");
        }
    }

    #[test]
    fn currents_domination() {
        let r: BTreeMap<i64, BigRational> = (0..6).map(|k| (k, rat(2i64.pow(k as u32), 1) / factorial(k))).collect();
        assert_eq!(dominating_seminorm_currents_c(&r).unwrap(), CurrentsDomination { c: rat(2, 1), m: rat(1, 1) });
        let r: BTreeMap<i64, BigRational> = (0..6).map(|k| (k, BigRational::one() / factorial(k))).collect();
        assert_eq!(dominating_seminorm_currents_c(&r).unwrap().c, rat(1, 1));
        let r: BTreeMap<i64, BigRational> = [(0, rat(1, 1)), (1, rat(3, 1)), (2, rat(5, 1))].into_iter().collect();
        assert!(matches!(dominating_seminorm_currents_c(&r), Err(SeminormError::NotSubmultiplicativeData(_))));
    }

    #[test]
    fn charges_domination() {
        let r: BTreeMap<i64, BigRational> =
            (-4..=4).map(|n: i64| (n, rat(3i64.pow(n.unsigned_abs() as u32), 1))).collect();
        assert_eq!(dominating_seminorm_charges_z(&r).unwrap(), (rat(1, 1), rat(3, 1)));
        let r: BTreeMap<i64, BigRational> = (-4..=4).map(|n| (n, rat(1, 1))).collect();
        assert_eq!(dominating_seminorm_charges_z(&r).unwrap(), (rat(1, 1), rat(1, 1)));
        let r: BTreeMap<i64, BigRational> = [(0, rat(1, 1)), (1, rat(2, 1)), (2, rat(5, 1))].into_iter().collect();
        assert!(dominating_seminorm_charges_z(&r).is_err());
    }

    #[test]
    fn support_check() {
        let r: BTreeMap<i64, BigRational> = [(0, rat(1, 1)), (1, rat(1, 1)), (2, rat(0, 1))].into_iter().collect();
        assert!(finite_support_check(&r, 4));
        let r: BTreeMap<i64, BigRational> = [(0, rat(1, 1)), (1, rat(1, 2))].into_iter().collect();
        assert!(!finite_support_check(&r, 4));
        let r: BTreeMap<i64, BigRational> = (-8..=8).map(|n: i64| (n, rat((n.abs() <= 5) as i64, 1))).collect();
        assert!(finite_support_check(&r, 5));
    }

    #[test]
    fn vanishing_bound_examples() {
        assert_eq!(vanishing_bound(&q("1/2"), &rat(2, 1), &rat(2, 1)), Ok(3));
        assert_eq!(vanishing_bound(&q("1/2"), &rat(1, 1), &rat(1, 1)), Ok(1));
        assert_eq!(vanishing_bound(&q("2"), &rat(2, 1), &rat(2, 1)), Ok(3));
        assert_eq!(vanishing_bound(&q("i"), &rat(1, 1), &rat(1, 1)), Err(SeminormError::ModulusOne));
    }

    #[test]
    fn pdk_domination_of_random_seminorms() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for s in ["1/2", "2", "1+1*i"] {
            let x = q(s);
            for _ in 0..10 {
                let p = random_azb_seminorm(&x, &mut rng);
                let dom = dominating_pdk(&p, &x).unwrap();
                let pdk = SeminormSpec::Pdk { d: dom.d.clone(), k: dom.k, q: x.clone() };
                pdk.validate().unwrap();
                for _ in 0..20 {
                    let u = random_element(Space::Azb, &mut rng, 4, true);
                    let lhs = p.evaluate_f64(&u).unwrap();
                    let rhs = rational_to_f64(&dom.factor) * pdk.evaluate_f64(&u).unwrap();
                    assert!(lhs <= rhs * (1.0 + 1e-9), "q = {s}: {lhs} > {rhs}");
                }
            }
        }
    }
}
