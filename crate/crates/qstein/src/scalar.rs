//! Exact arithmetic over the Gaussian rationals ℚ(i) and the deformation
//! parameter `q`.
//!
//! Every structure constant in this crate lives in ℚ(i), so all algebraic
//! identities are checked with exact equality. Floats appear only at the
//! boundary where a modulus is irrational.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("the deformation parameter must be nonzero")]
    ZeroParameter,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// A number `re + im·i` with arbitrary-precision rational parts.
///
/// `BigRational` keeps fractions reduced with positive denominators, so two
/// values are equal exactly when their representations are.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_real(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den + 0i`. Panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_real(BigRational::new(num.into(), den.into()))
    }

    /// `(a/b) + (c/d)·i`. Panics when a denominator is zero.
    pub fn complex(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()))
    }

    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re² + im²`, always exact and nonnegative.
    pub fn abs_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// The modulus when it is rational, i.e. when `abs_sq` is the square of
    /// a rational number.
    pub fn rational_modulus(&self) -> Option<BigRational> {
        if self.im.is_zero() {
            return Some(self.re.abs());
        }
        if self.re.is_zero() {
            return Some(self.im.abs());
        }
        rational_sqrt(&self.abs_sq())
    }

    pub fn abs_f64(&self) -> f64 {
        match self.rational_modulus() {
            Some(m) => rational_to_f64(&m),
            None => rational_to_f64(&self.abs_sq()).sqrt(),
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.abs_sq();
        if n.is_zero() {
            return None;
        }
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    /// Integer power; `None` for a negative power of zero.
    pub fn checked_pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Some(base.pow_u(e.unsigned_abs()))
    }

    pub fn pow_u(&self, mut e: u64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

/// Exact square root of a nonnegative rational, when it is rational.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer();
    let d = x.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::from_real(r)
    }
}

impl From<BigInt> for GaussianRational {
    fn from(n: BigInt) -> Self {
        Self::from_real(BigRational::from_integer(n))
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::from_real(&self.re * &o.re);
        }
        GaussianRational { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

/// Panics on division by zero, like the primitive numeric types.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.inv().expect("division by zero Gaussian rational")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational { (&self).$m(&o) }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &GaussianRational) -> GaussianRational { (&self).$m(o) }
        }
        impl $tr<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational { self.$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -self.clone()
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &GaussianRational) {
        *self = &*self * o;
    }
}

impl Sum for GaussianRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl Product for GaussianRational {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}

/// Canonical text: `a/b` when real, otherwise `a/b+c/d*i` with the sign on
/// the numerator. Integral parts print without a denominator.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    (!den.is_zero()).then(|| BigRational::new(num, den))
}

fn parse_imag(s: &str) -> Option<BigRational> {
    let body = s.trim().strip_suffix('i')?.trim_end();
    let body = body.strip_suffix('*').unwrap_or(body).trim_end();
    match body {
        "" | "+" => Some(BigRational::one()),
        "-" => Some(-BigRational::one()),
        _ => parse_rational(body),
    }
}

/// Accepts the canonical text form and the obvious variants
/// (`3/5-4/5*i`, `-i`, `2*i`).
impl FromStr for GaussianRational {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        if !t.ends_with('i') {
            return parse_rational(&t).map(Self::from_real).ok_or_else(err);
        }
        let bytes = t.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&j| matches!(bytes[j], b'+' | b'-') && !matches!(bytes[j - 1], b'+' | b'-' | b'/' | b'*'));
        match split {
            None => parse_imag(&t).map(|im| Self::new(BigRational::zero(), im)).ok_or_else(err),
            Some(j) => {
                let re = parse_rational(&t[..j]).ok_or_else(err)?;
                let im = parse_imag(&t[j..]).ok_or_else(err)?;
                Ok(Self::new(re, im))
            }
        }
    }
}

/// Position of `|q|` relative to 1, decided from `abs_sq` without roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModulusClass {
    LessThanOne,
    EqualOne,
    GreaterThanOne,
}

impl ModulusClass {
    pub fn reciprocal(self) -> Self {
        match self {
            Self::LessThanOne => Self::GreaterThanOne,
            Self::EqualOne => Self::EqualOne,
            Self::GreaterThanOne => Self::LessThanOne,
        }
    }
}

pub fn classify_modulus(q: &GaussianRational) -> Result<ModulusClass, ScalarError> {
    if q.is_zero() {
        return Err(ScalarError::ZeroParameter);
    }
    Ok(match q.abs_sq().cmp(&BigRational::one()) {
        std::cmp::Ordering::Less => ModulusClass::LessThanOne,
        std::cmp::Ordering::Equal => ModulusClass::EqualOne,
        std::cmp::Ordering::Greater => ModulusClass::GreaterThanOne,
    })
}

/// Exponents with `|e| ≤ POWER_TABLE_BOUND` are served from a table that is
/// built on first use and shared by all clones.
const POWER_TABLE_BOUND: i64 = 160;

/// The nonzero deformation parameter `q`. Equality and hashing look at the
/// value only.
#[derive(Clone)]
pub struct QParam {
    value: GaussianRational,
    inverse: GaussianRational,
    class: ModulusClass,
    powers: Arc<OnceLock<Vec<GaussianRational>>>,
}

impl PartialEq for QParam {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Eq for QParam {}

impl Hash for QParam {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl QParam {
    pub fn new(value: GaussianRational) -> Result<Self, ScalarError> {
        let class = classify_modulus(&value)?;
        let inverse = value.inv().ok_or(ScalarError::ZeroParameter)?;
        Ok(Self { value, inverse, class, powers: Arc::default() })
    }

    /// Convenience for literal parameters in tests and examples.
    /// Panics on zero.
    pub fn from_scalar(value: GaussianRational) -> Self {
        Self::new(value).expect("q must be nonzero")
    }

    pub fn one() -> Self {
        Self::from_scalar(GaussianRational::one())
    }

    pub fn value(&self) -> &GaussianRational {
        &self.value
    }

    pub fn modulus_class(&self) -> ModulusClass {
        self.class
    }

    pub fn pow(&self, e: i64) -> GaussianRational {
        if e.abs() <= POWER_TABLE_BOUND {
            let table = self.powers.get_or_init(|| self.power_table());
            return table[(e + POWER_TABLE_BOUND) as usize].clone();
        }
        self.pow_uncached(e)
    }

    /// `q^{-B}, …, q^{B}` by repeated multiplication from `q^0`.
    fn power_table(&self) -> Vec<GaussianRational> {
        let b = POWER_TABLE_BOUND as usize;
        let mut negative = Vec::with_capacity(b);
        let mut positive = Vec::with_capacity(b + 1);
        let mut x = GaussianRational::one();
        positive.push(x.clone());
        for _ in 0..b {
            x = &x * &self.value;
            positive.push(x.clone());
        }
        let mut y = GaussianRational::one();
        for _ in 0..b {
            y = &y * &self.inverse;
            negative.push(y.clone());
        }
        negative.reverse();
        negative.extend(positive);
        negative
    }

    fn pow_uncached(&self, e: i64) -> GaussianRational {
        if e >= 0 {
            self.value.pow_u(e as u64)
        } else {
            self.inverse.pow_u(e.unsigned_abs())
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            value: self.inverse.clone(),
            inverse: self.value.clone(),
            class: self.class.reciprocal(),
            powers: Arc::default(),
        }
    }

    pub fn abs_f64(&self) -> f64 {
        self.value.abs_f64()
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

impl fmt::Debug for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QParam({})", self.value)
    }
}

impl FromStr for QParam {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(s.parse()?)
    }
}

/// The parameter values every exact suite in this crate is run against.
pub fn standard_test_qs() -> Vec<QParam> {
    [
        GaussianRational::from_int(1),
        GaussianRational::from_int(2),
        GaussianRational::ratio(1, 2),
        GaussianRational::i(),
        GaussianRational::from_int(-1),
        GaussianRational::complex(3, 5, 4, 5),
        GaussianRational::complex(1, 1, 1, 1),
    ]
    .into_iter()
    .map(QParam::from_scalar)
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(g("1/2") + g("1/2"), g("1"));
        assert!((g("1*i") + g("-1*i")).is_zero());
        assert_eq!(g("1/3+1/6*i") + g("1/6+1/3*i"), g("1/2+1/2*i"));
    }

    #[test]
    fn multiplication_examples() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
        assert_eq!(g("3/5+4/5*i") * g("3/5-4/5*i"), GaussianRational::one());
        let x = g("7/3-2/9*i");
        assert_eq!(GaussianRational::one() * &x, x);
    }

    #[test]
    fn modulus_classes() {
        assert_eq!(classify_modulus(&g("1/2")), Ok(ModulusClass::LessThanOne));
        assert_eq!(classify_modulus(&g("3/5+4/5*i")), Ok(ModulusClass::EqualOne));
        assert_eq!(classify_modulus(&g("1+1*i")), Ok(ModulusClass::GreaterThanOne));
        assert_eq!(classify_modulus(&GaussianRational::zero()), Err(ScalarError::ZeroParameter));
        assert!(QParam::new(GaussianRational::zero()).is_err());
    }

    #[test]
    fn text_form_round_trips() {
        for s in ["1/2", "-3", "0", "1/2+-1/3*i", "0+1*i", "3/5+4/5*i", "-7/2+5*i"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g("i"), GaussianRational::i());
        assert_eq!(g("-i"), -GaussianRational::i());
        assert_eq!(g("3/5-4/5*i"), GaussianRational::complex(3, 5, -4, 5));
        assert_eq!(g("2*i"), GaussianRational::complex(0, 1, 2, 1));
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn rational_modulus_detection() {
        assert_eq!(g("3/5+4/5*i").rational_modulus(), Some(BigRational::one()));
        assert_eq!(g("-2/3").rational_modulus(), Some(BigRational::new(2.into(), 3.into())));
        assert_eq!(g("1+1*i").rational_modulus(), None);
        assert!((g("1+1*i").abs_f64() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn qparam_powers() {
        let q = QParam::from_scalar(g("1/2"));
        assert_eq!(q.pow(3), g("1/8"));
        assert_eq!(q.pow(-2), g("4"));
        assert_eq!(q.pow(0), GaussianRational::one());
        let i = QParam::from_scalar(GaussianRational::i());
        assert_eq!(i.pow(-1), -GaussianRational::i());
        assert_eq!(i.pow(4), GaussianRational::one());
    }
}
