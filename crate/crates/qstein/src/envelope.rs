//! Outer and inner envelopes, rectangles and rhombi, and semicharacters on
//! ℂ× and ℤ, evaluated on finite sample grids.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::combination::Combination;
use crate::hopf::AxiomReport;
use crate::scalar::{rational_to_f64, GaussianRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvelopeError {
    #[error("the function set is empty")]
    EmptySet,
    #[error("the function set does not contain the constant 1")]
    MissingUnit,
    #[error("analytic membership needs a single r_C^N atom, got {0}")]
    UnsupportedDescriptor(String),
    #[error("the grid is not closed under products")]
    GridNotClosed,
    #[error("grid points must be nonzero")]
    ZeroPoint,
    #[error("bad grid spec: {0}")]
    BadGrid(String),
}

/// Sample points of ℂ×.
#[derive(Debug, Clone, PartialEq)]
pub struct GridDomain {
    pub points: Vec<GaussianRational>,
    pub closed_under_product: bool,
}

impl GridDomain {
    pub fn new(points: Vec<GaussianRational>) -> Result<Self, EnvelopeError> {
        if points.iter().any(|p| p.is_zero()) {
            return Err(EnvelopeError::ZeroPoint);
        }
        let closed = Self::check_closed(&points);
        Ok(Self { points, closed_under_product: closed })
    }

    /// Whether `1` is a point and every product `xy` of points whose modulus
    /// lies within the range of moduli on the grid is again a point.
    fn check_closed(points: &[GaussianRational]) -> bool {
        let moduli: Vec<BigRational> = points.iter().map(GaussianRational::abs_sq).collect();
        let (Some(lo), Some(hi)) = (moduli.iter().min(), moduli.iter().max()) else { return false };
        points.contains(&GaussianRational::one())
            && points.iter().all(|x| {
                points.iter().all(|y| {
                    let xy = x * y;
                    let m = xy.abs_sq();
                    m < *lo || m > *hi || points.contains(&xy)
                })
            })
    }

    /// `{i^j·2^k : 0 ≤ j < 4, |k| ≤ m}`: the rays through `±1` and `±i`,
    /// closed under products whose modulus stays within `[2^{-m}, 2^m]`.
    pub fn pow2(m: u32) -> Self {
        let m = m as i64;
        let two = GaussianRational::from_int(2);
        let mut points = Vec::new();
        for k in -m..=m {
            let p = two.checked_pow(k).expect("nonzero base");
            let mut unit = GaussianRational::one();
            for _ in 0..4 {
                points.push(&unit * &p);
                unit = &unit * &GaussianRational::i();
            }
        }
        Self::new(points).expect("nonzero points")
    }

    /// Pairs `(x, y)` of grid points whose product is also a grid point.
    pub fn product_pairs(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (i, x) in self.points.iter().enumerate() {
            for (j, y) in self.points.iter().enumerate() {
                if let Some(k) = self.points.iter().position(|p| *p == x * y) {
                    out.push((i, j, k));
                }
            }
        }
        out
    }

    /// Points with `1/2 ≤ |x| ≤ 2`.
    pub fn annulus(&self) -> impl Iterator<Item = &GaussianRational> {
        let lo = BigRational::new(1.into(), 4.into());
        let hi = BigRational::from_integer(4.into());
        self.points.iter().filter(move |p| {
            let a = p.abs_sq();
            a >= lo && a <= hi
        })
    }
}

impl FromStr for GridDomain {
    type Err = EnvelopeError;

    /// `pow2:M` or a comma-separated list of scalars.
    fn from_str(s: &str) -> Result<Self, EnvelopeError> {
        if let Some(m) = s.strip_prefix("pow2:") {
            return m.trim().parse().map(Self::pow2).map_err(|_| EnvelopeError::BadGrid(s.into()));
        }
        let points = s
            .split(',')
            .map(|p| p.trim().parse::<GaussianRational>().map_err(|_| EnvelopeError::BadGrid(p.into())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(points)
    }
}

/// A semicharacter given by a construction tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Semicharacter {
    /// `r_C^N(x) = C·max{|x|, 1/|x|}^N` on ℂ×.
    Rcn {
        c: BigRational,
        n: u32,
    },
    Product(Box<Semicharacter>, Box<Semicharacter>),
    Sum(Box<Semicharacter>, Box<Semicharacter>),
    Max(Box<Semicharacter>, Box<Semicharacter>),
    Scale(BigRational, Box<Semicharacter>),
}

impl Semicharacter {
    pub fn rcn(c: i64, n: u32) -> Self {
        Semicharacter::Rcn { c: BigRational::from_integer(c.into()), n }
    }

    pub fn product(a: Self, b: Self) -> Self {
        Semicharacter::Product(Box::new(a), Box::new(b))
    }

    pub fn sum(a: Self, b: Self) -> Self {
        Semicharacter::Sum(Box::new(a), Box::new(b))
    }

    pub fn max(a: Self, b: Self) -> Self {
        Semicharacter::Max(Box::new(a), Box::new(b))
    }

    pub fn scale(c: BigRational, a: Self) -> Self {
        Semicharacter::Scale(c, Box::new(a))
    }

    /// Exponent bound: `f(x) ≤ const·max{|x|, 1/|x|}^degree`.
    pub fn degree(&self) -> u32 {
        match self {
            Semicharacter::Rcn { n, .. } => *n,
            Semicharacter::Product(a, b) => a.degree() + b.degree(),
            Semicharacter::Sum(a, b) | Semicharacter::Max(a, b) => a.degree().max(b.degree()),
            Semicharacter::Scale(_, a) => a.degree(),
        }
    }

    /// Exact value when `|x|` is rational.
    pub fn eval_exact(&self, x: &GaussianRational) -> Option<BigRational> {
        Some(match self {
            Semicharacter::Rcn { c, n } => {
                let m = x.rational_modulus()?;
                let big = if m >= BigRational::one() { m } else { m.recip() };
                c * big.pow(*n as i32)
            }
            Semicharacter::Product(a, b) => a.eval_exact(x)? * b.eval_exact(x)?,
            Semicharacter::Sum(a, b) => a.eval_exact(x)? + b.eval_exact(x)?,
            Semicharacter::Max(a, b) => a.eval_exact(x)?.max(b.eval_exact(x)?),
            Semicharacter::Scale(c, a) => c * a.eval_exact(x)?,
        })
    }

    pub fn eval(&self, x: &GaussianRational) -> f64 {
        match self {
            Semicharacter::Rcn { c, n } => {
                let m = x.abs_f64();
                rational_to_f64(c) * m.max(1.0 / m).powi(*n as i32)
            }
            Semicharacter::Product(a, b) => a.eval(x) * b.eval(x),
            Semicharacter::Sum(a, b) => a.eval(x) + b.eval(x),
            Semicharacter::Max(a, b) => a.eval(x).max(b.eval(x)),
            Semicharacter::Scale(c, a) => rational_to_f64(c) * a.eval(x),
        }
    }
}

impl fmt::Display for Semicharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Semicharacter::Rcn { c, n } => write!(f, "rCN({c},{n})"),
            Semicharacter::Product(a, b) => write!(f, "({a}*{b})"),
            Semicharacter::Sum(a, b) => write!(f, "({a}+{b})"),
            Semicharacter::Max(a, b) => write!(f, "max({a},{b})"),
            Semicharacter::Scale(c, a) => write!(f, "{c}*{a}"),
        }
    }
}

/// Parses `rCN(C,N)`, `max(f,g)`, `f*g`, `f+g` and `C*f` (scalar first).
impl FromStr for Semicharacter {
    type Err = EnvelopeError;

    fn from_str(s: &str) -> Result<Self, EnvelopeError> {
        let bad = || EnvelopeError::BadGrid(format!("semicharacter {s:?}"));
        let s = s.trim();
        let split_top = |op: char| -> Option<(String, String)> {
            let mut depth = 0i32;
            for (i, ch) in s.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    c if c == op && depth == 0 => return Some((s[..i].to_string(), s[i + 1..].to_string())),
                    _ => {}
                }
            }
            None
        };
        if let Some((a, b)) = split_top('+') {
            return Ok(Self::sum(a.parse()?, b.parse()?));
        }
        if let Some((a, b)) = split_top('*') {
            if let Ok(c) = a.trim().parse::<BigRational>() {
                return Ok(Self::scale(c, b.parse()?));
            }
            return Ok(Self::product(a.parse()?, b.parse()?));
        }
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            return inner.parse();
        }
        let args = |prefix: &str| -> Option<String> {
            let lower = s.to_ascii_lowercase();
            lower.starts_with(prefix).then(|| s[prefix.len()..].strip_suffix(')').map(str::to_string)).flatten()
        };
        if let Some(inner) = args("rcn(") {
            let (c, n) = inner.split_once(',').ok_or_else(bad)?;
            let c: BigRational = c.trim().parse().map_err(|_| bad())?;
            let n: u32 = n.trim().parse().map_err(|_| bad())?;
            return Ok(Semicharacter::Rcn { c, n });
        }
        if let Some(inner) = args("max(") {
            let mut depth = 0i32;
            for (i, ch) in inner.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    ',' if depth == 0 => return Ok(Self::max(inner[..i].parse()?, inner[i + 1..].parse()?)),
                    _ => {}
                }
            }
        }
        Err(bad())
    }
}

/// `h_C(n) = C^{|n|}` on ℤ, the semicharacter generated by `{−1, 0, 1}`.
pub fn h_c(c: &BigRational, n: i64) -> BigRational {
    c.pow(n.unsigned_abs() as i32)
}

/// Exact check of `h_C(m+n) ≤ h_C(m)·h_C(n)` and `h_C ≥ 1` for `|m|, |n| ≤ range`.
pub fn check_hc(c: &BigRational, range: i64) -> AxiomReport {
    let mut r = AxiomReport::default();
    for m in -range..=range {
        r.record(h_c(c, m) >= BigRational::one(), || format!("h_{c}({m}) < 1"));
        for n in -range..=range {
            r.record(h_c(c, m + n) <= h_c(c, m) * h_c(c, n), || format!("h_{c} fails at ({m}, {n})"));
        }
    }
    r
}

/// A finite set of Laurent polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSet {
    pub members: Vec<Combination<i64>>,
    pub contains_unit: bool,
}

impl FunctionSet {
    pub fn new(members: Vec<Combination<i64>>) -> Self {
        let unit = Combination::basis(0);
        let contains_unit = members.contains(&unit);
        Self { members, contains_unit }
    }

    /// `{1, z, z⁻¹}`-style sets from `(coefficient, exponent)` monomials; the
    /// constant 1 is added.
    pub fn monomials_with_unit(terms: &[(GaussianRational, i64)]) -> Self {
        let mut members = vec![Combination::basis(0)];
        members.extend(terms.iter().map(|(c, n)| Combination::term(*n, c.clone())));
        Self::new(members)
    }

    fn check(&self) -> Result<(), EnvelopeError> {
        if self.members.is_empty() {
            Err(EnvelopeError::EmptySet)
        } else if !self.contains_unit {
            Err(EnvelopeError::MissingUnit)
        } else {
            Ok(())
        }
    }

    pub fn union(&self, other: &FunctionSet) -> FunctionSet {
        let mut members = self.members.clone();
        members.extend(other.members.iter().filter(|m| !self.members.contains(m)).cloned());
        FunctionSet::new(members)
    }
}

/// `u(x)` for a Laurent polynomial `u`.
pub fn eval_laurent(u: &Combination<i64>, x: &GaussianRational) -> GaussianRational {
    u.iter().map(|(n, c)| c * &x.checked_pow(*n).expect("nonzero point")).sum()
}

/// `D^□(x) = sup_{u∈D} |u(x)|` at each grid point.
pub fn outer_envelope(d: &FunctionSet, grid: &GridDomain) -> Result<Vec<f64>, EnvelopeError> {
    d.check()?;
    Ok(grid.points.iter().map(|x| d.members.iter().map(|u| eval_laurent(u, x).abs_f64()).fold(0.0, f64::max)).collect())
}

/// `(D°)^◊ = 1/D^□` at each grid point.
pub fn inner_envelope_of_polar(d: &FunctionSet, grid: &GridDomain) -> Result<Vec<f64>, EnvelopeError> {
    Ok(outer_envelope(d, grid)?.into_iter().map(|v| 1.0 / v).collect())
}

/// `(D°)^◊(x) = max{λ > 0 : λ·δ^x ∈ D°}` found by bisection on the
/// condition `λ·|u(x)| ≤ 1` for all `u ∈ D`, independently of the closed
/// formula. Since `1 ∈ D`, the answer lies in `(0, 1]`.
pub fn inner_envelope_by_bisection(d: &FunctionSet, grid: &GridDomain) -> Result<Vec<f64>, EnvelopeError> {
    d.check()?;
    Ok(grid
        .points
        .iter()
        .map(|x| {
            let values: Vec<f64> = d.members.iter().map(|u| eval_laurent(u, x).abs_f64()).collect();
            let in_polar = |l: f64| values.iter().all(|v| l * v <= 1.0);
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            if in_polar(hi) {
                return hi;
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if in_polar(mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipMode {
    GridNecessary,
    AnalyticSufficient,
}

/// Whether `u` lies in the rectangle `f^■ = {u : |u(x)| ≤ f(x)}`.
pub fn rectangle_membership(
    u: &Combination<i64>,
    f: &Semicharacter,
    grid: &GridDomain,
    mode: MembershipMode,
) -> Result<bool, EnvelopeError> {
    match mode {
        MembershipMode::GridNecessary => {
            Ok(grid.points.iter().all(|x| eval_laurent(u, x).abs_f64() <= f.eval(x) * (1.0 + 1e-9)))
        }
        MembershipMode::AnalyticSufficient => {
            let Semicharacter::Rcn { c, n } = f else {
                return Err(EnvelopeError::UnsupportedDescriptor(f.to_string()));
            };
            if u.indices().any(|k| k.unsigned_abs() > *n as u64) {
                return Ok(false);
            }
            let exact: Option<BigRational> = u.iter().map(|(_, x)| x.rational_modulus()).sum();
            Ok(match exact {
                Some(total) => total <= *c,
                None => u.iter().map(|(_, x)| x.abs_f64()).sum::<f64>() <= rational_to_f64(c) * (1.0 + 1e-12),
            })
        }
    }
}

/// Monomials `c_n z^n` for `|n| ≤ degree` with `c_n = min_x g(x)/|x|^n`
/// over the grid, together with `1`. Every member satisfies `|u| ≤ g` on
/// the grid; for `g = r_C^N` the coefficients equal `C` and the sup over the
/// set is `g` itself.
pub fn witness_set(values: &[f64], grid: &GridDomain, degree: u32) -> FunctionSet {
    let d = degree as i64;
    let terms: Vec<(GaussianRational, i64)> = (-d..=d)
        .filter_map(|n| {
            let c = grid
                .points
                .iter()
                .zip(values)
                .map(|(x, g)| g / x.abs_f64().powi(n as i32))
                .fold(f64::INFINITY, f64::min);
            BigRational::from_float(c).map(|c| (GaussianRational::from_real(c), n))
        })
        .collect();
    FunctionSet::monomials_with_unit(&terms)
}

/// `f^{■□}` on the grid, realized as the outer envelope of the witness set.
pub fn rectangle_outer(f: &Semicharacter, grid: &GridDomain) -> Vec<f64> {
    let values: Vec<f64> = grid.points.iter().map(|x| f.eval(x)).collect();
    let w = witness_set(&values, grid, 2 * f.degree().max(1));
    outer_envelope(&w, grid).expect("witness set contains 1")
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Grid-level checks of the envelope identities for `f` and `D`:
/// `f^{■□} ≤ f`; idempotency of `■□`; `1/f^{■□} = (1/f)^{♦◊}` with the right
/// side computed by bisection on the polar of the witness set; `D ⊆ (D^□)^■`;
/// `D^□·(D°)^◊ = 1`; and monotonicity `D ⊆ E ⇒ D^□ ≤ E^□`.
pub fn envelope_duality_suite(
    f: &Semicharacter,
    d: &FunctionSet,
    grid: &GridDomain,
    tol: f64,
) -> Result<AxiomReport, EnvelopeError> {
    let mut r = AxiomReport::default();
    let fv: Vec<f64> = grid.points.iter().map(|x| f.eval(x)).collect();
    let degree = 2 * f.degree().max(1);
    let w = witness_set(&fv, grid, degree);
    let g = outer_envelope(&w, grid)?;
    for (i, x) in grid.points.iter().enumerate() {
        r.record(g[i] <= fv[i] * (1.0 + tol), || format!("f^■□({x}) = {} > f = {}", g[i], fv[i]));
    }
    let g2 = outer_envelope(&witness_set(&g, grid, degree), grid)?;
    for (i, x) in grid.points.iter().enumerate() {
        r.record(close(g[i], g2[i], tol), || format!("■□ not idempotent at {x}: {} vs {}", g[i], g2[i]));
    }
    let rhombus = inner_envelope_by_bisection(&w, grid)?;
    for (i, x) in grid.points.iter().enumerate() {
        r.record(close(1.0 / g[i], rhombus[i], tol), || format!("1/f^■□ ≠ (1/f)^♦◊ at {x}"));
    }

    let outer = outer_envelope(d, grid)?;
    let inner = inner_envelope_of_polar(d, grid)?;
    let bisect = inner_envelope_by_bisection(d, grid)?;
    for (i, x) in grid.points.iter().enumerate() {
        r.record(outer[i] >= 1.0, || format!("D^□({x}) < 1"));
        r.record(close(outer[i] * inner[i], 1.0, tol), || format!("D^□·(D°)^◊ ≠ 1 at {x}"));
        r.record(close(inner[i], bisect[i], tol), || format!("(D°)^◊ closed form ≠ bisection at {x}"));
    }
    for u in &d.members {
        let ok = grid.points.iter().zip(&outer).all(|(x, o)| eval_laurent(u, x).abs_f64() <= o * (1.0 + tol));
        r.record(ok, || "a member of D lies outside (D^□)^■".to_string());
    }
    let e = d.union(&w);
    let outer_e = outer_envelope(&e, grid)?;
    for (i, x) in grid.points.iter().enumerate() {
        r.record(outer[i] <= outer_e[i] * (1.0 + tol), || format!("monotonicity fails at {x}"));
    }
    Ok(r)
}

/// Checks that `f·g`, `f+g`, `max(f,g)`, `C·f` (`C ∈ {1, 2}`) and `f`, `g`
/// themselves are `≥ 1` and submultiplicative on product pairs of the grid,
/// and that `1/f` satisfies `φ(x)φ(y) ≤ φ(xy)`.
pub fn semicharacter_closure_suite(
    f: &Semicharacter,
    g: &Semicharacter,
    grid: &GridDomain,
    tol: f64,
) -> Result<AxiomReport, EnvelopeError> {
    if !grid.closed_under_product {
        return Err(EnvelopeError::GridNotClosed);
    }
    let mut r = AxiomReport::default();
    let pairs = grid.product_pairs();
    let candidates = [
        f.clone(),
        g.clone(),
        Semicharacter::product(f.clone(), g.clone()),
        Semicharacter::sum(f.clone(), g.clone()),
        Semicharacter::max(f.clone(), g.clone()),
        Semicharacter::scale(BigRational::one(), f.clone()),
        Semicharacter::scale(BigRational::from_integer(2.into()), f.clone()),
    ];
    for h in &candidates {
        for x in &grid.points {
            r.record(h.eval(x) >= 1.0 - tol, || format!("{h}({x}) < 1"));
        }
        for &(i, j, k) in &pairs {
            let (x, y, xy) = (&grid.points[i], &grid.points[j], &grid.points[k]);
            let ok = match (h.eval_exact(xy), h.eval_exact(x), h.eval_exact(y)) {
                (Some(a), Some(b), Some(c)) => a <= b * c,
                _ => h.eval(xy) <= h.eval(x) * h.eval(y) * (1.0 + tol),
            };
            r.record(ok, || format!("{h} not submultiplicative at ({x}, {y})"));
        }
    }
    for &(i, j, k) in &pairs {
        let (x, y, xy) = (&grid.points[i], &grid.points[j], &grid.points[k]);
        let ok = (1.0 / f.eval(x)) * (1.0 / f.eval(y)) <= (1.0 / f.eval(xy)) * (1.0 + tol);
        r.record(ok, || format!("1/{f} fails the inverse inequality at ({x}, {y})"));
    }
    Ok(r)
}

/// Result of majorizing a semicharacter on ℂ× by some `r_C^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Majorization {
    pub c: BigRational,
    pub n: u32,
    pub report: AxiomReport,
}

/// `C = max g` over annulus points `1/2 ≤ |x| ≤ 2`, `N = ⌈log₂ C⌉`, and a
/// check of `g ≤ r_C^N` on the whole grid.
pub fn majorization_gl1(g: &Semicharacter, grid: &GridDomain, tol: f64) -> Majorization {
    let mut c = BigRational::one();
    for x in grid.annulus() {
        let v = g.eval_exact(x).or_else(|| BigRational::from_float(g.eval(x))).unwrap_or_else(BigRational::one);
        c = c.max(v);
    }
    let mut n = 0u32;
    let mut p = BigRational::one();
    while p < c {
        p *= BigRational::from_integer(BigInt::from(2));
        n += 1;
    }
    let bound = Semicharacter::Rcn { c: c.clone(), n };
    let mut report = AxiomReport::default();
    for x in &grid.points {
        let ok = match (g.eval_exact(x), bound.eval_exact(x)) {
            (Some(a), Some(b)) => a <= b,
            _ => g.eval(x) <= bound.eval(x) * (1.0 + tol),
        };
        report.record(ok, || format!("{g}({x}) exceeds {bound}"));
    }
    Majorization { c, n, report }
}
