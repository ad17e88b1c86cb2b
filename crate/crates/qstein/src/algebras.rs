//! The eight concrete based Hopf algebras and their dual pairings.
//!
//! | id               | basis   | product          | coproduct                     |
//! |------------------|---------|------------------|-------------------------------|
//! | `FunZ`           | `1_n`   | idempotents      | `Σ_m 1_m ⊗ 1_{n-m}`           |
//! | `ChargesZ`       | `δ^n`   | `δ^{k+l}`        | `δ^n ⊗ δ^n`                   |
//! | `LaurentCx`      | `z^n`   | `z^{k+l}`        | `z^n ⊗ z^n`                   |
//! | `CurrentsCx`     | `ζ_n`   | idempotents      | `Σ_l ζ_l ⊗ ζ_{n-l}`           |
//! | `PolyC`          | `t^k`   | `t^{k+l}`        | `Σ_i (k i) t^{k-i} ⊗ t^i`     |
//! | `CurrentsC`      | `τ^k`   | `τ^{k+l}`        | `Σ_i (k i) τ^{k-i} ⊗ τ^i`     |
//! | `CyclicFun(m)`   | `1_x`   | idempotents      | `Σ_y 1_y ⊗ 1_{x-y}`           |
//! | `CyclicCharges(m)` | `δ^x` | `δ^{x+y}`        | `δ^x ⊗ δ^x`                   |
//!
//! `FunZ` and `CurrentsCx` have a unit and coproducts that are infinite sums.
//! An [`Algebra`] carries a `truncation` bounding those sums.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::combination::{tensor, Combination, Tensor};
use crate::hopf::{self, AxiomReport, DualPair, HopfAlgebra};
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("element indexed by {found:?} used where {expected:?} was required")]
    IndexSetMismatch { expected: IndexSet, found: IndexSet },
    #[error("index {0} is not a valid natural-number index")]
    NegativeIndex(i64),
    #[error("{function} and {dual} do not form a dual pair")]
    PairMismatch { function: AlgebraId, dual: AlgebraId },
    #[error("cyclic order must be positive")]
    ZeroOrder,
    #[error("unknown algebra {0:?}")]
    UnknownAlgebra(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexSet {
    Z,
    N,
    Zmod(u32),
}

impl IndexSet {
    /// Canonical representative of `n`, or an error for negative ℕ indices.
    pub fn normalize(self, n: i64) -> Result<i64, AlgebraError> {
        match self {
            IndexSet::Z => Ok(n),
            IndexSet::N if n < 0 => Err(AlgebraError::NegativeIndex(n)),
            IndexSet::N => Ok(n),
            IndexSet::Zmod(m) => Ok(n.rem_euclid(m as i64)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraId {
    FunZ,
    ChargesZ,
    LaurentCx,
    CurrentsCx,
    PolyC,
    CurrentsC,
    CyclicFun(u32),
    CyclicCharges(u32),
}

impl AlgebraId {
    pub const ALL_INFINITE: [AlgebraId; 6] = [
        AlgebraId::FunZ,
        AlgebraId::ChargesZ,
        AlgebraId::LaurentCx,
        AlgebraId::CurrentsCx,
        AlgebraId::PolyC,
        AlgebraId::CurrentsC,
    ];

    pub fn index_set(self) -> IndexSet {
        match self {
            AlgebraId::FunZ | AlgebraId::ChargesZ | AlgebraId::LaurentCx | AlgebraId::CurrentsCx => IndexSet::Z,
            AlgebraId::PolyC | AlgebraId::CurrentsC => IndexSet::N,
            AlgebraId::CyclicFun(m) | AlgebraId::CyclicCharges(m) => IndexSet::Zmod(m),
        }
    }

    /// Whether the product is diagonal on the basis (all basis elements are
    /// orthogonal idempotents).
    pub fn is_pointwise(self) -> bool {
        matches!(self, AlgebraId::FunZ | AlgebraId::CurrentsCx | AlgebraId::CyclicFun(_))
    }

    /// Basis indices with `|n| ≤ w` (ℤ), `k ≤ w` (ℕ) or all residues (ℤ_m).
    pub fn basis_window(self, w: u32) -> Vec<i64> {
        let w = w as i64;
        match self.index_set() {
            IndexSet::Z => (-w..=w).collect(),
            IndexSet::N => (0..=w).collect(),
            IndexSet::Zmod(m) => (0..m as i64).collect(),
        }
    }

    pub fn in_window(self, n: i64, w: u32) -> bool {
        match self.index_set() {
            IndexSet::Zmod(_) => true,
            _ => n.unsigned_abs() <= w as u64,
        }
    }

    /// The algebra paired with this one, and whether this one is the
    /// function side of the pairing.
    pub fn dual(self) -> (AlgebraId, bool) {
        match self {
            AlgebraId::FunZ => (AlgebraId::ChargesZ, true),
            AlgebraId::ChargesZ => (AlgebraId::FunZ, false),
            AlgebraId::LaurentCx => (AlgebraId::CurrentsCx, true),
            AlgebraId::CurrentsCx => (AlgebraId::LaurentCx, false),
            AlgebraId::PolyC => (AlgebraId::CurrentsC, true),
            AlgebraId::CurrentsC => (AlgebraId::PolyC, false),
            AlgebraId::CyclicFun(m) => (AlgebraId::CyclicCharges(m), true),
            AlgebraId::CyclicCharges(m) => (AlgebraId::CyclicFun(m), false),
        }
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraId::FunZ => write!(f, "FunZ"),
            AlgebraId::ChargesZ => write!(f, "ChargesZ"),
            AlgebraId::LaurentCx => write!(f, "LaurentCx"),
            AlgebraId::CurrentsCx => write!(f, "CurrentsCx"),
            AlgebraId::PolyC => write!(f, "PolyC"),
            AlgebraId::CurrentsC => write!(f, "CurrentsC"),
            AlgebraId::CyclicFun(m) => write!(f, "CyclicFun:{m}"),
            AlgebraId::CyclicCharges(m) => write!(f, "CyclicCharges:{m}"),
        }
    }
}

/// Case-insensitive; cyclic algebras are written `CyclicFun:4`.
impl FromStr for AlgebraId {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let unknown = || AlgebraError::UnknownAlgebra(s.to_string());
        let (name, order) = match lower.split_once(':') {
            Some((n, m)) => (n.to_string(), Some(m.parse::<u32>().map_err(|_| unknown())?)),
            None => (lower.clone(), None),
        };
        let id = match (name.as_str(), order) {
            ("funz", None) => AlgebraId::FunZ,
            ("chargesz", None) => AlgebraId::ChargesZ,
            ("laurentcx", None) => AlgebraId::LaurentCx,
            ("currentscx", None) => AlgebraId::CurrentsCx,
            ("polyc", None) => AlgebraId::PolyC,
            ("currentsc", None) => AlgebraId::CurrentsC,
            ("cyclicfun", Some(0)) | ("cycliccharges", Some(0)) => return Err(AlgebraError::ZeroOrder),
            ("cyclicfun", Some(m)) => AlgebraId::CyclicFun(m),
            ("cycliccharges", Some(m)) => AlgebraId::CyclicCharges(m),
            _ => return Err(unknown()),
        };
        Ok(id)
    }
}

/// A finitely supported element tagged with its index set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedElem {
    index_set: IndexSet,
    coeffs: Combination<i64>,
}

pub type TensorElem = Tensor<i64>;

impl GradedElem {
    pub fn new(
        index_set: IndexSet,
        terms: impl IntoIterator<Item = (i64, GaussianRational)>,
    ) -> Result<Self, AlgebraError> {
        let mut coeffs = Combination::zero();
        for (n, c) in terms {
            coeffs.add_term(index_set.normalize(n)?, c);
        }
        Ok(Self { index_set, coeffs })
    }

    pub fn from_combination(index_set: IndexSet, c: &Combination<i64>) -> Result<Self, AlgebraError> {
        Self::new(index_set, c.iter().map(|(n, x)| (*n, x.clone())))
    }

    pub fn zero(index_set: IndexSet) -> Self {
        Self { index_set, coeffs: Combination::zero() }
    }

    pub fn basis(alg: AlgebraId, n: i64) -> Result<Self, AlgebraError> {
        Self::new(alg.index_set(), [(n, GaussianRational::one())])
    }

    pub fn index_set(&self) -> IndexSet {
        self.index_set
    }

    pub fn coeffs(&self) -> &Combination<i64> {
        &self.coeffs
    }

    pub fn coeff(&self, n: i64) -> GaussianRational {
        self.coeffs.coeff(&n)
    }
}

/// One of the concrete algebras with a truncation for its infinite sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Algebra {
    pub id: AlgebraId,
    pub truncation: u32,
}

impl Algebra {
    pub fn new(id: AlgebraId, truncation: u32) -> Self {
        Self { id, truncation }
    }

    /// An algebra whose truncated sums are long enough for every identity
    /// to hold exactly on basis elements with legs inside `window`.
    pub fn for_window(id: AlgebraId, window: u32) -> Self {
        Self::new(id, 4 * window.max(1))
    }

    fn check(&self, u: &GradedElem) -> Result<(), AlgebraError> {
        let expected = self.id.index_set();
        if u.index_set != expected {
            return Err(AlgebraError::IndexSetMismatch { expected, found: u.index_set });
        }
        Ok(())
    }

    fn wrap(&self, c: Combination<i64>) -> GradedElem {
        GradedElem { index_set: self.id.index_set(), coeffs: c }
    }

    fn reduce(&self, n: i64) -> i64 {
        match self.id.index_set() {
            IndexSet::Zmod(m) => n.rem_euclid(m as i64),
            _ => n,
        }
    }

    fn symmetric_range(&self) -> std::ops::RangeInclusive<i64> {
        let t = self.truncation as i64;
        -t..=t
    }

    pub fn mul(&self, u: &GradedElem, v: &GradedElem) -> Result<GradedElem, AlgebraError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.wrap(hopf::mul(self, &u.coeffs, &v.coeffs)))
    }

    pub fn unit_elem(&self) -> GradedElem {
        self.wrap(HopfAlgebra::unit(self))
    }

    pub fn coproduct(&self, u: &GradedElem) -> Result<TensorElem, AlgebraError> {
        self.check(u)?;
        Ok(hopf::coproduct(self, &u.coeffs))
    }

    pub fn counit(&self, u: &GradedElem) -> Result<GaussianRational, AlgebraError> {
        self.check(u)?;
        Ok(hopf::counit(self, &u.coeffs))
    }

    pub fn antipode(&self, u: &GradedElem) -> Result<GradedElem, AlgebraError> {
        self.check(u)?;
        Ok(self.wrap(hopf::antipode(self, &u.coeffs)))
    }

    /// κ(a) = a⊗a, ε(a) = 1 and a·σ(a) = 1. Infinite sums are compared on
    /// legs within half the truncation, where the truncated unit is exact.
    pub fn grouplike_check(&self, a: &GradedElem) -> bool {
        if self.check(a).is_err() || a.coeffs.is_zero() {
            return false;
        }
        let half = self.truncation / 2;
        let keep = |n: &i64| self.id.in_window(*n, half);
        let k = hopf::coproduct(self, &a.coeffs).filter(|(x, y)| keep(x) && keep(y));
        let aa = tensor(&a.coeffs, &a.coeffs).filter(|(x, y)| keep(x) && keep(y));
        let inverse = hopf::mul(self, &a.coeffs, &hopf::antipode(self, &a.coeffs)).filter(keep);
        k == aa && hopf::counit(self, &a.coeffs).is_one() && inverse == HopfAlgebra::unit(self).filter(keep)
    }

    /// The full axiom suite on the basis window.
    pub fn check_axioms(id: AlgebraId, window: u32) -> AxiomReport {
        let alg = Self::for_window(id, window);
        let basis = id.basis_window(window);
        hopf::check_hopf_axioms(&alg, &basis, |n| id.in_window(*n, window))
    }
}

fn binomial(n: i64, k: i64) -> GaussianRational {
    GaussianRational::from(num_integer::binomial(BigInt::from(n), BigInt::from(k)))
}

impl HopfAlgebra for Algebra {
    type Index = i64;

    fn mul_basis(&self, a: &i64, b: &i64) -> Combination<i64> {
        if self.id.is_pointwise() {
            if a == b {
                Combination::basis(*a)
            } else {
                Combination::zero()
            }
        } else {
            Combination::basis(self.reduce(a + b))
        }
    }

    fn unit(&self) -> Combination<i64> {
        match self.id {
            AlgebraId::FunZ | AlgebraId::CurrentsCx => {
                self.symmetric_range().map(|n| (n, GaussianRational::one())).collect()
            }
            AlgebraId::CyclicFun(m) => (0..m as i64).map(|n| (n, GaussianRational::one())).collect(),
            _ => Combination::basis(0),
        }
    }

    fn coproduct_basis(&self, a: &i64) -> Tensor<i64> {
        let n = *a;
        match self.id {
            AlgebraId::FunZ | AlgebraId::CurrentsCx => {
                self.symmetric_range().map(|m| ((m, n - m), GaussianRational::one())).collect()
            }
            AlgebraId::CyclicFun(m) => {
                (0..m as i64).map(|y| ((y, self.reduce(n - y)), GaussianRational::one())).collect()
            }
            AlgebraId::ChargesZ | AlgebraId::LaurentCx | AlgebraId::CyclicCharges(_) => Combination::basis((n, n)),
            AlgebraId::PolyC | AlgebraId::CurrentsC => (0..=n).map(|i| ((n - i, i), binomial(n, i))).collect(),
        }
    }

    fn counit_basis(&self, a: &i64) -> GaussianRational {
        match self.id {
            AlgebraId::ChargesZ | AlgebraId::LaurentCx | AlgebraId::CyclicCharges(_) => GaussianRational::one(),
            _ if *a == 0 => GaussianRational::one(),
            _ => GaussianRational::zero(),
        }
    }

    fn antipode_basis(&self, a: &i64) -> Combination<i64> {
        match self.id {
            AlgebraId::PolyC | AlgebraId::CurrentsC => {
                let sign = if a % 2 == 0 { 1 } else { -1 };
                Combination::term(*a, sign.into())
            }
            _ => Combination::basis(self.reduce(-a)),
        }
    }
}

/// A function-side algebra together with its dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConcretePair {
    function: Algebra,
    dual: Algebra,
}

impl ConcretePair {
    /// Pairs an algebra with its dual, in either order, since every pairing
    /// here is symmetric. `truncation` bounds infinite sums on both sides.
    pub fn new(function: AlgebraId, dual: AlgebraId, truncation: u32) -> Result<Self, AlgebraError> {
        if function.dual().0 != dual {
            return Err(AlgebraError::PairMismatch { function, dual });
        }
        Ok(Self { function: Algebra::new(function, truncation), dual: Algebra::new(dual, truncation) })
    }

    pub fn all(truncation: u32) -> Vec<ConcretePair> {
        let mut out = Vec::new();
        for id in [AlgebraId::FunZ, AlgebraId::LaurentCx, AlgebraId::PolyC] {
            out.push(Self::new(id, id.dual().0, truncation).expect("canonical pair"));
        }
        for m in [1, 2, 3, 4, 5] {
            out.push(
                Self::new(AlgebraId::CyclicFun(m), AlgebraId::CyclicCharges(m), truncation).expect("canonical pair"),
            );
        }
        out
    }

    pub fn function_side(&self) -> AlgebraId {
        self.function.id
    }

    pub fn dual_side(&self) -> AlgebraId {
        self.dual.id
    }

    pub fn pair(&self, u: &GradedElem, a: &GradedElem) -> Result<GaussianRational, AlgebraError> {
        self.function.check(u)?;
        self.dual.check(a)?;
        Ok(hopf::pair(self, &u.coeffs, &a.coeffs))
    }

    pub fn check_duality(&self, window: u32) -> AxiomReport {
        let p = ConcretePair {
            function: Algebra::for_window(self.function.id, window),
            dual: Algebra::for_window(self.dual.id, window),
        };
        hopf::check_duality(&p, &self.function.id.basis_window(window), &self.dual.id.basis_window(window))
    }
}

impl DualPair for ConcretePair {
    type Primal = Algebra;
    type Dual = Algebra;

    fn primal(&self) -> &Algebra {
        &self.function
    }

    fn dual(&self) -> &Algebra {
        &self.dual
    }

    fn pair_basis(&self, u: &i64, a: &i64) -> GaussianRational {
        if u != a {
            return GaussianRational::zero();
        }
        match self.function.id {
            AlgebraId::PolyC | AlgebraId::CurrentsC => (1..=*u).map(GaussianRational::from).product(),
            _ => GaussianRational::one(),
        }
    }
}

/// Pairing of `u` with `a`, where one of the two lives on the function side.
pub fn pair(
    function: AlgebraId,
    u: &GradedElem,
    dual: AlgebraId,
    a: &GradedElem,
) -> Result<GaussianRational, AlgebraError> {
    ConcretePair::new(function, dual, 0)?.pair(u, a)
}
