//! The skew Hopf construction over a quantum pair.
//!
//! Given a Hopf algebra `H` with a grouplike central `z`, a grouplike
//! central `ω` in the dual `H*`, and the operators `M*_ω` on `H` and `M*_z`
//! on `H*` satisfying `M*_ω(z) = q·z` and `M*_z(ω) = q·ω`, the algebra
//! `H ⊙ ℂ[t]` becomes a Hopf algebra [`SkewAlgebra`] with
//!
//! ```text
//! (a⊙t^k)(b⊙t^l) = a·(M*_ω)^k(b) ⊙ t^{k+l}
//! κ(a⊙t^k)       = Σ_i (k i)_q (a'⊙t^i) ⊗ (z^i a''⊙t^{k-i})
//! ε(a⊙t^k)       = ε_H(a) if k = 0, else 0
//! σ(a⊙t^k)       = (-1)^k q^{-k(k+1)/2} z^{-k} (M*_ω)^k(σ_H(a)) ⊙ t^k
//! ```
//!
//! and `H* ⊛ ℂ[τ]` becomes the dual Hopf algebra [`SkewDual`], paired by
//! `⟨a⊙t^k, α⊛τ^l⟩ = δ_{kl} ⟨a, α⟩ (k)!_q`.

use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebras::{Algebra, AlgebraId, ConcretePair, GradedElem};
use crate::combination::{tensor, Combination, Tensor};
use crate::hopf::{self, AxiomReport, DualPair, HopfAlgebra};
use crate::qcomb::{q_factorial, QBinomialTable};
use crate::scalar::{GaussianRational, QParam};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkewError {
    #[error("{0} has no quantum-pair realization; use LaurentCx or ChargesZ")]
    UnsupportedBase(AlgebraId),
    #[error("z is not invertible in the base algebra")]
    NonInvertibleZ,
    #[error("the data do not form a quantum pair")]
    NotAQuantumPair,
}

/// A linear operator on finitely supported elements of a concrete algebra.
pub type Operator = Arc<dyn Fn(&Combination<i64>) -> Combination<i64> + Send + Sync>;

/// Skew-algebra basis index `(base index, degree)`.
pub type SkewIndex = (i64, u32);
pub type SkewElem = Combination<SkewIndex>;

#[derive(Clone)]
pub struct QuantumPair {
    pub base: Algebra,
    pub dual_base: Algebra,
    pub z_elem: GradedElem,
    pub omega: GradedElem,
    /// `M*_ω` on `H`.
    pub omega_action: Operator,
    /// `M*_z` on `H*`.
    pub z_action_dual: Operator,
    pub q: QParam,
}

impl std::fmt::Debug for QuantumPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuantumPair")
            .field("base", &self.base.id)
            .field("z", &self.z_elem)
            .field("q", &self.q)
            .finish_non_exhaustive()
    }
}

impl QuantumPair {
    /// The pair `(z¹, δ^q)` on `LaurentCx` or `(δ¹, Σ qⁿ 1_n)` on `ChargesZ`:
    /// `M*_ω` dilates `e_n ↦ qⁿ e_n` and `M*_z` shifts `f_n ↦ f_{n-1}`.
    /// `truncation` bounds the infinite sum defining `ω` and the dual unit.
    pub fn dilation(base: AlgebraId, q: &QParam, truncation: u32) -> Result<Self, SkewError> {
        if !matches!(base, AlgebraId::LaurentCx | AlgebraId::ChargesZ) {
            return Err(SkewError::UnsupportedBase(base));
        }
        let dual = base.dual().0;
        let t = truncation as i64;
        let omega = GradedElem::new(dual.index_set(), (-t..=t).map(|n| (n, q.pow(n)))).expect("ℤ-indexed");
        let qq = q.clone();
        let omega_action: Operator =
            Arc::new(move |u: &Combination<i64>| u.iter().map(|(n, c)| (*n, c * &qq.pow(*n))).collect());
        let z_action_dual: Operator = Arc::new(|a: &Combination<i64>| a.map_index(|n| n - 1));
        Ok(Self {
            base: Algebra::new(base, truncation),
            dual_base: Algebra::new(dual, truncation),
            z_elem: GradedElem::basis(base, 1).expect("ℤ-indexed"),
            omega,
            omega_action,
            z_action_dual,
            q: q.clone(),
        })
    }

    /// The same pair with `z` replaced.
    pub fn with_z(mut self, z: GradedElem) -> Self {
        self.z_elem = z;
        self
    }

    fn z(&self) -> &Combination<i64> {
        self.z_elem.coeffs()
    }

    /// `σ_H(z)` when it inverts `z`.
    pub fn z_inverse(&self) -> Result<Combination<i64>, SkewError> {
        let inv = hopf::antipode(&self.base, self.z());
        let prod = hopf::mul(&self.base, self.z(), &inv);
        if prod == HopfAlgebra::unit(&self.base) {
            Ok(inv)
        } else {
            Err(SkewError::NonInvertibleZ)
        }
    }
}

/// Grouplikeness and centrality of `z` and `ω`, the two defining identities,
/// and agreement of the operator handles with the operators induced by the
/// pairing (`M*_ω(a) = Σ a'⟨a'', ω⟩`, `M*_z(α) = Σ α'⟨z, α''⟩`).
pub fn check_quantum_pair(p: &QuantumPair) -> bool {
    let t = p.base.truncation;
    let half = t / 2;
    let in_half = |n: &i64| n.unsigned_abs() <= half as u64;
    let z = p.z();
    if !p.base.grouplike_check(&p.z_elem) {
        return false;
    }
    let window: Vec<i64> = (-(half as i64)..=half as i64).collect();
    for n in &window {
        let e = Combination::basis(*n);
        if hopf::mul(&p.base, z, &e) != hopf::mul(&p.base, &e, z) {
            return false;
        }
        let o = p.omega.coeffs();
        if hopf::mul(&p.dual_base, o, &e).filter(in_half) != hopf::mul(&p.dual_base, &e, o).filter(in_half) {
            return false;
        }
    }
    if (p.omega_action)(z) != z.scale(p.q.value()) {
        return false;
    }
    let shifted = (p.z_action_dual)(p.omega.coeffs()).filter(in_half);
    if shifted != p.omega.coeffs().scale(p.q.value()).filter(in_half) {
        return false;
    }
    let o = p.omega.coeffs();
    let k = hopf::coproduct(&p.dual_base, o).filter(|(a, b)| in_half(a) && in_half(b));
    if k != tensor(o, o).filter(|(a, b)| in_half(a) && in_half(b)) || !hopf::counit(&p.dual_base, o).is_one() {
        return false;
    }
    let pairing = match ConcretePair::new(p.base.id, p.dual_base.id, t) {
        Ok(pairing) => pairing,
        Err(_) => return false,
    };
    for n in &window {
        let e = Combination::basis(*n);
        let induced: Combination<i64> = hopf::coproduct(&p.base, &e)
            .iter()
            .map(|((a, b), c)| (*a, c * &hopf::pair(&pairing, &Combination::basis(*b), o)))
            .collect();
        if (p.omega_action)(&e) != induced {
            return false;
        }
        let induced_dual: Combination<i64> = hopf::coproduct(&p.dual_base, &e)
            .iter()
            .map(|((a, b), c)| (*a, c * &hopf::pair(&pairing, z, &Combination::basis(*b))))
            .collect();
        if (p.z_action_dual)(&e) != induced_dual {
            return false;
        }
    }
    true
}

/// Cached `(k i)_q`, extended on demand.
#[derive(Debug, Clone)]
struct Binomials {
    q: QParam,
    table: QBinomialTable,
}

impl Binomials {
    fn new(q: &QParam) -> Self {
        Self { q: q.clone(), table: QBinomialTable::new(24, q) }
    }

    fn get(&self, n: u32, k: u32) -> GaussianRational {
        if n <= self.table.max_n() {
            self.table.get(n, k as i64)
        } else {
            QBinomialTable::new(n, &self.q).get(n, k as i64)
        }
    }
}

fn power(alg: &Algebra, x: &Combination<i64>, k: u32) -> Combination<i64> {
    (0..k).fold(HopfAlgebra::unit(alg), |acc, _| hopf::mul(alg, &acc, x))
}

fn iterate(op: &Operator, x: &Combination<i64>, k: u32) -> Combination<i64> {
    (0..k).fold(x.clone(), |acc, _| op(&acc))
}

/// `(-1)^k q^{-k(k+1)/2}`.
fn antipode_scalar(q: &QParam, k: u32) -> GaussianRational {
    let k = k as i64;
    let s = q.pow(-k * (k + 1) / 2);
    if k % 2 == 0 {
        s
    } else {
        -s
    }
}

/// `H ⊙ ℂ[t]` with the skew structure.
#[derive(Debug, Clone)]
pub struct SkewAlgebra {
    pair: QuantumPair,
    z_inv: Combination<i64>,
    binomials: Binomials,
}

impl SkewAlgebra {
    pub fn new(pair: QuantumPair) -> Result<Self, SkewError> {
        if !check_quantum_pair(&pair) {
            return Err(SkewError::NotAQuantumPair);
        }
        let z_inv = pair.z_inverse()?;
        let binomials = Binomials::new(&pair.q);
        Ok(Self { pair, z_inv, binomials })
    }

    pub fn pair(&self) -> &QuantumPair {
        &self.pair
    }

    pub fn q(&self) -> &QParam {
        &self.pair.q
    }

    fn lift(c: &Combination<i64>, k: u32) -> SkewElem {
        c.map_index(|n| (*n, k))
    }

    pub fn mul(&self, u: &SkewElem, v: &SkewElem) -> SkewElem {
        hopf::mul(self, u, v)
    }

    pub fn coproduct(&self, u: &SkewElem) -> Tensor<SkewIndex> {
        hopf::coproduct(self, u)
    }

    pub fn counit(&self, u: &SkewElem) -> GaussianRational {
        hopf::counit(self, u)
    }

    pub fn antipode(&self, u: &SkewElem) -> SkewElem {
        hopf::antipode(self, u)
    }
}

impl HopfAlgebra for SkewAlgebra {
    type Index = SkewIndex;

    fn mul_basis(&self, (a, k): &SkewIndex, (b, l): &SkewIndex) -> SkewElem {
        let twisted = iterate(&self.pair.omega_action, &Combination::basis(*b), *k);
        Self::lift(&hopf::mul(&self.pair.base, &Combination::basis(*a), &twisted), k + l)
    }

    fn unit(&self) -> SkewElem {
        Self::lift(&HopfAlgebra::unit(&self.pair.base), 0)
    }

    fn coproduct_basis(&self, (a, k): &SkewIndex) -> Tensor<SkewIndex> {
        let base = &self.pair.base;
        let ka = base.coproduct_basis(a);
        let mut out = Combination::zero();
        let mut z_pow = HopfAlgebra::unit(base);
        for i in 0..=*k {
            let b = self.binomials.get(*k, i);
            for ((x, y), c) in ka.iter() {
                let right = hopf::mul(base, &z_pow, &Combination::basis(*y));
                let left = Combination::basis((*x, i));
                out.add_scaled(&tensor(&left, &Self::lift(&right, k - i)), &(&b * c));
            }
            z_pow = hopf::mul(base, &z_pow, self.pair.z());
        }
        out
    }

    fn counit_basis(&self, (a, k): &SkewIndex) -> GaussianRational {
        if *k == 0 {
            self.pair.base.counit_basis(a)
        } else {
            GaussianRational::zero()
        }
    }

    fn antipode_basis(&self, (a, k): &SkewIndex) -> SkewElem {
        let base = &self.pair.base;
        let s = iterate(&self.pair.omega_action, &base.antipode_basis(a), *k);
        let zk = power(base, &self.z_inv, *k);
        Self::lift(&hopf::mul(base, &zk, &s), *k).scale(&antipode_scalar(&self.pair.q, *k))
    }
}

/// `H* ⊛ ℂ[τ]` with the dual skew structure.
#[derive(Debug, Clone)]
pub struct SkewDual {
    pair: QuantumPair,
    omega_inv: Combination<i64>,
    binomials: Binomials,
}

impl SkewDual {
    pub fn new(pair: QuantumPair) -> Result<Self, SkewError> {
        if !check_quantum_pair(&pair) {
            return Err(SkewError::NotAQuantumPair);
        }
        if !pair.dual_base.id.is_pointwise() {
            return Err(SkewError::UnsupportedBase(pair.base.id));
        }
        let omega_inv = hopf::antipode(&pair.dual_base, pair.omega.coeffs());
        let binomials = Binomials::new(&pair.q);
        Ok(Self { pair, omega_inv, binomials })
    }

    /// `ω^i * α` for any integer `i`. The dual base is pointwise, so this
    /// scales each `f_m` by the `i`-th power of the coefficient of `ω` at `m`.
    fn omega_times(&self, i: i64, a: &Combination<i64>) -> Combination<i64> {
        let w = if i >= 0 { self.pair.omega.coeffs() } else { &self.omega_inv };
        a.iter().map(|(m, c)| (*m, c * &w.coeff(m).pow_u(i.unsigned_abs()))).collect()
    }
}

impl HopfAlgebra for SkewDual {
    type Index = SkewIndex;

    fn mul_basis(&self, (a, k): &SkewIndex, (b, l): &SkewIndex) -> SkewElem {
        let shifted = iterate(&self.pair.z_action_dual, &Combination::basis(*b), *k);
        SkewAlgebra::lift(&hopf::mul(&self.pair.dual_base, &Combination::basis(*a), &shifted), k + l)
    }

    fn unit(&self) -> SkewElem {
        SkewAlgebra::lift(&HopfAlgebra::unit(&self.pair.dual_base), 0)
    }

    fn coproduct_basis(&self, (a, k): &SkewIndex) -> Tensor<SkewIndex> {
        let ka = self.pair.dual_base.coproduct_basis(a);
        let mut out = Combination::zero();
        for i in 0..=*k {
            let b = self.binomials.get(*k, i);
            for ((x, y), c) in ka.iter() {
                let right = self.omega_times(i as i64, &Combination::basis(*y));
                let left = Combination::basis((*x, i));
                out.add_scaled(&tensor(&left, &SkewAlgebra::lift(&right, k - i)), &(&b * c));
            }
        }
        out
    }

    fn counit_basis(&self, (a, k): &SkewIndex) -> GaussianRational {
        if *k == 0 {
            self.pair.dual_base.counit_basis(a)
        } else {
            GaussianRational::zero()
        }
    }

    fn antipode_basis(&self, (a, k): &SkewIndex) -> SkewElem {
        let s = iterate(&self.pair.z_action_dual, &self.pair.dual_base.antipode_basis(a), *k);
        let w = self.omega_times(-(*k as i64), &s);
        SkewAlgebra::lift(&w, *k).scale(&antipode_scalar(&self.pair.q, *k))
    }
}

/// The skew algebra, its dual and the pairing between them.
#[derive(Debug, Clone)]
pub struct SkewPair {
    primal: SkewAlgebra,
    dual: SkewDual,
    base_pairing: ConcretePair,
    factorials: Vec<GaussianRational>,
}

impl SkewPair {
    pub fn new(pair: QuantumPair) -> Result<Self, SkewError> {
        let base_pairing = ConcretePair::new(pair.base.id, pair.dual_base.id, pair.base.truncation)
            .map_err(|_| SkewError::UnsupportedBase(pair.base.id))?;
        let factorials = (0..=24).map(|k| q_factorial(k, &pair.q)).collect();
        Ok(Self { primal: SkewAlgebra::new(pair.clone())?, dual: SkewDual::new(pair)?, base_pairing, factorials })
    }

    pub fn skew_pair(&self, u: &SkewElem, a: &SkewElem) -> GaussianRational {
        hopf::pair(self, u, a)
    }
}

impl DualPair for SkewPair {
    type Primal = SkewAlgebra;
    type Dual = SkewDual;

    fn primal(&self) -> &SkewAlgebra {
        &self.primal
    }

    fn dual(&self) -> &SkewDual {
        &self.dual
    }

    fn pair_basis(&self, (a, k): &SkewIndex, (b, l): &SkewIndex) -> GaussianRational {
        if k != l {
            return GaussianRational::zero();
        }
        let base = self.base_pairing.pair_basis(a, b);
        if base.is_zero() {
            return base;
        }
        let fact = match self.factorials.get(*k as usize) {
            Some(f) => f.clone(),
            None => q_factorial(*k, &self.primal.pair.q),
        };
        &base * &fact
    }
}

/// Basis `|n| ≤ w, k ≤ w` shared by the skew algebra and its dual.
pub fn skew_window(w: u32) -> Vec<SkewIndex> {
    let w = w as i64;
    (-w..=w).flat_map(|n| (0..=w as u32).map(move |k| (n, k))).collect()
}

/// Hopf axioms for both sides and the duality identities on the window
/// `|n| ≤ window, k ≤ window`.
pub fn check_skew(base: AlgebraId, q: &QParam, window: u32) -> Result<AxiomReport, SkewError> {
    let qp = QuantumPair::dilation(base, q, 4 * window.max(1))?;
    let pair = SkewPair::new(qp)?;
    let basis = skew_window(window);
    let keep = |(n, _): &SkewIndex| n.unsigned_abs() <= window as u64;
    let mut report = hopf::check_hopf_axioms(pair.primal(), &basis, keep);
    report.merge(hopf::check_hopf_axioms(pair.dual(), &basis, keep));
    report.merge(hopf::check_duality(&pair, &basis, &basis));
    Ok(report)
}
