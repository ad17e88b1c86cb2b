//! The based-Hopf-algebra interface and the generic axiom checkers.
//!
//! An algebra supplies its structure constants on basis elements; the linear
//! extensions and every axiom check are written once here. Algebras whose
//! unit or coproduct is an infinite sum generate those sums up to an internal
//! truncation, and the checkers compare results only on terms whose legs all
//! satisfy a caller-supplied window predicate.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::combination::{tensor, Combination, Tensor};
use crate::scalar::GaussianRational;

pub trait HopfAlgebra {
    type Index: Ord + Clone + Debug;

    fn mul_basis(&self, a: &Self::Index, b: &Self::Index) -> Combination<Self::Index>;
    fn unit(&self) -> Combination<Self::Index>;
    fn coproduct_basis(&self, a: &Self::Index) -> Tensor<Self::Index>;
    fn counit_basis(&self, a: &Self::Index) -> GaussianRational;
    fn antipode_basis(&self, a: &Self::Index) -> Combination<Self::Index>;
}

pub fn mul<H: HopfAlgebra>(h: &H, u: &Combination<H::Index>, v: &Combination<H::Index>) -> Combination<H::Index> {
    let mut out = Combination::zero();
    for (a, x) in u.iter() {
        for (b, y) in v.iter() {
            out.add_scaled(&h.mul_basis(a, b), &(x * y));
        }
    }
    out
}

pub fn coproduct<H: HopfAlgebra>(h: &H, u: &Combination<H::Index>) -> Tensor<H::Index> {
    u.flat_map(|a| h.coproduct_basis(a))
}

pub fn counit<H: HopfAlgebra>(h: &H, u: &Combination<H::Index>) -> GaussianRational {
    u.fold_linear(|a| h.counit_basis(a))
}

pub fn antipode<H: HopfAlgebra>(h: &H, u: &Combination<H::Index>) -> Combination<H::Index> {
    u.flat_map(|a| h.antipode_basis(a))
}

/// Product in `H ⊗ H` with the componentwise rule `(a⊗b)(c⊗d) = ac ⊗ bd`.
pub fn tensor_mul<H: HopfAlgebra>(h: &H, x: &Tensor<H::Index>, y: &Tensor<H::Index>) -> Tensor<H::Index> {
    let mut out = Combination::zero();
    for ((a, b), s) in x.iter() {
        for ((c, d), t) in y.iter() {
            let ac = h.mul_basis(a, c);
            if ac.is_zero() {
                continue;
            }
            let bd = h.mul_basis(b, d);
            out.add_scaled(&tensor(&ac, &bd), &(s * t));
        }
    }
    out
}

/// `μ ∘ (f ⊗ g)` applied to a tensor.
fn mul_after<H: HopfAlgebra>(
    h: &H,
    t: &Tensor<H::Index>,
    f: impl Fn(&H::Index) -> Combination<H::Index>,
    g: impl Fn(&H::Index) -> Combination<H::Index>,
) -> Combination<H::Index> {
    let mut out = Combination::zero();
    for ((a, b), x) in t.iter() {
        out.add_scaled(&mul(h, &f(a), &g(b)), x);
    }
    out
}

/// Outcome of a suite of identity checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

/// Each of these compares two sides after discarding terms with a leg
/// outside the window.
pub fn check_coassociativity<H: HopfAlgebra>(
    h: &H,
    basis: &[H::Index],
    keep: &impl Fn(&H::Index) -> bool,
    report: &mut AxiomReport,
) {
    for a in basis {
        let k = h.coproduct_basis(a);
        let mut left: Combination<(H::Index, H::Index, H::Index)> = Combination::zero();
        let mut right: Combination<(H::Index, H::Index, H::Index)> = Combination::zero();
        for ((x, y), c) in k.iter() {
            for ((x1, x2), d) in h.coproduct_basis(x).iter() {
                left.add_term((x1.clone(), x2.clone(), y.clone()), c * d);
            }
            for ((y1, y2), d) in h.coproduct_basis(y).iter() {
                right.add_term((x.clone(), y1.clone(), y2.clone()), c * d);
            }
        }
        let in_window = |t: &(H::Index, H::Index, H::Index)| keep(&t.0) && keep(&t.1) && keep(&t.2);
        let ok = left.filter(in_window) == right.filter(in_window);
        report.record(ok, || format!("coassociativity fails at {a:?}"));
    }
}

pub fn check_counit_laws<H: HopfAlgebra>(
    h: &H,
    basis: &[H::Index],
    keep: &impl Fn(&H::Index) -> bool,
    report: &mut AxiomReport,
) {
    for a in basis {
        let k = h.coproduct_basis(a);
        let expected = Combination::basis(a.clone()).filter(keep);
        let mut left = Combination::zero();
        let mut right = Combination::zero();
        for ((x, y), c) in k.iter() {
            left.add_term(y.clone(), c * &h.counit_basis(x));
            right.add_term(x.clone(), c * &h.counit_basis(y));
        }
        report.record(left.filter(keep) == expected, || format!("left counit law fails at {a:?}"));
        report.record(right.filter(keep) == expected, || format!("right counit law fails at {a:?}"));
    }
}

pub fn check_antipode_axiom<H: HopfAlgebra>(
    h: &H,
    basis: &[H::Index],
    keep: &impl Fn(&H::Index) -> bool,
    report: &mut AxiomReport,
) {
    let unit = h.unit();
    for a in basis {
        let k = h.coproduct_basis(a);
        let expected = unit.scale(&h.counit_basis(a)).filter(keep);
        let left = mul_after(h, &k, |x| h.antipode_basis(x), |y| Combination::basis(y.clone()));
        let right = mul_after(h, &k, |x| Combination::basis(x.clone()), |y| h.antipode_basis(y));
        report.record(left.filter(keep) == expected, || format!("μ(σ⊗id)κ ≠ ιε at {a:?}"));
        report.record(right.filter(keep) == expected, || format!("μ(id⊗σ)κ ≠ ιε at {a:?}"));
    }
}

/// κ(uv) = κ(u)κ(v) and ε(uv) = ε(u)ε(v) on all ordered basis pairs.
pub fn check_multiplicativity<H: HopfAlgebra>(
    h: &H,
    basis: &[H::Index],
    keep: &impl Fn(&H::Index) -> bool,
    report: &mut AxiomReport,
) {
    let pair_keep = |t: &(H::Index, H::Index)| keep(&t.0) && keep(&t.1);
    let cops: Vec<_> = basis.iter().map(|a| h.coproduct_basis(a)).collect();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let ab = h.mul_basis(a, b);
            let left = coproduct(h, &ab).filter(pair_keep);
            let right = tensor_mul(h, &cops[i], &cops[j]).filter(pair_keep);
            report.record(left == right, || format!("κ not multiplicative at ({a:?}, {b:?})"));
            let eps = counit(h, &ab) == &h.counit_basis(a) * &h.counit_basis(b);
            report.record(eps, || format!("ε not multiplicative at ({a:?}, {b:?})"));
        }
    }
}

/// Unit laws, κ(1) = 1⊗1 and ε(1) = 1, all on the window.
pub fn check_unit<H: HopfAlgebra>(
    h: &H,
    basis: &[H::Index],
    keep: &impl Fn(&H::Index) -> bool,
    report: &mut AxiomReport,
) {
    let unit = h.unit();
    for a in basis {
        let e = Combination::basis(a.clone());
        report.record(mul(h, &unit, &e).filter(keep) == e.filter(keep), || format!("1·{a:?} ≠ {a:?}"));
        report.record(mul(h, &e, &unit).filter(keep) == e.filter(keep), || format!("{a:?}·1 ≠ {a:?}"));
    }
    let pair_keep = |t: &(H::Index, H::Index)| keep(&t.0) && keep(&t.1);
    let ok = coproduct(h, &unit).filter(pair_keep) == tensor(&unit, &unit).filter(pair_keep);
    report.record(ok, || "κ(1) ≠ 1⊗1".to_string());
    report.record(counit(h, &unit).is_one(), || "ε(1) ≠ 1".to_string());
}

/// The full suite: unit, coassociativity, counit laws, antipode axiom and
/// multiplicativity of κ and ε.
pub fn check_hopf_axioms<H: HopfAlgebra>(h: &H, basis: &[H::Index], keep: impl Fn(&H::Index) -> bool) -> AxiomReport {
    let mut report = AxiomReport::default();
    check_unit(h, basis, &keep, &mut report);
    check_coassociativity(h, basis, &keep, &mut report);
    check_counit_laws(h, basis, &keep, &mut report);
    check_antipode_axiom(h, basis, &keep, &mut report);
    check_multiplicativity(h, basis, &keep, &mut report);
    report
}

/// A bilinear pairing between a Hopf algebra and a dual one.
pub trait DualPair {
    type Primal: HopfAlgebra;
    type Dual: HopfAlgebra;

    fn primal(&self) -> &Self::Primal;
    fn dual(&self) -> &Self::Dual;
    fn pair_basis(
        &self,
        u: &<Self::Primal as HopfAlgebra>::Index,
        a: &<Self::Dual as HopfAlgebra>::Index,
    ) -> GaussianRational;
}

pub type PrimalIndex<P> = <<P as DualPair>::Primal as HopfAlgebra>::Index;
pub type DualIndex<P> = <<P as DualPair>::Dual as HopfAlgebra>::Index;

pub fn pair<P: DualPair>(p: &P, u: &Combination<PrimalIndex<P>>, a: &Combination<DualIndex<P>>) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for (i, x) in u.iter() {
        for (j, y) in a.iter() {
            let w = p.pair_basis(i, j);
            if !w.is_zero() {
                acc += &(&(x * y) * &w);
            }
        }
    }
    acc
}

/// `⟨u ⊗ v, T⟩ = Σ ⟨u, T'⟩⟨v, T''⟩` for a dual-side tensor `T`.
pub fn pair_tensor<P: DualPair>(
    p: &P,
    u: &PrimalIndex<P>,
    v: &PrimalIndex<P>,
    t: &Tensor<DualIndex<P>>,
) -> GaussianRational {
    pair_legs(t, |a| p.pair_basis(u, a), |b| p.pair_basis(v, b))
}

/// `Σ c·f(x)·g(y)` over the terms `c·x⊗y` of `t`, skipping `g` when `f`
/// vanishes.
fn pair_legs<B: Ord + Clone>(
    t: &Tensor<B>,
    f: impl Fn(&B) -> GaussianRational,
    g: impl Fn(&B) -> GaussianRational,
) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for ((x, y), c) in t.iter() {
        let fx = f(x);
        if fx.is_zero() {
            continue;
        }
        let gy = g(y);
        if !gy.is_zero() {
            acc += &(&(c * &fx) * &gy);
        }
    }
    acc
}

/// `⟨T, α ⊗ β⟩` for a primal-side tensor `T`.
pub fn pair_primal_tensor<P: DualPair>(
    p: &P,
    t: &Tensor<PrimalIndex<P>>,
    a: &DualIndex<P>,
    b: &DualIndex<P>,
) -> GaussianRational {
    pair_legs(t, |u| p.pair_basis(u, a), |v| p.pair_basis(v, b))
}

/// Both adjunctions, the unit/counit relations and compatibility with the
/// antipodes, on every combination of the given basis elements.
pub fn check_duality<P: DualPair>(p: &P, primal_basis: &[PrimalIndex<P>], dual_basis: &[DualIndex<P>]) -> AxiomReport {
    let h = p.primal();
    let d = p.dual();
    let mut report = AxiomReport::default();
    let dual_cops: Vec<_> = dual_basis.iter().map(|a| d.coproduct_basis(a)).collect();
    for u in primal_basis {
        for v in primal_basis {
            let uv = h.mul_basis(u, v);
            for (a, ka) in dual_basis.iter().zip(&dual_cops) {
                let lhs = pair(p, &uv, &Combination::basis(a.clone()));
                let rhs = pair_tensor(p, u, v, ka);
                report.record(lhs == rhs, || format!("⟨uv, α⟩ ≠ ⟨u⊗v, κα⟩ at u={u:?}, v={v:?}, α={a:?}"));
            }
        }
    }
    for u in primal_basis {
        let ku = h.coproduct_basis(u);
        let eu = Combination::basis(u.clone());
        for a in dual_basis {
            for b in dual_basis {
                let lhs = pair_primal_tensor(p, &ku, a, b);
                let rhs = pair(p, &eu, &d.mul_basis(a, b));
                report.record(lhs == rhs, || format!("⟨κu, α⊗β⟩ ≠ ⟨u, αβ⟩ at u={u:?}, α={a:?}, β={b:?}"));
            }
        }
        let ok = pair(p, &eu, &d.unit()) == h.counit_basis(u);
        report.record(ok, || format!("⟨u, 1⟩ ≠ ε(u) at {u:?}"));
    }
    let primal_unit = h.unit();
    for a in dual_basis {
        let ea = Combination::basis(a.clone());
        let ok = pair(p, &primal_unit, &ea) == d.counit_basis(a);
        report.record(ok, || format!("⟨1, α⟩ ≠ ε(α) at {a:?}"));
        for u in primal_basis {
            let eu = Combination::basis(u.clone());
            let lhs = pair(p, &h.antipode_basis(u), &ea);
            let rhs = pair(p, &eu, &d.antipode_basis(a));
            report.record(lhs == rhs, || format!("⟨σu, α⟩ ≠ ⟨u, σα⟩ at u={u:?}, α={a:?}"));
        }
    }
    report
}
