//! The quantum group `az+b` in the basis `zⁿ⊡t^k` and its dual in the
//! basis `ζ_n⊛τ^k`, together with the presentation by generators
//! `z, z⁻¹, t` subject to `t·z = q·z·t`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::algebras::AlgebraId;
use crate::combination::{tensor, Combination, Tensor};
use crate::hopf::{self, AxiomReport, DualPair, HopfAlgebra};
use crate::qcomb::{q_factorial, QBinomialTable};
use crate::scalar::{GaussianRational, QParam};
use crate::skew::{QuantumPair, SkewPair};

/// `(n, k)` stands for `zⁿ⊡t^k` on the primal side and `ζ_n⊛τ^k` on the
/// dual side.
pub type AzbIndex = (i64, u32);
pub type AzbElem = Combination<AzbIndex>;
pub type AzbDualElem = Combination<AzbIndex>;

fn sign(k: u32) -> GaussianRational {
    if k.is_multiple_of(2) {
        GaussianRational::one()
    } else {
        -GaussianRational::one()
    }
}

fn triangular(k: u32) -> i64 {
    let k = k as i64;
    k * (k + 1) / 2
}

/// q-binomials up to `n = 24`, built on first use.
#[derive(Debug, Clone)]
struct Binomials {
    q: QParam,
    table: std::sync::OnceLock<QBinomialTable>,
}

impl Binomials {
    fn new(q: &QParam) -> Self {
        Self { q: q.clone(), table: std::sync::OnceLock::new() }
    }

    fn get(&self, n: u32, k: u32) -> GaussianRational {
        let table = self.table.get_or_init(|| QBinomialTable::new(24, &self.q));
        if n <= table.max_n() {
            table.get(n, k as i64)
        } else {
            QBinomialTable::new(n, &self.q).get(n, k as i64)
        }
    }
}

/// `az+b` at parameter `q`.
#[derive(Debug, Clone)]
pub struct Azb {
    q: QParam,
    binomials: Binomials,
    co_opposite: bool,
}

impl Azb {
    pub fn new(q: &QParam) -> Self {
        Self { q: q.clone(), binomials: Binomials::new(q), co_opposite: false }
    }

    /// The same algebra with the flipped coproduct `κ^cop = flip ∘ κ`.
    pub fn co_opposite(q: &QParam) -> Self {
        Self { co_opposite: true, ..Self::new(q) }
    }

    pub fn q(&self) -> &QParam {
        &self.q
    }
}

impl HopfAlgebra for Azb {
    type Index = AzbIndex;

    fn mul_basis(&self, (m, k): &AzbIndex, (n, l): &AzbIndex) -> AzbElem {
        Combination::term((m + n, k + l), self.q.pow(*k as i64 * n))
    }

    fn unit(&self) -> AzbElem {
        Combination::basis((0, 0))
    }

    fn coproduct_basis(&self, (n, k): &AzbIndex) -> Tensor<AzbIndex> {
        (0..=*k)
            .map(|i| {
                let (a, b) = ((*n, i), (n + i as i64, k - i));
                let legs = if self.co_opposite { (b, a) } else { (a, b) };
                (legs, self.binomials.get(*k, i))
            })
            .collect()
    }

    /// `z` is grouplike and `ε(t) = 0`, so `ε(zⁿ⊡t^k) = [k = 0]`.
    fn counit_basis(&self, (_, k): &AzbIndex) -> GaussianRational {
        if *k == 0 {
            GaussianRational::one()
        } else {
            GaussianRational::zero()
        }
    }

    fn antipode_basis(&self, (n, k): &AzbIndex) -> AzbElem {
        let e = -triangular(*k) - *k as i64 * n;
        Combination::term((-(*k as i64) - n, *k), &sign(*k) * &self.q.pow(e))
    }
}

/// The dual of `az+b`. Its unit and coproduct are infinite sums over the
/// `ζ` index; `truncation` bounds them.
#[derive(Debug, Clone)]
pub struct AzbDual {
    q: QParam,
    truncation: u32,
    binomials: Binomials,
}

impl AzbDual {
    pub fn new(q: &QParam, truncation: u32) -> Self {
        Self { q: q.clone(), truncation, binomials: Binomials::new(q) }
    }
}

impl HopfAlgebra for AzbDual {
    type Index = AzbIndex;

    fn mul_basis(&self, (m, k): &AzbIndex, (n, l): &AzbIndex) -> AzbDualElem {
        if *m == n - *k as i64 {
            Combination::basis((*m, k + l))
        } else {
            Combination::zero()
        }
    }

    fn unit(&self) -> AzbDualElem {
        let t = self.truncation as i64;
        (-t..=t).map(|n| ((n, 0), GaussianRational::one())).collect()
    }

    fn coproduct_basis(&self, (n, k): &AzbIndex) -> Tensor<AzbIndex> {
        let t = self.truncation as i64;
        let mut out = Combination::zero();
        for m in -t..=t {
            for i in 0..=*k {
                let c = &self.binomials.get(*k, i) * &self.q.pow(i as i64 * (n - m));
                out.add_term(((m, i), (n - m, k - i)), c);
            }
        }
        out
    }

    /// The counit is evaluation at the unit `z⁰⊡t⁰`, so it is supported on
    /// `(0, 0)` alone.
    fn counit_basis(&self, a: &AzbIndex) -> GaussianRational {
        if *a == (0, 0) {
            GaussianRational::one()
        } else {
            GaussianRational::zero()
        }
    }

    fn antipode_basis(&self, (n, k): &AzbIndex) -> AzbDualElem {
        let kk = *k as i64;
        let e = -triangular(*k) + kk * (n + kk);
        Combination::term((-n - kk, *k), &sign(*k) * &self.q.pow(e))
    }
}

/// `az+b`, its dual, and the pairing `⟨zⁿ⊡t^k, ζ_m⊛τ^l⟩ = δ_{nm} δ_{kl} (k)!_q`.
#[derive(Debug, Clone)]
pub struct AzbPair {
    primal: Azb,
    dual: AzbDual,
    factorials: Vec<GaussianRational>,
}

impl AzbPair {
    pub fn new(q: &QParam, truncation: u32) -> Self {
        Self {
            primal: Azb::new(q),
            dual: AzbDual::new(q, truncation),
            factorials: (0..=24).map(|k| q_factorial(k, q)).collect(),
        }
    }
}

impl DualPair for AzbPair {
    type Primal = Azb;
    type Dual = AzbDual;

    fn primal(&self) -> &Azb {
        &self.primal
    }

    fn dual(&self) -> &AzbDual {
        &self.dual
    }

    fn pair_basis(&self, u: &AzbIndex, a: &AzbIndex) -> GaussianRational {
        if u != a {
            return GaussianRational::zero();
        }
        match self.factorials.get(u.1 as usize) {
            Some(f) => f.clone(),
            None => q_factorial(u.1, &self.primal.q),
        }
    }
}

pub fn azb_mul(q: &QParam, u: &AzbElem, v: &AzbElem) -> AzbElem {
    hopf::mul(&Azb::new(q), u, v)
}

pub fn azb_coproduct(q: &QParam, u: &AzbElem) -> Tensor<AzbIndex> {
    hopf::coproduct(&Azb::new(q), u)
}

pub fn azb_counit(u: &AzbElem) -> GaussianRational {
    u.iter().filter(|((_, k), _)| *k == 0).map(|(_, c)| c.clone()).sum()
}

pub fn azb_antipode(q: &QParam, u: &AzbElem) -> AzbElem {
    hopf::antipode(&Azb::new(q), u)
}

pub fn azb_dual_mul(q: &QParam, a: &AzbDualElem, b: &AzbDualElem) -> AzbDualElem {
    hopf::mul(&AzbDual::new(q, 0), a, b)
}

pub fn azb_dual_coproduct(q: &QParam, a: &AzbDualElem, window: u32) -> Tensor<AzbIndex> {
    hopf::coproduct(&AzbDual::new(q, window), a)
}

pub fn azb_dual_counit(a: &AzbDualElem) -> GaussianRational {
    a.coeff(&(0, 0))
}

pub fn azb_dual_antipode(q: &QParam, a: &AzbDualElem) -> AzbDualElem {
    hopf::antipode(&AzbDual::new(q, 0), a)
}

pub fn azb_pair(q: &QParam, u: &AzbElem, a: &AzbDualElem) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for (i, x) in u.iter() {
        let y = a.coeff(i);
        if !y.is_zero() {
            acc += &(&(x * &y) * &q_factorial(i.1, q));
        }
    }
    acc
}

/// Basis box `|n| ≤ w, k ≤ w`.
pub fn azb_window(w: u32) -> Vec<AzbIndex> {
    let w = w as i64;
    (-w..=w).flat_map(|n| (0..=w as u32).map(move |k| (n, k))).collect()
}

/// Basis elements of degree `|n| + k ≤ d`.
pub fn azb_degree_window(d: u32) -> Vec<AzbIndex> {
    azb_window(d).into_iter().filter(|(n, k)| n.unsigned_abs() + *k as u64 <= d as u64).collect()
}

/// The Hopf axioms for `az+b` on the window box.
pub fn check_azb_hopf(q: &QParam, window: u32) -> AxiomReport {
    hopf::check_hopf_axioms(&Azb::new(q), &azb_window(window), |_| true)
}

/// The Hopf axioms for the dual on the window box, compared on legs with
/// `|n| ≤ window`. Every term of a windowed sum that can reach a kept leg
/// has `|m| ≤ 2·window`, so truncating there is exact.
pub fn check_azb_dual_hopf(q: &QParam, window: u32) -> AxiomReport {
    let d = AzbDual::new(q, 2 * window.max(1));
    hopf::check_hopf_axioms(&d, &azb_window(window), |(n, _)| n.unsigned_abs() <= window as u64)
}

pub fn check_azb_duality(q: &QParam, window: u32) -> AxiomReport {
    let p = AzbPair::new(q, 2 * window.max(1));
    let basis = azb_window(window);
    hopf::check_duality(&p, &basis, &basis)
}

/// Generators of `az+b` as an algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Z,
    Zinv,
    T,
}

/// A scalar multiple of a word in the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorWord {
    pub coeff: GaussianRational,
    pub letters: Vec<Letter>,
}

impl GeneratorWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { coeff: GaussianRational::one(), letters }
    }

    pub fn scaled(coeff: GaussianRational, letters: Vec<Letter>) -> Self {
        Self { coeff, letters }
    }

    /// Concatenation; coefficients multiply.
    pub fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { coeff: &self.coeff * &other.coeff, letters }
    }

    pub fn random(rng: &mut impl Rng, max_len: usize) -> Self {
        let len = rng.gen_range(0..=max_len);
        let letters = (0..len)
            .map(|_| match rng.gen_range(0..3) {
                0 => Letter::Z,
                1 => Letter::Zinv,
                _ => Letter::T,
            })
            .collect();
        let coeff = GaussianRational::complex(
            rng.gen_range(-5..=5),
            rng.gen_range(1..=4),
            rng.gen_range(-5..=5),
            rng.gen_range(1..=4),
        );
        Self { coeff, letters }
    }
}

/// The four rules `t z → q z t`, `t z⁻¹ → q⁻¹ z⁻¹ t`, `z z⁻¹ → 1`, `z⁻¹ z → 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    TZ,
    TZinv,
    ZZinv,
    ZinvZ,
}

/// Every position where a rule applies, in left-to-right order.
pub fn redexes(letters: &[Letter]) -> Vec<(usize, Rule)> {
    letters
        .windows(2)
        .enumerate()
        .filter_map(|(p, w)| {
            let rule = match (w[0], w[1]) {
                (Letter::T, Letter::Z) => Rule::TZ,
                (Letter::T, Letter::Zinv) => Rule::TZinv,
                (Letter::Z, Letter::Zinv) => Rule::ZZinv,
                (Letter::Zinv, Letter::Z) => Rule::ZinvZ,
                _ => return None,
            };
            Some((p, rule))
        })
        .collect()
}

/// One rewrite step at position `p`.
pub fn apply_rule(q: &QParam, w: &mut GeneratorWord, p: usize, rule: Rule) {
    match rule {
        Rule::TZ => {
            w.letters.swap(p, p + 1);
            w.coeff *= q.value();
        }
        Rule::TZinv => {
            w.letters.swap(p, p + 1);
            w.coeff *= &q.pow(-1);
        }
        Rule::ZZinv | Rule::ZinvZ => {
            w.letters.drain(p..p + 2);
        }
    }
}

/// Rewrites until no rule applies, letting `choose` pick which redex to
/// contract. Every step either deletes two letters or moves a `t` right
/// past a `z^{±1}`, so any strategy terminates.
pub fn rewrite_with(q: &QParam, w: &GeneratorWord, mut choose: impl FnMut(&[(usize, Rule)]) -> usize) -> GeneratorWord {
    let mut w = w.clone();
    loop {
        let r = redexes(&w.letters);
        if r.is_empty() {
            return w;
        }
        let (p, rule) = r[choose(&r)];
        apply_rule(q, &mut w, p, rule);
    }
}

/// Reads an irreducible word `z^{±n} t^k` as a basis element.
fn irreducible_to_elem(w: &GeneratorWord) -> AzbElem {
    let mut n = 0i64;
    let mut k = 0u32;
    for l in &w.letters {
        match l {
            Letter::Z => n += 1,
            Letter::Zinv => n -= 1,
            Letter::T => k += 1,
        }
    }
    Combination::term((n, k), w.coeff.clone())
}

/// Normal form by leftmost-first rewriting.
pub fn normal_form(q: &QParam, w: &GeneratorWord) -> AzbElem {
    irreducible_to_elem(&rewrite_with(q, w, |_| 0))
}

/// Normal form with redexes picked uniformly at random.
pub fn normal_form_random(q: &QParam, w: &GeneratorWord, rng: &mut impl Rng) -> AzbElem {
    irreducible_to_elem(&rewrite_with(q, w, |r| rng.gen_range(0..r.len())))
}

/// Structure constants of `az+b` and of its dual agree with those of the skew
/// construction over `LaurentCx` with the pair `(z, δ^q)` on the window box.
pub fn skew_iso_check(q: &QParam, window: u32) -> bool {
    let truncation = 4 * window.max(1);
    let skew = match QuantumPair::dilation(AlgebraId::LaurentCx, q, truncation).and_then(SkewPair::new) {
        Ok(s) => s,
        Err(_) => return false,
    };
    let azb = AzbPair::new(q, truncation);
    let basis = azb_window(window);
    let keep =
        |t: &(AzbIndex, AzbIndex)| t.0 .0.unsigned_abs() <= window as u64 && t.1 .0.unsigned_abs() <= window as u64;
    for a in &basis {
        for b in &basis {
            if skew.primal().mul_basis(a, b) != azb.primal().mul_basis(a, b)
                || skew.dual().mul_basis(a, b) != azb.dual().mul_basis(a, b)
            {
                return false;
            }
        }
        let same = skew.primal().coproduct_basis(a) == azb.primal().coproduct_basis(a)
            && skew.primal().counit_basis(a) == azb.primal().counit_basis(a)
            && skew.primal().antipode_basis(a) == azb.primal().antipode_basis(a)
            && skew.dual().coproduct_basis(a).filter(keep) == azb.dual().coproduct_basis(a).filter(keep)
            && skew.dual().counit_basis(a) == azb.dual().counit_basis(a)
            && skew.dual().antipode_basis(a) == azb.dual().antipode_basis(a)
            && skew.pair_basis(a, a) == azb.pair_basis(a, a);
        if !same {
            return false;
        }
    }
    true
}

fn classical_binomial(n: u32, k: u32) -> GaussianRational {
    GaussianRational::from(num_integer::binomial(BigInt::from(n), BigInt::from(k)))
}

/// At `q = 1` the structure constants are those of the group `ℂ×⋉ℂ`:
/// `z^{m+n}t^{k+l}`, ordinary binomials, `σ = (-1)^k z^{-k-n} t^k`, and the
/// dual convolution `(α*β)_{n,k} = Σ_j α_{n,j} β_{n+j,k-j}`.
pub fn classical_limit_check(window: u32) -> bool {
    let one = QParam::one();
    let truncation = 4 * window.max(1);
    let azb = Azb::new(&one);
    let dual = AzbDual::new(&one, truncation);
    let basis = azb_window(window);
    let keep =
        |t: &(AzbIndex, AzbIndex)| t.0 .0.unsigned_abs() <= window as u64 && t.1 .0.unsigned_abs() <= window as u64;
    for &(m, k) in &basis {
        for &(n, l) in &basis {
            if azb.mul_basis(&(m, k), &(n, l)) != Combination::basis((m + n, k + l)) {
                return false;
            }
            // (α*β)_{r,s} = Σ_j α_{r,j} β_{r+j,s-j} with α = e_{(m,k)}, β = e_{(n,l)}.
            let conv: AzbDualElem =
                if n == m + k as i64 { Combination::basis((m, k + l)) } else { Combination::zero() };
            if dual.mul_basis(&(m, k), &(n, l)) != conv {
                return false;
            }
        }
        let cop: Tensor<AzbIndex> =
            (0..=k).map(|i| (((m, i), (m + i as i64, k - i)), classical_binomial(k, i))).collect();
        let dual_cop: Tensor<AzbIndex> = (-(truncation as i64)..=truncation as i64)
            .flat_map(|r| (0..=k).map(move |i| (((r, i), (m - r, k - i)), classical_binomial(k, i))))
            .collect();
        let anti = Combination::term((-(k as i64) - m, k), sign(k));
        let dual_anti = Combination::term((-m - k as i64, k), sign(k));
        let eps = if k == 0 { GaussianRational::one() } else { GaussianRational::zero() };
        if azb.coproduct_basis(&(m, k)) != cop
            || dual.coproduct_basis(&(m, k)).filter(keep) != dual_cop.filter(keep)
            || azb.antipode_basis(&(m, k)) != anti
            || dual.antipode_basis(&(m, k)) != dual_anti
            || azb.counit_basis(&(m, k)) != eps
        {
            return false;
        }
    }
    true
}

/// Coefficients of `(z + t)^n` in normal form, computed with the rewrite
/// system, compared with `(n k)_q z^k t^{n-k}`.
pub fn verify_binomial_in_azb(q: &QParam, n: u32) -> bool {
    let z_plus_t: AzbElem =
        [((1, 0), GaussianRational::one()), ((0, 1), GaussianRational::one())].into_iter().collect();
    let mut words: Vec<GeneratorWord> = vec![GeneratorWord::new(Vec::new())];
    for _ in 0..n {
        words = words
            .iter()
            .flat_map(|w| {
                [Letter::Z, Letter::T].map(|l| {
                    let mut x = w.clone();
                    x.letters.push(l);
                    x
                })
            })
            .collect();
    }
    let mut by_rewriting = Combination::zero();
    for w in &words {
        by_rewriting = &by_rewriting + &normal_form(q, w);
    }
    let by_product = (0..n).fold(Combination::basis((0, 0)), |acc, _| azb_mul(q, &acc, &z_plus_t));
    let table = QBinomialTable::new(n, q);
    let expected: AzbElem = (0..=n).map(|k| ((k as i64, n - k), table.get(n, k as i64))).collect();
    by_rewriting == expected && by_product == expected
}

/// `σ(t)` from the formula agrees with the normal form of `-t·z⁻¹`.
pub fn antipode_matches_presentation(q: &QParam) -> bool {
    let w = GeneratorWord::scaled(-GaussianRational::one(), vec![Letter::T, Letter::Zinv]);
    azb_antipode(q, &Combination::basis((0, 1))) == normal_form(q, &w)
}

/// `κ(t)` in both conventions, for comparison: the basis formula gives
/// `1⊗t + t⊗z`, the co-opposite gives `t⊗1 + z⊗t`.
pub fn coproduct_of_t(q: &QParam, co_opposite: bool) -> Tensor<AzbIndex> {
    let a = if co_opposite { Azb::co_opposite(q) } else { Azb::new(q) };
    a.coproduct_basis(&(0, 1))
}

/// `x ⊗ y` for basis indices.
pub fn basis_tensor(x: AzbIndex, y: AzbIndex) -> Tensor<AzbIndex> {
    tensor(&Combination::basis(x), &Combination::basis(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::standard_test_qs;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(s: &str) -> QParam {
        s.parse().unwrap()
    }

    fn e(n: i64, k: u32) -> AzbElem {
        Combination::basis((n, k))
    }

    fn word(s: &str) -> GeneratorWord {
        GeneratorWord::new(
            s.split_whitespace()
                .map(|t| match t {
                    "z" => Letter::Z,
                    "zinv" => Letter::Zinv,
                    "t" => Letter::T,
                    _ => panic!("bad letter"),
                })
                .collect(),
        )
    }

    #[test]
    fn multiplication_examples() {
        let x = q("1/2");
        assert_eq!(azb_mul(&x, &e(1, 1), &e(2, 3)), e(3, 4).scale(&x.pow(2)));
        assert_eq!(azb_mul(&x, &e(0, 1), &e(1, 0)), e(1, 1).scale(x.value()));
        let u = e(3, 2) + e(-1, 0).scale(&7.into());
        assert_eq!(azb_mul(&x, &e(0, 0), &u), u);
        assert_eq!(normal_form(&x, &word("z t z z t t t")), e(3, 4).scale(&x.pow(2)));
    }

    #[test]
    fn coproduct_examples() {
        let x = q("i");
        assert_eq!(azb_coproduct(&x, &e(0, 1)), basis_tensor((0, 0), (0, 1)) + basis_tensor((0, 1), (1, 0)));
        assert_eq!(azb_coproduct(&x, &e(3, 0)), basis_tensor((3, 0), (3, 0)));
        let t = QBinomialTable::new(2, &x);
        let mut expected = Combination::zero();
        for i in 0..=2u32 {
            expected.add_scaled(&basis_tensor((1, i), (1 + i as i64, 2 - i)), &t.get(2, i as i64));
        }
        assert_eq!(azb_coproduct(&x, &e(1, 2)), expected);
        assert_eq!(coproduct_of_t(&x, true), basis_tensor((0, 1), (0, 0)) + basis_tensor((1, 0), (0, 1)));
    }

    #[test]
    fn counit_examples() {
        assert!(azb_counit(&e(0, 0)).is_one());
        // z³ is grouplike: κ(z³) = z³⊗z³ forces ε(z³) = 1.
        assert!(azb_counit(&e(3, 0)).is_one());
        assert!(azb_counit(&e(0, 1)).is_zero());
        assert!(azb_counit(&e(-2, 3)).is_zero());
    }

    #[test]
    fn antipode_examples() {
        for x in standard_test_qs() {
            assert_eq!(azb_antipode(&x, &e(0, 1)), e(-1, 1).scale(&-x.pow(-1)));
            assert_eq!(azb_antipode(&x, &e(1, 0)), e(-1, 0));
            assert_eq!(azb_antipode(&x, &e(0, 0)), e(0, 0));
            assert!(antipode_matches_presentation(&x));
        }
    }

    #[test]
    fn dual_multiplication_examples() {
        let x = q("2");
        assert_eq!(azb_dual_mul(&x, &e(2, 1), &e(3, 2)), e(2, 3));
        assert!(azb_dual_mul(&x, &e(2, 1), &e(2, 2)).is_zero());
        let d = AzbDual::new(&x, 6);
        let a = e(2, 1) + e(-1, 3);
        let unit = HopfAlgebra::unit(&d);
        assert_eq!(hopf::mul(&d, &unit, &a), a);
        assert_eq!(hopf::mul(&d, &a, &unit).filter(|(n, _)| n.abs() <= 2), a);
    }

    #[test]
    fn dual_coproduct_examples() {
        let x = q("3/5+4/5*i");
        let expected: Tensor<AzbIndex> = (-2..=2).map(|m| (((m, 0), (-m, 0)), GaussianRational::one())).collect();
        assert_eq!(azb_dual_coproduct(&x, &e(0, 0), 2), expected);
        // Counit: ε(ζ_n⊛τ⁰) = [n = 0].
        assert!(azb_dual_counit(&e(0, 0)).is_one());
        assert!(azb_dual_counit(&e(3, 0)).is_zero());
        assert!(azb_dual_counit(&e(0, 2)).is_zero());
    }

    #[test]
    fn pairing_examples() {
        let x = q("-1");
        let y = q("2");
        assert_eq!(azb_pair(&y, &e(1, 2), &e(1, 2)), GaussianRational::one() + y.value());
        assert_eq!(azb_pair(&QParam::one(), &e(1, 2), &e(1, 2)), 2.into());
        assert!(azb_pair(&x, &e(1, 2), &e(2, 2)).is_zero());
    }

    #[test]
    fn normal_form_examples() {
        let x = q("1/2");
        assert_eq!(normal_form(&x, &word("t z")), e(1, 1).scale(x.value()));
        assert_eq!(normal_form(&x, &word("z zinv")), e(0, 0));
        assert_eq!(normal_form(&x, &word("t t z")), e(1, 2).scale(&x.pow(2)));
        assert_eq!(normal_form(&x, &word("")), e(0, 0));
    }

    #[test]
    fn rewriting_is_confluent_and_matches_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for x in standard_test_qs() {
            for _ in 0..50 {
                let w1 = GeneratorWord::random(&mut rng, 10);
                let w2 = GeneratorWord::random(&mut rng, 10);
                let joined = w1.concat(&w2);
                let nf = normal_form(&x, &joined);
                assert_eq!(nf, azb_mul(&x, &normal_form(&x, &w1), &normal_form(&x, &w2)));
                assert_eq!(nf, normal_form_random(&x, &joined, &mut rng));
            }
        }
    }

    #[test]
    fn quantum_binomial_inside_azb() {
        for x in standard_test_qs() {
            for n in 0..=6 {
                assert!(verify_binomial_in_azb(&x, n), "q={x} n={n}");
            }
        }
    }

    #[test]
    fn skew_isomorphism_and_classical_limit() {
        assert!(skew_iso_check(&q("1/2"), 2));
        assert!(skew_iso_check(&QParam::one(), 2));
        assert!(classical_limit_check(2));
        let one = QParam::one();
        let k = azb_coproduct(&one, &e(0, 2));
        assert_eq!(
            k,
            basis_tensor((0, 0), (0, 2)) + basis_tensor((0, 1), (1, 1)).scale(&2.into()) + basis_tensor((0, 2), (2, 0))
        );
        assert_eq!(azb_antipode(&one, &e(1, 1)), e(-2, 1).scale(&(-1).into()));
        assert_eq!(azb_dual_mul(&one, &e(1, 1), &e(2, 1)), e(1, 2));
    }

    #[test]
    fn axioms_small_window() {
        for x in [q("1/2"), q("1+1*i")] {
            assert!(check_azb_hopf(&x, 2).passed());
            assert!(check_azb_dual_hopf(&x, 2).passed());
            let r = check_azb_duality(&x, 2);
            assert!(r.passed(), "{:?}", &r.failures[..r.failures.len().min(4)]);
        }
    }
}
