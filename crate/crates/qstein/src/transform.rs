//! Fourier maps `♯` from the dual algebras onto function algebras, the
//! inclusions `♭`, the finite cyclic Fourier transform, and window-scale
//! suites for envelope and reflexivity statements.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebras::{pair, Algebra, AlgebraError, AlgebraId, GradedElem};
use crate::azb::{azb_mul, azb_window, AzbElem};
use crate::combination::{tensor, Combination};
use crate::hopf::{self, AxiomReport, HopfAlgebra};
use crate::scalar::{rational_to_f64, GaussianRational, ModulusClass, QParam};
use crate::seminorm::{
    check_submultiplicative, dominating_pdk, dominating_seminorm_charges_z, dominating_seminorm_currents_c,
    finite_support_check, random_azb_seminorm, random_element, random_pairs, vanishing_bound, Element, Seminorm,
    SeminormSpec, Space,
};

/// Names of the basis maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapName {
    /// `δ^n ↦ z^n`, charges on ℤ to Laurent polynomials.
    SharpZ,
    /// `ζ_k ↦ 1_k`, currents on ℂ× to functions on ℤ.
    SharpCx,
    /// `τ^n ↦ t^n`, currents on ℂ to polynomials.
    SharpC,
    /// Inclusion of exponential-type functions on ℂ×.
    FlatCx,
    /// Inclusion of exponential-type functions on ℂ.
    FlatC,
    /// Inclusion of exponential-type functions on ℤ.
    FlatZ,
}

impl MapName {
    pub const ALL: [MapName; 6] =
        [MapName::SharpZ, MapName::SharpCx, MapName::SharpC, MapName::FlatCx, MapName::FlatC, MapName::FlatZ];
}

impl fmt::Display for MapName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapName::SharpZ => "sharpZ",
            MapName::SharpCx => "sharpCx",
            MapName::SharpC => "sharpC",
            MapName::FlatCx => "flatCx",
            MapName::FlatC => "flatC",
            MapName::FlatZ => "flatZ",
        })
    }
}

impl FromStr for MapName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        MapName::ALL
            .into_iter()
            .find(|m| m.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown map {s:?}"))
    }
}

/// A linear map sending each basis element of `source` to a basis element
/// of `target`. All maps here keep the index unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisMap {
    pub name: MapName,
    pub source: AlgebraId,
    pub target: AlgebraId,
}

impl BasisMap {
    pub fn new(name: MapName) -> Self {
        let (source, target) = match name {
            MapName::SharpZ => (AlgebraId::ChargesZ, AlgebraId::LaurentCx),
            MapName::SharpCx => (AlgebraId::CurrentsCx, AlgebraId::FunZ),
            MapName::SharpC => (AlgebraId::CurrentsC, AlgebraId::PolyC),
            MapName::FlatCx => (AlgebraId::LaurentCx, AlgebraId::LaurentCx),
            MapName::FlatC => (AlgebraId::PolyC, AlgebraId::PolyC),
            MapName::FlatZ => (AlgebraId::FunZ, AlgebraId::FunZ),
        };
        Self { name, source, target }
    }

    pub fn index_map(&self, n: i64) -> i64 {
        n
    }

    pub fn apply(&self, u: &GradedElem) -> Result<GradedElem, AlgebraError> {
        let expected = self.source.index_set();
        if u.index_set() != expected {
            return Err(AlgebraError::IndexSetMismatch { expected, found: u.index_set() });
        }
        GradedElem::from_combination(self.target.index_set(), &u.coeffs().map_index(|n| self.index_map(*n)))
    }

    fn apply_comb(&self, u: &Combination<i64>) -> Combination<i64> {
        u.map_index(|n| self.index_map(*n))
    }

    /// The map whose pairings this one must be compatible with: for
    /// `SharpZ` and `SharpCx`, `⟨♯_ℤ α, β⟩ = ⟨♯_{ℂ×} β, α⟩`; `SharpC` is
    /// its own partner.
    pub fn partner(&self) -> Option<BasisMap> {
        match self.name {
            MapName::SharpZ => Some(BasisMap::new(MapName::SharpCx)),
            MapName::SharpCx => Some(BasisMap::new(MapName::SharpZ)),
            MapName::SharpC => Some(*self),
            _ => None,
        }
    }
}

/// Checks that the map is injective and preserves products, unit, counit,
/// antipode and coproduct on the window, and the pairing coherence with
/// its partner.
pub fn verify_hopf_homomorphism(m: &BasisMap, window: u32) -> AxiomReport {
    let mut r = AxiomReport::default();
    let s = Algebra::for_window(m.source, window);
    let t = Algebra::for_window(m.target, window);
    let basis = m.source.basis_window(window);
    let in_w = |n: &i64| m.target.in_window(*n, window);
    let images: std::collections::BTreeSet<i64> = basis.iter().map(|n| m.index_map(*n)).collect();
    r.record(images.len() == basis.len(), || format!("{}: not injective on window", m.name));

    for a in &basis {
        for b in &basis {
            let lhs = m.apply_comb(&s.mul_basis(a, b));
            let rhs = t.mul_basis(&m.index_map(*a), &m.index_map(*b));
            r.record(lhs == rhs, || format!("{}: product of {a} and {b}", m.name));
        }
        let e = Combination::basis(*a);
        let img = m.apply_comb(&e);
        r.record(hopf::counit(&t, &img) == s.counit_basis(a), || format!("{}: counit at {a}", m.name));
        r.record(hopf::antipode(&t, &img) == m.apply_comb(&s.antipode_basis(a)), || {
            format!("{}: antipode at {a}", m.name)
        });
        let lhs = s.coproduct_basis(a).map_index(|(x, y)| (m.index_map(*x), m.index_map(*y)));
        let rhs = hopf::coproduct(&t, &img);
        let keep = |(x, y): &(i64, i64)| in_w(x) && in_w(y);
        r.record(lhs.filter(keep) == rhs.filter(keep), || format!("{}: coproduct at {a}", m.name));
    }
    let unit = m.apply_comb(&HopfAlgebra::unit(&s)).filter(in_w);
    r.record(unit == HopfAlgebra::unit(&t).filter(in_w), || format!("{}: unit", m.name));

    if let Some(p) = m.partner() {
        for a in &basis {
            for b in &p.source.basis_window(window) {
                let alpha = GradedElem::basis(m.source, *a).expect("basis index");
                let beta = GradedElem::basis(p.source, *b).expect("basis index");
                let lhs = pair(m.target, &m.apply(&alpha).expect("source element"), p.source, &beta);
                let rhs = pair(p.target, &p.apply(&beta).expect("source element"), m.source, &alpha);
                r.record(lhs.is_ok() && lhs == rhs, || format!("{}: pairing coherence at ({a}, {b})", m.name));
            }
        }
    }
    r
}

/// `ω^e` for `ω = e^{2πi/m}` when it lies in `{±1, ±i}`.
fn root_of_unity_exact(m: u32, e: i64) -> Option<GaussianRational> {
    let quarter = match m {
        1 => 0,
        2 => 2 * e,
        4 => e,
        _ => return None,
    };
    Some(match quarter.rem_euclid(4) {
        0 => GaussianRational::one(),
        1 => GaussianRational::i(),
        2 => -GaussianRational::one(),
        _ => -GaussianRational::i(),
    })
}

/// Fourier transform of the group algebra of ℤ_m onto functions on the dual
/// group: `δ^n ↦ (j ↦ ω^{nj})`. Exact for `m ∈ {1, 2, 4}`.
pub fn cyclic_fourier_exact(m: u32, u: &Combination<i64>) -> Option<Combination<i64>> {
    let mut out = Combination::zero();
    for j in 0..m as i64 {
        let mut v = GaussianRational::zero();
        for (n, c) in u.iter() {
            v += &(c * &root_of_unity_exact(m, n * j)?);
        }
        out.add_term(j, v);
    }
    Some(out)
}

/// The same transform in double precision: the values at `j = 0..m`.
pub fn cyclic_fourier_f64(m: u32, u: &Combination<i64>) -> Vec<Complex64> {
    (0..m as i64)
        .map(|j| {
            u.iter()
                .map(|(n, c)| {
                    let angle = 2.0 * std::f64::consts::PI * ((n * j).rem_euclid(m as i64) as f64) / m as f64;
                    c.to_complex64() * Complex64::from_polar(1.0, angle)
                })
                .sum()
        })
        .collect()
}

/// Hopf isomorphism checks for the cyclic transform: products, unit,
/// counit, antipode, coproduct and invertibility. Exact for `m ∈ {1,2,4}`,
/// otherwise within `tol`.
pub fn verify_cyclic_fourier(m: u32, tol: f64) -> AxiomReport {
    let mut r = AxiomReport::default();
    let group = Algebra::new(AlgebraId::CyclicCharges(m), 0);
    let funs = Algebra::new(AlgebraId::CyclicFun(m), 0);
    let basis: Vec<i64> = (0..m as i64).collect();
    let close = |a: &[Complex64], b: &[Complex64]| a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol);
    let exact = root_of_unity_exact(m, 1).is_some();
    let mut matrix = Vec::new();
    for a in &basis {
        let ea = Combination::basis(*a);
        if exact {
            let fa = cyclic_fourier_exact(m, &ea).expect("exact order");
            for b in &basis {
                let fb = cyclic_fourier_exact(m, &Combination::basis(*b)).expect("exact order");
                let lhs = cyclic_fourier_exact(m, &group.mul_basis(a, b)).expect("exact order");
                r.record(lhs == hopf::mul(&funs, &fa, &fb), || format!("cyclic {m}: product {a}·{b}"));
            }
            r.record(hopf::counit(&funs, &fa) == group.counit_basis(a), || format!("cyclic {m}: counit {a}"));
            let lhs = cyclic_fourier_exact(m, &group.antipode_basis(a)).expect("exact order");
            r.record(lhs == hopf::antipode(&funs, &fa), || format!("cyclic {m}: antipode {a}"));
            r.record(hopf::coproduct(&funs, &fa) == tensor(&fa, &fa), || format!("cyclic {m}: coproduct {a}"));
        } else {
            let fa = cyclic_fourier_f64(m, &ea);
            for b in &basis {
                let fb = cyclic_fourier_f64(m, &Combination::basis(*b));
                let prod: Vec<Complex64> = fa.iter().zip(&fb).map(|(x, y)| x * y).collect();
                let lhs = cyclic_fourier_f64(m, &group.mul_basis(a, b));
                r.record(close(&lhs, &prod), || format!("cyclic {m}: product {a}·{b}"));
            }
            r.record((fa[0] - Complex64::new(1.0, 0.0)).norm() <= tol, || format!("cyclic {m}: counit {a}"));
            let anti = cyclic_fourier_f64(m, &group.antipode_basis(a));
            let reflected: Vec<Complex64> = (0..m as usize).map(|j| fa[(m as usize - j) % m as usize]).collect();
            r.record(close(&anti, &reflected), || format!("cyclic {m}: antipode {a}"));
            let ok = (0..m as usize)
                .all(|x| (0..m as usize).all(|y| (fa[(x + y) % m as usize] - fa[x] * fa[y]).norm() <= tol));
            r.record(ok, || format!("cyclic {m}: coproduct {a}"));
            matrix.push(fa);
        }
    }
    if exact {
        let unit = cyclic_fourier_exact(m, &HopfAlgebra::unit(&group)).expect("exact order");
        r.record(unit == HopfAlgebra::unit(&funs), || format!("cyclic {m}: unit"));
        // The inverse transform is (1/m)·conjugate transform.
        let inv_m = GaussianRational::ratio(1, m as i64);
        for a in &basis {
            let fa = cyclic_fourier_exact(m, &Combination::basis(*a)).expect("exact order");
            let back: Combination<i64> = (0..m as i64)
                .map(|n| {
                    let s: GaussianRational =
                        fa.iter().map(|(j, v)| v * &root_of_unity_exact(m, -n * j).expect("exact order")).sum();
                    (n, &s * &inv_m)
                })
                .collect();
            r.record(back == Combination::basis(*a), || format!("cyclic {m}: inverse at {a}"));
        }
    } else {
        let unit = cyclic_fourier_f64(m, &Combination::basis(0));
        r.record(unit.iter().all(|v| (v - Complex64::new(1.0, 0.0)).norm() <= tol), || format!("cyclic {m}: unit"));
        for (x, row) in matrix.iter().enumerate() {
            for (y, col) in matrix.iter().enumerate() {
                let dot: Complex64 = row.iter().zip(col).map(|(p, c)| p * c.conj()).sum();
                let expect = if x == y { m as f64 } else { 0.0 };
                r.record((dot - Complex64::new(expect, 0.0)).norm() <= tol * m as f64, || {
                    format!("cyclic {m}: orthogonality {x},{y}")
                });
            }
        }
    }
    r
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn random_scale(rng: &mut impl Rng) -> BigRational {
    rat(rng.gen_range(2..=6), 2)
}

/// A random submultiplicative seminorm on the source side of `m`, built as
/// a scaled sum or maximum of two canonical seminorms.
pub fn random_source_seminorm(m: &BasisMap, rng: &mut impl Rng) -> Seminorm {
    let basic = |rng: &mut ChaCha8Rng| -> Seminorm {
        Seminorm::Basic(match m.name {
            MapName::SharpZ => SeminormSpec::NormCCharges(random_scale(rng)),
            MapName::SharpCx => SeminormSpec::NormNRstarCx(rng.gen_range(0..=3)),
            MapName::SharpC => {
                let c = random_scale(rng);
                SeminormSpec::WeightedR((0..=16).map(|k| (k, c.pow(k as i32))).collect())
            }
            MapName::FlatCx => SeminormSpec::NormCOCx(random_scale(rng)),
            MapName::FlatC => SeminormSpec::NormCOC(random_scale(rng)),
            MapName::FlatZ => SeminormSpec::NormNOZ(rng.gen_range(0..=3)),
        })
    };
    let mut local = ChaCha8Rng::seed_from_u64(rng.gen());
    let (a, b) = (basic(&mut local), basic(&mut local));
    let inner = if local.gen_bool(0.5) { Seminorm::Sum(vec![a, b]) } else { Seminorm::Max(vec![a, b]) };
    Seminorm::Scaled(random_scale(&mut local), Box::new(inner))
}

fn factorial(k: i64) -> BigRational {
    (1..=k).map(|j| rat(j, 1)).fold(BigRational::one(), |a, b| a * b)
}

/// The dominating canonical seminorm on the target side, as a constant
/// times a target family, built from basis values of `p`.
fn dominating_target(m: &BasisMap, p: &Seminorm, window: u32) -> Result<(BigRational, SeminormSpec), String> {
    let val = |n: i64| -> Result<BigRational, String> {
        let e = Element::Graded(m.source, Combination::basis(n));
        p.evaluate_exact(&e).map_err(|e| e.to_string())?.ok_or_else(|| "inexact basis value".to_string())
    };
    let range = 2 * window as i64;
    match m.name {
        MapName::SharpZ => {
            let r: BTreeMap<i64, BigRational> =
                (-range..=range).map(|n| Ok((n, val(n)?))).collect::<Result<_, String>>()?;
            let (mm, c) = dominating_seminorm_charges_z(&r).map_err(|e| e.to_string())?;
            Ok((mm, SeminormSpec::NormCOCx(c.max(BigRational::one()))))
        }
        MapName::SharpC => {
            let r: BTreeMap<i64, BigRational> =
                (0..=range).map(|k| Ok((k, val(k)? / factorial(k)))).collect::<Result<_, String>>()?;
            let d = dominating_seminorm_currents_c(&r).map_err(|e| e.to_string())?;
            Ok((d.m, SeminormSpec::NormCOC(d.c.max(BigRational::one()))))
        }
        MapName::SharpCx => {
            let r: BTreeMap<i64, BigRational> =
                (-range..=range).map(|n| Ok((n, val(n)?))).collect::<Result<_, String>>()?;
            if !finite_support_check(&r, range as u32) {
                return Err("basis values are neither 0 nor ≥ 1".into());
            }
            let n = r.iter().filter(|(_, v)| !v.is_zero()).map(|(n, _)| n.unsigned_abs()).max().unwrap_or(0);
            let mx = r.values().cloned().fold(BigRational::one(), BigRational::max);
            Ok((mx, SeminormSpec::NormNOZ(n as u32)))
        }
        MapName::FlatCx | MapName::FlatC | MapName::FlatZ => {
            let spec = match p {
                Seminorm::Basic(s) => s.clone(),
                _ => return Err("inclusion maps only restrict canonical seminorms".into()),
            };
            Ok((BigRational::one(), spec))
        }
    }
}

/// Window-scale Arens-Michael envelope check for a basis map: every target
/// basis element in the window is an image, and for sampled submultiplicative
/// seminorms `p` on the source, `p ≤ M·(q∘m)` for the dominating target
/// seminorm `q` built from the basis values of `p`.
pub fn verify_am_envelope(m: &BasisMap, window: u32, seminorms: usize, samples: usize, seed: u64) -> AxiomReport {
    let mut r = AxiomReport::default();
    let images: std::collections::BTreeSet<i64> =
        m.source.basis_window(window).iter().map(|n| m.index_map(*n)).collect();
    for n in m.target.basis_window(window) {
        r.record(images.contains(&n), || format!("{}: target basis element {n} not hit", m.name));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..seminorms {
        let p = if m.source == m.target {
            match random_source_seminorm(m, &mut rng) {
                Seminorm::Scaled(_, inner) => match *inner {
                    Seminorm::Sum(v) | Seminorm::Max(v) => v.into_iter().next().expect("nonempty"),
                    other => other,
                },
                other => other,
            }
        } else {
            random_source_seminorm(m, &mut rng)
        };
        let (factor, target) = match dominating_target(m, &p, window) {
            Ok(x) => x,
            Err(e) => {
                r.record(false, || format!("{}: {e}", m.name));
                continue;
            }
        };
        for _ in 0..samples {
            let u = random_element(Space::Graded(m.source), &mut rng, window, true);
            let Element::Graded(_, c) = &u else { unreachable!() };
            let image = Element::Graded(m.target, m.apply_comb(c));
            let lhs = p.evaluate_exact(&u);
            let rhs = target.evaluate_exact(&image);
            let ok = matches!((&lhs, &rhs), (Ok(Some(a)), Ok(Some(b))) if *a <= &factor * b);
            r.record(ok, || format!("{}: {u} has p = {lhs:?} above {factor}·{rhs:?}", m.name));
        }
    }
    r
}

/// Seminorm classification checks on the window for `az+b`.
///
/// For `|q| ≠ 1`: the identity `t^k = q^k z t^k z⁻¹` behind the vanishing
/// bound; vanishing of sampled seminorms on `t^k` past the bound; `p_{D,K}`
/// submultiplicative on all basis pairs and on random pairs; domination of
/// sampled seminorms by the constructed `p_{D,K}`; `r_N` submultiplicative
/// on the dual. For `|q| = 1`: the weights `C^{k+|n|}` are submultiplicative.
pub fn verify_azb_reflexivity(q: &QParam, window: u32, seed: u64) -> AxiomReport {
    let mut r = AxiomReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis: Vec<Element> = azb_window(window).into_iter().map(|i| Element::Azb(Combination::basis(i))).collect();
    let basis_pairs: Vec<(Element, Element)> =
        basis.iter().flat_map(|u| basis.iter().map(move |v| (u.clone(), v.clone()))).collect();
    let submult =
        |r: &mut AxiomReport, p: Seminorm, pairs: &[(Element, Element)], what: &str| match check_submultiplicative(
            &p, q, pairs, 1e-9,
        ) {
            Ok(rep) => {
                r.checked += rep.checked;
                for v in rep.violations.iter().take(3) {
                    r.failures.push(format!("{what}: p({} · {}) = {} > {}", v.u, v.v, v.lhs, v.rhs));
                }
            }
            Err(e) => r.record(false, || format!("{what}: {e}")),
        };

    if q.modulus_class() == ModulusClass::EqualOne {
        for c in [rat(1, 1), rat(3, 2), rat(2, 1)] {
            let p = Seminorm::Basic(SeminormSpec::NormCAzb(c.clone()));
            let pairs = random_pairs(Space::Azb, &mut rng, 200, window, false);
            submult(&mut r, p.clone(), &basis_pairs, &format!("NormC_Azb({c}) on basis"));
            submult(&mut r, p, &pairs, &format!("NormC_Azb({c}) on samples"));
        }
        return r;
    }

    let z: AzbElem = Combination::basis((1, 0));
    let zinv: AzbElem = Combination::basis((-1, 0));
    for k in 0..=window {
        let tk: AzbElem = Combination::basis((0, k));
        let conj = azb_mul(q, &azb_mul(q, &z, &tk), &zinv).scale(&q.pow(k as i64));
        r.record(conj == tk, || format!("t^{k} ≠ q^{k} z t^{k} z⁻¹"));
    }

    let below_one = q.modulus_class() == ModulusClass::LessThanOne;
    for k in 0..=3u32 {
        let m = if below_one {
            crate::seminorm::modulus_lower(q.value())
        } else {
            crate::seminorm::modulus_upper(q.value())
        };
        for d in [BigRational::one(), rat(3, 2), rat(4, 1)] {
            let d = if below_one { d / m.pow(k as i32) } else { d * m.pow(k as i32) };
            let spec = SeminormSpec::Pdk { d: d.clone(), k, q: q.clone() };
            r.record(spec.validate().is_ok(), || format!("p_{{{d},{k}}} outside its legal range"));
            let pairs = random_pairs(Space::Azb, &mut rng, 100, window, false);
            submult(&mut r, Seminorm::Basic(spec.clone()), &basis_pairs, &format!("p_{{{d},{k}}} on basis"));
            submult(&mut r, Seminorm::Basic(spec), &pairs, &format!("p_{{{d},{k}}} on samples"));
        }
    }

    for _ in 0..10 {
        let p = random_azb_seminorm(q, &mut rng);
        let val = |u: AzbElem| p.evaluate_f64(&Element::Azb(u)).unwrap_or(f64::NAN);
        let rz = BigRational::from_float(val(z.clone())).unwrap_or_else(BigRational::zero);
        let rzinv = BigRational::from_float(val(zinv.clone())).unwrap_or_else(BigRational::zero);
        match vanishing_bound(q, &rz, &rzinv) {
            Ok(kv) => {
                for k in kv..=kv + window {
                    r.record(val(Combination::basis((0, k))) == 0.0, || format!("p(t^{k}) ≠ 0 past the bound {kv}"));
                }
            }
            Err(e) => r.record(false, || e.to_string()),
        }
        let pairs = random_pairs(Space::Azb, &mut rng, 20, window, false);
        submult(&mut r, p.clone(), &pairs, "sampled seminorm");
        match dominating_pdk(&p, q) {
            Ok(dom) => {
                let pdk = SeminormSpec::Pdk { d: dom.d.clone(), k: dom.k, q: q.clone() };
                r.record(pdk.validate().is_ok(), || format!("dominating p_{{{},{}}} is not legal", dom.d, dom.k));
                let f = rational_to_f64(&dom.factor);
                for _ in 0..20 {
                    let u = random_element(Space::Azb, &mut rng, window, false);
                    let lhs = p.evaluate_f64(&u).unwrap_or(f64::NAN);
                    let rhs = f * pdk.evaluate_f64(&u).unwrap_or(f64::NAN);
                    r.record(lhs <= rhs * (1.0 + 1e-9), || format!("sampled seminorm {lhs} above {rhs} on {u}"));
                }
            }
            Err(e) => r.record(false, || e.to_string()),
        }
    }

    let dual_basis: Vec<Element> =
        azb_window(window).into_iter().map(|i| Element::AzbDual(Combination::basis(i))).collect();
    let dual_pairs: Vec<(Element, Element)> =
        dual_basis.iter().flat_map(|u| dual_basis.iter().map(move |v| (u.clone(), v.clone()))).collect();
    for n in 0..=window {
        let pairs = random_pairs(Space::AzbDual, &mut rng, 100, window, false);
        submult(&mut r, Seminorm::Basic(SeminormSpec::Rn(n)), &dual_pairs, &format!("r_{n} on basis"));
        submult(&mut r, Seminorm::Basic(SeminormSpec::Rn(n)), &pairs, &format!("r_{n} on samples"));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elem(id: AlgebraId, terms: &[(i64, i64)]) -> GradedElem {
        GradedElem::new(id.index_set(), terms.iter().map(|&(n, c)| (n, c.into()))).unwrap()
    }

    #[test]
    fn apply_examples() {
        let sz = BasisMap::new(MapName::SharpZ);
        let u = elem(AlgebraId::ChargesZ, &[(2, 1), (-1, -3)]);
        assert_eq!(sz.apply(&u).unwrap(), elem(AlgebraId::LaurentCx, &[(2, 1), (-1, -3)]));
        let scx = BasisMap::new(MapName::SharpCx);
        assert_eq!(scx.apply(&elem(AlgebraId::CurrentsCx, &[(3, 1)])).unwrap(), elem(AlgebraId::FunZ, &[(3, 1)]));
        let sc = BasisMap::new(MapName::SharpC);
        assert_eq!(sc.apply(&elem(AlgebraId::CurrentsC, &[(0, 1)])).unwrap(), elem(AlgebraId::PolyC, &[(0, 1)]));
        assert!(sc.apply(&u).is_err());
    }

    #[test]
    fn sharp_maps_are_hopf_homomorphisms() {
        for name in MapName::ALL {
            let r = verify_hopf_homomorphism(&BasisMap::new(name), 5);
            assert!(r.passed(), "{name}: {:?}", &r.failures[..r.failures.len().min(3)]);
        }
    }

    #[test]
    fn homomorphism_examples() {
        let s = Algebra::new(AlgebraId::CurrentsCx, 4);
        let t = Algebra::new(AlgebraId::FunZ, 4);
        assert_eq!(s.mul_basis(&2, &2), Combination::basis(2));
        assert_eq!(t.mul_basis(&2, &2), Combination::basis(2));
        let c = Algebra::new(AlgebraId::CurrentsC, 4);
        assert_eq!(c.mul_basis(&1, &1), Combination::basis(2));
    }

    #[test]
    fn cyclic_fourier() {
        for m in [1, 2, 4] {
            let r = verify_cyclic_fourier(m, 0.0);
            assert!(r.passed(), "{m}: {:?}", r.failures);
        }
        for m in [3, 5, 6] {
            let r = verify_cyclic_fourier(m, 1e-9);
            assert!(r.passed(), "{m}: {:?}", r.failures);
        }
        assert!(cyclic_fourier_exact(3, &Combination::basis(1)).is_none());
        let f = cyclic_fourier_exact(4, &Combination::basis(1)).unwrap();
        assert_eq!(f.coeff(&1), GaussianRational::i());
    }

    #[test]
    fn envelope_checks() {
        for name in MapName::ALL {
            let r = verify_am_envelope(&BasisMap::new(name), 4, 5, 20, 3);
            assert!(r.passed(), "{name}: {:?}", &r.failures[..r.failures.len().min(3)]);
        }
    }

    #[test]
    fn reflexivity_small_window() {
        for s in ["1/2", "2", "i", "3/5+4/5*i"] {
            let r = verify_azb_reflexivity(&s.parse().unwrap(), 2, 1);
            assert!(r.passed(), "{s}: {:?}", &r.failures[..r.failures.len().min(3)]);
        }
    }
}
