//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qstein::algebras::{Algebra, AlgebraId, ConcretePair};
use qstein::azb::{self, GeneratorWord};
use qstein::combination::Combination;
use qstein::envelope::{self, FunctionSet, GridDomain, Semicharacter};
use qstein::qcomb;
use qstein::scalar::{standard_test_qs, GaussianRational, QParam};
use qstein::seminorm::{self, Element, SeminormSpec};
use qstein::transform::{self, BasisMap, MapName};

/// Outcome of one criterion: number of individual checks and failure notes.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn absorb(&mut self, label: &str, r: qstein::hopf::AxiomReport) {
        self.checked += r.checked;
        self.failures.extend(r.failures.into_iter().take(5).map(|f| format!("{label}: {f}")));
    }
}

fn q(s: &str) -> QParam {
    s.parse().expect("valid q")
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Gaussian binomial from its combinatorial definition: the coefficient of
/// `q^j` counts partitions of `j` inside a `k × (n−k)` box.
fn box_partition_binomial(n: u32, k: u32, q: &GaussianRational) -> GaussianRational {
    if k > n {
        return GaussianRational::zero();
    }
    let (rows, cols) = (k as usize, (n - k) as usize);
    // counts[r][c][j]: partitions of j with at most r parts, each at most c.
    let max = rows * cols;
    let mut counts = vec![vec![vec![0u64; max + 1]; cols + 1]; rows + 1];
    for r in 0..=rows {
        for c in 0..=cols {
            for j in 0..=max {
                counts[r][c][j] = if j == 0 {
                    1
                } else if r == 0 || c == 0 {
                    0
                } else {
                    // Either no part equals c, or remove one part equal to c.
                    counts[r][c - 1][j] + if j >= c { counts[r - 1][c][j - c] } else { 0 }
                };
            }
        }
    }
    let mut value = GaussianRational::zero();
    let mut power = GaussianRational::one();
    for &c in &counts[rows][cols][..=max] {
        value += &(&power * &GaussianRational::from_int(c as i64));
        power *= q;
    }
    value
}

fn criterion_1(t: &mut Tally) {
    let qs = standard_test_qs();
    for qp in &qs {
        let table = qcomb::QBinomialTable::new(12, qp);
        for n in 0..=12u32 {
            for k in 0..=n {
                let pascal = table.get(n, k as i64);
                t.check(pascal == box_partition_binomial(n, k, qp.value()), || {
                    format!("box count ≠ Pascal at ({n},{k}) q={qp}")
                });
                if let Some(quotient) = qcomb::q_binomial_by_quotient(n, k, qp) {
                    t.check(pascal == quotient, || format!("Pascal ≠ factorial quotient at ({n},{k}) q={qp}"));
                }
            }
            t.check(qcomb::verify_quantum_binomial(n, qp), || format!("quantum binomial theorem n={n} q={qp}"));
        }
        for m in 0..=10 {
            for n in 0..=10 {
                for l in 0..=10 {
                    t.check(qcomb::verify_chu_vandermonde(m, n, l, qp), || {
                        format!("Chu-Vandermonde ({m},{n},{l}) q={qp}")
                    });
                }
            }
        }
    }
    let expected = GaussianRational::ratio(35, 16);
    t.check(qcomb::q_binomial(4, 2, &q("1/2")) == expected, || "[4 2] at q=1/2 is not 35/16".into());
}

fn criterion_2(t: &mut Tally) {
    let mut ids = AlgebraId::ALL_INFINITE.to_vec();
    ids.extend([AlgebraId::CyclicFun(3), AlgebraId::CyclicCharges(3)]);
    for id in ids {
        t.absorb(&id.to_string(), Algebra::check_axioms(id, 6));
    }
    for m in [1, 2, 4, 5] {
        t.absorb("cyclic", Algebra::check_axioms(AlgebraId::CyclicFun(m), 6));
        t.absorb("cyclic", Algebra::check_axioms(AlgebraId::CyclicCharges(m), 6));
    }
    for qp in standard_test_qs() {
        t.absorb(&format!("azb q={qp}"), azb::check_azb_hopf(&qp, 4));
        t.absorb(&format!("azb dual q={qp}"), azb::check_azb_dual_hopf(&qp, 4));
    }
}

fn criterion_3(t: &mut Tally) {
    for p in ConcretePair::all(16) {
        let label = format!("{} / {}", p.function_side(), p.dual_side());
        t.absorb(&label, p.check_duality(4));
    }
    for qp in standard_test_qs() {
        t.absorb(&format!("azb pairing q={qp}"), azb::check_azb_duality(&qp, 4));
    }
}

fn criterion_4(t: &mut Tally) {
    for qp in standard_test_qs() {
        t.check(azb::skew_iso_check(&qp, 3), || format!("skew isomorphism at q={qp}"));
    }
    t.check(azb::classical_limit_check(3), || "classical limit at q=1".into());
}

fn criterion_5(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for qp in standard_test_qs() {
        for _ in 0..1000 {
            let w1 = GeneratorWord::random(&mut rng, 10);
            let w2 = GeneratorWord::random(&mut rng, 10);
            let whole = azb::normal_form(&qp, &w1.concat(&w2));
            let product = azb::azb_mul(&qp, &azb::normal_form(&qp, &w1), &azb::normal_form(&qp, &w2));
            t.check(whole == product, || format!("rewrite ≠ structure constants for {w1:?}·{w2:?} at q={qp}"));
            let shuffled = azb::normal_form_random(&qp, &w1.concat(&w2), &mut rng);
            t.check(shuffled == whole, || format!("rewriting is not confluent on {w1:?}{w2:?} at q={qp}"));
        }
    }
}

fn criterion_6(t: &mut Tally) {
    for name in [MapName::SharpZ, MapName::SharpCx, MapName::SharpC] {
        t.absorb(&name.to_string(), transform::verify_hopf_homomorphism(&BasisMap::new(name), 8));
    }
    for m in [1, 2, 4] {
        t.check(transform::cyclic_fourier_exact(m, &Combination::basis(1)).is_some(), || {
            format!("cyclic Fourier for m={m} should be exact")
        });
        t.absorb(&format!("cyclic:{m}"), transform::verify_cyclic_fourier(m, 0.0));
    }
    t.absorb("cyclic:3", transform::verify_cyclic_fourier(3, 1e-9));
}

fn canonical_families() -> Vec<SeminormSpec> {
    let weights: BTreeMap<i64, BigRational> =
        (0..=8).map(|k| (k, BigRational::from_integer(BigInt::from(2).pow(k as u32)))).collect();
    vec![
        SeminormSpec::NormCOC(rat(2, 1)),
        SeminormSpec::NormCOCx(rat(3, 2)),
        SeminormSpec::NormNOZ(3),
        SeminormSpec::NormNRstarCx(3),
        SeminormSpec::WeightedR(weights),
        SeminormSpec::NormCCharges(rat(2, 1)),
        SeminormSpec::Pdk { d: rat(4, 1), k: 2, q: q("1/2") },
        SeminormSpec::Pdk { d: rat(4, 1), k: 2, q: q("2") },
        SeminormSpec::Pdk { d: rat(4, 1), k: 2, q: q("3/10+2/5*i") },
        SeminormSpec::Pdk { d: rat(3, 1), k: 1, q: q("1/2+1/2*i") },
        SeminormSpec::Rn(3),
        SeminormSpec::NormCAzb(rat(2, 1)),
    ]
}

/// `|q|^{2K}·D² < 1` computed directly from `q`'s real and imaginary parts.
fn pdk_condition_fails(d: &BigRational, k: u32, qp: &QParam) -> bool {
    let v = qp.value();
    let abs_sq = v.re() * v.re() + v.im() * v.im();
    let mut lhs = d * d;
    for _ in 0..k {
        lhs *= &abs_sq;
    }
    lhs < BigRational::one()
}

fn criterion_7(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for spec in canonical_families() {
        for rational in [true, false] {
            let pairs = seminorm::random_pairs(spec.space(), &mut rng, 1000, 3, rational);
            match seminorm::check_spec_submultiplicative(&spec, &pairs, 1e-9) {
                Ok(r) => {
                    t.checked += r.checked;
                    let exact_modulus = spec.q().value().is_real();
                    if rational && exact_modulus && r.exact_checks != r.checked {
                        t.failures.push(format!("{}: rational path was not exact", spec.family_name()));
                    }
                    for v in r.violations.iter().take(3) {
                        t.failures.push(format!("{}: p({}·{}) = {} > {}", spec.family_name(), v.u, v.v, v.lhs, v.rhs));
                    }
                }
                Err(e) => t.failures.push(format!("{}: {e}", spec.family_name())),
            }
        }
    }
    for qs in ["1/2", "1/3", "3/10+2/5*i", "2/3*i"] {
        let qp = q(qs);
        for d in [rat(1, 2), rat(1, 1), rat(3, 2), rat(2, 1), rat(4, 1), rat(8, 1), rat(9, 1)] {
            for k in 0..=4 {
                let violates = seminorm::pdk_witness_violates(&d, k, &qp);
                t.check(violates == pdk_condition_fails(&d, k, &qp), || format!("PDK witness D={d} K={k} q={qs}"));
            }
        }
    }
    t.check(seminorm::vanishing_bound(&q("1/2"), &rat(2, 1), &rat(2, 1)).ok() == Some(3), || {
        "vanishing_bound(1/2, 2, 2) ≠ 3".into()
    });
    for (qs, d, k) in [("1/2", 4, 2), ("1/2", 2, 1), ("2", 4, 2), ("1/3", 9, 2), ("3", 3, 1)] {
        let qp = q(qs);
        let spec = SeminormSpec::Pdk { d: rat(d, 1), k, q: qp.clone() };
        let value = |n: i64, j: u32| spec.evaluate_exact(&Element::Azb(Combination::basis((n, j)))).ok().flatten();
        let (Some(rz), Some(rzinv)) = (value(1, 0), value(-1, 0)) else {
            t.failures.push(format!("PDK D={d} K={k} q={qs}: inexact p(z)"));
            continue;
        };
        let bound = seminorm::vanishing_bound(&qp, &rz, &rzinv).expect("|q| ≠ 1");
        for j in bound..bound + 4 {
            t.check(value(0, j) == Some(BigRational::zero()), || {
                format!("p(t^{j}) ≠ 0 past bound {bound} (D={d}, q={qs})")
            });
        }
    }
}

/// Coefficients whose modulus is rational: a rational times a unit from a
/// Pythagorean triple.
fn rational_modulus_coeff(rng: &mut impl Rng) -> GaussianRational {
    let units = [(1, 0), (0, 1), (-1, 0), (0, -1), (3, 4), (-4, 3), (5, -12), (8, 15)];
    let (a, b) = units[rng.gen_range(0..units.len())];
    let norm = ((a * a + b * b) as f64).sqrt() as i64;
    let s = GaussianRational::ratio(rng.gen_range(1..=9), rng.gen_range(1..=5));
    &s * &GaussianRational::complex(a, norm, b, norm)
}

fn modulus(c: &GaussianRational) -> BigRational {
    c.rational_modulus().expect("rational modulus by construction")
}

fn criterion_8(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let factorial = |k: i64| BigRational::from_integer((1..=k).map(BigInt::from).product());
    for _ in 0..100 {
        // A_k = s·b^k/k! is submultiplicative for s ≥ 1.
        let s = rat(rng.gen_range(2..=6), 2);
        let b = rat(rng.gen_range(1..=9), rng.gen_range(1..=3));
        let a: BTreeMap<i64, BigRational> =
            (0..=8).map(|k| (k, &s * num_traits::pow(b.clone(), k as usize) / factorial(k))).collect();
        let r: BTreeMap<i64, BigRational> = a.iter().map(|(k, v)| (*k, v / factorial(*k))).collect();
        let Ok(dom) = seminorm::dominating_seminorm_currents_c(&r) else {
            t.failures.push("currents domination rejected submultiplicative data".into());
            continue;
        };
        let alpha: Vec<(i64, GaussianRational)> =
            (0..rng.gen_range(1..=5)).map(|_| (rng.gen_range(0..=8), rational_modulus_coeff(&mut rng))).collect();
        let p: BigRational = alpha.iter().map(|(k, c)| modulus(c) * &a[k]).sum();
        let norm: BigRational =
            alpha.iter().map(|(k, c)| modulus(c) * num_traits::pow(dom.c.clone(), *k as usize)).sum();
        t.check(p <= &dom.m * &norm, || format!("currents: p = {p} > {}·{norm}", dom.m));
    }
    for _ in 0..100 {
        // r_n = s·b^n (n ≥ 0), s·c^{−n} (n < 0) with s, b, c ≥ 1.
        let s = rat(rng.gen_range(2..=6), 2);
        let b = rat(rng.gen_range(3..=9), 3);
        let c = rat(rng.gen_range(3..=9), 3);
        let r: BTreeMap<i64, BigRational> = (-6..=6i64)
            .map(|n| {
                let base = if n >= 0 { b.clone() } else { c.clone() };
                (n, &s * num_traits::pow(base, n.unsigned_abs() as usize))
            })
            .collect();
        let Ok((m, cc)) = seminorm::dominating_seminorm_charges_z(&r) else {
            t.failures.push("charges domination rejected submultiplicative data".into());
            continue;
        };
        let alpha: Vec<(i64, GaussianRational)> =
            (0..rng.gen_range(1..=5)).map(|_| (rng.gen_range(-6..=6), rational_modulus_coeff(&mut rng))).collect();
        let p: BigRational = alpha.iter().map(|(n, x)| modulus(x) * &r[n]).sum();
        let norm: BigRational =
            alpha.iter().map(|(n, x)| modulus(x) * num_traits::pow(cc.clone(), n.unsigned_abs() as usize)).sum();
        t.check(p <= &m * &norm, || format!("charges: p = {p} > {m}·{norm}"));
        let canonical = SeminormSpec::NormCCharges(cc.clone().max(BigRational::one()));
        let elem = Element::Graded(AlgebraId::ChargesZ, alpha.iter().map(|(n, x)| (*n, x.clone())).collect());
        if let Ok(Some(v)) = canonical.evaluate_exact(&elem) {
            t.check(p <= &m * &v, || "charges: p exceeds M·canonical seminorm".into());
        }
    }
}

fn criterion_9(t: &mut Tally) {
    for qs in ["1/2", "2", "i", "3/5+4/5*i"] {
        t.absorb(&format!("q={qs}"), transform::verify_azb_reflexivity(&q(qs), 4, 9));
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn criterion_10(t: &mut Tally) {
    let grid = GridDomain::pow2(4);
    let laurent = |terms: &[(i64, i64)]| -> Combination<i64> {
        terms.iter().map(|(n, c)| (*n, GaussianRational::from_int(*c))).collect()
    };
    let sets = [
        FunctionSet::new(vec![laurent(&[(0, 1)]), laurent(&[(1, 1)]), laurent(&[(-1, 1)])]),
        FunctionSet::new(vec![laurent(&[(0, 1)]), laurent(&[(2, 3)])]),
        FunctionSet::new(vec![laurent(&[(0, 1)]), laurent(&[(1, 1), (-1, 1)]), laurent(&[(-2, 2)])]),
    ];
    for d in &sets {
        let outer = envelope::outer_envelope(d, &grid).expect("valid set");
        let inner = envelope::inner_envelope_of_polar(d, &grid).expect("valid set");
        for ((x, o), i) in grid.points.iter().zip(&outer).zip(&inner) {
            t.check(close(o * i, 1.0, 1e-9), || format!("(D°)^◊·D^□ = {} at {x}", o * i));
        }
    }
    for (c, n) in [(1, 0), (1, 1), (2, 0), (3, 2), (1, 3), (2, 4)] {
        let f = Semicharacter::rcn(c, n);
        let g = envelope::rectangle_outer(&f, &grid);
        for (x, v) in grid.points.iter().zip(&g) {
            t.check(close(*v, f.eval(x), 1e-9), || format!("f^■□ ≠ f for {f} at {x}"));
        }
        t.absorb(
            &format!("duality {f}"),
            envelope::envelope_duality_suite(&f, &sets[0], &grid, 1e-9).expect("valid inputs"),
        );
    }
    let atoms = [Semicharacter::rcn(1, 1), Semicharacter::rcn(2, 2), Semicharacter::rcn(3, 0)];
    for f in &atoms {
        for g in &atoms {
            t.absorb(
                &format!("closure {f}, {g}"),
                envelope::semicharacter_closure_suite(f, g, &grid, 1e-9).expect("closed grid"),
            );
        }
    }
    let m = envelope::majorization_gl1(&Semicharacter::rcn(1, 3), &grid, 1e-9);
    t.check(m.c == rat(8, 1) && m.n == 3, || format!("majorization returned ({}, {})", m.c, m.n));
    t.absorb("majorization", m.report);
}

fn main() {
    type Criterion = (u32, &'static str, fn(&mut Tally), Option<Duration>);
    let criteria: [Criterion; 10] = [
        (1, "q-combinatorics", criterion_1, Some(Duration::from_secs(10))),
        (2, "Hopf axiom suites", criterion_2, Some(Duration::from_secs(60))),
        (3, "duality pairings", criterion_3, None),
        (4, "skew isomorphism and classical limit", criterion_4, None),
        (5, "rewrite oracle and confluence", criterion_5, None),
        (6, "Fourier maps", criterion_6, None),
        (7, "seminorm suites", criterion_7, None),
        (8, "fundamental-system dominations", criterion_8, None),
        (9, "reflexivity suite", criterion_9, Some(Duration::from_secs(120))),
        (10, "envelope numerics", criterion_10, None),
    ];
    let only: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (id, name, run, budget) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let mut tally = Tally::default();
        let start = Instant::now();
        run(&mut tally);
        let elapsed = start.elapsed();
        if let Some(b) = budget {
            tally.check(elapsed < b, || format!("runtime {elapsed:.2?} exceeds {b:?}"));
        }
        let pass = tally.failures.is_empty() && tally.checked > 0;
        println!(
            "criterion {id:>2} [{name}]: {} ({} checks, {:.2?})",
            if pass { "PASS" } else { "FAIL" },
            tally.checked,
            elapsed
        );
        for f in tally.failures.iter().take(10) {
            println!("    {f}");
        }
        if !pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
