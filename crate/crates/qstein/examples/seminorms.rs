//! Submultiplicative seminorms on the function algebras and on `az+b`,
//! including the family that fails for small D.

use num_rational::BigRational;
use qstein::scalar::QParam;
use qstein::seminorm::{
    check_spec_submultiplicative, pdk_witness, pdk_witness_violates, random_pairs, vanishing_bound, SeminormSpec,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn main() {
    let q: QParam = "1/2".parse().unwrap();
    let specs = [
        SeminormSpec::NormCOC(rat(2, 1)),
        SeminormSpec::NormCOCx(rat(3, 2)),
        SeminormSpec::NormNOZ(3),
        SeminormSpec::NormCCharges(rat(2, 1)),
        SeminormSpec::Rn(3),
        SeminormSpec::NormCAzb(rat(2, 1)),
        SeminormSpec::Pdk { d: rat(4, 1), k: 2, q: q.clone() },
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for spec in &specs {
        let samples = random_pairs(spec.space(), &mut rng, 300, 3, true);
        let report = check_spec_submultiplicative(spec, &samples, 1e-9).unwrap();
        println!(
            "{:<14} {} pairs ({} exact), violations: {}",
            spec.family_name(),
            report.checked,
            report.exact_checks,
            report.violations.len()
        );
    }

    let (u, v) = pdk_witness(2);
    println!("witness pair: u = {u}, v = {v}");
    for d in [rat(1, 1), rat(2, 1), rat(4, 1)] {
        println!("D = {d}: witness breaks submultiplicativity: {}", pdk_witness_violates(&d, 2, &q));
    }
    println!("p(t^j) = 0 for j > {}, when p(z) = p(z⁻¹) = 2", vanishing_bound(&q, &rat(2, 1), &rat(2, 1)).unwrap());
}
