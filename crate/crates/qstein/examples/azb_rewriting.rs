//! Normal forms in `az+b` by rewriting words in z, z⁻¹ and t, and the Hopf
//! structure on the resulting basis `z^n t^k`.

use qstein::azb::{
    azb_antipode, azb_coproduct, azb_counit, check_azb_dual_hopf, check_azb_hopf, normal_form, normal_form_random,
    GeneratorWord, Letter,
};
use qstein::scalar::QParam;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let q: QParam = "2".parse().unwrap();
    let word = GeneratorWord::new(vec![Letter::T, Letter::T, Letter::Z, Letter::Zinv, Letter::Z]);
    let nf = normal_form(&q, &word);
    println!("t t z z⁻¹ z = {nf:?}");

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let w = GeneratorWord::random(&mut rng, 8);
        let a = normal_form(&q, &w);
        let b = normal_form_random(&q, &w, &mut rng);
        assert_eq!(a, b, "rewriting is confluent");
    }
    println!("random rewriting orders agree on 5 random words");

    let t = normal_form(&q, &GeneratorWord::new(vec![Letter::T]));
    println!("Δ(t) = {:?}", azb_coproduct(&q, &t));
    println!("S(t) = {:?}", azb_antipode(&q, &t));
    println!("ε(t) = {}", azb_counit(&t));

    for q in ["1/2", "i", "3/5+4/5*i"] {
        let q: QParam = q.parse().unwrap();
        let primal = check_azb_hopf(&q, 3);
        let dual = check_azb_dual_hopf(&q, 2);
        println!(
            "q = {q}: primal {} checks {}, dual {} checks {}",
            primal.checked,
            if primal.passed() { "ok" } else { "FAILED" },
            dual.checked,
            if dual.passed() { "ok" } else { "FAILED" }
        );
    }
}
