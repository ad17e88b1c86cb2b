//! The skew-polynomial construction over a commutative Hopf algebra, its
//! identification with `az+b`, and the classical limit at q = 1.

use qstein::algebras::AlgebraId;
use qstein::azb::{classical_limit_check, skew_iso_check};
use qstein::scalar::QParam;
use qstein::skew::{check_quantum_pair, check_skew, QuantumPair};

fn main() {
    for q in ["1/2", "2", "i"] {
        let q: QParam = q.parse().unwrap();
        let pair = QuantumPair::dilation(AlgebraId::LaurentCx, &q, 6).unwrap();
        println!("q = {q}: dilation is a quantum pair: {}", check_quantum_pair(&pair));
        let report = check_skew(AlgebraId::LaurentCx, &q, 2).unwrap();
        println!("   skew Hopf axioms: {} checks, passed = {}", report.checked, report.passed());
        println!("   skew extension ≅ az+b: {}", skew_iso_check(&q, 3));
    }
    println!("q = 1 recovers the classical group: {}", classical_limit_check(3));
}
