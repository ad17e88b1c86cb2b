//! Gaussian binomial coefficients and the quantum binomial theorem.

use qstein::qcomb::{q_binomial, q_factorial, verify_chu_vandermonde, verify_quantum_binomial, QBinomialTable};
use qstein::scalar::QParam;

fn main() {
    let q: QParam = "1/2".parse().expect("valid q");
    println!("q = {q}");
    let table = QBinomialTable::new(6, &q);
    for n in 0..=6 {
        let row: Vec<String> = (0..=n as i64).map(|k| table.get(n, k).to_string()).collect();
        println!("n = {n}: {}", row.join("  "));
    }
    println!("[4 choose 2]_q = {}", q_binomial(4, 2, &q));
    println!("(5)!_q = {}", q_factorial(5, &q));

    let i: QParam = "i".parse().expect("valid q");
    println!("[4 choose 2] at q = i: {}", q_binomial(4, 2, &i));
    for n in 0..=8 {
        assert!(verify_quantum_binomial(n, &q));
    }
    assert!(verify_chu_vandermonde(3, 4, 5, &q));
    println!("(x+y)^n expands with q-binomial coefficients when yx = qxy, for n ≤ 8");
}
