//! The double-dual checks for `az+b`: every submultiplicative seminorm is
//! dominated by a canonical one, on both sides of the pairing.

use qstein::scalar::QParam;
use qstein::transform::verify_azb_reflexivity;

fn main() {
    for q in ["1/2", "2", "i", "3/5+4/5*i"] {
        let q: QParam = q.parse().unwrap();
        let report = verify_azb_reflexivity(&q, 3, 9);
        println!("q = {q:<10} {:>4} checks  {}", report.checked, if report.passed() { "ok" } else { "FAILED" });
        for f in report.failures.iter().take(3) {
            println!("    {f}");
        }
    }
}
