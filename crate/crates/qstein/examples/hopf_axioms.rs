//! Hopf axioms of the graded function algebras, their cyclic versions, and
//! the pairings between them.

use qstein::algebras::{Algebra, AlgebraId, ConcretePair, GradedElem};

fn main() {
    let ids = AlgebraId::ALL_INFINITE.into_iter().chain([AlgebraId::CyclicFun(4), AlgebraId::CyclicCharges(4)]);
    for id in ids {
        let report = Algebra::check_axioms(id, 4);
        println!(
            "{:<18} {:>6} identities  {}",
            id.to_string(),
            report.checked,
            if report.passed() { "ok" } else { "FAILED" }
        );
    }

    let laurent = Algebra::for_window(AlgebraId::LaurentCx, 4);
    let z = GradedElem::basis(AlgebraId::LaurentCx, 1).unwrap();
    println!("Δ(z) = {:?}", laurent.coproduct(&z).unwrap());
    println!("S(z) = {:?}", laurent.antipode(&z).unwrap().coeffs());

    for pair in ConcretePair::all(8) {
        let report = pair.check_duality(3);
        println!(
            "{} ↔ {}: {} identities {}",
            pair.function_side(),
            pair.dual_side(),
            report.checked,
            if report.passed() { "ok" } else { "FAILED" }
        );
    }
}
