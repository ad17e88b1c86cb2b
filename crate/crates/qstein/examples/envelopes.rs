//! Outer and inner envelopes of finite sets of Laurent polynomials on a
//! grid in ℂ×, and semicharacter majorization.

use qstein::envelope::{
    envelope_duality_suite, inner_envelope_of_polar, majorization_gl1, outer_envelope, semicharacter_closure_suite,
    FunctionSet, GridDomain, Semicharacter,
};
use qstein::scalar::GaussianRational;

fn main() {
    let grid = GridDomain::pow2(3);
    let d =
        FunctionSet::monomials_with_unit(&[(GaussianRational::from_int(2), 1), (GaussianRational::ratio(1, 2), -1)]);
    let outer = outer_envelope(&d, &grid).unwrap();
    let inner = inner_envelope_of_polar(&d, &grid).unwrap();
    for (x, (o, i)) in grid.points.iter().zip(outer.iter().zip(&inner)).take(8) {
        println!("x = {x:<8} outer = {o:<10.4} inner = {i:.4}");
    }

    let f = Semicharacter::rcn(2, 1);
    let duality = envelope_duality_suite(&f, &d, &grid, 1e-9).unwrap();
    println!("duality suite for {f}: {} checks, passed = {}", duality.checked, duality.passed());

    let g = Semicharacter::product(Semicharacter::rcn(1, 1), Semicharacter::rcn(3, 2));
    let closure = semicharacter_closure_suite(&f, &g, &grid, 1e-9).unwrap();
    println!("closure suite for {f}, {g}: passed = {}", closure.passed());

    let m = majorization_gl1(&Semicharacter::rcn(1, 3), &GridDomain::pow2(4), 1e-9);
    println!("r_1^3 ≤ r_{}^{} on the grid: {}", m.c, m.n, m.report.passed());
}
