//! Basis maps between the function algebras and their duals, the finite
//! Fourier transform on ℤ/m, and the Arens–Michael envelope checks.

use qstein::algebras::{AlgebraId, GradedElem};
use qstein::combination::Combination;
use qstein::transform::{
    cyclic_fourier_exact, cyclic_fourier_f64, verify_am_envelope, verify_cyclic_fourier, verify_hopf_homomorphism,
    BasisMap, MapName,
};

fn main() {
    for name in [MapName::SharpZ, MapName::SharpCx, MapName::SharpC] {
        let m = BasisMap::new(name);
        let hom = verify_hopf_homomorphism(&m, 6);
        let env = verify_am_envelope(&m, 3, 3, 30, 1);
        println!(
            "{name}: {} → {}, Hopf homomorphism {} ({} checks), envelope {} ({} checks)",
            m.source,
            m.target,
            hom.passed(),
            hom.checked,
            env.passed(),
            env.checked
        );
    }

    let d3 = GradedElem::basis(AlgebraId::ChargesZ, 3).unwrap();
    let image = BasisMap::new(MapName::SharpZ).apply(&d3).unwrap();
    println!("sharpZ(δ³) = {:?}", image.coeffs());

    let delta1 = Combination::basis(1);
    for m in [1u32, 2, 3, 4] {
        let report = verify_cyclic_fourier(m, 1e-9);
        match cyclic_fourier_exact(m, &delta1) {
            Some(image) => println!("ℤ/{m}: δ¹ ↦ {image:?} (exact), {} checks", report.checked),
            None => println!("ℤ/{m}: δ¹ ↦ {:?} (float), {} checks", cyclic_fourier_f64(m, &delta1), report.checked),
        }
    }
}
