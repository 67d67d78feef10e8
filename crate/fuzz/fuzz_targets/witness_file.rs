#![no_main]

use libfuzzer_sys::fuzz_target;
use skewproj::catalog;
use skewproj::exactnum::GeneratorBasis;
use skewproj::paramfile::{parse_witness_text, ParsedWitness};
use skewproj::skewalg::{verify_graded_witness, verify_iso_witness};
use skewproj::torus::verify_birational_witness;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let mut basis = GeneratorBasis::new();
    let omega = catalog::load("ex2-x", &mut basis).expect("bundled example");
    let omega_p = catalog::load("ex2-xprime", &mut basis).expect("bundled example");
    // Whatever the bytes decode to, verification must return cleanly.
    if let Ok(witness) = parse_witness_text(text, &mut basis) {
        match witness {
            ParsedWitness::Iso(sigma) => {
                let _ = verify_iso_witness(&omega, &omega_p, &sigma);
            }
            ParsedWitness::Graded(w) => {
                let _ = verify_graded_witness(&omega, &omega_p, &w);
            }
            ParsedWitness::Birational(a) => {
                let _ = verify_birational_witness(&omega, &omega_p, &a);
            }
        }
    }
});
