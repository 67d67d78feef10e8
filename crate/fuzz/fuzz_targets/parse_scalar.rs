#![no_main]

use libfuzzer_sys::fuzz_target;
use skewproj::exactnum::{parse_scalar, GeneratorBasis};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let mut basis = GeneratorBasis::new();
    if let Ok(element) = parse_scalar(text, &mut basis) {
        // Accepted scalars render to a canonical form that reparses to an
        // equal element over the same basis.
        let rendered = element.render(&basis);
        let mut reparse_basis = basis.clone();
        let back =
            parse_scalar(&rendered, &mut reparse_basis).expect("canonical rendering must reparse");
        assert_eq!(back, element);
    }
});
