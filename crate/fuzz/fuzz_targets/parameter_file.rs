#![no_main]

use libfuzzer_sys::fuzz_target;
use skewproj::exactnum::GeneratorBasis;
use skewproj::paramfile::{parse_parameter_text, to_parameter_file};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let mut basis = GeneratorBasis::new();
    if let Ok((matrix, _)) = parse_parameter_text(text, &mut basis) {
        // Accepted tables survive a serialize/reload round trip.
        let rendered =
            serde_json::to_string(&to_parameter_file(&matrix, None)).expect("file serialization");
        let mut reload_basis = GeneratorBasis::new();
        let (back, _) = parse_parameter_text(&rendered, &mut reload_basis)
            .expect("re-serialized table must load");
        assert_eq!(back.size(), matrix.size());
    }
});
