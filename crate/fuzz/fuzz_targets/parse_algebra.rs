//! The full algebra ingestion pipeline must never panic: parse, convert
//! to an engine structure, validate, and re-emit canonically.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = pinczon::format::parse_algebra(text) else {
        return;
    };
    let Ok(structure) = file.to_structure() else {
        return;
    };
    // validation and canonical re-emission on structurally valid input
    let _ = pinczon::structure::validate(&structure);
    if let Ok(out) = pinczon::format::AlgebraFile::from_structure(&structure, "fuzz") {
        let text = out.emit();
        // canonical emission must re-ingest
        let reparsed = pinczon::format::parse_algebra(&text).expect("canonical emission parses");
        assert_eq!(reparsed.emit(), text);
    }
});
