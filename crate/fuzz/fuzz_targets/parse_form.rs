//! Form files against the sl(2) basis: parsing, homogeneity validation,
//! cyclicity checks and the bracket with the structure form must never
//! panic.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = pinczon::format::parse_form(text) else {
        return;
    };
    let algebra = pinczon::fixtures::sl2_killing();
    let Ok(form) = file.to_form(algebra.basis()) else {
        return;
    };
    if form.arity() > 4 {
        return;
    }
    if form.is_cyclic() {
        let _ =
            pinczon::bracket::pinczon_bracket(algebra.structure_form(), &form, algebra.pairing());
    }
});
