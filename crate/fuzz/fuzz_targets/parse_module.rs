//! Module files against a small fixed algebra: parsing, conversion and
//! the action-axiom checks must never panic.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = pinczon::format::parse_module(text) else {
        return;
    };
    let algebra = pinczon::fixtures::mat2_trace();
    let Ok(module) = file.to_module(algebra.basis().dim()) else {
        return;
    };
    let _ = pinczon::cohomology::check_module(&algebra, &module);
    let _ = pinczon::cohomology::double_extension(&algebra, &module);
});
