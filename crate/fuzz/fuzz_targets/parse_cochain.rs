//! Cochain files against the sl(2) fixtures: parsing, flavor validation
//! and the classical coboundary must never panic.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = pinczon::format::parse_cochain(text) else {
        return;
    };
    let algebra = pinczon::fixtures::sl2_killing();
    let module = pinczon::fixtures::sl2_adjoint_module();
    let Ok(cochain) = file.to_cochain(
        pinczon::cohomology::CochainFlavor::Chevalley,
        algebra.basis().dim(),
        module.dim(),
    ) else {
        return;
    };
    if cochain.arity > 3 {
        return;
    }
    if cochain.validate(algebra.basis()).is_ok() {
        let _ = pinczon::cohomology::classical_differential(&cochain, &algebra, &module);
    }
});
