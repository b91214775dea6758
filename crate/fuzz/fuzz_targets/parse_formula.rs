#![no_main]

use genlogic::logic::{parse_formula, scan_atoms, Language};
use libfuzzer_sys::fuzz_target;

// The parser must reject garbage with an error, never a panic.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(atoms) = scan_atoms(text) else {
        return;
    };
    let Ok(lang) = Language::with_cap(atoms, 24) else {
        return;
    };
    let _ = parse_formula(text, &lang);
});
