#![no_main]

use genlogic::logic::{parse_formula, scan_atoms, Language};
use libfuzzer_sys::fuzz_target;

// Printing uses minimal parentheses; reparsing the printed form must give
// back the identical tree.
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
    if let Ok(formula) = parse_formula(text, &lang) {
        let printed = formula.to_string();
        let reparsed = parse_formula(&printed, &lang)
            .expect("printed formula must reparse");
        assert_eq!(formula, reparsed, "roundtrip changed the tree: {printed}");
    }
});
