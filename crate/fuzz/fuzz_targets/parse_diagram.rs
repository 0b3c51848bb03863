#![no_main]

use libfuzzer_sys::fuzz_target;
use zpg_core::format::{parse, to_json, DiagramFile};
use zpg_core::yakovlev::check_axioms;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = parse::<DiagramFile>(text) else { return };
    let again: DiagramFile = parse(&to_json(&file)).expect("saved diagram file reparses");
    assert_eq!(again, file);
    // Corrupted maps must load and then be rejected by the axiom check, not crash it.
    if let Ok(d) = file.to_diagram() {
        let _ = check_axioms(&d).failures();
    }
});
