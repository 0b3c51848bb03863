#![no_main]

use libfuzzer_sys::fuzz_target;
use zpg_core::constructions::lemma2_pipeline;
use zpg_core::format::{parse, to_json, Theorem1File};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = parse::<Theorem1File>(text) else { return };
    let again: Theorem1File = parse(&to_json(&file)).expect("saved input file reparses");
    assert_eq!(again, file);
    if let Ok(input) = file.to_input() {
        let _ = lemma2_pipeline(&input);
    }
});
