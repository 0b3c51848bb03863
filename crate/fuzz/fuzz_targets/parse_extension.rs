#![no_main]

use libfuzzer_sys::fuzz_target;
use zpg_core::constructions::splitting_module;
use zpg_core::format::{parse, to_json, ExtensionFile};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = parse::<ExtensionFile>(text) else { return };
    let again: ExtensionFile = parse(&to_json(&file)).expect("saved extension file reparses");
    assert_eq!(again, file);
    if let Ok(e) = file.to_extension() {
        let _ = splitting_module(&e);
    }
});
