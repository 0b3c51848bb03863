#![no_main]

use libfuzzer_sys::fuzz_target;
use zpg_core::cohomology::tate;
use zpg_core::format::{parse, to_json, ModuleFile};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = parse::<ModuleFile>(text) else { return };
    let again: ModuleFile = parse(&to_json(&file)).expect("saved module file reparses");
    assert_eq!(again, file);
    // Errors are fine; panics and hangs are not.
    if let Ok(m) = file.to_module() {
        let n = m.params().n();
        let _ = tate(0, n, &m);
        let _ = tate(1, n, &m);
    }
});
