//! The fuzz corpus seeds stay valid as the file formats evolve.

use std::path::PathBuf;

use zpg_core::format::{parse, to_json, DiagramFile, ExtensionFile, ModuleFile, Theorem1File};
use zpg_core::yakovlev::check_axioms;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|f| {
            let path = f.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn module_seeds_build_unless_oversized() {
    for (name, text) in seeds("parse_module") {
        let f: ModuleFile = parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse::<ModuleFile>(&to_json(&f)).unwrap(), f, "{name}");
        assert_eq!(f.to_module().is_ok(), !name.starts_with("oversized"), "{name}");
    }
}

#[test]
fn extension_seeds_build_unless_oversized() {
    for (name, text) in seeds("parse_extension") {
        let f: ExtensionFile = parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse::<ExtensionFile>(&to_json(&f)).unwrap(), f, "{name}");
        assert_eq!(f.to_extension().is_ok(), !name.starts_with("oversized"), "{name}");
    }
}

#[test]
fn diagram_seeds_load_and_corruption_is_caught() {
    for (name, text) in seeds("parse_diagram") {
        let f: DiagramFile = parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse::<DiagramFile>(&to_json(&f)).unwrap(), f, "{name}");
        let d = f.to_diagram().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(check_axioms(&d).all_pass(), !name.starts_with("corrupted"), "{name}");
    }
}

#[test]
fn theorem1_seeds_build() {
    for (name, text) in seeds("parse_theorem1") {
        let f: Theorem1File = parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse::<Theorem1File>(&to_json(&f)).unwrap(), f, "{name}");
        f.to_input().unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
