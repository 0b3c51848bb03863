use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use zpg_core::arith::{GroupParams, DEFAULT_GUARD, DEFAULT_PRECISION};
use zpg_core::cohomology::CohomologyTable;
use zpg_core::constructions::{
    cocycle_from_section, j_module, lemma2_pipeline, splitting_module, theorem1_verify, Theorem1Input,
};
use zpg_core::format::{parse, to_json, DiagramFile, ExtensionFile, FileParams, ModuleFile, Theorem1File};
use zpg_core::modules::{is_injective, is_surjective, PresentedModule};
use zpg_core::oracle::IsoSearchConfig;
use zpg_core::report::{Check, Status};
use zpg_core::suites::{
    axioms_suite, diagram_axioms_report, lemma2_checks, lemma3_suite, prop4_suite, prop5_checks,
    theorem1_suite, yakovlev_suite, SuiteConfig, SuiteReport,
};
use zpg_core::yakovlev::{delta_unchecked, diagrams_isomorphic, format_invariants, DiagramComparison};
use zpg_core::Error;

use crate::output::{emit, render, write_file, Outcome};
use crate::{Command, Construct, Global, Verify};

#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub hint: Option<String>,
}

impl CliError {
    pub fn plain(message: String) -> Self {
        Self { message, hint: None }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let hint = match e {
            Error::PrecisionExhausted { precision, .. } => Some(format!(
                "rerun with a larger --precision (or ZPG_PRECISION), e.g. --precision {}",
                precision * 2
            )),
            _ => None,
        };
        Self {
            message: e.to_string(),
            hint,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn suite_config(g: &Global) -> SuiteConfig {
    let mut iso = IsoSearchConfig::default();
    if let Some(s) = g.seed {
        iso.seed = s;
    }
    if let Some(s) = g.max_samples {
        iso.max_samples = s;
    }
    if let Some(b) = g.enum_bound {
        iso.enumeration_bound = b;
    }
    if let Some(r) = g.max_free_rank {
        iso.max_free_rank = r;
    }
    SuiteConfig {
        precision: g.precision.unwrap_or(DEFAULT_PRECISION),
        guard: g.guard.unwrap_or(DEFAULT_GUARD),
        iso,
    }
}

fn group(g: &Global, cfg: &SuiteConfig) -> CliResult<(u64, u32, GroupParams)> {
    match (g.p, g.n) {
        (Some(p), Some(n)) => Ok((p, n, cfg.params(p, n)?)),
        _ => Err(CliError::plain("--p and --n are required for this command".into())),
    }
}

/// Flags override a file's precision and guard; a disagreeing p or n is an error.
fn apply_flags(g: &Global, fp: &mut FileParams, path: &Path) -> CliResult<()> {
    let mismatch = |what: &str, flag: u64, file: u64| {
        CliError::plain(format!("{}: --{what} {flag} disagrees with the file's {what} = {file}", path.display()))
    };
    if let Some(p) = g.p.filter(|&p| p != fp.p) {
        return Err(mismatch("p", p, fp.p));
    }
    if let Some(n) = g.n.filter(|&n| n != fp.n) {
        return Err(mismatch("n", n as u64, fp.n as u64));
    }
    if let Some(x) = g.precision {
        fp.precision = x;
    }
    if let Some(x) = g.guard {
        fp.guard = x;
    }
    if fp.p == 2 && g.p.is_none() {
        eprintln!("warning: p = 2 is outside the tested range; results are unverified");
    }
    Ok(())
}

fn load<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::plain(format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| {
        let mut err = CliError::from(e);
        err.message = format!("{}: {}", path.display(), err.message);
        err
    })
}

fn load_module(g: &Global, path: &Path) -> CliResult<PresentedModule> {
    let mut file: ModuleFile = load(path)?;
    apply_flags(g, &mut file.params, path)?;
    Ok(file.to_module()?)
}

fn load_input(g: &Global, path: &Path) -> CliResult<Theorem1Input> {
    let mut file: Theorem1File = load(path)?;
    apply_flags(g, &mut file.module.params, path)?;
    Ok(file.to_input()?)
}

fn params_json(params: GroupParams) -> Value {
    json!(FileParams::from_params(params))
}

pub fn run(g: &Global, command: &Command, args: &[String]) -> CliResult<u8> {
    let start = Instant::now();
    let cfg = suite_config(g);
    let (outcome, report_target) = match command {
        Command::Cohomology { module, maps } => (cohomology(&load_module(g, module)?, *maps)?, g.out.as_deref()),
        Command::Delta { module } => (delta(&load_module(g, module)?)?, g.out.as_deref()),
        Command::DeltaCompare { first, second } => {
            let (m1, m2) = (load_module(g, first)?, load_module(g, second)?);
            (delta_compare(&m1, &m2, &cfg)?, g.out.as_deref())
        }
        Command::Construct(c) => (construct(g, &cfg, c)?, None),
        Command::Verify(v) => (verify(g, &cfg, v)?, g.out.as_deref()),
    };
    let rendered = render(&outcome, g.format, args, &cfg, start.elapsed());
    emit(&rendered, report_target)?;
    Ok(outcome.status().exit_code() as u8)
}

// ---------------------------------------------------------------------------
// Module analysis

fn describe_module(m: &PresentedModule) -> String {
    let p = m.params().p();
    format!(
        "module over p={p} n={}: Zp-rank {}, torsion {}\n",
        m.params().n(),
        m.zp_rank(),
        format_invariants(p, &m.torsion_invariants())
    )
}

fn cohomology(m: &PresentedModule, maps: bool) -> CliResult<Outcome> {
    let params = m.params();
    let (p, n) = (params.p(), params.n());
    let table = CohomologyTable::compute(m)?;
    let inv = table.invariants();
    let mut text = describe_module(m);
    let rows: Vec<(String, String, String)> = (1..=n)
        .map(|i| {
            (
                format!("G_{i} (order {p}^{i})"),
                format_invariants(p, &inv[0][i as usize]),
                format_invariants(p, &inv[1][i as usize]),
            )
        })
        .collect();
    let w0 = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max(8);
    let w1 = rows.iter().map(|r| r.1.len()).max().unwrap_or(0).max(4);
    text.push_str(&format!("{:w0$}  {:w1$}  H^1\n", "subgroup", "H^0"));
    for (a, b, c) in &rows {
        text.push_str(&format!("{a:w0$}  {b:w1$}  {c}\n"));
    }
    let groups: Vec<Value> = (1..=n)
        .map(|i| json!({"subgroup": i, "h0": inv[0][i as usize], "h1": inv[1][i as usize]}))
        .collect();
    let mut data = json!({
        "params": params_json(params),
        "zp_rank": m.zp_rank(),
        "torsion": m.torsion_invariants(),
        "groups": groups,
    });
    if maps {
        let ring = params.ring();
        let mut list = Vec::new();
        for degree in 0..2i64 {
            for i in 1..n {
                let res = table.restriction(degree, i + 1, i)?;
                let cor = table.corestriction(degree, i, i + 1)?;
                for (kind, from, to, map) in [("res", i + 1, i, res), ("cor", i, i + 1, cor)] {
                    let rows = map.matrix().to_signed_rows(ring);
                    text.push_str(&format!("{kind} H^{degree}: G_{from} -> G_{to}: {rows:?}\n"));
                    list.push(json!({"kind": kind, "degree": degree, "from": from, "to": to, "matrix": rows}));
                }
            }
        }
        data["maps"] = Value::Array(list);
    }
    Ok(Outcome::new(text, data))
}

fn delta(m: &PresentedModule) -> CliResult<Outcome> {
    let d = delta_unchecked(m)?;
    let mut outcome = Outcome::new(
        format!("{}{}", describe_module(m), d.describe()),
        json!({"diagram": DiagramFile::from_diagram(&d)?}),
    );
    outcome.checks = diagram_axioms_report(&d).checks;
    Ok(outcome)
}

fn delta_compare(m1: &PresentedModule, m2: &PresentedModule, cfg: &SuiteConfig) -> CliResult<Outcome> {
    let (d1, d2) = (delta_unchecked(m1)?, delta_unchecked(m2)?);
    let verdict = diagrams_isomorphic(&d1, &d2, &cfg.iso.search())?;
    let (word, status, reason) = match &verdict {
        DiagramComparison::Isomorphic(_) => ("isomorphic", Status::Pass, String::new()),
        DiagramComparison::NotIsomorphic(why) => ("not isomorphic", Status::Fail, why.clone()),
        DiagramComparison::Undecided { samples } => {
            ("undecided", Status::Undecided, format!("no isomorphism after {samples} samples"))
        }
    };
    let mut text = format!(
        "first:  {}\nsecond: {}\nverdict: {word}",
        format_levels(&d1.level_invariants(), m1.params().p()),
        format_levels(&d2.level_invariants(), m2.params().p()),
    );
    if !reason.is_empty() {
        text.push_str(&format!(" ({reason})"));
    }
    text.push('\n');
    let ring = *m1.ring();
    let gammas: Vec<Vec<Vec<i64>>> = match &verdict {
        DiagramComparison::Isomorphic(iso) => iso.gammas.iter().map(|g| g.matrix().to_signed_rows(&ring)).collect(),
        _ => Vec::new(),
    };
    for (i, g) in gammas.iter().enumerate() {
        text.push_str(&format!("gamma_{} = {g:?}\n", i + 1));
    }
    let mut outcome = Outcome::new(
        text,
        json!({
            "verdict": word,
            "reason": reason,
            "levels": [d1.level_invariants(), d2.level_invariants()],
            "gammas": gammas,
        }),
    );
    outcome.checks.push(Check::new("diagrams isomorphic", status, reason));
    Ok(outcome)
}

fn format_levels(levels: &[Vec<u32>], p: u64) -> String {
    levels
        .iter()
        .enumerate()
        .map(|(i, inv)| format!("A_{} = {}", i + 1, format_invariants(p, inv)))
        .collect::<Vec<_>>()
        .join(", ")
}

// ---------------------------------------------------------------------------
// Constructions

/// Writes `contents` to `--out` when given; otherwise the caller embeds it.
fn deliver(g: &Global, what: &str, contents: &str, text: &mut String) -> CliResult<()> {
    if let Some(path) = &g.out {
        write_file(path, contents)?;
        text.push_str(&format!("wrote {what} to {}\n", path.display()));
    } else {
        text.push_str(contents);
    }
    Ok(())
}

fn construct(g: &Global, cfg: &SuiteConfig, c: &Construct) -> CliResult<Outcome> {
    match c {
        Construct::SplitModule { extension } => {
            let mut file: ExtensionFile = load(extension)?;
            apply_flags(g, &mut file.params, extension)?;
            let s = splitting_module(&file.to_extension()?)?;
            let out = ModuleFile::from_module(&s.module);
            let mut text = describe_module(&s.module);
            deliver(g, "the splitting module", &to_json(&out), &mut text)?;
            let mut outcome = Outcome::new(text, json!({"module": out}));
            outcome.checks = vec![
                Check::pass_if("A -> M injective", is_injective(&s.inclusion)?, ""),
                Check::pass_if("M -> I surjective", is_surjective(&s.projection)?, ""),
                Check::pass_if("A -> M -> I composes to zero", s.projection.compose(&s.inclusion)?.is_zero(), ""),
            ];
            Ok(outcome)
        }
        Construct::JModule { e } => {
            let (_, _, params) = group(g, cfg)?;
            let m = j_module(params, *e)?;
            let out = ModuleFile::from_module(&m);
            let mut text = describe_module(&m);
            deliver(g, &format!("J_{e}"), &to_json(&out), &mut text)?;
            Ok(Outcome::new(text, json!({"module": out})))
        }
        Construct::Lemma2 { input } => {
            let inp = load_input(g, input)?;
            let out = lemma2_pipeline(&inp)?;
            let (ext, _) = cocycle_from_section(&out.pi)?;
            let a = ModuleFile::from_module(&out.a.module);
            let b = ModuleFile::from_module(&out.b.module);
            let e = ExtensionFile::from_extension(&ext)?;
            let p = inp.c.params().p();
            let ring = *inp.c.ring();
            let mut text = format!(
                "A: {}\nB: {}",
                format_invariants(p, &out.a.module.torsion_invariants()),
                describe_module(&out.b.module)
            );
            let shifts: Vec<Value> = out
                .shifts
                .iter()
                .map(|w| {
                    let i = w.subgroup_index;
                    let rows = w.map.matrix().to_signed_rows(&ring);
                    text.push_str(&format!(
                        "shift H^{}(G_{i}, C) -> H^{}(G_{i}, B): {rows:?}{}\n",
                        w.degree,
                        w.degree as i32 - 2,
                        if w.bijective { "" } else { " (not bijective)" }
                    ));
                    json!({
                        "degree": w.degree,
                        "subgroup": w.subgroup_index,
                        "matrix": rows,
                        "bijective": w.bijective,
                    })
                })
                .collect();
            let witnesses = serde_json::to_string_pretty(&shifts).expect("witnesses serialize") + "\n";
            if let Some(dir) = &g.out {
                std::fs::create_dir_all(dir)
                    .map_err(|err| CliError::plain(format!("cannot create {}: {err}", dir.display())))?;
                let files = [
                    ("a.json", to_json(&a)),
                    ("b.json", to_json(&b)),
                    ("extension.json", to_json(&e)),
                    ("shifts.json", witnesses),
                ];
                for (name, contents) in files {
                    let path: PathBuf = dir.join(name);
                    write_file(&path, &contents)?;
                    text.push_str(&format!("wrote {}\n", path.display()));
                }
            }
            let mut outcome = Outcome::new(text, json!({"a": a, "b": b, "extension": e, "shifts": shifts}));
            outcome.checks = lemma2_checks("C", &inp);
            Ok(outcome)
        }
        Construct::Cocycle { input } => {
            let inp = load_input(g, input)?;
            let out = lemma2_pipeline(&inp)?;
            let (ext, _) = cocycle_from_section(&out.pi)?;
            let e = ExtensionFile::from_extension(&ext)?;
            let mut text = format!(
                "extension of I by {}\n",
                format_invariants(inp.c.params().p(), &ext.kernel().torsion_invariants())
            );
            deliver(g, "the extension", &to_json(&e), &mut text)?;
            let mut outcome = Outcome::new(text, json!({"extension": e}));
            outcome.checks.push(Check::pass_if("cocycle identity", ext.check_cocycle().is_ok(), ""));
            Ok(outcome)
        }
    }
}

// ---------------------------------------------------------------------------
// Batteries

fn from_suite(r: SuiteReport) -> Outcome {
    let mut outcome = Outcome::new(format!("suite {}\n", r.suite), json!({"suite": r.suite}));
    outcome.checks = r.checks;
    outcome
}

fn verify(g: &Global, cfg: &SuiteConfig, v: &Verify) -> CliResult<Outcome> {
    let report = match v {
        Verify::Lemma3 { e_max } => {
            let (p, n, _) = group(g, cfg)?;
            lemma3_suite(cfg, &[(p, n)], *e_max)
        }
        Verify::Prop4 { unit_rank } => {
            let (p, n, _) = group(g, cfg)?;
            prop4_suite(cfg, p, n, *unit_rank)
        }
        Verify::Prop5 { r, e, unit_rank } => {
            let (p, n, _) = group(g, cfg)?;
            let exps = match (r, e.as_slice()) {
                (Some(r), [single]) => vec![*single; *r],
                (Some(r), list) if list.len() != *r => {
                    return Err(CliError::plain(format!("--r {r} but {} exponents given", list.len())))
                }
                (_, list) => list.to_vec(),
            };
            SuiteReport::new("prop5", prop5_checks(cfg, p, n, &exps, *unit_rank))
        }
        Verify::Theorem1 { input: Some(path) } => {
            let inp = load_input(g, path)?;
            let r = theorem1_verify(&inp, &cfg.iso)?;
            SuiteReport::new("theorem1", r.checks)
        }
        Verify::Theorem1 { input: None } => {
            let (p, n, _) = group(g, cfg)?;
            theorem1_suite(cfg, &[(p, n)])
        }
        Verify::Axioms { diagram: Some(path), .. } => {
            let mut file: DiagramFile = load(path)?;
            apply_flags(g, &mut file.params, path)?;
            diagram_axioms_report(&file.to_diagram()?)
        }
        Verify::Axioms { diagram: None, count } => {
            let (p, n, _) = group(g, cfg)?;
            axioms_suite(cfg, &[(p, n)], *count)
        }
        Verify::Yakovlev => {
            let (p, n, _) = group(g, cfg)?;
            yakovlev_suite(cfg, &[(p, n)])
        }
    };
    Ok(from_suite(report))
}
