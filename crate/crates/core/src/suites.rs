//! Verification batteries, one per result being checked, with reports that
//! are deterministic given the seed (no timing, no addresses).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{GroupParams, GroupRingElement, DEFAULT_GUARD, DEFAULT_PRECISION};
use crate::cohomology::{is_cohomologically_trivial, tate, CohomologyTable};
use crate::constructions::{
    cocycle_from_section, h_isomorphism, j_module, j_submodule, lemma2_pipeline, lemma3_resolution,
    predicted_unit_structure, splitting_module, theorem1_verify, ExtensionData, Theorem1Input,
};
use crate::error::{Error, Result};
use crate::modules::{
    augmentation_ideal, direct_sum, direct_sum_all, fixed_points, free_module, integers_trivial,
    trivial_module, GroupRingPresentation, PresentedModule,
};
use crate::oracle::{modules_isomorphic, stably_isomorphic, IsoOutcome, IsoSearchConfig, StableOutcome};
use crate::report::{overall, Check, Status};
use crate::yakovlev::{check_axioms, delta, delta_unchecked, diagrams_isomorphic, DiagramComparison, YakovlevDiagram};

/// Shared settings for every battery.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub precision: u32,
    pub guard: u32,
    pub iso: IsoSearchConfig,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            precision: DEFAULT_PRECISION,
            guard: DEFAULT_GUARD,
            iso: IsoSearchConfig::default(),
        }
    }
}

impl SuiteConfig {
    pub fn params(&self, p: u64, n: u32) -> Result<GroupParams> {
        GroupParams::new(p, n, self.precision, self.guard)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.iso.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub status: Status,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: &str, checks: Vec<Check>) -> Self {
        Self {
            suite: suite.to_string(),
            status: overall(&checks),
            checks,
        }
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status != Status::Pass).collect()
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "suite {}: {} ({} checks)\n",
            self.suite,
            self.status.label(),
            self.checks.len()
        );
        for c in &self.checks {
            out.push_str(&format!("  [{}] {}", c.status.label(), c.name));
            if !c.detail.is_empty() {
                out.push_str(&format!(": {}", c.detail));
            }
            out.push('\n');
        }
        out
    }
}

/// Turns an error inside a check into a failing check instead of aborting the battery.
fn attempt(name: &str, f: impl FnOnce() -> Result<Check>) -> Check {
    f().unwrap_or_else(|e| Check::new(name, Status::Fail, format!("error: {e}")))
}

fn expect_iso(name: &str, r: &IsoOutcome) -> Check {
    match r {
        IsoOutcome::Isomorphic(_) => Check::new(name, Status::Pass, ""),
        IsoOutcome::NotIsomorphic(w) => Check::new(name, Status::Fail, w.clone()),
        IsoOutcome::Undecided { samples } => Check::new(name, Status::Undecided, format!("{samples} samples")),
    }
}

fn expect_not_iso(name: &str, r: &IsoOutcome) -> Check {
    match r {
        IsoOutcome::NotIsomorphic(w) => Check::new(name, Status::Pass, w.clone()),
        IsoOutcome::Isomorphic(_) => Check::new(name, Status::Fail, "an isomorphism was found"),
        IsoOutcome::Undecided { samples } => Check::new(name, Status::Undecided, format!("{samples} samples")),
    }
}

fn expect_diagram_iso(name: &str, r: &DiagramComparison) -> Check {
    match r {
        DiagramComparison::Isomorphic(_) => Check::new(name, Status::Pass, ""),
        DiagramComparison::NotIsomorphic(w) => Check::new(name, Status::Fail, w.clone()),
        DiagramComparison::Undecided { samples } => {
            Check::new(name, Status::Undecided, format!("{samples} samples"))
        }
    }
}

fn cyclic(p: u64, e: u32) -> String {
    match e {
        0 => "0".into(),
        1 => format!("Z/{p}"),
        _ => format!("Z/{p}^{e}"),
    }
}

/// `Ĥ^0(G, m)`, which is `Ĥ^2(G, m)` by periodicity.
fn h2(m: &PresentedModule) -> Result<Vec<u32>> {
    Ok(tate(0, m.params().n(), m)?.invariant_factors())
}

// ---------------------------------------------------------------------------
// J_e family

/// Cohomology, resolution, `h` and pairwise distinctness of `J_0 .. J_{e_max}`.
pub fn lemma3_suite(cfg: &SuiteConfig, configs: &[(u64, u32)], e_max: Option<u32>) -> SuiteReport {
    let mut checks = Vec::new();
    for &(p, n) in configs {
        let tag = format!("p={p} n={n}");
        let params = match cfg.params(p, n) {
            Ok(pr) => pr,
            Err(e) => {
                checks.push(Check::new(format!("{tag}: parameters"), Status::Fail, e.to_string()));
                continue;
            }
        };
        let top = e_max.unwrap_or(n + 1);
        let mut js = Vec::new();
        for e in 0..=top {
            let name = format!("{tag} e={e}: Ĥ^i(G_j, J_e) = Z/p^min(e,j)");
            checks.push(attempt(&name, || {
                let j = j_module(params, e)?;
                let mut bad = Vec::new();
                for i in 1..=n {
                    let want: Vec<u32> = if e.min(i) == 0 { vec![] } else { vec![e.min(i)] };
                    for d in 0..2 {
                        let got = tate(d, i, &j)?.invariant_factors();
                        if got != want {
                            bad.push(format!("degree {d}, G_{i}: {got:?}, expected {want:?}"));
                        }
                    }
                }
                js.push(j);
                Ok(Check::pass_if(&name, bad.is_empty(), bad.join("; ")))
            }));
            let name = format!("{tag} e={e}: J_e -> Zp[G]^2 -> Zp[G] -> Z/p^e exact");
            checks.push(attempt(&name, || {
                let r = lemma3_resolution(params, e)?;
                let detail = format!(
                    "injective {}, exact at Zp[G]^2 {}, exact at Zp[G] {}, onto {}, |coker g| = p^{}",
                    r.injective, r.exact_at_free2, r.exact_at_free1, r.surjective, r.cokernel_log_order
                );
                Ok(Check::pass_if(&name, r.is_exact() && r.cokernel_log_order == e, detail))
            }));
            if e >= n {
                let name = format!("{tag} e={e}: h: Zp + I -> J_e bijective");
                checks.push(attempt(&name, || {
                    let h = h_isomorphism(params, e)?;
                    Ok(Check::pass_if(
                        &name,
                        h.bijective && h.independent_of_lift,
                        format!("bijective {}, independent of lift {}", h.bijective, h.independent_of_lift),
                    ))
                }));
            }
        }
        if js.len() as u32 != top + 1 {
            continue;
        }
        for a in 0..=n.min(top) {
            for b in a + 1..=n.min(top) {
                let name = format!("{tag}: J_{a} is not isomorphic to J_{b}");
                checks.push(attempt(&name, || {
                    Ok(expect_not_iso(&name, &modules_isomorphic(&js[a as usize], &js[b as usize], &cfg.iso)?))
                }));
            }
        }
        if top > n {
            let name = format!("{tag}: J_{} ≅ Zp + I", n + 1);
            checks.push(attempt(&name, || {
                let target = direct_sum(&integers_trivial(params), &augmentation_ideal(params))?;
                Ok(expect_iso(&name, &modules_isomorphic(&js[n as usize + 1], &target, &cfg.iso)?))
            }));
        }
    }
    SuiteReport::new("lemma3", checks)
}

// ---------------------------------------------------------------------------
// Structural identities of Δ(M)

/// A random presentation on one or two generators with small coefficients.
pub fn random_presentation(params: GroupParams, rng: &mut ChaCha8Rng) -> Result<GroupRingPresentation> {
    let g = params.order();
    let k = rng.gen_range(1..=2);
    let nrel = rng.gen_range(0..=2);
    let mut relations = Vec::new();
    for _ in 0..nrel {
        let rel = (0..k)
            .map(|_| {
                let coeffs: Vec<i64> = (0..g)
                    .map(|_| if rng.gen_bool(0.4) { rng.gen_range(-3..=3) } else { 0 })
                    .collect();
                GroupRingElement::from_signed(params, &coeffs)
            })
            .collect::<Result<Vec<_>>>()?;
        relations.push(rel);
    }
    GroupRingPresentation::new(params, k, relations)
}

/// Draws modules until one survives at the working precision; draws that
/// exhaust precision are discarded (at most `4 * count` draws in total).
pub fn random_modules(params: GroupParams, count: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, PresentedModule)> {
    let mut out = Vec::new();
    let mut draw = 0;
    while out.len() < count && draw < 4 * count {
        draw += 1;
        let m = random_presentation(params, rng).and_then(|pr| pr.to_module());
        match m {
            Ok(m) => out.push((draw, m)),
            Err(Error::PrecisionExhausted { .. }) => {}
            Err(_) => {}
        }
    }
    out
}

pub fn axioms_suite(cfg: &SuiteConfig, configs: &[(u64, u32)], count: usize) -> SuiteReport {
    let mut checks = Vec::new();
    for &(p, n) in configs {
        let tag = format!("p={p} n={n}");
        let params = match cfg.params(p, n) {
            Ok(pr) => pr,
            Err(e) => {
                checks.push(Check::new(format!("{tag}: parameters"), Status::Fail, e.to_string()));
                continue;
            }
        };
        let mut rng = cfg.rng(p << 8 | n as u64);
        let modules = random_modules(params, count, &mut rng);
        checks.push(Check::pass_if(
            format!("{tag}: drew {count} modules"),
            modules.len() == count,
            format!("{} accepted", modules.len()),
        ));
        for (draw, m) in modules {
            let name = format!("{tag} draw {draw} (rank {}, torsion {:?}): Δ(M) axioms", m.zp_rank(), m.torsion_invariants());
            checks.push(attempt(&name, || {
                let d = delta_unchecked(&m)?;
                let r = check_axioms(&d);
                Ok(Check::pass_if(&name, r.all_pass(), r.failures().join("; ")))
            }));
        }
    }
    SuiteReport::new("axioms", checks)
}

/// Axiom report for a single (possibly corrupted) diagram.
pub fn diagram_axioms_report(d: &YakovlevDiagram) -> SuiteReport {
    let r = check_axioms(d);
    let checks = r
        .levels
        .iter()
        .map(|l| {
            let prefix = format!("level {}: ", l.index);
            let fails: Vec<String> = r
                .failures()
                .into_iter()
                .filter_map(|f| f.strip_prefix(&prefix).map(str::to_string))
                .collect();
            Check::pass_if(format!("level {}", l.index), l.passes(), fails.join("; "))
        })
        .collect();
    SuiteReport::new("axioms", checks)
}

// ---------------------------------------------------------------------------
// Splitting modules

/// The ten extensions of the splitting battery, labelled.
pub fn extension_battery(cfg: &SuiteConfig) -> Result<Vec<(String, ExtensionData)>> {
    let p31 = cfg.params(3, 1)?;
    let p32 = cfg.params(3, 2)?;
    let finite = |params, exps: Vec<Option<u32>>, rows: &[Vec<i64>]| {
        PresentedModule::new(
            params,
            exps,
            crate::arith::Matrix::from_signed_rows(rows, GroupParams::ring(&params)),
        )
    };
    let z9_twisted = finite(p31, vec![Some(2)], &[vec![4]])?;
    let unipotent = finite(p31, vec![Some(1), Some(1)], &[vec![1, 1], vec![0, 1]])?;
    Ok(vec![
        ("zero kernel".into(), ExtensionData::split(PresentedModule::zero(p31))?),
        ("split, trivial Z/3".into(), ExtensionData::split(trivial_module(p31, &[1])?)?),
        ("split, trivial Z/9".into(), ExtensionData::split(trivial_module(p31, &[2])?)?),
        ("split, Z/9 with sigma = 4".into(), ExtensionData::split(z9_twisted.clone())?),
        ("split, unipotent (Z/3)^2".into(), ExtensionData::split(unipotent.clone())?),
        ("split, trivial Z/3, n=2".into(), ExtensionData::split(trivial_module(p32, &[1])?)?),
        ("nonsplit cyclic, Z/3".into(), ExtensionData::carry(trivial_module(p31, &[1])?, &[1])?),
        ("nonsplit cyclic, Z/9".into(), ExtensionData::carry(trivial_module(p31, &[2])?, &[1])?),
        ("nonsplit, unipotent (Z/3)^2".into(), ExtensionData::carry(unipotent, &[1, 0])?),
        ("nonsplit cyclic, Z/3, n=2".into(), ExtensionData::carry(trivial_module(p32, &[1])?, &[1])?),
    ])
}

fn random_cochain(e: &ExtensionData, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let a = e.kernel();
    (0..e.params().order())
        .map(|_| {
            a.moduli()
                .iter()
                .map(|d| rng.gen_range(0..GroupParams::ring(&a.params()).p_pow_int(d.unwrap_or(1))))
                .collect()
        })
        .collect()
}

pub fn splitting_suite(cfg: &SuiteConfig) -> SuiteReport {
    let battery = match extension_battery(cfg) {
        Ok(b) => b,
        Err(e) => return SuiteReport::new("splitting", vec![Check::new("battery", Status::Fail, e.to_string())]),
    };
    let mut rng = cfg.rng(0x5911);
    let mut checks = Vec::new();
    for (label, e) in &battery {
        let built = splitting_module(e);
        let sm = match built {
            Ok(sm) => {
                checks.push(Check::new(format!("{label}: 0 -> A -> M -> I -> 0 exact"), Status::Pass, ""));
                sm
            }
            Err(err) => {
                checks.push(Check::new(format!("{label}: 0 -> A -> M -> I -> 0 exact"), Status::Fail, err.to_string()));
                continue;
            }
        };
        let m = &sm.module;
        let cochain = random_cochain(e, &mut rng);
        let name = format!("{label}: coboundary-shifted cocycle gives an isomorphic module");
        checks.push(attempt(&name, || {
            let shifted = splitting_module(&e.add_coboundary(&cochain)?)?;
            Ok(expect_iso(&name, &modules_isomorphic(m, &shifted.module, &cfg.iso)?))
        }));
        let name = format!("{label}: round trip through a section");
        checks.push(attempt(&name, || {
            let (ext, _) = cocycle_from_section(&sm.projection)?;
            let again = splitting_module(&ext)?;
            Ok(expect_iso(&name, &modules_isomorphic(m, &again.module, &cfg.iso)?))
        }));
    }

    // The worked instances.
    let check = |name: &str, f: &dyn Fn() -> Result<Check>| attempt(name, f);
    let p31 = cfg.params(3, 1).expect("battery built these parameters");
    checks.push(check("zero kernel: M ≅ I", &|| {
        let m = splitting_module(&ExtensionData::split(PresentedModule::zero(p31))?)?.module;
        Ok(expect_iso("zero kernel: M ≅ I", &modules_isomorphic(&m, &augmentation_ideal(p31), &cfg.iso)?))
    }));
    for e in 1..=2 {
        let name = format!("split trivial Z/3^{e}: M ≅ Z/3^{e} + I");
        checks.push(check(&name, &|| {
            let a = trivial_module(p31, &[e])?;
            let m = splitting_module(&ExtensionData::split(a.clone())?)?.module;
            let want = direct_sum(&a, &augmentation_ideal(p31))?;
            Ok(expect_iso(&name, &modules_isomorphic(&m, &want, &cfg.iso)?))
        }));
    }
    let name = "nonsplit cyclic Z/3: M is not Z/3 + I";
    checks.push(check(name, &|| {
        let a = trivial_module(p31, &[1])?;
        let m = splitting_module(&ExtensionData::carry(a.clone(), &[1])?)?.module;
        let split = direct_sum(&a, &augmentation_ideal(p31))?;
        Ok(expect_not_iso(name, &modules_isomorphic(&m, &split, &cfg.iso)?))
    }));
    let name = "nonsplit cyclic Z/3: Δ(M) ≅ Δ(I), M not cohomologically trivial";
    checks.push(check(name, &|| {
        let m = splitting_module(&ExtensionData::carry(trivial_module(p31, &[1])?, &[1])?)?.module;
        let cmp = diagrams_isomorphic(&delta(&m)?, &delta(&augmentation_ideal(p31))?, &cfg.iso.search())?;
        let trivial = is_cohomologically_trivial(&m)?;
        let c = expect_diagram_iso(name, &cmp);
        Ok(if trivial {
            Check::new(name, Status::Fail, "all Tate groups vanish")
        } else {
            c
        })
    }));
    SuiteReport::new("splitting", checks)
}

// ---------------------------------------------------------------------------
// The A, B construction

/// Coordinates of `p * 1` inside `J_1`, a generator of a free submodule of finite index.
fn j1_free_witness(params: GroupParams) -> Result<Vec<u64>> {
    let mut v = vec![0; params.order()];
    v[0] = params.p();
    j_submodule(params, 1)?.coordinates(&v)
}

/// The battery `I`, `I + Zp[G]`, `J_1 + I`, `J_1 + I + Zp[G]` with witnesses.
pub fn theorem1_battery(params: GroupParams, with_extended: bool) -> Result<Vec<(String, Theorem1Input)>> {
    let g = params.order();
    let ideal = augmentation_ideal(params);
    let unit = |len: usize, at: usize| {
        let mut v = vec![0; len];
        v[at] = 1;
        v
    };
    let mut out = vec![(
        "I".to_string(),
        Theorem1Input {
            c: ideal.clone(),
            free_witness: vec![],
            ideal_witness: unit(g - 1, 0),
        },
    )];
    out.push((
        "I + Zp[G]".into(),
        Theorem1Input {
            c: direct_sum(&ideal, &free_module(params, 1))?,
            free_witness: vec![unit(2 * g - 1, g - 1)],
            ideal_witness: unit(2 * g - 1, 0),
        },
    ));
    if with_extended {
        let j1 = j_module(params, 1)?;
        let kj = j1.dim();
        let mut jw = j1_free_witness(params)?;
        jw.resize(kj + g - 1, 0);
        out.push((
            "J_1 + I".into(),
            Theorem1Input {
                c: direct_sum(&j1, &ideal)?,
                free_witness: vec![jw.clone()],
                ideal_witness: unit(kj + g - 1, kj),
            },
        ));
        let total = kj + g - 1 + g;
        let mut jw2 = jw;
        jw2.resize(total, 0);
        out.push((
            "J_1 + I + Zp[G]".into(),
            Theorem1Input {
                c: direct_sum_all(&[&j1, &ideal, &free_module(params, 1)])?,
                free_witness: vec![jw2, unit(total, kj + g - 1)],
                ideal_witness: unit(total, kj),
            },
        ));
    }
    Ok(out)
}

pub fn lemma2_checks(tag: &str, input: &Theorem1Input) -> Vec<Check> {
    let params = input.c.params();
    let out = match lemma2_pipeline(input) {
        Ok(o) => o,
        Err(e) => return vec![Check::new(format!("{tag}: pipeline"), Status::Fail, e.to_string())],
    };
    let g = params.order();
    let rank_b = out.b.module.zp_rank();
    let free_left = out.c1.module.zp_rank() - (g - 1);
    let want = g - 1 + g * free_left;
    let mut checks = vec![
        Check::pass_if(
            format!("{tag}: A finite"),
            out.a.module.is_finite(),
            format!("|A| = {}^{}", params.p(), out.a.module.log_order().unwrap_or(0)),
        ),
        Check::pass_if(
            format!("{tag}: rank B = p^n - 1 + p^n * (free rank left in C/F)"),
            rank_b == want,
            format!("rank B = {rank_b}, expected {want}"),
        ),
    ];
    for s in &out.shifts {
        checks.push(Check::pass_if(
            format!("{tag}: Ĥ^{}(G_{}, C) ≅ Ĥ^{}(G_{}, B)", s.degree, s.subgroup_index, s.degree, s.subgroup_index),
            s.bijective,
            format!("order p^{}", s.map.source().log_order()),
        ));
    }
    checks.push(Check::pass_if(
        format!("{tag}: shift maps commute with res and cor"),
        out.res_cor_compatible,
        "",
    ));
    checks.push(Check::pass_if(
        format!("{tag}: middle terms cohomologically trivial"),
        out.middle_terms_trivial,
        "",
    ));
    checks
}

pub fn lemma2_suite(cfg: &SuiteConfig, configs: &[(u64, u32)]) -> SuiteReport {
    let mut checks = Vec::new();
    for &(p, n) in configs {
        let battery = cfg
            .params(p, n)
            .and_then(|pr| theorem1_battery(pr, n == 1));
        match battery {
            Ok(b) => {
                for (label, input) in b.iter().take(3) {
                    checks.extend(lemma2_checks(&format!("p={p} n={n} C = {label}"), input));
                }
            }
            Err(e) => checks.push(Check::new(format!("p={p} n={n}: battery"), Status::Fail, e.to_string())),
        }
    }
    SuiteReport::new("lemma2", checks)
}

// ---------------------------------------------------------------------------
// Predicted unit structures

/// `I_{Zp[G]}^{G_i}` against `I_{Zp[G/G_i]}`, and the free-rank prediction for `r = 0`.
pub fn prop4_suite(cfg: &SuiteConfig, p: u64, n: u32, unit_rank: usize) -> SuiteReport {
    let mut checks = Vec::new();
    let params = match cfg.params(p, n) {
        Ok(pr) => pr,
        Err(e) => return SuiteReport::new("prop4", vec![Check::new("parameters", Status::Fail, e.to_string())]),
    };
    for i in 1..n {
        let name = format!("p={p} n={n}: I^(G_{i}) ≅ I over G/G_{i}");
        checks.push(attempt(&name, || {
            let fp = fixed_points(&augmentation_ideal(params), i)?;
            let q = fp.module.params();
            Ok(expect_iso(&name, &modules_isomorphic(&fp.module, &augmentation_ideal(q), &cfg.iso)?))
        }));
    }
    let name = format!("p={p} n={n}: I + Zp[G]^{unit_rank} has the cohomology of I");
    checks.push(attempt(&name, || {
        let pred = predicted_unit_structure(params, &[], unit_rank)?;
        let cmp = diagrams_isomorphic(&delta(&pred)?, &delta(&augmentation_ideal(params))?, &cfg.iso.search())?;
        let (a, b) = (h2(&pred)?, h2(&augmentation_ideal(params))?);
        let c = expect_diagram_iso(&name, &cmp);
        Ok(if a != b {
            Check::new(&name, Status::Fail, format!("Ĥ^0 {a:?} vs {b:?}"))
        } else {
            c
        })
    }));
    let name = format!("p={p} n={n}: I has no free summand");
    checks.push(attempt(&name, || {
        let r = crate::oracle::krull_schmidt_note(&augmentation_ideal(params))?;
        Ok(Check::pass_if(&name, r.free_rank == 0, format!("free rank {}", r.free_rank)))
    }));
    SuiteReport::new("prop4", checks)
}

/// `Δ(⊕ Z/p^{e_j} + I) ≅ Δ(⊕ J_min(e_j, n) + I)` with matching `Ĥ^2`, and the
/// same for the predicted structure with free part.
pub fn prop5_checks(cfg: &SuiteConfig, p: u64, n: u32, exps: &[u32], unit_rank: usize) -> Vec<Check> {
    let tag = format!("p={p} n={n} e={exps:?}");
    let name = format!("{tag}: Δ(⊕Z/p^e_j + I) ≅ Δ(⊕J_min(e_j,n) + I), Ĥ^2 match");
    let main = attempt(&name, || {
        let params = cfg.params(p, n)?;
        let ideal = augmentation_ideal(params);
        let mut tors = exps.iter().map(|&e| trivial_module(params, &[e])).collect::<Result<Vec<_>>>()?;
        tors.push(ideal.clone());
        let lhs = direct_sum_all(&tors.iter().collect::<Vec<_>>())?;
        let mut js = exps.iter().map(|&e| j_module(params, e.min(n))).collect::<Result<Vec<_>>>()?;
        js.push(ideal);
        let rhs = direct_sum_all(&js.iter().collect::<Vec<_>>())?;
        let cmp = diagrams_isomorphic(&delta(&lhs)?, &delta(&rhs)?, &cfg.iso.search())?;
        let (a, b) = (h2(&lhs)?, h2(&rhs)?);
        let c = expect_diagram_iso(&name, &cmp);
        Ok(if a != b {
            Check::new(&name, Status::Fail, format!("Ĥ^2 {a:?} vs {b:?}"))
        } else {
            Check::new(&name, c.status, format!("{}Ĥ^2 = {}", if c.detail.is_empty() { String::new() } else { format!("{}; ", c.detail) }, a.iter().map(|&e| cyclic(p, e)).collect::<Vec<_>>().join(" + ")))
        })
    });
    let name = format!("{tag} unit rank {unit_rank}: predicted structure has the cohomology of ⊕Z/p^e_j + I");
    let predicted = attempt(&name, || {
        let params = cfg.params(p, n)?;
        let pred = predicted_unit_structure(params, exps, unit_rank)?;
        let mut tors = exps.iter().map(|&e| trivial_module(params, &[e])).collect::<Result<Vec<_>>>()?;
        tors.push(augmentation_ideal(params));
        let lhs = direct_sum_all(&tors.iter().collect::<Vec<_>>())?;
        let cmp = diagrams_isomorphic(&delta(&pred)?, &delta(&lhs)?, &cfg.iso.search())?;
        let (a, b) = (h2(&pred)?, h2(&lhs)?);
        let c = expect_diagram_iso(&name, &cmp);
        Ok(if a != b {
            Check::new(&name, Status::Fail, format!("Ĥ^2 {a:?} vs {b:?}"))
        } else {
            c
        })
    });
    vec![main, predicted]
}

pub fn prop5_suite(cfg: &SuiteConfig, p: u64, cases: &[(u32, Vec<u32>, usize)]) -> SuiteReport {
    let checks = cases
        .iter()
        .flat_map(|(n, exps, unit_rank)| prop5_checks(cfg, p, *n, exps, *unit_rank))
        .collect();
    SuiteReport::new("prop5", checks)
}

// ---------------------------------------------------------------------------
// Splitting module, unit stand-in and the oracle cross-check

/// One compared pair with everything the soundness check needs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairRecord {
    pub label: String,
    pub diagrams: Status,
    pub h2_match: bool,
    pub torsion_free: bool,
    /// `pass` for a hit, `fail` for a definite negative.
    pub stable: Status,
    pub padding: Option<(usize, usize)>,
}

impl PairRecord {
    pub fn compute(label: &str, m: &PresentedModule, m2: &PresentedModule, cfg: &SuiteConfig) -> Result<Self> {
        let diagrams = match diagrams_isomorphic(&delta(m)?, &delta(m2)?, &cfg.iso.search())? {
            DiagramComparison::Isomorphic(_) => Status::Pass,
            DiagramComparison::NotIsomorphic(_) => Status::Fail,
            DiagramComparison::Undecided { .. } => Status::Undecided,
        };
        let h2_match = h2(m)? == h2(m2)?;
        let torsion_free = m.is_torsion_free() && m2.is_torsion_free();
        let (stable, padding) = if torsion_free {
            match stably_isomorphic(m, m2, &cfg.iso)? {
                StableOutcome::StablyIsomorphic { a, b, .. } => (Status::Pass, Some((a, b))),
                StableOutcome::NotStablyIsomorphic(_) => (Status::Fail, None),
                StableOutcome::Undecided { .. } => (Status::Undecided, None),
            }
        } else {
            (Status::Undecided, None)
        };
        Ok(Self {
            label: label.to_string(),
            diagrams,
            h2_match,
            torsion_free,
            stable,
            padding,
        })
    }

    /// Diagram and cohomology agreement must never meet a definite negative,
    /// and a stable isomorphism must come with isomorphic diagrams.
    pub fn check(&self) -> Check {
        let hyp = self.diagrams == Status::Pass && self.h2_match && self.torsion_free;
        let detail = format!(
            "diagrams {}, Ĥ^2 match {}, torsion-free {}, stable {}{}",
            self.diagrams.label(),
            self.h2_match,
            self.torsion_free,
            self.stable.label(),
            self.padding.map(|(a, b)| format!(" at (a, b) = ({a}, {b})")).unwrap_or_default()
        );
        let contradiction = hyp && self.stable == Status::Fail;
        let unmatched = self.stable == Status::Pass && self.diagrams != Status::Pass;
        let status = Status::from_bool(!contradiction && !unmatched);
        Check::new(format!("soundness: {}", self.label), status, detail)
    }
}

/// Pairs of torsion-free modules compared by the oracle elsewhere in the batteries.
pub fn soundness_pairs(params: GroupParams) -> Result<Vec<(String, PresentedModule, PresentedModule)>> {
    let n = params.n();
    let ideal = augmentation_ideal(params);
    let zp = integers_trivial(params);
    let free = free_module(params, 1);
    let mut out = vec![
        ("I vs Zp".to_string(), ideal.clone(), zp.clone()),
        ("I + Zp[G] vs I".into(), direct_sum(&ideal, &free)?, ideal.clone()),
        ("J_0 vs Zp[G]".into(), j_module(params, 0)?, free.clone()),
        (format!("J_{} vs Zp + I", n + 1), j_module(params, n + 1)?, direct_sum(&zp, &ideal)?),
        ("J_1 + Zp[G] vs J_1".into(), direct_sum(&j_module(params, 1)?, &free)?, j_module(params, 1)?),
    ];
    if n >= 2 {
        out.push(("J_1 vs J_2".into(), j_module(params, 1)?, j_module(params, 2)?));
    }
    Ok(out)
}

pub fn theorem1_suite(cfg: &SuiteConfig, configs: &[(u64, u32)]) -> SuiteReport {
    let mut checks = Vec::new();
    for &(p, n) in configs {
        let tag = format!("p={p} n={n}");
        let params = match cfg.params(p, n) {
            Ok(pr) => pr,
            Err(e) => {
                checks.push(Check::new(format!("{tag}: parameters"), Status::Fail, e.to_string()));
                continue;
            }
        };
        let battery = match theorem1_battery(params, n == 1) {
            Ok(b) => b,
            Err(e) => {
                checks.push(Check::new(format!("{tag}: battery"), Status::Fail, e.to_string()));
                continue;
            }
        };
        for (label, input) in &battery {
            let prefix = format!("{tag} C = {label}");
            match theorem1_verify(input, &cfg.iso) {
                Ok(report) => {
                    for c in &report.checks {
                        checks.push(Check::new(format!("{prefix}: {}", c.name), c.status, c.detail.clone()));
                    }
                    let bound = cfg.iso.max_free_rank;
                    checks.push(Check::pass_if(
                        format!("{prefix}: padding within {bound}"),
                        report.padding.is_some_and(|(a, b)| a <= bound && b <= bound),
                        format!("{:?}", report.padding),
                    ));
                    let name = format!("{prefix}: E vs C");
                    checks.push(attempt(&name, || Ok(PairRecord::compute(&format!("{prefix}: E vs C"), &report.e, &input.c, cfg)?.check())));
                }
                Err(e) => checks.push(Check::new(format!("{prefix}: verify"), Status::Fail, e.to_string())),
            }
        }
        checks.extend(soundness_checks(cfg, params));
    }
    SuiteReport::new("theorem1", checks)
}

fn soundness_checks(cfg: &SuiteConfig, params: GroupParams) -> Vec<Check> {
    let tag = format!("p={} n={}", params.p(), params.n());
    match soundness_pairs(params) {
        Ok(pairs) => pairs
            .iter()
            .map(|(label, a, b)| {
                let label = format!("{tag} {label}");
                attempt(&format!("soundness: {label}"), || Ok(PairRecord::compute(&label, a, b, cfg)?.check()))
            })
            .collect(),
        Err(e) => vec![Check::new(format!("{tag}: soundness pairs"), Status::Fail, e.to_string())],
    }
}

/// The oracle cross-check on its own (the `yakovlev` suite).
pub fn yakovlev_suite(cfg: &SuiteConfig, configs: &[(u64, u32)]) -> SuiteReport {
    let mut checks = Vec::new();
    for &(p, n) in configs {
        match cfg.params(p, n) {
            Ok(params) => checks.extend(soundness_checks(cfg, params)),
            Err(e) => checks.push(Check::new(format!("p={p} n={n}: parameters"), Status::Fail, e.to_string())),
        }
    }
    SuiteReport::new("yakovlev", checks)
}

// ---------------------------------------------------------------------------
// Negative controls

pub fn negative_controls(cfg: &SuiteConfig) -> SuiteReport {
    let mut checks = Vec::new();
    let name = "Δ(J_1) vs Δ(J_2), n=2: not isomorphic";
    checks.push(attempt(name, || {
        let params = cfg.params(3, 2)?;
        let r = diagrams_isomorphic(&delta(&j_module(params, 1)?)?, &delta(&j_module(params, 2)?)?, &cfg.iso.search())?;
        Ok(match r {
            DiagramComparison::NotIsomorphic(w) => Check::new(name, Status::Pass, w),
            DiagramComparison::Isomorphic(_) => Check::new(name, Status::Fail, "isomorphism found"),
            DiagramComparison::Undecided { samples } => Check::new(name, Status::Undecided, format!("{samples} samples")),
        })
    }));
    let name = "I vs Zp: not stably isomorphic";
    checks.push(attempt(name, || {
        let params = cfg.params(3, 1)?;
        Ok(match stably_isomorphic(&augmentation_ideal(params), &integers_trivial(params), &cfg.iso)? {
            StableOutcome::NotStablyIsomorphic(w) => Check::new(name, Status::Pass, w),
            StableOutcome::StablyIsomorphic { a, b, .. } => Check::new(name, Status::Fail, format!("hit at ({a}, {b})")),
            StableOutcome::Undecided { tried } => Check::new(name, Status::Undecided, format!("tried {tried:?}")),
        })
    }));
    let name = "corrupted cocycle table: rejected";
    checks.push(attempt(name, || {
        let params = cfg.params(3, 1)?;
        let a = trivial_module(params, &[1])?;
        let mut table = ExtensionData::carry(a.clone(), &[1])?.table().to_vec();
        table[1][2][0] = (table[1][2][0] + 1) % 3;
        Ok(match ExtensionData::new(a, table) {
            Err(Error::NotACocycle { a, b, c }) => Check::new(name, Status::Pass, format!("identity fails at ({a}, {b}, {c})")),
            Err(e) => Check::new(name, Status::Fail, format!("unexpected error: {e}")),
            Ok(_) => Check::new(name, Status::Fail, "accepted"),
        })
    }));
    let name = "torsion input: witness rejected";
    checks.push(attempt(name, || {
        let params = cfg.params(3, 1)?;
        let c = direct_sum(&augmentation_ideal(params), &trivial_module(params, &[1])?)?;
        let mut x = vec![0; c.dim()];
        x[0] = 1;
        let input = Theorem1Input { c, free_witness: vec![], ideal_witness: x };
        Ok(match theorem1_verify(&input, &cfg.iso) {
            Err(Error::WitnessInvalid(w)) => Check::new(name, Status::Pass, w),
            Err(e) => Check::new(name, Status::Fail, format!("unexpected error: {e}")),
            Ok(_) => Check::new(name, Status::Fail, "accepted"),
        })
    }));
    SuiteReport::new("negative", checks)
}

// ---------------------------------------------------------------------------
// Everything at once

pub const LEMMA3_CONFIGS: &[(u64, u32)] = &[(3, 1), (3, 2), (5, 1), (5, 2)];
pub const DESK_CONFIGS: &[(u64, u32)] = &[(3, 1), (3, 2), (5, 1)];

pub fn prop5_cases() -> Vec<(u32, Vec<u32>, usize)> {
    vec![(1, vec![1], 1), (1, vec![2], 1), (2, vec![1], 1), (2, vec![1, 2], 2)]
}

/// The whole acceptance battery, in a fixed order.
pub fn full_run(cfg: &SuiteConfig) -> Vec<SuiteReport> {
    vec![
        lemma3_suite(cfg, LEMMA3_CONFIGS, None),
        axioms_suite(cfg, DESK_CONFIGS, 25),
        splitting_suite(cfg),
        lemma2_suite(cfg, DESK_CONFIGS),
        {
            let mut r = prop4_suite(cfg, 3, 2, 1);
            let p5 = prop5_suite(cfg, 3, &prop5_cases());
            r.checks.extend(p5.checks);
            SuiteReport::new("prop4+prop5", r.checks)
        },
        theorem1_suite(cfg, DESK_CONFIGS),
        negative_controls(cfg),
    ]
}

/// Stable JSON for a list of reports.
pub fn machine_report(reports: &[SuiteReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

/// Cohomology invariants in a form suitable for reports.
pub fn cohomology_summary(m: &PresentedModule) -> Result<Vec<(u32, Vec<u32>, Vec<u32>)>> {
    let t = CohomologyTable::compute(m)?;
    let inv = t.invariants();
    Ok((1..=m.params().n())
        .map(|i| (i, inv[0][i as usize].clone(), inv[1][i as usize].clone()))
        .collect())
}
