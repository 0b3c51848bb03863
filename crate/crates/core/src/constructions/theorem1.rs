//! The whole chain: `C` -> `(A, B, pi)` -> cocycle -> splitting module `M`
//! -> `E = Ω² M`, checking at each step that the cohomological data of `C`
//! survives, and finally that `E` and `C` agree up to free summands.

use crate::cohomology::tate;
use crate::error::Result;
use crate::modules::{syzygy_power, PresentedModule};
use crate::oracle::{modules_isomorphic, stably_isomorphic, IsoOutcome, IsoSearchConfig, StableOutcome};
use crate::report::{overall, Check, Status};
use crate::yakovlev::{delta, diagrams_isomorphic, DiagramComparison};

use super::extension::{cocycle_from_section, splitting_module};
use super::lemma2::{lemma2_pipeline, Theorem1Input};

#[derive(Clone, Debug)]
pub struct Theorem1Report {
    pub checks: Vec<Check>,
    pub a_log_order: u32,
    pub splitting_module: PresentedModule,
    /// The torsion-free stand-in with the cohomology of a unit group.
    pub e: PresentedModule,
    pub padding: Option<(usize, usize)>,
}

impl Theorem1Report {
    pub fn status(&self) -> Status {
        overall(&self.checks)
    }
}

fn diagram_check(name: &str, r: &DiagramComparison) -> Check {
    match r {
        DiagramComparison::Isomorphic(_) => Check::new(name, Status::Pass, ""),
        DiagramComparison::NotIsomorphic(why) => Check::new(name, Status::Fail, why.clone()),
        DiagramComparison::Undecided { samples } => {
            Check::new(name, Status::Undecided, format!("{samples} samples"))
        }
    }
}

fn h0(m: &PresentedModule) -> Result<Vec<u32>> {
    Ok(tate(0, m.params().n(), m)?.invariant_factors())
}

pub fn theorem1_verify(input: &Theorem1Input, cfg: &IsoSearchConfig) -> Result<Theorem1Report> {
    let search = cfg.search();
    let l2 = lemma2_pipeline(input)?;
    let mut checks = vec![
        Check::pass_if("kernel A finite", l2.a.module.is_finite(), ""),
        Check::pass_if("shift maps bijective", l2.all_shifts_bijective(), ""),
        Check::pass_if("shift maps commute with res/cor", l2.res_cor_compatible, ""),
        Check::pass_if("middle terms cohomologically trivial", l2.middle_terms_trivial, ""),
    ];
    let (ext, _) = cocycle_from_section(&l2.pi)?;
    let m = splitting_module(&ext)?.module;
    checks.push(match modules_isomorphic(&m, &l2.b.module, cfg)? {
        IsoOutcome::Isomorphic(_) => Check::new("splitting module ≅ B", Status::Pass, ""),
        IsoOutcome::NotIsomorphic(w) => Check::new("splitting module ≅ B", Status::Fail, w),
        IsoOutcome::Undecided { samples } => {
            Check::new("splitting module ≅ B", Status::Undecided, format!("{samples} samples"))
        }
    });

    let dc = delta(&input.c)?;
    checks.push(diagram_check("Δ(M) ≅ Δ(C)", &diagrams_isomorphic(&delta(&m)?, &dc, &search)?));
    let h0c = h0(&input.c)?;
    let h0m = h0(&m)?;
    checks.push(Check::pass_if(
        "Ĥ^0(G, M) ≅ H^2(G, C)",
        h0m == h0c,
        format!("{h0m:?} vs {h0c:?}"),
    ));

    let e = syzygy_power(&m, 2)?;
    checks.push(diagram_check("Δ(E) ≅ Δ(C)", &diagrams_isomorphic(&delta(&e)?, &dc, &search)?));
    let h0e = h0(&e)?;
    checks.push(Check::pass_if(
        "H^2(G, E) ≅ H^2(G, C)",
        h0e == h0c,
        format!("{h0e:?} vs {h0c:?}"),
    ));
    let stable = stably_isomorphic(&e, &input.c, cfg)?;
    let padding = stable.padding();
    checks.push(match &stable {
        StableOutcome::StablyIsomorphic { a, b, .. } => {
            Check::new("E ⊕ Zp[G]^a ≅ C ⊕ Zp[G]^b", Status::Pass, format!("a = {a}, b = {b}"))
        }
        StableOutcome::NotStablyIsomorphic(w) => {
            Check::new("E ⊕ Zp[G]^a ≅ C ⊕ Zp[G]^b", Status::Fail, w.clone())
        }
        StableOutcome::Undecided { tried } => Check::new(
            "E ⊕ Zp[G]^a ≅ C ⊕ Zp[G]^b",
            Status::Undecided,
            format!("tried {tried:?}"),
        ),
    });
    Ok(Theorem1Report {
        checks,
        a_log_order: l2.a_log_order(),
        splitting_module: m,
        e,
        padding,
    })
}
