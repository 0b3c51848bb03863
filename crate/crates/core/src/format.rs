//! JSON files for modules, extensions, diagrams and lattices with witnesses.
//!
//! Every file carries its own group parameters. Loading parses into a plain
//! serde structure first (so `load ∘ save ∘ load` is the identity on that
//! structure) and only then builds the algebraic object, which validates.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::arith::{GroupParams, GroupRingElement, Matrix, DEFAULT_GUARD, DEFAULT_PRECISION};
use crate::constructions::{ExtensionData, Theorem1Input};
use crate::error::{Error, Result};
use crate::modules::{GroupRingPresentation, ModuleHom, PresentedModule};
use crate::yakovlev::YakovlevDiagram;

/// Cap on `generators * |G|` so hostile files cannot request huge lattices.
pub const MAX_COORDINATES: usize = 256;
/// Cap on the number of relations in a module file.
pub const MAX_RELATIONS: usize = 1024;
/// Cap on `|G|^2 * rank A`, the size of a cocycle table.
pub const MAX_COCYCLE_ENTRIES: usize = 16384;

fn default_precision() -> u32 {
    DEFAULT_PRECISION
}

fn default_guard() -> u32 {
    DEFAULT_GUARD
}

/// Group parameters as they appear at the top of every file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileParams {
    pub p: u64,
    pub n: u32,
    #[serde(default = "default_precision")]
    pub precision: u32,
    #[serde(default = "default_guard")]
    pub guard: u32,
}

impl FileParams {
    pub fn from_params(params: GroupParams) -> Self {
        let s = params.spec();
        Self {
            p: s.p,
            n: s.n,
            precision: s.precision,
            guard: s.guard,
        }
    }

    /// Groups too large to carry any module within the coordinate cap are refused.
    pub fn params(&self) -> Result<GroupParams> {
        let params = GroupParams::new(self.p, self.n, self.precision, self.guard)?;
        if params.order() > MAX_COORDINATES {
            return Err(Error::InvalidParams(format!(
                "group order {} exceeds {MAX_COORDINATES}",
                params.order()
            )));
        }
        Ok(params)
    }
}

/// A module on `generators` symbols; each relation lists one `|G|`-long
/// coefficient vector per generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    #[serde(flatten)]
    pub params: FileParams,
    pub generators: usize,
    #[serde(default)]
    pub relations: Vec<Vec<Vec<i64>>>,
}

fn check_size(params: GroupParams, generators: usize) -> Result<()> {
    if generators.saturating_mul(params.order()) > MAX_COORDINATES {
        return Err(Error::InvalidParams(format!(
            "{generators} generators over a group of order {} exceed {MAX_COORDINATES} coordinates",
            params.order()
        )));
    }
    Ok(())
}

fn group_ring_tuple(params: GroupParams, coeffs: &[Vec<i64>], what: &str) -> Result<Vec<GroupRingElement>> {
    coeffs
        .iter()
        .map(|c| {
            if c.len() != params.order() {
                return Err(Error::DimensionMismatch(format!(
                    "{what}: coefficient vector of length {} for a group of order {}",
                    c.len(),
                    params.order()
                )));
            }
            GroupRingElement::from_signed(params, c)
        })
        .collect()
}

impl ModuleFile {
    /// Reduced-coordinate presentation of `m`.
    pub fn from_module(m: &PresentedModule) -> Self {
        let pres = GroupRingPresentation::from_module(m);
        Self {
            params: FileParams::from_params(m.params()),
            generators: pres.num_generators(),
            relations: pres
                .relations()
                .iter()
                .map(|r| r.iter().map(GroupRingElement::to_signed).collect())
                .collect(),
        }
    }

    pub fn presentation(&self) -> Result<GroupRingPresentation> {
        self.presentation_with(self.params.params()?)
    }

    /// As [`ModuleFile::presentation`], but over `params` (which must share `p` and `n`).
    pub fn presentation_with(&self, params: GroupParams) -> Result<GroupRingPresentation> {
        if params.p() != self.params.p || params.n() != self.params.n {
            return Err(Error::ParamMismatch);
        }
        check_size(params, self.generators)?;
        if self.relations.len() > MAX_RELATIONS {
            return Err(Error::InvalidParams(format!("more than {MAX_RELATIONS} relations")));
        }
        let relations = self
            .relations
            .iter()
            .enumerate()
            .map(|(j, r)| {
                if r.len() != self.generators {
                    return Err(Error::DimensionMismatch(format!(
                        "relation {j} has {} entries for {} generators",
                        r.len(),
                        self.generators
                    )));
                }
                check_resolvable(params, r)?;
                group_ring_tuple(params, r, &format!("relation {j}"))
            })
            .collect::<Result<Vec<_>>>()?;
        GroupRingPresentation::new(params, self.generators, relations)
    }

    pub fn to_module(&self) -> Result<PresentedModule> {
        self.presentation()?.to_module()
    }
}

/// A nonzero coefficient too divisible to tell apart from zero at this
/// precision would otherwise be dropped silently.
fn check_resolvable(params: GroupParams, rows: &[Vec<i64>]) -> Result<()> {
    let s = params.spec();
    let p = s.p as i128;
    for &c in rows.iter().flatten().filter(|&&c| c != 0) {
        let (mut c, mut v) = (c as i128, 0u32);
        while c % p == 0 {
            c /= p;
            v += 1;
        }
        if v + s.guard >= s.precision {
            return Err(Error::PrecisionExhausted {
                valuation: v,
                precision: s.precision,
                guard: s.guard,
            });
        }
    }
    Ok(())
}

/// A finite module `⊕ Z/p^{e_i}` with `sigma` acting by an integer matrix
/// (column `j` is the image of generator `j`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteModuleSpec {
    pub exponents: Vec<u32>,
    /// Rows of the action matrix; omitted means trivial action.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<i64>>>,
}

impl FiniteModuleSpec {
    pub fn from_module(m: &PresentedModule) -> Result<Self> {
        let exponents = m
            .moduli()
            .iter()
            .map(|d| d.ok_or_else(|| Error::PreconditionViolated("module is not finite".into())))
            .collect::<Result<Vec<_>>>()?;
        let k = m.dim();
        let action = if m.matrices_equal(m.sigma(), &Matrix::identity(k)) {
            None
        } else {
            Some(m.sigma().to_signed_rows(m.ring()))
        };
        Ok(Self { exponents, action })
    }

    pub fn to_module(&self, params: GroupParams) -> Result<PresentedModule> {
        let k = self.exponents.len();
        if k > MAX_COORDINATES {
            return Err(Error::InvalidParams(format!("more than {MAX_COORDINATES} generators")));
        }
        let sigma = match &self.action {
            None => Matrix::identity(k),
            Some(rows) => {
                if rows.len() != k || rows.iter().any(|r| r.len() != k) {
                    return Err(Error::DimensionMismatch(format!("action must be {k}x{k}")));
                }
                Matrix::from_signed_rows(rows, params.ring())
            }
        };
        PresentedModule::new(params, self.exponents.iter().map(|&e| Some(e)).collect(), sigma)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CocycleKeyword {
    Split,
}

/// Either the keyword `"split"` or a table `f[a][b]` of kernel vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CocycleSpec {
    Keyword(CocycleKeyword),
    Table(Vec<Vec<Vec<i64>>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionFile {
    #[serde(flatten)]
    pub params: FileParams,
    pub kernel: FiniteModuleSpec,
    pub cocycle: CocycleSpec,
}

impl ExtensionFile {
    pub fn from_extension(e: &ExtensionData) -> Result<Self> {
        let kernel = e.kernel();
        let ring = kernel.ring();
        let cocycle = if e.table().iter().flatten().all(|v| kernel.is_zero_element(v)) {
            CocycleSpec::Keyword(CocycleKeyword::Split)
        } else {
            CocycleSpec::Table(
                e.table()
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|v| v.iter().map(|&x| ring.to_signed(x)).collect())
                            .collect()
                    })
                    .collect(),
            )
        };
        Ok(Self {
            params: FileParams::from_params(e.params()),
            kernel: FiniteModuleSpec::from_module(kernel)?,
            cocycle,
        })
    }

    pub fn to_extension(&self) -> Result<ExtensionData> {
        let params = self.params.params()?;
        let kernel = self.kernel.to_module(params)?;
        let g = params.order();
        if g.saturating_mul(g).saturating_mul(kernel.dim().max(1)) > MAX_COCYCLE_ENTRIES {
            return Err(Error::InvalidParams(format!(
                "a cocycle on a group of order {g} with values in rank {} exceeds {MAX_COCYCLE_ENTRIES} entries",
                kernel.dim()
            )));
        }
        match &self.cocycle {
            CocycleSpec::Keyword(CocycleKeyword::Split) => ExtensionData::split(kernel),
            CocycleSpec::Table(t) => {
                if t.len() != g || t.iter().any(|row| row.len() != g) {
                    return Err(Error::DimensionMismatch(format!("cocycle table must be {g}x{g}")));
                }
                let ring = params.ring();
                let table = t
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|v| v.iter().map(|&x| ring.from_i64(x)).collect())
                            .collect()
                    })
                    .collect();
                ExtensionData::new(kernel, table)
            }
        }
    }
}

/// Levels `A_1..A_n`, with `alphas[i]: A_{i+1} -> A_{i+2}` and
/// `betas[i]: A_{i+2} -> A_{i+1}` as row lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    #[serde(flatten)]
    pub params: FileParams,
    pub levels: Vec<FiniteModuleSpec>,
    #[serde(default)]
    pub alphas: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    pub betas: Vec<Vec<Vec<i64>>>,
}

fn map_matrix(rows: &[Vec<i64>], src: &PresentedModule, tgt: &PresentedModule, what: &str) -> Result<Matrix> {
    if rows.len() != tgt.dim() || rows.iter().any(|r| r.len() != src.dim()) {
        return Err(Error::DimensionMismatch(format!(
            "{what} must be {}x{}",
            tgt.dim(),
            src.dim()
        )));
    }
    if rows.is_empty() {
        return Ok(Matrix::zeros(0, src.dim()));
    }
    Ok(Matrix::from_signed_rows(rows, src.ring()))
}

impl DiagramFile {
    pub fn from_diagram(d: &YakovlevDiagram) -> Result<Self> {
        let ring = *d.params().ring();
        Ok(Self {
            params: FileParams::from_params(d.params()),
            levels: d
                .levels()
                .iter()
                .map(FiniteModuleSpec::from_module)
                .collect::<Result<_>>()?,
            alphas: d.alphas().iter().map(|h| h.matrix().to_signed_rows(&ring)).collect(),
            betas: d.betas().iter().map(|h| h.matrix().to_signed_rows(&ring)).collect(),
        })
    }

    /// Maps only need to respect the relations; equivariance and the other
    /// structural identities are left to the axiom checker, so a corrupted
    /// diagram still loads and is reported level by level.
    pub fn to_diagram(&self) -> Result<YakovlevDiagram> {
        let params = self.params.params()?;
        let n = params.n() as usize;
        if self.levels.len() != n || self.alphas.len() + 1 != n || self.betas.len() + 1 != n {
            return Err(Error::DimensionMismatch(format!(
                "diagram over n = {n} needs {n} levels and {} maps each way",
                n.saturating_sub(1)
            )));
        }
        let levels = self
            .levels
            .iter()
            .map(|l| l.to_module(params))
            .collect::<Result<Vec<_>>>()?;
        let mut alphas = Vec::new();
        let mut betas = Vec::new();
        for i in 0..n - 1 {
            let (lo, hi) = (&levels[i], &levels[i + 1]);
            let a = map_matrix(&self.alphas[i], lo, hi, &format!("alpha {}", i + 1))?;
            let b = map_matrix(&self.betas[i], hi, lo, &format!("beta {}", i + 1))?;
            for (m, src, tgt) in [(&a, lo, hi), (&b, hi, lo)] {
                if !tgt.is_zero_matrix(&m.mul(&src.relation_columns(), params.ring())) {
                    return Err(Error::IllDefinedHom(format!(
                        "map at level {} does not respect the relations",
                        i + 1
                    )));
                }
            }
            alphas.push(ModuleHom::new_unchecked(lo, hi, a));
            betas.push(ModuleHom::new_unchecked(hi, lo, b));
        }
        YakovlevDiagram::new(params, levels, alphas, betas)
    }
}

/// A module together with witnesses for its free part and its copy of `I`,
/// each given as one coefficient vector per generator of the module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Theorem1File {
    pub module: ModuleFile,
    #[serde(default)]
    pub free_witness: Vec<Vec<Vec<i64>>>,
    pub ideal_witness: Vec<Vec<i64>>,
}

impl Theorem1File {
    /// Writes `input` on the reduced coordinates of its module, so that each
    /// witness coordinate becomes a constant group-ring coefficient.
    pub fn from_input(input: &Theorem1Input) -> Self {
        let ring = *input.c.ring();
        let params = input.c.params();
        let lift = |v: &[u64]| -> Vec<Vec<i64>> {
            v.iter()
                .map(|&x| GroupRingElement::scalar(params, ring.to_signed(x)).to_signed())
                .collect()
        };
        Self {
            module: ModuleFile::from_module(&input.c),
            free_witness: input.free_witness.iter().map(|w| lift(w)).collect(),
            ideal_witness: lift(&input.ideal_witness),
        }
    }

    pub fn to_input(&self) -> Result<Theorem1Input> {
        let realized = self.module.presentation()?.realize()?;
        let params = realized.module.params();
        let element = |w: &[Vec<i64>], what: &str| -> Result<Vec<u64>> {
            if w.len() != self.module.generators {
                return Err(Error::DimensionMismatch(format!(
                    "{what} has {} entries for {} generators",
                    w.len(),
                    self.module.generators
                )));
            }
            realized.element(&group_ring_tuple(params, w, what)?)
        };
        let free_witness = self
            .free_witness
            .iter()
            .enumerate()
            .map(|(j, w)| element(w, &format!("free witness {j}")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Theorem1Input {
            c: realized.module.clone(),
            free_witness,
            ideal_witness: element(&self.ideal_witness, "ideal witness")?,
        })
    }
}

/// Parses JSON, reporting the line and column of syntax and schema errors.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::tate;
    use crate::modules::{augmentation_ideal, direct_sum, free_module, trivial_module};
    use crate::oracle::{modules_isomorphic, IsoSearchConfig};
    use crate::yakovlev::{check_axioms, delta};
    use proptest::prelude::*;

    fn pr(p: u64, n: u32) -> GroupParams {
        GroupParams::with_defaults(p, n).unwrap()
    }

    #[test]
    fn oversized_groups_are_refused() {
        let f: ModuleFile = parse(r#"{"p": 7, "n": 5, "generators": 0}"#).unwrap();
        assert!(matches!(f.to_module(), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn oversized_cocycles_are_refused() {
        let big: ExtensionFile = parse(r#"{"p": 3, "n": 5, "kernel": {"exponents": [2]}, "cocycle": "split"}"#).unwrap();
        assert!(matches!(big.to_extension(), Err(Error::InvalidParams(_))));
        let ok: ExtensionFile = parse(r#"{"p": 3, "n": 4, "kernel": {"exponents": [2]}, "cocycle": "split"}"#).unwrap();
        assert!(ok.to_extension().is_ok());
    }

    #[test]
    fn unresolvable_coefficients_are_refused() {
        let text = r#"{"p": 3, "n": 1, "precision": 6, "generators": 1, "relations": [[[243, 0, 0]]]}"#;
        let f: ModuleFile = parse(text).unwrap();
        assert!(matches!(f.to_module(), Err(Error::PrecisionExhausted { valuation: 5, .. })));
        let ok = r#"{"p": 3, "n": 1, "precision": 8, "generators": 1, "relations": [[[243, 0, 0]]]}"#;
        let m = parse::<ModuleFile>(ok).unwrap().to_module().unwrap();
        assert_eq!(m.torsion_invariants(), vec![5, 5, 5]);
    }

    #[test]
    fn augmentation_ideal_by_hand() {
        // Zp[G] / (N_G) for p = 3, n = 1 is I up to isomorphism.
        let text = r#"{ "p": 3, "n": 1, "generators": 1, "relations": [[[1, 1, 1]]] }"#;
        let m = parse::<ModuleFile>(text).unwrap().to_module().unwrap();
        assert_eq!(m.zp_rank(), 2);
        assert_eq!(tate(1, 1, &m).unwrap().invariant_factors(), vec![1]);
        assert_eq!(tate(0, 1, &m).unwrap().invariant_factors(), Vec::<u32>::new());
    }

    #[test]
    fn module_save_load_is_isomorphic() {
        let p = pr(3, 1);
        let m = direct_sum(&augmentation_ideal(p), &trivial_module(p, &[2]).unwrap()).unwrap();
        let back = parse::<ModuleFile>(&to_json(&ModuleFile::from_module(&m)))
            .unwrap()
            .to_module()
            .unwrap();
        assert!(modules_isomorphic(&m, &back, &IsoSearchConfig::default())
            .unwrap()
            .is_isomorphic());
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse::<ModuleFile>("{\n  \"p\": 3,\n  \"n\": oops\n}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse::<ModuleFile>(r#"{"p": 3, "n": 1, "generators": 1, "extra": 0}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn rejects_bad_shapes() {
        let short = r#"{ "p": 3, "n": 1, "generators": 1, "relations": [[[1, 1]]] }"#;
        assert!(matches!(
            parse::<ModuleFile>(short).unwrap().to_module(),
            Err(Error::DimensionMismatch(_))
        ));
        let huge = r#"{ "p": 3, "n": 2, "generators": 100 }"#;
        assert!(matches!(
            parse::<ModuleFile>(huge).unwrap().to_module(),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn extension_keyword_and_table() {
        let split = r#"{ "p": 3, "n": 1, "kernel": { "exponents": [1] }, "cocycle": "split" }"#;
        let e = parse::<ExtensionFile>(split).unwrap();
        assert_eq!(e.cocycle, CocycleSpec::Keyword(CocycleKeyword::Split));
        assert!(e.to_extension().is_ok());
        let bad = r#"{ "p": 3, "n": 1, "kernel": { "exponents": [1] }, "cocycle": "nonsplit" }"#;
        assert!(matches!(parse::<ExtensionFile>(bad), Err(Error::Parse { .. })));

        let p = pr(3, 1);
        let carry = ExtensionData::carry(trivial_module(p, &[1]).unwrap(), &[1]).unwrap();
        let file = ExtensionFile::from_extension(&carry).unwrap();
        assert!(matches!(file.cocycle, CocycleSpec::Table(_)));
        let again = parse::<ExtensionFile>(&to_json(&file)).unwrap();
        assert_eq!(again, file);
        assert_eq!(again.to_extension().unwrap().table(), carry.table());
    }

    #[test]
    fn corrupted_cocycle_is_rejected() {
        let text = r#"{ "p": 3, "n": 1, "kernel": { "exponents": [1] },
            "cocycle": [[[0],[0],[0]],[[0],[0],[1]],[[0],[0],[0]]] }"#;
        let e = parse::<ExtensionFile>(text).unwrap();
        assert!(matches!(e.to_extension(), Err(Error::NotACocycle { .. })));
    }

    #[test]
    fn diagram_round_trip_and_corruption() {
        let p = pr(3, 2);
        let d = delta(&augmentation_ideal(p)).unwrap();
        let file = DiagramFile::from_diagram(&d).unwrap();
        let back = parse::<DiagramFile>(&to_json(&file)).unwrap();
        assert_eq!(back, file);
        assert!(check_axioms(&back.to_diagram().unwrap()).all_pass());

        // For I over n = 2 the levels are Z/3 and Z/9 with alpha = 3, beta = 1;
        // doubling beta breaks alpha∘beta = p at level 1.
        assert_eq!(file.betas[0], vec![vec![1]]);
        let mut broken = file.clone();
        broken.betas[0] = vec![vec![2]];
        let report = check_axioms(&broken.to_diagram().unwrap());
        assert!(!report.all_pass());
        assert!(report.failures().iter().any(|f| f.starts_with("level 1")));
    }

    #[test]
    fn theorem1_file_round_trip() {
        let p = pr(3, 1);
        let c = direct_sum(&augmentation_ideal(p), &free_module(p, 1)).unwrap();
        let input = Theorem1Input {
            c,
            free_witness: vec![vec![0, 0, 1, 0, 0]],
            ideal_witness: vec![1, 0, 0, 0, 0],
        };
        let file = Theorem1File::from_input(&input);
        let back = parse::<Theorem1File>(&to_json(&file)).unwrap();
        assert_eq!(back, file);
        let again = back.to_input().unwrap();
        assert_eq!(again.c.zp_rank(), 5);
        assert_eq!(again.rank_r(), 1);
        assert!(crate::constructions::lemma2_pipeline(&again).is_ok());
    }

    fn module_file() -> impl Strategy<Value = ModuleFile> {
        (1usize..3, 0usize..4).prop_flat_map(|(k, r)| {
            proptest::collection::vec(
                proptest::collection::vec(proptest::collection::vec(-9i64..9, 3), k),
                r,
            )
            .prop_map(move |relations| ModuleFile {
                params: FileParams {
                    p: 3,
                    n: 1,
                    precision: 12,
                    guard: 2,
                },
                generators: k,
                relations,
            })
        })
    }

    proptest! {
        #[test]
        fn module_files_round_trip(f in module_file()) {
            let once = parse::<ModuleFile>(&to_json(&f)).unwrap();
            prop_assert_eq!(&once, &f);
            let twice = parse::<ModuleFile>(&to_json(&once)).unwrap();
            prop_assert_eq!(twice, once);
        }

        #[test]
        fn saved_modules_keep_invariants(f in module_file()) {
            if let Ok(m) = f.to_module() {
                let back = parse::<ModuleFile>(&to_json(&ModuleFile::from_module(&m)))
                    .unwrap()
                    .to_module()
                    .unwrap();
                prop_assert_eq!(back.zp_rank(), m.zp_rank());
                prop_assert_eq!(back.torsion_invariants(), m.torsion_invariants());
            }
        }

        #[test]
        fn extension_files_round_trip(exps in proptest::collection::vec(1u32..4, 1..3)) {
            let p = pr(3, 1);
            let e = ExtensionData::split(trivial_module(p, &exps).unwrap()).unwrap();
            let f = ExtensionFile::from_extension(&e).unwrap();
            let back = parse::<ExtensionFile>(&to_json(&f)).unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(back.to_extension().unwrap().kernel().torsion_invariants(), e.kernel().torsion_invariants());
        }
    }
}
