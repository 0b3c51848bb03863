//! Diagrams `A_1 ⇄ A_2 ⇄ ... ⇄ A_n` of odd-degree Tate groups, their axioms,
//! and isomorphism search between them.

use crate::arith::{GroupParams, Matrix, PadicRing};
use crate::cohomology::CohomologyTable;
use crate::error::{Error, Result};
use crate::modules::{direct_sum_with_maps, kernel_of, quotient_by_image, ModuleHom, PresentedModule};
use crate::search::{invertible_mod_p, search_coefficients, EchelonBasis, SearchConfig};

/// Levels are finite modules; `alphas[i]: A_{i+1} -> A_{i+2}` and
/// `betas[i]: A_{i+2} -> A_{i+1}` in zero-based storage.
#[derive(Clone, Debug)]
pub struct YakovlevDiagram {
    params: GroupParams,
    levels: Vec<PresentedModule>,
    alphas: Vec<ModuleHom>,
    betas: Vec<ModuleHom>,
}

impl YakovlevDiagram {
    /// Checks shapes only; see [`check_axioms`] for the structural identities.
    pub fn new(
        params: GroupParams,
        levels: Vec<PresentedModule>,
        alphas: Vec<ModuleHom>,
        betas: Vec<ModuleHom>,
    ) -> Result<Self> {
        let n = params.n() as usize;
        if n == 0 || levels.len() != n || alphas.len() != n - 1 || betas.len() != n - 1 {
            return Err(Error::DimensionMismatch(format!(
                "diagram over n = {n} needs {n} levels and {} maps each way",
                n.saturating_sub(1)
            )));
        }
        if levels.iter().any(|l| l.params() != params || !l.is_finite()) {
            return Err(Error::PreconditionViolated("levels must be finite modules over G".into()));
        }
        for i in 0..n - 1 {
            let a = &alphas[i];
            let b = &betas[i];
            if a.source() != &levels[i]
                || a.target() != &levels[i + 1]
                || b.source() != &levels[i + 1]
                || b.target() != &levels[i]
            {
                return Err(Error::DimensionMismatch(format!("maps at level {} do not fit", i + 1)));
            }
        }
        Ok(Self {
            params,
            levels,
            alphas,
            betas,
        })
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn n(&self) -> u32 {
        self.params.n()
    }

    /// `A_i` for `1 <= i <= n`.
    pub fn level(&self, i: u32) -> &PresentedModule {
        &self.levels[i as usize - 1]
    }

    pub fn levels(&self) -> &[PresentedModule] {
        &self.levels
    }

    /// `alpha_i: A_i -> A_{i+1}` for `1 <= i < n`.
    pub fn alpha(&self, i: u32) -> &ModuleHom {
        &self.alphas[i as usize - 1]
    }

    /// `beta_i: A_{i+1} -> A_i` for `1 <= i < n`.
    pub fn beta(&self, i: u32) -> &ModuleHom {
        &self.betas[i as usize - 1]
    }

    pub fn alphas(&self) -> &[ModuleHom] {
        &self.alphas
    }

    pub fn betas(&self) -> &[ModuleHom] {
        &self.betas
    }

    pub fn level_invariants(&self) -> Vec<Vec<u32>> {
        self.levels.iter().map(|l| l.torsion_invariants()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|l| l.is_zero())
    }

    /// Levelwise direct sum with block-diagonal maps.
    pub fn direct_sum(&self, other: &YakovlevDiagram) -> Result<YakovlevDiagram> {
        if self.params != other.params {
            return Err(Error::ParamMismatch);
        }
        let sums = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| direct_sum_with_maps(&[a, b]))
            .collect::<Result<Vec<_>>>()?;
        let block = |f: &ModuleHom, g: &ModuleHom, s: usize, t: usize| {
            let m = Matrix::block_diag(&[f.matrix(), g.matrix()]);
            ModuleHom::new_unchecked(&sums[s].module, &sums[t].module, m)
        };
        let n = self.levels.len();
        let alphas = (0..n - 1).map(|i| block(&self.alphas[i], &other.alphas[i], i, i + 1)).collect();
        let betas = (0..n - 1).map(|i| block(&self.betas[i], &other.betas[i], i + 1, i)).collect();
        YakovlevDiagram::new(self.params, sums.into_iter().map(|s| s.module).collect(), alphas, betas)
    }

    /// Human-readable dump of invariants and matrices.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        let ring = self.params.ring();
        for (i, l) in self.levels.iter().enumerate() {
            out.push_str(&format!(
                "A_{}: {}  sigma={:?}\n",
                i + 1,
                format_invariants(self.params.p(), &l.torsion_invariants()),
                l.sigma().to_signed_rows(ring)
            ));
        }
        for i in 0..self.alphas.len() {
            out.push_str(&format!(
                "alpha_{}={:?}  beta_{}={:?}\n",
                i + 1,
                self.alphas[i].matrix().to_signed_rows(ring),
                i + 1,
                self.betas[i].matrix().to_signed_rows(ring)
            ));
        }
        out
    }
}

/// `Z/p^a ⊕ Z/p^b ...`, or `0`.
pub fn format_invariants(p: u64, inv: &[u32]) -> String {
    if inv.is_empty() {
        return "0".into();
    }
    inv.iter()
        .map(|e| if *e == 1 { format!("Z/{p}") } else { format!("Z/{p}^{e}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// `Δ(m)`: levels `Ĥ^{-1}(G_i, m)`, corestrictions up and restrictions down.
pub fn delta(m: &PresentedModule) -> Result<YakovlevDiagram> {
    let table = CohomologyTable::compute(m)?;
    delta_from_table(&table)
}

/// `Δ(m)` without the axiom check, for reporting failures level by level.
pub fn delta_unchecked(m: &PresentedModule) -> Result<YakovlevDiagram> {
    assemble_delta(&CohomologyTable::compute(m)?)
}

pub fn delta_from_table(table: &CohomologyTable) -> Result<YakovlevDiagram> {
    let d = assemble_delta(table)?;
    let report = check_axioms(&d);
    if !report.all_pass() {
        return Err(Error::AxiomViolation(report.failures().join("; ")));
    }
    Ok(d)
}

fn assemble_delta(table: &CohomologyTable) -> Result<YakovlevDiagram> {
    let params = table.module().params();
    let n = params.n();
    if n == 0 {
        return Err(Error::PreconditionViolated("diagrams need n >= 1".into()));
    }
    let levels = (1..=n).map(|i| table.group(1, i).group().clone()).collect();
    let alphas = (1..n).map(|i| Ok(table.corestriction(1, i, i + 1)?.hom().clone()));
    let betas = (1..n).map(|i| Ok(table.restriction(1, i + 1, i)?.hom().clone()));
    YakovlevDiagram::new(
        params,
        levels,
        alphas.collect::<Result<_>>()?,
        betas.collect::<Result<_>>()?,
    )
}

/// Axiom checks at one level `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelAxioms {
    pub index: u32,
    /// `p^i` kills `A_i`.
    pub exponent: bool,
    /// `sigma^(p^(n-i))` is the identity on `A_i`.
    pub subgroup_acts_trivially: bool,
    /// `alpha_i ∘ beta_i = p` on `A_{i+1}` (absent at the top level).
    pub alpha_beta: Option<bool>,
    /// `beta_i ∘ alpha_i` is the coset-norm action on `A_i`.
    pub beta_alpha: Option<bool>,
    /// `alpha_i`, `beta_i` commute with `sigma`.
    pub equivariant: bool,
}

impl LevelAxioms {
    pub fn passes(&self) -> bool {
        self.exponent
            && self.subgroup_acts_trivially
            && self.alpha_beta != Some(false)
            && self.beta_alpha != Some(false)
            && self.equivariant
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub levels: Vec<LevelAxioms>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.levels.iter().all(LevelAxioms::passes)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for l in &self.levels {
            let mut push = |ok: bool, what: &str| {
                if !ok {
                    out.push(format!("level {}: {what}", l.index));
                }
            };
            push(l.exponent, "exponent exceeds p^i");
            push(l.subgroup_acts_trivially, "G_i acts nontrivially");
            push(l.alpha_beta != Some(false), "alpha∘beta is not multiplication by p");
            push(l.beta_alpha != Some(false), "beta∘alpha is not the coset norm");
            push(l.equivariant, "maps do not commute with sigma");
        }
        out
    }
}

pub fn check_axioms(d: &YakovlevDiagram) -> AxiomReport {
    let params = d.params;
    let ring = params.ring();
    let p = params.p();
    let n = params.n();
    let mut levels = Vec::new();
    for i in 1..=n {
        let a = d.level(i);
        let k = a.dim();
        let exponent = a.torsion_invariants().iter().all(|&e| e <= i);
        let tau = a.sigma_power(params.subgroup_generator_exponent(i));
        let subgroup_acts_trivially = a.matrices_equal(&tau, &Matrix::identity(k));
        let (mut alpha_beta, mut beta_alpha, mut equivariant) = (None, None, true);
        if i < n {
            let al = d.alpha(i);
            let be = d.beta(i);
            equivariant = al.check_well_defined().is_ok() && be.check_well_defined().is_ok();
            let up = d.level(i + 1);
            let ab = al.matrix().mul(be.matrix(), ring);
            let p_id = Matrix::identity(up.dim()).scale(p, ring);
            alpha_beta = Some(up.matrices_equal(&ab, &p_id));
            let ba = be.matrix().mul(al.matrix(), ring);
            let tau_up = a.sigma_power(params.subgroup_generator_exponent(i + 1));
            let coset_norm = tau_up.geometric_sum(p, ring);
            beta_alpha = Some(a.matrices_equal(&ba, &coset_norm));
        }
        levels.push(LevelAxioms {
            index: i,
            exponent,
            subgroup_acts_trivially,
            alpha_beta,
            beta_alpha,
            equivariant,
        });
    }
    AxiomReport { levels }
}

/// Levelwise isomorphisms `gamma_i: A_i -> A'_i` commuting with all maps.
#[derive(Clone, Debug)]
pub struct DiagramIso {
    pub gammas: Vec<ModuleHom>,
}

impl DiagramIso {
    /// Re-checks bijectivity and every commuting square.
    pub fn verify(&self, d: &YakovlevDiagram, d2: &YakovlevDiagram) -> Result<()> {
        let n = d.n();
        if self.gammas.len() != n as usize {
            return Err(Error::DimensionMismatch("one gamma per level".into()));
        }
        let ring = d.params.ring();
        for i in 1..=n {
            let g = &self.gammas[i as usize - 1];
            g.check_well_defined()?;
            let (a, b) = (d.level(i), d2.level(i));
            if g.source() != a || g.target() != b {
                return Err(Error::DimensionMismatch(format!("gamma_{i} has the wrong shape")));
            }
            if a.log_order() != b.log_order() || !kernel_of(g)?.module.is_zero() {
                return Err(Error::AxiomViolation(format!("gamma_{i} is not bijective")));
            }
        }
        for i in 1..n {
            let (g, gu) = (&self.gammas[i as usize - 1], &self.gammas[i as usize]);
            let lhs = gu.matrix().mul(d.alpha(i).matrix(), ring);
            let rhs = d2.alpha(i).matrix().mul(g.matrix(), ring);
            if !d2.level(i + 1).matrices_equal(&lhs, &rhs) {
                return Err(Error::AxiomViolation(format!("alpha square {i} fails")));
            }
            let lhs = g.matrix().mul(d.beta(i).matrix(), ring);
            let rhs = d2.beta(i).matrix().mul(gu.matrix(), ring);
            if !d2.level(i).matrices_equal(&lhs, &rhs) {
                return Err(Error::AxiomViolation(format!("beta square {i} fails")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum DiagramComparison {
    Isomorphic(DiagramIso),
    NotIsomorphic(String),
    Undecided { samples: usize },
}

impl DiagramComparison {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, DiagramComparison::Isomorphic(_))
    }

    pub fn is_not_isomorphic(&self) -> bool {
        matches!(self, DiagramComparison::NotIsomorphic(_))
    }
}

fn endo(m: &PresentedModule, mat: Matrix) -> ModuleHom {
    ModuleHom::new_unchecked(m, m, mat)
}

/// Isomorphism-invariant fingerprint of a hom between finite modules.
fn hom_shape(h: &ModuleHom) -> Result<(Vec<u32>, Vec<u32>)> {
    Ok((
        kernel_of(h)?.module.torsion_invariants(),
        quotient_by_image(h.target(), h)?.module.torsion_invariants(),
    ))
}

fn fingerprint(d: &YakovlevDiagram) -> Result<Vec<(Vec<u32>, Vec<u32>)>> {
    let ring = d.params.ring();
    let mut out = Vec::new();
    for l in &d.levels {
        let s = l.sigma().sub(&Matrix::identity(l.dim()), ring);
        out.push(hom_shape(&endo(l, s))?);
    }
    for h in d.alphas.iter().chain(&d.betas) {
        out.push(hom_shape(h)?);
    }
    Ok(out)
}

/// One entry `gamma_kl = p^shift u` with `u` taken mod `p^modulus`.
#[derive(Clone, Copy, Debug)]
struct Entry {
    level: usize,
    row: usize,
    col: usize,
    shift: u32,
    modulus: u32,
}

/// All abelian-group homs `A_i -> A'_i` at once, parametrized by entries.
struct HomLayout {
    entries: Vec<Entry>,
    shapes: Vec<(usize, usize)>,
}

impl HomLayout {
    fn new(d: &YakovlevDiagram, d2: &YakovlevDiagram) -> Self {
        let mut entries = Vec::new();
        let mut shapes = Vec::new();
        for (level, (a, b)) in d.levels.iter().zip(&d2.levels).enumerate() {
            let (src, tgt) = (a.moduli(), b.moduli());
            shapes.push((tgt.len(), src.len()));
            for (row, bk) in tgt.iter().enumerate() {
                for (col, al) in src.iter().enumerate() {
                    let (al, bk) = (al.expect("finite"), bk.expect("finite"));
                    entries.push(Entry {
                        level,
                        row,
                        col,
                        shift: bk.saturating_sub(al),
                        modulus: al.min(bk),
                    });
                }
            }
        }
        Self { entries, shapes }
    }

    fn gammas(&self, u: &[u64], ring: &PadicRing) -> Vec<Matrix> {
        let mut g: Vec<Matrix> = self.shapes.iter().map(|&(r, c)| Matrix::zeros(r, c)).collect();
        for (e, &x) in self.entries.iter().zip(u) {
            g[e.level].set(e.row, e.col, ring.mul(x, ring.p_pow(e.shift)));
        }
        g
    }
}

fn flatten_into(m: &Matrix, target: &PresentedModule, out: &mut Vec<u64>, moduli: &mut Vec<u32>) {
    for c in m.columns() {
        let mut c = c;
        target.normalize(&mut c);
        out.extend(c);
        moduli.extend(target.moduli().iter().map(|d| d.expect("finite")));
    }
}

fn constraints(d: &YakovlevDiagram, d2: &YakovlevDiagram, g: &[Matrix]) -> (Vec<u64>, Vec<u32>) {
    let ring = d.params.ring();
    let mut out = Vec::new();
    let mut moduli = Vec::new();
    let n = d.levels.len();
    for i in 0..n {
        let m = d2.levels[i]
            .sigma()
            .mul(&g[i], ring)
            .sub(&g[i].mul(d.levels[i].sigma(), ring), ring);
        flatten_into(&m, &d2.levels[i], &mut out, &mut moduli);
    }
    for i in 0..n.saturating_sub(1) {
        let m = g[i + 1]
            .mul(d.alphas[i].matrix(), ring)
            .sub(&d2.alphas[i].matrix().mul(&g[i], ring), ring);
        flatten_into(&m, &d2.levels[i + 1], &mut out, &mut moduli);
        let m = g[i]
            .mul(d.betas[i].matrix(), ring)
            .sub(&d2.betas[i].matrix().mul(&g[i + 1], ring), ring);
        flatten_into(&m, &d2.levels[i], &mut out, &mut moduli);
    }
    (out, moduli)
}

fn finite_trivial(params: GroupParams, moduli: Vec<u32>) -> Result<PresentedModule> {
    let k = moduli.len();
    PresentedModule::new(params, moduli.into_iter().map(Some).collect(), Matrix::identity(k))
}

/// Decides whether `d ≅ d2`, with an explicit undecided outcome when the
/// randomized search runs out of budget.
pub fn diagrams_isomorphic(
    d: &YakovlevDiagram,
    d2: &YakovlevDiagram,
    config: &SearchConfig,
) -> Result<DiagramComparison> {
    if d.params != d2.params {
        return Err(Error::ParamMismatch);
    }
    let (inv1, inv2) = (d.level_invariants(), d2.level_invariants());
    if let Some(i) = (0..inv1.len()).find(|&i| inv1[i] != inv2[i]) {
        let p = d.params.p();
        return Ok(DiagramComparison::NotIsomorphic(format!(
            "level {} invariants differ: {} vs {}",
            i + 1,
            format_invariants(p, &inv1[i]),
            format_invariants(p, &inv2[i])
        )));
    }
    if fingerprint(d)? != fingerprint(d2)? {
        return Ok(DiagramComparison::NotIsomorphic(
            "kernels or cokernels of the structure maps differ".into(),
        ));
    }
    let params = d.params;
    let ring = params.ring();
    let p = params.p();
    let layout = HomLayout::new(d, d2);

    // Solution group of the commutation constraints.
    let zero_u = vec![0; layout.entries.len()];
    let (_, cmod) = constraints(d, d2, &layout.gammas(&zero_u, ring));
    let pspace = finite_trivial(params, layout.entries.iter().map(|e| e.modulus).collect())?;
    let cspace = finite_trivial(params, cmod)?;
    let mut cols = Vec::new();
    for k in 0..layout.entries.len() {
        let mut u = zero_u.clone();
        u[k] = 1;
        cols.push(constraints(d, d2, &layout.gammas(&u, ring)).0);
    }
    let cmat = Matrix::from_columns(cspace.dim(), &cols);
    let solutions = kernel_of(&ModuleHom::new_unchecked(&pspace, &cspace, cmat))?;
    let gens: Vec<Vec<u64>> = solutions.inclusion.matrix().columns().collect();

    // Reductions mod p; keep an independent subset of generators.
    let reduce = |u: &[u64]| -> Vec<u64> {
        layout
            .gammas(u, ring)
            .iter()
            .flat_map(|m| m.to_rows().into_iter().flatten().map(|x| x % p).collect::<Vec<_>>())
            .collect()
    };
    let mut basis = EchelonBasis::new(p);
    let mut chosen = Vec::new();
    for g in &gens {
        let r = reduce(g);
        if basis.insert(&r) {
            chosen.push((g.clone(), r));
        }
    }
    let dim = chosen.len();
    let invertible_levels = |flat: &[u64]| -> bool {
        let mut off = 0;
        layout.shapes.iter().all(|&(r, c)| {
            let rows: Vec<Vec<u64>> = (0..r).map(|i| flat[off + i * c..off + (i + 1) * c].to_vec()).collect();
            off += r * c;
            invertible_mod_p(&rows, p)
        })
    };
    let total = chosen.first().map_or(0, |c| c.1.len());
    let mut tried = 0usize;
    let (found, exhaustive) = search_coefficients(p, dim, config, |c| {
        tried += 1;
        let mut flat = vec![0u64; total];
        for (cj, (_, r)) in c.iter().zip(&chosen) {
            for (f, x) in flat.iter_mut().zip(r) {
                *f = (*f + cj * x) % p;
            }
        }
        if !invertible_levels(&flat) {
            return None;
        }
        let mut u = zero_u.clone();
        for (cj, (g, _)) in c.iter().zip(&chosen) {
            for (x, y) in u.iter_mut().zip(g) {
                *x = ring.add(*x, ring.mul(*cj, *y));
            }
        }
        Some(u)
    });
    match found {
        Some(u) => {
            let gammas = layout
                .gammas(&u, ring)
                .into_iter()
                .enumerate()
                .map(|(i, m)| ModuleHom::new_unchecked(&d.levels[i], &d2.levels[i], m))
                .collect();
            let iso = DiagramIso { gammas };
            iso.verify(d, d2)?;
            Ok(DiagramComparison::Isomorphic(iso))
        }
        None if exhaustive => Ok(DiagramComparison::NotIsomorphic(
            "no compatible family of level maps is invertible".into(),
        )),
        None => Ok(DiagramComparison::Undecided { samples: tried }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{augmentation_ideal, direct_sum, free_module, integers_trivial, trivial_module};

    fn params(p: u64, n: u32) -> GroupParams {
        GroupParams::with_defaults(p, n).unwrap()
    }

    #[test]
    fn zero_diagrams() {
        let pr = params(3, 2);
        assert!(delta(&free_module(pr, 1)).unwrap().is_zero());
        assert!(delta(&integers_trivial(pr)).unwrap().is_zero());
    }

    #[test]
    fn trivial_module_levels() {
        let pr = params(3, 2);
        for e in 1..=3u32 {
            let d = delta(&trivial_module(pr, &[e]).unwrap()).unwrap();
            assert_eq!(d.level_invariants(), vec![vec![e.min(1)], vec![e.min(2)]]);
            assert!(check_axioms(&d).all_pass());
        }
    }

    #[test]
    fn augmentation_ideal_level() {
        let d = delta(&augmentation_ideal(params(3, 1))).unwrap();
        assert_eq!(d.level_invariants(), vec![vec![1]]);
    }

    #[test]
    fn self_isomorphic() {
        let pr = params(3, 2);
        let m = direct_sum(&trivial_module(pr, &[2]).unwrap(), &augmentation_ideal(pr)).unwrap();
        let d = delta(&m).unwrap();
        let r = diagrams_isomorphic(&d, &d, &SearchConfig::default()).unwrap();
        assert!(r.is_isomorphic());
    }

    #[test]
    fn doubled_alpha_fails() {
        let pr = params(3, 2);
        let d = delta(&trivial_module(pr, &[2]).unwrap()).unwrap();
        let ring = pr.ring();
        let a2 = ModuleHom::new(
            d.level(1),
            d.level(2),
            d.alpha(1).matrix().scale(2, ring),
        )
        .unwrap();
        let bad = YakovlevDiagram::new(pr, d.levels().to_vec(), vec![a2], d.betas().to_vec()).unwrap();
        let rep = check_axioms(&bad);
        assert!(!rep.all_pass());
        assert_eq!(rep.levels[0].alpha_beta, Some(false));
    }

    #[test]
    fn additivity() {
        let pr = params(3, 2);
        let a = trivial_module(pr, &[1]).unwrap();
        let b = augmentation_ideal(pr);
        let ds = delta(&direct_sum(&a, &b).unwrap()).unwrap();
        let block = delta(&a).unwrap().direct_sum(&delta(&b).unwrap()).unwrap();
        assert!(diagrams_isomorphic(&ds, &block, &SearchConfig::default())
            .unwrap()
            .is_isomorphic());
    }

    #[test]
    fn different_levels_not_isomorphic() {
        let pr = params(3, 2);
        let d1 = delta(&trivial_module(pr, &[1]).unwrap()).unwrap();
        let d2 = delta(&trivial_module(pr, &[2]).unwrap()).unwrap();
        assert!(diagrams_isomorphic(&d1, &d2, &SearchConfig::default())
            .unwrap()
            .is_not_isomorphic());
        assert!(diagrams_isomorphic(&d2, &d1, &SearchConfig::default())
            .unwrap()
            .is_not_isomorphic());
    }

    fn hand_built(pr: GroupParams, alpha: u64, beta: u64) -> YakovlevDiagram {
        let z3 = trivial_module(pr, &[1]).unwrap();
        let a = ModuleHom::new(&z3, &z3, Matrix::from_rows(&[vec![alpha]])).unwrap();
        let b = ModuleHom::new(&z3, &z3, Matrix::from_rows(&[vec![beta]])).unwrap();
        YakovlevDiagram::new(pr, vec![z3.clone(), z3], vec![a], vec![b]).unwrap()
    }

    #[test]
    fn hand_built_diagrams() {
        let pr = params(3, 2);
        let cfg = SearchConfig::default();
        let (up, up2, down) = (hand_built(pr, 1, 0), hand_built(pr, 2, 0), hand_built(pr, 0, 1));
        for d in [&up, &up2, &down] {
            assert!(check_axioms(d).all_pass());
        }
        let r = diagrams_isomorphic(&up, &up2, &cfg).unwrap();
        let DiagramComparison::Isomorphic(iso) = r else { panic!("expected iso") };
        iso.verify(&up, &up2).unwrap();
        assert!(diagrams_isomorphic(&up, &down, &cfg).unwrap().is_not_isomorphic());
    }

    #[test]
    fn search_without_enumeration_still_finds_iso() {
        let pr = params(3, 2);
        let cfg = SearchConfig {
            seed: 11,
            max_samples: 200,
            enumeration_bound: 0,
        };
        let (a, b) = (hand_built(pr, 1, 0), hand_built(pr, 2, 0));
        assert!(diagrams_isomorphic(&a, &b, &cfg).unwrap().is_isomorphic());
    }

    #[test]
    fn undecided_when_budget_empty() {
        let pr = params(3, 2);
        let cfg = SearchConfig {
            seed: 0,
            max_samples: 0,
            enumeration_bound: 0,
        };
        let (a, b) = (hand_built(pr, 1, 0), hand_built(pr, 2, 0));
        assert!(matches!(
            diagrams_isomorphic(&a, &b, &cfg).unwrap(),
            DiagramComparison::Undecided { samples: 0 }
        ));
    }
}
