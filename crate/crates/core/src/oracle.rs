//! Brute-force isomorphism and stable-isomorphism decisions for small modules.
//!
//! Homs `M -> M'` are parametrized by the images of a minimal generating set
//! of `M`, cut out by the syzygy relations. A hom is an isomorphism as soon as
//! it is surjective mod `(p, sigma - 1)` and the two modules have the same
//! rank and torsion, which turns the search into linear algebra over `F_p`.
//! Diagram invariants are never consulted.

use serde::{Deserialize, Serialize};

use crate::arith::{GroupRingElement, Matrix};
use crate::cohomology::CohomologyTable;
use crate::error::{Error, Result};
use crate::modules::{
    direct_sum, direct_sum_all, free_cover, free_module, is_injective, is_surjective, kernel_of,
    minimal_generators, radical_quotient, solve_preimage, syzygy, FreeCover, ModuleHom,
    PresentedModule,
};
use crate::search::{invertible_mod_p, search_coefficients, EchelonBasis, SearchConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoSearchConfig {
    pub seed: u64,
    pub max_samples: usize,
    pub enumeration_bound: u32,
    /// Bound on the free padding ranks `a`, `b` in stable checks.
    pub max_free_rank: usize,
}

impl Default for IsoSearchConfig {
    fn default() -> Self {
        let s = SearchConfig::default();
        Self {
            seed: s.seed,
            max_samples: s.max_samples,
            enumeration_bound: s.enumeration_bound,
            max_free_rank: 3,
        }
    }
}

impl IsoSearchConfig {
    pub fn search(&self) -> SearchConfig {
        SearchConfig {
            seed: self.seed,
            max_samples: self.max_samples,
            enumeration_bound: self.enumeration_bound,
        }
    }
}

/// A verified isomorphism together with its inverse.
#[derive(Clone, Debug)]
pub struct ModuleIso {
    pub forward: ModuleHom,
    pub inverse: ModuleHom,
}

#[derive(Clone, Debug)]
pub enum IsoOutcome {
    Isomorphic(ModuleIso),
    NotIsomorphic(String),
    Undecided { samples: usize },
}

impl IsoOutcome {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }

    pub fn is_not_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::NotIsomorphic(_))
    }
}

#[derive(Clone, Debug)]
pub enum StableOutcome {
    /// `m ⊕ Zp[G]^a ≅ m2 ⊕ Zp[G]^b`.
    StablyIsomorphic { a: usize, b: usize, iso: ModuleIso },
    NotStablyIsomorphic(String),
    Undecided { tried: Vec<(usize, usize)> },
}

impl StableOutcome {
    pub fn is_hit(&self) -> bool {
        matches!(self, StableOutcome::StablyIsomorphic { .. })
    }

    pub fn is_not_stably_isomorphic(&self) -> bool {
        matches!(self, StableOutcome::NotStablyIsomorphic(_))
    }

    pub fn padding(&self) -> Option<(usize, usize)> {
        match self {
            StableOutcome::StablyIsomorphic { a, b, .. } => Some((*a, *b)),
            _ => None,
        }
    }
}

/// `Hom_{Zp[G]}(source, target)` as images `y_j` of the cover generators.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: PresentedModule,
    target: PresentedModule,
    cover: FreeCover,
    preimages: Matrix,
    /// Each generator is `k` stacked target vectors `y_0 .. y_{k-1}`.
    generators: Vec<Vec<u64>>,
}

impl HomSpace {
    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn cover_rank(&self) -> usize {
        self.cover.rank()
    }

    /// The hom sending cover generator `j` to `y_j`.
    pub fn hom(&self, y: &[u64]) -> ModuleHom {
        let t = &self.target;
        let ring = t.ring();
        let kt = t.dim();
        let g = t.params().order();
        let mut psi_cols = Vec::with_capacity(self.cover.rank() * g);
        for j in 0..self.cover.rank() {
            let mut v = y[j * kt..(j + 1) * kt].to_vec();
            for _ in 0..g {
                psi_cols.push(v.clone());
                v = t.sigma().apply(&v, ring);
            }
        }
        let psi = Matrix::from_columns(kt, &psi_cols);
        ModuleHom::new_unchecked(&self.source, t, psi.mul(&self.preimages, ring))
    }
}

fn power(m: &PresentedModule, copies: usize) -> Result<PresentedModule> {
    if copies == 0 {
        return Ok(PresentedModule::zero(m.params()));
    }
    direct_sum_all(&vec![m; copies])
}

pub fn hom_space(source: &PresentedModule, target: &PresentedModule) -> Result<HomSpace> {
    if source.params() != target.params() {
        return Err(Error::ParamMismatch);
    }
    let params = source.params();
    let g = params.order();
    let cover = free_cover(source)?;
    let k = cover.rank();
    let kt = target.dim();
    let syz = syzygy(source)?;
    let relations: Vec<Vec<u64>> = minimal_generators(&syz.module)?
        .iter()
        .map(|z| syz.inclusion.apply(z))
        .collect();
    let domain = power(target, k)?;
    let codomain = power(target, relations.len())?;
    let mut phi = Matrix::zeros(relations.len() * kt, k * kt);
    for (r, z) in relations.iter().enumerate() {
        for j in 0..k {
            let zj = GroupRingElement::from_residues(params, z[j * g..(j + 1) * g].to_vec())?;
            let block = zj.evaluate(target.sigma());
            for a in 0..kt {
                for b in 0..kt {
                    phi.set(r * kt + a, j * kt + b, block.get(a, b));
                }
            }
        }
    }
    let sol = kernel_of(&ModuleHom::new_unchecked(&domain, &codomain, phi))?;
    let generators = sol.inclusion.matrix().columns().collect();
    let preimages = cover.coordinate_preimages()?;
    Ok(HomSpace {
        source: source.clone(),
        target: target.clone(),
        cover,
        preimages,
        generators,
    })
}

/// Cheap invariants that any isomorphism preserves.
fn invariants_match(m: &PresentedModule, m2: &PresentedModule) -> Result<Option<String>> {
    if m.zp_rank() != m2.zp_rank() {
        return Ok(Some(format!("Zp-ranks differ: {} vs {}", m.zp_rank(), m2.zp_rank())));
    }
    if m.torsion_invariants() != m2.torsion_invariants() {
        return Ok(Some(format!(
            "torsion differs: {:?} vs {:?}",
            m.torsion_invariants(),
            m2.torsion_invariants()
        )));
    }
    let (t1, t2) = (tate_invariants(m)?, tate_invariants(m2)?);
    if t1 != t2 {
        return Ok(Some(format!("Tate groups differ: {t1:?} vs {t2:?}")));
    }
    let (k1, k2) = (radical_quotient(m)?.module.dim(), radical_quotient(m2)?.module.dim());
    if k1 != k2 {
        return Ok(Some(format!("minimal generator counts differ: {k1} vs {k2}")));
    }
    Ok(None)
}

fn tate_invariants(m: &PresentedModule) -> Result<[Vec<Vec<u32>>; 2]> {
    Ok(CohomologyTable::compute(m)?.invariants())
}

fn verified_iso(forward: ModuleHom) -> Result<Option<ModuleIso>> {
    if !is_injective(&forward)? || !is_surjective(&forward)? {
        return Ok(None);
    }
    let (s, t) = (forward.source().clone(), forward.target().clone());
    let cols = (0..t.dim())
        .map(|i| {
            let mut e = vec![0; t.dim()];
            e[i] = 1;
            solve_preimage(&forward, &e)?.ok_or_else(|| Error::AxiomViolation("no preimage".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let inverse = ModuleHom::new(&t, &s, Matrix::from_columns(s.dim(), &cols))?;
    if !inverse.compose(&forward)?.equals(&ModuleHom::identity(&s))
        || !forward.compose(&inverse)?.equals(&ModuleHom::identity(&t))
    {
        return Err(Error::AxiomViolation("computed inverse is not two-sided".into()));
    }
    Ok(Some(ModuleIso { forward, inverse }))
}

pub fn modules_isomorphic(
    m: &PresentedModule,
    m2: &PresentedModule,
    cfg: &IsoSearchConfig,
) -> Result<IsoOutcome> {
    if m.params() != m2.params() {
        return Err(Error::ParamMismatch);
    }
    if let Some(why) = invariants_match(m, m2)? {
        return Ok(IsoOutcome::NotIsomorphic(why));
    }
    if m.is_zero() {
        let z = ModuleHom::zero(m, m2);
        return Ok(IsoOutcome::Isomorphic(ModuleIso {
            inverse: ModuleHom::zero(m2, m),
            forward: z,
        }));
    }
    let p = m.params().p();
    let ring = m.ring();
    let space = hom_space(m, m2)?;
    let k = space.cover_rank();
    let rad = radical_quotient(m2)?;
    let kt = m2.dim();
    let reduce = |y: &[u64]| -> Vec<u64> {
        // Row-major k x k matrix of the induced map on radical quotients.
        let cols: Vec<Vec<u64>> = (0..k).map(|j| rad.projection.apply(&y[j * kt..(j + 1) * kt])).collect();
        (0..k).flat_map(|r| cols.iter().map(move |c| c[r] % p)).collect()
    };
    let mut basis = EchelonBasis::new(p);
    let mut chosen = Vec::new();
    for y in space.generators() {
        let r = reduce(y);
        if basis.insert(&r) {
            chosen.push((y.clone(), r));
        }
    }
    let mut tried = 0;
    let mut failure = None;
    let (found, exhaustive) = search_coefficients(p, chosen.len(), &cfg.search(), |c| {
        tried += 1;
        let mut flat = vec![0u64; k * k];
        for (cj, (_, r)) in c.iter().zip(&chosen) {
            for (f, x) in flat.iter_mut().zip(r) {
                *f = (*f + cj * x) % p;
            }
        }
        let rows: Vec<Vec<u64>> = flat.chunks(k).map(|r| r.to_vec()).collect();
        if !invertible_mod_p(&rows, p) {
            return None;
        }
        let mut y = vec![0u64; k * kt];
        for (cj, (g, _)) in c.iter().zip(&chosen) {
            for (a, b) in y.iter_mut().zip(g) {
                *a = ring.add(*a, ring.mul(*cj, *b));
            }
        }
        match verified_iso(space.hom(&y)) {
            Ok(Some(iso)) => Some(iso),
            Ok(None) => None,
            Err(e) => {
                failure = Some(e);
                None
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(match found {
        Some(iso) => IsoOutcome::Isomorphic(iso),
        None if exhaustive => {
            IsoOutcome::NotIsomorphic("no hom is surjective modulo the radical".into())
        }
        None => IsoOutcome::Undecided { samples: tried },
    })
}

fn pad(m: &PresentedModule, a: usize) -> Result<PresentedModule> {
    if a == 0 {
        Ok(m.clone())
    } else {
        direct_sum(m, &free_module(m.params(), a))
    }
}

/// Searches for `m ⊕ Zp[G]^a ≅ m2 ⊕ Zp[G]^b` over rank-compatible pairs.
///
/// Free summands cancel for lattices over `Zp[G]`, so a definite negative
/// at the smallest compatible pair is a definite negative overall.
pub fn stably_isomorphic(
    m: &PresentedModule,
    m2: &PresentedModule,
    cfg: &IsoSearchConfig,
) -> Result<StableOutcome> {
    if m.params() != m2.params() {
        return Err(Error::ParamMismatch);
    }
    if !m.is_torsion_free() || !m2.is_torsion_free() {
        return Err(Error::PreconditionViolated("stable isomorphism needs lattices".into()));
    }
    let (t1, t2) = (tate_invariants(m)?, tate_invariants(m2)?);
    if t1 != t2 {
        return Ok(StableOutcome::NotStablyIsomorphic(format!(
            "Tate groups differ: {t1:?} vs {t2:?}"
        )));
    }
    let g = m.params().order();
    let (r1, r2) = (m.zp_rank(), m2.zp_rank());
    if r1.abs_diff(r2) % g != 0 {
        return Ok(StableOutcome::NotStablyIsomorphic(format!(
            "ranks {r1} and {r2} differ by a non-multiple of {g}"
        )));
    }
    let mut pairs = Vec::new();
    for total in 0..=2 * cfg.max_free_rank {
        for a in 0..=total.min(cfg.max_free_rank) {
            let b = total - a;
            if b <= cfg.max_free_rank && r1 + a * g == r2 + b * g {
                pairs.push((a, b));
            }
        }
    }
    let mut tried = Vec::new();
    for (idx, &(a, b)) in pairs.iter().enumerate() {
        tried.push((a, b));
        match modules_isomorphic(&pad(m, a)?, &pad(m2, b)?, cfg)? {
            IsoOutcome::Isomorphic(iso) => return Ok(StableOutcome::StablyIsomorphic { a, b, iso }),
            IsoOutcome::NotIsomorphic(why) if idx == 0 => {
                return Ok(StableOutcome::NotStablyIsomorphic(format!(
                    "not isomorphic at the smallest padding ({a}, {b}): {why}"
                )))
            }
            _ => {}
        }
    }
    Ok(StableOutcome::Undecided { tried })
}

#[derive(Clone, Debug)]
pub struct FreeSummandReport {
    pub free_rank: usize,
    pub complement: PresentedModule,
}

/// Splits off copies of `Zp[G]` one at a time.
///
/// A surjection onto `Zp[G]` always splits, and one exists exactly when some
/// hom is nonzero modulo the radical of `Zp[G]`.
pub fn krull_schmidt_note(m: &PresentedModule) -> Result<FreeSummandReport> {
    let params = m.params();
    let p = params.p();
    let free = free_module(params, 1);
    let mut cur = m.clone();
    let mut free_rank = 0;
    loop {
        if cur.is_zero() {
            break;
        }
        let space = hom_space(&cur, &free)?;
        let hit = space.generators().iter().find_map(|y| {
            let h = space.hom(y);
            let surj = h.matrix().columns().any(|c| c.iter().fold(0u64, |s, x| (s + x % p) % p) != 0);
            surj.then_some(h)
        });
        let Some(h) = hit else { break };
        cur = kernel_of(&h)?.module;
        free_rank += 1;
    }
    Ok(FreeSummandReport {
        free_rank,
        complement: cur,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::GroupParams;
    use crate::modules::{augmentation_ideal, integers_trivial, trivial_module};

    fn params(p: u64, n: u32) -> GroupParams {
        GroupParams::with_defaults(p, n).unwrap()
    }

    #[test]
    fn self_iso() {
        let pr = params(3, 1);
        let cfg = IsoSearchConfig::default();
        for m in [
            augmentation_ideal(pr),
            integers_trivial(pr),
            trivial_module(pr, &[1, 2]).unwrap(),
            free_module(pr, 1),
        ] {
            assert!(modules_isomorphic(&m, &m, &cfg).unwrap().is_isomorphic());
        }
    }

    #[test]
    fn distinguishes_by_invariants() {
        let pr = params(3, 1);
        let cfg = IsoSearchConfig::default();
        let r = modules_isomorphic(&augmentation_ideal(pr), &integers_trivial(pr), &cfg).unwrap();
        assert!(r.is_not_isomorphic());
    }

    #[test]
    fn i_plus_zp_vs_free() {
        // Same rank and torsion; Tate groups separate them.
        let pr = params(3, 1);
        let cfg = IsoSearchConfig::default();
        let s = direct_sum(&augmentation_ideal(pr), &integers_trivial(pr)).unwrap();
        assert!(modules_isomorphic(&s, &free_module(pr, 1), &cfg).unwrap().is_not_isomorphic());
    }

    #[test]
    fn stable_padding() {
        let pr = params(3, 1);
        let cfg = IsoSearchConfig::default();
        let i = augmentation_ideal(pr);
        let ip = direct_sum(&i, &free_module(pr, 1)).unwrap();
        assert_eq!(stably_isomorphic(&ip, &i, &cfg).unwrap().padding(), Some((0, 1)));
        assert!(stably_isomorphic(&i, &integers_trivial(pr), &cfg)
            .unwrap()
            .is_not_stably_isomorphic());
        assert!(stably_isomorphic(&trivial_module(pr, &[1]).unwrap(), &i, &cfg).is_err());
    }

    #[test]
    fn free_summands() {
        let pr = params(3, 1);
        let r = krull_schmidt_note(&free_module(pr, 2)).unwrap();
        assert_eq!(r.free_rank, 2);
        assert!(r.complement.is_zero());
        assert_eq!(krull_schmidt_note(&augmentation_ideal(pr)).unwrap().free_rank, 0);
        let s = direct_sum(&augmentation_ideal(pr), &free_module(pr, 1)).unwrap();
        let r = krull_schmidt_note(&s).unwrap();
        assert_eq!(r.free_rank, 1);
        assert_eq!(r.complement.zp_rank(), 2);
    }
}
