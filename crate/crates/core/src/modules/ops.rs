use crate::arith::{GroupParams, GroupRingElement, Matrix};
use crate::error::{Error, Result};

use super::hom::ModuleHom;
use super::lattice::{preimage_of_zero, subquotient, Projector};
use super::module::PresentedModule;

/// `Zp[G]^rank`; generator `j` spans coordinates `j*|G| .. (j+1)*|G|`.
pub fn free_module(params: GroupParams, rank: usize) -> PresentedModule {
    let reg = params.regular_sigma();
    let blocks: Vec<&Matrix> = std::iter::repeat_n(&reg, rank).collect();
    let sigma = if rank == 0 {
        Matrix::zeros(0, 0)
    } else {
        Matrix::block_diag(&blocks)
    };
    PresentedModule::from_parts(params, vec![None; rank * params.order()], sigma)
}

/// `Zp` with trivial action.
pub fn integers_trivial(params: GroupParams) -> PresentedModule {
    PresentedModule::from_parts(params, vec![None], Matrix::identity(1))
}

/// `⊕ Z/p^e_j` with trivial action.
pub fn trivial_module(params: GroupParams, exponents: &[u32]) -> Result<PresentedModule> {
    if exponents.contains(&0) {
        return Err(Error::PreconditionViolated("exponents must be at least 1".into()));
    }
    let mut exps = exponents.to_vec();
    exps.sort_unstable();
    PresentedModule::new(
        params,
        exps.into_iter().map(Some).collect(),
        Matrix::identity(exponents.len()),
    )
}

/// The augmentation ideal `I`, with `Zp`-basis `sigma^i - 1` for `i = 1..|G|-1`.
pub fn augmentation_ideal(params: GroupParams) -> PresentedModule {
    let ring = params.ring();
    let k = params.order() - 1;
    let mut sigma = Matrix::zeros(k, k);
    for col in 0..k {
        // sigma (sigma^i - 1) = (sigma^(i+1) - 1) - (sigma - 1), i = col + 1
        if col + 1 < k {
            sigma.set(col + 1, col, 1);
        }
        let v = ring.sub(sigma.get(0, col), 1);
        sigma.set(0, col, v);
    }
    PresentedModule::from_parts(params, vec![None; k], sigma)
}

/// Inclusion `I -> Zp[G]`.
pub fn augmentation_inclusion(params: GroupParams) -> ModuleHom {
    let ring = params.ring();
    let g = params.order();
    let mut m = Matrix::zeros(g, g - 1);
    for col in 0..g - 1 {
        m.set(col + 1, col, 1);
        m.set(0, col, ring.neg(1));
    }
    ModuleHom::new_unchecked(&augmentation_ideal(params), &free_module(params, 1), m)
}

/// Coordinates of an element of `Zp[G]` in the basis of [`augmentation_ideal`],
/// or `None` if its augmentation is nonzero.
pub fn augmentation_ideal_coordinates(x: &GroupRingElement) -> Option<Vec<u64>> {
    if !x.augmentation().is_zero() {
        return None;
    }
    Some(x.coeffs()[1..].to_vec())
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: PresentedModule,
    pub inclusions: Vec<ModuleHom>,
    pub projections: Vec<ModuleHom>,
}

pub fn direct_sum_with_maps(parts: &[&PresentedModule]) -> Result<DirectSum> {
    let Some(first) = parts.first() else {
        return Err(Error::PreconditionViolated("direct sum of no modules".into()));
    };
    let params = first.params();
    if parts.iter().any(|m| m.params() != params) {
        return Err(Error::ParamMismatch);
    }
    let moduli: Vec<Option<u32>> = parts.iter().flat_map(|m| m.moduli().to_vec()).collect();
    let sigmas: Vec<&Matrix> = parts.iter().map(|m| m.sigma()).collect();
    let sigma = if moduli.is_empty() {
        Matrix::zeros(0, 0)
    } else {
        Matrix::block_diag(&sigmas)
    };
    let total = moduli.len();
    let loss = parts.iter().map(|m| m.precision_loss()).max().unwrap_or(0);
    let module = PresentedModule::from_parts(params, moduli, sigma).with_loss(loss);
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    let mut offset = 0;
    for m in parts {
        let mut inc = Matrix::zeros(total, m.dim());
        let mut proj = Matrix::zeros(m.dim(), total);
        for i in 0..m.dim() {
            inc.set(offset + i, i, 1);
            proj.set(i, offset + i, 1);
        }
        inclusions.push(ModuleHom::new_unchecked(m, &module, inc));
        projections.push(ModuleHom::new_unchecked(&module, m, proj));
        offset += m.dim();
    }
    Ok(DirectSum {
        module,
        inclusions,
        projections,
    })
}

pub fn direct_sum(a: &PresentedModule, b: &PresentedModule) -> Result<PresentedModule> {
    Ok(direct_sum_with_maps(&[a, b])?.module)
}

pub fn direct_sum_all(parts: &[&PresentedModule]) -> Result<PresentedModule> {
    Ok(direct_sum_with_maps(parts)?.module)
}

/// A quotient module with its projection and a coordinate section.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: PresentedModule,
    pub projection: ModuleHom,
    /// Column `j` lifts quotient coordinate `j` to the ambient module.
    pub section: Matrix,
}

/// A submodule with its inclusion and a membership/coordinate map.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub module: PresentedModule,
    pub inclusion: ModuleHom,
    projector: Projector,
}

impl Submodule {
    /// Coordinates of an ambient element lying in the submodule.
    pub fn coordinates(&self, x: &[u64]) -> Result<Vec<u64>> {
        self.projector.project(x)
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.projector.contains(x)
    }
}

pub(crate) fn quotient_by_lattice(m: &PresentedModule, gens: &Matrix) -> Result<Quotient> {
    let rel = m.relation_columns();
    let q = Matrix::hstack(&[&rel, gens]);
    let sq = subquotient(m.params(), m.sigma(), m.precision_loss(), None, &q)?;
    let proj = sq.projector.project_columns(&Matrix::identity(m.dim()))?;
    Ok(Quotient {
        projection: ModuleHom::new_unchecked(m, &sq.module, proj),
        module: sq.module,
        section: sq.lift,
    })
}

/// `coker h`.
pub fn quotient_by_image(m: &PresentedModule, h: &ModuleHom) -> Result<Quotient> {
    if !h.target().ptr_eq(m) {
        return Err(Error::IllDefinedHom("hom does not map into the module".into()));
    }
    h.check_well_defined()?;
    quotient_by_lattice(m, h.matrix())
}

/// Quotient by the `Zp[G]`-submodule generated by `elems`.
pub fn quotient_by_elements(m: &PresentedModule, elems: &[Vec<u64>]) -> Result<Quotient> {
    quotient_by_lattice(m, &orbit_span(m, elems))
}

/// Columns `sigma^t x` for all `t < |G|` and all `x`.
fn orbit_span(m: &PresentedModule, elems: &[Vec<u64>]) -> Matrix {
    let ring = m.ring();
    let mut cols = Vec::new();
    for x in elems {
        let mut v = x.clone();
        for _ in 0..m.params().order() {
            cols.push(v.clone());
            v = m.sigma().apply(&v, ring);
        }
    }
    Matrix::from_columns(m.dim(), &cols)
}

/// `ker h` with its inclusion into the source.
pub fn kernel_of(h: &ModuleHom) -> Result<Submodule> {
    h.check_well_defined()?;
    let src = h.source();
    let pre = preimage_of_zero(h.matrix(), h.target())?;
    let sq = subquotient(src.params(), src.sigma(), src.precision_loss(), Some(&pre), &src.relation_columns())?;
    Ok(Submodule {
        inclusion: ModuleHom::new_unchecked(&sq.module, src, sq.lift),
        module: sq.module,
        projector: sq.projector,
    })
}

/// The `Zp[G]`-submodule generated by `elems`.
pub fn submodule_generated(m: &PresentedModule, elems: &[Vec<u64>]) -> Result<Submodule> {
    let span = orbit_span(m, elems);
    let sq = subquotient(m.params(), m.sigma(), m.precision_loss(), Some(&span), &m.relation_columns())?;
    Ok(Submodule {
        inclusion: ModuleHom::new_unchecked(&sq.module, m, sq.lift),
        module: sq.module,
        projector: sq.projector,
    })
}

/// `im h` as a submodule of the target.
pub fn image_of(h: &ModuleHom) -> Result<Submodule> {
    let t = h.target();
    let sq = subquotient(t.params(), t.sigma(), t.precision_loss(), Some(h.matrix()), &t.relation_columns())?;
    Ok(Submodule {
        inclusion: ModuleHom::new_unchecked(&sq.module, t, sq.lift),
        module: sq.module,
        projector: sq.projector,
    })
}

/// `M^{G_i}` as a module over `G / G_i`, together with its embedding.
#[derive(Clone, Debug)]
pub struct FixedPoints {
    /// Module over the quotient parameters `(p, n - i, N)`.
    pub module: PresentedModule,
    /// The same lattice viewed as a `G`-submodule of the ambient module.
    pub as_g_module: Submodule,
}

pub fn fixed_points(m: &PresentedModule, subgroup_index: u32) -> Result<FixedPoints> {
    let params = m.params();
    if subgroup_index > params.n() {
        return Err(Error::PreconditionViolated(format!(
            "subgroup index {subgroup_index} exceeds n = {}",
            params.n()
        )));
    }
    let ring = params.ring();
    let tau = m.sigma_power(params.subgroup_generator_exponent(subgroup_index));
    let op = tau.sub(&Matrix::identity(m.dim()), ring);
    let pre = preimage_of_zero(&op, m)?;
    let sq = subquotient(params, m.sigma(), m.precision_loss(), Some(&pre), &m.relation_columns())?;
    let sub = Submodule {
        inclusion: ModuleHom::new_unchecked(&sq.module, m, sq.lift),
        module: sq.module.clone(),
        projector: sq.projector,
    };
    Ok(FixedPoints {
        module: sq.module.with_params(params.quotient(subgroup_index)),
        as_g_module: sub,
    })
}

/// `x -> r x`.
pub fn scalar_action_hom(m: &PresentedModule, r: &GroupRingElement) -> ModuleHom {
    ModuleHom::new_unchecked(m, m, m.action_matrix(r))
}

/// `Zp[G]^k -> m` sending the `j`-th basis generator to `elems[j]`.
pub fn hom_from_free(m: &PresentedModule, elems: &[Vec<u64>]) -> ModuleHom {
    let free = free_module(m.params(), elems.len());
    ModuleHom::new_unchecked(&free, m, orbit_span(m, elems))
}

/// Whether `v` lies in the image of `h`.
pub fn image_contains(h: &ModuleHom, v: &[u64]) -> Result<bool> {
    let t = h.target();
    let ring = t.ring();
    let a = Matrix::hstack(&[h.matrix(), &t.relation_columns()]);
    let s = crate::arith::snf::snf(&a, ring, true)?;
    Ok(s.solve(v, ring).is_some())
}

/// Exactness of `X --f--> Y --g--> Z` at `Y`.
pub fn is_exact_at(f: &ModuleHom, g: &ModuleHom) -> Result<bool> {
    if !g.compose(f)?.is_zero() {
        return Ok(false);
    }
    let ker = kernel_of(g)?;
    for col in ker.inclusion.matrix().columns() {
        if !image_contains(f, &col)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_injective(h: &ModuleHom) -> Result<bool> {
    Ok(kernel_of(h)?.module.is_zero())
}

pub fn is_surjective(h: &ModuleHom) -> Result<bool> {
    Ok(quotient_by_image(h.target(), h)?.module.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, n: u32) -> GroupParams {
        GroupParams::with_defaults(p, n).unwrap()
    }

    #[test]
    fn free_modules() {
        assert!(free_module(params(3, 1), 0).is_zero());
        assert_eq!(free_module(params(3, 1), 1).zp_rank(), 3);
        assert_eq!(free_module(params(3, 2), 2).zp_rank(), 18);
        assert!(free_module(params(3, 2), 2).torsion_invariants().is_empty());
    }

    #[test]
    fn augmentation_ideal_basics() {
        let pr = params(3, 1);
        let i = augmentation_ideal(pr);
        assert_eq!(i.zp_rank(), 2);
        assert_eq!(augmentation_ideal(params(3, 2)).zp_rank(), 8);
        PresentedModule::new(pr, i.moduli().to_vec(), i.sigma().clone()).unwrap();
        augmentation_inclusion(pr).check_well_defined().unwrap();
        assert!(augmentation_ideal_coordinates(&GroupRingElement::norm(pr)).is_none());
        let s2 = GroupRingElement::sigma_pow(pr, 2).sub(&GroupRingElement::one(pr));
        assert_eq!(augmentation_ideal_coordinates(&s2), Some(vec![0, 1]));
    }

    #[test]
    fn trivial_modules() {
        let pr = params(3, 1);
        let m = trivial_module(pr, &[1]).unwrap();
        assert_eq!(m.log_order(), Some(1));
        assert!(trivial_module(pr, &[]).unwrap().is_zero());
        let m = trivial_module(pr, &[2, 1]).unwrap();
        assert_eq!(m.torsion_invariants(), vec![1, 2]);
        assert_eq!(m.log_order(), Some(3));
    }

    #[test]
    fn sums() {
        let pr = params(3, 1);
        let s = direct_sum(&augmentation_ideal(pr), &free_module(pr, 1)).unwrap();
        assert_eq!(s.zp_rank(), 5);
        let t = trivial_module(pr, &[1]).unwrap();
        let tt = direct_sum(&t, &t).unwrap();
        assert_eq!(tt.torsion_invariants(), vec![1, 1]);
    }

    #[test]
    fn quotients_of_free() {
        let pr = params(3, 1);
        let f = free_module(pr, 1);
        assert!(quotient_by_image(&f, &ModuleHom::identity(&f)).unwrap().module.is_zero());
        let by_p = scalar_action_hom(&f, &GroupRingElement::scalar(pr, 3));
        assert_eq!(
            quotient_by_image(&f, &by_p).unwrap().module.torsion_invariants(),
            vec![1, 1, 1]
        );
        let by_aug = scalar_action_hom(&f, &GroupRingElement::sigma_minus_one(pr));
        let q = quotient_by_image(&f, &by_aug).unwrap().module;
        assert_eq!(q.zp_rank(), 1);
        assert!(q.torsion_invariants().is_empty());
        assert_eq!(q.sigma(), &Matrix::identity(1));
    }

    #[test]
    fn kernels() {
        let pr = params(3, 1);
        let f = free_module(pr, 1);
        assert!(kernel_of(&ModuleHom::identity(&f)).unwrap().module.is_zero());
        // augmentation Zp[G] -> Zp
        let z = integers_trivial(pr);
        let aug = ModuleHom::new(&f, &z, Matrix::from_rows(&[vec![1, 1, 1]])).unwrap();
        let k = kernel_of(&aug).unwrap();
        assert_eq!(k.module.zp_rank(), 2);
        let s2 = GroupRingElement::sigma_pow(pr, 2).sub(&GroupRingElement::one(pr));
        assert!(k.contains(s2.coeffs()));
        assert!(!k.contains(GroupRingElement::norm(pr).coeffs()));
        assert!(is_exact_at(&k.inclusion, &aug).unwrap());
    }

    #[test]
    fn fixed_points_of_regular() {
        let pr = params(3, 2);
        let f = free_module(pr, 1);
        let fp = fixed_points(&f, 2).unwrap();
        assert_eq!(fp.module.zp_rank(), 1);
        assert_eq!(fp.module.params().n(), 0);
        let fp1 = fixed_points(&f, 1).unwrap();
        assert_eq!(fp1.module.zp_rank(), 3);
        assert!(fp1.as_g_module.contains(GroupRingElement::subgroup_norm(pr, 1).coeffs()));
        assert!(fixed_points(&f, 3).is_err());
    }

    #[test]
    fn scalar_actions() {
        let pr = params(3, 1);
        let t = trivial_module(pr, &[1]).unwrap();
        assert!(scalar_action_hom(&t, &GroupRingElement::norm(pr)).is_zero());
        let z = integers_trivial(pr);
        assert!(scalar_action_hom(&z, &GroupRingElement::sigma_minus_one(pr)).is_zero());
        let f = free_module(pr, 1);
        assert!(scalar_action_hom(&f, &GroupRingElement::one(pr)).equals(&ModuleHom::identity(&f)));
    }

    #[test]
    fn ill_defined_hom_rejected() {
        let pr = params(3, 1);
        let z = integers_trivial(pr);
        let f = free_module(pr, 1);
        // Zp -> Zp[G], 1 -> 1 does not commute with sigma.
        let bad = ModuleHom::new(&z, &f, Matrix::from_rows(&[vec![1], vec![0], vec![0]]));
        assert!(matches!(bad, Err(Error::IllDefinedHom(_))));
        let t = trivial_module(pr, &[1]).unwrap();
        // Z/3 -> Zp is never nonzero.
        assert!(ModuleHom::new(&t, &z, Matrix::from_rows(&[vec![1]])).is_err());
    }
}
