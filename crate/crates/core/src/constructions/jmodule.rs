//! The modules `J_e = p^e Zp[G] + Zp N_G`, the resolution
//! `0 -> J_e -> Zp[G]^2 -> Zp[G] -> Z/p^e -> 0`, and `Zp ⊕ I ≅ J_e` for `e >= n`.

use crate::arith::{GroupParams, GroupRingElement, Matrix};
use crate::error::{Error, Result};
use crate::modules::{
    augmentation_ideal, direct_sum, direct_sum_all, free_module, integers_trivial, is_exact_at,
    is_injective, is_surjective, kernel_of, quotient_by_image, submodule_generated,
    trivial_module, ModuleHom, PresentedModule, Submodule,
};

/// `J_e` as a submodule of `Zp[G]`.
pub fn j_submodule(params: GroupParams, e: u32) -> Result<Submodule> {
    let ring = params.ring();
    let gens = vec![
        GroupRingElement::one(params).scale(ring.p_pow(e)).coeffs().to_vec(),
        GroupRingElement::norm(params).coeffs().to_vec(),
    ];
    submodule_generated(&free_module(params, 1), &gens)
}

pub fn j_module(params: GroupParams, e: u32) -> Result<PresentedModule> {
    Ok(j_submodule(params, e)?.module)
}

/// The maps `J_e -> Zp[G]^2 -> Zp[G] -> Z/p^e` and their exactness.
#[derive(Clone, Debug)]
pub struct Lemma3Resolution {
    pub e: u32,
    /// `j -> (-(sigma - 1) x, j)` where `j = p^e x + c N_G`.
    pub inclusion: ModuleHom,
    /// `(alpha, beta) -> p^e alpha + (sigma - 1) beta`.
    pub g: ModuleHom,
    /// Augmentation mod `p^e`.
    pub f: ModuleHom,
    pub injective: bool,
    pub exact_at_free2: bool,
    pub exact_at_free1: bool,
    pub surjective: bool,
    /// `log_p |coker g|`.
    pub cokernel_log_order: u32,
}

impl Lemma3Resolution {
    pub fn is_exact(&self) -> bool {
        self.injective && self.exact_at_free2 && self.exact_at_free1 && self.surjective
    }
}

pub fn lemma3_resolution(params: GroupParams, e: u32) -> Result<Lemma3Resolution> {
    let ring = params.ring();
    let g = params.order();
    let pe = ring.p_pow(e);
    let j = j_submodule(params, e)?;
    let f1 = free_module(params, 1);
    let f2 = free_module(params, 2);
    let target = if e == 0 {
        PresentedModule::zero(params)
    } else {
        trivial_module(params, &[e])?
    };

    let mut inc_cols = Vec::new();
    for col in j.inclusion.matrix().columns() {
        let x: Vec<u64> = (0..g)
            .map(|t| {
                let d = ring.sub(col[t], col[0]);
                if e == 0 {
                    Ok(d)
                } else if ring.valuation(d) >= crate::arith::Valuation::Finite(e) {
                    Ok(ring.div_p_pow(d, e))
                } else {
                    Err(Error::AxiomViolation("element of J_e not of the form p^e x + c N_G".into()))
                }
            })
            .collect::<Result<_>>()?;
        let mut v = vec![0; 2 * g];
        for t in 0..g {
            // -(sigma - 1) x has coefficient x_t - x_{t-1} at sigma^t.
            v[t] = ring.sub(x[t], x[(t + g - 1) % g]);
            v[g + t] = col[t];
        }
        inc_cols.push(v);
    }
    let inclusion = ModuleHom::new(&j.module, &f2, Matrix::from_columns(2 * g, &inc_cols))?;

    let s = params.regular_sigma().sub(&Matrix::identity(g), ring);
    let gmat = Matrix::hstack(&[&Matrix::identity(g).scale(pe, ring), &s]);
    let gmap = ModuleHom::new(&f2, &f1, gmat)?;
    let fmat = if e == 0 {
        Matrix::zeros(0, g)
    } else {
        Matrix::from_rows(&[vec![1; g]])
    };
    let fmap = ModuleHom::new(&f1, &target, fmat)?;

    let coker = quotient_by_image(&f1, &gmap)?.module;
    Ok(Lemma3Resolution {
        e,
        injective: is_injective(&inclusion)?,
        exact_at_free2: is_exact_at(&inclusion, &gmap)?,
        exact_at_free1: is_exact_at(&gmap, &fmap)?,
        surjective: is_surjective(&fmap)?,
        cokernel_log_order: coker.log_order().unwrap_or(u32::MAX),
        inclusion,
        g: gmap,
        f: fmap,
    })
}

/// `h: Zp ⊕ I -> J_e`, `h(a, (sigma - 1) beta) = p^e beta - p^(e-n) aug(beta) N_G + a N_G`.
#[derive(Clone, Debug)]
pub struct HIsomorphism {
    pub hom: ModuleHom,
    /// Replacing `beta` by `beta + N_G` gives the same values.
    pub independent_of_lift: bool,
    pub bijective: bool,
}

pub fn h_isomorphism(params: GroupParams, e: u32) -> Result<HIsomorphism> {
    let n = params.n();
    if e < n {
        return Err(Error::PreconditionViolated(format!("h needs e >= n, got e = {e}, n = {n}")));
    }
    let ring = params.ring();
    let g = params.order();
    let j = j_submodule(params, e)?;
    let source = direct_sum(&integers_trivial(params), &augmentation_ideal(params))?;
    let norm = GroupRingElement::norm(params);
    let value = |a: u64, beta: &GroupRingElement| -> GroupRingElement {
        let aug = beta.augmentation().value();
        beta.scale(ring.p_pow(e))
            .sub(&norm.scale(ring.mul(ring.p_pow(e - n), aug)))
            .add(&norm.scale(a))
    };
    let mut cols = Vec::new();
    let mut independent = true;
    cols.push(j.coordinates(norm.coeffs())?);
    for i in 1..g {
        // sigma^i - 1 = (sigma - 1)(1 + sigma + ... + sigma^(i-1)).
        let mut b = vec![0; g];
        b[..i].iter_mut().for_each(|c| *c = 1);
        let beta = GroupRingElement::from_residues(params, b)?;
        let v = value(0, &beta);
        independent &= v == value(0, &beta.add(&norm));
        cols.push(j.coordinates(v.coeffs())?);
    }
    let hom = ModuleHom::new(&source, &j.module, Matrix::from_columns(j.module.dim(), &cols))?;
    let bijective = kernel_of(&hom)?.module.is_zero() && is_surjective(&hom)?;
    Ok(HIsomorphism {
        hom,
        independent_of_lift: independent,
        bijective,
    })
}

/// `⊕_j J_{min(e_j, n)} ⊕ I ⊕ Zp[G]^(unit_rank - r)` with `r = exponents.len()`.
pub fn predicted_unit_structure(
    params: GroupParams,
    exponents: &[u32],
    unit_rank: usize,
) -> Result<PresentedModule> {
    let r = exponents.len();
    if unit_rank < r {
        return Err(Error::PreconditionViolated(format!(
            "unit rank {unit_rank} is smaller than r = {r}"
        )));
    }
    if exponents.contains(&0) {
        return Err(Error::PreconditionViolated("exponents must be at least 1".into()));
    }
    let mut parts = exponents
        .iter()
        .map(|&e| j_module(params, e.min(params.n())))
        .collect::<Result<Vec<_>>>()?;
    parts.push(augmentation_ideal(params));
    if unit_rank > r {
        parts.push(free_module(params, unit_rank - r));
    }
    direct_sum_all(&parts.iter().collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::tate;

    fn params(p: u64, n: u32) -> GroupParams {
        GroupParams::with_defaults(p, n).unwrap()
    }

    #[test]
    fn j_zero_is_free() {
        let pr = params(3, 1);
        assert_eq!(j_module(pr, 0).unwrap().zp_rank(), 3);
        assert_eq!(j_module(pr, 0).unwrap(), free_module(pr, 1));
    }

    #[test]
    fn j_cohomology() {
        for (p, n) in [(3, 1), (3, 2), (5, 1)] {
            let pr = params(p, n);
            for e in 0..=n + 1 {
                let j = j_module(pr, e).unwrap();
                assert_eq!(j.zp_rank(), pr.order());
                for i in 1..=n {
                    let m = e.min(i);
                    let want: Vec<u32> = if m == 0 { vec![] } else { vec![m] };
                    for d in 0..2 {
                        assert_eq!(tate(d, i, &j).unwrap().invariant_factors(), want, "p={p} n={n} e={e} i={i} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn resolution_exact() {
        for (p, n) in [(3, 1), (3, 2)] {
            for e in 0..=n + 1 {
                let r = lemma3_resolution(params(p, n), e).unwrap();
                assert!(r.is_exact(), "p={p} n={n} e={e}");
                assert_eq!(r.cokernel_log_order, e);
            }
        }
    }

    #[test]
    fn h_values() {
        let pr = params(3, 1);
        let h = h_isomorphism(pr, 1).unwrap();
        assert!(h.bijective && h.independent_of_lift);
        let j = j_submodule(pr, 1).unwrap();
        let ring = pr.ring();
        let img = |x: &[u64]| j.inclusion.apply(&h.hom.apply(x));
        assert_eq!(img(&[1, 0, 0]), vec![1, 1, 1]);
        // 3 - N_G
        assert_eq!(img(&[0, 1, 0]), vec![2, ring.neg(1), ring.neg(1)]);
        assert!(matches!(h_isomorphism(params(3, 2), 1), Err(Error::PreconditionViolated(_))));
        assert!(h_isomorphism(params(3, 2), 3).unwrap().bijective);
    }

    #[test]
    fn predictions() {
        let pr = params(3, 1);
        assert_eq!(predicted_unit_structure(pr, &[], 2).unwrap().zp_rank(), 2 + 6);
        assert_eq!(predicted_unit_structure(pr, &[2], 1).unwrap().zp_rank(), 5);
        assert!(predicted_unit_structure(pr, &[1], 0).is_err());
    }
}
