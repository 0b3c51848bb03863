//! From a lattice `C` with `C ⊗ Qp ≅ Qp[G]^r ⊕ I_Qp` (witnessed explicitly)
//! to an exact sequence `0 -> A -> B -> I -> 0` with `A` finite and `B`
//! cohomologically indistinguishable from `C`.

use crate::arith::{GroupRingElement, Matrix};
use crate::cohomology::{corestriction_between, restriction_between, tate, CohomMap};
use crate::error::{Error, Result};
use crate::modules::{
    augmentation_ideal, direct_sum_with_maps, free_module, hom_from_free, image_of, is_injective,
    kernel_of, quotient_by_elements, quotient_by_image, ModuleHom, PresentedModule, Quotient,
    Submodule,
};
use crate::cohomology::is_cohomologically_trivial;

/// A lattice `C` with elements spanning a free part and an element
/// generating a copy of `I` modulo it.
#[derive(Clone, Debug)]
pub struct Theorem1Input {
    pub c: PresentedModule,
    pub free_witness: Vec<Vec<u64>>,
    pub ideal_witness: Vec<u64>,
}

impl Theorem1Input {
    pub fn rank_r(&self) -> usize {
        self.free_witness.len()
    }
}

/// The map `Ĥ^d(G_i, C) -> Ĥ^d(G_i, B)` induced by `C -> B`.
#[derive(Clone, Debug)]
pub struct ShiftWitness {
    pub degree: u8,
    pub subgroup_index: u32,
    pub map: CohomMap,
    pub bijective: bool,
}

#[derive(Clone, Debug)]
pub struct Lemma2Output {
    pub c1: Quotient,
    pub x0: Vec<u64>,
    pub c2: PresentedModule,
    pub iota: ModuleHom,
    pub b: Quotient,
    pub pi: ModuleHom,
    pub a: Submodule,
    /// `C -> B`, `x -> [(x mod F, 0)]`.
    pub kappa: ModuleHom,
    pub shifts: Vec<ShiftWitness>,
    /// Every square of shift maps against restriction and corestriction commutes.
    pub res_cor_compatible: bool,
    /// The free part of `C` and `iota(Zp[G])` have no cohomology.
    pub middle_terms_trivial: bool,
}

impl Lemma2Output {
    pub fn a_log_order(&self) -> u32 {
        self.a.module.log_order().expect("A is finite")
    }

    pub fn all_shifts_bijective(&self) -> bool {
        self.shifts.iter().all(|s| s.bijective)
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::WitnessInvalid(msg.into())
}

pub fn lemma2_pipeline(input: &Theorem1Input) -> Result<Lemma2Output> {
    let c = &input.c;
    let params = c.params();
    let ring = params.ring();
    let g = params.order();
    if !c.is_torsion_free() {
        return Err(invalid(format!("C has torsion {:?}", c.torsion_invariants())));
    }
    for w in input.free_witness.iter().chain([&input.ideal_witness]) {
        if w.len() != c.dim() {
            return Err(invalid(format!("witness has {} coordinates, C has {}", w.len(), c.dim())));
        }
    }
    let r = input.rank_r();
    if r > 0 && !is_injective(&hom_from_free(c, &input.free_witness))? {
        return Err(invalid("free witness does not span a free submodule of rank r"));
    }
    let c1 = quotient_by_elements(c, &input.free_witness)?;
    let x0 = c1.projection.apply(&input.ideal_witness);
    let ann = kernel_of(&hom_from_free(&c1.module, std::slice::from_ref(&x0)))?;
    let ann_cols: Vec<Vec<u64>> = ann.inclusion.matrix().columns().collect();
    let is_norm_line = ann_cols.len() == 1
        && ann_cols[0].iter().all(|&x| x == ann_cols[0][0])
        && ring.valuation(ann_cols[0][0]) == crate::arith::Valuation::Finite(0);
    if !is_norm_line {
        return Err(invalid("annihilator of the ideal witness is not Zp N_G"));
    }
    if c1.module.zp_rank() != g - 1 {
        return Err(invalid(format!(
            "C modulo the free part has rank {}, expected {}",
            c1.module.zp_rank(),
            g - 1
        )));
    }

    let free1 = free_module(params, 1);
    let sum = direct_sum_with_maps(&[&c1.module, &free1])?;
    let c2 = sum.module.clone();
    let k1 = c1.module.dim();
    let norm = GroupRingElement::norm(params);
    let mut iota_gen = x0.clone();
    iota_gen.extend_from_slice(norm.coeffs());
    let iota = hom_from_free(&c2, &[iota_gen]);
    let b = quotient_by_image(&c2, &iota)?;

    // (x, y) -> (sigma - 1) y in the basis sigma^a - 1.
    let mut pi_c2 = Matrix::zeros(g - 1, k1 + g);
    for t in 0..g {
        let col = k1 + t;
        if t + 1 < g {
            pi_c2.set(t, col, 1);
        }
        if t > 0 {
            pi_c2.set(t - 1, col, ring.sub(pi_c2.get(t - 1, col), 1));
        }
    }
    let pi = ModuleHom::new(&b.module, &augmentation_ideal(params), pi_c2.mul(&b.section, ring))?;
    let a = kernel_of(&pi)?;
    if !a.module.is_finite() {
        return Err(Error::InfiniteKernel(a.module.zp_rank()));
    }

    let to_c2 = sum.inclusions[0].matrix().mul(c1.projection.matrix(), ring);
    let kappa = ModuleHom::new(c, &b.module, b.projection.matrix().mul(&to_c2, ring))?;

    let n = params.n();
    let mut shifts = Vec::new();
    let mut groups = Vec::new();
    for d in 0..2u8 {
        let mut row = Vec::new();
        for i in 0..=n {
            let (hc, hb) = (tate(d as i64, i, c)?, tate(d as i64, i, &b.module)?);
            let map = CohomMap::induced(&hc, &hb, kappa.matrix())?;
            let bijective = hc.log_order() == hb.log_order() && is_injective(map.hom())?;
            shifts.push(ShiftWitness {
                degree: d,
                subgroup_index: i,
                map,
                bijective,
            });
            row.push((hc, hb));
        }
        groups.push(row);
    }
    let mut res_cor_compatible = true;
    for d in 0..2usize {
        for i in 0..=n as usize {
            for j in i..=n as usize {
                let (ci, bi) = &groups[d][i];
                let (cj, bj) = &groups[d][j];
                let ki = &shifts[d * (n as usize + 1) + i].map;
                let kj = &shifts[d * (n as usize + 1) + j].map;
                let res_c = restriction_between(cj, ci)?;
                let res_b = restriction_between(bj, bi)?;
                let lhs = ki.compose(&res_c)?;
                let rhs = res_b.compose(kj)?;
                res_cor_compatible &= bi.group().matrices_equal(lhs.matrix(), rhs.matrix());
                let cor_c = corestriction_between(ci, cj)?;
                let cor_b = corestriction_between(bi, bj)?;
                let lhs = kj.compose(&cor_c)?;
                let rhs = cor_b.compose(ki)?;
                res_cor_compatible &= bj.group().matrices_equal(lhs.matrix(), rhs.matrix());
            }
        }
    }
    let free_part = if r == 0 {
        PresentedModule::zero(params)
    } else {
        image_of(&hom_from_free(c, &input.free_witness))?.module
    };
    let middle_terms_trivial = is_cohomologically_trivial(&free_part)?
        && is_cohomologically_trivial(&image_of(&iota)?.module)?;

    Ok(Lemma2Output {
        c1,
        x0,
        c2,
        iota,
        b,
        pi,
        a,
        kappa,
        shifts,
        res_cor_compatible,
        middle_terms_trivial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::GroupParams;
    use crate::modules::{direct_sum, trivial_module};

    fn ideal_input(pr: GroupParams) -> Theorem1Input {
        let mut x = vec![0; pr.order() - 1];
        x[0] = 1;
        Theorem1Input {
            c: augmentation_ideal(pr),
            free_witness: vec![],
            ideal_witness: x,
        }
    }

    #[test]
    fn ideal_case() {
        for (p, n) in [(3, 1), (3, 2), (5, 1)] {
            let pr = GroupParams::with_defaults(p, n).unwrap();
            let out = lemma2_pipeline(&ideal_input(pr)).unwrap();
            assert_eq!(out.b.module.zp_rank(), pr.order() - 1);
            assert!(out.all_shifts_bijective());
            assert!(out.res_cor_compatible && out.middle_terms_trivial);
            let h1 = &out.shifts.iter().find(|s| s.degree == 1 && s.subgroup_index == n).unwrap();
            assert_eq!(h1.map.target().invariant_factors(), vec![n]);
        }
    }

    #[test]
    fn with_free_summand() {
        let pr = GroupParams::with_defaults(3, 1).unwrap();
        let c = direct_sum(&augmentation_ideal(pr), &free_module(pr, 1)).unwrap();
        let input = Theorem1Input {
            c,
            free_witness: vec![vec![0, 0, 1, 0, 0]],
            ideal_witness: vec![1, 0, 0, 0, 0],
        };
        let out = lemma2_pipeline(&input).unwrap();
        assert_eq!(out.b.module.zp_rank(), 2);
        assert!(out.all_shifts_bijective() && out.res_cor_compatible);
    }

    #[test]
    fn bad_witnesses() {
        let pr = GroupParams::with_defaults(3, 1).unwrap();
        let torsion = Theorem1Input {
            c: trivial_module(pr, &[1]).unwrap(),
            free_witness: vec![],
            ideal_witness: vec![1],
        };
        assert!(matches!(lemma2_pipeline(&torsion), Err(Error::WitnessInvalid(_))));
        let mut weak = ideal_input(pr);
        weak.ideal_witness = vec![0, 0];
        assert!(matches!(lemma2_pipeline(&weak), Err(Error::WitnessInvalid(_))));
        let c = direct_sum(&augmentation_ideal(pr), &free_module(pr, 1)).unwrap();
        let missing_free = Theorem1Input {
            c,
            free_witness: vec![],
            ideal_witness: vec![1, 0, 0, 0, 0],
        };
        assert!(matches!(lemma2_pipeline(&missing_free), Err(Error::WitnessInvalid(_))));
    }
}
