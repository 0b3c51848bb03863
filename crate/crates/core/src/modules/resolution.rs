//! Minimal generators, free covers and syzygies.
//!
//! `Zp[G]` is local with maximal ideal `(p, sigma - 1)`, so lifts of a basis
//! of `M / (p, sigma - 1) M` generate `M` and no smaller set does.

use crate::arith::snf::snf;
use crate::arith::Matrix;
use crate::error::Result;

use super::hom::ModuleHom;
use super::module::PresentedModule;
use super::ops::{hom_from_free, kernel_of, quotient_by_lattice, Quotient, Submodule};

/// `M / (p, sigma - 1) M`, an `F_p`-vector space.
pub fn radical_quotient(m: &PresentedModule) -> Result<Quotient> {
    let ring = m.ring();
    let k = m.dim();
    let p_id = Matrix::identity(k).scale(m.params().p(), ring);
    let s = m.sigma().sub(&Matrix::identity(k), ring);
    quotient_by_lattice(m, &Matrix::hstack(&[&p_id, &s]))
}

/// Number of generators of a minimal generating set.
pub fn minimal_generator_count(m: &PresentedModule) -> Result<usize> {
    Ok(radical_quotient(m)?.module.dim())
}

pub fn minimal_generators(m: &PresentedModule) -> Result<Vec<Vec<u64>>> {
    Ok(radical_quotient(m)?.section.columns().collect())
}

/// A surjection `Zp[G]^k -> M` from a minimal generating set.
#[derive(Clone, Debug)]
pub struct FreeCover {
    pub generators: Vec<Vec<u64>>,
    pub cover: ModuleHom,
}

impl FreeCover {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Column `i` is a preimage in the free module of coordinate `e_i` of `M`.
    pub fn coordinate_preimages(&self) -> Result<Matrix> {
        let target = self.cover.target();
        let cols = (0..target.dim())
            .map(|i| {
                let mut e = vec![0; target.dim()];
                e[i] = 1;
                Ok(solve_preimage(&self.cover, &e)?.expect("a cover is surjective"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(self.cover.source().dim(), &cols))
    }
}

pub fn free_cover(m: &PresentedModule) -> Result<FreeCover> {
    let generators = minimal_generators(m)?;
    let cover = hom_from_free(m, &generators);
    Ok(FreeCover { generators, cover })
}

/// `ker(Zp[G]^k -> M)` for a minimal cover; always a lattice.
pub fn syzygy(m: &PresentedModule) -> Result<Submodule> {
    kernel_of(&free_cover(m)?.cover)
}

/// The `k`-th syzygy `Ω^k M`.
pub fn syzygy_power(m: &PresentedModule, k: u32) -> Result<PresentedModule> {
    let mut cur = m.clone();
    for _ in 0..k {
        cur = syzygy(&cur)?.module;
    }
    Ok(cur)
}

/// Some `x` with `h(x) = v`, if one exists.
pub fn solve_preimage(h: &ModuleHom, v: &[u64]) -> Result<Option<Vec<u64>>> {
    let t = h.target();
    let ring = t.ring();
    let a = Matrix::hstack(&[h.matrix(), &t.relation_columns()]);
    let s = snf(&a, ring, true)?;
    Ok(s.solve(v, ring).map(|mut x| {
        x.truncate(h.matrix().cols());
        x
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::GroupParams;
    use crate::modules::ops::{augmentation_ideal, direct_sum, free_module, integers_trivial, trivial_module};
    use crate::modules::is_surjective;

    #[test]
    fn generator_counts() {
        let pr = GroupParams::with_defaults(3, 1).unwrap();
        assert_eq!(minimal_generator_count(&free_module(pr, 2)).unwrap(), 2);
        assert_eq!(minimal_generator_count(&integers_trivial(pr)).unwrap(), 1);
        assert_eq!(minimal_generator_count(&augmentation_ideal(pr)).unwrap(), 1);
        assert_eq!(minimal_generator_count(&trivial_module(pr, &[1, 2]).unwrap()).unwrap(), 2);
        let s = direct_sum(&augmentation_ideal(pr), &integers_trivial(pr)).unwrap();
        assert_eq!(minimal_generator_count(&s).unwrap(), 2);
    }

    #[test]
    fn covers_surject_and_syzygies_are_lattices() {
        let pr = GroupParams::with_defaults(3, 2).unwrap();
        for m in [integers_trivial(pr), augmentation_ideal(pr), trivial_module(pr, &[2]).unwrap()] {
            let c = free_cover(&m).unwrap();
            assert!(is_surjective(&c.cover).unwrap());
            let pre = c.coordinate_preimages().unwrap();
            let img = c.cover.matrix().mul(&pre, m.ring());
            assert!(m.matrices_equal(&img, &Matrix::identity(m.dim())));
            let z = syzygy(&m).unwrap().module;
            assert!(z.is_torsion_free());
            assert_eq!(z.zp_rank() + m.zp_rank(), 9 * c.rank());
        }
        // Ω Zp = I, Ω I = Zp (up to isomorphism, by rank here).
        assert_eq!(syzygy(&integers_trivial(pr)).unwrap().module.zp_rank(), 8);
        assert_eq!(syzygy_power(&integers_trivial(pr), 2).unwrap().zp_rank(), 1);
    }
}
