//! Extensions `1 -> A -> E -> G -> 1` given by a 2-cocycle, their splitting
//! modules `0 -> A -> M -> I -> 0`, and the cocycle read back from a section.

use crate::arith::{GroupParams, Matrix};
use crate::error::{Error, Result};
use crate::modules::{
    augmentation_ideal, kernel_of, ModuleHom, PresentedModule, Submodule,
};

/// A finite module `A` and a table `f(sigma^a, sigma^b)` of elements of `A`.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    kernel: PresentedModule,
    cocycle: Vec<Vec<Vec<u64>>>,
}

impl ExtensionData {
    /// Validates finiteness, table shape and the cocycle identity.
    pub fn new(kernel: PresentedModule, cocycle: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        if !kernel.is_finite() {
            return Err(Error::PreconditionViolated("the kernel must be finite".into()));
        }
        let g = kernel.params().order();
        if cocycle.len() != g
            || cocycle.iter().any(|row| row.len() != g || row.iter().any(|v| v.len() != kernel.dim()))
        {
            return Err(Error::DimensionMismatch(format!(
                "cocycle table must be {g} x {g} vectors of length {}",
                kernel.dim()
            )));
        }
        let mut cocycle = cocycle;
        for v in cocycle.iter_mut().flatten() {
            kernel.normalize(v);
        }
        let e = Self { kernel, cocycle };
        e.check_cocycle()?;
        Ok(e)
    }

    /// The zero cocycle.
    pub fn split(kernel: PresentedModule) -> Result<Self> {
        let g = kernel.params().order();
        let zero = vec![vec![vec![0; kernel.dim()]; g]; g];
        Self::new(kernel, zero)
    }

    /// `f(sigma^a, sigma^b) = x` if `a + b >= |G|`, else 0, for `x` fixed by `G`.
    /// This is the class of the cyclic extension in which a lift of `sigma`
    /// has `|G|`-th power `x`.
    pub fn carry(kernel: PresentedModule, x: &[u64]) -> Result<Self> {
        let g = kernel.params().order();
        let table = (0..g)
            .map(|a| {
                (0..g)
                    .map(|b| if a + b >= g { x.to_vec() } else { vec![0; kernel.dim()] })
                    .collect()
            })
            .collect();
        Self::new(kernel, table)
    }

    pub fn kernel(&self) -> &PresentedModule {
        &self.kernel
    }

    pub fn params(&self) -> GroupParams {
        self.kernel.params()
    }

    /// `f(sigma^a, sigma^b)`, exponents taken mod `|G|`.
    pub fn value(&self, a: usize, b: usize) -> &[u64] {
        let g = self.params().order();
        &self.cocycle[a % g][b % g]
    }

    pub fn table(&self) -> &[Vec<Vec<u64>>] {
        &self.cocycle
    }

    /// `sigma^a f(b, c) - f(a + b, c) + f(a, b + c) - f(a, b) = 0` everywhere.
    pub fn check_cocycle(&self) -> Result<()> {
        let a_mod = &self.kernel;
        let ring = a_mod.ring();
        let g = self.params().order();
        let powers: Vec<Matrix> = (0..g as u64).map(|a| a_mod.sigma_power(a)).collect();
        for a in 0..g {
            for b in 0..g {
                for c in 0..g {
                    let t1 = powers[a].apply(self.value(b, c), ring);
                    let v: Vec<u64> = (0..a_mod.dim())
                        .map(|i| {
                            let s = ring.sub(t1[i], self.value(a + b, c)[i]);
                            let s = ring.add(s, self.value(a, b + c)[i]);
                            ring.sub(s, self.value(a, b)[i])
                        })
                        .collect();
                    if !a_mod.is_zero_element(&v) {
                        return Err(Error::NotACocycle { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    /// Adds the coboundary of a 1-cochain `c: G -> A`.
    pub fn add_coboundary(&self, cochain: &[Vec<u64>]) -> Result<Self> {
        let a_mod = &self.kernel;
        let ring = a_mod.ring();
        let g = self.params().order();
        if cochain.len() != g {
            return Err(Error::DimensionMismatch(format!("cochain needs {g} values")));
        }
        let table = (0..g)
            .map(|a| {
                let sa = a_mod.sigma_power(a as u64);
                (0..g)
                    .map(|b| {
                        let t = sa.apply(&cochain[b], ring);
                        (0..a_mod.dim())
                            .map(|i| {
                                let base = self.value(a, b)[i];
                                let d = ring.add(ring.sub(t[i], cochain[(a + b) % g][i]), cochain[a][i]);
                                ring.add(base, d)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self::new(a_mod.clone(), table)
    }
}

/// `M` with its maps `A -> M` and `M -> I`.
#[derive(Clone, Debug)]
pub struct SplittingModule {
    pub module: PresentedModule,
    pub inclusion: ModuleHom,
    pub projection: ModuleHom,
}

/// Coordinates: those of `A`, followed by symbols `b_{sigma^a}` for
/// `1 <= a < |G|`, with `sigma b_tau = b_{sigma tau} - b_sigma + f(sigma, tau)`
/// and `b_1 = f(1, 1)`.
pub fn splitting_module(e: &ExtensionData) -> Result<SplittingModule> {
    e.check_cocycle()?;
    let a_mod = e.kernel();
    let params = e.params();
    let ring = params.ring();
    let g = params.order();
    let ka = a_mod.dim();
    let k = ka + g - 1;
    let b = |a: usize| ka + a - 1;
    let mut sigma = Matrix::zeros(k, k);
    for c in 0..ka {
        for r in 0..ka {
            sigma.set(r, c, a_mod.sigma().get(r, c));
        }
    }
    for a in 1..g {
        let col = b(a);
        let f = e.value(1, a);
        for i in 0..ka {
            sigma.set(i, col, f[i]);
        }
        if a + 1 < g {
            sigma.set(b(a + 1), col, 1);
        } else {
            let f11 = e.value(0, 0);
            for i in 0..ka {
                sigma.set(i, col, ring.add(sigma.get(i, col), f11[i]));
            }
        }
        sigma.set(b(1), col, ring.sub(sigma.get(b(1), col), 1));
    }
    let mut moduli = a_mod.moduli().to_vec();
    moduli.extend(std::iter::repeat_n(None, g - 1));
    let module = PresentedModule::new(params, moduli, sigma)
        .map_err(|err| Error::AxiomViolation(format!("splitting module: {err}")))?;

    let mut inc = Matrix::zeros(k, ka);
    for i in 0..ka {
        inc.set(i, i, 1);
    }
    let inclusion = ModuleHom::new(a_mod, &module, inc)?;
    let mut proj = Matrix::zeros(g - 1, k);
    for a in 1..g {
        proj.set(a - 1, b(a), 1);
    }
    let projection = ModuleHom::new(&module, &augmentation_ideal(params), proj)?;

    if !crate::modules::is_injective(&inclusion)?
        || !crate::modules::is_exact_at(&inclusion, &projection)?
        || !crate::modules::is_surjective(&projection)?
    {
        return Err(Error::AxiomViolation("splitting sequence is not exact".into()));
    }
    Ok(SplittingModule {
        module,
        inclusion,
        projection,
    })
}

/// The extension class of `0 -> ker pi -> B -> I -> 0`, with the kernel
/// embedding, from a `Zp`-linear section of `pi`.
pub fn cocycle_from_section(pi: &ModuleHom) -> Result<(ExtensionData, Submodule)> {
    let params = pi.source().params();
    let ring = params.ring();
    let g = params.order();
    let i_mod = augmentation_ideal(params);
    if pi.target() != &i_mod {
        return Err(Error::PreconditionViolated("pi must map onto the augmentation ideal".into()));
    }
    pi.check_well_defined()?;
    if !crate::modules::is_surjective(pi)? {
        return Err(Error::NotSurjective);
    }
    let kernel = kernel_of(pi)?;
    if !kernel.module.is_finite() {
        return Err(Error::InfiniteKernel(kernel.module.zp_rank()));
    }
    let b_mod = pi.source();
    // X_a = s(sigma^a - 1), X_0 = 0.
    let mut xs = vec![vec![0; b_mod.dim()]];
    for a in 1..g {
        let mut e = vec![0; g - 1];
        e[a - 1] = 1;
        xs.push(crate::modules::solve_preimage(pi, &e)?.ok_or(Error::NotSurjective)?);
    }
    let powers: Vec<Matrix> = (0..g as u64).map(|a| b_mod.sigma_power(a)).collect();
    let mut table = vec![vec![Vec::new(); g]; g];
    for a in 0..g {
        for bb in 0..g {
            let t = powers[a].apply(&xs[bb], ring);
            let v: Vec<u64> = (0..b_mod.dim())
                .map(|i| ring.add(ring.sub(t[i], xs[(a + bb) % g][i]), xs[a][i]))
                .collect();
            table[a][bb] = kernel
                .coordinates(&v)
                .map_err(|_| Error::AxiomViolation("cocycle value outside the kernel".into()))?;
        }
    }
    let ext = ExtensionData::new(kernel.module.clone(), table)?;
    Ok((ext, kernel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::{free_module, trivial_module};

    fn params(p: u64, n: u32) -> GroupParams {
        GroupParams::with_defaults(p, n).unwrap()
    }

    #[test]
    fn zero_kernel_gives_augmentation_ideal() {
        let pr = params(3, 1);
        let e = ExtensionData::split(PresentedModule::zero(pr)).unwrap();
        let s = splitting_module(&e).unwrap();
        assert_eq!(s.module, augmentation_ideal(pr));
    }

    #[test]
    fn split_trivial_kernel() {
        let pr = params(3, 2);
        let a = trivial_module(pr, &[2]).unwrap();
        let s = splitting_module(&ExtensionData::split(a).unwrap()).unwrap();
        assert_eq!(s.module.torsion_invariants(), vec![2]);
        assert_eq!(s.module.zp_rank(), 8);
    }

    #[test]
    fn carry_is_cocycle_and_corrupt_is_not() {
        let pr = params(3, 1);
        let a = trivial_module(pr, &[1]).unwrap();
        let e = ExtensionData::carry(a.clone(), &[1]).unwrap();
        let mut t = e.table().to_vec();
        t[1][2] = vec![2];
        assert!(matches!(ExtensionData::new(a, t), Err(Error::NotACocycle { .. })));
    }

    #[test]
    fn coboundaries_stay_cocycles() {
        let pr = params(3, 1);
        let a = trivial_module(pr, &[2]).unwrap();
        let e = ExtensionData::carry(a, &[3]).unwrap();
        e.add_coboundary(&[vec![0], vec![4], vec![7]]).unwrap();
    }

    #[test]
    fn section_of_identity_gives_zero_cocycle() {
        let pr = params(3, 1);
        let i = augmentation_ideal(pr);
        let (e, k) = cocycle_from_section(&ModuleHom::identity(&i)).unwrap();
        assert!(k.module.is_zero());
        assert!(e.table().iter().flatten().all(|v| v.is_empty()));
    }

    #[test]
    fn sigma_minus_one_on_free_has_infinite_kernel() {
        let pr = params(3, 1);
        let f = free_module(pr, 1);
        let i = augmentation_ideal(pr);
        // x -> (sigma - 1) x, written in the basis sigma^a - 1.
        let mut m = Matrix::zeros(2, 3);
        m.set(0, 0, 1);
        m.set(1, 1, 1);
        m.set(0, 1, pr.ring().neg(1));
        m.set(1, 2, pr.ring().neg(1));
        let pi = ModuleHom::new(&f, &i, m).unwrap();
        assert!(matches!(cocycle_from_section(&pi), Err(Error::InfiniteKernel(1))));
    }

    #[test]
    fn non_surjective_detected() {
        let pr = params(3, 1);
        let i = augmentation_ideal(pr);
        let by_p = ModuleHom::new(&i, &i, Matrix::identity(2).scale(3, pr.ring())).unwrap();
        assert!(matches!(cocycle_from_section(&by_p), Err(Error::NotSurjective)));
    }

    #[test]
    fn round_trip_through_section() {
        let pr = params(3, 1);
        let a = trivial_module(pr, &[1]).unwrap();
        let s = splitting_module(&ExtensionData::carry(a, &[1]).unwrap()).unwrap();
        let (e2, _) = cocycle_from_section(&s.projection).unwrap();
        let s2 = splitting_module(&e2).unwrap();
        assert_eq!(s2.module.torsion_invariants(), s.module.torsion_invariants());
        assert_eq!(s2.module.zp_rank(), s.module.zp_rank());
    }
}
