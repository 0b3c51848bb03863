//! Tate cohomology of a module over each subgroup `G_i` of the cyclic group,
//! with restriction and corestriction.
//!
//! Degrees are taken mod 2. Even degree is `M^H / N_H M`; odd degree is
//! `ker N_H / (tau - 1) M`, the degree `-1` model of odd cohomology.

use crate::arith::Matrix;
use crate::error::{Error, Result};
use crate::modules::{preimage_of_zero, subquotient, ModuleHom, PresentedModule, Projector};

/// A computed Tate cohomology group.
#[derive(Clone, Debug)]
pub struct TateGroup {
    degree: u8,
    subgroup_index: u32,
    ambient: PresentedModule,
    /// The group itself as a finite module; `sigma` is the induced action.
    group: PresentedModule,
    lifts: Matrix,
    projector: Projector,
}

impl TateGroup {
    /// 0 for even degree, 1 for odd.
    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn subgroup_index(&self) -> u32 {
        self.subgroup_index
    }

    pub fn ambient(&self) -> &PresentedModule {
        &self.ambient
    }

    pub fn group(&self) -> &PresentedModule {
        &self.group
    }

    pub fn invariant_factors(&self) -> Vec<u32> {
        self.group.torsion_invariants()
    }

    /// `log_p` of the order.
    pub fn log_order(&self) -> u32 {
        self.group.log_order().expect("Tate groups are finite")
    }

    pub fn is_zero(&self) -> bool {
        self.group.is_zero()
    }

    /// Ambient representative of generator `j`.
    pub fn generator(&self, j: usize) -> Vec<u64> {
        self.lifts.column(j)
    }

    pub fn generators(&self) -> Vec<Vec<u64>> {
        self.lifts.columns().collect()
    }

    /// Whether `x` is a cocycle representative (fixed, resp. norm-killed).
    pub fn is_eligible(&self, x: &[u64]) -> bool {
        self.projector.contains(x)
    }

    /// Class of an eligible ambient vector.
    pub fn reduce(&self, x: &[u64]) -> Result<Vec<u64>> {
        self.projector.project(x)
    }
}

/// A homomorphism between Tate groups, computed on representatives.
#[derive(Clone, Debug)]
pub struct CohomMap {
    source: TateGroup,
    target: TateGroup,
    hom: ModuleHom,
}

impl CohomMap {
    /// The map induced by the ambient-level matrix `f`.
    pub fn induced(source: &TateGroup, target: &TateGroup, f: &Matrix) -> Result<Self> {
        let ring = source.ambient.ring();
        let mut cols = Vec::with_capacity(source.group.dim());
        for j in 0..source.group.dim() {
            let image = f.apply(&source.generator(j), ring);
            cols.push(target.reduce(&image).map_err(|_| {
                Error::AxiomViolation("induced map leaves the cocycle lattice".into())
            })?);
        }
        let m = Matrix::from_columns(target.group.dim(), &cols);
        let hom = ModuleHom::new(&source.group, &target.group, m)
            .map_err(|e| Error::AxiomViolation(format!("induced map is not a hom: {e}")))?;
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            hom,
        })
    }

    pub fn source(&self) -> &TateGroup {
        &self.source
    }

    pub fn target(&self) -> &TateGroup {
        &self.target
    }

    pub fn hom(&self) -> &ModuleHom {
        &self.hom
    }

    pub fn matrix(&self) -> &Matrix {
        self.hom.matrix()
    }

    pub fn compose(&self, other: &CohomMap) -> Result<CohomMap> {
        Ok(CohomMap {
            source: other.source.clone(),
            target: self.target.clone(),
            hom: self.hom.compose(&other.hom)?,
        })
    }
}

fn parity(degree: i64) -> u8 {
    degree.rem_euclid(2) as u8
}

/// `Ĥ^degree(G_i, m)`.
pub fn tate(degree: i64, subgroup_index: u32, m: &PresentedModule) -> Result<TateGroup> {
    let params = m.params();
    if subgroup_index > params.n() {
        return Err(Error::PreconditionViolated(format!(
            "subgroup index {subgroup_index} exceeds n = {}",
            params.n()
        )));
    }
    let ring = m.ring();
    let k = m.dim();
    let tau = m.sigma_power(params.subgroup_generator_exponent(subgroup_index));
    let norm = tau.geometric_sum(params.subgroup_order(subgroup_index), ring);
    let tau_minus_one = tau.sub(&Matrix::identity(k), ring);
    let rel = m.relation_columns();
    let deg = parity(degree);
    let (kill, image) = if deg == 0 {
        (&tau_minus_one, &norm)
    } else {
        (&norm, &tau_minus_one)
    };
    let cocycles = preimage_of_zero(kill, m)?;
    let denom = Matrix::hstack(&[image, &rel]);
    let sq = subquotient(params, m.sigma(), m.precision_loss(), Some(&cocycles), &denom)?;
    if !sq.module.is_finite() {
        return Err(Error::AxiomViolation("Tate group is not finite".into()));
    }
    Ok(TateGroup {
        degree: deg,
        subgroup_index,
        ambient: m.clone(),
        group: sq.module,
        lifts: sq.lift,
        projector: sq.projector,
    })
}

/// Sum of the coset representatives `tau_j^t`, `t < p^(j-i)`, of `G_j / G_i`.
fn coset_sum(m: &PresentedModule, i: u32, j: u32) -> Matrix {
    let params = m.params();
    let tau_j = m.sigma_power(params.subgroup_generator_exponent(j));
    tau_j.geometric_sum(params.p().pow(j - i), m.ring())
}

fn check_indices(m: &PresentedModule, i: u32, j: u32) -> Result<()> {
    if i > j || j > m.params().n() {
        return Err(Error::PreconditionViolated(format!(
            "need i <= j <= n, got i = {i}, j = {j}"
        )));
    }
    Ok(())
}

/// Restriction `Ĥ^d(G_j, m) -> Ĥ^d(G_i, m)` for `i <= j`.
pub fn restriction(m: &PresentedModule, degree: i64, from: u32, to: u32) -> Result<CohomMap> {
    check_indices(m, to, from)?;
    restriction_between(&tate(degree, from, m)?, &tate(degree, to, m)?)
}

/// Restriction between already computed groups.
pub fn restriction_between(source: &TateGroup, target: &TateGroup) -> Result<CohomMap> {
    let m = &source.ambient;
    let (j, i) = (source.subgroup_index, target.subgroup_index);
    check_indices(m, i, j)?;
    let f = if source.degree == 0 {
        Matrix::identity(m.dim())
    } else {
        coset_sum(m, i, j)
    };
    CohomMap::induced(source, target, &f)
}

/// Corestriction `Ĥ^d(G_i, m) -> Ĥ^d(G_j, m)` for `i <= j`.
pub fn corestriction(m: &PresentedModule, degree: i64, from: u32, to: u32) -> Result<CohomMap> {
    check_indices(m, from, to)?;
    corestriction_between(&tate(degree, from, m)?, &tate(degree, to, m)?)
}

pub fn corestriction_between(source: &TateGroup, target: &TateGroup) -> Result<CohomMap> {
    let m = &source.ambient;
    let (i, j) = (source.subgroup_index, target.subgroup_index);
    check_indices(m, i, j)?;
    let f = if source.degree == 0 {
        coset_sum(m, i, j)
    } else {
        Matrix::identity(m.dim())
    };
    CohomMap::induced(source, target, &f)
}

/// All Tate groups of `m` over `G_1 .. G_n` vanish.
pub fn is_cohomologically_trivial(m: &PresentedModule) -> Result<bool> {
    for i in 1..=m.params().n() {
        for d in 0..2 {
            if !tate(d, i, m)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every Tate group of a module, indexed by parity and subgroup.
#[derive(Clone, Debug)]
pub struct CohomologyTable {
    module: PresentedModule,
    groups: [Vec<TateGroup>; 2],
}

impl CohomologyTable {
    pub fn compute(m: &PresentedModule) -> Result<Self> {
        let n = m.params().n();
        let even = (0..=n).map(|i| tate(0, i, m)).collect::<Result<_>>()?;
        let odd = (0..=n).map(|i| tate(1, i, m)).collect::<Result<_>>()?;
        Ok(Self {
            module: m.clone(),
            groups: [even, odd],
        })
    }

    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn group(&self, degree: i64, subgroup_index: u32) -> &TateGroup {
        &self.groups[parity(degree) as usize][subgroup_index as usize]
    }

    pub fn restriction(&self, degree: i64, from: u32, to: u32) -> Result<CohomMap> {
        restriction_between(self.group(degree, from), self.group(degree, to))
    }

    pub fn corestriction(&self, degree: i64, from: u32, to: u32) -> Result<CohomMap> {
        corestriction_between(self.group(degree, from), self.group(degree, to))
    }

    /// Invariant factors of every group, `[parity][i]`.
    pub fn invariants(&self) -> [Vec<Vec<u32>>; 2] {
        [0, 1].map(|d| self.groups[d].iter().map(|g| g.invariant_factors()).collect())
    }
}
