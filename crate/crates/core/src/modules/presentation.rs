use crate::arith::{GroupParams, GroupRingElement, Matrix};
use crate::error::{Error, Result};

use super::lattice::{subquotient, Projector};
use super::module::PresentedModule;
use super::ops::free_module;

/// A module given by `k` generators and relations `sum_i r_i g_i = 0`
/// with coefficients in `Zp[G]`.
#[derive(Clone, Debug)]
pub struct GroupRingPresentation {
    params: GroupParams,
    num_generators: usize,
    relations: Vec<Vec<GroupRingElement>>,
}

/// The reduced module of a presentation and the map sending a tuple of
/// group-ring coefficients (flattened, `k * |G|` long) to reduced coordinates.
#[derive(Clone, Debug)]
pub struct Realized {
    pub module: PresentedModule,
    pub free: PresentedModule,
    projector: Projector,
    /// Column `j` is a free-module lift of reduced coordinate `j`.
    pub lift: Matrix,
}

impl Realized {
    /// Reduced coordinates of `sum_i alpha_i g_i`.
    pub fn element(&self, alphas: &[GroupRingElement]) -> Result<Vec<u64>> {
        let flat: Vec<u64> = alphas.iter().flat_map(|a| a.coeffs().to_vec()).collect();
        if flat.len() != self.free.dim() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coefficients, got {}",
                self.free.dim(),
                flat.len()
            )));
        }
        self.projector.project(&flat)
    }

    /// Matrix of the quotient map `Zp[G]^k -> M`.
    pub fn projection_matrix(&self) -> Result<Matrix> {
        self.projector.project_columns(&Matrix::identity(self.free.dim()))
    }
}

impl GroupRingPresentation {
    pub fn new(
        params: GroupParams,
        num_generators: usize,
        relations: Vec<Vec<GroupRingElement>>,
    ) -> Result<Self> {
        for (j, r) in relations.iter().enumerate() {
            if r.len() != num_generators {
                return Err(Error::DimensionMismatch(format!(
                    "relation {j} has {} coefficients for {num_generators} generators",
                    r.len()
                )));
            }
            if r.iter().any(|c| c.params() != params) {
                return Err(Error::ParamMismatch);
            }
        }
        Ok(Self {
            params,
            num_generators,
            relations,
        })
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn relations(&self) -> &[Vec<GroupRingElement>] {
        &self.relations
    }

    pub fn realize(&self) -> Result<Realized> {
        let free = free_module(self.params, self.num_generators);
        let g = self.params.order();
        let ring = self.params.ring();
        let mut cols = Vec::with_capacity(self.relations.len() * g);
        for rel in &self.relations {
            let mut v: Vec<u64> = rel.iter().flat_map(|c| c.coeffs().to_vec()).collect();
            for _ in 0..g {
                cols.push(v.clone());
                v = free.sigma().apply(&v, ring);
            }
        }
        let q = Matrix::from_columns(free.dim(), &cols);
        let sq = subquotient(self.params, free.sigma(), 0, None, &q)?;
        Ok(Realized {
            module: sq.module,
            free,
            projector: sq.projector,
            lift: sq.lift,
        })
    }

    pub fn to_module(&self) -> Result<PresentedModule> {
        Ok(self.realize()?.module)
    }

    /// A presentation of `m` on its reduced coordinates.
    pub fn from_module(m: &PresentedModule) -> Self {
        let params = m.params();
        let ring = params.ring();
        let k = m.dim();
        let mut relations = Vec::new();
        for j in 0..k {
            let col = m.sigma().column(j);
            let rel = (0..k)
                .map(|i| {
                    let c = GroupRingElement::scalar(params, ring.to_signed(ring.neg(col[i])));
                    if i == j {
                        c.add(&GroupRingElement::sigma_pow(params, 1))
                    } else {
                        c
                    }
                })
                .collect();
            relations.push(rel);
        }
        for (i, d) in m.moduli().iter().enumerate() {
            if let Some(d) = d {
                let mut rel = vec![GroupRingElement::zero(params); k];
                rel[i] = GroupRingElement::scalar(params, 0)
                    .add(&GroupRingElement::one(params).scale(ring.p_pow(*d)));
                relations.push(rel);
            }
        }
        Self {
            params,
            num_generators: k,
            relations,
        }
    }
}
