//! Subquotients `P / Q` of `Zp^K` carrying a `sigma`-action.
//!
//! Every construction (kernels, images, quotients, fixed points, Tate
//! groups) is a subquotient of some coordinate lattice, so this is the one
//! place where Smith normal forms turn lattices into reduced coordinates.

use crate::arith::snf::snf;
use crate::arith::{GroupParams, Matrix, PadicRing, Valuation};
use crate::error::{Error, Result};

use super::module::PresentedModule;

/// Maps a vector of `P` (in ambient coordinates) to reduced coordinates of `P / Q`.
#[derive(Clone, Debug)]
pub struct Projector {
    ring: PadicRing,
    /// First stage: coordinates with respect to a basis of `P`.
    numerator: Option<NumeratorStage>,
    /// Second stage: rows of the left SNF transform of `Q` that survive.
    second: Matrix,
    moduli: Vec<Option<u32>>,
}

#[derive(Clone, Debug)]
struct NumeratorStage {
    rows: Matrix,
    divisors: Vec<u32>,
    residual: Matrix,
}

impl NumeratorStage {
    fn basis_coords(&self, x: &[u64], ring: &PadicRing) -> Result<Vec<u64>> {
        for r in 0..self.residual.rows() {
            let y = self.residual.row(r).iter().zip(x).fold(0, |acc, (&a, &b)| {
                ring.add(acc, ring.mul(a, b))
            });
            if !ring.is_negligible(y) {
                return Err(Error::NotInLattice);
            }
        }
        let y = self.rows.apply(x, ring);
        y.into_iter()
            .zip(&self.divisors)
            .map(|(yi, &d)| match ring.valuation(yi) {
                Valuation::Saturated => Ok(0),
                Valuation::Finite(v) if v >= d => Ok(ring.div_p_pow(yi, d)),
                Valuation::Finite(_) => Err(Error::NotInLattice),
            })
            .collect()
    }
}

impl Projector {
    pub fn moduli(&self) -> &[Option<u32>] {
        &self.moduli
    }

    pub fn project(&self, x: &[u64]) -> Result<Vec<u64>> {
        let ring = &self.ring;
        let c = match &self.numerator {
            Some(stage) => stage.basis_coords(x, ring)?,
            None => x.to_vec(),
        };
        let mut y = self.second.apply(&c, ring);
        for (v, m) in y.iter_mut().zip(&self.moduli) {
            if let Some(d) = m {
                *v %= ring.p_pow_int(*d);
            }
        }
        Ok(y)
    }

    /// Projects every column of `m`.
    pub fn project_columns(&self, m: &Matrix) -> Result<Matrix> {
        let cols: Result<Vec<Vec<u64>>> = m.columns().map(|c| self.project(&c)).collect();
        Ok(Matrix::from_columns(self.moduli.len(), &cols?))
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        match &self.numerator {
            Some(stage) => stage.basis_coords(x, &self.ring).is_ok(),
            None => true,
        }
    }
}

/// Result of [`subquotient`].
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub module: PresentedModule,
    /// Column `j` is an ambient representative of reduced coordinate `j`.
    pub lift: Matrix,
    pub projector: Projector,
}

/// Builds `P / Q` where `P` is spanned by the columns of `numerator`
/// (all of `Zp^K` when `None`) together with `denominator`, and `Q` is
/// spanned by `denominator`. `sigma` must preserve both lattices.
///
/// `ambient_loss` is the number of digits of `sigma` already spent on earlier
/// divisions; dividing by the numerator's elementary divisors spends more, and
/// the construction aborts once the total exceeds the ring's headroom.
pub fn subquotient(
    params: GroupParams,
    sigma: &Matrix,
    ambient_loss: u32,
    numerator: Option<&Matrix>,
    denominator: &Matrix,
) -> Result<Subquotient> {
    let ring = *params.ring();
    let k = sigma.rows();
    assert_eq!(denominator.rows(), k, "denominator lives in the ambient lattice");

    let (stage, basis) = match numerator {
        None => (None, Matrix::identity(k)),
        Some(num) => {
            let gens = Matrix::hstack(&[num, denominator]);
            let snf_p = snf(&gens, &ring, true)?;
            let r = snf_p.rank;
            let divisors: Vec<u32> = snf_p.diagonal[..r]
                .iter()
                .map(|v| v.finite().expect("finite pivot"))
                .collect();
            let mut basis = snf_p.left_inv.select_columns(&(0..r).collect::<Vec<_>>());
            for (j, &d) in divisors.iter().enumerate() {
                if d > 0 {
                    basis.scale_col(j, ring.p_pow(d), &ring);
                }
            }
            let rows = snf_p.left.select_rows(&(0..r).collect::<Vec<_>>());
            let residual = snf_p.left.select_rows(&(r..k).collect::<Vec<_>>());
            (
                Some(NumeratorStage {
                    rows,
                    divisors,
                    residual,
                }),
                basis,
            )
        }
    };
    let rank_p = basis.cols();
    let spent = stage
        .as_ref()
        .and_then(|s| s.divisors.iter().copied().max())
        .unwrap_or(0);
    let loss = ambient_loss + spent;
    if loss > ring.headroom() {
        return Err(Error::PrecisionExhausted {
            valuation: loss,
            precision: ring.precision(),
            guard: ring.guard(),
        });
    }

    let q_coords = {
        let cols: Result<Vec<Vec<u64>>> = denominator
            .columns()
            .map(|c| match &stage {
                Some(s) => s.basis_coords(&c, &ring),
                None => Ok(c),
            })
            .collect();
        Matrix::from_columns(rank_p, &cols?)
    };
    let snf_q = snf(&q_coords, &ring, true)?;
    let mut kept = Vec::new();
    let mut moduli = Vec::new();
    for i in 0..rank_p {
        let v = if i < snf_q.diagonal.len() {
            snf_q.diagonal[i]
        } else {
            Valuation::Saturated
        };
        match v {
            Valuation::Finite(0) => {}
            Valuation::Finite(d) => {
                kept.push(i);
                moduli.push(Some(d));
            }
            Valuation::Saturated => {
                kept.push(i);
                moduli.push(None);
            }
        }
    }
    let second = snf_q.left.select_rows(&kept);
    let lift = basis.mul(&snf_q.left_inv.select_columns(&kept), &ring);
    let projector = Projector {
        ring,
        numerator: stage,
        second,
        moduli: moduli.clone(),
    };
    let image = sigma.mul(&lift, &ring);
    let new_sigma = projector
        .project_columns(&image)
        .map_err(|_| Error::AxiomViolation("sigma does not preserve the subquotient".into()))?;
    let module = PresentedModule::from_parts(params, moduli, new_sigma).with_loss(loss);
    Ok(Subquotient {
        module,
        lift,
        projector,
    })
}

/// Lattice `{x in Zp^K : a x = 0 in target}` for a matrix `a` into `target` coordinates.
pub fn preimage_of_zero(a: &Matrix, target: &PresentedModule) -> Result<Matrix> {
    let ring = *target.params().ring();
    let rel = target.relation_columns();
    let k = a.cols();
    let combined = Matrix::hstack(&[a, &rel]);
    let ker = snf(&combined, &ring, false)?.kernel_basis();
    Ok(ker.select_rows(&(0..k).collect::<Vec<_>>()))
}
