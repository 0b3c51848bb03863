use crate::arith::Matrix;
use crate::error::{Error, Result};

use super::module::PresentedModule;

/// A `Zp[G]`-homomorphism given by its matrix on reduced coordinates.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    source: PresentedModule,
    target: PresentedModule,
    matrix: Matrix,
}

impl ModuleHom {
    pub fn new(source: &PresentedModule, target: &PresentedModule, matrix: Matrix) -> Result<Self> {
        if source.params() != target.params() {
            return Err(Error::ParamMismatch);
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch(format!(
                "hom matrix must be {}x{}, got {}x{}",
                target.dim(),
                source.dim(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        let hom = ModuleHom::new_unchecked(source, target, matrix);
        hom.check_well_defined()?;
        Ok(hom)
    }

    pub(crate) fn new_unchecked(
        source: &PresentedModule,
        target: &PresentedModule,
        mut matrix: Matrix,
    ) -> Self {
        target.normalize_matrix(&mut matrix);
        ModuleHom {
            source: source.clone(),
            target: target.clone(),
            matrix,
        }
    }

    pub fn identity(m: &PresentedModule) -> Self {
        ModuleHom::new_unchecked(m, m, Matrix::identity(m.dim()))
    }

    pub fn zero(source: &PresentedModule, target: &PresentedModule) -> Self {
        ModuleHom::new_unchecked(source, target, Matrix::zeros(target.dim(), source.dim()))
    }

    pub fn source(&self) -> &PresentedModule {
        &self.source
    }

    pub fn target(&self) -> &PresentedModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Relations map into relations and the matrix intertwines the actions.
    pub fn check_well_defined(&self) -> Result<()> {
        let ring = self.source.ring();
        let rel = self.matrix.mul(&self.source.relation_columns(), ring);
        if !self.target.is_zero_matrix(&rel) {
            return Err(Error::IllDefinedHom(
                "a relation of the source does not map to zero".into(),
            ));
        }
        let lhs = self.matrix.mul(self.source.sigma(), ring);
        let rhs = self.target.sigma().mul(&self.matrix, ring);
        if !self.target.matrices_equal(&lhs, &rhs) {
            return Err(Error::IllDefinedHom("matrix does not commute with sigma".into()));
        }
        Ok(())
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let mut v = self.matrix.apply(x, self.source.ring());
        self.target.normalize(&mut v);
        v
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleHom) -> Result<ModuleHom> {
        if !other.target.ptr_eq(&self.source) {
            return Err(Error::DimensionMismatch("composition of incompatible homs".into()));
        }
        let m = self.matrix.mul(&other.matrix, self.source.ring());
        Ok(ModuleHom::new_unchecked(&other.source, &self.target, m))
    }

    pub fn is_zero(&self) -> bool {
        self.target.is_zero_matrix(&self.matrix)
    }

    pub fn equals(&self, other: &ModuleHom) -> bool {
        self.source.ptr_eq(&other.source)
            && self.target.ptr_eq(&other.target)
            && self.target.matrices_equal(&self.matrix, &other.matrix)
    }

    pub fn add(&self, other: &ModuleHom) -> ModuleHom {
        let m = self.matrix.add(&other.matrix, self.source.ring());
        ModuleHom::new_unchecked(&self.source, &self.target, m)
    }
}
