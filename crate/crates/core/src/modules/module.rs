use std::fmt;
use std::sync::Arc;

use crate::arith::{GroupParams, GroupRingElement, Matrix};
use crate::error::{Error, Result};

#[derive(Debug)]
struct ModuleData {
    params: GroupParams,
    moduli: Vec<Option<u32>>,
    sigma: Matrix,
    /// Digits of `sigma` lost to exact divisions since the last fresh construction.
    loss: u32,
}

/// A finitely generated `Zp[G]`-module in reduced lattice form.
///
/// As a `Zp`-module it is `Zp^K / L` where coordinate `i` is either free
/// (`None`) or cyclic of order `p^d` (`Some(d)`), i.e. `L` is spanned by
/// `p^d e_i`. The generator `sigma` acts through a `K x K` matrix whose
/// column `j` is the image of `e_j`. Rows of torsion coordinates are kept
/// reduced modulo their exponent.
///
/// Group-ring presentations (see [`super::GroupRingPresentation`]) are
/// converted into this form by expanding the regular representation and
/// taking a Smith normal form of the relation lattice.
/// Equality compares parameters, moduli and `sigma` at decision precision.
#[derive(Clone)]
pub struct PresentedModule {
    inner: Arc<ModuleData>,
}

impl PresentedModule {
    /// Validating constructor: `sigma` must be a well-defined endomorphism
    /// with `sigma^(p^n) = 1`.
    pub fn new(params: GroupParams, moduli: Vec<Option<u32>>, sigma: Matrix) -> Result<Self> {
        let k = moduli.len();
        if sigma.rows() != k || sigma.cols() != k {
            return Err(Error::DimensionMismatch(format!(
                "sigma must be {k}x{k}, got {}x{}",
                sigma.rows(),
                sigma.cols()
            )));
        }
        let limit = params.ring().precision() - params.ring().guard();
        for d in moduli.iter().flatten() {
            if *d == 0 || *d >= limit {
                return Err(Error::InvalidParams(format!(
                    "torsion exponent {d} outside 1..{limit}"
                )));
            }
        }
        let m = PresentedModule::from_parts(params, moduli, sigma);
        if !m.is_endomorphism(m.sigma()) {
            return Err(Error::IllDefinedHom("sigma does not preserve the relations".into()));
        }
        let top = m.sigma().pow(params.order() as u64, params.ring());
        if !m.matrices_equal(&top, &Matrix::identity(k)) {
            return Err(Error::IllDefinedHom(format!(
                "sigma^{} is not the identity",
                params.order()
            )));
        }
        Ok(m)
    }

    pub(crate) fn from_parts(params: GroupParams, moduli: Vec<Option<u32>>, sigma: Matrix) -> Self {
        let mut m = PresentedModule {
            inner: Arc::new(ModuleData {
                params,
                moduli,
                sigma: Matrix::zeros(0, 0),
                loss: 0,
            }),
        };
        let mut sigma = sigma;
        m.normalize_matrix(&mut sigma);
        Arc::get_mut(&mut m.inner).expect("fresh").sigma = sigma;
        m
    }

    pub fn zero(params: GroupParams) -> Self {
        PresentedModule::from_parts(params, Vec::new(), Matrix::zeros(0, 0))
    }

    pub fn params(&self) -> GroupParams {
        self.inner.params
    }

    pub fn ring(&self) -> &crate::arith::PadicRing {
        self.inner.params.ring()
    }

    pub fn moduli(&self) -> &[Option<u32>] {
        &self.inner.moduli
    }

    pub fn sigma(&self) -> &Matrix {
        &self.inner.sigma
    }

    /// Number of lattice coordinates `K`.
    pub fn dim(&self) -> usize {
        self.inner.moduli.len()
    }

    pub fn zp_rank(&self) -> usize {
        self.inner.moduli.iter().filter(|m| m.is_none()).count()
    }

    /// Exponents `e` of the cyclic factors `Z/p^e`, sorted ascending.
    pub fn torsion_invariants(&self) -> Vec<u32> {
        let mut t: Vec<u32> = self.inner.moduli.iter().flatten().copied().collect();
        t.sort_unstable();
        t
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.zp_rank() == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.inner.moduli.iter().all(|m| m.is_none())
    }

    /// `log_p |M|` for a finite module.
    pub fn log_order(&self) -> Option<u32> {
        self.is_finite().then(|| self.torsion_invariants().iter().sum())
    }

    pub(crate) fn ptr_eq(&self, other: &Self) -> bool {
        self == other
    }

    /// Digits lost to divisions while deriving this module.
    pub fn precision_loss(&self) -> u32 {
        self.inner.loss
    }

    pub(crate) fn with_loss(mut self, loss: u32) -> Self {
        Arc::get_mut(&mut self.inner).expect("fresh").loss = loss;
        self
    }

    /// `K x t` matrix whose columns `p^d e_i` span the relation lattice.
    pub fn relation_columns(&self) -> Matrix {
        let ring = self.ring();
        let tors: Vec<(usize, u32)> = self
            .inner
            .moduli
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.map(|d| (i, d)))
            .collect();
        let mut rel = Matrix::zeros(self.dim(), tors.len());
        for (j, (i, d)) in tors.into_iter().enumerate() {
            rel.set(i, j, ring.p_pow(d));
        }
        rel
    }

    pub fn normalize(&self, v: &mut [u64]) {
        let ring = self.ring();
        for (x, m) in v.iter_mut().zip(&self.inner.moduli) {
            if let Some(d) = m {
                *x %= ring.p_pow_int(*d);
            }
        }
    }

    pub fn normalize_matrix(&self, m: &mut Matrix) {
        let ring = *self.params().ring();
        for (i, md) in self.inner.moduli.iter().enumerate() {
            if let Some(d) = md {
                let q = ring.p_pow_int(*d);
                for x in m.row_mut(i) {
                    *x %= q;
                }
            }
        }
    }

    pub fn elements_equal(&self, x: &[u64], y: &[u64]) -> bool {
        let ring = self.ring();
        x.iter()
            .zip(y)
            .zip(&self.inner.moduli)
            .all(|((&a, &b), m)| {
                let diff = ring.sub(a, b);
                match m {
                    Some(d) => diff.is_multiple_of(ring.p_pow_int(*d)),
                    None => ring.is_zero(diff),
                }
            })
    }

    pub fn is_zero_element(&self, x: &[u64]) -> bool {
        self.elements_equal(x, &vec![0; x.len()])
    }

    /// Equality of matrices with values in this module (row-wise reduction).
    pub fn matrices_equal(&self, a: &Matrix, b: &Matrix) -> bool {
        a.rows() == b.rows()
            && a.cols() == b.cols()
            && (0..a.cols()).all(|j| self.elements_equal(&a.column(j), &b.column(j)))
    }

    /// Every column of `m` is zero in this module.
    pub fn is_zero_matrix(&self, m: &Matrix) -> bool {
        (0..m.cols()).all(|j| self.is_zero_element(&m.column(j)))
    }

    /// Whether `m` (a `K x K` matrix) preserves the relations and commutes
    /// with `sigma`.
    pub(crate) fn is_endomorphism(&self, m: &Matrix) -> bool {
        let ring = self.ring();
        let rel = self.relation_columns();
        if !self.is_zero_matrix(&m.mul(&rel, ring)) {
            return false;
        }
        let lhs = m.mul(self.sigma(), ring);
        let rhs = self.sigma().mul(m, ring);
        self.matrices_equal(&lhs, &rhs)
    }

    /// Matrix of the action of `r` on this module.
    pub fn action_matrix(&self, r: &GroupRingElement) -> Matrix {
        let mut m = r.evaluate(self.sigma());
        self.normalize_matrix(&mut m);
        m
    }

    pub fn sigma_power(&self, k: u64) -> Matrix {
        let mut m = self.sigma().pow(k, self.params().ring());
        self.normalize_matrix(&mut m);
        m
    }

    pub fn act(&self, r: &GroupRingElement, x: &[u64]) -> Vec<u64> {
        let mut v = self.action_matrix(r).apply(x, self.params().ring());
        self.normalize(&mut v);
        v
    }

    /// The same lattice and action, viewed over other parameters (used for
    /// fixed-point modules, which are modules for a quotient group).
    pub(crate) fn with_params(&self, params: GroupParams) -> Self {
        PresentedModule::from_parts(params, self.inner.moduli.clone(), self.sigma().clone())
            .with_loss(self.inner.loss)
    }
}

impl PartialEq for PresentedModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.params == other.inner.params
                && self.inner.moduli == other.inner.moduli
                && self.matrices_equal(self.sigma(), other.sigma()))
    }
}

impl Eq for PresentedModule {}

impl fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PresentedModule")
            .field("p", &self.params().p())
            .field("n", &self.params().n())
            .field("zp_rank", &self.zp_rank())
            .field("torsion", &self.torsion_invariants())
            .field("moduli", &self.inner.moduli)
            .field("sigma", &self.inner.sigma)
            .finish()
    }
}

/// Coordinates of an element in the reduced lattice of a module.
///
/// Equality is only meaningful through [`PresentedModule::elements_equal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementVector(pub Vec<u64>);

impl ElementVector {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl From<Vec<u64>> for ElementVector {
    fn from(v: Vec<u64>) -> Self {
        ElementVector(v)
    }
}
