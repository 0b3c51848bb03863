use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::padic::{is_prime, PadicInt, PadicRing};
use crate::error::{Error, Result};

/// Session parameters: `G` cyclic of order `p^n`, scalars in `Z/p^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupParams {
    n: u32,
    ring: PadicRing,
}

/// Plain description of a parameter set, used by file formats and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSpec {
    pub p: u64,
    pub n: u32,
    pub precision: u32,
    pub guard: u32,
}

pub const DEFAULT_PRECISION: u32 = 12;
pub const DEFAULT_GUARD: u32 = 2;

impl GroupParams {
    pub fn new(p: u64, n: u32, precision: u32, guard: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("{p} is not prime")));
        }
        if precision < n + guard + 1 {
            return Err(Error::InvalidParams(format!(
                "precision {precision} must be at least n + guard + 1 = {}",
                n + guard + 1
            )));
        }
        if p.checked_pow(n).is_none_or(|g| g > 1 << 16) {
            return Err(Error::InvalidParams(format!("group order {p}^{n} too large")));
        }
        Ok(GroupParams {
            n,
            ring: PadicRing::new(p, precision, guard)?,
        })
    }

    pub fn with_defaults(p: u64, n: u32) -> Result<Self> {
        GroupParams::new(p, n, DEFAULT_PRECISION, DEFAULT_GUARD)
    }

    pub fn from_spec(spec: ParamSpec) -> Result<Self> {
        GroupParams::new(spec.p, spec.n, spec.precision, spec.guard)
    }

    pub fn spec(&self) -> ParamSpec {
        ParamSpec {
            p: self.p(),
            n: self.n,
            precision: self.ring.precision(),
            guard: self.ring.guard(),
        }
    }

    pub fn p(&self) -> u64 {
        self.ring.p()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn ring(&self) -> &PadicRing {
        &self.ring
    }

    /// `|G| = p^n`.
    pub fn order(&self) -> usize {
        self.p().pow(self.n) as usize
    }

    /// Order of the subgroup `G_i`.
    pub fn subgroup_order(&self, i: u32) -> u64 {
        self.p().pow(i)
    }

    /// `G_i` is generated by `sigma^(p^(n-i))`.
    pub fn subgroup_generator_exponent(&self, i: u32) -> u64 {
        self.p().pow(self.n - i)
    }

    /// Parameters for the quotient group `G / G_i`, cyclic of order `p^(n-i)`.
    pub fn quotient(&self, i: u32) -> GroupParams {
        GroupParams {
            n: self.n - i,
            ring: self.ring,
        }
    }

    /// Matrix of `sigma` on the regular representation: `sigma^i -> sigma^(i+1)`.
    pub fn regular_sigma(&self) -> Matrix {
        let g = self.order();
        let mut m = Matrix::zeros(g, g);
        for i in 0..g {
            m.set((i + 1) % g, i, 1);
        }
        m
    }
}

/// An element of `Zp[G]`; `coeffs[i]` is the coefficient of `sigma^i`.
/// Equality is taken at decision precision.
#[derive(Clone, Debug)]
pub struct GroupRingElement {
    params: GroupParams,
    coeffs: Vec<u64>,
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.sub(other).is_zero()
    }
}

impl Eq for GroupRingElement {}

impl GroupRingElement {
    pub fn zero(params: GroupParams) -> Self {
        GroupRingElement {
            params,
            coeffs: vec![0; params.order()],
        }
    }

    pub fn from_residues(params: GroupParams, coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.len() != params.order() {
            return Err(Error::DimensionMismatch(format!(
                "group ring element needs {} coefficients, got {}",
                params.order(),
                coeffs.len()
            )));
        }
        let ring = params.ring;
        Ok(GroupRingElement {
            params,
            coeffs: coeffs.into_iter().map(|c| ring.from_u64(c)).collect(),
        })
    }

    pub fn from_signed(params: GroupParams, coeffs: &[i64]) -> Result<Self> {
        let ring = params.ring;
        GroupRingElement::from_residues(params, coeffs.iter().map(|&c| ring.from_i64(c)).collect())
    }

    pub fn scalar(params: GroupParams, c: i64) -> Self {
        let mut e = GroupRingElement::zero(params);
        e.coeffs[0] = params.ring.from_i64(c);
        e
    }

    pub fn one(params: GroupParams) -> Self {
        GroupRingElement::scalar(params, 1)
    }

    /// `sigma^k` for any integer `k`.
    pub fn sigma_pow(params: GroupParams, k: i64) -> Self {
        let mut e = GroupRingElement::zero(params);
        let g = params.order() as i64;
        e.coeffs[k.rem_euclid(g) as usize] = 1;
        e
    }

    /// `sigma - 1`.
    pub fn sigma_minus_one(params: GroupParams) -> Self {
        GroupRingElement::sigma_pow(params, 1).sub(&GroupRingElement::one(params))
    }

    /// Norm element `N_G = sum of all group elements`.
    pub fn norm(params: GroupParams) -> Self {
        GroupRingElement {
            params,
            coeffs: vec![1; params.order()],
        }
    }

    /// Norm of the subgroup `G_i`.
    pub fn subgroup_norm(params: GroupParams, i: u32) -> Self {
        let mut e = GroupRingElement::zero(params);
        let step = params.subgroup_generator_exponent(i) as usize;
        for t in 0..params.subgroup_order(i) as usize {
            e.coeffs[t * step] = 1;
        }
        e
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> PadicInt {
        PadicInt::from_residue(self.params.ring, self.coeffs[i])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| self.params.ring.is_zero(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let ring = self.params.ring;
        GroupRingElement {
            params: self.params,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| ring.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let ring = self.params.ring;
        GroupRingElement {
            params: self.params,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| ring.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        let ring = self.params.ring;
        GroupRingElement {
            params: self.params,
            coeffs: self.coeffs.iter().map(|&a| ring.mul(a, c)).collect(),
        }
    }

    /// Cyclic convolution; indices are reduced modulo `p^n`.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.params, other.params);
        let ring = self.params.ring;
        let g = self.params.order();
        let mut out = vec![0u64; g];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    let k = (i + j) % g;
                    out[k] = ring.add(out[k], ring.mul(a, b));
                }
            }
        }
        GroupRingElement {
            params: self.params,
            coeffs: out,
        }
    }

    /// Sum of all coefficients.
    pub fn augmentation(&self) -> PadicInt {
        let ring = self.params.ring;
        PadicInt::from_residue(ring, self.coeffs.iter().fold(0, |acc, &c| ring.add(acc, c)))
    }

    /// `sum_t c_t A^t` for a matrix `A` of an operator with `A^(p^n) = 1`.
    pub fn evaluate(&self, sigma: &Matrix) -> Matrix {
        let ring = self.params.ring;
        let k = sigma.rows();
        let mut acc = Matrix::zeros(k, k);
        let mut power = Matrix::identity(k);
        for (t, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&power.scale(c, &ring), &ring);
            }
            if t + 1 < self.coeffs.len() && self.coeffs[t + 1..].iter().any(|&x| x != 0) {
                power = power.mul(sigma, &ring);
            }
        }
        acc
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.coeffs.iter().map(|&c| self.params.ring.to_signed(c)).collect()
    }
}

pub fn ring_mul(x: &GroupRingElement, y: &GroupRingElement) -> GroupRingElement {
    x.mul(y)
}

pub fn augmentation(x: &GroupRingElement) -> PadicInt {
    x.augmentation()
}
