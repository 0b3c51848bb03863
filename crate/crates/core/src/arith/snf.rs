//! Smith normal form over `Z/p^N`.
//!
//! `Zp` is a local PID, so every matrix is equivalent to a diagonal matrix
//! with entries `p^d`. Pivots are chosen by minimal valuation with row-major
//! tie-breaking; a pivot whose valuation lands inside the guard band
//! `[N - guard, N)` aborts with [`Error::PrecisionExhausted`] instead of
//! silently guessing whether the entry is a genuine torsion factor or noise.

use super::matrix::Matrix;
use super::padic::{PadicRing, Valuation};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SnfResult {
    /// `min(rows, cols)` valuations, non-decreasing; zero pivots are saturated.
    pub diagonal: Vec<Valuation>,
    pub left: Matrix,
    pub left_inv: Matrix,
    pub right: Matrix,
    pub right_inv: Matrix,
    /// Number of finite pivots.
    pub rank: usize,
}

impl SnfResult {
    pub fn finite_diagonal(&self) -> Vec<u32> {
        self.diagonal.iter().filter_map(|v| v.finite()).collect()
    }

    /// The diagonal matrix `left * m * right`, rebuilt from the valuations.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize, ring: &PadicRing) -> Matrix {
        let mut d = Matrix::zeros(rows, cols);
        for (i, v) in self.diagonal.iter().enumerate() {
            if let Valuation::Finite(e) = v {
                d.set(i, i, ring.p_pow(*e));
            }
        }
        d
    }

    /// Solves `m x = b`; `None` if `b` is not in the column lattice of `m`.
    pub fn solve(&self, b: &[u64], ring: &PadicRing) -> Option<Vec<u64>> {
        let y = self.left.apply(b, ring);
        let cols = self.right.rows();
        let mut z = vec![0u64; cols];
        for (i, &yi) in y.iter().enumerate() {
            if i < self.rank {
                let d = self.diagonal[i].finite().expect("finite pivot");
                match ring.valuation(yi) {
                    Valuation::Saturated => {}
                    Valuation::Finite(v) if v >= d => z[i] = ring.div_p_pow(yi, d),
                    Valuation::Finite(_) => return None,
                }
            } else if !ring.is_negligible(yi) {
                return None;
            }
        }
        Some(self.right.apply(&z, ring))
    }

    /// Columns of the right transform spanning the kernel of `m` over `Zp`.
    pub fn kernel_basis(&self) -> Matrix {
        let idx: Vec<usize> = (self.rank..self.right.cols()).collect();
        self.right.select_columns(&idx)
    }
}

pub fn smith_normal_form(m: &Matrix, ring: &PadicRing) -> Result<SnfResult> {
    snf(m, ring, true)
}

/// SNF that skips the left transforms when the caller only needs kernels.
pub(crate) fn snf(m: &Matrix, ring: &PadicRing, want_left: bool) -> Result<SnfResult> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let (mut left, mut left_inv) = if want_left {
        (Matrix::identity(rows), Matrix::identity(rows))
    } else {
        (Matrix::zeros(0, 0), Matrix::zeros(0, 0))
    };
    let mut right = Matrix::identity(cols);
    let mut right_inv = Matrix::identity(cols);
    let mut diagonal = Vec::with_capacity(rows.min(cols));
    let limit = ring.precision() - ring.guard();

    for k in 0..rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for i in k..rows {
            for j in k..cols {
                if let Valuation::Finite(v) = ring.valuation(a.get(i, j)) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else {
            break;
        };
        if v >= limit {
            return Err(Error::PrecisionExhausted {
                valuation: v,
                precision: ring.precision(),
                guard: ring.guard(),
            });
        }

        a.swap_rows(k, pi);
        a.swap_cols(k, pj);
        if want_left {
            left.swap_rows(k, pi);
            left_inv.swap_cols(k, pi);
        }
        right.swap_cols(k, pj);
        right_inv.swap_rows(k, pj);

        let unit = ring.div_p_pow(a.get(k, k), v);
        let unit_inv = ring.unit_inverse(unit)?;
        if unit != 1 {
            a.scale_row(k, unit_inv, ring);
            if want_left {
                left.scale_row(k, unit_inv, ring);
                left_inv.scale_col(k, unit, ring);
            }
        }

        for i in k + 1..rows {
            let x = a.get(i, k);
            if x == 0 {
                continue;
            }
            let q = ring.div_p_pow(x, v);
            a.row_axpy(i, k, q, ring);
            if want_left {
                left.row_axpy(i, k, q, ring);
                // left_inv: col_k += q * col_i
                left_inv.col_axpy(k, i, ring.neg(q), ring);
            }
        }
        for j in k + 1..cols {
            let x = a.get(k, j);
            if x == 0 {
                continue;
            }
            let q = ring.div_p_pow(x, v);
            a.set(k, j, 0);
            right.col_axpy(j, k, q, ring);
            // right_inv: row_k += q * row_j
            right_inv.row_axpy(k, j, ring.neg(q), ring);
        }
        diagonal.push(Valuation::Finite(v));
    }
    let rank = diagonal.len();
    diagonal.resize(rows.min(cols), Valuation::Saturated);
    Ok(SnfResult {
        diagonal,
        left,
        left_inv,
        right,
        right_inv,
        rank,
    })
}

/// Basis of the `Zp`-kernel of `m` (columns).
pub fn kernel(m: &Matrix, ring: &PadicRing) -> Result<Matrix> {
    Ok(snf(m, ring, false)?.kernel_basis())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> PadicRing {
        PadicRing::new(3, 8, 2).unwrap()
    }

    fn check_transform(m: &Matrix, r: &SnfResult, ring: &PadicRing) {
        let d = r.left.mul(m, ring).mul(&r.right, ring);
        assert_eq!(d, r.diagonal_matrix(m.rows(), m.cols(), ring));
        assert_eq!(r.left.mul(&r.left_inv, ring), Matrix::identity(m.rows()));
        assert_eq!(r.right.mul(&r.right_inv, ring), Matrix::identity(m.cols()));
        let back = r
            .left_inv
            .mul(&d, ring)
            .mul(&r.right_inv, ring);
        assert_eq!(&back, m);
    }

    #[test]
    fn identity_and_diagonal() {
        let ring = ring();
        let r = smith_normal_form(&Matrix::identity(2), &ring).unwrap();
        assert_eq!(r.diagonal, vec![Valuation::Finite(0), Valuation::Finite(0)]);
        let m = Matrix::from_signed_rows(&[vec![3, 0], vec![0, 9]], &ring);
        let r = smith_normal_form(&m, &ring).unwrap();
        assert_eq!(r.diagonal, vec![Valuation::Finite(1), Valuation::Finite(2)]);
        check_transform(&m, &r, &ring);
    }

    #[test]
    fn unit_pivot_first() {
        // [[p, 1], [0, p]] has determinant p^2 and a unit entry.
        let ring = ring();
        let m = Matrix::from_signed_rows(&[vec![3, 1], vec![0, 3]], &ring);
        let r = smith_normal_form(&m, &ring).unwrap();
        assert_eq!(r.diagonal, vec![Valuation::Finite(0), Valuation::Finite(2)]);
        check_transform(&m, &r, &ring);
    }

    #[test]
    fn rectangular_with_kernel() {
        let ring = ring();
        let m = Matrix::from_signed_rows(&[vec![1, 2, 3], vec![2, 4, 6]], &ring);
        let r = smith_normal_form(&m, &ring).unwrap();
        assert_eq!(r.rank, 1);
        assert_eq!(r.diagonal[1], Valuation::Saturated);
        check_transform(&m, &r, &ring);
        let k = r.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k, &ring).is_zero(&ring));
    }

    #[test]
    fn solve_membership() {
        let ring = ring();
        let m = Matrix::from_signed_rows(&[vec![3, 0], vec![0, 9]], &ring);
        let r = smith_normal_form(&m, &ring).unwrap();
        let x = r.solve(&[6, 18], &ring).unwrap();
        assert_eq!(m.apply(&x, &ring), vec![6, 18]);
        assert!(r.solve(&[1, 0], &ring).is_none());
        assert!(r.solve(&[0, 3], &ring).is_none());
    }

    #[test]
    fn guard_band_is_loud() {
        let ring = ring();
        let m = Matrix::from_signed_rows(&[vec![729]], &ring); // 3^6, limit is 6
        assert!(matches!(
            smith_normal_form(&m, &ring),
            Err(Error::PrecisionExhausted { valuation: 6, .. })
        ));
    }
}
