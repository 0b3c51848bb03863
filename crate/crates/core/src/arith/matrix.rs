use std::fmt;

use super::padic::PadicRing;

/// Dense row-major matrix of residues modulo `p^N`.
///
/// The matrix does not own its ring; every arithmetic method takes the
/// [`PadicRing`] explicitly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Matrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn from_signed_rows(rows: &[Vec<i64>], ring: &PadicRing) -> Self {
        let converted: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| ring.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(&converted)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        let c = self.cols;
        &mut self.data[i * c..(i + 1) * c]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.cols).map(move |j| self.column(j))
    }

    pub fn set_column(&mut self, j: usize, col: &[u64]) {
        assert_eq!(col.len(), self.rows);
        for (i, &x) in col.iter().enumerate() {
            self.set(i, j, x);
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Every entry vanishes modulo `p^N`.
    pub fn is_zero(&self, ring: &PadicRing) -> bool {
        self.data.iter().all(|&x| ring.is_zero(x))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, ring: &PadicRing) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, other.cols);
        let m = ring.modulus() as u128;
        for i in 0..self.rows {
            let mut acc = vec![0u128; other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    if b != 0 {
                        *slot = (*slot + a as u128 * b as u128) % m;
                    }
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.set(i, j, v as u64);
            }
        }
        out
    }

    pub fn apply(&self, v: &[u64], ring: &PadicRing) -> Vec<u64> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| ring.add(acc, ring.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix, ring: &PadicRing) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| ring.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix, ring: &PadicRing) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| ring.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u64, ring: &PadicRing) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| ring.mul(a, c)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u64, ring: &PadicRing) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base, ring);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base, ring);
            }
        }
        acc
    }

    /// `I + A + A^2 + ... + A^(count-1)`.
    pub fn geometric_sum(&self, count: u64, ring: &PadicRing) -> Matrix {
        let n = self.rows;
        let mut acc = Matrix::zeros(n, n);
        let mut power = Matrix::identity(n);
        for t in 0..count {
            acc = acc.add(&power, ring);
            if t + 1 < count {
                power = power.mul(self, ring);
            }
        }
        acc
    }

    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        let rows = parts.first().map_or(0, |m| m.rows);
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut offset = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, offset + j, m.get(i, j));
                }
            }
            offset += m.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        let cols = parts.first().map_or(0, |m| m.cols);
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&m.data);
        }
        Matrix { rows, cols, data }
    }

    pub fn block_diag(parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(r0 + i, c0 + j, m.get(i, j));
                }
            }
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, idx.len());
        for (k, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, k, self.get(i, j));
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] -= q * row[src]`.
    pub fn row_axpy(&mut self, dst: usize, src: usize, q: u64, ring: &PadicRing) {
        if q == 0 {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(src, j);
            if s != 0 {
                let d = self.get(dst, j);
                self.set(dst, j, ring.sub(d, ring.mul(q, s)));
            }
        }
    }

    /// `col[dst] -= q * col[src]`.
    pub fn col_axpy(&mut self, dst: usize, src: usize, q: u64, ring: &PadicRing) {
        if q == 0 {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, src);
            if s != 0 {
                let d = self.get(i, dst);
                self.set(i, dst, ring.sub(d, ring.mul(q, s)));
            }
        }
    }

    pub fn scale_row(&mut self, i: usize, c: u64, ring: &PadicRing) {
        for x in self.row_mut(i) {
            *x = ring.mul(*x, c);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: u64, ring: &PadicRing) {
        for i in 0..self.rows {
            let x = self.get(i, j);
            self.set(i, j, ring.mul(x, c));
        }
    }

    /// Signed entries, for display and serialization.
    pub fn to_signed_rows(&self, ring: &PadicRing) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| ring.to_signed(x)).collect())
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_powers() {
        let ring = PadicRing::new(3, 4, 2).unwrap();
        let a = Matrix::from_signed_rows(&[vec![1, 1], vec![0, 1]], &ring);
        let a3 = a.pow(3, &ring);
        assert_eq!(a3, Matrix::from_signed_rows(&[vec![1, 3], vec![0, 1]], &ring));
        let s = a.geometric_sum(3, &ring);
        assert_eq!(s, Matrix::from_signed_rows(&[vec![3, 3], vec![0, 3]], &ring));
        assert_eq!(a.mul(&Matrix::identity(2), &ring), a);
        assert_eq!(a.apply(&[1, 2], &ring), vec![3, 2]);
    }

    #[test]
    fn stacking() {
        let a = Matrix::identity(2);
        let b = Matrix::zeros(2, 1);
        let h = Matrix::hstack(&[&a, &b]);
        assert_eq!((h.rows(), h.cols()), (2, 3));
        let d = Matrix::block_diag(&[&a, &Matrix::identity(1)]);
        assert_eq!(d, Matrix::identity(3));
        assert_eq!(Matrix::vstack(&[&a, &a]).rows(), 4);
    }
}
