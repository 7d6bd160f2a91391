//! Dense exact matrices and the row-reduction routines built on them.
//!
//! Matrices are row-major. All pivot choices are deterministic (first nonzero
//! entry, scanning left to right and top to bottom), so complements and
//! sections computed here are byte-stable across runs.

use std::fmt;

use crate::scalar::Scalar;

/// A dense `rows x cols` matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            f.write_str(if i == 0 { " " } else { "; " })?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

impl<F: Scalar> Matrix<F> {
    /// The zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    /// The identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors; `None` if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Option<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return None;
            }
            data.extend(r);
        }
        Some(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Builds a matrix from small integer rows.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count must equal rows*cols"
        );
        Matrix {
            rows,
            cols,
            data: entries.iter().map(|&v| F::from_i64(v)).collect(),
        }
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// `(rows, cols)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    /// Overwrites entry `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Row-major entries.
    pub fn data(&self) -> &[F] {
        &self.data
    }

    /// True when every entry is zero (vacuously true for empty shapes).
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    /// True when this is a square identity matrix.
    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// Matrix product `self * rhs`; panics on inner-dimension mismatch.
    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::<F>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    let p = a.mul(b);
                    out.data[idx].add_assign(&p);
                }
            }
        }
        out
    }

    /// Entrywise sum; panics on shape mismatch.
    pub fn add(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    /// Entrywise difference; panics on shape mismatch.
    pub fn sub(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(
            self.shape(),
            rhs.shape(),
            "matrix difference shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    /// In-place sum; panics on shape mismatch.
    pub fn add_assign(&mut self, rhs: &Matrix<F>) {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            if !b.is_zero() {
                a.add_assign(b);
            }
        }
    }

    /// Negation.
    pub fn neg(&self) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.neg()).collect(),
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Transpose.
    pub fn transpose(&self) -> Matrix<F> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// The block `rows r0..r1`, `cols c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix<F> {
        Matrix::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix<F>) {
        assert!(
            r0 + block.rows <= self.rows && c0 + block.cols <= self.cols,
            "block out of range"
        );
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    /// The listed columns, in the listed order.
    pub fn select_columns(&self, idx: &[usize]) -> Matrix<F> {
        Matrix::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// The listed rows, in the listed order.
    pub fn select_rows(&self, idx: &[usize]) -> Matrix<F> {
        Matrix::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    /// Horizontal concatenation; all parts must have `rows` rows.
    pub fn hstack(rows: usize, parts: &[&Matrix<F>]) -> Matrix<F> {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut c = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            out.set_block(0, c, m);
            c += m.cols;
        }
        out
    }

    /// Vertical concatenation; all parts must have `cols` columns.
    pub fn vstack(cols: usize, parts: &[&Matrix<F>]) -> Matrix<F> {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut r = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            out.set_block(r, 0, m);
            r += m.rows;
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if rv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).sub(&factor.mul(rv));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Rank.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the null space, as the columns of a `cols x k` matrix.
    ///
    /// One basis vector per free column, in increasing column order.
    pub fn kernel(&self) -> Matrix<F> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, F::one());
            for (row, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, r.get(row, fc).neg());
            }
        }
        out
    }

    /// Solves `self * X = rhs`, returning the solution with all free variables zero.
    pub fn solve(&self, rhs: &Matrix<F>) -> Option<Matrix<F>> {
        assert_eq!(self.rows, rhs.rows, "solve row mismatch");
        let aug = Matrix::hstack(self.rows, &[self, rhs]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(row, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Two-sided inverse of a square matrix.
    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Matrix::hstack(n, &[self, &Matrix::identity(n)]);
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0, n, n, 2 * n))
    }

    /// True for a square matrix of full rank.
    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Completes the (independent) columns of `self` to a basis of `F^rows`
    /// with standard basis vectors, returning the added vectors as columns.
    pub fn extend_to_basis(&self) -> Matrix<F> {
        let n = self.rows;
        let aug = Matrix::hstack(n, &[self, &Matrix::identity(n)]);
        let (_, pivots) = aug.rref();
        let added: Vec<usize> = pivots
            .iter()
            .filter(|&&p| p >= self.cols)
            .map(|&p| p - self.cols)
            .collect();
        Matrix::identity(n).select_columns(&added)
    }

    /// Given `sub` whose columns lie in the span of the independent columns of
    /// `ambient`, returns columns `H` inside that span with `[sub | H]` a basis
    /// of it. `sub` must itself have independent columns.
    pub fn complement_within(sub: &Matrix<F>, ambient: &Matrix<F>) -> Matrix<F> {
        let coords = ambient
            .solve(sub)
            .expect("subspace must lie inside the ambient span");
        let ext = coords.extend_to_basis();
        ambient.mul(&ext)
    }

    /// Column indices forming a basis of the column space (first independent columns).
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn m(r: usize, c: usize, e: &[i64]) -> Matrix<Q> {
        Matrix::from_i64(r, c, e)
    }

    #[test]
    fn product_and_identity() {
        let a = m(2, 3, &[1, 2, 3, 4, 5, 6]);
        let b = m(3, 1, &[1, 0, -1]);
        assert_eq!(a.mul(&b), m(2, 1, &[-2, -2]));
        assert_eq!(Matrix::identity(2).mul(&a), a);
    }

    #[test]
    fn kernel_is_annihilated_and_has_nullity_dimension() {
        let a = m(2, 4, &[1, 2, 0, 1, 2, 4, 1, 0]);
        let k = a.kernel();
        assert_eq!(k.cols(), 4 - a.rank());
        assert!(a.mul(&k).is_zero());
        assert_eq!(k.rank(), k.cols());
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse().is_none());
        let b = m(2, 1, &[3, 2]);
        assert_eq!(a.mul(&a.solve(&b).unwrap()), b);
        assert!(m(2, 1, &[1, 1]).solve(&m(2, 1, &[1, 2])).is_none());
    }

    #[test]
    fn basis_extension_spans() {
        let v = m(3, 1, &[0, 1, 1]);
        let e = v.extend_to_basis();
        assert_eq!(e.cols(), 2);
        assert_eq!(Matrix::hstack(3, &[&v, &e]).rank(), 3);
        let amb = m(3, 2, &[1, 0, 0, 1, 0, 1]);
        let h = Matrix::complement_within(&v, &amb);
        assert_eq!(h.cols(), 1);
        assert_eq!(Matrix::hstack(3, &[&v, &h]).rank(), 2);
    }
}
