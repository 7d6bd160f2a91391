//! Bounded cochain complexes of finite-dimensional vector spaces.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// A bounded cochain complex `... -> C^n --d^n--> C^{n+1} -> ...`.
///
/// The support is trimmed so that the lowest and highest stored degrees are
/// nonzero; the zero complex is stored with `lo = 0` and no degrees.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Complex<F> {
    lo: i64,
    dims: Vec<usize>,
    diffs: Vec<Matrix<F>>,
}

/// Shared handle to a complex; maps and labellings refer to complexes by `Arc`.
pub type Cx<F> = Arc<Complex<F>>;

impl<F: Scalar> Complex<F> {
    /// Builds a complex with `dims[k] = dim C^{lo+k}` and
    /// `diffs[k] = d^{lo+k}` of shape `dims[k+1] x dims[k]`.
    ///
    /// `diffs` must have exactly `dims.len() - 1` entries (or none when
    /// `dims` is empty). Checks shapes and `d^{n+1} d^n = 0`.
    pub fn new(lo: i64, dims: Vec<usize>, diffs: Vec<Matrix<F>>) -> Result<Self> {
        if diffs.len() != dims.len().saturating_sub(1) {
            return Err(Error::MalformedComplex(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.shape() != (dims[k + 1], dims[k]) {
                return Err(Error::MalformedComplex(format!(
                    "d^{} has shape {:?}, expected {:?}",
                    lo + k as i64,
                    d.shape(),
                    (dims[k + 1], dims[k])
                )));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k].mul(&diffs[k - 1]).is_zero() {
                return Err(Error::MalformedComplex(format!(
                    "d^{} d^{} != 0",
                    lo + k as i64,
                    lo + k as i64 - 1
                )));
            }
        }
        Ok(Self::trimmed(lo, dims, diffs))
    }

    fn trimmed(mut lo: i64, mut dims: Vec<usize>, mut diffs: Vec<Matrix<F>>) -> Self {
        while dims.first() == Some(&0) {
            dims.remove(0);
            if !diffs.is_empty() {
                diffs.remove(0);
            }
            lo += 1;
        }
        while dims.last() == Some(&0) {
            dims.pop();
            diffs.pop();
        }
        if dims.is_empty() {
            lo = 0;
            diffs.clear();
        }
        Complex { lo, dims, diffs }
    }

    /// The zero complex.
    pub fn zero() -> Self {
        Complex {
            lo: 0,
            dims: vec![],
            diffs: vec![],
        }
    }

    /// `F^dim` concentrated in a single degree.
    pub fn concentrated(degree: i64, dim: usize) -> Self {
        Self::trimmed(degree, vec![dim], vec![])
    }

    /// Lowest nonzero degree (0 for the zero complex).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest nonzero degree (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    /// True for the zero complex.
    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Degrees `lo..=hi`.
    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    /// `dim C^n` (zero outside the support).
    pub fn dim(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    /// Dimensions over the support.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Sum of all dimensions.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `d^n`, or `None` when it is the zero map between possibly nonzero spaces
    /// outside the stored range.
    pub fn d_ref(&self, n: i64) -> Option<&Matrix<F>> {
        if n < self.lo || n >= self.hi() {
            None
        } else {
            Some(&self.diffs[(n - self.lo) as usize])
        }
    }

    /// `d^n` as an owned matrix of shape `dim(n+1) x dim(n)`.
    pub fn d(&self, n: i64) -> Matrix<F> {
        match self.d_ref(n) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.dim(n + 1), self.dim(n)),
        }
    }

    /// Stored differentials, `diffs()[k] = d^{lo+k}`.
    pub fn diffs(&self) -> &[Matrix<F>] {
        &self.diffs
    }

    /// Amplitude `hi - lo` (0 for the zero complex).
    pub fn amplitude(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.hi() - self.lo
        }
    }

    /// True when every nonzero degree is nonnegative.
    pub fn is_nonnegatively_graded(&self) -> bool {
        self.is_zero() || self.lo >= 0
    }

    /// True when every differential vanishes.
    pub fn has_zero_differential(&self) -> bool {
        self.diffs.iter().all(|d| d.is_zero())
    }

    /// Applies a degreewise change of basis: the result has differential
    /// `P_{n+1} d^n P_n^{-1}`. `bases[k]` is `P_{lo+k}`.
    pub fn conjugate(&self, bases: &[Matrix<F>], inverses: &[Matrix<F>]) -> Complex<F> {
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, d)| bases[k + 1].mul(d).mul(&inverses[k]))
            .collect();
        Complex {
            lo: self.lo,
            dims: self.dims.clone(),
            diffs,
        }
    }

    /// Index range helper: `(lo, hi)` covering both complexes.
    pub fn joint_range(a: &Complex<F>, b: &Complex<F>) -> Option<(i64, i64)> {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => None,
            (true, false) => Some((b.lo, b.hi())),
            (false, true) => Some((a.lo, a.hi())),
            (false, false) => Some((a.lo.min(b.lo), a.hi().max(b.hi()))),
        }
    }
}

/// Direct sum with block-diagonal differentials, summands in the given order.
pub fn direct_sum<F: Scalar>(parts: &[&Complex<F>]) -> Complex<F> {
    let nonzero: Vec<&&Complex<F>> = parts.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return Complex::zero();
    }
    let lo = nonzero.iter().map(|c| c.lo).min().unwrap();
    let hi = nonzero.iter().map(|c| c.hi()).max().unwrap();
    let dims: Vec<usize> = (lo..=hi)
        .map(|n| parts.iter().map(|c| c.dim(n)).sum())
        .collect();
    let mut diffs = Vec::new();
    for n in lo..hi {
        let mut m = Matrix::zeros(dims[(n + 1 - lo) as usize], dims[(n - lo) as usize]);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            if let Some(d) = p.d_ref(n) {
                m.set_block(r, c, d);
            }
            r += p.dim(n + 1);
            c += p.dim(n);
        }
        diffs.push(m);
    }
    Complex::trimmed(lo, dims, diffs)
}

/// Shift with `shift(C, p)^n = C^{n+p}`; the differential is carried over unsigned.
pub fn shift<F: Scalar>(c: &Complex<F>, p: i64) -> Complex<F> {
    if c.is_zero() {
        return Complex::zero();
    }
    Complex {
        lo: c.lo - p,
        dims: c.dims.clone(),
        diffs: c.diffs.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    #[test]
    fn rejects_nonzero_square() {
        let d = Matrix::<Q>::from_i64(1, 1, &[1]);
        let err = Complex::new(0, vec![1, 1, 1], vec![d.clone(), d]);
        assert!(matches!(err, Err(Error::MalformedComplex(_))));
    }

    #[test]
    fn trims_zero_ends() {
        let c = Complex::<Q>::new(
            -1,
            vec![0, 2, 0],
            vec![Matrix::zeros(2, 0), Matrix::zeros(0, 2)],
        )
        .unwrap();
        assert_eq!((c.lo(), c.hi()), (0, 0));
        assert_eq!(c.dim(0), 2);
        assert!(Complex::<Q>::new(3, vec![0], vec![]).unwrap().is_zero());
    }

    #[test]
    fn shift_convention() {
        let span = Complex::<Q>::new(0, vec![1, 1], vec![Matrix::identity(1)]).unwrap();
        let s = shift(&span, 1);
        assert_eq!((s.lo(), s.hi()), (-1, 0));
        assert_eq!(s.dim(-1), span.dim(0));
    }

    #[test]
    fn direct_sum_is_block_diagonal() {
        let span = Complex::<Q>::new(0, vec![1, 1], vec![Matrix::identity(1)]).unwrap();
        let pt = Complex::<Q>::concentrated(1, 1);
        let s = direct_sum(&[&span, &pt]);
        assert_eq!(s.dims(), &[1, 2]);
        assert_eq!(s.d(0), Matrix::from_i64(2, 1, &[1, 0]));
    }
}
