//! Elementary complexes: finite sums of shifted identity spans `M --id--> M`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homalg::complex::{direct_sum, Complex, Cx};
use crate::homalg::graded::GradedMap;
use crate::homalg::homology::Harmonic;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// A list of identity spans `(dimension, placement)`; the span sits in
/// degrees `placement` and `placement + 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementaryDecl {
    summands: Vec<(usize, i64)>,
}

impl ElementaryDecl {
    /// Validates that every dimension is positive.
    pub fn new(summands: Vec<(usize, i64)>) -> Result<Self> {
        if let Some((d, p)) = summands.iter().find(|(d, _)| *d == 0) {
            return Err(Error::InvalidInput(format!(
                "elementary summand ({d}, {p}) has zero dimension"
            )));
        }
        Ok(ElementaryDecl { summands })
    }

    /// The empty declaration (the zero complex).
    pub fn empty() -> Self {
        ElementaryDecl::default()
    }

    /// Summands in declaration order.
    pub fn summands(&self) -> &[(usize, i64)] {
        &self.summands
    }

    /// True when there are no summands.
    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Concatenation of two declarations.
    pub fn concat(&self, other: &ElementaryDecl) -> ElementaryDecl {
        let mut summands = self.summands.clone();
        summands.extend_from_slice(&other.summands);
        ElementaryDecl { summands }
    }

    /// Shift every placement so the result models `shift(E, p)`.
    pub fn shifted(&self, p: i64) -> ElementaryDecl {
        ElementaryDecl {
            summands: self.summands.iter().map(|&(d, q)| (d, q - p)).collect(),
        }
    }

    /// Row offset of summand `j`'s copy in degree `n` (its lower copy when
    /// `n = placement`, its upper copy when `n = placement + 1`).
    ///
    /// In each degree the copies are ordered by declaration index.
    pub fn offset(&self, j: usize, n: i64) -> usize {
        self.summands[..j]
            .iter()
            .filter(|(_, p)| *p == n || *p + 1 == n)
            .map(|(d, _)| *d)
            .sum()
    }

    /// Dimension of the elementary complex in degree `n`.
    pub fn dim(&self, n: i64) -> usize {
        self.summands
            .iter()
            .filter(|(_, p)| *p == n || *p + 1 == n)
            .map(|(d, _)| *d)
            .sum()
    }

    /// The elementary complex described by this declaration.
    pub fn build<F: Scalar>(&self) -> Complex<F> {
        if self.summands.is_empty() {
            return Complex::zero();
        }
        let lo = self.summands.iter().map(|s| s.1).min().unwrap();
        let hi = self.summands.iter().map(|s| s.1 + 1).max().unwrap();
        let dims: Vec<usize> = (lo..=hi).map(|n| self.dim(n)).collect();
        let diffs = (lo..hi)
            .map(|n| {
                let mut m = Matrix::zeros(self.dim(n + 1), self.dim(n));
                for (j, &(d, p)) in self.summands.iter().enumerate() {
                    if p == n {
                        m.set_block(
                            self.offset(j, n + 1),
                            self.offset(j, n),
                            &Matrix::identity(d),
                        );
                    }
                }
                m
            })
            .collect();
        Complex::new(lo, dims, diffs).expect("identity spans form a complex")
    }
}

/// Builds the elementary complex of a declaration.
pub fn build_elementary<F: Scalar>(decl: &ElementaryDecl) -> Complex<F> {
    decl.build()
}

/// Elementary test.
///
/// Non-strict mode accepts every acyclic complex; strict mode additionally
/// requires each differential to be a 0/1 partial permutation matrix.
pub fn is_elementary<F: Scalar>(c: &Complex<F>, strict: bool) -> bool {
    if strict && !c.diffs().iter().all(is_partial_permutation) {
        return false;
    }
    Harmonic::new(Arc::new(c.clone())).is_acyclic()
}

fn is_partial_permutation<F: Scalar>(m: &Matrix<F>) -> bool {
    let mut row_used = vec![false; m.rows()];
    let mut col_used = vec![false; m.cols()];
    for (i, row) in row_used.iter_mut().enumerate() {
        for (j, col) in col_used.iter_mut().enumerate() {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            if !v.is_one() || *row || *col {
                return false;
            }
            *row = true;
            *col = true;
        }
    }
    true
}

/// Greedy matching of summands of `from` with equal summands of `to`.
fn match_summands(from: &ElementaryDecl, to: &ElementaryDecl) -> Vec<(usize, usize)> {
    let mut used = vec![false; to.summands.len()];
    let mut pairs = Vec::new();
    for (i, s) in from.summands.iter().enumerate() {
        if let Some(j) = (0..to.summands.len()).find(|&j| !used[j] && to.summands[j] == *s) {
            used[j] = true;
            pairs.push((i, j));
        }
    }
    pairs
}

/// The elementary morphism of degree `k` from `e` (declared by `de`) to `f`
/// (declared by `df`): zero for `k != 0`, otherwise the identity on each
/// summand present in both declarations and zero elsewhere.
pub fn elementary_morphism<F: Scalar>(
    e: &Cx<F>,
    de: &ElementaryDecl,
    f: &Cx<F>,
    df: &ElementaryDecl,
    k: i64,
) -> Result<GradedMap<F>> {
    for (c, d) in [(e, de), (f, df)] {
        if **c != d.build::<F>() {
            return Err(Error::NotElementary(
                "complex does not match its declaration".into(),
            ));
        }
    }
    let mut map = GradedMap::zero(e.clone(), f.clone(), k);
    if k != 0 {
        return Ok(map);
    }
    let pairs = match_summands(de, df);
    map = GradedMap::from_fn(e.clone(), f.clone(), 0, |n| {
        let mut m = Matrix::zeros(f.dim(n), e.dim(n));
        for &(i, j) in &pairs {
            let (d, p) = de.summands[i];
            if p == n || p + 1 == n {
                m.set_block(df.offset(j, n), de.offset(i, n), &Matrix::identity(d));
            }
        }
        Some(m)
    })?;
    Ok(map)
}

/// Inclusion, projection and contracting homotopy for `C ⊕ E` with `E` a single span.
#[derive(Clone, Debug)]
pub struct SummandHomotopy<F> {
    /// `C ⊕ E`.
    pub sum: Cx<F>,
    /// Inclusion `i: C -> C ⊕ E`.
    pub inclusion: GradedMap<F>,
    /// Projection `p: C ⊕ E -> C`, with `p i = id`.
    pub projection: GradedMap<F>,
    /// Degree `-1` map with `∂h = i p - id`.
    pub homotopy: GradedMap<F>,
}

/// The standard homotopy equivalence between `C` and `C ⊕ E` for a single
/// span `E = (M --id--> M)` placed at `placement`.
///
/// The homotopy vanishes except on the upper copy of `M`, which it sends to
/// the lower copy by `-id_M`, zero on `C`.
pub fn summand_homotopy<F: Scalar>(c: &Cx<F>, span: &ElementaryDecl) -> Result<SummandHomotopy<F>> {
    let &[(m, p)] = span.summands() else {
        return Err(Error::UnsupportedShape(
            "summand homotopy needs exactly one identity span".into(),
        ));
    };
    let e = span.build::<F>();
    let sum = Arc::new(direct_sum(&[c, &e]));
    let inclusion = GradedMap::from_fn(c.clone(), sum.clone(), 0, |n| {
        Some(Matrix::vstack(
            c.dim(n),
            &[
                &Matrix::identity(c.dim(n)),
                &Matrix::zeros(e.dim(n), c.dim(n)),
            ],
        ))
    })?;
    let projection = GradedMap::from_fn(sum.clone(), c.clone(), 0, |n| {
        Some(Matrix::hstack(
            c.dim(n),
            &[
                &Matrix::identity(c.dim(n)),
                &Matrix::zeros(c.dim(n), e.dim(n)),
            ],
        ))
    })?;
    let homotopy = GradedMap::from_fn(sum.clone(), sum.clone(), -1, |n| {
        (n == p + 1).then(|| {
            let mut h = Matrix::zeros(sum.dim(p), sum.dim(p + 1));
            h.set_block(c.dim(p), c.dim(p + 1), &Matrix::identity(m).neg());
            h
        })
    })?;
    Ok(SummandHomotopy {
        sum,
        inclusion,
        projection,
        homotopy,
    })
}
