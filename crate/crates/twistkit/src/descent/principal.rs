//! Group-valued cocycles: transition matrices `g_{αβ}` in `GL_n` with
//! `g_{βγ} g_{αβ} = g_{αγ}`, and gauge morphisms between them.
//!
//! Here `g_{αβ}` maps the trivialisation over `α` to the one over `β`.

use std::collections::BTreeMap;

use crate::cech_mc::Cover;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::{Finding, Report};
use crate::scalar::Scalar;

/// Invertible `n x n` matrices on the valid ordered pairs of a cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalCocycle<F> {
    cover: Cover,
    n: usize,
    edges: BTreeMap<(usize, usize), Matrix<F>>,
}

fn check_invertible<F: Scalar>(m: &Matrix<F>, n: usize, what: &str) -> Result<()> {
    if m.shape() != (n, n) {
        return Err(Error::NotInvertible(format!(
            "{what} has shape {:?}, expected ({n}, {n})",
            m.shape()
        )));
    }
    if !m.is_invertible() {
        return Err(Error::NotInvertible(format!("{what} is singular")));
    }
    Ok(())
}

impl<F: Scalar> PrincipalCocycle<F> {
    /// Rejects singular or non-square matrices and missing pairs `α ≠ β`.
    pub fn new(cover: Cover, n: usize, edges: BTreeMap<(usize, usize), Matrix<F>>) -> Result<Self> {
        for (&(a, b), m) in &edges {
            if !cover.is_valid(&[a, b]) {
                return Err(Error::Shape(format!(
                    "pair ({a}, {b}) is not valid in the cover"
                )));
            }
            check_invertible(m, n, &format!("g_({a},{b})"))?;
        }
        if let Some(t) = cover
            .nondegenerate_tuples(2)
            .into_iter()
            .find(|t| !edges.contains_key(&(t[0], t[1])))
        {
            return Err(Error::Incomplete(format!("pair {t:?} has no matrix")));
        }
        Ok(PrincipalCocycle { cover, n, edges })
    }

    /// The cocycle with every matrix the identity.
    pub fn identity(cover: Cover, n: usize) -> Self {
        let edges = cover
            .nondegenerate_tuples(2)
            .into_iter()
            .map(|t| ((t[0], t[1]), Matrix::identity(n)))
            .collect();
        PrincipalCocycle { cover, n, edges }
    }

    /// The cover.
    pub fn cover(&self) -> &Cover {
        &self.cover
    }

    /// Matrix size.
    pub fn rank(&self) -> usize {
        self.n
    }

    /// Stored matrices.
    pub fn edges(&self) -> &BTreeMap<(usize, usize), Matrix<F>> {
        &self.edges
    }

    /// `g_{αβ}`, the identity on `(α, α)` unless stored.
    pub fn g(&self, a: usize, b: usize) -> Matrix<F> {
        self.edges
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(|| Matrix::identity(self.n))
    }

    /// The cocycle `h_{αβ} = λ_β g_{αβ} λ_α^{-1}`, gauge equivalent to this one via `λ`.
    pub fn conjugate(&self, lambda: &[Matrix<F>]) -> Result<PrincipalCocycle<F>> {
        let inv = inverses(lambda, self.n, self.cover.len())?;
        let edges = self
            .edges
            .iter()
            .map(|(&(a, b), g)| ((a, b), lambda[b].mul(g).mul(&inv[a])))
            .collect();
        Ok(PrincipalCocycle {
            cover: self.cover.clone(),
            n: self.n,
            edges,
        })
    }
}

fn inverses<F: Scalar>(lambda: &[Matrix<F>], n: usize, opens: usize) -> Result<Vec<Matrix<F>>> {
    if lambda.len() != opens {
        return Err(Error::InvalidInput(format!(
            "{opens} opens but {} gauge matrices",
            lambda.len()
        )));
    }
    lambda
        .iter()
        .enumerate()
        .map(|(a, l)| {
            check_invertible(l, n, &format!("λ_{a}"))?;
            Ok(l.inverse().expect("checked"))
        })
        .collect()
}

/// Checks `g_{αα} = id` for stored diagonal entries and
/// `g_{βγ} g_{αβ} = g_{αγ}` on every valid nondegenerate triple.
pub fn validate_principal_cocycle<F: Scalar>(g: &PrincipalCocycle<F>) -> Report {
    let mut r = Report::new();
    for (&(a, b), m) in &g.edges {
        if a == b && !m.is_identity() {
            r.push(
                Finding::error("degeneracy", "g on a repeated open is not the identity")
                    .at_tuple(&[a, b]),
            );
        }
    }
    for t in g.cover.nondegenerate_tuples(3) {
        let (a, b, c) = (t[0], t[1], t[2]);
        let diff = g.g(b, c).mul(&g.g(a, b)).sub(&g.g(a, c));
        if !diff.is_zero() {
            r.push(
                Finding::error("cocycle", "cocycle condition fails")
                    .at_tuple(&t)
                    .with_nnz(diff.nnz()),
            );
        }
    }
    r
}

/// Checks `h_{αβ} λ_α = λ_β g_{αβ}` on every valid pair; rejects singular `λ_α`.
pub fn validate_gauge<F: Scalar>(
    lambda: &[Matrix<F>],
    g: &PrincipalCocycle<F>,
    h: &PrincipalCocycle<F>,
) -> Result<Report> {
    if g.cover != h.cover || g.n != h.n {
        return Err(Error::InvalidInput(
            "gauge endpoints live on different covers or ranks".into(),
        ));
    }
    inverses(lambda, g.n, g.cover.len())?;
    let mut r = Report::new();
    for t in g.cover.nondegenerate_tuples(2) {
        let (a, b) = (t[0], t[1]);
        let diff = h.g(a, b).mul(&lambda[a]).sub(&lambda[b].mul(&g.g(a, b)));
        if !diff.is_zero() {
            r.push(
                Finding::error("gauge", "gauge relation fails")
                    .at_tuple(&t)
                    .with_nnz(diff.nnz()),
            );
        }
    }
    Ok(r)
}
