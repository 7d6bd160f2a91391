//! Graded maps between complexes: elements of the hom-complex.
//!
//! A degree-`n` map `f: C -> D` is a family `f^m: C^m -> D^{m+n}`. The hom
//! differential is `(∂f)^m = f^{m+1} d_C^m + (-1)^{n+1} d_D^{m+n} f^m`, and
//! composition satisfies `∂(g∘f) = (-1)^{|f|} ∂g∘f + g∘∂f`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homalg::complex::{Complex, Cx};
use crate::matrix::Matrix;
use crate::scalar::{sign, Scalar};

/// A degree-`degree` family of matrices from `source` to `target`.
///
/// `components()[k]` is `f^{source.lo() + k}`, of shape
/// `target.dim(m + degree) x source.dim(m)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GradedMap<F> {
    source: Cx<F>,
    target: Cx<F>,
    degree: i64,
    comps: Vec<Matrix<F>>,
}

/// True when two shared complexes are the same complex (by pointer or value).
pub fn same_complex<F: Scalar>(a: &Cx<F>, b: &Cx<F>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<F: Scalar> GradedMap<F> {
    /// The zero map of the given degree.
    pub fn zero(source: Cx<F>, target: Cx<F>, degree: i64) -> Self {
        let comps = source
            .degrees()
            .map(|m| Matrix::zeros(target.dim(m + degree), source.dim(m)))
            .collect();
        GradedMap {
            source,
            target,
            degree,
            comps,
        }
    }

    /// The identity chain map.
    pub fn identity(c: Cx<F>) -> Self {
        let comps = c.degrees().map(|m| Matrix::identity(c.dim(m))).collect();
        GradedMap {
            source: c.clone(),
            target: c,
            degree: 0,
            comps,
        }
    }

    /// The differential of `c` viewed as a degree-1 self-map.
    pub fn differential(c: Cx<F>) -> Self {
        let comps = c.degrees().map(|m| c.d(m)).collect();
        GradedMap {
            source: c.clone(),
            target: c,
            degree: 1,
            comps,
        }
    }

    /// Builds a map from components indexed by source degree; absent degrees are zero.
    pub fn from_fn(
        source: Cx<F>,
        target: Cx<F>,
        degree: i64,
        mut f: impl FnMut(i64) -> Option<Matrix<F>>,
    ) -> Result<Self> {
        let mut comps = Vec::new();
        for m in source.degrees() {
            let shape = (target.dim(m + degree), source.dim(m));
            match f(m) {
                Some(mat) => {
                    if mat.shape() != shape {
                        return Err(Error::MalformedMap(format!(
                            "component in degree {m} has shape {:?}, expected {:?}",
                            mat.shape(),
                            shape
                        )));
                    }
                    comps.push(mat);
                }
                None => comps.push(Matrix::zeros(shape.0, shape.1)),
            }
        }
        Ok(GradedMap {
            source,
            target,
            degree,
            comps,
        })
    }

    /// Builds a map from `(source degree, matrix)` pairs; degrees outside the
    /// source support must carry empty matrices.
    pub fn from_components(
        source: Cx<F>,
        target: Cx<F>,
        degree: i64,
        parts: Vec<(i64, Matrix<F>)>,
    ) -> Result<Self> {
        for (m, mat) in &parts {
            if !source.degrees().contains(m) && mat.cols() != 0 {
                return Err(Error::MalformedMap(format!(
                    "component in degree {m} lies outside the source support"
                )));
            }
            if !source.degrees().contains(m) && mat.rows() != target.dim(m + degree) {
                return Err(Error::MalformedMap(format!(
                    "component in degree {m} has the wrong number of rows"
                )));
            }
        }
        let mut lookup: std::collections::BTreeMap<i64, Matrix<F>> =
            std::collections::BTreeMap::new();
        for (m, mat) in parts {
            if lookup.insert(m, mat).is_some() {
                return Err(Error::MalformedMap(format!(
                    "duplicate component in degree {m}"
                )));
            }
        }
        Self::from_fn(source, target, degree, |m| lookup.remove(&m))
    }

    /// Source complex.
    pub fn source(&self) -> &Cx<F> {
        &self.source
    }

    /// Target complex.
    pub fn target(&self) -> &Cx<F> {
        &self.target
    }

    /// Degree.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Components over the source support.
    pub fn components(&self) -> &[Matrix<F>] {
        &self.comps
    }

    /// `f^m` (an empty-shaped zero matrix outside the source support).
    pub fn component(&self, m: i64) -> Matrix<F> {
        match self.component_ref(m) {
            Some(c) => c.clone(),
            None => Matrix::zeros(self.target.dim(m + self.degree), self.source.dim(m)),
        }
    }

    /// Borrowed `f^m` inside the source support.
    pub fn component_ref(&self, m: i64) -> Option<&Matrix<F>> {
        if self.source.is_zero() || m < self.source.lo() || m > self.source.hi() {
            None
        } else {
            Some(&self.comps[(m - self.source.lo()) as usize])
        }
    }

    /// True when all components vanish.
    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    /// Total number of nonzero entries over all components.
    pub fn nnz(&self) -> usize {
        self.comps.iter().map(|c| c.nnz()).sum()
    }

    /// Same source, target and degree.
    pub fn same_shape(&self, other: &GradedMap<F>) -> bool {
        self.degree == other.degree
            && same_complex(&self.source, &other.source)
            && same_complex(&self.target, &other.target)
    }

    fn check_same_shape(&self, other: &GradedMap<F>) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::Composition(format!(
                "cannot add maps of degrees {} and {} with different endpoints",
                self.degree, other.degree
            )))
        }
    }

    /// Sum of two maps with the same endpoints and degree.
    pub fn add(&self, other: &GradedMap<F>) -> Result<Self> {
        self.check_same_shape(other)?;
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            comps,
        })
    }

    /// Difference of two maps with the same endpoints and degree.
    pub fn sub(&self, other: &GradedMap<F>) -> Result<Self> {
        self.check_same_shape(other)?;
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            comps,
        })
    }

    /// In-place sum.
    pub fn add_assign(&mut self, other: &GradedMap<F>) -> Result<()> {
        self.check_same_shape(other)?;
        for (a, b) in self.comps.iter_mut().zip(&other.comps) {
            a.add_assign(b);
        }
        Ok(())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        self.map_components(|c| c.neg())
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &F) -> Self {
        self.map_components(|m| m.scale(c))
    }

    /// `(-1)^e` times the map.
    pub fn signed(&self, e: i64) -> Self {
        if e.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    fn map_components(&self, f: impl Fn(&Matrix<F>) -> Matrix<F>) -> Self {
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            comps: self.comps.iter().map(f).collect(),
        }
    }

    /// Composite `self ∘ f` (apply `f` first); degrees add.
    pub fn compose(&self, f: &GradedMap<F>) -> Result<Self> {
        if !same_complex(&f.target, &self.source) {
            return Err(Error::Composition(
                "target of the inner map differs from the source of the outer map".into(),
            ));
        }
        let degree = self.degree + f.degree;
        let source = f.source.clone();
        let target = self.target.clone();
        let comps = source
            .degrees()
            .map(|m| {
                let inner = &f.comps[(m - source.lo()) as usize];
                match self.component_ref(m + f.degree) {
                    Some(outer) => outer.mul(inner),
                    None => Matrix::zeros(target.dim(m + degree), source.dim(m)),
                }
            })
            .collect();
        Ok(GradedMap {
            source,
            target,
            degree,
            comps,
        })
    }

    /// Hom differential `(∂f)^m = f^{m+1} d_C^m + (-1)^{n+1} d_D^{m+n} f^m`.
    pub fn hom_differential(&self) -> Self {
        let n = self.degree;
        let s: F = sign(n + 1);
        let comps = self
            .source
            .degrees()
            .map(|m| {
                let mut out = Matrix::zeros(self.target.dim(m + n + 1), self.source.dim(m));
                if let (Some(next), Some(dc)) = (self.component_ref(m + 1), self.source.d_ref(m)) {
                    out.add_assign(&next.mul(dc));
                }
                if let Some(dd) = self.target.d_ref(m + n) {
                    let cur = &self.comps[(m - self.source.lo()) as usize];
                    out.add_assign(&dd.mul(cur).scale(&s));
                }
                out
            })
            .collect();
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: n + 1,
            comps,
        }
    }

    /// True when `∂f = 0` for a degree-0 map.
    pub fn is_chain_map(&self) -> Result<bool> {
        if self.degree != 0 {
            return Err(Error::WrongDegree {
                expected: 0,
                found: self.degree,
            });
        }
        Ok(self.hom_differential().is_zero())
    }

    /// True when every component is square and invertible.
    pub fn is_degreewise_invertible(&self) -> bool {
        Complex::joint_range(&self.source, &self.target).map_or(true, |(lo, hi)| {
            (lo..=hi).all(|m| {
                let c = self.component(m);
                c.rows() == c.cols() && (c.rows() == 0 || c.is_invertible())
            })
        })
    }

    /// True for a chain map that is invertible in every degree.
    pub fn is_isomorphism(&self) -> bool {
        self.degree == 0 && self.hom_differential().is_zero() && self.is_degreewise_invertible()
    }

    /// Degreewise inverse of an isomorphism.
    pub fn inverse(&self) -> Result<Self> {
        if self.degree != 0 {
            return Err(Error::WrongDegree {
                expected: 0,
                found: self.degree,
            });
        }
        if !self.is_degreewise_invertible() {
            return Err(Error::NotInvertible(
                "map is not invertible in every degree".into(),
            ));
        }
        GradedMap::from_fn(self.target.clone(), self.source.clone(), 0, |m| {
            let c = self.component(m);
            Some(if c.rows() == 0 {
                Matrix::zeros(0, 0)
            } else {
                c.inverse().expect("checked invertible")
            })
        })
    }

    /// Replaces source and target by equal complexes (used to re-share `Arc`s).
    pub fn with_endpoints(&self, source: Cx<F>, target: Cx<F>) -> Result<Self> {
        if !same_complex(&source, &self.source) || !same_complex(&target, &self.target) {
            return Err(Error::Composition("replacement endpoints differ".into()));
        }
        Ok(GradedMap {
            source,
            target,
            degree: self.degree,
            comps: self.comps.clone(),
        })
    }

    /// Reinterprets the components as a map between other complexes with the
    /// same dimensions (the differentials may differ).
    pub fn retarget(&self, source: Cx<F>, target: Cx<F>) -> Result<Self> {
        GradedMap::from_fn(source, target, self.degree, |m| Some(self.component(m)))
    }
}
