//! Homology, harmonic decompositions and constructive homotopy inverses.
//!
//! Every complex over a field splits degreewise as `B^n ⊕ H^n ⊕ L^n`, where
//! `B^n = im d^{n-1}`, `B^n ⊕ H^n = ker d^n` and `d^n` maps `L^n` isomorphically
//! onto `B^{n+1}`. The chosen bases give explicit inclusion and projection
//! maps to homology together with a contraction of the rest.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homalg::complex::{Complex, Cx};
use crate::homalg::elementary::ElementaryDecl;
use crate::homalg::graded::GradedMap;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// The basis `P_n = [B^n | H^n | L^n]` of one degree, with its inverse.
#[derive(Clone, Debug)]
pub struct DegreeSplitting<F> {
    /// Change of basis from `(b, h, l)` coordinates to standard coordinates.
    pub basis: Matrix<F>,
    /// Inverse of `basis`.
    pub inverse: Matrix<F>,
    /// `dim B^n`.
    pub boundaries: usize,
    /// `dim H^n`.
    pub homology: usize,
    /// `dim L^n`.
    pub complement: usize,
}

/// Harmonic decomposition of a complex, one splitting per degree of its support.
#[derive(Clone, Debug)]
pub struct Harmonic<F> {
    complex: Cx<F>,
    degrees: Vec<DegreeSplitting<F>>,
    homology: Cx<F>,
}

impl<F: Scalar> Harmonic<F> {
    /// Computes the decomposition.
    ///
    /// `L^n` completes `ker d^n` with standard basis vectors and
    /// `B^{n+1} = d^n L^n` column by column, so `d^n` sends the `j`-th basis
    /// vector of `L^n` to the `j`-th basis vector of `B^{n+1}`.
    pub fn new(complex: Cx<F>) -> Self {
        let mut degrees = Vec::new();
        let mut incoming: Matrix<F> = Matrix::zeros(complex.dim(complex.lo()), 0);
        for n in complex.degrees() {
            let dim = complex.dim(n);
            let b = incoming;
            let d = complex.d(n);
            let z = d.kernel();
            let h = Matrix::complement_within(&b, &z);
            let bh = Matrix::hstack(dim, &[&b, &h]);
            let l = bh.extend_to_basis();
            let basis = Matrix::hstack(dim, &[&b, &h, &l]);
            let inverse = basis.inverse().expect("B, H, L span the degree");
            incoming = d.mul(&l);
            degrees.push(DegreeSplitting {
                basis,
                inverse,
                boundaries: b.cols(),
                homology: h.cols(),
                complement: l.cols(),
            });
        }
        let lo = complex.lo();
        let dims: Vec<usize> = degrees.iter().map(|s| s.homology).collect();
        let diffs = (1..dims.len())
            .map(|k| Matrix::zeros(dims[k], dims[k - 1]))
            .collect();
        let homology = Arc::new(Complex::new(lo, dims, diffs).expect("zero differentials"));
        Harmonic {
            complex,
            degrees,
            homology,
        }
    }

    /// The decomposed complex.
    pub fn complex(&self) -> &Cx<F> {
        &self.complex
    }

    /// Homology as a complex with zero differential.
    pub fn homology(&self) -> &Cx<F> {
        &self.homology
    }

    /// Splitting of degree `n`, if `n` is in the support.
    pub fn degree(&self, n: i64) -> Option<&DegreeSplitting<F>> {
        if self.complex.is_zero() || n < self.complex.lo() || n > self.complex.hi() {
            None
        } else {
            Some(&self.degrees[(n - self.complex.lo()) as usize])
        }
    }

    /// True when every homology group vanishes.
    pub fn is_acyclic(&self) -> bool {
        self.degrees.iter().all(|s| s.homology == 0)
    }

    /// Inclusion `ι: H -> C` of the chosen cycle representatives.
    pub fn iota(&self) -> GradedMap<F> {
        GradedMap::from_fn(self.homology.clone(), self.complex.clone(), 0, |n| {
            let s = self.degree(n)?;
            Some(
                s.basis
                    .submatrix(0, s.basis.rows(), s.boundaries, s.boundaries + s.homology),
            )
        })
        .expect("shapes match")
    }

    /// Projection `π: C -> H`, with `π ι = id`.
    pub fn pi(&self) -> GradedMap<F> {
        GradedMap::from_fn(self.complex.clone(), self.homology.clone(), 0, |n| {
            let s = self.degree(n)?;
            Some(
                s.inverse
                    .submatrix(s.boundaries, s.boundaries + s.homology, 0, s.inverse.cols()),
            )
        })
        .expect("shapes match")
    }

    /// Contraction `s` of degree `-1` with `∂s = ι π - id`.
    ///
    /// It sends the `j`-th basis vector of `B^{n+1}` to minus the `j`-th basis
    /// vector of `L^n` and vanishes on `H` and `L`.
    pub fn contraction(&self) -> GradedMap<F> {
        let c = self.complex.clone();
        GradedMap::from_fn(c.clone(), c.clone(), -1, |n| {
            let src = self.degree(n)?;
            let tgt = self.degree(n - 1)?;
            let mut coords = Matrix::zeros(tgt.basis.cols(), src.basis.cols());
            let off = tgt.boundaries + tgt.homology;
            for j in 0..src.boundaries {
                coords.set(off + j, j, F::one().neg());
            }
            Some(tgt.basis.mul(&coords).mul(&src.inverse))
        })
        .expect("shapes match")
    }

    /// The map induced on homology by a chain map `f` out of this complex
    /// into the complex decomposed by `target`.
    pub fn induced(&self, f: &GradedMap<F>, target: &Harmonic<F>) -> Result<GradedMap<F>> {
        target.pi().compose(&f.compose(&self.iota())?)
    }
}

/// Homology in one degree: its dimension and cycle representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology<F> {
    /// `dim H^n`.
    pub dim: usize,
    /// Columns are cycles in `C^n` whose classes form a basis of `H^n`.
    pub basis: Matrix<F>,
}

/// `H^n(C)` with representatives.
pub fn homology<F: Scalar>(c: &Complex<F>, n: i64) -> Homology<F> {
    let z = c.d(n).kernel();
    let b = c.d(n - 1);
    let bcols = b.independent_columns();
    let b = b.select_columns(&bcols);
    let basis = Matrix::complement_within(&b, &z);
    Homology {
        dim: basis.cols(),
        basis,
    }
}

/// True when `f` is a chain map inducing isomorphisms on all homology.
pub fn is_quasi_iso<F: Scalar>(f: &GradedMap<F>) -> Result<bool> {
    if !f.is_chain_map()? {
        return Ok(false);
    }
    let hs = Harmonic::new(f.source().clone());
    let ht = Harmonic::new(f.target().clone());
    let induced = hs.induced(f, &ht)?;
    Ok(induced.is_degreewise_invertible())
}

/// Homotopy inverse of a quasi-isomorphism `f: B -> A`.
#[derive(Clone, Debug)]
pub struct WhiteheadInverse<F> {
    /// Chain map `g: A -> B`.
    pub g: GradedMap<F>,
    /// Degree `-1` map on `B` with `∂h_b = g f - id_B`.
    pub h_source: GradedMap<F>,
    /// Degree `-1` map on `A` with `∂h_a = f g - id_A`.
    pub h_target: GradedMap<F>,
}

/// Inverts a quasi-isomorphism up to explicit homotopies.
///
/// With harmonic decompositions of both sides, `g = ι_B H(f)^{-1} π_A`,
/// `h_b = s_B - g f s_B` and `h_a = s_A - s_A f g`.
pub fn whitehead_inverse<F: Scalar>(f: &GradedMap<F>) -> Result<WhiteheadInverse<F>> {
    if f.degree() != 0 {
        return Err(Error::WrongDegree {
            expected: 0,
            found: f.degree(),
        });
    }
    if !f.is_chain_map()? {
        return Err(Error::NoInverse("map is not a chain map".into()));
    }
    let hb = Harmonic::new(f.source().clone());
    let ha = Harmonic::new(f.target().clone());
    let induced = hb.induced(f, &ha)?;
    if !induced.is_degreewise_invertible() {
        return Err(Error::NoInverse(
            "map does not induce an isomorphism on homology".into(),
        ));
    }
    let hinv = induced.inverse()?;
    let g = hb.iota().compose(&hinv.compose(&ha.pi())?)?;
    let gf = g.compose(f)?;
    let fg = f.compose(&g)?;
    let sb = hb.contraction();
    let sa = ha.contraction();
    let h_source = sb.sub(&gf.compose(&sb)?)?;
    let h_target = sa.sub(&sa.compose(&fg)?)?;
    Ok(WhiteheadInverse {
        g,
        h_source,
        h_target,
    })
}

/// Splitting of an acyclic complex as an elementary complex.
#[derive(Clone, Debug)]
pub struct AcyclicSplitting<F> {
    /// Declaration of the elementary model.
    pub decl: ElementaryDecl,
    /// Isomorphism from `build_elementary(decl)` to the input.
    pub iso: GradedMap<F>,
    /// Inverse of `iso`.
    pub iso_inv: GradedMap<F>,
}

/// Writes an acyclic complex as an elementary one: one span of dimension
/// `dim L^n` placed at each degree `n`, with isomorphism columns `[B^n | L^n]`.
pub fn split_acyclic<F: Scalar>(c: &Cx<F>) -> Result<AcyclicSplitting<F>> {
    let h = Harmonic::new(c.clone());
    if !h.is_acyclic() {
        return Err(Error::NotSplittable("complex has nonzero homology".into()));
    }
    let decl = ElementaryDecl::new(
        c.degrees()
            .filter_map(|n| {
                h.degree(n)
                    .filter(|s| s.complement > 0)
                    .map(|s| (s.complement, n))
            })
            .collect(),
    )?;
    let e = Arc::new(decl.build::<F>());
    let iso = GradedMap::from_fn(e.clone(), c.clone(), 0, |n| {
        h.degree(n).map(|s| s.basis.clone())
    })?;
    let iso_inv = GradedMap::from_fn(c.clone(), e, 0, |n| h.degree(n).map(|s| s.inverse.clone()))?;
    Ok(AcyclicSplitting { decl, iso, iso_inv })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn cx(lo: i64, dims: Vec<usize>, diffs: Vec<Matrix<Q>>) -> Cx<Q> {
        Arc::new(Complex::new(lo, dims, diffs).unwrap())
    }

    #[test]
    fn homology_examples() {
        let span = cx(0, vec![1, 1], vec![Matrix::identity(1)]);
        assert_eq!(homology(&span, 0).dim, 0);
        assert_eq!(homology(&span, 1).dim, 0);
        let flat = cx(0, vec![2, 3], vec![Matrix::zeros(3, 2)]);
        assert_eq!((homology(&flat, 0).dim, homology(&flat, 1).dim), (2, 3));
        let r1 = cx(0, vec![2, 2], vec![Matrix::from_i64(2, 2, &[1, 2, 2, 4])]);
        assert_eq!((homology(&r1, 0).dim, homology(&r1, 1).dim), (1, 1));
    }

    #[test]
    fn contraction_identity() {
        let c = cx(
            0,
            vec![2, 3, 1],
            vec![
                Matrix::from_i64(3, 2, &[1, 0, 0, 0, 0, 1]),
                Matrix::from_i64(1, 3, &[0, 1, 0]),
            ],
        );
        let h = Harmonic::new(c.clone());
        let s = h.contraction();
        let lhs = s.hom_differential();
        let rhs = h
            .iota()
            .compose(&h.pi())
            .unwrap()
            .sub(&GradedMap::identity(c))
            .unwrap();
        assert_eq!(lhs, rhs);
        assert!(h
            .pi()
            .compose(&h.iota())
            .unwrap()
            .components()
            .iter()
            .all(|m| m.is_identity()));
    }

    #[test]
    fn whitehead_on_inclusion() {
        let c = cx(0, vec![1], vec![]);
        let big = cx(0, vec![2, 1], vec![Matrix::from_i64(1, 2, &[0, 1])]);
        let f = GradedMap::from_components(
            c.clone(),
            big.clone(),
            0,
            vec![(0, Matrix::from_i64(2, 1, &[1, 0]))],
        )
        .unwrap();
        assert!(is_quasi_iso(&f).unwrap());
        let w = whitehead_inverse(&f).unwrap();
        let gf = w.g.compose(&f).unwrap();
        assert_eq!(
            w.h_source.hom_differential(),
            gf.sub(&GradedMap::identity(c)).unwrap()
        );
        let fg = f.compose(&w.g).unwrap();
        assert_eq!(
            w.h_target.hom_differential(),
            fg.sub(&GradedMap::identity(big)).unwrap()
        );
    }

    #[test]
    fn split_three_term() {
        let c = cx(
            0,
            vec![1, 2, 1],
            vec![
                Matrix::from_i64(2, 1, &[1, 1]),
                Matrix::from_i64(1, 2, &[1, -1]),
            ],
        );
        let s = split_acyclic(&c).unwrap();
        assert_eq!(s.decl.summands(), &[(1, 0), (1, 1)]);
        assert!(s.iso.is_isomorphism());
        assert!(s
            .iso
            .compose(&s.iso_inv)
            .unwrap()
            .components()
            .iter()
            .all(|m| m.is_identity()));
    }
}
