//! Simplices of the dg-nerve of the dg-category of complexes.
//!
//! A `p`-simplex assigns a complex `x_i` to each vertex and, to each face
//! `I = {i_0 < ... < i_k}` with `k ≥ 1`, a map `f_I: x_{i_k} -> x_{i_0}` of
//! degree `1 - k` such that
//!
//! `∂f_I = Σ_{j=1}^{k-1} (-1)^{j-1} f_{I∖i_j} + Σ_{j=1}^{k-1} (-1)^{k(j-1)+1} f_{i_0..i_j} ∘ f_{i_j..i_k}`.
//!
//! For `k = 1` this says `f_I` is a chain map; for `k = 2` it reads
//! `∂f_{012} = f_{02} - f_{01} ∘ f_{12}`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::homalg::{is_quasi_iso, same_complex, Cx, GradedMap};
use crate::report::{Finding, Report};
use crate::scalar::{sign_i64, Scalar};
use crate::simplex_core::{all_faces, Face};

/// A `p`-simplex of the dg-nerve with vertices `0..=p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgSimplex<F> {
    objects: Vec<Cx<F>>,
    maps: BTreeMap<Face, GradedMap<F>>,
}

/// The degree of `f_I` for a face with `n` vertices.
pub fn face_degree(n: usize) -> i64 {
    2 - n as i64
}

impl<F: Scalar> DgSimplex<F> {
    /// Builds a simplex, checking that every face with at least two vertices
    /// carries a map with the right endpoints and degree.
    pub fn new(objects: Vec<Cx<F>>, maps: BTreeMap<Face, GradedMap<F>>) -> Result<Self> {
        if objects.is_empty() {
            return Err(Error::InvalidInput(
                "a simplex needs at least one vertex".into(),
            ));
        }
        let p = objects.len() - 1;
        for face in all_faces(p).into_iter().filter(|f| f.len() >= 2) {
            let Some(m) = maps.get(&face) else {
                return Err(Error::Incomplete(format!("missing label on face {face}")));
            };
            check_label(&objects, &face, m)?;
        }
        if let Some(extra) = maps.keys().find(|f| f.ambient() != p || f.len() < 2) {
            return Err(Error::InvalidInput(format!("unexpected label on {extra}")));
        }
        Ok(DgSimplex { objects, maps })
    }

    /// Builds a simplex from a labelling function over faces with at least two vertices.
    pub fn from_fn(
        objects: Vec<Cx<F>>,
        mut label: impl FnMut(&Face) -> Result<GradedMap<F>>,
    ) -> Result<Self> {
        let p = objects
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::InvalidInput("empty simplex".into()))?;
        let mut maps = BTreeMap::new();
        for face in all_faces(p).into_iter().filter(|f| f.len() >= 2) {
            let m = label(&face)?;
            maps.insert(face, m);
        }
        DgSimplex::new(objects, maps)
    }

    /// A 0-simplex.
    pub fn point(c: Cx<F>) -> Self {
        DgSimplex {
            objects: vec![c],
            maps: BTreeMap::new(),
        }
    }

    /// A 1-simplex `f: b -> a` (vertex 0 is `a`, vertex 1 is `b`).
    pub fn edge(f: GradedMap<F>) -> Result<Self> {
        let mut maps = BTreeMap::new();
        maps.insert(Face::full(1), f.clone());
        DgSimplex::new(vec![f.target().clone(), f.source().clone()], maps)
    }

    /// Dimension `p`.
    pub fn dim(&self) -> usize {
        self.objects.len() - 1
    }

    /// Complexes at the vertices.
    pub fn objects(&self) -> &[Cx<F>] {
        &self.objects
    }

    /// Complex at vertex `i`.
    pub fn object(&self, i: usize) -> &Cx<F> {
        &self.objects[i]
    }

    /// Stored labels (faces with at least two vertices).
    pub fn maps(&self) -> &BTreeMap<Face, GradedMap<F>> {
        &self.maps
    }

    /// `f_I`; for a single vertex this is the differential of its complex.
    pub fn label(&self, face: &Face) -> GradedMap<F> {
        if face.len() == 1 {
            GradedMap::differential(self.objects[face.first()].clone())
        } else {
            self.maps[face].clone()
        }
    }

    /// Borrowed `f_I` for faces with at least two vertices.
    pub fn label_ref(&self, face: &Face) -> &GradedMap<F> {
        &self.maps[face]
    }

    /// The residual of the defining relation on `face` (zero when it holds).
    pub fn residual(&self, face: &Face) -> GradedMap<F> {
        dg_residual(face.len(), |pos: &[usize]| {
            let f = Face::new(
                pos.iter().map(|&k| face.vertices()[k]).collect(),
                self.dim(),
            )
            .expect("subface");
            self.maps[&f].clone()
        })
    }

    /// Checks the relation on every face.
    pub fn validate(&self) -> Report {
        let faces: Vec<Face> = self.maps.keys().cloned().collect();
        let findings: Vec<Finding> = faces
            .par_iter()
            .filter_map(|f| {
                let r = self.residual(f);
                (!r.is_zero()).then(|| {
                    Finding::error("dg-relation", "the dg-nerve relation fails")
                        .at_cell(f.to_string())
                        .with_nnz(r.nnz())
                })
            })
            .collect();
        let mut report = Report::new();
        for f in findings {
            report.push(f);
        }
        report
    }

    /// The sub-simplex spanned by the vertices of `face`, reindexed from 0.
    pub fn restrict(&self, face: &Face) -> DgSimplex<F> {
        let q = face.dim();
        let objects = face
            .vertices()
            .iter()
            .map(|&v| self.objects[v].clone())
            .collect();
        let mut maps = BTreeMap::new();
        for sub in all_faces(q).into_iter().filter(|f| f.len() >= 2) {
            let outer = Face::new(
                sub.vertices().iter().map(|&k| face.vertices()[k]).collect(),
                self.dim(),
            )
            .expect("subface");
            maps.insert(sub, self.maps[&outer].clone());
        }
        DgSimplex { objects, maps }
    }

    /// Face map `d_i`: forget vertex `i`.
    pub fn face(&self, i: usize) -> Result<DgSimplex<F>> {
        if i > self.dim() {
            return Err(Error::InvalidIndex(format!(
                "face index {i} exceeds {}",
                self.dim()
            )));
        }
        let facet = Face::full(self.dim())
            .delete(i)
            .ok_or_else(|| Error::InvalidIndex(format!("cannot take face {i} of a 0-simplex")))?;
        Ok(self.restrict(&facet))
    }

    /// Degeneracy map `s_i`: repeat vertex `i`.
    ///
    /// The new edge `{i, i+1}` is labelled by the identity and every larger
    /// face containing both copies by zero.
    pub fn degeneracy(&self, i: usize) -> Result<DgSimplex<F>> {
        let p = self.dim();
        if i > p {
            return Err(Error::InvalidIndex(format!(
                "degeneracy index {i} exceeds {p}"
            )));
        }
        let s = |j: usize| if j <= i { j } else { j - 1 };
        let objects: Vec<Cx<F>> = (0..=p + 1).map(|j| self.objects[s(j)].clone()).collect();
        let mut maps = BTreeMap::new();
        for face in all_faces(p + 1).into_iter().filter(|f| f.len() >= 2) {
            let label = if face.contains(i) && face.contains(i + 1) {
                if face.len() == 2 {
                    GradedMap::identity(objects[i].clone())
                } else {
                    GradedMap::zero(
                        objects[face.last()].clone(),
                        objects[face.first()].clone(),
                        face_degree(face.len()),
                    )
                }
            } else {
                let image = Face::new(face.vertices().iter().map(|&v| s(v)).collect(), p)
                    .expect("injective on face");
                self.maps[&image].clone()
            };
            maps.insert(face, label);
        }
        Ok(DgSimplex { objects, maps })
    }

    /// True when every edge label is a quasi-isomorphism.
    pub fn in_core(&self) -> bool {
        self.maps
            .iter()
            .filter(|(f, _)| f.len() == 2)
            .all(|(_, m)| is_quasi_iso(m).unwrap_or(false))
    }

    /// True when all labels on faces with three or more vertices vanish and
    /// every edge is an isomorphism.
    pub fn is_ordinary_core(&self) -> bool {
        self.maps.iter().all(|(f, m)| {
            if f.len() == 2 {
                m.is_isomorphism()
            } else {
                m.is_zero()
            }
        })
    }
}

fn check_label<F: Scalar>(objects: &[Cx<F>], face: &Face, m: &GradedMap<F>) -> Result<()> {
    if m.degree() != face_degree(face.len()) {
        return Err(Error::MalformedMap(format!(
            "label on {face} has degree {}, expected {}",
            m.degree(),
            face_degree(face.len())
        )));
    }
    if !same_complex(m.source(), &objects[face.last()])
        || !same_complex(m.target(), &objects[face.first()])
    {
        return Err(Error::MalformedMap(format!(
            "label on {face} does not run from its last vertex to its first"
        )));
    }
    Ok(())
}

/// The dg-nerve residual on a simplex with `n` vertices, given the labels of
/// its sub-simplices by vertex positions (`label(&[a, b, ...])`).
///
/// Returns `∂f - Σ (-1)^{j-1} f_{∖j} - Σ (-1)^{k(j-1)+1} f_{0..j} ∘ f_{j..k}`, `k = n - 1`.
pub fn dg_residual<F: Scalar>(n: usize, label: impl Fn(&[usize]) -> GradedMap<F>) -> GradedMap<F> {
    let all: Vec<usize> = (0..n).collect();
    let top = label(&all);
    let mut r = top.hom_differential();
    let k = n as i64 - 1;
    for j in 1..n - 1 {
        let mut sub = all.clone();
        sub.remove(j);
        let term = label(&sub).signed(j as i64 - 1);
        r = r.sub(&term).expect("faces share endpoints");
        let front = label(&all[..=j]);
        let back = label(&all[j..]);
        let prod = front
            .compose(&back)
            .expect("composable")
            .signed(k * (j as i64 - 1) + 1);
        r = r.sub(&prod).expect("faces share endpoints");
    }
    r
}

/// True when a vertex tuple repeats some entry in adjacent positions.
pub fn is_degenerate(t: &[usize]) -> bool {
    t.windows(2).any(|w| w[0] == w[1])
}

/// Labels of the nondegenerate simplices of a finite simplicial set whose
/// simplices are written as vertex tuples, as in a Čech nerve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpineData<F> {
    /// Complex at each vertex.
    pub objects: BTreeMap<usize, Cx<F>>,
    /// `f_K` for each nondegenerate simplex `K` with at least two vertices.
    pub maps: BTreeMap<Vec<usize>, GradedMap<F>>,
}

impl<F: Scalar> SpineData<F> {
    /// `f_K`, using the forced values on degenerate tuples: the identity for
    /// a repeated vertex and zero for longer degenerate tuples.
    pub fn label(&self, t: &[usize]) -> Result<GradedMap<F>> {
        let obj = |v: &usize| {
            self.objects
                .get(v)
                .cloned()
                .ok_or_else(|| Error::Incomplete(format!("vertex {v} has no complex")))
        };
        if t.len() < 2 {
            return Err(Error::InvalidInput(
                "labels need at least two vertices".into(),
            ));
        }
        if is_degenerate(t) {
            let first = obj(&t[0])?;
            return Ok(if t.len() == 2 {
                GradedMap::identity(first)
            } else {
                GradedMap::zero(obj(t.last().unwrap())?, first, face_degree(t.len()))
            });
        }
        self.maps
            .get(t)
            .cloned()
            .ok_or_else(|| Error::Incomplete(format!("simplex {t:?} has no label")))
    }

    /// The dg-nerve simplex assigned to the tuple `t`.
    pub fn simplex(&self, t: &[usize]) -> Result<DgSimplex<F>> {
        let objects = t
            .iter()
            .map(|v| {
                self.objects
                    .get(v)
                    .cloned()
                    .ok_or_else(|| Error::Incomplete(format!("vertex {v} has no complex")))
            })
            .collect::<Result<Vec<_>>>()?;
        DgSimplex::from_fn(objects, |face| {
            let sub: Vec<usize> = face.vertices().iter().map(|&k| t[k]).collect();
            self.label(&sub)
        })
    }

    /// Residual of the defining relation on the top face of `t`.
    pub fn top_residual(&self, t: &[usize]) -> Result<GradedMap<F>> {
        for k in 0..t.len() {
            for l in k + 1..t.len() {
                self.label(&t[k..=l])?;
            }
        }
        let sub_labels = |pos: &[usize]| {
            let sub: Vec<usize> = pos.iter().map(|&k| t[k]).collect();
            self.label(&sub).expect("checked above")
        };
        if t.len() >= 3 {
            for j in 1..t.len() - 1 {
                let mut sub = t.to_vec();
                sub.remove(j);
                self.label(&sub)?;
            }
        }
        Ok(dg_residual(t.len(), sub_labels))
    }
}

/// Dg-nerve simplices keyed by their vertex tuples.
pub type SimplexFamily<F> = BTreeMap<Vec<usize>, DgSimplex<F>>;

/// Extends spine data on the nondegenerate simplices of a finite simplicial
/// set to a dg-nerve simplex for every simplex.
///
/// `simplices` lists the nondegenerate simplices (tuples of at least one
/// vertex); faces are obtained by deleting entries. The report lists each
/// simplex whose top relation fails.
pub fn extend_spine<F: Scalar>(
    simplices: &BTreeSet<Vec<usize>>,
    data: &SpineData<F>,
) -> Result<(SimplexFamily<F>, Report)> {
    let mut out = BTreeMap::new();
    let mut report = Report::new();
    for t in simplices {
        if is_degenerate(t) {
            return Err(Error::InvalidInput(format!("simplex {t:?} is degenerate")));
        }
        if t.len() >= 2 {
            let r = data.top_residual(t)?;
            if !r.is_zero() {
                report.push(
                    Finding::error(
                        "dg-relation",
                        "the labelling relation fails on this simplex",
                    )
                    .at_tuple(t)
                    .with_bidegree(t.len() as i64 - 1, face_degree(t.len()))
                    .with_nnz(r.nnz()),
                );
            }
        }
        out.insert(t.clone(), data.simplex(t)?);
    }
    Ok((out, report))
}

/// Sign used when comparing the dg-nerve relation with the Čech form:
/// `(-1)^{k(j-1)}`, equal to `(-1)^{(1-j)(k-j)}`.
pub fn nerve_sign(k: i64, j: i64) -> i64 {
    sign_i64(k * (j - 1))
}
