//! GTT-labellings of the pair subdivision of `Δ[p]`.
//!
//! A vertex `(σ, σ)` carries a dg-nerve simplex on the vertices of `σ`, and a
//! cell `(τ, σ)` with `τ ⊊ σ` carries, for each vertex `j` of `τ`, an
//! elementary complement `C_j^{⊥σ}(τ)` with a trivialisation
//! `θ: C_j(τ) ⊕ C_j^{⊥σ}(τ) -> C_j(σ)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::dg_nerve::DgSimplex;
use crate::error::{Error, Result};
use crate::homalg::{
    blocks::block_of, direct_sum, elementary_morphism, is_elementary, same_complex, Complex, Cx,
    ElementaryDecl, GradedMap,
};
use crate::report::{Finding, Report};
use crate::scalar::Scalar;
use crate::simplex_core::{all_faces, Face, PairCell};

/// An elementary complement together with its trivialisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complement<F> {
    /// The complement complex.
    pub complex: Cx<F>,
    /// Its declared elementary shape.
    pub decl: ElementaryDecl,
    /// `θ: C(τ) ⊕ complement -> C(σ)`.
    pub theta: GradedMap<F>,
    /// `θ^{-1}`.
    pub theta_inv: GradedMap<F>,
}

impl<F: Scalar> Complement<F> {
    /// The zero complement with the identity trivialisation of `c`.
    pub fn zero(c: &Cx<F>) -> Self {
        let id = GradedMap::identity(c.clone());
        Complement {
            complex: Arc::new(Complex::zero()),
            decl: ElementaryDecl::empty(),
            theta: id.clone(),
            theta_inv: id,
        }
    }

    /// A complement whose trivialisation is inverted here.
    pub fn new(complex: Cx<F>, decl: ElementaryDecl, theta: GradedMap<F>) -> Result<Self> {
        let theta_inv = theta.inverse()?;
        Ok(Complement {
            complex,
            decl,
            theta,
            theta_inv,
        })
    }

    /// The complement `complex` placed as a direct summand of `base ⊕ complex`
    /// by the identity trivialisation.
    pub fn identity(base: &Cx<F>, complex: Cx<F>, decl: ElementaryDecl) -> Self {
        let sum: Cx<F> = Arc::new(direct_sum(&[base, &complex]));
        let id = GradedMap::identity(sum);
        Complement {
            complex,
            decl,
            theta: id.clone(),
            theta_inv: id,
        }
    }

    /// The summands `[C(τ), complement]` of the source of `θ`.
    pub fn parts(&self, base: &Cx<F>) -> [Cx<F>; 2] {
        [base.clone(), self.complex.clone()]
    }
}

/// A labelling of the pair subdivision of `Δ[p]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GttLabelling<F> {
    dim: usize,
    vertices: BTreeMap<Face, DgSimplex<F>>,
    cells: BTreeMap<PairCell, Vec<Complement<F>>>,
}

/// All cells `(τ, σ)` with `τ ⊊ σ` of `Δ[p]`.
pub fn proper_cells(p: usize) -> Vec<PairCell> {
    let mut out = Vec::new();
    for sigma in all_faces(p) {
        for tau in sigma.subfaces() {
            if tau != sigma {
                out.push(PairCell::new(tau, sigma.clone()).expect("subface"));
            }
        }
    }
    out.sort();
    out
}

impl<F: Scalar> GttLabelling<F> {
    /// Builds a labelling, checking completeness and the shapes of every
    /// trivialisation.
    pub fn new(
        dim: usize,
        vertices: BTreeMap<Face, DgSimplex<F>>,
        cells: BTreeMap<PairCell, Vec<Complement<F>>>,
    ) -> Result<Self> {
        for sigma in all_faces(dim) {
            let Some(s) = vertices.get(&sigma) else {
                return Err(Error::Incomplete(format!("vertex {sigma} has no label")));
            };
            if s.dim() != sigma.dim() {
                return Err(Error::Shape(format!(
                    "vertex {sigma} is labelled by a {}-simplex",
                    s.dim()
                )));
            }
        }
        if let Some(extra) = vertices.keys().find(|f| f.ambient() != dim) {
            return Err(Error::InvalidInput(format!(
                "unexpected vertex label {extra}"
            )));
        }
        let expected = proper_cells(dim);
        if let Some(extra) = cells
            .keys()
            .find(|c| c.tau().ambient() != dim || c.tau() == c.sigma())
        {
            return Err(Error::InvalidInput(format!(
                "unexpected cell label {extra}"
            )));
        }
        for cell in &expected {
            let Some(comps) = cells.get(cell) else {
                return Err(Error::Incomplete(format!("cell {cell} has no label")));
            };
            if comps.len() != cell.tau().len() {
                return Err(Error::Shape(format!(
                    "cell {cell} needs {} complements, found {}",
                    cell.tau().len(),
                    comps.len()
                )));
            }
            let (tau, sigma) = (&vertices[cell.tau()], &vertices[cell.sigma()]);
            for (m, c) in comps.iter().enumerate() {
                let j = cell.tau().vertices()[m];
                let base = tau.object(m);
                let target = sigma.object(cell.sigma().position(j).expect("subface"));
                let source: Cx<F> = Arc::new(direct_sum(&[base, &c.complex]));
                let ok = c.theta.degree() == 0
                    && c.theta_inv.degree() == 0
                    && same_complex(c.theta.source(), &source)
                    && same_complex(c.theta.target(), target)
                    && same_complex(c.theta_inv.source(), target)
                    && same_complex(c.theta_inv.target(), &source);
                if !ok {
                    return Err(Error::MalformedMap(format!(
                        "trivialisation at vertex {j} of cell {cell} has the wrong endpoints"
                    )));
                }
            }
        }
        Ok(GttLabelling {
            dim,
            vertices,
            cells,
        })
    }

    /// Dimension `p`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertex labels.
    pub fn vertices(&self) -> &BTreeMap<Face, DgSimplex<F>> {
        &self.vertices
    }

    /// Cell labels.
    pub fn cells(&self) -> &BTreeMap<PairCell, Vec<Complement<F>>> {
        &self.cells
    }

    /// The dg-nerve simplex labelling `(σ, σ)`.
    pub fn vertex(&self, sigma: &Face) -> &DgSimplex<F> {
        &self.vertices[sigma]
    }

    /// The label of the central vertex `([p], [p])`.
    pub fn top(&self) -> &DgSimplex<F> {
        &self.vertices[&Face::full(self.dim)]
    }

    /// Complements on the cell `(τ, σ)`, one per vertex of `τ`.
    pub fn cell(&self, tau: &Face, sigma: &Face) -> &[Complement<F>] {
        &self.cells[&PairCell::new(tau.clone(), sigma.clone()).expect("subface")]
    }

    /// `C_j(σ)`.
    pub fn object(&self, sigma: &Face, j: usize) -> &Cx<F> {
        self.vertices[sigma].object(sigma.position(j).expect("vertex of the face"))
    }

    /// Checks the labelling relations; see [`validate_gtt`].
    pub fn validate(&self, strict: bool) -> Report {
        validate_gtt(self, strict)
    }

    /// The labelling of `Δ[k]` obtained by pulling back along the order
    /// preserving injection `[k] -> [p]` with image `verts`.
    pub fn pull_back(&self, verts: &[usize]) -> Result<GttLabelling<F>> {
        if verts.is_empty()
            || verts.windows(2).any(|w| w[0] >= w[1])
            || *verts.last().unwrap() > self.dim
        {
            return Err(Error::InvalidIndex(format!(
                "{verts:?} is not a face of Δ[{}]",
                self.dim
            )));
        }
        let k = verts.len() - 1;
        let image = |f: &Face| {
            Face::new(f.vertices().iter().map(|&v| verts[v]).collect(), self.dim)
                .expect("increasing")
        };
        let vertices = all_faces(k)
            .into_iter()
            .map(|f| (f.clone(), self.vertices[&image(&f)].clone()))
            .collect();
        let cells = proper_cells(k)
            .into_iter()
            .map(|c| {
                let outer = PairCell::new(image(c.tau()), image(c.sigma())).expect("subface");
                (c, self.cells[&outer].clone())
            })
            .collect();
        Ok(GttLabelling {
            dim: k,
            vertices,
            cells,
        })
    }

    /// The restriction to a face `σ` of `Δ[p]`, reindexed from 0.
    pub fn restrict(&self, sigma: &Face) -> Result<GttLabelling<F>> {
        self.pull_back(sigma.vertices())
    }
}

fn cell_name(cell: &PairCell) -> String {
    cell.to_string()
}

fn check_cell<F: Scalar>(
    l: &GttLabelling<F>,
    cell: &PairCell,
    comps: &[Complement<F>],
    strict: bool,
) -> Vec<Finding> {
    let mut out = Vec::new();
    let (tau, sigma) = (cell.tau(), cell.sigma());
    let tau_s = l.vertex(tau);
    let sigma_s = l.vertex(sigma);
    for (m, c) in comps.iter().enumerate() {
        let j = tau.vertices()[m];
        let at = |f: Finding| f.at_cell(cell_name(cell)).at_tuple(&[j]);
        match c.theta.is_chain_map() {
            Ok(true) => {}
            _ => out.push(at(Finding::error(
                "trivialisation",
                "θ is not a chain map, so the differential is not block diagonal under θ",
            ))),
        }
        let id_src = GradedMap::identity(c.theta.source().clone());
        let id_tgt = GradedMap::identity(c.theta.target().clone());
        let left = c.theta_inv.compose(&c.theta).ok();
        let right = c.theta.compose(&c.theta_inv).ok();
        if left.as_ref() != Some(&id_src) || right.as_ref() != Some(&id_tgt) {
            out.push(at(Finding::error(
                "trivialisation",
                "the stored inverse of θ is not its inverse",
            )));
        }
        let dims_match = c
            .complex
            .degrees()
            .chain(c.decl.summands().iter().flat_map(|s| [s.1, s.1 + 1]))
            .all(|n| c.complex.dim(n) == c.decl.dim(n));
        if !dims_match {
            out.push(at(Finding::error(
                "elementary",
                "complement dimensions differ from its declaration",
            )));
        } else if strict && *c.complex != c.decl.build::<F>() {
            out.push(at(Finding::error(
                "elementary",
                "complement is not the declared elementary complex",
            )));
        } else if !is_elementary(&c.complex, strict) {
            out.push(at(Finding::error(
                "elementary",
                "complement is not elementary",
            )));
        }
    }
    // Block form of φ_K(σ) under the τ-trivialisation, for K ⊆ τ with |K| ≥ 2.
    for k in tau.subfaces().into_iter().filter(|k| k.len() >= 2) {
        let a = tau.position(k.first()).expect("subface");
        let b = tau.position(k.last()).expect("subface");
        let (ca, cb) = (&comps[a], &comps[b]);
        let k_in_sigma =
            Face::new(k.positions_in(sigma).expect("subface"), sigma.dim()).expect("increasing");
        let k_in_tau =
            Face::new(k.positions_in(tau).expect("subface"), tau.dim()).expect("increasing");
        let phi_sigma = sigma_s.label_ref(&k_in_sigma);
        let phi_tau = tau_s.label_ref(&k_in_tau);
        let at = |f: Finding| {
            f.at_cell(format!("{}/{}", cell_name(cell), k))
                .with_bidegree(k.len() as i64 - 1, 2 - k.len() as i64)
        };
        let Ok(twisted) = ca
            .theta_inv
            .compose(phi_sigma)
            .and_then(|x| x.compose(&cb.theta))
        else {
            out.push(at(Finding::error(
                "block-form",
                "trivialisations do not compose with φ_K(σ)",
            )));
            continue;
        };
        let src = cb.parts(tau_s.object(b));
        let tgt = ca.parts(tau_s.object(a));
        let blocks = |i: usize, j: usize| block_of(&twisted, &src, &tgt, i, j);
        match (blocks(0, 0), blocks(1, 0), blocks(1, 1)) {
            (Ok(top), Ok(lower_left), Ok(diag)) => {
                if !lower_left.is_zero() {
                    out.push(at(Finding::error(
                        "block-form",
                        "lower-left block is nonzero",
                    )
                    .with_nnz(lower_left.nnz())));
                }
                if top != *phi_tau {
                    let nnz = top.sub(phi_tau).map(|r| r.nnz()).unwrap_or(0);
                    out.push(at(Finding::error(
                        "block-form",
                        "upper-left block differs from φ_K(τ)",
                    )
                    .with_nnz(nnz)));
                }
                let degree = 2 - k.len() as i64;
                match elementary_morphism(&cb.complex, &cb.decl, &ca.complex, &ca.decl, degree) {
                    Ok(e) if diag == e => {}
                    Ok(e) => {
                        let nnz = diag.sub(&e).map(|r| r.nnz()).unwrap_or(0);
                        let f = if k.len() == 2 {
                            Finding::warning("block-form", "lower-right block differs from the elementary morphism of the declarations")
                        } else {
                            Finding::error(
                                "block-form",
                                "lower-right block is not the elementary morphism",
                            )
                        };
                        out.push(at(f.with_nnz(nnz)));
                    }
                    Err(_) if k.len() == 2 => out.push(at(Finding::warning(
                        "block-form",
                        "complements are not their declared builds, lower-right block not compared",
                    ))),
                    Err(_) => {
                        if !diag.is_zero() {
                            out.push(at(Finding::error(
                                "block-form",
                                "lower-right block is nonzero",
                            )
                            .with_nnz(diag.nnz())));
                        }
                    }
                }
            }
            _ => out.push(at(Finding::error(
                "block-form",
                "trivialised map does not split along the complements",
            ))),
        }
    }
    out
}

/// Validates a GTT-labelling.
///
/// Reports `dg-relation` and `core` failures of vertex labels,
/// `trivialisation` and `elementary` failures of cell labels, and
/// `block-form` failures of the block upper-triangular condition. In strict
/// mode every complement must equal the build of its declaration.
pub fn validate_gtt<F: Scalar>(l: &GttLabelling<F>, strict: bool) -> Report {
    let mut report = Report::new();
    for (sigma, s) in &l.vertices {
        report.extend_prefixed(&sigma.to_string(), s.validate());
        if !s.in_core() {
            report.push(
                Finding::error(
                    "core",
                    "an edge of the vertex label is not a quasi-isomorphism",
                )
                .at_cell(sigma.to_string()),
            );
        }
    }
    let cells: Vec<(&PairCell, &Vec<Complement<F>>)> = l.cells.iter().collect();
    let findings: Vec<Vec<Finding>> = cells
        .par_iter()
        .map(|(c, comps)| check_cell(l, c, comps, strict))
        .collect();
    for f in findings.into_iter().flatten() {
        report.push(f);
    }
    report
}

/// True for a valid labelling whose vertex labels have isomorphism edges and
/// vanishing higher maps.
pub fn is_gtt1<F: Scalar>(l: &GttLabelling<F>) -> bool {
    l.vertices.values().all(|s| s.is_ordinary_core()) && validate_gtt(l, false).is_valid()
}

/// Face map `d_i`: forget vertex `i`.
pub fn gtt_face<F: Scalar>(l: &GttLabelling<F>, i: usize) -> Result<GttLabelling<F>> {
    if l.dim == 0 || i > l.dim {
        return Err(Error::InvalidIndex(format!(
            "face {i} of a {}-simplex",
            l.dim
        )));
    }
    let verts: Vec<usize> = (0..=l.dim).filter(|&v| v != i).collect();
    l.pull_back(&verts)
}

/// Degeneracy map `s_i`: repeat vertex `i`.
///
/// Writing `s: [p+1] -> [p]` for the collapse, a face containing both copies
/// is labelled by the dg-nerve degeneracy of the label of its image and any
/// other face by the label of its image. A cell `(τ, σ)` with `s(τ) = s(σ)`
/// gets zero complements with identity trivialisations; otherwise vertex `j`
/// of `τ` gets the complement of `s(j)` on the cell `(s(τ), s(σ))`.
pub fn gtt_degeneracy<F: Scalar>(l: &GttLabelling<F>, i: usize) -> Result<GttLabelling<F>> {
    let p = l.dim;
    if i > p {
        return Err(Error::InvalidIndex(format!(
            "degeneracy {i} of a {p}-simplex"
        )));
    }
    let s = |v: usize| if v <= i { v } else { v - 1 };
    let image = |f: &Face| {
        let mut vs: Vec<usize> = f.vertices().iter().map(|&v| s(v)).collect();
        vs.dedup();
        Face::new(vs, p).expect("increasing")
    };
    let mut vertices = BTreeMap::new();
    for sigma in all_faces(p + 1) {
        let base = &l.vertices[&image(&sigma)];
        let label = if sigma.contains(i) && sigma.contains(i + 1) {
            base.degeneracy(sigma.position(i).expect("contains i"))?
        } else {
            base.clone()
        };
        vertices.insert(sigma, label);
    }
    let mut cells = BTreeMap::new();
    for cell in proper_cells(p + 1) {
        let (st, ss) = (image(cell.tau()), image(cell.sigma()));
        let comps = if st == ss {
            let sigma_s: &DgSimplex<F> = &vertices[cell.sigma()];
            cell.tau()
                .vertices()
                .iter()
                .map(|&j| {
                    Complement::zero(sigma_s.object(cell.sigma().position(j).expect("subface")))
                })
                .collect()
        } else {
            let src = &l.cells[&PairCell::new(st.clone(), ss).expect("subface")];
            cell.tau()
                .vertices()
                .iter()
                .map(|&j| src[st.position(s(j)).expect("image vertex")].clone())
                .collect()
        };
        cells.insert(cell, comps);
    }
    Ok(GttLabelling {
        dim: p + 1,
        vertices,
        cells,
    })
}

/// The image of a core dg-nerve simplex: the central vertex is `s`, the
/// other vertices carry its faces and every cell has zero complements.
pub fn include_twist<F: Scalar>(s: &DgSimplex<F>) -> Result<GttLabelling<F>> {
    if !s.in_core() {
        return Err(Error::Refused("simplex is not in the core".into()));
    }
    let p = s.dim();
    let vertices: BTreeMap<Face, DgSimplex<F>> = all_faces(p)
        .into_iter()
        .map(|f| (f.clone(), s.restrict(&f)))
        .collect();
    let cells = proper_cells(p)
        .into_iter()
        .map(|c| {
            let comps = c
                .tau()
                .vertices()
                .iter()
                .map(|&j| Complement::zero(s.object(j)))
                .collect();
            (c, comps)
        })
        .collect();
    GttLabelling::new(p, vertices, cells)
}

/// The image of a GTT-1-labelling: the same data, after checking it is one.
pub fn include_green<F: Scalar>(l: &GttLabelling<F>) -> Result<GttLabelling<F>> {
    if !is_gtt1(l) {
        return Err(Error::Refused("labelling is not a GTT-1-labelling".into()));
    }
    Ok(l.clone())
}
