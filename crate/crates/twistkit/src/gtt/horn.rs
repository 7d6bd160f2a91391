//! Filling 2-horns of GTT-labellings.
//!
//! The central vertex of the filler pads each `C_w(w)` by the complement of
//! `w` on its given edge and by the complement of the shared vertex on the
//! other given edge. The given edges are extended by the identity on the
//! padding, the missing edge is the maximal padding of the central one, and
//! the remaining cells are labelled by identity trivialisations.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dg_nerve::DgSimplex;
use crate::error::{Error, Result};
use crate::gtt::labelling::{proper_cells, Complement, GttLabelling};
use crate::homalg::blocks::{block_map, block_of};
use crate::homalg::{direct_sum, whitehead_inverse, Cx, ElementaryDecl, GradedMap};
use crate::scalar::Scalar;
use crate::simplex_core::Face;

/// The two given edges of `Λ_k[2]`, in lexicographic order.
pub fn horn_edges(k: usize) -> Result<(Face, Face)> {
    let f = |v: &[usize]| Face::new(v.to_vec(), 2).expect("edge");
    match k {
        0 => Ok((f(&[0, 1]), f(&[0, 2]))),
        1 => Ok((f(&[0, 1]), f(&[1, 2]))),
        2 => Ok((f(&[0, 2]), f(&[1, 2]))),
        _ => Err(Error::HornShape(format!("horn index {k} is not 0, 1 or 2"))),
    }
}

struct Edge<'a, F> {
    input: &'a GttLabelling<F>,
    face: Face,
}

impl<F: Scalar> Edge<'_, F> {
    fn local(&self, w: usize) -> usize {
        self.face.position(w).expect("vertex of the edge")
    }

    fn vertex_object(&self, w: usize) -> &Cx<F> {
        self.input
            .vertex(&Face::new(vec![self.local(w)], 1).expect("vertex"))
            .object(0)
    }

    fn top_object(&self, w: usize) -> &Cx<F> {
        self.input.top().object(self.local(w))
    }

    fn complement(&self, w: usize) -> &Complement<F> {
        &self.input.cell(
            &Face::new(vec![self.local(w)], 1).expect("vertex"),
            &Face::full(1),
        )[0]
    }

    fn map(&self) -> &GradedMap<F> {
        self.input.top().label_ref(&Face::full(1))
    }
}

/// One summand of a padded central complex.
#[derive(Clone)]
struct Part<F> {
    complex: Cx<F>,
    decl: ElementaryDecl,
}

struct Central<F> {
    parts: Vec<Part<F>>,
    sum: Cx<F>,
}

impl<F: Scalar> Central<F> {
    fn new(base: &Cx<F>, own: Part<F>, other: Part<F>) -> Self {
        let parts = vec![
            Part {
                complex: base.clone(),
                decl: ElementaryDecl::empty(),
            },
            own,
            other,
        ];
        let sum = Arc::new(direct_sum(&[
            &parts[0].complex,
            &parts[1].complex,
            &parts[2].complex,
        ]));
        Central { parts, sum }
    }

    fn cxs(&self) -> Vec<Cx<F>> {
        self.parts.iter().map(|p| p.complex.clone()).collect()
    }

    /// The two padding summands as one complement.
    fn padding(&self) -> (Cx<F>, ElementaryDecl) {
        let c = Arc::new(direct_sum(&[
            &self.parts[1].complex,
            &self.parts[2].complex,
        ]));
        (c, self.parts[1].decl.concat(&self.parts[2].decl))
    }
}

/// `Θ: C_w(e) ⊕ pad -> C_w(012)` and its inverse, where the complement of
/// `w` on `e` sits at `own` and the padding at `pad` among the central parts.
fn edge_trivialisation<F: Scalar>(
    edge: &Edge<'_, F>,
    w: usize,
    central: &Central<F>,
    own: usize,
    pad: usize,
) -> Result<Complement<F>> {
    let c = edge.complement(w);
    let base = edge.vertex_object(w);
    let on_edge = edge.top_object(w);
    let inner = c.parts(base);
    let pad_cx = central.parts[pad].complex.clone();
    let src_parts = vec![on_edge.clone(), pad_cx.clone()];
    let src: Cx<F> = Arc::new(direct_sum(&[on_edge, &pad_cx]));
    let tgt_parts = central.cxs();
    let id_pad = GradedMap::identity(pad_cx.clone());

    let inv0 = block_of(&c.theta_inv, std::slice::from_ref(on_edge), &inner, 0, 0)?;
    let inv1 = block_of(&c.theta_inv, std::slice::from_ref(on_edge), &inner, 1, 0)?;
    let mut grid: Vec<Vec<Option<&GradedMap<F>>>> = vec![vec![None, None]; 3];
    grid[0][0] = Some(&inv0);
    grid[own][0] = Some(&inv1);
    grid[pad][1] = Some(&id_pad);
    let theta = block_map(&src_parts, &src, &tgt_parts, &central.sum, 0, &grid)?;

    let fwd0 = block_of(&c.theta, &inner, std::slice::from_ref(on_edge), 0, 0)?;
    let fwd1 = block_of(&c.theta, &inner, std::slice::from_ref(on_edge), 0, 1)?;
    let mut grid_inv: Vec<Vec<Option<&GradedMap<F>>>> = vec![vec![None, None, None]; 2];
    grid_inv[0][0] = Some(&fwd0);
    grid_inv[0][own] = Some(&fwd1);
    grid_inv[1][pad] = Some(&id_pad);
    let theta_inv = block_map(&tgt_parts, &central.sum, &src_parts, &src, 0, &grid_inv)?;
    Ok(Complement {
        complex: pad_cx,
        decl: central.parts[pad].decl.clone(),
        theta,
        theta_inv,
    })
}

/// `φ_e ⊕ id_pad` conjugated into the central complexes.
fn padded_edge_map<F: Scalar>(
    edge: &Edge<'_, F>,
    theta_u: &Complement<F>,
    theta_v: &Complement<F>,
) -> Result<GradedMap<F>> {
    let (u, v) = (edge.face.first(), edge.face.last());
    let pad = theta_u.complex.clone();
    let src_parts = vec![edge.top_object(v).clone(), pad.clone()];
    let tgt_parts = vec![edge.top_object(u).clone(), pad.clone()];
    let id_pad = GradedMap::identity(pad.clone());
    let sum = block_map(
        &src_parts,
        theta_v.theta.source(),
        &tgt_parts,
        theta_u.theta.source(),
        0,
        &[vec![Some(edge.map()), None], vec![None, Some(&id_pad)]],
    )?;
    theta_u.theta.compose(&sum)?.compose(&theta_v.theta_inv)
}

fn fill<F: Scalar>(
    a: &GttLabelling<F>,
    b: &GttLabelling<F>,
    k: usize,
    green: bool,
) -> Result<GttLabelling<F>> {
    if a.dim() != 1 || b.dim() != 1 {
        return Err(Error::HornShape(
            "horn edges must be 1-dimensional labellings".into(),
        ));
    }
    let (fa, fb) = horn_edges(k)?;
    let ea = Edge {
        input: a,
        face: fa.clone(),
    };
    let eb = Edge {
        input: b,
        face: fb.clone(),
    };
    if ea.vertex_object(k) != eb.vertex_object(k) {
        return Err(Error::HornShape(format!(
            "the edges disagree on the shared vertex {k}"
        )));
    }
    let ja = fa
        .vertices()
        .iter()
        .copied()
        .find(|&v| v != k)
        .expect("edge");
    let jb = fb
        .vertices()
        .iter()
        .copied()
        .find(|&v| v != k)
        .expect("edge");
    let part = |c: &Complement<F>| Part {
        complex: c.complex.clone(),
        decl: c.decl.clone(),
    };

    let mut central: BTreeMap<usize, Central<F>> = BTreeMap::new();
    central.insert(
        k,
        Central::new(
            ea.vertex_object(k),
            part(ea.complement(k)),
            part(eb.complement(k)),
        ),
    );
    central.insert(
        ja,
        Central::new(
            ea.vertex_object(ja),
            part(ea.complement(ja)),
            part(eb.complement(k)),
        ),
    );
    central.insert(
        jb,
        Central::new(
            eb.vertex_object(jb),
            part(eb.complement(jb)),
            part(ea.complement(k)),
        ),
    );

    // (own, pad) positions of an edge's complements among the central parts.
    let slots = |is_b: bool, w: usize| if is_b && w == k { (2, 1) } else { (1, 2) };
    let mut edge_cells: BTreeMap<Face, Vec<Complement<F>>> = BTreeMap::new();
    let mut edge_maps: BTreeMap<Face, GradedMap<F>> = BTreeMap::new();
    for (is_b, e) in [(false, &ea), (true, &eb)] {
        let comps = e
            .face
            .vertices()
            .iter()
            .map(|&w| {
                let (own, pad) = slots(is_b, w);
                edge_trivialisation(e, w, &central[&w], own, pad)
            })
            .collect::<Result<Vec<_>>>()?;
        edge_maps.insert(e.face.clone(), padded_edge_map(e, &comps[0], &comps[1])?);
        edge_cells.insert(e.face.clone(), comps);
    }

    let f01 = Face::new(vec![0, 1], 2)?;
    let f02 = Face::new(vec![0, 2], 2)?;
    let f12 = Face::new(vec![1, 2], 2)?;
    let (missing, third, homotopy) = match k {
        0 => {
            let (phi01, phi02) = (&edge_maps[&f01], &edge_maps[&f02]);
            let (g, h) = invert(phi01, green, true)?;
            let phi12 = g.compose(phi02)?;
            let h012 = h.compose(phi02)?.neg();
            (f12.clone(), phi12, h012)
        }
        1 => {
            let (phi01, phi12) = (&edge_maps[&f01], &edge_maps[&f12]);
            let phi02 = phi01.compose(phi12)?;
            let zero = GradedMap::zero(phi12.source().clone(), phi01.target().clone(), -1);
            (f02.clone(), phi02, zero)
        }
        _ => {
            let (phi02, phi12) = (&edge_maps[&f02], &edge_maps[&f12]);
            let (g, h) = invert(phi12, green, false)?;
            let phi01 = phi02.compose(&g)?;
            let h012 = phi02.compose(&h)?.neg();
            (f01.clone(), phi01, h012)
        }
    };
    edge_maps.insert(missing.clone(), third);

    let objects: Vec<Cx<F>> = (0..3).map(|w| central[&w].sum.clone()).collect();
    let mut maps = edge_maps.clone();
    maps.insert(Face::full(2), homotopy);
    let top = DgSimplex::new(objects.clone(), maps)?;

    let mut vertices = BTreeMap::new();
    for w in 0..3 {
        let src = if fa.contains(w) { &ea } else { &eb };
        vertices.insert(
            Face::new(vec![w], 2)?,
            DgSimplex::point(src.vertex_object(w).clone()),
        );
    }
    vertices.insert(fa.clone(), a.top().clone());
    vertices.insert(fb.clone(), b.top().clone());
    vertices.insert(
        missing.clone(),
        DgSimplex::edge(edge_maps[&missing].clone())?,
    );
    vertices.insert(Face::full(2), top);

    let mut cells = BTreeMap::new();
    for cell in proper_cells(2) {
        let (tau, sigma) = (cell.tau(), cell.sigma());
        let comps: Vec<Complement<F>> = if *sigma == fa || *sigma == fb {
            let e = if *sigma == fa { &ea } else { &eb };
            vec![e.complement(tau.first()).clone()]
        } else if *sigma == missing || (tau.len() == 1 && sigma.len() == 3) {
            tau.vertices()
                .iter()
                .map(|&w| {
                    let c = &central[&w];
                    let (pad, decl) = c.padding();
                    Complement::identity(&c.parts[0].complex, pad, decl)
                })
                .collect()
        } else if *tau == missing {
            tau.vertices()
                .iter()
                .map(|&w| Complement::zero(&central[&w].sum))
                .collect()
        } else {
            edge_cells[tau].clone()
        };
        cells.insert(cell, comps);
    }
    GttLabelling::new(2, vertices, cells)
}

/// Inverse of a central edge map with the homotopy on the requested side:
/// `∂h = f g - id` when `target_side`, else `∂h = g f - id`.
fn invert<F: Scalar>(
    f: &GradedMap<F>,
    green: bool,
    target_side: bool,
) -> Result<(GradedMap<F>, GradedMap<F>)> {
    if green {
        if !f.is_isomorphism() {
            return Err(Error::Refused(
                "Green horn edges must be isomorphisms".into(),
            ));
        }
        let g = f.inverse()?;
        let side = if target_side { f.target() } else { f.source() };
        return Ok((g, GradedMap::zero(side.clone(), side.clone(), -1)));
    }
    let w = whitehead_inverse(f)?;
    Ok((w.g, if target_side { w.h_target } else { w.h_source }))
}

/// Fills the horn `Λ_k[2]` whose given edges are `edge_a` and `edge_b`
/// (the two edges containing `k`, in lexicographic order).
///
/// Outer horns invert a padded edge with [`whitehead_inverse`]; the inner
/// horn composes the padded edges and uses a zero homotopy.
pub fn fill_horn2<F: Scalar>(
    edge_a: &GttLabelling<F>,
    edge_b: &GttLabelling<F>,
    k: usize,
) -> Result<GttLabelling<F>> {
    fill(edge_a, edge_b, k, false)
}

/// Fills a horn of GTT-1-labellings with exact inverses and zero homotopy.
pub fn fill_horn2_green<F: Scalar>(
    edge_a: &GttLabelling<F>,
    edge_b: &GttLabelling<F>,
    k: usize,
) -> Result<GttLabelling<F>> {
    for e in [edge_a, edge_b] {
        if e.dim() == 1 && !e.top().is_ordinary_core() {
            return Err(Error::Refused(
                "Green horn edges must be isomorphisms".into(),
            ));
        }
    }
    fill(edge_a, edge_b, k, true)
}

/// Splits the filler's given faces back out, in the order of [`horn_edges`].
pub fn horn_faces<F: Scalar>(
    filled: &GttLabelling<F>,
    k: usize,
) -> Result<(GttLabelling<F>, GttLabelling<F>)> {
    let (fa, fb) = horn_edges(k)?;
    Ok((filled.restrict(&fa)?, filled.restrict(&fb)?))
}
