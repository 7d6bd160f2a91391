//! Replacing 1-simplices of GTT-labellings by 1-simplices of the smaller
//! presheaves with the same endpoints.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dg_nerve::DgSimplex;
use crate::error::{Error, Result};
use crate::gtt::labelling::{Complement, GttLabelling};
use crate::gtt::strictify::{strictify, Strictification};
use crate::homalg::blocks::{inclusion, projection};
use crate::homalg::{direct_sum, Cx, GradedMap};
use crate::scalar::Scalar;
use crate::simplex_core::{Face, PairCell};

/// Endpoints `A`, `B`, the trivialised middle map `B ⊕ B^⊥ -> A ⊕ A^⊥` and
/// the two complements of a 1-dimensional labelling.
struct Path<'a, F> {
    a: Cx<F>,
    b: Cx<F>,
    ca: &'a Complement<F>,
    cb: &'a Complement<F>,
    middle: GradedMap<F>,
}

fn unpack<F: Scalar>(path: &GttLabelling<F>) -> Result<Path<'_, F>> {
    if path.dim() != 1 {
        return Err(Error::Refused("a path is a 1-dimensional labelling".into()));
    }
    let v = |i: usize| Face::new(vec![i], 1).expect("vertex");
    let full = Face::full(1);
    let a = path.vertex(&v(0)).object(0).clone();
    let b = path.vertex(&v(1)).object(0).clone();
    let ca = &path.cell(&v(0), &full)[0];
    let cb = &path.cell(&v(1), &full)[0];
    let phi = path.top().label_ref(&full);
    let middle = ca.theta_inv.compose(phi)?.compose(&cb.theta)?;
    Ok(Path {
        a,
        b,
        ca,
        cb,
        middle,
    })
}

/// The quasi-isomorphism `A <- B` obtained by composing the inclusion of
/// `B`, the middle map and the projection onto `A`.
pub fn connect_compose<F: Scalar>(path: &GttLabelling<F>) -> Result<DgSimplex<F>> {
    let p = unpack(path)?;
    let parts_a = [p.a.clone(), p.ca.complex.clone()];
    let parts_b = [p.b.clone(), p.cb.complex.clone()];
    let pi = projection(&parts_a, p.middle.target(), 0)?;
    let iota = inclusion(&parts_b, p.middle.source(), 0)?;
    DgSimplex::edge(pi.compose(&p.middle)?.compose(&iota)?)
}

/// A GTT-1 path `A -> (Ã ≅ B̃) <- B` built by strictifying the middle map;
/// the complements are `A^⊥ ⊕ E_A` and `B^⊥ ⊕ E_B` with identity
/// trivialisations. Returns the path and the strictification used.
pub fn connect_strictify<F: Scalar>(
    path: &GttLabelling<F>,
) -> Result<(GttLabelling<F>, Strictification<F>)> {
    let p = unpack(path)?;
    let s = strictify(&p.middle)?;
    let comp_a: Cx<F> = Arc::new(direct_sum(&[&p.ca.complex, &s.e_a]));
    let comp_b: Cx<F> = Arc::new(direct_sum(&[&p.cb.complex, &s.e_b]));
    let ca = Complement::identity(&p.a, comp_a, p.ca.decl.concat(&s.decl_a));
    let cb = Complement::identity(&p.b, comp_b, p.cb.decl.concat(&s.decl_b));
    let edge = s
        .f_tilde
        .with_endpoints(cb.theta.target().clone(), ca.theta.target().clone())?;
    let v = |i: usize| Face::new(vec![i], 1).expect("vertex");
    let mut vertices = BTreeMap::new();
    vertices.insert(v(0), DgSimplex::point(p.a.clone()));
    vertices.insert(v(1), DgSimplex::point(p.b.clone()));
    vertices.insert(Face::full(1), DgSimplex::edge(edge)?);
    let mut cells = BTreeMap::new();
    cells.insert(PairCell::new(v(0), Face::full(1))?, vec![ca]);
    cells.insert(PairCell::new(v(1), Face::full(1))?, vec![cb]);
    Ok((GttLabelling::new(1, vertices, cells)?, s))
}
