//! Points of the totalisation of locally free complexes: chain
//! isomorphisms on double intersections satisfying the cocycle condition.

use std::collections::BTreeMap;

use crate::cech_mc::{Cover, Labelling};
use crate::descent::twist::TwistingCochainData;
use crate::error::{Error, Result};
use crate::homalg::{same_complex, GradedMap};
use crate::report::{Finding, Report};
use crate::scalar::Scalar;

/// A complex on every open and a chain map `φ_{αβ}: E_β -> E_α` for every
/// valid ordered pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocFreeData<F> {
    cover: Cover,
    labelling: Labelling<F>,
    edges: BTreeMap<(usize, usize), GradedMap<F>>,
}

impl<F: Scalar> LocFreeData<F> {
    /// Checks endpoints and degrees; every valid pair `α ≠ β` needs an edge.
    /// Entries on `(α, α)` are optional and checked by [`validate_locfree`].
    pub fn new(
        cover: Cover,
        labelling: Labelling<F>,
        edges: BTreeMap<(usize, usize), GradedMap<F>>,
    ) -> Result<Self> {
        if labelling.len() != cover.len() {
            return Err(Error::InvalidInput(format!(
                "{} opens but {} complexes",
                cover.len(),
                labelling.len()
            )));
        }
        for (&(a, b), m) in &edges {
            if !cover.is_valid(&[a, b]) {
                return Err(Error::Shape(format!(
                    "pair ({a}, {b}) is not valid in the cover"
                )));
            }
            if m.degree() != 0 {
                return Err(Error::WrongDegree {
                    expected: 0,
                    found: m.degree(),
                });
            }
            if !same_complex(m.source(), &labelling[b]) || !same_complex(m.target(), &labelling[a])
            {
                return Err(Error::Shape(format!(
                    "edge ({a}, {b}) has the wrong endpoints"
                )));
            }
        }
        if let Some(t) = cover
            .nondegenerate_tuples(2)
            .into_iter()
            .find(|t| !edges.contains_key(&(t[0], t[1])))
        {
            return Err(Error::Incomplete(format!("pair {t:?} has no edge")));
        }
        let edges = edges
            .into_iter()
            .map(|((a, b), m)| {
                Ok((
                    (a, b),
                    m.with_endpoints(labelling[b].clone(), labelling[a].clone())?,
                ))
            })
            .collect::<Result<_>>()?;
        Ok(LocFreeData {
            cover,
            labelling,
            edges,
        })
    }

    /// The cover.
    pub fn cover(&self) -> &Cover {
        &self.cover
    }

    /// Complexes on the opens.
    pub fn labelling(&self) -> &Labelling<F> {
        &self.labelling
    }

    /// Stored edges.
    pub fn edges(&self) -> &BTreeMap<(usize, usize), GradedMap<F>> {
        &self.edges
    }

    /// `φ_{αβ}`, the identity on `(α, α)` unless stored.
    pub fn edge(&self, a: usize, b: usize) -> GradedMap<F> {
        match self.edges.get(&(a, b)) {
            Some(m) => m.clone(),
            None => GradedMap::identity(self.labelling[a].clone()),
        }
    }

    /// The twisting cochain with these edges and zero higher components.
    pub fn to_twisting_cochain(&self) -> Result<TwistingCochainData<F>> {
        let maps = self
            .edges
            .iter()
            .map(|(&(a, b), m)| (vec![a, b], m.clone()))
            .collect();
        TwistingCochainData::from_maps(self.cover.clone(), self.labelling.clone(), maps)
    }
}

/// Checks that every edge is a chain isomorphism, that stored `φ_{αα}` are
/// identities, and that `φ_{αβ} ∘ φ_{βγ} = φ_{αγ}` on every valid
/// nondegenerate triple; one finding per failing edge or triangle.
pub fn validate_locfree<F: Scalar>(d: &LocFreeData<F>) -> Report {
    let mut r = Report::new();
    for (&(a, b), m) in &d.edges {
        if a == b {
            if *m != GradedMap::identity(d.labelling[a].clone()) {
                r.push(
                    Finding::error(
                        "degeneracy",
                        "the edge on a repeated open is not the identity",
                    )
                    .at_tuple(&[a, b]),
                );
            }
        } else if !m.is_chain_map().unwrap_or(false) || !m.is_degreewise_invertible() {
            r.push(
                Finding::error("invertible", "edge is not a chain isomorphism").at_tuple(&[a, b]),
            );
        }
    }
    for t in d.cover.nondegenerate_tuples(3) {
        let (a, b, c) = (t[0], t[1], t[2]);
        let lhs = d.edge(a, b).compose(&d.edge(b, c)).expect("shared open");
        let diff = lhs.sub(&d.edge(a, c)).expect("same endpoints");
        if !diff.is_zero() {
            r.push(
                Finding::error("cocycle", "cocycle condition fails")
                    .at_tuple(&t)
                    .with_bidegree(2, 0)
                    .with_nnz(diff.nnz()),
            );
        }
    }
    r
}
