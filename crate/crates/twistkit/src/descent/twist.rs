//! Points of the totalisation of twisting cochains: Maurer–Cartan elements
//! whose edge components are quasi-isomorphisms.

use std::collections::BTreeMap;

use crate::cech_mc::{Cover, Labelling, McElement};
use crate::dg_nerve::{face_degree, is_degenerate};
use crate::error::{Error, Result};
use crate::homalg::{same_complex, Cx, GradedMap};
use crate::report::{Finding, Report};
use crate::scalar::Scalar;

/// A twisting cochain `(E, φ)`, together with any components supplied on
/// degenerate tuples, which must equal the forced values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistingCochainData<F> {
    mc: McElement<F>,
    degenerate: BTreeMap<Vec<usize>, GradedMap<F>>,
}

impl<F: Scalar> TwistingCochainData<F> {
    /// Wraps a Maurer–Cartan candidate.
    pub fn new(mc: McElement<F>) -> Self {
        TwistingCochainData {
            mc,
            degenerate: BTreeMap::new(),
        }
    }

    /// Builds the data from components on arbitrary valid tuples of length
    /// at least 2; components on degenerate tuples are kept for validation.
    pub fn from_maps(
        cover: Cover,
        labelling: Labelling<F>,
        maps: BTreeMap<Vec<usize>, GradedMap<F>>,
    ) -> Result<Self> {
        let (deg, nondeg): (BTreeMap<_, _>, BTreeMap<_, _>) =
            maps.into_iter().partition(|(t, _)| is_degenerate(t));
        for (t, m) in &deg {
            if !cover.is_valid(t) {
                return Err(Error::Shape(format!(
                    "tuple {t:?} is not valid in the cover"
                )));
            }
            if m.degree() != face_degree(t.len()) {
                return Err(Error::WrongDegree {
                    expected: face_degree(t.len()),
                    found: m.degree(),
                });
            }
            if !same_complex(m.source(), &labelling[*t.last().unwrap()])
                || !same_complex(m.target(), &labelling[t[0]])
            {
                return Err(Error::Shape(format!(
                    "component at {t:?} has the wrong endpoints"
                )));
            }
        }
        let mc = McElement::new(cover, labelling, nondeg)?;
        Ok(TwistingCochainData {
            mc,
            degenerate: deg,
        })
    }

    /// The underlying element.
    pub fn mc(&self) -> &McElement<F> {
        &self.mc
    }

    /// Supplied components on degenerate tuples.
    pub fn degenerate(&self) -> &BTreeMap<Vec<usize>, GradedMap<F>> {
        &self.degenerate
    }

    /// The cover.
    pub fn cover(&self) -> &Cover {
        self.mc.cover()
    }

    /// Complexes on the opens.
    pub fn labelling(&self) -> &Labelling<F> {
        self.mc.labelling()
    }

    /// The complex on open `a`.
    pub fn complex(&self, a: usize) -> &Cx<F> {
        &self.mc.labelling()[a]
    }

    /// `φ_t` with forced values on degenerate tuples; the differential for `|t| = 1`.
    pub fn label(&self, t: &[usize]) -> GradedMap<F> {
        if t.len() == 1 {
            GradedMap::differential(self.complex(t[0]).clone())
        } else {
            self.mc.label(t)
        }
    }
}

/// The Maurer–Cartan report, the edge quasi-isomorphism report and one
/// `degeneracy` finding per supplied degenerate component that differs from
/// its forced value.
pub fn validate_twisting_cochain<F: Scalar>(d: &TwistingCochainData<F>) -> Report {
    let mut r = d.mc.is_mc();
    r.extend(d.mc.edge_report());
    for (t, m) in &d.degenerate {
        if *m != d.mc.label(t) {
            r.push(
                Finding::error(
                    "degeneracy",
                    "component on a degenerate tuple differs from its forced value",
                )
                .at_tuple(t)
                .with_bidegree(t.len() as i64 - 1, face_degree(t.len())),
            );
        }
    }
    r
}
