//! Points of the totalisations of GTT-labellings: one labelling of `Δ[p]`
//! per nondegenerate `(p + 1)`-tuple, compatible with faces, with degenerate
//! tuples labelled by degeneracies.
//!
//! Nondegenerate tuples of unbounded length exist on covers whose tuples
//! are not ordered, so the data carries a length bound and is required to
//! be complete up to it.

use std::collections::BTreeMap;

use crate::cech_mc::Cover;
use crate::descent::twist::TwistingCochainData;
use crate::dg_nerve::is_degenerate;
use crate::error::{Error, Result};
use crate::gtt::{gtt_degeneracy, gtt_face, include_twist, is_gtt1, validate_gtt, GttLabelling};
use crate::homalg::{Cx, GradedMap};
use crate::report::{Finding, Report};
use crate::scalar::Scalar;
use crate::simplex_core::{all_faces, Face};

/// Simplicial twisting cochain data over a cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StcData<F> {
    cover: Cover,
    max_len: usize,
    labellings: BTreeMap<Vec<usize>, GttLabelling<F>>,
}

/// Green complex data: the same shape, validated by [`validate_green`].
pub type GreenData<F> = StcData<F>;

impl<F: Scalar> StcData<F> {
    /// Checks that the keys are exactly the valid nondegenerate tuples of
    /// length at most `max_len` and that each labelling has the right dimension.
    pub fn new(
        cover: Cover,
        max_len: usize,
        labellings: BTreeMap<Vec<usize>, GttLabelling<F>>,
    ) -> Result<Self> {
        if max_len == 0 {
            return Err(Error::InvalidInput(
                "the length bound must be positive".into(),
            ));
        }
        for (t, l) in &labellings {
            if t.is_empty() || t.len() > max_len || is_degenerate(t) || !cover.is_valid(t) {
                return Err(Error::Shape(format!(
                    "tuple {t:?} is not a valid nondegenerate tuple of length at most {max_len}"
                )));
            }
            if l.dim() + 1 != t.len() {
                return Err(Error::Shape(format!(
                    "tuple {t:?} carries a labelling of dimension {}",
                    l.dim()
                )));
            }
        }
        for len in 1..=max_len {
            if let Some(t) = cover
                .nondegenerate_tuples(len)
                .into_iter()
                .find(|t| !labellings.contains_key(t))
            {
                return Err(Error::Incomplete(format!("tuple {t:?} has no labelling")));
            }
        }
        Ok(StcData {
            cover,
            max_len,
            labellings,
        })
    }

    /// The tuple-wise image of a twisting cochain under `include_twist`.
    pub fn from_twisting_cochain(tc: &TwistingCochainData<F>, max_len: usize) -> Result<Self> {
        let spine = tc.mc().spine();
        let mut labellings = BTreeMap::new();
        for len in 1..=max_len {
            for t in tc.cover().nondegenerate_tuples(len) {
                labellings.insert(t.clone(), include_twist(&spine.simplex_forced(&t)?)?);
            }
        }
        StcData::new(tc.cover().clone(), max_len, labellings)
    }

    /// The cover.
    pub fn cover(&self) -> &Cover {
        &self.cover
    }

    /// The length bound.
    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Stored labellings.
    pub fn labellings(&self) -> &BTreeMap<Vec<usize>, GttLabelling<F>> {
        &self.labellings
    }

    /// The labelling of any valid tuple of length at most `max_len`;
    /// degenerate tuples get the degeneracy of the labelling of the tuple
    /// with the repeat removed.
    pub fn labelling_at(&self, t: &[usize]) -> Result<GttLabelling<F>> {
        if let Some(i) = t.windows(2).position(|w| w[0] == w[1]) {
            let mut shorter = t.to_vec();
            shorter.remove(i + 1);
            return gtt_degeneracy(&self.labelling_at(&shorter)?, i);
        }
        self.labellings
            .get(t)
            .cloned()
            .ok_or_else(|| Error::Incomplete(format!("tuple {t:?} has no labelling")))
    }
}

fn tag_tuple(t: &[usize], r: Report) -> Report {
    let mut out = Report::new();
    for mut f in r.findings().iter().cloned() {
        f.tuple = Some(t.to_vec());
        out.push(f);
    }
    out
}

/// Per-tuple [`validate_gtt`] findings tagged with their tuple, plus one
/// `coherence` finding per face of a labelling that differs from the
/// labelling of the face tuple.
pub fn validate_stc<F: Scalar>(d: &StcData<F>, strict: bool) -> Report {
    let mut r = Report::new();
    for (t, l) in &d.labellings {
        r.extend(tag_tuple(t, validate_gtt(l, strict)));
        if t.len() < 2 {
            continue;
        }
        for i in 0..t.len() {
            let mut s = t.clone();
            s.remove(i);
            let expected = d.labelling_at(&s);
            let face = gtt_face(l, i);
            match (face, expected) {
                (Ok(a), Ok(b)) if a == b => {}
                (Ok(_), Ok(_)) => r.push(
                    Finding::error(
                        "coherence",
                        format!("face {i} differs from the labelling of {s:?}"),
                    )
                    .at_tuple(t)
                    .at_cell(format!("d{i}")),
                ),
                (Err(e), _) | (_, Err(e)) => r.push(
                    Finding::error("coherence", e.to_string())
                        .at_tuple(t)
                        .at_cell(format!("d{i}")),
                ),
            }
        }
    }
    r
}

/// [`validate_stc`] plus one `green` finding per tuple whose labelling is
/// not a GTT-1-labelling.
pub fn validate_green<F: Scalar>(d: &GreenData<F>) -> Report {
    let mut r = validate_stc(d, false);
    for (t, l) in &d.labellings {
        if !is_gtt1(l) {
            r.push(
                Finding::error(
                    "green",
                    "labelling has a non-invertible edge or a nonzero higher map",
                )
                .at_tuple(t),
            );
        }
    }
    r
}

/// The arrays attached to one tuple `σ = (α_0, ..., α_p)`, indexed by
/// vertex positions `0..=p` in `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StcFace<F> {
    /// The tuple `σ`.
    pub sigma: Vec<usize>,
    /// `E_{σ,α_i} = C_i(σ)`.
    pub e: Vec<Cx<F>>,
    /// `E_{σ,τ,α_i} = C_i^{⊥σ}(τ)` for proper faces `τ` and vertices `i ∈ τ`.
    pub e_perp: BTreeMap<(Face, usize), Cx<F>>,
    /// `σa_{α_J} = φ_J(σ)` for faces `J` with at least two vertices.
    pub a: BTreeMap<Face, GradedMap<F>>,
}

/// The arrays of every stored tuple, with the Maurer–Cartan check of each `σa`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StcNotation<F> {
    /// One entry per stored tuple, in lexicographic order.
    pub faces: Vec<StcFace<F>>,
    /// `stc2` findings for tuples whose `σa` fails the dg-nerve relations.
    pub report: Report,
}

/// Rewrites the data in simplicial twisting cochain notation.
pub fn export_stc_notation<F: Scalar>(d: &StcData<F>) -> StcNotation<F> {
    let mut faces = Vec::new();
    let mut report = Report::new();
    for (t, l) in &d.labellings {
        let p = l.dim();
        let full = Face::full(p);
        let top = l.top();
        let mut e_perp = BTreeMap::new();
        for tau in all_faces(p).into_iter().filter(|f| *f != full) {
            for (k, &i) in tau.vertices().iter().enumerate() {
                e_perp.insert((tau.clone(), i), l.cell(&tau, &full)[k].complex.clone());
            }
        }
        let a = top.maps().clone();
        let check = top.validate();
        if !check.is_valid() {
            for f in check.findings() {
                report.push(Finding::error("stc2", f.detail.clone()).at_tuple(t));
            }
        }
        faces.push(StcFace {
            sigma: t.clone(),
            e: top.objects().to_vec(),
            e_perp,
            a,
        });
    }
    StcNotation { faces, report }
}
