//! Paths between twisting cochains and the weak equivalences they define.
//!
//! A path from `E` (bottom) to `F` (top) labels every nondegenerate simplex
//! of `Δ[p] x Δ[1]` over every tuple `(α_0, ..., α_p)`. The simplex through
//! the points `(i_0, j_0), ..., (i_q, j_q)` is the tuple
//! `(2α_{i_0} + j_0, ..., 2α_{i_q} + j_q)` of the doubled cover, so the whole
//! path is one Maurer–Cartan element there whose restrictions to the two
//! levels are `E` and `F`. The weak equivalence `Λ: F -> E` is
//! `Λ_{α_0..α_p} = Σ_m (-1)^m f_{Δ_m^{p+1}}`, and it satisfies
//! `δ̂Λ + φ·Λ - Λ·ψ = 0` in the bigraded algebra, where `φ` and `ψ` include
//! the differentials of `E` and `F`.

use std::collections::BTreeMap;

use crate::cech_mc::{BigradedElement, Cover, McElement};
use crate::descent::twist::TwistingCochainData;
use crate::dg_nerve::is_degenerate;
use crate::error::{Error, Result};
use crate::homalg::{is_quasi_iso, same_complex, Cx, GradedMap};
use crate::report::{Finding, Report};
use crate::scalar::Scalar;
use crate::simplex_core::{prism_top_m, PrismSimplex};

/// The tuple of the doubled cover naming the prism simplex `s` over `t`.
pub fn prism_tuple(t: &[usize], s: &PrismSimplex) -> Vec<usize> {
    s.path().iter().map(|&(i, j)| 2 * t[i] + j).collect()
}

/// Restriction of an element on the doubled cover to level `j`.
fn level<F: Scalar>(base: &Cover, prism: &McElement<F>, j: usize) -> Result<McElement<F>> {
    let labelling = (0..base.len())
        .map(|a| prism.labelling()[2 * a + j].clone())
        .collect();
    let maps = prism
        .maps()
        .iter()
        .filter(|(t, _)| t.iter().all(|&k| k % 2 == j))
        .map(|(t, m)| (t.iter().map(|&k| k / 2).collect(), m.clone()))
        .collect();
    McElement::new(base.clone(), labelling, maps)
}

/// A path of twisting cochains, stored on the doubled cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistPath<F> {
    bottom: TwistingCochainData<F>,
    top: TwistingCochainData<F>,
    prism: McElement<F>,
}

impl<F: Scalar> TwistPath<F> {
    /// Checks that `prism` lives on the doubled cover of the endpoints' cover
    /// and carries their complexes at levels 0 and 1.
    pub fn new(
        bottom: TwistingCochainData<F>,
        top: TwistingCochainData<F>,
        prism: McElement<F>,
    ) -> Result<Self> {
        if bottom.cover() != top.cover() {
            return Err(Error::Shape("endpoints live on different covers".into()));
        }
        if *prism.cover() != bottom.cover().doubled()? {
            return Err(Error::Shape(
                "prism labels must live on the doubled cover".into(),
            ));
        }
        for a in 0..bottom.cover().len() {
            if !same_complex(&prism.labelling()[2 * a], bottom.complex(a))
                || !same_complex(&prism.labelling()[2 * a + 1], top.complex(a))
            {
                return Err(Error::Shape(format!(
                    "open {a} carries complexes that differ from the endpoints"
                )));
            }
        }
        Ok(TwistPath { bottom, top, prism })
    }

    /// The path whose endpoints are the two levels of `prism`.
    pub fn from_doubled(base: &Cover, prism: McElement<F>) -> Result<Self> {
        let bottom = TwistingCochainData::new(level(base, &prism, 0)?);
        let top = TwistingCochainData::new(level(base, &prism, 1)?);
        TwistPath::new(bottom, top, prism)
    }

    /// The constant path: every prism simplex is labelled by the image of
    /// its projection to the base, identities on the vertical edges.
    pub fn constant(tc: &TwistingCochainData<F>) -> Result<Self> {
        let base = tc.cover();
        let doubled = base.doubled()?;
        let labelling: Vec<Cx<F>> = (0..doubled.len())
            .map(|k| tc.complex(k / 2).clone())
            .collect();
        let probe = McElement::new(doubled.clone(), labelling.clone(), BTreeMap::new())?;
        let mut maps = BTreeMap::new();
        for len in 2..=probe.max_p() + 1 {
            for t in doubled.nondegenerate_tuples(len) {
                let proj: Vec<usize> = t.iter().map(|&k| k / 2).collect();
                let m = tc.mc().label(&proj);
                if !m.is_zero() {
                    maps.insert(t, m);
                }
            }
        }
        TwistPath::new(
            tc.clone(),
            tc.clone(),
            McElement::new(doubled, labelling, maps)?,
        )
    }

    /// The bottom endpoint `E`.
    pub fn bottom(&self) -> &TwistingCochainData<F> {
        &self.bottom
    }

    /// The top endpoint `F`.
    pub fn top(&self) -> &TwistingCochainData<F> {
        &self.top
    }

    /// The prism labels on the doubled cover.
    pub fn prism(&self) -> &McElement<F> {
        &self.prism
    }

    /// The base cover.
    pub fn cover(&self) -> &Cover {
        self.bottom.cover()
    }

    /// `f_s` for the prism simplex `s` over the tuple `t`.
    pub fn label(&self, t: &[usize], s: &PrismSimplex) -> GradedMap<F> {
        let m = prism_tuple(t, s);
        if m.len() == 1 {
            GradedMap::differential(self.prism.labelling()[m[0]].clone())
        } else {
            self.prism.label(&m)
        }
    }

    /// Tuples of the base up to this length can carry nonzero data.
    fn max_len(&self) -> usize {
        self.prism.max_p() + 1
    }
}

fn mixed_name(cover: &Cover, t: &[usize]) -> String {
    let names: Vec<&str> = t.iter().map(|&k| cover.names()[k].as_str()).collect();
    format!("({})", names.join(", "))
}

/// The dg-nerve relation on every prism simplex (kind `prism`), the
/// quasi-isomorphism condition on every prism edge, and agreement of the
/// two levels with the endpoints (kind `endpoint`).
pub fn validate_path<F: Scalar>(p: &TwistPath<F>) -> Report {
    let mut r = Report::new();
    let doubled = p.prism.cover();
    for mut f in p.prism.is_mc().findings().iter().cloned() {
        f.kind = "prism".into();
        f.detail = "prism simplex fails the dg-nerve relation".into();
        if let Some(t) = &f.tuple {
            f.cell = Some(mixed_name(doubled, t));
        }
        r.push(f);
    }
    for mut f in p.prism.edge_report().findings().iter().cloned() {
        if let Some(t) = &f.tuple {
            f.cell = Some(mixed_name(doubled, t));
        }
        r.push(f);
    }
    let len = p
        .max_len()
        .max(p.bottom.mc().max_p() + 1)
        .max(p.top.mc().max_p() + 1);
    for l in 2..=len {
        for t in p.cover().nondegenerate_tuples(l) {
            for (j, end) in [(0, &p.bottom), (1, &p.top)] {
                let lifted: Vec<usize> = t.iter().map(|&a| 2 * a + j).collect();
                if p.prism.label(&lifted) != end.mc().label(&t) {
                    r.push(
                        Finding::error("endpoint", format!("level {j} differs from the endpoint"))
                            .at_tuple(&t)
                            .with_bidegree(l as i64 - 1, 2 - l as i64),
                    );
                }
            }
        }
    }
    r
}

/// A degree-0 morphism `Λ: F -> E` of twisting cochains, with components of
/// bidegree `(p, -p)` on nondegenerate tuples. Equality compares the
/// endpoints and `Λ`; the originating path, if any, is kept for inspection only.
#[derive(Clone, Debug)]
pub struct WeakEquivalence<F> {
    target: TwistingCochainData<F>,
    source: TwistingCochainData<F>,
    components: BTreeMap<Vec<usize>, GradedMap<F>>,
    origin: Option<Box<TwistPath<F>>>,
}

impl<F: Scalar> PartialEq for WeakEquivalence<F> {
    fn eq(&self, other: &Self) -> bool {
        self.target == other.target
            && self.source == other.source
            && self.components == other.components
    }
}

impl<F: Scalar> Eq for WeakEquivalence<F> {}

impl<F: Scalar> WeakEquivalence<F> {
    /// Checks tuples, degrees and endpoints; zero components are dropped.
    pub fn new(
        target: TwistingCochainData<F>,
        source: TwistingCochainData<F>,
        components: BTreeMap<Vec<usize>, GradedMap<F>>,
    ) -> Result<Self> {
        if target.cover() != source.cover() {
            return Err(Error::Shape("endpoints live on different covers".into()));
        }
        let mut kept = BTreeMap::new();
        for (t, m) in components {
            if t.is_empty() || is_degenerate(&t) || !target.cover().is_valid(&t) {
                return Err(Error::Shape(format!(
                    "tuple {t:?} is not a valid nondegenerate tuple"
                )));
            }
            let p = t.len() as i64 - 1;
            if m.degree() != -p {
                return Err(Error::WrongDegree {
                    expected: -p,
                    found: m.degree(),
                });
            }
            let (src, tgt) = (
                source.complex(*t.last().unwrap()).clone(),
                target.complex(t[0]).clone(),
            );
            if !same_complex(m.source(), &src) || !same_complex(m.target(), &tgt) {
                return Err(Error::Shape(format!(
                    "component at {t:?} has the wrong endpoints"
                )));
            }
            let m = m.with_endpoints(src, tgt)?;
            if !m.is_zero() {
                kept.insert(t, m);
            }
        }
        Ok(WeakEquivalence {
            target,
            source,
            components: kept,
            origin: None,
        })
    }

    /// The identity of a twisting cochain.
    pub fn identity(tc: &TwistingCochainData<F>) -> Self {
        let components = (0..tc.cover().len())
            .map(|a| (vec![a], GradedMap::identity(tc.complex(a).clone())))
            .collect();
        WeakEquivalence::new(tc.clone(), tc.clone(), components).expect("identity components")
    }

    /// `E`.
    pub fn target(&self) -> &TwistingCochainData<F> {
        &self.target
    }

    /// `F`.
    pub fn source(&self) -> &TwistingCochainData<F> {
        &self.source
    }

    /// Stored nonzero components.
    pub fn components(&self) -> &BTreeMap<Vec<usize>, GradedMap<F>> {
        &self.components
    }

    /// The path this was extracted from, if any.
    pub fn origin(&self) -> Option<&TwistPath<F>> {
        self.origin.as_deref()
    }

    /// The same components with a different entry replaced.
    pub fn with_component(&self, t: Vec<usize>, m: GradedMap<F>) -> Result<Self> {
        let mut comps = self.components.clone();
        comps.insert(t, m);
        WeakEquivalence::new(self.target.clone(), self.source.clone(), comps)
    }

    /// `Λ_t`, zero on degenerate tuples and on tuples without a component.
    pub fn component(&self, t: &[usize]) -> GradedMap<F> {
        match self.components.get(t) {
            Some(m) if !is_degenerate(t) => m.clone(),
            _ => GradedMap::zero(
                self.source.complex(*t.last().unwrap()).clone(),
                self.target.complex(t[0]).clone(),
                -(t.len() as i64 - 1),
            ),
        }
    }

    /// Bound on the length of tuples where the defining relation can fail.
    fn check_len(&self) -> usize {
        let all: Vec<&Cx<F>> = self
            .target
            .labelling()
            .iter()
            .chain(self.source.labelling())
            .filter(|c| !c.is_zero())
            .collect();
        if all.is_empty() {
            return 2;
        }
        let lo = all.iter().map(|c| c.lo()).min().unwrap();
        let hi = all.iter().map(|c| c.hi()).max().unwrap();
        (hi - lo + 3).max(2) as usize
    }

    /// The residual of `δ̂Λ + φ·Λ - Λ·ψ` on the tuple `t = (α_0, ..., α_p)`:
    /// `Σ_{i=1}^{p-1} (-1)^i Λ_{t∖i} + Σ_{r=0}^{p} (-1)^{(1-r)(p-r)} φ_{0..r} Λ_{r..p}
    /// - Σ_{s=0}^{p} (-1)^{s(p-s)} Λ_{0..s} ψ_{s..p}`.
    pub fn residual(&self, t: &[usize]) -> GradedMap<F> {
        let p = t.len() - 1;
        let mut acc = GradedMap::zero(
            self.source.complex(t[p]).clone(),
            self.target.complex(t[0]).clone(),
            1 - p as i64,
        );
        for i in 1..p {
            let mut s = t.to_vec();
            s.remove(i);
            acc.add_assign(&self.component(&s).signed(i as i64))
                .expect("shared endpoints");
        }
        for r in 0..=p {
            let e = (1 - r as i64) * (p as i64 - r as i64);
            let term = self
                .target
                .label(&t[..=r])
                .compose(&self.component(&t[r..]))
                .expect("composable");
            acc.add_assign(&term.signed(e)).expect("shared endpoints");
        }
        for s in 0..=p {
            let e = (s * (p - s)) as i64 + 1;
            let term = self
                .component(&t[..=s])
                .compose(&self.source.label(&t[s..]))
                .expect("composable");
            acc.add_assign(&term.signed(e)).expect("shared endpoints");
        }
        acc
    }

    /// `Λ` as an element of the bigraded algebra, for tuples up to `max_len`.
    pub fn to_bigraded(&self, max_len: usize) -> BigradedElement<F> {
        let mut e = BigradedElement::new();
        for len in 1..=max_len {
            for t in self.target.cover().valid_tuples(len) {
                e.add_unchecked(t.clone(), self.component(&t));
            }
        }
        e
    }
}

/// The alternating sum of the top prism simplices over every tuple.
pub fn path_to_weq<F: Scalar>(p: &TwistPath<F>) -> Result<WeakEquivalence<F>> {
    let report = validate_path(p);
    if !report.is_valid() {
        return Err(Error::Refused(format!("path fails validation:\n{report}")));
    }
    let mut comps = BTreeMap::new();
    for len in 1..=p.max_len() {
        for t in p.cover().nondegenerate_tuples(len) {
            let q = len - 1;
            let mut acc = GradedMap::zero(
                p.top.complex(t[q]).clone(),
                p.bottom.complex(t[0]).clone(),
                -(q as i64),
            );
            for m in 0..=q {
                acc.add_assign(&p.label(&t, &prism_top_m(q, m)).signed(m as i64))?;
            }
            comps.insert(t, acc);
        }
    }
    let mut w = WeakEquivalence::new(p.bottom.clone(), p.top.clone(), comps)?;
    w.origin = Some(Box::new(p.clone()));
    Ok(w)
}

/// The defining relation on every valid tuple (kind `weq`, bidegree
/// `(p, 1 - p)`) and the quasi-isomorphism condition on each `Λ_α`.
pub fn validate_weq<F: Scalar>(w: &WeakEquivalence<F>) -> Report {
    let mut r = Report::new();
    for a in 0..w.target.cover().len() {
        if !is_quasi_iso(&w.component(&[a])).unwrap_or(false) {
            r.push(
                Finding::error("quasi-iso", "Λ on an open is not a quasi-isomorphism")
                    .at_tuple(&[a])
                    .with_bidegree(0, 0),
            );
        }
    }
    for len in 1..=w.check_len() {
        for t in w.target.cover().valid_tuples(len) {
            let res = w.residual(&t);
            if !res.is_zero() {
                let p = len as i64 - 1;
                r.push(
                    Finding::error("weq", "δ̂Λ + φΛ - Λψ does not vanish")
                        .at_tuple(&t)
                        .with_bidegree(p, 1 - p)
                        .with_nnz(res.nnz()),
                );
            }
        }
    }
    r
}
