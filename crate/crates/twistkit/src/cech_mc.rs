//! The bigraded Čech algebra of a finite cover with values in complexes,
//! Maurer–Cartan elements and their correspondence with dg-nerve labellings.
//!
//! An element of bidegree `(p, q)` assigns to each valid tuple
//! `(α_0, ..., α_p)` a degree-`q` map from the complex at `α_p` to the
//! complex at `α_0`. The operations are
//!
//! - `δ̂f` with `(δ̂f)_{α_0..α_{p+1}} = Σ_{i=1}^{p} (-1)^i f_{α_0..α̂_i..α_{p+1}}`,
//! - the internal differential `f ↦ (-1)^{q+1} ∂f`,
//! - the product `(f·g)_{α_0..α_{p+r}} = (-1)^{qr} f_{α_0..α_p} ∘ g_{α_p..α_{p+r}}`,
//! - the total differential `D = δ̂ + (-1)^p ∂_int`.
//!
//! Elements here are unnormalised: tuples with adjacent repeats are allowed.
//! Maurer–Cartan elements store only nondegenerate tuples and fill in the
//! identity on `(α, α)` and zero on longer degenerate tuples.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::dg_nerve::{face_degree, is_degenerate, DgSimplex, SimplexFamily, SpineData};
use crate::error::{Error, Result};
use crate::homalg::{is_quasi_iso, same_complex, Cx, GradedMap};
use crate::report::{Finding, Report};
use crate::scalar::{sign_i64, Scalar};

/// A finite cover described by its nerve: which index sets have nonempty
/// intersection, optionally together with order constraints on tuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cover {
    names: Vec<String>,
    present: BTreeSet<u64>,
    levels: Vec<Vec<usize>>,
}

fn mask_of(t: &[usize]) -> u64 {
    t.iter().fold(0u64, |m, &a| m | (1u64 << a))
}

fn downward_closure(maximal: impl IntoIterator<Item = u64>, n: usize) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<u64> = maximal.into_iter().collect();
    stack.extend((0..n).map(|a| 1u64 << a));
    while let Some(m) = stack.pop() {
        if m == 0 || !out.insert(m) {
            continue;
        }
        for a in 0..n {
            if m >> a & 1 == 1 {
                stack.push(m & !(1u64 << a));
            }
        }
    }
    out
}

impl Cover {
    /// A cover whose nerve is the downward closure of the given index sets.
    pub fn new(names: Vec<String>, sets: &[Vec<usize>]) -> Result<Self> {
        let n = names.len();
        if n == 0 || n > 63 {
            return Err(Error::InvalidInput(format!(
                "covers need between 1 and 63 opens, got {n}"
            )));
        }
        if let Some(bad) = sets.iter().flatten().find(|&&a| a >= n) {
            return Err(Error::InvalidIndex(format!(
                "open index {bad} out of range"
            )));
        }
        let present = downward_closure(sets.iter().map(|s| mask_of(s)), n);
        Ok(Cover {
            names,
            present,
            levels: Vec::new(),
        })
    }

    /// `n` opens with every intersection nonempty, named `0..n`.
    pub fn full(n: usize) -> Result<Self> {
        let names = (0..n).map(|a| a.to_string()).collect();
        Cover::new(names, &[(0..n).collect()])
    }

    /// The standard simplex `Δ[n]` as an ordered cover: only nondecreasing
    /// tuples are valid, so nondegenerate tuples are exactly its faces.
    pub fn ordered_simplex(n: usize) -> Result<Self> {
        let mut c = Cover::full(n + 1)?;
        c.levels = vec![(0..=n).collect()];
        Ok(c)
    }

    /// Adds a level function: valid tuples must be nondecreasing in it.
    pub fn with_levels(mut self, levels: Vec<usize>) -> Result<Self> {
        if levels.len() != self.names.len() {
            return Err(Error::InvalidInput("one level per open is required".into()));
        }
        self.levels.push(levels);
        Ok(self)
    }

    /// The cover of `U x Δ[1]`: opens `(α, j)` at index `2α + j`, valid
    /// tuples are those with valid projection and nondecreasing `j`.
    pub fn doubled(&self) -> Result<Self> {
        let n = self.names.len();
        if 2 * n > 63 {
            return Err(Error::InvalidInput("cover too large to double".into()));
        }
        let names = (0..2 * n)
            .map(|k| format!("{}/{}", self.names[k / 2], k % 2))
            .collect();
        let mut present = BTreeSet::new();
        for &m in &self.present {
            let members: Vec<usize> = (0..n).filter(|a| m >> a & 1 == 1).collect();
            for choice in 1u64..(1u64 << (2 * members.len())) {
                let mut dm = 0u64;
                let mut proj = 0u64;
                for (k, &a) in members.iter().enumerate() {
                    for j in 0..2 {
                        if choice >> (2 * k + j) & 1 == 1 {
                            dm |= 1u64 << (2 * a + j);
                            proj |= 1u64 << a;
                        }
                    }
                }
                if proj == m {
                    present.insert(dm);
                }
            }
        }
        let mut levels: Vec<Vec<usize>> = self
            .levels
            .iter()
            .map(|l| (0..2 * n).map(|k| l[k / 2]).collect())
            .collect();
        levels.push((0..2 * n).map(|k| k % 2).collect());
        Ok(Cover {
            names,
            present,
            levels,
        })
    }

    /// Number of opens.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false: covers have at least one open.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Names of the opens.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Order constraints.
    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    /// Maximal present index sets, each sorted.
    pub fn maximal_sets(&self) -> Vec<Vec<usize>> {
        self.present
            .iter()
            .filter(|&&m| !self.present.iter().any(|&o| o != m && o & m == m))
            .map(|&m| (0..self.names.len()).filter(|a| m >> a & 1 == 1).collect())
            .collect()
    }

    /// True when the index set of `t` has nonempty intersection.
    pub fn is_present(&self, t: &[usize]) -> bool {
        t.iter().all(|&a| a < self.names.len()) && self.present.contains(&mask_of(t))
    }

    /// True when `t` is a valid (possibly degenerate) tuple.
    pub fn is_valid(&self, t: &[usize]) -> bool {
        !t.is_empty()
            && self.is_present(t)
            && self
                .levels
                .iter()
                .all(|l| t.windows(2).all(|w| l[w[0]] <= l[w[1]]))
    }

    /// All valid tuples of the given length, degenerate ones included, in
    /// lexicographic order.
    pub fn valid_tuples(&self, len: usize) -> Vec<Vec<usize>> {
        self.tuples(len, false)
    }

    /// All valid nondegenerate tuples of the given length, in lexicographic order.
    pub fn nondegenerate_tuples(&self, len: usize) -> Vec<Vec<usize>> {
        self.tuples(len, true)
    }

    fn tuples(&self, len: usize, nondegenerate: bool) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if len == 0 {
            return out;
        }
        let mut cur = Vec::with_capacity(len);
        self.rec(len, nondegenerate, &mut cur, &mut out);
        out
    }

    fn rec(&self, len: usize, nondeg: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for a in 0..self.names.len() {
            if let Some(&last) = cur.last() {
                if nondeg && last == a {
                    continue;
                }
                if self.levels.iter().any(|l| l[last] > l[a]) {
                    continue;
                }
            }
            cur.push(a);
            if self.is_present(cur) {
                self.rec(len, nondeg, cur, out);
            }
            cur.pop();
        }
    }
}

/// A complex for every open.
pub type Labelling<F> = Vec<Cx<F>>;

/// A finite sum of components `f_{(t, q)}`, each a degree-`q` map from the
/// complex at the last entry of `t` to the complex at the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedElement<F> {
    comps: BTreeMap<(Vec<usize>, i64), GradedMap<F>>,
}

impl<F: Scalar> Default for BigradedElement<F> {
    fn default() -> Self {
        BigradedElement {
            comps: BTreeMap::new(),
        }
    }
}

impl<F: Scalar> BigradedElement<F> {
    /// The zero element.
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `map` to the component at tuple `t`, checking its endpoints.
    pub fn add_component(
        &mut self,
        labelling: &Labelling<F>,
        t: Vec<usize>,
        map: GradedMap<F>,
    ) -> Result<()> {
        self.add_between(labelling, labelling, t, map)
    }

    /// Adds a component of `Hom(source, target)` at tuple `t`: a map from
    /// `source[t_p]` to `target[t_0]`.
    pub fn add_between(
        &mut self,
        source: &Labelling<F>,
        target: &Labelling<F>,
        t: Vec<usize>,
        map: GradedMap<F>,
    ) -> Result<()> {
        if t.is_empty() || t.iter().any(|&a| a >= source.len() || a >= target.len()) {
            return Err(Error::Shape(format!(
                "tuple {t:?} does not index the labelling"
            )));
        }
        if !same_complex(map.source(), &source[*t.last().unwrap()])
            || !same_complex(map.target(), &target[t[0]])
        {
            return Err(Error::Shape(format!(
                "component at {t:?} has the wrong endpoints"
            )));
        }
        self.add_unchecked(t, map);
        Ok(())
    }

    pub(crate) fn add_unchecked(&mut self, t: Vec<usize>, map: GradedMap<F>) {
        let key = (t, map.degree());
        match self.comps.get_mut(&key) {
            Some(existing) => {
                existing.add_assign(&map).expect("same endpoints");
                if existing.is_zero() {
                    self.comps.remove(&key);
                }
            }
            None => {
                if !map.is_zero() {
                    self.comps.insert(key, map);
                }
            }
        }
    }

    /// Nonzero components keyed by `(tuple, q)`.
    pub fn components(&self) -> &BTreeMap<(Vec<usize>, i64), GradedMap<F>> {
        &self.comps
    }

    /// Component at `(t, q)`, if nonzero.
    pub fn get(&self, t: &[usize], q: i64) -> Option<&GradedMap<F>> {
        self.comps.get(&(t.to_vec(), q))
    }

    /// True when every component vanishes.
    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Sum.
    pub fn add(&self, other: &BigradedElement<F>) -> BigradedElement<F> {
        let mut out = self.clone();
        for ((t, _), m) in &other.comps {
            out.add_unchecked(t.clone(), m.clone());
        }
        out
    }

    /// Negation.
    pub fn neg(&self) -> BigradedElement<F> {
        BigradedElement {
            comps: self
                .comps
                .iter()
                .map(|(k, m)| (k.clone(), m.neg()))
                .collect(),
        }
    }

    /// Difference.
    pub fn sub(&self, other: &BigradedElement<F>) -> BigradedElement<F> {
        self.add(&other.neg())
    }

    /// The part of bidegree `(p, q)`.
    pub fn bidegree_part(&self, p: usize, q: i64) -> BigradedElement<F> {
        BigradedElement {
            comps: self
                .comps
                .iter()
                .filter(|((t, d), _)| t.len() == p + 1 && *d == q)
                .map(|(k, m)| (k.clone(), m.clone()))
                .collect(),
        }
    }

    /// Keeps components whose tuple has at most `len` entries.
    pub fn truncate(&self, len: usize) -> BigradedElement<F> {
        BigradedElement {
            comps: self
                .comps
                .iter()
                .filter(|((t, _), _)| t.len() <= len)
                .map(|(k, m)| (k.clone(), m.clone()))
                .collect(),
        }
    }

    /// The deleted Čech differential `δ̂`, inserting opens at interior positions.
    pub fn deleted_cech_diff(&self, cover: &Cover) -> BigradedElement<F> {
        let mut out = BigradedElement::new();
        for ((t, _), m) in &self.comps {
            let p = t.len() - 1;
            for i in 1..=p {
                for beta in 0..cover.len() {
                    let mut s = t.clone();
                    s.insert(i, beta);
                    if cover.is_valid(&s) {
                        out.add_unchecked(s, m.signed(i as i64));
                    }
                }
            }
        }
        out
    }

    /// The internal differential `(-1)^{q+1} ∂`.
    pub fn internal_diff(&self) -> BigradedElement<F> {
        let mut out = BigradedElement::new();
        for ((t, q), m) in &self.comps {
            out.add_unchecked(t.clone(), m.hom_differential().signed(q + 1));
        }
        out
    }

    /// The total differential `D = δ̂ + (-1)^p ∂_int`.
    pub fn total_diff(&self, cover: &Cover) -> BigradedElement<F> {
        let mut out = self.deleted_cech_diff(cover);
        for ((t, q), m) in &self.comps {
            let p = t.len() as i64 - 1;
            out.add_unchecked(t.clone(), m.hom_differential().signed(q + 1 + p));
        }
        out
    }

    /// The product `(f·g)_{s} = (-1)^{qr} f_{front} ∘ g_{back}` over valid concatenations.
    pub fn cup(&self, g: &BigradedElement<F>, cover: &Cover) -> BigradedElement<F> {
        let mut by_first = BTreeMap::<usize, Vec<_>>::new();
        for ((t, _), m) in &g.comps {
            by_first.entry(t[0]).or_default().push((t, m));
        }
        let mut out = BigradedElement::new();
        for ((t, q), f) in &self.comps {
            let Some(backs) = by_first.get(t.last().unwrap()) else {
                continue;
            };
            for (u, gm) in backs {
                let mut s = t.clone();
                s.extend_from_slice(&u[1..]);
                if !cover.is_valid(&s) {
                    continue;
                }
                let r = u.len() as i64 - 1;
                out.add_unchecked(s, f.compose(gm).expect("shared open").signed(q * r));
            }
        }
        out
    }
}

/// `(-1)^{λ(j-1)}` and `(-1)^{(1-j)(λ-j)}` agree for all `1 ≤ j < λ`.
pub fn sign_lemma_holds(lambda: i64, j: i64) -> bool {
    sign_i64(lambda * (j - 1)) == sign_i64((1 - j) * (lambda - j))
}

/// A Maurer–Cartan element with its cover and labelling: a degree `1 - p`
/// map for each valid nondegenerate tuple of length `p + 1 ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McElement<F> {
    cover: Cover,
    labelling: Labelling<F>,
    maps: BTreeMap<Vec<usize>, GradedMap<F>>,
}

impl<F: Scalar> McElement<F> {
    /// Checks tuples, endpoints and degrees; zero maps are dropped.
    pub fn new(
        cover: Cover,
        labelling: Labelling<F>,
        maps: BTreeMap<Vec<usize>, GradedMap<F>>,
    ) -> Result<Self> {
        if labelling.len() != cover.len() {
            return Err(Error::InvalidInput(format!(
                "{} opens but {} complexes",
                cover.len(),
                labelling.len()
            )));
        }
        let mut kept = BTreeMap::new();
        for (t, m) in maps {
            if t.len() < 2 || is_degenerate(&t) || !cover.is_valid(&t) {
                return Err(Error::Shape(format!(
                    "tuple {t:?} is not a valid nondegenerate tuple of length at least 2"
                )));
            }
            if m.degree() != face_degree(t.len()) {
                return Err(Error::Shape(format!(
                    "component at {t:?} has bidegree ({}, {}), expected ({}, {})",
                    t.len() - 1,
                    m.degree(),
                    t.len() - 1,
                    face_degree(t.len())
                )));
            }
            if !same_complex(m.source(), &labelling[*t.last().unwrap()])
                || !same_complex(m.target(), &labelling[t[0]])
            {
                return Err(Error::Shape(format!(
                    "component at {t:?} has the wrong endpoints"
                )));
            }
            let m = m.with_endpoints(
                labelling[*t.last().unwrap()].clone(),
                labelling[t[0]].clone(),
            )?;
            if !m.is_zero() {
                kept.insert(t, m);
            }
        }
        Ok(McElement {
            cover,
            labelling,
            maps: kept,
        })
    }

    /// Reads an element from the bigraded algebra, rejecting components of
    /// bidegree other than `(p, 1 - p)` with `p ≥ 1`.
    pub fn from_bigraded(
        cover: Cover,
        labelling: Labelling<F>,
        e: &BigradedElement<F>,
    ) -> Result<Self> {
        let mut maps = BTreeMap::new();
        for ((t, q), m) in e.components() {
            if t.len() < 2 || *q != face_degree(t.len()) {
                return Err(Error::Shape(format!(
                    "component at {t:?} has bidegree ({}, {q})",
                    t.len() as i64 - 1
                )));
            }
            if is_degenerate(t) {
                continue;
            }
            maps.insert(t.clone(), m.clone());
        }
        McElement::new(cover, labelling, maps)
    }

    /// The cover.
    pub fn cover(&self) -> &Cover {
        &self.cover
    }

    /// Complexes on the opens.
    pub fn labelling(&self) -> &Labelling<F> {
        &self.labelling
    }

    /// Stored nonzero components.
    pub fn maps(&self) -> &BTreeMap<Vec<usize>, GradedMap<F>> {
        &self.maps
    }

    /// The largest `p` for which a degree `1 - p` map between two labels can
    /// be nonzero.
    pub fn max_p(&self) -> usize {
        let nonzero: Vec<&Cx<F>> = self.labelling.iter().filter(|c| !c.is_zero()).collect();
        if nonzero.is_empty() {
            return 1;
        }
        let lo = nonzero.iter().map(|c| c.lo()).min().unwrap();
        let hi = nonzero.iter().map(|c| c.hi()).max().unwrap();
        (hi - lo + 1).max(1) as usize
    }

    /// Tuples of this length or shorter carry the nerve family: every tuple
    /// with possibly nonzero data and every tuple of distinct opens.
    pub fn nerve_len(&self) -> usize {
        let widest = self
            .cover
            .maximal_sets()
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(1);
        (self.max_p() + 1).max(widest)
    }

    /// `f_t` on any valid tuple, with forced values on degenerate tuples and
    /// zero on tuples without a stored component.
    pub fn label(&self, t: &[usize]) -> GradedMap<F> {
        let src = self.labelling[*t.last().unwrap()].clone();
        let tgt = self.labelling[t[0]].clone();
        if is_degenerate(t) {
            return if t.len() == 2 {
                GradedMap::identity(tgt)
            } else {
                GradedMap::zero(src, tgt, face_degree(t.len()))
            };
        }
        match self.maps.get(t) {
            Some(m) => m.clone(),
            None => GradedMap::zero(src, tgt, face_degree(t.len())),
        }
    }

    /// The element in the unnormalised bigraded algebra, forced values on
    /// degenerate tuples included, for tuples of length up to `max_len`.
    pub fn to_bigraded(&self, max_len: usize) -> BigradedElement<F> {
        let mut e = BigradedElement::new();
        for len in 2..=max_len {
            for t in self.cover.valid_tuples(len) {
                let m = self.label(&t);
                e.add_unchecked(t, m);
            }
        }
        e
    }

    /// The differentials of the labels, presented as the `(0, 1)` column.
    pub fn differential_column(&self) -> BigradedElement<F> {
        let mut e = BigradedElement::new();
        for (a, c) in self.labelling.iter().enumerate() {
            e.add_unchecked(vec![a], GradedMap::differential(c.clone()));
        }
        e
    }

    /// The Maurer–Cartan residual on a single tuple of length `p + 1 ≥ 2`:
    /// `∂f_t + Σ_{i=1}^{p-1} (-1)^i f_{t∖i} + Σ_{j=1}^{p-1} (-1)^{(1-j)(p-j)} f_{0..j} ∘ f_{j..p}`.
    pub fn residual(&self, t: &[usize]) -> GradedMap<F> {
        let p = t.len() - 1;
        let mut r = self.label(t).hom_differential();
        for i in 1..p {
            let mut s = t.to_vec();
            s.remove(i);
            r.add_assign(&self.label(&s).signed(i as i64))
                .expect("shared endpoints");
        }
        for j in 1..p {
            let prod = self
                .label(&t[..=j])
                .compose(&self.label(&t[j..]))
                .expect("composable");
            let e = (1 - j as i64) * (p as i64 - j as i64);
            r.add_assign(&prod.signed(e)).expect("shared endpoints");
        }
        r
    }

    /// Checks `Df + f·f = 0` on every valid tuple up to the length where
    /// components can be nonzero; findings are sorted by length then tuple.
    pub fn is_mc(&self) -> Report {
        let max_len = self.max_p() + 2;
        let tuples: Vec<Vec<usize>> = (2..=max_len)
            .flat_map(|l| self.cover.valid_tuples(l))
            .collect();
        let findings: Vec<Finding> = tuples
            .par_iter()
            .filter_map(|t| {
                let r = self.residual(t);
                (!r.is_zero()).then(|| {
                    Finding::error("mc", "Maurer-Cartan equation fails")
                        .at_tuple(t)
                        .with_bidegree(t.len() as i64 - 1, 2 - (t.len() as i64 - 1))
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

    /// `Df + f·f` computed with the algebra operations, restricted to tuples
    /// of length at most `max_p() + 2`.
    pub fn mc_curvature(&self) -> BigradedElement<F> {
        let bound = self.max_p() + 2;
        let f = self.to_bigraded(bound - 1);
        f.total_diff(&self.cover)
            .add(&f.cup(&f, &self.cover))
            .truncate(bound)
    }

    /// Edge quasi-isomorphism check: one finding per edge that is not a quasi-isomorphism.
    pub fn edge_report(&self) -> Report {
        let mut report = Report::new();
        for t in self.cover.nondegenerate_tuples(2) {
            if !is_quasi_iso(&self.label(&t)).unwrap_or(false) {
                report.push(
                    Finding::error("edge-quasi-iso", "edge map is not a quasi-isomorphism")
                        .at_tuple(&t)
                        .with_bidegree(1, 0),
                );
            }
        }
        report
    }

    /// The data as spine labels for the dg-nerve.
    pub fn spine(&self) -> SpineData<F> {
        SpineData {
            objects: self.labelling.iter().cloned().enumerate().collect(),
            maps: self.maps.clone(),
        }
    }

    /// Relabels the opens along `perm` (open `a` becomes `perm[a]`).
    pub fn relabel(&self, perm: &[usize], cover: Cover) -> Result<McElement<F>> {
        let mut labelling = self.labelling.clone();
        for (a, &b) in perm.iter().enumerate() {
            labelling[b] = self.labelling[a].clone();
        }
        let maps = self
            .maps
            .iter()
            .map(|(t, m)| (t.iter().map(|&a| perm[a]).collect(), m.clone()))
            .collect();
        McElement::new(cover, labelling, maps)
    }
}

/// One dg-nerve simplex for every valid nondegenerate tuple up to length
/// [`McElement::nerve_len`], refusing elements that are not Maurer–Cartan.
pub fn mc_to_labelling<F: Scalar>(mc: &McElement<F>) -> Result<SimplexFamily<F>> {
    let report = mc.is_mc();
    if !report.is_valid() {
        return Err(Error::ConversionRefused(format!(
            "element is not Maurer-Cartan:\n{report}"
        )));
    }
    let spine = mc.spine();
    let mut out = BTreeMap::new();
    for len in 1..=mc.nerve_len() {
        for t in mc.cover.nondegenerate_tuples(len) {
            let s = spine.simplex_forced(&t)?;
            out.insert(t, s);
        }
    }
    Ok(out)
}

/// Reads a Maurer–Cartan element back from a family of dg-nerve simplices,
/// refusing families that are incomplete, not functorial or fail validation.
pub fn labelling_to_mc<F: Scalar>(cover: Cover, family: &SimplexFamily<F>) -> Result<McElement<F>> {
    let mut labelling: Vec<Option<Cx<F>>> = vec![None; cover.len()];
    for (t, s) in family {
        for (k, &a) in t.iter().enumerate() {
            match &labelling[a] {
                None => labelling[a] = Some(s.object(k).clone()),
                Some(c) if **c == **s.object(k) => {}
                Some(_) => {
                    return Err(Error::ConversionRefused(format!(
                        "open {a} carries two different complexes"
                    )))
                }
            }
        }
    }
    let labelling: Labelling<F> = labelling
        .into_iter()
        .enumerate()
        .map(|(a, c)| {
            c.ok_or_else(|| Error::ConversionRefused(format!("open {a} is not labelled")))
        })
        .collect::<Result<_>>()?;
    let mut maps = BTreeMap::new();
    for (t, s) in family {
        if t.len() >= 2 {
            maps.insert(
                t.clone(),
                s.label_ref(&crate::simplex_core::Face::full(t.len() - 1))
                    .clone(),
            );
        }
    }
    let mc = McElement::new(cover, labelling, maps)?;
    for len in 1..=mc.nerve_len() {
        if let Some(t) = mc
            .cover
            .nondegenerate_tuples(len)
            .into_iter()
            .find(|t| !family.contains_key(t))
        {
            return Err(Error::ConversionRefused(format!(
                "tuple {t:?} has no simplex"
            )));
        }
    }
    let report = mc.is_mc();
    if !report.is_valid() {
        return Err(Error::ConversionRefused(format!(
            "family does not assemble to a Maurer-Cartan element:\n{report}"
        )));
    }
    let spine = mc.spine();
    for (t, s) in family {
        let report = s.validate();
        if !report.is_valid() {
            return Err(Error::ConversionRefused(format!(
                "simplex {t:?} fails validation:\n{report}"
            )));
        }
        if spine.simplex_forced(t)? != *s {
            return Err(Error::ConversionRefused(format!(
                "simplex {t:?} is not the restriction of its neighbours"
            )));
        }
    }
    Ok(mc)
}

impl<F: Scalar> SpineData<F> {
    /// Like [`SpineData::simplex`], with missing nondegenerate labels read as zero.
    pub fn simplex_forced(&self, t: &[usize]) -> Result<DgSimplex<F>> {
        let objects: Vec<Cx<F>> = t
            .iter()
            .map(|v| {
                self.objects
                    .get(v)
                    .cloned()
                    .ok_or_else(|| Error::Incomplete(format!("vertex {v} has no complex")))
            })
            .collect::<Result<_>>()?;
        DgSimplex::from_fn(objects.clone(), |face| {
            let sub: Vec<usize> = face.vertices().iter().map(|&k| t[k]).collect();
            match self.label(&sub) {
                Ok(m) => Ok(m),
                Err(Error::Incomplete(_)) => Ok(GradedMap::zero(
                    objects[face.last()].clone(),
                    objects[face.first()].clone(),
                    face_degree(face.len()),
                )),
                Err(e) => Err(e),
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::Complex;
    use crate::matrix::Matrix;
    use crate::scalar::Q;
    use std::sync::Arc;

    fn pt() -> Cx<Q> {
        Arc::new(Complex::concentrated(0, 1))
    }

    fn scalar_map(v: i64) -> GradedMap<Q> {
        GradedMap::from_components(pt(), pt(), 0, vec![(0, Matrix::from_i64(1, 1, &[v]))]).unwrap()
    }

    #[test]
    fn tuple_enumeration() {
        let c = Cover::full(3).unwrap();
        assert_eq!(c.nondegenerate_tuples(2).len(), 6);
        assert_eq!(c.valid_tuples(2).len(), 9);
        let d = Cover::ordered_simplex(2).unwrap();
        assert_eq!(d.nondegenerate_tuples(3), vec![vec![0, 1, 2]]);
        let sparse = Cover::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        assert!(!sparse.is_valid(&[0, 2]));
        assert!(sparse.is_valid(&[0, 1, 0]));
        let dbl = Cover::ordered_simplex(1).unwrap().doubled().unwrap();
        assert_eq!(dbl.nondegenerate_tuples(3).len(), 2);
    }

    #[test]
    fn cech_diff_on_edge() {
        let cover = Cover::full(3).unwrap();
        let lab = vec![pt(), pt(), pt()];
        let mut f = BigradedElement::new();
        f.add_component(&lab, vec![0, 2], scalar_map(5)).unwrap();
        let d = f.deleted_cech_diff(&cover);
        assert_eq!(d.get(&[0, 1, 2], 0), Some(&scalar_map(-5)));
        assert!(d.deleted_cech_diff(&cover).is_zero());
    }

    #[test]
    fn sign_lemma() {
        for l in 2..=12 {
            for j in 1..l {
                assert!(sign_lemma_holds(l, j));
            }
        }
    }

    #[test]
    fn strict_cocycle_is_mc() {
        let cover = Cover::full(2).unwrap();
        let lab = vec![pt(), pt()];
        let maps = BTreeMap::from([
            (vec![0, 1], scalar_map(2)),
            (vec![1, 0], scalar_map(1).scale(&Q::new(1, 2))),
        ]);
        let mc = McElement::new(cover.clone(), lab.clone(), maps).unwrap();
        assert!(mc.is_mc().is_valid());
        let bad = McElement::new(
            cover,
            lab,
            BTreeMap::from([(vec![0, 1], scalar_map(2)), (vec![1, 0], scalar_map(1))]),
        )
        .unwrap();
        let rep = bad.is_mc();
        assert_eq!(rep.findings()[0].tuple, Some(vec![0, 1, 0]));
    }
}
