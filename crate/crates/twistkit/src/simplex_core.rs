//! Combinatorics of standard simplices, horns, prisms `Δ[p] x Δ[1]`,
//! barycentric flags and pair subdivisions.
//!
//! Every enumeration is deterministic: faces are ordered by dimension and
//! then lexicographically, and all other sequences lexicographically.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A nonempty face `{v_0 < ... < v_k}` of `Δ[ambient]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Face {
    vertices: Vec<usize>,
    ambient: usize,
}

impl Face {
    /// Validates a strictly increasing nonempty vertex list bounded by `ambient`.
    pub fn new(vertices: Vec<usize>, ambient: usize) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidInput(
                "a face needs at least one vertex".into(),
            ));
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!(
                "face vertices {vertices:?} are not strictly increasing"
            )));
        }
        if *vertices.last().unwrap() > ambient {
            return Err(Error::InvalidIndex(format!(
                "face {vertices:?} exceeds Δ[{ambient}]"
            )));
        }
        Ok(Face { vertices, ambient })
    }

    /// The top face `[p]`.
    pub fn full(p: usize) -> Self {
        Face {
            vertices: (0..=p).collect(),
            ambient: p,
        }
    }

    /// Vertex list.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// The ambient dimension `p`.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Dimension `|F| - 1`.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Always false: faces are nonempty.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// First vertex.
    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    /// Last vertex.
    pub fn last(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// True when `v` is a vertex.
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Position of `v` in the face.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// True when every vertex of `self` is a vertex of `other`.
    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.vertices.iter().all(|&v| other.contains(v))
    }

    /// The face with the `k`-th vertex removed, or `None` for a vertex.
    pub fn delete(&self, k: usize) -> Option<Face> {
        if self.vertices.len() == 1 {
            return None;
        }
        let mut v = self.vertices.clone();
        v.remove(k);
        Some(Face {
            vertices: v,
            ambient: self.ambient,
        })
    }

    /// The face with vertex `v` removed.
    pub fn without(&self, v: usize) -> Option<Face> {
        self.position(v).and_then(|k| self.delete(k))
    }

    /// The face with vertex `v` added.
    pub fn with(&self, v: usize) -> Face {
        let mut vs = self.vertices.clone();
        if let Err(k) = vs.binary_search(&v) {
            vs.insert(k, v);
        }
        Face {
            vertices: vs,
            ambient: self.ambient.max(v),
        }
    }

    /// The same vertex set viewed in another ambient simplex.
    pub fn in_ambient(&self, ambient: usize) -> Result<Face> {
        Face::new(self.vertices.clone(), ambient)
    }

    /// Positions of this face's vertices inside `outer` (which must contain it).
    pub fn positions_in(&self, outer: &Face) -> Option<Vec<usize>> {
        self.vertices.iter().map(|&v| outer.position(v)).collect()
    }

    /// All nonempty subfaces, ordered by dimension and then lexicographically.
    pub fn subfaces(&self) -> Vec<Face> {
        let n = self.vertices.len();
        let mut out: Vec<Face> = (1u64..(1u64 << n))
            .map(|mask| Face {
                vertices: (0..n)
                    .filter(|k| mask >> k & 1 == 1)
                    .map(|k| self.vertices[k])
                    .collect(),
                ambient: self.ambient,
            })
            .collect();
        out.sort();
        out
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices
            .len()
            .cmp(&other.vertices.len())
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.vertices.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// All `(k+1)`-element faces of `Δ[p]` in lexicographic order.
pub fn enumerate_faces(p: usize, k: usize) -> Result<Vec<Face>> {
    if k > p {
        return Err(Error::InvalidDimension(format!(
            "Δ[{p}] has no faces of dimension {k}"
        )));
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k + 1);
    fn rec(start: usize, p: usize, need: usize, cur: &mut Vec<usize>, out: &mut Vec<Face>) {
        if need == 0 {
            out.push(Face {
                vertices: cur.clone(),
                ambient: p,
            });
            return;
        }
        for v in start..=p + 1 - need {
            cur.push(v);
            rec(v + 1, p, need - 1, cur, out);
            cur.pop();
        }
    }
    rec(0, p, k + 1, &mut cur, &mut out);
    Ok(out)
}

/// All faces of `Δ[p]`, ordered by dimension and then lexicographically.
pub fn all_faces(p: usize) -> Vec<Face> {
    (0..=p)
        .flat_map(|k| enumerate_faces(p, k).expect("k <= p"))
        .collect()
}

/// Faces of the horn `Λ_i[p]`: those `F` with `F ∪ {i} ≠ [p]`.
///
/// For `p = 1`, `i = 0` this is `{0}` alone, since `{1} ∪ {0} = [1]`.
pub fn horn_simplices(p: usize, i: usize) -> Result<Vec<Face>> {
    if i > p {
        return Err(Error::InvalidIndex(format!("horn index {i} exceeds {p}")));
    }
    Ok(all_faces(p)
        .into_iter()
        .filter(|f| f.with(i).len() != p + 1)
        .collect())
}

/// A nondegenerate simplex of `Δ[p] x Δ[1]`: a strictly increasing path of
/// grid points `(i, j)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PrismSimplex {
    path: Vec<(usize, usize)>,
}

impl PrismSimplex {
    /// Validates that the path is nonempty and strictly increasing with `j ≤ 1`.
    pub fn new(path: Vec<(usize, usize)>) -> Result<Self> {
        if path.is_empty() {
            return Err(Error::InvalidInput(
                "prism simplex needs at least one point".into(),
            ));
        }
        if path.iter().any(|&(_, j)| j > 1) {
            return Err(Error::InvalidInput(
                "prism points have second coordinate 0 or 1".into(),
            ));
        }
        if path
            .windows(2)
            .any(|w| !(w[0].0 <= w[1].0 && w[0].1 <= w[1].1 && w[0] != w[1]))
        {
            return Err(Error::InvalidInput(format!(
                "prism path {path:?} is not strictly increasing"
            )));
        }
        Ok(PrismSimplex { path })
    }

    /// Grid points in order.
    pub fn path(&self) -> &[(usize, usize)] {
        &self.path
    }

    /// Dimension (number of points minus one).
    pub fn dim(&self) -> usize {
        self.path.len() - 1
    }

    /// Number of consecutive pairs with equal first coordinate.
    pub fn vertical_steps(&self) -> usize {
        self.path.windows(2).filter(|w| w[0].0 == w[1].0).count()
    }

    /// The simplex with the `k`-th point removed.
    pub fn delete(&self, k: usize) -> Option<PrismSimplex> {
        if self.path.len() == 1 {
            return None;
        }
        let mut path = self.path.clone();
        path.remove(k);
        Some(PrismSimplex { path })
    }

    /// Sub-path through the points at positions `lo..=hi`.
    pub fn segment(&self, lo: usize, hi: usize) -> PrismSimplex {
        PrismSimplex {
            path: self.path[lo..=hi].to_vec(),
        }
    }
}

/// All nondegenerate `q`-simplices of `Δ[p] x Δ[1]` in lexicographic order.
pub fn prism_simplices(p: usize, q: usize) -> Vec<PrismSimplex> {
    let points: Vec<(usize, usize)> = (0..=p).flat_map(|i| [(i, 0), (i, 1)]).collect();
    let mut sorted = points.clone();
    sorted.sort();
    let mut out = Vec::new();
    let mut cur: Vec<(usize, usize)> = Vec::new();
    fn rec(
        points: &[(usize, usize)],
        need: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<PrismSimplex>,
    ) {
        if need == 0 {
            out.push(PrismSimplex { path: cur.clone() });
            return;
        }
        for &pt in points {
            if let Some(&last) = cur.last() {
                if !(last.0 <= pt.0 && last.1 <= pt.1 && last != pt) {
                    continue;
                }
            }
            cur.push(pt);
            rec(points, need - 1, cur, out);
            cur.pop();
        }
    }
    rec(&sorted, q + 1, &mut cur, &mut out);
    out
}

/// The `p + 1` top simplices `Δ_m^{p+1}` of `Δ[p] x Δ[1]`, `m = 0..=p`:
/// along the bottom row to `m`, one vertical step, then along the top row.
pub fn prism_top(p: usize) -> Vec<PrismSimplex> {
    (0..=p).map(|m| prism_top_m(p, m)).collect()
}

/// The single top simplex `Δ_m^{p+1}`.
pub fn prism_top_m(p: usize, m: usize) -> PrismSimplex {
    let mut path: Vec<(usize, usize)> = (0..=m).map(|i| (i, 0)).collect();
    path.extend((m..=p).map(|i| (i, 1)));
    PrismSimplex { path }
}

/// A cell `(τ, σ)` of the pair subdivision, `τ ⊆ σ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairCell {
    tau: Face,
    sigma: Face,
}

impl PairCell {
    /// Validates `τ ⊆ σ` in the same ambient simplex.
    pub fn new(tau: Face, sigma: Face) -> Result<Self> {
        if tau.ambient != sigma.ambient || !tau.is_subface_of(&sigma) {
            return Err(Error::InvalidInput(format!(
                "{tau} is not a face of {sigma}"
            )));
        }
        Ok(PairCell { tau, sigma })
    }

    /// The smaller face `τ`.
    pub fn tau(&self) -> &Face {
        &self.tau
    }

    /// The larger face `σ`.
    pub fn sigma(&self) -> &Face {
        &self.sigma
    }

    /// Cell dimension `|σ| - |τ|`.
    pub fn dim(&self) -> usize {
        self.sigma.len() - self.tau.len()
    }
}

impl fmt::Debug for PairCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.tau, self.sigma)
    }
}

impl fmt::Display for PairCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.tau, self.sigma)
    }
}

/// A finite integer combination of pair cells with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CellChain {
    terms: BTreeMap<PairCell, i64>,
}

impl CellChain {
    /// Adds `c * cell`, dropping the term if it cancels.
    pub fn add_term(&mut self, cell: PairCell, c: i64) {
        let e = self.terms.entry(cell.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&cell);
        }
    }

    /// Terms in cell order.
    pub fn terms(&self) -> &BTreeMap<PairCell, i64> {
        &self.terms
    }

    /// True when the chain is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True when there are no terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Linear extension of `pair_boundary`.
    pub fn boundary(&self) -> CellChain {
        let mut out = CellChain::default();
        for (cell, &c) in &self.terms {
            for (t, &k) in pair_boundary(cell).terms() {
                out.add_term(t.clone(), c * k);
            }
        }
        out
    }
}

/// All cells of `Δ[p]_pair`, ordered by dimension, then `σ`, then `τ`.
pub fn pair_cells(p: usize) -> Vec<PairCell> {
    let faces = all_faces(p);
    let mut cells: Vec<PairCell> = faces
        .iter()
        .flat_map(|s| {
            s.subfaces().into_iter().map(move |t| PairCell {
                tau: t,
                sigma: s.clone(),
            })
        })
        .collect();
    cells.sort_by(|a, b| {
        a.dim()
            .cmp(&b.dim())
            .then_with(|| a.sigma.cmp(&b.sigma))
            .then_with(|| a.tau.cmp(&b.tau))
    });
    cells
}

/// Cellular boundary of a pair cell.
///
/// `∂(τ, σ) = Σ_u (-1)^{pos(u, σ)} (τ, σ∖u) + (-1)^{dim σ} Σ_v (-1)^{pos(v, τ∪v)} (τ∪v, σ)`,
/// both sums over the vertices of `σ` not in `τ`.
pub fn pair_boundary(c: &PairCell) -> CellChain {
    let mut out = CellChain::default();
    let eps = if c.sigma.dim() % 2 == 0 { 1 } else { -1 };
    for (k, &u) in c.sigma.vertices.iter().enumerate() {
        if c.tau.contains(u) {
            continue;
        }
        let s = if k % 2 == 0 { 1 } else { -1 };
        let smaller = c.sigma.delete(k).expect("σ has a vertex outside τ");
        out.add_term(
            PairCell {
                tau: c.tau.clone(),
                sigma: smaller,
            },
            s,
        );
        let bigger = c.tau.with(u);
        let pos = bigger.position(u).unwrap();
        let s = if pos % 2 == 0 { 1 } else { -1 };
        out.add_term(
            PairCell {
                tau: bigger,
                sigma: c.sigma.clone(),
            },
            eps * s,
        );
    }
    out
}

/// Strict chains `S_0 ⊂ S_1 ⊂ ... ⊂ S_q` of nonempty faces of `Δ[p]`,
/// in lexicographic order of the face sequences.
pub fn bary_flags(p: usize, q: usize) -> Vec<Vec<Face>> {
    let faces = all_faces(p);
    let mut out = Vec::new();
    let mut cur: Vec<Face> = Vec::new();
    fn rec(faces: &[Face], need: usize, cur: &mut Vec<Face>, out: &mut Vec<Vec<Face>>) {
        if need == 0 {
            out.push(cur.clone());
            return;
        }
        for f in faces {
            if let Some(last) = cur.last() {
                if !(last.len() < f.len() && last.is_subface_of(f)) {
                    continue;
                }
            }
            cur.push(f.clone());
            rec(faces, need - 1, cur, out);
            cur.pop();
        }
    }
    rec(&faces, q + 1, &mut cur, &mut out);
    out
}

/// Connected components of a graph, each sorted, listed by smallest member.
pub fn components<V: Ord + Clone>(vertices: &BTreeSet<V>, edges: &[(V, V)]) -> Result<Vec<Vec<V>>> {
    let index: BTreeMap<&V, usize> = vertices.iter().enumerate().map(|(k, v)| (v, k)).collect();
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, b) in edges {
        let (Some(&ia), Some(&ib)) = (index.get(a), index.get(b)) else {
            return Err(Error::InvalidInput("edge endpoint is not a vertex".into()));
        };
        let (ra, rb) = (find(&mut parent, ia), find(&mut parent, ib));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut groups: BTreeMap<usize, Vec<V>> = BTreeMap::new();
    for (k, v) in vertices.iter().enumerate() {
        let r = find(&mut parent, k);
        groups.entry(r).or_default().push(v.clone());
    }
    Ok(groups.into_values().collect())
}
