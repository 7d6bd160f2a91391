//! Random instances with known structure, for fixtures, fuzzing and benchmarks.
//!
//! Everything is built inside a *span world*: a complex
//! `W = H ⊕ e_1 ⊕ ... ⊕ e_m` (a core `H` plus identity spans), twisted by a
//! random chain automorphism `u`. An object is a subset `S` of the spans; its
//! complex is `H ⊕ ⊕_{i ∈ S} e_i`, optionally rewritten in a random basis,
//! and it comes with maps `incl_S: X_S -> W`, `proj_S: W -> X_S` and a
//! homotopy `k_S` on `W` with `proj_S incl_S = id` and
//! `∂k_S = incl_S proj_S - id`. The maps
//! `φ_{S_0..S_p} = (-1)^{p(p-1)/2} proj_{S_0} k_{S_1} ... k_{S_{p-1}} incl_{S_p}`
//! then satisfy the dg-nerve relations for every sequence of objects.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::cech_mc::{Cover, McElement};
use crate::descent::{LocFreeData, TwistPath};
use crate::dg_nerve::{face_degree, DgSimplex};
use crate::error::{Error, Result};
use crate::gtt::{Complement, GttLabelling};
use crate::homalg::blocks::{block_map, inclusion, projection};
use crate::homalg::{
    direct_sum, elementary_morphism, same_complex, Complex, Cx, ElementaryDecl, GradedMap,
};
use crate::matrix::Matrix;
use crate::scalar::{sign, Scalar};
use crate::simplex_core::{Face, PairCell};

/// Size parameters for random instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    /// Complexes live in degrees `0..=amp`.
    pub amp: i64,
    /// Maximal dimension of the core in each degree.
    pub max_core_dim: usize,
    /// Maximal number of identity spans in the world.
    pub max_spans: usize,
    /// Maximal dimension of a span.
    pub max_span_dim: usize,
    /// Random entries are drawn from `-entry..=entry`.
    pub entry: i64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            amp: 1,
            max_core_dim: 2,
            max_spans: 2,
            max_span_dim: 1,
            entry: 2,
        }
    }
}

/// A random integer matrix with entries in `-r..=r`.
pub fn random_matrix<F: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    r: i64,
) -> Matrix<F> {
    Matrix::from_fn(rows, cols, |_, _| F::from_i64(rng.gen_range(-r..=r)))
}

/// A random sparse integer matrix: each entry is nonzero with probability `density`.
pub fn random_sparse_matrix<F: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    r: i64,
    density: f64,
) -> Matrix<F> {
    Matrix::from_fn(rows, cols, |_, _| {
        if rng.gen_bool(density) {
            F::from_i64(rng.gen_range(-r..=r))
        } else {
            F::zero()
        }
    })
}

/// A random invertible matrix (retrying random draws).
pub fn random_invertible<F: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize, r: i64) -> Matrix<F> {
    loop {
        let m: Matrix<F> = random_matrix(rng, n, n, r.max(1));
        if m.is_invertible() {
            return m;
        }
    }
}

/// A random graded map of the given degree.
pub fn random_map<F: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    source: &Cx<F>,
    target: &Cx<F>,
    degree: i64,
    r: i64,
) -> GradedMap<F> {
    GradedMap::from_fn(source.clone(), target.clone(), degree, |m| {
        Some(random_matrix(rng, target.dim(m + degree), source.dim(m), r))
    })
    .expect("shapes match")
}

/// Rewrites a complex in random bases; returns the new complex and the
/// isomorphism from it to the input.
pub fn random_rebase<F: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    c: &Cx<F>,
    r: i64,
) -> (Cx<F>, GradedMap<F>) {
    if c.is_zero() {
        return (c.clone(), GradedMap::identity(c.clone()));
    }
    let bases: Vec<Matrix<F>> = c
        .degrees()
        .map(|n| random_invertible(rng, c.dim(n), r))
        .collect();
    let inverses: Vec<Matrix<F>> = bases
        .iter()
        .map(|b| b.inverse().expect("invertible"))
        .collect();
    let new = Arc::new(c.conjugate(&inverses, &bases));
    let lo = c.lo();
    let iso = GradedMap::from_fn(new.clone(), c.clone(), 0, |n| {
        Some(bases[(n - lo) as usize].clone())
    })
    .expect("shapes match");
    (new, iso)
}

/// A random complex in degrees `lo..=hi`: random homology plus random spans,
/// in random bases.
pub fn random_complex<F: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    lo: i64,
    hi: i64,
    max_dim: usize,
    r: i64,
) -> Cx<F> {
    let core_dims: Vec<usize> = (lo..=hi).map(|_| rng.gen_range(0..=max_dim)).collect();
    let core = Complex::new(
        lo,
        core_dims.clone(),
        (1..core_dims.len())
            .map(|k| Matrix::zeros(core_dims[k], core_dims[k - 1]))
            .collect(),
    )
    .expect("zero differential");
    let mut spans: Vec<(usize, i64)> = Vec::new();
    for p in lo..hi {
        if rng.gen_bool(0.5) {
            spans.push((rng.gen_range(1..=max_dim.max(1)), p));
        }
    }
    let e: Complex<F> = ElementaryDecl::new(spans).expect("positive dims").build();
    let sum = Arc::new(direct_sum(&[&core, &e]));
    random_rebase(rng, &sum, r).0
}

/// An object of a span world.
#[derive(Clone, Debug)]
pub struct WorldObject<F> {
    /// Which spans are kept.
    pub subset: Vec<bool>,
    /// The complex `X_S`.
    pub complex: Cx<F>,
    /// `incl_S: X_S -> W`.
    pub incl: GradedMap<F>,
    /// `proj_S: W -> X_S`.
    pub proj: GradedMap<F>,
    /// `k_S` on `W`, degree `-1`, with `∂k_S = incl_S proj_S - id`.
    pub k: GradedMap<F>,
}

/// A complex with identity spans and a random automorphism; see the module docs.
#[derive(Clone, Debug)]
pub struct SpanWorld<F> {
    core: Cx<F>,
    spans: Vec<(usize, i64)>,
    world: Cx<F>,
    u: GradedMap<F>,
    u_inv: GradedMap<F>,
}

impl<F: Scalar> SpanWorld<F> {
    /// Builds a world from a core, spans and an automorphism of `W`.
    pub fn new(core: Cx<F>, spans: Vec<(usize, i64)>, u: Option<GradedMap<F>>) -> Result<Self> {
        let e: Complex<F> = ElementaryDecl::new(spans.clone())?.build();
        let world = Arc::new(direct_sum(&[&core, &e]));
        let u = match u {
            Some(u) => u.with_endpoints(world.clone(), world.clone())?,
            None => GradedMap::identity(world.clone()),
        };
        if !u.is_isomorphism() {
            return Err(Error::NotInvertible(
                "world automorphism is not a chain isomorphism".into(),
            ));
        }
        let u_inv = u.inverse()?;
        Ok(SpanWorld {
            core,
            spans,
            world,
            u,
            u_inv,
        })
    }

    /// A random world: random core and spans in degrees `0..=amp` and
    /// `u = id + ∂h` for a random `h`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, params: &GenParams) -> Self {
        let amp = params.amp.max(0);
        let core = random_complex::<F, R>(rng, 0, amp, params.max_core_dim, params.entry);
        let n_spans = if amp == 0 {
            0
        } else {
            rng.gen_range(0..=params.max_spans)
        };
        let spans: Vec<(usize, i64)> = (0..n_spans)
            .map(|_| {
                (
                    rng.gen_range(1..=params.max_span_dim.max(1)),
                    rng.gen_range(0..amp),
                )
            })
            .collect();
        let e: Complex<F> = ElementaryDecl::new(spans.clone())
            .expect("positive dims")
            .build();
        let world = Arc::new(direct_sum(&[&*core, &e]));
        loop {
            let h = random_map(rng, &world, &world, -1, 1);
            let u = GradedMap::identity(world.clone())
                .add(&h.hom_differential())
                .expect("same endpoints");
            if u.is_isomorphism() {
                return SpanWorld::new(core, spans, Some(u)).expect("u is an isomorphism");
            }
        }
    }

    /// Number of spans.
    pub fn span_count(&self) -> usize {
        self.spans.len()
    }

    /// The spans `(dimension, placement)`.
    pub fn spans(&self) -> &[(usize, i64)] {
        &self.spans
    }

    /// The core `H`.
    pub fn core(&self) -> &Cx<F> {
        &self.core
    }

    /// The world complex `W`.
    pub fn world(&self) -> &Cx<F> {
        &self.world
    }

    /// Row offsets of the core and each span copy in degree `n` of `W`.
    fn span_rows(&self, j: usize, n: i64) -> usize {
        self.core.dim(n)
            + ElementaryDecl::new(self.spans.clone())
                .expect("valid")
                .offset(j, n)
    }

    /// The object keeping the spans marked in `subset`, rewritten by `rebase`
    /// (an isomorphism from the returned complex to the standard one) when given.
    pub fn object_with(
        &self,
        subset: Vec<bool>,
        rebase: Option<(Cx<F>, GradedMap<F>)>,
    ) -> Result<WorldObject<F>> {
        if subset.len() != self.spans.len() {
            return Err(Error::InvalidInput(
                "subset length differs from the number of spans".into(),
            ));
        }
        let kept: Vec<(usize, i64)> = self
            .spans
            .iter()
            .zip(&subset)
            .filter(|(_, &b)| b)
            .map(|(s, _)| *s)
            .collect();
        let e: Complex<F> = ElementaryDecl::new(kept)?.build();
        let std = Arc::new(direct_sum(&[&*self.core, &e]));
        let decl = ElementaryDecl::new(self.spans.clone())?;
        let kept_idx: Vec<usize> = (0..self.spans.len()).filter(|&j| subset[j]).collect();
        let kept_decl = ElementaryDecl::new(kept_idx.iter().map(|&j| self.spans[j]).collect())?;
        let std_incl = GradedMap::from_fn(std.clone(), self.world.clone(), 0, |n| {
            let mut m = Matrix::zeros(self.world.dim(n), std.dim(n));
            let c = self.core.dim(n);
            m.set_block(0, 0, &Matrix::identity(c));
            for (kk, &j) in kept_idx.iter().enumerate() {
                let (d, p) = self.spans[j];
                if p == n || p + 1 == n {
                    m.set_block(
                        c + decl.offset(j, n),
                        c + kept_decl.offset(kk, n),
                        &Matrix::identity(d),
                    );
                }
            }
            Some(m)
        })?;
        let std_proj = GradedMap::from_fn(self.world.clone(), std.clone(), 0, |n| {
            Some(std_incl.component(n).transpose())
        })?;
        let big_k = GradedMap::from_fn(self.world.clone(), self.world.clone(), -1, |n| {
            let mut m = Matrix::zeros(self.world.dim(n - 1), self.world.dim(n));
            for (j, &(d, p)) in self.spans.iter().enumerate() {
                if !subset[j] && p + 1 == n {
                    m.set_block(
                        self.span_rows(j, p),
                        self.span_rows(j, p + 1),
                        &Matrix::identity(d).neg(),
                    );
                }
            }
            Some(m)
        })?;
        let (complex, to_std) = match rebase {
            Some((c, iso)) => (c, iso.with_endpoints(iso.source().clone(), std.clone())?),
            None => (std.clone(), GradedMap::identity(std.clone())),
        };
        let from_std = to_std.inverse()?;
        let incl = self.u.compose(&std_incl.compose(&to_std)?)?;
        let proj = from_std.compose(&std_proj.compose(&self.u_inv)?)?;
        let k = self.u.compose(&big_k.compose(&self.u_inv)?)?;
        Ok(WorldObject {
            subset,
            complex,
            incl,
            proj,
            k,
        })
    }

    /// A random object: each span kept with probability one half, in a random basis.
    pub fn random_object<R: Rng + ?Sized>(&self, rng: &mut R, entry: i64) -> WorldObject<F> {
        let subset: Vec<bool> = (0..self.spans.len()).map(|_| rng.gen_bool(0.5)).collect();
        let std = self
            .object_with(subset.clone(), None)
            .expect("valid subset");
        let rebase = random_rebase(rng, &std.complex, entry);
        self.object_with(subset, Some(rebase))
            .expect("valid rebase")
    }

    /// `φ_{o_0..o_p} = (-1)^{p(p-1)/2} proj_{o_0} k_{o_1} ... k_{o_{p-1}} incl_{o_p}` for `p ≥ 1`.
    pub fn chain(&self, objs: &[&WorldObject<F>]) -> GradedMap<F> {
        let p = objs.len() - 1;
        assert!(p >= 1, "chains need at least two objects");
        let mut acc = objs[p].incl.clone();
        for o in objs[1..p].iter().rev() {
            acc = o.k.compose(&acc).expect("maps into W");
        }
        let out = objs[0].proj.compose(&acc).expect("maps into W");
        let s: F = sign((p * (p - 1) / 2) as i64);
        debug_assert_eq!(out.degree(), face_degree(p + 1));
        out.scale(&s)
    }

    /// The dg-nerve simplex with the given objects at its vertices.
    pub fn simplex(&self, objs: &[&WorldObject<F>]) -> DgSimplex<F> {
        let objects: Vec<Cx<F>> = objs.iter().map(|o| o.complex.clone()).collect();
        DgSimplex::from_fn(objects, |face: &Face| {
            let sub: Vec<&WorldObject<F>> = face.vertices().iter().map(|&v| objs[v]).collect();
            Ok(self.chain(&sub))
        })
        .expect("chain maps have the right shapes")
    }

    /// The Maurer–Cartan element with object `objs[α]` on open `α`.
    pub fn mc_element(&self, cover: &Cover, objs: &[WorldObject<F>]) -> McElement<F> {
        let labelling: Vec<Cx<F>> = objs.iter().map(|o| o.complex.clone()).collect();
        let probe = McElement::new(cover.clone(), labelling.clone(), BTreeMap::new())
            .expect("empty element");
        let mut maps = BTreeMap::new();
        for len in 2..=probe.max_p() + 1 {
            for t in cover.nondegenerate_tuples(len) {
                let seq: Vec<&WorldObject<F>> = t.iter().map(|&a| &objs[a]).collect();
                let m = self.chain(&seq);
                if !m.is_zero() {
                    maps.insert(t, m);
                }
            }
        }
        McElement::new(cover.clone(), labelling, maps).expect("chains have the right shapes")
    }
}

/// A random twisting cochain on `cover`: a random world with one random
/// object per open.
pub fn random_twisting_cochain<F: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    cover: &Cover,
    params: &GenParams,
) -> McElement<F> {
    let world = SpanWorld::<F>::random(rng, params);
    let objs: Vec<WorldObject<F>> = (0..cover.len())
        .map(|_| world.random_object(rng, params.entry))
        .collect();
    world.mc_element(cover, &objs)
}

/// A random dg-nerve simplex in the core of dimension `p`.
pub fn random_core_simplex<F: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    p: usize,
    params: &GenParams,
) -> DgSimplex<F> {
    let world = SpanWorld::<F>::random(rng, params);
    let objs: Vec<WorldObject<F>> = (0..=p)
        .map(|_| world.random_object(rng, params.entry))
        .collect();
    let refs: Vec<&WorldObject<F>> = objs.iter().collect();
    world.simplex(&refs)
}

/// A random quasi-isomorphism between two objects of a random world.
pub fn random_quasi_iso<F: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    params: &GenParams,
) -> GradedMap<F> {
    let world = SpanWorld::<F>::random(rng, params);
    let a = world.random_object(rng, params.entry);
    let b = world.random_object(rng, params.entry);
    world.chain(&[&a, &b])
}

/// A random elementary declaration with spans placed in degrees `0..amp`.
pub fn random_decl<R: Rng + ?Sized>(rng: &mut R, params: &GenParams) -> ElementaryDecl {
    if params.amp <= 0 {
        return ElementaryDecl::empty();
    }
    let n = rng.gen_range(0..=params.max_spans);
    ElementaryDecl::new(
        (0..n)
            .map(|_| {
                (
                    rng.gen_range(1..=params.max_span_dim.max(1)),
                    rng.gen_range(0..params.amp),
                )
            })
            .collect(),
    )
    .expect("positive dims")
}

/// A random valid 1-dimensional GTT-labelling `A -> (A' <- B') <- B`.
///
/// The middle map is `[[f, ∂y], [0, e]]` in the trivialisations, with `f` a
/// random quasi-isomorphism (an isomorphism when `green`), `y` random and `e`
/// the elementary morphism between the complements, rewritten in random
/// bases. With `green` both complements share a declaration, so the middle
/// map is an isomorphism.
pub fn random_gtt_edge<F: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    params: &GenParams,
    green: bool,
) -> GttLabelling<F> {
    let f = if green {
        let a =
            random_complex::<F, R>(rng, 0, params.amp.max(0), params.max_core_dim, params.entry);
        random_rebase(rng, &a, params.entry).1
    } else {
        random_quasi_iso(rng, params)
    };
    gtt_edge_over(rng, params, &f, green)
}

/// Like [`random_gtt_edge`], with the complex at vertex `vertex` (0 or 1) fixed to `x`.
pub fn random_gtt_edge_at<F: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    params: &GenParams,
    green: bool,
    vertex: usize,
    x: &Cx<F>,
) -> GttLabelling<F> {
    let f = if green {
        let (_, iso) = random_rebase(rng, x, params.entry);
        if vertex == 0 {
            iso
        } else {
            iso.inverse().expect("isomorphism")
        }
    } else {
        let e: Cx<F> = Arc::new(random_decl(rng, params).build());
        let padded: Cx<F> = Arc::new(direct_sum(&[x, &e]));
        let (_, to_padded) = random_rebase(rng, &padded, params.entry);
        let from_padded = to_padded.inverse().expect("isomorphism");
        let parts = [x.clone(), e];
        let twist = random_automorphism(rng, x);
        if vertex == 0 {
            let proj = projection(&parts, &padded, 0).expect("direct sum");
            twist
                .compose(&proj)
                .and_then(|m| m.compose(&to_padded))
                .expect("composable")
        } else {
            let incl = inclusion(&parts, &padded, 0).expect("direct sum");
            from_padded
                .compose(&incl)
                .and_then(|m| m.compose(&twist))
                .expect("composable")
        }
    };
    gtt_edge_over(rng, params, &f, green)
}

/// A chain automorphism `id + ∂h` of `x` (the identity if a few draws fail).
pub fn random_automorphism<F: Scalar, R: Rng + ?Sized>(rng: &mut R, x: &Cx<F>) -> GradedMap<F> {
    for _ in 0..8 {
        let h = random_map(rng, x, x, -1, 1);
        let u = GradedMap::identity(x.clone())
            .add(&h.hom_differential())
            .expect("same endpoints");
        if u.is_isomorphism() {
            return u;
        }
    }
    GradedMap::identity(x.clone())
}

fn gtt_edge_over<F: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    params: &GenParams,
    f: &GradedMap<F>,
    green: bool,
) -> GttLabelling<F> {
    let (a, b) = (f.target().clone(), f.source().clone());
    let decl_a = random_decl(rng, params);
    let decl_b = if green {
        decl_a.clone()
    } else {
        random_decl(rng, params)
    };
    let ea: Cx<F> = Arc::new(decl_a.build());
    let eb: Cx<F> = Arc::new(decl_b.build());
    let x = random_map(rng, &eb, &a, -1, params.entry).hom_differential();
    let e = elementary_morphism(&eb, &decl_b, &ea, &decl_a, 0).expect("built from declarations");
    let src: Cx<F> = Arc::new(direct_sum(&[&b, &eb]));
    let tgt: Cx<F> = Arc::new(direct_sum(&[&a, &ea]));
    let m = block_map(
        &[b.clone(), eb.clone()],
        &src,
        &[a.clone(), ea.clone()],
        &tgt,
        0,
        &[vec![Some(f), Some(&x)], vec![None, Some(&e)]],
    )
    .expect("blocks fit");
    let (c0, to_tgt) = random_rebase(rng, &tgt, params.entry);
    let (c1, to_src) = random_rebase(rng, &src, params.entry);
    let theta0 = to_tgt.inverse().expect("isomorphism");
    let theta1 = to_src.inverse().expect("isomorphism");
    let phi = theta0
        .compose(&m)
        .and_then(|x| x.compose(&to_src))
        .expect("composable");
    debug_assert!(same_complex(phi.target(), &c0) && same_complex(phi.source(), &c1));
    let v = |i: usize| Face::new(vec![i], 1).expect("vertex");
    let mut vertices = BTreeMap::new();
    vertices.insert(v(0), DgSimplex::point(a));
    vertices.insert(v(1), DgSimplex::point(b));
    vertices.insert(Face::full(1), DgSimplex::edge(phi).expect("edge"));
    let mut cells = BTreeMap::new();
    cells.insert(
        PairCell::new(v(0), Face::full(1)).expect("cell"),
        vec![Complement {
            complex: ea,
            decl: decl_a,
            theta: theta0,
            theta_inv: to_tgt,
        }],
    );
    cells.insert(
        PairCell::new(v(1), Face::full(1)).expect("cell"),
        vec![Complement {
            complex: eb,
            decl: decl_b,
            theta: theta1,
            theta_inv: to_src,
        }],
    );
    GttLabelling::new(1, vertices, cells).expect("well-shaped labelling")
}

/// A random path of twisting cochains over `cover`: a random twisting
/// cochain on the doubled cover, read as prism labels.
pub fn random_twist_path<F: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    cover: &Cover,
    params: &GenParams,
) -> TwistPath<F> {
    let doubled = cover.doubled().expect("cover small enough to double");
    let prism = random_twisting_cochain(rng, &doubled, params);
    TwistPath::from_doubled(cover, prism).expect("levels of a doubled element")
}

/// Locally free data conjugate to the trivial cocycle: a random complex
/// rewritten in a random basis `u_α: E_α -> E` on each open, with
/// `φ_{αβ} = u_α^{-1} u_β`.
pub fn random_locfree<F: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    cover: &Cover,
    params: &GenParams,
) -> LocFreeData<F> {
    let base = random_complex::<F, R>(rng, 0, params.amp, params.max_core_dim.max(1), params.entry);
    let charts: Vec<(Cx<F>, GradedMap<F>)> = (0..cover.len())
        .map(|_| random_rebase(rng, &base, params.entry))
        .collect();
    let labelling = charts.iter().map(|(c, _)| c.clone()).collect();
    let edges = cover
        .nondegenerate_tuples(2)
        .into_iter()
        .map(|t| {
            let m = charts[t[0]]
                .1
                .inverse()
                .expect("rebase is invertible")
                .compose(&charts[t[1]].1)
                .expect("shared base");
            ((t[0], t[1]), m)
        })
        .collect();
    LocFreeData::new(cover.clone(), labelling, edges).expect("consistent shapes")
}

/// Random invertible `n x n` matrices, one per open.
pub fn random_gauge<F: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    opens: usize,
    n: usize,
    entry: i64,
) -> Vec<Matrix<F>> {
    (0..opens)
        .map(|_| random_invertible(rng, n, entry))
        .collect()
}
