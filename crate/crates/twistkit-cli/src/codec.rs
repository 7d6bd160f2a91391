//! Conversion between the raw file types and twistkit values over a field.
//!
//! Decoders check every shape before calling library constructors, so a
//! malformed file is reported as [`CliError::Malformed`] instead of a panic.
//! Encoders write canonical data: tuples in lexicographic order and zero map
//! components omitted.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::Value;
use twistkit::cech_mc::{Cover, Labelling, McElement};
use twistkit::descent::{
    LocFreeData, PrincipalCocycle, StcData, TwistPath, TwistingCochainData, WeakEquivalence,
};
use twistkit::dg_nerve::{DgSimplex, SimplexFamily};
use twistkit::gtt::{Complement, GttLabelling, Strictification};
use twistkit::homalg::direct_sum;
use twistkit::report::Report;
use twistkit::simplex_core::{Face, PairCell};
use twistkit::{Complex, Cx, ElementaryDecl, FieldSpec, GradedMap, Matrix, Scalar};

use crate::error::CliError;
use crate::schema::*;

type Res<T> = Result<T, CliError>;

fn malformed<T>(msg: impl Into<String>) -> Res<T> {
    Err(CliError::Malformed(msg.into()))
}

/// Reads one field element from a string such as `"-3/4"` or an integer.
pub fn scalar<F: Scalar>(v: &Value) -> Res<F> {
    let parsed = match v {
        Value::String(s) => F::parse_text(s),
        Value::Number(n) => n.as_i64().map(F::from_i64),
        _ => None,
    };
    parsed.ok_or_else(|| CliError::Malformed(format!("{v} is not an element of {}", F::field())))
}

/// Writes a field element: rationals as strings, prime-field elements as
/// integers in `0..p`.
pub fn enc_scalar<F: Scalar>(x: &F) -> Value {
    let text = x.to_text();
    match F::field() {
        FieldSpec::Prime(_) => text
            .parse::<u64>()
            .map(Value::from)
            .unwrap_or(Value::String(text)),
        FieldSpec::Rational => Value::String(text),
    }
}

pub fn matrix<F: Scalar>(raw: &RawMatrix, rows: usize, cols: usize, what: &str) -> Res<Matrix<F>> {
    if raw.len() != rows || raw.iter().any(|r| r.len() != cols) {
        return malformed(format!("{what} must be a {rows}x{cols} matrix"));
    }
    let entries = raw
        .iter()
        .map(|r| r.iter().map(scalar).collect::<Res<Vec<F>>>())
        .collect::<Res<Vec<_>>>()?;
    Matrix::from_rows(entries, cols)
        .ok_or_else(|| CliError::Malformed(format!("{what}: ragged rows")))
}

pub fn enc_matrix<F: Scalar>(m: &Matrix<F>) -> RawMatrix {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(enc_scalar).collect())
        .collect()
}

pub fn complex<F: Scalar>(raw: &RawComplex) -> Res<Cx<F>> {
    if raw.d.len() != raw.dims.len().saturating_sub(1) {
        return malformed(format!(
            "a complex with {} degrees needs {} differentials",
            raw.dims.len(),
            raw.dims.len().saturating_sub(1)
        ));
    }
    let diffs = raw
        .d
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let what = format!("differential in degree {}", raw.lo + k as i64);
            matrix(m, raw.dims[k + 1], raw.dims[k], &what)
        })
        .collect::<Res<Vec<_>>>()?;
    Ok(Arc::new(Complex::new(raw.lo, raw.dims.clone(), diffs)?))
}

pub fn enc_complex<F: Scalar>(c: &Complex<F>) -> RawComplex {
    RawComplex {
        lo: if c.is_zero() { 0 } else { c.lo() },
        dims: c.dims().to_vec(),
        d: c.diffs().iter().map(enc_matrix).collect(),
    }
}

/// Reads a map between the given complexes.
pub fn map<F: Scalar>(raw: &RawMap, source: &Cx<F>, target: &Cx<F>) -> Res<GradedMap<F>> {
    let mut parts = Vec::new();
    for c in &raw.components {
        if !source.degrees().contains(&c.degree) {
            return malformed(format!(
                "map component in degree {} lies outside the source support",
                c.degree
            ));
        }
        let what = format!("map component in degree {}", c.degree);
        let m = matrix(
            &c.matrix,
            target.dim(c.degree + raw.degree),
            source.dim(c.degree),
            &what,
        )?;
        parts.push((c.degree, m));
    }
    Ok(GradedMap::from_components(
        source.clone(),
        target.clone(),
        raw.degree,
        parts,
    )?)
}

pub fn enc_map<F: Scalar>(m: &GradedMap<F>) -> RawMap {
    let components = m
        .source()
        .degrees()
        .filter_map(|n| {
            let c = m.component(n);
            (!c.is_zero()).then(|| RawComponent {
                degree: n,
                matrix: enc_matrix(&c),
            })
        })
        .collect();
    RawMap {
        degree: m.degree(),
        components,
    }
}

pub fn cover(raw: &RawCover) -> Res<Cover> {
    let mut c = Cover::new(raw.opens.clone(), &raw.sets)?;
    for l in &raw.levels {
        c = c.with_levels(l.clone())?;
    }
    Ok(c)
}

pub fn enc_cover(c: &Cover) -> RawCover {
    RawCover {
        opens: c.names().to_vec(),
        sets: c.maximal_sets(),
        levels: c.levels().to_vec(),
    }
}

fn labelling<F: Scalar>(raw: &[RawComplex]) -> Res<Labelling<F>> {
    raw.iter().map(complex).collect()
}

fn enc_labelling<F: Scalar>(l: &Labelling<F>) -> Vec<RawComplex> {
    l.iter().map(|c| enc_complex(c)).collect()
}

/// The complexes at the first and last entry of a tuple.
fn endpoints<F: Scalar>(
    source: &Labelling<F>,
    target: &Labelling<F>,
    t: &[usize],
) -> Res<(Cx<F>, Cx<F>)> {
    match (t.first(), t.last()) {
        (Some(&a), Some(&b)) if a < target.len() && b < source.len() => {
            Ok((source[b].clone(), target[a].clone()))
        }
        _ => malformed(format!("tuple {t:?} does not index the opens")),
    }
}

fn tuple_maps<F: Scalar>(
    source: &Labelling<F>,
    target: &Labelling<F>,
    raw: &[TupleMap],
) -> Res<BTreeMap<Vec<usize>, GradedMap<F>>> {
    let mut out = BTreeMap::new();
    for tm in raw {
        let (s, t) = endpoints(source, target, &tm.tuple)?;
        if out
            .insert(tm.tuple.clone(), map(&tm.map, &s, &t)?)
            .is_some()
        {
            return malformed(format!("tuple {:?} appears twice", tm.tuple));
        }
    }
    Ok(out)
}

fn enc_tuple_maps<'a, F: Scalar + 'a>(
    maps: impl IntoIterator<Item = (&'a Vec<usize>, &'a GradedMap<F>)>,
) -> Vec<TupleMap> {
    maps.into_iter()
        .map(|(t, m)| TupleMap {
            tuple: t.clone(),
            map: enc_map(m),
        })
        .collect()
}

fn twist_parts<F: Scalar>(
    c: Cover,
    complexes: &[RawComplex],
    maps: &[TupleMap],
) -> Res<TwistingCochainData<F>> {
    let lab = labelling(complexes)?;
    let maps = tuple_maps(&lab, &lab, maps)?;
    Ok(TwistingCochainData::from_maps(c, lab, maps)?)
}

fn enc_twist_parts<F: Scalar>(tc: &TwistingCochainData<F>) -> RawTwist {
    let all: BTreeMap<&Vec<usize>, &GradedMap<F>> =
        tc.mc().maps().iter().chain(tc.degenerate()).collect();
    RawTwist {
        complexes: enc_labelling(tc.labelling()),
        maps: enc_tuple_maps(all),
    }
}

pub fn twist<F: Scalar>(p: &TwistPayload) -> Res<TwistingCochainData<F>> {
    twist_parts(cover(&p.cover)?, &p.complexes, &p.maps)
}

pub fn enc_twist<F: Scalar>(tc: &TwistingCochainData<F>) -> TwistPayload {
    let RawTwist { complexes, maps } = enc_twist_parts(tc);
    TwistPayload {
        cover: enc_cover(tc.cover()),
        complexes,
        maps,
    }
}

pub fn locfree<F: Scalar>(p: &LocFreePayload) -> Res<LocFreeData<F>> {
    let lab = labelling(&p.complexes)?;
    let mut edges = BTreeMap::new();
    for (t, m) in tuple_maps(&lab, &lab, &p.edges)? {
        let [a, b] = t[..] else {
            return malformed(format!("edge tuple {t:?} must have two entries"));
        };
        edges.insert((a, b), m);
    }
    Ok(LocFreeData::new(cover(&p.cover)?, lab, edges)?)
}

pub fn enc_locfree<F: Scalar>(d: &LocFreeData<F>) -> LocFreePayload {
    LocFreePayload {
        cover: enc_cover(d.cover()),
        complexes: enc_labelling(d.labelling()),
        edges: d
            .edges()
            .iter()
            .map(|(&(a, b), m)| TupleMap {
                tuple: vec![a, b],
                map: enc_map(m),
            })
            .collect(),
    }
}

pub fn cocycle<F: Scalar>(p: &CocyclePayload) -> Res<PrincipalCocycle<F>> {
    let mut edges = BTreeMap::new();
    for e in &p.edges {
        let [a, b] = e.tuple[..] else {
            return malformed(format!("edge tuple {:?} must have two entries", e.tuple));
        };
        let what = format!("transition matrix on {:?}", e.tuple);
        if edges
            .insert((a, b), matrix(&e.matrix, p.rank, p.rank, &what)?)
            .is_some()
        {
            return malformed(format!("tuple {:?} appears twice", e.tuple));
        }
    }
    Ok(PrincipalCocycle::new(cover(&p.cover)?, p.rank, edges)?)
}

pub fn enc_cocycle<F: Scalar>(g: &PrincipalCocycle<F>) -> CocyclePayload {
    CocyclePayload {
        cover: enc_cover(g.cover()),
        rank: g.rank(),
        edges: g
            .edges()
            .iter()
            .map(|(&(a, b), m)| TupleMatrix {
                tuple: vec![a, b],
                matrix: enc_matrix(m),
            })
            .collect(),
    }
}

pub fn simplex<F: Scalar>(raw: &RawSimplex) -> Res<DgSimplex<F>> {
    let objects = labelling(&raw.objects)?;
    if objects.is_empty() {
        return malformed("a simplex needs at least one vertex");
    }
    let p = objects.len() - 1;
    let mut maps = BTreeMap::new();
    for fm in &raw.maps {
        let face = Face::new(fm.face.clone(), p)?;
        let m = map(&fm.map, &objects[face.last()], &objects[face.first()])?;
        if maps.insert(face, m).is_some() {
            return malformed(format!("face {:?} appears twice", fm.face));
        }
    }
    Ok(DgSimplex::new(objects, maps)?)
}

pub fn enc_simplex<F: Scalar>(s: &DgSimplex<F>) -> RawSimplex {
    RawSimplex {
        objects: enc_labelling(&s.objects().to_vec()),
        maps: s
            .maps()
            .iter()
            .map(|(f, m)| FaceMap {
                face: f.vertices().to_vec(),
                map: enc_map(m),
            })
            .collect(),
    }
}

fn elementary<F: Scalar>(
    raw_complex: &RawComplex,
    decl: &[(usize, i64)],
) -> Res<(Cx<F>, ElementaryDecl)> {
    Ok((complex(raw_complex)?, ElementaryDecl::new(decl.to_vec())?))
}

pub fn gtt<F: Scalar>(raw: &RawGtt) -> Res<GttLabelling<F>> {
    let mut vertices = BTreeMap::new();
    for v in &raw.vertices {
        let face = Face::new(v.face.clone(), raw.dim)?;
        if vertices.insert(face, simplex(&v.simplex)?).is_some() {
            return malformed(format!("vertex {:?} appears twice", v.face));
        }
    }
    let mut cells = BTreeMap::new();
    for c in &raw.cells {
        let cell = PairCell::new(
            Face::new(c.tau.clone(), raw.dim)?,
            Face::new(c.sigma.clone(), raw.dim)?,
        )?;
        let (Some(tau), Some(sigma)) = (vertices.get(cell.tau()), vertices.get(cell.sigma()))
        else {
            return malformed(format!("cell {cell} refers to an unlabelled vertex"));
        };
        if c.complements.len() != cell.tau().len() || tau.dim() + 1 != cell.tau().len() {
            return malformed(format!(
                "cell {cell} needs one complement per vertex of tau"
            ));
        }
        let mut comps = Vec::new();
        for (k, rc) in c.complements.iter().enumerate() {
            let (complex, decl) = elementary::<F>(&rc.complex, &rc.decl)?;
            let j = cell.tau().vertices()[k];
            let Some(target) = cell
                .sigma()
                .position(j)
                .and_then(|i| sigma.objects().get(i))
            else {
                return malformed(format!("cell {cell} has a mislabelled vertex"));
            };
            let source: Cx<F> = Arc::new(direct_sum(&[tau.object(k), &complex]));
            comps.push(Complement {
                theta: map(&rc.theta, &source, target)?,
                theta_inv: map(&rc.theta_inv, target, &source)?,
                complex,
                decl,
            });
        }
        if cells.insert(cell.clone(), comps).is_some() {
            return malformed(format!("cell {cell} appears twice"));
        }
    }
    Ok(GttLabelling::new(raw.dim, vertices, cells)?)
}

pub fn enc_gtt<F: Scalar>(l: &GttLabelling<F>) -> RawGtt {
    RawGtt {
        dim: l.dim(),
        vertices: l
            .vertices()
            .iter()
            .map(|(f, s)| RawVertex {
                face: f.vertices().to_vec(),
                simplex: enc_simplex(s),
            })
            .collect(),
        cells: l
            .cells()
            .iter()
            .map(|(cell, comps)| RawCell {
                tau: cell.tau().vertices().to_vec(),
                sigma: cell.sigma().vertices().to_vec(),
                complements: comps
                    .iter()
                    .map(|c| RawComplement {
                        complex: enc_complex(&c.complex),
                        decl: c.decl.summands().to_vec(),
                        theta: enc_map(&c.theta),
                        theta_inv: enc_map(&c.theta_inv),
                    })
                    .collect(),
            })
            .collect(),
    }
}

pub fn stc<F: Scalar>(p: &StcPayload) -> Res<StcData<F>> {
    let mut labellings = BTreeMap::new();
    for tl in &p.labellings {
        if labellings
            .insert(tl.tuple.clone(), gtt(&tl.labelling)?)
            .is_some()
        {
            return malformed(format!("tuple {:?} appears twice", tl.tuple));
        }
    }
    Ok(StcData::new(cover(&p.cover)?, p.max_len, labellings)?)
}

pub fn enc_stc<F: Scalar>(d: &StcData<F>) -> StcPayload {
    StcPayload {
        cover: enc_cover(d.cover()),
        max_len: d.max_len(),
        labellings: d
            .labellings()
            .iter()
            .map(|(t, l)| TupleGtt {
                tuple: t.clone(),
                labelling: enc_gtt(l),
            })
            .collect(),
    }
}

pub fn path<F: Scalar>(p: &PathPayload) -> Res<TwistPath<F>> {
    let base = cover(&p.cover)?;
    let (bottom, top) = (labelling::<F>(&p.bottom)?, labelling::<F>(&p.top)?);
    if bottom.len() != base.len() || top.len() != base.len() {
        return malformed("each level needs one complex per open");
    }
    let lab: Labelling<F> = bottom
        .iter()
        .zip(&top)
        .flat_map(|(b, t)| [b.clone(), t.clone()])
        .collect();
    let mut maps = BTreeMap::new();
    for pm in &p.maps {
        if pm.tuple.iter().any(|&(a, j)| a >= base.len() || j > 1) {
            return malformed(format!("prism tuple {:?} is out of range", pm.tuple));
        }
        let t: Vec<usize> = pm.tuple.iter().map(|&(a, j)| 2 * a + j).collect();
        let (s, g) = endpoints(&lab, &lab, &t)?;
        if maps.insert(t, map(&pm.map, &s, &g)?).is_some() {
            return malformed(format!("prism tuple {:?} appears twice", pm.tuple));
        }
    }
    let prism = McElement::new(base.doubled()?, lab, maps)?;
    Ok(TwistPath::from_doubled(&base, prism)?)
}

pub fn enc_path<F: Scalar>(p: &TwistPath<F>) -> PathPayload {
    PathPayload {
        cover: enc_cover(p.cover()),
        bottom: enc_labelling(p.bottom().labelling()),
        top: enc_labelling(p.top().labelling()),
        maps: p
            .prism()
            .maps()
            .iter()
            .map(|(t, m)| PrismMap {
                tuple: t.iter().map(|&k| (k / 2, k % 2)).collect(),
                map: enc_map(m),
            })
            .collect(),
    }
}

pub fn weq<F: Scalar>(p: &WeqPayload) -> Res<WeakEquivalence<F>> {
    let c = cover(&p.cover)?;
    let target = twist_parts(c.clone(), &p.target.complexes, &p.target.maps)?;
    let source = twist_parts(c, &p.source.complexes, &p.source.maps)?;
    let comps = tuple_maps(source.labelling(), target.labelling(), &p.components)?;
    Ok(WeakEquivalence::new(target, source, comps)?)
}

pub fn enc_weq<F: Scalar>(w: &WeakEquivalence<F>) -> WeqPayload {
    WeqPayload {
        cover: enc_cover(w.target().cover()),
        target: enc_twist_parts(w.target()),
        source: enc_twist_parts(w.source()),
        components: enc_tuple_maps(w.components()),
        origin: w.origin().map(enc_path),
    }
}

pub fn horn<F: Scalar>(p: &HornPayload) -> Res<[GttLabelling<F>; 2]> {
    Ok([gtt(&p.edges[0])?, gtt(&p.edges[1])?])
}

pub fn enc_horn<F: Scalar>(a: &GttLabelling<F>, b: &GttLabelling<F>) -> HornPayload {
    HornPayload {
        edges: [enc_gtt(a), enc_gtt(b)],
    }
}

pub fn quasi_iso<F: Scalar>(p: &QuasiIsoPayload) -> Res<GradedMap<F>> {
    map(&p.map, &complex(&p.source)?, &complex(&p.target)?)
}

pub fn enc_quasi_iso<F: Scalar>(f: &GradedMap<F>) -> QuasiIsoPayload {
    QuasiIsoPayload {
        source: enc_complex(f.source()),
        target: enc_complex(f.target()),
        map: enc_map(f),
    }
}

/// Reads a strictification back; the stored check is replaced by an empty
/// report so that callers recompute it.
pub fn strictification<F: Scalar>(p: &StrictificationPayload) -> Res<Strictification<F>> {
    let f = quasi_iso::<F>(&p.input)?;
    let (e_a, decl_a) = elementary::<F>(&p.e_a.complex, &p.e_a.decl)?;
    let (e_b, decl_b) = elementary::<F>(&p.e_b.complex, &p.e_b.decl)?;
    let a_tilde: Cx<F> = Arc::new(direct_sum(&[f.target(), &e_a]));
    let b_tilde: Cx<F> = Arc::new(direct_sum(&[f.source(), &e_b]));
    Ok(Strictification {
        f_tilde: map(&p.f_tilde, &b_tilde, &a_tilde)?,
        f_tilde_inv: map(&p.f_tilde_inv, &a_tilde, &b_tilde)?,
        f,
        e_a,
        decl_a,
        e_b,
        decl_b,
        a_tilde,
        b_tilde,
        check: Report::new(),
    })
}

pub fn enc_strictification<F: Scalar>(s: &Strictification<F>) -> StrictificationPayload {
    StrictificationPayload {
        input: enc_quasi_iso(&s.f),
        e_a: RawElementary {
            complex: enc_complex(&s.e_a),
            decl: s.decl_a.summands().to_vec(),
        },
        e_b: RawElementary {
            complex: enc_complex(&s.e_b),
            decl: s.decl_b.summands().to_vec(),
        },
        f_tilde: enc_map(&s.f_tilde),
        f_tilde_inv: enc_map(&s.f_tilde_inv),
        check: ReportJson::from_report(&s.check),
    }
}

pub fn nerve<F: Scalar>(p: &NervePayload) -> Res<(Cover, SimplexFamily<F>)> {
    let mut family = BTreeMap::new();
    for ts in &p.simplices {
        if family
            .insert(ts.tuple.clone(), simplex(&ts.simplex)?)
            .is_some()
        {
            return malformed(format!("tuple {:?} appears twice", ts.tuple));
        }
    }
    Ok((cover(&p.cover)?, family))
}

pub fn enc_nerve<F: Scalar>(c: &Cover, family: &SimplexFamily<F>) -> NervePayload {
    NervePayload {
        cover: enc_cover(c),
        simplices: family
            .iter()
            .map(|(t, s)| TupleSimplex {
                tuple: t.clone(),
                simplex: enc_simplex(s),
            })
            .collect(),
    }
}
