//! Acceptance suite: one pass/fail line per criterion, with pinned case
//! counts and time limits. Exits nonzero when any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use twistkit::cech_mc::{labelling_to_mc, mc_to_labelling, sign_lemma_holds, Cover};
use twistkit::descent::*;
use twistkit::dg_nerve::DgSimplex;
use twistkit::gen::{
    random_core_simplex, random_gauge, random_gtt_edge, random_gtt_edge_at, random_locfree,
    random_quasi_iso, random_twist_path, random_twisting_cochain, GenParams,
};
use twistkit::gtt::*;
use twistkit::homalg::{is_quasi_iso, summand_homotopy, GradedMap};
use twistkit::simplex_core::*;
use twistkit::{ElementaryDecl, Matrix, Scalar, Q};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Small generator parameters; callers reject draws with a degree of
/// dimension above three.
fn desk(amp: i64) -> GenParams {
    GenParams {
        amp,
        max_core_dim: 2,
        max_spans: 1,
        max_span_dim: 1,
        entry: 2,
    }
}

fn max_dim(lab: &[twistkit::Cx<Q>]) -> usize {
    lab.iter()
        .flat_map(|c| c.dims().to_vec())
        .max()
        .unwrap_or(0)
}

fn c1_counts() -> Outcome {
    let square: Vec<usize> = (0..=2).map(|q| prism_simplices(1, q).len()).collect();
    ensure!(
        square == [4, 5, 2],
        "Δ[1]xΔ[1] has {square:?} nondegenerate simplices"
    );
    for p in 0..=8 {
        let n = prism_simplices(p, p + 1).len();
        ensure!(n == p + 1, "Δ[{p}]xΔ[1] has {n} top simplices");
        let v = bary_flags(p, 0).len();
        ensure!(v == (1 << (p + 1)) - 1, "Δ[{p}]_bary has {v} vertices");
    }
    let cells = pair_cells(2);
    let by_dim: Vec<usize> = (0..=2)
        .map(|k| cells.iter().filter(|c| c.dim() == k).count())
        .collect();
    ensure!(by_dim == [7, 9, 3], "Δ[2]_pair has {by_dim:?} cells");
    let euler = by_dim[0] as i64 - by_dim[1] as i64 + by_dim[2] as i64;
    ensure!(euler == 1, "Euler characteristic {euler}");
    let square_cell = PairCell::new(Face::new(vec![0], 2).unwrap(), Face::full(2)).unwrap();
    let b = pair_boundary(&square_cell);
    ensure!(
        b.len() == 4 && b.terms().keys().all(|c| c.dim() == 1),
        "∂(•,▲) has {} terms",
        b.len()
    );
    Ok(
        "4/5/2, p+1 tops and 2^{p+1}-1 bary vertices for p ≤ 8, 7/9/3 with χ = 1, 4 boundary cells"
            .into(),
    )
}

fn c2_algebra() -> Outcome {
    const CASES: u64 = 500;
    let mut r = rng(2);
    for case in 0..CASES {
        let degree = r.gen_range(-2..=2);
        let (a, b, c) = (
            complex(&mut r, 2, 3),
            complex(&mut r, 2, 3),
            complex(&mut r, 2, 3),
        );
        let f = map(&mut r, &a, &b, degree);
        ensure!(
            f.hom_differential().hom_differential().is_zero(),
            "∂² ≠ 0 in case {case}"
        );
        let dg = r.gen_range(-2..=2);
        let g = map(&mut r, &b, &c, dg);
        let lhs = g.compose(&f).unwrap().hom_differential();
        let rhs = g
            .hom_differential()
            .compose(&f)
            .unwrap()
            .signed(degree)
            .add(&g.compose(&f.hom_differential()).unwrap())
            .unwrap();
        ensure!(lhs == rhs, "Leibniz fails in case {case}");
    }
    for case in 0..CASES {
        let cv = cover(&mut r, 4);
        let lab = labelling(&mut r, &cv, 2, 2);
        let e = mixed(&mut r, &cv, &lab, 3);
        ensure!(
            e.deleted_cech_diff(&cv).deleted_cech_diff(&cv).is_zero(),
            "δ̂² ≠ 0 in case {case}"
        );
        ensure!(
            e.total_diff(&cv).total_diff(&cv).is_zero(),
            "D² ≠ 0 in case {case}"
        );
    }
    for case in 0..CASES {
        let lambda = r.gen_range(2..1000);
        let j = r.gen_range(1..lambda);
        ensure!(
            sign_lemma_holds(lambda, j),
            "sign identity fails at λ = {lambda}, j = {j} (case {case})"
        );
    }
    Ok(format!(
        "{CASES} cases each of ∂² = 0, Leibniz, δ̂² = 0, D² = 0 and the sign identity"
    ))
}

fn c3_round_trips() -> Outcome {
    const CASES: usize = 100;
    let mut r = rng(3);
    let mut nonempty = 0;
    for case in 0..CASES {
        let cv = cover(&mut r, 4);
        let amp = r.gen_range(0..=2);
        let mc = loop {
            let mc = random_twisting_cochain::<Q, _>(&mut r, &cv, &desk(amp));
            if max_dim(mc.labelling()) <= 3 {
                break mc;
            }
        };
        let family = mc_to_labelling(&mc).map_err(|e| format!("case {case}: {e}"))?;
        let back = labelling_to_mc(cv.clone(), &family).map_err(|e| format!("case {case}: {e}"))?;
        ensure!(back == mc, "MC -> nerve -> MC differs in case {case}");
        let again = mc_to_labelling(&back).map_err(|e| format!("case {case}: {e}"))?;
        ensure!(
            again == family,
            "nerve -> MC -> nerve differs in case {case}"
        );
        if !mc.maps().is_empty() {
            nonempty += 1;
        }
    }
    Ok(format!("{CASES} round trips over covers with |I| ≤ 4, dims ≤ 3 ({nonempty} with nonzero components)"))
}

fn c4_descent_levels() -> Outcome {
    let mut r = rng(4);
    let mut flagged = 0;
    for case in 0..20 {
        let cv = Cover::full(3).unwrap();
        let d = loop {
            let d = random_locfree::<Q, _>(&mut r, &cv, &desk(2));
            if !d.labelling()[0].is_zero() {
                break d;
            }
        };
        ensure!(
            validate_locfree(&d).is_valid(),
            "conjugated cocycle {case} rejected"
        );
        let tc = d.to_twisting_cochain().map_err(|e| e.to_string())?;
        ensure!(
            validate_twisting_cochain(&tc).is_valid(),
            "embedded cocycle {case} is not a twisting cochain"
        );
        let edge = (case % 3, (case + 1) % 3);
        let mut edges = d.edges().clone();
        let bumped = edges[&edge].scale(&Q::new(2, 1));
        edges.insert(edge, bumped);
        let bad = LocFreeData::new(cv.clone(), d.labelling().clone(), edges)
            .map_err(|e| e.to_string())?;
        let got: Vec<Vec<usize>> = validate_locfree(&bad)
            .errors()
            .filter(|f| f.kind == "cocycle")
            .map(|f| f.tuple.clone().unwrap())
            .collect();
        let expected: Vec<Vec<usize>> = cv
            .nondegenerate_tuples(3)
            .into_iter()
            .filter(|t| [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])].contains(&edge))
            .collect();
        ensure!(
            got == expected,
            "perturbing {edge:?} flagged {got:?}, expected {expected:?}"
        );
        flagged += got.len();
    }
    let simplex = Cover::ordered_simplex(2).unwrap();
    let mut nontrivial = 0;
    for case in 0..40 {
        let mc = random_twisting_cochain::<Q, _>(
            &mut r,
            &simplex,
            &GenParams {
                max_spans: 3,
                ..desk(2)
            },
        );
        let lhs = mc.label(&[0, 1, 2]).hom_differential();
        let rhs = mc
            .label(&[0, 2])
            .sub(&mc.label(&[0, 1]).compose(&mc.label(&[1, 2])).unwrap())
            .unwrap();
        ensure!(lhs == rhs, "∂f_012 ≠ f_02 - f_01 f_12 in case {case}");
        if !lhs.is_zero() {
            nontrivial += 1;
        }
    }
    ensure!(nontrivial > 0, "no instance with a nonzero homotopy");
    for case in 0..20 {
        let cv = cover(&mut r, 3);
        let tc = TwistingCochainData::new(random_twisting_cochain::<Q, _>(&mut r, &cv, &desk(2)));
        let stc = StcData::from_twisting_cochain(&tc, 3).map_err(|e| e.to_string())?;
        let rep = validate_stc(&stc, true);
        ensure!(
            rep.is_valid(),
            "include_twist image {case} fails validate_stc:\n{rep}"
        );
    }
    Ok(format!(
        "(a) 20 conjugated cocycles, {flagged} incident triangles pinpointed; (b) 40 instances, {nontrivial} nontrivial; (c)/(d) 20 STC images"
    ))
}

fn c5_paths() -> Outcome {
    const CASES: usize = 50;
    let mut r = rng(5);
    let mut deg2 = 0;
    for case in 0..CASES {
        let cv = match case % 3 {
            0 => Cover::full(3).unwrap(),
            1 => Cover::ordered_simplex(2).unwrap(),
            _ => cover(&mut r, 3),
        };
        let params = desk(r.gen_range(1..=2));
        let path = loop {
            let path = random_twist_path::<Q, _>(&mut r, &cv, &params);
            if max_dim(path.prism().labelling()) <= 3 {
                break path;
            }
        };
        let rep = validate_path(&path);
        ensure!(rep.is_valid(), "fuzzed path {case} is invalid:\n{rep}");
        let w = path_to_weq(&path).map_err(|e| e.to_string())?;
        let (e, f) = (path.bottom().mc(), path.top().mc());
        for a in 0..cv.len() {
            ensure!(
                is_quasi_iso(&w.component(&[a])).unwrap(),
                "(⋆0) fails on open {a} in case {case}"
            );
        }
        for t in cv.nondegenerate_tuples(2) {
            let rhs = e
                .label(&t)
                .compose(&w.component(&t[1..]))
                .unwrap()
                .sub(&w.component(&t[..1]).compose(&f.label(&t)).unwrap())
                .unwrap();
            ensure!(
                w.component(&t).hom_differential() == rhs,
                "(⋆1) fails on {t:?} in case {case}"
            );
        }
        for t in cv.nondegenerate_tuples(3) {
            let (a, b, c) = (t[0], t[1], t[2]);
            let terms = [
                e.label(&t).compose(&w.component(&[c])).unwrap(),
                w.component(&[a]).compose(&f.label(&t)).unwrap().neg(),
                e.label(&[a, b]).compose(&w.component(&[b, c])).unwrap(),
                w.component(&[a, b]).compose(&f.label(&[b, c])).unwrap(),
                w.component(&[a, c]).neg(),
            ];
            let rhs = terms.into_iter().reduce(|x, y| x.add(&y).unwrap()).unwrap();
            ensure!(
                w.component(&t).hom_differential() == rhs,
                "(⋆2) fails on {t:?} in case {case}"
            );
            deg2 += 1;
        }
        let rep = validate_weq(&w);
        ensure!(rep.is_valid(), "δ̂Λ + φΛ - Λψ ≠ 0 in case {case}:\n{rep}");
    }
    Ok(format!("{CASES} paths with |I| ≤ 3, dims ≤ 3; (⋆0), (⋆1), (⋆2) on {deg2} triples and the general relation"))
}

fn c6_summand_homotopy() -> Outcome {
    let mut r = rng(6);
    for case in 0..100 {
        let c = complex(&mut r, 2, 3);
        let m = r.gen_range(1..=3);
        let p = r.gen_range(c.lo() - 1..=c.hi());
        let s = summand_homotopy(&c, &ElementaryDecl::new(vec![(m, p)]).unwrap())
            .map_err(|e| e.to_string())?;
        let id = GradedMap::identity(s.homotopy.source().clone());
        let ip = s.inclusion.compose(&s.projection).unwrap();
        ensure!(
            s.homotopy.hom_differential() == ip.sub(&id).unwrap(),
            "∂h ≠ ip - id in case {case}"
        );
        for n in s.homotopy.source().degrees() {
            let h = s.homotopy.component(n);
            if n != p + 1 {
                ensure!(h.is_zero(), "h is nonzero from degree {n} in case {case}");
                continue;
            }
            let (c0, c1) = (c.dim(p), c.dim(p + 1));
            for i in 0..h.rows() {
                for j in 0..h.cols() {
                    let want = if i >= c0 && j >= c1 && i - c0 == j - c1 {
                        -1
                    } else {
                        0
                    };
                    ensure!(
                        *h.get(i, j) == Q::from_i64(want),
                        "h ≠ (0, -id_M) at ({i}, {j}) in case {case}"
                    );
                }
            }
        }
    }
    Ok("100 complexes: h = (0, -id_M) on the span and ∂h = i∘p - id".into())
}

fn horn_pair(r: &mut ChaCha8Rng, k: usize, green: bool) -> (GttLabelling<Q>, GttLabelling<Q>) {
    let params = desk(2);
    let (fa, fb) = horn_edges(k).unwrap();
    let a = random_gtt_edge::<Q, _>(r, &params, green);
    let shared = a
        .vertex(&Face::new(vec![fa.position(k).unwrap()], 1).unwrap())
        .object(0)
        .clone();
    let b = random_gtt_edge_at(r, &params, green, fb.position(k).unwrap(), &shared);
    (a, b)
}

fn c7_horns() -> Outcome {
    const PER_INDEX: usize = 17;
    let mut r = rng(7);
    for k in 0..3 {
        let missing = Face::new((0..3).filter(|&v| v != k).collect(), 2).unwrap();
        for case in 0..PER_INDEX {
            let (a, b) = horn_pair(&mut r, k, false);
            let filled = fill_horn2(&a, &b, k).map_err(|e| format!("k = {k}, case {case}: {e}"))?;
            let rep = validate_gtt(&filled, false);
            ensure!(
                rep.is_valid(),
                "filler k = {k}, case {case} fails validate_gtt:\n{rep}"
            );
            let (fa, fb) = horn_faces(&filled, k).map_err(|e| e.to_string())?;
            ensure!(
                fa == a && fb == b,
                "filler k = {k}, case {case} changed an input face"
            );

            let (a, b) = horn_pair(&mut r, k, true);
            let green = fill_horn2_green(&a, &b, k)
                .map_err(|e| format!("green k = {k}, case {case}: {e}"))?;
            ensure!(
                validate_gtt(&green, false).is_valid(),
                "green filler k = {k}, case {case} is invalid"
            );
            ensure!(
                green.top().label_ref(&Face::full(2)).is_zero(),
                "green filler k = {k}, case {case} has a homotopy"
            );
            ensure!(
                green.top().label_ref(&missing).is_isomorphism(),
                "green filler k = {k}, case {case}: third edge not invertible"
            );
            ensure!(
                is_gtt1(&green),
                "green filler k = {k}, case {case} is not GTT-1"
            );
        }
    }
    Ok(format!(
        "{} fillers and {} Green fillers over all three horn indices",
        3 * PER_INDEX,
        3 * PER_INDEX
    ))
}

fn c8_strictify() -> Outcome {
    const CASES: usize = 50;
    let mut r = rng(8);
    let mut literal = 0;
    for case in 0..CASES {
        let f = random_quasi_iso::<Q, _>(
            &mut r,
            &GenParams {
                max_spans: 3,
                ..desk(2)
            },
        );
        let s = strictify(&f).map_err(|e| format!("case {case}: {e}"))?;
        let rep = check_strictification(&s);
        ensure!(
            rep.is_valid() && s.check.is_valid(),
            "postconditions fail in case {case}:\n{rep}"
        );
        ensure!(
            s.f_tilde.is_isomorphism(),
            "f̃ is not an isomorphism in case {case}"
        );
        if s.restriction_is_literal() {
            literal += 1;
        }
    }
    for case in 0..CASES {
        let e = random_gtt_edge::<Q, _>(&mut r, &desk(2), false);
        let (g, s) = connect_strictify(&e).map_err(|e| format!("case {case}: {e}"))?;
        ensure!(
            s.check.is_valid(),
            "connect_strictify self-check fails in case {case}"
        );
        let rep = validate_green(&edge_data(&g));
        ensure!(
            rep.is_valid(),
            "connect_strictify output {case} fails validate_green:\n{rep}"
        );
    }
    Ok(format!("{CASES} strictifications ({literal} with literal restriction), {CASES} connect_strictify outputs Green"))
}

fn c9_principal() -> Outcome {
    let mut r = rng(9);
    for n in 1..=3 {
        for opens in 1..=4 {
            let cv = Cover::full(opens).unwrap();
            let id = PrincipalCocycle::<Q>::identity(cv.clone(), n);
            ensure!(
                validate_principal_cocycle(&id).is_valid(),
                "identity cocycle rejected"
            );
            let lambda = random_gauge::<Q, _>(&mut r, opens, n, 3);
            let g = id.conjugate(&lambda).map_err(|e| e.to_string())?;
            ensure!(
                validate_principal_cocycle(&g).is_valid(),
                "conjugated cocycle rejected (n = {n}, |I| = {opens})"
            );
            let gauge = validate_gauge(&lambda, &id, &g).map_err(|e| e.to_string())?;
            ensure!(
                gauge.is_valid(),
                "gauge relation fails (n = {n}, |I| = {opens})"
            );
            let mu = random_gauge::<Q, _>(&mut r, opens, n, 3);
            let h = g.conjugate(&mu).map_err(|e| e.to_string())?;
            ensure!(
                validate_gauge(&mu, &g, &h)
                    .map_err(|e| e.to_string())?
                    .is_valid(),
                "second gauge fails"
            );
            if opens >= 2 {
                let mut edges = g.edges().clone();
                edges.insert((0, 1), Matrix::zeros(n, n));
                let refused = matches!(
                    PrincipalCocycle::new(cv.clone(), n, edges),
                    Err(twistkit::Error::NotInvertible(_))
                );
                ensure!(refused, "rank-deficient transition accepted");
            }
            let mut singular = lambda.clone();
            singular[0] = Matrix::zeros(n, n);
            let refused = matches!(
                validate_gauge(&singular, &id, &g),
                Err(twistkit::Error::NotInvertible(_))
            );
            ensure!(refused, "rank-deficient gauge accepted");
        }
    }
    Ok("identity and conjugated GL_n cocycles, gauge relation, rank-deficient rejections for n ≤ 3, |I| ≤ 4".into())
}

fn c10_simplicial() -> Outcome {
    let mut r = rng(10);
    let mut gtt_count = 0;
    let mut nerve_count = 0;
    for p in 0..=3 {
        for _ in 0..5 {
            let x = random_core_simplex::<Q, _>(&mut r, p, &desk(2));
            simplicial_identities(
                &x,
                p,
                |s: &DgSimplex<Q>, i| s.face(i).unwrap(),
                |s: &DgSimplex<Q>, i| s.degeneracy(i).unwrap(),
            )
            .map_err(|e| format!("dg-nerve p = {p}: {e}"))?;
            nerve_count += 1;
        }
    }
    let mut labellings = Vec::new();
    for p in 0..=3 {
        for _ in 0..2 {
            labellings
                .push(include_twist(&random_core_simplex::<Q, _>(&mut r, p, &desk(1))).unwrap());
        }
    }
    for _ in 0..3 {
        labellings.push(random_gtt_edge(&mut r, &desk(2), false));
    }
    for k in 0..3 {
        let (a, b) = horn_pair(&mut r, k, false);
        labellings.push(fill_horn2(&a, &b, k).unwrap());
    }
    for l in &labellings {
        let p = l.dim();
        ensure!(
            validate_gtt(l, false).is_valid(),
            "input labelling of dimension {p} is invalid"
        );
        simplicial_identities(
            l,
            p,
            |x: &GttLabelling<Q>, i| gtt_face(x, i).unwrap(),
            |x: &GttLabelling<Q>, i| gtt_degeneracy(x, i).unwrap(),
        )
        .map_err(|e| format!("GTT p = {p}: {e}"))?;
        for i in 0..=p {
            ensure!(
                validate_gtt(&gtt_degeneracy(l, i).unwrap(), false).is_valid(),
                "s_{i} of a p = {p} labelling is invalid"
            );
        }
        gtt_count += 1;
    }
    Ok(format!(
        "{nerve_count} dg-nerve simplices and {gtt_count} GTT-labellings, p ≤ 3"
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("combinatorial counts", Duration::from_secs(1), c1_counts),
        ("differential algebra", Duration::from_secs(30), c2_algebra),
        (
            "MC and nerve-map round trips",
            Duration::from_secs(60),
            c3_round_trips,
        ),
        (
            "descent data levels",
            Duration::from_secs(60),
            c4_descent_levels,
        ),
        (
            "weak equivalences from paths",
            Duration::from_secs(60),
            c5_paths,
        ),
        (
            "summand homotopy",
            Duration::from_secs(10),
            c6_summand_homotopy,
        ),
        ("2-horn filling", Duration::from_secs(60), c7_horns),
        ("strictification", Duration::from_secs(60), c8_strictify),
        ("principal cocycles", Duration::from_secs(10), c9_principal),
        (
            "simplicial identities",
            Duration::from_secs(120),
            c10_simplicial,
        ),
    ];
    let quiet: Box<dyn Fn(&std::panic::PanicHookInfo<'_>) + Sync + Send> = Box::new(|_| {});
    std::panic::set_hook(quiet);
    let mut failed = 0;
    let mut summary = BTreeMap::new();
    for (k, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; exceeded the time limit")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        let tag = if ok { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {:>2}. {name}: {detail} ({:.2} s, limit {} s)",
            k + 1,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        summary.insert(k + 1, ok);
    }
    println!(
        "acceptance: {} of {} criteria pass",
        summary.values().filter(|&&ok| ok).count(),
        summary.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
