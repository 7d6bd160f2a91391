use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistkit::cech_mc::{BigradedElement, Cover, McElement};
use twistkit::descent::*;
use twistkit::gen::{
    random_gauge, random_gtt_edge, random_locfree, random_map, random_twist_path,
    random_twisting_cochain, GenParams,
};
use twistkit::gtt::{include_twist, GttLabelling};
use twistkit::homalg::{Complex, Cx, GradedMap};
use twistkit::simplex_core::{prism_simplices, prism_top_m, Face, PairCell, PrismSimplex};
use twistkit::{Error, Matrix, Scalar, Q};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pt() -> Cx<Q> {
    Arc::new(Complex::concentrated(0, 1))
}

fn covers() -> Vec<Cover> {
    vec![
        Cover::full(2).unwrap(),
        Cover::full(3).unwrap(),
        Cover::ordered_simplex(2).unwrap(),
        Cover::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[vec![0, 1], vec![1, 2]],
        )
        .unwrap(),
    ]
}

#[test]
fn locfree_identity_and_conjugated() {
    let cover = Cover::full(3).unwrap();
    let lab = vec![pt(), pt(), pt()];
    let edges = cover
        .nondegenerate_tuples(2)
        .into_iter()
        .map(|t| ((t[0], t[1]), GradedMap::identity(pt())))
        .collect();
    let d = LocFreeData::new(cover.clone(), lab, edges).unwrap();
    assert!(validate_locfree(&d).is_valid());
    let mut r = rng(1);
    for c in covers() {
        let d = random_locfree::<Q, _>(&mut r, &c, &GenParams::default());
        assert!(validate_locfree(&d).is_valid());
        let tc = d.to_twisting_cochain().unwrap();
        assert!(validate_twisting_cochain(&tc).is_valid());
    }
}

#[test]
fn locfree_perturbation_flags_incident_triangles() {
    let mut r = rng(2);
    let cover = Cover::full(3).unwrap();
    let d = random_locfree::<Q, _>(&mut r, &cover, &GenParams::default());
    let mut edges = d.edges().clone();
    let e = edges[&(0, 1)].clone();
    edges.insert((0, 1), e.scale(&Q::new(2, 1)));
    let bad = LocFreeData::new(cover.clone(), d.labelling().clone(), edges).unwrap();
    let rep = validate_locfree(&bad);
    let flagged: BTreeSet<Vec<usize>> = rep
        .errors()
        .filter(|f| f.kind == "cocycle")
        .map(|f| f.tuple.clone().unwrap())
        .collect();
    let expected: BTreeSet<Vec<usize>> = cover
        .nondegenerate_tuples(3)
        .into_iter()
        .filter(|t| [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])].contains(&(0, 1)))
        .collect();
    assert_eq!(flagged, expected);
    assert_eq!(rep.errors().filter(|f| f.kind == "invertible").count(), 0);

    let mut missing = d.edges().clone();
    missing.remove(&(2, 0));
    assert!(matches!(
        LocFreeData::new(cover, d.labelling().clone(), missing),
        Err(Error::Incomplete(_))
    ));
}

#[test]
fn twisting_cochains_validate() {
    let mut r = rng(3);
    for c in covers() {
        for _ in 0..3 {
            let mc = random_twisting_cochain::<Q, _>(&mut r, &c, &GenParams::default());
            let tc = TwistingCochainData::new(mc);
            assert!(validate_twisting_cochain(&tc).is_valid());
        }
    }
}

/// On the ordered 2-simplex, `∂φ_{012} = φ_{02} - φ_{01} ∘ φ_{12}`, and
/// dropping a nonzero `φ_{012}` is flagged at that tuple.
#[test]
fn bidegree_two_equation_and_dropped_homotopy() {
    let mut r = rng(4);
    let cover = Cover::ordered_simplex(2).unwrap();
    let params = GenParams {
        max_spans: 3,
        ..GenParams::default()
    };
    let mut seen = 0;
    for _ in 0..60 {
        let mc = random_twisting_cochain::<Q, _>(&mut r, &cover, &params);
        let lhs = mc.label(&[0, 1, 2]).hom_differential();
        let rhs = mc
            .label(&[0, 2])
            .sub(&mc.label(&[0, 1]).compose(&mc.label(&[1, 2])).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        if mc.label(&[0, 1, 2]).hom_differential().is_zero() {
            continue;
        }
        let mut maps = mc.maps().clone();
        maps.remove(&vec![0, 1, 2]);
        let dropped = TwistingCochainData::new(
            McElement::new(cover.clone(), mc.labelling().clone(), maps).unwrap(),
        );
        let rep = validate_twisting_cochain(&dropped);
        let tuples: Vec<Vec<usize>> = rep.errors().map(|f| f.tuple.clone().unwrap()).collect();
        assert_eq!(tuples, vec![vec![0, 1, 2]], "{rep}");
        seen += 1;
    }
    assert!(seen > 0);
}

#[test]
fn degenerate_components_are_checked() {
    let cover = Cover::full(2).unwrap();
    let lab = vec![pt(), pt()];
    let id = GradedMap::identity(pt());
    let maps = BTreeMap::from([
        (vec![0, 1], id.clone()),
        (vec![1, 0], id.clone()),
        (vec![0, 0], id.clone()),
    ]);
    let ok = TwistingCochainData::from_maps(cover.clone(), lab.clone(), maps.clone()).unwrap();
    assert!(validate_twisting_cochain(&ok).is_valid());
    let mut bad = maps;
    bad.insert(vec![1, 1], id.scale(&Q::new(3, 1)));
    let bad = TwistingCochainData::from_maps(cover, lab, bad).unwrap();
    let rep = validate_twisting_cochain(&bad);
    assert_eq!(rep.error_count(), 1);
    assert_eq!(rep.findings()[0].kind, "degeneracy");
}

#[test]
fn included_twisting_cochains_are_stc() {
    let mut r = rng(5);
    for c in covers() {
        let mc = random_twisting_cochain::<Q, _>(&mut r, &c, &GenParams::default());
        let tc = TwistingCochainData::new(mc);
        let d = StcData::from_twisting_cochain(&tc, 3).unwrap();
        let rep = validate_stc(&d, true);
        assert!(rep.is_valid(), "{rep}");
        let notation = export_stc_notation(&d);
        assert!(notation.report.is_valid());
        for face in &notation.faces {
            assert!(face.e_perp.values().all(|c| c.is_zero()));
        }
    }
}

#[test]
fn zero_complement_arrays_do_not_depend_on_sigma() {
    let mut r = rng(6);
    let c = Cover::full(3).unwrap();
    let tc = TwistingCochainData::new(random_twisting_cochain::<Q, _>(
        &mut r,
        &c,
        &GenParams::default(),
    ));
    let d = StcData::from_twisting_cochain(&tc, 3).unwrap();
    let notation = export_stc_notation(&d);
    let by_sigma: BTreeMap<&Vec<usize>, _> = notation.faces.iter().map(|f| (&f.sigma, f)).collect();
    for face in &notation.faces {
        for (j, m) in &face.a {
            let sub: Vec<usize> = j.vertices().iter().map(|&k| face.sigma[k]).collect();
            if !by_sigma.contains_key(&sub) {
                continue;
            }
            let own = &by_sigma[&sub].a[&Face::full(sub.len() - 1)];
            assert_eq!(m, own);
        }
    }
}

#[test]
fn locfree_data_is_green() {
    let mut r = rng(7);
    let c = Cover::full(3).unwrap();
    let tc = random_locfree::<Q, _>(&mut r, &c, &GenParams::default())
        .to_twisting_cochain()
        .unwrap();
    let d = StcData::from_twisting_cochain(&tc, 3).unwrap();
    assert!(validate_green(&d).is_valid());
    let twist = TwistingCochainData::new(random_twisting_cochain::<Q, _>(
        &mut r,
        &c,
        &GenParams {
            max_spans: 3,
            ..GenParams::default()
        },
    ));
    let d = StcData::from_twisting_cochain(&twist, 2).unwrap();
    let green = validate_green(&d);
    assert_eq!(
        green.errors().any(|f| f.kind == "green"),
        twist
            .mc()
            .maps()
            .iter()
            .any(|(t, m)| t.len() == 2 && !m.is_isomorphism())
    );
}

fn edge_data(l: &GttLabelling<Q>) -> StcData<Q> {
    let cover = Cover::ordered_simplex(1).unwrap();
    let v = |i: usize| Face::new(vec![i], 1).unwrap();
    let labellings = BTreeMap::from([
        (vec![0], include_twist(l.vertex(&v(0))).unwrap()),
        (vec![1], include_twist(l.vertex(&v(1))).unwrap()),
        (vec![0, 1], l.clone()),
    ]);
    StcData::new(cover, 2, labellings).unwrap()
}

#[test]
fn broken_theta_is_flagged_on_its_cell() {
    let mut r = rng(8);
    let l = random_gtt_edge::<Q, _>(&mut r, &GenParams::default(), false);
    let d = edge_data(&l);
    assert!(
        validate_stc(&d, true).is_valid(),
        "{}",
        validate_stc(&d, true)
    );
    let cell = PairCell::new(Face::new(vec![1], 1).unwrap(), Face::full(1)).unwrap();
    let mut cells = l.cells().clone();
    let comp = &mut cells.get_mut(&cell).unwrap()[0];
    comp.theta = comp.theta.scale(&Q::new(2, 1));
    let bad = GttLabelling::new(1, l.vertices().clone(), cells).unwrap();
    let rep = validate_stc(&edge_data(&bad), false);
    assert!(!rep.is_valid());
    for f in rep.errors() {
        assert_eq!(f.tuple.as_deref(), Some(&[0usize, 1][..]));
        assert!(
            f.cell.as_deref().unwrap().starts_with(&cell.to_string()),
            "{f}"
        );
    }
}

#[test]
fn incoherent_faces_are_flagged() {
    let mut r = rng(9);
    let l = random_gtt_edge::<Q, _>(&mut r, &GenParams::default(), false);
    let d = edge_data(&l);
    let mut labellings = d.labellings().clone();
    labellings.insert(
        vec![1],
        include_twist(&twistkit::dg_nerve::DgSimplex::point(pt())).unwrap(),
    );
    let bad = StcData::new(d.cover().clone(), 2, labellings).unwrap();
    let rep = validate_stc(&bad, false);
    assert!(
        rep.errors().any(|f| f.kind == "coherence"
            && f.tuple == Some(vec![0, 1])
            && f.cell.as_deref() == Some("d0")),
        "{rep}"
    );
}

#[test]
fn principal_cocycles() {
    let mut r = rng(10);
    let cover = Cover::full(3).unwrap();
    let id = PrincipalCocycle::<Q>::identity(cover.clone(), 2);
    assert!(validate_principal_cocycle(&id).is_valid());
    let lambda = random_gauge::<Q, _>(&mut r, 3, 2, 3);
    let g = id.conjugate(&lambda).unwrap();
    assert!(validate_principal_cocycle(&g).is_valid());
    assert!(validate_gauge(&lambda, &id, &g).unwrap().is_valid());
    let mu = random_gauge::<Q, _>(&mut r, 3, 2, 3);
    let h = g.conjugate(&mu).unwrap();
    assert!(validate_principal_cocycle(&h).is_valid());
    assert!(validate_gauge(&mu, &g, &h).unwrap().is_valid());
    if h != g {
        assert!(!validate_gauge(&mu, &g, &g).unwrap().is_valid());
    }

    let mut edges = g.edges().clone();
    edges.insert((0, 1), Matrix::from_i64(2, 2, &[1, 2, 2, 4]));
    assert!(matches!(
        PrincipalCocycle::new(cover.clone(), 2, edges),
        Err(Error::NotInvertible(_))
    ));
    let singular = vec![
        Matrix::identity(2),
        Matrix::zeros(2, 2),
        Matrix::identity(2),
    ];
    assert!(matches!(
        validate_gauge(&singular, &id, &id),
        Err(Error::NotInvertible(_))
    ));
    let mut edges = g.edges().clone();
    edges.insert((0, 1), g.g(0, 1).scale(&Q::new(2, 1)));
    let broken = PrincipalCocycle::new(cover, 2, edges).unwrap();
    assert!(!validate_principal_cocycle(&broken).is_valid());
}

#[test]
fn constant_path_gives_identity() {
    let mut r = rng(11);
    for c in covers() {
        let tc = TwistingCochainData::new(random_twisting_cochain::<Q, _>(
            &mut r,
            &c,
            &GenParams::default(),
        ));
        let path = TwistPath::constant(&tc).unwrap();
        assert!(validate_path(&path).is_valid(), "{}", validate_path(&path));
        let w = path_to_weq(&path).unwrap();
        assert_eq!(w, WeakEquivalence::identity(&tc));
        assert!(validate_weq(&w).is_valid());
    }
}

#[test]
fn random_paths_give_weak_equivalences() {
    let mut r = rng(12);
    for c in covers() {
        for _ in 0..3 {
            let path = random_twist_path::<Q, _>(&mut r, &c, &GenParams::default());
            let rep = validate_path(&path);
            assert!(rep.is_valid(), "{rep}");
            let w = path_to_weq(&path).unwrap();
            let rep = validate_weq(&w);
            assert!(rep.is_valid(), "{rep}");
            assert!(w.origin().is_some());
        }
    }
}

/// The weak equivalence relation agrees with `δ̂Λ + φ·Λ - Λ·ψ` computed by
/// the operations of the bigraded algebra.
#[test]
fn weq_residual_matches_bigraded_algebra() {
    let mut r = rng(13);
    let c = Cover::full(3).unwrap();
    let path = random_twist_path::<Q, _>(&mut r, &c, &GenParams::default());
    let w = path_to_weq(&path).unwrap();
    let wrong = w
        .with_component(
            vec![0, 1],
            w.component(&[0, 1])
                .add(&random_degree(&w, &[0, 1]))
                .unwrap(),
        )
        .unwrap();
    for w in [w, wrong] {
        let len = 4;
        let lam = w.to_bigraded(len);
        let phi = w
            .target()
            .mc()
            .to_bigraded(len)
            .add(&w.target().mc().differential_column());
        let psi = w
            .source()
            .mc()
            .to_bigraded(len)
            .add(&w.source().mc().differential_column());
        let total = lam
            .deleted_cech_diff(&c)
            .add(&phi.cup(&lam, &c))
            .sub(&lam.cup(&psi, &c))
            .truncate(len);
        for l in 1..=len {
            for t in c.valid_tuples(l) {
                let q = 2 - l as i64;
                let expected = total.get(&t, q).cloned();
                let got = w.residual(&t);
                match expected {
                    Some(m) => assert_eq!(m, got, "{t:?}"),
                    None => assert!(got.is_zero(), "{t:?}"),
                }
            }
        }
    }
}

fn random_degree(w: &WeakEquivalence<Q>, t: &[usize]) -> GradedMap<Q> {
    let src = w.source().complex(t[t.len() - 1]).clone();
    let tgt = w.target().complex(t[0]).clone();
    GradedMap::from_fn(src.clone(), tgt.clone(), -1, |n| {
        Some(Matrix::from_fn(tgt.dim(n - 1), src.dim(n), |_, _| Q::one()))
    })
    .unwrap()
}

fn label(path: &TwistPath<Q>, t: &[usize], pts: &[(usize, usize)]) -> GradedMap<Q> {
    path.label(t, &PrismSimplex::new(pts.to_vec()).unwrap())
}

/// Low-degree relations, written out: `λ_{αβ} = h^F - h^E`, the degree-one
/// relation `∂λ_{αβ} = E_{αβ} λ_β - λ_α F_{αβ}` and the degree-two relation.
#[test]
fn low_degree_relations() {
    let mut r = rng(14);
    let c = Cover::full(3).unwrap();
    let params = GenParams {
        max_spans: 3,
        ..GenParams::default()
    };
    for _ in 0..5 {
        let path = random_twist_path::<Q, _>(&mut r, &c, &params);
        let w = path_to_weq(&path).unwrap();
        let (e, f) = (path.bottom().mc(), path.top().mc());
        let lam = |t: &[usize]| w.component(t);
        let h_f = label(&path, &[0, 1], &[(0, 0), (0, 1), (1, 1)]);
        let h_e = label(&path, &[0, 1], &[(0, 0), (1, 0), (1, 1)]);
        assert_eq!(lam(&[0, 1]), h_f.sub(&h_e).unwrap());
        let d = label(&path, &[0, 1], &[(0, 0), (1, 1)]);
        assert_eq!(
            h_e.hom_differential(),
            d.sub(&e.label(&[0, 1]).compose(&lam(&[1])).unwrap())
                .unwrap()
        );
        let rhs1 = e
            .label(&[0, 1])
            .compose(&lam(&[1]))
            .unwrap()
            .sub(&lam(&[0]).compose(&f.label(&[0, 1])).unwrap())
            .unwrap();
        assert_eq!(lam(&[0, 1]).hom_differential(), rhs1);

        let t = [0, 1, 2];
        let alt = [0, 1, 2]
            .iter()
            .map(|&m| path.label(&t, &prism_top_m(2, m)).signed(m as i64))
            .reduce(|a, b| a.add(&b).unwrap())
            .unwrap();
        assert_eq!(lam(&t), alt);
        let rhs2 = [
            e.label(&[0, 1, 2]).compose(&lam(&[2])).unwrap(),
            lam(&[0]).compose(&f.label(&[0, 1, 2])).unwrap().neg(),
            e.label(&[0, 1]).compose(&lam(&[1, 2])).unwrap(),
            lam(&[0, 1]).compose(&f.label(&[1, 2])).unwrap(),
            lam(&[0, 2]).neg(),
        ]
        .into_iter()
        .reduce(|a, b| a.add(&b).unwrap())
        .unwrap();
        assert_eq!(lam(&t).hom_differential(), rhs2);
    }
}

#[test]
fn corrupted_paths_and_weqs_are_flagged() {
    let mut r = rng(15);
    let c = Cover::ordered_simplex(1).unwrap();
    let params = GenParams {
        max_spans: 3,
        ..GenParams::default()
    };
    for _ in 0..40 {
        let path = random_twist_path::<Q, _>(&mut r, &c, &params);
        let tri = prism_simplices(1, 2)[0].clone();
        let key = prism_tuple(&[0, 1], &tri);
        let old = path.prism().label(&key);
        let bump = GradedMap::from_fn(old.source().clone(), old.target().clone(), -1, |n| {
            Some(Matrix::from_fn(
                old.target().dim(n - 1),
                old.source().dim(n),
                |_, _| Q::one(),
            ))
        })
        .unwrap();
        if bump.hom_differential().is_zero() {
            continue;
        }
        let mut maps = path.prism().maps().clone();
        maps.insert(key.clone(), old.add(&bump).unwrap());
        let prism = McElement::new(
            path.prism().cover().clone(),
            path.prism().labelling().clone(),
            maps,
        )
        .unwrap();
        let bad = TwistPath::new(path.bottom().clone(), path.top().clone(), prism).unwrap();
        let rep = validate_path(&bad);
        assert!(
            rep.errors()
                .any(|f| f.kind == "prism" && f.tuple.as_ref() == Some(&key)),
            "{rep}"
        );
        assert!(matches!(path_to_weq(&bad), Err(Error::Refused(_))));

        let w = path_to_weq(&path).unwrap();
        let flipped = w
            .with_component(vec![0, 1], w.component(&[0, 1]).add(&bump).unwrap())
            .unwrap();
        let rep = validate_weq(&flipped);
        assert!(rep.errors().any(|f| f.bidegree == Some((1, 0))), "{rep}");
        return;
    }
    panic!("no instance with a visible perturbation");
}

/// `Λ + Dη` for a random `η` of total degree `-1` on nondegenerate tuples of
/// length at most 3, where `Dη = δ̂η + φ·η + η·ψ`.
fn perturb(r: &mut ChaCha8Rng, w: &WeakEquivalence<Q>) -> WeakEquivalence<Q> {
    let c = w.target().cover().clone();
    let (src, tgt) = (
        w.source().labelling().clone(),
        w.target().labelling().clone(),
    );
    let mut eta = BigradedElement::new();
    for len in 1..=3 {
        for t in c.nondegenerate_tuples(len) {
            let m = random_map(r, &src[t[len - 1]], &tgt[t[0]], -(len as i64), 1);
            eta.add_between(&src, &tgt, t, m).unwrap();
        }
    }
    let phi = w
        .target()
        .mc()
        .to_bigraded(4)
        .add(&w.target().mc().differential_column());
    let psi = w
        .source()
        .mc()
        .to_bigraded(4)
        .add(&w.source().mc().differential_column());
    let d_eta = eta
        .deleted_cech_diff(&c)
        .add(&phi.cup(&eta, &c))
        .add(&eta.cup(&psi, &c))
        .truncate(3);
    let mut comps = w.components().clone();
    for ((t, _), m) in d_eta.components() {
        if t.windows(2).any(|p| p[0] == p[1]) {
            assert!(m.is_zero(), "Dη is nonzero on the degenerate tuple {t:?}");
            continue;
        }
        let sum = w.component(t).add(m).unwrap();
        comps.insert(t.clone(), sum);
    }
    WeakEquivalence::new(w.target().clone(), w.source().clone(), comps).unwrap()
}

#[test]
fn homotopic_perturbations_stay_weak_equivalences() {
    let mut r = rng(17);
    let c = Cover::ordered_simplex(2).unwrap();
    let params = GenParams {
        amp: 3,
        max_spans: 4,
        ..GenParams::default()
    };
    let mut nonzero = 0;
    for _ in 0..10 {
        let path = random_twist_path::<Q, _>(&mut r, &c, &params);
        let w = perturb(&mut r, &path_to_weq(&path).unwrap());
        let rep = validate_weq(&w);
        assert!(rep.is_valid(), "{rep}");
        if !w.component(&[0, 1, 2]).hom_differential().is_zero() {
            nonzero += 1;
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn flipped_sign_in_degree_two_is_flagged() {
    let mut r = rng(16);
    let c = Cover::ordered_simplex(2).unwrap();
    let params = GenParams {
        amp: 3,
        max_spans: 4,
        ..GenParams::default()
    };
    for _ in 0..60 {
        let path = random_twist_path::<Q, _>(&mut r, &c, &params);
        let w = perturb(&mut r, &path_to_weq(&path).unwrap());
        let l = w.component(&[0, 1, 2]);
        if l.hom_differential().is_zero() {
            continue;
        }
        let flipped = w.with_component(vec![0, 1, 2], l.neg()).unwrap();
        let rep = validate_weq(&flipped);
        assert!(
            rep.errors()
                .any(|f| f.bidegree == Some((2, -1)) && f.tuple == Some(vec![0, 1, 2])),
            "{rep}"
        );
        return;
    }
    panic!("no instance with a nonzero degree-two differential");
}
