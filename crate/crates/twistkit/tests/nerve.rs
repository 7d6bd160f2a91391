mod common;

use common::*;
use rand::Rng;
use twistkit::cech_mc::{labelling_to_mc, mc_to_labelling, Cover, McElement};
use twistkit::dg_nerve::DgSimplex;
use twistkit::gen::{random_core_simplex, random_twisting_cochain, GenParams};
use twistkit::simplex_core::Face;
use twistkit::{Error, Q};

fn params(r: &mut rand_chacha::ChaCha8Rng) -> GenParams {
    GenParams {
        amp: r.gen_range(0..=2),
        max_core_dim: 2,
        max_spans: 3,
        max_span_dim: 1,
        entry: 2,
    }
}

#[test]
fn dg_nerve_simplicial_identities() {
    let mut r = rng(31);
    for p in 0..=3 {
        for _ in 0..6 {
            let pr = params(&mut r);
            let x = random_core_simplex::<Q, _>(&mut r, p, &pr);
            assert!(x.validate().is_valid());
            simplicial_identities(
                &x,
                p,
                |s: &DgSimplex<Q>, i| s.face(i).unwrap(),
                |s: &DgSimplex<Q>, i| s.degeneracy(i).unwrap(),
            )
            .unwrap_or_else(|e| panic!("p={p}: {e}"));
            for i in 0..=p {
                assert!(x.degeneracy(i).unwrap().validate().is_valid());
            }
        }
    }
}

#[test]
fn mc_round_trips() {
    let mut r = rng(32);
    for _ in 0..30 {
        let cv = cover(&mut r, 4);
        let pr = params(&mut r);
        let mc = random_twisting_cochain::<Q, _>(&mut r, &cv, &pr);
        assert!(mc.is_mc().is_valid());
        let family = mc_to_labelling(&mc).unwrap();
        let back = labelling_to_mc(cv.clone(), &family).unwrap();
        assert_eq!(back, mc);
        assert_eq!(mc_to_labelling(&back).unwrap(), family);
    }
}

#[test]
fn single_simplex_cover() {
    let mut r = rng(33);
    for n in 0..=3 {
        let x = random_core_simplex::<Q, _>(&mut r, n, &GenParams::default());
        let cv = Cover::ordered_simplex(n).unwrap();
        let maps = x
            .maps()
            .iter()
            .filter(|(f, _)| f.len() >= 2)
            .map(|(f, m)| (f.vertices().to_vec(), m.clone()))
            .collect();
        let mc = McElement::new(cv, x.objects().to_vec(), maps).unwrap();
        let family = mc_to_labelling(&mc).unwrap();
        let full: Vec<usize> = (0..=n).collect();
        assert_eq!(family[&full], x);
        assert_eq!(family.len(), (1 << (n + 1)) - 1);
    }
}

#[test]
fn non_mc_is_refused() {
    let mut r = rng(34);
    let cv = Cover::ordered_simplex(2).unwrap();
    for _ in 0..40 {
        let mc = random_twisting_cochain::<Q, _>(
            &mut r,
            &cv,
            &GenParams {
                max_spans: 3,
                ..GenParams::default()
            },
        );
        let Some(m) = mc.maps().get(&vec![0, 1]) else {
            continue;
        };
        let mut maps = mc.maps().clone();
        maps.insert(vec![0, 1], m.scale(&Q::new(2, 1)));
        let bad = McElement::new(cv.clone(), mc.labelling().clone(), maps).unwrap();
        if bad.is_mc().is_valid() {
            continue;
        }
        assert!(matches!(
            mc_to_labelling(&bad),
            Err(Error::ConversionRefused(_))
        ));
        let mut family = mc_to_labelling(&mc).unwrap();
        let e01 = family[&vec![0, 1]].clone();
        let skewed = DgSimplex::edge(e01.label(&Face::full(1)).scale(&Q::new(2, 1))).unwrap();
        family.insert(vec![0, 1], skewed);
        let res = labelling_to_mc(cv, &family);
        assert!(
            matches!(res, Err(Error::ConversionRefused(_))),
            "{:?}",
            res.map(|m| m.maps().len())
        );
        return;
    }
    panic!("no instance with a visible perturbation");
}
