mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use twistkit::cech_mc::{sign_lemma_holds, BigradedElement};
use twistkit::homalg::{homology, is_quasi_iso, summand_homotopy, GradedMap};
use twistkit::{ElementaryDecl, Scalar, Q};

fn signed(e: BigradedElement<Q>, k: i64) -> BigradedElement<Q> {
    if k % 2 == 0 {
        e
    } else {
        e.neg()
    }
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 64,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn hom_differential_squares_to_zero(seed in any::<u64>(), degree in -2i64..=2) {
        let mut r = rng(seed);
        let (s, t) = (complex(&mut r, 2, 3), complex(&mut r, 2, 3));
        let f = map(&mut r, &s, &t, degree);
        prop_assert!(f.hom_differential().hom_differential().is_zero());
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>(), df in -2i64..=2, dg in -2i64..=2) {
        let mut r = rng(seed);
        let (a, b, c) = (complex(&mut r, 2, 2), complex(&mut r, 2, 2), complex(&mut r, 2, 2));
        let f = map(&mut r, &a, &b, df);
        let g = map(&mut r, &b, &c, dg);
        let lhs = g.compose(&f).unwrap().hom_differential();
        let rhs = g.hom_differential().compose(&f).unwrap().signed(df).add(&g.compose(&f.hom_differential()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn chain_maps_are_cycles(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = complex(&mut r, 2, 3);
        prop_assert!(GradedMap::identity(c.clone()).hom_differential().is_zero());
        prop_assert!(GradedMap::differential(c.clone()).hom_differential().is_zero());
        prop_assert!(is_quasi_iso(&GradedMap::identity(c)).unwrap());
    }

    #[test]
    fn deleted_cech_differential_squares_to_zero(seed in any::<u64>()) {
        let mut r = rng(seed);
        let cv = cover(&mut r, 4);
        let lab = labelling(&mut r, &cv, 1, 2);
        let e = mixed(&mut r, &cv, &lab, 3);
        prop_assert!(e.deleted_cech_diff(&cv).deleted_cech_diff(&cv).is_zero());
    }

    #[test]
    fn total_differential_squares_to_zero(seed in any::<u64>()) {
        let mut r = rng(seed);
        let cv = cover(&mut r, 4);
        let lab = labelling(&mut r, &cv, 2, 2);
        let e = mixed(&mut r, &cv, &lab, 3);
        prop_assert!(e.total_diff(&cv).total_diff(&cv).is_zero());
    }

    #[test]
    fn total_differential_is_a_derivation(seed in any::<u64>(), n in -1i64..=1, m in -1i64..=1) {
        let mut r = rng(seed);
        let cv = cover(&mut r, 3);
        let lab = labelling(&mut r, &cv, 1, 2);
        let f = homogeneous(&mut r, &cv, &lab, 2, n);
        let g = homogeneous(&mut r, &cv, &lab, 2, m);
        let lhs = f.cup(&g, &cv).total_diff(&cv);
        let rhs = f.total_diff(&cv).cup(&g, &cv).add(&signed(f.cup(&g.total_diff(&cv), &cv), n));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn cup_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let cv = cover(&mut r, 3);
        let lab = labelling(&mut r, &cv, 1, 2);
        let (f, g, h) = (mixed(&mut r, &cv, &lab, 2), mixed(&mut r, &cv, &lab, 2), mixed(&mut r, &cv, &lab, 2));
        let lhs = f.cup(&g, &cv).cup(&h, &cv);
        let rhs = f.cup(&g.cup(&h, &cv), &cv);
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn sign_identity(lambda in 2i64..200, j in 1i64..200) {
        prop_assume!(j < lambda);
        prop_assert!(sign_lemma_holds(lambda, j));
    }

    #[test]
    fn summand_homotopy_contracts(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = complex(&mut r, 2, 3);
        let m = r.gen_range(1..=3);
        let p = r.gen_range(c.lo() - 1..=c.hi());
        let s = summand_homotopy(&c, &ElementaryDecl::new(vec![(m, p)]).unwrap()).unwrap();
        let ip = s.inclusion.compose(&s.projection).unwrap();
        let id = GradedMap::identity(ip.source().clone());
        prop_assert_eq!(s.homotopy.hom_differential(), ip.sub(&id).unwrap());
        prop_assert!(s.projection.compose(&s.inclusion).unwrap() == GradedMap::identity(c.clone()));
        prop_assert!(is_quasi_iso(&s.inclusion).unwrap());
    }

    #[test]
    fn homology_dimensions_match_ranks(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = complex(&mut r, 3, 3);
        for n in c.lo() - 1..=c.hi() + 1 {
            let h = homology(&c, n);
            prop_assert_eq!(h.dim, c.dim(n) - c.d(n).rank() - c.d(n - 1).rank());
            prop_assert!(c.d(n).mul(&h.basis).is_zero());
        }
    }
}

#[test]
fn summand_homotopy_in_low_degree() {
    let mut r = rng(3);
    let c = complex(&mut r, 1, 2);
    let s = summand_homotopy(&c, &ElementaryDecl::new(vec![(2, 0)]).unwrap()).unwrap();
    let h1 = s.homotopy.component(1);
    let (rows, cols) = h1.shape();
    let (c0, c1) = (c.dim(0), c.dim(1));
    for i in 0..rows {
        for j in 0..cols {
            let expected = if i >= c0 && j >= c1 && i - c0 == j - c1 {
                -1
            } else {
                0
            };
            assert_eq!(*h1.get(i, j), Q::from_i64(expected));
        }
    }
    for n in s.homotopy.source().degrees().filter(|&n| n != 1) {
        assert!(s.homotopy.component(n).is_zero());
    }
}
