use twistkit::simplex_core::*;

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn square_has_four_five_two() {
    let counts: Vec<usize> = (0..=3).map(|q| prism_simplices(1, q).len()).collect();
    assert_eq!(counts, vec![4, 5, 2, 0]);
}

#[test]
fn prism_top_simplices() {
    for p in 0..=8 {
        let top = prism_simplices(p, p + 1);
        assert_eq!(top.len(), p + 1);
        let mut expected = prism_top(p);
        expected.sort();
        assert_eq!(top, expected);
        for (m, s) in prism_top(p).iter().enumerate() {
            assert_eq!(s.path()[m], (m, 0));
            assert_eq!(s.path()[m + 1], (m, 1));
        }
    }
}

/// Every nondegenerate simplex of the prism is a subset of some top simplex.
#[test]
fn prism_counts_match_staircases() {
    for p in 0..=4 {
        for q in 0..=p + 1 {
            let brute = (0..=p)
                .map(|m| prism_top_m(p, m))
                .flat_map(|s| subsets(s.path(), q + 1))
                .collect::<std::collections::BTreeSet<_>>()
                .len();
            assert_eq!(prism_simplices(p, q).len(), brute, "p={p} q={q}");
        }
    }
}

fn subsets(path: &[(usize, usize)], k: usize) -> Vec<Vec<(usize, usize)>> {
    let n = path.len();
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| {
            (0..n)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| path[i])
                .collect()
        })
        .collect()
}

#[test]
fn barycentric_vertices() {
    for p in 0..=8 {
        assert_eq!(bary_flags(p, 0).len(), (1 << (p + 1)) - 1);
    }
    assert_eq!(bary_flags(2, 2).len(), 6);
    assert_eq!(bary_flags(3, 3).len(), 24);
}

#[test]
fn pair_subdivision_of_triangle() {
    let cells = pair_cells(2);
    let by_dim: Vec<usize> = (0..=2)
        .map(|k| cells.iter().filter(|c| c.dim() == k).count())
        .collect();
    assert_eq!(by_dim, vec![7, 9, 3]);
    let euler: i64 = by_dim
        .iter()
        .enumerate()
        .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum();
    assert_eq!(euler, 1);
    let pt = Face::new(vec![0], 2).unwrap();
    let square = PairCell::new(pt, Face::full(2)).unwrap();
    let b = pair_boundary(&square);
    assert_eq!(b.len(), 4);
    assert!(b.terms().keys().all(|c| c.dim() == 1));
}

#[test]
fn pair_cells_count_and_euler() {
    for p in 0..=5 {
        let cells = pair_cells(p);
        let total: usize = (0..=p)
            .map(|k| binom(p + 1, k + 1) * ((1 << (k + 1)) - 1))
            .sum();
        assert_eq!(cells.len(), total);
        let euler: i64 = cells
            .iter()
            .map(|c| if c.dim() % 2 == 0 { 1 } else { -1 })
            .sum();
        assert_eq!(euler, 1);
    }
}

#[test]
fn pair_boundary_squares_to_zero() {
    for p in 0..=5 {
        for c in pair_cells(p) {
            let b = pair_boundary(&c);
            assert_eq!(b.len(), 2 * c.dim(), "{c:?}");
            assert!(b.boundary().is_zero(), "{c:?}");
        }
    }
}

#[test]
fn horn_counts() {
    for p in 1..=6 {
        for i in 0..=p {
            let h = horn_simplices(p, i).unwrap();
            assert_eq!(h.len(), (1 << (p + 1)) - 3);
            assert!(h.iter().all(|f| f.with(i).len() <= p));
        }
    }
}
