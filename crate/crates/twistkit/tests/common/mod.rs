//! Generators shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistkit::cech_mc::{BigradedElement, Cover, Labelling};
use twistkit::gen::{random_complex, random_map};
use twistkit::homalg::{Cx, GradedMap};
use twistkit::Q;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random complex in degrees `0..=amp` with dimensions at most `max_dim`.
pub fn complex(r: &mut ChaCha8Rng, amp: i64, max_dim: usize) -> Cx<Q> {
    let lo = r.gen_range(-1..=0);
    random_complex(r, lo, lo + amp, max_dim, 2)
}

/// A random graded map of the given degree between random complexes.
pub fn map(r: &mut ChaCha8Rng, s: &Cx<Q>, t: &Cx<Q>, degree: i64) -> GradedMap<Q> {
    random_map(r, s, t, degree, 2)
}

/// One of a few covers with at most `max_opens` opens.
pub fn cover(r: &mut ChaCha8Rng, max_opens: usize) -> Cover {
    let n = r.gen_range(1..=max_opens.max(1));
    match r.gen_range(0..3) {
        0 => Cover::full(n).unwrap(),
        1 => Cover::ordered_simplex(n - 1).unwrap(),
        _ => {
            let names = (0..n).map(|k| format!("U{k}")).collect();
            let sets: Vec<Vec<usize>> = (1..n).map(|k| vec![k - 1, k]).collect();
            let sets = if sets.is_empty() { vec![vec![0]] } else { sets };
            Cover::new(names, &sets).unwrap()
        }
    }
}

pub fn labelling(r: &mut ChaCha8Rng, cover: &Cover, amp: i64, max_dim: usize) -> Labelling<Q> {
    (0..cover.len()).map(|_| complex(r, amp, max_dim)).collect()
}

/// A random element of total degree `n` supported on valid tuples of length
/// at most `max_len`, each component present with probability one half.
pub fn homogeneous(
    r: &mut ChaCha8Rng,
    cover: &Cover,
    lab: &Labelling<Q>,
    max_len: usize,
    n: i64,
) -> BigradedElement<Q> {
    let mut e = BigradedElement::new();
    for len in 1..=max_len {
        for t in cover.valid_tuples(len) {
            if r.gen_bool(0.5) {
                let q = n - (len as i64 - 1);
                let m = map(r, &lab[t[len - 1]], &lab[t[0]], q);
                e.add_component(lab, t, m).unwrap();
            }
        }
    }
    e
}

/// A random element mixing total degrees `-1..=1`.
pub fn mixed(
    r: &mut ChaCha8Rng,
    cover: &Cover,
    lab: &Labelling<Q>,
    max_len: usize,
) -> BigradedElement<Q> {
    (-1..=1).fold(BigradedElement::new(), |acc, n| {
        acc.add(&homogeneous(r, cover, lab, max_len, n))
    })
}

/// Checks every simplicial identity between faces and degeneracies that
/// starts from the `p`-simplex `x`; returns the first failure.
pub fn simplicial_identities<T: PartialEq>(
    x: &T,
    p: usize,
    face: impl Fn(&T, usize) -> T,
    degen: impl Fn(&T, usize) -> T,
) -> Result<(), String> {
    if p >= 2 {
        for j in 1..=p {
            for i in 0..j {
                if face(&face(x, j), i) != face(&face(x, i), j - 1) {
                    return Err(format!("d_{i} d_{j} != d_{} d_{i}", j - 1));
                }
            }
        }
    }
    for j in 0..=p {
        for i in 0..=j {
            if degen(&degen(x, j), i) != degen(&degen(x, i), j + 1) {
                return Err(format!("s_{i} s_{j} != s_{} s_{i}", j + 1));
            }
        }
        let s = degen(x, j);
        for i in 0..=p + 1 {
            let lhs = face(&s, i);
            let ok = if i == j || i == j + 1 {
                lhs == *x
            } else if p == 0 {
                true
            } else if i < j {
                lhs == degen(&face(x, i), j - 1)
            } else {
                lhs == degen(&face(x, i - 1), j)
            };
            if !ok {
                return Err(format!("d_{i} s_{j} fails"));
            }
        }
    }
    Ok(())
}

/// A one-edge STC datum on `Δ[1]` with vertex labellings read off the edge.
pub fn edge_data(l: &twistkit::gtt::GttLabelling<Q>) -> twistkit::descent::StcData<Q> {
    use twistkit::gtt::gtt_face;
    let labellings = std::collections::BTreeMap::from([
        (vec![0], gtt_face(l, 1).unwrap()),
        (vec![1], gtt_face(l, 0).unwrap()),
        (vec![0, 1], l.clone()),
    ]);
    twistkit::descent::StcData::new(Cover::ordered_simplex(1).unwrap(), 2, labellings).unwrap()
}
