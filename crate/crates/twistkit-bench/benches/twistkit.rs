use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistkit::cech_mc::{mc_to_labelling, Cover};
use twistkit::descent::{
    path_to_weq, validate_path, validate_twisting_cochain, TwistingCochainData,
};
use twistkit::gen::{
    random_gtt_edge, random_gtt_edge_at, random_matrix, random_quasi_iso, random_twist_path,
    random_twisting_cochain, GenParams,
};
use twistkit::gtt::{fill_horn2, horn_edges, strictify};
use twistkit::simplex_core::{bary_flags, pair_cells, Face};
use twistkit::{Matrix, Q};

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(1)
}

fn linear_algebra(c: &mut Criterion) {
    let m: Matrix<Q> = random_matrix(&mut rng(), 24, 24, 3);
    c.bench_function("rref 24x24 rational", |b| b.iter(|| black_box(&m).rref()));
}

fn combinatorics(c: &mut Criterion) {
    c.bench_function("pair cells p=6", |b| b.iter(|| pair_cells(black_box(6))));
    c.bench_function("bary flags p=5 q=3", |b| {
        b.iter(|| bary_flags(black_box(5), black_box(3)))
    });
}

fn descent(c: &mut Criterion) {
    let params = GenParams::default();
    let cover = Cover::full(4).unwrap();
    let tc = TwistingCochainData::new(random_twisting_cochain::<Q, _>(&mut rng(), &cover, &params));
    c.bench_function("validate twisting cochain, 4 opens", |b| {
        b.iter(|| validate_twisting_cochain(black_box(&tc)))
    });
    c.bench_function("mc to nerve, 4 opens", |b| {
        b.iter(|| mc_to_labelling(black_box(tc.mc())).unwrap())
    });
    let path = random_twist_path::<Q, _>(&mut rng(), &Cover::full(2).unwrap(), &params);
    c.bench_function("validate path, 2 opens", |b| {
        b.iter(|| validate_path(black_box(&path)))
    });
    c.bench_function("weq from path, 2 opens", |b| {
        b.iter(|| path_to_weq(black_box(&path)).unwrap())
    });
}

fn gtt(c: &mut Criterion) {
    let params = GenParams::default();
    let mut r = rng();
    let f = random_quasi_iso::<Q, _>(&mut r, &params);
    c.bench_function("strictify", |b| {
        b.iter(|| strictify(black_box(&f)).unwrap())
    });
    let (fa, fb) = horn_edges(0).unwrap();
    let a = random_gtt_edge::<Q, _>(&mut r, &params, false);
    let vertex = Face::new(vec![fa.position(0).unwrap()], 1).unwrap();
    let shared = a.vertex(&vertex).object(0).clone();
    let e = random_gtt_edge_at(&mut r, &params, false, fb.position(0).unwrap(), &shared);
    c.bench_function("fill outer horn", |b| {
        b.iter(|| fill_horn2(black_box(&a), black_box(&e), 0).unwrap())
    });
}

criterion_group!(benches, linear_algebra, combinatorics, descent, gtt);
criterion_main!(benches);
