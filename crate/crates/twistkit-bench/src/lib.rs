//! Criterion benchmarks for twistkit; see `benches/`.
