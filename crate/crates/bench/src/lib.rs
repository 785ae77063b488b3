//! Criterion benchmarks for kshape-core live in `benches/`.
