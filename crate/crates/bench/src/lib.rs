//! Criterion benchmarks for `hypcone`; see `benches/`.
