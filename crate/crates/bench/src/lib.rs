//! Criterion benchmarks for qspec; see `benches/`.
