//! Criterion benchmarks for tagmark live under `benches/`.
