//! Criterion benchmarks for the verifier live under `benches/`.
