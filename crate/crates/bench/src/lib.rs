//! Criterion benchmarks for the circuit engine live under `benches/`.
