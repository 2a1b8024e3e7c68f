//! Benchmarks for the solver and certificate pipeline live in `benches/`.
