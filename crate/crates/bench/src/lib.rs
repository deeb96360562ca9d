//! Criterion benchmarks for `polymer-core`; see `benches/`.
