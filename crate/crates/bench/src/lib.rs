//! Benchmarks for `mbar-core`; see `benches/`.
