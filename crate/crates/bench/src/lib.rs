//! Criterion benchmarks for lattice enumeration, NR checks and suite runs live in `benches/`.
