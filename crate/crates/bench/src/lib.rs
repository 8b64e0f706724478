//! Criterion benchmarks for the maximin workspace live in `benches/`.
