//! Criterion benchmarks for the proof kernel; see `benches/kernel.rs`.
