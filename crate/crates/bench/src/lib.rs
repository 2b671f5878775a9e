//! Criterion benchmarks for `qls-core`; see `benches/qls.rs`.

pub use qls_core;
