//! Benchmark-only crate; see `benches/kernels.rs` for the measured
//! workloads. Kept separate so the core library carries no benchmark
//! dependencies.
