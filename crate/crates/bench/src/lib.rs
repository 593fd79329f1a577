//! Benchmark-only crate. The measurements live in `benches/simulation.rs`
//! and exercise the simulator, the Hadamard-test loss, and the brute-force
//! oracles from `benqo-core`.
