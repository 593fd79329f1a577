//! Hybrid quantum-classical optimization toolkit built around a
//! block-encoding optimizer (BENQO) with QAOA and VQE baselines.
//!
//! The crate is organized as a pipeline:
//!
//! * [`problems`]: weighted graphs, QUBO/Ising representations, the
//!   reduced one-hot TSP encoding, and brute-force oracles.
//! * [`statevector`]: exact complex statevector simulation of the
//!   primitive gate set used by every algorithm here.
//! * [`benqo`]: the block-encoding circuit, Hadamard-test loss, its
//!   closed-form oracle, and circuit resource counts.
//! * [`baselines`]: QAOA and hardware-efficient VQE state preparation.
//! * [`optimizers`]: normalized gradient descent with parameter-shift
//!   gradients, plus derivative-free Powell and Nelder-Mead.
//! * [`metrics`]: approximation ratio/index, feasibility and length
//!   ratios, z-score outlier filtering, and aggregation.
//! * [`harness`]: seeded benchmark campaigns, loss-landscape sampling,
//!   and CSV/JSONL report generation.

pub mod baselines;
pub mod benqo;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod optimizers;
pub mod problems;
pub mod statevector;

pub use error::{Error, Result};
pub use problems::{BitString, Extrema, IsingModel, QuboMatrix, TspEncoding, WeightedGraph};
pub use statevector::{Gate, GateSequence, StateVector};
