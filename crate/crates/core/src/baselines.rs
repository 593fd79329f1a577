//! QAOA and hardware-efficient VQE baselines.
//!
//! QAOA alternates an exact diagonal phase separator `exp(-i gamma_k C)`
//! (possible because every cost operator here is diagonal) with transverse
//! mixers `RX(2 beta_k)` on each qubit, starting from the uniform
//! superposition. The VQE ansatz is one RY per qubit followed by a linear
//! CZ chain.

use crate::error::{Error, Result};
use crate::problems::IsingModel;
use crate::statevector::{Gate, StateVector};

/// Layer count and cost model for QAOA. The energy diagonal is computed
/// once at construction and reused for every phase separator and energy
/// evaluation.
#[derive(Debug, Clone)]
pub struct QaoaConfig {
    p: usize,
    model: IsingModel,
    diag: Vec<f64>,
}

/// Benchmark default layer count, `ceil(n / 2)`.
pub fn default_layers(n: usize) -> usize {
    n.div_ceil(2)
}

impl QaoaConfig {
    pub fn new(model: IsingModel, p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidInput("QAOA needs p >= 1".into()));
        }
        let diag = model.energy_diagonal()?;
        Ok(Self { p, model, diag })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn model(&self) -> &IsingModel {
        &self.model
    }

    pub fn n(&self) -> usize {
        self.model.n()
    }

    pub fn energy_diagonal(&self) -> &[f64] {
        &self.diag
    }
}

/// Prepares the QAOA state for parameters `(gamma, beta)`, one entry per
/// layer.
pub fn qaoa_state(cfg: &QaoaConfig, gamma: &[f64], beta: &[f64]) -> Result<StateVector> {
    if gamma.len() != cfg.p || beta.len() != cfg.p {
        return Err(Error::InvalidInput(format!(
            "expected {} gamma and beta entries, got {} and {}",
            cfg.p,
            gamma.len(),
            beta.len()
        )));
    }
    let n = cfg.n();
    let mut state = StateVector::init_zero(n)?;
    for q in 0..n {
        state.apply(&Gate::H { target: q })?;
    }
    for layer in 0..cfg.p {
        let phases: Vec<f64> = cfg.diag.iter().map(|&e| gamma[layer] * e).collect();
        state.apply(&Gate::DiagonalPhase { phases })?;
        for q in 0..n {
            state.apply(&Gate::Rx {
                target: q,
                angle: 2.0 * beta[layer],
            })?;
        }
    }
    Ok(state)
}

/// Qubit count for the single-layer VQE ansatz (one parameter per qubit).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VqeConfig {
    pub n: usize,
}

/// Prepares the VQE state: `RY(theta_i)` on each qubit, then CZ on the
/// chain `(0,1), (1,2), ..., (n-2, n-1)`.
pub fn vqe_state(cfg: &VqeConfig, theta: &[f64]) -> Result<StateVector> {
    if theta.len() != cfg.n {
        return Err(Error::InvalidInput(format!(
            "expected {} parameters, got {}",
            cfg.n,
            theta.len()
        )));
    }
    let mut state = StateVector::init_zero(cfg.n)?;
    for (i, &t) in theta.iter().enumerate() {
        state.apply(&Gate::Ry { target: i, angle: t })?;
    }
    for i in 0..cfg.n.saturating_sub(1) {
        state.apply(&Gate::Cz { a: i, b: i + 1 })?;
    }
    Ok(state)
}

/// `<psi| C |psi>` for a diagonal cost model.
pub fn energy(state: &StateVector, model: &IsingModel) -> Result<f64> {
    if state.n() != model.n() {
        return Err(Error::InvalidInput(format!(
            "state on {} qubits, model on {} variables",
            state.n(),
            model.n()
        )));
    }
    state.expectation_diagonal(&model.energy_diagonal()?)
}
