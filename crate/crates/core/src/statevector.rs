//! Exact statevector simulation of the small gate set used by the
//! algorithms in this crate.
//!
//! Amplitudes are stored densely as `Complex64`, indexed by the integer
//! value of the basis state with qubit 0 as the least significant bit:
//! index 2 on two qubits is the ket with qubit 1 set and qubit 0 clear.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::problems::BitString;

/// Hard cap on simulated qubits (dense 2^n storage).
pub const MAX_QUBITS: usize = 24;

/// A gate from the primitive set. Rotation angles follow the standard
/// convention `R(a) = exp(-i a G / 2)` for generator `G`.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    X { target: usize },
    H { target: usize },
    Ry { target: usize, angle: f64 },
    Rx { target: usize, angle: f64 },
    Cnot { control: usize, target: usize },
    Cz { a: usize, b: usize },
    CRy { control: usize, target: usize, angle: f64 },
    /// Applies `exp(-i phases[q])` to each basis amplitude; `phases` must
    /// have one entry per basis state. Used for exact QAOA phase
    /// separation on diagonal cost operators.
    DiagonalPhase { phases: Vec<f64> },
}

impl Gate {
    /// Indices the gate touches (empty for [`Gate::DiagonalPhase`], which
    /// acts on the whole register).
    fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::X { target } | Gate::H { target } => vec![*target],
            Gate::Ry { target, .. } | Gate::Rx { target, .. } => vec![*target],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Cz { a, b } => vec![*a, *b],
            Gate::CRy {
                control, target, ..
            } => vec![*control, *target],
            Gate::DiagonalPhase { .. } => vec![],
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Gate::X { .. } => "x",
            Gate::H { .. } => "h",
            Gate::Ry { .. } => "ry",
            Gate::Rx { .. } => "rx",
            Gate::Cnot { .. } => "cnot",
            Gate::Cz { .. } => "cz",
            Gate::CRy { .. } => "cry",
            Gate::DiagonalPhase { .. } => "diagonal-phase",
        }
    }
}

/// Dense complex amplitudes over `2^n` basis states.
#[derive(Debug, Clone)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The all-zeros computational basis state on `n` qubits.
    pub fn init_zero(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::ResourceLimit(format!(
                "qubit count {n} outside supported range 1..={MAX_QUBITS}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    /// Applies one gate in place.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        for q in gate.qubits() {
            if q >= self.n {
                return Err(Error::InvalidInput(format!(
                    "gate {} touches qubit {q}, register has {}",
                    gate.kind(),
                    self.n
                )));
            }
        }
        match gate {
            Gate::X { target } => {
                let t = 1usize << target;
                for i in 0..self.amps.len() {
                    if i & t == 0 {
                        self.amps.swap(i, i | t);
                    }
                }
            }
            Gate::H { target } => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                self.apply_single(*target, [
                    [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
                    [Complex64::new(s, 0.0), Complex64::new(-s, 0.0)],
                ]);
            }
            Gate::Ry { target, angle } => {
                self.apply_single(*target, ry_matrix(*angle));
            }
            Gate::Rx { target, angle } => {
                let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
                self.apply_single(*target, [
                    [Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
                    [Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
                ]);
            }
            Gate::Cnot { control, target } => {
                if control == target {
                    return Err(Error::InvalidInput(
                        "cnot control and target must differ".into(),
                    ));
                }
                let c = 1usize << control;
                let t = 1usize << target;
                for i in 0..self.amps.len() {
                    if i & c != 0 && i & t == 0 {
                        self.amps.swap(i, i | t);
                    }
                }
            }
            Gate::Cz { a, b } => {
                if a == b {
                    return Err(Error::InvalidInput("cz qubits must differ".into()));
                }
                let mask = (1usize << a) | (1usize << b);
                for (i, amp) in self.amps.iter_mut().enumerate() {
                    if i & mask == mask {
                        *amp = -*amp;
                    }
                }
            }
            Gate::CRy {
                control,
                target,
                angle,
            } => {
                if control == target {
                    return Err(Error::InvalidInput(
                        "controlled-ry control and target must differ".into(),
                    ));
                }
                let m = ry_matrix(*angle);
                let c = 1usize << control;
                let t = 1usize << target;
                for i0 in 0..self.amps.len() {
                    if i0 & t == 0 && i0 & c != 0 {
                        let i1 = i0 | t;
                        let a0 = self.amps[i0];
                        let a1 = self.amps[i1];
                        self.amps[i0] = m[0][0] * a0 + m[0][1] * a1;
                        self.amps[i1] = m[1][0] * a0 + m[1][1] * a1;
                    }
                }
            }
            Gate::DiagonalPhase { phases } => {
                if phases.len() != self.amps.len() {
                    return Err(Error::InvalidInput(format!(
                        "diagonal phase has {} entries, register dimension is {}",
                        phases.len(),
                        self.amps.len()
                    )));
                }
                for (amp, &phi) in self.amps.iter_mut().zip(phases) {
                    *amp *= Complex64::from_polar(1.0, -phi);
                }
            }
        }
        Ok(())
    }

    fn apply_single(&mut self, target: usize, m: [[Complex64; 2]; 2]) {
        let step = 1usize << target;
        let len = self.amps.len();
        let mut base = 0;
        while base < len {
            for i0 in base..base + step {
                let i1 = i0 + step;
                let a0 = self.amps[i0];
                let a1 = self.amps[i1];
                self.amps[i0] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i1] = m[1][0] * a0 + m[1][1] * a1;
            }
            base += step << 1;
        }
    }

    /// `|amplitude|^2` per basis state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Probability that `qubit` measures to `value`.
    pub fn marginal(&self, qubit: usize, value: u8) -> Result<f64> {
        if qubit >= self.n {
            return Err(Error::InvalidInput(format!(
                "qubit {qubit} out of range for n = {}",
                self.n
            )));
        }
        if value > 1 {
            return Err(Error::InvalidInput("measured value must be 0 or 1".into()));
        }
        let mask = 1usize << qubit;
        let want = (value as usize) << qubit;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask == want)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Expectation of a diagonal operator given its full diagonal.
    pub fn expectation_diagonal(&self, diag: &[f64]) -> Result<f64> {
        if diag.len() != self.amps.len() {
            return Err(Error::InvalidInput(format!(
                "diagonal has {} entries, register dimension is {}",
                diag.len(),
                self.amps.len()
            )));
        }
        Ok(self
            .amps
            .iter()
            .zip(diag)
            .map(|(a, &d)| a.norm_sqr() * d)
            .sum())
    }

    /// The most probable basis state; ties resolve to the lowest index.
    pub fn most_probable(&self) -> BitString {
        let mut best = 0usize;
        let mut best_p = self.amps[0].norm_sqr();
        for (i, a) in self.amps.iter().enumerate().skip(1) {
            let p = a.norm_sqr();
            if p > best_p {
                best = i;
                best_p = p;
            }
        }
        BitString::from_index(best, self.n)
    }

    /// Writes `index,bits,re,im,probability` rows for offline inspection.
    pub fn write_amplitudes_csv<W: std::io::Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "index,bits,re,im,probability")?;
        for (i, a) in self.amps.iter().enumerate() {
            let bits = BitString::from_index(i, self.n);
            writeln!(w, "{i},{bits},{},{},{}", a.re, a.im, a.norm_sqr())?;
        }
        Ok(())
    }
}

fn ry_matrix(angle: f64) -> [[Complex64; 2]; 2] {
    let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
    [
        [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
    ]
}

/// An ordered list of gates on a fixed-width register.
#[derive(Debug, Clone)]
pub struct GateSequence {
    n: usize,
    gates: Vec<Gate>,
}

/// Serialization shape for one gate in an exported sequence.
#[derive(Serialize)]
struct GateJson {
    kind: &'static str,
    qubits: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    angle: Option<f64>,
}

impl GateSequence {
    pub fn new(n: usize) -> Self {
        Self { n, gates: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) {
        self.gates.extend(gates);
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Applies every gate to `state` in order.
    pub fn apply_to(&self, state: &mut StateVector) -> Result<()> {
        if state.n() != self.n {
            return Err(Error::InvalidInput(format!(
                "sequence is on {} qubits, state on {}",
                self.n,
                state.n()
            )));
        }
        for gate in &self.gates {
            state.apply(gate)?;
        }
        Ok(())
    }

    /// Runs the sequence from `|0...0>`.
    pub fn run(&self) -> Result<StateVector> {
        let mut state = StateVector::init_zero(self.n)?;
        self.apply_to(&mut state)?;
        Ok(state)
    }

    /// Gates of a given structural kind, for resource accounting.
    pub fn count_kind(&self, kind: &str) -> usize {
        self.gates.iter().filter(|g| g.kind() == kind).count()
    }

    /// JSON export of the gate list (angles included, diagonal phases
    /// elided to their kind).
    pub fn to_json(&self) -> Result<String> {
        let dto: Vec<GateJson> = self
            .gates
            .iter()
            .map(|g| GateJson {
                kind: g.kind(),
                qubits: g.qubits(),
                angle: match g {
                    Gate::Ry { angle, .. }
                    | Gate::Rx { angle, .. }
                    | Gate::CRy { angle, .. } => Some(*angle),
                    _ => None,
                },
            })
            .collect();
        Ok(serde_json::to_string_pretty(&serde_json::json!({
            "qubits": self.n,
            "gates": dto,
        }))?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    #[test]
    fn init_zero_bounds() {
        assert!(StateVector::init_zero(0).is_err());
        assert!(StateVector::init_zero(25).is_err());
        let s = StateVector::init_zero(3).unwrap();
        assert_eq!(s.dim(), 8);
        assert_close(s.amplitude(0).re, 1.0, 1e-15);
    }

    #[test]
    fn x_flips_target_bit() {
        let mut s = StateVector::init_zero(2).unwrap();
        s.apply(&Gate::X { target: 1 }).unwrap();
        // Qubit 1 set -> index 2.
        assert_close(s.amplitude(2).re, 1.0, 1e-15);
    }

    #[test]
    fn hadamard_splits_evenly() {
        let mut s = StateVector::init_zero(1).unwrap();
        s.apply(&Gate::H { target: 0 }).unwrap();
        assert_close(s.amplitude(0).re, FRAC_1_SQRT_2, 1e-15);
        assert_close(s.amplitude(1).re, FRAC_1_SQRT_2, 1e-15);
        s.apply(&Gate::H { target: 0 }).unwrap();
        assert_close(s.amplitude(0).re, 1.0, 1e-12);
        assert_close(s.amplitude(1).re, 0.0, 1e-12);
    }

    #[test]
    fn ry_rotates_in_real_plane() {
        let mut s = StateVector::init_zero(1).unwrap();
        let theta = 0.7;
        s.apply(&Gate::Ry { target: 0, angle: theta }).unwrap();
        assert_close(s.amplitude(0).re, (theta / 2.0).cos(), 1e-15);
        assert_close(s.amplitude(1).re, (theta / 2.0).sin(), 1e-15);
        // RY(pi) |0> = |1>.
        let mut s = StateVector::init_zero(1).unwrap();
        s.apply(&Gate::Ry { target: 0, angle: PI }).unwrap();
        assert_close(s.amplitude(1).re, 1.0, 1e-12);
        assert_close(s.probabilities()[0], 0.0, 1e-15);
    }

    #[test]
    fn rx_introduces_imaginary_component() {
        let mut s = StateVector::init_zero(1).unwrap();
        s.apply(&Gate::Rx { target: 0, angle: PI }).unwrap();
        // RX(pi)|0> = -i|1>.
        assert_close(s.amplitude(1).im, -1.0, 1e-12);
        assert_close(s.amplitude(0).norm_sqr(), 0.0, 1e-15);
    }

    #[test]
    fn cnot_entangles() {
        let mut s = StateVector::init_zero(2).unwrap();
        s.apply(&Gate::H { target: 0 }).unwrap();
        s.apply(&Gate::Cnot { control: 0, target: 1 }).unwrap();
        let p = s.probabilities();
        assert_close(p[0], 0.5, 1e-12);
        assert_close(p[3], 0.5, 1e-12);
        assert_close(p[1] + p[2], 0.0, 1e-15);
    }

    #[test]
    fn cnot_on_basis_state() {
        let mut s = StateVector::init_zero(2).unwrap();
        s.apply(&Gate::X { target: 0 }).unwrap();
        s.apply(&Gate::Cnot { control: 0, target: 1 }).unwrap();
        // |01> (control qubit 0 set) -> |11>, index 3.
        assert_close(s.amplitude(3).re, 1.0, 1e-15);
    }

    #[test]
    fn cz_phases_only_the_doubly_excited_component() {
        let mut s = StateVector::init_zero(2).unwrap();
        s.apply(&Gate::H { target: 0 }).unwrap();
        s.apply(&Gate::H { target: 1 }).unwrap();
        s.apply(&Gate::Cz { a: 0, b: 1 }).unwrap();
        assert_close(s.amplitude(3).re, -0.5, 1e-12);
        assert_close(s.amplitude(1).re, 0.5, 1e-12);
    }

    #[test]
    fn controlled_ry_acts_only_when_control_set() {
        let theta = 1.1;
        // Control clear: nothing happens.
        let mut s = StateVector::init_zero(2).unwrap();
        s.apply(&Gate::CRy { control: 1, target: 0, angle: theta }).unwrap();
        assert_close(s.amplitude(0).re, 1.0, 1e-15);
        // Control set: matches plain RY on the target.
        let mut s = StateVector::init_zero(2).unwrap();
        s.apply(&Gate::X { target: 1 }).unwrap();
        s.apply(&Gate::CRy { control: 1, target: 0, angle: theta }).unwrap();
        assert_close(s.amplitude(2).re, (theta / 2.0).cos(), 1e-15);
        assert_close(s.amplitude(3).re, (theta / 2.0).sin(), 1e-15);
    }

    #[test]
    fn diagonal_phase_is_exact() {
        let mut s = StateVector::init_zero(1).unwrap();
        s.apply(&Gate::H { target: 0 }).unwrap();
        s.apply(&Gate::DiagonalPhase { phases: vec![0.0, PI / 2.0] }).unwrap();
        // exp(-i pi/2) = -i on the |1> component.
        assert_close(s.amplitude(1).im, -FRAC_1_SQRT_2, 1e-12);
        assert_close(s.amplitude(1).re, 0.0, 1e-12);
        // Wrong length rejected.
        assert!(s.apply(&Gate::DiagonalPhase { phases: vec![0.0] }).is_err());
    }

    #[test]
    fn norm_preserved_by_random_circuit() {
        let mut s = StateVector::init_zero(4).unwrap();
        let gates = [
            Gate::H { target: 0 },
            Gate::Ry { target: 1, angle: 0.3 },
            Gate::Cnot { control: 0, target: 2 },
            Gate::Rx { target: 3, angle: -1.2 },
            Gate::Cz { a: 1, b: 3 },
            Gate::CRy { control: 2, target: 0, angle: 2.4 },
        ];
        for g in &gates {
            s.apply(g).unwrap();
        }
        assert_close(s.norm(), 1.0, 1e-12);
    }

    #[test]
    fn out_of_range_rejected() {
        let mut s = StateVector::init_zero(2).unwrap();
        assert!(s.apply(&Gate::X { target: 2 }).is_err());
        assert!(s.apply(&Gate::Cnot { control: 0, target: 5 }).is_err());
        assert!(s.apply(&Gate::Cnot { control: 1, target: 1 }).is_err());
        assert!(s.marginal(2, 0).is_err());
    }

    #[test]
    fn marginals_sum_to_one() {
        let mut s = StateVector::init_zero(3).unwrap();
        s.apply(&Gate::Ry { target: 0, angle: 0.9 }).unwrap();
        s.apply(&Gate::Cnot { control: 0, target: 2 }).unwrap();
        for q in 0..3 {
            let p0 = s.marginal(q, 0).unwrap();
            let p1 = s.marginal(q, 1).unwrap();
            assert_close(p0 + p1, 1.0, 1e-12);
        }
        assert_close(
            s.marginal(2, 1).unwrap(),
            (0.45f64).sin().powi(2),
            1e-12,
        );
    }

    #[test]
    fn most_probable_breaks_ties_low() {
        let s = StateVector::init_zero(2).unwrap();
        let mut s2 = s.clone();
        s2.apply(&Gate::H { target: 0 }).unwrap();
        // Equal mass on indices 0 and 1: the tie goes to 0.
        assert_eq!(s2.most_probable().to_index(), 0);
    }

    #[test]
    fn sequence_runs_and_counts() {
        let mut seq = GateSequence::new(2);
        seq.push(Gate::H { target: 0 });
        seq.push(Gate::Cnot { control: 0, target: 1 });
        seq.push(Gate::Ry { target: 1, angle: 0.2 });
        assert_eq!(seq.count_kind("cnot"), 1);
        assert_eq!(seq.count_kind("ry"), 1);
        let state = seq.run().unwrap();
        assert_close(state.norm(), 1.0, 1e-12);
        let json = seq.to_json().unwrap();
        assert!(json.contains("\"cnot\""));
    }

    #[test]
    fn expectation_of_diagonal_operator() {
        let mut s = StateVector::init_zero(2).unwrap();
        s.apply(&Gate::H { target: 0 }).unwrap();
        let diag = vec![1.0, -1.0, 2.0, -2.0];
        // Mass 1/2 on indices 0 and 1.
        assert_close(s.expectation_diagonal(&diag).unwrap(), 0.0, 1e-12);
        assert!(s.expectation_diagonal(&[1.0]).is_err());
    }

    #[test]
    fn amplitude_csv_has_header_and_rows() {
        let s = StateVector::init_zero(2).unwrap();
        let mut buf = Vec::new();
        s.write_amplitudes_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "index,bits,re,im,probability");
        assert!(lines[1].starts_with("0,00,1,0,1"));
    }
}
