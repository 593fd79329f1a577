//! Problem instances and classical oracles.
//!
//! Two problem families are supported: weighted MaxCut on complete graphs,
//! which maps directly to a diagonal Ising cost operator, and the traveling
//! salesperson problem, which is first written as a QUBO over one-hot
//! position variables (with the starting city fixed to remove redundant
//! variables) and then converted to Ising form.
//!
//! Conventions used throughout the crate:
//!
//! * Binary variables and computational-basis qubit values coincide: the
//!   spin entering a diagonal cost term is `(-1)^{q_i}`, so `q_i = 0` means
//!   spin `+1`.
//! * [`ising_energy`] never includes the model offset. Callers comparing
//!   against QUBO costs add [`IsingModel::offset`] explicitly.
//! * Vertex indices are 0-based in code; the on-disk graph format is
//!   1-based (see [`GraphJson`]).

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest variable count accepted by the brute-force oracles.
pub const BRUTE_FORCE_LIMIT: usize = 24;

// ---------------------------------------------------------------------------
// Bitstrings
// ---------------------------------------------------------------------------

/// A fixed-length assignment of binary variables, bit `i` corresponding to
/// variable (and qubit) `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitString(Vec<u8>);

impl BitString {
    /// Wraps a vector of 0/1 values.
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidInput(
                "bitstring entries must be 0 or 1".into(),
            ));
        }
        Ok(Self(bits))
    }

    /// Expands a basis-state index into `n` bits; bit `i` of `index` becomes
    /// variable `i`, so qubit 0 is the least significant bit.
    pub fn from_index(index: usize, n: usize) -> Self {
        Self((0..n).map(|i| ((index >> i) & 1) as u8).collect())
    }

    /// Inverse of [`BitString::from_index`].
    pub fn to_index(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .fold(0usize, |acc, (i, &b)| acc | ((b as usize) << i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }
}

impl std::fmt::Display for BitString {
    /// Renders with variable 0 leftmost.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Weighted graphs
// ---------------------------------------------------------------------------

/// An undirected graph with real edge weights, stored as a sparse map over
/// canonical `(i, j)` pairs with `i < j`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    weights: BTreeMap<(usize, usize), f64>,
}

impl WeightedGraph {
    /// Builds a graph from an edge list. Edges may be given in either
    /// orientation; duplicates (after canonicalization) are rejected.
    pub fn new(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInstance("graph must have n >= 1".into()));
        }
        let mut weights = BTreeMap::new();
        for &(i, j, w) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidInstance(format!(
                    "edge ({i}, {j}) out of range for n = {n}"
                )));
            }
            if i == j {
                return Err(Error::InvalidInstance(format!("self-loop at vertex {i}")));
            }
            if !w.is_finite() {
                return Err(Error::InvalidInstance(format!(
                    "non-finite weight on edge ({i}, {j})"
                )));
            }
            let key = (i.min(j), i.max(j));
            if weights.insert(key, w).is_some() {
                return Err(Error::InvalidInstance(format!(
                    "duplicate edge ({}, {})",
                    key.0, key.1
                )));
            }
        }
        Ok(Self { n, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Weight of edge `(i, j)` in either orientation; 0 for absent edges.
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let key = (i.min(j), i.max(j));
        self.weights.get(&key).copied().unwrap_or(0.0)
    }

    /// Iterates stored edges as `(i, j, w)` with `i < j`, in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.weights.iter().map(|(&(i, j), &w)| (i, j, w))
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    /// True when every vertex pair has a stored edge.
    pub fn is_complete(&self) -> bool {
        self.weights.len() == self.n * (self.n - 1) / 2
    }

    /// Sum of weights over unordered pairs.
    pub fn weight_sum(&self) -> f64 {
        self.weights.values().sum()
    }
}

/// Samples a complete graph on `n` vertices with i.i.d. uniform weights in
/// `[wmin, wmax]`. The same `(n, wmin, wmax, seed)` always produces the same
/// graph, bit for bit.
pub fn random_complete_graph(n: usize, wmin: f64, wmax: f64, seed: u64) -> Result<WeightedGraph> {
    if n == 0 {
        return Err(Error::InvalidInstance("graph must have n >= 1".into()));
    }
    if !(wmin.is_finite() && wmax.is_finite()) || wmin > wmax {
        return Err(Error::InvalidInput(format!(
            "invalid weight range [{wmin}, {wmax}]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let w = rng.gen_range(wmin..=wmax);
            edges.push((i, j, w));
        }
    }
    WeightedGraph::new(n, &edges)
}

// ---------------------------------------------------------------------------
// On-disk graph format
// ---------------------------------------------------------------------------

/// Serialization shape for graph instances: `{"n": 4, "edges": [[1, 2, 0.5],
/// ...]}` with 1-based vertex indices.
#[derive(Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

impl GraphJson {
    pub fn from_graph(graph: &WeightedGraph) -> Self {
        Self {
            n: graph.n(),
            edges: graph.edges().map(|(i, j, w)| (i + 1, j + 1, w)).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<WeightedGraph> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for &(i, j, w) in &self.edges {
            if i == 0 || j == 0 {
                return Err(Error::InvalidInstance(
                    "graph file uses 1-based vertex indices; found 0".into(),
                ));
            }
            edges.push((i - 1, j - 1, w));
        }
        WeightedGraph::new(self.n, &edges)
    }
}

// ---------------------------------------------------------------------------
// Ising models
// ---------------------------------------------------------------------------

/// A diagonal cost operator `C = sum_i c_i Z_i + sum_{i<j} c_ij Z_i Z_j`
/// plus a classical offset. Zero coefficients are not stored; accessors
/// return 0 for absent terms.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingModel {
    n: usize,
    linear: BTreeMap<usize, f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
    offset: f64,
}

impl IsingModel {
    pub fn new(
        n: usize,
        linear: BTreeMap<usize, f64>,
        quadratic: BTreeMap<(usize, usize), f64>,
        offset: f64,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInstance("model must have n >= 1".into()));
        }
        for (&i, &c) in &linear {
            if i >= n {
                return Err(Error::InvalidInstance(format!(
                    "linear index {i} out of range for n = {n}"
                )));
            }
            if !c.is_finite() {
                return Err(Error::InvalidInstance(format!(
                    "non-finite linear coefficient at {i}"
                )));
            }
        }
        for (&(i, j), &c) in &quadratic {
            if i >= j || j >= n {
                return Err(Error::InvalidInstance(format!(
                    "quadratic key ({i}, {j}) must satisfy i < j < n"
                )));
            }
            if !c.is_finite() {
                return Err(Error::InvalidInstance(format!(
                    "non-finite quadratic coefficient at ({i}, {j})"
                )));
            }
        }
        if !offset.is_finite() {
            return Err(Error::InvalidInstance("non-finite offset".into()));
        }
        Ok(Self {
            n,
            linear,
            quadratic,
            offset,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Coefficient of `Z_i`, 0 when the term is absent.
    pub fn linear_coefficient(&self, i: usize) -> f64 {
        self.linear.get(&i).copied().unwrap_or(0.0)
    }

    /// Coefficient of `Z_i Z_j` (order-insensitive), 0 when absent.
    pub fn quadratic_coefficient(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let key = (i.min(j), i.max(j));
        self.quadratic.get(&key).copied().unwrap_or(0.0)
    }

    pub fn linear_terms(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.linear.iter().map(|(&i, &c)| (i, c))
    }

    pub fn quadratic_terms(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.quadratic.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    /// `sum_i |c_i| + sum_{i<j} |c_ij|`, the bound used to pick the
    /// block-encoding scale factor.
    pub fn coefficient_abs_sum(&self) -> f64 {
        self.linear.values().map(|c| c.abs()).sum::<f64>()
            + self.quadratic.values().map(|c| c.abs()).sum::<f64>()
    }

    /// Evaluates the energy of every basis state, indexed by the integer
    /// value of the bitstring (qubit 0 least significant). The accumulation
    /// order per entry matches [`ising_energy`] exactly, so the two paths
    /// agree bit for bit.
    pub fn energy_diagonal(&self) -> Result<Vec<f64>> {
        if self.n > BRUTE_FORCE_LIMIT {
            return Err(Error::ResourceLimit(format!(
                "energy diagonal for n = {} exceeds the {}-variable enumeration guard",
                self.n, BRUTE_FORCE_LIMIT
            )));
        }
        let dim = 1usize << self.n;
        let mut diag = vec![0.0f64; dim];
        for (&i, &c) in &self.linear {
            let mask = 1usize << i;
            for (q, d) in diag.iter_mut().enumerate() {
                *d += if q & mask == 0 { c } else { -c };
            }
        }
        for (&(i, j), &c) in &self.quadratic {
            let mask = (1usize << i) | (1usize << j);
            for (q, d) in diag.iter_mut().enumerate() {
                *d += if (q & mask).count_ones() % 2 == 0 {
                    c
                } else {
                    -c
                };
            }
        }
        Ok(diag)
    }
}

/// Energy of a single assignment under the spin convention
/// `z_i = (-1)^{q_i}`. Excludes the model offset.
pub fn ising_energy(model: &IsingModel, bits: &BitString) -> Result<f64> {
    if bits.len() != model.n {
        return Err(Error::InvalidInput(format!(
            "bitstring has {} bits, model has {} variables",
            bits.len(),
            model.n
        )));
    }
    let mut e = 0.0;
    for (&i, &c) in &model.linear {
        e += if bits.bit(i) == 0 { c } else { -c };
    }
    for (&(i, j), &c) in &model.quadratic {
        e += if (bits.bit(i) + bits.bit(j)) % 2 == 0 {
            c
        } else {
            -c
        };
    }
    Ok(e)
}

/// MaxCut cost operator for a weighted graph:
/// `C = sum_{i<j} w_ij Z_i Z_j` with no linear part and no offset. Lower
/// energy means a heavier cut, so the ground states are the maximum cuts.
pub fn maxcut_ising(graph: &WeightedGraph) -> IsingModel {
    let quadratic = graph.edges().map(|(i, j, w)| ((i, j), w)).collect();
    IsingModel::new(graph.n(), BTreeMap::new(), quadratic, 0.0)
        .expect("graph edges are valid Ising keys by construction")
}

// ---------------------------------------------------------------------------
// QUBO matrices
// ---------------------------------------------------------------------------

/// A symmetric QUBO matrix; the cost of an assignment `x` is `x^T Q x`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboMatrix {
    n: usize,
    entries: Vec<f64>,
}

/// Tolerance for the symmetry check on QUBO construction.
const QUBO_SYMMETRY_TOL: f64 = 1e-12;

impl QuboMatrix {
    /// Builds from a row-major flat slice of length `n * n`. Asymmetric or
    /// non-finite input is rejected.
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("QUBO must have n >= 1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for n = {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidInput("non-finite QUBO entry".into()));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let a = entries[i * n + j];
                let b = entries[j * n + i];
                if (a - b).abs() > QUBO_SYMMETRY_TOL {
                    return Err(Error::InvalidInput(format!(
                        "QUBO is asymmetric at ({i}, {j}): {a} vs {b}"
                    )));
                }
            }
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("QUBO rows must form a square".into()));
        }
        Self::new(n, rows.iter().flatten().copied().collect())
    }

    fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![0.0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    fn add_at(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.n + j] += v;
    }

    /// `x^T Q x` for a 0/1 assignment.
    pub fn cost(&self, bits: &BitString) -> Result<f64> {
        if bits.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "bitstring has {} bits, QUBO has {} variables",
                bits.len(),
                self.n
            )));
        }
        let mut total = 0.0;
        for i in 0..self.n {
            if bits.bit(i) == 0 {
                continue;
            }
            for j in 0..self.n {
                if bits.bit(j) == 1 {
                    total += self.get(i, j);
                }
            }
        }
        Ok(total)
    }
}

/// Change of variables `x_i = (1 - z_i) / 2` applied to `x^T Q x`:
///
/// * quadratic Ising coefficients `c_ij = Q_ij / 2` for `i < j`,
/// * linear coefficients `c_i = -(1/2) sum_j Q_ij`,
/// * offset `(1/2) sum_i Q_ii + (1/2) sum_{i<j} Q_ij`,
///
/// so that `x^T Q x = E(z) + offset` exactly, where `E` is the returned
/// model's energy.
pub fn qubo_to_ising(q: &QuboMatrix) -> IsingModel {
    let n = q.n();
    let mut linear = BTreeMap::new();
    let mut quadratic = BTreeMap::new();
    let mut offset = 0.0;
    for i in 0..n {
        let row_sum: f64 = (0..n).map(|j| q.get(i, j)).sum();
        let c = -0.5 * row_sum;
        if c != 0.0 {
            linear.insert(i, c);
        }
        offset += 0.5 * q.get(i, i);
        for j in (i + 1)..n {
            let c = 0.5 * q.get(i, j);
            if c != 0.0 {
                quadratic.insert((i, j), c);
            }
            offset += 0.5 * q.get(i, j);
        }
    }
    IsingModel::new(n, linear, quadratic, offset)
        .expect("QUBO-derived coefficients are valid by construction")
}

// ---------------------------------------------------------------------------
// TSP encoding
// ---------------------------------------------------------------------------

/// Reduced one-hot QUBO encoding of the traveling salesperson problem.
///
/// Position variables `x_i^a` ("city `i` is visited at step `a`") are laid
/// out for cities `1..n` and steps `1..n` (0-based); the starting city 0 is
/// pinned to step 0, which removes `2n - 1` variables and leaves
/// `(n - 1)^2`. The cost is the cyclic tour length plus a penalty `P` times
/// the one-hot constraint violations, with `P = n * sum_{i,j} w_ij` (the sum
/// over ordered pairs), large enough that every infeasible assignment costs
/// more than any feasible tour for nonnegative weights.
#[derive(Debug, Clone)]
pub struct TspEncoding {
    graph: WeightedGraph,
    penalty: f64,
    var_count: usize,
    qubo: QuboMatrix,
    /// Constant produced by expanding the penalty squares; the full cost of
    /// an assignment is `qubo.cost(x) + offset`, and for feasible `x` it
    /// equals the tour length.
    offset: f64,
}

/// Variable resolution after pinning the start: fixed 0, fixed 1, or a free
/// variable index.
#[derive(Clone, Copy)]
enum Atom {
    Zero,
    One,
    Var(usize),
}

impl TspEncoding {
    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn penalty(&self) -> f64 {
        self.penalty
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn qubo(&self) -> &QuboMatrix {
        &self.qubo
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Number of cities.
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Flat index of the free variable for city `i` at step `a` (both
    /// 0-based, both at least 1).
    pub fn var_index(&self, city: usize, step: usize) -> Result<usize> {
        let n = self.n();
        if city == 0 || step == 0 || city >= n || step >= n {
            return Err(Error::InvalidInput(format!(
                "(city {city}, step {step}) is not a free variable for n = {n}"
            )));
        }
        Ok((city - 1) * (n - 1) + (step - 1))
    }

    /// Full QUBO cost including the expansion constant.
    pub fn total_cost(&self, bits: &BitString) -> Result<f64> {
        Ok(self.qubo.cost(bits)? + self.offset)
    }

}

/// Variable resolution for city `i` at step `a` after pinning city 0 to
/// step 0.
fn atom(n: usize, city: usize, step: usize) -> Atom {
    match (city, step) {
        (0, 0) => Atom::One,
        (0, _) | (_, 0) => Atom::Zero,
        _ => Atom::Var((city - 1) * (n - 1) + (step - 1)),
    }
}

/// Accumulates `coeff * a * b` into the QUBO, resolving pinned variables to
/// constants. Products of two distinct variables are split evenly across
/// the symmetric off-diagonal pair.
fn add_product(enc: &mut TspEncoding, a: Atom, b: Atom, coeff: f64) {
    match (a, b) {
        (Atom::Zero, _) | (_, Atom::Zero) => {}
        (Atom::One, Atom::One) => enc.offset += coeff,
        (Atom::One, Atom::Var(v)) | (Atom::Var(v), Atom::One) => enc.qubo.add_at(v, v, coeff),
        (Atom::Var(u), Atom::Var(v)) => {
            if u == v {
                enc.qubo.add_at(u, u, coeff);
            } else {
                enc.qubo.add_at(u, v, 0.5 * coeff);
                enc.qubo.add_at(v, u, 0.5 * coeff);
            }
        }
    }
}

/// Builds the reduced one-hot encoding for a complete graph with `n >= 2`.
pub fn tsp_encode(graph: &WeightedGraph) -> Result<TspEncoding> {
    let n = graph.n();
    if n < 2 {
        return Err(Error::InvalidInstance(
            "TSP encoding requires at least 2 cities".into(),
        ));
    }
    if !graph.is_complete() {
        return Err(Error::InvalidInstance(
            "TSP encoding requires a complete graph".into(),
        ));
    }
    let ordered_weight_sum = 2.0 * graph.weight_sum();
    let penalty = n as f64 * ordered_weight_sum;
    let var_count = (n - 1) * (n - 1);

    let mut enc = TspEncoding {
        graph: graph.clone(),
        penalty,
        var_count,
        qubo: QuboMatrix::zeros(var_count),
        offset: 0.0,
    };

    // Tour length: sum over ordered city pairs and steps of
    // `w_ij * x_i^a * x_j^{a+1}`, with step arithmetic mod n.
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let w = graph.weight(i, j);
            for a in 0..n {
                let b = (a + 1) % n;
                add_product(&mut enc, atom(n, i, a), atom(n, j, b), w);
            }
        }
    }

    // One-hot penalties: P * (1 - sum_a x_i^a)^2 per city and
    // P * (1 - sum_i x_i^a)^2 per step. The city-0 and step-0 blocks are
    // identically zero after pinning and are skipped.
    for city in 1..n {
        enc.offset += penalty;
        for a in 1..n {
            if let Atom::Var(v) = atom(n, city, a) {
                enc.qubo.add_at(v, v, -penalty);
            }
            for a2 in (a + 1)..n {
                add_product(&mut enc, atom(n, city, a), atom(n, city, a2), 2.0 * penalty);
            }
        }
    }
    for a in 1..n {
        enc.offset += penalty;
        for city in 1..n {
            if let Atom::Var(v) = atom(n, city, a) {
                enc.qubo.add_at(v, v, -penalty);
            }
            for city2 in (city + 1)..n {
                add_product(&mut enc, atom(n, city, a), atom(n, city2, a), 2.0 * penalty);
            }
        }
    }

    Ok(enc)
}

/// All assignments that decode to valid tours, in lexicographic order of the
/// step-to-city permutation. There are `(n-1)!` of them.
pub fn tsp_feasible_states(enc: &TspEncoding) -> Vec<BitString> {
    let n = enc.n();
    let cities: Vec<usize> = (1..n).collect();
    let mut states = Vec::new();
    for perm in permutations(&cities) {
        let mut bits = vec![0u8; enc.var_count()];
        for (step_minus_1, &city) in perm.iter().enumerate() {
            let v = (city - 1) * (n - 1) + step_minus_1;
            bits[v] = 1;
        }
        states.push(BitString::new(bits).expect("bits are 0/1 by construction"));
    }
    states
}

/// Lexicographic permutations of a sorted slice.
fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    items
        .iter()
        .copied()
        .permutations(items.len())
        .collect::<Vec<_>>()
}

/// Decodes an assignment into the visiting order `[0, c_1, ..., c_{n-1}]`,
/// rejecting anything that is not a permutation.
pub fn decode_tour(enc: &TspEncoding, bits: &BitString) -> Result<Vec<usize>> {
    let n = enc.n();
    if bits.len() != enc.var_count() {
        return Err(Error::InvalidInput(format!(
            "bitstring has {} bits, encoding has {} variables",
            bits.len(),
            enc.var_count()
        )));
    }
    let mut order = vec![0usize; n];
    let mut used = vec![false; n];
    used[0] = true;
    for step in 1..n {
        let mut found = None;
        for city in 1..n {
            let v = (city - 1) * (n - 1) + (step - 1);
            if bits.bit(v) == 1 {
                if found.is_some() {
                    return Err(Error::Infeasible(format!(
                        "step {step} assigned to more than one city"
                    )));
                }
                found = Some(city);
            }
        }
        let city = found
            .ok_or_else(|| Error::Infeasible(format!("step {step} assigned to no city")))?;
        if used[city] {
            return Err(Error::Infeasible(format!("city {city} visited twice")));
        }
        used[city] = true;
        order[step] = city;
    }
    Ok(order)
}

/// Cyclic tour length of a feasible assignment.
pub fn tour_length(graph: &WeightedGraph, enc: &TspEncoding, bits: &BitString) -> Result<f64> {
    let order = decode_tour(enc, bits)?;
    let n = order.len();
    let mut total = 0.0;
    for a in 0..n {
        total += graph.weight(order[a], order[(a + 1) % n]);
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

/// Exact spectrum endpoints of an Ising model, with every minimizing
/// assignment.
#[derive(Debug, Clone)]
pub struct Extrema {
    pub c_min: f64,
    pub c_max: f64,
    /// All assignments attaining `c_min`, in basis-index order.
    pub argmin_set: Vec<BitString>,
}

/// Enumerates all `2^n` assignments. Guarded at [`BRUTE_FORCE_LIMIT`]
/// variables.
pub fn brute_force_extrema(model: &IsingModel) -> Result<Extrema> {
    let n = model.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "brute force over n = {n} exceeds the {BRUTE_FORCE_LIMIT}-variable guard"
        )));
    }
    let diag = model.energy_diagonal()?;
    let mut c_min = f64::INFINITY;
    let mut c_max = f64::NEG_INFINITY;
    let mut argmin_indices: Vec<usize> = Vec::new();
    for (q, &e) in diag.iter().enumerate() {
        if e < c_min {
            c_min = e;
            argmin_indices.clear();
            argmin_indices.push(q);
        } else if e == c_min {
            argmin_indices.push(q);
        }
        if e > c_max {
            c_max = e;
        }
    }
    Ok(Extrema {
        c_min,
        c_max,
        argmin_set: argmin_indices
            .into_iter()
            .map(|q| BitString::from_index(q, n))
            .collect(),
    })
}
