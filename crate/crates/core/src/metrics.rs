//! Solution-quality metrics and their aggregation.
//!
//! All metrics evaluate a candidate state against brute-forced ground
//! truth: the approximation ratio rescales the energy expectation into
//! [0, 1], the approximation index asks whether the most probable
//! bitstring is (near-)optimal, and the TSP-specific feasibility and
//! length ratios quantify how much probability mass sits on valid tours
//! and how short those tours are.

use serde::{Deserialize, Serialize};

use crate::baselines::energy;
use crate::error::{Error, Result};
pub use crate::problems::Extrema;
use crate::problems::{
    ising_energy, tour_length, tsp_feasible_states, BitString, IsingModel, TspEncoding,
};
use crate::statevector::StateVector;

/// Shortest and longest feasible tour lengths of a TSP instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TourExtremes {
    pub l_opt: f64,
    pub l_max: f64,
}

impl TourExtremes {
    /// Brute-forces all `(n-1)!` tours of an encoding.
    pub fn from_encoding(enc: &TspEncoding) -> Result<Self> {
        let mut l_opt = f64::INFINITY;
        let mut l_max = f64::NEG_INFINITY;
        for bits in tsp_feasible_states(enc) {
            let len = tour_length(enc.graph(), enc, &bits)?;
            l_opt = l_opt.min(len);
            l_max = l_max.max(len);
        }
        Ok(Self { l_opt, l_max })
    }
}

/// Every per-record metric in one row. `fr` and `lr` are populated only
/// for problems with a feasibility structure (TSP); `ai*` are missing when
/// the optimal cost is exactly zero and the relative test is undefined.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricBundle {
    pub ar: f64,
    pub ai0: Option<bool>,
    pub ai1: Option<bool>,
    pub ai5: Option<bool>,
    pub fr: Option<f64>,
    pub lr: Option<f64>,
}

impl MetricBundle {
    /// CSV header matching [`MetricBundle::to_csv_row`].
    pub const CSV_HEADER: &'static str = "ar,ai0,ai1,ai5,fr,lr,lr_defined";

    /// Flat CSV row; booleans as 1/0, missing values as empty fields.
    pub fn to_csv_row(&self) -> String {
        let bit = |b: Option<bool>| match b {
            Some(true) => "1".to_string(),
            Some(false) => "0".to_string(),
            None => String::new(),
        };
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{}",
            self.ar,
            bit(self.ai0),
            bit(self.ai1),
            bit(self.ai5),
            opt(self.fr),
            opt(self.lr),
            if self.lr.is_some() { 1 } else { 0 },
        )
    }
}

/// `(C_max - E[C]) / (C_max - C_min)`, clamped into [0, 1] against
/// rounding spill.
pub fn approximation_ratio(
    state: &StateVector,
    model: &IsingModel,
    ext: &Extrema,
) -> Result<f64> {
    if ext.c_min >= ext.c_max {
        return Err(Error::DegenerateSpectrum(format!(
            "cannot normalize on a flat spectrum (c_min = c_max = {})",
            ext.c_min
        )));
    }
    let e = energy(state, model)?;
    // Positive numerator and denominator so a state pinned to the worst
    // energy yields +0.0, not IEEE negative zero.
    let ar = (ext.c_max - e) / (ext.c_max - ext.c_min);
    if !(-1e-12..=1.0 + 1e-12).contains(&ar) {
        return Err(Error::NumericConsistency(format!(
            "approximation ratio {ar} outside [0, 1] beyond slack"
        )));
    }
    Ok(ar.clamp(0.0, 1.0))
}

/// 1 iff the most probable bitstring's energy is within a relative
/// distance `t` of the optimum: `|E(psi_max) - C_min| / |C_min| <= t`.
/// Undefined when `C_min = 0`.
pub fn approximation_index(
    state: &StateVector,
    model: &IsingModel,
    t: f64,
    ext: &Extrema,
) -> Result<bool> {
    if ext.c_min == 0.0 {
        return Err(Error::UndefinedMetric(
            "approximation index needs a nonzero optimal cost".into(),
        ));
    }
    let best = state.most_probable();
    let e = ising_energy(model, &best)?;
    Ok((e - ext.c_min).abs() / ext.c_min.abs() <= t)
}

/// Total probability mass on the given feasible basis states.
pub fn feasibility_ratio(state: &StateVector, feasible: &[BitString]) -> Result<f64> {
    if feasible.is_empty() {
        return Err(Error::InvalidInput("feasible set must be nonempty".into()));
    }
    let probs = state.probabilities();
    let mut total = 0.0;
    for bits in feasible {
        if bits.len() != state.n() {
            return Err(Error::InvalidInput(format!(
                "feasible state on {} bits, register has {} qubits",
                bits.len(),
                state.n()
            )));
        }
        total += probs[bits.to_index()];
    }
    Ok(total)
}

/// Feasible probability mass below which the length ratio is undefined.
const LR_MASS_FLOOR: f64 = 1e-12;

/// Normalized expected tour length over the feasible subspace:
/// `(l_max - l_TSP) / (l_max - l_opt)` where `l_TSP` is the
/// feasibility-mass-renormalized expectation of the tour length. `None`
/// when essentially no mass is feasible. When all tours have equal length
/// (always true at n = 3) the ratio is 1 by convention.
pub fn length_ratio(
    state: &StateVector,
    enc: &TspEncoding,
    ext_tours: &TourExtremes,
) -> Option<f64> {
    let probs = state.probabilities();
    let mut mass = 0.0;
    let mut weighted = 0.0;
    for bits in tsp_feasible_states(enc) {
        let p = probs[bits.to_index()];
        let len = tour_length(enc.graph(), enc, &bits).expect("enumerated tours are feasible");
        mass += p;
        weighted += p * len;
    }
    if mass < LR_MASS_FLOOR {
        return None;
    }
    let spread = ext_tours.l_max - ext_tours.l_opt;
    if spread.abs() <= 1e-12 * ext_tours.l_max.abs().max(1.0) {
        return Some(1.0);
    }
    let l_tsp = weighted / mass;
    Some(((ext_tours.l_max - l_tsp) / spread).clamp(0.0, 1.0))
}

/// Drops samples whose one-sided z-score exceeds 1.5:
/// `(x - mean) / std > 1.5` with the population standard deviation.
/// Fewer than two samples, or zero spread, pass through unchanged.
pub fn filter_outliers(samples: &[f64]) -> Vec<f64> {
    if samples.len() < 2 {
        return samples.to_vec();
    }
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / samples.len() as f64;
    let std = var.sqrt();
    if std == 0.0 {
        return samples.to_vec();
    }
    samples
        .iter()
        .copied()
        .filter(|x| (x - mean) / std <= 1.5)
        .collect()
}

/// Population mean and standard deviation.
fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Aggregated metric statistics over a set of records.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateReport {
    pub count: usize,
    pub ar_mean: f64,
    pub ar_std: f64,
    /// Percentage of records whose most probable state is exactly optimal
    /// (`ai0`); `None` when the index was undefined everywhere.
    pub optimality_pct: Option<f64>,
    /// Percentage within 1% of optimal (`ai1`).
    pub success_pct_1: Option<f64>,
    /// Percentage within 5% of optimal (`ai5`).
    pub success_pct_5: Option<f64>,
    pub fr_mean: Option<f64>,
    pub fr_std: Option<f64>,
    pub lr_mean: Option<f64>,
    pub lr_std: Option<f64>,
    /// Records whose `lr` was undefined and therefore excluded from the
    /// `lr` statistics.
    pub lr_excluded: usize,
}

/// Means, population standard deviations, and percentage rates over
/// bundles. Missing values are excluded per metric; the `lr` exclusion
/// count is reported explicitly.
pub fn aggregate(records: &[MetricBundle]) -> Result<AggregateReport> {
    if records.is_empty() {
        return Err(Error::InvalidInput("cannot aggregate zero records".into()));
    }
    let ars: Vec<f64> = records.iter().map(|r| r.ar).collect();
    let (ar_mean, ar_std) = mean_std(&ars);

    let pct = |get: fn(&MetricBundle) -> Option<bool>| -> Option<f64> {
        let defined: Vec<f64> = records
            .iter()
            .filter_map(get)
            .map(|b| if b { 1.0 } else { 0.0 })
            .collect();
        if defined.is_empty() {
            None
        } else {
            Some(100.0 * defined.iter().sum::<f64>() / defined.len() as f64)
        }
    };

    let frs: Vec<f64> = records.iter().filter_map(|r| r.fr).collect();
    let (fr_mean, fr_std) = if frs.is_empty() {
        (None, None)
    } else {
        let (m, s) = mean_std(&frs);
        (Some(m), Some(s))
    };

    let lrs: Vec<f64> = records.iter().filter_map(|r| r.lr).collect();
    let lr_excluded = records.len() - lrs.len();
    let (lr_mean, lr_std) = if lrs.is_empty() {
        (None, None)
    } else {
        let (m, s) = mean_std(&lrs);
        (Some(m), Some(s))
    };

    Ok(AggregateReport {
        count: records.len(),
        ar_mean,
        ar_std,
        optimality_pct: pct(|r| r.ai0),
        success_pct_1: pct(|r| r.ai1),
        success_pct_5: pct(|r| r.ai5),
        fr_mean,
        fr_std,
        lr_mean,
        lr_std,
        lr_excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{
        brute_force_extrema, maxcut_ising, qubo_to_ising, random_complete_graph, tsp_encode,
    };
    use crate::statevector::Gate;

    fn basis_state(n: usize, index: usize) -> StateVector {
        let mut s = StateVector::init_zero(n).unwrap();
        for i in 0..n {
            if (index >> i) & 1 == 1 {
                s.apply(&Gate::X { target: i }).unwrap();
            }
        }
        s
    }

    fn uniform_state(n: usize) -> StateVector {
        let mut s = StateVector::init_zero(n).unwrap();
        for i in 0..n {
            s.apply(&Gate::H { target: i }).unwrap();
        }
        s
    }

    #[test]
    fn ar_endpoints_and_uniform_value() {
        // Unit-weight triangle: energies are -1 (cuts) and 3 (trivial
        // partitions), mean 0 over all 8 outcomes.
        let g = crate::problems::WeightedGraph::new(
            3,
            &[(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)],
        )
        .unwrap();
        let model = maxcut_ising(&g);
        let ext = brute_force_extrema(&model).unwrap();
        assert_eq!(ext.c_min, -1.0);
        assert_eq!(ext.c_max, 3.0);

        let argmin = basis_state(3, ext.argmin_set[0].to_index());
        assert!((approximation_ratio(&argmin, &model, &ext).unwrap() - 1.0).abs() < 1e-12);
        let argmax = basis_state(3, 0);
        assert!(approximation_ratio(&argmax, &model, &ext).unwrap().abs() < 1e-12);
        let u = uniform_state(3);
        assert!((approximation_ratio(&u, &model, &ext).unwrap() - 0.75).abs() < 1e-10);
    }

    #[test]
    fn ar_rejects_flat_spectra() {
        let model =
            IsingModel::new(2, Default::default(), Default::default(), 0.0).unwrap();
        let ext = Extrema { c_min: 0.0, c_max: 0.0, argmin_set: vec![] };
        let s = uniform_state(2);
        assert!(matches!(
            approximation_ratio(&s, &model, &ext),
            Err(Error::DegenerateSpectrum(_))
        ));
    }

    #[test]
    fn ar_is_affine_invariant() {
        // Scaling a model by a > 0 rescales energies and extrema together.
        let g = random_complete_graph(5, 0.0, 10.0, 21).unwrap();
        let model = maxcut_ising(&g);
        let ext = brute_force_extrema(&model).unwrap();
        let scaled = maxcut_ising(&{
            let edges: Vec<(usize, usize, f64)> =
                g.edges().map(|(i, j, w)| (i, j, 2.5 * w)).collect();
            crate::problems::WeightedGraph::new(5, &edges).unwrap()
        });
        let ext_scaled = brute_force_extrema(&scaled).unwrap();
        let mut s = uniform_state(5);
        s.apply(&Gate::Ry { target: 2, angle: 0.7 }).unwrap();
        let a = approximation_ratio(&s, &model, &ext).unwrap();
        let b = approximation_ratio(&s, &scaled, &ext_scaled).unwrap();
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn ai_thresholds() {
        // Two-variable model with energies -5, -4.8, 4, 6 arranged via a
        // crafted diagonal: use a QUBO to get a mixed spectrum.
        let q = crate::problems::QuboMatrix::from_rows(&[vec![-5.0, 0.0], vec![0.0, 0.2]])
            .unwrap();
        let model = qubo_to_ising(&q);
        let ext = brute_force_extrema(&model).unwrap();
        // Minposition is x = (1, 0) -> index 1, energy c_min.
        let s = basis_state(2, ext.argmin_set[0].to_index());
        assert!(approximation_index(&s, &model, 0.0, &ext).unwrap());
        // A state concentrated just off the optimum fails at t = 0.
        let near = basis_state(2, 3);
        let e_near = ising_energy(&model, &BitString::from_index(3, 2)).unwrap();
        let rel = (e_near - ext.c_min).abs() / ext.c_min.abs();
        let idx0 = approximation_index(&near, &model, 0.0, &ext).unwrap();
        assert!(!idx0);
        // With t above the actual relative distance it flips to success.
        let idx_loose = approximation_index(&near, &model, rel + 1e-9, &ext).unwrap();
        assert!(idx_loose);
    }

    #[test]
    fn ai_guard_on_zero_optimum() {
        let model =
            IsingModel::new(1, Default::default(), Default::default(), 0.0).unwrap();
        let ext = Extrema {
            c_min: 0.0,
            c_max: 1.0,
            argmin_set: vec![BitString::from_index(0, 1)],
        };
        let s = basis_state(1, 0);
        assert!(matches!(
            approximation_index(&s, &model, 0.0, &ext),
            Err(Error::UndefinedMetric(_))
        ));
    }

    #[test]
    fn fr_counts_feasible_mass() {
        let g = random_complete_graph(3, 1.0, 10.0, 31).unwrap();
        let enc = tsp_encode(&g).unwrap();
        let feasible = tsp_feasible_states(&enc);
        assert_eq!(feasible.len(), 2);
        // Uniform over 4 variables: 2 of 16 states are feasible.
        let u = uniform_state(4);
        assert!((feasibility_ratio(&u, &feasible).unwrap() - 0.125).abs() < 1e-12);
        // Basis states inside and outside the feasible set.
        let inside = basis_state(4, feasible[0].to_index());
        assert!((feasibility_ratio(&inside, &feasible).unwrap() - 1.0).abs() < 1e-12);
        let outside = basis_state(4, 0);
        assert!(feasibility_ratio(&outside, &feasible).unwrap() < 1e-12);
        assert!(feasibility_ratio(&u, &[]).is_err());
    }

    #[test]
    fn fr_complements_infeasible_mass() {
        let g = random_complete_graph(4, 1.0, 10.0, 33).unwrap();
        let enc = tsp_encode(&g).unwrap();
        let feasible = tsp_feasible_states(&enc);
        let mut s = uniform_state(9);
        s.apply(&Gate::Ry { target: 3, angle: 1.1 }).unwrap();
        let fr = feasibility_ratio(&s, &feasible).unwrap();
        let feasible_idx: std::collections::HashSet<usize> =
            feasible.iter().map(|b| b.to_index()).collect();
        let infeasible: f64 = s
            .probabilities()
            .iter()
            .enumerate()
            .filter(|(i, _)| !feasible_idx.contains(i))
            .map(|(_, p)| p)
            .sum();
        assert!((fr + infeasible - 1.0).abs() < 1e-10);
    }

    #[test]
    fn lr_trivial_at_three_cities() {
        let g = random_complete_graph(3, 1.0, 10.0, 35).unwrap();
        let enc = tsp_encode(&g).unwrap();
        let ext = TourExtremes::from_encoding(&enc).unwrap();
        // Both tours traverse the same triangle, so the spread is zero and
        // any state with feasible mass scores 1.
        let u = uniform_state(4);
        assert_eq!(length_ratio(&u, &enc, &ext), Some(1.0));
    }

    #[test]
    fn lr_endpoints_at_four_cities() {
        let g = random_complete_graph(4, 1.0, 100.0, 37).unwrap();
        let enc = tsp_encode(&g).unwrap();
        let ext = TourExtremes::from_encoding(&enc).unwrap();
        assert!(ext.l_opt < ext.l_max);
        let feasible = tsp_feasible_states(&enc);
        let mut best = None;
        let mut worst = None;
        for bits in &feasible {
            let len = tour_length(enc.graph(), &enc, bits).unwrap();
            if len == ext.l_opt {
                best = Some(bits.clone());
            }
            if len == ext.l_max {
                worst = Some(bits.clone());
            }
        }
        let s = basis_state(9, best.unwrap().to_index());
        assert!((length_ratio(&s, &enc, &ext).unwrap() - 1.0).abs() < 1e-12);
        let s = basis_state(9, worst.unwrap().to_index());
        assert!(length_ratio(&s, &enc, &ext).unwrap().abs() < 1e-12);
        // No feasible mass: undefined.
        let s = basis_state(9, 0);
        assert_eq!(length_ratio(&s, &enc, &ext), None);
    }

    #[test]
    fn outlier_filter_matches_worked_examples() {
        assert_eq!(filter_outliers(&[1.0, 1.0, 1.0, 1.0]), vec![1.0; 4]);
        // Mean 3.25, population std ~3.897: z(10) ~ 1.732.
        assert_eq!(filter_outliers(&[1.0, 1.0, 1.0, 10.0]), vec![1.0; 3]);
        // One-sided: a low outlier survives.
        assert_eq!(
            filter_outliers(&[-10.0, 1.0, 1.0, 1.0]),
            vec![-10.0, 1.0, 1.0, 1.0]
        );
        assert_eq!(filter_outliers(&[5.0]), vec![5.0]);
        // Idempotence on the filtered output.
        let once = filter_outliers(&[1.0, 1.0, 1.0, 10.0]);
        assert_eq!(filter_outliers(&once), once);
    }

    #[test]
    fn aggregate_means_and_percentages() {
        let mk = |ar: f64, ai0: bool, lr: Option<f64>| MetricBundle {
            ar,
            ai0: Some(ai0),
            ai1: Some(true),
            ai5: Some(true),
            fr: Some(0.5),
            lr,
        };
        let records = vec![
            mk(0.2, true, Some(0.4)),
            mk(0.4, false, None),
            mk(0.6, true, Some(0.8)),
            mk(0.8, false, None),
        ];
        let agg = aggregate(&records).unwrap();
        assert_eq!(agg.count, 4);
        assert!((agg.ar_mean - 0.5).abs() < 1e-12);
        assert_eq!(agg.optimality_pct, Some(50.0));
        assert_eq!(agg.success_pct_1, Some(100.0));
        assert_eq!(agg.lr_excluded, 2);
        assert!((agg.lr_mean.unwrap() - 0.6).abs() < 1e-12);
        assert!((agg.fr_std.unwrap()).abs() < 1e-12);
        assert!(aggregate(&[]).is_err());

        // Identical bundles: zero std.
        let same = vec![mk(0.3, true, Some(0.5)); 5];
        let agg = aggregate(&same).unwrap();
        assert!(agg.ar_std.abs() < 1e-12);
        assert_eq!(agg.optimality_pct, Some(100.0));
    }

    #[test]
    fn csv_row_shape() {
        let b = MetricBundle {
            ar: 0.75,
            ai0: Some(false),
            ai1: None,
            ai5: Some(true),
            fr: Some(0.25),
            lr: None,
        };
        assert_eq!(b.to_csv_row(), "0.75,0,,1,0.25,,0");
        assert_eq!(MetricBundle::CSV_HEADER.split(',').count(), 7);
    }
}
