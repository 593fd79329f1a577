//! Benchmark campaigns over seeded random instances, loss-landscape
//! sampling, and report-file emission.
//!
//! Reproducibility contract: every random choice derives from the config's
//! `base_seed` through a documented 64-bit mixing chain, so rerunning a
//! campaign with the same config produces byte-identical `records.jsonl`
//! and derived CSV tables. The timing files (`timings.csv`, `runtime.csv`)
//! carry measured CPU seconds and are the one documented exception.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::baselines::{default_layers, energy, qaoa_state, vqe_state, QaoaConfig, VqeConfig};
use crate::benqo::{
    analytic_loss, ansatz_state, benqo_gradient, hadamard_test_loss, BenqoAnsatz, BlockEncoding,
    GradientMode,
};
use crate::error::{Error, Result};
use crate::metrics::{
    aggregate, approximation_index, approximation_ratio, feasibility_ratio, filter_outliers,
    length_ratio, MetricBundle, TourExtremes,
};
use crate::optimizers::{
    initial_parameters, nelder_mead_minimize, ngd_minimize, ngd_minimize_with_gradient,
    powell_minimize, InitStrategy, LossFunction, OptimizationTrace, Termination,
};
use crate::problems::{
    brute_force_extrema, maxcut_ising, qubo_to_ising, random_complete_graph, tsp_encode,
    tsp_feasible_states, BitString, Extrema, IsingModel, TspEncoding, WeightedGraph,
};
use crate::statevector::{Gate, StateVector};

/// Largest MaxCut size a campaign will simulate.
pub const MAXCUT_SIZE_LIMIT: usize = 14;
/// Largest TSP city count a campaign will simulate (n = 5 already needs an
/// 18-qubit register for the block-encoding test circuit).
pub const TSP_SIZE_LIMIT: usize = 5;

/// One round of the splitmix64 output function.
fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds a sequence of parts into one seed, order-sensitively:
/// `acc_0 = 0x243F6A8885A308D3`, `acc_{k+1} = splitmix64(acc_k XOR part_k)`.
/// Instance seeds are `mix(base_seed, size, run)`; per-algorithm init seeds
/// are `mix(instance_seed, algorithm id)`.
pub fn mix_seed(parts: &[u64]) -> u64 {
    let mut acc = 0x243F_6A88_85A3_08D3;
    for &p in parts {
        acc = splitmix64(acc ^ p);
    }
    acc
}

/// Problem family a campaign draws instances from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    MaxCut,
    Tsp,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::MaxCut => "maxcut",
            Problem::Tsp => "tsp",
        }
    }

    /// Default edge-weight sampling range.
    pub fn default_weight_range(self) -> (f64, f64) {
        match self {
            Problem::MaxCut => (0.0, 10.0),
            Problem::Tsp => (0.0, 100.0),
        }
    }

    fn size_limit(self) -> usize {
        match self {
            Problem::MaxCut => MAXCUT_SIZE_LIMIT,
            Problem::Tsp => TSP_SIZE_LIMIT,
        }
    }
}

/// An (ansatz, optimizer) pairing the harness knows how to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgorithmTag {
    #[serde(rename = "benqo+ngd")]
    BenqoNgd,
    #[serde(rename = "qaoa+ngd")]
    QaoaNgd,
    #[serde(rename = "qaoa+gradfree")]
    QaoaGradFree,
    #[serde(rename = "vqe+ngd")]
    VqeNgd,
    #[serde(rename = "vqe+powell")]
    VqePowell,
    #[serde(rename = "uniform-baseline")]
    UniformBaseline,
}

impl AlgorithmTag {
    pub const ALL: [AlgorithmTag; 6] = [
        AlgorithmTag::BenqoNgd,
        AlgorithmTag::QaoaNgd,
        AlgorithmTag::QaoaGradFree,
        AlgorithmTag::VqeNgd,
        AlgorithmTag::VqePowell,
        AlgorithmTag::UniformBaseline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmTag::BenqoNgd => "benqo+ngd",
            AlgorithmTag::QaoaNgd => "qaoa+ngd",
            AlgorithmTag::QaoaGradFree => "qaoa+gradfree",
            AlgorithmTag::VqeNgd => "vqe+ngd",
            AlgorithmTag::VqePowell => "vqe+powell",
            AlgorithmTag::UniformBaseline => "uniform-baseline",
        }
    }

    pub fn optimizer_name(self) -> &'static str {
        match self {
            AlgorithmTag::BenqoNgd | AlgorithmTag::QaoaNgd | AlgorithmTag::VqeNgd => "ngd",
            AlgorithmTag::QaoaGradFree => "nelder-mead",
            AlgorithmTag::VqePowell => "powell",
            AlgorithmTag::UniformBaseline => "none",
        }
    }

    /// Stable identifier folded into the per-algorithm seed.
    fn id(self) -> u64 {
        match self {
            AlgorithmTag::BenqoNgd => 1,
            AlgorithmTag::QaoaNgd => 2,
            AlgorithmTag::QaoaGradFree => 3,
            AlgorithmTag::VqeNgd => 4,
            AlgorithmTag::VqePowell => 5,
            AlgorithmTag::UniformBaseline => 6,
        }
    }
}

fn default_runs() -> usize {
    100
}

fn default_k_max() -> usize {
    20
}

fn default_budget() -> usize {
    1000
}

/// Full specification of a benchmark campaign. The JSON config file read
/// by the CLI mirrors these field names exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub problem: Problem,
    pub sizes: Vec<usize>,
    #[serde(default = "default_runs")]
    pub runs: usize,
    pub algorithms: Vec<AlgorithmTag>,
    /// NGD step count per run.
    #[serde(default = "default_k_max")]
    pub k_max: usize,
    /// Loss-evaluation budget for the gradient-free optimizers.
    #[serde(default = "default_budget")]
    pub budget: usize,
    pub base_seed: u64,
    /// Edge-weight range override; each problem has its own default.
    #[serde(default)]
    pub weight_min: Option<f64>,
    #[serde(default)]
    pub weight_max: Option<f64>,
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::InvalidInput("campaign needs runs >= 1".into()));
        }
        if self.sizes.is_empty() {
            return Err(Error::InvalidInput("campaign needs at least one size".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::InvalidInput(
                "campaign needs at least one algorithm".into(),
            ));
        }
        if self.k_max == 0 {
            return Err(Error::InvalidInput("campaign needs k_max >= 1".into()));
        }
        if self.budget == 0 {
            return Err(Error::InvalidInput("campaign needs budget >= 1".into()));
        }
        let (wmin, wmax) = self.weight_range();
        if !wmin.is_finite() || !wmax.is_finite() || wmin > wmax {
            return Err(Error::InvalidInput(format!(
                "weight range [{wmin}, {wmax}] is not a valid interval"
            )));
        }
        Ok(())
    }

    /// Effective weight range after applying per-problem defaults.
    pub fn weight_range(&self) -> (f64, f64) {
        let (dmin, dmax) = self.problem.default_weight_range();
        (
            self.weight_min.unwrap_or(dmin),
            self.weight_max.unwrap_or(dmax),
        )
    }
}

/// One (instance, algorithm) benchmark outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub instance_id: String,
    pub size: usize,
    pub run: usize,
    pub algorithm: AlgorithmTag,
    pub optimizer: String,
    /// Seed that produced this record's initial parameters.
    pub seed: u64,
    pub trace: OptimizationTrace,
    /// Metrics of the candidate state after each trace iteration; same
    /// length as `trace.iterations`.
    pub per_iteration: Vec<MetricBundle>,
    #[serde(rename = "final")]
    pub final_metrics: MetricBundle,
    /// Process CPU seconds spent inside the optimize loop. Measurement
    /// data: excluded from serialization so records stay reproducible.
    #[serde(skip)]
    pub cpu_time: f64,
}

/// A task the campaign had to skip, with enough context to report it.
#[derive(Debug, Clone, Serialize)]
pub struct TaskError {
    pub instance_id: String,
    pub algorithm: Option<String>,
    pub message: String,
}

/// Everything a campaign produced: completed records plus skipped tasks.
#[derive(Debug, Clone)]
pub struct CampaignResult {
    pub records: Vec<ExperimentRecord>,
    pub errors: Vec<TaskError>,
}

/// Process CPU clock in seconds.
fn process_cpu_seconds() -> f64 {
    let mut ts = libc::timespec { tv_sec: 0, tv_nsec: 0 };
    let rc = unsafe { libc::clock_gettime(libc::CLOCK_PROCESS_CPUTIME_ID, &mut ts) };
    if rc != 0 {
        return 0.0;
    }
    ts.tv_sec as f64 + ts.tv_nsec as f64 * 1e-9
}

/// Ground truth for one instance, computed once and shared by every
/// algorithm run on it.
struct ProblemSetting {
    model: IsingModel,
    extrema: Extrema,
    tsp: Option<TspSetting>,
}

struct TspSetting {
    enc: TspEncoding,
    feasible: Vec<BitString>,
    tours: TourExtremes,
}

fn maxcut_setting(graph: &WeightedGraph) -> Result<ProblemSetting> {
    let model = maxcut_ising(graph);
    let extrema = brute_force_extrema(&model)?;
    Ok(ProblemSetting { model, extrema, tsp: None })
}

fn tsp_setting(graph: &WeightedGraph) -> Result<ProblemSetting> {
    let enc = tsp_encode(graph)?;
    let model = qubo_to_ising(enc.qubo());
    let extrema = brute_force_extrema(&model)?;
    let feasible = tsp_feasible_states(&enc);
    let tours = TourExtremes::from_encoding(&enc)?;
    Ok(ProblemSetting {
        model,
        extrema,
        tsp: Some(TspSetting { enc, feasible, tours }),
    })
}

fn uniform_state(n: usize) -> Result<StateVector> {
    let mut s = StateVector::init_zero(n)?;
    for q in 0..n {
        s.apply(&Gate::H { target: q })?;
    }
    Ok(s)
}

/// Approximation index that degrades to missing instead of failing when
/// the relative test is undefined.
fn optional_index(
    state: &StateVector,
    model: &IsingModel,
    t: f64,
    ext: &Extrema,
) -> Result<Option<bool>> {
    match approximation_index(state, model, t, ext) {
        Ok(b) => Ok(Some(b)),
        Err(Error::UndefinedMetric(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn bundle_for(state: &StateVector, s: &ProblemSetting) -> Result<MetricBundle> {
    let ar = approximation_ratio(state, &s.model, &s.extrema)?;
    let ai0 = optional_index(state, &s.model, 0.0, &s.extrema)?;
    let ai1 = optional_index(state, &s.model, 0.01, &s.extrema)?;
    let ai5 = optional_index(state, &s.model, 0.05, &s.extrema)?;
    let (fr, lr) = match &s.tsp {
        Some(t) => (
            Some(feasibility_ratio(state, &t.feasible)?),
            length_ratio(state, &t.enc, &t.tours),
        ),
        None => (None, None),
    };
    Ok(MetricBundle { ar, ai0, ai1, ai5, fr, lr })
}

/// Rebuilds the candidate state an algorithm's parameters describe. For
/// the block-encoding algorithm that is the bare ansatz register; the
/// cost and ancilla qubits are test machinery, not solution space.
enum Preparer {
    Benqo,
    Qaoa(QaoaConfig),
    Vqe(VqeConfig),
    Uniform(usize),
}

impl Preparer {
    fn state(&self, theta: &[f64]) -> Result<StateVector> {
        match self {
            Preparer::Benqo => ansatz_state(&BenqoAnsatz::new(theta.to_vec())?),
            Preparer::Qaoa(cfg) => {
                let p = cfg.p();
                qaoa_state(cfg, &theta[..p], &theta[p..])
            }
            Preparer::Vqe(cfg) => vqe_state(cfg, theta),
            Preparer::Uniform(n) => uniform_state(*n),
        }
    }
}

/// Runs one algorithm on one prepared instance and returns the trace, the
/// candidate-state builder, and CPU seconds spent optimizing.
fn solve(
    setting: &ProblemSetting,
    tag: AlgorithmTag,
    init_seed: u64,
    cfg: &CampaignConfig,
) -> Result<(OptimizationTrace, Preparer, f64)> {
    let n = setting.model.n();
    match tag {
        AlgorithmTag::UniformBaseline => {
            let t0 = process_cpu_seconds();
            let state = uniform_state(n)?;
            let loss = energy(&state, &setting.model)?;
            let cpu = process_cpu_seconds() - t0;
            let trace = OptimizationTrace {
                iterations: vec![],
                final_theta: vec![],
                final_loss: loss,
                wall_time: 0.0,
                termination: Termination::Completed,
            };
            Ok((trace, Preparer::Uniform(n), cpu))
        }
        AlgorithmTag::BenqoNgd => {
            let enc = BlockEncoding::new(setting.model.clone());
            let theta0 = initial_parameters(InitStrategy::BenqoNormal, n, init_seed)?;
            let f = LossFunction::new(n, |t: &[f64]| {
                let params = BenqoAnsatz::new(t.to_vec()).expect("finite iterate");
                hadamard_test_loss(&enc, &params)
                    .expect("loss defined within simulator limits")
                    .loss
            });
            let grad = |t: &[f64]| benqo_gradient(&enc, t, GradientMode::PaperLiteral);
            let t0 = process_cpu_seconds();
            let trace = ngd_minimize_with_gradient(&f, &grad, 2 * n, &theta0, cfg.k_max)?;
            let cpu = process_cpu_seconds() - t0;
            Ok((trace, Preparer::Benqo, cpu))
        }
        AlgorithmTag::QaoaNgd | AlgorithmTag::QaoaGradFree => {
            let p = default_layers(n);
            let qcfg = QaoaConfig::new(setting.model.clone(), p)?;
            let theta0 = initial_parameters(InitStrategy::Uniform, 2 * p, init_seed)?;
            let f = LossFunction::new(2 * p, |t: &[f64]| {
                let state =
                    qaoa_state(&qcfg, &t[..p], &t[p..]).expect("iterate has 2p entries");
                energy(&state, &setting.model).expect("state and model share one register")
            });
            let t0 = process_cpu_seconds();
            let trace = match tag {
                AlgorithmTag::QaoaNgd => ngd_minimize(&f, &theta0, cfg.k_max)?,
                _ => nelder_mead_minimize(&f, &theta0, cfg.budget)?,
            };
            let cpu = process_cpu_seconds() - t0;
            drop(f);
            Ok((trace, Preparer::Qaoa(qcfg), cpu))
        }
        AlgorithmTag::VqeNgd | AlgorithmTag::VqePowell => {
            let vcfg = VqeConfig { n };
            let theta0 = initial_parameters(InitStrategy::Uniform, n, init_seed)?;
            let f = LossFunction::new(n, |t: &[f64]| {
                let state = vqe_state(&vcfg, t).expect("iterate has n entries");
                energy(&state, &setting.model).expect("state and model share one register")
            });
            let t0 = process_cpu_seconds();
            let trace = match tag {
                AlgorithmTag::VqeNgd => ngd_minimize(&f, &theta0, cfg.k_max)?,
                _ => powell_minimize(&f, &theta0, cfg.budget)?,
            };
            let cpu = process_cpu_seconds() - t0;
            Ok((trace, Preparer::Vqe(vcfg), cpu))
        }
    }
}

fn run_single(
    setting: &ProblemSetting,
    tag: AlgorithmTag,
    instance_id: &str,
    size: usize,
    run: usize,
    init_seed: u64,
    cfg: &CampaignConfig,
) -> Result<ExperimentRecord> {
    let (trace, prep, cpu_time) = solve(setting, tag, init_seed, cfg)?;
    let mut per_iteration = Vec::with_capacity(trace.iterations.len());
    for rec in &trace.iterations {
        let state = prep.state(&rec.theta)?;
        per_iteration.push(bundle_for(&state, setting)?);
    }
    let final_state = prep.state(&trace.final_theta)?;
    let final_metrics = bundle_for(&final_state, setting)?;
    Ok(ExperimentRecord {
        instance_id: instance_id.to_string(),
        size,
        run,
        algorithm: tag,
        optimizer: tag.optimizer_name().to_string(),
        seed: init_seed,
        trace,
        per_iteration,
        final_metrics,
        cpu_time,
    })
}

/// Executes the full (size, run, algorithm) grid. Ground truth per
/// instance is brute-forced once; a task that fails (for example a size
/// beyond the simulator guard) is recorded as an error and the campaign
/// continues. Records come back sorted by (size, run, algorithm).
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignResult> {
    cfg.validate()?;
    let (wmin, wmax) = cfg.weight_range();
    let mut records = Vec::new();
    let mut errors = Vec::new();

    for &size in &cfg.sizes {
        if size < 2 || size > cfg.problem.size_limit() {
            errors.push(TaskError {
                instance_id: format!("{}-n{}", cfg.problem.name(), size),
                algorithm: None,
                message: format!(
                    "size {} outside supported range 2..={} for {}",
                    size,
                    cfg.problem.size_limit(),
                    cfg.problem.name()
                ),
            });
            continue;
        }
        for run in 0..cfg.runs {
            let instance_seed = mix_seed(&[cfg.base_seed, size as u64, run as u64]);
            let instance_id = format!("{}-n{}-r{}", cfg.problem.name(), size, run);
            let setting = match cfg.problem {
                Problem::MaxCut => {
                    random_complete_graph(size, wmin, wmax, instance_seed)
                        .and_then(|g| maxcut_setting(&g))
                }
                Problem::Tsp => {
                    random_complete_graph(size, wmin, wmax, instance_seed)
                        .and_then(|g| tsp_setting(&g))
                }
            };
            let setting = match setting {
                Ok(s) => s,
                Err(e) => {
                    errors.push(TaskError {
                        instance_id,
                        algorithm: None,
                        message: e.to_string(),
                    });
                    continue;
                }
            };
            for &tag in &cfg.algorithms {
                let init_seed = mix_seed(&[instance_seed, tag.id()]);
                match run_single(&setting, tag, &instance_id, size, run, init_seed, cfg) {
                    Ok(rec) => records.push(rec),
                    Err(e) => errors.push(TaskError {
                        instance_id: instance_id.clone(),
                        algorithm: Some(tag.name().to_string()),
                        message: e.to_string(),
                    }),
                }
            }
        }
    }

    records.sort_by_key(|r| (r.size, r.run, r.algorithm.id()));
    Ok(CampaignResult { records, errors })
}

/// Half-width of the landscape plane in both directions.
pub const LANDSCAPE_BOUND: f64 = 2.0 * PI;

/// Ansatz family a landscape is sampled for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LandscapeAlg {
    Benqo,
    Qaoa,
    Vqe,
}

impl LandscapeAlg {
    pub fn name(self) -> &'static str {
        match self {
            LandscapeAlg::Benqo => "benqo",
            LandscapeAlg::Qaoa => "qaoa",
            LandscapeAlg::Vqe => "vqe",
        }
    }

    /// Dimension of the parameter space the plane lives in.
    pub fn parameter_count(self, n: usize) -> usize {
        match self {
            LandscapeAlg::Benqo | LandscapeAlg::Vqe => n,
            LandscapeAlg::Qaoa => 2 * default_layers(n),
        }
    }
}

/// Loss values over a random plane through the origin of parameter
/// space, sampled on a uniform grid over `[-2pi, 2pi]^2`.
#[derive(Debug, Clone)]
pub struct LandscapeGrid {
    pub algorithm: LandscapeAlg,
    pub instance_id: String,
    pub axis1: Vec<f64>,
    pub axis2: Vec<f64>,
    pub resolution: usize,
    /// `values[i][j]` is the loss at plane coordinates
    /// `(coordinate(i), coordinate(j))`.
    pub values: Vec<Vec<f64>>,
}

impl LandscapeGrid {
    /// Plane coordinate of grid index `i`.
    pub fn coordinate(&self, i: usize) -> f64 {
        -LANDSCAPE_BOUND + 2.0 * LANDSCAPE_BOUND * i as f64 / (self.resolution - 1) as f64
    }

    /// Smallest and largest sampled loss.
    pub fn value_range(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for row in &self.values {
            for &v in row {
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        (lo, hi)
    }

    /// Writes `i,j,theta1,theta2,loss` rows, row-major.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "i,j,theta1,theta2,loss")?;
        for i in 0..self.resolution {
            for j in 0..self.resolution {
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    i,
                    j,
                    self.coordinate(i),
                    self.coordinate(j),
                    self.values[i][j]
                )?;
            }
        }
        Ok(())
    }
}

/// Draws a unit vector with a Gaussian direction, rejecting components
/// that collapse under orthogonalization.
fn gaussian_direction(rng: &mut ChaCha8Rng, d: usize, against: Option<&[f64]>) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(rng)).collect();
        if let Some(a) = against {
            let dot: f64 = v.iter().zip(a).map(|(x, y)| x * y).sum();
            for (x, y) in v.iter_mut().zip(a) {
                *x -= dot * y;
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-9 {
            for x in &mut v {
                *x /= norm;
            }
            return v;
        }
    }
}

/// Samples an algorithm's loss on a randomly oriented plane through the
/// origin of its parameter space. The two plane axes are orthonormalized
/// Gaussian draws seeded by `seed`; the grid is `resolution` points per
/// side over `[-2pi, 2pi]^2`.
pub fn sample_landscape(
    algorithm: LandscapeAlg,
    model: &IsingModel,
    instance_id: &str,
    seed: u64,
    resolution: usize,
) -> Result<LandscapeGrid> {
    if resolution < 2 {
        return Err(Error::InvalidInput("landscape needs resolution >= 2".into()));
    }
    let d = algorithm.parameter_count(model.n());
    if d < 2 {
        return Err(Error::InvalidInput(format!(
            "landscape plane needs at least 2 parameters, ansatz has {d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let axis1 = gaussian_direction(&mut rng, d, None);
    let axis2 = gaussian_direction(&mut rng, d, Some(&axis1));

    let loss: Box<dyn Fn(&[f64]) -> f64> = match algorithm {
        LandscapeAlg::Benqo => {
            let enc = BlockEncoding::new(model.clone());
            Box::new(move |t: &[f64]| {
                let params = BenqoAnsatz::new(t.to_vec()).expect("finite grid point");
                analytic_loss(&enc, &params).expect("loss defined on the whole plane").loss
            })
        }
        LandscapeAlg::Qaoa => {
            let p = default_layers(model.n());
            let qcfg = QaoaConfig::new(model.clone(), p)?;
            let model = model.clone();
            Box::new(move |t: &[f64]| {
                let state =
                    qaoa_state(&qcfg, &t[..p], &t[p..]).expect("grid point has 2p entries");
                energy(&state, &model).expect("state and model share one register")
            })
        }
        LandscapeAlg::Vqe => {
            let vcfg = VqeConfig { n: model.n() };
            let model = model.clone();
            Box::new(move |t: &[f64]| {
                let state = vqe_state(&vcfg, t).expect("grid point has n entries");
                energy(&state, &model).expect("state and model share one register")
            })
        }
    };

    let mut grid = LandscapeGrid {
        algorithm,
        instance_id: instance_id.to_string(),
        axis1,
        axis2,
        resolution,
        values: vec![vec![0.0; resolution]; resolution],
    };
    let mut theta = vec![0.0; d];
    for i in 0..resolution {
        let t1 = grid.coordinate(i);
        for j in 0..resolution {
            let t2 = grid.coordinate(j);
            for (k, x) in theta.iter_mut().enumerate() {
                *x = t1 * grid.axis1[k] + t2 * grid.axis2[k];
            }
            grid.values[i][j] = loss(&theta);
        }
    }
    Ok(grid)
}

/// One CPU-time measurement, kept apart from the deterministic records.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TimingRow {
    pub size: usize,
    pub run: usize,
    pub algorithm: String,
    pub cpu_seconds: f64,
}

/// Extracts the timing table from in-memory records.
pub fn timing_rows(records: &[ExperimentRecord]) -> Vec<TimingRow> {
    records
        .iter()
        .map(|r| TimingRow {
            size: r.size,
            run: r.run,
            algorithm: r.algorithm.name().to_string(),
            cpu_seconds: r.cpu_time,
        })
        .collect()
}

/// Writes one JSON record per line.
pub fn write_records_jsonl(records: &[ExperimentRecord], path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for rec in records {
        serde_json::to_writer(&mut w, rec)?;
        writeln!(w)?;
    }
    Ok(())
}

/// Reads a records file written by [`write_records_jsonl`]. CPU times are
/// not serialized and come back as zero.
pub fn read_records_jsonl(path: &Path) -> Result<Vec<ExperimentRecord>> {
    let reader = BufReader::new(File::open(path)?);
    let mut records = Vec::new();
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        records.push(serde_json::from_str(&line)?);
    }
    Ok(records)
}

pub fn write_timings_csv(timings: &[TimingRow], path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "size,run,algorithm,cpu_seconds")?;
    for t in timings {
        writeln!(w, "{},{},{},{}", t.size, t.run, t.algorithm, t.cpu_seconds)?;
    }
    Ok(())
}

pub fn read_timings_csv(path: &Path) -> Result<Vec<TimingRow>> {
    let reader = BufReader::new(File::open(path)?);
    let mut rows = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if idx == 0 || line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::InvalidInput(format!(
                "timing row {} has {} fields, expected 4",
                idx + 1,
                fields.len()
            )));
        }
        let parse_err = |what: &str| {
            Error::InvalidInput(format!("timing row {}: bad {what}", idx + 1))
        };
        rows.push(TimingRow {
            size: fields[0].parse().map_err(|_| parse_err("size"))?,
            run: fields[1].parse().map_err(|_| parse_err("run"))?,
            algorithm: fields[2].to_string(),
            cpu_seconds: fields[3].parse().map_err(|_| parse_err("cpu_seconds"))?,
        });
    }
    Ok(rows)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Groups records by (size, algorithm), ordered by size then algorithm id.
fn grouped(
    records: &[ExperimentRecord],
) -> BTreeMap<(usize, u64), (AlgorithmTag, Vec<&ExperimentRecord>)> {
    let mut map: BTreeMap<(usize, u64), (AlgorithmTag, Vec<&ExperimentRecord>)> = BTreeMap::new();
    for rec in records {
        map.entry((rec.size, rec.algorithm.id()))
            .or_insert_with(|| (rec.algorithm, Vec::new()))
            .1
            .push(rec);
    }
    map
}

/// Emits every report file into `out_dir` and returns the file names
/// written: per-group iteration curves, the final-metric summary, the
/// length-ratio table, the outlier-filtered runtime table, and a manifest
/// documenting all columns.
pub fn write_report(
    records: &[ExperimentRecord],
    timings: &[TimingRow],
    out_dir: &Path,
) -> Result<Vec<String>> {
    if records.is_empty() {
        return Err(Error::InvalidInput("report needs at least one record".into()));
    }
    std::fs::create_dir_all(out_dir)?;
    let groups = grouped(records);
    let mut written = Vec::new();

    for ((size, _), (tag, recs)) in &groups {
        let name = format!("curves_{}_{}.csv", size, tag.name());
        let mut w = BufWriter::new(File::create(out_dir.join(&name))?);
        writeln!(w, "iteration,mean_ar,mean_fr")?;
        let longest = recs.iter().map(|r| r.per_iteration.len()).max().unwrap_or(0);
        for t in 0..longest {
            let at_t: Vec<&MetricBundle> =
                recs.iter().filter_map(|r| r.per_iteration.get(t)).collect();
            let mean_ar = at_t.iter().map(|b| b.ar).sum::<f64>() / at_t.len() as f64;
            let frs: Vec<f64> = at_t.iter().filter_map(|b| b.fr).collect();
            let mean_fr = if frs.is_empty() {
                String::new()
            } else {
                (frs.iter().sum::<f64>() / frs.len() as f64).to_string()
            };
            writeln!(w, "{t},{mean_ar},{mean_fr}")?;
        }
        written.push(name);
    }

    let summary_name = "summary.csv".to_string();
    {
        let mut w = BufWriter::new(File::create(out_dir.join(&summary_name))?);
        writeln!(
            w,
            "size,algorithm,count,ar_mean,ar_std,optimality_pct,success_pct_1,\
             success_pct_5,fr_mean,fr_std,lr_mean,lr_std,lr_excluded"
        )?;
        for ((size, _), (tag, recs)) in &groups {
            let finals: Vec<MetricBundle> =
                recs.iter().map(|r| r.final_metrics.clone()).collect();
            let agg = aggregate(&finals)?;
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                size,
                tag.name(),
                agg.count,
                agg.ar_mean,
                agg.ar_std,
                fmt_opt(agg.optimality_pct),
                fmt_opt(agg.success_pct_1),
                fmt_opt(agg.success_pct_5),
                fmt_opt(agg.fr_mean),
                fmt_opt(agg.fr_std),
                fmt_opt(agg.lr_mean),
                fmt_opt(agg.lr_std),
                agg.lr_excluded,
            )?;
        }
    }
    written.push(summary_name);

    let lr_name = "lr_table.csv".to_string();
    {
        let sizes: BTreeSet<usize> = groups.keys().map(|(s, _)| *s).collect();
        let mut algs: Vec<AlgorithmTag> = Vec::new();
        for (_, (tag, _)) in &groups {
            if !algs.contains(tag) {
                algs.push(*tag);
            }
        }
        algs.sort_by_key(|t| t.id());
        let mut w = BufWriter::new(File::create(out_dir.join(&lr_name))?);
        let header: Vec<String> = std::iter::once("algorithm".to_string())
            .chain(sizes.iter().map(|s| format!("n={s}")))
            .collect();
        writeln!(w, "{}", header.join(","))?;
        for tag in &algs {
            let mut row = vec![tag.name().to_string()];
            for size in &sizes {
                let cell = match groups.get(&(*size, tag.id())) {
                    Some((_, recs)) => {
                        let finals: Vec<MetricBundle> =
                            recs.iter().map(|r| r.final_metrics.clone()).collect();
                        let agg = aggregate(&finals)?;
                        match (agg.lr_mean, agg.lr_std) {
                            (Some(m), Some(s)) => format!("{m:.4}±{s:.4}"),
                            _ => String::new(),
                        }
                    }
                    None => String::new(),
                };
                row.push(cell);
            }
            writeln!(w, "{}", row.join(","))?;
        }
    }
    written.push(lr_name);

    let runtime_name = "runtime.csv".to_string();
    {
        let mut by_group: BTreeMap<(usize, String), Vec<f64>> = BTreeMap::new();
        for t in timings {
            by_group
                .entry((t.size, t.algorithm.clone()))
                .or_default()
                .push(t.cpu_seconds);
        }
        let mut w = BufWriter::new(File::create(out_dir.join(&runtime_name))?);
        writeln!(w, "size,algorithm,mean_cpu_seconds,kept,total")?;
        for ((size, alg), cpus) in &by_group {
            let kept = filter_outliers(cpus);
            let mean = kept.iter().sum::<f64>() / kept.len() as f64;
            writeln!(w, "{},{},{},{},{}", size, alg, mean, kept.len(), cpus.len())?;
        }
    }
    written.push(runtime_name);

    let manifest_name = "manifest.txt".to_string();
    {
        let mut w = BufWriter::new(File::create(out_dir.join(&manifest_name))?);
        writeln!(w, "report files")?;
        writeln!(w, "============")?;
        writeln!(w, "records.jsonl: one experiment record per line with fields")?;
        writeln!(
            w,
            "  instance_id, size, run, algorithm, optimizer, seed, trace"
        )?;
        writeln!(
            w,
            "  (iterations k/theta/loss/evals, final_theta, final_loss, termination),"
        )?;
        writeln!(
            w,
            "  per_iteration (metric bundle per trace iteration), final (metric bundle)."
        )?;
        writeln!(
            w,
            "curves_<size>_<algorithm>.csv: iteration (0-based position in the trace),"
        )?;
        writeln!(
            w,
            "  mean_ar, mean_fr; means run over the records still active at that"
        )?;
        writeln!(
            w,
            "  iteration; mean_fr is empty for problems without a feasibility notion."
        )?;
        writeln!(
            w,
            "summary.csv: per (size, algorithm) aggregates of the final metric bundle:"
        )?;
        writeln!(
            w,
            "  count, ar mean/std, optimality_pct (most probable state exactly optimal),"
        )?;
        writeln!(
            w,
            "  success_pct_1 and success_pct_5 (within 1% / 5% of optimal), fr and lr"
        )?;
        writeln!(
            w,
            "  mean/std, lr_excluded (records whose lr was undefined). Stds are"
        )?;
        writeln!(w, "  population standard deviations.")?;
        writeln!(
            w,
            "lr_table.csv: length-ratio mean±std per algorithm (rows) and size (columns)."
        )?;
        writeln!(
            w,
            "runtime.csv: mean process-CPU seconds per (size, algorithm) after removing"
        )?;
        writeln!(
            w,
            "  samples with one-sided z-score > 1.5; kept/total sample counts included."
        )?;
        writeln!(
            w,
            "timings.csv: raw per-record CPU seconds (size, run, algorithm, cpu_seconds)."
        )?;
        writeln!(w)?;
        writeln!(
            w,
            "determinism: records.jsonl, curves_*.csv, summary.csv and lr_table.csv are"
        )?;
        writeln!(
            w,
            "byte-identical across reruns with the same config and seed. timings.csv and"
        )?;
        writeln!(
            w,
            "runtime.csv contain wall-clock measurements and vary between runs."
        )?;
    }
    written.push(manifest_name);

    Ok(written)
}

/// Writes the campaign's primary outputs (`records.jsonl`, `timings.csv`)
/// plus the full report into `out_dir`, returning all file names written.
pub fn write_campaign_outputs(result: &CampaignResult, out_dir: &Path) -> Result<Vec<String>> {
    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    write_records_jsonl(&result.records, &out_dir.join("records.jsonl"))?;
    written.push("records.jsonl".to_string());
    let timings = timing_rows(&result.records);
    write_timings_csv(&timings, &out_dir.join("timings.csv"))?;
    written.push("timings.csv".to_string());
    written.extend(write_report(&result.records, &timings, out_dir)?);
    Ok(written)
}

/// Standard landscape file name for an algorithm and seed.
pub fn landscape_file_name(algorithm: LandscapeAlg, seed: u64) -> PathBuf {
    PathBuf::from(format!("landscape_{}_{}.csv", algorithm.name(), seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config(problem: Problem, sizes: Vec<usize>, algorithms: Vec<AlgorithmTag>) -> CampaignConfig {
        CampaignConfig {
            problem,
            sizes,
            runs: 2,
            algorithms,
            k_max: 20,
            budget: 80,
            base_seed: 99,
            weight_min: None,
            weight_max: None,
        }
    }

    #[test]
    fn seed_mixing_is_order_sensitive_and_stable() {
        let a = mix_seed(&[1, 2, 3]);
        assert_eq!(a, mix_seed(&[1, 2, 3]));
        assert_ne!(a, mix_seed(&[3, 2, 1]));
        assert_ne!(mix_seed(&[7, 0]), mix_seed(&[0, 7]));
        assert_ne!(mix_seed(&[5]), mix_seed(&[5, 0]));
    }

    #[test]
    fn maxcut_campaign_produces_full_traces() {
        let cfg = small_config(Problem::MaxCut, vec![3], vec![AlgorithmTag::BenqoNgd]);
        let result = run_campaign(&cfg).unwrap();
        assert!(result.errors.is_empty());
        assert_eq!(result.records.len(), 2);
        for rec in &result.records {
            assert_eq!(rec.trace.iterations.len(), 20);
            assert_eq!(rec.per_iteration.len(), 20);
            assert_eq!(rec.optimizer, "ngd");
            assert!(rec.per_iteration.iter().all(|b| (0.0..=1.0).contains(&b.ar)));
            assert!(rec.final_metrics.fr.is_none());
        }
        assert_eq!(result.records[0].instance_id, "maxcut-n3-r0");
        assert_eq!(result.records[1].instance_id, "maxcut-n3-r1");
        assert_ne!(result.records[0].seed, result.records[1].seed);
    }

    #[test]
    fn uniform_baseline_skips_optimization() {
        let mut cfg = small_config(
            Problem::MaxCut,
            vec![3],
            vec![AlgorithmTag::UniformBaseline],
        );
        cfg.runs = 1;
        let result = run_campaign(&cfg).unwrap();
        let rec = &result.records[0];
        assert!(rec.trace.iterations.is_empty());
        assert!(rec.per_iteration.is_empty());
        assert_eq!(rec.optimizer, "none");
        assert!((0.0..=1.0).contains(&rec.final_metrics.ar));
    }

    #[test]
    fn oversized_tasks_are_recorded_not_fatal() {
        let cfg = small_config(
            Problem::Tsp,
            vec![3, 9],
            vec![AlgorithmTag::UniformBaseline],
        );
        let result = run_campaign(&cfg).unwrap();
        assert_eq!(result.records.len(), 2);
        assert_eq!(result.errors.len(), 1);
        assert_eq!(result.errors[0].instance_id, "tsp-n9");
        assert!(result.errors[0].message.contains("outside supported range"));
    }

    #[test]
    fn tsp_records_carry_feasibility_and_length_ratio() {
        let mut cfg = small_config(
            Problem::Tsp,
            vec![3],
            vec![AlgorithmTag::BenqoNgd, AlgorithmTag::UniformBaseline],
        );
        cfg.runs = 1;
        let result = run_campaign(&cfg).unwrap();
        assert!(result.errors.is_empty());
        assert_eq!(result.records.len(), 2);
        for rec in &result.records {
            let fr = rec.final_metrics.fr.expect("TSP records carry fr");
            assert!((0.0..=1.0 + 1e-12).contains(&fr));
            if fr > 1e-12 {
                // Three cities: both tours have the same length.
                assert_eq!(rec.final_metrics.lr, Some(1.0));
            }
        }
        let uniform = result
            .records
            .iter()
            .find(|r| r.algorithm == AlgorithmTag::UniformBaseline)
            .unwrap();
        assert!((uniform.final_metrics.fr.unwrap() - 0.125).abs() < 1e-12);
    }

    #[test]
    fn final_metrics_match_recomputation_from_final_theta() {
        let mut cfg = small_config(Problem::MaxCut, vec![4], vec![AlgorithmTag::BenqoNgd]);
        cfg.runs = 1;
        let result = run_campaign(&cfg).unwrap();
        let rec = &result.records[0];
        let instance_seed = mix_seed(&[cfg.base_seed, 4, 0]);
        let graph = random_complete_graph(4, 0.0, 10.0, instance_seed).unwrap();
        let setting = maxcut_setting(&graph).unwrap();
        let state = ansatz_state(&BenqoAnsatz::new(rec.trace.final_theta.clone()).unwrap())
            .unwrap();
        let bundle = bundle_for(&state, &setting).unwrap();
        assert_eq!(bundle.ar, rec.final_metrics.ar);
        assert_eq!(bundle.ai0, rec.final_metrics.ai0);
    }

    #[test]
    fn every_algorithm_tag_runs_on_a_small_instance() {
        let mut cfg = small_config(Problem::MaxCut, vec![3], AlgorithmTag::ALL.to_vec());
        cfg.runs = 1;
        cfg.k_max = 5;
        cfg.budget = 40;
        let result = run_campaign(&cfg).unwrap();
        assert!(result.errors.is_empty(), "errors: {:?}", result.errors);
        assert_eq!(result.records.len(), AlgorithmTag::ALL.len());
        for rec in &result.records {
            assert_eq!(rec.per_iteration.len(), rec.trace.iterations.len());
        }
    }

    #[test]
    fn campaigns_are_deterministic_in_memory() {
        let cfg = small_config(
            Problem::MaxCut,
            vec![3],
            vec![AlgorithmTag::BenqoNgd, AlgorithmTag::QaoaNgd],
        );
        let a = run_campaign(&cfg).unwrap();
        let b = run_campaign(&cfg).unwrap();
        let ja = serde_json::to_string(&a.records).unwrap();
        let jb = serde_json::to_string(&b.records).unwrap();
        assert_eq!(ja, jb);
    }

    #[test]
    fn config_validation_rejects_bad_shapes() {
        let mut cfg = small_config(Problem::MaxCut, vec![3], vec![AlgorithmTag::BenqoNgd]);
        cfg.runs = 0;
        assert!(run_campaign(&cfg).is_err());
        let mut cfg = small_config(Problem::MaxCut, vec![], vec![AlgorithmTag::BenqoNgd]);
        cfg.runs = 1;
        assert!(run_campaign(&cfg).is_err());
        let mut cfg = small_config(Problem::MaxCut, vec![3], vec![]);
        cfg.runs = 1;
        assert!(run_campaign(&cfg).is_err());
        let mut cfg = small_config(Problem::MaxCut, vec![3], vec![AlgorithmTag::BenqoNgd]);
        cfg.weight_min = Some(5.0);
        cfg.weight_max = Some(1.0);
        assert!(run_campaign(&cfg).is_err());
    }

    #[test]
    fn landscape_axes_are_orthonormal() {
        let graph = random_complete_graph(5, 0.0, 10.0, 17).unwrap();
        let model = maxcut_ising(&graph);
        for alg in [LandscapeAlg::Benqo, LandscapeAlg::Qaoa, LandscapeAlg::Vqe] {
            let grid = sample_landscape(alg, &model, "maxcut-n5", 23, 3).unwrap();
            let dot: f64 = grid.axis1.iter().zip(&grid.axis2).map(|(a, b)| a * b).sum();
            assert!(dot.abs() < 1e-10);
            for axis in [&grid.axis1, &grid.axis2] {
                let norm = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
                assert!((norm - 1.0).abs() < 1e-12);
            }
            assert_eq!(grid.axis1.len(), alg.parameter_count(5));
        }
    }

    #[test]
    fn landscape_grid_shape_and_bounds() {
        let graph = random_complete_graph(3, 1.0, 5.0, 3).unwrap();
        let model = maxcut_ising(&graph);
        let grid = sample_landscape(LandscapeAlg::Vqe, &model, "maxcut-n3", 11, 2).unwrap();
        assert_eq!(grid.values.len(), 2);
        assert_eq!(grid.values[0].len(), 2);
        assert!((grid.coordinate(0) + LANDSCAPE_BOUND).abs() < 1e-12);
        assert!((grid.coordinate(1) - LANDSCAPE_BOUND).abs() < 1e-12);
        assert!(sample_landscape(LandscapeAlg::Vqe, &model, "x", 11, 1).is_err());
    }

    #[test]
    fn benqo_landscape_center_is_the_maximum_for_positive_weights() {
        let graph = random_complete_graph(4, 1.0, 10.0, 41).unwrap();
        let model = maxcut_ising(&graph);
        let grid = sample_landscape(LandscapeAlg::Benqo, &model, "maxcut-n4", 7, 5).unwrap();
        let center = grid.values[2][2];
        let total: f64 = graph.weight_sum();
        assert!((center - total).abs() < 1e-9);
        let (_, hi) = grid.value_range();
        assert!((hi - center).abs() < 1e-9);
    }

    #[test]
    fn landscape_is_seed_deterministic() {
        let graph = random_complete_graph(4, 0.0, 10.0, 51).unwrap();
        let model = maxcut_ising(&graph);
        let a = sample_landscape(LandscapeAlg::Qaoa, &model, "x", 9, 4).unwrap();
        let b = sample_landscape(LandscapeAlg::Qaoa, &model, "x", 9, 4).unwrap();
        assert_eq!(a.values, b.values);
        let c = sample_landscape(LandscapeAlg::Qaoa, &model, "x", 10, 4).unwrap();
        assert_ne!(a.axis1, c.axis1);
    }

    #[test]
    fn report_files_and_determinism_on_disk() {
        let cfg = small_config(
            Problem::Tsp,
            vec![3],
            vec![AlgorithmTag::BenqoNgd, AlgorithmTag::UniformBaseline],
        );
        let result = run_campaign(&cfg).unwrap();
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        let written = write_campaign_outputs(&result, dir_a.path()).unwrap();
        assert!(written.contains(&"records.jsonl".to_string()));
        assert!(written.contains(&"summary.csv".to_string()));
        assert!(written.contains(&"curves_3_benqo+ngd.csv".to_string()));
        assert!(written.contains(&"manifest.txt".to_string()));

        let rerun = run_campaign(&cfg).unwrap();
        write_campaign_outputs(&rerun, dir_b.path()).unwrap();
        for name in ["records.jsonl", "summary.csv", "lr_table.csv", "curves_3_benqo+ngd.csv"] {
            let a = std::fs::read(dir_a.path().join(name)).unwrap();
            let b = std::fs::read(dir_b.path().join(name)).unwrap();
            assert_eq!(a, b, "file {name} differs between identical runs");
        }

        let curves =
            std::fs::read_to_string(dir_a.path().join("curves_3_benqo+ngd.csv")).unwrap();
        let lines: Vec<&str> = curves.lines().collect();
        assert_eq!(lines[0], "iteration,mean_ar,mean_fr");
        assert_eq!(lines.len(), 21);
        assert!(!lines[1].ends_with(','), "TSP curves should carry mean_fr");

        let summary = std::fs::read_to_string(dir_a.path().join("summary.csv")).unwrap();
        assert_eq!(summary.lines().count(), 3);
    }

    #[test]
    fn records_roundtrip_through_jsonl() {
        let mut cfg = small_config(Problem::MaxCut, vec![3], vec![AlgorithmTag::VqeNgd]);
        cfg.runs = 1;
        cfg.k_max = 4;
        let result = run_campaign(&cfg).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("records.jsonl");
        write_records_jsonl(&result.records, &path).unwrap();
        let back = read_records_jsonl(&path).unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!(back[0].instance_id, result.records[0].instance_id);
        assert_eq!(back[0].algorithm, AlgorithmTag::VqeNgd);
        assert_eq!(back[0].trace.iterations.len(), 4);
        assert_eq!(back[0].cpu_time, 0.0);
        assert_eq!(
            back[0].final_metrics.ar.to_bits(),
            result.records[0].final_metrics.ar.to_bits()
        );
    }

    #[test]
    fn timings_roundtrip_through_csv() {
        let rows = vec![
            TimingRow { size: 3, run: 0, algorithm: "benqo+ngd".into(), cpu_seconds: 0.25 },
            TimingRow { size: 3, run: 1, algorithm: "vqe+powell".into(), cpu_seconds: 1.5 },
        ];
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("timings.csv");
        write_timings_csv(&rows, &path).unwrap();
        let back = read_timings_csv(&path).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[1].algorithm, "vqe+powell");
        assert_eq!(back[1].cpu_seconds, 1.5);
    }

    #[test]
    fn algorithm_tags_serialize_to_their_wire_names() {
        for tag in AlgorithmTag::ALL {
            let json = serde_json::to_string(&tag).unwrap();
            assert_eq!(json, format!("\"{}\"", tag.name()));
            let back: AlgorithmTag = serde_json::from_str(&json).unwrap();
            assert_eq!(back, tag);
        }
    }
}
