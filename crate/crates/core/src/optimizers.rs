//! Classical parameter optimization: normalized gradient descent driven by
//! parameter-shift gradients, plus derivative-free Powell and Nelder-Mead,
//! all producing per-iteration traces.

use std::cell::Cell;
use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A deterministic loss over a fixed number of real parameters.
pub struct LossFunction<'a> {
    arity: usize,
    f: Box<dyn Fn(&[f64]) -> f64 + 'a>,
}

impl<'a> LossFunction<'a> {
    pub fn new(arity: usize, f: impl Fn(&[f64]) -> f64 + 'a) -> Self {
        Self { arity, f: Box::new(f) }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn eval(&self, theta: &[f64]) -> f64 {
        assert_eq!(theta.len(), self.arity, "loss arity mismatch");
        (self.f)(theta)
    }
}

/// One optimizer step: the iterate after the update, its loss, and the
/// cumulative evaluation count.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IterationRecord {
    pub k: usize,
    pub theta: Vec<f64>,
    pub loss: f64,
    pub evals: usize,
}

/// Why an optimizer stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    /// Ran its full schedule (NGD always does unless the gradient dies).
    Completed,
    /// Gradient norm fell below the degeneracy threshold.
    DegenerateGradient,
    /// Tolerance-based convergence (relative improvement or simplex size).
    Converged,
    /// Evaluation budget ran out first.
    BudgetExhausted,
}

/// Full optimization history. `wall_time` is measurement metadata and is
/// deliberately not serialized, so serialized traces are reproducible
/// byte for byte across runs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimizationTrace {
    pub iterations: Vec<IterationRecord>,
    pub final_theta: Vec<f64>,
    pub final_loss: f64,
    #[serde(skip, default)]
    pub wall_time: f64,
    pub termination: Termination,
}

impl OptimizationTrace {
    /// Writes one JSON object per iteration: `{k, theta, loss, evals}`.
    pub fn write_jsonl<W: std::io::Write>(&self, w: &mut W) -> Result<()> {
        for rec in &self.iterations {
            serde_json::to_writer(&mut *w, rec)?;
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Gradient norm below which NGD refuses to normalize.
const DEGENERATE_GRADIENT: f64 = 1e-12;

/// Central parameter-shift gradient: component `i` is
/// `(f(theta + pi/2 e_i) - f(theta - pi/2 e_i)) / 2`, applied to the
/// supplied loss exactly as given. Costs `2 * arity` evaluations.
pub fn parameter_shift_gradient(f: &LossFunction, theta: &[f64]) -> Result<Vec<f64>> {
    if theta.len() != f.arity() {
        return Err(Error::InvalidInput(format!(
            "gradient point has {} entries, loss expects {}",
            theta.len(),
            f.arity()
        )));
    }
    let mut grad = Vec::with_capacity(theta.len());
    let mut shifted = theta.to_vec();
    for i in 0..theta.len() {
        shifted[i] = theta[i] + PI / 2.0;
        let plus = f.eval(&shifted);
        shifted[i] = theta[i] - PI / 2.0;
        let minus = f.eval(&shifted);
        shifted[i] = theta[i];
        grad.push((plus - minus) / 2.0);
    }
    Ok(grad)
}

/// The NGD step length at step `k` of `k_max` for an `n`-parameter loss:
/// `sqrt(pi n / 2) * exp(-4 k^2 / k_max^2)`.
pub fn ngd_step_size(n: usize, k: usize, k_max: usize) -> f64 {
    (PI * n as f64 / 2.0).sqrt() * (-4.0 * (k * k) as f64 / (k_max * k_max) as f64).exp()
}

/// Normalized gradient descent with the prescribed decaying step schedule:
/// exactly `k_max` updates `theta -= step_k * g / ||g||`, no early
/// stopping. A vanishing gradient terminates with a flagged trace instead
/// of dividing by zero.
pub fn ngd_minimize(
    f: &LossFunction,
    theta0: &[f64],
    k_max: usize,
) -> Result<OptimizationTrace> {
    let grad = |theta: &[f64]| parameter_shift_gradient(f, theta);
    ngd_minimize_with_gradient(f, &grad, 2 * f.arity(), theta0, k_max)
}

/// NGD with a custom gradient source (e.g. the chain-rule block-encoding
/// gradient); `grad_evals` is the evaluation cost charged per gradient
/// call so traces stay comparable.
pub fn ngd_minimize_with_gradient(
    f: &LossFunction,
    gradient: &dyn Fn(&[f64]) -> Result<Vec<f64>>,
    grad_evals: usize,
    theta0: &[f64],
    k_max: usize,
) -> Result<OptimizationTrace> {
    if k_max == 0 {
        return Err(Error::InvalidInput("NGD needs k_max >= 1".into()));
    }
    if theta0.len() != f.arity() {
        return Err(Error::InvalidInput(format!(
            "start point has {} entries, loss expects {}",
            theta0.len(),
            f.arity()
        )));
    }
    let start = Instant::now();
    let n = f.arity();
    let mut theta = theta0.to_vec();
    let mut iterations = Vec::with_capacity(k_max);
    let mut evals = 0usize;
    let mut termination = Termination::Completed;

    for k in 1..=k_max {
        let g = gradient(&theta)?;
        evals += grad_evals;
        let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < DEGENERATE_GRADIENT {
            evals += 1;
            iterations.push(IterationRecord {
                k,
                theta: theta.clone(),
                loss: f.eval(&theta),
                evals,
            });
            termination = Termination::DegenerateGradient;
            break;
        }
        let step = ngd_step_size(n, k, k_max);
        for (t, gi) in theta.iter_mut().zip(&g) {
            *t -= step * gi / norm;
        }
        evals += 1;
        iterations.push(IterationRecord {
            k,
            theta: theta.clone(),
            loss: f.eval(&theta),
            evals,
        });
    }

    let last = iterations.last().expect("k_max >= 1 guarantees an iterate");
    Ok(OptimizationTrace {
        final_theta: last.theta.clone(),
        final_loss: last.loss,
        wall_time: start.elapsed().as_secs_f64(),
        termination,
        iterations,
    })
}

/// Loss wrapper that counts evaluations against a budget.
struct Counted<'a, 'b> {
    f: &'b LossFunction<'a>,
    evals: Cell<usize>,
    budget: usize,
}

impl Counted<'_, '_> {
    fn eval(&self, x: &[f64]) -> f64 {
        self.evals.set(self.evals.get() + 1);
        self.f.eval(x)
    }

    fn exhausted(&self) -> bool {
        self.evals.get() >= self.budget
    }
}

fn transfer_sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Expands an initial interval downhill until `g` has a bracketed minimum:
/// returns `(ax, bx, cx, fb)` with `bx` between `ax` and `cx` and
/// `g(bx) <= min(g(ax), g(cx))`.
fn bracket_minimum(
    g: &impl Fn(f64) -> f64,
    stop: &impl Fn() -> bool,
    mut ax: f64,
    mut bx: f64,
    mut fa: f64,
    mut fb: f64,
) -> (f64, f64, f64, f64) {
    const GOLD: f64 = 1.618_034;
    const GLIMIT: f64 = 100.0;
    const TINY: f64 = 1e-20;

    if fb > fa {
        std::mem::swap(&mut ax, &mut bx);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut cx = bx + GOLD * (bx - ax);
    let mut fc = g(cx);
    while fb > fc {
        if stop() {
            break;
        }
        // Parabolic extrapolation from (a, b, c).
        let r = (bx - ax) * (fb - fc);
        let q = (bx - cx) * (fb - fa);
        let mut u = bx
            - ((bx - cx) * q - (bx - ax) * r)
                / (2.0 * transfer_sign((q - r).abs().max(TINY), q - r));
        let ulim = bx + GLIMIT * (cx - bx);
        let mut fu;
        if (bx - u) * (u - cx) > 0.0 {
            fu = g(u);
            if fu < fc {
                ax = bx;
                fa = fb;
                bx = u;
                fb = fu;
                continue;
            } else if fu > fb {
                cx = u;
                fc = fu;
                continue;
            }
            u = cx + GOLD * (cx - bx);
            fu = g(u);
        } else if (cx - u) * (u - ulim) > 0.0 {
            fu = g(u);
            if fu < fc {
                bx = cx;
                cx = u;
                u = u + GOLD * (u - bx);
                fb = fc;
                fc = fu;
                fu = g(u);
            }
        } else if (u - ulim) * (ulim - cx) >= 0.0 {
            u = ulim;
            fu = g(u);
        } else {
            u = cx + GOLD * (cx - bx);
            fu = g(u);
        }
        ax = bx;
        bx = cx;
        cx = u;
        fa = fb;
        fb = fc;
        fc = fu;
    }
    let _ = fa;
    (ax, bx, cx, fb)
}

/// Brent's method on a bracketed minimum. Returns the abscissa and value
/// of the best point found.
fn brent_minimum(
    g: &impl Fn(f64) -> f64,
    stop: &impl Fn() -> bool,
    ax: f64,
    bx: f64,
    cx: f64,
    fbx: f64,
    tol: f64,
) -> (f64, f64) {
    const ITMAX: usize = 100;
    const CGOLD: f64 = 0.381_966_0;
    const ZEPS: f64 = 1e-14;

    let (mut a, mut b) = (ax.min(cx), ax.max(cx));
    let (mut x, mut w, mut v) = (bx, bx, bx);
    let (mut fx, mut fw, mut fv) = (fbx, fbx, fbx);
    let mut d = 0.0f64;
    let mut e = 0.0f64;

    for _ in 0..ITMAX {
        let xm = 0.5 * (a + b);
        let tol1 = tol * x.abs() + ZEPS;
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) || stop() {
            break;
        }
        let mut use_golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let etemp = e;
            e = d;
            if p.abs() < (0.5 * q * etemp).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = transfer_sign(tol1, xm - x);
                }
                use_golden = false;
            }
        }
        if use_golden {
            e = if x >= xm { a - x } else { b - x };
            d = CGOLD * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else {
            x + transfer_sign(tol1, d)
        };
        let fu = g(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    (x, fx)
}

/// Line search tolerance (fractional, near sqrt of machine epsilon).
const LINE_TOL: f64 = 1e-8;

/// Minimizes `f` along `p + t * dir`, starting from the known value
/// `fp = f(p)`. Returns the new point and value (never worse than `fp`).
fn line_minimize(
    counted: &Counted<'_, '_>,
    p: &[f64],
    dir: &[f64],
    fp: f64,
) -> (Vec<f64>, f64) {
    let point_at = |t: f64| -> Vec<f64> {
        p.iter().zip(dir).map(|(pi, di)| pi + t * di).collect()
    };
    let g = |t: f64| counted.eval(&point_at(t));
    let stop = || counted.exhausted();

    let f1 = g(1.0);
    let (ax, bx, cx, fb) = bracket_minimum(&g, &stop, 0.0, 1.0, fp, f1);
    let (tmin, fmin) = brent_minimum(&g, &stop, ax, bx, cx, fb, LINE_TOL);
    if fmin <= fp {
        (point_at(tmin), fmin)
    } else {
        (p.to_vec(), fp)
    }
}

/// Relative-improvement convergence threshold for Powell.
const POWELL_REL_TOL: f64 = 1e-6;

/// Powell's conjugate-direction method with a bracketing Brent line
/// search. Each trace iteration is one full cycle over the direction set.
pub fn powell_minimize(
    f: &LossFunction,
    theta0: &[f64],
    budget: usize,
) -> Result<OptimizationTrace> {
    let n = f.arity();
    if theta0.len() != n {
        return Err(Error::InvalidInput(format!(
            "start point has {} entries, loss expects {n}",
            theta0.len()
        )));
    }
    if budget < n {
        return Err(Error::InvalidInput(format!(
            "budget {budget} below parameter count {n}"
        )));
    }
    let start = Instant::now();
    let counted = Counted { f, evals: Cell::new(0), budget };

    let mut dirs: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut p = theta0.to_vec();
    let mut fp = counted.eval(&p);
    let mut iterations = Vec::new();

    let mut k = 0usize;
    let termination = loop {
        k += 1;
        let p0 = p.clone();
        let f0 = fp;
        let mut biggest_drop = 0.0f64;
        let mut ibig = 0usize;
        for i in 0..n {
            let before = fp;
            let (np, nf) = line_minimize(&counted, &p, &dirs[i], fp);
            p = np;
            fp = nf;
            if before - fp > biggest_drop {
                biggest_drop = before - fp;
                ibig = i;
            }
            if counted.exhausted() {
                break;
            }
        }
        iterations.push(IterationRecord {
            k,
            theta: p.clone(),
            loss: fp,
            evals: counted.evals.get(),
        });
        if counted.exhausted() {
            break Termination::BudgetExhausted;
        }
        if 2.0 * (f0 - fp) <= POWELL_REL_TOL * (f0.abs() + fp.abs()) + 1e-20 {
            break Termination::Converged;
        }
        // Direction-set update: try the extrapolated point along the net
        // displacement of this cycle; when profitable, minimize along that
        // displacement and let it replace the direction of the biggest
        // drop.
        let extrapolated: Vec<f64> =
            p.iter().zip(&p0).map(|(pi, p0i)| 2.0 * pi - p0i).collect();
        let fe = counted.eval(&extrapolated);
        if fe < f0 {
            let t = 2.0 * (f0 - 2.0 * fp + fe) * (f0 - fp - biggest_drop).powi(2)
                - biggest_drop * (f0 - fe).powi(2);
            if t < 0.0 {
                let new_dir: Vec<f64> =
                    p.iter().zip(&p0).map(|(pi, p0i)| pi - p0i).collect();
                if new_dir.iter().map(|x| x * x).sum::<f64>().sqrt() > 1e-14 {
                    let (np, nf) = line_minimize(&counted, &p, &new_dir, fp);
                    p = np;
                    fp = nf;
                    dirs[ibig] = dirs[n - 1].clone();
                    dirs[n - 1] = new_dir;
                }
            }
        }
        if counted.exhausted() {
            iterations.push(IterationRecord {
                k: k + 1,
                theta: p.clone(),
                loss: fp,
                evals: counted.evals.get(),
            });
            break Termination::BudgetExhausted;
        }
    };

    Ok(OptimizationTrace {
        final_theta: p,
        final_loss: fp,
        wall_time: start.elapsed().as_secs_f64(),
        termination,
        iterations,
    })
}

/// Simplex diameter threshold for Nelder-Mead convergence.
const SIMPLEX_TOL: f64 = 1e-8;
/// Offset used to build the initial simplex around the start point.
const SIMPLEX_STEP: f64 = 0.25;

/// Nelder-Mead with the standard coefficients: reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5. Terminates when the simplex diameter
/// falls below 1e-8 or the budget runs out.
pub fn nelder_mead_minimize(
    f: &LossFunction,
    theta0: &[f64],
    budget: usize,
) -> Result<OptimizationTrace> {
    let n = f.arity();
    if theta0.len() != n {
        return Err(Error::InvalidInput(format!(
            "start point has {} entries, loss expects {n}",
            theta0.len()
        )));
    }
    if budget < n + 1 {
        return Err(Error::InvalidInput(format!(
            "budget {budget} below simplex size {}",
            n + 1
        )));
    }
    let start = Instant::now();
    let counted = Counted { f, evals: Cell::new(0), budget };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let fx0 = counted.eval(theta0);
    simplex.push((theta0.to_vec(), fx0));
    for i in 0..n {
        let mut x = theta0.to_vec();
        x[i] += SIMPLEX_STEP;
        let fx = counted.eval(&x);
        simplex.push((x, fx));
    }

    let mut iterations = Vec::new();
    let mut k = 0usize;

    let termination = loop {
        k += 1;
        // Stable sort: ties keep insertion order, so a constant loss keeps
        // the original start point as the incumbent best.
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite losses"));
        iterations.push(IterationRecord {
            k,
            theta: simplex[0].0.clone(),
            loss: simplex[0].1,
            evals: counted.evals.get(),
        });

        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0f64, f64::max);
        if diameter < SIMPLEX_TOL {
            break Termination::Converged;
        }
        if counted.exhausted() {
            break Termination::BudgetExhausted;
        }

        let worst = simplex[n].clone();
        let second_worst_f = simplex[n - 1].1;
        let best_f = simplex[0].1;
        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64)
            .collect();
        let blend = |coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + coef * (c - w))
                .collect()
        };

        let reflected = blend(1.0);
        let fr = counted.eval(&reflected);
        if fr < best_f {
            let expanded = blend(2.0);
            let fe = counted.eval(&expanded);
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < second_worst_f {
            simplex[n] = (reflected, fr);
        } else if fr < worst.1 {
            // Outside contraction, halfway toward the reflected point.
            let contracted = blend(0.5);
            let fc = counted.eval(&contracted);
            if fc <= fr {
                simplex[n] = (contracted, fc);
            } else {
                shrink_simplex(&counted, &mut simplex);
            }
        } else {
            // Inside contraction, halfway back toward the worst point.
            let contracted = blend(-0.5);
            let fc = counted.eval(&contracted);
            if fc < worst.1 {
                simplex[n] = (contracted, fc);
            } else {
                shrink_simplex(&counted, &mut simplex);
            }
        }
    };

    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite losses"));
    let (best, best_f) = simplex.swap_remove(0);
    Ok(OptimizationTrace {
        final_theta: best,
        final_loss: best_f,
        wall_time: start.elapsed().as_secs_f64(),
        termination,
        iterations,
    })
}

/// Pulls every vertex halfway toward the best one.
fn shrink_simplex(counted: &Counted<'_, '_>, simplex: &mut [(Vec<f64>, f64)]) {
    let best = simplex[0].0.clone();
    for entry in simplex.iter_mut().skip(1) {
        for (xj, bj) in entry.0.iter_mut().zip(&best) {
            *xj = bj + 0.5 * (*xj - bj);
        }
        entry.1 = counted.eval(&entry.0);
    }
}

/// Initialization strategies for the benchmarked algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitStrategy {
    /// i.i.d. Normal(0, 0.1): tight around the zero vector, breaking its
    /// exact gradient symmetry without leaving the basin.
    BenqoNormal,
    /// i.i.d. Uniform(-pi, pi), used by the QAOA/VQE baselines.
    Uniform,
}

/// Seeded draw of a start vector for `n` parameters.
pub fn initial_parameters(strategy: InitStrategy, n: usize, seed: u64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidInput("need at least one parameter".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match strategy {
        InitStrategy::BenqoNormal => {
            let normal = Normal::new(0.0, 0.1).expect("valid sigma");
            (0..n).map(|_| normal.sample(&mut rng)).collect()
        }
        InitStrategy::Uniform => (0..n).map(|_| rng.gen_range(-PI..PI)).collect(),
    })
}
