//! Monte-Carlo estimate of the cocycle exponents along continued-fraction
//! coded geodesics.
//!
//! A sample draws a uniform start point on the orbit and a digit stream
//! `a₁, a₂, …`, then applies `T^{a₁} L^{a₂} T^{a₃} …`. A frame carried by the
//! product is re-orthonormalised after every digit and the logs of the QR
//! diagonal are summed. Exponents are those log growths divided by the log
//! growth of the `SL(2,Z)` product, whose exponent is exactly one.
//!
//! Growth is measured from the end of a burn-in prefix. When the action on a
//! block factors through a finite group the accumulated logs stay bounded,
//! and measuring from time zero would leave a same-signed `O(1/T)` offset in
//! every sample; from a stationary start that offset averages to zero.
//! Columns keep their QR order, which is asymptotically descending.
//!
//! A digit larger than the generator's cycle length `p` through the current
//! point is applied as a power of the cycle matrix followed by `a mod p` single
//! steps, so the cost per digit stays logarithmic.

use std::io::{self, Write};

use nalgebra::{DMatrix, Matrix2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::action::Generator;
use super::cf::GaussDigits;
use super::orbit::Orbit;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::flat::Origami;

/// Which part of homology the frame lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Block {
    /// `2g − 2` dimensional kernel of the holonomy.
    #[default]
    Zero,
    /// All of `H₁`; a diagnostic that should return `±1` and the zero-part
    /// exponents with their negatives.
    Full,
}

#[derive(Debug, Clone)]
pub struct LyapunovConfig {
    /// Digits per sample.
    pub steps: u64,
    pub samples: usize,
    pub seed: u64,
    pub block: Block,
    /// Fixed start point instead of a uniform one.
    pub start: Option<usize>,
    /// Record running estimates every this many digits.
    pub trace_every: Option<u64>,
    /// Digits discarded before measuring; a tenth of `steps` by default.
    pub burn_in: Option<u64>,
    pub exec: Execution,
}

impl LyapunovConfig {
    pub fn new(steps: u64, samples: usize, seed: u64) -> Self {
        LyapunovConfig {
            steps,
            samples,
            seed,
            block: Block::Zero,
            start: None,
            trace_every: None,
            burn_in: None,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub sample: usize,
    pub step: u64,
    pub lambdas: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LyapunovEstimate {
    /// Means over samples, descending: `λ₂ … λ_g` for the zero block, all
    /// `2g` values for the full one.
    pub lambdas: Vec<f64>,
    pub stderr: Vec<f64>,
    pub per_sample: Vec<Vec<f64>>,
    pub steps: u64,
    pub samples: usize,
    pub seed: u64,
    pub block: Block,
    /// `1 + Σ λ̂` over the reported zero-part exponents.
    pub sum_check: f64,
    /// Growth of the tautological plane measured the same way; close to one.
    pub taut_exponent: f64,
    pub orbit_size: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceRow>,
}

/// Compensated summation.
#[derive(Debug, Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

struct Step {
    matrix: DMatrix<f64>,
    target: usize,
    cycle_len: u64,
    cycle_matrix: DMatrix<f64>,
}

/// Shared per-orbit data: one entry per point for `T` and for `L`.
struct Walker {
    steps: Vec<[Step; 2]>,
    dim: usize,
}

impl Walker {
    fn new(orbit: &Orbit, block: Block) -> Self {
        let block_of = |i: usize, g: Generator| {
            let t = orbit.transition(i, g);
            let m = match block {
                Block::Zero => &t.zero_block,
                Block::Full => &t.matrix,
            };
            (m.map(|x| x as f64), t.target)
        };
        let dim = block_of(0, Generator::T).0.nrows();
        let steps = (0..orbit.len())
            .map(|i| {
                [Generator::T, Generator::L].map(|g| {
                    let (matrix, target) = block_of(i, g);
                    let mut cycle_matrix = matrix.clone();
                    let mut at = target;
                    let mut len = 1;
                    while at != i {
                        let (m, next) = block_of(at, g);
                        cycle_matrix = m * cycle_matrix;
                        at = next;
                        len += 1;
                    }
                    Step { matrix, target, cycle_len: len, cycle_matrix }
                })
            })
            .collect();
        Walker { steps, dim }
    }
}

fn matrix_power(m: &DMatrix<f64>, mut e: u64) -> DMatrix<f64> {
    let mut result = DMatrix::identity(m.nrows(), m.ncols());
    let mut base = m.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = &base * &result;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    result
}

/// `SL(2,R)` product kept as a normalised matrix and a log scale.
struct Sl2Track {
    m: Matrix2<f64>,
    log_scale: Neumaier,
    /// Log growth of one vector, via the first QR diagonal.
    vec: nalgebra::Vector2<f64>,
    vec_log: Neumaier,
}

impl Sl2Track {
    fn new() -> Self {
        Sl2Track {
            m: Matrix2::identity(),
            log_scale: Neumaier::default(),
            vec: nalgebra::Vector2::new(1.0, 1.0).normalize(),
            vec_log: Neumaier::default(),
        }
    }

    fn apply(&mut self, g: usize, a: u64) {
        let a = a as f64;
        let step = if g == 0 {
            Matrix2::new(1.0, a, 0.0, 1.0)
        } else {
            Matrix2::new(1.0, 0.0, a, 1.0)
        };
        self.m = step * self.m;
        let s = self.m.amax();
        self.m /= s;
        self.log_scale.add(s.ln());
        self.vec = step * self.vec;
        let n = self.vec.norm();
        self.vec /= n;
        self.vec_log.add(n.ln());
    }

    fn log_norm(&self) -> f64 {
        self.log_scale.value() + self.m.norm().ln()
    }
}

/// Accumulated logs at the moment measurement starts.
struct Origin {
    logs: Vec<f64>,
    norm: f64,
    vec_log: f64,
}

impl Origin {
    fn zero(dim: usize) -> Self {
        Origin { logs: vec![0.0; dim], norm: 0.0, vec_log: 0.0 }
    }

    fn exponents(&self, logs: &[Neumaier], norm: f64, keep: usize) -> Vec<f64> {
        let span = norm - self.norm;
        logs.iter()
            .zip(&self.logs)
            .take(keep)
            .map(|(l, l0)| (l.value() - l0) / span)
            .collect()
    }
}

struct SampleResult {
    exponents: Vec<f64>,
    taut: f64,
    trace: Vec<TraceRow>,
}

fn run_sample(walker: &Walker, orbit_size: usize, cfg: &LyapunovConfig, sample: usize, keep: usize) -> SampleResult {
    let stream = sample as u64;
    let mut digits = GaussDigits::with_stream(cfg.seed, 2 * stream);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(2 * stream + 1);
    let mut at = cfg.start.unwrap_or_else(|| rng.random_range(0..orbit_size));

    // Random orthonormal start frame, so no direction is special.
    let dim = walker.dim;
    let start = DMatrix::from_fn(dim, dim, |_, _| rng.random::<f64>() - 0.5);
    let mut frame = start.qr().q();
    let mut logs = vec![Neumaier::default(); dim];
    let mut sl2 = Sl2Track::new();
    let mut trace = Vec::new();
    let burn_in = cfg.burn_in.unwrap_or(cfg.steps / 10);
    let mut origin = Origin::zero(dim);

    for k in 0..cfg.steps {
        if k == burn_in && k > 0 {
            origin = Origin {
                logs: logs.iter().map(Neumaier::value).collect(),
                norm: sl2.log_norm(),
                vec_log: sl2.vec_log.value(),
            };
        }
        let a = digits.next().expect("digit stream is infinite");
        let g = (k % 2) as usize;
        sl2.apply(g, a);
        let step = &walker.steps[at][g];
        let (q, r) = (a / step.cycle_len, a % step.cycle_len);
        if q > 0 {
            frame = matrix_power(&step.cycle_matrix, q) * frame;
        }
        for _ in 0..r {
            let s = &walker.steps[at][g];
            frame = &s.matrix * frame;
            at = s.target;
        }
        let qr = frame.qr();
        let rdiag = qr.r().diagonal();
        for (l, x) in logs.iter_mut().zip(rdiag.iter()) {
            l.add(x.abs().ln());
        }
        frame = qr.q();

        if let Some(every) = cfg.trace_every {
            if (k + 1) % every == 0 {
                trace.push(TraceRow {
                    sample,
                    step: k + 1,
                    lambdas: origin.exponents(&logs, sl2.log_norm(), keep),
                });
            }
        }
    }
    let norm = sl2.log_norm();
    SampleResult {
        exponents: origin.exponents(&logs, norm, keep),
        taut: (sl2.vec_log.value() - origin.vec_log) / (norm - origin.norm),
        trace,
    }
}

fn mean_and_stderr(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    if n < 2.0 {
        return (mean, f64::NAN);
    }
    let var = values.map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Estimate over an already built orbit.
pub fn estimate_on_orbit(orbit: &Orbit, cfg: &LyapunovConfig) -> Result<LyapunovEstimate> {
    if cfg.steps == 0 || cfg.samples == 0 {
        return Err(Error::InvalidEstimator("steps and samples must be at least 1".into()));
    }
    if let Some(s) = cfg.start {
        if s >= orbit.len() {
            return Err(Error::InvalidEstimator(format!(
                "start point {s} outside an orbit of size {}",
                orbit.len()
            )));
        }
    }
    if cfg.burn_in.is_some_and(|b| b >= cfg.steps) {
        return Err(Error::InvalidEstimator("burn-in must be shorter than the run".into()));
    }
    let g = orbit.genus();
    let keep = match cfg.block {
        Block::Zero => g - 1,
        Block::Full => 2 * g,
    };
    let empty = LyapunovEstimate {
        lambdas: Vec::new(),
        stderr: Vec::new(),
        per_sample: Vec::new(),
        steps: cfg.steps,
        samples: cfg.samples,
        seed: cfg.seed,
        block: cfg.block,
        sum_check: 1.0,
        taut_exponent: 1.0,
        orbit_size: orbit.len(),
        trace: Vec::new(),
    };
    if keep == 0 {
        return Ok(empty);
    }

    let walker = Walker::new(orbit, cfg.block);
    let indices: Vec<usize> = (0..cfg.samples).collect();
    let results = cfg
        .exec
        .map(&indices, |&s| run_sample(&walker, orbit.len(), cfg, s, keep));

    let (mut lambdas, mut stderr): (Vec<f64>, Vec<f64>) = (0..keep)
        .map(|i| mean_and_stderr(results.iter().map(move |r| r.exponents[i])))
        .unzip();
    // Present the means in descending order; per-sample columns follow.
    let mut order: Vec<usize> = (0..keep).collect();
    order.sort_by(|&i, &j| lambdas[j].total_cmp(&lambdas[i]));
    lambdas = order.iter().map(|&i| lambdas[i]).collect();
    stderr = order.iter().map(|&i| stderr[i]).collect();
    let zero_part: f64 = match cfg.block {
        Block::Zero => lambdas.iter().sum(),
        // λ₁ = 1 is first; λ₂ … λ_g follow.
        Block::Full => lambdas[1..g].iter().sum(),
    };
    let taut_exponent = results.iter().map(|r| r.taut).sum::<f64>() / results.len() as f64;
    let mut trace = Vec::new();
    let mut per_sample = Vec::new();
    for r in results {
        per_sample.push(order.iter().map(|&i| r.exponents[i]).collect());
        trace.extend(r.trace);
    }
    Ok(LyapunovEstimate {
        lambdas,
        stderr,
        per_sample,
        sum_check: 1.0 + zero_part,
        taut_exponent,
        trace,
        ..empty
    })
}

pub fn lyapunov_estimate(o: &Origami, steps: u64, samples: usize, seed: u64) -> Result<LyapunovEstimate> {
    estimate_on_orbit(&Orbit::new(o), &LyapunovConfig::new(steps, samples, seed))
}

/// Plot-ready convergence trace: `sample,step,lambda_2,…`.
pub fn write_trace_csv<W: Write>(est: &LyapunovEstimate, mut w: W) -> io::Result<()> {
    let width = est.trace.first().map_or(est.lambdas.len(), |r| r.lambdas.len());
    let first = match est.block {
        Block::Zero => 2,
        Block::Full => 1,
    };
    let names: Vec<String> = (0..width).map(|i| format!("lambda_{}", i + first)).collect();
    writeln!(w, "sample,step,{}", names.join(","))?;
    for row in &est.trace {
        let vals: Vec<String> = row.lambdas.iter().map(|x| format!("{x:.9e}")).collect();
        writeln!(w, "{},{},{}", row.sample, row.step, vals.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l_shape() -> Origami {
        Origami::from_cycle_strings(3, "(1,2,3)", "(1,2)").unwrap()
    }

    #[test]
    fn torus_gives_empty_estimate() {
        let e = lyapunov_estimate(&Origami::torus(), 10, 2, 1).unwrap();
        assert!(e.lambdas.is_empty());
        assert_eq!(e.sum_check, 1.0);
    }

    #[test]
    fn rejects_empty_runs() {
        assert!(lyapunov_estimate(&l_shape(), 0, 1, 1).is_err());
        assert!(lyapunov_estimate(&l_shape(), 1, 0, 1).is_err());
    }

    #[test]
    fn matrix_power_by_squaring() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        assert_eq!(matrix_power(&m, 13), DMatrix::from_row_slice(2, 2, &[1.0, 13.0, 0.0, 1.0]));
        assert_eq!(matrix_power(&m, 0), DMatrix::identity(2, 2));
    }

    #[test]
    fn neumaier_beats_naive_summation() {
        let mut s = Neumaier::default();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s.add(x);
        }
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn deterministic_and_mode_independent() {
        let orbit = Orbit::new(&l_shape());
        let mut cfg = LyapunovConfig::new(2_000, 3, 5);
        cfg.exec = Execution::Sequential;
        let a = estimate_on_orbit(&orbit, &cfg).unwrap();
        cfg.exec = Execution::Parallel;
        let b = estimate_on_orbit(&orbit, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.lambdas.len(), 1);
    }

    #[test]
    fn control_exponent_is_positive() {
        let e = lyapunov_estimate(&l_shape(), 50_000, 4, 3).unwrap();
        assert!((e.lambdas[0] - 1.0 / 3.0).abs() < 0.05, "{:?}", e.lambdas);
        assert!((e.taut_exponent - 1.0).abs() < 0.01);
    }

    #[test]
    fn full_block_is_symmetric() {
        let orbit = Orbit::new(&l_shape());
        let mut cfg = LyapunovConfig::new(50_000, 4, 9);
        cfg.block = Block::Full;
        let e = estimate_on_orbit(&orbit, &cfg).unwrap();
        assert_eq!(e.lambdas.len(), 4);
        for i in 0..2 {
            assert!((e.lambdas[i] + e.lambdas[3 - i]).abs() < 0.01, "{:?}", e.lambdas);
        }
        assert!((e.lambdas[0] - 1.0).abs() < 0.02);
    }

    #[test]
    fn trace_csv_shape() {
        let orbit = Orbit::new(&l_shape());
        let mut cfg = LyapunovConfig::new(100, 2, 1);
        cfg.trace_every = Some(50);
        let e = estimate_on_orbit(&orbit, &cfg).unwrap();
        assert_eq!(e.trace.len(), 4);
        let mut out = Vec::new();
        write_trace_csv(&e, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "sample,step,lambda_2");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("0,50,"));
    }
}
