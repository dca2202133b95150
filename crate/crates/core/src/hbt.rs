//! Intensity-correlation (g²(0)) thermality gate.
//!
//! Quadrature samples are drawn from the Gaussian state, turned into
//! vacuum-subtracted photon-number estimates, and correlated. Sampling is
//! sharded: shard `k` draws from the ChaCha20 stream `k` of the run seed, so
//! the output depends only on `(seed, shard plan)` and never on how many
//! threads did the work.

use std::fmt;
use std::io::Write;

use nalgebra::{Cholesky, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gaussian::{CovarianceMatrix, PURITY_TOLERANCE};

/// Identifies the sample stream layout. Bump on any change that alters output.
pub const GENERATOR_ID: &str = "chacha20-stream-per-shard+ziggurat-normal/v1";

pub const DEFAULT_SHARD_SIZE: usize = 1 << 16;

/// Number of jackknife blocks used for standard errors.
pub const JACKKNIFE_BLOCKS: usize = 100;

/// Minimum sample count accepted by the g² estimators.
pub const MIN_G2_SAMPLES: usize = 1_000;

/// Width, in standard errors, of the thermality and intensity gates.
pub const GATE_SIGMAS: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShardPlan {
    pub shard_size: usize,
    pub n_shards: usize,
}

impl ShardPlan {
    pub fn new(n_samples: usize, shard_size: usize) -> Self {
        let shard_size = shard_size.max(1);
        Self {
            shard_size,
            n_shards: n_samples.div_ceil(shard_size),
        }
    }
}

impl fmt::Display for ShardPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} shards x {} samples", self.n_shards, self.shard_size)
    }
}

/// Row-major quadrature draws: one row of `(x_0, p_0, x_1, p_1, ...)` per sample.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSamples {
    n_modes: usize,
    seed: u64,
    plan: ShardPlan,
    data: Vec<f64>,
}

impl QuadratureSamples {
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn n_samples(&self) -> usize {
        self.data.len() / (2 * self.n_modes)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn shard_plan(&self) -> ShardPlan {
        self.plan
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let w = 2 * self.n_modes;
        &self.data[i * w..(i + 1) * w]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(2 * self.n_modes)
    }

    /// Writes a CSV with one header label per quadrature column.
    ///
    /// `mode_names` defaults to mode indices, giving `x_0,p_0,x_1,p_1,...`.
    pub fn write_csv<W: Write>(&self, out: W, mode_names: Option<&[String]>) -> Result<()> {
        let names: Vec<String> = match mode_names {
            Some(n) if n.len() == self.n_modes => n.to_vec(),
            Some(n) => {
                return Err(Error::InvalidArgument(format!(
                    "{} mode names for {} modes",
                    n.len(),
                    self.n_modes
                )))
            }
            None => (0..self.n_modes).map(|m| m.to_string()).collect(),
        };
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(names.iter().flat_map(|n| [format!("x_{n}"), format!("p_{n}")]))?;
        for row in self.rows() {
            w.write_record(row.iter().map(|v| v.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Draws `n_samples` zero-mean quadrature vectors with covariance `state`.
pub fn sample_quadratures(
    state: &CovarianceMatrix,
    n_samples: usize,
    seed: u64,
) -> Result<QuadratureSamples> {
    sample_quadratures_with_shards(state, n_samples, seed, DEFAULT_SHARD_SIZE)
}

pub fn sample_quadratures_with_shards(
    state: &CovarianceMatrix,
    n_samples: usize,
    seed: u64,
    shard_size: usize,
) -> Result<QuadratureSamples> {
    if n_samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 samples, got {n_samples}"
        )));
    }
    let dim = 2 * state.n_modes();
    let chol = Cholesky::new(state.matrix().clone()).ok_or_else(|| {
        Error::NumericFailure("covariance matrix has no Cholesky factor (not positive definite)".into())
    })?;
    let lower = chol.l();
    let plan = ShardPlan::new(n_samples, shard_size);
    let mut data = vec![0.0; n_samples * dim];
    data.par_chunks_mut(plan.shard_size * dim)
        .enumerate()
        .for_each(|(shard, chunk)| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(shard as u64);
            let mut z = DVector::zeros(dim);
            for row in chunk.chunks_exact_mut(dim) {
                for zi in z.iter_mut() {
                    *zi = StandardNormal.sample(&mut rng);
                }
                let x = &lower * &z;
                row.copy_from_slice(x.as_slice());
            }
        });
    Ok(QuadratureSamples {
        n_modes: state.n_modes(),
        seed,
        plan,
        data,
    })
}

/// Per-sample photon-number estimate `(x² + p² - 2) / 4` for `mode`.
///
/// Its mean is `(V - 1) / 2` for a thermal mode of variance `V`.
pub fn intensity(samples: &QuadratureSamples, mode: usize) -> Result<Vec<f64>> {
    if mode >= samples.n_modes {
        return Err(Error::InvalidArgument(format!(
            "mode {mode} out of range for {}-mode samples",
            samples.n_modes
        )));
    }
    Ok(samples
        .rows()
        .map(|r| {
            let (x, p) = (r[2 * mode], r[2 * mode + 1]);
            0.25 * (x * x + p * p - 2.0)
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Thermal,
    NotThermal,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Thermal => "thermal",
            Verdict::NotThermal => "not-thermal",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct G2Report {
    pub g2_estimate: f64,
    pub std_error: f64,
    pub g2_analytic: Option<f64>,
    pub n_samples: usize,
    pub verdict: Verdict,
    pub seed: u64,
    pub generator: &'static str,
    pub shard_plan: ShardPlan,
}

impl G2Report {
    /// Fills in the exact value for the same pair of modes of `state`.
    pub fn with_analytic(mut self, state: &CovarianceMatrix, mode_a: usize, mode_b: usize) -> Result<Self> {
        self.g2_analytic = Some(g2_analytic(state, mode_a, mode_b)?);
        Ok(self)
    }
}

fn verdict_for(estimate: f64, std_error: f64) -> Verdict {
    if !estimate.is_finite() || !std_error.is_finite() {
        Verdict::Inconclusive
    } else if estimate - GATE_SIGMAS * std_error > 1.0 {
        Verdict::Thermal
    } else {
        Verdict::NotThermal
    }
}

/// Whether the mean of `values` is resolved above zero at [`GATE_SIGMAS`].
fn resolved_positive(values: &[f64]) -> bool {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    mean > GATE_SIGMAS * (var / n).sqrt()
}

/// Delete-a-block jackknife for a statistic built from per-block sums.
///
/// `sums` holds `(count, s_1, ..., s_k)` for each block; `stat` maps totals
/// to the estimate. Returns `(full estimate, standard error)`.
fn block_jackknife<const K: usize>(blocks: &[[f64; K]], stat: impl Fn(&[f64; K]) -> f64) -> (f64, f64) {
    let mut total = [0.0; K];
    for b in blocks {
        for (t, v) in total.iter_mut().zip(b) {
            *t += v;
        }
    }
    let full = stat(&total);
    let leave_out: Vec<f64> = blocks
        .iter()
        .map(|b| {
            let mut rest = total;
            for (r, v) in rest.iter_mut().zip(b) {
                *r -= v;
            }
            stat(&rest)
        })
        .collect();
    let k = leave_out.len() as f64;
    let mean = leave_out.iter().sum::<f64>() / k;
    let var = leave_out.iter().map(|v| (v - mean).powi(2)).sum::<f64>() * (k - 1.0) / k;
    (full, var.sqrt())
}

fn block_ranges(n: usize) -> impl Iterator<Item = std::ops::Range<usize>> {
    let blocks = JACKKNIFE_BLOCKS.min(n);
    (0..blocks).map(move |j| (j * n / blocks)..((j + 1) * n / blocks))
}

fn check_g2_samples(samples: &QuadratureSamples) -> Result<()> {
    if samples.n_samples() < MIN_G2_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "g2 estimation needs at least {MIN_G2_SAMPLES} samples, got {}",
            samples.n_samples()
        )));
    }
    Ok(())
}

fn report(samples: &QuadratureSamples, g2_estimate: f64, std_error: f64, verdict: Verdict) -> G2Report {
    G2Report {
        g2_estimate,
        std_error,
        g2_analytic: None,
        n_samples: samples.n_samples(),
        verdict,
        seed: samples.seed,
        generator: GENERATOR_ID,
        shard_plan: samples.plan,
    }
}

/// Cross-correlation `⟨I_a I_b⟩ / (⟨I_a⟩⟨I_b⟩)` with a jackknife standard error.
pub fn g2_cross_estimate(samples: &QuadratureSamples, mode_a: usize, mode_b: usize) -> Result<G2Report> {
    check_g2_samples(samples)?;
    if mode_a == mode_b {
        return Err(Error::InvalidArgument(
            "cross-correlation needs two distinct modes; use g2_auto_estimate".into(),
        ));
    }
    let ia = intensity(samples, mode_a)?;
    let ib = intensity(samples, mode_b)?;
    let blocks: Vec<[f64; 4]> = block_ranges(ia.len())
        .map(|r| {
            let mut s = [r.len() as f64, 0.0, 0.0, 0.0];
            for k in r {
                s[1] += ia[k];
                s[2] += ib[k];
                s[3] += ia[k] * ib[k];
            }
            s
        })
        .collect();
    let (g2, se) = block_jackknife(&blocks, |t| {
        let n = t[0];
        (t[3] / n) / ((t[1] / n) * (t[2] / n))
    });
    let verdict = if resolved_positive(&ia) && resolved_positive(&ib) {
        verdict_for(g2, se)
    } else {
        Verdict::Inconclusive
    };
    Ok(report(samples, g2, se, verdict))
}

/// Single-mode `⟨:n²:⟩ / ⟨n⟩²`, estimated as `(⟨I²⟩ - ⟨I⟩ - ¼) / ⟨I⟩²`.
pub fn g2_auto_estimate(samples: &QuadratureSamples, mode: usize) -> Result<G2Report> {
    check_g2_samples(samples)?;
    let i = intensity(samples, mode)?;
    let blocks: Vec<[f64; 3]> = block_ranges(i.len())
        .map(|r| {
            let mut s = [r.len() as f64, 0.0, 0.0];
            for k in r {
                s[1] += i[k];
                s[2] += i[k] * i[k];
            }
            s
        })
        .collect();
    let (g2, se) = block_jackknife(&blocks, |t| {
        let n = t[0];
        let m = t[1] / n;
        (t[2] / n - m - 0.25) / (m * m)
    });
    let verdict = if resolved_positive(&i) {
        verdict_for(g2, se)
    } else {
        Verdict::Inconclusive
    };
    Ok(report(samples, g2, se, verdict))
}

/// Exact g²(0) from Gaussian fourth moments.
///
/// For distinct modes this is `1 + ⅛ Σ Γ_uw² / (⟨I_a⟩⟨I_b⟩)` with `u` over
/// the quadratures of `a` and `w` over those of `b`; for `mode_a == mode_b`
/// it is the single-mode normally ordered ratio.
pub fn g2_analytic(state: &CovarianceMatrix, mode_a: usize, mode_b: usize) -> Result<f64> {
    for m in [mode_a, mode_b] {
        if m >= state.n_modes() {
            return Err(Error::InvalidArgument(format!(
                "mode {m} out of range for {}-mode state",
                state.n_modes()
            )));
        }
    }
    let mean = |m: usize| 0.25 * (state.block(m, m).trace() - 2.0);
    let (na, nb) = (mean(mode_a), mean(mode_b));
    if !(na > PURITY_TOLERANCE && nb > PURITY_TOLERANCE) {
        return Err(Error::UndefinedResult(format!(
            "zero mean intensity (modes {mode_a}: {na}, {mode_b}: {nb})"
        )));
    }
    let pairing = 0.125 * state.block(mode_a, mode_b).norm_squared();
    if mode_a == mode_b {
        Ok((na * na + pairing - na - 0.25) / (na * na))
    } else {
        Ok(1.0 + pairing / (na * nb))
    }
}

/// Samples the `(mode_a, mode_b)` marginal of `state` and runs the gate.
///
/// Equal modes select the auto-correlation variant. `g2_analytic` is left
/// empty when a mode carries no photons.
pub fn g2_check(
    state: &CovarianceMatrix,
    mode_a: usize,
    mode_b: usize,
    n_samples: usize,
    seed: u64,
) -> Result<G2Report> {
    if mode_a == mode_b {
        let single = state.reduce(&[mode_a])?;
        let samples = sample_quadratures(&single, n_samples, seed)?;
        let report = g2_auto_estimate(&samples, 0)?;
        return attach_analytic(report, &single, 0, 0);
    }
    let pair = state.reduce(&[mode_a, mode_b])?;
    let samples = sample_quadratures(&pair, n_samples, seed)?;
    attach_analytic(g2_cross_estimate(&samples, 0, 1)?, &pair, 0, 1)
}

fn attach_analytic(report: G2Report, state: &CovarianceMatrix, a: usize, b: usize) -> Result<G2Report> {
    match report.clone().with_analytic(state, a, b) {
        Err(Error::UndefinedResult(_)) => Ok(report),
        other => other,
    }
}
