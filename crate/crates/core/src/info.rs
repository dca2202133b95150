//! Entropies, (conditional) mutual information and homodyne Gaussian discord.
//!
//! All quantities are reported in units fixed by [`LOG_BASE`] (bits).

use std::f64::consts::{E, FRAC_PI_8, PI};

use nalgebra::{DMatrix, DVector, Matrix2, Vector2};

use crate::error::{Error, Result};
use crate::gaussian::{CovarianceMatrix, PURITY_TOLERANCE};

/// Logarithm base for every reported entropy.
pub const LOG_BASE: f64 = 2.0;

/// Negative results this close to zero are reported as exactly zero.
pub const CLAMP_TOLERANCE: f64 = 1e-9;

/// Agreement required between the determinant and four-entropy CMI routes.
pub const CMI_CROSS_CHECK_TOLERANCE: f64 = 1e-9;

const GOLDEN_ITERATIONS: usize = 64;
const SEED_ANGLES: usize = 8;

fn log(x: f64) -> f64 {
    x.ln() / LOG_BASE.ln()
}

/// Clamps `value` to zero when it is negative by less than [`CLAMP_TOLERANCE`].
pub fn clamp_non_negative(value: f64, what: &str) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -CLAMP_TOLERANCE {
        Ok(0.0)
    } else {
        Err(Error::NumericFailure(format!(
            "{what} is negative beyond tolerance: {value:e}"
        )))
    }
}

/// Differential (Shannon) entropy of the quadrature distribution,
/// `½ log((2πe)^{2n} det Γ)`.
pub fn shannon_entropy(state: &CovarianceMatrix) -> Result<f64> {
    let det = state.determinant();
    if !(det > 0.0) {
        return Err(Error::NumericFailure(format!(
            "non-positive determinant {det:e} in Shannon entropy"
        )));
    }
    let dim = 2.0 * state.n_modes() as f64;
    Ok(0.5 * (dim * log(2.0 * PI * E) + log(det)))
}

/// Entropy contribution of a single symplectic eigenvalue.
pub fn entropy_term(x: f64) -> f64 {
    if x <= 1.0 {
        return 0.0;
    }
    let up = 0.5 * (x + 1.0);
    let down = 0.5 * (x - 1.0);
    up * log(up) - down * log(down)
}

pub fn von_neumann_entropy(state: &CovarianceMatrix) -> Result<f64> {
    let values = state.symplectic_eigenvalues()?;
    if let Some(&bad) = values.iter().find(|&&x| x < 1.0 - PURITY_TOLERANCE) {
        return Err(Error::UnphysicalState(format!(
            "symplectic eigenvalue {bad} below 1"
        )));
    }
    Ok(values.into_iter().map(entropy_term).sum())
}

/// Disjoint mode groups `A`, `B` and conditioning system `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub s: Vec<usize>,
}

impl Partition {
    pub fn new(a: Vec<usize>, b: Vec<usize>, s: Vec<usize>) -> Result<Self> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidArgument("subsystems A and B must be non-empty".into()));
        }
        let mut all: Vec<usize> = a.iter().chain(&b).chain(&s).copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("partition subsystems overlap".into()));
        }
        Ok(Self { a, b, s })
    }

    /// `A` and `B` without a conditioning system.
    pub fn bipartite(a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        Self::new(a, b, Vec::new())
    }

    fn check_fits(&self, n_modes: usize) -> Result<()> {
        match self.a.iter().chain(&self.b).chain(&self.s).find(|&&m| m >= n_modes) {
            Some(m) => Err(Error::InvalidArgument(format!(
                "partition mode {m} out of range for {n_modes}-mode state"
            ))),
            None => Ok(()),
        }
    }
}

fn concat(parts: &[&[usize]]) -> Vec<usize> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

fn positive_det(state: &CovarianceMatrix, modes: &[usize]) -> Result<f64> {
    let det = state.reduce(modes)?.determinant();
    if !(det > 0.0) {
        return Err(Error::NumericFailure(format!(
            "non-positive determinant {det:e} on modes {modes:?}"
        )));
    }
    Ok(det)
}

/// The four differential entropies entering `I(A:B|S)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyTerms {
    pub h_as: f64,
    pub h_bs: f64,
    pub h_s: f64,
    pub h_abs: f64,
}

impl EntropyTerms {
    pub fn compute(state: &CovarianceMatrix, p: &Partition) -> Result<Self> {
        p.check_fits(state.n_modes())?;
        if p.s.is_empty() {
            return Err(Error::InvalidArgument("conditioning system S is empty".into()));
        }
        let h = |modes: Vec<usize>| shannon_entropy(&state.reduce(&modes)?);
        Ok(Self {
            h_as: h(concat(&[&p.s, &p.a]))?,
            h_bs: h(concat(&[&p.s, &p.b]))?,
            h_s: h(p.s.clone())?,
            h_abs: h(concat(&[&p.s, &p.b, &p.a]))?,
        })
    }

    pub fn conditional_mutual_information(&self) -> f64 {
        self.h_as + self.h_bs - self.h_s - self.h_abs
    }
}

/// `I(A:B|S) = ½ log[det Γ_as det Γ_bs / (det Γ_s det Γ_abs)]`.
///
/// The result is cross-checked against the four-entropy decomposition.
pub fn conditional_mutual_information(state: &CovarianceMatrix, p: &Partition) -> Result<f64> {
    let terms = EntropyTerms::compute(state, p)?;
    let det_as = positive_det(state, &concat(&[&p.s, &p.a]))?;
    let det_bs = positive_det(state, &concat(&[&p.s, &p.b]))?;
    let det_s = positive_det(state, &p.s)?;
    let det_abs = positive_det(state, &concat(&[&p.s, &p.b, &p.a]))?;
    let cmi = 0.5 * (log(det_as) + log(det_bs) - log(det_s) - log(det_abs));
    let other = terms.conditional_mutual_information();
    if (cmi - other).abs() > CMI_CROSS_CHECK_TOLERANCE {
        return Err(Error::NumericFailure(format!(
            "CMI routes disagree: determinant {cmi:e} vs entropies {other:e}"
        )));
    }
    clamp_non_negative(cmi, "conditional mutual information")
}

/// `I(A:B) = H(A) + H(B) - H(A,B)`; the partition must have an empty `S`.
pub fn mutual_information(state: &CovarianceMatrix, p: &Partition) -> Result<f64> {
    p.check_fits(state.n_modes())?;
    if !p.s.is_empty() {
        return Err(Error::InvalidArgument(
            "mutual information takes a partition with empty S".into(),
        ));
    }
    let h = |modes: Vec<usize>| shannon_entropy(&state.reduce(&modes)?);
    let mi = h(p.a.clone())? + h(p.b.clone())? - h(concat(&[&p.a, &p.b]))?;
    clamp_non_negative(mi, "mutual information")
}

/// Rank-one projector onto the quadrature at `angle` (`0` is `x`, `π/2` is `p`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomodyneProjector {
    angle: f64,
}

impl HomodyneProjector {
    /// Wraps the angle into `[0, π)`.
    pub fn new(angle: f64) -> Self {
        let mut a = angle.rem_euclid(PI);
        if a >= PI {
            a = 0.0;
        }
        Self { angle: a }
    }

    pub fn x() -> Self {
        Self::new(0.0)
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn direction(&self) -> Vector2<f64> {
        Vector2::new(self.angle.cos(), self.angle.sin())
    }

    pub fn matrix(&self) -> Matrix2<f64> {
        let r = self.direction();
        r * r.transpose()
    }
}

/// State of the remaining modes after homodyning `measured_mode`.
///
/// Schur complement `Γ_b - C (XΓ_aX)⁺ Cᵀ`, using the closed-form
/// pseudo-inverse `X / (rᵀΓ_a r)` of the rank-one projector `X = r rᵀ`.
pub fn homodyne_condition(
    state: &CovarianceMatrix,
    measured_mode: usize,
    proj: HomodyneProjector,
) -> Result<CovarianceMatrix> {
    let n = state.n_modes();
    if measured_mode >= n {
        return Err(Error::InvalidArgument(format!(
            "measured mode {measured_mode} out of range for {n}-mode state"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(
            "homodyne conditioning needs at least one unmeasured mode".into(),
        ));
    }
    let rest: Vec<usize> = (0..n).filter(|&m| m != measured_mode).collect();
    let remaining = state.reduce(&rest)?;
    let r = proj.direction();
    let gamma_a = state.block(measured_mode, measured_mode);
    let variance = (r.transpose() * gamma_a * r)[(0, 0)];
    if !(variance > 0.0) {
        return Err(Error::NumericFailure(format!(
            "measured quadrature variance {variance:e} is not positive"
        )));
    }
    let g = state.matrix();
    let c = DVector::from_iterator(
        2 * rest.len(),
        rest.iter().flat_map(|&m| {
            (0..2).map(move |q| {
                let row = 2 * m + q;
                g[(row, 2 * measured_mode)] * r[0] + g[(row, 2 * measured_mode + 1)] * r[1]
            })
        }),
    );
    let update: DMatrix<f64> = &c * c.transpose() / variance;
    CovarianceMatrix::new(remaining.into_matrix() - update)
}

/// `D(B|A)` together with its constituent entropies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discord {
    pub value: f64,
    pub s_a: f64,
    pub s_ab: f64,
    /// Minimum over homodyne angles of the conditional entropy of B.
    pub conditional_entropy: f64,
    pub angle: f64,
}

/// Conditional entropy of B after homodyning A at `angle`, on a two-mode `(A, B)` state.
pub fn conditional_entropy_at(pair: &CovarianceMatrix, angle: f64) -> Result<f64> {
    let conditioned = homodyne_condition(pair, 0, HomodyneProjector::new(angle))?;
    von_neumann_entropy(&conditioned)
}

/// Minimises `f` over one period `[0, π)`.
///
/// Evaluates evenly spaced seeds and then runs a fixed-length golden-section
/// search between the neighbours of the best seed.
fn minimise_over_angle<F>(f: F) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let step = PI / SEED_ANGLES as f64;
    let mut best = (0.0, f(0.0)?);
    for k in 1..SEED_ANGLES {
        let theta = k as f64 * step;
        let v = f(theta)?;
        if v < best.1 {
            best = (theta, v);
        }
    }
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (best.0 - FRAC_PI_8, best.0 + FRAC_PI_8);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..GOLDEN_ITERATIONS {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        }
    }
    let candidate = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    let winner = if candidate.1 < best.1 { candidate } else { best };
    Ok((HomodyneProjector::new(winner.0).angle(), winner.1))
}

/// Homodyne Gaussian discord `D(B|A) = S(A) - S(A,B) + min_θ S(B | x_θ on A)`.
pub fn gaussian_discord(state: &CovarianceMatrix, a_mode: usize, b_mode: usize) -> Result<Discord> {
    let pair = state.reduce(&[a_mode, b_mode])?;
    let s_a = von_neumann_entropy(&pair.reduce(&[0])?)?;
    let s_ab = von_neumann_entropy(&pair)?;
    let (angle, conditional_entropy) = minimise_over_angle(|t| conditional_entropy_at(&pair, t))?;
    let value = clamp_non_negative(s_a - s_ab + conditional_entropy, "discord")?;
    Ok(Discord {
        value,
        s_a,
        s_ab,
        conditional_entropy,
        angle,
    })
}

/// Every information quantity for one `(S, B, A)` triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfoReport {
    pub cmi: f64,
    pub mi: f64,
    pub discord: f64,
    pub entropy_terms: EntropyTerms,
    pub discord_terms: Discord,
}

impl InfoReport {
    pub fn compute(state: &CovarianceMatrix, s: usize, b: usize, a: usize) -> Result<Self> {
        let conditional = Partition::new(vec![a], vec![b], vec![s])?;
        let entropy_terms = EntropyTerms::compute(state, &conditional)?;
        let cmi = conditional_mutual_information(state, &conditional)?;
        let mi = mutual_information(state, &Partition::bipartite(vec![a], vec![b])?)?;
        let discord_terms = gaussian_discord(state, a, b)?;
        Ok(Self {
            cmi,
            mi,
            discord: discord_terms.value,
            entropy_terms,
            discord_terms,
        })
    }
}
