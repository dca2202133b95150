//! Zero-mean Gaussian states as covariance matrices in shot-noise units.
//!
//! Quadratures are ordered `(x1, p1, x2, p2, ...)` and the vacuum has
//! covariance equal to the identity. Everything here is a pure function
//! of immutable values.

use std::fmt;

use nalgebra::{DMatrix, Matrix2};

use crate::error::{Error, Result};

/// Symplectic eigenvalues this far below 1 are snapped to exactly 1.
pub const PURITY_TOLERANCE: f64 = 1e-9;

/// Relative tolerance for accepting a matrix as symmetric.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Real symmetric `2n x 2n` covariance matrix of an `n`-mode Gaussian state.
#[derive(Clone, PartialEq)]
pub struct CovarianceMatrix {
    n_modes: usize,
    data: DMatrix<f64>,
}

impl fmt::Debug for CovarianceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CovarianceMatrix({} modes){}", self.n_modes, self.data)
    }
}

impl CovarianceMatrix {
    /// Wraps a raw matrix after structural checks (square, even, symmetric).
    ///
    /// Physicality is not enforced here; use [`CovarianceMatrix::validate_physicality`].
    /// The stored matrix is the exact symmetric part of `data`.
    pub fn new(data: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = data.shape();
        if rows != cols {
            return Err(Error::InvalidArgument(format!(
                "covariance matrix must be square, got {rows}x{cols}"
            )));
        }
        if rows == 0 || rows % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "covariance matrix dimension must be even and positive, got {rows}"
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(
                "covariance matrix has non-finite entries".into(),
            ));
        }
        let scale = data.amax().max(1.0);
        let asym = (&data - data.transpose()).amax();
        if asym > SYMMETRY_TOLERANCE * scale {
            return Err(Error::InvalidArgument(format!(
                "covariance matrix is not symmetric (max asymmetry {asym:e})"
            )));
        }
        Ok(Self::from_symmetric_part(data))
    }

    fn from_symmetric_part(data: DMatrix<f64>) -> Self {
        let sym = (&data + data.transpose()) * 0.5;
        Self {
            n_modes: sym.nrows() / 2,
            data: sym,
        }
    }

    /// `n`-mode vacuum: the `2n x 2n` identity.
    pub fn vacuum(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::InvalidArgument("vacuum needs at least one mode".into()));
        }
        Ok(Self {
            n_modes,
            data: DMatrix::identity(2 * n_modes, 2 * n_modes),
        })
    }

    /// Single-mode thermal state `diag(V, V)`.
    pub fn thermal(variance: f64) -> Result<Self> {
        check_variance("thermal variance", variance)?;
        Ok(Self {
            n_modes: 1,
            data: DMatrix::from_diagonal_element(2, 2, variance),
        })
    }

    /// Two-mode squeezed vacuum with local variance `nu`.
    ///
    /// Diagonal blocks are `nu I` and the off-diagonal blocks are
    /// `sqrt(nu^2 - 1) Z` with `Z = diag(1, -1)`.
    pub fn epr(nu: f64) -> Result<Self> {
        check_variance("EPR variance", nu)?;
        let zeta = (nu * nu - 1.0).sqrt();
        let mut data = DMatrix::from_diagonal_element(4, 4, nu);
        data[(0, 2)] = zeta;
        data[(2, 0)] = zeta;
        data[(1, 3)] = -zeta;
        data[(3, 1)] = -zeta;
        Ok(Self { n_modes: 2, data })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.data
    }

    /// The `2x2` block coupling modes `i` and `j`.
    pub fn block(&self, i: usize, j: usize) -> Matrix2<f64> {
        let b = self.data.fixed_view::<2, 2>(2 * i, 2 * j);
        Matrix2::new(b[(0, 0)], b[(0, 1)], b[(1, 0)], b[(1, 1)])
    }

    pub fn determinant(&self) -> f64 {
        self.data.determinant()
    }

    /// Direct sum: `self` occupies the leading modes, `other` the trailing ones.
    pub fn tensor(&self, other: &CovarianceMatrix) -> CovarianceMatrix {
        let n = self.data.nrows();
        let m = other.data.nrows();
        let mut data = DMatrix::zeros(n + m, n + m);
        data.view_mut((0, 0), (n, n)).copy_from(&self.data);
        data.view_mut((n, n), (m, m)).copy_from(&other.data);
        CovarianceMatrix {
            n_modes: self.n_modes + other.n_modes,
            data,
        }
    }

    /// Mixes two modes on a beamsplitter, returning `S Γ Sᵀ`.
    ///
    /// `mode_a` carries the transmitted output `√η a + √(1-η) b`,
    /// `mode_b` the reflected output `-√(1-η) a + √η b`.
    pub fn apply_beamsplitter(&self, bs: &Beamsplitter) -> Result<CovarianceMatrix> {
        for idx in [bs.mode_a, bs.mode_b] {
            if idx >= self.n_modes {
                return Err(Error::InvalidArgument(format!(
                    "beamsplitter mode {idx} out of range for {}-mode state",
                    self.n_modes
                )));
            }
        }
        let s = bs.symplectic_matrix(self.n_modes);
        Ok(Self::from_symmetric_part(&s * &self.data * s.transpose()))
    }

    /// Principal submatrix on `keep`, in the given order.
    ///
    /// Keeping every mode in a different order permutes the modes.
    pub fn reduce(&self, keep: &[usize]) -> Result<CovarianceMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidArgument("reduce needs at least one mode".into()));
        }
        for (k, &m) in keep.iter().enumerate() {
            if m >= self.n_modes {
                return Err(Error::InvalidArgument(format!(
                    "mode {m} out of range for {}-mode state",
                    self.n_modes
                )));
            }
            if keep[..k].contains(&m) {
                return Err(Error::InvalidArgument(format!("mode {m} listed twice")));
            }
        }
        let idx: Vec<usize> = keep.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
        let data = DMatrix::from_fn(idx.len(), idx.len(), |r, c| self.data[(idx[r], idx[c])]);
        Ok(CovarianceMatrix {
            n_modes: keep.len(),
            data,
        })
    }

    /// Relabels `x <-> p` on every mode simultaneously.
    pub fn swap_quadratures(&self) -> CovarianceMatrix {
        let dim = self.data.nrows();
        let flip = |i: usize| i ^ 1;
        let data = DMatrix::from_fn(dim, dim, |r, c| self.data[(flip(r), flip(c))]);
        CovarianceMatrix {
            n_modes: self.n_modes,
            data,
        }
    }

    /// Symplectic eigenvalues in descending order, one per mode.
    ///
    /// Computed as the square roots of the (doubly degenerate) eigenvalues of
    /// `Γ^{1/2} Ωᵀ Γ Ω Γ^{1/2}`. Values within [`PURITY_TOLERANCE`] below 1
    /// are reported as exactly 1.
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<f64>> {
        let root = symmetric_sqrt(&self.data)?;
        let omega = SymplecticForm::new(self.n_modes).into_matrix();
        let gram = &root * omega.transpose() * &self.data * &omega * &root;
        let gram = (&gram + gram.transpose()) * 0.5;
        let eig = gram
            .try_symmetric_eigen(f64::EPSILON, 0)
            .ok_or_else(|| Error::NumericFailure("symplectic eigensolve did not converge".into()))?;
        let mut squares: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        squares.sort_by(|a, b| b.total_cmp(a));
        let values = squares
            .chunks(2)
            .map(|pair| {
                let x = (0.5 * (pair[0] + pair[1])).max(0.0).sqrt();
                if (1.0 - PURITY_TOLERANCE..1.0).contains(&x) {
                    1.0
                } else {
                    x
                }
            })
            .collect();
        Ok(values)
    }

    /// Checks symmetry, positive definiteness and the uncertainty principle.
    pub fn validate_physicality(&self) -> Physicality {
        let scale = self.data.amax().max(1.0);
        let asym = (&self.data - self.data.transpose()).amax();
        if asym > SYMMETRY_TOLERANCE * scale {
            return Physicality::Fail(Violation::NotSymmetric { max_asymmetry: asym });
        }
        let min_eig = self
            .data
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min_eig.is_nan() || min_eig <= 0.0 {
            return Physicality::Fail(Violation::NotPositiveDefinite {
                min_eigenvalue: min_eig,
            });
        }
        match self.symplectic_eigenvalues() {
            Ok(values) => {
                let min = values.iter().copied().fold(f64::INFINITY, f64::min);
                if min < 1.0 - PURITY_TOLERANCE {
                    Physicality::Fail(Violation::BelowShotNoise {
                        min_symplectic_eigenvalue: min,
                    })
                } else {
                    Physicality::Pass
                }
            }
            Err(e) => Physicality::Fail(Violation::Numeric(e.to_string())),
        }
    }

    /// Returns `self` if physical, otherwise an `UnphysicalState` error.
    pub fn ensure_physical(self) -> Result<Self> {
        match self.validate_physicality() {
            Physicality::Pass => Ok(self),
            Physicality::Fail(v) => Err(Error::UnphysicalState(v.to_string())),
        }
    }
}

fn check_variance(what: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v < 1.0 {
        return Err(Error::UnphysicalState(format!(
            "{what} must be >= 1 SNU, got {v}"
        )));
    }
    Ok(())
}

fn symmetric_sqrt(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let eig = m
        .clone()
        .try_symmetric_eigen(f64::EPSILON, 0)
        .ok_or_else(|| Error::NumericFailure("eigensolve did not converge".into()))?;
    if let Some(bad) = eig.eigenvalues.iter().find(|&&l| l <= 0.0) {
        return Err(Error::NumericFailure(format!(
            "matrix is not positive definite (eigenvalue {bad:e})"
        )));
    }
    let roots = eig.eigenvalues.map(f64::sqrt);
    let v = &eig.eigenvectors;
    Ok(v * DMatrix::from_diagonal(&roots) * v.transpose())
}

/// Outcome of [`CovarianceMatrix::validate_physicality`].
#[derive(Debug, Clone, PartialEq)]
pub enum Physicality {
    Pass,
    Fail(Violation),
}

impl Physicality {
    pub fn is_pass(&self) -> bool {
        matches!(self, Physicality::Pass)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NotSymmetric { max_asymmetry: f64 },
    NotPositiveDefinite { min_eigenvalue: f64 },
    BelowShotNoise { min_symplectic_eigenvalue: f64 },
    Numeric(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSymmetric { max_asymmetry } => {
                write!(f, "not symmetric (max asymmetry {max_asymmetry:e})")
            }
            Violation::NotPositiveDefinite { min_eigenvalue } => {
                write!(f, "not positive definite (min eigenvalue {min_eigenvalue})")
            }
            Violation::BelowShotNoise {
                min_symplectic_eigenvalue,
            } => write!(
                f,
                "violates uncertainty principle (min symplectic eigenvalue {min_symplectic_eigenvalue})"
            ),
            Violation::Numeric(msg) => write!(f, "{msg}"),
        }
    }
}

/// The symplectic form `Ω = ⊕ [[0, 1], [-1, 0]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    matrix: DMatrix<f64>,
}

impl SymplecticForm {
    pub fn new(n_modes: usize) -> Self {
        let mut matrix = DMatrix::zeros(2 * n_modes, 2 * n_modes);
        for k in 0..n_modes {
            matrix[(2 * k, 2 * k + 1)] = 1.0;
            matrix[(2 * k + 1, 2 * k)] = -1.0;
        }
        Self { matrix }
    }

    pub fn n_modes(&self) -> usize {
        self.matrix.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }
}

/// Two-mode passive mixer with transmittance `η`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Beamsplitter {
    pub mode_a: usize,
    pub mode_b: usize,
    pub transmittance: f64,
}

impl Beamsplitter {
    pub fn new(mode_a: usize, mode_b: usize, transmittance: f64) -> Result<Self> {
        if mode_a == mode_b {
            return Err(Error::InvalidArgument(format!(
                "beamsplitter needs two distinct modes, got {mode_a} twice"
            )));
        }
        if !(0.0..=1.0).contains(&transmittance) {
            return Err(Error::InvalidArgument(format!(
                "transmittance must lie in [0, 1], got {transmittance}"
            )));
        }
        Ok(Self {
            mode_a,
            mode_b,
            transmittance,
        })
    }

    /// Full `2n x 2n` symplectic matrix acting on an `n`-mode state.
    pub fn symplectic_matrix(&self, n_modes: usize) -> DMatrix<f64> {
        let t = self.transmittance.sqrt();
        let r = (1.0 - self.transmittance).sqrt();
        let mut s = DMatrix::identity(2 * n_modes, 2 * n_modes);
        for q in 0..2 {
            let a = 2 * self.mode_a + q;
            let b = 2 * self.mode_b + q;
            s[(a, a)] = t;
            s[(a, b)] = r;
            s[(b, a)] = -r;
            s[(b, b)] = t;
        }
        s
    }
}
