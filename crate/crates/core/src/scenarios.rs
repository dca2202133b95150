//! The three broadcast topologies.
//!
//! * `basic`: the source sends one arm of an EPR state onto the splitter
//!   `η_ab`, whose free port sees vacuum. Modes `(E, B, A)`.
//! * `thermal_channel`: a thermal channel (`η_th`, `V_th`) sits between the
//!   source and the splitter. Modes `(E, V, B, A)`.
//! * `full`: as above, plus thermal channels on Alice's (`η_th_a`, `V_α`)
//!   and Bob's (`η_th_b`, `V_β`) arms. Modes `(E, V, B, A, V_a, V_b)`.
//!
//! Every topology is built by composing [`CovarianceMatrix`] operations. The
//! [`closed_form`] module writes the same matrices out entry by entry so the
//! two routes can be checked against each other.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gaussian::{Beamsplitter, CovarianceMatrix, Physicality};
use crate::info::InfoReport;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioParams {
    /// Local variance of the source's EPR state (the source variance `V_e`).
    pub nu: f64,
    pub eta_ab: f64,
    pub eta_th: f64,
    pub v_th: f64,
    pub eta_th_a: f64,
    pub v_alpha: f64,
    pub eta_th_b: f64,
    pub v_beta: f64,
}

impl Default for ScenarioParams {
    /// Vacuum source, balanced splitter, noiseless channels.
    fn default() -> Self {
        Self {
            nu: 1.0,
            eta_ab: 0.5,
            eta_th: 1.0,
            v_th: 1.0,
            eta_th_a: 1.0,
            v_alpha: 1.0,
            eta_th_b: 1.0,
            v_beta: 1.0,
        }
    }
}

/// Names of the fields of [`ScenarioParams`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    Nu,
    EtaAb,
    EtaTh,
    VTh,
    EtaThA,
    VAlpha,
    EtaThB,
    VBeta,
}

impl Param {
    pub const ALL: [Param; 8] = [
        Param::Nu,
        Param::EtaAb,
        Param::EtaTh,
        Param::VTh,
        Param::EtaThA,
        Param::VAlpha,
        Param::EtaThB,
        Param::VBeta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::Nu => "nu",
            Param::EtaAb => "eta_ab",
            Param::EtaTh => "eta_th",
            Param::VTh => "v_th",
            Param::EtaThA => "eta_th_a",
            Param::VAlpha => "v_alpha",
            Param::EtaThB => "eta_th_b",
            Param::VBeta => "v_beta",
        }
    }

    pub fn is_transmittance(self) -> bool {
        matches!(
            self,
            Param::EtaAb | Param::EtaTh | Param::EtaThA | Param::EtaThB
        )
    }

    /// Checks `value` against this parameter's domain.
    pub fn check(self, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::InvalidArgument(format!("{} must be finite", self.name())));
        }
        if self.is_transmittance() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidArgument(format!(
                    "{} is a transmittance and must lie in [0, 1], got {value}",
                    self.name()
                )));
            }
        } else if value < 1.0 {
            return Err(Error::InvalidArgument(format!(
                "{} is a variance and must be >= 1 SNU, got {value}",
                self.name()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown parameter '{s}'")))
    }
}

impl ScenarioParams {
    pub fn get(&self, p: Param) -> f64 {
        match p {
            Param::Nu => self.nu,
            Param::EtaAb => self.eta_ab,
            Param::EtaTh => self.eta_th,
            Param::VTh => self.v_th,
            Param::EtaThA => self.eta_th_a,
            Param::VAlpha => self.v_alpha,
            Param::EtaThB => self.eta_th_b,
            Param::VBeta => self.v_beta,
        }
    }

    pub fn set(&mut self, p: Param, value: f64) {
        let slot = match p {
            Param::Nu => &mut self.nu,
            Param::EtaAb => &mut self.eta_ab,
            Param::EtaTh => &mut self.eta_th,
            Param::VTh => &mut self.v_th,
            Param::EtaThA => &mut self.eta_th_a,
            Param::VAlpha => &mut self.v_alpha,
            Param::EtaThB => &mut self.eta_th_b,
            Param::VBeta => &mut self.v_beta,
        };
        *slot = value;
    }

    pub fn with(mut self, p: Param, value: f64) -> Self {
        self.set(p, value);
        self
    }

    pub fn validate(&self) -> Result<()> {
        Param::ALL.iter().try_for_each(|&p| p.check(self.get(p)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeLabel {
    /// The source's retained EPR arm.
    E,
    /// Environment output of the source-side thermal channel.
    V,
    B,
    A,
    /// Environment output of Alice's channel.
    Va,
    /// Environment output of Bob's channel.
    Vb,
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModeLabel::E => "E",
            ModeLabel::V => "V",
            ModeLabel::B => "B",
            ModeLabel::A => "A",
            ModeLabel::Va => "V_a",
            ModeLabel::Vb => "V_b",
        })
    }
}

impl FromStr for ModeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "E" => Ok(ModeLabel::E),
            "V" => Ok(ModeLabel::V),
            "B" => Ok(ModeLabel::B),
            "A" => Ok(ModeLabel::A),
            "V_a" => Ok(ModeLabel::Va),
            "V_b" => Ok(ModeLabel::Vb),
            other => Err(Error::InvalidArgument(format!(
                "unknown mode label '{other}' (expected E, V, B, A, V_a or V_b)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioKind {
    Basic,
    ThermalChannel,
    Full,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Basic => "basic",
            ScenarioKind::ThermalChannel => "thermal_channel",
            ScenarioKind::Full => "full",
        }
    }

    pub fn build(self, params: &ScenarioParams) -> Result<ScenarioState> {
        match self {
            ScenarioKind::Basic => build_basic(params),
            ScenarioKind::ThermalChannel => build_thermal_channel(params),
            ScenarioKind::Full => build_full(params),
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "basic" => Ok(ScenarioKind::Basic),
            "thermal_channel" => Ok(ScenarioKind::ThermalChannel),
            "full" => Ok(ScenarioKind::Full),
            other => Err(Error::InvalidArgument(format!(
                "unknown scenario '{other}' (expected basic, thermal_channel or full)"
            ))),
        }
    }
}

/// A scenario covariance matrix with its mode labels.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioState {
    state: CovarianceMatrix,
    labels: Vec<ModeLabel>,
    params: ScenarioParams,
}

impl ScenarioState {
    fn new(state: CovarianceMatrix, labels: Vec<ModeLabel>, params: ScenarioParams) -> Result<Self> {
        debug_assert_eq!(state.n_modes(), labels.len());
        if let Physicality::Fail(v) = state.validate_physicality() {
            return Err(Error::UnphysicalState(format!("scenario state {v}")));
        }
        Ok(Self {
            state,
            labels,
            params,
        })
    }

    pub fn state(&self) -> &CovarianceMatrix {
        &self.state
    }

    pub fn labels(&self) -> &[ModeLabel] {
        &self.labels
    }

    pub fn params(&self) -> &ScenarioParams {
        &self.params
    }

    pub fn index_of(&self, label: ModeLabel) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or_else(|| Error::InvalidArgument(format!("scenario has no mode {label}")))
    }

    /// Reduced state on the given labels, in that order.
    pub fn reduce(&self, labels: &[ModeLabel]) -> Result<CovarianceMatrix> {
        let idx = labels
            .iter()
            .map(|&l| self.index_of(l))
            .collect::<Result<Vec<_>>>()?;
        self.state.reduce(&idx)
    }

    /// `I(A:B|E)`, `I(A:B)` and `D(B|A)` for this state.
    pub fn analyze(&self) -> Result<InfoReport> {
        let eba = self.reduce(&[ModeLabel::E, ModeLabel::B, ModeLabel::A])?;
        InfoReport::compute(&eba, 0, 1, 2)
    }
}

/// EPR arm through the splitter `η_ab` against vacuum. Modes `(E, B, A)`.
pub fn build_basic(params: &ScenarioParams) -> Result<ScenarioState> {
    params.validate()?;
    // (e, s) ⊗ vac -> (e, b, a)
    let state = CovarianceMatrix::epr(params.nu)?
        .tensor(&CovarianceMatrix::vacuum(1)?)
        .apply_beamsplitter(&Beamsplitter::new(1, 2, params.eta_ab)?)?;
    ScenarioState::new(
        state,
        vec![ModeLabel::E, ModeLabel::B, ModeLabel::A],
        *params,
    )
}

/// Modes `(E, V, B, A)`.
pub fn build_thermal_channel(params: &ScenarioParams) -> Result<ScenarioState> {
    params.validate()?;
    // (e, s) ⊗ th -> (e, s', v)
    let after_channel = CovarianceMatrix::epr(params.nu)?
        .tensor(&CovarianceMatrix::thermal(params.v_th)?)
        .apply_beamsplitter(&Beamsplitter::new(1, 2, params.eta_th)?)?;
    // (e, s', v) ⊗ vac -> (e, b, v, a)
    let split = after_channel
        .tensor(&CovarianceMatrix::vacuum(1)?)
        .apply_beamsplitter(&Beamsplitter::new(1, 3, params.eta_ab)?)?;
    ScenarioState::new(
        split.reduce(&[0, 2, 1, 3])?,
        vec![ModeLabel::E, ModeLabel::V, ModeLabel::B, ModeLabel::A],
        *params,
    )
}

/// Modes `(E, V, B, A, V_a, V_b)`.
pub fn build_full(params: &ScenarioParams) -> Result<ScenarioState> {
    let inner = build_thermal_channel(params)?;
    let (b, a) = (inner.index_of(ModeLabel::B)?, inner.index_of(ModeLabel::A)?);
    let (va, vb) = (4, 5);
    let state = inner
        .state
        .tensor(&CovarianceMatrix::thermal(params.v_alpha)?)
        .tensor(&CovarianceMatrix::thermal(params.v_beta)?)
        .apply_beamsplitter(&Beamsplitter::new(a, va, params.eta_th_a)?)?
        .apply_beamsplitter(&Beamsplitter::new(b, vb, params.eta_th_b)?)?;
    let mut labels = inner.labels;
    labels.extend([ModeLabel::Va, ModeLabel::Vb]);
    ScenarioState::new(state, labels, *params)
}

/// Reduced states entering `I(A:B|S)` and `D(B|A)`, with `S = E`.
#[derive(Debug, Clone, PartialEq)]
pub struct InformationBlocks {
    /// Modes `(E, A)`.
    pub gamma_as: CovarianceMatrix,
    /// Modes `(E, B)`.
    pub gamma_bs: CovarianceMatrix,
    /// Mode `E`.
    pub gamma_s: CovarianceMatrix,
    /// Modes `(E, B, A)`; the `(B, B)` block is `γ_b`.
    pub gamma_abs: CovarianceMatrix,
    /// Modes `(A, B)`.
    pub gamma_ab: CovarianceMatrix,
}

pub fn extract_information_blocks(s: &ScenarioState) -> Result<InformationBlocks> {
    use ModeLabel::{A, B, E};
    Ok(InformationBlocks {
        gamma_as: s.reduce(&[E, A])?,
        gamma_bs: s.reduce(&[E, B])?,
        gamma_s: s.reduce(&[E])?,
        gamma_abs: s.reduce(&[E, B, A])?,
        gamma_ab: s.reduce(&[A, B])?,
    })
}

/// Entry-by-entry transcriptions of the scenario matrices.
pub mod closed_form {
    use nalgebra::{DMatrix, Matrix2};

    use super::{ModeLabel, ScenarioParams};

    fn diag(x: f64, p: f64) -> Matrix2<f64> {
        Matrix2::new(x, 0.0, 0.0, p)
    }

    fn assemble(blocks: &[Vec<Matrix2<f64>>]) -> DMatrix<f64> {
        let n = blocks.len();
        let mut m = DMatrix::zeros(2 * n, 2 * n);
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                m.fixed_view_mut::<2, 2>(2 * i, 2 * j).copy_from(b);
            }
        }
        m
    }

    /// Modes `(E, B, A)`.
    pub fn basic(p: &ScenarioParams) -> DMatrix<f64> {
        let nu = p.nu;
        let zeta = (nu * nu - 1.0).sqrt();
        let eta = p.eta_ab;
        let se = eta.sqrt();
        let mu = (1.0 - eta).sqrt();
        let b = eta * nu + mu * mu;
        let a = mu * mu * nu + eta;
        let ab = mu * se * (1.0 - nu);
        #[rustfmt::skip]
        let m = DMatrix::from_row_slice(6, 6, &[
            nu,          0.0,         se * zeta,  0.0,        -mu * zeta, 0.0,
            0.0,         nu,          0.0,        -se * zeta, 0.0,        mu * zeta,
            se * zeta,   0.0,         b,          0.0,        ab,         0.0,
            0.0,         -se * zeta,  0.0,        b,          0.0,        ab,
            -mu * zeta,  0.0,         ab,         0.0,        a,          0.0,
            0.0,         mu * zeta,   0.0,        ab,         0.0,        a,
        ]);
        m
    }

    /// State after the source-side thermal channel, before the splitter.
    /// Modes `(E, S', V)`.
    pub fn thermal_channel_input(p: &ScenarioParams) -> DMatrix<f64> {
        let nu = p.nu;
        let zeta = (nu * nu - 1.0).sqrt();
        let (eta, v) = (p.eta_th, p.v_th);
        let se = eta.sqrt();
        let mu = (1.0 - eta).sqrt();
        let s = eta * nu + mu * mu * v;
        let vv = mu * mu * nu + eta * v;
        let sv = mu * se * (v - nu);
        #[rustfmt::skip]
        let m = DMatrix::from_row_slice(6, 6, &[
            nu,          0.0,         se * zeta,  0.0,        -mu * zeta, 0.0,
            0.0,         nu,          0.0,        -se * zeta, 0.0,        mu * zeta,
            se * zeta,   0.0,         s,          0.0,        sv,         0.0,
            0.0,         -se * zeta,  0.0,        s,          0.0,        sv,
            -mu * zeta,  0.0,         sv,         0.0,        vv,         0.0,
            0.0,         mu * zeta,   0.0,        sv,         0.0,        vv,
        ]);
        m
    }

    /// Modes `(E, V, B, A)`.
    pub fn thermal_channel(p: &ScenarioParams) -> DMatrix<f64> {
        let nu = p.nu;
        let zeta = (nu * nu - 1.0).sqrt();
        let (eta_th, v_th, eta_ab) = (p.eta_th, p.v_th, p.eta_ab);
        let mu_th = (1.0 - eta_th).sqrt();
        let mu_ab = (1.0 - eta_ab).sqrt();

        let v_v = mu_th * mu_th * nu + eta_th * v_th;
        let v_ab = eta_th * nu + mu_th * mu_th * v_th;
        let v_abv = mu_th * eta_th.sqrt() * (v_th - nu);

        let g_e = diag(nu, nu);
        let g_v = diag(v_v, v_v);
        let g_a = diag(mu_ab * mu_ab * v_ab + eta_ab, mu_ab * mu_ab * v_ab + eta_ab);
        let g_b = diag(eta_ab * v_ab + mu_ab * mu_ab, eta_ab * v_ab + mu_ab * mu_ab);
        let g_ev = diag(-mu_th * zeta, mu_th * zeta);
        let coupling = eta_ab.sqrt() * eta_th.sqrt() * zeta;
        let g_eb = diag(coupling, -coupling);
        let g_ea = diag(-mu_ab * eta_th.sqrt() * zeta, mu_ab * eta_th.sqrt() * zeta);
        let g_bv = diag(eta_ab.sqrt() * v_abv, eta_ab.sqrt() * v_abv);
        let g_av = diag(-mu_ab * v_abv, -mu_ab * v_abv);
        let ab = mu_ab * eta_ab.sqrt() * (1.0 - v_ab);
        let g_ab = diag(ab, ab);

        assemble(&[
            vec![g_e, g_ev, g_eb, g_ea],
            vec![g_ev, g_v, g_bv, g_av],
            vec![g_eb, g_bv, g_b, g_ab],
            vec![g_ea, g_av, g_ab, g_a],
        ])
    }

    /// The sub-blocks of the six-mode matrix that have closed forms:
    /// `γ_e, γ_a, γ_b, γ_eb, γ_ea, γ_ab`, keyed by label pair.
    ///
    /// The added noise on each legal arm enters with weight `1 - η`.
    pub fn full_blocks(p: &ScenarioParams) -> Vec<(ModeLabel, ModeLabel, Matrix2<f64>)> {
        use ModeLabel::{A, B, E};
        let nu = p.nu;
        let zeta = (nu * nu - 1.0).sqrt();
        let (eta_th, v_th, eta_ab) = (p.eta_th, p.v_th, p.eta_ab);
        let (eta_a, eta_b) = (p.eta_th_a, p.eta_th_b);
        let mu_th = (1.0 - eta_th).sqrt();
        let mu_ab = (1.0 - eta_ab).sqrt();
        let v_ab = eta_th * nu + mu_th * mu_th * v_th;

        let a = eta_a * (mu_ab * mu_ab * v_ab + eta_ab) + (1.0 - eta_a) * p.v_alpha;
        let b = eta_b * (eta_ab * v_ab + mu_ab * mu_ab) + (1.0 - eta_b) * p.v_beta;
        let eb = eta_b.sqrt() * eta_ab.sqrt() * eta_th.sqrt() * zeta;
        let ea = eta_a.sqrt() * mu_ab * eta_th.sqrt() * zeta;
        let ab = eta_a.sqrt() * eta_b.sqrt() * mu_ab * eta_ab.sqrt() * (1.0 - v_ab);
        vec![
            (E, E, diag(nu, nu)),
            (A, A, diag(a, a)),
            (B, B, diag(b, b)),
            (E, B, diag(eb, -eb)),
            (E, A, diag(-ea, ea)),
            (A, B, diag(ab, ab)),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Matrix2;

    fn params(nu: f64, eta_ab: f64) -> ScenarioParams {
        ScenarioParams {
            nu,
            eta_ab,
            ..Default::default()
        }
    }

    #[test]
    fn basic_vacuum_source_is_uncoupled() {
        let s = build_basic(&params(1.0, 0.3)).unwrap();
        let g = s.state();
        assert_eq!(s.labels(), &[ModeLabel::E, ModeLabel::B, ModeLabel::A]);
        for i in 0..3 {
            assert!((g.block(i, i) - Matrix2::identity()).amax() < 1e-15);
        }
        assert!(g.block(0, 1).amax() < 1e-15);
        assert!(g.block(0, 2).amax() < 1e-15);
    }

    #[test]
    fn basic_blocks_at_two_snu() {
        let s = build_basic(&params(2.0, 0.5)).unwrap();
        let b = s.state().block(1, 1);
        let ab = s.state().block(1, 2);
        assert!((b - Matrix2::new(1.5, 0.0, 0.0, 1.5)).amax() < 1e-14);
        assert!((ab - Matrix2::new(-0.5, 0.0, 0.0, -0.5)).amax() < 1e-14);
    }

    #[test]
    fn thermal_channel_environment_block() {
        let p = ScenarioParams {
            nu: 2.0,
            eta_th: 0.5,
            v_th: 3.0,
            ..Default::default()
        };
        let s = build_thermal_channel(&p).unwrap();
        let v = s.state().block(1, 1);
        assert!((v - Matrix2::new(2.5, 0.0, 0.0, 2.5)).amax() < 1e-14);
    }

    #[test]
    fn transparent_thermal_channel_matches_basic() {
        let p = ScenarioParams {
            nu: 3.0,
            eta_ab: 0.4,
            eta_th: 1.0,
            v_th: 50.0,
            ..Default::default()
        };
        let tc = build_thermal_channel(&p).unwrap();
        let basic = build_basic(&p).unwrap();
        let reduced = tc.reduce(&[ModeLabel::E, ModeLabel::B, ModeLabel::A]).unwrap();
        assert!((reduced.matrix() - basic.state().matrix()).amax() < 1e-12);
    }

    #[test]
    fn opaque_thermal_channel_cuts_the_source_off() {
        let p = ScenarioParams {
            nu: 3.0,
            eta_th: 0.0,
            v_th: 7.0,
            ..Default::default()
        };
        let s = build_thermal_channel(&p).unwrap();
        let blocks = extract_information_blocks(&s).unwrap();
        assert!(blocks.gamma_bs.block(0, 1).amax() < 1e-15);
        assert!(blocks.gamma_as.block(0, 1).amax() < 1e-15);
        // what reaches the splitter is thermal(V_th)
        let b = s.reduce(&[ModeLabel::B]).unwrap();
        assert!((b.matrix()[(0, 0)] - (0.5 * 7.0 + 0.5)).abs() < 1e-14);
    }

    #[test]
    fn transparent_legal_channels_embed_thermal_channel() {
        let p = ScenarioParams {
            nu: 2.0,
            eta_ab: 0.6,
            eta_th: 0.7,
            v_th: 4.0,
            v_alpha: 9.0,
            v_beta: 3.0,
            ..Default::default()
        };
        let full = build_full(&p).unwrap();
        let tc = build_thermal_channel(&p).unwrap();
        let inner = full
            .reduce(&[ModeLabel::E, ModeLabel::V, ModeLabel::B, ModeLabel::A])
            .unwrap();
        assert!((inner.matrix() - tc.state().matrix()).amax() < 1e-12);
        let env = full.reduce(&[ModeLabel::Va, ModeLabel::Vb]).unwrap();
        assert!((env.block(0, 0) - Matrix2::new(9.0, 0.0, 0.0, 9.0)).amax() < 1e-12);
    }

    #[test]
    fn information_blocks_of_basic() {
        let s = build_basic(&params(2.0, 0.5)).unwrap();
        let blocks = extract_information_blocks(&s).unwrap();
        assert_eq!(blocks.gamma_s, CovarianceMatrix::thermal(2.0).unwrap());
        let g = s.state();
        assert_eq!(blocks.gamma_as.block(0, 1), g.block(0, 2));
        assert_eq!(blocks.gamma_as.block(1, 1), g.block(2, 2));
        assert_eq!(blocks.gamma_abs, s.state().reduce(&[0, 1, 2]).unwrap());
        assert_eq!(blocks.gamma_abs.block(1, 1), g.block(1, 1));
    }

    #[test]
    fn missing_labels_are_reported() {
        let s = build_basic(&params(2.0, 0.5)).unwrap();
        assert!(matches!(
            s.index_of(ModeLabel::V),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn params_are_validated() {
        assert!(build_basic(&params(0.5, 0.5)).is_err());
        assert!(build_basic(&params(2.0, 1.5)).is_err());
        let p = ScenarioParams {
            v_alpha: 0.2,
            ..Default::default()
        };
        assert!(build_full(&p).is_err());
        assert!("nu".parse::<Param>().is_ok());
        assert!("V_e".parse::<Param>().is_err());
        assert_eq!("full".parse::<ScenarioKind>().unwrap(), ScenarioKind::Full);
    }
}
