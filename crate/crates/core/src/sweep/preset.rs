//! Sweeps that regenerate the published figure datasets.
//!
//! | preset | topology          | fixed                                        | swept              |
//! |--------|-------------------|----------------------------------------------|--------------------|
//! | fig3   | basic             | ν = 1                                        | η_ab ∈ [0.01,0.99] |
//! | fig4   | basic             | ν = 2                                        | η_ab ∈ [0.01,0.99] |
//! | fig5   | basic             | ν = 1040                                     | η_ab ∈ [0.01,0.99] |
//! | fig6   | thermal_channel   | ν = 2, η_ab = 0.5, V_th ∈ {1,2,10,100,500}   | η_th ∈ [0.01,1]    |
//! | fig7   | full              | η_th_a = η_th_b = 0.3, (ν, V_α=V_β) ∈ {(1,1),(2,1),(1,10),(2,10)} | η_ab ∈ [0.01,0.99] |
//! | fig8   | full              | as fig7                                      | as fig7            |
//!
//! fig7 reports `cmi`, fig8 reports `discord`. The x-axis of fig7/fig8 is not
//! labelled in the source figures; `η_ab` is an interpretation.

use std::fmt;
use std::str::FromStr;

use super::{Output, SweepRange, SweepSpec};
use crate::error::{Error, Result};
use crate::scenarios::{Param, ScenarioKind};

const SPLITTER_STEPS: usize = 99;
const CHANNEL_STEPS: usize = 100;

pub const FIG6_THERMAL_VARIANCES: [f64; 5] = [1.0, 2.0, 10.0, 100.0, 500.0];
pub const FIG7_NOISE_COMBINATIONS: [(f64, f64); 4] = [(1.0, 1.0), (2.0, 1.0), (1.0, 10.0), (2.0, 10.0)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigurePreset {
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
}

impl FigurePreset {
    pub const ALL: [FigurePreset; 6] = [
        FigurePreset::Fig3,
        FigurePreset::Fig4,
        FigurePreset::Fig5,
        FigurePreset::Fig6,
        FigurePreset::Fig7,
        FigurePreset::Fig8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigurePreset::Fig3 => "fig3",
            FigurePreset::Fig4 => "fig4",
            FigurePreset::Fig5 => "fig5",
            FigurePreset::Fig6 => "fig6",
            FigurePreset::Fig7 => "fig7",
            FigurePreset::Fig8 => "fig8",
        }
    }

    /// Named sweeps making up the preset, in a fixed order.
    pub fn expand(self) -> Vec<(String, SweepSpec)> {
        let splitter = || SweepRange::with_default_limits(Param::EtaAb, SPLITTER_STEPS).expect("static range");
        let basic = |nu: f64| {
            SweepSpec::new(
                ScenarioKind::Basic,
                vec![(Param::Nu, nu)],
                splitter(),
                vec![Output::Cmi, Output::Mi, Output::Discord],
                None,
            )
            .expect("static preset")
        };
        let legal_noise = |output: Output| {
            FIG7_NOISE_COMBINATIONS
                .iter()
                .map(|&(nu, v)| {
                    let spec = SweepSpec::new(
                        ScenarioKind::Full,
                        vec![
                            (Param::Nu, nu),
                            (Param::EtaTh, 1.0),
                            (Param::VTh, 1.0),
                            (Param::EtaThA, 0.3),
                            (Param::VAlpha, v),
                            (Param::EtaThB, 0.3),
                            (Param::VBeta, v),
                        ],
                        splitter(),
                        vec![output],
                        None,
                    )
                    .expect("static preset");
                    (format!("{}_nu{nu}_v{v}", self.name()), spec)
                })
                .collect()
        };
        match self {
            FigurePreset::Fig3 => vec![(self.name().into(), basic(1.0))],
            FigurePreset::Fig4 => vec![(self.name().into(), basic(2.0))],
            FigurePreset::Fig5 => vec![(self.name().into(), basic(1040.0))],
            FigurePreset::Fig6 => FIG6_THERMAL_VARIANCES
                .iter()
                .map(|&v_th| {
                    let spec = SweepSpec::new(
                        ScenarioKind::ThermalChannel,
                        vec![(Param::Nu, 2.0), (Param::EtaAb, 0.5), (Param::VTh, v_th)],
                        SweepRange::new(Param::EtaTh, 0.01, 1.0, CHANNEL_STEPS).expect("static range"),
                        vec![Output::Cmi, Output::Discord],
                        None,
                    )
                    .expect("static preset");
                    (format!("fig6_vth{v_th}"), spec)
                })
                .collect(),
            FigurePreset::Fig7 => legal_noise(Output::Cmi),
            FigurePreset::Fig8 => legal_noise(Output::Discord),
        }
    }
}

impl fmt::Display for FigurePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigurePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigurePreset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown figure '{s}' (expected fig3..fig8)")))
    }
}
