//! Parameter sweeps over the scenarios.
//!
//! A [`SweepSpec`] fixes a topology, some parameters and one swept parameter.
//! [`run_sweep`] evaluates every point in parallel and returns the rows in
//! ascending sweep order, so the table never depends on thread scheduling.

mod config;
mod output;
mod preset;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

pub use config::parse_config;
pub use output::{emit_csv, format_number, write_csv};
pub use preset::FigurePreset;

use crate::error::{Error, Result};
use crate::hbt::{g2_analytic, g2_cross_estimate, sample_quadratures, G2Report};
use crate::info::{
    conditional_mutual_information, gaussian_discord, mutual_information, Discord, EntropyTerms,
    Partition,
};
use crate::scenarios::{ModeLabel, Param, ScenarioKind, ScenarioParams};

/// Lower and upper default sweep limits for transmittances.
pub const DEFAULT_TRANSMITTANCE_RANGE: (f64, f64) = (0.01, 0.99);

pub const DEFAULT_G2_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Output {
    Cmi,
    Mi,
    Discord,
    G2,
}

impl Output {
    pub fn name(self) -> &'static str {
        match self {
            Output::Cmi => "cmi",
            Output::Mi => "mi",
            Output::Discord => "discord",
            Output::G2 => "g2",
        }
    }
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Output {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cmi" => Ok(Output::Cmi),
            "mi" => Ok(Output::Mi),
            "discord" => Ok(Output::Discord),
            "g2" => Ok(Output::G2),
            other => Err(Error::Usage(format!(
                "unknown output '{other}' (expected cmi, mi, discord or g2)"
            ))),
        }
    }
}

/// Inclusive, evenly spaced range for one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub param: Param,
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl SweepRange {
    pub fn new(param: Param, start: f64, end: f64, steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::Usage(format!("sweep needs at least 2 steps, got {steps}")));
        }
        if !(start < end) {
            return Err(Error::Usage(format!(
                "sweep range must be increasing, got {start}..{end}"
            )));
        }
        param.check(start).map_err(|e| Error::Usage(e.to_string()))?;
        param.check(end).map_err(|e| Error::Usage(e.to_string()))?;
        Ok(Self {
            param,
            start,
            end,
            steps,
        })
    }

    /// Transmittances default to `[0.01, 0.99]`; variances have no default.
    pub fn with_default_limits(param: Param, steps: usize) -> Result<Self> {
        if !param.is_transmittance() {
            return Err(Error::Usage(format!(
                "{param} is a variance; give an explicit range {param}:<start>:<end>:<steps>"
            )));
        }
        let (lo, hi) = DEFAULT_TRANSMITTANCE_RANGE;
        Self::new(param, lo, hi, steps)
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                if k == self.steps - 1 {
                    self.end
                } else {
                    self.start + (self.end - self.start) * k as f64 / last
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    scenario: ScenarioKind,
    fixed: Vec<(Param, f64)>,
    swept: SweepRange,
    outputs: Vec<Output>,
    seed: Option<u64>,
    samples: usize,
}

impl SweepSpec {
    pub fn new(
        scenario: ScenarioKind,
        mut fixed: Vec<(Param, f64)>,
        swept: SweepRange,
        mut outputs: Vec<Output>,
        seed: Option<u64>,
    ) -> Result<Self> {
        fixed.sort_by_key(|(p, _)| *p);
        if let Some(w) = fixed.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::Usage(format!("parameter {} fixed twice", w[0].0)));
        }
        if fixed.iter().any(|(p, _)| *p == swept.param) {
            return Err(Error::Usage(format!(
                "parameter {} is both fixed and swept",
                swept.param
            )));
        }
        for (p, v) in &fixed {
            p.check(*v).map_err(|e| Error::Usage(e.to_string()))?;
        }
        if outputs.is_empty() {
            return Err(Error::Usage("no outputs requested".into()));
        }
        let n = outputs.len();
        outputs.sort();
        outputs.dedup();
        if outputs.len() != n {
            return Err(Error::Usage("output listed twice".into()));
        }
        let wants_g2 = outputs.contains(&Output::G2);
        match (wants_g2, seed) {
            (true, None) => return Err(Error::Usage("g2 output requires a seed".into())),
            (false, Some(_)) => {
                return Err(Error::Usage("seed is only meaningful with the g2 output".into()))
            }
            _ => {}
        }
        Ok(Self {
            scenario,
            fixed,
            swept,
            outputs,
            seed,
            samples: DEFAULT_G2_SAMPLES,
        })
    }

    /// Sample count per point for the g2 output.
    pub fn with_samples(mut self, samples: usize) -> Result<Self> {
        if samples < crate::hbt::MIN_G2_SAMPLES {
            return Err(Error::Usage(format!(
                "samples must be at least {}, got {samples}",
                crate::hbt::MIN_G2_SAMPLES
            )));
        }
        self.samples = samples;
        Ok(self)
    }

    pub fn scenario(&self) -> ScenarioKind {
        self.scenario
    }

    pub fn fixed(&self) -> &[(Param, f64)] {
        &self.fixed
    }

    pub fn swept(&self) -> &SweepRange {
        &self.swept
    }

    pub fn outputs(&self) -> &[Output] {
        &self.outputs
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    fn wants(&self, o: Output) -> bool {
        self.outputs.contains(&o)
    }

    /// Parameters at one sweep value, starting from [`ScenarioParams::default`].
    pub fn params_at(&self, value: f64) -> ScenarioParams {
        let mut p = ScenarioParams::default();
        for &(param, v) in &self.fixed {
            p.set(param, v);
        }
        p.with(self.swept.param, value)
    }

    /// The spec in the flat `key=value` config format accepted by [`parse_config`].
    pub fn to_config(&self) -> String {
        let mut lines = vec![format!("scenario={}", self.scenario)];
        lines.extend(
            self.fixed
                .iter()
                .map(|(p, v)| format!("{p}={}", format_number(*v))),
        );
        lines.push(format!(
            "sweep={}:{}:{}:{}",
            self.swept.param,
            format_number(self.swept.start),
            format_number(self.swept.end),
            self.swept.steps
        ));
        let outs: Vec<&str> = self.outputs.iter().map(|o| o.name()).collect();
        lines.push(format!("outputs={}", outs.join(",")));
        if let Some(seed) = self.seed {
            lines.push(format!("seed={seed}"));
            lines.push(format!("samples={}", self.samples));
        }
        let mut text = lines.join("\n");
        text.push('\n');
        text
    }
}

/// Values computed at one sweep point; `None` where the output was not requested.
#[derive(Debug, Clone, PartialEq)]
pub struct PointValues {
    pub cmi: Option<f64>,
    pub mi: Option<f64>,
    pub discord: Option<f64>,
    pub entropy_terms: Option<EntropyTerms>,
    pub discord_terms: Option<Discord>,
    pub g2: Option<G2Report>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub outcome: std::result::Result<PointValues, Error>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn failed_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.outcome.is_err()).count()
    }

    pub fn all_failed(&self) -> bool {
        !self.rows.is_empty() && self.failed_rows() == self.rows.len()
    }

    /// Column of a requested scalar output, `None` for failed rows.
    pub fn column(&self, output: Output) -> Vec<Option<f64>> {
        self.rows
            .iter()
            .map(|r| {
                r.outcome.as_ref().ok().and_then(|v| match output {
                    Output::Cmi => v.cmi,
                    Output::Mi => v.mi,
                    Output::Discord => v.discord,
                    Output::G2 => v.g2.as_ref().map(|g| g.g2_estimate),
                })
            })
            .collect()
    }
}

fn evaluate_point(spec: &SweepSpec, index: usize, value: f64) -> Result<PointValues> {
    let scenario = spec.scenario.build(&spec.params_at(value))?;
    let eba = scenario.reduce(&[ModeLabel::E, ModeLabel::B, ModeLabel::A])?;
    let (s, b, a) = (0, 1, 2);
    let mut out = PointValues {
        cmi: None,
        mi: None,
        discord: None,
        entropy_terms: None,
        discord_terms: None,
        g2: None,
    };
    if spec.wants(Output::Cmi) {
        let p = Partition::new(vec![a], vec![b], vec![s])?;
        out.entropy_terms = Some(EntropyTerms::compute(&eba, &p)?);
        out.cmi = Some(conditional_mutual_information(&eba, &p)?);
    }
    if spec.wants(Output::Mi) {
        out.mi = Some(mutual_information(&eba, &Partition::bipartite(vec![a], vec![b])?)?);
    }
    if spec.wants(Output::Discord) {
        let d = gaussian_discord(&eba, a, b)?;
        out.discord = Some(d.value);
        out.discord_terms = Some(d);
    }
    if spec.wants(Output::G2) {
        let seed = spec.seed.unwrap_or_default().wrapping_add(index as u64);
        let pair = eba.reduce(&[a, b])?;
        let samples = sample_quadratures(&pair, spec.samples, seed)?;
        let mut report = g2_cross_estimate(&samples, 0, 1)?;
        report.g2_analytic = g2_analytic(&pair, 0, 1).ok();
        out.g2 = Some(report);
    }
    Ok(out)
}

/// Evaluates every point of `spec`. Failures are recorded per row.
pub fn run_sweep(spec: &SweepSpec) -> SweepTable {
    let values = spec.swept.values();
    let mut rows: Vec<SweepRow> = values
        .par_iter()
        .enumerate()
        .map(|(i, &value)| SweepRow {
            value,
            outcome: evaluate_point(spec, i, value),
        })
        .collect();
    rows.sort_by(|a, b| a.value.total_cmp(&b.value));
    SweepTable {
        spec: spec.clone(),
        rows,
    }
}
