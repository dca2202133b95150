//! Flat `key=value` sweep configuration.
//!
//! ```text
//! # comment
//! scenario=basic
//! nu=2
//! sweep=eta_ab:0.01:0.99:99
//! outputs=cmi,discord
//! ```
//!
//! Keys are case-sensitive and may appear once. `sweep` takes either
//! `<param>:<start>:<end>:<steps>` or, for transmittances, `<param>:<steps>`
//! over the default `[0.01, 0.99]`. `seed` (and optionally `samples`) are
//! required with the `g2` output and rejected otherwise.

use std::collections::HashSet;

use super::{Output, SweepRange, SweepSpec};
use crate::error::{Error, Result};
use crate::scenarios::{Param, ScenarioKind};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_f64(line: usize, key: &str, text: &str) -> Result<f64> {
    text.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| parse_err(line, format!("{key}: malformed number '{text}'")))
}

fn parse_usize(line: usize, key: &str, text: &str) -> Result<usize> {
    text.trim()
        .parse::<usize>()
        .map_err(|_| parse_err(line, format!("{key}: malformed integer '{text}'")))
}

fn parse_sweep(line: usize, value: &str) -> Result<SweepRange> {
    let parts: Vec<&str> = value.split(':').collect();
    let param: Param = parts[0]
        .trim()
        .parse()
        .map_err(|e: Error| parse_err(line, format!("sweep: {e}")))?;
    let range = match parts.len() {
        2 => SweepRange::with_default_limits(param, parse_usize(line, "sweep steps", parts[1])?),
        4 => SweepRange::new(
            param,
            parse_f64(line, "sweep start", parts[1])?,
            parse_f64(line, "sweep end", parts[2])?,
            parse_usize(line, "sweep steps", parts[3])?,
        ),
        _ => {
            return Err(parse_err(
                line,
                "sweep: expected <param>:<start>:<end>:<steps> or <param>:<steps>",
            ))
        }
    };
    range.map_err(|e| parse_err(line, format!("sweep: {e}")))
}

fn parse_outputs(line: usize, value: &str) -> Result<Vec<Output>> {
    value
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<Output>()
                .map_err(|e| parse_err(line, e.to_string()))
        })
        .collect()
}

/// Parses and fully validates a sweep configuration.
pub fn parse_config(text: &str) -> Result<SweepSpec> {
    let mut seen = HashSet::new();
    let mut scenario = None;
    let mut fixed = Vec::new();
    let mut swept = None;
    let mut outputs = None;
    let mut seed = None;
    let mut samples = None;
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("expected key=value, got '{content}'")))?;
        let (key, value) = (key.trim(), value.trim());
        if !seen.insert(key.to_string()) {
            return Err(parse_err(line, format!("duplicate key '{key}'")));
        }
        match key {
            "scenario" => {
                scenario = Some(
                    value
                        .parse::<ScenarioKind>()
                        .map_err(|e| parse_err(line, e.to_string()))?,
                )
            }
            "sweep" => swept = Some(parse_sweep(line, value)?),
            "outputs" => outputs = Some(parse_outputs(line, value)?),
            "seed" => {
                seed = Some(
                    value
                        .parse::<u64>()
                        .map_err(|_| parse_err(line, format!("seed: malformed integer '{value}'")))?,
                )
            }
            "samples" => samples = Some(parse_usize(line, key, value)?),
            _ => {
                let param: Param = key
                    .parse()
                    .map_err(|_| parse_err(line, format!("unknown key '{key}'")))?;
                let v = parse_f64(line, key, value)?;
                param.check(v).map_err(|e| parse_err(line, e.to_string()))?;
                fixed.push((param, v));
            }
        }
    }

    let end = last_line + 1;
    let scenario = scenario.ok_or_else(|| parse_err(end, "missing required key 'scenario'"))?;
    let swept = swept.ok_or_else(|| parse_err(end, "missing required key 'sweep'"))?;
    let outputs = outputs.ok_or_else(|| parse_err(end, "missing required key 'outputs'"))?;
    if samples.is_some() && seed.is_none() {
        return Err(parse_err(end, "'samples' only applies to the g2 output, which needs 'seed'"));
    }
    let spec = SweepSpec::new(scenario, fixed, swept, outputs, seed)?;
    match samples {
        Some(n) => spec.with_samples(n),
        None => Ok(spec),
    }
}
