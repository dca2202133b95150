use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use super::{Output, SweepTable};
use crate::error::{Error, Result};

const SIGNIFICANT_DIGITS: i32 = 12;

/// `%.12g`-style formatting: 12 significant digits, trailing zeros trimmed,
/// exponent notation outside `[1e-5, 1e12)`.
pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", (SIGNIFICANT_DIGITS - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIGNIFICANT_DIGITS).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn header(table: &SweepTable) -> Vec<String> {
    let spec = &table.spec;
    let mut cols = vec![spec.swept().param.name().to_string()];
    for o in spec.outputs() {
        match o {
            Output::G2 => cols.extend(["g2", "g2_std_error", "g2_analytic", "g2_verdict"].map(String::from)),
            other => cols.push(other.name().to_string()),
        }
    }
    if spec.wants(Output::Cmi) {
        cols.extend(["h_as", "h_bs", "h_s", "h_abs"].map(String::from));
    }
    if spec.wants(Output::Discord) {
        cols.extend(["s_a", "s_ab", "s_b_given_a", "homodyne_angle"].map(String::from));
    }
    cols.push("status".into());
    cols
}

fn opt(v: Option<f64>) -> String {
    v.map(format_number).unwrap_or_default()
}

fn record(table: &SweepTable, row: &super::SweepRow, width: usize) -> Vec<String> {
    let spec = &table.spec;
    let mut rec = vec![format_number(row.value)];
    match &row.outcome {
        Ok(v) => {
            for o in spec.outputs() {
                match o {
                    Output::Cmi => rec.push(opt(v.cmi)),
                    Output::Mi => rec.push(opt(v.mi)),
                    Output::Discord => rec.push(opt(v.discord)),
                    Output::G2 => {
                        let g = v.g2.as_ref();
                        rec.push(opt(g.map(|g| g.g2_estimate)));
                        rec.push(opt(g.map(|g| g.std_error)));
                        rec.push(opt(g.and_then(|g| g.g2_analytic)));
                        rec.push(g.map(|g| g.verdict.to_string()).unwrap_or_default());
                    }
                }
            }
            if let Some(t) = &v.entropy_terms {
                rec.extend([t.h_as, t.h_bs, t.h_s, t.h_abs].map(format_number));
            }
            if let Some(d) = &v.discord_terms {
                rec.extend([d.s_a, d.s_ab, d.conditional_entropy, d.angle].map(format_number));
            }
            rec.push("ok".into());
        }
        Err(e) => {
            rec.resize(width - 1, String::new());
            rec.push(format!("error: {e}"));
        }
    }
    rec
}

/// Writes the metadata block and the table.
///
/// `timestamp` is the only line allowed to differ between runs of the same spec;
/// `None` omits it.
pub fn write_csv<W: Write>(table: &SweepTable, mut out: W, timestamp: Option<u64>) -> Result<()> {
    if table.rows.is_empty() {
        return Err(Error::Usage("refusing to write an empty table".into()));
    }
    writeln!(out, "# thermokey {}", env!("CARGO_PKG_VERSION"))?;
    for line in table.spec.to_config().lines() {
        writeln!(out, "# {line}")?;
    }
    match table.spec.seed() {
        Some(_) => writeln!(out, "# generator={}", crate::hbt::GENERATOR_ID)?,
        None => writeln!(out, "# seed=none")?,
    }
    if let Some(ts) = timestamp {
        writeln!(out, "# generated_unix={ts}")?;
    }
    let cols = header(table);
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(&cols)?;
    for row in &table.rows {
        w.write_record(record(table, row, cols.len()))?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `table` to `destination` with a current timestamp line.
pub fn emit_csv(table: &SweepTable, destination: &Path) -> Result<()> {
    if table.rows.is_empty() {
        return Err(Error::Usage("refusing to write an empty table".into()));
    }
    let file = File::create(destination)
        .map_err(|e| Error::Io(format!("{}: {e}", destination.display())))?;
    let now = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let mut out = BufWriter::new(file);
    write_csv(table, &mut out, Some(now))?;
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::{Param, ScenarioKind};
    use crate::sweep::{run_sweep, SweepRange, SweepSpec};

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(0.5), "0.5");
        assert_eq!(format_number(1040.0), "1040");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_number(-2.0 / 3.0), "-0.666666666667");
        assert_eq!(format_number(123456.789), "123456.789");
        assert_eq!(format_number(1.5e-7), "1.5e-7");
        assert_eq!(format_number(0.49000000000000005), "0.49");
        assert_eq!(format_number(2.5e13), "2.5e13");
    }

    fn table() -> SweepTable {
        let spec = SweepSpec::new(
            ScenarioKind::Basic,
            vec![(Param::Nu, 1.0)],
            SweepRange::with_default_limits(Param::EtaAb, 3).unwrap(),
            vec![Output::Cmi, Output::Mi, Output::Discord],
            None,
        )
        .unwrap();
        run_sweep(&spec)
    }

    #[test]
    fn layout() {
        let mut buf = Vec::new();
        write_csv(&table(), &mut buf, None).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(!text.contains('\r'));
        let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert!(body[0].starts_with("eta_ab,cmi,mi,discord,"));
        assert!(body[0].ends_with(",status"));
        assert_eq!(body.len(), 4);
        assert!(body[1].starts_with("0.01,0,0,0,"));
        assert!(text.starts_with("# thermokey "));
    }

    #[test]
    fn failed_rows_keep_their_width() {
        let mut t = table();
        t.rows[1].outcome = Err(Error::NumericFailure("boom, badly".into()));
        let mut buf = Vec::new();
        write_csv(&t, &mut buf, None).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let width = rdr.headers().unwrap().len();
        let recs: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
        assert!(recs.iter().all(|r| r.len() == width));
        assert!(recs[1][width - 1].starts_with("error: numeric failure: boom"));
    }

    #[test]
    fn empty_table_is_rejected() {
        let mut t = table();
        t.rows.clear();
        assert!(matches!(write_csv(&t, Vec::new(), None), Err(Error::Usage(_))));
        let dir = tempfile::tempdir().unwrap();
        assert!(emit_csv(&t, &dir.path().join("x.csv")).is_err());
    }

    #[test]
    fn unwritable_destination() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("missing").join("out.csv");
        assert!(matches!(emit_csv(&table(), &path), Err(Error::Io(_))));
    }
}
