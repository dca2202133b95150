use std::fs;
use std::path::PathBuf;

use thermokey::scenarios::{Param, ScenarioKind};
use thermokey::sweep::{parse_config, run_sweep, write_csv, FigurePreset, Output, SweepRange, SweepSpec};
use thermokey::Error;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn csv_text(spec: &SweepSpec) -> String {
    let mut out = Vec::new();
    write_csv(&run_sweep(spec), &mut out, None).unwrap();
    String::from_utf8(out).unwrap()
}

/// Set `UPDATE_GOLDEN=1` to rewrite the files after an intended change.
#[test]
fn presets_match_golden_configs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for preset in FigurePreset::ALL {
        for (branch, spec) in preset.expand() {
            let path = golden_dir().join(format!("{branch}.cfg"));
            let text = spec.to_config();
            if update {
                fs::write(&path, &text).unwrap();
            }
            let expect = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
            assert_eq!(text, expect, "{branch}");
            assert_eq!(parse_config(&expect).unwrap(), spec, "{branch} round trip");
        }
    }
}

#[test]
fn preset_branches() {
    let names = |p: FigurePreset| p.expand().into_iter().map(|(n, _)| n).collect::<Vec<_>>();
    assert_eq!(names(FigurePreset::Fig3), ["fig3"]);
    assert_eq!(names(FigurePreset::Fig6).len(), 5);
    assert_eq!(names(FigurePreset::Fig7).len(), 4);
    assert_eq!(names(FigurePreset::Fig8).len(), 4);
}

#[test]
fn fig3_columns_and_nullity() {
    let (_, spec) = FigurePreset::Fig3.expand().remove(0);
    let text = csv_text(&spec);
    let mut data = text.lines().filter(|l| !l.starts_with('#'));
    let header = data.next().unwrap();
    assert!(header.starts_with("eta_ab,cmi,mi,discord,"));
    assert!(header.ends_with(",status"));
    let rows: Vec<&str> = data.collect();
    assert_eq!(rows.len(), 99);
    for row in rows {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(*cells.last().unwrap(), "ok");
        for c in &cells[1..4] {
            assert!(c.parse::<f64>().unwrap().abs() <= 1e-9);
        }
    }
}

#[test]
fn fig6_branches_converge_at_unit_transmittance() {
    let ends: Vec<(f64, f64)> = FigurePreset::Fig6
        .expand()
        .into_iter()
        .map(|(_, spec)| {
            let t = run_sweep(&spec);
            let last = t.rows.last().unwrap();
            assert_eq!(last.value, 1.0);
            let v = last.outcome.as_ref().unwrap();
            (v.cmi.unwrap(), v.discord.unwrap())
        })
        .collect();
    for (c, d) in &ends {
        assert!((c - ends[0].0).abs() < 1e-9 && (d - ends[0].1).abs() < 1e-9);
    }
}

#[test]
fn seeded_sweeps_are_reproducible() {
    let cfg = "scenario=basic\nnu=10\nsweep=eta_ab:0.2:0.8:4\noutputs=g2,cmi\nseed=11\nsamples=20000\n";
    let spec = parse_config(cfg).unwrap();
    let first = csv_text(&spec);
    assert_eq!(first, csv_text(&spec));
    assert!(first.contains("# generator=chacha20"));
    let other = parse_config(&cfg.replace("seed=11", "seed=12")).unwrap();
    assert_ne!(first, csv_text(&other));
}

#[test]
fn unseeded_output_records_no_seed() {
    let spec = parse_config("scenario=basic\nsweep=eta_ab:3\noutputs=cmi\n").unwrap();
    let text = csv_text(&spec);
    assert!(text.contains("# seed=none"));
    assert!(!text.contains("generated_unix"));
}

#[test]
fn config_errors_carry_line_numbers() {
    let cases = [
        ("scenario=basic\nsweep=eta_ab:3\noutputs=cmi\nbogus=1\n", 4),
        ("scenario=basic\nscenario=full\nsweep=eta_ab:3\noutputs=cmi\n", 2),
        ("scenario=basic\nnu=abc\nsweep=eta_ab:3\noutputs=cmi\n", 2),
        ("scenario=basic\nsweep=nu:1\noutputs=cmi\n", 2),
        ("scenario=basic\nsweep=eta_ab:0.9:0.1:3\noutputs=cmi\n", 2),
        ("scenario=basic\nnu=0.5\nsweep=eta_ab:3\noutputs=cmi\n", 2),
    ];
    for (text, line) in cases {
        match parse_config(text) {
            Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
}

#[test]
fn seed_must_match_g2_output() {
    for text in [
        "scenario=basic\nsweep=eta_ab:3\noutputs=g2\n",
        "scenario=basic\nsweep=eta_ab:3\noutputs=cmi\nseed=3\n",
        "scenario=basic\nnu=2\nsweep=nu:2:3:3\noutputs=cmi\n",
    ] {
        assert!(parse_config(text).is_err(), "{text:?}");
    }
}

#[test]
fn swept_values_hit_both_endpoints() {
    let r = SweepRange::new(Param::EtaTh, 0.01, 1.0, 100).unwrap();
    let v = r.values();
    assert_eq!((v[0], v[99]), (0.01, 1.0));
    assert!(v.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn failing_points_keep_row_width() {
    let spec = SweepSpec::new(
        ScenarioKind::Basic,
        vec![(Param::Nu, 1.0)],
        SweepRange::new(Param::EtaAb, 0.1, 0.9, 3).unwrap(),
        vec![Output::G2],
        Some(1),
    )
    .unwrap()
    .with_samples(5_000)
    .unwrap();
    let table = run_sweep(&spec);
    let text = csv_text(&spec);
    let lines: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    let width = lines[0].split(',').count();
    assert!(lines.iter().all(|l| l.split(',').count() == width));
    assert_eq!(table.rows.len(), 3);
}
