use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use thermokey::hbt::{g2_check, sample_quadratures, G2Report};
use thermokey::scenarios::{ModeLabel, ScenarioKind, ScenarioParams};
use thermokey::sweep::{emit_csv, parse_config, run_sweep, FigurePreset, SweepTable};
use thermokey::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_NUMERIC: u8 = 2;

#[derive(Parser)]
#[command(name = "thermokey", version, about = "Thermal-state central broadcast key distribution model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep described by a key=value config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Regenerate a figure dataset (one CSV per branch).
    Figure {
        /// fig3, fig4, fig5, fig6, fig7 or fig8
        #[arg(long)]
        name: String,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Simulate the g2(0) thermality check on a scenario.
    G2check {
        /// basic, thermal_channel or full
        #[arg(long)]
        scenario: String,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        nu: f64,
        #[arg(long, default_value_t = 0.5)]
        eta_ab: f64,
        #[arg(long, default_value_t = 1.0)]
        eta_th: f64,
        #[arg(long, default_value_t = 1.0)]
        v_th: f64,
        #[arg(long, default_value_t = 1.0)]
        eta_th_a: f64,
        #[arg(long, default_value_t = 1.0)]
        v_alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        eta_th_b: f64,
        #[arg(long, default_value_t = 1.0)]
        v_beta: f64,
        /// First mode label; equal labels select the auto-correlation.
        #[arg(long, default_value = "A")]
        mode_a: String,
        #[arg(long, default_value = "B")]
        mode_b: String,
        /// Also write the quadrature samples of the two modes to this CSV.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NumericFailure(_) | Error::UndefinedResult(_) => Failure::Numeric(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn summarize(label: &str, table: &SweepTable) -> Result<(), Failure> {
    let failed = table.failed_rows();
    if failed > 0 {
        eprintln!("{label}: {failed} of {} points failed", table.rows.len());
    }
    if table.all_failed() {
        return Err(Failure::Numeric(format!("{label}: every sweep point failed")));
    }
    Ok(())
}

fn print_report(r: &G2Report) {
    println!("g2_estimate={}", r.g2_estimate);
    println!("std_error={}", r.std_error);
    match r.g2_analytic {
        Some(g) => println!("g2_analytic={g}"),
        None => println!("g2_analytic=undefined"),
    }
    println!("n_samples={}", r.n_samples);
    println!("seed={}", r.seed);
    println!("generator={}", r.generator);
    println!("shard_plan={}", r.shard_plan);
    println!("verdict={}", r.verdict);
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Sweep { config, out } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| Failure::Usage(format!("{}: {e}", config.display())))?;
            let spec = parse_config(&text)?;
            let table = run_sweep(&spec);
            emit_csv(&table, &out)?;
            summarize(&out.display().to_string(), &table)
        }
        Command::Figure { name, out_dir } => {
            let preset: FigurePreset = name.parse()?;
            fs::create_dir_all(&out_dir)
                .map_err(|e| Failure::Usage(format!("{}: {e}", out_dir.display())))?;
            let mut outcome = Ok(());
            for (branch, spec) in preset.expand() {
                let path = out_dir.join(format!("{branch}.csv"));
                let table = run_sweep(&spec);
                emit_csv(&table, &path)?;
                println!("{}", path.display());
                if let Err(e) = summarize(&branch, &table) {
                    outcome = Err(e);
                }
            }
            outcome
        }
        Command::G2check {
            scenario,
            samples,
            seed,
            nu,
            eta_ab,
            eta_th,
            v_th,
            eta_th_a,
            v_alpha,
            eta_th_b,
            v_beta,
            mode_a,
            mode_b,
            dump,
        } => {
            let kind: ScenarioKind = scenario.parse()?;
            let params = ScenarioParams {
                nu,
                eta_ab,
                eta_th,
                v_th,
                eta_th_a,
                v_alpha,
                eta_th_b,
                v_beta,
            };
            let state = kind.build(&params)?;
            let a = state.index_of(mode_a.parse::<ModeLabel>()?)?;
            let b = state.index_of(mode_b.parse::<ModeLabel>()?)?;
            if let Some(path) = dump {
                let modes = if a == b { vec![a] } else { vec![a, b] };
                let names: Vec<String> = modes.iter().map(|&m| state.labels()[m].to_string()).collect();
                let reduced = state.state().reduce(&modes)?;
                let draws = sample_quadratures(&reduced, samples, seed)?;
                let file = fs::File::create(&path)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                draws.write_csv(std::io::BufWriter::new(file), Some(&names))?;
            }
            let report = g2_check(state.state(), a, b, samples, seed)?;
            print_report(&report);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_NUMERIC)
        }
    }
}
