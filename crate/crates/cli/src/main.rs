//! Command-line front end: run scenario files, generate instances, or run
//! a generated suite across every scenario kind.
//!
//! Exit codes: 0 when every report passes, 1 when some checked claim
//! fails, 2 for malformed input (unparsable records, schema violations,
//! empty scenario files, unusable arguments).

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use raisonnier_cli::{
    generate_instance, run_scenario, Format, Kind, Scenario, ScenarioError, Status,
    DEFAULT_HORIZON, DEFAULT_SIZE, EXIT_FAIL, EXIT_OK, EXIT_SCHEMA,
};

#[derive(Parser)]
#[command(
    name = "raisonnier",
    version,
    about = "Scenario runner for finite combinatorics on words"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every scenario in a line-delimited JSON file, reporting in input order.
    Run {
        /// Scenario file: one JSON record per line.
        file: PathBuf,
        /// Fallback seed for scenarios that carry neither payload nor seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Fallback horizon for seeded scenarios that do not fix one.
        #[arg(long)]
        horizon: Option<u64>,
        /// Report format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write reports here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate one scenario of the given kind from a seed.
    Gen {
        /// Scenario kind.
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Size of the generated instance; 0 yields a minimal one.
        #[arg(long, default_value_t = DEFAULT_SIZE)]
        size: u64,
        /// Word-length budget for the generated instance.
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u64,
        /// Write the scenario here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate and run two instances of every scenario kind.
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Size of the generated instances; 0 yields minimal ones.
        #[arg(long, default_value_t = DEFAULT_SIZE)]
        size: u64,
        /// Word-length budget for the generated instances.
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u64,
        /// Report format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write reports here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn open_sink(out: &Option<PathBuf>) -> std::io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(fs::File::create(path)?),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn render_error(format: Format, line: usize, message: &str) -> String {
    match format {
        Format::Json => {
            serde_json::to_string(&serde_json::json!({ "line": line, "error": message }))
                .expect("error records serialize")
        }
        Format::Text => format!("ERROR line {line}: {message}"),
    }
}

fn run_file(
    file: &PathBuf,
    seed: Option<u64>,
    horizon: Option<u64>,
    format: Format,
    out: &Option<PathBuf>,
) -> std::io::Result<u8> {
    let content = match fs::read_to_string(file) {
        Ok(content) => content,
        Err(e) => {
            eprintln!("cannot read {}: {e}", file.display());
            return Ok(EXIT_SCHEMA);
        }
    };
    let lines: Vec<(usize, &str)> = content
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    if lines.is_empty() {
        eprintln!("{} holds no scenarios", file.display());
        return Ok(EXIT_SCHEMA);
    }
    let mut sink = open_sink(out)?;
    let mut worst = EXIT_OK;
    for (line_no, line) in lines {
        match serde_json::from_str::<Scenario>(line) {
            Err(e) => {
                worst = EXIT_SCHEMA;
                writeln!(sink, "{}", render_error(format, line_no, &e.to_string()))?;
            }
            Ok(mut scenario) => {
                scenario.seed = scenario.seed.or(seed);
                scenario.horizon = scenario.horizon.or(horizon);
                match run_scenario(&scenario) {
                    Ok(report) => {
                        if report.status == Status::Fail {
                            worst = worst.max(EXIT_FAIL);
                        }
                        writeln!(sink, "{}", report.render(format))?;
                    }
                    Err(ScenarioError::Schema(message)) => {
                        worst = EXIT_SCHEMA;
                        writeln!(sink, "{}", render_error(format, line_no, &message))?;
                    }
                }
            }
        }
    }
    sink.flush()?;
    Ok(worst)
}

fn run_gen(
    kind: Kind,
    seed: u64,
    size: u64,
    horizon: u64,
    out: &Option<PathBuf>,
) -> std::io::Result<u8> {
    match generate_instance(kind, seed, size, horizon) {
        Ok(scenario) => {
            let mut sink = open_sink(out)?;
            writeln!(
                sink,
                "{}",
                serde_json::to_string(&scenario).expect("scenarios serialize")
            )?;
            sink.flush()?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            eprintln!("{e}");
            Ok(EXIT_SCHEMA)
        }
    }
}

fn run_suite(
    seed: u64,
    size: u64,
    horizon: u64,
    format: Format,
    out: &Option<PathBuf>,
) -> std::io::Result<u8> {
    let mut sink = open_sink(out)?;
    let mut worst = EXIT_OK;
    let mut offset = 0u64;
    for kind in Kind::ALL {
        for _ in 0..2 {
            let scenario = match generate_instance(kind, seed.wrapping_add(offset), size, horizon) {
                Ok(scenario) => scenario,
                Err(e) => {
                    worst = EXIT_SCHEMA;
                    writeln!(
                        sink,
                        "{}",
                        render_error(format, offset as usize, &e.to_string())
                    )?;
                    offset += 1;
                    continue;
                }
            };
            match run_scenario(&scenario) {
                Ok(report) => {
                    if report.status == Status::Fail {
                        worst = worst.max(EXIT_FAIL);
                    }
                    writeln!(sink, "{}", report.render(format))?;
                }
                Err(ScenarioError::Schema(message)) => {
                    worst = EXIT_SCHEMA;
                    writeln!(sink, "{}", render_error(format, offset as usize, &message))?;
                }
            }
            offset += 1;
        }
    }
    sink.flush()?;
    Ok(worst)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run {
            file,
            seed,
            horizon,
            format,
            out,
        } => run_file(file, *seed, *horizon, *format, out),
        Command::Gen {
            kind,
            seed,
            size,
            horizon,
            out,
        } => run_gen(*kind, *seed, *size, *horizon, out),
        Command::Suite {
            seed,
            size,
            horizon,
            format,
            out,
        } => run_suite(*seed, *size, *horizon, *format, out),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("i/o failure: {e}");
            ExitCode::from(EXIT_SCHEMA)
        }
    }
}
