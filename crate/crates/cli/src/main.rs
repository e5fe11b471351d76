//! `zigzag`: analyze zigzag algebras of graphs from the command line.
//!
//! Exit codes: 0 when every applicable check passes, 1 on invalid input
//! (including bad command-line arguments), 2 when a formula check fails or an
//! internal invariant fires.

mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use zigzag_core::analysis::{self, AnalyzeOptions, SweepOptions};
use zigzag_core::exactlin::Field;

#[derive(Parser, Debug)]
#[command(name = "zigzag", version, about = "Derivations and HH^1 of zigzag algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Coefficient field: `rat` or `gf:<p>` with p prime.
    #[arg(long, default_value = "rat", value_parser = parse_field)]
    field: Field,
    /// Emit a single JSON document instead of the human-readable report.
    #[arg(long)]
    json: bool,
    /// Do not compute Jordan derivations (implied in characteristic 2).
    #[arg(long)]
    skip_jordan: bool,
    /// Suppress human-readable output and warnings.
    #[arg(long)]
    quiet: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full analysis of one graph file.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Analyze a batch of seeded random trees.
    Sweep {
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Print a basis of the derivation space of one graph's algebra.
    #[command(name = "dump-derivations", alias = "dump")]
    DumpDerivations {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse::<Field>().map_err(|e| e.to_string())
}

fn read_file(path: &PathBuf) -> Result<Vec<u8>, ExitCode> {
    std::fs::read(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(1)
    })
}

fn options(common: &Common) -> AnalyzeOptions {
    AnalyzeOptions {
        field: common.field,
        skip_jordan: common.skip_jordan,
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json<T: serde::Serialize>(value: &T) {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    emit(&text);
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(code as u8)
}

fn run_analyze(file: &PathBuf, common: &Common) -> ExitCode {
    let bytes = match read_file(file) {
        Ok(b) => b,
        Err(code) => return code,
    };
    match analysis::analyze_bytes(&bytes, &options(common)) {
        Ok(report) => {
            if !common.quiet {
                for w in &report.warnings {
                    eprintln!("warning: {w}");
                }
            }
            if common.json {
                print_json(&report);
            } else if !common.quiet {
                emit(&render::report(&report));
            }
            for name in report.failed_checks() {
                eprintln!("check failed: {name}");
            }
            exit(report.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit(e.exit_code())
        }
    }
}

fn run_sweep(count: usize, n_min: usize, n_max: usize, seed: u64, common: &Common) -> ExitCode {
    let opts = SweepOptions {
        count,
        n_min,
        n_max,
        seed,
        analyze: options(common),
    };
    let summary = match analysis::sweep(&opts) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return exit(e.exit_code());
        }
    };
    if common.json {
        print_json(&summary);
    } else {
        emit(&render::sweep(&summary, common.quiet));
    }
    for row in summary.rows.iter().filter(|r| !r.passed) {
        eprintln!("{}", render::failing_tree(row));
    }
    exit(summary.exit_code())
}

fn run_dump(file: &PathBuf, common: &Common) -> ExitCode {
    let bytes = match read_file(file) {
        Ok(b) => b,
        Err(code) => return code,
    };
    match render::derivation_dump(&bytes, common.field) {
        Ok(dump) => {
            if common.json {
                print_json(&dump);
            } else if !common.quiet {
                emit(&render::dump_text(&dump));
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit(e.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return exit(code);
        }
    };
    match &cli.command {
        Command::Analyze { file, common } => run_analyze(file, common),
        Command::Sweep {
            count,
            n_min,
            n_max,
            seed,
            common,
        } => run_sweep(*count, *n_min, *n_max, *seed, common),
        Command::DumpDerivations { file, common } => run_dump(file, common),
    }
}
