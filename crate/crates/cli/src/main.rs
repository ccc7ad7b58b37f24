//! `lcakit check <file>`: parse a definition file, run its directives and report.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lcakit::dsl::{self, DslError, ElabOptions, Report, RunOptions};
use rayon::prelude::*;

#[derive(Parser)]
#[command(
    name = "lcakit",
    version,
    about = "Checks for Lie conformal algebras and their operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every directive in a definition file.
    Check {
        file: PathBuf,
        /// Write the JSON report here.
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
        /// Largest cochain arity a directive may request.
        #[arg(long, value_name = "N", default_value_t = 4)]
        max_arity: usize,
        /// Seed for the random cochains of `cohomology` directives.
        #[arg(long, value_name = "S", default_value_t = 0)]
        seed: u64,
        /// Worker threads for directives; defaults to the number of CPUs.
        #[arg(long, value_name = "J")]
        jobs: Option<usize>,
        /// Random cochains per arity in `cohomology` directives.
        #[arg(long, value_name = "K", default_value_t = 8)]
        samples: usize,
        /// Add per-directive timings to the JSON report.
        #[arg(long)]
        timings: bool,
    },
    /// Print a definition file in canonical form.
    Fmt { file: PathBuf },
}

/// `path:line:col: message`, then the offending line with a caret.
fn diagnostic(path: &Path, src: &str, e: &DslError) -> String {
    let span = e.span();
    let mut out = format!("{}:{e}\n", path.display());
    if let Some(line) = src.lines().nth(span.line.saturating_sub(1)) {
        out.push_str(&format!(
            "  {line}\n  {}^\n",
            " ".repeat(span.col.saturating_sub(1))
        ));
    }
    out
}

fn max_degree() -> Result<Option<u64>, String> {
    match std::env::var("LCAKIT_MAX_DEGREE") {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| format!("LCAKIT_MAX_DEGREE must be a nonnegative integer, got `{s}`")),
        Err(_) => Ok(None),
    }
}

fn read(path: &Path) -> Result<String, ExitCode> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Fmt { file } => {
            let src = match read(&file) {
                Ok(s) => s,
                Err(code) => return code,
            };
            match dsl::parse(&src) {
                Ok(ast) => {
                    print!("{}", dsl::print(&ast));
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprint!("{}", diagnostic(&file, &src, &e));
                    ExitCode::from(2)
                }
            }
        }
        Command::Check {
            file,
            json,
            max_arity,
            seed,
            jobs,
            samples,
            timings,
        } => {
            let src = match read(&file) {
                Ok(s) => s,
                Err(code) => return code,
            };
            let elab = match max_degree() {
                Ok(max_degree) => ElabOptions { max_degree },
                Err(msg) => {
                    eprintln!("{msg}");
                    return ExitCode::from(2);
                }
            };
            let program = match dsl::parse(&src).and_then(|ast| dsl::elaborate(&ast, &elab)) {
                Ok(p) => p,
                Err(e) => {
                    eprint!("{}", diagnostic(&file, &src, &e));
                    return ExitCode::from(2);
                }
            };
            let options = RunOptions {
                max_arity,
                seed,
                samples,
            };
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(j) = jobs {
                pool = pool.num_threads(j.max(1));
            }
            let pool = match pool.build() {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("cannot start worker pool: {e}");
                    return ExitCode::from(2);
                }
            };
            let results = pool.install(|| {
                (0..program.directives.len())
                    .into_par_iter()
                    .map(|i| dsl::execute(&program, i, &options))
                    .collect()
            });
            let report = Report::assemble(src.as_bytes(), &program, &options, results);
            print!("{}", report.to_text());
            if let Some(out) = json {
                if let Err(e) = fs::write(&out, report.to_json(timings)) {
                    eprintln!("{}: {e}", out.display());
                    return ExitCode::from(2);
                }
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
