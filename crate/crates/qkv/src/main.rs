use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qkv::scalars::Rational;
use qkv::verify::{self, dump, report, Backend, RunOptions};

#[derive(Parser)]
#[command(name = "qkv", version, about = "Exact verification of quaternionic-Kähler pointwise identities")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run registered checks.
    Verify {
        /// Check id or `all`.
        #[arg(long, default_value = "all")]
        check: String,
        /// `k` or `a..b`; defaults to each check's own range.
        #[arg(long)]
        n: Option<String>,
        #[arg(long, default_value = "exact")]
        backend: String,
        /// Tolerance for the float backend.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Worker threads.
        #[arg(long, env = "QKV_JOBS")]
        jobs: Option<usize>,
        /// Override λ² in the Killing scaling check, e.g. `41` or `81/2`.
        #[arg(long)]
        lambda_sq: Option<String>,
    },
    /// Spinor and primitive dimension tables.
    Dims {
        #[arg(long, default_value = "2..4")]
        n: String,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
    },
    /// Dump an operator in sparse-triplet form.
    Dump {
        #[arg(long)]
        operator: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("qkv: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.cmd {
        Cmd::Verify { check, n, backend, tol, format, jobs, lambda_sq } => {
            let backend: Backend = match backend.parse() {
                Ok(b) => b,
                Err(e) => return usage(e),
            };
            let range = match n.as_deref().map(verify::parse_n_range).transpose() {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            let lambda_sq = match lambda_sq.as_deref().map(str::parse::<Rational>).transpose() {
                Ok(l) => l,
                Err(e) => return usage(format!("bad --lambda-sq: {e}")),
            };
            let specs = match verify::expand_specs(&check, range, backend, tol) {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            let results = match verify::run_checks(&specs, &RunOptions { lambda_sq, jobs }) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            match format {
                Format::Json => print!("{}", report::to_json(&results)),
                Format::Markdown => print!("{}", report::to_markdown(&results)),
            }
            ExitCode::from(verify::exit_code(&results) as u8)
        }
        Cmd::Dims { n, format } => {
            let range = match verify::parse_n_range(&n) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            let records: Vec<_> = range.map(dump::dims).collect();
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&records).expect("serializable")),
                Format::Markdown => {
                    for r in &records {
                        print!("{}", r.to_text());
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Cmd::Dump { operator, n } => {
            if n < 2 {
                return usage("n must be at least 2");
            }
            match dump::dump_operator(&operator, n) {
                Ok(s) => {
                    print!("{s}");
                    ExitCode::SUCCESS
                }
                Err(e) => usage(e),
            }
        }
    }
}
