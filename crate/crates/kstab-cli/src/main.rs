use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use kstab::weights::DEFAULT_K_MAX;
use kstab_cli::compute::{compute, settings, Overrides};
use kstab_cli::problem::{parse_problem, AlphaKindSpec, AlphaSpec, Task};
use kstab_cli::rat::Rat;
use kstab_cli::report::{Diagnostic, Report};
use kstab_cli::scan::{parse_family, scan, to_csv, DEFAULT_MAX_ROWS};
use kstab_cli::{corpus, text};

#[derive(Parser)]
#[command(name = "kstab", version, about = "Exact K-stability invariants of toric test configurations")]
struct Cli {
    /// Upper bound on sampled k.
    #[arg(long, global = true, env = "KSTAB_KMAX", default_value_t = DEFAULT_K_MAX)]
    k_max: u64,
    /// Worker thread cap.
    #[arg(long, global = true, env = "KSTAB_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(clap::Args)]
struct ProblemArgs {
    file: PathBuf,
    /// Comma-separated subset of df,norms,twisted,log,criteria,oracle.
    #[arg(long, value_delimiter = ',')]
    tasks: Option<Vec<Task>>,
    /// User alpha value, "p/q".
    #[arg(long)]
    alpha: Option<Rat>,
    #[arg(long, value_enum, default_value = "lower")]
    alpha_kind: AlphaKindArg,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Leave the timing block out of the report.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlphaKindArg {
    Exact,
    Lower,
    Upper,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a problem file.
    Compute(ProblemArgs),
    /// Compare both computation paths sample by sample.
    Oracle(ProblemArgs),
    /// Sweep L and T over a rational grid.
    Scan {
        family: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_ROWS)]
        max_rows: u64,
    },
    /// Parse and validate a problem file without evaluating it.
    Validate { file: PathBuf },
    /// Run the bundled regression corpus.
    Corpus {
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Rewrite the frozen reports.
        #[arg(long)]
        update: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn emit(out: &Option<PathBuf>, body: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn invalid(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn problem(args: &ProblemArgs, k_max: u64, force: Option<Vec<Task>>) -> anyhow::Result<ExitCode> {
    let body = fs::read_to_string(&args.file).with_context(|| format!("reading {}", args.file.display()))?;
    let spec = match parse_problem(&body) {
        Ok(s) => s,
        Err(e) => return Ok(invalid(&format!("{}: {e}", args.file.display()))),
    };
    let alpha = args.alpha.clone().map(|value| AlphaSpec {
        value,
        kind: match args.alpha_kind {
            AlphaKindArg::Exact => AlphaKindSpec::Exact,
            AlphaKindArg::Lower => AlphaKindSpec::Lower,
            AlphaKindArg::Upper => AlphaKindSpec::Upper,
        },
    });
    let o = Overrides { tasks: force.or_else(|| args.tasks.clone()), k_max: None, alpha };
    let mut rep: Report = compute(&spec, &settings(&spec, &o, k_max));
    if args.no_timing {
        rep.timing = None;
    }
    let body = match args.format {
        Format::Json => serde_json::to_string_pretty(&rep)? + "\n",
        Format::Text => text::render(&rep),
        Format::Csv => return Ok(invalid("csv output is only available for scan")),
    };
    emit(&args.out, &body)?;
    if let Some(Diagnostic { message, .. }) = &rep.error {
        eprintln!("error: {message}");
    }
    Ok(ExitCode::from(rep.exit_code() as u8))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.cmd {
        Cmd::Compute(args) => problem(&args, cli.k_max, None),
        Cmd::Oracle(args) => problem(&args, cli.k_max, Some(vec![Task::Oracle])),
        Cmd::Scan { family, format, out, max_rows } => {
            let body = fs::read_to_string(&family).with_context(|| format!("reading {}", family.display()))?;
            let spec = match parse_family(&body) {
                Ok(s) => s,
                Err(e) => return Ok(invalid(&format!("{}: {e}", family.display()))),
            };
            let table = match scan(&spec, spec.max_rows.unwrap_or(max_rows)) {
                Ok(t) => t,
                Err(e) => return Ok(invalid(&e.to_string())),
            };
            let body = match format {
                Format::Csv | Format::Text => to_csv(&table)?,
                Format::Json => serde_json::to_string_pretty(&table)? + "\n",
            };
            emit(&out, &body)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Validate { file } => {
            let body = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let built = parse_problem(&body).and_then(|s| s.build().map_err(|e| e.to_string()));
            match built {
                Ok(_) => {
                    println!("{}: ok", file.display());
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => Ok(invalid(&format!("{}: {e}", file.display()))),
            }
        }
        Cmd::Corpus { dir, update, format } => {
            let dir = dir.unwrap_or_else(corpus::default_dir);
            let outcomes = corpus::run(&dir, cli.k_max, update)?;
            let mut failed = 0;
            let mut rows = Vec::new();
            for o in &outcomes {
                let status = match (update, o.matches) {
                    (true, _) => "updated",
                    (false, Some(true)) => "pass",
                    (false, Some(false)) => "FAIL",
                    (false, None) => "missing",
                };
                if !update && o.matches != Some(true) {
                    failed += 1;
                }
                rows.push(serde_json::json!({
                    "name": o.name,
                    "status": status,
                    "exit_code": o.report.exit_code(),
                    "elapsed_ms": o.report.timing.as_ref().map_or(0, |t| t.elapsed_ms),
                }));
            }
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
                _ => {
                    for r in &rows {
                        println!("{:<8} {:<32} exit {} ({} ms)", r["status"].as_str().unwrap_or(""), r["name"].as_str().unwrap_or(""), r["exit_code"], r["elapsed_ms"]);
                    }
                    println!("{} fixtures, {} failed", outcomes.len(), failed);
                }
            }
            Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
