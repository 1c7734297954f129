use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use coxeter_traces::cache::GroupCache;
use coxeter_traces::classes::Strategy;
use coxeter_traces::Error;
use coxtr_cli::report::{check_grid, class_grid, render, report_grid, Format};
use coxtr_cli::table::{self, Section};
use coxtr_cli::verify::{self, Scope, VerifyOptions};
use coxtr_cli::{exit, exit_code, parse_spec, Context};

/// Trace and supertrace counts of finite Coxeter groups.
#[derive(Parser)]
#[command(name = "coxtr", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Markdown, global = true)]
    format: FormatArg,

    /// Largest group order that may be enumerated (capped at 10^7).
    #[arg(long, env = "COXTR_BUDGET", global = true)]
    budget: Option<u64>,

    /// Directory for cached groups.
    #[arg(long, env = "COXTR_CACHE_DIR", global = true)]
    cache_dir: Option<PathBuf>,

    /// Allow enumerating groups above 10^6 elements, such as W(E7).
    #[arg(long, global = true)]
    heavy: bool,

    /// Lift every budget limit, W(E8) included. Needs far more memory than a
    /// workstation has.
    #[arg(long, global = true, hide = true)]
    unsupported_e8_enumeration: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// T and S of a root system such as "B4+D5+I2(7)+A0".
    Count {
        spec: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
        /// Add wall-clock timing to the report.
        #[arg(long)]
        timing: bool,
    },
    /// Conjugacy classes with characteristic polynomials and eigen-flags.
    Classes { spec: String },
    /// The tables of systems with and without -I.
    Table {
        #[arg(value_enum, default_value_t = Which::All)]
        which: Which,
    },
    /// Seeded property runs; exits with 1 if any check fails.
    Verify {
        #[arg(value_enum, default_value_t = ScopeArg::All)]
        scope: ScopeArg,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        /// Largest n for the partition identity.
        #[arg(long, default_value_t = 500)]
        degree: usize,
    },
    /// Inspect or fill the group cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    List,
    Clear,
    Warm { spec: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Markdown,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Brute,
    Closed,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Section3,
    Section4,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Theorems,
    Lemma,
    Appendices,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(exit::IO);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> Result<(String, u8), Error> {
    let format = match cli.format {
        FormatArg::Markdown => Format::Markdown,
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let mut ctx = Context::new(cli.budget, cli.heavy, cli.cache_dir.clone(), cli.unsupported_e8_enumeration);
    match cli.command {
        Command::Count { spec, strategy, timing } => {
            let spec = parse_spec(&spec)?;
            let strategy = match strategy {
                StrategyArg::Auto => Strategy::Auto,
                StrategyArg::Brute => Strategy::Brute,
                StrategyArg::Closed => Strategy::Closed,
            };
            ctx.timing = timing;
            let row = ctx.count(&spec, strategy)?;
            let rows = [row];
            Ok((render(format, || report_grid(&rows), &rows[0]), exit::SUCCESS))
        }
        Command::Classes { spec } => {
            let rows = ctx.classes(&parse_spec(&spec)?)?;
            Ok((render(format, || class_grid(&rows), &rows), exit::SUCCESS))
        }
        Command::Table { which } => {
            let sections = match which {
                Which::Section3 => vec![Section::Equal],
                Which::Section4 => vec![Section::NoMinusIdentity],
                Which::All => vec![Section::Equal, Section::NoMinusIdentity],
            };
            let tables = table::build_tables(&ctx, &sections)?;
            let out = match format {
                Format::Markdown => table::render_markdown(&tables),
                Format::Csv => table::render_csv(&tables),
                Format::Json => table::render_json(&tables),
            };
            Ok((out, exit::SUCCESS))
        }
        Command::Verify { scope, seed, trials, degree } => {
            let scope = match scope {
                ScopeArg::Theorems => Scope::Theorems,
                ScopeArg::Lemma => Scope::Lemma,
                ScopeArg::Appendices => Scope::Appendices,
                ScopeArg::All => Scope::All,
            };
            let opts = VerifyOptions { seed, trials, degree, ..Default::default() };
            let rows = verify::run(&ctx, scope, &opts)?;
            let failed = rows.iter().filter(|r| !r.passed).count();
            let mut out = render(format, || check_grid(&rows), &rows);
            if format == Format::Markdown {
                out.push_str(&format!("\n{} checks, {failed} failed\n", rows.len()));
            }
            Ok((out, if failed == 0 { exit::SUCCESS } else { exit::VERIFICATION_FAILED }))
        }
        Command::Cache { action } => {
            let Some(dir) = cli.cache_dir else {
                return Err(Error::InvalidParameter {
                    family: "cache".into(),
                    reason: "no cache directory; pass --cache-dir or set COXTR_CACHE_DIR".into(),
                });
            };
            let cache = GroupCache::new(dir);
            let out = match action {
                CacheAction::List => {
                    let mut out = String::new();
                    for e in cache.list()? {
                        out.push_str(&format!("{}\torder {}\t{} bytes\tv{}\n", e.key, e.order, e.file_size, e.version));
                    }
                    out
                }
                CacheAction::Clear => format!("removed {} cached groups\n", cache.clear()?),
                CacheAction::Warm { spec } => {
                    let spec = parse_spec(&spec)?;
                    let (group, hit) = cache.get_or_generate(&spec, &ctx.budget)?;
                    let state = if hit { "already cached" } else { "stored" };
                    format!("{}\torder {}\t{state}\n", GroupCache::key(&spec), group.order())
                }
            };
            Ok((out, exit::SUCCESS))
        }
    }
}
