use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use psmod::config::{parse_list, parse_types, RunConfig};
use psmod::{exit, klcache, run};
use psmod_core::rootsys::CartanType;

#[derive(Parser)]
#[command(name = "psmod", version, about = "Verification suites for principal series of finite Chevalley groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write a JSON report.
    Verify(VerifyArgs),
    /// Manage cached tables.
    Cache {
        #[command(subcommand)]
        table: CacheTable,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// coxeter, kl, chevalley, modules or all.
    suite: String,
    /// Comma-separated types, e.g. A2,B2.
    #[arg(long = "type")]
    types: Option<String>,
    /// Comma-separated field sizes.
    #[arg(long)]
    q: Option<String>,
    /// Comma-separated coefficient characteristics, 0 for Q.
    #[arg(long = "char")]
    chars: Option<String>,
    /// Report path (default psmod-report.json).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for every randomized check (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Allow coefficients of the same characteristic as the group's field.
    #[arg(long)]
    allow_defining_char: bool,
    /// Re-check group membership of every root element built.
    #[arg(long)]
    verification_mode: bool,
    /// Worker threads (default: one per core).
    #[arg(long)]
    threads: Option<usize>,
    /// Flat key = value file; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Suppress per-job progress lines.
    #[arg(long)]
    quiet: bool,
}

#[derive(Subcommand)]
enum CacheTable {
    /// Kazhdan-Lusztig polynomial tables.
    Kl {
        action: CacheAction,
        /// Required for build and verify; clear without it removes every table.
        #[arg(long = "type", value_parser = parse_type)]
        cartan_type: Option<CartanType>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CacheAction {
    Build,
    Verify,
    Clear,
}

fn parse_type(s: &str) -> Result<CartanType, String> {
    s.parse::<CartanType>().map_err(|e| e.to_string())
}

fn config_from(args: &VerifyArgs) -> Result<RunConfig, String> {
    let mut cfg = match &args.config {
        Some(p) => RunConfig::from_file(p).map_err(|e| e.to_string())?,
        None => RunConfig::default(),
    };
    if let Some(t) = &args.types {
        cfg.suite.types = parse_types(t).map_err(|e| e.to_string())?;
    }
    if let Some(q) = &args.q {
        cfg.suite.qs = parse_list("q", q).map_err(|e| e.to_string())?;
    }
    if let Some(c) = &args.chars {
        cfg.suite.chars = parse_list("char", c).map_err(|e| e.to_string())?;
    }
    if let Some(o) = &args.out {
        cfg.out = o.clone();
    }
    if let Some(s) = args.seed {
        cfg.suite.seed = s;
    }
    if let Some(n) = args.threads {
        cfg.threads = n;
    }
    cfg.suite.allow_defining_char |= args.allow_defining_char;
    cfg.suite.verification_mode |= args.verification_mode;
    Ok(cfg)
}

fn verify(args: VerifyArgs) -> i32 {
    let cfg = match config_from(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("psmod: {e}");
            return exit::CONFIG_ERROR;
        }
    };
    let quiet = args.quiet;
    let progress = move |job: &psmod_core::suites::Job, r: &psmod_core::report::VerificationReport| {
        if !quiet {
            let failed = r.failures().count();
            let status = if failed == 0 { "ok" } else { "FAILED" };
            eprintln!("{:<32} {:>4} checks  {status}", job.label(), r.checks.len());
        }
    };
    let report = match run::run_suite(&args.suite, &cfg, &progress) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("psmod: {e}");
            if e.exit_code() == exit::CONFIG_ERROR {
                eprintln!(
                    "usage: psmod verify <{}> [--type A2 --q 2 --char 0 --out report.json --seed N]",
                    run::SUITE_NAMES.join("|")
                );
            }
            return e.exit_code();
        }
    };
    if let Err(e) = run::write_atomic(&cfg.out, report.to_json().as_bytes()) {
        eprintln!("psmod: {e}");
        return exit::CHECK_FAILED;
    }
    for r in &report.reports {
        for c in r.failures() {
            eprintln!("FAILED {}/{} {:?}: computed {}, expected {}", r.suite, c.name, c.params, c.computed, c.expected);
        }
    }
    println!(
        "{} jobs, {} checks, {} failed; report written to {}",
        report.summary.jobs.len(),
        report.summary.checks,
        report.summary.failed,
        cfg.out.display()
    );
    report.exit_code()
}

fn cache(action: CacheAction, t: Option<CartanType>) -> i32 {
    let dir = klcache::cache_dir();
    let need_type = || {
        t.ok_or_else(|| {
            eprintln!("psmod: --type is required");
            exit::CONFIG_ERROR
        })
    };
    let result = match action {
        CacheAction::Build => match need_type() {
            Ok(t) => klcache::build(&dir, t).map(|p| format!("wrote {}", p.display())),
            Err(code) => return code,
        },
        CacheAction::Verify => match need_type() {
            Ok(t) => klcache::verify(&dir, t).map(|n| format!("{n} entries match")),
            Err(code) => return code,
        },
        CacheAction::Clear => klcache::clear(&dir, t).map(|n| format!("removed {n} file(s)")),
    };
    match result {
        Ok(msg) => {
            println!("{msg}");
            exit::PASS
        }
        Err(e @ klcache::CacheError::Table(_)) => {
            eprintln!("psmod: {e}");
            exit::CONFIG_ERROR
        }
        Err(e) => {
            eprintln!("psmod: {e}");
            exit::CHECK_FAILED
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Cache { table: CacheTable::Kl { action, cartan_type } } => cache(action, cartan_type),
    };
    ExitCode::from(code as u8)
}
