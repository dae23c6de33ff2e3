//! Command-line front end over the certification engine.
//!
//! Exit codes: 0 when every paper-scoped check certifies (report-only
//! outcomes do not fail), 1 on verification failure, 2 on usage errors
//! (from clap), 3 when a check hit a resource budget and nothing failed,
//! 4 on internal errors.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use liecert::certify::{run_check, run_suite, summarize, Certificate, CheckName, Config};
use liecert::rootsys::TypeRank;

#[derive(Parser)]
#[command(name = "liecert", version, about = "Exact certification of adjoint-variety linear algebra for simple Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Seed for orbit sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seed for the random prime stream.
    #[arg(long, default_value_t = 0x9d15_ce17)]
    primes_seed: u64,
    /// Independent primes per modular certification.
    #[arg(long = "primes", default_value_t = 3)]
    prime_count: usize,
    /// Sample batches per stabilization phase.
    #[arg(long = "samples", default_value_t = 12)]
    sample_batches: usize,
    #[arg(long, default_value_t = 8)]
    batch_size: usize,
    /// Memory budget in bytes for elimination workspaces.
    #[arg(long = "budget-mem", default_value_t = 4 << 30)]
    budget_mem: u64,
    /// Time budget per check, in seconds.
    #[arg(long = "budget-time", default_value_t = 1800)]
    budget_time: u64,
    /// Cache directory (falls back to LIECERT_CACHE_DIR, else no cache).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Write certificates to this path instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Omit wall times so replays are byte-identical.
    #[arg(long)]
    no_timestamps: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the algebra, cache its structure constants, print dims.
    Build {
        /// Type and rank, e.g. A2, G2, B3, D4.
        type_rank: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Run checks for one type.
    Verify {
        type_rank: String,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all")]
        check: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Run checks over several types.
    Suite {
        /// Comma-separated types, e.g. A2,G2,B3,D4.
        #[arg(long)]
        types: String,
        #[arg(long, default_value = "all")]
        checks: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Print the header and entry statistics of a cache file.
    Inspect { path: PathBuf },
}

fn config_of(opts: &CommonOpts) -> Config {
    let cache_dir = opts
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("LIECERT_CACHE_DIR").map(PathBuf::from));
    Config {
        seed: opts.seed,
        primes_seed: opts.primes_seed,
        prime_count: opts.prime_count,
        sample_batches: opts.sample_batches,
        batch_size: opts.batch_size,
        budget_mem_bytes: opts.budget_mem,
        budget_time_secs: opts.budget_time,
        cache_dir,
        record_timing: !opts.no_timestamps,
    }
}

fn parse_checks(s: &str) -> Result<Vec<CheckName>, liecert::Error> {
    if s == "all" {
        return Ok(CheckName::all());
    }
    s.split(',').map(|c| c.trim().parse()).collect()
}

fn parse_types(s: &str) -> Result<Vec<TypeRank>, liecert::Error> {
    s.split(',').map(|c| c.trim().parse()).collect()
}

fn print_table(certs: &[Certificate]) {
    println!(
        "{:<4} {:<18} {:<14} {:<8} {}",
        "type", "check", "outcome", "dim", "claim"
    );
    for c in certs {
        let dim = c
            .witnesses
            .kernel_dim
            .map(|d| d.to_string())
            .unwrap_or_else(|| "-".into());
        println!(
            "{:<4} {:<18} {:<14} {:<8} {}",
            format!("{}{}", c.algebra.type_label, c.algebra.rank),
            c.check_name,
            c.outcome.to_string(),
            dim,
            c.claim
        );
    }
}

fn emit(certs: &[Certificate], opts: &CommonOpts) -> Result<(), liecert::Error> {
    let json = serde_json::to_string_pretty(certs).expect("serialize") + "\n";
    match (&opts.out, opts.format) {
        (Some(path), _) => {
            std::fs::write(path, json)?;
            print_table(certs);
        }
        (None, Format::Json) => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(json.as_bytes())?;
        }
        (None, Format::Table) => print_table(certs),
    }
    Ok(())
}

fn exit_for(certs: &[Certificate]) -> ExitCode {
    let summary = summarize(certs);
    if summary.verification_failed() {
        ExitCode::from(1)
    } else if summary.resource_limited > 0 {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn run() -> Result<ExitCode, liecert::Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Build { type_rank, opts } => {
            let tr: TypeRank = type_rank.parse()?;
            let cfg = config_of(&opts);
            let alg = liecert::cache::load_or_build_algebra(cfg.cache_dir.as_deref(), tr)?;
            let cg = liecert::grading::contact_grading(&alg)?;
            println!(
                "{tr}: dim {} = rank {} + {} roots",
                alg.dim,
                alg.rank,
                alg.rs.num_roots()
            );
            println!("highest root: {:?}", alg.rs.highest_root);
            println!("contact grading dims: {:?}", cg.level_dims());
            if let Some(dir) = &cfg.cache_dir {
                println!(
                    "structure constants cached at {}",
                    liecert::cache::cache_path(dir, tr, "structure").display()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            type_rank,
            check,
            opts,
        } => {
            let tr: TypeRank = type_rank.parse()?;
            let checks = parse_checks(&check)?;
            let cfg = config_of(&opts);
            let mut certs = Vec::new();
            for c in checks {
                certs.push(run_check(c, tr, &cfg)?);
            }
            emit(&certs, &opts)?;
            Ok(exit_for(&certs))
        }
        Command::Suite {
            types,
            checks,
            opts,
        } => {
            let types = parse_types(&types)?;
            let checks = parse_checks(&checks)?;
            let cfg = config_of(&opts);
            let res = run_suite(&types, &checks, &cfg)?;
            emit(&res.certificates, &opts)?;
            println!("summary: {:?}", res.summary.by_outcome);
            Ok(exit_for(&res.certificates))
        }
        Command::Inspect { path } => {
            let text = std::fs::read_to_string(&path)?;
            let table = liecert::cache::parse_table(&text)?;
            let h = &table.header;
            println!(
                "table {} for {} (dim {}), engine {}",
                h.name, h.type_rank, h.dim, h.hash
            );
            println!(
                "shape {} x {}, {} entries",
                h.rows,
                h.cols,
                table.entries.len()
            );
            let max_abs = table
                .entries
                .iter()
                .map(|(_, _, _, num, _)| num.magnitude().bits())
                .max()
                .unwrap_or(0);
            println!("largest numerator: {} bits", max_abs);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                liecert::Error::InvalidType(_) | liecert::Error::UnknownCheck(_) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(4),
            }
        }
    }
}
