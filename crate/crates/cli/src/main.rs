//! `qcss`: build Family A, almost difference sets and QCSSs, measure their
//! correlation tolerances, and reproduce the tightness tables.

mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcss_core::diffset::DsKind;
use qcss_core::qcss::SweepMethod;

#[derive(Debug, Parser)]
#[command(name = "qcss", version, about)]
struct Cli {
    /// Cache directory for Family A and ADS documents.
    #[arg(long, global = true, env = "QCSS_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Worker threads for correlation sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the quaternary Family A and write it as JSON.
    Family(FamilyArgs),
    /// Build the (4f, 2f-1, f-2, f-1) almost difference set and write it as JSON.
    Ads(AdsArgs),
    /// Build the QCSS and write its correlation report.
    Qcss(QcssArgs),
    /// Reproduce one of the asymptotic tightness tables.
    Tables(TablesArgs),
    /// Compare bound-based, asymptotic and measured tightness over (n, x).
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DsArg {
    Singer,
    Legendre,
}

impl From<DsArg> for DsKind {
    fn from(d: DsArg) -> Self {
        match d {
            DsArg::Singer => DsKind::Singer,
            DsArg::Legendre => DsKind::Legendre,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Naive,
    Fast,
}

impl From<MethodArg> for SweepMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Naive => SweepMethod::Naive,
            MethodArg::Fast => SweepMethod::Fast,
        }
    }
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub n: u32,
    /// Primitive binary polynomial overriding the built-in table, e.g. "x^5 + x^2 + 1".
    #[arg(long)]
    pub poly: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct AdsArgs {
    /// Order of the base difference set (f ≡ 3 mod 4).
    #[arg(long, conflicts_with = "n")]
    pub f: Option<u32>,
    /// Use f = 2^(n-2) - 1.
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long = "ds", value_enum, default_value = "singer")]
    pub ds: DsArg,
    /// Search for the least valid coset pattern instead of using the canonical one.
    #[arg(long)]
    pub search: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct QcssArgs {
    #[arg(long)]
    pub n: u32,
    /// ADS order; defaults to 2^(n-2) - 1.
    #[arg(long)]
    pub f: Option<u32>,
    #[arg(long = "ds", value_enum, default_value = "singer")]
    pub ds: DsArg,
    /// Run the second sweep method and require agreement within 1e-9.
    #[arg(long)]
    pub verify: bool,
    /// Sweep method; defaults to naive for n <= 6 and fast above.
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    /// Output path (`--out` and `--report` are synonyms).
    #[arg(long, visible_alias = "report")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Allow n above the default cap of 8.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub table: u8,
    /// Last row exponent; defaults to the last printed row.
    #[arg(long)]
    pub x_max: Option<u32>,
    #[arg(long, default_value_t = 3)]
    pub digits: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 4)]
    pub n_min: u32,
    #[arg(long, default_value_t = 8)]
    pub n_max: u32,
    #[arg(long, default_value_t = 2)]
    pub x_min: u32,
    #[arg(long, default_value_t = 5)]
    pub x_max: u32,
    /// Build and measure every cell's QCSS.
    #[arg(long)]
    pub empirical: bool,
    /// Lift the empirical cap of n <= 8.
    #[arg(long)]
    pub force: bool,
    #[arg(long, default_value_t = 3)]
    pub digits: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = commands::Context { cache_dir: cli.cache_dir };
    let result = match cli.command {
        Command::Family(a) => commands::family(&ctx, a),
        Command::Ads(a) => commands::ads(&ctx, a),
        Command::Qcss(a) => commands::qcss(&ctx, a),
        Command::Tables(a) => commands::tables(a),
        Command::Sweep(a) => commands::sweep(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
