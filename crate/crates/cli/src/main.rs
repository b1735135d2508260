//! `qlambert`: run identity checks, dump exact series and tabulate divisor sums.

mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qlambert::lambert::sigma_star;
use qlambert::numeric::identities::SampleSet;
use qlambert::registry::{self, CheckConfig, IdentityRecord};
use qlambert::special::{gosper_pi, theta, ThetaKind};
use qlambert::{Execution, Kind, PrefSeries};

use output::{ListDocument, ReportDocument, SeriesDocument};

#[derive(Parser, Debug)]
#[command(name = "qlambert", version, about = "Exact and high-precision checks of Lambert series and theta function identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the identity catalog.
    List {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Only identities of this kind.
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
    /// Check identities and report the outcome.
    Verify(VerifyArgs),
    /// Print the coefficients of a series.
    Series {
        /// psi, phi, fneg, pi, identity-lhs:<id> or identity-rhs:<id>
        #[arg(long)]
        expr: String,
        /// Replace q by q^m (theta functions and pi only).
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Highest power of q to print.
        #[arg(long, default_value_t = 20)]
        terms: i64,
        #[arg(long, value_enum, default_value_t = SeriesFormat::Text)]
        format: SeriesFormat,
    },
    /// Tabulate a restricted divisor sum.
    Table {
        /// Modulus a and residue b of the cofactor condition n/d = b (mod a).
        #[arg(long, num_args = 2, value_names = ["A", "B"], required = true)]
        sigma_star: Vec<u64>,
        /// Last n in the table.
        #[arg(long, default_value_t = 20)]
        n: u64,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
}

#[derive(clap::Args, Debug)]
struct VerifyArgs {
    /// Identity ids to check.
    ids: Vec<String>,
    /// Check every identity expected to pass.
    #[arg(long, conflicts_with = "ids")]
    all: bool,
    /// With --all, restrict to one kind.
    #[arg(long, value_enum, requires = "all")]
    kind: Option<KindArg>,
    /// Exact checks compare through q^terms.
    #[arg(long, default_value_t = 128)]
    terms: i64,
    /// Decimal digits for numeric checks.
    #[arg(long, default_value_t = 128)]
    precision: u32,
    /// Sample nome, repeatable (e.g. 0.3 or 0.2+0.1i).
    #[arg(long = "q", value_name = "Q")]
    q: Vec<String>,
    /// Sample argument z, repeatable.
    #[arg(long = "z", value_name = "Z")]
    z: Vec<String>,
    /// Sample pair for addition formulas as "x,y", repeatable.
    #[arg(long = "xy", value_name = "X,Y")]
    xy: Vec<String>,
    /// Run checks one after another on the calling thread.
    #[arg(long)]
    sequential: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeriesFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Exact,
    Numeric,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Exact => Kind::Exact,
            KindArg::Numeric => Kind::Numeric,
        }
    }
}

/// Failure that maps to exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::List { format, kind } => cmd_list(format, kind.map(Kind::from)),
        Command::Verify(args) => cmd_verify(args),
        Command::Series { expr, m, terms, format } => cmd_series(&expr, m, terms, format),
        Command::Table { sigma_star, n, format } => cmd_table(sigma_star[0], sigma_star[1], n, format),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cmd_list(format: Format, kind: Option<Kind>) -> Result<ExitCode, UsageError> {
    let infos: Vec<_> = registry::list_identities()
        .iter()
        .filter(|r| kind.is_none_or(|k| r.kind() == k))
        .map(IdentityRecord::info)
        .collect();
    let mut out = std::io::stdout().lock();
    match format {
        Format::Json => {
            let doc = ListDocument { version: env!("CARGO_PKG_VERSION"), identities: infos };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Text => {
            for info in infos {
                let flag = if info.expected == "fail" { "  (expected to fail)" } else { "" };
                writeln!(out, "{:<24} {:<8} {}{flag}", info.id, info.kind, info.description)?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn sample_set(args: &VerifyArgs) -> Result<SampleSet, UsageError> {
    let mut samples = SampleSet::default();
    if !args.q.is_empty() {
        samples.q = args.q.clone();
    }
    if !args.z.is_empty() {
        samples.z = args.z.clone();
    }
    if !args.xy.is_empty() {
        samples.xy = args
            .xy
            .iter()
            .map(|s| match s.split_once(',') {
                Some((x, y)) => Ok((x.trim().to_string(), y.trim().to_string())),
                None => Err(UsageError(format!("--xy expects \"x,y\", got {s:?}"))),
            })
            .collect::<Result<_, _>>()?;
    }
    Ok(samples)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, UsageError> {
    if args.terms < 1 {
        return Err(UsageError("--terms must be at least 1".into()));
    }
    if args.precision < 30 {
        return Err(UsageError("--precision must be at least 30".into()));
    }
    if !args.all && args.ids.is_empty() {
        return Err(UsageError("name at least one identity or pass --all".into()));
    }
    let config = CheckConfig {
        terms: args.terms,
        precision: args.precision,
        samples: sample_set(&args)?,
        execution: if args.sequential { Execution::Sequential } else { Execution::Parallel },
    };
    let reports = if args.all {
        registry::check_all(args.kind.map(Kind::from), &config)
    } else {
        let records = args.ids.iter().map(|id| registry::find(id)).collect::<Result<Vec<_>, _>>()?;
        registry::check_many(&records, &config)
    };
    let doc = ReportDocument::new(&config, reports);
    let mut out = std::io::stdout().lock();
    match args.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?,
        Format::Text => doc.write_text(&mut out)?,
    }
    Ok(if doc.summary.fail == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn build_series(expr: &str, m: u32, order: i64) -> Result<PrefSeries, UsageError> {
    let theta_kind = match expr {
        "psi" => Some(ThetaKind::Psi),
        "phi" => Some(ThetaKind::Phi),
        "fneg" => Some(ThetaKind::FNeg),
        _ => None,
    };
    if let Some(kind) = theta_kind {
        return Ok(theta(kind, m, order)?);
    }
    if expr == "pi" {
        return Ok(gosper_pi(m, order)?);
    }
    let (side, id) = expr
        .split_once(':')
        .filter(|(side, _)| matches!(*side, "identity-lhs" | "identity-rhs"))
        .ok_or_else(|| UsageError(format!("unknown expression {expr:?}")))?;
    let record = registry::find(id)?;
    let eq = record
        .equations(order)?
        .into_iter()
        .next()
        .ok_or_else(|| UsageError(format!("identity {id} has no equations")))?;
    Ok(if side == "identity-lhs" { eq.lhs } else { eq.rhs })
}

fn cmd_series(expr: &str, m: u32, terms: i64, format: SeriesFormat) -> Result<ExitCode, UsageError> {
    if terms < 0 {
        return Err(UsageError("--terms must be non-negative".into()));
    }
    // A few extra orders absorb the window lost to quotients.
    let series = build_series(expr, m, terms + 4)?;
    let doc = SeriesDocument::new(expr, &series, terms);
    let mut out = std::io::stdout().lock();
    match format {
        SeriesFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?,
        SeriesFormat::Csv => {
            writeln!(out, "exponent,coefficient")?;
            for t in &doc.terms {
                writeln!(out, "{},{}", t.exponent, t.coefficient)?;
            }
        }
        SeriesFormat::Text => {
            for t in &doc.terms {
                writeln!(out, "q^{}\t{}", t.exponent, t.coefficient)?;
            }
            writeln!(out, "# exact through q^{}", doc.known_through)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(a: u64, b: u64, n: u64, format: TableFormat) -> Result<ExitCode, UsageError> {
    if a == 0 || b >= a {
        return Err(UsageError(format!("residue needs 0 <= b < a, got a = {a}, b = {b}")));
    }
    if n == 0 {
        return Err(UsageError("--n must be at least 1".into()));
    }
    let mut out = std::io::stdout().lock();
    match format {
        TableFormat::Csv => {
            writeln!(out, "n,sigma_star")?;
            for k in 1..=n {
                writeln!(out, "{k},{}", sigma_star(a, b, k))?;
            }
        }
        TableFormat::Text => {
            for k in 1..=n {
                writeln!(out, "{k:>6} {:>12}", sigma_star(a, b, k))?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
