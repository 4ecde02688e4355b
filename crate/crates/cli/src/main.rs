//! Batch command-line front end: list the identity catalog, verify single
//! cells, sweep parameter rectangles, and print exact q-expansions.
//!
//! Exit codes: 0 all checks passed, 1 some identity comparison failed,
//! 2 usage or internal error.

mod report;

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qident::identities::{
    aqq1_sides, conje1_sides, conje2_sides, corteel_lovejoy_terms, dilcher_sides, divisor_oracle,
    eq1_sides, eq2_sides, pascal1_sides, pascal2_sides, pasz_sides, uchimura_sides,
    van_hamme_sides,
};
use qident::qfun::gauss_binomial;
use qident::series::QSeries;
use qident::{verify, IdentityError, IdentityTag, Params};

use report::{exit_code, ReportEntry};

#[derive(Parser)]
#[command(
    name = "qident",
    about = "Exact verification of a catalog of q-series identities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the identity catalog with parameter names and statements
    List,
    /// Verify one identity at fixed parameters
    Verify(VerifyArgs),
    /// Verify an identity over inclusive parameter ranges (a..b or a)
    Sweep(SweepArgs),
    /// Print the exact q-expansion of an identity side or named series
    Coeffs(CoeffsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable table
    Text,
    /// Line-delimited JSON records (byte-reproducible)
    Records,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity tag (see `qident list`)
    tag: String,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    l: Option<u32>,
    /// Truncation order D
    #[arg(long, default_value_t = 40)]
    trunc: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    /// Identity tag (see `qident list`)
    tag: String,
    /// Range for n, e.g. 1..6 or 3
    #[arg(long, value_parser = parse_range)]
    n: Option<Range>,
    #[arg(long, value_parser = parse_range)]
    m: Option<Range>,
    #[arg(long, value_parser = parse_range)]
    k: Option<Range>,
    #[arg(long, value_parser = parse_range)]
    l: Option<Range>,
    /// Truncation order D
    #[arg(long, default_value_t = 40)]
    trunc: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CoeffsArgs {
    /// Expression tag, e.g. eq1-lhs, corteel-lovejoy-middle, gauss,
    /// divisor-oracle
    expr: String,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    l: Option<u32>,
    /// Column index for gauss (may be negative: the value is then 0)
    #[arg(long)]
    i: Option<i64>,
    /// Truncation order D
    #[arg(long, default_value_t = 40)]
    trunc: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Inclusive integer range; `3` alone means `3..3`. `start > end` is empty.
#[derive(Debug, Clone, Copy)]
struct Range {
    start: u32,
    end: u32,
}

impl Range {
    fn values(self) -> Vec<u32> {
        (self.start..=self.end).collect()
    }
}

fn parse_range(s: &str) -> Result<Range, String> {
    let parse_u32 =
        |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad integer '{t}': {e}"));
    match s.split_once("..") {
        Some((a, b)) => Ok(Range {
            start: parse_u32(a)?,
            end: parse_u32(b)?,
        }),
        None => {
            let v = parse_u32(s)?;
            Ok(Range { start: v, end: v })
        }
    }
}

fn main() {
    // die quietly when downstream closes the pipe, like any other filter
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let code = match cli.command {
        Command::List => run_list(),
        Command::Verify(args) => run_verify(&args),
        Command::Sweep(args) => run_sweep(&args),
        Command::Coeffs(args) => run_coeffs(&args),
    };
    std::process::exit(code);
}

fn run_list() -> i32 {
    for tag in IdentityTag::ALL {
        let params = if tag.param_names().is_empty() {
            "-".to_string()
        } else {
            tag.param_names().join(", ")
        };
        println!("{:<16} params: {:<8} {}", tag.name(), params, tag.description());
    }
    0
}

fn collect_params(pairs: [(&str, Option<u32>); 4]) -> Params {
    let mut params = Params::new();
    for (name, value) in pairs {
        if let Some(v) = value {
            params.insert(name, v);
        }
    }
    params
}

fn usage_error(err: &IdentityError) -> i32 {
    eprintln!("error: {err}");
    2
}

fn print_entries(entries: &[ReportEntry], format: Format) {
    for e in entries {
        match format {
            Format::Text => println!("{}", e.text_line()),
            Format::Records => println!("{}", e.record_line()),
        }
    }
    if format == Format::Text {
        let passed = entries
            .iter()
            .filter(|e| e.status == report::Status::Pass)
            .count();
        println!("{} checked, {} passed", entries.len(), passed);
    }
}

fn run_verify(args: &VerifyArgs) -> i32 {
    let tag: IdentityTag = match args.tag.parse() {
        Ok(t) => t,
        Err(e) => return usage_error(&e),
    };
    let params = collect_params([("n", args.n), ("m", args.m), ("k", args.k), ("l", args.l)]);
    let start = Instant::now();
    match verify(tag, &params, args.trunc) {
        Ok(check) => {
            let entry = ReportEntry::from_check(&check, start.elapsed().as_millis());
            print_entries(std::slice::from_ref(&entry), args.format);
            exit_code(std::slice::from_ref(&entry))
        }
        Err(e) => usage_error(&e),
    }
}

fn run_sweep(args: &SweepArgs) -> i32 {
    let tag: IdentityTag = match args.tag.parse() {
        Ok(t) => t,
        Err(e) => return usage_error(&e),
    };
    let provided: Vec<(&str, Range)> = [("k", args.k), ("l", args.l), ("m", args.m), ("n", args.n)]
        .into_iter()
        .filter_map(|(name, r)| r.map(|r| (name, r)))
        .collect();
    let names: Vec<&str> = provided.iter().map(|(n, _)| *n).collect();
    if names != tag.param_names() {
        return usage_error(&IdentityError::ParameterMismatch {
            tag,
            expected: tag.param_names(),
            got: names.into_iter().map(str::to_string).collect(),
        });
    }

    // Cartesian product in lexicographic parameter order, last name fastest.
    let mut cells: Vec<Params> = vec![Params::new()];
    for (name, range) in &provided {
        let mut next = Vec::new();
        for cell in &cells {
            for v in range.values() {
                next.push(cell.clone().with(name, v));
            }
        }
        cells = next;
    }
    if provided.is_empty() && tag.param_names().is_empty() {
        // parameterless identity: a sweep is a single cell
        cells = vec![Params::new()];
    }

    let mut entries = Vec::with_capacity(cells.len());
    for params in &cells {
        let start = Instant::now();
        match verify(tag, params, args.trunc) {
            Ok(check) => entries.push(ReportEntry::from_check(&check, start.elapsed().as_millis())),
            Err(e) => entries.push(ReportEntry::from_error(
                tag.name(),
                params.iter().map(|(k, v)| (k.to_string(), v)).collect(),
                args.trunc,
                &e,
                start.elapsed().as_millis(),
            )),
        }
    }
    print_entries(&entries, args.format);
    exit_code(&entries)
}

struct CoeffsError(String);

impl From<IdentityError> for CoeffsError {
    fn from(e: IdentityError) -> CoeffsError {
        CoeffsError(e.to_string())
    }
}

fn run_coeffs(args: &CoeffsArgs) -> i32 {
    match build_coeffs(args) {
        Ok(lines) => {
            for line in lines {
                println!("{line}");
            }
            0
        }
        Err(CoeffsError(message)) => {
            eprintln!("error: {message}");
            2
        }
    }
}

fn series_lines(s: &QSeries, from: usize, format: Format) -> Vec<String> {
    (from..=s.effective_order())
        .map(|k| match format {
            Format::Text => format!("q^{k}: {}", s.coeff(k)),
            Format::Records => format!(
                r#"{{"power":{k},"coeff":"{}"}}"#,
                s.coeff(k).to_string().replace('"', "")
            ),
        })
        .collect()
}

fn build_coeffs(args: &CoeffsArgs) -> Result<Vec<String>, CoeffsError> {
    let d = args.trunc;
    let need = |name: &str, v: Option<u32>| {
        v.ok_or_else(|| CoeffsError(format!("'{}' requires --{name}", args.expr)))
    };
    let fmt = args.format;
    let (series, from): (QSeries, usize) = match args.expr.as_str() {
        "divisor-oracle" => {
            if d < 1 {
                return Err(CoeffsError("divisor-oracle needs --trunc >= 1".into()));
            }
            let values = divisor_oracle(d);
            return Ok(values
                .iter()
                .enumerate()
                .map(|(idx, v)| match fmt {
                    Format::Text => format!("q^{}: {v}", idx + 1),
                    Format::Records => format!(r#"{{"power":{},"coeff":"{v}"}}"#, idx + 1),
                })
                .collect());
        }
        "gauss" => {
            let n = need("n", args.n)?;
            let i = args
                .i
                .ok_or_else(|| CoeffsError("'gauss' requires --i".into()))?;
            (gauss_binomial(n as usize, i, d), 0)
        }
        "eq1-lhs" | "eq1-rhs" => {
            let (n, m) = (need("n", args.n)?, need("m", args.m)?);
            check_range(n >= 1 && m >= 1, "eq1 requires n >= 1 and m >= 1")?;
            let sides = eq1_sides(n, m, d);
            (pick(sides, args.expr.ends_with("rhs")), 0)
        }
        "eq2-lhs" | "eq2-rhs" => {
            let n = need("n", args.n)?;
            (pick(eq2_sides(n, d), args.expr.ends_with("rhs")), 0)
        }
        "pascal1-lhs" | "pascal1-rhs" => {
            let (n, k, m) = (need("n", args.n)?, need("k", args.k)?, need("m", args.m)?);
            check_range(k >= 1 && k <= n && m >= 1, "pascal1 requires 1 <= k <= n, m >= 1")?;
            (pick(pascal1_sides(n, k, m, d), args.expr.ends_with("rhs")), 0)
        }
        "pasz-lhs" | "pasz-rhs" => {
            let n = need("n", args.n)?;
            (pick(pasz_sides(n, d), args.expr.ends_with("rhs")), 0)
        }
        "pascal2-lhs" | "pascal2-rhs" => {
            let (n, m) = (need("n", args.n)?, need("m", args.m)?);
            (pick(pascal2_sides(n, m, d), args.expr.ends_with("rhs")), 0)
        }
        "aqq1-lhs" | "aqq1-rhs" => {
            let (n, l) = (need("n", args.n)?, need("l", args.l)?);
            (pick(aqq1_sides(n, l, d), args.expr.ends_with("rhs")), 0)
        }
        "corteel-lovejoy-first" | "corteel-lovejoy-middle" | "corteel-lovejoy-last" => {
            check_range(d >= 1, "corteel-lovejoy needs --trunc >= 1")?;
            let (s1, s2, s3) = corteel_lovejoy_terms(d);
            let s = match args.expr.as_str() {
                "corteel-lovejoy-first" => s1,
                "corteel-lovejoy-middle" => s2,
                _ => s3,
            };
            (s, 0)
        }
        "conje1-lhs" | "conje1-rhs" => {
            let (n, m) = (need("n", args.n)?, need("m", args.m)?);
            check_range(n >= 1 && m >= 1, "conje1 requires n >= 1 and m >= 1")?;
            (pick(conje1_sides(n, m, d), args.expr.ends_with("rhs")), 0)
        }
        "conje2-lhs" | "conje2-rhs" | "conje2-closed" => {
            let n = need("n", args.n)?;
            check_range(n >= 1, "conje2 requires n >= 1")?;
            let (lhs, rhs, closed) = conje2_sides(n, d);
            let s = match args.expr.as_str() {
                "conje2-lhs" => lhs,
                "conje2-rhs" => rhs,
                _ => closed,
            };
            (s, 0)
        }
        "van-hamme-lhs" | "van-hamme-rhs" => {
            let n = need("n", args.n)?;
            check_range(n >= 1, "van-hamme requires n >= 1")?;
            (pick(van_hamme_sides(n, d), args.expr.ends_with("rhs")), 0)
        }
        "dilcher-lhs" | "dilcher-rhs" => {
            let (n, m) = (need("n", args.n)?, need("m", args.m)?);
            check_range(n >= 1 && m >= 1, "dilcher requires n >= 1 and m >= 1")?;
            (pick(dilcher_sides(n, m, d), args.expr.ends_with("rhs")), 0)
        }
        "uchimura-lhs" | "uchimura-rhs" => {
            let (n, m) = (need("n", args.n)?, need("m", args.m)?);
            check_range(n >= 1, "uchimura requires n >= 1")?;
            (pick(uchimura_sides(n, m, d), args.expr.ends_with("rhs")), 0)
        }
        other => {
            return Err(CoeffsError(format!(
                "unknown expression '{other}'; try <tag>-lhs/<tag>-rhs, corteel-lovejoy-first/middle/last, conje2-closed, gauss, divisor-oracle"
            )))
        }
    };
    Ok(series_lines(&series, from, fmt))
}

fn pick(sides: (QSeries, QSeries), rhs: bool) -> QSeries {
    if rhs {
        sides.1
    } else {
        sides.0
    }
}

fn check_range(ok: bool, message: &str) -> Result<(), CoeffsError> {
    if ok {
        Ok(())
    } else {
        Err(CoeffsError(message.to_string()))
    }
}
