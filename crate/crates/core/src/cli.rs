//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification reports witnesses, 2 on
//! usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::rat::{parse_nonneg, Rat};
use crate::seq::FiniteSeq;
use crate::tail::{convolution_term, TwoSidedSeq};
use crate::triangle::{
    bivariate_rows, convolution_array, delannoy_as_convolution, delannoy_recursion, hoggar,
    kurtz_triangle, pascal, DelannoyParams, KurtzWeights, Triangle,
};
use crate::verify::{self, Report};

pub const MAX_N_VAR: &str = "TRIANGLE_FORGE_MAX_N";
const DEFAULT_MAX_N: i64 = 1000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "triangle-forge", version, about = "Exact Pascal-type triangles and log-concavity checks")]
#[command(args_conflicts_with_subcommands = true, allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a triangle and print it.
    Gen(GenArgs),
    /// Run a verification check and print its report.
    Verify(VerifyArgs),
    /// Convolve finite sequences, or raise one to a convolution power.
    Conv(ConvArgs),
    /// Evaluate a convolution term of two-sided sequences.
    Tail(TailArgs),
    /// Search for log-convex pairs with non-log-convex convolution.
    Search(SearchArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Construction {
    Convarray,
    Delannoy,
    DelannoyConv,
    Bivariate,
    Kurtz,
    PascalPreset,
    HoggarPreset,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq)]
enum Format {
    Json,
    #[default]
    Csv,
    Pretty,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Check {
    RowsLogConcave,
    Lemma31,
    Menon,
    Fact12,
    SkewModes,
    ConvLogConcave,
}

#[derive(Args, Debug, Default)]
struct TriangleArgs {
    #[arg(long, value_enum)]
    construction: Option<Construction>,
    /// Initial side sequence (convarray, hoggar-preset), or first sequence of a check.
    #[arg(long)]
    a: Option<String>,
    /// Multiplier sequence (convarray, lemma31).
    #[arg(long)]
    q: Option<String>,
    /// Delannoy weight b, or second sequence for menon/conv-log-concave.
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    d: Option<String>,
    /// Row-0 seed for kurtz.
    #[arg(long)]
    top: Option<String>,
    /// Left-parent weights for kurtz.
    #[arg(long)]
    u: Option<String>,
    /// Right-parent weights for kurtz.
    #[arg(long)]
    v: Option<String>,
    /// Index of the last row.
    #[arg(long = "N")]
    n: Option<i64>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    triangle: TriangleArgs,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    check: Check,
    #[command(flatten)]
    triangle: TriangleArgs,
    /// Triangle JSON to check instead of building one.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 10)]
    nk: i64,
    #[arg(long, default_value_t = 10)]
    nn: i64,
    /// Half-width of the index window for menon; defaults to covering both supports.
    #[arg(long)]
    window: Option<i64>,
    #[arg(long, default_value_t = 5)]
    max_len: i64,
    #[arg(long, default_value_t = 3)]
    bound: i64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConvArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    power: Option<i64>,
}

#[derive(Args, Debug)]
struct TailArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: Option<String>,
    #[arg(long, default_value_t = 0)]
    p: i64,
    /// Print the finite-sum / decay / bounded-argmax conditions of `--a`.
    #[arg(long)]
    trichotomy: bool,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, default_value_t = 3)]
    max_len: i64,
    #[arg(long, default_value_t = 2)]
    bound: i64,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

fn required<'a>(v: &'a Option<String>, flag: &str, what: &str) -> CliResult<&'a str> {
    v.as_deref().ok_or_else(|| CliError::Usage(format!("--{flag} is required for {what}")))
}

fn seq_arg(v: &Option<String>, flag: &str, what: &str) -> CliResult<FiniteSeq> {
    Ok(required(v, flag, what)?.parse()?)
}

fn rat_arg(v: &Option<String>, flag: &str, what: &str) -> CliResult<Rat> {
    Ok(parse_nonneg(required(v, flag, what)?)?)
}

fn max_n() -> CliResult<i64> {
    match std::env::var(MAX_N_VAR) {
        Ok(s) => s
            .trim()
            .parse::<i64>()
            .ok()
            .filter(|n| *n >= 0)
            .ok_or_else(|| CliError::Usage(format!("{MAX_N_VAR}={s} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn depth(n: Option<i64>) -> CliResult<usize> {
    let n = n.ok_or_else(|| CliError::Usage("--N is required".into()))?;
    if n < 0 {
        return usage(format!("--N must be non-negative, got {n}"));
    }
    let cap = max_n()?;
    if n > cap {
        return usage(format!("--N {n} exceeds the cap {cap} (set {MAX_N_VAR} to raise it)"));
    }
    Ok(n as usize)
}

fn count(v: i64, flag: &str) -> CliResult<usize> {
    usize::try_from(v).or_else(|_| usage(format!("--{flag} must be non-negative, got {v}")))
}

fn build_triangle(t: &TriangleArgs) -> CliResult<Triangle> {
    let construction = t
        .construction
        .ok_or_else(|| CliError::Usage("--construction is required".into()))?;
    let n = depth(t.n)?;
    let delannoy = |t: &TriangleArgs| -> CliResult<DelannoyParams> {
        let what = "the Delannoy constructions";
        Ok(DelannoyParams::new(rat_arg(&t.b, "b", what)?, rat_arg(&t.c, "c", what)?, rat_arg(&t.d, "d", what)?)?)
    };
    Ok(match construction {
        Construction::Convarray => {
            convolution_array(&seq_arg(&t.a, "a", "convarray")?, &seq_arg(&t.q, "q", "convarray")?, n)?
        }
        Construction::Delannoy => delannoy_recursion(&delannoy(t)?, n),
        Construction::DelannoyConv => delannoy_as_convolution(&delannoy(t)?, n),
        Construction::Bivariate => bivariate_rows(&delannoy(t)?, n),
        Construction::Kurtz => {
            let top = match &t.top {
                Some(s) => s.parse()?,
                None => FiniteSeq::delta(0),
            };
            let w = KurtzWeights { left: seq_arg(&t.u, "u", "kurtz")?, right: seq_arg(&t.v, "v", "kurtz")? };
            kurtz_triangle(&top, &w, n)?
        }
        Construction::PascalPreset => pascal(n),
        Construction::HoggarPreset => hoggar(&seq_arg(&t.a, "a", "hoggar-preset")?, n)?,
    })
}

fn render_triangle(t: &Triangle, format: Format) -> String {
    match format {
        Format::Json => t.to_json() + "\n",
        Format::Csv => t.to_csv(),
        Format::Pretty => t.to_pretty(),
    }
}

fn render_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json | Format::Csv => r.to_json() + "\n",
        Format::Pretty => {
            let mut s = format!("{}: {}\n", r.check(), if r.passed() { "passed" } else { "FAILED" });
            for w in r.witnesses() {
                s += &format!("  at {:?}: lhs {} rhs {}\n", w.at, w.lhs, w.rhs);
            }
            s
        }
    }
}

fn emit(text: &str, output: &Option<PathBuf>, out: &mut dyn Write) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(Error::from)?,
        None => out.write_all(text.as_bytes()).map_err(Error::from)?,
    }
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> CliResult<Report> {
    let t = &args.triangle;
    Ok(match args.check {
        Check::RowsLogConcave => {
            let tri = match &args.input {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(Error::from)?;
                    Triangle::from_json(&text)?
                }
                None => build_triangle(t)?,
            };
            verify::check_rows_log_concave(&tri)
        }
        Check::Lemma31 => {
            let what = "lemma31";
            let nk = u32::try_from(args.nk).or_else(|_| usage("--nk must be non-negative"))?;
            if args.nn < 0 {
                return usage("--nn must be non-negative");
            }
            verify::check_lemma31(&seq_arg(&t.a, "a", what)?, &seq_arg(&t.q, "q", what)?, nk, args.nn)?
        }
        Check::Menon => {
            let a = seq_arg(&t.a, "a", "menon")?;
            let b = seq_arg(&t.b, "b", "menon")?;
            let window = args.window.unwrap_or_else(|| verify::covering_window(&a, &b));
            if window < 0 {
                return usage("--window must be non-negative");
            }
            verify::menon_pairing_check(&a, &b, window)?
        }
        Check::Fact12 => {
            let bound = u64::try_from(args.bound).or_else(|_| usage("--bound must be non-negative"))?;
            verify::check_fact12_equivalence(count(args.max_len, "max-len")?, bound)
        }
        Check::SkewModes => verify::check_skew_modes(&seq_arg(&t.a, "a", "skew-modes")?)?,
        Check::ConvLogConcave => verify::check_convolution_log_concave(
            &seq_arg(&t.a, "a", "conv-log-concave")?,
            &seq_arg(&t.b, "b", "conv-log-concave")?,
        )?,
    })
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CliResult<i32> {
    match cmd {
        Command::Gen(args) => {
            let t = build_triangle(&args.triangle)?;
            emit(&render_triangle(&t, args.format), &args.output, out)?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let report = run_verify(&args)?;
            emit(&render_report(&report, args.format), &args.output, out)?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAILED_CHECK })
        }
        Command::Conv(args) => {
            let a: FiniteSeq = args.a.parse()?;
            let result = match (&args.b, args.power) {
                (Some(b), None) => a.conv(&b.parse()?),
                (None, Some(k)) => {
                    let k = u32::try_from(k).or_else(|_| usage(format!("--power must be non-negative, got {k}")))?;
                    a.conv_power(k)
                }
                _ => return usage("conv needs exactly one of --b or --power"),
            };
            emit(&format!("{result}\n"), &None, out)?;
            Ok(EXIT_OK)
        }
        Command::Tail(args) => {
            let a: TwoSidedSeq = args.a.parse()?;
            if args.trichotomy {
                let t = a.trichotomy()?;
                let sum = t.sum.map_or_else(|| "inf".to_string(), |s| s.to_string());
                let max = match &t.max_set {
                    crate::tail::MaxSet::Bounded(m) => m.to_string(),
                    crate::tail::MaxSet::Unbounded => "unbounded".into(),
                };
                let text = format!(
                    "finite_sum {} {sum}\ntends_to_zero {}\nmax_interval_finite {} {max}\n",
                    t.has_finite_sum, t.tends_to_zero, t.max_interval_finite
                );
                emit(&text, &None, out)?;
                return Ok(EXIT_OK);
            }
            let b: TwoSidedSeq = match &args.b {
                Some(b) => b.parse()?,
                None => return usage("tail needs --b (or --trichotomy)"),
            };
            emit(&format!("{}\n", convolution_term(&a, &b, args.p)), &None, out)?;
            Ok(EXIT_OK)
        }
        Command::Search(args) => {
            let bound = u64::try_from(args.bound).or_else(|_| usage("--bound must be non-negative"))?;
            let text = match verify::search_logconvexity_counterexample(count(args.max_len, "max-len")?, bound) {
                Some(w) => format!("a {} b {} conv {} index {}\n", w.a, w.b, w.conv, w.index),
                None => "none\n".to_string(),
            };
            emit(&text, &None, out)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("triangle-forge").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn gen_delannoy_csv() {
        let (code, out, _) = call(&["gen", "--construction", "delannoy", "--b", "1", "--c", "1", "--d", "1", "--N", "4", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "1\n1,1\n1,3,1\n1,5,5,1\n1,7,13,7,1\n");
    }

    #[test]
    fn gen_pascal_preset() {
        let (code, out, _) = call(&["gen", "--construction", "pascal-preset", "--N", "2", "--format", "csv"]);
        assert_eq!((code, out.as_str()), (0, "1\n1,1\n1,2,1\n"));
    }

    #[test]
    fn verify_delannoy_rows() {
        let (code, out, _) = call(&["verify", "--check", "rows-log-concave", "--construction", "delannoy", "--b", "2", "--c", "1/2", "--d", "3", "--N", "15"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains(r#""passed":true"#));
    }

    #[test]
    fn failing_check_exits_one() {
        let (code, out, _) = call(&["verify", "--check", "conv-log-concave", "--a", "0:1,2", "--b", "0:1"]);
        assert_eq!(code, 0, "{out}");
        // Hoggar preset with a non-log-concave side can break row log-concavity.
        let (code, out, _) = call(&["verify", "--check", "rows-log-concave", "--construction", "hoggar-preset", "--a", "0:1,0,0,5", "--N", "4"]);
        assert_eq!(code, 1, "{out}");
        assert!(out.contains(r#""passed":false"#));
    }

    #[test]
    fn tail_commands() {
        assert_eq!(call(&["tail", "--a", "L0|0:1|R1/2", "--b", "L1|0:1|R1", "--p", "0"]).1, "finite 2\n");
        assert_eq!(call(&["tail", "--a", "L1|0:1|R1", "--b", "L1|0:1|R1", "--p", "0"]).1, "divergent both\n");
        assert_eq!(call(&["tail", "--a", "L0|0:1|R0", "--b", "L1|0:3|R1", "--p", "5"]).1, "finite 3\n");
        let (code, out, _) = call(&["tail", "--a", "L1/2|0:1|R1/2", "--trichotomy"]);
        assert_eq!(code, 0);
        assert_eq!(out, "finite_sum true 3\ntends_to_zero true\nmax_interval_finite true [0,0]\n");
        assert_eq!(call(&["tail", "--a", "L1|0:1", "--b", "L1|0:1|R1"]).0, 2);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["gen", "--construction", "delannoy", "--b", "1", "--c", "1", "--d", "1", "--N", "-3"]).0, 2);
        assert_eq!(call(&["gen", "--bogus"]).0, 2);
        assert_eq!(call(&["gen", "--construction", "convarray", "--a", "0:1,x", "--q", "0:1", "--N", "2"]).0, 2);
        assert_eq!(call(&["gen", "--construction", "delannoy", "--b", "1", "--N", "2"]).0, 2);
        assert_eq!(call(&["conv", "--a", "0:1", "--power", "-1"]).0, 2);
        let (code, _, err) = call(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(!err.is_empty());
    }

    #[test]
    fn conv_and_search() {
        assert_eq!(call(&["conv", "--a", "0:1,2,1", "--b", "0:1,1"]).1, "0:1,3,3,1\n");
        assert_eq!(call(&["conv", "--a", "0:1,2,2", "--power", "2"]).1, "0:1,4,8,8,4\n");
        assert_eq!(call(&["search", "--max-len", "1", "--bound", "3"]).1, "none\n");
        assert_eq!(call(&["search", "--max-len", "2", "--bound", "1"]).1, "a 0:1,1 b 0:1,1 conv 0:1,2,1 index 1\n");
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("gen"));
    }
}
