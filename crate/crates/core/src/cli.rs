//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage error, 3 disagreement or failed
//! verification, 4 quadrature non-convergence.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::analysis::{self, AnalysisError, QuadratureSpec};
use crate::counting::{self, CountingError};
use crate::exactnum::{to_f64, Integer, Rational};
use crate::oracle::{self, OracleError};
use crate::region::{build_region, HoleSpec, RegionSpec};
use crate::verify::{self, Suite, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;
pub const EXIT_NO_CONVERGENCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "halfhex", version, about = "Lozenge tilings of half-hexagons with a free boundary")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count tilings of F(n, x) with an optional hole.
    Count {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        x: u32,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, value_enum, default_value_t = HoleArg::Triangle)]
        hole: HoleArg,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Evaluate the correlation omega_f(k; xi) and its asymptotic.
    Correlation {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 1.0)]
        xi: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 1 << 14)]
        max_panels: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Emit a CSV table over a range of k.
    Table {
        #[arg(long, value_enum)]
        quantity: Quantity,
        /// `a:b:s` (arithmetic) or `a:b:2x` (doubling), both ends inclusive.
        #[arg(long)]
        k_range: String,
        #[arg(long, default_value_t = 64)]
        n: u32,
        #[arg(long, default_value_t = 1.0)]
        xi: f64,
    },
    /// Run the invariant suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 3)]
        max_n: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HoleArg {
    Triangle,
    Lozenge,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Pfaffian,
    Oracle,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Omega,
    Theorem1,
    Theorem2,
    FiniteRatio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Arith,
    Pfaffian,
    Counting,
    Identities,
    Analysis,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Arith => Suite::Arith,
            SuiteArg::Pfaffian => Suite::Pfaffian,
            SuiteArg::Counting => Suite::Counting,
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Analysis => Suite::Analysis,
            SuiteArg::All => Suite::All,
        }
    }
}

/// A failed command: exit code plus a one-line diagnostic.
#[derive(Debug)]
struct Failure(i32, String);

impl Failure {
    fn usage(msg: impl ToString) -> Self {
        Failure(EXIT_USAGE, msg.to_string())
    }
}

impl From<CountingError> for Failure {
    fn from(e: CountingError) -> Self {
        match e {
            CountingError::NonIntegerResult(_) => Failure(EXIT_DISAGREE, e.to_string()),
            _ => Failure::usage(e),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::usage(e)
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::NoConvergence { .. } => Failure(EXIT_NO_CONVERGENCE, e.to_string()),
            _ => Failure::usage(e),
        }
    }
}

/// Entry point for the binary.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (including the program name) and runs the command,
/// writing data to `out` and diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Count { n, x, k, hole, method, format } => cmd_count(n, x, k, hole, method, format),
        Command::Correlation { k, xi, tol, max_panels, format } => cmd_correlation(k, xi, tol, max_panels, format),
        Command::Table { quantity, k_range, n, xi } => cmd_table(quantity, &k_range, n, xi),
        Command::Verify { suite, max_n, seed } => cmd_verify(suite.into(), max_n, seed),
    };
    match result {
        Ok((text, code)) => {
            let _ = write!(out, "{text}");
            code
        }
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

type Outcome = Result<(String, i32), Failure>;

fn render(record: &Map<String, Value>, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", Value::Object(record.clone())),
        Format::Csv => {
            let header: Vec<&str> = record.keys().map(String::as_str).collect();
            let row: Vec<String> = record
                .values()
                .map(|v| match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect();
            format!("{}\n{}\n", header.join(","), row.join(","))
        }
    }
}

fn exact_integer(value: Rational) -> Result<Integer, Failure> {
    counting::closed_as_integer(&value).map_err(Failure::from)
}

fn cmd_count(n: u32, x: u32, k: u32, hole: HoleArg, method: Method, format: Format) -> Outcome {
    let spec = RegionSpec::new(
        n,
        x,
        match hole {
            HoleArg::Triangle => HoleSpec::Triangle2(k),
            HoleArg::Lozenge => HoleSpec::HorizontalLozenge(k),
            HoleArg::None => HoleSpec::NoHole,
        },
    );
    spec.validate().map_err(Failure::usage)?;
    if method == Method::Pfaffian && hole != HoleArg::Triangle {
        return Err(Failure::usage("the Pfaffian route only applies to the triangular gap"));
    }

    let mut record = Map::new();
    record.insert("command".into(), json!("count"));
    record.insert("n".into(), json!(n));
    record.insert("x".into(), json!(x));
    if hole != HoleArg::None {
        record.insert("k".into(), json!(k));
    }
    record.insert("hole".into(), json!(format!("{hole:?}").to_lowercase()));
    record.insert("method".into(), json!(format!("{method:?}").to_lowercase()));

    let mut values: Vec<Integer> = Vec::new();
    let mut put = |record: &mut Map<String, Value>, key: &str, v: Integer| {
        record.insert(key.into(), json!(v.to_string()));
        values.push(v);
    };
    let all = method == Method::All;
    if all || method == Method::Closed {
        let v = match hole {
            HoleArg::Triangle => counting::count_gap_closed(n, k, x)?,
            HoleArg::Lozenge => counting::count_lozenge_closed(n, k, x)?,
            HoleArg::None => counting::macmahon(n, x),
        };
        put(&mut record, "count_closed", exact_integer(v)?);
    }
    if (all && hole == HoleArg::Triangle) || method == Method::Pfaffian {
        put(&mut record, "count_pfaffian", counting::count_gap_pfaffian(n, k, x)?);
    }
    if all || method == Method::Oracle {
        let g = build_region(spec).map_err(Failure::usage)?;
        put(&mut record, "count_oracle", oracle::count_matchings(&g)?);
        if hole == HoleArg::Triangle && n <= oracle::MAX_NILP_N && (1..=oracle::MAX_NILP_X).contains(&x) {
            put(&mut record, "count_nilp", oracle::count_nilp(n, x, k)?);
        }
    }
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    if all {
        record.insert("agree".into(), json!(agree));
    }
    Ok((render(&record, format), if agree { EXIT_OK } else { EXIT_DISAGREE }))
}

fn quadrature(tol: f64, max_panels: usize) -> Result<QuadratureSpec, Failure> {
    if tol.is_nan() || tol <= 0.0 || max_panels == 0 {
        return Err(Failure::usage("--tol and --max-panels must be positive"));
    }
    Ok(QuadratureSpec { tol, max_panels, ..QuadratureSpec::default() })
}

fn cmd_correlation(k: u64, xi: f64, tol: f64, max_panels: usize, format: Format) -> Outcome {
    let q = quadrature(tol, max_panels)?;
    let w = analysis::omega_f(k, xi, &q)?;
    let mut record = Map::new();
    record.insert("command".into(), json!("correlation"));
    record.insert("k".into(), json!(k));
    record.insert("xi".into(), json!(xi));
    record.insert("value".into(), json!(w.value));
    record.insert("log_value".into(), json!(w.log_value));
    record.insert("err".into(), json!(w.err_estimate));
    record.insert("rel_err".into(), json!(w.rel_err_estimate));
    if k >= 1 {
        let ln_asym = analysis::ln_omega_asymptotic(k, xi);
        record.insert("asymptotic".into(), json!(ln_asym.exp()));
        record.insert("log_asymptotic".into(), json!(ln_asym));
        record.insert("deviation".into(), json!((w.log_value - ln_asym).exp_m1()));
    }
    Ok((render(&record, format), EXIT_OK))
}

/// Parses `a:b:s` or `a:b:2x` into the inclusive list of k values.
pub fn parse_k_range(text: &str) -> Result<Vec<u64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, step] = parts.as_slice() else {
        return Err(format!("malformed range {text:?}: expected a:b:step"));
    };
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| format!("malformed range {text:?}: {s:?} is not an integer"));
    let (a, b) = (num(a)?, num(b)?);
    let mut ks = Vec::new();
    if step.trim() == "2x" {
        if a == 0 && b >= a {
            return Err(format!("malformed range {text:?}: doubling needs a start of at least 1"));
        }
        let mut k = a;
        while k <= b {
            ks.push(k);
            k = k.saturating_mul(2);
            if k == u64::MAX {
                break;
            }
        }
    } else {
        let s = num(step)?;
        if s == 0 {
            return Err(format!("malformed range {text:?}: step must be positive"));
        }
        let mut k = a;
        while k <= b {
            ks.push(k);
            k = match k.checked_add(s) {
                Some(v) => v,
                None => break,
            };
        }
    }
    Ok(ks)
}

fn cmd_table(quantity: Quantity, k_range: &str, n: u32, xi: f64) -> Outcome {
    let ks = parse_k_range(k_range).map_err(Failure::usage)?;
    let q = QuadratureSpec::default();
    let mut out = String::new();
    match quantity {
        Quantity::Omega => {
            out.push_str("k,xi,value,log_value,err,asymptotic\n");
            for k in ks {
                let w = analysis::omega_f(k, xi, &q)?;
                let asym = if k >= 1 { analysis::omega_asymptotic(k, xi).to_string() } else { String::new() };
                out.push_str(&format!("{k},{xi},{},{},{},{asym}\n", w.value, w.log_value, w.err_estimate));
            }
        }
        Quantity::Theorem1 | Quantity::Theorem2 => {
            out.push_str("k,check,deviation\n");
            for k in ks {
                if k == 0 {
                    return Err(Failure::usage("the asymptotic checks need k >= 1"));
                }
                let (check, limit) = if quantity == Quantity::Theorem1 {
                    (analysis::theorem1_check(k, &q)?, 1.0)
                } else {
                    (analysis::theorem2_check(k, &q)?, -1.0)
                };
                out.push_str(&format!("{k},{check},{}\n", (check - limit).abs()));
            }
        }
        Quantity::FiniteRatio => {
            if xi.is_nan() || xi <= 0.0 {
                return Err(Failure::usage("xi must be positive"));
            }
            let x = (xi * n as f64).round() as u32;
            out.push_str("k,n,x,ratio_exact,ratio,omega,deviation\n");
            for k in ks {
                let k32 = u32::try_from(k).map_err(|_| Failure::usage("k out of range"))?;
                let r = counting::finite_ratio(n, k32, x, HoleSpec::Triangle2(k32))?;
                let w = analysis::omega_f(k, xi, &q)?;
                let rf = to_f64(&r);
                out.push_str(&format!("{k},{n},{x},{r},{rf},{},{}\n", w.value, (rf - w.value).abs()));
            }
        }
    }
    Ok((out, EXIT_OK))
}

fn cmd_verify(suite: Suite, max_n: u32, seed: u64) -> Outcome {
    let report = verify::run(suite, &VerifyConfig { max_n, seed });
    let code = if report.passed() { EXIT_OK } else { EXIT_DISAGREE };
    Ok((format!("suite {} seed {seed} max-n {max_n}\n{}", suite.name(), report.render()), code))
}
