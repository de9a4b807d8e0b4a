//! Command-line front end for the voaf library.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use voaf::characters::{graded_dimension, twisted_graded_dimension, QSeries};
use voaf::exact::{parse_rat, Rat};
use voaf::fock::FockVector;
use voaf::fusion::{decide, full_table, generator_set};
use voaf::labels::ModuleLabel;
use voaf::verify::{run_suite, table41, Status, Suite, SuiteReport, VerifyOptions};
use voaf::virasoro::express_in_descendants;
use voaf::zhu::contraction_eval;
use voaf::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "voaf", version, about = "Exact computations for the free boson orbifold M(1)+")]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// o(omega) and o(J) on the top level of every irreducible module
    Table41,
    /// Graded dimension of a module as a q-series
    Char {
        /// M+, M-, M(s=p/q), Mtheta+, Mtheta- or Mtheta (whole twisted module)
        #[arg(long)]
        module: String,
        /// Highest q-order relative to the leading term
        #[arg(long, env = "VOAF_CUTOFF", default_value = "20")]
        cutoff: String,
    },
    /// One fusion rule N(m, n; l)
    Fusion {
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
        #[arg(long)]
        l: String,
        /// Print the certificate
        #[arg(long)]
        certificate: bool,
    },
    /// All fusion rules among the fixed modules and the given M(1, lam)
    FusionTable {
        /// Comma-separated lam^2 values, e.g. 1/2,2
        #[arg(long, value_delimiter = ',', required = true)]
        lambda_squares: Vec<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Descendant coordinates and contraction polynomials of a state
    Reduce {
        #[arg(long)]
        module: String,
        /// A state such as "h(-3)h(-1)|0>", "lam h(-1) e^lam" or "h(-1/2)^3 1theta"
        #[arg(long)]
        expr: String,
    },
    /// Run verification suites
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Weight bound W for O(M) membership certificates
        #[arg(long, default_value_t = 6)]
        cutoff: u32,
        /// q-order for the character identities
        #[arg(long, env = "VOAF_CUTOFF", default_value = "20")]
        char_cutoff: String,
        /// lam^2 values for the fusion suite
        #[arg(long, value_delimiter = ',')]
        lambda_squares: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Characters,
    Zhu,
    Virasoro,
    Twisted,
    Fusion,
    Step3,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Characters => vec![Suite::Characters],
            SuiteArg::Zhu => vec![Suite::Zhu],
            SuiteArg::Virasoro => vec![Suite::Virasoro],
            SuiteArg::Twisted => vec![Suite::Twisted],
            SuiteArg::Fusion => vec![Suite::Fusion],
            SuiteArg::Step3 => vec![Suite::Step3],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Inconclusive(_) => EXIT_INCONCLUSIVE,
            Error::Parse(_) | Error::UnsupportedParameter(_) | Error::SectorMismatch | Error::SectorRule(_) | Error::ThetaOnLambda => EXIT_USAGE,
            _ => EXIT_FAILED,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: msg.into() }
}

fn label(t: &str) -> Result<ModuleLabel, Failure> {
    t.parse().map_err(|e: voaf::error::ParseError| usage(format!("{e}")))
}

fn rational(t: &str) -> Result<Rat, Failure> {
    parse_rat(t.trim()).map_err(|e| usage(format!("{e}")))
}

/// Runs the CLI on `args` (including the program name), writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json")).map_err(io)
}

fn io(e: std::io::Error) -> Failure {
    Failure { code: EXIT_FAILED, message: e.to_string() }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    match &cli.command {
        Command::Table41 => {
            let rows = table41()?;
            if cli.json {
                let v: Vec<Value> = rows
                    .iter()
                    .map(|r| json!({"module": r.module.to_string(), "a": r.weight.to_string(), "b": r.j.to_string()}))
                    .collect();
                emit(out, &Value::Array(v))?;
            } else {
                writeln!(out, "{:<10} {:<16} {}", "module", "o(omega)", "o(J)").map_err(io)?;
                for r in &rows {
                    writeln!(out, "{:<10} {:<16} {}", r.module.to_string(), r.weight.to_string(), r.j.to_string()).map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Char { module, cutoff } => {
            let cutoff = rational(cutoff)?;
            if cutoff < Rat::from_integer(0.into()) {
                return Err(usage("cutoff must be nonnegative"));
            }
            let series: QSeries = if module.trim() == "Mtheta" {
                twisted_graded_dimension(&cutoff)
            } else {
                graded_dimension(&label(module)?, &cutoff)?
            };
            if cli.json {
                emit(out, &json!({"module": module, "series": series}))?;
            } else {
                writeln!(out, "{series}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Fusion { m, n, l, certificate } => {
            let (m, n, l) = (label(m)?, label(n)?, label(l)?);
            let c = decide(&m, &n, &l)?;
            if cli.json {
                let v = if *certificate { serde_json::to_value(&c).expect("json") } else { json!({"m": m, "n": n, "l": l, "verdict": c.verdict}) };
                emit(out, &v)?;
            } else if *certificate {
                writeln!(out, "{c}").map_err(io)?;
            } else {
                writeln!(out, "N({m}, {n}; {l}) = {}", c.verdict).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::FusionTable { lambda_squares, format } => {
            let ss = lambda_squares.iter().map(|t| rational(t)).collect::<Result<Vec<_>, _>>()?;
            let table = full_table(&ss)?;
            if cli.json || matches!(format, TableFormat::Json) {
                let entries: Vec<Value> = table.entries.iter().map(|c| json!({"m": c.m, "n": c.n, "l": c.l, "verdict": c.verdict})).collect();
                emit(out, &json!({"labels": table.labels, "entries": entries}))?;
            } else {
                write!(out, "{}", table.to_csv()).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Reduce { module, expr } => {
            let m = label(module)?;
            let v = FockVector::parse(expr, m.s()).map_err(|e| usage(e.to_string()))?;
            if v.sector() != &m.sector() || v.terms().any(|(p, _)| !m.contains(p)) {
                return Err(usage(format!("{v} is not a vector of {m}")));
            }
            let gens = generator_set(&m);
            let coords = express_in_descendants(&v, &gens)?;
            let contraction = contraction_eval(&v, &gens)?;
            if cli.json {
                let cs: Vec<Value> = coords.coords.iter().map(|(w, c)| json!({"word": w.to_string(), "coefficient": c.to_string()})).collect();
                let gs: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                emit(out, &json!({"module": m, "vector": v.to_string(), "generators": gs, "coordinates": cs, "contraction": contraction}))?;
            } else {
                for (i, g) in gens.iter().enumerate() {
                    writeln!(out, "g{i} = {g}").map_err(io)?;
                }
                writeln!(out, "coordinates: {coords}").map_err(io)?;
                writeln!(out, "contraction: {contraction}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify { suite, cutoff, char_cutoff, lambda_squares } => {
            let mut opts = VerifyOptions { char_cutoff: rational(char_cutoff)?, membership_cutoff: *cutoff, ..VerifyOptions::default() };
            if !lambda_squares.is_empty() {
                opts.lambda_squares = lambda_squares.iter().map(|t| rational(t)).collect::<Result<_, _>>()?;
            }
            let mut reports: Vec<SuiteReport> = Vec::new();
            for s in suite.suites() {
                reports.push(run_suite(s, &opts)?);
            }
            let ok = reports.iter().all(SuiteReport::passed);
            if cli.json {
                emit(out, &json!({"passed": ok, "suites": reports}))?;
            } else {
                for r in &reports {
                    let pass = r.checks.iter().filter(|c| c.status == Status::Pass).count();
                    writeln!(out, "suite {}: {pass}/{} checks pass", r.suite.name(), r.checks.len()).map_err(io)?;
                    for c in &r.checks {
                        writeln!(out, "  {c}").map_err(io)?;
                    }
                }
                if let Some(c) = reports.iter().find_map(SuiteReport::first_failure) {
                    writeln!(out, "first counterexample: {c}").map_err(io)?;
                }
            }
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
    }
}
