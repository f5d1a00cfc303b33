//! `incgamma`: evaluate special functions, verify identities, apply the
//! erfc-weighted transforms.
//!
//! Exit codes: 0 success, 1 verification failures, 2 usage, 3 domain.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use incgamma::identities::{catalog, find, known_param_names, run_grid, Grid};
use incgamma::kernel::{self, EvalResult};
use incgamma::laplace::parse_pair;
use incgamma::quad::QuadConfig;
use incgamma::report::{Note, Report};
use incgamma::transform::{self, ReductionForm};
use incgamma::Error;

const EXIT_FAILURES: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

#[derive(Parser)]
#[command(name = "incgamma", version, about = "Incomplete gamma, erf family and erfc-weighted Laplace reductions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function, e.g. `eval lower_gamma s=1 x=1`.
    Eval {
        function: String,
        /// Arguments as name=value.
        args: Vec<String>,
    },
    /// Run identity checks and write a report.
    Verify {
        /// Identity ids (I1..I19) or `all`.
        ids: Vec<String>,
        /// Override a parameter grid: `name=v1,v2,...`; repeatable.
        #[arg(long = "grid")]
        grid: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate an erfc-weighted integral of a Laplace pair.
    Transform {
        /// e.g. `power(r=-0.5)`, `exp(c=-1)`, `dirac(b=1)`.
        #[arg(long)]
        pair: String,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, value_enum)]
        form: FormArg,
        #[arg(long, value_enum, default_value_t = Weighting::Plain)]
        weighted: Weighting,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Theta,
    S,
    Time,
}

#[derive(Clone, Copy, ValueEnum)]
enum Weighting {
    Plain,
    Exp,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Io(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

/// 17 significant digits, trailing zeros dropped.
fn format_sig17(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..17).contains(&exp) {
        let s = format!("{:.*}", (16 - exp).max(0) as usize, v);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{v:.16e}");
        let (mantissa, e) = s.split_once('e').expect("exponent form");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{e}")
    }
}

fn print_result(r: &EvalResult) {
    let mut out = io::stdout().lock();
    // a closed pipe (e.g. `| head -1`) is not an error worth reporting
    let _ = writeln!(out, "{}", format_sig17(r.value))
        .and_then(|_| writeln!(out, "abs_err: {:e}", r.abs_err))
        .and_then(|_| writeln!(out, "method: {}", r.method));
}

fn parse_args(function: &str, args: &[String], names: &[&str]) -> Result<Vec<f64>, Failure> {
    let mut given = BTreeMap::new();
    for a in args {
        let (k, v) = a
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("argument {a:?} is not name=value")))?;
        let v: f64 = v
            .parse()
            .map_err(|_| Failure::Usage(format!("{k} = {v:?} is not a number")))?;
        if !names.contains(&k) {
            return Err(Failure::Usage(format!(
                "{function} takes {}; got unknown argument {k}",
                names.join(", ")
            )));
        }
        given.insert(k.to_string(), v);
    }
    names
        .iter()
        .map(|n| {
            given
                .get(*n)
                .copied()
                .ok_or_else(|| Failure::Usage(format!("{function} needs {n}=<value>")))
        })
        .collect()
}

fn cmd_eval(function: &str, args: &[String]) -> Result<u8, Failure> {
    let closed = |v: f64| EvalResult::closed(v);
    let r = match function {
        "gamma" => {
            let v = parse_args(function, args, &["s"])?;
            closed(kernel::gamma_fn(v[0])?)
        }
        "ln_gamma" => {
            let v = parse_args(function, args, &["s"])?;
            closed(kernel::ln_gamma(v[0])?)
        }
        "lower_gamma" => {
            let v = parse_args(function, args, &["s", "x"])?;
            kernel::lower_gamma(v[0], v[1])?
        }
        "regularized_p" => {
            let v = parse_args(function, args, &["s", "x"])?;
            kernel::regularized_p(v[0], v[1])?
        }
        "erf" => kernel::erf(parse_args(function, args, &["x"])?[0])?,
        "erfc" => kernel::erfc(parse_args(function, args, &["x"])?[0])?,
        "erfcx" => kernel::erfcx(parse_args(function, args, &["x"])?[0])?,
        "erfc_moment" => {
            let v = parse_args(function, args, &["r", "a"])?;
            closed(transform::erfc_moment(v[0], v[1])?)
        }
        "erfc_linear_moment" => {
            let v = parse_args(function, args, &["mu", "a"])?;
            closed(transform::erfc_linear_moment(v[0], v[1])?)
        }
        "gauss_singular_closed" => {
            let v = parse_args(function, args, &["a", "b"])?;
            closed(transform::gauss_singular_closed(v[0], v[1])?)
        }
        "gauss_lorentz_closed" => {
            let v = parse_args(function, args, &["a", "b"])?;
            closed(transform::gauss_lorentz_closed(v[0], v[1])?)
        }
        _ => {
            return Err(Failure::Usage(format!(
                "unknown function {function:?}; expected one of gamma, ln_gamma, lower_gamma, \
                 regularized_p, erf, erfc, erfcx, erfc_moment, erfc_linear_moment, \
                 gauss_singular_closed, gauss_lorentz_closed"
            )))
        }
    };
    print_result(&r);
    Ok(0)
}

fn cmd_verify(ids: &[String], grid: &[String], format: Format, out: Option<PathBuf>) -> Result<u8, Failure> {
    let specs = if ids.is_empty() || ids.iter().any(|i| i.eq_ignore_ascii_case("all")) {
        catalog().iter().collect::<Vec<_>>()
    } else {
        ids.iter().map(|i| find(i)).collect::<Result<Vec<_>, _>>()?
    };
    let grid = Grid::parse(grid)?;
    let known = known_param_names();
    if let Some(bad) = grid.names().into_iter().find(|n| !known.contains(&n.as_str())) {
        return Err(Failure::Usage(format!("no identity has a parameter named {bad:?}")));
    }

    let mut runs = Vec::new();
    let mut empty = Vec::new();
    for spec in &specs {
        match run_grid(spec.id, &grid) {
            Ok(run) => runs.push(run),
            Err(Error::Domain(msg)) => {
                eprintln!("{msg}");
                empty.push(Note {
                    identity: spec.id.to_string(),
                    text: msg,
                });
            }
            Err(e) => return Err(e.into()),
        }
    }
    if runs.is_empty() {
        return Err(Failure::Domain("no admissible grid points for any requested identity".into()));
    }
    let mut report = Report::from_runs(runs);
    report.notes.extend(empty);

    let sink: Box<dyn Write> = match &out {
        Some(path) => Box::new(
            File::create(path).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        ),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    let io_err = |e: io::Error| Failure::Usage(format!("writing report: {e}"));
    match format {
        Format::Json => {
            sink.write_all(report.to_json()?.as_bytes()).map_err(io_err)?;
            sink.write_all(b"\n").map_err(io_err)?;
        }
        Format::Csv => report.write_csv(&mut sink)?,
    }
    sink.flush().map_err(io_err)?;

    let s = report.summary;
    eprintln!("{} checks: {} passed, {} failed, {} skipped", s.total, s.pass, s.fail, s.skipped);
    for r in report.records.iter().filter(|r| !r.pass) {
        let params: Vec<String> = r.params.iter().map(|p| format!("{}={}", p.name, p.value)).collect();
        eprintln!(
            "FAIL {} {}{} rel_diff={:e}{}",
            r.identity,
            params.join(" "),
            r.case.as_ref().map(|c| format!(" {c}")).unwrap_or_default(),
            r.rel_diff,
            r.reason.as_ref().map(|m| format!(" ({m})")).unwrap_or_default()
        );
    }
    Ok(if s.fail > 0 { EXIT_FAILURES } else { 0 })
}

fn cmd_transform(pair: &str, a: f64, form: FormArg, weighted: Weighting) -> Result<u8, Failure> {
    let pair = parse_pair(pair)?;
    let form = match form {
        FormArg::Theta => ReductionForm::Theta,
        FormArg::S => ReductionForm::S,
        FormArg::Time => ReductionForm::TimeDomain,
    };
    let cfg = QuadConfig::default();
    let r = match weighted {
        Weighting::Plain => transform::erfc_weighted_integral(&pair, a, form, &cfg)?,
        Weighting::Exp => transform::erfc_weighted_exp_integral(&pair, a, form, &cfg)?,
    };
    print_result(&r);
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Eval { function, args } => cmd_eval(function, args),
        Command::Verify { ids, grid, format, out } => cmd_verify(ids, grid, *format, out.clone()),
        Command::Transform { pair, a, form, weighted } => cmd_transform(pair, *a, *form, *weighted),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}
