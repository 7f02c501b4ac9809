//! `cubeclif`: operator matrices, degree-bound verification runs,
//! eigenvector certificates and sensitivity checks from the command line.
//!
//! Exit codes: 0 when every check holds, 1 on a violation, 2 on a usage or
//! configuration error.

use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cube_clifford::boolean::{check_sensitivity_bound, profile, BooleanFunction, SensitivityMode};
use cube_clifford::verify::{
    verify_exhaustive, verify_sampled, ExhaustiveOptions, SampleOptions, WeightSource,
};
use cube_clifford::{
    extract_certificate, huang_matrix, operator_matrix, operator_matrix_exact, Error,
    InducedSubgraph, Tolerances, WeightVector,
};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "cubeclif",
    version,
    about = "Clifford-algebra checks of hypercube degree bounds"
)]
struct Cli {
    /// Output format for the report on stdout.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Sample,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the matrix of right multiplication by S_a on the blade basis.
    Matrix(MatrixArgs),
    /// Check the degree bound over all or sampled vertex subsets.
    Verify(VerifyArgs),
    /// Extract an eigenvector certificate for one vertex subset.
    Certificate(CertificateArgs),
    /// Check s(f)^2 >= deg(f) for Boolean functions.
    Sensitivity(SensitivityArgs),
}

#[derive(Args, Debug)]
struct MatrixArgs {
    #[arg(long)]
    n: u32,
    /// Comma-separated non-negative weights, one per coordinate.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<f64>>,
    /// Also build A_n by its block recursion and compare entrywise.
    #[arg(long, conflicts_with = "weights")]
    huang: bool,
    /// Reject non-integer weights.
    #[arg(long)]
    rational: bool,
}

#[derive(Args, Debug)]
struct ToleranceArgs {
    /// Slack allowed in the weighted degree comparison.
    #[arg(long, env = "CUBE_CLIFFORD_TOLERANCE")]
    tolerance: Option<f64>,
    /// Largest accepted eigen-residual of a certificate.
    #[arg(long, env = "CUBE_CLIFFORD_RESIDUAL_TOLERANCE")]
    residual_tolerance: Option<f64>,
    /// Relative pivot threshold of the kernel solve.
    #[arg(long, env = "CUBE_CLIFFORD_PIVOT_TOLERANCE")]
    pivot_tolerance: Option<f64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum)]
    mode: Mode,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<f64>>,
    /// Draw weights k/100 uniformly from [0, MAX] for every sample.
    #[arg(long, value_name = "MAX", conflicts_with = "weights")]
    random_weights: Option<u32>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    threads: u64,
    /// Acknowledge the long exhaustive run at n = 5.
    #[arg(long)]
    allow_heavy: bool,
    /// Fraction of sampled instances that also get a certificate.
    #[arg(long, default_value_t = 0.01)]
    certificate_fraction: f64,
    #[command(flatten)]
    tolerances: ToleranceArgs,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("set").required(true))]
struct CertificateArgs {
    #[arg(long)]
    n: u32,
    /// Comma-separated vertex list.
    #[arg(long, value_delimiter = ',', group = "set")]
    vertices: Option<Vec<u32>>,
    /// Vertex set as a hex bitset, bit v set for vertex v.
    #[arg(long, group = "set")]
    vertices_hex: Option<String>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<f64>>,
    #[command(flatten)]
    tolerances: ToleranceArgs,
}

#[derive(Args, Debug)]
struct SensitivityArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, required_unless_present = "function")]
    mode: Option<Mode>,
    /// Single truth table in hex, bit v being f(v).
    #[arg(long = "fn", value_name = "HEX", conflicts_with = "mode")]
    function: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    threads: u64,
}

enum Status {
    Holds,
    Violation,
}

impl Status {
    fn from_bool(holds: bool) -> Self {
        if holds {
            Status::Holds
        } else {
            Status::Violation
        }
    }
}

/// A report plus optional rows for the csv and plain renderings.
struct Output {
    json: Value,
    table: Option<Vec<Vec<String>>>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok((status, output)) => {
            if let Err(e) = emit(cli.format, &output).or_else(|e| match e.kind() {
                io::ErrorKind::BrokenPipe => Ok(()),
                _ => Err(e),
            }) {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(2);
            }
            match status {
                Status::Holds => ExitCode::SUCCESS,
                Status::Violation => {
                    eprintln!("violation found");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<(Status, Output)> {
    match &cli.command {
        Command::Matrix(args) => cmd_matrix(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Certificate(args) => cmd_certificate(args),
        Command::Sensitivity(args) => cmd_sensitivity(args),
    }
}

fn weights_for(n: u32, weights: &Option<Vec<f64>>) -> anyhow::Result<WeightVector> {
    Ok(match weights {
        Some(a) => WeightVector::for_dim(n, a.clone())?,
        None => WeightVector::unit(n)?,
    })
}

fn tolerances(args: &ToleranceArgs) -> anyhow::Result<Tolerances> {
    let mut tol = Tolerances::default();
    for (slot, value, name) in [
        (&mut tol.degree, args.tolerance, "tolerance"),
        (
            &mut tol.residual,
            args.residual_tolerance,
            "residual tolerance",
        ),
        (&mut tol.pivot, args.pivot_tolerance, "pivot tolerance"),
    ] {
        if let Some(v) = value {
            if !v.is_finite() || v < 0.0 {
                bail!("{name} must be a finite non-negative number, got {v}");
            }
            *slot = v;
        }
    }
    Ok(tol)
}

fn cmd_matrix(args: &MatrixArgs) -> anyhow::Result<(Status, Output)> {
    let w = weights_for(args.n, &args.weights)?;
    let exact = w.as_integers();
    if args.rational && exact.is_none() {
        bail!("--rational requires integer weights");
    }
    let (matrix, rows): (Value, Vec<Vec<String>>) = match &exact {
        Some(a) => {
            let m = operator_matrix_exact(a)?;
            let rows: Vec<Vec<i64>> = m.rows().map(<[i64]>::to_vec).collect();
            let text = rows
                .iter()
                .map(|r| r.iter().map(i64::to_string).collect())
                .collect();
            (json!(rows), text)
        }
        None => {
            let m = operator_matrix(&w)?;
            let rows: Vec<Vec<f64>> = m.rows().map(<[f64]>::to_vec).collect();
            let text = rows
                .iter()
                .map(|r| r.iter().map(f64::to_string).collect())
                .collect();
            (json!(rows), text)
        }
    };
    let mut report = json!({ "n": args.n, "weights": w.as_slice(), "matrix": matrix });
    let mut table = rows;
    let mut status = Status::Holds;
    if args.huang {
        let a = exact.as_deref().context("unit weights are integral")?;
        let identical = huang_matrix(args.n)? == operator_matrix_exact(a)?;
        report["identical"] = json!(identical);
        table.push(vec!["identical".into(), identical.to_string()]);
        status = Status::from_bool(identical);
    }
    Ok((
        status,
        Output {
            json: report,
            table: Some(table),
        },
    ))
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<(Status, Output)> {
    let threads = args.threads as usize;
    let report = match args.mode {
        Mode::Exhaustive => {
            if args.weights.is_some() || args.random_weights.is_some() {
                bail!("exhaustive mode checks unit weights only");
            }
            let opts = ExhaustiveOptions {
                allow_heavy: args.allow_heavy,
                threads,
            };
            verify_exhaustive(args.n, &opts).map_err(|e| match e {
                Error::HeavyRunNotAcknowledged { .. } => {
                    anyhow::Error::new(e).context("refusing to start; pass --allow-heavy to run it")
                }
                e => e.into(),
            })?
        }
        Mode::Sample => {
            let source = match (&args.weights, args.random_weights) {
                (_, Some(max)) => WeightSource::Random { random_max: max },
                (a, None) => WeightSource::Fixed(weights_for(args.n, a)?.as_slice().to_vec()),
            };
            let fraction = args.certificate_fraction;
            if !(0.0..=1.0).contains(&fraction) {
                bail!("certificate fraction must lie in [0, 1], got {fraction}");
            }
            let opts = SampleOptions {
                certificate_fraction: fraction,
                threads,
                tolerances: tolerances(&args.tolerances)?,
                ..SampleOptions::default()
            };
            verify_sampled(args.n, args.samples, args.seed, &source, &opts)?
        }
    };
    Ok((
        Status::from_bool(report.all_hold),
        Output {
            json: serde_json::to_value(&report)?,
            table: None,
        },
    ))
}

#[derive(Serialize)]
struct CertificateReport {
    n: u32,
    weights: Vec<f64>,
    vertices: Vec<u32>,
    /// Coefficients of `x` on `vertices`, in the same order.
    x: Vec<f64>,
    v0: u32,
    lambda: f64,
    residual: f64,
    v0_weighted_degree: f64,
    inequality_chain: [f64; 3],
    holds: bool,
}

fn cmd_certificate(args: &CertificateArgs) -> anyhow::Result<(Status, Output)> {
    let subgraph = match (&args.vertices, &args.vertices_hex) {
        (Some(list), _) => {
            let h = InducedSubgraph::from_vertices(args.n, list.iter().copied())?;
            if h.len() as usize != list.len() {
                bail!("vertex list contains duplicates");
            }
            h
        }
        (None, Some(hex)) => InducedSubgraph::from_hex(args.n, hex)?,
        (None, None) => bail!("a vertex set is required"),
    };
    let w = weights_for(args.n, &args.weights)?;
    let tol = tolerances(&args.tolerances)?;
    let c = extract_certificate(&subgraph, &w, &tol)?;
    let chain = c.inequality_chain();
    let (vertices, x) = c.support().unzip();
    let report = CertificateReport {
        n: args.n,
        weights: w.as_slice().to_vec(),
        vertices,
        x,
        v0: c.v0,
        lambda: c.lambda,
        residual: c.residual,
        v0_weighted_degree: c.v0_weighted_degree,
        inequality_chain: [chain.scaled_peak, chain.neighbor_sum, chain.degree_bound],
        holds: c.holds,
    };
    Ok((
        Status::from_bool(c.holds && chain.holds(tol.residual)),
        Output {
            json: serde_json::to_value(&report)?,
            table: None,
        },
    ))
}

fn cmd_sensitivity(args: &SensitivityArgs) -> anyhow::Result<(Status, Output)> {
    if let Some(hex) = &args.function {
        let p = profile(&BooleanFunction::from_hex(args.n, hex)?);
        return Ok((
            Status::from_bool(p.bound_holds),
            Output {
                json: serde_json::to_value(&p)?,
                table: None,
            },
        ));
    }
    let mode = match args.mode {
        Some(Mode::Exhaustive) => SensitivityMode::Exhaustive,
        Some(Mode::Sample) => SensitivityMode::Sample,
        None => bail!("either --mode or --fn is required"),
    };
    let report =
        check_sensitivity_bound(args.n, mode, args.samples, args.seed, args.threads as usize)?;
    Ok((
        Status::from_bool(report.all_hold),
        Output {
            json: serde_json::to_value(&report)?,
            table: None,
        },
    ))
}

/// Dotted-path leaves of a JSON value, in document order.
fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let join = |key: &str| {
        if prefix.is_empty() {
            key.to_string()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(items) => items
            .iter()
            .enumerate()
            .for_each(|(i, v)| flatten(&join(&i.to_string()), v, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn emit(format: Format, output: &Output) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let rows = || match &output.table {
        Some(rows) => rows.clone(),
        None => {
            let mut pairs = Vec::new();
            flatten("", &output.json, &mut pairs);
            pairs.into_iter().map(|(k, v)| vec![k, v]).collect()
        }
    };
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &output.json)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .flexible(true)
                .from_writer(&mut out);
            for row in rows() {
                w.write_record(&row)?;
            }
            w.flush()?;
        }
        Format::Plain => {
            for row in rows() {
                match output.table {
                    Some(_) => writeln!(out, "{}", row.join(" "))?,
                    None => writeln!(out, "{}: {}", row[0], row[1])?,
                }
            }
        }
    }
    out.flush()
}
