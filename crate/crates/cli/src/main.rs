//! `cographon`: counts, samples, expectations, growth constants, Brownian
//! cographon experiments and the brute-force cross-check, all seeded and
//! emitting CSV or JSON.

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use cographon::asymptotics::{self, AsymptoticsError};
use cographon::brownian::{self, BrownianError};
use cographon::oracle::{self, OracleError};
use cographon::sampling::{self, Model, SamplingError};
use cographon::series::{self, EnumerationError, Rational};

const SCHEMA_VERSION: u32 = 1;
const THREADS_ENV: &str = "COGRAPHON_THREADS";

#[derive(Parser, Debug, Serialize)]
#[command(name = "cographon", version, about = "Random cographs and separable permutations")]
struct Cli {
    /// Master seed; every random stream is derived from it.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Order up to which series coefficients are computed exactly.
    #[arg(long, global = true, default_value_t = series::DEFAULT_EXACT_ORDER)]
    trunc: usize,
    /// Relative tolerance for root finding.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ModelArg {
    Cograph,
    Separable,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Cograph => Model::Cograph,
            ModelArg::Separable => Model::Separable,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum BrownianMode {
    Sample,
    Alphatilde,
    Phi,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
enum Command {
    /// Exact counts for sizes 1..=n-max.
    Count {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        n_max: usize,
    },
    /// Uniform samples and their independence number / LIS.
    Sample {
        #[arg(long, value_enum)]
        model: ModelArg,
        /// One or more sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        reps: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.5, 0.9])]
        quantiles: Vec<f64>,
        /// Also emit every sampled tree.
        #[arg(long)]
        objects: bool,
    },
    /// Mean number of independent sets / increasing subsequences of size k.
    Expect {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long)]
        n: usize,
        /// A single size; all k in 0..=n when neither this nor --k-range is given.
        #[arg(long, conflicts_with = "k_range")]
        k: Option<usize>,
        /// Inclusive range `a:b`.
        #[arg(long)]
        k_range: Option<String>,
    },
    /// Growth constant `C_β` or `E_β` on a β grid.
    Curve {
        #[arg(long, value_enum)]
        model: ModelArg,
        /// `a:b:step`.
        #[arg(long, default_value = "0.05:0.95:0.05")]
        grid: String,
    },
    /// Thresholds and maximisers of both growth-constant curves (JSON).
    Constants,
    /// Brownian cographon experiments.
    Brownian {
        #[arg(long, value_enum)]
        mode: BrownianMode,
        /// Semi-length of the discretised excursion.
        #[arg(long = "n", default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        k: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 10)]
        reps: usize,
        #[arg(long, default_value_t = 60)]
        iterations: usize,
        #[arg(long, default_value_t = 100_000)]
        particles: usize,
    },
    /// Compares the series engine with brute-force enumeration.
    OracleCheck {
        /// Testing aid: perturb [zⁿuᵏ]C by one before comparing.
        #[arg(long, hide = true, value_name = "N,K")]
        corrupt: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Numerical(String),
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numerical(_) => 3,
            Failure::Mismatch(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Numerical(m) | Failure::Mismatch(m) => m,
        }
    }
}

impl From<EnumerationError> for Failure {
    fn from(e: EnumerationError) -> Self {
        match e {
            EnumerationError::NonConvergence { .. } | EnumerationError::FloatRange { .. } => Failure::Numerical(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<AsymptoticsError> for Failure {
    fn from(e: AsymptoticsError) -> Self {
        match e {
            AsymptoticsError::Domain(_) | AsymptoticsError::CurveDomain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

impl From<SamplingError> for Failure {
    fn from(e: SamplingError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<BrownianError> for Failure {
    fn from(e: BrownianError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn config_json(cli: &Cli) -> serde_json::Value {
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "seed": cli.seed,
        "trunc": cli.trunc,
        "tol": cli.tol,
        "format": cli.format,
        "command": cli.command,
    })
}

/// Leading comment line of every CSV output.
fn header(cli: &Cli) -> String {
    format!("# cographon config={}\n", config_json(cli))
}

fn envelope(cli: &Cli, body: serde_json::Value) -> String {
    let mut v = json!({ "schema_version": SCHEMA_VERSION, "config": config_json(cli) });
    if let (Some(obj), serde_json::Value::Object(extra)) = (v.as_object_mut(), body) {
        obj.extend(extra);
    }
    serde_json::to_string_pretty(&v).expect("serialisable") + "\n"
}

fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("expected a:b, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn parse_grid(s: &str) -> Result<(f64, f64, f64), Failure> {
    let bad = || Failure::Usage(format!("expected a:b:step, got {s:?}"));
    let parts: Vec<f64> = s.split(':').map(|x| x.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
    match parts[..] {
        [a, b, step] if step > 0.0 && a <= b => Ok((a, b, step)),
        _ => Err(bad()),
    }
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Count { model, n_max } => cmd_count(cli, (*model).into(), *n_max),
        Command::Sample { model, n, reps, quantiles, objects } => cmd_sample(cli, (*model).into(), n, *reps, quantiles, *objects),
        Command::Expect { model, n, k, k_range } => cmd_expect(cli, (*model).into(), *n, *k, k_range.as_deref()),
        Command::Curve { model, grid } => cmd_curve(cli, (*model).into(), grid),
        Command::Constants => cmd_constants(cli),
        Command::Brownian { mode, n, k, p, reps, iterations, particles } => {
            cmd_brownian(cli, *mode, *n, *k, *p, *reps, *iterations, *particles)
        }
        Command::OracleCheck { corrupt } => cmd_oracle_check(cli, corrupt.as_deref()),
    }
}

fn cmd_count(cli: &Cli, model: Model, n_max: usize) -> Result<String, Failure> {
    if n_max == 0 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    let counts: Vec<String> = match model {
        Model::Cograph => {
            let s = series::CographSeries::compute(n_max)?;
            (1..=n_max).map(|n| s.count(n).map(|c| c.to_string())).collect::<Result<_, _>>()?
        }
        Model::Separable => {
            let s = series::SeparableSeries::compute(n_max)?;
            (1..=n_max).map(|n| s.count(n).map(|c| c.to_string())).collect::<Result<_, _>>()?
        }
    };
    Ok(match cli.format {
        Format::Csv => {
            let mut out = header(cli) + "n,count\n";
            for (i, c) in counts.iter().enumerate() {
                writeln!(out, "{},{}", i + 1, c).unwrap();
            }
            out
        }
        Format::Json => {
            let rows: Vec<_> = counts.iter().enumerate().map(|(i, c)| json!({ "n": i + 1, "count": c })).collect();
            envelope(cli, json!({ "rows": rows }))
        }
    })
}

fn cmd_sample(cli: &Cli, model: Model, sizes: &[usize], reps: usize, quantiles: &[f64], objects: bool) -> Result<String, Failure> {
    if sizes.contains(&0) {
        return Err(Failure::Usage("sizes must be at least 1".into()));
    }
    let table = sampling::monte_carlo(model, sizes, reps, quantiles, cli.seed)?;
    let objs = if objects { Some(sampling::monte_carlo_objects(model, sizes, reps, cli.seed)?) } else { None };
    Ok(match cli.format {
        Format::Csv => {
            let mut out = header(cli);
            out += &table.records_csv();
            out += &table.summary_csv();
            if let Some(objs) = objs {
                out += "n,rep,object\n";
                for (n, rep, text) in objs {
                    writeln!(out, "{n},{rep},{}", csv_quote(&text)).unwrap();
                }
            }
            out
        }
        Format::Json => {
            let mut body = json!({ "model": model, "records": table.records, "summaries": table.summaries });
            if let Some(objs) = objs {
                let list: Vec<_> = objs.iter().map(|(n, rep, t)| json!({ "n": n, "rep": rep, "object": t })).collect();
                body["objects"] = json!(list);
            }
            envelope(cli, body)
        }
    })
}

struct ExpectRow {
    k: usize,
    exact: Option<Rational>,
    float: f64,
}

fn cmd_expect(cli: &Cli, model: Model, n: usize, k: Option<usize>, k_range: Option<&str>) -> Result<String, Failure> {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let (k_lo, k_hi) = match (k, k_range) {
        (Some(k), _) => (k, k),
        (None, Some(r)) => parse_range(r)?,
        (None, None) => (0, n),
    };
    if k_lo > k_hi {
        return Err(Failure::Usage(format!("empty k range {k_lo}:{k_hi}")));
    }
    let mut rows = Vec::new();
    if n <= cli.trunc {
        let exact: Box<dyn Fn(usize) -> Result<Rational, EnumerationError>> = match model {
            Model::Cograph => {
                let s = series::CographSeries::compute(n)?;
                Box::new(move |k| s.expected_x(n, k))
            }
            Model::Separable => {
                let s = series::SeparableSeries::compute(n)?;
                Box::new(move |k| s.expected_z(n, k))
            }
        };
        for k in k_lo..=k_hi {
            let q = exact(k)?;
            rows.push(ExpectRow { k, float: oracle::to_f64(&q), exact: Some(q) });
        }
    } else {
        let float: Box<dyn Fn(usize) -> Result<f64, EnumerationError>> = match model {
            Model::Cograph => {
                let s = series::FloatCographSeries::compute(n);
                Box::new(move |k| s.expected_x(n, k))
            }
            Model::Separable => {
                let s = series::FloatSeparableSeries::compute(n);
                Box::new(move |k| s.expected_z(n, k))
            }
        };
        for k in k_lo..=k_hi {
            rows.push(ExpectRow { k, exact: None, float: float(k)? });
        }
    }
    Ok(match cli.format {
        Format::Csv => {
            let mut out = header(cli) + "n,k,numerator,denominator,float\n";
            for r in &rows {
                let (num, den) = r.exact.as_ref().map_or((String::new(), String::new()), |q| (q.numer().to_string(), q.denom().to_string()));
                writeln!(out, "{n},{},{num},{den},{:e}", r.k, r.float).unwrap();
            }
            out
        }
        Format::Json => {
            let list: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "n": n,
                        "k": r.k,
                        "numerator": r.exact.as_ref().map(|q| q.numer().to_string()),
                        "denominator": r.exact.as_ref().map(|q| q.denom().to_string()),
                        "float": r.float,
                    })
                })
                .collect();
            envelope(cli, json!({ "model": model, "exact": n <= cli.trunc, "rows": list }))
        }
    })
}

fn cmd_curve(cli: &Cli, model: Model, grid: &str) -> Result<String, Failure> {
    let (a, b, step) = parse_grid(grid)?;
    let points = asymptotics::curve_export(model, a, b, step)?;
    Ok(match cli.format {
        Format::Csv => {
            let mut out = header(cli) + "beta,value\n";
            for (beta, v) in &points {
                writeln!(out, "{beta},{v}").unwrap();
            }
            out
        }
        Format::Json => {
            let list: Vec<_> = points.iter().map(|(b, v)| json!({ "beta": b, "value": v })).collect();
            envelope(cli, json!({ "model": model, "rows": list }))
        }
    })
}

fn cmd_constants(cli: &Cli) -> Result<String, Failure> {
    let c = asymptotics::constants()?;
    let mut body = serde_json::to_value(c).expect("serialisable");
    body["tolerances"] = json!({ "root": 1e-14, "maximiser": 1e-10, "inversion": cli.tol });
    Ok(envelope(cli, body))
}

#[allow(clippy::too_many_arguments)]
fn cmd_brownian(
    cli: &Cli,
    mode: BrownianMode,
    n: usize,
    k: usize,
    p: f64,
    reps: usize,
    iterations: usize,
    particles: usize,
) -> Result<String, Failure> {
    let csv = match mode {
        BrownianMode::Sample => {
            let mut out = format!("# seed={} p={p}\nrep,k,N,edges,is_cograph,alpha,omega,degenerate\n", cli.seed);
            let mut rows = Vec::new();
            for rep in 0..reps {
                let mut rng = sampling::RandomSource::for_worker(cli.seed, rep as u64);
                let mut exc = brownian::sample_excursion(n, p, &mut rng)?;
                let s = exc.sample_graph(k, &mut rng)?;
                let t = cographon::Cotree::from_graph(&s.graph).ok();
                let (a, w) = t.as_ref().map_or((0, 0), |t| (cographon::statistics::alpha(t), cographon::statistics::omega(t)));
                writeln!(out, "{rep},{k},{n},{},{},{a},{w},{}", s.graph.edge_count(), t.is_some(), s.degenerate).unwrap();
                rows.push(json!({
                    "rep": rep, "k": k, "N": n, "graph": s.graph.to_string(), "is_cograph": t.is_some(),
                    "alpha": a, "omega": w, "degenerate": s.degenerate,
                }));
            }
            if cli.format == Format::Json {
                return Ok(envelope(cli, json!({ "rows": rows })));
            }
            out
        }
        BrownianMode::Alphatilde => {
            let t = brownian::estimate_alpha_tilde(k, n, p, reps, cli.seed)?;
            if cli.format == Format::Json {
                return Ok(envelope(cli, json!({ "k": k, "N": n, "values": t.values, "median": t.median(), "degenerate": t.degenerate })));
            }
            t.csv()
        }
        BrownianMode::Phi => {
            let rows = brownian::phi_p_iterate(p, iterations, particles, cli.seed)?;
            if cli.format == Format::Json {
                let list: Vec<_> = rows
                    .iter()
                    .map(|r| json!({ "iter": r.iter, "mean": r.mean, "median": r.median, "w1_prev": r.w1_prev }))
                    .collect();
                return Ok(envelope(cli, json!({ "rows": list })));
            }
            brownian::phi_csv(p, cli.seed, &rows)
        }
    };
    Ok(header(cli) + &csv)
}

fn cmd_oracle_check(cli: &Cli, corrupt: Option<&str>) -> Result<String, Failure> {
    let (max_x, max_z) = (oracle::COGRAPH_LIMIT, 7);
    let mut c = series::CographSeries::compute(max_x)?.c().clone();
    let z = series::SeparableSeries::compute(max_z)?.z().clone();
    if let Some(spec) = corrupt {
        let bad = || Failure::Usage(format!("expected N,K, got {spec:?}"));
        let (n, k) = spec.split_once(',').ok_or_else(bad)?;
        let (n, k): (usize, usize) = (n.parse().map_err(|_| bad())?, k.parse().map_err(|_| bad())?);
        if n > max_x || k > n {
            return Err(bad());
        }
        let v = c.coeff(n, k) + Rational::from_integer(1.into());
        c.set_coeff(n, k, v);
    }
    let report = oracle::check_equivalence(&c, &z, max_x, max_z)?;
    let mut out = header(cli);
    writeln!(out, "cograph: expected_X(n,k) for 1 <= n <= {max_x}, 0 <= k <= n").unwrap();
    writeln!(out, "separable: expected_Z(n,k) for 1 <= n <= {max_z}, 0 <= k <= n").unwrap();
    writeln!(out, "checked {} values, {} mismatches", report.checked, report.mismatches.len()).unwrap();
    if let Some(m) = report.mismatches.first() {
        let msg = format!(
            "{out}first mismatch: {:?} n={} k={} series={} oracle={}\nFAIL\n",
            m.model, m.n, m.k, m.series, m.oracle
        );
        return Err(Failure::Mismatch(msg));
    }
    out.push_str("PASS\n");
    Ok(out)
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.parse().map_err(|_| Failure::Usage(format!("{THREADS_ENV}={v:?} is not a thread count")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| run(&cli));
    match result {
        Ok(text) => match emit(&cli, &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(f) => {
            if let Failure::Mismatch(report) = &f {
                let _ = emit(&cli, report);
            }
            eprintln!("error: {}", f.message().lines().rev().nth(1).unwrap_or(f.message()));
            ExitCode::from(f.code())
        }
    }
}
