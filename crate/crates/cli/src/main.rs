//! `exgd` — fit, compare and evaluate the exponentiated xgamma distribution
//! from the command line.
//!
//! Exit codes: 0 success, 2 usage error, 3 data error, 4 convergence
//! failure. Failures print a JSON error object on stderr.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use exgd::model_selection::{divergences, GASTRIC_REFERENCE};
use exgd::{
    DataError, ExgdError, Method, ModelName, Parameters, Sample, SeriesConfig,
};

use report::{sig6, to_json_string, SPEC_VERSION};

#[derive(Parser, Debug)]
#[command(name = "exgd", version, about = "Exponentiated xgamma distribution toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Estimate (alpha, theta) from a data file
    Fit(FitArgs),
    /// Fit all comparison models by maximum likelihood and tabulate criteria
    Compare(CompareArgs),
    /// Moments and shape measures for given parameters
    Props(PropsArgs),
    /// Draw random variates
    Sample(SampleArgs),
    /// Density and inequality-curve grids for plotting
    Curves(CurvesArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DataArg {
    /// One positive value per line, optional header; `@gastric` selects the
    /// bundled gastric-cancer survival times
    #[arg(long)]
    data: String,
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    theta: f64,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    /// Relative stopping tolerance of the series expansions
    #[arg(long, default_value_t = SeriesConfig::default().rel_tol)]
    rel_tol: f64,
    /// Maximum number of outer series terms
    #[arg(long, default_value_t = SeriesConfig::default().max_terms)]
    max_terms: usize,
}

#[derive(Args, Debug)]
struct FitArgs {
    #[command(flatten)]
    data: DataArg,
    #[arg(long, default_value = "mle", value_parser = parse_method)]
    method: Method,
    /// Optional starting alpha (requires --theta)
    #[arg(long, requires = "theta")]
    alpha: Option<f64>,
    /// Optional starting theta (requires --alpha)
    #[arg(long, requires = "alpha")]
    theta: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    data: DataArg,
    /// Restrict to these models (repeatable); default is all eight
    #[arg(long = "model", value_parser = parse_model)]
    models: Vec<ModelName>,
    /// Order rows by this criterion instead of the default model order
    #[arg(long)]
    sort: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct PropsArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    series: SeriesArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Number of variates
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Use the two-gamma mixture generator (exact only at alpha = 1)
    #[arg(long)]
    paper_alg: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CurvesArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Grid points per curve
    #[arg(long, default_value_t = 101)]
    points: usize,
    /// Write density.csv and inequality.csv into this directory
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[command(flatten)]
    series: SeriesArgs,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

fn parse_model(s: &str) -> Result<ModelName, String> {
    s.parse()
}

/// Failure categories mapped onto exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(String),
    Convergence(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Data(_) => 3,
            Failure::Convergence(_) => 4,
        }
    }

    fn to_json(&self) -> Value {
        let (kind, message) = match self {
            Failure::Usage(m) => ("usage", m),
            Failure::Data(m) => ("data", m),
            Failure::Convergence(m) => ("convergence", m),
        };
        json!({
            "spec_version": SPEC_VERSION,
            "error": { "kind": kind, "code": self.code(), "message": message },
        })
    }
}

impl From<ExgdError> for Failure {
    fn from(e: ExgdError) -> Self {
        match e {
            ExgdError::NonConvergence { .. } | ExgdError::Convergence(_) => {
                Failure::Convergence(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<DataError> for Failure {
    fn from(e: DataError) -> Self {
        Failure::Data(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            return fail(Failure::Usage(e.to_string().trim().to_string()));
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => fail(f),
    }
}

fn fail(f: Failure) -> ExitCode {
    eprint!("{}", to_json_string(&f.to_json()));
    ExitCode::from(f.code())
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Fit(a) => fit(a),
        Command::Compare(a) => compare(a),
        Command::Props(a) => props(a),
        Command::Sample(a) => sample(a),
        Command::Curves(a) => curves(a),
    }
}

fn emit(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Data(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(data: &DataArg) -> Result<Sample, Failure> {
    if data.data == "@gastric" {
        return Ok(exgd::gastric_cancer());
    }
    Ok(Sample::from_path(&data.data)?)
}

fn params(p: &ParamArgs) -> Result<Parameters, Failure> {
    Ok(Parameters::new(p.alpha, p.theta)?)
}

fn series_config(s: &SeriesArgs) -> Result<SeriesConfig, Failure> {
    Ok(SeriesConfig::new(s.max_terms, s.rel_tol)?)
}

fn fit(a: FitArgs) -> Result<(), Failure> {
    let s = load(&a.data)?;
    let init = match (a.alpha, a.theta) {
        (Some(al), Some(th)) => Some(Parameters::new(al, th)?),
        _ => None,
    };
    let f = exgd::fit(a.method, &s, init)?;
    let text = match a.common.format.unwrap_or(Format::Json) {
        Format::Json => to_json_string(&report::fit_json(&f, &s)),
        Format::Csv => report::fit_csv(&f),
        Format::Table => report::fit_table(&f, &s),
    };
    emit(&a.common, &text)?;
    if !f.converged {
        return Err(Failure::Convergence(format!(
            "{} fit stopped after {} iterations without meeting the simplex tolerance",
            f.method, f.iterations
        )));
    }
    Ok(())
}

fn compare(a: CompareArgs) -> Result<(), Failure> {
    let s = load(&a.data)?;
    let models = if a.models.is_empty() {
        ModelName::ALL.to_vec()
    } else {
        a.models.clone()
    };
    let mut table = exgd::compare_models(&s, &models);
    if let Some(c) = &a.sort {
        let c: exgd::Criterion = c.parse().map_err(Failure::Usage)?;
        table.sort_by(c);
    }
    let is_bundled = s.values() == exgd::gastric_cancer().values();
    let div = is_bundled.then(|| divergences(&table, &GASTRIC_REFERENCE));
    let text = match a.common.format.unwrap_or(Format::Json) {
        Format::Json => to_json_string(&report::comparison_json(&table, div.as_deref())),
        Format::Csv => report::comparison_csv(&table),
        Format::Table => report::comparison_table(&table, div.as_deref()),
    };
    emit(&a.common, &text)?;
    if let Some(r) = table.rows.iter().find(|r| r.error.is_some()) {
        return Err(Failure::Convergence(format!(
            "{} fit failed: {}",
            r.model,
            r.error.as_deref().unwrap_or("")
        )));
    }
    Ok(())
}

fn props(a: PropsArgs) -> Result<(), Failure> {
    let p = params(&a.params)?;
    let cfg = series_config(&a.series)?;
    let mut values: Vec<(&str, Value)> = Vec::new();
    let mut errors = Map::new();
    let mut record = |name: &'static str, r: exgd::Result<Value>| match r {
        Ok(v) => values.push((name, v)),
        Err(e) => {
            values.push((name, Value::Null));
            errors.insert(name.into(), json!(e.to_string()));
        }
    };
    let m = exgd::moments(&p, &cfg);
    record("raw_moments", m.clone().map(|m| json!(m.raw)));
    record("central_moments", m.clone().map(|m| json!(m.central)));
    record("mean", m.clone().map(|m| json!(m.mean())));
    record("variance", m.clone().map(|m| json!(m.variance())));
    record("pearson_sk", m.clone().map(|m| json!(m.pearson_sk)));
    record("pearson_kr", m.clone().map(|m| json!(m.pearson_kr)));
    record("median", exgd::quantile(0.5, &p).map(|v| json!(v)));
    record("bowley_skewness", exgd::bowley_skewness(&p).map(|v| json!(v)));
    record("moors_kurtosis", exgd::moors_kurtosis(&p).map(|v| json!(v)));
    record("mean_deviation", exgd::mean_deviation(&p, &cfg).map(|v| json!(v)));
    record("gini_index", exgd::gini_index(&p, &cfg).map(|v| json!(v)));
    record("bonferroni_index", exgd::bonferroni_index(&p, &cfg).map(|v| json!(v)));

    let text = match a.common.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("spec_version".into(), json!(SPEC_VERSION));
            obj.insert("alpha".into(), json!(p.alpha()));
            obj.insert("theta".into(), json!(p.theta()));
            for (k, v) in &values {
                obj.insert((*k).into(), v.clone());
            }
            if !errors.is_empty() {
                obj.insert("errors".into(), Value::Object(errors.clone()));
            }
            to_json_string(&Value::Object(obj))
        }
        Format::Csv => {
            let mut w = String::from("quantity,value\n");
            for (k, v) in &values {
                for (name, x) in flatten(k, v) {
                    w.push_str(&format!("{name},{}\n", x.map(report::exact).unwrap_or_default()));
                }
            }
            w
        }
        Format::Table => {
            let mut cells = vec![
                vec!["alpha".to_string(), sig6(p.alpha())],
                vec!["theta".to_string(), sig6(p.theta())],
            ];
            for (k, v) in &values {
                for (name, x) in flatten(k, v) {
                    cells.push(vec![name, x.map(sig6).unwrap_or_else(|| "failed".into())]);
                }
            }
            report::align(&cells)
        }
    };
    emit(&a.common, &text)?;
    if !errors.is_empty() {
        let detail: Vec<String> = errors
            .iter()
            .map(|(k, v)| format!("{k}: {}", v.as_str().unwrap_or("")))
            .collect();
        return Err(Failure::Convergence(detail.join("; ")));
    }
    Ok(())
}

/// Scalar or array JSON value as (label, number) pairs.
fn flatten(name: &str, v: &Value) -> Vec<(String, Option<f64>)> {
    match v {
        Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, x)| (format!("{name}[{}]", i + 1), x.as_f64()))
            .collect(),
        other => vec![(name.to_string(), other.as_f64())],
    }
}

fn sample(a: SampleArgs) -> Result<(), Failure> {
    let p = params(&a.params)?;
    if a.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let s = if a.paper_alg {
        exgd::sample_paper_alg(a.n, &p, a.seed)?
    } else {
        exgd::sample(a.n, &p, a.seed)?
    };
    let text = match a.common.format.unwrap_or(Format::Csv) {
        Format::Json => to_json_string(&json!({
            "spec_version": SPEC_VERSION,
            "alpha": p.alpha(),
            "theta": p.theta(),
            "seed": a.seed,
            "generator": if a.paper_alg { "gamma_mixture" } else { "inverse_transform" },
            "n": s.n(),
            "values": s.values(),
        })),
        Format::Csv | Format::Table => {
            let mut out = String::from("x\n");
            for v in s.values() {
                out.push_str(&report::exact(*v));
                out.push('\n');
            }
            out
        }
    };
    emit(&a.common, &text)
}

fn curves(a: CurvesArgs) -> Result<(), Failure> {
    let p = params(&a.params)?;
    let cfg = series_config(&a.series)?;
    if a.points < 2 {
        return Err(Failure::Usage("--points must be at least 2".into()));
    }
    let x_max = exgd::quantile(0.999, &p)?;
    let mut density = Vec::with_capacity(a.points);
    for k in 1..=a.points {
        let x = x_max * k as f64 / a.points as f64;
        let hazard = exgd::exgd_hazard(x, &p).unwrap_or(f64::NAN);
        density.push(vec![
            x,
            exgd::exgd_pdf(x, &p)?,
            exgd::exgd_cdf(x, &p)?,
            exgd::exgd_survival(x, &p)?,
            hazard,
        ]);
    }
    let mut inequality = Vec::with_capacity(a.points);
    for k in 1..=a.points {
        let u = k as f64 / (a.points + 1) as f64;
        let l = exgd::lorenz_curve(u, &p, &cfg)?;
        inequality.push(vec![u, l, l / u]);
    }
    let density = report::csv_from_rows(&["x", "pdf", "cdf", "survival", "hazard"], &density);
    let inequality = report::csv_from_rows(&["p", "lorenz", "bonferroni"], &inequality);
    match &a.out_dir {
        Some(dir) => {
            let write = |name: &str, text: &str| {
                std::fs::write(dir.join(name), text)
                    .map_err(|e| Failure::Data(format!("cannot write {}: {e}", dir.join(name).display())))
            };
            write("density.csv", &density)?;
            write("inequality.csv", &inequality)?;
        }
        None => print!("{density}\n{inequality}"),
    }
    Ok(())
}
