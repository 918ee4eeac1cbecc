use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperladder::algebra::rational::parse_rational;
use hyperladder::factorization::{adjoint_scaled_factorization, mu_bracket};
use hyperladder::families::{canonical_name, make_family, FamilySpec, Kind, Params, FAMILY_NAMES};
use hyperladder::ladder_poly::build_family_polys;
use hyperladder::orthonormal::Basis;
use hyperladder::verify::{self, Residual, Settings, Suite, DEFAULT_TOLERANCE};
use hyperladder::Error;

#[derive(Parser, Debug)]
#[command(name = "hyperladder", version, about = "Ladder operators and factorizations of classical orthogonal polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// List the families and their parameters.
    List,
    /// Tabulate polynomial coefficients and the recurrence/factorization data.
    Table,
    /// Evaluate an orthonormal function at points.
    Eval,
    /// Run verification suites.
    Verify,
}

#[derive(clap::Args, Debug)]
struct Opts {
    #[arg(long, global = true)]
    family: Option<String>,
    #[arg(long, global = true, value_name = "p/q")]
    alpha: Option<String>,
    #[arg(long, global = true, value_name = "p/q")]
    beta: Option<String>,
    #[arg(long, global = true, value_name = "p/q")]
    mu: Option<String>,
    #[arg(long, global = true, value_name = "p/q")]
    gamma: Option<String>,
    #[arg(long, global = true, value_name = "p/q")]
    p: Option<String>,
    /// Lattice size.
    #[arg(long = "N", global = true)]
    size: Option<usize>,
    #[arg(long, global = true)]
    n_max: Option<usize>,
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Comma-separated evaluation points.
    #[arg(long, global = true, allow_hyphen_values = true)]
    points: Option<String>,
    /// Comma-separated suite names, or `all`.
    #[arg(long, global = true, default_value = "all")]
    suites: String,
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    adjoint_normalized: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

/// What went wrong, mapped onto the exit codes.
enum Failure {
    Usage(String),
    Verification,
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::Usage(err.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Failure::Io(err)
    }
}

impl From<csv::Error> for Failure {
    fn from(err: csv::Error) -> Self {
        Failure::Io(err.into())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { 2 } else { 0 });
        }
    };
    let mut out = io::stdout().lock();
    let result = match cli.command {
        Command::List => list(&cli.opts, &mut out),
        Command::Table => table(&cli.opts, &mut out),
        Command::Eval => eval(&cli.opts, &mut out),
        Command::Verify => run_verify(&cli.opts, &mut out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Io(err)) if err.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

struct ParamSpec {
    name: &'static str,
    kind: &'static str,
    domain: &'static str,
}

const fn param(name: &'static str, kind: &'static str, domain: &'static str) -> ParamSpec {
    ParamSpec { name, kind, domain }
}

fn schema(family: &str) -> &'static [ParamSpec] {
    const ALPHA: ParamSpec = param("alpha", "rational", "alpha > -1");
    const BETA: ParamSpec = param("beta", "rational", "beta > -1, alpha + beta != -1");
    const SIZE: ParamSpec = param("N", "integer", "N >= 1");
    const P: ParamSpec = param("p", "rational", "0 < p < 1");
    const GAMMA: ParamSpec = param("gamma", "rational", "gamma > 0");
    const MU_BELOW_ONE: ParamSpec = param("mu", "rational", "0 < mu < 1");
    const MU: ParamSpec = param("mu", "rational", "mu > 0");
    match family {
        "laguerre" => &[ALPHA],
        "jacobi" => &[ALPHA, BETA],
        "kravchuk" => &[P, SIZE],
        "meixner" => &[GAMMA, MU_BELOW_ONE],
        "charlier" => &[MU],
        "chebyshev_discrete" => &[SIZE],
        "hahn" => &[ALPHA, BETA, SIZE],
        _ => &[],
    }
}

fn list(opts: &Opts, out: &mut impl Write) -> Outcome {
    let families: Vec<Value> = FAMILY_NAMES
        .iter()
        .map(|&name| {
            let desk = FamilySpec::desk(name).expect("desk parameters are admissible");
            let defaults = desk.family.params();
            let params: Vec<Value> = schema(name)
                .iter()
                .map(|p| json!({"name": p.name, "type": p.kind, "domain": p.domain, "default": defaults.get(p.name)}))
                .collect();
            let kind = match desk.kind {
                Kind::Continuous => "continuous",
                Kind::Discrete => "discrete",
            };
            json!({"name": name, "kind": kind, "params": params})
        })
        .collect();
    match opts.format.unwrap_or(Format::Text) {
        Format::Json => writeln!(out, "{}", Value::Array(families))?,
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            writer.write_record(["family", "kind", "param", "type", "domain", "default"])?;
            for family in &families {
                let name = family["name"].as_str().unwrap_or_default();
                let kind = family["kind"].as_str().unwrap_or_default();
                let params = family["params"].as_array().cloned().unwrap_or_default();
                if params.is_empty() {
                    writer.write_record([name, kind, "", "", "", ""])?;
                }
                for p in &params {
                    let field = |key: &str| p[key].as_str().unwrap_or_default().to_string();
                    writer.write_record([
                        name.to_string(),
                        kind.to_string(),
                        field("name"),
                        field("type"),
                        field("domain"),
                        field("default"),
                    ])?;
                }
            }
            writer.flush()?;
        }
        Format::Text => {
            for family in &families {
                let params: Vec<String> = family["params"]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .map(|p| {
                        format!(
                            "--{} ({}, default {})",
                            p["name"].as_str().unwrap_or_default(),
                            p["domain"].as_str().unwrap_or_default(),
                            p["default"].as_str().unwrap_or_default()
                        )
                    })
                    .collect();
                writeln!(
                    out,
                    "{:<20} {:<11} {}",
                    family["name"].as_str().unwrap_or_default(),
                    family["kind"].as_str().unwrap_or_default(),
                    params.join("  ")
                )?;
            }
        }
    }
    Ok(())
}

fn rational_flag(name: &str, text: &Option<String>) -> Result<Option<num_rational::BigRational>, Failure> {
    text.as_deref()
        .map(|t| parse_rational(t).map_err(|err| Failure::Usage(format!("--{name}: {err}"))))
        .transpose()
}

fn given_params(opts: &Opts) -> Result<(Params, Vec<&'static str>), Failure> {
    let params = Params {
        alpha: rational_flag("alpha", &opts.alpha)?,
        beta: rational_flag("beta", &opts.beta)?,
        mu: rational_flag("mu", &opts.mu)?,
        gamma: rational_flag("gamma", &opts.gamma)?,
        p: rational_flag("p", &opts.p)?,
        size: opts.size,
    };
    let mut given = Vec::new();
    for (name, present) in [
        ("alpha", params.alpha.is_some()),
        ("beta", params.beta.is_some()),
        ("mu", params.mu.is_some()),
        ("gamma", params.gamma.is_some()),
        ("p", params.p.is_some()),
        ("N", params.size.is_some()),
    ] {
        if present {
            given.push(name);
        }
    }
    Ok((params, given))
}

/// The selected family; missing parameters take their desk values.
fn family(opts: &Opts) -> Result<FamilySpec, Failure> {
    let raw = opts
        .family
        .as_deref()
        .ok_or_else(|| Failure::Usage("--family is required".into()))?;
    let name = canonical_name(raw).ok_or_else(|| Failure::Usage(format!("unknown family '{raw}'")))?;
    let (params, given) = given_params(opts)?;
    if let Some(extra) = given.iter().find(|g| !schema(name).iter().any(|p| p.name == **g)) {
        return Err(Failure::Usage(format!("--{extra} does not apply to {name}")));
    }
    Ok(make_family(name, &params.with_desk_defaults(name))?)
}

fn format_or(opts: &Opts, default: Format) -> Format {
    opts.format.unwrap_or(default)
}

fn table(opts: &Opts, out: &mut impl Write) -> Outcome {
    let family = family(opts)?;
    let n_max = opts.n_max.unwrap_or(5);
    let seq = build_family_polys(&family, n_max)?;
    let mut rows = Vec::new();
    for n in 0..=n_max {
        let rec = family.recurrence_extended(n)?;
        let constants = if opts.adjoint_normalized {
            adjoint_scaled_factorization(&family, n)
        } else {
            mu_bracket(&family, n)
        }
        .map_err(|err| Failure::Usage(err.to_string()))?;
        let nu = match n {
            0 => "0".to_string(),
            _ => if opts.adjoint_normalized {
                adjoint_scaled_factorization(&family, n - 1)
            } else {
                mu_bracket(&family, n - 1)
            }?
            .nu
            .to_string(),
        };
        let coefficients: Vec<String> = seq.polys[n].coeffs().iter().map(|c| c.to_string()).collect();
        rows.push(json!({
            "n": n,
            "coefficients": coefficients,
            "lambda": family.lambda(n).to_string(),
            "alpha": rec.alpha.to_string(),
            "beta": rec.beta.to_string(),
            "gamma": rec.gamma.to_string(),
            "r": family.norm_ratio(n)?.to_string(),
            "mu": constants.mu.to_string(),
            "nu": nu,
        }));
    }
    const COLUMNS: [&str; 8] = ["lambda", "alpha", "beta", "gamma", "r", "mu", "nu", "coefficients"];
    let cell = |row: &Value, key: &str| match &row[key] {
        Value::Array(items) => items.iter().map(|v| v.as_str().unwrap_or_default()).collect::<Vec<_>>().join(" "),
        other => other.as_str().map_or_else(|| other.to_string(), str::to_string),
    };
    match format_or(opts, Format::Json) {
        Format::Json => {
            let doc = json!({
                "engine_version": verify::ENGINE_VERSION,
                "family": family.name(),
                "params": family.family.params(),
                "adjoint_normalized": opts.adjoint_normalized,
                "rows": rows,
            });
            writeln!(out, "{doc}")?;
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            let mut header = vec!["n"];
            header.extend(COLUMNS);
            writer.write_record(&header)?;
            for row in &rows {
                let mut record = vec![row["n"].to_string()];
                record.extend(COLUMNS.iter().map(|k| cell(row, k)));
                writer.write_record(&record)?;
            }
            writer.flush()?;
        }
        Format::Text => {
            writeln!(out, "{}", family.family)?;
            for row in &rows {
                let fields: Vec<String> = COLUMNS.iter().map(|k| format!("{k}={}", cell(row, k))).collect();
                writeln!(out, "n={} {}", row["n"], fields.join(" "))?;
            }
        }
    }
    Ok(())
}

fn eval(opts: &Opts, out: &mut impl Write) -> Outcome {
    let family = family(opts)?;
    let n = opts.n.ok_or_else(|| Failure::Usage("--n is required".into()))?;
    let points: Vec<f64> = opts
        .points
        .as_deref()
        .ok_or_else(|| Failure::Usage("--points is required".into()))?
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Failure::Usage(format!("--points: '{}' is not a number", t.trim())))
        })
        .collect::<Result<_, _>>()?;
    let psi = Basis::new(&family, n)?.ortho(n)?;
    let values: Vec<f64> = points
        .iter()
        .map(|&at| psi.eval(at).map_err(|err| Failure::Usage(format!("point {at}: {err}"))))
        .collect::<Result<_, _>>()?;
    match format_or(opts, Format::Text) {
        Format::Json => {
            let values: Vec<Value> = points.iter().zip(&values).map(|(x, v)| json!({"x": x, "value": v})).collect();
            let doc = json!({"family": family.name(), "params": family.family.params(), "n": n, "values": values});
            writeln!(out, "{doc}")?;
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            writer.write_record(["x", "value"])?;
            for (x, v) in points.iter().zip(&values) {
                writer.write_record([x.to_string(), v.to_string()])?;
            }
            writer.flush()?;
        }
        Format::Text => {
            for (x, v) in points.iter().zip(&values) {
                writeln!(out, "{x} {v}")?;
            }
        }
    }
    Ok(())
}

fn run_verify(opts: &Opts, out: &mut impl Write) -> Outcome {
    let suites = Suite::parse_list(&opts.suites)?;
    if opts.tolerance.is_nan() || opts.tolerance <= 0.0 {
        return Err(Failure::Usage("--tolerance must be positive".into()));
    }
    let settings = Settings {
        n_max: opts.n_max.unwrap_or(Settings::default().n_max),
        tolerance: opts.tolerance,
        adjoint_normalized: opts.adjoint_normalized,
    };
    let all = opts.family.as_deref().map(str::trim) == Some("all");
    let families = if all {
        let (_, given) = given_params(opts)?;
        if let Some(flag) = given.first() {
            return Err(Failure::Usage(format!("--{flag} cannot be combined with --family all")));
        }
        FamilySpec::all_desk()
    } else {
        vec![family(opts)?]
    };
    let reports = verify::verify_all(&families, &suites, &settings)?;
    match format_or(opts, Format::Json) {
        Format::Json => {
            let doc = if all {
                verify::combined_json(&reports)
            } else {
                reports[0].to_json()
            };
            writeln!(out, "{doc}")?;
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            writer.write_record(["family", "suite", "identity", "n", "mode", "residual", "tolerance", "pass", "value", "corrected"])?;
            for report in &reports {
                for suite in &report.suites {
                    for check in &suite.checks {
                        writer.write_record([
                            report.family.clone(),
                            suite.suite.to_string(),
                            check.identity.clone(),
                            check.n.to_string(),
                            if check.is_exact() { "exact" } else { "numeric" }.to_string(),
                            residual_text(&check.residual),
                            check.tolerance.map(|t| t.to_string()).unwrap_or_default(),
                            check.pass.to_string(),
                            check.value.clone().unwrap_or_default(),
                            check.correction.is_some().to_string(),
                        ])?;
                    }
                }
            }
            writer.flush()?;
        }
        Format::Text => {
            for report in &reports {
                let mut header = vec![report.family.clone()];
                header.extend(report.params.iter().map(|(k, v)| format!("{k}={v}")));
                writeln!(out, "{}", header.join(" "))?;
                for suite in &report.suites {
                    let failed = suite.failures().count();
                    let verdict = if failed == 0 { "pass" } else { "FAIL" };
                    writeln!(out, "  {:<15} {verdict} {}/{}", suite.suite.name(), suite.checks.len() - failed, suite.checks.len())?;
                    for check in suite.failures() {
                        writeln!(out, "    {} n={}: {}", check.identity, check.n, residual_text(&check.residual))?;
                    }
                }
            }
        }
    }
    if reports.iter().all(|r| r.pass()) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn residual_text(residual: &Residual) -> String {
    match residual {
        Residual::ExactZero => "exact-zero".into(),
        Residual::Text(text) => text.clone(),
        Residual::Numeric(e) => e.to_string(),
    }
}
