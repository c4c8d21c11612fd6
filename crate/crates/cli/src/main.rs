use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use harmodisk::config::Config;
use harmodisk::corpus;
use harmodisk::estimates::{maximum_principle_bounds, JacksonConstants};
use harmodisk::fourier::{compute_spectrum, default_nodes, l1_boundary_norm};
use harmodisk::io::{self as hio, format_f64 as num, OracleComparison};
use harmodisk::oracle::poisson_eval;
use harmodisk::study::{run_study, StudyConfig};
use harmodisk::taylor::{expand, DEFAULT_ORDER};
use harmodisk::{BoundaryData, CartesianPoint, DiskGeometry, Error, HarmonicApproximant, Result};

#[derive(Parser)]
#[command(name = "harmodisk", version, about = "Dirichlet problem on a disk by harmonic polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Fourier spectrum of boundary data and write it as JSON.
    Solve(SolveArgs),
    /// Evaluate a spectrum (or one of its derivatives) at points from a CSV file.
    Eval(EvalArgs),
    /// Convergence study: measured errors next to the uniform bound.
    Study(StudyArgs),
    /// Taylor expansion about an interior point with its remainder certificate.
    Taylor(TaylorArgs),
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct BoundarySpec {
    /// CSV file with header `theta,value`.
    #[arg(long, value_name = "FILE")]
    boundary: Option<PathBuf>,
    /// Built-in data, e.g. `cos3`, `hat`, `square`, `abs_sin_half:0.5`.
    #[arg(long, value_name = "NAME")]
    boundary_expr: Option<String>,
}

impl BoundarySpec {
    fn is_given(&self) -> bool {
        self.boundary.is_some() || self.boundary_expr.is_some()
    }

    fn load(&self, geometry: DiskGeometry) -> Result<BoundaryData> {
        match (&self.boundary, &self.boundary_expr) {
            (Some(path), None) => hio::read_boundary_file(path, geometry),
            (None, Some(name)) => corpus::builtin(name, geometry),
            _ => Err(Error::InvalidArgument(
                "exactly one of --boundary or --boundary-expr is required".into(),
            )),
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    boundary: BoundarySpec,
    /// Disk radius.
    #[arg(long = "R", default_value_t = 1.0)]
    radius: f64,
    /// Truncation degree.
    #[arg(long)]
    n: usize,
    /// Quadrature nodes (default max(4096, 8n), or `default_nodes` from the config file).
    #[arg(long = "M")]
    nodes: Option<usize>,
    #[arg(long, default_value = "spectrum.json")]
    output: PathBuf,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_name = "FILE")]
    spectrum: PathBuf,
    /// CSV file with header `x,y`.
    #[arg(long, value_name = "FILE")]
    points: PathBuf,
    /// Derivative order `a1,a2`.
    #[arg(long, value_name = "A1,A2", value_parser = parse_pair::<u32>)]
    deriv: Option<(u32, u32)>,
    /// Add a Poisson-quadrature column; needs the boundary data.
    #[arg(long)]
    compare_oracle: bool,
    #[command(flatten)]
    boundary: BoundarySpec,
    /// Output CSV (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct StudyArgs {
    #[command(flatten)]
    boundary: BoundarySpec,
    #[arg(long = "R", default_value_t = 1.0)]
    radius: f64,
    /// Degrees to study, comma separated.
    #[arg(long = "n", value_delimiter = ',', required = true)]
    degrees: Vec<usize>,
    /// Absolute radii `0 <= r <= R`, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0,0.5,0.9,1")]
    radii: Vec<f64>,
    /// Quadrature nodes for the proxy spectrum.
    #[arg(long = "M")]
    nodes: Option<usize>,
    #[arg(long)]
    angular_points: Option<usize>,
    #[arg(long)]
    gamma0: Option<f64>,
    /// γ_1, γ_2, ... comma separated.
    #[arg(long, value_delimiter = ',')]
    gamma_k: Option<Vec<f64>>,
    #[arg(long, default_value = "study.csv")]
    output: PathBuf,
    #[arg(long, default_value = "study_reports.json")]
    reports: PathBuf,
}

#[derive(Args)]
struct TaylorArgs {
    #[arg(long, value_name = "FILE")]
    spectrum: PathBuf,
    #[arg(long, value_name = "X,Y", value_parser = parse_pair::<f64>, allow_hyphen_values = true)]
    center: (f64, f64),
    /// Number of Taylor terms (total degree < order).
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// Displacement `hx,hy`.
    #[arg(long, value_name = "HX,HY", value_parser = parse_pair::<f64>, allow_hyphen_values = true)]
    h: (f64, f64),
    /// Evaluate outside the certified region, without a certificate.
    #[arg(long)]
    force: bool,
    /// Write the coefficient table as CSV `a1,a2,coef`.
    #[arg(long, value_name = "FILE")]
    coefficients: Option<PathBuf>,
    /// Write the certificate JSON to a file instead of stdout.
    #[arg(long, value_name = "FILE")]
    certificate: Option<PathBuf>,
}

fn parse_pair<T: std::str::FromStr>(s: &str) -> std::result::Result<(T, T), String>
where
    T::Err: std::fmt::Display,
{
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two comma-separated values, got `{s}`"))?;
    let a = a.trim().parse().map_err(|e| format!("`{a}`: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("`{b}`: {e}"))?;
    Ok((a, b))
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(path) => fs::write(path, bytes)?,
        None => io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn cmd_solve(args: SolveArgs, config: &Config) -> Result<()> {
    let geometry = DiskGeometry::new(args.radius)?;
    let b = args.boundary.load(geometry)?;
    let nodes = args
        .nodes
        .or(config.default_nodes.map(|m| m.max(8 * args.n)))
        .unwrap_or_else(|| default_nodes(args.n));
    let spectrum = compute_spectrum(&b, args.n, nodes)?;
    hio::write_spectrum_file(&args.output, &spectrum)?;
    let l1 = l1_boundary_norm(&b, nodes)?;
    let (min_g, max_g) = maximum_principle_bounds(&b, nodes);
    println!("center_value: {}", num(spectrum.center_value()));
    println!("l1_f: {}", num(l1.angular));
    println!("min_g: {}", num(min_g));
    println!("max_g: {}", num(max_g));
    println!("n_max: {}", spectrum.n_max());
    println!("M: {nodes}");
    if !b.is_periodic() {
        eprintln!("warning: boundary data is not periodic; uniform error bounds do not apply");
    }
    Ok(())
}

fn cmd_eval(args: EvalArgs) -> Result<()> {
    let spectrum = hio::read_spectrum_file(&args.spectrum)?;
    let geometry = spectrum.geometry();
    let u = HarmonicApproximant::new(spectrum);
    let points = hio::read_points_file(&args.points)?;

    let mut inside = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        let ok = geometry.contains_closed(*p);
        if !ok {
            eprintln!("warning: point {} ({}) is outside the closed disk; value set to NaN", i + 1, p);
        }
        inside.push(ok);
    }

    let mut values = match args.deriv {
        None => u.eval_batch(&points),
        Some((a1, a2)) => points
            .iter()
            .map(|p| u.eval_derivative(*p, a1, a2))
            .collect::<Result<Vec<f64>>>()?,
    };
    for (v, ok) in values.iter_mut().zip(&inside) {
        if !ok {
            *v = f64::NAN;
        }
    }

    let mut out = Vec::new();
    if args.compare_oracle {
        if args.deriv.is_some() {
            return Err(Error::InvalidArgument("--compare-oracle compares values, not derivatives".into()));
        }
        if !args.boundary.is_given() {
            return Err(Error::InvalidArgument(
                "--compare-oracle needs --boundary or --boundary-expr".into(),
            ));
        }
        let b = args.boundary.load(geometry)?;
        let mut rows = Vec::with_capacity(points.len());
        for (i, (p, v)) in points.iter().zip(&values).enumerate() {
            let poisson_value = match poisson_eval(&b, *p, None) {
                Ok(w) => w,
                Err(Error::OutOfDomain(_)) => {
                    eprintln!("warning: point {} ({}) is not strictly inside the disk; oracle set to NaN", i + 1, p);
                    f64::NAN
                }
                Err(e) => return Err(e),
            };
            rows.push(OracleComparison {
                point: *p,
                series_value: *v,
                poisson_value,
            });
        }
        hio::write_comparison_csv(&mut out, &rows)?;
    } else {
        let column = if args.deriv.is_some() { "d_value" } else { "value" };
        hio::write_values_csv(&mut out, column, &points, &values)?;
    }
    write_output(args.output.as_deref(), &out)
}

fn cmd_study(args: StudyArgs, config: &Config) -> Result<()> {
    let geometry = DiskGeometry::new(args.radius)?;
    let b = args.boundary.load(geometry)?;
    let mut gammas = config.jackson_constants()?.as_slice().to_vec();
    if let Some(g0) = args.gamma0 {
        gammas[0] = g0;
    }
    if let Some(gk) = args.gamma_k {
        gammas.truncate(1);
        gammas.extend(gk);
    }
    let mut cfg = StudyConfig::new(args.degrees, args.radii);
    cfg.gammas = JacksonConstants::new(gammas)?;
    cfg.nodes = args.nodes.or(config.default_nodes);
    if let Some(a) = args.angular_points.or(config.angular_points) {
        cfg.angular_points = a;
    }
    if let Some(g) = config.holder_grid {
        cfg.holder_grid = g;
    }
    let result = run_study(&b, &cfg)?;
    fs::write(&args.output, result.to_csv()?)?;
    let mut reports = result.reports_json()?;
    reports.push('\n');
    fs::write(&args.reports, reports)?;
    println!("proxy degree: {}", result.proxy_degree);
    println!("M: {}", result.nodes);
    println!("rows: {}", result.rows.len());
    if !b.is_periodic() || b.smoothness().is_none() {
        eprintln!("warning: no declared regularity for periodic data; bounds are reported but marked inapplicable");
    }
    Ok(())
}

fn cmd_taylor(args: TaylorArgs) -> Result<()> {
    let u = HarmonicApproximant::new(hio::read_spectrum_file(&args.spectrum)?);
    let center = CartesianPoint::new(args.center.0, args.center.1);
    let expansion = expand(&u, center, args.order)?;
    let h = [args.h.0, args.h.1];
    let series = expansion.eval_series(h, args.force)?;
    let true_value = u.eval(center.offset(h[0], h[1]));

    println!("value: {}", num(series.value));
    println!("true_value: {}", num(true_value));
    println!("abs_diff: {}", num((series.value - true_value).abs()));
    match &series.remainder {
        Some(r) => println!("bound: {}", num(r.value)),
        None => println!("bound: none (outside the certified region)"),
    }
    println!("kappa: {}", num(series.kappa));
    println!("L: {}", num(expansion.inner_radius()));

    if let Some(path) = &args.coefficients {
        let mut buf = Vec::new();
        hio::write_taylor_csv(&mut buf, &expansion)?;
        fs::write(path, buf)?;
    }
    let certificate = json!({
        "center": [center.x, center.y],
        "h": h,
        "order": args.order,
        "value": series.value,
        "true_value": true_value,
        "kappa": series.kappa,
        "L": expansion.inner_radius(),
        "certificate": series.remainder,
    });
    let mut text = serde_json::to_string_pretty(&certificate)?;
    text.push('\n');
    write_output(args.certificate.as_deref(), text.as_bytes())
}

fn run(cli: Cli) -> Result<()> {
    let config = Config::from_env()?;
    match cli.command {
        Command::Solve(a) => cmd_solve(a, &config),
        Command::Eval(a) => cmd_eval(a),
        Command::Study(a) => cmd_study(a, &config),
        Command::Taylor(a) => cmd_taylor(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
