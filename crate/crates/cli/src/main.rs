//! Command-line front end for the factorization library: tabulates the
//! dispersion function, emits plot-ready data for the cut profiles of `V`
//! and `X` and for the discrete-zero trajectory, verifies the analytic
//! identities as a machine-readable report, and computes the discrete zero
//! three ways.
//!
//! Every run is a pure function of its flags: identical invocations produce
//! byte-identical output. Exit codes follow one contract everywhere:
//! `0` success, `2` invalid configuration or wrong regime (including the
//! guard band around the index transition), `3` numerical failure or a
//! failed verification. Output is written in full or not at all.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use stokes2::dispersion::{lambda0_real, lambda_boundary, s};
use stokes2::riemann::coefficient_g;
use stokes2::spectrum::{
    boundary_factorization_residual, continuum_eigenfunction, eta0_asymptotic, eta0_explicit,
    eta0_newton_oracle, factorization_residual, nonlinear_representation_residual,
    spectral_test_grid,
};
use stokes2::{Error, Factorizer, ProblemParams, QuadratureConfig, Regime};

/// The three preset frequencies of the cut-profile series: one comfortably
/// inside the index-1 regime, one midway, one approaching the transition.
const PRESET_FREQUENCIES: [f64; 3] = [0.1, 0.3, 0.5];

#[derive(Parser)]
#[command(
    name = "stokes2",
    version,
    about = "Dispersion-function tables, factorization data, and identity verification \
             for the half-space kinetic oscillation problem"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the dispersion function along the real axis
    Dispersion(DispersionArgs),
    /// Emit plot-ready data series (cut profiles of V and X, zero trajectory)
    Figures(FiguresArgs),
    /// Verify the analytic identities and report residuals as JSON
    Verify(VerifyArgs),
    /// Compute the discrete zero by explicit formula, Newton oracle, and asymptote
    Eta0(Eta0Args),
}

#[derive(Args)]
struct DispersionArgs {
    /// Oscillation frequency (dimensionless)
    #[arg(long)]
    omega1: f64,
    /// Lower edge of the velocity grid
    #[arg(long, default_value_t = 0.0)]
    grid_min: f64,
    /// Upper edge of the velocity grid
    #[arg(long, default_value_t = 3.0)]
    grid_max: f64,
    /// Number of evenly spaced grid nodes
    #[arg(long, default_value_t = 301)]
    points: usize,
    /// Quadrature tolerance (accepted for interface uniformity; the
    /// dispersion columns are closed forms and do not consume it)
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FiguresArgs {
    /// Which data series to emit
    #[arg(value_enum)]
    series: Series,
    /// Lower grid edge: velocity for the cut profiles, frequency for the
    /// zero trajectory
    #[arg(long)]
    grid_min: Option<f64>,
    /// Upper grid edge (same convention as --grid-min)
    #[arg(long)]
    grid_max: Option<f64>,
    /// Number of logarithmically spaced nodes
    #[arg(long)]
    points: Option<usize>,
    /// Quadrature tolerance for the principal-value evaluations of V
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Oscillation frequency (dimensionless)
    #[arg(long)]
    omega1: f64,
    /// Pass threshold for the off-cut identity residuals; on-cut
    /// (principal-value) identities are allowed 10x
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Output file (stdout when omitted); the report is always JSON
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Eta0Args {
    /// Oscillation frequency (dimensionless)
    #[arg(long)]
    omega1: f64,
    /// Output file (stdout when omitted); the record is always JSON
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// Comma-separated values, header row plus full-precision data rows
    Csv,
    /// JSON object with "columns" and "rows"
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Series {
    /// Re V on the cut for the three preset frequencies
    ReV,
    /// |X| = (1/mu) exp(Re V) on the cut
    AbsX,
    /// Re X = (1/mu) exp(Re V) cos(Im V) on the cut
    ReX,
    /// Re eta0 vs frequency together with the small-frequency asymptote
    ZeroTrajectory,
}

impl Series {
    /// Column-name stem of one preset-frequency series.
    fn stem(self) -> &'static str {
        match self {
            Series::ReV => "re_v",
            Series::AbsX => "abs_x",
            Series::ReX => "re_x",
            Series::ZeroTrajectory => unreachable!("trajectory columns are fixed"),
        }
    }

    /// The plotted quantity, from the principal value of `V` on the cut.
    fn value(self, mu: f64, v: num_complex::Complex64) -> f64 {
        match self {
            Series::ReV => v.re,
            Series::AbsX => v.re.exp() / mu,
            Series::ReX => v.re.exp() / mu * v.im.cos(),
            Series::ZeroTrajectory => unreachable!("trajectory rows are built directly"),
        }
    }
}

/// A failed run: message for stderr plus the contractual exit code.
struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
            code: 2,
        }
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        let code = match error {
            // Numerical breakdowns; everything else is a configuration or
            // regime problem detectable from the inputs.
            Error::NonConvergence { .. }
            | Error::NoConvergence(_)
            | Error::BranchAmbiguity
            | Error::DegenerateDenominator(_) => 3,
            _ => 2,
        };
        Failure {
            message: error.to_string(),
            code,
        }
    }
}

/// A finished run: the full output text, where it goes, and the exit code
/// (nonzero when a verification report contains failures).
struct Rendered {
    text: String,
    destination: Option<PathBuf>,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Dispersion(args) => cmd_dispersion(args),
        Command::Figures(args) => cmd_figures(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Eta0(args) => cmd_eta0(args),
    };
    match outcome {
        Ok(rendered) => {
            if let Some(path) = &rendered.destination {
                if let Err(io) = std::fs::write(path, &rendered.text) {
                    eprintln!("error: cannot write {}: {io}", path.display());
                    return ExitCode::from(3);
                }
            } else {
                print!("{}", rendered.text);
            }
            ExitCode::from(rendered.code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

/// A rectangular table of full-precision reals.
struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut text = self.columns.join(",");
                text.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|x| format!("{x:.17e}")).collect();
                    text.push_str(&cells.join(","));
                    text.push('\n');
                }
                text
            }
            Format::Json => {
                let value = json!({ "columns": self.columns, "rows": self.rows });
                let mut text = serde_json::to_string_pretty(&value).expect("table serializes");
                text.push('\n');
                text
            }
        }
    }
}

/// Shared flag validation; `positive_min` is required whenever the grid
/// feeds cut evaluations (the principal value needs `mu > 0`).
fn validate_grid(min: f64, max: f64, points: usize, positive_min: bool) -> Result<(), Failure> {
    if !(min.is_finite() && max.is_finite() && min < max) {
        return Err(Failure::config(format!(
            "grid edges must satisfy grid-min < grid-max, got [{min}, {max}]"
        )));
    }
    if positive_min && min <= 0.0 {
        return Err(Failure::config(format!(
            "this series is evaluated on the cut and needs grid-min > 0, got {min}"
        )));
    }
    if points < 2 {
        return Err(Failure::config(format!(
            "at least 2 grid points are required, got {points}"
        )));
    }
    Ok(())
}

/// Builds the quadrature configuration from the `--tol` flag.
fn quadrature(tol: f64) -> Result<QuadratureConfig, Failure> {
    if !(1e-14..=1e-2).contains(&tol) {
        return Err(Failure::config(format!(
            "tol must lie in [1e-14, 1e-2], got {tol}"
        )));
    }
    Ok(QuadratureConfig::new(tol, tol, 7.0, 200))
}

/// Dispersion-function table: closed-form columns on an even velocity grid.
fn cmd_dispersion(args: DispersionArgs) -> Result<Rendered, Failure> {
    validate_grid(args.grid_min, args.grid_max, args.points, false)?;
    quadrature(args.tol)?;
    let p = ProblemParams::new(args.omega1)?;
    let step = (args.grid_max - args.grid_min) / (args.points - 1) as f64;
    let columns = [
        "mu",
        "lambda0",
        "s",
        "re_lambda_plus",
        "im_lambda_plus",
        "re_lambda_minus",
        "im_lambda_minus",
    ]
    .map(String::from)
    .to_vec();
    let rows = (0..args.points)
        .map(|k| {
            let mu = args.grid_min + k as f64 * step;
            let pair = lambda_boundary(mu, &p);
            vec![
                mu,
                lambda0_real(mu),
                s(mu),
                pair.plus.re,
                pair.plus.im,
                pair.minus.re,
                pair.minus.im,
            ]
        })
        .collect();
    Ok(Rendered {
        text: Table { columns, rows }.render(args.format),
        destination: args.out,
        code: 0,
    })
}

/// Plot-data series: three cut profiles at the preset frequencies, or the
/// discrete-zero trajectory against its asymptote.
fn cmd_figures(args: FiguresArgs) -> Result<Rendered, Failure> {
    let table = match args.series {
        Series::ZeroTrajectory => zero_trajectory_table(&args)?,
        profile => cut_profile_table(profile, &args)?,
    };
    Ok(Rendered {
        text: table.render(args.format),
        destination: args.out,
        code: 0,
    })
}

/// One column per preset frequency of the selected cut quantity, on a
/// logarithmic velocity grid (the interesting behavior is at small `mu`).
fn cut_profile_table(series: Series, args: &FiguresArgs) -> Result<Table, Failure> {
    let min = args.grid_min.unwrap_or(1e-3);
    let max = args.grid_max.unwrap_or(3.0);
    let points = args.points.unwrap_or(301);
    validate_grid(min, max, points, true)?;
    let cfg = quadrature(args.tol)?;

    let grid = stokes2::riemann::log_grid(min, max, points);
    let mut columns = vec!["mu".to_string()];
    let mut rows: Vec<Vec<f64>> = grid.iter().map(|&mu| vec![mu]).collect();
    for omega1 in PRESET_FREQUENCIES {
        columns.push(format!("{}_{omega1}", series.stem()));
        let f = Factorizer::with_config(ProblemParams::new(omega1)?, cfg)?;
        for (row, &mu) in rows.iter_mut().zip(&grid) {
            row.push(series.value(mu, f.v_on_cut(mu)?));
        }
    }
    Ok(Table { columns, rows })
}

/// `Re eta0` and its asymptote `1/(2 sqrt(omega1))` over a logarithmic
/// frequency sweep. Frequencies without a discrete spectrum (above the
/// index transition) and inside the guard band are omitted rather than
/// padded, so every emitted row is a real zero.
fn zero_trajectory_table(args: &FiguresArgs) -> Result<Table, Failure> {
    let min = args.grid_min.unwrap_or(0.01);
    let max = args.grid_max.unwrap_or(0.7);
    let points = args.points.unwrap_or(200);
    validate_grid(min, max, points, true)?;
    let cfg = quadrature(args.tol)?;

    let mut rows = Vec::new();
    for omega1 in stokes2::riemann::log_grid(min, max, points) {
        let p = match ProblemParams::new(omega1) {
            Ok(p) if p.regime() == Regime::IndexOne => p,
            // Guard band or index 0: no zero to report at this node.
            _ => continue,
        };
        let eta0 = eta0_explicit(&Factorizer::with_config(p, cfg)?)?;
        rows.push(vec![omega1, eta0.re, eta0_asymptotic(omega1).re]);
    }
    Ok(Table {
        columns: ["omega1", "re_eta0", "re_eta0_asymptotic"]
            .map(String::from)
            .to_vec(),
        rows,
    })
}

/// One verified identity in the report.
struct Check {
    identity: &'static str,
    grid: &'static str,
    tolerance: f64,
    outcome: Outcome,
}

enum Outcome {
    Residual(f64),
    Skipped(&'static str),
}

impl Check {
    fn passed(&self) -> bool {
        match self.outcome {
            Outcome::Residual(r) => r <= self.tolerance,
            Outcome::Skipped(_) => true,
        }
    }
}

/// Runs every identity the library exposes as a residual and renders a JSON
/// report; exits 3 when any check fails its threshold.
fn cmd_verify(args: VerifyArgs) -> Result<Rendered, Failure> {
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(Failure::config(format!(
            "tol must be positive, got {}",
            args.tol
        )));
    }
    let p = ProblemParams::new(args.omega1)?;
    let f = Factorizer::new(p)?;
    let checks = run_checks(&f, args.tol)?;

    let failures = checks.iter().filter(|c| !c.passed()).count();
    let report = json!({
        "omega1": args.omega1,
        "regime": format!("index-{}", f.params().index()),
        "off_cut_tolerance": args.tol,
        "on_cut_tolerance": 10.0 * args.tol,
        "failures": failures,
        "checks": checks.iter().map(|c| {
            json!({
                "identity": c.identity,
                "grid": c.grid,
                "tolerance": c.tolerance,
                "max_residual": match c.outcome {
                    Outcome::Residual(r) => json!(r),
                    Outcome::Skipped(_) => json!(null),
                },
                "status": match c.outcome {
                    Outcome::Residual(r) if r <= c.tolerance => "pass".to_string(),
                    Outcome::Residual(_) => "fail".to_string(),
                    Outcome::Skipped(reason) => format!("skipped ({reason})"),
                },
            })
        }).collect::<Vec<_>>(),
    });
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    Ok(Rendered {
        text,
        destination: args.out,
        code: if failures == 0 { 0 } else { 3 },
    })
}

/// The verification suite proper: every identity with its probe grid.
fn run_checks(f: &Factorizer, tol: f64) -> Result<Vec<Check>, Failure> {
    use num_complex::Complex64;
    let p = f.params();
    let index_one = p.regime() == Regime::IndexOne;
    let degenerate = p.omega1() == 0.0;
    let on_tol = 10.0 * tol;

    // Probe sets. The off-cut points stay clear of the cut [0, inf); the
    // cut nodes span both sides of the seam near mu0.
    let off_cut = [
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 2.0),
        Complex64::new(1.5, -2.5),
    ];
    let cut_nodes = [0.3, 0.9, 2.1];
    let ratio_nodes = [0.05, 0.15, 0.4, 0.8, 1.2, 1.8, 2.6, 4.0];
    let boundary_nodes = [0.3, 0.9, 2.0, -0.3, -0.9, -2.0];

    let mut checks = Vec::new();
    let mut push = |identity, grid, tolerance, outcome| {
        checks.push(Check {
            identity,
            grid,
            tolerance,
            outcome,
        })
    };

    let mut worst = 0.0_f64;
    for mu in ratio_nodes {
        let pair = f.x_boundary(mu)?;
        let g = coefficient_g(mu, p)?;
        worst = worst.max(((pair.plus / pair.minus) - g).norm() / g.norm());
    }
    push(
        "boundary ratio X+/X- = G",
        "8 cut nodes in [0.05, 4]",
        1e-9,
        Outcome::Residual(worst),
    );

    let max_over = |residual: &dyn Fn(Complex64) -> stokes2::Result<f64>| -> stokes2::Result<f64> {
        let mut worst = 0.0_f64;
        for &z in &off_cut {
            worst = worst.max(residual(z)?);
        }
        Ok(worst)
    };
    push(
        "jump representation of X",
        "3 off-cut probes",
        tol,
        Outcome::Residual(max_over(&|z| f.jump_representation_residual(z))?),
    );
    push(
        "weighted jump representation of X",
        "3 off-cut probes",
        tol,
        Outcome::Residual(max_over(&|z| f.weighted_jump_representation_residual(z))?),
    );
    push(
        "half-line normalization integral = -1",
        "single integral",
        tol,
        if index_one {
            Outcome::Residual(f.normalization_residual()?)
        } else {
            Outcome::Skipped("regime")
        },
    );
    push(
        "reciprocal representation of 1/X",
        "3 off-cut probes",
        tol,
        Outcome::Residual(max_over(&|z| f.reciprocal_representation_residual(z))?),
    );

    let mut worst = 0.0_f64;
    for mu in cut_nodes {
        worst = worst.max(f.reciprocal_on_cut_residual(mu)?);
    }
    push(
        "reciprocal representation on the cut",
        "3 cut nodes",
        on_tol,
        Outcome::Residual(worst),
    );
    let mut worst = 0.0_f64;
    for mu in cut_nodes {
        worst = worst.max(f.half_sum_representation_residual(mu)?);
    }
    push(
        "half-sum representation on the cut",
        "3 cut nodes",
        on_tol,
        Outcome::Residual(worst),
    );

    push(
        "dispersion factorization off the axis",
        "60-point six-ray grid",
        tol,
        if degenerate {
            Outcome::Skipped("degenerate frequency")
        } else {
            Outcome::Residual(factorization_residual(&spectral_test_grid(10), f)?)
        },
    );
    push(
        "dispersion factorization boundary values",
        "6 nodes, both signs",
        tol,
        if degenerate {
            Outcome::Skipped("degenerate frequency")
        } else {
            Outcome::Residual(boundary_factorization_residual(&boundary_nodes, f)?)
        },
    );
    push(
        "nonlinear representation of X",
        "2 off-cut probes",
        tol,
        if index_one && !degenerate {
            let r1 = nonlinear_representation_residual(off_cut[0], f)?;
            let r2 = nonlinear_representation_residual(off_cut[1], f)?;
            Outcome::Residual(r1.max(r2))
        } else if degenerate {
            Outcome::Skipped("degenerate frequency")
        } else {
            Outcome::Skipped("regime")
        },
    );
    push(
        "zero formula vs Newton oracle",
        "single comparison",
        1e-8,
        if index_one && !degenerate {
            let explicit = eta0_explicit(f)?;
            let oracle = eta0_newton_oracle(p)?;
            Outcome::Residual((explicit - oracle).norm())
        } else if degenerate {
            Outcome::Skipped("degenerate frequency")
        } else {
            Outcome::Skipped("regime")
        },
    );

    let cfg = *f.config();
    let mut worst = 0.0_f64;
    for eta in [0.3, 1.0, 2.0] {
        let n = continuum_eigenfunction(eta, p).normalization(p, &cfg)?;
        worst = worst.max((n - 1.0).norm());
    }
    push(
        "continuum eigenfunction normalization = 1",
        "3 spectral points",
        1e-9,
        Outcome::Residual(worst),
    );

    Ok(checks)
}

/// The discrete zero three ways, as a JSON record.
fn cmd_eta0(args: Eta0Args) -> Result<Rendered, Failure> {
    let p = ProblemParams::new(args.omega1)?;
    if p.regime() == Regime::IndexZero {
        return Err(Failure::config(format!(
            "no discrete spectrum at omega1 = {}: the dispersion function has 2*kappa = 0 \
             zeros in the index-0 regime",
            args.omega1
        )));
    }
    let f = Factorizer::new(p)?;
    let eta0 = eta0_explicit(&f)?;
    let oracle = eta0_newton_oracle(f.params())?;
    let asymptotic = eta0_asymptotic(args.omega1);
    let record = json!({
        "omega1": args.omega1,
        "eta0": [eta0.re, eta0.im],
        "oracle": [oracle.re, oracle.im],
        "asymptotic": [asymptotic.re, asymptotic.im],
        "max_cross_error": (eta0 - oracle).norm(),
    });
    let mut text = serde_json::to_string_pretty(&record).expect("record serializes");
    text.push('\n');
    Ok(Rendered {
        text,
        destination: args.out,
        code: 0,
    })
}
