//! Command-line definitions and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use betadome::dominance::{crossing_point, hasse_path, mps_magnitude, one_param_mps, ssd_compare};
use betadome::portfolio::{closed_form_boundary_gamma, mean_threshold};
use betadome::sweep::{boundary_curve, DEFAULT_GRID_MEAN, DEFAULT_GRID_VAR};
use betadome::{BetaLaw, DomePoint, PortfolioProblem};
use clap::{Args, Parser, Subcommand};

use crate::error::CliError;
use crate::format::fixed9;
use crate::output::{write_csv, write_frontier, write_heatmap};
use crate::parallel::{default_workers, run_sweep};

#[derive(Debug, Parser)]
#[command(name = "betadome", version, about = "Beta laws on the mean-variance dome: dominance and CARA allocation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Point {
    #[arg(long, allow_negative_numbers = true)]
    pub mean: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub variance: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dome location, density shape class and shape parameters
    Classify(Point),
    /// CDF and integrated CDF at one point
    Cdf {
        #[command(flatten)]
        point: Point,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
    /// Mean, variance, skewness and kurtosis
    Moments(Point),
    /// Second-order stochastic dominance between two laws
    Compare {
        #[arg(long, allow_negative_numbers = true)]
        m1: f64,
        #[arg(long, allow_negative_numbers = true)]
        v1: f64,
        #[arg(long, allow_negative_numbers = true)]
        m2: f64,
        #[arg(long, allow_negative_numbers = true)]
        v2: f64,
    },
    /// Crossing point of two equal-mean interior CDFs
    Crossing {
        #[arg(long, allow_negative_numbers = true)]
        mean: f64,
        #[arg(long, allow_negative_numbers = true)]
        v1: f64,
        #[arg(long, allow_negative_numbers = true)]
        v2: f64,
    },
    /// Size of the mean-preserving spread between two laws
    Mps {
        #[arg(long, requires = "alpha2", conflicts_with_all = ["mean", "v1", "v2"], allow_negative_numbers = true)]
        alpha1: Option<f64>,
        #[arg(long, requires = "alpha1", allow_negative_numbers = true)]
        alpha2: Option<f64>,
        #[arg(long, requires_all = ["v1", "v2"], allow_negative_numbers = true)]
        mean: Option<f64>,
        #[arg(long, requires = "mean", allow_negative_numbers = true)]
        v1: Option<f64>,
        #[arg(long, requires = "mean", allow_negative_numbers = true)]
        v2: Option<f64>,
    },
    /// Verified dominance chain from the point mass at 0 to the point mass at 1
    Hasse(Point),
    /// Optimal fraction of wealth in the risky asset
    Optimize {
        #[command(flatten)]
        point: Point,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        rate: f64,
        #[arg(long, default_value_t = 1.0)]
        wealth: f64,
    },
    /// Optimal fraction over the whole dome, written as CSV and optionally PPM
    Sweep {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        rate: f64,
        #[arg(long, default_value_t = DEFAULT_GRID_MEAN)]
        grid_mean: usize,
        #[arg(long, default_value_t = DEFAULT_GRID_VAR)]
        grid_var: usize,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        ppm: Option<PathBuf>,
        /// Worker threads; defaults to the available parallelism
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Worst-case fraction along the mean axis, written as CSV
    Frontier {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        rate: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long)]
        csv: PathBuf,
    },
}

/// Parses `args` and runs the command. Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn law(m: f64, v: f64) -> Result<BetaLaw, CliError> {
    Ok(BetaLaw::from_mean_variance(m, v)?)
}

fn emit(out: &mut dyn Write, line: &str) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|e| CliError::io("<stdout>", e))
}

pub fn execute(command: &Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Classify(p) => {
            let point = DomePoint::new(p.mean, p.variance)?;
            let mut line = format!("location={}", point.location().name());
            match point.to_shape() {
                Ok(shape) => {
                    let region = point.classify_region()?;
                    line += &format!(
                        " region={} alpha={} beta={}",
                        region.name(),
                        fixed9(shape.alpha()),
                        fixed9(shape.beta())
                    );
                }
                Err(_) => line += &format!(" law={}", BetaLaw::from_point(point).kind()),
            }
            emit(out, &line)
        }
        Command::Cdf { point, x } => {
            let law = law(point.mean, point.variance)?;
            let line = format!(
                "x={} cdf={} integrated_cdf={}",
                fixed9(*x),
                fixed9(law.cdf(*x)?),
                fixed9(law.integrated_cdf(*x)?)
            );
            emit(out, &line)
        }
        Command::Moments(p) => {
            let m = law(p.mean, p.variance)?.moments();
            let mut line = format!("mean={} variance={}", fixed9(m.mean), fixed9(m.variance));
            if let Some(s) = m.skewness {
                line += &format!(" skewness={}", fixed9(s));
            }
            if let Some(k) = m.kurtosis {
                line += &format!(" kurtosis={}", fixed9(k));
            }
            emit(out, &line)
        }
        Command::Compare { m1, v1, m2, v2 } => {
            let r = ssd_compare(&law(*m1, *v1)?, &law(*m2, *v2)?)?;
            let mut line = format!(
                "verdict={} order={} delta_min={} delta_max={}",
                r.verdict.name(),
                r.order.name(),
                fixed9(r.delta_min),
                fixed9(r.delta_max)
            );
            if let Some(x) = r.witness_x {
                line += &format!(" witness_x={}", fixed9(x));
            }
            emit(out, &line)
        }
        Command::Crossing { mean, v1, v2 } => {
            let x = crossing_point(&law(*mean, *v1)?, &law(*mean, *v2)?)?;
            emit(out, &format!("crossing={}", fixed9(x)))
        }
        Command::Mps { alpha1, alpha2, mean, v1, v2 } => {
            let value = match (alpha1, alpha2, mean, v1, v2) {
                (Some(a1), Some(a2), None, None, None) => one_param_mps(*a1, *a2)?,
                (None, None, Some(m), Some(v1), Some(v2)) => mps_magnitude(&law(*m, *v1)?, &law(*m, *v2)?)?,
                _ => {
                    return Err(CliError::Usage(
                        "mps needs either --alpha1 and --alpha2 or --mean, --v1 and --v2".into(),
                    ))
                }
            };
            emit(out, &format!("mps={}", fixed9(value)))
        }
        Command::Hasse(p) => {
            let path = hasse_path(p.mean, p.variance)?;
            for (k, node) in path.nodes().iter().enumerate() {
                emit(
                    out,
                    &format!(
                        "node={k} law={} mean={} variance={}",
                        node.kind(),
                        fixed9(node.mean()),
                        fixed9(node.variance())
                    ),
                )?;
            }
            for (k, check) in path.edge_checks().iter().enumerate() {
                emit(
                    out,
                    &format!(
                        "edge={k} from={k} to={} verdict={} order={} margin={}",
                        k + 1,
                        check.verdict.name(),
                        check.order.name(),
                        fixed9(check.delta_max)
                    ),
                )?;
            }
            emit(out, "verified=true")
        }
        Command::Optimize { point, lambda, rate, wealth } => {
            let law = law(point.mean, point.variance)?;
            let problem = PortfolioProblem::new(law, *lambda, *rate)?.with_wealth(*wealth)?;
            let best = problem.optimal_gamma()?;
            let k = problem.effective_aversion();
            let mut line = format!(
                "gamma_star={} eu={} boundary_active={}",
                fixed9(best.gamma_star),
                fixed9(best.eu_at_optimum),
                best.boundary_active.name()
            );
            if point.mean > *rate {
                line += &format!(" gamma_min={}", fixed9(closed_form_boundary_gamma(point.mean, k, *rate)?));
            }
            line += &format!(" m_hat={}", fixed9(mean_threshold(k, *rate)?));
            emit(out, &line)
        }
        Command::Sweep { lambda, rate, grid_mean, grid_var, csv, ppm, workers } => {
            let grid = run_sweep(*grid_mean, *grid_var, *lambda, *rate, workers.unwrap_or_else(default_workers))?;
            write_csv(&grid, csv)?;
            if let Some(ppm) = ppm {
                write_heatmap(&grid, ppm)?;
            }
            let line = format!(
                "n_mean={} n_var={} cells={} m_hat={} csv={}",
                grid.n_mean(),
                grid.n_var(),
                grid.cells().count(),
                fixed9(mean_threshold(*lambda, *rate)?),
                csv.display()
            );
            emit(out, &line)
        }
        Command::Frontier { lambda, rate, points, csv } => {
            if *points == 0 {
                return Err(CliError::Usage("--points must be positive".into()));
            }
            let curve = boundary_curve(*lambda, *rate, *points)?;
            write_frontier(&curve, csv)?;
            let line = format!(
                "points={} m_hat={} csv={}",
                curve.len(),
                fixed9(mean_threshold(*lambda, *rate)?),
                csv.display()
            );
            emit(out, &line)
        }
    }
}
