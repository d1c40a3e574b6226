use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use attrlimits::chart::{build_chart, ChartKind, DEFAULT_CHART_ALPHA};
use attrlimits::cli::{
    chart_json, chart_svg, chart_text, interval_json, interval_text, parse_dataset_csv,
    report_json, report_text, to_json_string,
};
use attrlimits::fiducial::{
    binom_fiducial, geometric_fiducial, poisson_fiducial, BinomialObservation,
    GeometricObservation, Interval, PoissonObservation,
};
use attrlimits::simulation::{run_coverage, DistributionKind};

#[derive(Parser)]
#[command(
    name = "attrlimits",
    version,
    about = "Exact and fiducial control limits for attribute count data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fiducial confidence limits for a distribution parameter
    Limits {
        #[command(subcommand)]
        distribution: LimitsCommand,
    },
    /// Build a p/np/c/u/g control chart from a CSV of subgroup records
    Chart(ChartArgs),
    /// Monte Carlo coverage of fiducial vs normal-approximation limits
    Simulate(SimulateArgs),
}

#[derive(Subcommand)]
enum LimitsCommand {
    /// Binomial p from x nonconforming units in n trials
    Binom {
        /// Number of trials
        #[arg(long)]
        n: u64,
        /// Observed count, 0 <= x <= n
        #[arg(long)]
        x: u64,
        #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Poisson mean from total count y over n observations
    Poisson {
        /// Sample size
        #[arg(long)]
        n: u64,
        /// Total count over the sample
        #[arg(long)]
        y: u64,
        #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Geometric p from total failure count y over n observations
    Geom {
        /// Sample size
        #[arg(long)]
        n: u64,
        /// Total failures before each first success, summed over the sample
        #[arg(long)]
        y: u64,
        #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct ChartArgs {
    /// Chart kind
    #[arg(long, value_enum)]
    kind: KindArg,
    /// CSV file with header `subgroup,count,size`
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_CHART_ALPHA, allow_negative_numbers = true)]
    alpha: f64,
    /// Known parameter; when omitted the parameter is pooled from the data
    #[arg(long, allow_negative_numbers = true)]
    param: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    distribution: DistArg,
    /// True parameter of the sampled distribution
    #[arg(long, allow_negative_numbers = true)]
    param: f64,
    /// Sample size per replicate
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    alpha: f64,
    /// Number of Monte Carlo replications
    #[arg(long)]
    reps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    P,
    Np,
    C,
    U,
    G,
}

impl From<KindArg> for ChartKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::P => ChartKind::P,
            KindArg::Np => ChartKind::Np,
            KindArg::C => ChartKind::C,
            KindArg::U => ChartKind::U,
            KindArg::G => ChartKind::G,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DistArg {
    Binom,
    Poisson,
    Geom,
}

impl From<DistArg> for DistributionKind {
    fn from(d: DistArg) -> Self {
        match d {
            DistArg::Binom => DistributionKind::Binomial,
            DistArg::Poisson => DistributionKind::Poisson,
            DistArg::Geom => DistributionKind::Geometric,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            println!("{output}");
            ExitCode::SUCCESS
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn check_alpha_flag(alpha: f64) -> Result<(), String> {
    if !alpha.is_finite() || alpha <= 0.0 || alpha >= 1.0 {
        return Err(format!("--alpha must lie strictly in (0, 1), got {alpha}"));
    }
    Ok(())
}

fn no_svg(format: Format) -> Result<(), String> {
    if format == Format::Svg {
        return Err("--format svg is only valid for the chart subcommand".into());
    }
    Ok(())
}

fn render_interval(interval: &Interval, format: Format) -> String {
    match format {
        Format::Json => to_json_string(&interval_json(interval)),
        _ => interval_text(interval),
    }
}

fn run(cli: Cli) -> Result<String, String> {
    match cli.command {
        Command::Limits { distribution } => match distribution {
            LimitsCommand::Binom {
                n,
                x,
                alpha,
                format,
            } => {
                no_svg(format)?;
                check_alpha_flag(alpha)?;
                if n == 0 {
                    return Err("--n must be >= 1".into());
                }
                if x > n {
                    return Err(format!("--x must not exceed --n (got --x {x}, --n {n})"));
                }
                let obs = BinomialObservation::new(n, x).map_err(|e| e.to_string())?;
                let interval = binom_fiducial(obs, alpha).map_err(|e| e.to_string())?;
                Ok(render_interval(&interval, format))
            }
            LimitsCommand::Poisson {
                n,
                y,
                alpha,
                format,
            } => {
                no_svg(format)?;
                check_alpha_flag(alpha)?;
                if n == 0 {
                    return Err("--n must be >= 1".into());
                }
                let obs = PoissonObservation::new(n, y).map_err(|e| e.to_string())?;
                let interval = poisson_fiducial(obs, alpha).map_err(|e| e.to_string())?;
                Ok(render_interval(&interval, format))
            }
            LimitsCommand::Geom {
                n,
                y,
                alpha,
                format,
            } => {
                no_svg(format)?;
                check_alpha_flag(alpha)?;
                if n == 0 {
                    return Err("--n must be >= 1".into());
                }
                let obs = GeometricObservation::new(n, y).map_err(|e| e.to_string())?;
                let interval = geometric_fiducial(obs, alpha).map_err(|e| e.to_string())?;
                Ok(render_interval(&interval, format))
            }
        },
        Command::Chart(args) => {
            check_alpha_flag(args.alpha)?;
            let text = std::fs::read_to_string(&args.input)
                .map_err(|e| format!("--input {}: {e}", args.input.display()))?;
            let data = parse_dataset_csv(&text)
                .map_err(|e| format!("--input {}: {e}", args.input.display()))?;
            let chart = build_chart(&data, args.kind.into(), args.alpha, args.param)
                .map_err(|e| e.to_string())?;
            Ok(match args.format {
                Format::Json => to_json_string(&chart_json(&chart)),
                Format::Text => chart_text(&chart),
                Format::Svg => chart_svg(&chart),
            })
        }
        Command::Simulate(args) => {
            no_svg(args.format)?;
            check_alpha_flag(args.alpha)?;
            if args.reps == 0 {
                return Err("--reps must be >= 1".into());
            }
            if args.n == 0 {
                return Err("--n must be >= 1".into());
            }
            let report = run_coverage(
                args.distribution.into(),
                args.param,
                args.n,
                args.alpha,
                args.reps,
                args.seed,
            )
            .map_err(|e| format!("--param: {e}"))?;
            Ok(match args.format {
                Format::Json => to_json_string(&report_json(&report)),
                _ => report_text(&report),
            })
        }
    }
}
