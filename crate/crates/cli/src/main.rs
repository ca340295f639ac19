use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ddl_cli::config::{CurveSpec, NGridSpec, Outputs, RationalText, SGridSpec};
use ddl_cli::{run, validate, with_workers, CliError, Command, ExperimentConfig};

#[derive(Parser)]
#[command(name = "ddl", version, about = "Exact experiments on Dirichlet improvability along matrix curves")]
struct Cli {
    /// Worker threads for scans; 1 forces serial execution.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// `catalog:NAME` or a path to a curve JSON document.
    #[arg(long)]
    curve: Option<String>,
    /// Override the curve interval, as `a,b`.
    #[arg(long, value_parser = parse_pair)]
    interval: Option<(String, String)>,
    /// Write the CSV table here.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write the JSON report here (it is always printed to stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    /// RNG seed; overrides DDL_SEED.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Clone)]
struct NGrid {
    #[arg(long, default_value = "2")]
    n_base: String,
    /// Exponent range `lo..hi`, inclusive.
    #[arg(long, value_parser = parse_range)]
    n_exp: Option<(i64, i64)>,
}

#[derive(Subcommand)]
enum Sub {
    /// Genericity verdict with witness chain, plus the supergenericity certificate.
    CheckGeneric {
        #[command(flatten)]
        common: Common,
    },
    /// Conjugate the curve to standard form at a base point.
    ReduceStandard {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        at: String,
    },
    /// Search for a pencil containing the curve.
    CheckPencil {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Exact K_mu membership over an (s, N) grid.
    DirichletScan {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        mu: String,
        #[command(flatten)]
        grid: NGrid,
        #[arg(long, default_value_t = 64)]
        s_samples: usize,
    },
    /// Average annulus count along the curve against its Siegel volume.
    Siegel {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        r1: String,
        #[arg(long)]
        r2: String,
        #[arg(long = "n")]
        big_n: String,
        #[arg(long, default_value_t = 200)]
        s_samples: usize,
    },
    /// Shortest-vector decay along N at one point of the curve.
    Escape {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        at: String,
        #[command(flatten)]
        grid: NGrid,
    },
    /// Very-well-approximable hits at one point of the curve.
    Vwa {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        at: String,
        #[arg(long)]
        delta: String,
        #[arg(long, default_value_t = 100)]
        p_bound: u64,
    },
    /// Max-weight inequality on sl2 irreps, and witnesses when a curve is given.
    RepVerify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_dims, default_value = "1..8")]
        dims: (usize, usize),
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Wedge degrees for the witness check, comma separated.
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
    },
    /// Fit the (C, alpha)-good exponent of a polynomial.
    Cgood {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        function: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Thresholds relative to sup |f|, comma separated.
        #[arg(long, value_delimiter = ',')]
        epsilons: Option<Vec<f64>>,
    },
    /// Run an experiment described by a JSON config document.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

fn parse_pair(text: &str) -> Result<(String, String), String> {
    let (a, b) = text.split_once(',').ok_or("expected `a,b`")?;
    Ok((a.trim().to_string(), b.trim().to_string()))
}

fn parse_range(text: &str) -> Result<(i64, i64), String> {
    let (a, b) = text.split_once("..").ok_or("expected `lo..hi`")?;
    let parse = |s: &str| s.trim().parse::<i64>().map_err(|e| format!("{s}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

fn parse_dims(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = parse_range(text)?;
    Ok((usize::try_from(a).map_err(|e| e.to_string())?, usize::try_from(b).map_err(|e| e.to_string())?))
}

fn base_config(command: Command, common: Common) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(command);
    cfg.curve = common.curve.map(CurveSpec::Reference);
    cfg.interval = common.interval.map(|(a, b)| [RationalText::Text(a), RationalText::Text(b)]);
    cfg.output = Outputs { csv: common.csv, json: common.json };
    cfg.seed = common.seed;
    cfg
}

fn n_grid(grid: NGrid) -> Option<NGridSpec> {
    grid.n_exp.map(|(lo, hi)| NGridSpec { base: RationalText::Text(grid.n_base), lo, hi })
}

fn config_from(sub: Sub) -> Result<ExperimentConfig, CliError> {
    let text = |s: String| Some(RationalText::Text(s));
    Ok(match sub {
        Sub::CheckGeneric { common } => base_config(Command::CheckGeneric, common),
        Sub::ReduceStandard { common, at } => {
            let mut c = base_config(Command::ReduceStandard, common);
            c.at = text(at);
            c
        }
        Sub::CheckPencil { common, max_dim } => {
            let mut c = base_config(Command::CheckPencil, common);
            c.max_dim = max_dim;
            c
        }
        Sub::DirichletScan { common, mu, grid, s_samples } => {
            let mut c = base_config(Command::DirichletScan, common);
            c.mu = text(mu);
            c.n_grid = n_grid(grid);
            c.s_grid = Some(SGridSpec { count: s_samples, a: None, b: None });
            c
        }
        Sub::Siegel { common, r1, r2, big_n, s_samples } => {
            let mut c = base_config(Command::Siegel, common);
            c.r1 = text(r1);
            c.r2 = text(r2);
            c.big_n = text(big_n);
            c.samples = Some(s_samples);
            c
        }
        Sub::Escape { common, at, grid } => {
            let mut c = base_config(Command::Escape, common);
            c.at = text(at);
            c.n_grid = n_grid(grid);
            c
        }
        Sub::Vwa { common, at, delta, p_bound } => {
            let mut c = base_config(Command::Vwa, common);
            c.at = text(at);
            c.delta = text(delta);
            c.p_bound = Some(p_bound);
            c
        }
        Sub::RepVerify { common, dims, trials, degrees } => {
            let mut c = base_config(Command::RepVerify, common);
            c.dims = Some([dims.0, dims.1]);
            c.trials = Some(trials);
            c.degrees = degrees;
            c
        }
        Sub::Cgood { common, function, samples, epsilons } => {
            let mut c = base_config(Command::Cgood, common);
            c.function = Some(function);
            c.samples = Some(samples);
            c.epsilons = epsilons;
            c
        }
        Sub::Run { config } => {
            let doc = std::fs::read_to_string(&config)
                .map_err(|e| CliError::Validation(vec![format!("cannot read config {}: {e}", config.display())]))?;
            return serde_json::from_str(&doc).map_err(|e| CliError::Parse(e.to_string()));
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = config_from(cli.command)
        .and_then(validate)
        .and_then(|exp| with_workers(cli.workers, || run(&exp)).and_then(|r| r));
    match result {
        Ok(report) => match serde_json::to_string_pretty(&report) {
            Ok(text) => {
                // a closed pipe (e.g. `| head`) is not an error
                let _ = writeln!(std::io::stdout().lock(), "{text}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: cli: cannot serialize report: {e}");
                ExitCode::from(3)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
