use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use widthcert::charclass::{is_pin_minus, wu_class};
use widthcert::cli::{emit_report, load_complex, load_ring, run_suite, CliError, Format, SuiteConfig};
use widthcert::nets::{greedy_maximal_net, verify_net, FlatTorus, MIN_DENSITY_SAMPLES};
use widthcert::spaceform::{
    ball_volume, fiber_radius_bound, mscal_certificate, mscal_from_volume, FiberBoundInput,
    SpaceFormQuery,
};

#[derive(Parser)]
#[command(name = "widthcert", version, about = "Verification suites for cubical skeleta, Hopf obstructions and space-form bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write its report.
    Run(RunArgs),
    /// Volume of a geodesic ball in a constant-curvature model.
    Volume {
        #[arg(long)]
        dim: usize,
        #[arg(long, allow_hyphen_values = true)]
        sigma: f64,
        #[arg(long)]
        radius: f64,
    },
    /// Scalar curvature whose model ball has the given volume.
    Mscal {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        vol: f64,
        #[arg(long)]
        radius: f64,
    },
    /// Fiber radius certifying the curvature bound on a circle bundle.
    FiberRadius {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        kappa: f64,
    },
    /// Greedy maximal net on a flat torus, with verification.
    Net {
        /// Comma-separated side lengths.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<f64>,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = MIN_DENSITY_SAMPLES)]
        samples: usize,
    },
    /// Load and validate a ring presentation file.
    Ring { path: PathBuf },
    /// Load and validate a cubical complex file.
    Complex { path: PathBuf },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    n: Option<i64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Output file, or directory receiving `<suite>.<format>`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<String>,
    /// Flat `key = value` file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Extra ring file for the hopf suite.
    #[arg(long)]
    ring: Option<PathBuf>,
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn build_config(args: RunArgs) -> Result<SuiteConfig, CliError> {
    let mut config = SuiteConfig::new(widthcert::cli::Suite::All);
    if let Some(path) = &args.config {
        config.apply_file(path)?;
    }
    if let Some(s) = &args.suite {
        config.suite = s.parse()?;
    }
    if let Some(n) = args.n {
        config.n = n;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(tol) = args.tol {
        config.tol = tol;
    }
    if let Some(f) = &args.format {
        config.format = f.parse::<Format>().map_err(usage)?;
    }
    if args.out.is_some() {
        config.out = args.out;
    }
    if args.ring.is_some() {
        config.ring = args.ring;
    }
    config.validate()?;
    Ok(config)
}

fn print_json(value: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&value).expect("json value serializes"));
}

fn run(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Run(args) => {
            let config = build_config(args)?;
            let report = run_suite(&config)?;
            if let Some(path) = emit_report(&report, &config)? {
                eprintln!("{}: {} -> {}", report.suite, if report.pass { "pass" } else { "fail" }, path.display());
            }
            for r in report.failures() {
                eprintln!("FAIL {}: measured {} expected {}", r.id, r.measured, r.expected);
            }
            Ok(report.pass)
        }
        Command::Volume { dim, sigma, radius } => {
            let query = SpaceFormQuery { dim, sigma, radius };
            let volume = ball_volume(query).map_err(usage)?;
            print_json(json!({ "input": query, "volume": volume }));
            Ok(true)
        }
        Command::Mscal { dim, vol, radius } => {
            let sigma = mscal_from_volume(dim, vol, radius).map_err(usage)?;
            print_json(json!({ "input": { "dim": dim, "vol": vol, "radius": radius }, "sigma": sigma }));
            Ok(true)
        }
        Command::FiberRadius { dim, sigma, kappa } => {
            let input = FiberBoundInput { dim, sigma, kappa };
            let rho = fiber_radius_bound(input).map_err(usage)?;
            let certified = mscal_certificate(dim, sigma, kappa, rho).map_err(usage)?;
            print_json(json!({ "input": input, "fiber_radius": rho, "certified": certified }));
            Ok(certified)
        }
        Command::Net { dims, delta, seed, samples } => {
            let torus = FlatTorus::new(dims).map_err(usage)?;
            let net = greedy_maximal_net(&torus, delta, seed).map_err(usage)?;
            let report = verify_net(&net, &torus, samples, seed.wrapping_add(1)).map_err(usage)?;
            let pass = report.passed();
            print_json(json!({
                "input": { "dims": torus.sides(), "delta": delta, "seed": seed, "samples": samples },
                "net": net,
                "verification": report,
                "pass": pass,
            }));
            Ok(pass)
        }
        Command::Ring { path } => {
            let ring = load_ring(&path)?;
            print_json(json!({
                "name": ring.name(),
                "dim": ring.dim(),
                "ranks": (0..=ring.dim()).map(|p| ring.rank(p)).collect::<Vec<_>>(),
                "wu_class": wu_class(&ring).to_string(),
                "pin_minus": is_pin_minus(&ring),
            }));
            Ok(true)
        }
        Command::Complex { path } => {
            let complex = load_complex(&path)?;
            print_json(json!({ "cell_counts": complex.cell_counts() }));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("widthcert: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
