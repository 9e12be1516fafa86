use clap::{Parser, Subcommand, ValueEnum};
use nonspin_core::pleated::{EdgePath, WeightConfig};
use nonspin_core::scenarios::{run_report, weight_checks, Context, DataError, ScenarioData, Suite, VerificationReport};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "nonspin", version, about = "Exact verifier for a genus-3 surface of self-intersection 1 in a right-angled 120-cell manifold")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// seed for the Monte Carlo weight sampler
    #[arg(long, global = true, default_value_t = WeightConfig::default().seed)]
    seed: u64,
    /// push-off directions sampled per link curve
    #[arg(long, global = true, default_value_t = WeightConfig::default().samples)]
    samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    report: Format,
    /// scenario data file (defaults to the bundled one)
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    /// record wall time per suite; reports are then no longer reproducible
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite
    Verify {
        #[arg(value_parser = parse_target)]
        suite: Target,
    },
    /// Push-off weight of one link curve, exact and sampled
    Weight { curve: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Clone)]
enum Target {
    All,
    One(Suite),
}

fn parse_target(s: &str) -> Result<Target, String> {
    if s == "all" {
        return Ok(Target::All);
    }
    s.parse().map(Target::One).map_err(|e| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("{e}; expected all, {}", names.join(", "))
    })
}

fn load_scenario(path: Option<&Path>) -> Result<ScenarioData, String> {
    let Some(p) = path else { return Ok(ScenarioData::bundled()) };
    let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
    ScenarioData::parse(&text).map_err(|e| match e {
        DataError::Parse { line, message } => format!("{}:{line}: {message}", p.display()),
        other => format!("{}: {other}", p.display()),
    })
}

fn load_curve(p: &Path) -> Result<EdgePath, String> {
    let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
    let body: String = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join(" ");
    EdgePath::parse(&body).map_err(|e| format!("{}: {e}", p.display()))
}

fn run(cli: &Cli) -> Result<VerificationReport, String> {
    let cfg = WeightConfig { seed: cli.seed, samples: cli.samples };
    match &cli.command {
        Command::Verify { suite } => {
            let data = load_scenario(cli.scenario.as_deref())?;
            let (name, suites) = match suite {
                Target::All => ("all".to_string(), Suite::ALL.to_vec()),
                Target::One(s) => (s.name().to_string(), vec![*s]),
            };
            Ok(run_report(&name, &suites, Context::shared(), &data, &cfg, cli.timings))
        }
        Command::Weight { curve } => {
            let path = load_curve(curve)?;
            let mut r = VerificationReport::new("weight", cfg.seed, cfg.samples);
            let t = std::time::Instant::now();
            let checks = weight_checks(&path, &cfg);
            r.push(checks, if cli.timings { t.elapsed().as_millis() as u64 } else { 0 });
            Ok(r)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(r) => {
            let out = match cli.report {
                Format::Json => r.to_json(),
                Format::Md => r.to_markdown(),
            };
            print!("{out}");
            ExitCode::from(if r.passed() { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
