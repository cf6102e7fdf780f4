//! Thin command-line front end; all logic lives in the library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lplab::report::{
    self, CommandConfig, FamilyConfig, OutputFormat, ProbeConfig, PsiConfig, RunConfig, ThicknessConfig,
};

#[derive(Parser)]
#[command(name = "lplab", about = "Gap-set constructions, thickness metrics and square-function probes", version)]
struct Cli {
    /// Root seed for every stochastic experiment.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory for set files, CSV tables and JSON reports.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Table output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// JSON run-config file; when given it overrides the command-line flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// Set family: cantor | dyadic | sumset | generated | stretched | thin_chain | file.
    /// Required everywhere except set-free probes (dirichlet, khintchine, growth).
    #[arg(long)]
    family: Option<String>,
    /// Construction depth (cantor, generated, stretched).
    #[arg(long, default_value_t = 6)]
    depth: u32,
    /// Dyadic exponent range.
    #[arg(long, default_value_t = 0)]
    k_min: i32,
    #[arg(long, default_value_t = 10)]
    k_max: i32,
    /// Subset-sum generators (comma separated).
    #[arg(long, value_delimiter = ',')]
    lengths: Vec<f64>,
    /// Geometric decay rate b in delta_k = (e^b - 1) e^{-kb}.
    #[arg(long, default_value_t = std::f64::consts::LN_2)]
    decay: f64,
    /// Stretched-family exponent eta.
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    /// Majorant for thin_chain: power:<alpha> or powerlog:<beta>.
    #[arg(long, default_value = "powerlog:2")]
    psi: String,
    /// Chain-order cutoff for thin_chain.
    #[arg(long, default_value_t = 3)]
    chain_orders: usize,
    /// Gap-set file (family = file).
    #[arg(long)]
    path: Option<PathBuf>,
}

impl FamilyArgs {
    fn parse(&self) -> Result<FamilyConfig, String> {
        let Some(family) = &self.family else {
            return Err("missing --family".into());
        };
        match family.as_str() {
            "cantor" => Ok(FamilyConfig::Cantor { depth: self.depth }),
            "dyadic" => Ok(FamilyConfig::Dyadic { k_min: self.k_min, k_max: self.k_max }),
            "sumset" => {
                if self.lengths.is_empty() {
                    return Err("family sumset needs --lengths".into());
                }
                Ok(FamilyConfig::SumSet { lengths: self.lengths.clone() })
            }
            "generated" => Ok(FamilyConfig::Generated { b: self.decay, depth: self.depth }),
            "stretched" => Ok(FamilyConfig::GeneratedStretched { eta: self.eta, depth: self.depth }),
            "thin_chain" => {
                let psi = parse_psi(&self.psi)?;
                Ok(FamilyConfig::ThinChain { psi, k: self.chain_orders })
            }
            "file" => {
                let path = self.path.clone().ok_or("family file needs --path")?;
                Ok(FamilyConfig::File { path })
            }
            other => Err(format!("unknown family `{other}` (expected cantor | dyadic | sumset | generated | stretched | thin_chain | file)")),
        }
    }
}

fn parse_psi(spec: &str) -> Result<PsiConfig, String> {
    let (kind, value) = spec.split_once(':').ok_or("psi must look like power:0.5 or powerlog:2")?;
    let value: f64 = value.parse().map_err(|_| format!("bad psi parameter `{value}`"))?;
    match kind {
        "power" => Ok(PsiConfig::Power { alpha: value }),
        "powerlog" => Ok(PsiConfig::PowerLog { beta: value }),
        other => Err(format!("unknown psi family `{other}`")),
    }
}

#[derive(Subcommand, Clone)]
enum Command {
    /// Build a set family and write its gap-set file.
    Construct {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Thickness analytics: neighbourhood table, box dimension, porosity or
    /// the portion-decay exponent fit.
    Thickness {
        #[command(flatten)]
        family: FamilyArgs,
        /// neighborhood | boxdim | porosity | decay.
        #[arg(long)]
        analysis: String,
        /// Delta grid (neighborhood, decay), comma separated.
        #[arg(long, value_delimiter = ',')]
        deltas: Vec<f64>,
        /// Scale grid for boxdim, comma separated (strictly decreasing).
        #[arg(long, value_delimiter = ',')]
        scales: Vec<f64>,
        /// Dyadic scan levels for porosity.
        #[arg(long, default_value_t = 8)]
        resolution: u32,
        /// Portion interval for decay.
        #[arg(long, num_args = 2)]
        interval: Vec<f64>,
        /// Lebesgue exponent for the decay bound comparison.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0.05)]
        tolerance: f64,
    },
    /// Maximum splitting subset of an arithmetic progression.
    Split {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0.0)]
        ap_a: f64,
        #[arg(long, default_value_t = 1.0)]
        ap_d: f64,
        #[arg(long, default_value_t = 16)]
        ap_n: usize,
    },
    /// Search a point list for an n-chain.
    Chain {
        /// Points, comma separated.
        #[arg(long, value_delimiter = ',')]
        points: Vec<f64>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Use the incomplete greedy search (required above n = 3 / 64 points).
        #[arg(long, default_value_t = false)]
        heuristic: bool,
    },
    /// Square-function and norm experiments.
    Probe {
        #[command(flatten)]
        family: FamilyArgs,
        /// frame | dirichlet | rademacher | khintchine | growth.
        #[arg(long)]
        probe: String,
        #[arg(long, default_value_t = 4.0 / 3.0)]
        p: f64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 2048)]
        grid: usize,
        /// Kernel sizes for dirichlet, comma separated.
        #[arg(long, value_delimiter = ',')]
        n_list: Vec<usize>,
        /// Frequencies for rademacher, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        k_list: Vec<i64>,
        /// Ambient progression length N for rademacher.
        #[arg(long, default_value_t = 256)]
        ambient_n: usize,
        /// Coefficients for khintchine, comma separated.
        #[arg(long, value_delimiter = ',')]
        coeffs: Vec<f64>,
        /// Sample sign patterns instead of enumerating them.
        #[arg(long, default_value_t = false)]
        montecarlo: bool,
        /// Largest chain order for growth.
        #[arg(long, default_value_t = 20)]
        n_max: usize,
    },
    /// Summarize a previously written report bundle.
    Report {
        #[arg(long)]
        path: PathBuf,
    },
}

fn build_config(cli: &Cli) -> Result<RunConfig, String> {
    if let Some(path) = &cli.config {
        let raw = std::fs::read_to_string(path).map_err(|e| format!("config {}: {e}", path.display()))?;
        let config: RunConfig = serde_json::from_str(&raw).map_err(|e| format!("config {}: {e}", path.display()))?;
        return Ok(config);
    }
    let Some(command) = &cli.command else {
        return Err("missing subcommand (construct | thickness | split | chain | probe | report) or --config".into());
    };
    let command = match command {
        Command::Construct { family } => CommandConfig::Construct { family: family.parse()? },
        Command::Thickness { family, analysis, deltas, scales, resolution, interval, p, tolerance } => {
            let analysis = match analysis.as_str() {
                "neighborhood" => ThicknessConfig::Neighborhood { deltas: deltas.clone() },
                "boxdim" => ThicknessConfig::BoxDim { scales: scales.clone() },
                "porosity" => ThicknessConfig::Porosity { resolution: *resolution },
                "decay" => {
                    let iv = if interval.len() == 2 { [interval[0], interval[1]] } else { [0.0, 1.0] };
                    ThicknessConfig::Decay { interval: iv, deltas: deltas.clone(), p: *p, tolerance: *tolerance }
                }
                other => return Err(format!("unknown analysis `{other}`")),
            };
            CommandConfig::Thickness { family: family.parse()?, analysis }
        }
        Command::Split { family, ap_a, ap_d, ap_n } => {
            CommandConfig::Split { family: family.parse()?, ap_a: *ap_a, ap_d: *ap_d, ap_n: *ap_n }
        }
        Command::Chain { points, n, heuristic } => {
            CommandConfig::Chain { points: points.clone(), n: *n, heuristic: *heuristic }
        }
        Command::Probe { family, probe, p, trials, grid, n_list, k_list, ambient_n, coeffs, montecarlo, n_max } => {
            let probe = match probe.as_str() {
                "frame" => ProbeConfig::Frame { p: *p, trials: *trials, grid: *grid },
                "dirichlet" => {
                    let ns = if n_list.is_empty() { (4..=12).map(|k| 1usize << k).collect() } else { n_list.clone() };
                    ProbeConfig::Dirichlet { p: *p, n_list: ns }
                }
                "rademacher" => ProbeConfig::Rademacher {
                    k_list: k_list.clone(),
                    ambient_n: *ambient_n,
                    p: *p,
                    montecarlo: *montecarlo,
                    trials: *trials,
                    grid: *grid,
                },
                "khintchine" => ProbeConfig::Khintchine {
                    coeffs: coeffs.clone(),
                    p: *p,
                    montecarlo: *montecarlo,
                    trials: *trials,
                },
                "growth" => ProbeConfig::Growth { p: *p, n_max: *n_max },
                other => return Err(format!("unknown probe `{other}`")),
            };
            let family = if probe_needs_set(&probe) { Some(family.parse()?) } else { None };
            CommandConfig::Probe { family, probe }
        }
        Command::Report { path } => CommandConfig::Report { path: path.clone() },
    };
    Ok(RunConfig {
        schema_version: report::SCHEMA_VERSION,
        command,
        seed: cli.seed,
        out_dir: cli.out_dir.clone(),
        format: match cli.format {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        },
    })
}

fn probe_needs_set(probe: &ProbeConfig) -> bool {
    matches!(probe, ProbeConfig::Frame { .. })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    report::init_thread_cap();
    let config = match build_config(&cli) {
        Ok(c) => c,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    match report::run(&config) {
        Ok(bundle) => {
            println!("config   {}", &bundle.config_hash[..16]);
            println!("seed     {}", bundle.seed);
            if let Some(residual) = bundle.residual {
                println!("residual {residual:.6e}");
            }
            for (key, value) in &bundle.summary {
                println!("{key:24} {value}");
            }
            for report in &bundle.probe_reports {
                println!("[{}]", report.experiment);
                for (key, value) in &report.scalars {
                    println!("  {key:22} {value:.9}");
                }
            }
            for flag in &bundle.reliability_flags {
                println!("note: {flag}");
            }
            for artifact in &bundle.artifacts {
                println!("wrote {artifact}");
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(report::exit_code(&err) as u8)
        }
    }
}
