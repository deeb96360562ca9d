use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "range-polymer", version, about = "Range-based self-repelling polymers: exact laws, quadratures and Monte Carlo")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct Global {
    /// Table format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Directory for tables and manifest.json; tables go to stdout and the manifest to stderr otherwise.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Worker cap; never changes results.
    #[arg(long, global = true, env = "RANGE_POLYMER_THREADS")]
    #[serde(skip)]
    pub threads: Option<usize>,
    /// Raise the exact-law size cap.
    #[arg(long, global = true)]
    pub cap_override: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Speeds, free energies, spreads and thresholds of both models.
    Constants {
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, default_value_t = 1)]
        d: u32,
    },
    /// Endpoint-speed rate functions on a θ grid.
    RateCurves {
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, value_enum, default_value_t = Model::Discrete)]
        model: Model,
        /// Comma list or `start:stop:count`.
        #[arg(long, default_value = "0:1:101")]
        grid: String,
    },
    /// Exact finite-n laws of the discrete polymer.
    Exact {
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "z")]
        outputs: Vec<ExactOutput>,
        /// θ grid for the `ldp` output.
        #[arg(long, default_value = "0.3,0.5,0.7,0.95")]
        grid: String,
    },
    /// Quadratures of the continuous polymer.
    Continuous {
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "z")]
        outputs: Vec<ContinuousOutput>,
        /// C grid for the CLT outputs.
        #[arg(long, default_value = "-2:2:9", allow_hyphen_values = true)]
        grid: String,
        /// Weight by exp(-βt²/(R+2)) instead of the surrogate exp(-βt²/R).
        #[arg(long)]
        exact_radius: bool,
    },
    /// Seeded Monte Carlo.
    Mc {
        #[command(subcommand)]
        command: McCommand,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Discrete,
    Continuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExactOutput {
    Law,
    Z,
    FreeEnergy,
    Clt,
    Ldp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContinuousOutput {
    Z,
    RangeClt,
    EndpointClt,
}

#[derive(Debug, Args, Serialize)]
pub struct Sampling {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum McCommand {
    /// Endpoints and ranges of simple random walks on Z^d.
    Walk {
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Importance-sampled polymer expectations in d = 1 with the c*(β) proposal.
    Tilted {
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Polymer range fraction on Z^d against β/(β + ln 2d).
    Corollary {
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Growth exponent of E|S_n| over an n grid.
    Flory {
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Comma list of walk lengths.
        #[arg(long, default_value = "50,100,200,400")]
        grid: String,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Discretized Brownian range and endpoint histograms.
    Brownian {
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = 1e-4)]
        dt: f64,
        #[command(flatten)]
        sampling: Sampling,
    },
}
