use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "torus-curves", version, about = "Curves on the one-holed torus")]
pub struct Cli {
    /// Directory for output files and the run manifest.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Self-intersection number of a primitive class.
    Si { word: String },
    /// Canonical representative of the unoriented class of a word.
    Canon { word: String },
    /// Mapping class group orbits.
    #[command(subcommand)]
    Orbit(OrbitCommand),
    /// Partition primitive classes with a given self-intersection into orbits.
    Classify {
        #[arg(long)]
        si: u32,
        #[arg(long)]
        max_wl: usize,
    },
    /// Hyperbolic metrics.
    #[command(subcommand)]
    Metric(MetricCommand),
    /// Geodesic length spectrum of an orbit.
    Spectrum {
        #[arg(long)]
        seed: String,
        #[command(flatten)]
        metric: MetricArg,
        /// Geometric cap; defaults to 100/c.
        #[arg(long)]
        max_gl: Option<f64>,
        /// Word-length cap; lowers the geometric cap to c·max_wl when needed.
        #[arg(long)]
        max_wl: Option<usize>,
    },
    /// Growth-coefficient estimates relative to the orbit of `a`.
    Coeffs {
        #[arg(long, value_delimiter = ',', required = true)]
        seeds: Vec<String>,
        /// One or more metrics `l1,l2,l3`.
        #[arg(long, num_args = 1.., required = true)]
        metrics: Vec<String>,
        #[arg(long)]
        max_gl: Option<f64>,
        #[arg(long)]
        max_wl: Option<usize>,
    },
    /// Counting-function series of a spectrum.
    Series {
        #[arg(long)]
        seed: String,
        #[command(flatten)]
        metric: MetricArg,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        max_gl: Option<f64>,
        #[arg(long)]
        max_wl: Option<usize>,
    },
    /// Fit a totient formula to an orbit's counts.
    Fit {
        #[arg(long)]
        seed: String,
        #[arg(long)]
        max_wl: usize,
    },
    /// Run the conjecture checks.
    Conjectures {
        #[arg(long, value_enum, default_value = "desk")]
        suite: SuiteArg,
        /// Override the suite's word cap for spectra.
        #[arg(long)]
        max_wl: Option<usize>,
    },
    /// Re-run the command recorded in a manifest.
    Replay { manifest: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum OrbitCommand {
    /// List orbit members, one canonical word per line.
    Enumerate(OrbitArgs),
    /// Count orbit members by word length.
    Counts(OrbitArgs),
    /// Compare counts with the builtin formula table.
    Verify(OrbitArgs),
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    #[arg(long)]
    pub seed: String,
    #[arg(long)]
    pub max_wl: usize,
}

#[derive(Subcommand, Debug)]
pub enum MetricCommand {
    /// Build the holonomy from pentagon parameters and dump it as JSON.
    Build {
        #[arg(long, requires_all = ["l2", "l3"], conflicts_with = "config")]
        l1: Option<f64>,
        #[arg(long)]
        l2: Option<f64>,
        #[arg(long)]
        l3: Option<f64>,
        /// JSON file `{"l1": …, "l2": …, "l3": …}`.
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct MetricArg {
    /// Pentagon parameters `l1,l2,l3`.
    #[arg(long)]
    pub metric: Option<String>,
    /// JSON file with the pentagon parameters.
    #[arg(long)]
    pub metric_config: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Which {
    I,
    Ii,
    Iii,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum SuiteArg {
    Desk,
    Full,
}
