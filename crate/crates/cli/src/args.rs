use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rhomotopy::minimal_model::DEFAULT_BUDGET;
use rhomotopy::{Coefficients, DEFAULT_TAU};

use crate::error::{CliError, Result};
use crate::input::{BackendChoice, Generator, MetricChoice};

#[derive(Debug, Parser)]
#[command(name = "rhomotopy", version, about = "r-homotopy invariants of finite quasimetric spaces and digraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub options: GlobalArgs,
}

/// Exactly one of `--matrix`, `--digraph`, `--points`, `--generate`.
/// A path of `-` reads standard input.
#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Distance matrix, one row per line; `inf` for infinite distances.
    #[arg(long, global = true, value_name = "PATH")]
    pub matrix: Option<PathBuf>,
    /// Edge list `u v`, one arrow per line, optional `vertices N`.
    #[arg(long, global = true, value_name = "PATH")]
    pub digraph: Option<PathBuf>,
    /// Point cloud, one point per line.
    #[arg(long, global = true, value_name = "PATH")]
    pub points: Option<PathBuf>,
    /// Built-in space: circle-arc:GAP,COUNT  circle:COUNT  grid:RxC[,SPACING]
    /// cycle:N  directed-cycle:N  directed-path:N  discontinuity[:EPS]  lev
    /// diamond  pentagon-apex  bidirected-hexagon
    #[arg(long, global = true, value_name = "SPEC")]
    pub generate: Option<Generator>,
    /// Numeric backend for matrices.
    #[arg(long, global = true, value_enum, default_value_t)]
    pub backend: BackendChoice,
    /// Metric for point clouds and grids.
    #[arg(long, global = true, value_enum, default_value_t)]
    pub metric: MetricChoice,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Coefficients: Z, Q, Fp (with --p) or F<p>.
    #[arg(long, global = true)]
    pub coeff: Option<String>,
    /// Characteristic for --coeff Fp.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Node limit for the minimal-model search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Grouping tolerance for float distances and levels.
    #[arg(long, global = true, default_value_t = DEFAULT_TAU)]
    pub tau: f64,
    /// Worker threads for independent queries (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Randomizes tie-breaking in the minimal-model search.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: Format,
    /// Leaves wall_time_ms empty so output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

impl GlobalArgs {
    /// Coefficients requested on the command line, if any.
    pub fn coefficients(&self) -> Result<Option<Coefficients>> {
        let parsed = match (self.coeff.as_deref(), self.p) {
            (None, None) => return Ok(None),
            (None | Some("Fp"), Some(p)) => format!("F{p}").parse(),
            (Some("Fp"), None) => return Err(CliError::Usage("--coeff Fp needs --p".into())),
            (Some(c), None) => c.parse(),
            (Some(_), Some(_)) => return Err(CliError::Usage("--p only goes with --coeff Fp".into())),
        };
        Ok(Some(parsed?))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Formula {
    /// Ranks of maps between interval homologies.
    #[default]
    Image,
    /// Cycle and boundary subspaces of the filtration.
    Ce,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check the quasimetric axioms and summarise the space.
    Validate,
    /// An r-minimal model as a deformation retract, with its certificate.
    MinimalModel {
        #[arg(long)]
        r: String,
    },
    /// Radii at which the minimal model shrinks.
    JumpingPoints {
        /// Re-check the model size once inside every gap between candidates.
        #[arg(long)]
        verify_plateaus: bool,
    },
    /// The nested models at the jumping points.
    NestedModels,
    /// Magnitude homology, over Z unless --coeff says otherwise.
    Magnitude {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Levels; all achieved levels in degree n when omitted.
        #[arg(long, value_delimiter = ',')]
        l: Vec<String>,
    },
    /// Path homology of a digraph.
    PathHomology {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
    },
    /// Homology of the whole reachability complex.
    Reachability {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long)]
        degree_bound: usize,
    },
    /// Spectral homology SH^r_{n,I}. Float singletons snap to the achieved
    /// level they round to.
    Spectral {
        #[arg(long)]
        r: String,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Interval such as {1}, [0,2], (1,3], (-inf,2] or R; repeatable.
        #[arg(long, required = true)]
        interval: Vec<String>,
        #[arg(long)]
        degree_bound: Option<usize>,
    },
    /// Barcode of l -> SH^r_{n,(-inf,l]}.
    Persistence {
        #[arg(long)]
        r: String,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
    },
    /// Pages of the magnitude-path spectral sequence (integer spaces only).
    Mpss {
        #[arg(long, value_delimiter = ',', required = true)]
        page: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        max_n: usize,
        /// Largest level; defaults to max-n times the diameter.
        #[arg(long)]
        max_l: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        formula: Formula,
    },
    /// Cross-check independent computations; exits 1 on any mismatch.
    Verify {
        /// Radii to check; the jumping points when omitted.
        #[arg(long, value_delimiter = ',')]
        r: Vec<String>,
        #[arg(long, default_value_t = 1)]
        max_n: usize,
        /// Pages compared on integer spaces.
        #[arg(long, default_value_t = 3)]
        max_page: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::MinimalModel { .. } => "minimal-model",
            Command::JumpingPoints { .. } => "jumping-points",
            Command::NestedModels => "nested-models",
            Command::Magnitude { .. } => "magnitude",
            Command::PathHomology { .. } => "path-homology",
            Command::Reachability { .. } => "reachability",
            Command::Spectral { .. } => "spectral",
            Command::Persistence { .. } => "persistence",
            Command::Mpss { .. } => "mpss",
            Command::Verify { .. } => "verify",
        }
    }
}
