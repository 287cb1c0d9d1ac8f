use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qvp", version, about = "Quasimap vertex functions and Bethe equations of quiver varieties")]
#[command(args_override_self = true)]
pub struct Cli {
    /// JSON file whose keys mirror the long flags; flags on the command line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads for parallel sums and solves.
    #[arg(long, global = true, env = "QVP_THREADS")]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    /// Plain text; the only format that `bethe derive` prints without an envelope.
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Truncated vertex series.
    Vertex(VertexArgs),
    /// Saddle-point equations.
    #[command(subcommand)]
    Bethe(BetheCommand),
    /// Fixed-point enumeration.
    #[command(subcommand, name = "enum")]
    Enumerate(EnumCommand),
    /// Run acceptance checks.
    Check(CheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Hilb,
    Conifold,
    Spinchain,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    /// Number of boxes (hilb) or of chain excitations (spinchain).
    #[arg(long)]
    pub n: Option<u32>,
    /// Conifold length.
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub v0: Option<usize>,
    #[arg(long)]
    pub v1: Option<usize>,
    /// Spin-chain framings.
    #[arg(long = "N")]
    pub framings: Option<usize>,
    /// Spin-chain loop power.
    #[arg(long)]
    pub k: Option<u32>,
    /// R-charge: `s1,s2,s3` (default 1,1,0), or `s1,s2` for the spin chain (default 2,0).
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<String>,
    /// Spin-chain framing charges `a1,...,aN` (default all 0).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    None,
    Gamma,
    Mb,
}

#[derive(Debug, Args)]
pub struct VertexArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Descendent insertion in power sums `p1, p2, ...`, e.g. `p1^2-p2`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub tau: String,
    /// Include the mass insertion (hilb only).
    #[arg(long)]
    pub mass: bool,
    /// `all` or a zero-based index into the enumeration order.
    #[arg(long, default_value = "all")]
    pub fixed_point: String,
    /// Bound on the total degree; defaults to the lowest degree plus 3.
    #[arg(long, allow_hyphen_values = true)]
    pub max_degree: Option<i64>,
    #[arg(long, value_enum, default_value_t = Oracle::None)]
    pub oracle: Oracle,
}

#[derive(Debug, Subcommand)]
pub enum BetheCommand {
    /// Derive the saddle system from the integrand.
    Derive(DeriveArgs),
    /// Solve the closed-form saddle system numerically.
    Solve(SolveArgs),
    /// Compare the derived system with the closed form.
    Compare(DeriveArgs),
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Include the mass insertion (hilb only).
    #[arg(long)]
    pub mass: bool,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Novikov value: `z̄` for hilb, `z` for the spin chain.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub z0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub z1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub h1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub h2: Option<f64>,
    /// Spin-chain ħ.
    #[arg(long, allow_hyphen_values = true)]
    pub hbar: Option<f64>,
    /// Framing parameters `a1,...,aN`.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Mass value; selects the system with mass (hilb only).
    #[arg(long, allow_hyphen_values = true)]
    pub mass: Option<f64>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Random seeds for systems without a continuation start.
    #[arg(long, default_value_t = 64)]
    pub seeds: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3.0)]
    pub radius: f64,
}

#[derive(Debug, Subcommand)]
pub enum EnumCommand {
    /// Plane partitions of size n.
    Pp {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Pyramid partitions of length m with v0 white and v1 black stones.
    Pyramid {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        v0: usize,
        #[arg(long)]
        v1: usize,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Spin-chain states with N sites, n excitations and at most k per site.
    Spin {
        #[arg(long = "N")]
        framings: usize,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        cache: CacheArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CacheArgs {
    /// Directory for cached enumerations.
    #[arg(long, env = "QVP_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// gamma, combinat, vertex, bethe or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
}
