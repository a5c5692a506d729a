use std::path::PathBuf;

use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Minimize the cross-product sum F_n from a random start.
    PolygonMin,
    /// Compare A(V) A(V*) with 4 n^2 sin^2(pi / 2n).
    BsCheck,
    /// Tabulate I(alpha) against sin(alpha) for one curve.
    IalphaSweep,
    /// Scan f_n(alpha) for positivity over even n.
    HessianScan,
    /// Average Schwarzian and Petty product of diffeomorphism curves.
    SchwarzianCheck,
    /// Residual of the criticality condition for I(alpha).
    Criticality,
    /// Randomized local search for I(alpha) < sin(alpha).
    ConjectureSearch,
    /// Iterate the outer billiard map.
    BilliardOrbit,
    /// Distance of a far orbit from the far-field curve.
    FarfieldError,
    /// Absolute time of the far-field dynamics and its bounds.
    Abstime,
    /// Chord and diagonal averages against their bounds.
    ChordCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolygonKind {
    Regular,
    Random,
}

/// Command line of `centroaffine`. Flags that a command does not use are ignored.
#[derive(Debug, Clone, Parser)]
#[command(name = "centroaffine", version, about = "Centro-affine inequalities and outer billiards, one experiment per run")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Polygon size, or the largest n of a Hessian scan.
    #[arg(long)]
    pub n: Option<usize>,
    /// Angle alpha in (0, pi), or the chord offset c in (0, 2 pi).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Samples per half period, a power of two.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Number of random starts, polygons or curves
    #[arg(long)]
    pub trials: Option<usize>,
    /// Seed of the ChaCha8 generator
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `circle`, `square`, `triangle`, or a table file.
    #[arg(long)]
    pub table: Option<String>,
    /// Input file: a polygon, curve or table, depending on the command.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Starting distance for the far-field error.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Turns of the far orbit to follow
    #[arg(long)]
    pub revolutions: Option<f64>,
    /// Harmonic cutoff M of the conjecture search.
    #[arg(long)]
    pub cutoff: Option<u32>,
    /// Number of alpha values for sweeps and searches.
    #[arg(long)]
    pub alpha_grid: Option<usize>,
    /// Starting point `x,y` of an orbit.
    #[arg(long, allow_hyphen_values = true)]
    pub start: Option<String>,
    /// Number of outer billiard steps
    #[arg(long)]
    pub steps: Option<usize>,
    /// Diagonal offset for Lüko averages.
    #[arg(long)]
    pub k: Option<usize>,
    /// Regular polygon or random star polygons for bs-check
    #[arg(long, value_enum)]
    pub polygon: Option<PolygonKind>,
    /// Harmonics `n:re:im,...` of a diffeomorphism curve.
    #[arg(long, allow_hyphen_values = true)]
    pub harmonics: Option<String>,
    /// Record wall time in the report (makes output nondeterministic).
    #[arg(long)]
    pub timing: bool,
}

impl Cli {
    pub fn grid(&self) -> usize {
        self.grid.unwrap_or(centroaffine::tolerance::DEFAULT_GRID)
    }
}
