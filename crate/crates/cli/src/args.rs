use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::emit::Format;

#[derive(Debug, Parser)]
#[command(name = "vertexlab", version, about = "Exact checks of K-theoretic DT limits and tautological Euler characteristics")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 lets rayon decide.
    #[arg(long, global = true, env = "VERTEXLAB_JOBS", default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The localization series F in z, y with coefficients in t1, t2, m1, m2, m3.
    FSeries(FSeriesArgs),
    /// Run one identity check and report pass or fail.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// The reduced preferred limit of a geometry as a vertex sum.
    DtLimit(DtLimitArgs),
    /// Tautological Euler characteristics.
    Taut {
        #[command(subcommand)]
        what: TautCommand,
    },
}

#[derive(Debug, Args)]
pub struct FSeriesArgs {
    #[arg(long, default_value_t = 2)]
    pub zorder: u32,
    #[arg(long, default_value_t = 2)]
    pub yorder: u32,
    /// Masses kept symbolic; the others are set to zero.
    #[arg(long, value_delimiter = ',', default_values_t = [1u8, 2, 3])]
    pub masses: Vec<u8>,
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// The three-fold symmetry of F.
    Symmetry {
        #[arg(long, default_value_t = 2)]
        zorder: u32,
        #[arg(long, default_value_t = 2)]
        yorder: u32,
    },
    /// The plethystic form of F at y = 0.
    Denominator {
        #[arg(long, default_value_t = 5)]
        zorder: u32,
    },
    /// The point-count generating function of C³.
    Nekrasov {
        #[arg(long, default_value_t = 4)]
        order: u32,
    },
    /// Edge tables against exact indices and the half-power dictionary.
    EdgeTables {
        #[arg(long, default_value_t = 5)]
        order: u32,
    },
    /// Box counting against the refined vertex.
    Vertex {
        #[arg(long, default_value_t = 4)]
        order: i64,
        #[arg(long, default_value_t = 2)]
        legs: u32,
    },
    /// Both chambers of a geometry give the same limit.
    SlopeIndependence {
        #[arg(long, value_enum, default_value_t = GeometryArg::Both)]
        geometry: GeometryArg,
        #[arg(long, default_value_t = 2)]
        kahler_degree: u32,
        #[arg(long, default_value_t = 6)]
        qt_order: i64,
    },
    /// The specialization of the masses that reduces the limit to F.
    Pipeline {
        #[arg(long, default_value_t = 2)]
        u_order: u32,
        #[arg(long, default_value_t = 2)]
        v_order: u32,
        #[arg(long, default_value_t = 2)]
        m_order: u32,
    },
    /// Closed formulas for tautological bundles.
    Taut {
        #[arg(long, default_value_t = 5)]
        order: u32,
        #[arg(long, default_value_t = 3)]
        sym_order: u32,
        #[arg(long, default_value_t = 4)]
        rank2_order: u32,
        #[arg(long, default_value_t = 4)]
        cobordism_order: u32,
        #[arg(long, default_value_t = 3)]
        plane_order: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GeometryArg {
    X1,
    X2,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Debug, Args)]
pub struct DtLimitArgs {
    #[arg(long, value_enum)]
    pub geometry: GeometryArg,
    #[arg(long, value_enum, default_value_t = RegimeArg::A)]
    pub regime: RegimeArg,
    #[arg(long, default_value_t = 2)]
    pub kahler_degree: u32,
    #[arg(long, default_value_t = 6)]
    pub qt_order: i64,
}

#[derive(Debug, Subcommand)]
pub enum TautCommand {
    /// χ(S^[n], F(V^[n])) as a series in z and m (or y).
    Chi(ChiArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SurfaceArg {
    P2,
    P1p1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FunctorArg {
    Lambda,
    Sym,
}

#[derive(Debug, Args)]
pub struct ChiArgs {
    #[arg(long, value_enum)]
    pub surface: SurfaceArg,
    /// Summands of the split bundle: degrees `d` on P2, bidegrees `a:b` on P1xP1.
    #[arg(long, value_delimiter = ',', default_value = "0", allow_hyphen_values = true)]
    pub bundle: Vec<String>,
    #[arg(long, value_enum, default_value_t = FunctorArg::Lambda)]
    pub functor: FunctorArg,
    #[arg(long, default_value_t = 4)]
    pub zorder: u32,
    /// Largest exterior or symmetric power.
    #[arg(long, default_value_t = 3)]
    pub korder: u32,
}
