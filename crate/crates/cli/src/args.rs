use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tuplex::limits::{
    DEFAULT_ISO_NODE_BUDGET, DEFAULT_MATRIX_ENTRY_BUDGET, DEFAULT_SIMPLEX_BUDGET,
    DEFAULT_TIETZE_STEP_BUDGET,
};
use tuplex::Limits;

/// Build simplicial complexes, their r-tuplings and matching complexes, and
/// check connectivity statements about them with exact integral homology.
///
/// Complexes travel between subcommands as JSON on stdin/stdout:
/// {"vertices": N, "facets": [[...], ...]}.
///
/// Exit status: 0 on success or pass, 1 on fail or invalid input, 2 when a
/// check is inconclusive or a budget runs out.
#[derive(Debug, Parser)]
#[command(name = "tuplex", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Human,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Shorthand for `--format human`.
    #[arg(long, global = true)]
    pub human: bool,

    /// Maximum simplices in any one complex.
    #[arg(long, global = true, default_value_t = DEFAULT_SIMPLEX_BUDGET)]
    pub budget_simplices: usize,

    /// Maximum nonzero boundary-matrix entries per chain complex.
    #[arg(long, global = true, default_value_t = DEFAULT_MATRIX_ENTRY_BUDGET)]
    pub budget_matrix_entries: usize,

    /// Search nodes per isomorphism query.
    #[arg(long, global = true, default_value_t = DEFAULT_ISO_NODE_BUDGET)]
    pub budget_iso_nodes: u64,

    /// Rewriting steps for fundamental-group simplification.
    #[arg(long, global = true, default_value_t = DEFAULT_TIETZE_STEP_BUDGET)]
    pub budget_tietze_steps: usize,

    /// Worker threads. Output does not depend on this.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    /// Add wall-clock time to reports (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
}

impl Global {
    pub fn format(&self) -> Format {
        if self.human {
            Format::Human
        } else {
            self.format
        }
    }

    pub fn limits(&self) -> Limits {
        Limits {
            simplices: self.budget_simplices,
            matrix_entries: self.budget_matrix_entries,
            iso_nodes: self.budget_iso_nodes,
            tietze_steps: self.budget_tietze_steps,
            ..Limits::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a standard complex or graph.
    #[command(subcommand)]
    Gen(Gen),
    /// Apply a construction to a complex.
    #[command(subcommand)]
    Op(Op),
    /// Reduced integral homology of a complex.
    Homology(HomologyArgs),
    /// Check that a complex is weakly Cohen-Macaulay of a given dimension.
    Wcm(WcmArgs),
    /// Run a verification harness.
    #[command(subcommand)]
    Verify(Verify),
    /// Destabilization complexes of the symmetric groups.
    #[command(subcommand)]
    Destab(Destab),
    /// Time a fixed workload suite.
    Bench(BenchArgs),
}

#[derive(Debug, Subcommand)]
pub enum Gen {
    /// The full simplex on vertices 0..=n.
    Simplex {
        #[arg(long)]
        n: u32,
    },
    /// The boundary of the n-simplex.
    Boundary {
        #[arg(long)]
        n: u32,
    },
    /// The complete graph on n vertices (graph JSON).
    CompleteGraph {
        #[arg(long)]
        n: u32,
    },
    /// The complete r-uniform hypergraph matching complex on n points.
    HypergraphMatching {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[command(flatten)]
        table: TableOut,
    },
}

/// Where to write the vertex labels of a derived complex.
#[derive(Debug, Args)]
pub struct TableOut {
    /// Write the vertex table as JSON to this file.
    #[arg(long)]
    pub table_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Input file; stdin when absent or "-".
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Op {
    /// r-tupling of the input complex.
    Tuple {
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        table: TableOut,
    },
    /// Link of a simplex, given as comma-separated vertex ids.
    Link {
        #[arg(long, value_delimiter = ',')]
        simplex: Vec<u32>,
        #[command(flatten)]
        input: Input,
    },
    /// All simplices of dimension at most `dim`.
    Skeleton {
        #[arg(long)]
        dim: i64,
        #[command(flatten)]
        input: Input,
    },
    /// Join of two complexes; the second one's ids are shifted.
    Join {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        table: TableOut,
    },
    /// First barycentric subdivision.
    Barycentric {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        table: TableOut,
    },
    /// Order complex of the simplices with at least m vertices.
    Xm {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        table: TableOut,
    },
    /// Matching complex of a graph given as graph JSON.
    Matching {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        table: TableOut,
    },
    /// f-vector and dimension.
    Info {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    #[command(flatten)]
    pub input: Input,
    /// Only this degree.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Betti numbers over the field with this many elements instead.
    #[arg(long = "mod")]
    pub modulus: Option<u64>,
    /// Report homological connectivity and the fundamental-group status.
    #[arg(long, conflicts_with_all = ["degree", "modulus"])]
    pub connectivity: bool,
}

#[derive(Debug, Args)]
pub struct WcmArgs {
    #[command(flatten)]
    pub input: Input,
    /// Target dimension.
    #[arg(long, allow_hyphen_values = true)]
    pub dim: i64,
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// r-tupling of a complex that is wCM of dimension n.
    Theorem1 {
        /// wCM dimension of the input.
        #[arg(long)]
        n: i64,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        input: Input,
    },
    /// The r-tupling of the n-simplex, as a hypergraph matching complex.
    Theorem22 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
    },
    /// X_m of a complex that is wCM of dimension n.
    Lemma31 {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Links in the r-tupling against r-tuplings of links.
    LinkLemma {
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        input: Input,
    },
    /// r-tupling of the n-simplex against the hypergraph matching complex.
    Iso {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
    },
    /// The FI projection onto the r-tupling is a complete join.
    Prop44 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
    },
    /// wCM dimension of the FI complex S_n(∅,[r]).
    Prop45 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum Destab {
    /// Semi-simplicial set of injective words on n letters.
    InjectiveWords {
        #[arg(long)]
        n: u32,
        /// Print its reduced homology instead of the simplices.
        #[arg(long)]
        homology: bool,
    },
    /// The simplicial complex S_n(∅,[r]) as complex JSON.
    SComplex {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[command(flatten)]
        table: TableOut,
    },
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// One of: tupling, homology, wcm-grid.
    #[arg(long)]
    pub suite: String,
}
