use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "kaehler", version, about = "Higher-order Jacobians, smoothness and torsion in differential modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Generator polynomial; repeat for an ideal with several generators.
    #[arg(short = 'f', long = "poly", global = true)]
    pub polys: Vec<String>,
    /// Order n of the differentials.
    #[arg(short = 'n', long = "order", global = true, default_value_t = 1)]
    pub order: u32,
    /// Comma-separated variable names (default: x1..xk from the input).
    #[arg(long, global = true)]
    pub vars: Option<String>,
    /// Characteristic of the coefficient field: 0 or a prime.
    #[arg(long = "char", global = true, default_value_t = 0)]
    pub characteristic: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Largest S-pair degree the Gröbner engine may reach.
    #[arg(long, global = true, env = "KAEHLER_MAX_DEGREE", default_value_t = 40)]
    pub max_degree: u32,
    /// Gröbner pair and reduction step budget.
    #[arg(long, global = true, env = "KAEHLER_MAX_STEPS", default_value_t = 1_000_000)]
    pub max_steps: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the order-n Jacobian matrix.
    Matrix,
    /// Order-n Jacobian criterion at a point of V(f).
    Smooth {
        #[arg(long)]
        point: String,
    },
    /// Dimension of m/m^(n+1) at a point of V(f).
    Jetdim {
        #[arg(long)]
        point: String,
    },
    /// Sizes of the presentation of the differentials module.
    Presentation,
    /// Rank of the Jacobian matrix.
    Rank {
        /// Over the fraction field of the polynomial ring (default).
        #[arg(long, group = "where")]
        generic: bool,
        /// Over the fraction field of A/<f>.
        #[arg(long, group = "where")]
        modf: bool,
        /// At a point.
        #[arg(long, group = "where")]
        point: Option<String>,
    },
    /// Is an element of A^(N-1) zero in the differentials module?
    Member {
        #[arg(long)]
        element: String,
    },
    /// Check a torsion witness: h*[m] = 0 and [m] != 0.
    Torsion {
        #[arg(long)]
        element: String,
        #[arg(long)]
        annihilator: String,
    },
    /// Evidence that the presentation is a resolution of length one.
    Pd,
}
