use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Obstructions for isometries of even unimodular lattices and realizability
/// of Salem numbers on K3 surfaces.
#[derive(Parser, Debug)]
#[command(name = "k3ob", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    /// Run every line of the file as a command, printing one JSON line each.
    #[arg(long, value_name = "PATH")]
    pub batch: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Args, Debug, Clone, Copy, Default)]
pub struct Global {
    /// Emit a single JSON document.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for randomized steps (splitting mod p, reference indices).
    #[arg(long, global = true, value_name = "U64")]
    pub seed: Option<u64>,

    /// Give up on an item after this many milliseconds (reported as undecided).
    #[arg(long, global = true, value_name = "N")]
    pub timeout_ms: Option<u64>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Factor over ℚ, modulo p, or over ℚ_p.
    Factor {
        poly: String,
        /// Factor the reduction modulo this prime.
        #[arg(long = "mod", value_name = "P", conflicts_with = "qp")]
        modulus: Option<u64>,
        /// Factor over the p-adic numbers.
        #[arg(long, value_name = "P")]
        qp: Option<u64>,
    },
    /// Cyclotomic polynomials and their closed-form invariants.
    Cyclo {
        #[command(subcommand)]
        cmd: CycloCmd,
    },
    /// Π(f, g): primes where the symmetric reductions of f and g meet.
    Pi { f: String, g: String },
    /// Reductions mod p of the *-symmetric p-adic factors.
    Symbols {
        poly: String,
        p: u64,
        /// Only the members forced by a nonsquare value at ±1.
        #[arg(long)]
        nonsquare: bool,
    },
    /// Obstruction map, equivalence classes and vanishing reference indices.
    Obstruct {
        poly: String,
        /// Signature as `r,s`.
        #[arg(long, value_name = "R,S")]
        signature: Option<String>,
        /// Explicit index map `i₊,i₋,v₁,v₂,...` with pair values in factor order.
        #[arg(
            long,
            value_name = "LIST",
            allow_hyphen_values = true,
            requires = "signature"
        )]
        values: Option<String>,
        /// Report at most this many enumerated index maps.
        #[arg(long, default_value_t = 16)]
        limit: usize,
        /// Build a vanishing index for `i₊,i₋` instead.
        #[arg(long, value_name = "I+,I-", allow_hyphen_values = true, conflicts_with_all = ["signature", "values"])]
        vanishing: Option<String>,
    },
    /// Salem polynomials and nonprojective realizability.
    Salem {
        #[command(subcommand)]
        cmd: SalemCmd,
    },
    /// Enumerate the index maps of F at signature (r, s).
    Idx {
        poly: String,
        r: u64,
        s: u64,
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum CycloCmd {
    /// The cyclotomic polynomial Φ_n.
    Phi { n: u64 },
    /// Factorization shape of Φ_n modulo p.
    Shape { n: u64, p: u64 },
    /// Π(Φ_n, Φ_n') by the closed rule.
    Pi { n: u64, n2: u64 },
    /// Res(Φ_n, Φ_n') by the closed formula, for n > n'.
    Res { n: u64, n2: u64 },
    /// The sets C̃_d and C_d for d ∈ {10, 18}.
    Csets { d: u32 },
    /// All n with φ(n) = k.
    Fiber { k: u64 },
}

#[derive(Subcommand, Debug, Clone)]
pub enum SalemCmd {
    /// Whether the polynomial is a Salem polynomial.
    Check { poly: String },
    /// Decide nonprojective realizability.
    Realizable {
        #[arg(required_unless_present = "scan")]
        poly: Option<String>,
        /// Build and check a witness complemented Salem polynomial.
        #[arg(long)]
        witness: bool,
        /// Scan all Salem polynomials of this degree for non-realizable ones.
        #[arg(long, value_name = "DEGREE", conflicts_with = "poly")]
        scan: Option<usize>,
        /// Trace polynomial coefficient bound for --scan.
        #[arg(long, default_value_t = 2)]
        height: i64,
    },
}
