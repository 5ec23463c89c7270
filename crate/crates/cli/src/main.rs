//! `coxlie`: GF(2) Lie-algebra invariants of right-angled Coxeter groups.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "coxlie",
    version,
    about = "Lie algebras of right-angled Coxeter groups over GF(2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Complex: a JSON file, a catalog name (k2, k3, pentagon, path4, cycle4,
    /// simplexN) or random:M for a seeded random flag complex on M vertices.
    #[arg(long, short = 'c')]
    pub complex: String,

    /// Largest total degree to compute.
    #[arg(long, short = 'd')]
    pub max_degree: Option<u32>,

    /// Print the JSON report instead of a table.
    #[arg(long)]
    pub json: bool,

    /// Seed for random:M complexes.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads for the span and lower-bound computations.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Summary: homology, GPTW count, series, dimensions and conjecture status.
    Analyze(Common),
    /// GPTW generators c(J∖j; j).
    Gptw(Common),
    /// dim (N_K)_α from the span of the GPTW generators, checked against the series.
    Dims(Common),
    /// The identity Π(1-λ^α)^{n_α} = Σ_J (1-χ(K_J)) λ^J and its exponents.
    Series(Common),
    /// Group-side lower bounds against n_2 + ... + n_k.
    Conjecture(Common),
    /// Bracket in span(ḡ_i) ⊕ N_K[t] (conjectural model of L(RC_K)).
    Bracket {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Reproduce the three worked examples and diff against expected output.
    Examples {
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match commands::run(cli.command, echo) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
