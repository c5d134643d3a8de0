//! `ordercert`: left-orderability certificates for cyclic branched covers
//! of two-bridge knots, plus the symbolic and homological reports backing
//! them.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

const LONG_ABOUT: &str = "\
Certifies left-orderability of fundamental groups of n-th cyclic branched \
covers of two-bridge knots. Knots are written as p/q (p odd, 0 < q < p, \
coprime); an even q is replaced by p - q, the mirror image.

JSON reports follow the schemas shipped under schemas/. Floats are rounded \
to 12 significant digits so identical inputs give byte-identical output.

Environment:
  ORDERCERT_TOL   overrides the certificate tolerance (default 1e-9): the \
strictness margin for the root conditions and the bound every certificate \
residual must meet.

Exit codes: 0 success, 1 internal invariant violation, 2 invalid input.";

#[derive(Parser)]
#[command(name = "ordercert", version, about, long_about = LONG_ABOUT)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the representation polynomial phi(m, s) and its property report
    Phi {
        /// Two-bridge pair written as p/q
        knot: String,
    },
    /// Certify a single cover degree
    Certify {
        /// Two-bridge pair written as p/q
        knot: String,
        /// Cover degree (at least 2)
        n: u32,
    },
    /// Certify every degree in 2..=n-max and report the certified tail
    Scan {
        /// Two-bridge pair written as p/q
        knot: String,
        /// Largest cover degree to certify (2..=10000)
        #[arg(long)]
        n_max: u32,
    },
    /// Scan every normalized pair with p <= p-max; one JSON line per knot
    Batch {
        /// Largest p to enumerate
        #[arg(long)]
        p_max: i64,
        /// Largest cover degree per knot (2..=10000)
        #[arg(long)]
        n_max: u32,
        /// Keep only p with this residue mod 4 (1 or 3)
        #[arg(long)]
        pmod4: Option<u8>,
    },
    /// Print a cover-group presentation as plain text
    ///
    /// Grammar: a line "generators: g0 g1 ..." naming the generators, one
    /// line "relator k: ..." per relator with space-separated tokens like
    /// "g0" or "g2^-1" ("1" for an empty relator), and a final line
    /// "meridian: gk" when a distinguished meridian power exists (it never
    /// does for --branched).
    Presentation {
        /// Two-bridge pair written as p/q
        knot: String,
        /// Cover degree (at least 1)
        n: u32,
        /// Quotient by the meridian power (the branched cover group)
        #[arg(long)]
        branched: bool,
    },
    /// Branched-cover homology: Smith normal form next to the resultant oracle
    Homology {
        /// Two-bridge pair written as p/q
        knot: String,
        /// Cover degree (at least 1)
        n: u32,
    },
    /// CSV of the real slice roots across a theta range
    Curve {
        /// Two-bridge pair written as p/q
        knot: String,
        /// Range start in radians (> 0)
        #[arg(long)]
        from: f64,
        /// Range end in radians (< pi)
        #[arg(long)]
        to: f64,
        /// Number of sample points, endpoints included (>= 2)
        #[arg(long)]
        steps: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Phi { knot } => commands::cmd_phi(&knot),
        Command::Certify { knot, n } => commands::cmd_certify(&knot, n),
        Command::Scan { knot, n_max } => commands::cmd_scan(&knot, n_max),
        Command::Batch {
            p_max,
            n_max,
            pmod4,
        } => commands::cmd_batch(p_max, n_max, pmod4),
        Command::Presentation { knot, n, branched } => {
            commands::cmd_presentation(&knot, n, branched)
        }
        Command::Homology { knot, n } => commands::cmd_homology(&knot, n),
        Command::Curve {
            knot,
            from,
            to,
            steps,
        } => commands::cmd_curve(&knot, from, to, steps),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
