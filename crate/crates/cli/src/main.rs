//! Command-line front end for the exact intersection-arithmetic library.
//!
//! Every subcommand prints exact fractions tagged with their provenance: a
//! value is derived (recomputed from scratch), cited (quoted without
//! rederivation), or hybrid (derived arithmetic on quoted inputs). With
//! `--json` the same report is emitted as one deterministic JSON object.
//!
//! Exit codes: 0 on success, 2 when the input is at fault, 3 when an
//! internal invariant broke, 64 for usage errors.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use mbar::Error;

use commands::Ctx;

#[derive(Parser)]
#[command(
    name = "mbar",
    version,
    about = "Exact intersection arithmetic on moduli of stable curves",
    max_term_width = 100
)]
struct Cli {
    /// Print one machine-readable JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Add decimal renderings of exact values, marked non-authoritative.
    #[arg(long, global = true)]
    approx: bool,

    /// Fallback search box for the minimizers: one inclusive range per
    /// scaled coordinate, e.g. "0..9,0..9,0..7". Ignored by commands that
    /// do not minimize.
    #[arg(long, global = true, value_name = "RANGES")]
    seed_box: Option<String>,

    /// Ring presentation file replacing the built-in genus-4 presentation
    /// in commands that reduce against one. Ignored elsewhere.
    #[arg(long, global = true, value_name = "FILE")]
    presentation: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Nef-cone inequalities and extremal rays for one genus.
    NefCone {
        /// Genus of the moduli space, at least 3.
        #[arg(long)]
        genus: u32,
    },

    /// Residue analysis of when a polynomial takes integer values.
    Integrality {
        #[command(subcommand)]
        action: IntegralityAction,
    },

    /// Degrees and very-ampleness conditions on the genus-2 space.
    M2 {
        #[command(subcommand)]
        action: Genus2Action,
    },

    /// Degrees and very-ampleness conditions on the genus-3 space.
    M3 {
        #[command(subcommand)]
        action: Genus3Action,
    },

    /// Degree of the hyperelliptic locus against the top lambda power.
    Hg {
        /// Genus, at least 1.
        #[arg(long)]
        genus: u32,
    },

    /// Lambda intersection numbers in genus 3 and 4.
    Lambda {
        #[command(subcommand)]
        action: LambdaAction,
    },

    /// The genus-3 kappa monomial degrees and their cross-checks.
    Kappa {
        #[command(subcommand)]
        action: KappaAction,
    },

    /// The test-surface linear system for the genus-4 hyperelliptic class.
    Testsurface {
        #[command(subcommand)]
        action: TestsurfaceAction,
    },
}

#[derive(Subcommand)]
enum IntegralityAction {
    /// Enumerate the residues where the polynomial's values are integral.
    Analyze {
        /// JSON file holding the polynomial.
        #[arg(long, value_name = "FILE")]
        poly: PathBuf,

        /// The prime to analyze at.
        #[arg(long)]
        prime: u64,

        /// Precision: residues are enumerated mod prime^power.
        #[arg(long)]
        power: u32,

        /// Also search for a structured description of the admitted set.
        #[arg(long)]
        simplify: bool,
    },
}

#[derive(Subcommand)]
enum Genus2Action {
    /// Evaluate the degree D^3 for D = a*lambda + b*delta_1.
    Degree {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
    },

    /// The divisibility conditions forced by integral degrees.
    Conditions,

    /// Minimize the degree over ample classes on the admitted lattice.
    Minimize,
}

#[derive(Subcommand)]
enum Genus3Action {
    /// Evaluate the degree D^6 for D = a*lambda - b*delta_0 - c*delta_1.
    Degree {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[arg(long, allow_negative_numbers = true)]
        c: i64,
    },

    /// The accumulated divisibility conditions on (a, b, c).
    Conditions {
        /// Leave out conditions that rest on quoted cycle pairings.
        #[arg(long)]
        skip_cited: bool,
    },

    /// Replay the modular chain behind the conditions, step by step.
    ModChain {
        /// Leave out conditions that rest on quoted cycle pairings.
        #[arg(long)]
        skip_cited: bool,
    },

    /// Minimize the degree over ample classes on the admitted lattice.
    Minimize,
}

#[derive(Subcommand)]
enum LambdaAction {
    /// lambda^6 on the genus-3 space, two independent routes.
    #[command(name = "m3-l6")]
    M3L6,

    /// lambda^9 on the genus-4 space via the hyperelliptic pairing chain.
    #[command(name = "m4-l9")]
    M4L9,

    /// lambda_3^3 on the genus-4 space via symbolic reduction.
    #[command(name = "l3cubed")]
    L3Cubed,

    /// The multiple of lambda representing the Jacobian locus among
    /// abelian fourfolds.
    Schottky,
}

#[derive(Subcommand)]
enum KappaAction {
    /// The table of kappa monomial degrees of weight 6.
    Table,

    /// Check the table against the gravity constant and the divisor
    /// pipeline.
    WittenCheck,
}

#[derive(Subcommand)]
enum TestsurfaceAction {
    /// Solve the surface equations for the hyperelliptic class ansatz.
    Solve,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let as_json = cli.json;
    match execute(cli) {
        Ok(output) => {
            output.print(as_json);
            ExitCode::SUCCESS
        }
        Err(Error::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Error::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn execute(cli: Cli) -> mbar::Result<render::Output> {
    let ctx = Ctx::new(cli.approx, cli.seed_box.as_deref(), cli.presentation.as_deref())?;
    match cli.command {
        Command::NefCone { genus } => commands::nefcone::run(genus),
        Command::Integrality { action } => match action {
            IntegralityAction::Analyze { poly, prime, power, simplify } => {
                commands::integrality::analyze_file(&poly, prime, power, simplify)
            }
        },
        Command::M2 { action } => match action {
            Genus2Action::Degree { a, b } => commands::genus2::degree(&ctx, a, b),
            Genus2Action::Conditions => commands::genus2::conditions(),
            Genus2Action::Minimize => commands::genus2::minimize(&ctx),
        },
        Command::M3 { action } => match action {
            Genus3Action::Degree { a, b, c } => commands::genus3::degree(&ctx, a, b, c),
            Genus3Action::Conditions { skip_cited } => commands::genus3::conditions(skip_cited),
            Genus3Action::ModChain { skip_cited } => commands::genus3::mod_chain(skip_cited),
            Genus3Action::Minimize => commands::genus3::minimize(&ctx),
        },
        Command::Hg { genus } => commands::numbers::hg(&ctx, genus),
        Command::Lambda { action } => match action {
            LambdaAction::M3L6 => commands::numbers::lambda_m3_l6(&ctx),
            LambdaAction::M4L9 => commands::numbers::lambda_m4_l9(&ctx),
            LambdaAction::L3Cubed => commands::numbers::lambda_l3cubed(&ctx),
            LambdaAction::Schottky => commands::numbers::lambda_schottky(&ctx),
        },
        Command::Kappa { action } => match action {
            KappaAction::Table => commands::numbers::kappa_table(),
            KappaAction::WittenCheck => commands::numbers::witten_check_cmd(&ctx),
        },
        Command::Testsurface { action } => match action {
            TestsurfaceAction::Solve => commands::numbers::testsurface_solve(),
        },
    }
}
