//! Command line for exact computations with binary-form coefficients:
//! partition counting, operator application, shear expansion, identity
//! verification on single inputs, and grid suites over many inputs.
//!
//! Exit codes: 0 success, 1 a checked property failed (the payload carries
//! the counterexample), 2 usage, 3 capacity guardrail, 4 other errors.
//! Stdout carries only the result (text, or compact JSON under `--json`);
//! timing goes to stderr so identical inputs produce identical output.

use std::io::{self, Write};
use std::process;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

mod ops;

use ops::Outcome;

#[derive(Parser)]
#[command(name = "semiform", version, about = "Exact semi-invariants of binary n-forms")]
struct Cli {
    /// Print the payload as compact JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gaussian binomial coefficient row counting partitions in the k x n box.
    Gauss {
        /// Box width (order of the form).
        #[arg(long)]
        n: usize,
        /// Box height (degree of the coefficient monomials).
        #[arg(long)]
        k: usize,
    },
    /// Count the partitions of m inside the k x n box.
    Pcount {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: i64,
        /// Also list the partitions, largest first.
        #[arg(long)]
        list: bool,
    },
    /// Dimension difference p(k,n,m) - p(k,n,m-1), single or tabled.
    Delta {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Single weight; omit for the whole table over 0..=nk/2.
        #[arg(long)]
        m: Option<i64>,
    },
    /// Basis of one weight space, either all monomials or its semi-invariants.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: i64,
        /// q: monomial basis of the weight space; s: semi-invariant basis.
        #[arg(long, value_enum, default_value_t = SpaceArg::S)]
        space: SpaceArg,
    },
    /// Apply a power of D or Delta to a polynomial.
    Apply {
        #[arg(long, value_enum)]
        op: OpArg,
        /// Number of applications.
        #[arg(long, default_value_t = 1)]
        pow: usize,
        /// Polynomial JSON file, or - for stdin.
        #[arg(long = "in")]
        input: String,
    },
    /// Expand a polynomial under the horizontal or vertical shear.
    Shear {
        #[arg(long, value_enum)]
        dir: DirArg,
        /// Polynomial JSON file, or - for stdin.
        #[arg(long = "in")]
        input: String,
    },
    /// Check one identity on one input.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Sweep a verifier across a grid of inputs.
    Suite {
        #[command(subcommand)]
        suite: SuiteCommand,
    },
    /// Build a semi-invariant of degree k1 + k2 and weight m from two factors.
    Additivity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        #[arg(long)]
        m: i64,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Shear coefficients against scaled operator powers, both directions by default.
    Taylor {
        #[arg(long = "in")]
        input: String,
        #[arg(long, value_enum)]
        dir: Option<DirArg>,
    },
    /// First commutator identity on one partition monomial.
    Hilbert {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Comma-separated weakly decreasing parts, e.g. 4,2,1,0.
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        i: usize,
    },
    /// Second commutator identity on one partition monomial.
    Hilbert2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Comma-separated weakly decreasing parts, e.g. 4,2,1,0.
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        i: usize,
    },
    /// Collapse of D Delta^i on a semi-invariant read from a file.
    Cayley {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        i: usize,
    },
    /// Marked-diagram recount of an operator power, or of the census with --census.
    Diagrams {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Comma-separated weakly decreasing parts, e.g. 4,2,1,0.
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        i: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Minus)]
        mode: ModeArg,
        /// Recount the full commutator census instead of one power.
        #[arg(long)]
        census: bool,
    },
    /// Membership of a polynomial in the kernel of D.
    Semi {
        #[arg(long = "in")]
        input: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
}

#[derive(Subcommand)]
enum SuiteCommand {
    /// Dimension theorem over every (n, k, m) up to the bounds.
    Sylvester {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_k: usize,
    },
    /// Both commutator identities for every partition in one box.
    Hilbert {
        /// Box as KxN, rows by width, e.g. 3x3.
        #[arg(long = "box")]
        box_spec: String,
        #[arg(long, default_value_t = 4)]
        max_i: usize,
    },
    /// Taylor expansion on seeded random polynomials.
    Taylor {
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 5)]
        max_k: usize,
    },
    /// Diagram oracle and census over every partition up to the bounds.
    Diagrams {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
        #[arg(long, default_value_t = 3)]
        max_i: usize,
    },
    /// Strict unimodality of one Gaussian coefficient row.
    Unimodality {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OpArg {
    /// Lowering operator, weight -1.
    #[value(name = "D", alias = "d")]
    D,
    /// Raising operator, weight +1.
    #[value(name = "Delta", alias = "delta")]
    Delta,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DirArg {
    /// Horizontal shear, x -> x + zy; coefficients expand through D.
    #[value(name = "h", alias = "horizontal")]
    Horizontal,
    /// Vertical shear, y -> y + zx; coefficients expand through Delta.
    #[value(name = "v", alias = "vertical")]
    Vertical,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    /// Monomial basis of the full weight space.
    Q,
    /// Echelonized basis of the semi-invariants.
    S,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Minus marks on cells of the partition; recounts powers of D.
    Minus,
    /// Plus marks on hollow cells; recounts powers of Delta.
    Plus,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Apply D and test for zero.
    Operator,
    /// Expand the shear and test that nothing moves.
    Shear,
    /// Run both and require agreement.
    Both,
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = dispatch(cli.command);
    let elapsed = start.elapsed().as_millis();
    let code = match result {
        Ok(outcome) => {
            if cli.json {
                emit(&outcome.payload.to_string());
            } else {
                emit(&outcome.human);
            }
            i32::from(outcome.violation)
        }
        Err(err) => {
            let _ = writeln!(io::stderr(), "error: {err}");
            if matches!(err, semiform::Error::Capacity { .. }) {
                3
            } else {
                4
            }
        }
    };
    let _ = writeln!(io::stderr(), "time: {elapsed} ms");
    process::exit(code);
}

/// Prints a payload line, shrugging off a closed pipe (e.g. `| head`).
fn emit(text: &str) {
    let _ = writeln!(io::stdout(), "{text}");
}

fn dispatch(command: Command) -> semiform::Result<Outcome> {
    match command {
        Command::Gauss { n, k } => ops::gauss(n, k),
        Command::Pcount { n, k, m, list } => ops::pcount(n, k, m, list),
        Command::Delta { n, k, m } => ops::delta(n, k, m),
        Command::Basis { n, k, m, space } => ops::basis(n, k, m, space),
        Command::Apply { op, pow, input } => ops::apply(op, pow, &input),
        Command::Shear { dir, input } => ops::shear(dir, &input),
        Command::Verify { check } => match check {
            VerifyCommand::Taylor { input, dir } => ops::verify_taylor(&input, dir),
            VerifyCommand::Hilbert { n, k, lambda, i } => {
                ops::verify_hilbert(n, k, &lambda, i, false)
            }
            VerifyCommand::Hilbert2 { n, k, lambda, i } => {
                ops::verify_hilbert(n, k, &lambda, i, true)
            }
            VerifyCommand::Cayley { input, i } => ops::verify_cayley(&input, i),
            VerifyCommand::Diagrams { n, k, lambda, i, mode, census } => {
                ops::verify_diagrams(n, k, &lambda, i, mode, census)
            }
            VerifyCommand::Semi { input, method } => ops::verify_semi(&input, method),
        },
        Command::Suite { suite } => match suite {
            SuiteCommand::Sylvester { max_n, max_k } => ops::suite_sylvester(max_n, max_k),
            SuiteCommand::Hilbert { box_spec, max_i } => ops::suite_hilbert(&box_spec, max_i),
            SuiteCommand::Taylor { count, seed, max_n, max_k } => {
                ops::suite_taylor(count, seed, max_n, max_k)
            }
            SuiteCommand::Diagrams { max_n, max_k, max_i } => {
                ops::suite_diagrams(max_n, max_k, max_i)
            }
            SuiteCommand::Unimodality { n, k } => ops::suite_unimodality(n, k),
        },
        Command::Additivity { n, k1, k2, m } => ops::additivity(n, k1, k2, m),
    }
}
