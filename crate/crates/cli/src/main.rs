//! `jacquet`: dimensions of twisted Jacquet modules of cuspidal representations
//! of GL(2n, F_q), with the supporting verification suites.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use jacquet_core::acceptance::run_all;
use jacquet_core::ffmat::{enumerate_census, make_field, DEFAULT_ENUMERATION_BUDGET};
use jacquet_core::jacquet::{
    compute, cross_check_table, decomposition_table, dim_closed, Budgets, DimRequest, Method,
    DEFAULT_COMPLEX_BUDGET,
};
use jacquet_core::qcalc::identity_suite;
use jacquet_core::report::{render_census, render_identities, render_reports, render_table, Format};
use jacquet_core::{Error, ExactInt};

const MISMATCH: u8 = 1;
const USAGE: u8 = 2;
const RESOURCE: u8 = 3;

const COMPLEX_TOLERANCE: f64 = 1e-6;

#[derive(Parser, Debug)]
#[command(name = "jacquet", version, about, after_help = EXIT_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

const EXIT_HELP: &str = "Exit status: 0 all checks pass, 1 verification mismatch, 2 usage error, 3 budget exceeded.";

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of the psi_{A_k}-twisted Jacquet module of a cuspidal pi of GL(2n, F_q).
    ///
    /// CSV columns: n,k,q,method,value,elapsed_ms.
    Dim {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Report wall-clock time per method (makes output nondeterministic).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Restriction of a cuspidal pi to N = M(n, F_q), one row per character orbit.
    ///
    /// CSV columns: k,orbit_size,dim,product, followed by a row total,,,<total>.
    Table {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        /// Also verify every row against exhaustive enumeration.
        #[arg(long)]
        cross_check: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exhaustive count of X in M(n, F_q) by rank and tr(A_k X).
    ///
    /// CSV columns: r,alpha,count, with alpha as the coordinate vector (c_0,...,c_{e-1}).
    Census {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Runs every q-identity family and prints a pass/fail matrix.
    ///
    /// CSV columns: identity,q,cases,failures,passed.
    Identities {
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        q_points: Vec<i64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Runs the full acceptance suite, one line per criterion.
    Selftest {
        /// Seed for the randomized invariance trials.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Append wall-clock time to each line.
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Characteristic of F_q.
    #[arg(long)]
    p: u32,
    /// Degree of F_q over F_p.
    #[arg(long, default_value_t = 1)]
    e: u32,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Most matrices an exhaustive census may visit.
    #[arg(long, env = "JACQUET_BUDGET", default_value_t = DEFAULT_ENUMERATION_BUDGET, value_parser = positive)]
    budget: u64,
    /// Most terms the complex character sum may visit.
    #[arg(long, default_value_t = DEFAULT_COMPLEX_BUDGET, value_parser = positive)]
    complex_budget: u64,
}

impl BudgetArgs {
    fn budgets(&self) -> Budgets {
        Budgets { enumeration: self.budget, complex: self.complex_budget }
    }
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Closed,
    Counts,
    Census,
    Complex,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Closed => vec![Method::Closed],
            MethodArg::Counts => vec![Method::Counts],
            MethodArg::Census => vec![Method::Census],
            MethodArg::Complex => vec![Method::Complex],
            MethodArg::All => Method::ALL.to_vec(),
        }
    }
}

fn positive(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("budget must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// A completed run: what to print and whether every check held.
struct Outcome {
    stdout: String,
    problems: Vec<String>,
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Dim { field, n, k, method, budget, timing, out } => {
            let req = DimRequest::with_field(n, k, field.p, field.e)?;
            let expected = dim_closed(&req);
            let mut reports = Vec::new();
            let mut problems = Vec::new();
            for m in method.methods() {
                let report = compute(&req, m, &budget.budgets(), timing)?;
                if !report.value.agrees_with(&expected, COMPLEX_TOLERANCE) {
                    problems.push(format!(
                        "method {m} gives {} but the closed form gives {expected} (n = {n}, k = {k}, q = {})",
                        report.value,
                        req.q()
                    ));
                }
                if !report.satisfies_invariants() {
                    problems.push(format!("method {m} value {} violates the sign invariant (k = {k})", report.value));
                }
                reports.push(report);
            }
            Ok(Outcome { stdout: render_reports(&reports, out.format.into())?, problems })
        }
        Command::Table { field, n, cross_check, budget, out } => {
            let f = if cross_check { Some(make_field(field.p, field.e)?) } else { None };
            // validates p and e without building tables for large q
            let q = DimRequest::with_field(n.max(1), 0, field.p, field.e)?.q();
            let table = decomposition_table(n, &ExactInt::from(q))?;
            let mut problems = Vec::new();
            if let Some(f) = f {
                if let Err(e) = cross_check_table(&table, &f, budget.budget) {
                    match e {
                        Error::Internal(msg) => problems.push(msg),
                        other => return Err(other),
                    }
                }
            }
            Ok(Outcome { stdout: render_table(&table, out.format.into())?, problems })
        }
        Command::Census { field, n, k, budget, out } => {
            let f = make_field(field.p, field.e)?;
            let census = enumerate_census(n, k, &f, budget.budget)?;
            let mut problems = Vec::new();
            if census.total() != census.expected_total() {
                problems.push(format!("census total {} != q^(n^2) = {}", census.total(), census.expected_total()));
            }
            if let Some((r, beta)) = census.beta_dependence() {
                problems.push(format!("rank {r}: count at trace index {beta} differs from trace 1"));
            }
            Ok(Outcome { stdout: render_census(&census, &f, out.format.into())?, problems })
        }
        Command::Identities { q_points, out } => {
            if let Some(bad) = q_points.iter().find(|&&q| q < 2) {
                return Err(Error::Parameter(format!("q-points must be at least 2, got {bad}")));
            }
            let outcomes = identity_suite(&q_points);
            let problems = outcomes
                .iter()
                .flat_map(|o| o.failures.iter().map(move |f| format!("{} at q = {}: {f}", o.identity, o.q)))
                .collect();
            Ok(Outcome { stdout: render_identities(&outcomes, out.format.into())?, problems })
        }
        Command::Selftest { seed, timing } => {
            let outcomes = run_all(seed);
            let mut stdout = String::new();
            for o in &outcomes {
                stdout.push_str(&o.to_string());
                if timing {
                    stdout.push_str(&format!(" [{:.2} s]", o.elapsed.as_secs_f64()));
                }
                stdout.push('\n');
            }
            let problems = outcomes
                .iter()
                .filter(|o| !o.passed)
                .map(|o| format!("criterion {} ({}) failed", o.id, o.name))
                .collect();
            Ok(Outcome { stdout, problems })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.problems.is_empty() {
                ExitCode::SUCCESS
            } else {
                for p in &outcome.problems {
                    eprintln!("mismatch: {p}");
                }
                ExitCode::from(MISMATCH)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parameter(_) => USAGE,
                Error::Resource { .. } => RESOURCE,
                Error::Internal(_) => MISMATCH,
            })
        }
    }
}
