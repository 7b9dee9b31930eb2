//! `ncsf`: expand family members, emit transition matrices, pair elements,
//! run verification suites and evaluate the preferential-arrangement counts.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ncsf::commutative::{chi_nabla_en, pair_en, pair_h1n};
use ncsf::family::{expand, transition_matrix, Expansion, Family};
use ncsf::render::{render_element, Format};
use ncsf::{verify, Composition, Error, Target};

#[derive(Parser)]
#[command(name = "ncsf", version, about = "Exact non-commutative symmetric functions")]
struct Cli {
    /// text, csv, json or latex
    #[arg(long, global = true, default_value = "text")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand one family member, e.g. `expand Hq (1,1,1) --in s`.
    Expand {
        family: Family,
        /// `(a,b,c)`, or shorthand such as `1^3,2`
        alpha: Composition,
        /// Target basis: s, h, e, Hq, Hqt, Htilde for NSym families; M or F for QSym ones.
        #[arg(long = "in", default_value = "s")]
        basis: String,
    },
    /// Transition matrix from a family to s (or F), both indexed in phi order.
    Matrix { family: Family, n: usize },
    /// Scalar product of two members, `⟨A_α, B_β⟩` (or `[A_α, B_β]` with A in QSym).
    Pair { left: Family, alpha: Composition, right: Family, beta: Composition },
    /// Run a verification suite; `all` runs every module suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
    /// ⟨χ(∇e_n), h_1^n⟩ (fubini) or ⟨χ(∇e_n), e_n⟩ (increasing_pref), specialized at q and t.
    Count {
        kind: CountKind,
        n: usize,
        /// Integer, `q`, `t`, `1/q` or `1/t`.
        #[arg(long, default_value = "1")]
        q: Target,
        #[arg(long, default_value = "1")]
        t: Target,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CountKind {
    Fubini,
    #[value(name = "increasing_pref")]
    IncreasingPref,
}

enum Failure {
    Usage(Error),
    Verification,
}

fn run(cli: &Cli) -> Result<String, (String, Failure)> {
    let usage = |e: Error| (String::new(), Failure::Usage(e));
    match &cli.command {
        Command::Expand { family, alpha, basis } => {
            expand(*family, alpha, basis).and_then(|x| x.render(cli.format)).map_err(usage)
        }
        Command::Matrix { family, n } => {
            transition_matrix(*family, *n).and_then(|m| m.render(cli.format)).map_err(usage)
        }
        Command::Pair { left, alpha, right, beta } => pair(*left, alpha, *right, beta, cli.format).map_err(usage),
        Command::Verify { suite, n_max } => {
            let reports = verify::run(suite, *n_max).map_err(usage)?;
            let text: String = reports.iter().map(|r| format!("{r}\n")).collect();
            if reports.iter().all(|r| r.passed()) {
                Ok(text)
            } else {
                Err((text, Failure::Verification))
            }
        }
        Command::Count { kind, n, q, t } => count(*kind, *n, q, t, cli.format).map_err(usage),
    }
}

fn pair(left: Family, alpha: &Composition, right: Family, beta: &Composition, format: Format) -> ncsf::Result<String> {
    let target = |f: Family| if f.is_qsym() { "F" } else { "s" };
    let (x, y) = (expand(left, alpha, target(left))?, expand(right, beta, target(right))?);
    match (&x, &y) {
        (Expansion::NSym(a), Expansion::NSym(b)) => render_element(&a.scalar_product(b)?, format),
        (Expansion::NSymFactored(a), Expansion::NSymFactored(b)) => render_element(&a.scalar_product(b)?, format),
        (Expansion::QSym(a), Expansion::NSym(b)) => render_element(&a.pair(b)?, format),
        _ => Err(Error::UnsupportedBasis(format!("pairing {left} with {right}"))),
    }
}

fn count(kind: CountKind, n: usize, q: &Target, t: &Target, format: Format) -> ncsf::Result<String> {
    if !(1..=12).contains(&n) {
        return Err(Error::OutOfRange(format!("counts need 1 ≤ n ≤ 12, got {n}")));
    }
    let x = chi_nabla_en(n);
    let value = match kind {
        CountKind::Fubini => pair_h1n(&x),
        CountKind::IncreasingPref => pair_en(&x),
    };
    render_element(&value.substitute(q, t)?, format)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Ok(text) => (text, ExitCode::SUCCESS),
        Err((text, Failure::Verification)) => (text, ExitCode::from(1)),
        Err((_, Failure::Usage(e))) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    code
}
