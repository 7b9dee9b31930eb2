//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use ncsf::verify::{run, selfdual_witness};
use ncsf::{Composition, NSymElement, QTScalar};

type NSym = NSymElement<QTScalar>;
type Member = fn(&Composition) -> NSym;
type Outcome = Result<u64, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Total number of checks run, or the first counterexample.
fn suites(names: &[&str], n_max: usize) -> Outcome {
    let mut checks = 0;
    for name in names {
        for r in run(name, n_max).map_err(|e| e.to_string())? {
            if let Some(w) = r.failure {
                return Err(w);
            }
            checks += r.checks;
        }
    }
    if checks == 0 {
        return Err("no checks ran".into());
    }
    Ok(checks)
}

fn orthogonality() -> Outcome {
    let families: [(&str, Member); 3] = [("s", NSym::s), ("h", NSym::h), ("e", NSym::e)];
    let mut broken = Vec::new();
    for (name, make) in families {
        if let Some((a, b, v)) = (1..=6).find_map(|n| selfdual_witness(n, make, false)) {
            let fixed = (1..=6).all(|n| selfdual_witness(n, make, true).is_none());
            broken.push(format!(
                "selfdual as stated fails for {name}: ⟨{name}{a}, {name}{b}⟩ = {v} (holds with the sign of ℓ(β): {fixed})"
            ));
        }
    }
    let rest = suites(&["hq-scalar", "hqt-scalar"], 6);
    match (broken.is_empty(), rest) {
        (true, rest) => rest,
        (false, Ok(k)) => Err(format!("{}; Hscalar and Hqtscalar hold ({k} checks)", broken.join("; "))),
        (false, Err(w)) => Err(format!("{}; {w}", broken.join("; "))),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("reference matrices", || suites(&["reference-tables"], 4)),
        ("orthogonality", orthogonality),
        ("q-twist equals A + q^n B", || suites(&["q-twist"], 4)),
        ("product rules", || suites(&["products"], 5)),
        ("root-of-unity factorization", || suites(&["root-of-unity"], 6)),
        ("nabla coherence", || suites(&["nabla-coherence"], 5)),
        ("specialization counts", || suites(&["counts"], 7)),
        ("hook recurrences", || suites(&["hq-hook-recurrence", "hqt-hook-recurrence"], 7)),
        ("bold-P conditions and recursion", || suites(&["bold-p"], 4)),
        ("e-positivity gap", || suites(&["e-positivity"], 6)),
        ("W^q against H^q", || suites(&["w-vs-h"], 6)),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = check();
        let ms = start.elapsed().as_millis();
        match res {
            Ok(checks) => println!("PASS criterion {}: {name} ({checks} checks, {ms} ms)", k + 1),
            Err(w) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({ms} ms): {w}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
