// Evaluates ground terms to values and compares value equality with the
// solver over every pair of small terms.

use regunify::oracle::{check_pairs, small_signature};
use regunify::semantics::{enumerate_ground_terms, GroundState};
use regunify::{default_env, eq_values, parse_term, Interpretation, TypeDefSet};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let defs = TypeDefSet::default();
    let interp = Interpretation::new(&defs);
    let empty = GroundState::new();
    let mut lines = Vec::new();
    for (a, b) in [("[1]", "[1]"), ("[1]", "[0]"), ("[1]", "[a]"), ("f(a)", "a")] {
        let v1 = interp.eval(&parse_term(a)?, &empty)?;
        let v2 = interp.eval(&parse_term(b)?, &empty)?;
        lines.push(format!("eq({a}, {b}) = {:?}", eq_values(&v1, &v2)));
    }
    let (sig, pool) = small_signature();
    let terms = enumerate_ground_terms(&sig, 2, &pool, 1_000_000)?;
    let pairs = terms.iter().flat_map(|a| terms.iter().map(move |b| (a, b)));
    let report = check_pairs(pairs, &defs, &default_env());
    lines.push(format!(
        "{} terms, {} pairs: {} solved, {} false, {} wrong, {} mismatches",
        terms.len(),
        report.pairs,
        report.solved,
        report.false_,
        report.wrong,
        report.mismatches.len()
    ));
    Ok(lines)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
