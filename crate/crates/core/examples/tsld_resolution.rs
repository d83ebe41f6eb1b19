// Typed resolution: a `yes`, a type error caught before any computation,
// and a query cut short at its first failing goal.

use regunify::{
    derive_signatures, parse_program, parse_query, parse_signatures, resolve, validate, ResolutionBudget,
};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let program = parse_program(
        "append([], L, L).\n\
         append([H|T], L, [H|R]) :- append(T, L, R).\n\
         length([], 0).\n\
         length([_|T], N) :- length(T, N1), N is N1 + 1.\n\
         p(0).",
    )?;
    let sigs = parse_signatures("length : list(A) * int -> bool.")?;
    let env = derive_signatures(&validate(Vec::new()).map_err(|e| format!("{e:?}"))?, &sigs)
        .map_err(|e| format!("{e:?}"))?;
    let mut lines = Vec::new();
    for q in ["append(X, [3], [1,2,3])", "length(3, [a,b,c])", "p(1), p(2), p(a)"] {
        let run = resolve(&program, &parse_query(q)?, &env, ResolutionBudget::default(), true)?;
        lines.push(format!("?- {q}.  {} after {} steps", run.outcome.label(), run.steps));
        lines.extend(run.trace.iter().map(|e| format!("    {e}")));
    }
    Ok(lines)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
