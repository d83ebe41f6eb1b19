// Solves a few equations and prints the three kinds of outcome.

use regunify::{default_env, parse_equation, typed_unify, UnifyOutcome};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let env = default_env();
    let mut lines = Vec::new();
    for text in ["cons(X,[]) = cons(1,Y)", "f(1,a) = f(2,a)", "cons(1,X) = cons(Y,2)"] {
        let (l, r) = parse_equation(text)?;
        let report = typed_unify(&l, &r, &env, false)?;
        let line = match report.outcome {
            UnifyOutcome::Solved { unifier, var_types, .. } => {
                let types: Vec<String> = var_types.iter().map(|(v, t)| format!("{v}: {t}")).collect();
                format!("{text}  solved {unifier}  {{{}}}", types.join(", "))
            }
            UnifyOutcome::False { witness, .. } => format!("{text}  false ({witness})"),
            UnifyOutcome::Wrong { witness } => format!("{text}  wrong ({witness})"),
        };
        lines.push(line);
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
