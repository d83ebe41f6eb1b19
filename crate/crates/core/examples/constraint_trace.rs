// Generates the constraints of an equation and solves them rule by rule.

use regunify::solver::StepOutcome;
use regunify::{default_env, gen_equation, generic_context, parse_equation, step, FreshSupply};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let env = default_env();
    let (l, r) = parse_equation("cons(X,[]) = cons(1,Y)")?;
    let mut fresh = FreshSupply::new();
    let ctx = generic_context(&l, &r, &mut fresh);
    let mut state = gen_equation(&ctx, &env, &l, &r, &mut fresh)?;
    let mut lines = vec![format!("context {ctx}"), format!("start   {state}")];
    loop {
        match step(&state) {
            StepOutcome::Rewrote(s) => {
                lines.push(format!("{}: {}", s.rule, s.acted_on));
                state = s.state;
            }
            other => {
                lines.push(format!("end     {state} ({other:?})"));
                break;
            }
        }
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
