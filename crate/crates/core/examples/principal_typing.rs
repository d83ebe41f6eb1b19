// Infers principal typings, with type variables renamed for display.

use regunify::print::canonical_renaming;
use regunify::{default_env, parse_term, principal_typing, Principal};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let env = default_env();
    let mut lines = Vec::new();
    for text in ["cons(X,Y)", "[X, 1 | T]", "f(X, [X])", "[a | 1]"] {
        let t = parse_term(text)?;
        lines.push(match principal_typing(&t, &env)? {
            Principal::Typed { context, ty } => {
                let renaming = canonical_renaming(context.iter().map(|(_, t)| t).chain([&ty]));
                format!("{text} : ({}, {})", context.apply(&renaming), renaming.apply(&ty))
            }
            Principal::Wrong { witness } => format!("{text} : ill-typed ({witness})"),
        });
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
