// Checks candidate typings against the declarative rules.

use regunify::{check, check_equation, default_env, parse_context, parse_equation, parse_term, parse_type};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let env = default_env();
    let mut lines = Vec::new();
    let (l, r) = parse_equation("cons(X,[]) = cons(1,Y)")?;
    for ctx in ["X: int, Y: list(int)", "X: A, Y: list(int)"] {
        let ok = check_equation(&parse_context(ctx)?, &env, &l, &r)?;
        lines.push(format!("{{{ctx}}} |- cons(X,[]) = cons(1,Y) : bool  {ok}"));
    }
    let t = parse_term("[X|Y]")?;
    for (ctx, ty) in [("X: atom, Y: list(atom)", "list(atom)"), ("X: atom, Y: list(int)", "list(atom)")] {
        let ok = check(&parse_context(ctx)?, &env, &t, &parse_type(ty)?)?;
        lines.push(format!("{{{ctx}}} |- [X|Y] : {ty}  {ok}"));
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
