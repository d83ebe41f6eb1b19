// User-defined regular types: validation, derived signatures, and
// unification over them.

use regunify::{derive_signatures, parse_equation, parse_typedefs, typed_unify, validate};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let mut lines = Vec::new();
    let bad = parse_typedefs("t(A) --> f(A).\ns(B) --> f(B).")?;
    if let Err(errors) = validate(bad) {
        lines.extend(errors.iter().map(|e| format!("rejected: {e}")));
    }
    let defs =
        validate(parse_typedefs("nat --> zero + s(nat).\ntree(A) --> leaf + node(tree(A), A, tree(A)).")?)
            .map_err(|e| format!("{e:?}"))?;
    let env = derive_signatures(&defs, &[]).map_err(|e| format!("{e:?}"))?;
    for ((f, _), scheme) in &env.functions {
        lines.push(format!("{f} : {scheme}"));
    }
    for text in [
        "node(L, s(X), leaf) = node(leaf, s(zero), R)",
        "s(X) = s(1)",
        "node(leaf, 1, leaf) = node(leaf, 2, leaf)",
    ] {
        let (l, r) = parse_equation(text)?;
        let report = typed_unify(&l, &r, &env, false)?;
        lines.push(format!("{text}  {}", report.outcome.kind()));
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
