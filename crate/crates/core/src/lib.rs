//! Typed unification of first-order terms over deterministic regular types.
//!
//! Solving `t1 = t2` yields a pair of most general unifiers (terms and
//! types), `false` when the terms clash within a common type, or `wrong` when
//! their types are incompatible. Around the solver sit a parser and printer,
//! a declarative type checker, a ground value semantics used as an oracle,
//! and a small typed SLD resolution engine.
//!
//! ```
//! use regunify::{parse_term, typed_unify, default_env, UnifyOutcome};
//!
//! let env = default_env();
//! let l = parse_term("cons(X,[])").unwrap();
//! let r = parse_term("cons(1,Y)").unwrap();
//! let report = typed_unify(&l, &r, &env, false).unwrap();
//! let UnifyOutcome::Solved { unifier, var_types, .. } = report.outcome else { panic!() };
//! assert_eq!(unifier.get("Y").unwrap().to_string(), "[]");
//! assert_eq!(var_types["Y"].to_string(), "list(int)");
//! ```

pub mod cli;
pub mod constraints;
pub mod env;
pub mod oracle;
pub mod output;
pub mod parse;
pub mod print;
pub mod semantics;
pub mod solver;
pub mod syntax;
pub mod tsld;
pub mod typing;

pub use constraints::{gen_equation, gen_term, generic_context, ConstraintState, FreshSupply, GenError};
pub use env::{derive_signatures, validate, SigDecl, SignatureEnv, TypeDef, TypeDefSet};
pub use parse::{
    parse_context, parse_equation, parse_program, parse_query, parse_signatures, parse_term, parse_type,
    parse_typedefs, ParseError, SourceSpan,
};
pub use semantics::{dom, eq_values, DomainTag, Interpretation, Value};
pub use solver::{principal_typing, solve, step, typed_unify, Principal, SolveResult, UnifyOutcome};
pub use syntax::{free_vars, occurs_in, Name, Subst, Term, TypeExpr, TypeScheme, TypeSubst};
pub use tsld::{resolve, Clause, Outcome, ResolutionBudget};
pub use typing::{check, check_equation, is_instance, Context};

/// Δ for the built-in `list` type alone, with all defaults enabled.
pub fn default_env() -> SignatureEnv {
    derive_signatures(&TypeDefSet::default(), &[]).expect("built-in definitions are consistent")
}
