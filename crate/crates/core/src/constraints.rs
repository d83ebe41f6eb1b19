//! Constraint generation: the typing judgment that produces `(τ, C, T)`.
//!
//! Term constraints `t1 = t2` and type constraints `τ1 ≐ τ2` are kept as
//! ordered lists in generation order (arguments left to right, then the
//! argument equations of the enclosing application), so solver traces are
//! reproducible step for step.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::env::{instantiate, SignatureEnv};
use crate::syntax::{HasVars, Name, SchemeBody, Term, TypeExpr};
use crate::typing::Context;

/// Supplies type variables that do not clash with any name in the problem.
#[derive(Clone, Debug)]
pub struct FreshSupply {
    prefix: String,
    next: u64,
    avoid: BTreeSet<Name>,
}

impl Default for FreshSupply {
    fn default() -> Self {
        FreshSupply::new()
    }
}

impl FreshSupply {
    pub fn new() -> Self {
        FreshSupply::with_prefix("_T")
    }

    pub fn with_prefix(prefix: &str) -> Self {
        FreshSupply { prefix: prefix.to_owned(), next: 0, avoid: BTreeSet::new() }
    }

    /// Never hand out any of `names`.
    pub fn avoiding(mut self, names: impl IntoIterator<Item = Name>) -> Self {
        self.avoid.extend(names);
        self
    }

    pub fn fresh(&mut self) -> Name {
        loop {
            self.next += 1;
            let name = Name::from(format!("{}{}", self.prefix, self.next));
            if !self.avoid.contains(&name) {
                return name;
            }
        }
    }

    pub fn fresh_var(&mut self) -> TypeExpr {
        TypeExpr::Var(self.fresh())
    }

    /// Number of names handed out so far.
    pub fn issued(&self) -> u64 {
        self.next
    }
}

/// `t1 = t2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermConstraint {
    pub lhs: Term,
    pub rhs: Term,
}

impl TermConstraint {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        TermConstraint { lhs, rhs }
    }
}

/// `τ1 ≐ τ2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeConstraint {
    pub lhs: TypeExpr,
    pub rhs: TypeExpr,
}

impl TypeConstraint {
    pub fn new(lhs: TypeExpr, rhs: TypeExpr) -> Self {
        TypeConstraint { lhs, rhs }
    }
}

/// The pair `(C, T)` rewritten by the solver.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintState {
    pub terms: Vec<TermConstraint>,
    pub types: Vec<TypeConstraint>,
}

impl ConstraintState {
    pub fn new(terms: Vec<TermConstraint>, types: Vec<TypeConstraint>) -> Self {
        ConstraintState { terms, types }
    }

    /// Total number of nodes across all constraints.
    pub fn size(&self) -> usize {
        self.terms.iter().map(|c| c.lhs.size() + c.rhs.size()).sum::<usize>()
            + self.types.iter().map(|c| c.lhs.size() + c.rhs.size()).sum::<usize>()
    }

    /// Type variables mentioned anywhere in `T`.
    pub fn type_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        for c in &self.types {
            c.lhs.collect_vars(&mut out);
            c.rhs.collect_vars(&mut out);
        }
        out
    }

    pub fn extend(&mut self, other: ConstraintState) {
        self.terms.extend(other.terms);
        self.types.extend(other.types);
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("no signature for `{symbol}/{arity}`")]
    UnknownSymbol { symbol: String, arity: usize },
    #[error("`{symbol}` is declared with arity {declared} but used with {used} arguments")]
    ArityMismatch { symbol: String, declared: usize, used: usize },
    #[error("variable `{0}` is not bound in the context")]
    UnboundVariable(Name),
    #[error("`=` may only appear at the top level of an equation")]
    NestedEquation,
}

/// Binds every distinct variable of `t1` and `t2`, in order of first
/// occurrence, to its own fresh type variable.
pub fn generic_context(t1: &Term, t2: &Term, fresh: &mut FreshSupply) -> Context {
    let mut ctx = Context::new();
    for t in [t1, t2] {
        extend_generic(&mut ctx, t, fresh);
    }
    ctx
}

/// Adds a fresh binding for every variable of `t` not yet in `ctx`.
pub fn extend_generic(ctx: &mut Context, t: &Term, fresh: &mut FreshSupply) {
    match t {
        Term::Var(v) => {
            if ctx.get(v).is_none() {
                ctx.bind(v.clone(), fresh.fresh_var());
            }
        }
        Term::Const(_) => {}
        Term::Compound(_, args) => args.iter().for_each(|a| extend_generic(ctx, a, fresh)),
    }
}

/// `Γ, Δ ⊢ t : τ | C | T`.
pub fn gen_term(
    ctx: &Context,
    env: &SignatureEnv,
    t: &Term,
    fresh: &mut FreshSupply,
) -> Result<(TypeExpr, ConstraintState), GenError> {
    let mut types = Vec::new();
    let ty = gen_into(ctx, env, t, fresh, &mut types)?;
    Ok((ty, ConstraintState::new(Vec::new(), types)))
}

fn gen_into(
    ctx: &Context,
    env: &SignatureEnv,
    t: &Term,
    fresh: &mut FreshSupply,
    out: &mut Vec<TypeConstraint>,
) -> Result<TypeExpr, GenError> {
    match t {
        Term::Var(v) => ctx.get(v).cloned().ok_or_else(|| GenError::UnboundVariable(v.clone())),
        Term::Const(lit) => {
            let scheme = env.constant(lit).ok_or_else(|| GenError::UnknownSymbol {
                symbol: crate::print::literal_to_string(lit),
                arity: 0,
            })?;
            match instantiate(&scheme, fresh) {
                SchemeBody::Type(ty) => Ok(ty),
                SchemeBody::Func(f) => Err(GenError::ArityMismatch {
                    symbol: crate::print::literal_to_string(lit),
                    declared: f.arity(),
                    used: 0,
                }),
            }
        }
        Term::Compound(f, _) if f.as_str() == "=" => Err(GenError::NestedEquation),
        Term::Compound(f, args) => {
            let scheme = env.function(f, args.len()).ok_or_else(|| {
                match env.functions.keys().find(|(g, _)| g == f) {
                    Some((_, declared)) => GenError::ArityMismatch {
                        symbol: f.to_string(),
                        declared: *declared,
                        used: args.len(),
                    },
                    None => GenError::UnknownSymbol { symbol: f.to_string(), arity: args.len() },
                }
            })?;
            let mut arg_types = Vec::with_capacity(args.len());
            for a in args {
                arg_types.push(gen_into(ctx, env, a, fresh, out)?);
            }
            let func = match instantiate(&scheme, fresh) {
                SchemeBody::Func(func) if func.arity() == args.len() => func,
                body => {
                    return Err(GenError::ArityMismatch {
                        symbol: f.to_string(),
                        declared: match body {
                            SchemeBody::Func(func) => func.arity(),
                            SchemeBody::Type(_) => 0,
                        },
                        used: args.len(),
                    })
                }
            };
            out.extend(
                arg_types
                    .into_iter()
                    .zip(func.domain)
                    .map(|(actual, expected)| TypeConstraint::new(actual, expected)),
            );
            Ok(func.codomain)
        }
    }
}

/// `Γ, Δ ⊢ t1 = t2 : bool | {t1 = t2} | T1 ∪ T2 ∪ {τ1 ≐ τ2}`.
pub fn gen_equation(
    ctx: &Context,
    env: &SignatureEnv,
    t1: &Term,
    t2: &Term,
    fresh: &mut FreshSupply,
) -> Result<ConstraintState, GenError> {
    let (ty1, s1) = gen_term(ctx, env, t1, fresh)?;
    let (ty2, s2) = gen_term(ctx, env, t2, fresh)?;
    let mut state = ConstraintState::new(vec![TermConstraint::new(t1.clone(), t2.clone())], Vec::new());
    state.terms.extend(s1.terms);
    state.terms.extend(s2.terms);
    state.types.extend(s1.types);
    state.types.extend(s2.types);
    state.types.push(TypeConstraint::new(ty1, ty2));
    Ok(state)
}

impl fmt::Display for TermConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Display for TypeConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} =. {}", self.lhs, self.rhs)
    }
}

impl fmt::Display for ConstraintState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("({")?;
        for (i, c) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}, {")?;
        for (i, c) in self.types.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::{derive_signatures, TypeDefSet};

    fn env() -> SignatureEnv {
        derive_signatures(&TypeDefSet::default(), &[]).unwrap()
    }

    fn x() -> Term {
        Term::var("X")
    }

    fn y() -> Term {
        Term::var("Y")
    }

    #[test]
    fn generic_context_binds_each_variable_once() {
        let mut fresh = FreshSupply::new();
        let ctx = generic_context(&Term::cons(x(), Term::nil()), &Term::cons(Term::int(1), y()), &mut fresh);
        assert_eq!(ctx.len(), 2);
        assert_ne!(ctx.get("X"), ctx.get("Y"));
        assert!(generic_context(&Term::int(1), &Term::atom("a"), &mut fresh).is_empty());
        assert_eq!(generic_context(&x(), &x(), &mut fresh).len(), 1);
    }

    #[test]
    fn variable_generates_nothing() {
        let mut fresh = FreshSupply::new();
        let ctx = generic_context(&x(), &x(), &mut fresh);
        let (ty, s) = gen_term(&ctx, &env(), &x(), &mut fresh).unwrap();
        assert_eq!(Some(&ty), ctx.get("X"));
        assert!(s.terms.is_empty() && s.types.is_empty());
    }

    // cons(X,[]) : list(ν) | ∅ | {α_X ≐ ν, list(γ) ≐ list(ν)}
    #[test]
    fn cons_with_nil() {
        let mut fresh = FreshSupply::new();
        let ctx = generic_context(&x(), &y(), &mut fresh);
        let ax = ctx.get("X").unwrap().clone();
        let (ty, s) = gen_term(&ctx, &env(), &Term::cons(x(), Term::nil()), &mut fresh).unwrap();
        assert!(s.terms.is_empty());
        assert_eq!(s.types.len(), 2);
        let TypeExpr::Sym(_, args) = &ty else { panic!("{ty}") };
        let nu = args[0].clone();
        assert!(nu.is_var());
        assert_eq!(s.types[0], TypeConstraint::new(ax, nu.clone()));
        let TypeExpr::Sym(l, g) = &s.types[1].lhs else { panic!() };
        assert_eq!(l.as_str(), "list");
        assert!(g[0].is_var() && g[0] != nu);
        assert_eq!(s.types[1].rhs, TypeExpr::list(nu));
    }

    // cons(1,Y) : list(η) | ∅ | {int ≐ η, α_Y ≐ list(η)}
    #[test]
    fn cons_with_literal() {
        let mut fresh = FreshSupply::new();
        let ctx = generic_context(&x(), &y(), &mut fresh);
        let ay = ctx.get("Y").unwrap().clone();
        let (ty, s) = gen_term(&ctx, &env(), &Term::cons(Term::int(1), y()), &mut fresh).unwrap();
        let eta = ty.args()[0].clone();
        assert_eq!(
            s.types,
            vec![
                TypeConstraint::new(TypeExpr::int(), eta.clone()),
                TypeConstraint::new(ay, TypeExpr::list(eta)),
            ]
        );
    }

    #[test]
    fn equation_appends_root_constraint() {
        let mut fresh = FreshSupply::new();
        let (l, r) = (Term::cons(x(), Term::nil()), Term::cons(Term::int(1), y()));
        let ctx = generic_context(&l, &r, &mut fresh);
        let s = gen_equation(&ctx, &env(), &l, &r, &mut fresh).unwrap();
        assert_eq!(s.terms, vec![TermConstraint::new(l, r)]);
        assert_eq!(s.types.len(), 5);
        let root = s.types.last().unwrap();
        assert!(matches!(&root.lhs, TypeExpr::Sym(n, _) if n.as_str() == "list"));
        assert!(matches!(&root.rhs, TypeExpr::Sym(n, _) if n.as_str() == "list"));
    }

    #[test]
    fn trivial_equations() {
        let mut fresh = FreshSupply::new();
        let ctx = Context::new();
        let s = gen_equation(&ctx, &env(), &Term::int(1), &Term::int(1), &mut fresh).unwrap();
        assert_eq!(s.types, vec![TypeConstraint::new(TypeExpr::int(), TypeExpr::int())]);

        let ctx = generic_context(&x(), &y(), &mut fresh);
        let s = gen_equation(&ctx, &env(), &x(), &y(), &mut fresh).unwrap();
        assert_eq!(
            s.types,
            vec![TypeConstraint::new(ctx.get("X").unwrap().clone(), ctx.get("Y").unwrap().clone())]
        );
    }

    #[test]
    fn fresh_variables_of_the_two_sides_are_disjoint() {
        let mut fresh = FreshSupply::new();
        let ctx = Context::new();
        let e = env();
        let (_, a) = gen_term(&ctx, &e, &Term::list(vec![Term::nil(), Term::nil()]), &mut fresh).unwrap();
        let (_, b) = gen_term(&ctx, &e, &Term::list(vec![Term::nil()]), &mut fresh).unwrap();
        assert!(a.type_vars().is_disjoint(&b.type_vars()));
    }

    #[test]
    fn unknown_symbols_without_defaults() {
        let mut e = env();
        e.defaults = false;
        let mut fresh = FreshSupply::new();
        let err = gen_term(&Context::new(), &e, &Term::app("g", vec![Term::nil()]), &mut fresh).unwrap_err();
        assert!(matches!(err, GenError::UnknownSymbol { .. }));
        let err =
            gen_term(&Context::new(), &e, &Term::app("cons", vec![Term::nil()]), &mut fresh).unwrap_err();
        assert!(matches!(err, GenError::ArityMismatch { declared: 2, used: 1, .. }));
        let err = gen_term(&Context::new(), &env(), &x(), &mut fresh).unwrap_err();
        assert_eq!(err, GenError::UnboundVariable(Name::new("X")));
    }

    #[test]
    fn avoided_names_are_skipped() {
        let mut fresh = FreshSupply::new().avoiding([Name::new("_T1"), Name::new("_T2")]);
        assert_eq!(fresh.fresh().as_str(), "_T3");
    }
}
