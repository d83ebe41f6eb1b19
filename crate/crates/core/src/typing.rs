//! Checker for the declarative type system (VAR, CST, CPL, EQU).
//!
//! Rule instantiation is decided by matching: each scheme is instantiated
//! with flexible variables that only this checker may bind, while the type
//! variables of the context and of the candidate type stay rigid. This is a
//! small Robinson-style unifier of its own, independent of the rewriting
//! solver, so the two can be used to check each other.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::constraints::FreshSupply;
use crate::env::{instantiate, SignatureEnv};
use crate::syntax::{HasVars, Name, SchemeBody, Term, TypeExpr, TypeSubst};

/// A typing context Γ: term variable → type.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context(BTreeMap<Name, TypeExpr>);

impl Context {
    pub fn new() -> Self {
        Context::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Name, TypeExpr)>) -> Self {
        Context(pairs.into_iter().collect())
    }

    pub fn bind(&mut self, v: Name, t: TypeExpr) {
        self.0.insert(v, t);
    }

    pub fn get(&self, v: &str) -> Option<&TypeExpr> {
        self.0.get(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &TypeExpr)> {
        self.0.iter()
    }

    pub fn vars(&self) -> impl Iterator<Item = &Name> {
        self.0.keys()
    }

    /// μ(Γ).
    pub fn apply(&self, type_unifier: &TypeSubst) -> Context {
        Context(self.0.iter().map(|(v, t)| (v.clone(), type_unifier.apply(t))).collect())
    }

    pub fn restrict<'a>(&self, vars: impl IntoIterator<Item = &'a Name>) -> Context {
        Context(vars.into_iter().filter_map(|v| self.0.get(v).map(|t| (v.clone(), t.clone()))).collect())
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}: {t}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TypingError {
    #[error("no signature for `{symbol}/{arity}`")]
    UnknownSymbol { symbol: String, arity: usize },
    #[error("variable `{0}` is not bound in the context")]
    UnboundVariable(Name),
}

/// Searches for a derivation, binding only variables it created itself.
struct Deriver<'a> {
    env: &'a SignatureEnv,
    ctx: &'a Context,
    fresh: FreshSupply,
    bound: BTreeMap<Name, TypeExpr>,
}

impl<'a> Deriver<'a> {
    fn new(env: &'a SignatureEnv, ctx: &'a Context) -> Self {
        // `?` never appears in parsed names, so flexible variables cannot clash.
        Deriver { env, ctx, fresh: FreshSupply::with_prefix("?"), bound: BTreeMap::new() }
    }

    fn is_flex(v: &str) -> bool {
        v.starts_with('?')
    }

    fn walk(&self, t: &TypeExpr) -> TypeExpr {
        let mut cur = t.clone();
        while let TypeExpr::Var(v) = &cur {
            match self.bound.get(v) {
                Some(next) => cur = next.clone(),
                None => break,
            }
        }
        cur
    }

    fn resolve(&self, t: &TypeExpr) -> TypeExpr {
        match self.walk(t) {
            TypeExpr::Sym(s, args) => TypeExpr::Sym(s, args.iter().map(|a| self.resolve(a)).collect()),
            TypeExpr::Ctor(c, args) => TypeExpr::Ctor(c, args.iter().map(|a| self.resolve(a)).collect()),
            other => other,
        }
    }

    fn unify(&mut self, a: &TypeExpr, b: &TypeExpr) -> bool {
        let (a, b) = (self.walk(a), self.walk(b));
        match (&a, &b) {
            (TypeExpr::Var(x), TypeExpr::Var(y)) if x == y => true,
            (TypeExpr::Var(x), _) if Self::is_flex(x) => self.bind(x.clone(), &b),
            (_, TypeExpr::Var(y)) if Self::is_flex(y) => self.bind(y.clone(), &a),
            (TypeExpr::Var(_), _) | (_, TypeExpr::Var(_)) => false,
            _ => a.head() == b.head() && a.args().iter().zip(b.args()).all(|(x, y)| self.unify(x, y)),
        }
    }

    fn bind(&mut self, v: Name, t: &TypeExpr) -> bool {
        if self.resolve(t).occurs(&v) {
            return false;
        }
        self.bound.insert(v, t.clone());
        true
    }

    fn derive(&mut self, t: &Term, expected: &TypeExpr) -> Result<bool, TypingError> {
        match t {
            Term::Var(v) => {
                let ty = self.ctx.get(v).ok_or_else(|| TypingError::UnboundVariable(v.clone()))?.clone();
                Ok(self.unify(&ty, expected))
            }
            Term::Const(lit) => {
                let scheme = self.env.constant(lit).ok_or_else(|| TypingError::UnknownSymbol {
                    symbol: crate::print::literal_to_string(lit),
                    arity: 0,
                })?;
                match instantiate(&scheme, &mut self.fresh) {
                    SchemeBody::Type(ty) => Ok(self.unify(&ty, expected)),
                    SchemeBody::Func(_) => Ok(false),
                }
            }
            Term::Compound(f, args) => {
                let scheme = self
                    .env
                    .function(f, args.len())
                    .ok_or_else(|| TypingError::UnknownSymbol { symbol: f.to_string(), arity: args.len() })?;
                let SchemeBody::Func(func) = instantiate(&scheme, &mut self.fresh) else {
                    return Ok(false);
                };
                if func.arity() != args.len() || !self.unify(&func.codomain, expected) {
                    return Ok(false);
                }
                for (a, ty) in args.iter().zip(&func.domain) {
                    if !self.derive(a, ty)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

/// Is `Γ, Δ ⊢ t : τ` derivable?
pub fn check(ctx: &Context, env: &SignatureEnv, t: &Term, ty: &TypeExpr) -> Result<bool, TypingError> {
    Deriver::new(env, ctx).derive(t, ty)
}

/// Is `Γ, Δ ⊢ t1 = t2 : bool` derivable, i.e. do both sides share some type?
pub fn check_equation(ctx: &Context, env: &SignatureEnv, t1: &Term, t2: &Term) -> Result<bool, TypingError> {
    let mut d = Deriver::new(env, ctx);
    let common = d.fresh.fresh_var();
    Ok(d.derive(t1, &common)? && d.derive(t2, &common)?)
}

/// The first sub-judgment that fails, for diagnostics. `None` when `t : τ`
/// is derivable.
pub fn explain_failure(
    ctx: &Context,
    env: &SignatureEnv,
    t: &Term,
    ty: &TypeExpr,
) -> Result<Option<String>, TypingError> {
    if check(ctx, env, t, ty)? {
        return Ok(None);
    }
    if let Term::Compound(f, args) = t {
        // Report the first argument that cannot take its instantiated type.
        let mut d = Deriver::new(env, ctx);
        if let Some(scheme) = env.function(f, args.len()) {
            if let SchemeBody::Func(func) = instantiate(&scheme, &mut d.fresh) {
                if !d.unify(&func.codomain, ty) {
                    return Ok(Some(format!("{t} cannot have type {ty}: {f} builds {}", func.codomain)));
                }
                for (a, aty) in args.iter().zip(&func.domain) {
                    if !d.derive(a, aty)? {
                        return Ok(Some(format!("{a} : {}", d.resolve(aty))));
                    }
                }
            }
        }
    }
    Ok(Some(format!("{t} : {ty}")))
}

/// Does some μ map `principal` onto `candidate`, context and type at once?
pub fn is_instance(candidate: (&Context, &TypeExpr), principal: (&Context, &TypeExpr)) -> bool {
    let (cctx, cty) = candidate;
    let (pctx, pty) = principal;
    if cctx.len() != pctx.len() {
        return false;
    }
    let mut type_unifier = BTreeMap::new();
    for (v, pt) in pctx.iter() {
        match cctx.get(v) {
            Some(ct) if match_type(pt, ct, &mut type_unifier) => {}
            _ => return false,
        }
    }
    match_type(pty, cty, &mut type_unifier)
}

/// One-way matching: binds variables of `pattern` only.
pub fn match_type(
    pattern: &TypeExpr,
    target: &TypeExpr,
    type_unifier: &mut BTreeMap<Name, TypeExpr>,
) -> bool {
    match pattern {
        TypeExpr::Var(v) => match type_unifier.get(v) {
            Some(prev) => prev == target,
            None => {
                type_unifier.insert(v.clone(), target.clone());
                true
            }
        },
        _ => {
            pattern.head() == target.head()
                && pattern.args().iter().zip(target.args()).all(|(p, t)| match_type(p, t, type_unifier))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::{derive_signatures, TypeDefSet};

    fn env() -> SignatureEnv {
        derive_signatures(&TypeDefSet::default(), &[]).unwrap()
    }

    fn ctx(pairs: &[(&str, TypeExpr)]) -> Context {
        Context::from_pairs(pairs.iter().map(|(v, t)| (Name::new(v), t.clone())))
    }

    fn list_int() -> TypeExpr {
        TypeExpr::list(TypeExpr::int())
    }

    fn a() -> TypeExpr {
        TypeExpr::var("A")
    }

    #[test]
    fn cons_with_nil_checks_under_concrete_context() {
        let g = ctx(&[("X", TypeExpr::int()), ("Y", list_int())]);
        let t = Term::cons(Term::var("X"), Term::nil());
        assert!(check(&g, &env(), &t, &list_int()).unwrap());
    }

    #[test]
    fn polymorphic_variable_does_not_fit_int_list() {
        let g = ctx(&[("X", a())]);
        let t = Term::cons(Term::var("X"), Term::nil());
        assert!(!check(&g, &env(), &t, &list_int()).unwrap());
        assert!(check(&g, &env(), &t, &TypeExpr::list(a())).unwrap());
    }

    #[test]
    fn var_axiom() {
        let g = ctx(&[("X", a())]);
        assert!(check(&g, &env(), &Term::var("X"), &a()).unwrap());
        assert!(!check(&g, &env(), &Term::var("X"), &TypeExpr::int()).unwrap());
    }

    #[test]
    fn equation_judgments() {
        let l = Term::cons(Term::var("X"), Term::nil());
        let r = Term::cons(Term::int(1), Term::var("Y"));
        let good = ctx(&[("X", TypeExpr::int()), ("Y", list_int())]);
        assert!(check_equation(&good, &env(), &l, &r).unwrap());
        let bad = ctx(&[("X", a()), ("Y", list_int())]);
        assert!(!check_equation(&bad, &env(), &l, &r).unwrap());

        assert!(!check_equation(&Context::new(), &env(), &Term::int(1), &Term::atom("a")).unwrap());
        let g = ctx(&[("X", a())]);
        assert!(check_equation(&g, &env(), &Term::var("X"), &Term::var("X")).unwrap());
    }

    #[test]
    fn unbound_variable_is_an_error() {
        assert_eq!(
            check(&Context::new(), &env(), &Term::var("Z"), &a()),
            Err(TypingError::UnboundVariable(Name::new("Z")))
        );
    }

    #[test]
    fn unknown_symbol_without_defaults() {
        let mut e = env();
        e.defaults = false;
        let err = check(&Context::new(), &e, &Term::app("g", vec![Term::int(1)]), &a()).unwrap_err();
        assert!(matches!(err, TypingError::UnknownSymbol { .. }));
    }

    #[test]
    fn instance_checks() {
        let principal = ctx(&[("X", a()), ("Y", TypeExpr::list(a()))]);
        let pty = TypeExpr::list(a());
        let cand = ctx(&[("X", TypeExpr::int()), ("Y", list_int())]);
        assert!(is_instance((&cand, &list_int()), (&principal, &pty)));
        assert!(is_instance((&principal, &pty), (&principal, &pty)));
        let bad = ctx(&[("X", TypeExpr::int()), ("Y", TypeExpr::list(TypeExpr::atom()))]);
        assert!(!is_instance((&bad, &list_int()), (&principal, &pty)));
    }

    #[test]
    fn check_is_stable_under_weakening() {
        let t = Term::cons(Term::var("X"), Term::nil());
        let g = ctx(&[("X", TypeExpr::int())]);
        let wider = ctx(&[("X", TypeExpr::int()), ("Unused", a())]);
        assert_eq!(
            check(&g, &env(), &t, &list_int()).unwrap(),
            check(&wider, &env(), &t, &list_int()).unwrap()
        );
    }

    #[test]
    fn failure_explanation_names_argument() {
        let g = ctx(&[("X", TypeExpr::atom())]);
        let t = Term::cons(Term::var("X"), Term::nil());
        let why = explain_failure(&g, &env(), &t, &list_int()).unwrap().unwrap();
        assert!(why.contains("X : int"), "{why}");
    }
}
