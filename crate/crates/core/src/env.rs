//! Type definitions and the signature environment derived from them.
//!
//! A [`TypeDefSet`] is a validated, deterministic set of regular type
//! definitions: every constructor appears in exactly one summand across the
//! whole set. [`derive_signatures`] turns it into a [`SignatureEnv`] that
//! assigns a type scheme to every constant, function symbol and predicate,
//! falling back to the Herbrand defaults for undeclared symbols.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::constraints::FreshSupply;
use crate::parse::SourceSpan;
use crate::syntax::{
    BaseType, FuncType, HasVars, Literal, LiteralKind, Name, SchemeBody, TypeExpr, TypeScheme, TypeSubst,
    CONS, LIST, NIL,
};

/// Suffix marking the implicit type symbol of an undeclared functor.
pub const IMPLICIT_MARK: char = '°';

/// Type symbol `f°` standing for the free-constructor type of functor `f`.
pub fn implicit_type_symbol(functor: &str) -> Name {
    Name::from(format!("{functor}{IMPLICIT_MARK}"))
}

/// The functor behind an implicit type symbol, if `sym` is one.
pub fn implicit_functor(sym: &str) -> Option<&str> {
    sym.strip_suffix(IMPLICIT_MARK)
}

/// `head(params..) --> summand + ... + summand`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeDef {
    pub head: Name,
    pub params: Vec<Name>,
    pub summands: Vec<TypeExpr>,
    pub span: Option<SourceSpan>,
}

impl TypeDef {
    pub fn new(head: &str, params: &[&str], summands: Vec<TypeExpr>) -> Self {
        TypeDef {
            head: Name::new(head),
            params: params.iter().map(|p| Name::new(p)).collect(),
            summands,
            span: None,
        }
    }

    /// `head(params..)` as a type expression.
    pub fn head_type(&self) -> TypeExpr {
        TypeExpr::Sym(self.head.clone(), self.params.iter().cloned().map(TypeExpr::Var).collect())
    }

    fn same_shape(&self, other: &TypeDef) -> bool {
        if self.head != other.head || self.params.len() != other.params.len() {
            return false;
        }
        let rename = TypeSubst::from_pairs(
            other.params.iter().cloned().zip(self.params.iter().cloned().map(TypeExpr::Var)),
        );
        let mut mine: Vec<_> = self.summands.clone();
        let mut theirs: Vec<_> = other.summands.iter().map(|s| rename.apply(s)).collect();
        mine.sort();
        theirs.sort();
        mine == theirs
    }
}

/// `list(A) --> [] + cons(A, list(A))`.
pub fn builtin_list_def() -> TypeDef {
    let a = TypeExpr::var("A");
    TypeDef::new(
        LIST,
        &["A"],
        vec![TypeExpr::ctor(NIL, vec![]), TypeExpr::ctor(CONS, vec![a.clone(), TypeExpr::list(a)])],
    )
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EnvError {
    #[error("constructor `{ctor}` appears in both `{first}` and `{second}`")]
    DuplicateConstructor { ctor: Name, first: Name, second: Name },
    #[error("type variable `{var}` in the body of `{def}` is not a parameter")]
    UnboundTypeVar { def: Name, var: Name },
    #[error("parameter `{param}` of `{def}` does not occur in any summand")]
    UnusedParam { def: Name, param: Name },
    #[error("parameter `{param}` of `{def}` is repeated")]
    DuplicateParam { def: Name, param: Name },
    #[error("illegal summand `{summand}` in `{def}`: {reason}")]
    IllegalSummand { def: Name, summand: String, reason: &'static str },
    #[error("type symbol `{0}` is defined more than once")]
    DuplicateDefinition(Name),
    #[error("the built-in `list` type may only be restated identically")]
    BuiltinRedefined,
    #[error("unknown type symbol `{0}`")]
    UnknownTypeSymbol(Name),
    #[error("`{symbol}` used with {found} arguments, expected {expected}")]
    ArityMismatch { symbol: Name, expected: usize, found: usize },
    #[error("signature for `{symbol}` conflicts with its derived constructor scheme {derived}")]
    ConflictingOverride { symbol: Name, derived: String },
    #[error("literal `{0}` has a fixed type and cannot be redeclared")]
    LiteralOverride(String),
    #[error("`{symbol}/{arity}` is not a constructor; only predicate signatures may be declared")]
    NonPredicateOverride { symbol: Name, arity: usize },
    #[error("`{symbol}/{arity}` is declared more than once")]
    DuplicateSignature { symbol: Name, arity: usize },
}

/// A validated deterministic set of type definitions, always including `list`.
#[derive(Clone, Debug)]
pub struct TypeDefSet {
    defs: BTreeMap<Name, TypeDef>,
    /// constructor name → (defining type symbol, summand index)
    ctors: BTreeMap<Name, (Name, usize)>,
}

impl Default for TypeDefSet {
    fn default() -> Self {
        validate(Vec::new()).expect("built-in definitions are valid")
    }
}

/// Checks well-formedness and determinism, reporting every violation found.
pub fn validate(defs: Vec<TypeDef>) -> Result<TypeDefSet, Vec<EnvError>> {
    let mut errors = Vec::new();
    let builtin = builtin_list_def();

    let mut by_head: BTreeMap<Name, TypeDef> = BTreeMap::new();
    by_head.insert(builtin.head.clone(), builtin.clone());
    let mut user_list_seen = false;
    for def in defs {
        if def.head.as_str() == LIST {
            if user_list_seen || !def.same_shape(&builtin) {
                errors.push(EnvError::BuiltinRedefined);
            }
            user_list_seen = true;
            continue;
        }
        if by_head.contains_key(&def.head) {
            errors.push(EnvError::DuplicateDefinition(def.head.clone()));
            continue;
        }
        by_head.insert(def.head.clone(), def);
    }

    let heads: BTreeMap<Name, usize> = by_head.iter().map(|(h, d)| (h.clone(), d.params.len())).collect();

    // Constructor index, and arities of constructor occurrences.
    let mut ctors: BTreeMap<Name, (Name, usize)> = BTreeMap::new();
    let mut ctor_arity: BTreeMap<Name, usize> = BTreeMap::new();
    for def in by_head.values() {
        for (i, s) in def.summands.iter().enumerate() {
            if let TypeExpr::Ctor(c, args) = s {
                if heads.contains_key(c) {
                    continue;
                }
                if let Some((first, _)) = ctors.get(c) {
                    errors.push(EnvError::DuplicateConstructor {
                        ctor: c.clone(),
                        first: first.clone(),
                        second: def.head.clone(),
                    });
                } else {
                    ctors.insert(c.clone(), (def.head.clone(), i));
                    ctor_arity.insert(c.clone(), args.len());
                }
            }
        }
    }

    let resolver = Resolver { heads: &heads, ctors: &ctor_arity };
    let mut resolved = BTreeMap::new();
    for (head, def) in by_head {
        let mut seen = BTreeSet::new();
        for p in &def.params {
            if !seen.insert(p.clone()) {
                errors.push(EnvError::DuplicateParam { def: head.clone(), param: p.clone() });
            }
        }

        let mut summands = Vec::with_capacity(def.summands.len());
        let mut used = BTreeSet::new();
        for s in &def.summands {
            let illegal =
                |reason| EnvError::IllegalSummand { def: head.clone(), summand: s.to_string(), reason };
            match s {
                TypeExpr::Ctor(c, _) if heads.contains_key(c) => {
                    errors.push(illegal("a type symbol is not a type term"));
                }
                TypeExpr::Ctor(c, args) => {
                    let mut new_args = Vec::with_capacity(args.len());
                    for a in args {
                        if contains_bool(a) {
                            errors.push(illegal("bool cannot appear inside a type term"));
                        }
                        match resolver.resolve(a) {
                            Ok(r) => new_args.push(r),
                            Err(e) => errors.push(e),
                        }
                    }
                    let r = TypeExpr::Ctor(c.clone(), new_args);
                    r.collect_vars(&mut used);
                    summands.push(r);
                }
                TypeExpr::Var(_) => errors.push(illegal("type variables are not type terms")),
                TypeExpr::Base(_) => errors.push(illegal("base types are not type terms")),
                TypeExpr::Bool => errors.push(illegal("bool is not a type term")),
                TypeExpr::Sym(..) => errors.push(illegal("a type symbol is not a type term")),
            }
        }
        if def.summands.is_empty() {
            errors.push(EnvError::IllegalSummand {
                def: head.clone(),
                summand: String::new(),
                reason: "a definition needs at least one summand",
            });
        }
        for v in &used {
            if !def.params.contains(v) {
                errors.push(EnvError::UnboundTypeVar { def: head.clone(), var: v.clone() });
            }
        }
        for p in seen.iter() {
            if !used.contains(p) {
                errors.push(EnvError::UnusedParam { def: head.clone(), param: p.clone() });
            }
        }
        resolved.insert(head, TypeDef { summands, ..def });
    }

    if errors.is_empty() {
        Ok(TypeDefSet { defs: resolved, ctors })
    } else {
        Err(errors)
    }
}

fn contains_bool(t: &TypeExpr) -> bool {
    matches!(t, TypeExpr::Bool) || t.args().iter().any(contains_bool)
}

/// Turns raw parsed applications into `Sym` or `Ctor` nodes.
struct Resolver<'a> {
    heads: &'a BTreeMap<Name, usize>,
    ctors: &'a BTreeMap<Name, usize>,
}

impl Resolver<'_> {
    fn resolve(&self, t: &TypeExpr) -> Result<TypeExpr, EnvError> {
        match t {
            TypeExpr::Var(_) | TypeExpr::Base(_) | TypeExpr::Bool => Ok(t.clone()),
            TypeExpr::Sym(n, args) | TypeExpr::Ctor(n, args) => {
                let args = args.iter().map(|a| self.resolve(a)).collect::<Result<Vec<_>, _>>()?;
                let check = |expected: usize| {
                    if expected == args.len() {
                        Ok(())
                    } else {
                        Err(EnvError::ArityMismatch { symbol: n.clone(), expected, found: args.len() })
                    }
                };
                if let Some(&arity) = self.heads.get(n) {
                    check(arity)?;
                    Ok(TypeExpr::Sym(n.clone(), args))
                } else if let Some(&arity) = self.ctors.get(n) {
                    check(arity)?;
                    Ok(TypeExpr::Ctor(n.clone(), args))
                } else if implicit_functor(n).is_some() {
                    Ok(TypeExpr::Sym(n.clone(), args))
                } else if !args.is_empty() {
                    Ok(TypeExpr::Sym(implicit_type_symbol(n), args))
                } else {
                    Err(EnvError::UnknownTypeSymbol(n.clone()))
                }
            }
        }
    }
}

impl TypeDefSet {
    pub fn get(&self, head: &str) -> Option<&TypeDef> {
        self.defs.get(head)
    }

    pub fn defs(&self) -> impl Iterator<Item = &TypeDef> {
        self.defs.values()
    }

    /// The definition and summand that introduce constructor `ctor`.
    pub fn summand_of(&self, ctor: &str) -> Option<(&TypeDef, &TypeExpr)> {
        let (head, i) = self.ctors.get(ctor)?;
        let def = &self.defs[head];
        Some((def, &def.summands[*i]))
    }

    pub fn is_constructor(&self, name: &str) -> bool {
        self.ctors.contains_key(name)
    }

    /// Resolves a type written by a user (in a context, signature or query)
    /// against these definitions.
    pub fn resolve(&self, t: &TypeExpr) -> Result<TypeExpr, EnvError> {
        let heads: BTreeMap<Name, usize> =
            self.defs.iter().map(|(h, d)| (h.clone(), d.params.len())).collect();
        let ctors: BTreeMap<Name, usize> = self
            .ctors
            .keys()
            .map(|c| {
                let (_, s) = self.summand_of(c).expect("indexed constructor");
                (c.clone(), s.args().len())
            })
            .collect();
        Resolver { heads: &heads, ctors: &ctors }.resolve(t)
    }
}

/// One declaration from a signature file: `symbol : type.` or
/// `symbol : t1 * ... * tn -> t.`
#[derive(Clone, Debug, PartialEq)]
pub struct SigDecl {
    pub symbol: Literal,
    pub scheme: TypeScheme,
    pub span: Option<SourceSpan>,
}

/// Type schemes for constants, function symbols and predicates (Δ).
#[derive(Clone, Debug, Default)]
pub struct SignatureEnv {
    pub constants: BTreeMap<Name, TypeScheme>,
    pub functions: BTreeMap<(Name, usize), TypeScheme>,
    pub predicates: BTreeMap<(Name, usize), TypeScheme>,
    /// Fall back to literal types, free constructors and generic predicates.
    pub defaults: bool,
}

impl SignatureEnv {
    /// Scheme of a constant, if known.
    pub fn constant(&self, lit: &Literal) -> Option<TypeScheme> {
        match lit {
            Literal::Atom(a) => match self.constants.get(a) {
                Some(s) => Some(s.clone()),
                None if self.defaults => Some(TypeScheme::of_type(TypeExpr::atom())),
                None => None,
            },
            other if self.defaults => {
                Some(TypeScheme::of_type(TypeExpr::Base(BaseType::of_literal(other.kind()))))
            }
            _ => None,
        }
    }

    /// Scheme of function symbol `f/n` (n ≥ 1).
    pub fn function(&self, f: &str, arity: usize) -> Option<TypeScheme> {
        let key = (Name::new(f), arity);
        match self.functions.get(&key) {
            Some(s) => Some(s.clone()),
            None if self.defaults => Some(free_constructor_scheme(f, arity)),
            None => None,
        }
    }

    /// Scheme of predicate `p/n`; the codomain is `bool`.
    pub fn predicate(&self, p: &str, arity: usize) -> Option<TypeScheme> {
        let key = (Name::new(p), arity);
        match self.predicates.get(&key) {
            Some(s) => Some(s.clone()),
            None if self.defaults => Some(generic_predicate_scheme(arity)),
            None => None,
        }
    }
}

fn param_names(n: usize) -> Vec<TypeExpr> {
    (1..=n).map(|i| TypeExpr::Var(Name::from(format!("A{i}")))).collect()
}

/// `∀α1..αn. α1 × … × αn → f°(α1, …, αn)`.
pub fn free_constructor_scheme(f: &str, arity: usize) -> TypeScheme {
    let params = param_names(arity);
    TypeScheme::of_func(params.clone(), TypeExpr::Sym(implicit_type_symbol(f), params))
}

/// `∀α1..αn. α1 × … × αn → bool`.
pub fn generic_predicate_scheme(arity: usize) -> TypeScheme {
    if arity == 0 {
        return TypeScheme::of_type(TypeExpr::Bool);
    }
    TypeScheme::of_func(param_names(arity), TypeExpr::Bool)
}

/// Builds Δ from the definitions plus user-declared predicate signatures.
pub fn derive_signatures(d: &TypeDefSet, overrides: &[SigDecl]) -> Result<SignatureEnv, Vec<EnvError>> {
    let mut env = SignatureEnv { defaults: true, ..SignatureEnv::default() };
    for def in d.defs() {
        let codomain = def.head_type();
        for s in &def.summands {
            let TypeExpr::Ctor(c, args) = s else { continue };
            if args.is_empty() {
                env.constants.insert(c.clone(), TypeScheme::of_type(codomain.clone()));
            } else {
                env.functions
                    .insert((c.clone(), args.len()), TypeScheme::of_func(args.clone(), codomain.clone()));
            }
        }
    }

    let mut errors = Vec::new();
    for decl in overrides {
        let symbol = match &decl.symbol {
            Literal::Atom(a) => a.clone(),
            other => {
                errors.push(EnvError::LiteralOverride(crate::print::literal_to_string(other)));
                continue;
            }
        };
        let scheme = match resolve_scheme(d, &decl.scheme) {
            Ok(s) => s,
            Err(e) => {
                errors.push(e);
                continue;
            }
        };
        let arity = scheme.arity();

        let derived =
            if arity == 0 { env.constants.get(&symbol) } else { env.functions.get(&(symbol.clone(), arity)) };
        if let Some(derived) = derived {
            if !derived.alpha_equivalent(&scheme) {
                errors.push(EnvError::ConflictingOverride { symbol, derived: derived.to_string() });
            }
            continue;
        }
        if d.is_constructor(&symbol) {
            let derived = env
                .constants
                .get(&symbol)
                .or_else(|| env.functions.iter().find(|((f, _), _)| *f == symbol).map(|(_, s)| s))
                .map(ToString::to_string)
                .unwrap_or_default();
            errors.push(EnvError::ConflictingOverride { symbol, derived });
            continue;
        }

        let is_pred = match &scheme.body {
            SchemeBody::Type(t) => *t == TypeExpr::Bool,
            SchemeBody::Func(f) => f.is_predicate(),
        };
        if !is_pred {
            errors.push(EnvError::NonPredicateOverride { symbol, arity });
            continue;
        }
        let key = (symbol.clone(), arity);
        if env.predicates.contains_key(&key) {
            errors.push(EnvError::DuplicateSignature { symbol, arity });
            continue;
        }
        env.predicates.insert(key, scheme);
    }

    if errors.is_empty() {
        Ok(env)
    } else {
        Err(errors)
    }
}

fn resolve_scheme(d: &TypeDefSet, s: &TypeScheme) -> Result<TypeScheme, EnvError> {
    let body = match &s.body {
        SchemeBody::Type(t) => SchemeBody::Type(d.resolve(t)?),
        SchemeBody::Func(f) => SchemeBody::Func(FuncType {
            domain: f.domain.iter().map(|t| d.resolve(t)).collect::<Result<_, _>>()?,
            codomain: d.resolve(&f.codomain)?,
        }),
    };
    Ok(TypeScheme::generalize(body))
}

/// Replaces every generic variable with a fresh type variable.
pub fn instantiate(scheme: &TypeScheme, fresh: &mut FreshSupply) -> SchemeBody {
    if scheme.generics.is_empty() {
        return scheme.body.clone();
    }
    let type_unifier = TypeSubst::from_pairs(scheme.generics.iter().map(|g| (g.clone(), fresh.fresh_var())));
    match &scheme.body {
        SchemeBody::Type(t) => SchemeBody::Type(type_unifier.apply(t)),
        SchemeBody::Func(f) => SchemeBody::Func(type_unifier.apply_func(f)),
    }
}

/// Default type of a literal kind, used when no signature applies.
pub fn literal_type(kind: LiteralKind) -> TypeExpr {
    TypeExpr::Base(BaseType::of_literal(kind))
}

impl fmt::Display for TypeDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head_type())?;
        f.write_str(" --> ")?;
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(".")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat_def() -> TypeDef {
        TypeDef::new(
            "nat",
            &[],
            vec![TypeExpr::ctor("zero", vec![]), TypeExpr::ctor("s", vec![TypeExpr::sym("nat", vec![])])],
        )
    }

    #[test]
    fn builtin_list_is_valid() {
        let d = validate(vec![builtin_list_def()]).unwrap();
        assert!(d.get("list").is_some());
        assert!(d.is_constructor("cons"));
        assert!(d.is_constructor("[]"));
    }

    #[test]
    fn duplicate_constructor_is_rejected() {
        let a = TypeExpr::var("A");
        let b = TypeExpr::var("B");
        let errs = validate(vec![
            TypeDef::new("t", &["A"], vec![TypeExpr::ctor("f", vec![a])]),
            TypeDef::new("s", &["B"], vec![TypeExpr::ctor("f", vec![b])]),
        ])
        .unwrap_err();
        assert!(errs
            .iter()
            .any(|e| matches!(e, EnvError::DuplicateConstructor { ctor, .. } if ctor.as_str() == "f")));
    }

    #[test]
    fn repeated_parameter_is_rejected() {
        let a = TypeExpr::var("A");
        let errs =
            validate(vec![TypeDef::new("t", &["A", "A"], vec![TypeExpr::ctor("f", vec![a])])]).unwrap_err();
        assert!(errs.iter().any(|e| matches!(e, EnvError::DuplicateParam { .. })));
    }

    #[test]
    fn unused_and_unbound_variables_are_reported_together() {
        let errs =
            validate(vec![TypeDef::new("t", &["A"], vec![TypeExpr::ctor("f", vec![TypeExpr::var("B")])])])
                .unwrap_err();
        assert!(errs.iter().any(|e| matches!(e, EnvError::UnboundTypeVar { .. })));
        assert!(errs.iter().any(|e| matches!(e, EnvError::UnusedParam { .. })));
    }

    #[test]
    fn variable_and_base_summands_are_illegal() {
        let errs = validate(vec![TypeDef::new(
            "t",
            &["A"],
            vec![TypeExpr::var("A"), TypeExpr::ctor("f", vec![TypeExpr::var("A")])],
        )])
        .unwrap_err();
        assert!(errs.iter().any(|e| matches!(e, EnvError::IllegalSummand { .. })));
        let errs = validate(vec![TypeDef::new("u", &[], vec![TypeExpr::int()])]).unwrap_err();
        assert!(errs.iter().any(|e| matches!(e, EnvError::IllegalSummand { .. })));
    }

    #[test]
    fn list_may_only_be_restated_identically() {
        let same = TypeDef::new(
            "list",
            &["T"],
            vec![
                TypeExpr::ctor("cons", vec![TypeExpr::var("T"), TypeExpr::list(TypeExpr::var("T"))]),
                TypeExpr::ctor("[]", vec![]),
            ],
        );
        assert!(validate(vec![same]).is_ok());
        let different = TypeDef::new("list", &["T"], vec![TypeExpr::ctor("nil", vec![])]);
        assert!(validate(vec![different]).is_err());
    }

    #[test]
    fn derived_list_signatures() {
        let d = TypeDefSet::default();
        let env = derive_signatures(&d, &[]).unwrap();
        let a = TypeExpr::var("A");
        assert!(env.constants["[]"].alpha_equivalent(&TypeScheme::of_type(TypeExpr::list(a.clone()))));
        assert!(env.functions[&(Name::new("cons"), 2)].alpha_equivalent(&TypeScheme::of_func(
            vec![a.clone(), TypeExpr::list(a.clone())],
            TypeExpr::list(a)
        )));
        assert_eq!(env.constant(&Literal::Int(1)).unwrap(), TypeScheme::of_type(TypeExpr::int()));
        assert_eq!(env.constant(&Literal::atom("a")).unwrap(), TypeScheme::of_type(TypeExpr::atom()));
    }

    #[test]
    fn undeclared_functor_gets_free_constructor_scheme() {
        let env = derive_signatures(&TypeDefSet::default(), &[]).unwrap();
        let g = env.function("g", 2).unwrap();
        let (a1, a2) = (TypeExpr::var("X"), TypeExpr::var("Y"));
        let expected = TypeScheme::of_func(
            vec![a1.clone(), a2.clone()],
            TypeExpr::Sym(implicit_type_symbol("g"), vec![a1, a2]),
        );
        assert!(g.alpha_equivalent(&expected));
        assert_eq!(g.generics.len(), 2);
    }

    #[test]
    fn user_types_derive_constructor_schemes() {
        let d = validate(vec![nat_def()]).unwrap();
        let env = derive_signatures(&d, &[]).unwrap();
        assert_eq!(env.constants["zero"], TypeScheme::of_type(TypeExpr::sym("nat", vec![])));
        let s = &env.functions[&(Name::new("s"), 1)];
        assert_eq!(*s, TypeScheme::of_func(vec![TypeExpr::sym("nat", vec![])], TypeExpr::sym("nat", vec![])));
    }

    #[test]
    fn overrides() {
        let d = TypeDefSet::default();
        let length = SigDecl {
            symbol: Literal::atom("length"),
            scheme: TypeScheme::of_func(
                vec![TypeExpr::sym("list", vec![TypeExpr::var("A")]), TypeExpr::int()],
                TypeExpr::Bool,
            ),
            span: None,
        };
        let env = derive_signatures(&d, std::slice::from_ref(&length)).unwrap();
        assert_eq!(env.predicate("length", 2).unwrap().arity(), 2);

        let bad_cons = SigDecl {
            symbol: Literal::atom("cons"),
            scheme: TypeScheme::of_func(vec![TypeExpr::var("A")], TypeExpr::var("A")),
            span: None,
        };
        let errs = derive_signatures(&d, &[bad_cons]).unwrap_err();
        assert!(matches!(errs[0], EnvError::ConflictingOverride { .. }));

        let lit =
            SigDecl { symbol: Literal::Int(1), scheme: TypeScheme::of_type(TypeExpr::atom()), span: None };
        assert!(matches!(derive_signatures(&d, &[lit]).unwrap_err()[0], EnvError::LiteralOverride(_)));
        assert!(matches!(
            derive_signatures(&d, &[length.clone(), length]).unwrap_err()[0],
            EnvError::DuplicateSignature { .. }
        ));
    }

    #[test]
    fn instantiate_uses_disjoint_fresh_variables() {
        let env = derive_signatures(&TypeDefSet::default(), &[]).unwrap();
        let mut fresh = FreshSupply::new();
        let nil = env.constants["[]"].clone();
        let SchemeBody::Type(t1) = instantiate(&nil, &mut fresh) else { panic!() };
        let SchemeBody::Type(t2) = instantiate(&nil, &mut fresh) else { panic!() };
        assert_ne!(t1, t2);
        assert!(matches!(&t1, TypeExpr::Sym(s, args) if s.as_str() == "list" && args[0].is_var()));

        let ground = TypeScheme::of_type(TypeExpr::int());
        assert_eq!(instantiate(&ground, &mut fresh), SchemeBody::Type(TypeExpr::int()));

        let cons = env.functions[&(Name::new("cons"), 2)].clone();
        let SchemeBody::Func(f) = instantiate(&cons, &mut fresh) else { panic!() };
        assert_eq!(f.domain[1], TypeExpr::list(f.domain[0].clone()));
        assert_eq!(f.codomain, f.domain[1]);
    }
}
