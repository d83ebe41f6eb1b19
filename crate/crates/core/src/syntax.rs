//! Abstract syntax for terms, type expressions, type schemes and substitutions.
//!
//! Everything here is immutable once built. Names are reference counted so
//! terms and types are cheap to clone and can be shared across threads.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use ordered_float::OrderedFloat;

/// An interned identifier: term variable, type variable, functor or type symbol.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Self {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Deref for Name {
    type Target = str;
    fn deref(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for Name {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

impl From<String> for Name {
    fn from(s: String) -> Self {
        Name(Arc::from(s))
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// Name of the list constructor.
pub const CONS: &str = "cons";
/// Name of the empty list constant.
pub const NIL: &str = "[]";
/// Name of the built-in list type symbol.
pub const LIST: &str = "list";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiteralKind {
    Integer,
    Float,
    String,
    Atom,
}

/// A constant symbol. The kind tag decides its default type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Literal {
    Int(i64),
    Float(OrderedFloat<f64>),
    Str(Arc<str>),
    Atom(Name),
}

impl Literal {
    pub fn kind(&self) -> LiteralKind {
        match self {
            Literal::Int(_) => LiteralKind::Integer,
            Literal::Float(_) => LiteralKind::Float,
            Literal::Str(_) => LiteralKind::String,
            Literal::Atom(_) => LiteralKind::Atom,
        }
    }

    pub fn atom(name: &str) -> Self {
        Literal::Atom(Name::new(name))
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, Literal::Atom(a) if &**a == NIL)
    }
}

/// A first-order term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Name),
    Const(Literal),
    /// Functor applied to one or more arguments.
    Compound(Name, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(Name::new(name))
    }

    pub fn atom(name: &str) -> Self {
        Term::Const(Literal::atom(name))
    }

    pub fn int(n: i64) -> Self {
        Term::Const(Literal::Int(n))
    }

    pub fn float(x: f64) -> Self {
        Term::Const(Literal::Float(OrderedFloat(x)))
    }

    pub fn string(s: &str) -> Self {
        Term::Const(Literal::Str(Arc::from(s)))
    }

    pub fn nil() -> Self {
        Term::atom(NIL)
    }

    pub fn cons(head: Term, tail: Term) -> Self {
        Term::Compound(Name::new(CONS), vec![head, tail])
    }

    /// Builds `functor(args..)`, or the atom `functor` when `args` is empty.
    pub fn app(functor: &str, args: Vec<Term>) -> Self {
        if args.is_empty() {
            Term::atom(functor)
        } else {
            Term::Compound(Name::new(functor), args)
        }
    }

    /// Builds a proper list `[items..]`.
    pub fn list(items: Vec<Term>) -> Self {
        items.into_iter().rev().fold(Term::nil(), |tail, head| Term::cons(head, tail))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) => true,
            Term::Compound(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Functor name and arity; constants have arity zero.
    pub fn functor(&self) -> Option<(&str, usize)> {
        match self {
            Term::Var(_) => None,
            Term::Const(Literal::Atom(a)) => Some((a, 0)),
            Term::Const(_) => None,
            Term::Compound(f, args) => Some((f, args.len())),
        }
    }

    /// Number of nodes in the term tree.
    pub fn size(&self) -> usize {
        match self {
            Term::Compound(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            _ => 1,
        }
    }

    /// Nesting depth: variables and constants are depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Compound(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
            _ => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseType {
    Int,
    Float,
    String,
    Atom,
}

impl BaseType {
    pub fn name(self) -> &'static str {
        match self {
            BaseType::Int => "int",
            BaseType::Float => "float",
            BaseType::String => "string",
            BaseType::Atom => "atom",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "int" => Some(BaseType::Int),
            "float" => Some(BaseType::Float),
            "string" => Some(BaseType::String),
            "atom" => Some(BaseType::Atom),
            _ => None,
        }
    }

    pub fn of_literal(kind: LiteralKind) -> Self {
        match kind {
            LiteralKind::Integer => BaseType::Int,
            LiteralKind::Float => BaseType::Float,
            LiteralKind::String => BaseType::String,
            LiteralKind::Atom => BaseType::Atom,
        }
    }
}

/// A type expression.
///
/// `Sym` is a type symbol applied to arguments (`list(int)`), `Ctor` is a type
/// term built from a constructor (`cons(int, list(int))`, `[]`). The solver
/// treats both as rigid constructors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeExpr {
    Var(Name),
    Base(BaseType),
    Bool,
    Sym(Name, Vec<TypeExpr>),
    Ctor(Name, Vec<TypeExpr>),
}

/// The rigid head of a non-variable type, compared by rules 1 and 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeHead<'a> {
    Base(BaseType),
    Bool,
    Sym(&'a str, usize),
    Ctor(&'a str, usize),
}

impl TypeExpr {
    pub fn var(name: &str) -> Self {
        TypeExpr::Var(Name::new(name))
    }

    pub fn int() -> Self {
        TypeExpr::Base(BaseType::Int)
    }

    pub fn atom() -> Self {
        TypeExpr::Base(BaseType::Atom)
    }

    pub fn list(elem: TypeExpr) -> Self {
        TypeExpr::Sym(Name::new(LIST), vec![elem])
    }

    pub fn sym(name: &str, args: Vec<TypeExpr>) -> Self {
        TypeExpr::Sym(Name::new(name), args)
    }

    pub fn ctor(name: &str, args: Vec<TypeExpr>) -> Self {
        TypeExpr::Ctor(Name::new(name), args)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, TypeExpr::Var(_))
    }

    pub fn head(&self) -> Option<TypeHead<'_>> {
        match self {
            TypeExpr::Var(_) => None,
            TypeExpr::Base(b) => Some(TypeHead::Base(*b)),
            TypeExpr::Bool => Some(TypeHead::Bool),
            TypeExpr::Sym(s, args) => Some(TypeHead::Sym(s, args.len())),
            TypeExpr::Ctor(c, args) => Some(TypeHead::Ctor(c, args.len())),
        }
    }

    pub fn args(&self) -> &[TypeExpr] {
        match self {
            TypeExpr::Sym(_, args) | TypeExpr::Ctor(_, args) => args,
            _ => &[],
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            TypeExpr::Var(_) => false,
            TypeExpr::Base(_) | TypeExpr::Bool => true,
            TypeExpr::Sym(_, args) | TypeExpr::Ctor(_, args) => args.iter().all(Self::is_ground),
        }
    }

    pub fn size(&self) -> usize {
        1 + self.args().iter().map(TypeExpr::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        match self.args() {
            [] => 0,
            args => 1 + args.iter().map(TypeExpr::depth).max().unwrap_or(0),
        }
    }
}

/// `τ1 × … × τn → τ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FuncType {
    pub domain: Vec<TypeExpr>,
    pub codomain: TypeExpr,
}

impl FuncType {
    pub fn new(domain: Vec<TypeExpr>, codomain: TypeExpr) -> Self {
        debug_assert!(!domain.is_empty(), "function types take at least one argument");
        FuncType { domain, codomain }
    }

    pub fn arity(&self) -> usize {
        self.domain.len()
    }

    pub fn is_predicate(&self) -> bool {
        self.codomain == TypeExpr::Bool
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SchemeBody {
    Type(TypeExpr),
    Func(FuncType),
}

/// `∀ generics. body`, where the generics are exactly the variables of `body`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeScheme {
    pub generics: Vec<Name>,
    pub body: SchemeBody,
}

impl TypeScheme {
    /// Closes `body` over all of its type variables, in order of first occurrence.
    pub fn generalize(body: SchemeBody) -> Self {
        let mut generics = Vec::new();
        match &body {
            SchemeBody::Type(t) => collect_ordered(t, &mut generics),
            SchemeBody::Func(f) => {
                for t in &f.domain {
                    collect_ordered(t, &mut generics);
                }
                collect_ordered(&f.codomain, &mut generics);
            }
        }
        TypeScheme { generics, body }
    }

    pub fn of_type(t: TypeExpr) -> Self {
        Self::generalize(SchemeBody::Type(t))
    }

    pub fn of_func(domain: Vec<TypeExpr>, codomain: TypeExpr) -> Self {
        Self::generalize(SchemeBody::Func(FuncType::new(domain, codomain)))
    }

    pub fn arity(&self) -> usize {
        match &self.body {
            SchemeBody::Type(_) => 0,
            SchemeBody::Func(f) => f.arity(),
        }
    }

    /// Structural equality up to a bijective renaming of generic variables.
    pub fn alpha_equivalent(&self, other: &TypeScheme) -> bool {
        fn canon(s: &TypeScheme) -> SchemeBody {
            let type_unifier = TypeSubst::from_pairs(
                s.generics
                    .iter()
                    .enumerate()
                    .map(|(i, g)| (g.clone(), TypeExpr::Var(Name::from(format!("#{i}"))))),
            );
            match &s.body {
                SchemeBody::Type(t) => SchemeBody::Type(type_unifier.apply(t)),
                SchemeBody::Func(f) => SchemeBody::Func(type_unifier.apply_func(f)),
            }
        }
        self.generics.len() == other.generics.len() && canon(self) == canon(other)
    }
}

fn collect_ordered(t: &TypeExpr, out: &mut Vec<Name>) {
    match t {
        TypeExpr::Var(v) => {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        _ => t.args().iter().for_each(|a| collect_ordered(a, out)),
    }
}

/// Free-variable queries shared by terms and type expressions.
pub trait HasVars {
    fn collect_vars(&self, out: &mut BTreeSet<Name>);

    fn occurs(&self, v: &str) -> bool;

    fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }
}

impl HasVars for Term {
    fn collect_vars(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::Compound(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    fn occurs(&self, v: &str) -> bool {
        match self {
            Term::Var(w) => &**w == v,
            Term::Const(_) => false,
            Term::Compound(_, args) => args.iter().any(|a| a.occurs(v)),
        }
    }
}

impl HasVars for TypeExpr {
    fn collect_vars(&self, out: &mut BTreeSet<Name>) {
        match self {
            TypeExpr::Var(v) => {
                out.insert(v.clone());
            }
            _ => self.args().iter().for_each(|a| a.collect_vars(out)),
        }
    }

    fn occurs(&self, v: &str) -> bool {
        match self {
            TypeExpr::Var(w) => &**w == v,
            _ => self.args().iter().any(|a| a.occurs(v)),
        }
    }
}

impl HasVars for FuncType {
    fn collect_vars(&self, out: &mut BTreeSet<Name>) {
        self.domain.iter().for_each(|t| t.collect_vars(out));
        self.codomain.collect_vars(out);
    }

    fn occurs(&self, v: &str) -> bool {
        self.domain.iter().any(|t| t.occurs(v)) || self.codomain.occurs(v)
    }
}

/// `v` occurs anywhere in `x`.
pub fn occurs_in<T: HasVars + ?Sized>(v: &str, x: &T) -> bool {
    x.occurs(v)
}

pub fn free_vars<T: HasVars + ?Sized>(x: &T) -> BTreeSet<Name> {
    x.free_vars()
}

/// A term substitution θ, applied simultaneously.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Subst(BTreeMap<Name, Term>);

impl Subst {
    pub fn new() -> Self {
        Subst::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Name, Term)>) -> Self {
        Subst(pairs.into_iter().collect())
    }

    pub fn insert(&mut self, v: Name, t: Term) {
        self.0.insert(v, t);
    }

    pub fn get(&self, v: &str) -> Option<&Term> {
        self.0.get(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Term)> {
        self.0.iter()
    }

    pub fn apply(&self, t: &Term) -> Term {
        if self.0.is_empty() {
            return t.clone();
        }
        match t {
            Term::Var(v) => self.0.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::Const(_) => t.clone(),
            Term::Compound(f, args) => {
                Term::Compound(f.clone(), args.iter().map(|a| self.apply(a)).collect())
            }
        }
    }

    /// `self ∘ first`: applying the result equals applying `first`, then `self`.
    pub fn compose(&self, first: &Subst) -> Subst {
        let mut out: BTreeMap<Name, Term> = first.0.iter().map(|(v, t)| (v.clone(), self.apply(t))).collect();
        for (v, t) in &self.0 {
            out.entry(v.clone()).or_insert_with(|| t.clone());
        }
        out.retain(|v, t| !matches!(t, Term::Var(w) if w == v));
        Subst(out)
    }

    /// Keeps only bindings for the given variables.
    pub fn restrict<'a>(&self, vars: impl IntoIterator<Item = &'a Name>) -> Subst {
        Subst(vars.into_iter().filter_map(|v| self.0.get(v).map(|t| (v.clone(), t.clone()))).collect())
    }

    /// No variable of the domain occurs in any right-hand side.
    pub fn is_idempotent(&self) -> bool {
        self.0.values().all(|t| self.0.keys().all(|v| !t.occurs(v)))
    }
}

/// A type substitution μ, applied simultaneously.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeSubst(BTreeMap<Name, TypeExpr>);

impl TypeSubst {
    pub fn new() -> Self {
        TypeSubst::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Name, TypeExpr)>) -> Self {
        TypeSubst(pairs.into_iter().collect())
    }

    pub fn insert(&mut self, v: Name, t: TypeExpr) {
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

    pub fn apply(&self, t: &TypeExpr) -> TypeExpr {
        if self.0.is_empty() {
            return t.clone();
        }
        match t {
            TypeExpr::Var(v) => self.0.get(v).cloned().unwrap_or_else(|| t.clone()),
            TypeExpr::Base(_) | TypeExpr::Bool => t.clone(),
            TypeExpr::Sym(s, args) => TypeExpr::Sym(s.clone(), args.iter().map(|a| self.apply(a)).collect()),
            TypeExpr::Ctor(c, args) => {
                TypeExpr::Ctor(c.clone(), args.iter().map(|a| self.apply(a)).collect())
            }
        }
    }

    pub fn apply_func(&self, f: &FuncType) -> FuncType {
        FuncType {
            domain: f.domain.iter().map(|t| self.apply(t)).collect(),
            codomain: self.apply(&f.codomain),
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &TypeSubst) -> TypeSubst {
        let mut out: BTreeMap<Name, TypeExpr> =
            first.0.iter().map(|(v, t)| (v.clone(), self.apply(t))).collect();
        for (v, t) in &self.0 {
            out.entry(v.clone()).or_insert_with(|| t.clone());
        }
        out.retain(|v, t| !matches!(t, TypeExpr::Var(w) if w == v));
        TypeSubst(out)
    }

    pub fn is_idempotent(&self) -> bool {
        self.0.values().all(|t| self.0.keys().all(|v| !t.occurs(v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("X")
    }

    fn y() -> Term {
        Term::var("Y")
    }

    #[test]
    fn apply_subst_replaces_bound_variables() {
        let unifier = Subst::from_pairs([(Name::new("X"), Term::int(1))]);
        let t = Term::cons(x(), Term::nil());
        assert_eq!(unifier.apply(&t), Term::cons(Term::int(1), Term::nil()));
    }

    #[test]
    fn empty_subst_is_identity() {
        let t = Term::app("f", vec![x()]);
        assert_eq!(Subst::new().apply(&t), t);
    }

    #[test]
    fn application_is_simultaneous() {
        let unifier = Subst::from_pairs([
            (Name::new("X"), Term::app("f", vec![y()])),
            (Name::new("Y"), Term::atom("a")),
        ]);
        let t = Term::app("g", vec![x(), y()]);
        assert_eq!(unifier.apply(&t), Term::app("g", vec![Term::app("f", vec![y()]), Term::atom("a")]));
    }

    #[test]
    fn apply_type_subst_examples() {
        let type_unifier = TypeSubst::from_pairs([(Name::new("B"), TypeExpr::int())]);
        assert_eq!(type_unifier.apply(&TypeExpr::list(TypeExpr::var("B"))), TypeExpr::list(TypeExpr::int()));
        assert_eq!(TypeSubst::new().apply(&TypeExpr::var("A")), TypeExpr::var("A"));

        let type_unifier = TypeSubst::from_pairs([(Name::new("A"), TypeExpr::list(TypeExpr::var("G")))]);
        let t = TypeExpr::ctor("cons", vec![TypeExpr::var("A"), TypeExpr::list(TypeExpr::var("A"))]);
        let lg = TypeExpr::list(TypeExpr::var("G"));
        assert_eq!(type_unifier.apply(&t), TypeExpr::ctor("cons", vec![lg.clone(), TypeExpr::list(lg)]));
    }

    #[test]
    fn occurs_and_free_vars() {
        let t = Term::app("f", vec![Term::app("g", vec![x()])]);
        assert!(occurs_in("X", &t));
        assert!(!occurs_in("X", &Term::app("f", vec![y()])));
        assert!(occurs_in("A", &TypeExpr::list(TypeExpr::var("A"))));

        let names = |s: &[&str]| s.iter().map(|n| Name::new(n)).collect::<BTreeSet<_>>();
        assert_eq!(free_vars(&Term::cons(x(), y())), names(&["X", "Y"]));
        assert!(free_vars(&Term::int(1)).is_empty());
        assert_eq!(free_vars(&TypeExpr::list(TypeExpr::var("A"))), names(&["A"]));
    }

    #[test]
    fn compose_applies_first_then_second() {
        let first = Subst::from_pairs([(Name::new("X"), Term::app("f", vec![y()]))]);
        let second = Subst::from_pairs([(Name::new("Y"), Term::int(2))]);
        let both = second.compose(&first);
        let t = Term::app("g", vec![x(), y()]);
        assert_eq!(both.apply(&t), second.apply(&first.apply(&t)));
    }

    #[test]
    fn generalize_orders_generics_by_first_occurrence() {
        let s = TypeScheme::of_func(
            vec![TypeExpr::var("B"), TypeExpr::list(TypeExpr::var("B"))],
            TypeExpr::list(TypeExpr::var("B")),
        );
        assert_eq!(s.generics, vec![Name::new("B")]);
        let t = TypeScheme::of_func(
            vec![TypeExpr::var("Q"), TypeExpr::list(TypeExpr::var("Q"))],
            TypeExpr::list(TypeExpr::var("Q")),
        );
        assert!(s.alpha_equivalent(&t));
    }
}
