//! A desk-scale model of the value universe: evaluation of ground terms,
//! domains, three-valued equality, membership in ground types, and bounded
//! enumeration of ground terms.
//!
//! Domains are described structurally by [`DomainTag`], a ground type pattern
//! in which [`DomainTag::Any`] stands for "every element domain". The empty
//! list has domain `list(Any)` and is the only value in several domains.
//! Two values can be compared iff the meet of their domains is defined.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use ordered_float::OrderedFloat;
use thiserror::Error;

use crate::env::{implicit_functor, implicit_type_symbol, TypeDefSet};
use crate::syntax::{BaseType, Literal, Name, Term, TypeExpr, CONS, LIST, NIL};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Int(i64),
    Flt(OrderedFloat<f64>),
    Str(Arc<str>),
    Atm(Name),
    /// A constructor application (or constructor constant) outside `list`.
    Tree {
        root: Name,
        children: Vec<Value>,
        domain: DomainTag,
    },
    Nil,
    /// Only built through [`cons_value`], so the tail is always a list.
    Cons(Box<Value>, Box<Value>),
    Bool(bool),
    Wrong,
}

/// A domain, written as a ground type pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DomainTag {
    Base(BaseType),
    Bool,
    /// A type symbol with element domains, e.g. `list(int)` or `f°(atom)`.
    Sym(Name, Vec<DomainTag>),
    /// Any element domain; `list(Any)` is the domain of `[]`.
    Any,
    Wrong,
}

impl DomainTag {
    pub fn list(elem: DomainTag) -> Self {
        DomainTag::Sym(Name::new(LIST), vec![elem])
    }

    /// The domain of `[]`.
    pub fn empty_list_any() -> Self {
        DomainTag::list(DomainTag::Any)
    }
}

impl fmt::Display for DomainTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainTag::Base(b) => write!(f, "{b}"),
            DomainTag::Bool => f.write_str("bool"),
            DomainTag::Any => f.write_str("_"),
            DomainTag::Wrong => f.write_str("wrong"),
            DomainTag::Sym(n, args) => {
                write!(f, "{n}")?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

/// Intersection of two domains; `None` when they are disjoint.
pub fn meet(a: &DomainTag, b: &DomainTag) -> Option<DomainTag> {
    match (a, b) {
        (DomainTag::Wrong, _) | (_, DomainTag::Wrong) => None,
        (DomainTag::Any, x) | (x, DomainTag::Any) => Some(x.clone()),
        (DomainTag::Sym(n, xs), DomainTag::Sym(m, ys)) if n == m && xs.len() == ys.len() => xs
            .iter()
            .zip(ys)
            .map(|(x, y)| meet(x, y))
            .collect::<Option<Vec<_>>>()
            .map(|args| DomainTag::Sym(n.clone(), args)),
        (x, y) if x == y => Some(x.clone()),
        _ => None,
    }
}

/// `dom(v)`.
pub fn dom(v: &Value) -> DomainTag {
    match v {
        Value::Int(_) => DomainTag::Base(BaseType::Int),
        Value::Flt(_) => DomainTag::Base(BaseType::Float),
        Value::Str(_) => DomainTag::Base(BaseType::String),
        Value::Atm(_) => DomainTag::Base(BaseType::Atom),
        Value::Tree { domain, .. } => domain.clone(),
        Value::Nil => DomainTag::empty_list_any(),
        Value::Cons(h, t) => {
            let DomainTag::Sym(_, tail) = dom(t) else { unreachable!("tail is a list") };
            DomainTag::list(meet(&dom(h), &tail[0]).expect("cons_value checked the element domains"))
        }
        Value::Bool(_) => DomainTag::Bool,
        Value::Wrong => DomainTag::Wrong,
    }
}

/// `cons(head, tail)`: a list if `tail` is a list whose elements share a
/// domain with `head`, `Wrong` otherwise.
pub fn cons_value(head: Value, tail: Value) -> Value {
    if head == Value::Wrong {
        return Value::Wrong;
    }
    match dom(&tail) {
        DomainTag::Sym(n, elems) if n.as_str() == LIST => {
            if meet(&dom(&head), &elems[0]).is_some() {
                Value::Cons(Box::new(head), Box::new(tail))
            } else {
                Value::Wrong
            }
        }
        _ => Value::Wrong,
    }
}

/// Three-valued equality: a boolean when the domains meet, `Wrong` otherwise.
pub fn eq_values(v1: &Value, v2: &Value) -> Value {
    if meet(&dom(v1), &dom(v2)).is_some() {
        Value::Bool(v1 == v2)
    } else {
        Value::Wrong
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("variable `{0}` has no value in the state")]
    UnboundVariable(Name),
    #[error("membership is only decided for ground types, got `{0}`")]
    NonGroundType(TypeExpr),
    #[error("enumeration would exceed {cap} terms")]
    BudgetExceeded { cap: usize },
}

/// Values of variables.
pub type GroundState = BTreeMap<Name, Value>;

/// The fixed interpretation induced by a set of type definitions: `list` as
/// described above, other defined constructors as trees typed by their
/// definition, undeclared symbols as free trees.
#[derive(Clone, Copy, Debug)]
pub struct Interpretation<'a> {
    pub defs: &'a TypeDefSet,
}

impl<'a> Interpretation<'a> {
    pub fn new(defs: &'a TypeDefSet) -> Self {
        Interpretation { defs }
    }

    pub fn eval(&self, t: &Term, state: &GroundState) -> Result<Value, SemanticsError> {
        Ok(match t {
            Term::Var(v) => {
                state.get(v).cloned().ok_or_else(|| SemanticsError::UnboundVariable(v.clone()))?
            }
            Term::Const(lit) => self.constant(lit),
            Term::Compound(f, args) => {
                let children = args.iter().map(|a| self.eval(a, state)).collect::<Result<Vec<_>, _>>()?;
                self.apply(f, children)
            }
        })
    }

    fn constant(&self, lit: &Literal) -> Value {
        match lit {
            Literal::Int(n) => Value::Int(*n),
            Literal::Float(x) => Value::Flt(*x),
            Literal::Str(s) => Value::Str(s.clone()),
            Literal::Atom(a) if a.as_str() == NIL => Value::Nil,
            Literal::Atom(a) => match self.defs.summand_of(a) {
                Some((def, s)) if s.args().is_empty() => Value::Tree {
                    root: a.clone(),
                    children: Vec::new(),
                    domain: DomainTag::Sym(def.head.clone(), vec![DomainTag::Any; def.params.len()]),
                },
                _ => Value::Atm(a.clone()),
            },
        }
    }

    /// `I(f)(children)`.
    pub fn apply(&self, f: &Name, children: Vec<Value>) -> Value {
        if children.contains(&Value::Wrong) {
            return Value::Wrong;
        }
        if f.as_str() == CONS && children.len() == 2 {
            let mut it = children.into_iter();
            let (h, t) = (it.next().unwrap(), it.next().unwrap());
            return cons_value(h, t);
        }
        match self.defs.summand_of(f) {
            Some((def, s)) if s.args().len() == children.len() => {
                let mut binding: BTreeMap<Name, DomainTag> = BTreeMap::new();
                for (pattern, child) in s.args().iter().zip(&children) {
                    if !self.match_pattern(pattern, &dom(child), &mut binding) {
                        return Value::Wrong;
                    }
                }
                let params =
                    def.params.iter().map(|p| binding.get(p).cloned().unwrap_or(DomainTag::Any)).collect();
                Value::Tree { root: f.clone(), children, domain: DomainTag::Sym(def.head.clone(), params) }
            }
            _ => {
                let domain = DomainTag::Sym(implicit_type_symbol(f), children.iter().map(dom).collect());
                Value::Tree { root: f.clone(), children, domain }
            }
        }
    }

    /// Matches a summand argument type against a child's domain, refining
    /// the parameter domains by meet.
    fn match_pattern(
        &self,
        pattern: &TypeExpr,
        tag: &DomainTag,
        binding: &mut BTreeMap<Name, DomainTag>,
    ) -> bool {
        match pattern {
            TypeExpr::Var(a) => {
                let current = binding.get(a).cloned().unwrap_or(DomainTag::Any);
                match meet(&current, tag) {
                    Some(m) => {
                        binding.insert(a.clone(), m);
                        true
                    }
                    None => false,
                }
            }
            TypeExpr::Base(b) => meet(&DomainTag::Base(*b), tag).is_some(),
            TypeExpr::Bool => meet(&DomainTag::Bool, tag).is_some(),
            TypeExpr::Sym(n, args) => match tag {
                DomainTag::Any => args.iter().all(|a| self.match_pattern(a, &DomainTag::Any, binding)),
                DomainTag::Sym(m, targs) if m == n && targs.len() == args.len() => {
                    args.iter().zip(targs).all(|(a, t)| self.match_pattern(a, t, binding))
                }
                _ => false,
            },
            // A type term in argument position: only its owning type is checked.
            TypeExpr::Ctor(c, _) => match self.defs.summand_of(c) {
                Some((def, _)) => {
                    matches!(tag, DomainTag::Any) || matches!(tag, DomainTag::Sym(m, _) if *m == def.head)
                }
                None => false,
            },
        }
    }

    /// `v ∈ T⟦τ⟧` for ground `τ`.
    pub fn member(&self, v: &Value, ty: &TypeExpr) -> Result<bool, SemanticsError> {
        if !ty.is_ground() {
            return Err(SemanticsError::NonGroundType(ty.clone()));
        }
        Ok(self.member_ground(v, ty))
    }

    fn member_ground(&self, v: &Value, ty: &TypeExpr) -> bool {
        match (ty, v) {
            (_, Value::Wrong) => false,
            (TypeExpr::Base(BaseType::Int), Value::Int(_))
            | (TypeExpr::Base(BaseType::Float), Value::Flt(_))
            | (TypeExpr::Base(BaseType::String), Value::Str(_))
            | (TypeExpr::Base(BaseType::Atom), Value::Atm(_))
            | (TypeExpr::Bool, Value::Bool(_)) => true,
            (TypeExpr::Sym(n, args), Value::Nil) => n.as_str() == LIST && args.len() == 1,
            (TypeExpr::Sym(n, args), Value::Cons(h, t)) if n.as_str() == LIST && args.len() == 1 => {
                self.member_ground(h, &args[0]) && self.member_ground(t, ty)
            }
            (TypeExpr::Sym(n, args), Value::Tree { root, children, .. }) => {
                if let Some(f) = implicit_functor(n) {
                    return f == root.as_str()
                        && args.len() == children.len()
                        && children.iter().zip(args).all(|(c, a)| self.member_ground(c, a));
                }
                let Some(def) = self.defs.get(n) else { return false };
                let Some((owner, summand)) = self.defs.summand_of(root) else { return false };
                if owner.head != def.head || def.params.len() != args.len() {
                    return false;
                }
                let type_unifier = crate::syntax::TypeSubst::from_pairs(
                    def.params.iter().cloned().zip(args.iter().cloned()),
                );
                summand.args().len() == children.len()
                    && children
                        .iter()
                        .zip(summand.args())
                        .all(|(c, a)| self.member_ground(c, &type_unifier.apply(a)))
            }
            (TypeExpr::Ctor(c, args), Value::Nil) => c.as_str() == NIL && args.is_empty(),
            (TypeExpr::Ctor(c, args), Value::Cons(h, t)) => {
                c.as_str() == CONS
                    && args.len() == 2
                    && self.member_ground(h, &args[0])
                    && self.member_ground(t, &args[1])
            }
            (TypeExpr::Ctor(c, args), Value::Tree { root, children, .. }) => {
                c == root
                    && args.len() == children.len()
                    && children.iter().zip(args).all(|(v, a)| self.member_ground(v, a))
            }
            _ => false,
        }
    }
}

/// Constructors available for enumeration.
#[derive(Clone, Debug, Default)]
pub struct EnumSignature {
    /// Atom constants, `[]` included if wanted.
    pub atoms: Vec<Name>,
    pub functions: Vec<(Name, usize)>,
}

/// Literal constants available for enumeration.
#[derive(Clone, Debug)]
pub struct LiteralPool {
    pub ints: Vec<i64>,
    pub floats: Vec<f64>,
    pub strings: Vec<String>,
}

impl Default for LiteralPool {
    fn default() -> Self {
        LiteralPool { ints: vec![0, 1], floats: vec![0.5], strings: vec!["a".into()] }
    }
}

impl LiteralPool {
    pub fn empty() -> Self {
        LiteralPool { ints: Vec::new(), floats: Vec::new(), strings: Vec::new() }
    }
}

pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// Every ground term of depth at most `depth` (constants have depth 0),
/// each exactly once, shallower terms first.
pub fn enumerate_ground_terms(
    sig: &EnumSignature,
    depth: usize,
    pool: &LiteralPool,
    cap: usize,
) -> Result<Vec<Term>, SemanticsError> {
    let mut constants: Vec<Term> = pool.ints.iter().map(|&n| Term::int(n)).collect();
    constants.extend(pool.floats.iter().map(|&x| Term::float(x)));
    constants.extend(pool.strings.iter().map(|s| Term::string(s)));
    constants.extend(sig.atoms.iter().map(|a| Term::atom(a)));
    if constants.len() > cap {
        return Err(SemanticsError::BudgetExceeded { cap });
    }

    let mut level = constants.clone();
    for _ in 0..depth {
        let mut count = constants.len() as u128;
        for (_, n) in &sig.functions {
            count += (level.len() as u128).pow(*n as u32);
        }
        if count > cap as u128 {
            return Err(SemanticsError::BudgetExceeded { cap });
        }
        let mut next = constants.clone();
        for (f, n) in &sig.functions {
            for args in tuples(&level, *n) {
                next.push(Term::Compound(f.clone(), args));
            }
        }
        level = next;
    }
    Ok(level)
}

fn tuples(items: &[Term], n: usize) -> Vec<Vec<Term>> {
    let mut out: Vec<Vec<Term>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                items.iter().map(move |t| {
                    let mut v = prefix.clone();
                    v.push(t.clone());
                    v
                })
            })
            .collect();
    }
    out
}
