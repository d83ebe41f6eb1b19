#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use regunify::syntax::Literal;
use regunify::{derive_signatures, parse_typedefs, validate, SignatureEnv, Term, TypeDefSet, TypeExpr};

pub const USER_TYPES: &str = "nat --> zero + s(nat).\ntree(A) --> leaf + node(tree(A), A, tree(A)).";

pub fn user_defs() -> TypeDefSet {
    validate(parse_typedefs(USER_TYPES).unwrap()).unwrap()
}

pub fn env_for(defs: &TypeDefSet) -> SignatureEnv {
    derive_signatures(defs, &[]).unwrap()
}

/// First-order trees for the reference unifier: a variable or a labelled node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tree {
    V(String),
    N(String, Vec<Tree>),
}

pub fn term_tree(t: &Term) -> Tree {
    match t {
        Term::Var(v) => Tree::V(v.to_string()),
        Term::Const(lit) => Tree::N(format!("k:{lit:?}"), Vec::new()),
        Term::Compound(f, args) => {
            Tree::N(format!("f:{f}/{}", args.len()), args.iter().map(term_tree).collect())
        }
    }
}

pub fn type_tree(t: &TypeExpr) -> Tree {
    match t {
        TypeExpr::Var(v) => Tree::V(v.to_string()),
        TypeExpr::Base(b) => Tree::N(format!("b:{b:?}"), Vec::new()),
        TypeExpr::Bool => Tree::N("bool".into(), Vec::new()),
        TypeExpr::Sym(s, args) => {
            Tree::N(format!("s:{s}/{}", args.len()), args.iter().map(type_tree).collect())
        }
        TypeExpr::Ctor(c, args) => {
            Tree::N(format!("c:{c}/{}", args.len()), args.iter().map(type_tree).collect())
        }
    }
}

fn walk<'a>(mut t: &'a Tree, s: &'a BTreeMap<String, Tree>) -> &'a Tree {
    while let Tree::V(v) = t {
        match s.get(v) {
            Some(next) => t = next,
            None => break,
        }
    }
    t
}

fn occurs(v: &str, t: &Tree, s: &BTreeMap<String, Tree>) -> bool {
    match walk(t, s) {
        Tree::V(w) => w == v,
        Tree::N(_, args) => args.iter().any(|a| occurs(v, a, s)),
    }
}

/// Robinson unification with occurs check over triangular substitutions.
pub fn robinson(pairs: Vec<(Tree, Tree)>) -> bool {
    let mut s: BTreeMap<String, Tree> = BTreeMap::new();
    let mut todo = pairs;
    while let Some((a, b)) = todo.pop() {
        let (a, b) = (walk(&a, &s).clone(), walk(&b, &s).clone());
        match (a, b) {
            (Tree::V(x), Tree::V(y)) if x == y => {}
            (Tree::V(x), t) | (t, Tree::V(x)) => {
                if occurs(&x, &t, &s) {
                    return false;
                }
                s.insert(x, t);
            }
            (Tree::N(f, xs), Tree::N(g, ys)) => {
                if f != g || xs.len() != ys.len() {
                    return false;
                }
                todo.extend(xs.into_iter().zip(ys));
            }
        }
    }
    true
}

/// Constructors available to the random generator.
pub struct Vocabulary {
    pub atoms: Vec<Term>,
    pub functors: Vec<(&'static str, usize)>,
    pub vars: Vec<&'static str>,
}

impl Vocabulary {
    pub fn plain() -> Self {
        Vocabulary {
            atoms: vec![
                Term::int(0),
                Term::int(1),
                Term::atom("a"),
                Term::atom("b"),
                Term::nil(),
                Term::float(0.5),
                Term::string("s"),
            ],
            functors: vec![("cons", 2), ("f", 1), ("g", 2)],
            vars: vec!["X", "Y", "Z", "W"],
        }
    }

    /// Naturals over the user types, so most clashes are term clashes
    /// within one type rather than type errors.
    pub fn single_sorted() -> Self {
        Vocabulary { atoms: vec![Term::atom("zero")], functors: vec![("s", 1)], vars: vec!["X", "Y", "Z"] }
    }

    pub fn with_user_types() -> Self {
        let mut v = Self::plain();
        v.atoms.extend([Term::atom("zero"), Term::atom("leaf")]);
        v.functors.extend([("s", 1), ("node", 3)]);
        v
    }
}

pub fn random_term<R: Rng>(rng: &mut R, voc: &Vocabulary, depth: usize) -> Term {
    let roll: f64 = rng.gen();
    if depth == 0 || roll < 0.35 {
        if rng.gen_bool(0.4) {
            Term::var(voc.vars[rng.gen_range(0..voc.vars.len())])
        } else {
            voc.atoms[rng.gen_range(0..voc.atoms.len())].clone()
        }
    } else {
        let (f, n) = voc.functors[rng.gen_range(0..voc.functors.len())];
        Term::app(f, (0..n).map(|_| random_term(rng, voc, depth - 1)).collect())
    }
}

/// Replaces random subterms of `t`, keeping most of its shape.
pub fn mutate<R: Rng>(rng: &mut R, voc: &Vocabulary, t: &Term, depth: usize) -> Term {
    if rng.gen_bool(0.2) {
        return random_term(rng, voc, depth.min(2));
    }
    match t {
        Term::Compound(f, args) => Term::Compound(
            f.clone(),
            args.iter().map(|a| mutate(rng, voc, a, depth.saturating_sub(1))).collect(),
        ),
        other => other.clone(),
    }
}

pub fn random_pair<R: Rng>(rng: &mut R, voc: &Vocabulary) -> (Term, Term) {
    let l = random_term(rng, voc, 4);
    let r = if rng.gen_bool(0.6) { mutate(rng, voc, &l, 4) } else { random_term(rng, voc, 4) };
    (l, r)
}

pub fn is_literal(t: &Term) -> bool {
    matches!(t, Term::Const(Literal::Int(_) | Literal::Float(_) | Literal::Str(_)))
}
