//! Concrete syntax for terms, types and schemes. Output re-parses to the same
//! tree: lists are re-sugared, atoms are quoted when they are not plain
//! identifiers, floats always carry a `.` or an exponent.

use std::fmt;

use crate::syntax::{
    BaseType, FuncType, Literal, Name, SchemeBody, Subst, Term, TypeExpr, TypeScheme, TypeSubst, CONS, NIL,
};

pub fn literal_to_string(lit: &Literal) -> String {
    match lit {
        Literal::Int(n) => n.to_string(),
        Literal::Float(x) => format!("{:?}", x.0),
        Literal::Str(s) => {
            let mut out = String::with_capacity(s.len() + 2);
            out.push('"');
            for c in s.chars() {
                match c {
                    '"' => out.push_str("\\\""),
                    '\\' => out.push_str("\\\\"),
                    '\n' => out.push_str("\\n"),
                    '\t' => out.push_str("\\t"),
                    c => out.push(c),
                }
            }
            out.push('"');
            out
        }
        Literal::Atom(a) => atom_to_string(a),
    }
}

fn is_plain_atom(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_lowercase() => chars.all(is_ident_char),
        _ => false,
    }
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == crate::env::IMPLICIT_MARK
}

/// An atom as it must be written in source.
pub fn atom_to_string(a: &str) -> String {
    if a == NIL || is_plain_atom(a) {
        return a.to_string();
    }
    let mut out = String::with_capacity(a.len() + 2);
    out.push('\'');
    for c in a.chars() {
        match c {
            '\'' => out.push_str("\\'"),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('\'');
    out
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

fn is_plus(t: &Term) -> bool {
    matches!(t, Term::Compound(f, args) if &**f == "+" && args.len() == 2)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(lit) => f.write_str(&literal_to_string(lit)),
            Term::Compound(name, args) if &**name == CONS && args.len() == 2 => {
                write!(f, "[{}", args[0])?;
                let mut tail = &args[1];
                loop {
                    match tail {
                        Term::Compound(n, a) if &**n == CONS && a.len() == 2 => {
                            write!(f, ",{}", a[0])?;
                            tail = &a[1];
                        }
                        Term::Const(l) if l.is_nil() => break,
                        other => {
                            write!(f, "|{other}")?;
                            break;
                        }
                    }
                }
                f.write_str("]")
            }
            Term::Compound(_, args) if is_plus(self) => {
                write!(f, "{} + ", args[0])?;
                if is_plus(&args[1]) {
                    write!(f, "({})", args[1])
                } else {
                    write!(f, "{}", args[1])
                }
            }
            Term::Compound(name, args) => {
                f.write_str(&atom_to_string(name))?;
                write_args(f, args)
            }
        }
    }
}

/// A goal as written in a clause body or query: `=` and `is` are infix.
pub fn goal_to_string(g: &Term) -> String {
    match g {
        Term::Compound(op, args) if args.len() == 2 && (&**op == "=" || &**op == "is") => {
            format!("{} {} {}", args[0], op, args[1])
        }
        other => other.to_string(),
    }
}

fn write_type_app(f: &mut fmt::Formatter<'_>, name: &str, args: &[TypeExpr]) -> fmt::Result {
    f.write_str(&atom_to_string(name))?;
    if args.is_empty() {
        return Ok(());
    }
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

impl fmt::Display for BaseType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeExpr::Var(v) => f.write_str(v),
            TypeExpr::Base(b) => write!(f, "{b}"),
            TypeExpr::Bool => f.write_str("bool"),
            TypeExpr::Sym(n, args) | TypeExpr::Ctor(n, args) => write_type_app(f, n, args),
        }
    }
}

impl fmt::Display for FuncType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.domain.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, " -> {}", self.codomain)
    }
}

impl fmt::Display for SchemeBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeBody::Type(t) => write!(f, "{t}"),
            SchemeBody::Func(t) => write!(f, "{t}"),
        }
    }
}

impl fmt::Display for TypeScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.generics.is_empty() {
            f.write_str("forall ")?;
            for (i, g) in self.generics.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                f.write_str(g)?;
            }
            f.write_str(". ")?;
        }
        write!(f, "{}", self.body)
    }
}

fn write_bindings<'a, V: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    pairs: impl Iterator<Item = (&'a Name, V)>,
) -> fmt::Result {
    f.write_str("{")?;
    for (i, (v, t)) in pairs.enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{v} = {t}")?;
    }
    f.write_str("}")
}

impl fmt::Display for Subst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bindings(f, self.iter())
    }
}

impl fmt::Display for TypeSubst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bindings(f, self.iter())
    }
}

fn letter_name(i: usize) -> Name {
    let letter = (b'A' + (i % 26) as u8) as char;
    if i < 26 {
        Name::from(letter.to_string())
    } else {
        Name::from(format!("{letter}{}", i / 26))
    }
}

/// Renames the type variables of `types`, in order of first occurrence, to
/// `A`, `B`, ... so that typings print independently of fresh-name choice.
pub fn canonical_renaming<'a>(types: impl IntoIterator<Item = &'a TypeExpr>) -> TypeSubst {
    let mut order: Vec<Name> = Vec::new();
    for t in types {
        collect_ordered(t, &mut order);
    }
    TypeSubst::from_pairs(order.into_iter().enumerate().map(|(i, v)| (v, TypeExpr::Var(letter_name(i)))))
}

fn collect_ordered(t: &TypeExpr, out: &mut Vec<Name>) {
    match t {
        TypeExpr::Var(v) if !out.contains(v) => out.push(v.clone()),
        TypeExpr::Var(_) | TypeExpr::Base(_) | TypeExpr::Bool => {}
        _ => {
            for a in t.args() {
                collect_ordered(a, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_are_resugared() {
        let t = Term::list(vec![Term::int(1), Term::int(2)]);
        assert_eq!(t.to_string(), "[1,2]");
        let t = Term::cons(Term::var("X"), Term::var("T"));
        assert_eq!(t.to_string(), "[X|T]");
        assert_eq!(Term::nil().to_string(), "[]");
        let t = Term::cons(Term::int(1), Term::int(2));
        assert_eq!(t.to_string(), "[1|2]");
    }

    #[test]
    fn atoms_are_quoted_when_needed() {
        assert_eq!(Term::atom("a").to_string(), "a");
        assert_eq!(Term::atom("Hello").to_string(), "'Hello'");
        assert_eq!(Term::atom("it's").to_string(), "'it\\'s'");
        assert_eq!(Term::app("=", vec![Term::int(1), Term::int(2)]).to_string(), "'='(1,2)");
    }

    #[test]
    fn floats_keep_a_point() {
        assert_eq!(Term::float(1.0).to_string(), "1.0");
        assert_eq!(Term::float(0.5).to_string(), "0.5");
    }

    #[test]
    fn plus_is_infix_and_left_associative() {
        let a = Term::app("+", vec![Term::app("+", vec![Term::int(1), Term::int(2)]), Term::int(3)]);
        assert_eq!(a.to_string(), "1 + 2 + 3");
        let b = Term::app("+", vec![Term::int(1), Term::app("+", vec![Term::int(2), Term::int(3)])]);
        assert_eq!(b.to_string(), "1 + (2 + 3)");
    }

    #[test]
    fn types_and_schemes() {
        let a = TypeExpr::var("A");
        let f = FuncType::new(vec![a.clone(), TypeExpr::list(a.clone())], TypeExpr::list(a));
        assert_eq!(f.to_string(), "A * list(A) -> list(A)");
        let s = TypeScheme::generalize(SchemeBody::Func(f));
        assert_eq!(s.to_string(), "forall A. A * list(A) -> list(A)");
        assert_eq!(TypeExpr::ctor(NIL, vec![]).to_string(), "[]");
    }

    #[test]
    fn canonical_names_follow_first_occurrence() {
        let t = TypeExpr::sym("pair", vec![TypeExpr::var("_T9"), TypeExpr::var("_T2")]);
        let renaming = canonical_renaming([&t]);
        assert_eq!(renaming.apply(&t).to_string(), "pair(A, B)");
    }
}
