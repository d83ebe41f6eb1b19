//! Ground coherence between the solver and the value semantics: for ground
//! `t1`, `t2`, `solved`, `false` and `wrong` must coincide with `eq` being
//! true, false and wrong on their values.

use std::fmt;

use crate::env::{SignatureEnv, TypeDefSet};
use crate::semantics::{eq_values, EnumSignature, GroundState, Interpretation, LiteralPool, Value};
use crate::solver::{typed_unify, OutcomeKind};
use crate::syntax::{Name, Term, CONS, NIL};

/// The signature `{0, 1, a, [], cons/2, f/1}`.
pub fn small_signature() -> (EnumSignature, LiteralPool) {
    (
        EnumSignature {
            atoms: vec![Name::new("a"), Name::new(NIL)],
            functions: vec![(Name::new(CONS), 2), (Name::new("f"), 1)],
        },
        LiteralPool { ints: vec![0, 1], ..LiteralPool::empty() },
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub lhs: Term,
    pub rhs: Term,
    pub solver: OutcomeKind,
    pub semantic: Value,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sem = match &self.semantic {
            Value::Bool(true) => "true".to_string(),
            Value::Bool(false) => "false".to_string(),
            other => format!("{other:?}").to_lowercase(),
        };
        write!(f, "{} = {}: solver says {}, eq says {}", self.lhs, self.rhs, self.solver, sem)
    }
}

#[derive(Clone, Debug, Default)]
pub struct CoherenceReport {
    pub pairs: usize,
    pub solved: usize,
    pub false_: usize,
    pub wrong: usize,
    pub mismatches: Vec<Mismatch>,
}

/// Checks one ground pair; `None` when solver and semantics agree.
pub fn check_pair(
    t1: &Term,
    t2: &Term,
    env: &SignatureEnv,
    interp: Interpretation<'_>,
) -> (OutcomeKind, Option<Mismatch>) {
    let empty = GroundState::new();
    let v1 = interp.eval(t1, &empty).expect("ground term");
    let v2 = interp.eval(t2, &empty).expect("ground term");
    let semantic = eq_values(&v1, &v2);
    let solver = typed_unify(t1, t2, env, false).expect("default signatures").outcome.kind();
    let agree = matches!(
        (solver, &semantic),
        (OutcomeKind::Solved, Value::Bool(true))
            | (OutcomeKind::False, Value::Bool(false))
            | (OutcomeKind::Wrong, Value::Wrong)
    );
    let mismatch = (!agree).then(|| Mismatch { lhs: t1.clone(), rhs: t2.clone(), solver, semantic });
    (solver, mismatch)
}

/// Checks every pair produced by `pairs`.
pub fn check_pairs<'t>(
    pairs: impl IntoIterator<Item = (&'t Term, &'t Term)>,
    defs: &TypeDefSet,
    env: &SignatureEnv,
) -> CoherenceReport {
    let interp = Interpretation::new(defs);
    let mut report = CoherenceReport::default();
    for (t1, t2) in pairs {
        let (kind, mismatch) = check_pair(t1, t2, env, interp);
        report.pairs += 1;
        match kind {
            OutcomeKind::Solved => report.solved += 1,
            OutcomeKind::False => report.false_ += 1,
            OutcomeKind::Wrong => report.wrong += 1,
        }
        report.mismatches.extend(mismatch);
    }
    report
}
