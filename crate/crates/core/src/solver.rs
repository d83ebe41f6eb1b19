//! Ordered rewriting of `(C, T)` to a pair of most general unifiers,
//! `false`, or `wrong`.
//!
//! Rules 1–6 rewrite the type constraints `T`, rules 7–12 mirror them on the
//! term constraints `C`. A rule only fires when no lower-numbered rule
//! applies anywhere, and within a rule the leftmost matching constraint is
//! chosen, so every run is deterministic. As a consequence the type phase
//! reaches its fixpoint before any term rule fires and `wrong` always takes
//! precedence over `false`.
//!
//! | rule | on          | action                                             |
//! |------|-------------|----------------------------------------------------|
//! | 1/7  | f(..)=f(..) | decompose into argument equations, in place        |
//! | 2/8  | x = x       | delete                                             |
//! | 3/9  | f(..)=g(..) | `wrong` / `false` (different symbol or arity)      |
//! | 4/10 | t = v       | orient to v = t when t is not a variable           |
//! | 5/11 | v = t       | substitute t for v in the rest, if v ∉ t and v occurs there |
//! | 6/12 | v = t       | `wrong` / `false` when v occurs in t               |
//!
//! Rules 5 and 11 carry the extra guard that the variable occurs elsewhere;
//! without it a solved binding would be rewritten to itself forever.

use std::collections::BTreeMap;
use std::fmt;

use crate::constraints::{
    gen_equation, gen_term, generic_context, ConstraintState, FreshSupply, GenError, TermConstraint,
    TypeConstraint,
};
use crate::env::SignatureEnv;
use crate::syntax::{HasVars, Literal, Name, Subst, Term, TypeExpr, TypeSubst};
use crate::typing::Context;

/// Rule numbers 1 to 12, as listed in the module docs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule(pub u8);

impl Rule {
    pub fn describe(self) -> &'static str {
        match self.0 {
            1 => "decompose type",
            2 => "delete trivial type equation",
            3 => "type clash",
            4 => "orient type variable",
            5 => "eliminate type variable",
            6 => "type occurs check",
            7 => "decompose term",
            8 => "delete trivial equation",
            9 => "symbol clash",
            10 => "orient variable",
            11 => "eliminate variable",
            12 => "occurs check",
            _ => "unknown rule",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule{}", self.0)
    }
}

/// The constraint a rule acted on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Acted {
    Type(TypeConstraint),
    Term(TermConstraint),
}

impl fmt::Display for Acted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Acted::Type(c) => write!(f, "{c}"),
            Acted::Term(c) => write!(f, "{c}"),
        }
    }
}

/// One rewrite: the rule, what it acted on, and the resulting state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: Rule,
    pub acted_on: Acted,
    pub state: ConstraintState,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ==> {}", self.rule, self.acted_on, self.state)
    }
}

/// Why a run ended in `wrong` or `false`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    TypeClash(TypeConstraint),
    TypeOccurs(TypeConstraint),
    TermClash(TermConstraint),
    TermOccurs(TermConstraint),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::TypeClash(c) => write!(f, "type clash {c}"),
            Witness::TypeOccurs(c) => write!(f, "cyclic type {c}"),
            Witness::TermClash(c) => write!(f, "clash {c}"),
            Witness::TermOccurs(c) => write!(f, "cyclic term {c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    /// Both `C` and `T` reached normal form.
    Solved { unifier: Subst, type_unifier: TypeSubst },
    /// `T` is solvable with `type_unifier`, `C` has no unifier.
    False { type_unifier: TypeSubst, witness: Witness },
    /// `T` has no unifier.
    Wrong { witness: Witness },
}

impl SolveResult {
    pub fn kind(&self) -> OutcomeKind {
        match self {
            SolveResult::Solved { .. } => OutcomeKind::Solved,
            SolveResult::False { .. } => OutcomeKind::False,
            SolveResult::Wrong { .. } => OutcomeKind::Wrong,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OutcomeKind {
    Solved,
    False,
    Wrong,
}

impl fmt::Display for OutcomeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutcomeKind::Solved => "solved",
            OutcomeKind::False => "false",
            OutcomeKind::Wrong => "wrong",
        })
    }
}

/// Result of a single [`step`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Rewrote(TraceStep),
    Done,
    Wrong(Witness),
    False(Witness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub result: SolveResult,
    /// Number of rewrites performed, failing rewrites included.
    pub steps: usize,
    pub trace: Vec<TraceStep>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("rewrite budget of {0} steps exhausted")]
pub struct BudgetExceeded(pub usize);

enum Fired {
    Rewrote(Rule, Acted),
    Wrong(Witness),
    False(Witness),
    Done,
}

/// Applies the lowest-numbered applicable rule once.
pub fn step(s: &ConstraintState) -> StepOutcome {
    let mut next = s.clone();
    match fire(&mut next) {
        Fired::Rewrote(rule, acted_on) => StepOutcome::Rewrote(TraceStep { rule, acted_on, state: next }),
        Fired::Wrong(w) => StepOutcome::Wrong(w),
        Fired::False(w) => StepOutcome::False(w),
        Fired::Done => StepOutcome::Done,
    }
}

/// Rewrites to a fixpoint and reads off the unifiers.
pub fn solve(s: ConstraintState, trace: bool) -> Solution {
    solve_bounded(s, trace, usize::MAX).expect("unbounded solve cannot exhaust its budget")
}

/// As [`solve`], giving up after `max_steps` rewrites.
pub fn solve_bounded(
    mut s: ConstraintState,
    trace: bool,
    max_steps: usize,
) -> Result<Solution, BudgetExceeded> {
    let mut steps = 0;
    let mut log = Vec::new();
    loop {
        if steps >= max_steps {
            return Err(BudgetExceeded(max_steps));
        }
        let fired = fire(&mut s);
        let result = match fired {
            Fired::Done => {
                return Ok(Solution {
                    result: SolveResult::Solved {
                        unifier: read_subst(&s.terms),
                        type_unifier: read_type_subst(&s.types),
                    },
                    steps,
                    trace: log,
                })
            }
            Fired::Rewrote(rule, acted_on) => {
                steps += 1;
                if trace {
                    log.push(TraceStep { rule, acted_on, state: s.clone() });
                }
                continue;
            }
            Fired::Wrong(witness) => SolveResult::Wrong { witness },
            Fired::False(witness) => SolveResult::False { type_unifier: read_type_subst(&s.types), witness },
        };
        return Ok(Solution { result, steps: steps + 1, trace: log });
    }
}

fn fire(s: &mut ConstraintState) -> Fired {
    if let Some(f) = fire_type_rule(&mut s.types) {
        return f;
    }
    fire_term_rule(&mut s.terms).unwrap_or(Fired::Done)
}

fn fire_type_rule(types: &mut Vec<TypeConstraint>) -> Option<Fired> {
    use TypeExpr::Var;

    // 1: f(τ..) ≐ f(τ'..)
    if let Some(i) = types.iter().position(|c| {
        let (a, b) = (c.lhs.head(), c.rhs.head());
        a.is_some() && a == b
    }) {
        let c = types[i].clone();
        let parts =
            c.lhs.args().iter().zip(c.rhs.args()).map(|(a, b)| TypeConstraint::new(a.clone(), b.clone()));
        types.splice(i..=i, parts);
        return Some(Fired::Rewrote(Rule(1), Acted::Type(c)));
    }
    // 2: τ ≐ τ
    if let Some(i) = types.iter().position(|c| c.lhs == c.rhs) {
        let c = types.remove(i);
        return Some(Fired::Rewrote(Rule(2), Acted::Type(c)));
    }
    // 3: f(..) ≐ g(..)
    if let Some(c) = types.iter().find(|c| !c.lhs.is_var() && !c.rhs.is_var() && c.lhs.head() != c.rhs.head())
    {
        return Some(Fired::Wrong(Witness::TypeClash(c.clone())));
    }
    // 4: τ ≐ α
    if let Some(i) = types.iter().position(|c| !c.lhs.is_var() && c.rhs.is_var()) {
        let c = types[i].clone();
        types[i] = TypeConstraint::new(c.rhs.clone(), c.lhs.clone());
        return Some(Fired::Rewrote(Rule(4), Acted::Type(c)));
    }
    // 5: α ≐ τ, α ∉ τ, α occurs in Rest
    let eliminable = |i: usize, c: &TypeConstraint, types: &[TypeConstraint]| {
        let Var(a) = &c.lhs else { return false };
        !c.rhs.occurs(a)
            && types.iter().enumerate().any(|(j, d)| j != i && (d.lhs.occurs(a) || d.rhs.occurs(a)))
    };
    if let Some(i) = (0..types.len()).find(|&i| eliminable(i, &types[i], types)) {
        let c = types[i].clone();
        let Var(a) = &c.lhs else { unreachable!() };
        for (j, d) in types.iter_mut().enumerate() {
            if j != i {
                d.lhs = replace_tvar(&d.lhs, a, &c.rhs);
                d.rhs = replace_tvar(&d.rhs, a, &c.rhs);
            }
        }
        return Some(Fired::Rewrote(Rule(5), Acted::Type(c)));
    }
    // 6: α ≐ τ with α in τ
    if let Some(c) = types.iter().find(|c| matches!(&c.lhs, Var(a) if c.rhs.occurs(a))) {
        return Some(Fired::Wrong(Witness::TypeOccurs(c.clone())));
    }
    None
}

#[derive(PartialEq, Eq)]
enum TermHead<'a> {
    Lit(&'a Literal),
    App(&'a str, usize),
}

fn term_head(t: &Term) -> Option<TermHead<'_>> {
    match t {
        Term::Var(_) => None,
        Term::Const(l) => Some(TermHead::Lit(l)),
        Term::Compound(f, args) => Some(TermHead::App(f, args.len())),
    }
}

fn term_args(t: &Term) -> &[Term] {
    match t {
        Term::Compound(_, args) => args,
        _ => &[],
    }
}

fn fire_term_rule(terms: &mut Vec<TermConstraint>) -> Option<Fired> {
    // 7
    if let Some(i) = terms.iter().position(|c| {
        let (a, b) = (term_head(&c.lhs), term_head(&c.rhs));
        a.is_some() && a == b
    }) {
        let c = terms[i].clone();
        let parts = term_args(&c.lhs)
            .iter()
            .zip(term_args(&c.rhs))
            .map(|(a, b)| TermConstraint::new(a.clone(), b.clone()));
        terms.splice(i..=i, parts);
        return Some(Fired::Rewrote(Rule(7), Acted::Term(c)));
    }
    // 8
    if let Some(i) = terms.iter().position(|c| c.lhs == c.rhs) {
        let c = terms.remove(i);
        return Some(Fired::Rewrote(Rule(8), Acted::Term(c)));
    }
    // 9
    if let Some(c) =
        terms.iter().find(|c| !c.lhs.is_var() && !c.rhs.is_var() && term_head(&c.lhs) != term_head(&c.rhs))
    {
        return Some(Fired::False(Witness::TermClash(c.clone())));
    }
    // 10
    if let Some(i) = terms.iter().position(|c| !c.lhs.is_var() && c.rhs.is_var()) {
        let c = terms[i].clone();
        terms[i] = TermConstraint::new(c.rhs.clone(), c.lhs.clone());
        return Some(Fired::Rewrote(Rule(10), Acted::Term(c)));
    }
    // 11
    let eliminable = |i: usize, c: &TermConstraint, terms: &[TermConstraint]| {
        let Term::Var(x) = &c.lhs else { return false };
        !c.rhs.occurs(x)
            && terms.iter().enumerate().any(|(j, d)| j != i && (d.lhs.occurs(x) || d.rhs.occurs(x)))
    };
    if let Some(i) = (0..terms.len()).find(|&i| eliminable(i, &terms[i], terms)) {
        let c = terms[i].clone();
        let Term::Var(x) = &c.lhs else { unreachable!() };
        for (j, d) in terms.iter_mut().enumerate() {
            if j != i {
                d.lhs = replace_var(&d.lhs, x, &c.rhs);
                d.rhs = replace_var(&d.rhs, x, &c.rhs);
            }
        }
        return Some(Fired::Rewrote(Rule(11), Acted::Term(c)));
    }
    // 12
    if let Some(c) = terms.iter().find(|c| matches!(&c.lhs, Term::Var(x) if c.rhs.occurs(x))) {
        return Some(Fired::False(Witness::TermOccurs(c.clone())));
    }
    None
}

fn replace_tvar(t: &TypeExpr, v: &str, by: &TypeExpr) -> TypeExpr {
    if !t.occurs(v) {
        return t.clone();
    }
    match t {
        TypeExpr::Var(_) => by.clone(),
        TypeExpr::Sym(s, args) => {
            TypeExpr::Sym(s.clone(), args.iter().map(|a| replace_tvar(a, v, by)).collect())
        }
        TypeExpr::Ctor(c, args) => {
            TypeExpr::Ctor(c.clone(), args.iter().map(|a| replace_tvar(a, v, by)).collect())
        }
        other => other.clone(),
    }
}

fn replace_var(t: &Term, v: &str, by: &Term) -> Term {
    if !t.occurs(v) {
        return t.clone();
    }
    match t {
        Term::Var(_) => by.clone(),
        Term::Compound(f, args) => {
            Term::Compound(f.clone(), args.iter().map(|a| replace_var(a, v, by)).collect())
        }
        other => other.clone(),
    }
}

fn read_subst(terms: &[TermConstraint]) -> Subst {
    Subst::from_pairs(terms.iter().map(|c| match &c.lhs {
        Term::Var(x) => (x.clone(), c.rhs.clone()),
        other => panic!("term constraints not in normal form: {other} = {}", c.rhs),
    }))
}

fn read_type_subst(types: &[TypeConstraint]) -> TypeSubst {
    TypeSubst::from_pairs(types.iter().map(|c| match &c.lhs {
        TypeExpr::Var(a) => (a.clone(), c.rhs.clone()),
        other => panic!("type constraints not in normal form: {other} =. {}", c.rhs),
    }))
}

/// Full report of a typed unification of two terms.
#[derive(Clone, Debug)]
pub struct UnifyReport {
    /// The generic context Γ used for generation.
    pub context: Context,
    /// The generated `(C, T)` before solving.
    pub constraints: ConstraintState,
    pub outcome: UnifyOutcome,
    pub steps: usize,
    pub trace: Vec<TraceStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnifyOutcome {
    Solved {
        unifier: Subst,
        type_unifier: TypeSubst,
        /// μ(Γ): the principal typing of the equation, whose type is `bool`.
        principal: Context,
        /// μ(α_X) for every variable X of the equation.
        var_types: BTreeMap<Name, TypeExpr>,
    },
    False {
        type_unifier: TypeSubst,
        witness: Witness,
    },
    Wrong {
        witness: Witness,
    },
}

impl UnifyOutcome {
    pub fn kind(&self) -> OutcomeKind {
        match self {
            UnifyOutcome::Solved { .. } => OutcomeKind::Solved,
            UnifyOutcome::False { .. } => OutcomeKind::False,
            UnifyOutcome::Wrong { .. } => OutcomeKind::Wrong,
        }
    }
}

/// Unifies `t1` and `t2` under Δ: generic context, constraint generation, solving.
pub fn typed_unify(t1: &Term, t2: &Term, env: &SignatureEnv, trace: bool) -> Result<UnifyReport, GenError> {
    let mut fresh = FreshSupply::new();
    let context = generic_context(t1, t2, &mut fresh);
    let constraints = gen_equation(&context, env, t1, t2, &mut fresh)?;
    let solution = solve(constraints.clone(), trace);
    let outcome = match solution.result {
        SolveResult::Solved { unifier, type_unifier } => {
            let principal = context.apply(&type_unifier);
            let var_types = principal.iter().map(|(v, t)| (v.clone(), t.clone())).collect();
            UnifyOutcome::Solved { unifier, type_unifier, principal, var_types }
        }
        SolveResult::False { type_unifier, witness } => UnifyOutcome::False { type_unifier, witness },
        SolveResult::Wrong { witness } => UnifyOutcome::Wrong { witness },
    };
    Ok(UnifyReport { context, constraints, outcome, steps: solution.steps, trace: solution.trace })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Principal {
    Typed { context: Context, ty: TypeExpr },
    Wrong { witness: Witness },
}

/// The principal typing `(Γ, τ)` of a term, or `wrong` if it has none.
pub fn principal_typing(t: &Term, env: &SignatureEnv) -> Result<Principal, GenError> {
    let mut fresh = FreshSupply::new();
    let mut context = Context::new();
    crate::constraints::extend_generic(&mut context, t, &mut fresh);
    let (ty, constraints) = gen_term(&context, env, t, &mut fresh)?;
    Ok(match solve(constraints, false).result {
        SolveResult::Solved { type_unifier, .. } => Principal::Typed {
            context: context.apply(&type_unifier).restrict(&t.free_vars()),
            ty: type_unifier.apply(&ty),
        },
        SolveResult::Wrong { witness } => Principal::Wrong { witness },
        SolveResult::False { .. } => unreachable!("pure terms generate no term constraints"),
    })
}
