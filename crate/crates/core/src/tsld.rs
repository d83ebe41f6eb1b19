//! Typed SLD resolution.
//!
//! Leftmost goal, clauses top-down, depth first, first answer only. Each
//! resolution attempt solves one constraint problem made of the goal's and
//! the head's predicate typings, one equation per argument pair, and the
//! type bindings accumulated so far along the branch. A failed attempt ends
//! its branch with one of three verdicts:
//!
//! * `wrong` when the types do not unify,
//! * `false` (final) when the terms clash and no other goal remains,
//! * `false` with remaining goals otherwise; such a branch proves nothing.
//!
//! The query answer is `yes` on the first success, else `no(wrong)` if any
//! branch went wrong, else `no(false)` if every branch failed finally, else
//! `no(?)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::constraints::{gen_term, ConstraintState, FreshSupply, GenError, TermConstraint, TypeConstraint};
use crate::env::{instantiate, SignatureEnv};
use crate::parse::SourceSpan;
use crate::print::goal_to_string;
use crate::solver::{solve, SolveResult, Witness};
use crate::syntax::{HasVars, Name, SchemeBody, Subst, Term, TypeExpr, TypeSubst};
use crate::typing::Context;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub head: Term,
    pub body: Vec<Term>,
    pub span: Option<SourceSpan>,
}

impl Clause {
    pub fn fact(head: Term) -> Self {
        Clause { head, body: Vec::new(), span: None }
    }

    pub fn rule(head: Term, body: Vec<Term>) -> Self {
        Clause { head, body, span: None }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        for (i, g) in self.body.iter().enumerate() {
            f.write_str(if i == 0 { " :- " } else { ", " })?;
            f.write_str(&goal_to_string(g))?;
        }
        f.write_str(".")
    }
}

/// Predicate name and arity of a goal or head.
pub fn predicate_key(atom: &Term) -> Option<(&str, usize)> {
    atom.functor()
}

fn atom_args(atom: &Term) -> &[Term] {
    match atom {
        Term::Compound(_, args) => args,
        _ => &[],
    }
}

/// Renames apart: `X` becomes `X_k` for a `k` unused elsewhere.
#[derive(Clone, Debug, Default)]
pub struct RenameSupply {
    next: u64,
    avoid: BTreeSet<Name>,
}

impl RenameSupply {
    pub fn new() -> Self {
        RenameSupply::default()
    }

    pub fn avoiding(mut self, names: impl IntoIterator<Item = Name>) -> Self {
        self.avoid.extend(names);
        self
    }

    fn suffix(&mut self, vars: &BTreeSet<Name>) -> u64 {
        loop {
            self.next += 1;
            let k = self.next;
            if vars.iter().all(|v| !self.avoid.contains(format!("{v}_{k}").as_str())) {
                return k;
            }
        }
    }
}

/// A copy of `c` with every variable replaced by a fresh one.
pub fn rename_clause(c: &Clause, supply: &mut RenameSupply) -> Clause {
    let mut vars = BTreeSet::new();
    c.head.collect_vars(&mut vars);
    for g in &c.body {
        g.collect_vars(&mut vars);
    }
    if vars.is_empty() {
        return c.clone();
    }
    let k = supply.suffix(&vars);
    let unifier =
        Subst::from_pairs(vars.iter().map(|v| (v.clone(), Term::Var(Name::from(format!("{v}_{k}"))))));
    Clause {
        head: unifier.apply(&c.head),
        body: c.body.iter().map(|g| unifier.apply(g)).collect(),
        span: c.span.clone(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolutionBudget {
    /// Longest derivation explored.
    pub max_depth: usize,
    /// Resolution attempts across the whole tree.
    pub max_steps: usize,
}

impl Default for ResolutionBudget {
    fn default() -> Self {
        ResolutionBudget { max_depth: 256, max_steps: 10_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Yes { unifier: Subst, types: BTreeMap<Name, TypeExpr> },
    NoFalse,
    NoWrong,
    NoUnknown { budget_exhausted: bool },
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Yes { .. } => "yes",
            Outcome::NoFalse => "no(false)",
            Outcome::NoWrong => "no(wrong)",
            Outcome::NoUnknown { .. } => "no(?)",
        }
    }
}

/// How a single resolution attempt ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Resolved,
    Wrong(Witness),
    FalseFinal(Witness),
    FalseWithRemaining(Witness),
    /// The goal's predicate has no clauses.
    NoClauses {
        remaining: bool,
    },
    DepthLimit,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Resolved => f.write_str("resolved"),
            Verdict::Wrong(w) => write!(f, "wrong ({w})"),
            Verdict::FalseFinal(w) => write!(f, "false ({w})"),
            Verdict::FalseWithRemaining(w) => write!(f, "false with goals remaining ({w})"),
            Verdict::NoClauses { remaining: false } => f.write_str("false (no clauses)"),
            Verdict::NoClauses { remaining: true } => f.write_str("false with goals remaining (no clauses)"),
            Verdict::DepthLimit => f.write_str("depth limit reached"),
        }
    }
}

/// One entry of a resolution trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TsldEvent {
    pub depth: usize,
    pub goal: Term,
    /// 1-based index into the program, if a clause was tried.
    pub clause: Option<usize>,
    pub verdict: Verdict,
}

impl fmt::Display for TsldEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:indent$}{}", "", goal_to_string(&self.goal), indent = 2 * self.depth)?;
        if let Some(i) = self.clause {
            write!(f, " with clause {i}")?;
        }
        write!(f, ": {}", self.verdict)
    }
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub outcome: Outcome,
    /// Resolution attempts made, failing ones included.
    pub steps: usize,
    pub trace: Vec<TsldEvent>,
}

struct Node {
    goals: Vec<Term>,
    unifier: Subst,
    type_unifier: TypeSubst,
    ctx: Context,
    depth: usize,
}

enum Attempt {
    Solved { unifier: Subst, type_unifier: TypeSubst },
    Wrong(Witness),
    False(Witness),
}

struct Engine<'a> {
    program: &'a [Clause],
    env: &'a SignatureEnv,
    fresh: FreshSupply,
    rename: RenameSupply,
}

impl Engine<'_> {
    fn bind_vars(&mut self, ctx: &mut Context, t: &Term) {
        crate::constraints::extend_generic(ctx, t, &mut self.fresh);
    }

    /// Typing constraints of a goal or head atom: argument types against a
    /// fresh instance of the predicate's scheme.
    fn type_atom(
        &mut self,
        ctx: &Context,
        atom: &Term,
        out: &mut ConstraintState,
    ) -> Result<Vec<TypeExpr>, GenError> {
        let (p, n) = predicate_key(atom).expect("goals are callable");
        let scheme = self
            .env
            .predicate(p, n)
            .ok_or_else(|| GenError::UnknownSymbol { symbol: p.to_string(), arity: n })?;
        let domain = match instantiate(&scheme, &mut self.fresh) {
            SchemeBody::Func(f) if f.arity() == n => f.domain,
            SchemeBody::Type(_) if n == 0 => Vec::new(),
            _ => {
                return Err(GenError::ArityMismatch {
                    symbol: p.to_string(),
                    declared: scheme.arity(),
                    used: n,
                })
            }
        };
        let mut types = Vec::with_capacity(n);
        for (arg, expected) in atom_args(atom).iter().zip(domain) {
            let (ty, cs) = gen_term(ctx, self.env, arg, &mut self.fresh)?;
            out.extend(cs);
            out.types.push(TypeConstraint::new(ty.clone(), expected));
            types.push(ty);
        }
        Ok(types)
    }

    fn carry(type_unifier: &TypeSubst, out: &mut ConstraintState) {
        out.types.extend(
            type_unifier.iter().map(|(a, t)| TypeConstraint::new(TypeExpr::Var(a.clone()), t.clone())),
        );
    }

    fn run(state: ConstraintState) -> Attempt {
        match solve(state, false).result {
            SolveResult::Solved { unifier, type_unifier } => Attempt::Solved { unifier, type_unifier },
            SolveResult::False { witness, .. } => Attempt::False(witness),
            SolveResult::Wrong { witness } => Attempt::Wrong(witness),
        }
    }

    fn resolve_with(
        &mut self,
        ctx: &mut Context,
        goal: &Term,
        head: &Term,
        type_unifier: &TypeSubst,
    ) -> Result<Attempt, GenError> {
        self.bind_vars(ctx, head);
        let mut state = ConstraintState::default();
        let goal_types = self.type_atom(ctx, goal, &mut state)?;
        let head_types = self.type_atom(ctx, head, &mut state)?;
        for ((s, t), (ts, tt)) in
            atom_args(goal).iter().zip(atom_args(head)).zip(goal_types.into_iter().zip(head_types))
        {
            state.terms.push(TermConstraint::new(s.clone(), t.clone()));
            state.types.push(TypeConstraint::new(ts, tt));
        }
        Self::carry(type_unifier, &mut state);
        Ok(Self::run(state))
    }

    fn builtin_eq(
        &mut self,
        ctx: &Context,
        l: &Term,
        r: &Term,
        type_unifier: &TypeSubst,
    ) -> Result<Attempt, GenError> {
        let (tl, cl) = gen_term(ctx, self.env, l, &mut self.fresh)?;
        let (tr, cr) = gen_term(ctx, self.env, r, &mut self.fresh)?;
        let mut state = ConstraintState::new(vec![TermConstraint::new(l.clone(), r.clone())], Vec::new());
        state.extend(cl);
        state.extend(cr);
        state.types.push(TypeConstraint::new(tl, tr));
        Self::carry(type_unifier, &mut state);
        Ok(Self::run(state))
    }

    /// Type-checks a goal that no clause can match.
    fn check_goal(
        &mut self,
        ctx: &Context,
        goal: &Term,
        type_unifier: &TypeSubst,
    ) -> Result<Option<Witness>, GenError> {
        let mut state = ConstraintState::default();
        self.type_atom(ctx, goal, &mut state)?;
        Self::carry(type_unifier, &mut state);
        Ok(match Self::run(state) {
            Attempt::Wrong(w) => Some(w),
            _ => None,
        })
    }
}

/// Keeps the bindings of type variables that some context entry mentions.
fn restrict_mu(type_unifier: &TypeSubst, ctx: &Context) -> TypeSubst {
    let mut vars = BTreeSet::new();
    for (_, t) in ctx.iter() {
        t.collect_vars(&mut vars);
    }
    TypeSubst::from_pairs(
        type_unifier.iter().filter(|(a, _)| vars.contains(*a)).map(|(a, t)| (a.clone(), t.clone())),
    )
}

fn is_builtin_eq(goal: &Term) -> bool {
    matches!(goal, Term::Compound(f, args) if f.as_str() == "=" && args.len() == 2)
}

/// Runs `query` against `program` under Δ.
pub fn resolve(
    program: &[Clause],
    query: &[Term],
    env: &SignatureEnv,
    budget: ResolutionBudget,
    trace: bool,
) -> Result<Resolution, GenError> {
    let mut taken = BTreeSet::new();
    for g in query {
        g.collect_vars(&mut taken);
    }
    for c in program {
        c.head.collect_vars(&mut taken);
        for g in &c.body {
            g.collect_vars(&mut taken);
        }
    }
    let query_vars: BTreeSet<Name> = query.iter().flat_map(|g| g.free_vars()).collect();

    let mut engine =
        Engine { program, env, fresh: FreshSupply::new(), rename: RenameSupply::new().avoiding(taken) };
    let mut root_ctx = Context::new();
    for g in query {
        engine.bind_vars(&mut root_ctx, g);
    }
    let root_types = root_ctx.clone();

    let mut stack = vec![Node {
        goals: query.to_vec(),
        unifier: Subst::new(),
        type_unifier: TypeSubst::new(),
        ctx: root_ctx,
        depth: 0,
    }];
    let mut steps = 0;
    let mut events = Vec::new();
    let mut log = |e: TsldEvent| {
        if trace {
            events.push(e);
        }
    };
    let (mut any_wrong, mut all_final, mut exhausted) = (false, true, false);

    while let Some(node) = stack.pop() {
        let Some((goal, rest)) = node.goals.split_first() else {
            let types = query_vars
                .iter()
                .filter_map(|v| root_types.get(v).map(|t| (v.clone(), node.type_unifier.apply(t))))
                .collect();
            let unifier = node.unifier.restrict(&query_vars);
            return Ok(Resolution { outcome: Outcome::Yes { unifier, types }, steps, trace: events });
        };
        if node.depth >= budget.max_depth {
            exhausted = true;
            all_final = false;
            log(TsldEvent {
                depth: node.depth,
                goal: goal.clone(),
                clause: None,
                verdict: Verdict::DepthLimit,
            });
            continue;
        }

        let mut children = Vec::new();
        let candidates: Vec<(Option<usize>, Option<Clause>)> = if is_builtin_eq(goal) {
            vec![(None, None)]
        } else {
            let key = predicate_key(goal);
            engine
                .program
                .iter()
                .enumerate()
                .filter(|(_, c)| predicate_key(&c.head) == key)
                .map(|(i, c)| (Some(i + 1), Some(c.clone())))
                .collect()
        };

        if candidates.is_empty() {
            let verdict = match engine.check_goal(&node.ctx, goal, &node.type_unifier)? {
                Some(w) => {
                    any_wrong = true;
                    Verdict::Wrong(w)
                }
                None => {
                    all_final &= rest.is_empty();
                    Verdict::NoClauses { remaining: !rest.is_empty() }
                }
            };
            log(TsldEvent { depth: node.depth, goal: goal.clone(), clause: None, verdict });
            continue;
        }

        for (index, clause) in candidates {
            if steps >= budget.max_steps {
                exhausted = true;
                break;
            }
            steps += 1;
            let mut ctx = node.ctx.clone();
            let (attempt, body) = match &clause {
                Some(c) => {
                    let c = rename_clause(c, &mut engine.rename);
                    (engine.resolve_with(&mut ctx, goal, &c.head, &node.type_unifier)?, c.body)
                }
                None => {
                    let args = atom_args(goal);
                    (engine.builtin_eq(&ctx, &args[0], &args[1], &node.type_unifier)?, Vec::new())
                }
            };
            let verdict = match attempt {
                Attempt::Solved { unifier, type_unifier } => {
                    for g in &body {
                        engine.bind_vars(&mut ctx, g);
                    }
                    let goals = body.iter().chain(rest).map(|g| unifier.apply(g)).collect();
                    let type_unifier = restrict_mu(&type_unifier, &ctx);
                    children.push(Node {
                        goals,
                        unifier: unifier.compose(&node.unifier),
                        type_unifier,
                        ctx,
                        depth: node.depth + 1,
                    });
                    Verdict::Resolved
                }
                Attempt::Wrong(w) => {
                    any_wrong = true;
                    Verdict::Wrong(w)
                }
                Attempt::False(w) if rest.is_empty() => Verdict::FalseFinal(w),
                Attempt::False(w) => {
                    all_final = false;
                    Verdict::FalseWithRemaining(w)
                }
            };
            log(TsldEvent { depth: node.depth, goal: goal.clone(), clause: index, verdict });
        }
        // Depth first, earlier clauses first.
        stack.extend(children.into_iter().rev());
        if exhausted && steps >= budget.max_steps {
            break;
        }
    }

    let outcome = if any_wrong {
        Outcome::NoWrong
    } else if exhausted {
        Outcome::NoUnknown { budget_exhausted: true }
    } else if all_final {
        Outcome::NoFalse
    } else {
        Outcome::NoUnknown { budget_exhausted: false }
    };
    Ok(Resolution { outcome, steps, trace: events })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::{derive_signatures, TypeDefSet};
    use crate::parse::{parse_program, parse_query, parse_signatures};

    fn env(sig: &str) -> SignatureEnv {
        derive_signatures(&TypeDefSet::default(), &parse_signatures(sig).unwrap()).unwrap()
    }

    fn run(program: &str, sig: &str, query: &str) -> Resolution {
        resolve(
            &parse_program(program).unwrap(),
            &parse_query(query).unwrap(),
            &env(sig),
            ResolutionBudget::default(),
            true,
        )
        .unwrap()
    }

    #[test]
    fn renaming_standardizes_apart() {
        let c = parse_program("p(X) :- q(X).").unwrap().remove(0);
        let mut s = RenameSupply::new();
        let a = rename_clause(&c, &mut s);
        let b = rename_clause(&c, &mut s);
        assert_eq!(a.to_string(), "p(X_1) :- q(X_1).");
        assert!(a.head.free_vars().is_disjoint(&b.head.free_vars()));
        let fact = Clause::fact(Term::app("p", vec![Term::int(0)]));
        assert_eq!(rename_clause(&fact, &mut s), fact);
    }

    #[test]
    fn fact_answers_yes() {
        let r = run("p(0).", "", "p(0)");
        assert_eq!(r.outcome, Outcome::Yes { unifier: Subst::new(), types: BTreeMap::new() });
    }

    #[test]
    fn answers_carry_bindings_and_types() {
        let r = run("app([],L,L).\napp([H|T],L,[H|R]) :- app(T,L,R).", "", "app([1],[2],X)");
        let Outcome::Yes { unifier, types } = r.outcome else { panic!("{:?}", r.outcome) };
        assert_eq!(unifier.get("X").unwrap().to_string(), "[1,2]");
        assert_eq!(types["X"], TypeExpr::list(TypeExpr::int()));
    }

    #[test]
    fn clashing_last_goal_is_no_false() {
        let r = run("p(0).", "", "p(1)");
        assert_eq!(r.outcome, Outcome::NoFalse);
        assert_eq!(r.steps, 1);
    }

    #[test]
    fn clash_before_other_goals_is_unknown() {
        let r = run("p(0).", "", "p(1), p(a)");
        assert_eq!(r.outcome, Outcome::NoUnknown { budget_exhausted: false });
        assert_eq!(r.steps, 1);
    }

    #[test]
    fn types_thread_across_goals() {
        // X is fixed to int by the first goal; the second needs a list.
        let r = run("p(0).\nq([]).", "q : list(A) -> bool.", "p(X), q(X)");
        assert_eq!(r.outcome, Outcome::NoWrong);
    }

    #[test]
    fn builtin_equality() {
        let r = run("p(0).", "", "X = 0, p(X)");
        assert!(matches!(r.outcome, Outcome::Yes { .. }));
        let r = run("p(0).", "", "X = a, X = 1");
        assert_eq!(r.outcome, Outcome::NoWrong);
    }

    #[test]
    fn body_only_variables_are_typed() {
        let r = run("q(X) :- r(X, Y), s(Y).\ns(1).", "", "q(a)");
        assert!(matches!(r.outcome, Outcome::NoFalse | Outcome::NoUnknown { .. }));
    }

    #[test]
    fn goal_without_clauses() {
        let r = run("p(0).", "", "r(1)");
        assert_eq!(r.outcome, Outcome::NoFalse);
        assert_eq!(r.steps, 0);
    }

    #[test]
    fn step_budget_folds_into_unknown() {
        let r = resolve(
            &parse_program("loop(X) :- loop(X).").unwrap(),
            &parse_query("loop(1)").unwrap(),
            &env(""),
            ResolutionBudget { max_depth: 1000, max_steps: 50 },
            false,
        )
        .unwrap();
        assert_eq!(r.outcome, Outcome::NoUnknown { budget_exhausted: true });
        assert_eq!(r.steps, 50);
    }

    #[test]
    fn depth_budget_folds_into_unknown() {
        let r = resolve(
            &parse_program("loop(X) :- loop(X).").unwrap(),
            &parse_query("loop(1)").unwrap(),
            &env(""),
            ResolutionBudget { max_depth: 10, max_steps: 1000 },
            false,
        )
        .unwrap();
        assert_eq!(r.outcome, Outcome::NoUnknown { budget_exhausted: true });
    }
}
