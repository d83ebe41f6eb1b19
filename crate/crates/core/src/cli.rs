//! The `regunify` command line: `validate`, `infer`, `check`, `unify`, `run`,
//! `oracle` and `repl`.
//!
//! Exit codes: 0 solved / yes / valid, 1 false / no(false) / check failed,
//! 2 wrong / no(wrong), 3 no(?), 64 usage, 65 parse or validation error,
//! 70 internal invariant breach.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constraints::{extend_generic, gen_term, FreshSupply};
use crate::env::{derive_signatures, validate, EnvError, SignatureEnv, TypeDef, TypeDefSet};
use crate::oracle::{check_pairs, small_signature};
use crate::output::{
    render_diagnostics, render_human, ConstraintDoc, Diagnostic, OutputDocument, Payload, TraceEntry,
    TypingDoc,
};
use crate::parse::{
    parse_context, parse_equation, parse_program_in, parse_query, parse_signatures_in, parse_term,
    parse_type, parse_typedefs_in, ParseError,
};
use crate::print::{canonical_renaming, goal_to_string};
use crate::semantics::{enumerate_ground_terms, DEFAULT_ENUMERATION_CAP};
use crate::solver::{principal_typing, typed_unify, Principal, TraceStep, UnifyOutcome};
use crate::syntax::{Term, TypeExpr};
use crate::tsld::{resolve, Clause, Outcome, ResolutionBudget};
use crate::typing::{check, check_equation, explain_failure, Context};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_WRONG: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Debug, Parser)]
#[command(name = "regunify", version, about = "Typed unification over deterministic regular types")]
struct Cli {
    /// Type definitions file.
    #[arg(long, global = true, env = "REGUNIFY_TYPES")]
    types: Option<PathBuf>,
    /// Signature declarations file.
    #[arg(long, global = true)]
    sig: Option<PathBuf>,
    /// Print the result document as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a type definitions file and list the derived signatures.
    Validate {
        /// Defaults to `--types`.
        file: Option<PathBuf>,
    },
    /// Principal typing of a term, or of an equation `t1 = t2`.
    Infer {
        term: String,
        /// Also print the generated type and constraints.
        #[arg(long)]
        emit_constraints: bool,
    },
    /// Decide whether `term : type` is derivable in a context.
    Check {
        /// A term, or an equation `t1 = t2` (typed `bool`).
        term: String,
        #[arg(value_name = "TYPE")]
        ty: Option<String>,
        /// Inline context such as `X: int, Y: list(int)`.
        #[arg(long, conflicts_with = "context_file")]
        context: Option<String>,
        #[arg(long)]
        context_file: Option<PathBuf>,
    },
    /// Unify two terms.
    Unify {
        t1: String,
        t2: String,
        /// Print the generated constraints and every rewrite step.
        #[arg(long)]
        trace: bool,
    },
    /// Run a query against a program with typed resolution.
    Run {
        /// Program file of facts and rules.
        program: PathBuf,
        /// Comma-separated goals, e.g. `"p(X), q(X)"`.
        #[arg(short, long)]
        query: String,
        /// Print every resolution attempt.
        #[arg(long)]
        trace: bool,
        /// Maximum number of resolution attempts.
        #[arg(long, default_value_t = ResolutionBudget::default().max_steps)]
        max_steps: usize,
        /// Maximum derivation depth.
        #[arg(long, default_value_t = ResolutionBudget::default().max_depth)]
        depth: usize,
    },
    /// Compare solver outcomes with value equality over enumerated ground terms.
    Oracle {
        /// Term depth of the enumeration (constants have depth 0).
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Sample pairs with this seed instead of checking all of them.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Read `t1 = t2`, `?- goals`, or `:type t` lines from stdin.
    Repl {
        #[arg(long)]
        program: Option<PathBuf>,
    },
}

struct Loaded {
    defs: TypeDefSet,
    env: SignatureEnv,
}

fn read(path: &Path) -> Result<String, Diagnostic> {
    std::fs::read_to_string(path)
        .map_err(|e| Diagnostic::error(format!("cannot read {}: {e}", path.display()), None))
}

fn parse_diag(e: ParseError) -> Diagnostic {
    Diagnostic::error(e.message, Some(e.span))
}

fn env_diag(e: &EnvError, defs: &[TypeDef]) -> Diagnostic {
    let def = match e {
        EnvError::UnboundTypeVar { def, .. }
        | EnvError::UnusedParam { def, .. }
        | EnvError::DuplicateParam { def, .. }
        | EnvError::IllegalSummand { def, .. } => Some(def),
        EnvError::DuplicateDefinition(d) => Some(d),
        EnvError::DuplicateConstructor { first, second, .. } => {
            // Point at whichever of the two definitions comes later in the file.
            let last = defs.iter().rev().find(|x| x.head == *first || x.head == *second);
            return Diagnostic::error(e.to_string(), last.and_then(|x| x.span.clone()));
        }
        _ => None,
    };
    let span = def.and_then(|d| defs.iter().rev().find(|x| x.head == *d)).and_then(|x| x.span.clone());
    Diagnostic::error(e.to_string(), span)
}

fn load(types: Option<&Path>, sig: Option<&Path>) -> Result<Loaded, Vec<Diagnostic>> {
    let parsed = match types {
        Some(p) => {
            let text = read(p).map_err(|d| vec![d])?;
            parse_typedefs_in(&text, &p.display().to_string()).map_err(|e| vec![parse_diag(e)])?
        }
        None => Vec::new(),
    };
    let defs =
        validate(parsed.clone()).map_err(|es| es.iter().map(|e| env_diag(e, &parsed)).collect::<Vec<_>>())?;
    let decls = match sig {
        Some(p) => {
            let text = read(p).map_err(|d| vec![d])?;
            parse_signatures_in(&text, &p.display().to_string()).map_err(|e| vec![parse_diag(e)])?
        }
        None => Vec::new(),
    };
    let env = derive_signatures(&defs, &decls).map_err(|es| {
        es.iter()
            .map(|e| {
                let span = match e {
                    EnvError::ConflictingOverride { symbol, .. }
                    | EnvError::NonPredicateOverride { symbol, .. }
                    | EnvError::DuplicateSignature { symbol, .. } => decls
                        .iter()
                        .rev()
                        .find(|d| matches!(&d.symbol, crate::syntax::Literal::Atom(a) if a == symbol))
                        .and_then(|d| d.span.clone()),
                    _ => None,
                };
                Diagnostic::error(e.to_string(), span)
            })
            .collect::<Vec<_>>()
    })?;
    Ok(Loaded { defs, env })
}

/// A command's result: the document and the exit code.
struct Reply {
    doc: OutputDocument,
    code: i32,
}

impl Reply {
    fn ok(command: &[String], payload: Payload, code: i32) -> Self {
        let mut doc = OutputDocument::new(command.to_vec());
        doc.result = Some(payload);
        Reply { doc, code }
    }

    fn failed(command: &[String], diagnostics: Vec<Diagnostic>, code: i32) -> Self {
        let mut doc = OutputDocument::new(command.to_vec());
        doc.diagnostics = diagnostics;
        Reply { doc, code }
    }
}

fn string_map<'a, V: ToString + 'a>(
    it: impl IntoIterator<Item = (&'a crate::syntax::Name, V)>,
) -> BTreeMap<String, String> {
    it.into_iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

/// Context and type with type variables renamed to `A`, `B`, ...
fn typing_doc(ctx: &Context, ty: &TypeExpr) -> TypingDoc {
    let renaming = canonical_renaming(ctx.iter().map(|(_, t)| t).chain([ty]));
    TypingDoc {
        context: string_map(ctx.iter().map(|(v, t)| (v, renaming.apply(t)))),
        ty: renaming.apply(ty).to_string(),
    }
}

fn trace_entries(trace: &[TraceStep]) -> Vec<TraceEntry> {
    trace
        .iter()
        .map(|s| TraceEntry {
            rule: Some(s.rule.0),
            acted_on: s.acted_on.to_string(),
            result: s.state.to_string(),
        })
        .collect()
}

/// `t1 = t2` or a single term.
enum Subject {
    Term(Term),
    Equation(Term, Term),
}

fn parse_subject(text: &str) -> Result<Subject, ParseError> {
    match parse_term(text) {
        Ok(t) => Ok(Subject::Term(t)),
        Err(e) => match parse_equation(text) {
            Ok((l, r)) => Ok(Subject::Equation(l, r)),
            Err(_) => Err(e),
        },
    }
}

fn cmd_validate(command: &[String], loaded: &Loaded) -> Reply {
    let mut details: Vec<String> = loaded.defs.defs().map(|d| d.to_string()).collect();
    for (c, s) in &loaded.env.constants {
        details.push(format!("{} : {s}", crate::print::atom_to_string(c)));
    }
    for ((f, _), s) in &loaded.env.functions {
        details.push(format!("{} : {s}", crate::print::atom_to_string(f)));
    }
    for ((p, _), s) in &loaded.env.predicates {
        details.push(format!("{} : {s}", crate::print::atom_to_string(p)));
    }
    let payload = Payload { outcome: "valid".into(), details, ..Default::default() };
    Reply::ok(command, payload, EXIT_OK)
}

fn cmd_unify(command: &[String], loaded: &Loaded, t1: &str, t2: &str, trace: bool) -> Reply {
    let terms = parse_term(t1).and_then(|a| parse_term(t2).map(|b| (a, b)));
    let (a, b) = match terms {
        Ok(p) => p,
        Err(e) => return Reply::failed(command, vec![parse_diag(e)], EXIT_DATA),
    };
    let report = match typed_unify(&a, &b, &loaded.env, trace) {
        Ok(r) => r,
        Err(e) => return Reply::failed(command, vec![Diagnostic::error(e.to_string(), None)], EXIT_DATA),
    };
    let mut payload =
        Payload { steps: Some(report.steps), trace: trace_entries(&report.trace), ..Default::default() };
    if trace {
        payload.constraints = Some(ConstraintDoc {
            ty: None,
            terms: report.constraints.terms.iter().map(ToString::to_string).collect(),
            types: report.constraints.types.iter().map(ToString::to_string).collect(),
        });
    }
    let code = match &report.outcome {
        UnifyOutcome::Solved { unifier, principal, .. } => {
            payload.outcome = "solved".into();
            payload.bindings = string_map(unifier.iter());
            let doc = typing_doc(principal, &TypeExpr::Bool);
            payload.types = doc.context.clone();
            payload.principal = Some(doc);
            EXIT_OK
        }
        UnifyOutcome::False { witness, type_unifier } => {
            payload.outcome = "false".into();
            payload.witness = Some(witness.to_string());
            let ctx = report.context.apply(type_unifier);
            payload.types = typing_doc(&ctx, &TypeExpr::Bool).context;
            EXIT_FALSE
        }
        UnifyOutcome::Wrong { witness } => {
            payload.outcome = "wrong".into();
            payload.witness = Some(witness.to_string());
            EXIT_WRONG
        }
    };
    Reply::ok(command, payload, code)
}

fn cmd_infer(command: &[String], loaded: &Loaded, text: &str, emit: bool) -> Reply {
    let subject = match parse_subject(text) {
        Ok(s) => s,
        Err(e) => return Reply::failed(command, vec![parse_diag(e)], EXIT_DATA),
    };
    let mut payload = Payload::default();
    let code = match subject {
        Subject::Term(t) => {
            if emit {
                let mut fresh = FreshSupply::new();
                let mut ctx = Context::new();
                extend_generic(&mut ctx, &t, &mut fresh);
                match gen_term(&ctx, &loaded.env, &t, &mut fresh) {
                    Ok((ty, cs)) => {
                        payload.constraints = Some(ConstraintDoc {
                            ty: Some(ty.to_string()),
                            terms: cs.terms.iter().map(ToString::to_string).collect(),
                            types: cs.types.iter().map(ToString::to_string).collect(),
                        });
                        payload.details.push(format!("context: {ctx}"));
                    }
                    Err(e) => {
                        return Reply::failed(
                            command,
                            vec![Diagnostic::error(e.to_string(), None)],
                            EXIT_DATA,
                        )
                    }
                }
            }
            match principal_typing(&t, &loaded.env) {
                Ok(Principal::Typed { context, ty }) => {
                    payload.outcome = "typed".into();
                    payload.principal = Some(typing_doc(&context, &ty));
                    EXIT_OK
                }
                Ok(Principal::Wrong { witness }) => {
                    payload.outcome = "wrong".into();
                    payload.witness = Some(witness.to_string());
                    EXIT_WRONG
                }
                Err(e) => {
                    return Reply::failed(command, vec![Diagnostic::error(e.to_string(), None)], EXIT_DATA)
                }
            }
        }
        Subject::Equation(l, r) => {
            let report = match typed_unify(&l, &r, &loaded.env, false) {
                Ok(r) => r,
                Err(e) => {
                    return Reply::failed(command, vec![Diagnostic::error(e.to_string(), None)], EXIT_DATA)
                }
            };
            if emit {
                payload.constraints = Some(ConstraintDoc {
                    ty: Some("bool".into()),
                    terms: report.constraints.terms.iter().map(ToString::to_string).collect(),
                    types: report.constraints.types.iter().map(ToString::to_string).collect(),
                });
                payload.details.push(format!("context: {}", report.context));
            }
            // Typing only depends on T, so a term clash still leaves a typing.
            let type_unifier = match &report.outcome {
                UnifyOutcome::Solved { type_unifier, .. } | UnifyOutcome::False { type_unifier, .. } => {
                    Some(type_unifier)
                }
                UnifyOutcome::Wrong { .. } => None,
            };
            match (type_unifier, &report.outcome) {
                (Some(type_unifier), _) => {
                    payload.outcome = "typed".into();
                    payload.principal =
                        Some(typing_doc(&report.context.apply(type_unifier), &TypeExpr::Bool));
                    EXIT_OK
                }
                (None, UnifyOutcome::Wrong { witness }) => {
                    payload.outcome = "wrong".into();
                    payload.witness = Some(witness.to_string());
                    EXIT_WRONG
                }
                _ => unreachable!(),
            }
        }
    };
    Reply::ok(command, payload, code)
}

fn cmd_check(
    command: &[String],
    loaded: &Loaded,
    text: &str,
    ty: Option<&str>,
    context: Option<String>,
) -> Reply {
    let fail = |d: Diagnostic| Reply::failed(command, vec![d], EXIT_DATA);
    let raw = match parse_context(context.as_deref().unwrap_or("")) {
        Ok(c) => c,
        Err(e) => return fail(parse_diag(e)),
    };
    let mut ctx = Context::new();
    for (v, t) in raw.iter() {
        match loaded.defs.resolve(t) {
            Ok(t) => ctx.bind(v.clone(), t),
            Err(e) => return fail(Diagnostic::error(e.to_string(), None)),
        }
    }
    let subject = match parse_subject(text) {
        Ok(s) => s,
        Err(e) => return fail(parse_diag(e)),
    };
    let candidate = match ty.map(parse_type) {
        None => None,
        Some(Ok(t)) => match loaded.defs.resolve(&t) {
            Ok(t) => Some(t),
            Err(e) => return fail(Diagnostic::error(e.to_string(), None)),
        },
        Some(Err(e)) => return fail(parse_diag(e)),
    };
    let mut payload = Payload::default();
    let verdict = match (&subject, &candidate) {
        (Subject::Term(t), Some(ty)) => check(&ctx, &loaded.env, t, ty).and_then(|ok| {
            if !ok {
                if let Some(why) = explain_failure(&ctx, &loaded.env, t, ty)? {
                    payload.witness = Some(why);
                }
            }
            Ok(ok)
        }),
        (Subject::Equation(l, r), None | Some(TypeExpr::Bool)) => check_equation(&ctx, &loaded.env, l, r),
        (Subject::Equation(..), Some(other)) => Ok({
            payload.witness = Some(format!("an equation has type bool, not {other}"));
            false
        }),
        (Subject::Term(_), None) => {
            return Reply::failed(
                command,
                vec![Diagnostic::error("a candidate type is required for a term", None)],
                EXIT_USAGE,
            )
        }
    };
    match verdict {
        Ok(ok) => {
            payload.outcome = if ok { "yes" } else { "no" }.into();
            Reply::ok(command, payload, if ok { EXIT_OK } else { EXIT_FALSE })
        }
        Err(e) => fail(Diagnostic::error(e.to_string(), None)),
    }
}

fn run_query(
    command: &[String],
    loaded: &Loaded,
    program: &[Clause],
    query: &str,
    budget: ResolutionBudget,
    trace: bool,
) -> Reply {
    let goals = match parse_query(query) {
        Ok(g) => g,
        Err(e) => return Reply::failed(command, vec![parse_diag(e)], EXIT_DATA),
    };
    let run = match resolve(program, &goals, &loaded.env, budget, trace) {
        Ok(r) => r,
        Err(e) => return Reply::failed(command, vec![Diagnostic::error(e.to_string(), None)], EXIT_DATA),
    };
    let mut payload = Payload {
        outcome: run.outcome.label().into(),
        steps: Some(run.steps),
        trace: run
            .trace
            .iter()
            .map(|e| TraceEntry {
                rule: None,
                acted_on: match e.clause {
                    Some(i) => format!("{}{} with clause {i}", "  ".repeat(e.depth), goal_to_string(&e.goal)),
                    None => format!("{}{}", "  ".repeat(e.depth), goal_to_string(&e.goal)),
                },
                result: e.verdict.to_string(),
            })
            .collect(),
        ..Default::default()
    };
    let code = match &run.outcome {
        Outcome::Yes { unifier, types } => {
            payload.bindings = string_map(unifier.iter());
            let renaming = canonical_renaming(types.values());
            payload.types = string_map(types.iter().map(|(v, t)| (v, renaming.apply(t))));
            EXIT_OK
        }
        Outcome::NoFalse => EXIT_FALSE,
        Outcome::NoWrong => EXIT_WRONG,
        Outcome::NoUnknown { budget_exhausted } => {
            if *budget_exhausted {
                payload.details.push("resolution budget exhausted".into());
            }
            EXIT_UNKNOWN
        }
    };
    Reply::ok(command, payload, code)
}

fn load_program(path: &Path) -> Result<Vec<Clause>, Diagnostic> {
    let text = read(path)?;
    parse_program_in(&text, &path.display().to_string()).map_err(parse_diag)
}

fn cmd_oracle(command: &[String], loaded: &Loaded, depth: usize, seed: Option<u64>, samples: usize) -> Reply {
    let (sig, pool) = small_signature();
    let terms = match enumerate_ground_terms(&sig, depth, &pool, DEFAULT_ENUMERATION_CAP) {
        Ok(t) => t,
        Err(e) => return Reply::failed(command, vec![Diagnostic::error(e.to_string(), None)], EXIT_USAGE),
    };
    let report = match seed {
        None => check_pairs(
            terms.iter().flat_map(|a| terms.iter().map(move |b| (a, b))),
            &loaded.defs,
            &loaded.env,
        ),
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pairs: Vec<(&Term, &Term)> = (0..samples)
                .map(|_| {
                    (terms.choose(&mut rng).expect("non-empty"), terms.choose(&mut rng).expect("non-empty"))
                })
                .collect();
            check_pairs(pairs, &loaded.defs, &loaded.env)
        }
    };
    let mut details = vec![
        format!("terms: {}", terms.len()),
        format!("pairs: {}", report.pairs),
        format!("solved/true: {}", report.solved),
        format!("false/false: {}", report.false_),
        format!("wrong/wrong: {}", report.wrong),
        format!("mismatches: {}", report.mismatches.len()),
    ];
    details.extend(report.mismatches.iter().take(20).map(|m| format!("  {m}")));
    let consistent = report.mismatches.is_empty();
    let payload = Payload {
        outcome: if consistent { "consistent" } else { "inconsistent" }.into(),
        details,
        ..Default::default()
    };
    Reply::ok(command, payload, if consistent { EXIT_OK } else { EXIT_INTERNAL })
}

fn emit(reply: &Reply, json: bool, out: &mut dyn Write, err: &mut dyn Write) {
    if json {
        let text = serde_json::to_string_pretty(&reply.doc).expect("documents serialize");
        let _ = writeln!(out, "{text}");
    } else {
        let _ = write!(out, "{}", render_human(&reply.doc));
        let _ = write!(err, "{}", render_diagnostics(&reply.doc));
    }
}

fn repl(
    loaded: &Loaded,
    program: &[Clause],
    json: bool,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let mut line = String::new();
    loop {
        line.clear();
        match input.read_line(&mut line) {
            Ok(0) | Err(_) => return EXIT_OK,
            Ok(_) => {}
        }
        let text = line.trim();
        if text.is_empty() || text.starts_with('%') {
            continue;
        }
        if text == "quit" || text == "halt." {
            return EXIT_OK;
        }
        let command = vec!["repl".to_string(), text.to_string()];
        let reply = if let Some(t) = text.strip_prefix(":type") {
            cmd_infer(&command, loaded, t.trim(), false)
        } else if text.starts_with("?-") {
            run_query(&command, loaded, program, text, ResolutionBudget::default(), false)
        } else {
            match parse_equation(text) {
                Ok((l, r)) => cmd_unify(&command, loaded, &l.to_string(), &r.to_string(), false),
                Err(e) => Reply::failed(&command, vec![parse_diag(e)], EXIT_DATA),
            }
        };
        emit(&reply, json, out, err);
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let command: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();

    let types_path = match &cli.command {
        Command::Validate { file: Some(f) } => Some(f.clone()),
        _ => cli.types.clone(),
    };
    if matches!(cli.command, Command::Validate { file: None }) && types_path.is_none() {
        let _ = writeln!(err, "error: validate needs a file or --types");
        return EXIT_USAGE;
    }
    let loaded = match load(types_path.as_deref(), cli.sig.as_deref()) {
        Ok(l) => l,
        Err(diags) => {
            let reply = Reply::failed(&command, diags, EXIT_DATA);
            emit(&reply, cli.json, out, err);
            return reply.code;
        }
    };

    let reply = match cli.command {
        Command::Validate { .. } => cmd_validate(&command, &loaded),
        Command::Infer { term, emit_constraints } => cmd_infer(&command, &loaded, &term, emit_constraints),
        Command::Check { term, ty, context, context_file } => {
            match context_file.as_deref().map(read).transpose() {
                Ok(from_file) => cmd_check(&command, &loaded, &term, ty.as_deref(), from_file.or(context)),
                Err(d) => Reply::failed(&command, vec![d], EXIT_DATA),
            }
        }
        Command::Unify { t1, t2, trace } => cmd_unify(&command, &loaded, &t1, &t2, trace),
        Command::Run { program, query, trace, max_steps, depth } => match load_program(&program) {
            Ok(clauses) => run_query(
                &command,
                &loaded,
                &clauses,
                &query,
                ResolutionBudget { max_depth: depth, max_steps },
                trace,
            ),
            Err(d) => Reply::failed(&command, vec![d], EXIT_DATA),
        },
        Command::Oracle { depth, seed, samples } => cmd_oracle(&command, &loaded, depth, seed, samples),
        Command::Repl { program } => {
            let clauses = match program.as_deref().map(load_program).transpose() {
                Ok(c) => c.unwrap_or_default(),
                Err(d) => {
                    let reply = Reply::failed(&command, vec![d], EXIT_DATA);
                    emit(&reply, cli.json, out, err);
                    return reply.code;
                }
            };
            return repl(&loaded, &clauses, cli.json, input, out, err);
        }
    };
    emit(&reply, cli.json, out, err);
    reply.code
}
