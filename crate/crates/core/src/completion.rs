//! Ground completion with `Deduce` and `Delete`, derivation traces and
//! their audits.
//!
//! `Deduce` rewrites one side of an equation `w = t[u]` to `w = t[v]` with
//! another equation `u = v` of the presentation, `u ≫ v`. `Delete` drops an
//! equation `t = t`. Deletes are applied eagerly; deductions come from a
//! first-in-first-out agenda that is refilled whenever a new equation
//! appears, so no step that stays enabled is postponed forever.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{Formula, Presentation};
use crate::oracle::{infer_signature, EnumerationBounds, Oracle, OracleError};
use crate::ordering::OrderingConfig;
use crate::term::{replace_at, term_compare, Position, Term, TermPrecedence};

pub const DEFAULT_MAX_STEPS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lhs,
    Rhs,
}

impl Side {
    fn of(self, f: &Formula) -> &Term {
        match self {
            Side::Lhs => f.lhs(),
            Side::Rhs => f.rhs(),
        }
    }

    fn other(self, f: &Formula) -> &Term {
        match self {
            Side::Lhs => f.rhs(),
            Side::Rhs => f.lhs(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Side::Lhs => "lhs",
            Side::Rhs => "rhs",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Deduce,
    Delete,
}

/// One step of a derivation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEvent {
    pub kind: EventKind,
    pub target: Formula,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser_position"
    )]
    pub position: Option<Position>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<Formula>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub produced: Option<Formula>,
}

fn ser_position<S: serde::Serializer>(p: &Option<Position>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.collect_seq(p.path()),
        None => s.serialize_none(),
    }
}

impl TraceEvent {
    pub fn delete(target: Formula) -> Self {
        TraceEvent {
            kind: EventKind::Delete,
            target,
            side: None,
            position: None,
            rule: None,
            produced: None,
        }
    }

    pub fn display(&self, sugar: bool) -> EventDisplay<'_> {
        EventDisplay { event: self, sugar }
    }
}

pub struct EventDisplay<'a> {
    event: &'a TraceEvent,
    sugar: bool,
}

impl fmt::Display for EventDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.event;
        let s = self.sugar;
        match e.kind {
            EventKind::Delete => write!(f, "delete\t{}", e.target.display(s)),
            EventKind::Deduce => write!(
                f,
                "deduce\t{}\t{}{}\t{}\t{}",
                e.target.display(s),
                e.side.map_or("?", Side::name),
                e.position.clone().unwrap_or_default(),
                e.rule
                    .as_ref()
                    .map(|r| r.display(s).to_string())
                    .unwrap_or_default(),
                e.produced
                    .as_ref()
                    .map(|r| r.display(s).to_string())
                    .unwrap_or_default(),
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("`{0}` is not in the presentation")]
    NotMember(String),
    #[error("an equation cannot rewrite itself")]
    SelfRewrite,
    #[error("`{0}` is a disequation; completion takes equations only")]
    Disequation(String),
    #[error("`{0}` has identical sides and cannot be oriented")]
    Unorientable(String),
    #[error("`{term}` does not occur at {position} of the {side} of `{target}`")]
    NoOccurrence {
        term: String,
        side: &'static str,
        position: Position,
        target: String,
    },
    #[error("`{0}` does not have identical sides")]
    NotTrivial(String),
    #[error("completion did not reach a fixpoint within {0} steps")]
    NotTerminated(usize),
}

/// The larger and smaller side of an equation under the term ordering.
pub fn orient(rule: &Formula, prec: &TermPrecedence) -> Result<(Term, Term), CompletionError> {
    if rule.is_disequation() {
        return Err(CompletionError::Disequation(rule.display(true).to_string()));
    }
    if rule.is_trivial() {
        return Err(CompletionError::Unorientable(
            rule.display(true).to_string(),
        ));
    }
    let (l, r) = (rule.lhs().clone(), rule.rhs().clone());
    if term_compare(&l, &r, prec).is_gt() {
        Ok((l, r))
    } else {
        Ok((r, l))
    }
}

/// `Deduce`: rewrites `side` of `target` at `pos` with `rule`.
pub fn deduce_step(
    e: &Presentation,
    target: &Formula,
    side: Side,
    pos: &Position,
    rule: &Formula,
    prec: &TermPrecedence,
) -> Result<Presentation, CompletionError> {
    Ok(deduce(e, target, side, pos, rule, prec)?.0)
}

fn deduce(
    e: &Presentation,
    target: &Formula,
    side: Side,
    pos: &Position,
    rule: &Formula,
    prec: &TermPrecedence,
) -> Result<(Presentation, Formula), CompletionError> {
    for f in [target, rule] {
        if !e.contains(f) {
            return Err(CompletionError::NotMember(f.display(true).to_string()));
        }
    }
    if target == rule {
        return Err(CompletionError::SelfRewrite);
    }
    if target.is_disequation() {
        return Err(CompletionError::Disequation(
            target.display(true).to_string(),
        ));
    }
    let (u, v) = orient(rule, prec)?;
    let t = side.of(target);
    if t.subterm_at(pos) != Some(&u) {
        return Err(CompletionError::NoOccurrence {
            term: u.display(true).to_string(),
            side: side.name(),
            position: pos.clone(),
            target: target.display(true).to_string(),
        });
    }
    let rewritten = replace_at(t, pos, &v).expect("position checked");
    let produced = Formula::eq(side.other(target).clone(), rewritten);
    let mut out = e.without(target);
    out.insert(produced.clone());
    Ok((out, produced))
}

/// `Delete`: drops a trivial equation.
pub fn delete_step(e: &Presentation, target: &Formula) -> Result<Presentation, CompletionError> {
    if !e.contains(target) {
        return Err(CompletionError::NotMember(target.display(true).to_string()));
    }
    if !target.is_trivial() || target.is_disequation() {
        return Err(CompletionError::NotTrivial(
            target.display(true).to_string(),
        ));
    }
    Ok(e.without(target))
}

/// A finished (or abandoned) completion run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationTrace {
    pub steps: Vec<TraceEvent>,
    /// `E_0 .. E_k`; one more than the number of steps.
    pub presentations: Vec<Presentation>,
    /// `E∞`: the last snapshot.
    pub limit: Presentation,
    /// `E_*`: the union of all snapshots.
    pub union: Presentation,
    pub terminated: bool,
}

impl DerivationTrace {
    /// A trace from a list of snapshots, for hand-built derivations.
    pub fn from_snapshots(presentations: Vec<Presentation>, steps: Vec<TraceEvent>) -> Self {
        let limit = presentations.last().cloned().unwrap_or_default();
        let union = presentations
            .iter()
            .fold(Presentation::new(), |acc, p| acc.union(p));
        DerivationTrace {
            steps,
            presentations,
            limit,
            union,
            terminated: true,
        }
    }

    pub fn initial(&self) -> &Presentation {
        &self.presentations[0]
    }

    pub fn to_text(&self, sugar: bool) -> String {
        let list = |p: &Presentation| {
            p.iter()
                .map(|x| x.display(sugar).to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut out = String::new();
        out.push_str(&format!("initial: {{{}}}\n", list(self.initial())));
        for e in &self.steps {
            out.push_str(&e.display(sugar).to_string());
            out.push('\n');
        }
        out.push_str(&format!("limit: {{{}}}\n", list(&self.limit)));
        out.push_str(&format!("union: {{{}}}\n", list(&self.union)));
        out.push_str(&format!("terminated: {}\n", self.terminated));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }
}

type Triple = (Formula, Side, Position, Formula);

struct Run<'a> {
    e: Presentation,
    prec: &'a TermPrecedence,
    agenda: VecDeque<Triple>,
    queued: HashSet<Triple>,
}

impl Run<'_> {
    fn enqueue_for(&mut self, target: &Formula, rule: &Formula) {
        if target == rule || target.is_disequation() {
            return;
        }
        let Ok((u, v)) = orient(rule, self.prec) else {
            return;
        };
        for side in [Side::Lhs, Side::Rhs] {
            if side == Side::Rhs && target.is_trivial() {
                continue;
            }
            let other = side.other(target);
            for pos in side.of(target).occurrences(&u) {
                // a root rewrite needs the rule below the target, else the
                // step makes the proof of the target worse
                if pos.is_root() && !self.prec.greater(other, &v) {
                    continue;
                }
                let t = (target.clone(), side, pos, rule.clone());
                if self.queued.insert(t.clone()) {
                    self.agenda.push_back(t);
                }
            }
        }
    }

    fn enqueue_new(&mut self, f: &Formula) {
        let others: Vec<Formula> = self.e.iter().filter(|g| *g != f).cloned().collect();
        for g in &others {
            self.enqueue_for(f, g);
        }
        for g in &others {
            self.enqueue_for(g, f);
        }
    }

    fn enqueue_all(&mut self) {
        let all: Vec<Formula> = self.e.iter().cloned().collect();
        for t in &all {
            for r in &all {
                self.enqueue_for(t, r);
            }
        }
    }
}

/// Runs ground completion from `e0` until no step is enabled. The trace is
/// returned with `terminated = false` when `max_steps` runs out first.
pub fn run_completion(
    e0: &Presentation,
    prec: &TermPrecedence,
    max_steps: usize,
) -> Result<DerivationTrace, CompletionError> {
    if let Some(d) = e0.iter().find(|f| f.is_disequation()) {
        return Err(CompletionError::Disequation(d.display(true).to_string()));
    }
    let mut run = Run {
        e: e0.clone(),
        prec,
        agenda: VecDeque::new(),
        queued: HashSet::new(),
    };
    let mut steps = Vec::new();
    let mut snapshots = vec![e0.clone()];
    run.enqueue_all();
    let terminated = loop {
        if steps.len() >= max_steps {
            break false;
        }
        let trivial = run.e.iter().find(|f| f.is_trivial()).cloned();
        if let Some(t) = trivial {
            run.e = delete_step(&run.e, &t).expect("trivial member");
            steps.push(TraceEvent::delete(t));
            snapshots.push(run.e.clone());
            continue;
        }
        let Some(triple) = run.agenda.pop_front() else {
            // the agenda only ever loses enabled steps by applying them, but
            // check the fixpoint directly before stopping
            run.enqueue_all();
            if run.agenda.is_empty() {
                break true;
            }
            continue;
        };
        run.queued.remove(&triple);
        let (target, side, pos, rule) = triple;
        let Ok((next, produced)) = deduce(&run.e, &target, side, &pos, &rule, prec) else {
            continue;
        };
        let fresh = !run.e.contains(&produced);
        run.e = next;
        steps.push(TraceEvent {
            kind: EventKind::Deduce,
            target,
            side: Some(side),
            position: Some(pos),
            rule: Some(rule),
            produced: Some(produced.clone()),
        });
        snapshots.push(run.e.clone());
        if fresh {
            run.enqueue_new(&produced);
        }
    };
    let mut trace = DerivationTrace::from_snapshots(snapshots, steps);
    trace.terminated = terminated;
    Ok(trace)
}

/// Innermost normal form of `t` under `e` oriented by `prec`.
pub fn normalize(
    t: &Term,
    e: &Presentation,
    prec: &TermPrecedence,
) -> Result<Term, CompletionError> {
    let rules: Vec<(Term, Term)> = e
        .iter()
        .filter(|f| f.is_equation())
        .map(|f| orient(f, prec))
        .collect::<Result<_, _>>()?;
    fn go(t: &Term, rules: &[(Term, Term)]) -> Term {
        let args: Vec<Term> = t.args().iter().map(|a| go(a, rules)).collect();
        let t = Term::app(t.head().clone(), args);
        match rules.iter().find(|(l, _)| *l == t) {
            Some((_, r)) => go(r, rules),
            None => t,
        }
    }
    Ok(go(t, &rules))
}

/// Audit verdicts for a derivation.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Audit {
    /// `E_i ≿ E_{i+1}` for every step.
    pub good: bool,
    /// Every critical obligation of the limit is beaten by a proof from the
    /// union.
    pub fair: bool,
    /// No limit formula is redundant in the union.
    pub clean: bool,
    pub limit_canonical: bool,
    pub limit_saturated: bool,
    pub unique_minimal: bool,
    /// `E_* ≈ E∞`.
    pub union_similar: bool,
    /// Indices of steps that are not good.
    pub bad_steps: Vec<usize>,
}

impl Audit {
    /// Fair, clean and good with unique minimal proofs, yet a non-canonical
    /// limit.
    pub fn contradicts_limit_theorem(&self) -> bool {
        self.good && self.fair && self.clean && self.unique_minimal && !self.limit_canonical
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("trace did not reach a fixpoint")]
    NotTerminated,
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Audits `trace` with the oracle over the signature of its formulas.
pub fn audit_trace(
    trace: &DerivationTrace,
    cfg: &OrderingConfig,
    bounds: EnumerationBounds,
) -> Result<Audit, AuditError> {
    let oracle = Oracle::for_presentation(&trace.union, cfg.clone(), bounds)?;
    audit_with(trace, &oracle)
}

pub fn audit_with(trace: &DerivationTrace, oracle: &Oracle) -> Result<Audit, AuditError> {
    if !trace.terminated {
        return Err(AuditError::NotTerminated);
    }
    let mut bad_steps = Vec::new();
    for (i, w) in trace.presentations.windows(2).enumerate() {
        if !oracle.presentation_simpler(&w[0], &w[1])? {
            bad_steps.push(i);
        }
    }
    let limit = &trace.limit;
    let union_min = oracle.minimal(&trace.union)?;
    let fair = oracle
        .critical_obligations(limit)?
        .iter()
        .all(|p| union_min.dominates(p, oracle.config()));
    let clean = oracle.redundant_among(&trace.union, limit)?.is_empty();
    Ok(Audit {
        good: bad_steps.is_empty(),
        fair,
        clean,
        limit_canonical: oracle.is_canonical(limit)?,
        limit_saturated: oracle.is_saturated(limit)?,
        unique_minimal: oracle.check_unique_minimal(limit)?,
        union_similar: oracle.presentation_similar(&trace.union, limit)?,
        bad_steps,
    })
}

/// `normalize` agrees on both sides of every bounded equation of the
/// theory of `e0`.
pub fn church_rosser(
    e0: &Presentation,
    limit: &Presentation,
    prec: &TermPrecedence,
    bound: usize,
) -> Result<bool, CompletionError> {
    let slice = crate::formula::theory_closure(e0, &infer_signature(e0), bound)
        .map_err(|e| CompletionError::NotMember(e.to_string()))?;
    for f in slice.equations() {
        if normalize(f.lhs(), limit, prec)? != normalize(f.rhs(), limit, prec)? {
            return Ok(false);
        }
    }
    Ok(true)
}
