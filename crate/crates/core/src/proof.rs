//! Proof terms for the ground equational calculus.
//!
//! | rule      | premises                         | conclusion  |
//! |-----------|----------------------------------|-------------|
//! | `Z[c]`    | none                             | `c = c`     |
//! | `I(a)`    | none (assumption `a`)            | `a`         |
//! | `T`       | `i = j`, `j = k`                 | `i = k`     |
//! | `S[f]`    | `u1 = t1`, ..., `un = tn`        | `f(u) = f(t)` |
//! | `P`       | `a`, `c`                         | `c`         |
//! | `F[a]`    | `i != i`                         | `a` (an equation) |
//! | `Tneq`    | `i = j`, `j != k`                | `i != k`    |
//!
//! Premises of `T` are unordered and stored in a canonical order. `T` and
//! `Tneq` record the shared term (the pivot); it is printed only when the
//! premises admit more than one conclusion.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::formula::{Formula, FormulaKind};
use crate::term::{Cursor, ParseError, Signature, Symbol, Symbols, Term};

/// Rule kinds as seen by the proof ordering. Assumption leaves are split by
/// the kind of formula they assume.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RuleKind {
    Z,
    S,
    T,
    I,
    Ineq,
    P,
    F,
    Tneq,
}

impl RuleKind {
    pub const ALL: [RuleKind; 8] = [
        RuleKind::Z,
        RuleKind::S,
        RuleKind::T,
        RuleKind::I,
        RuleKind::Ineq,
        RuleKind::P,
        RuleKind::F,
        RuleKind::Tneq,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            RuleKind::Z => "Z",
            RuleKind::S => "S",
            RuleKind::T => "T",
            RuleKind::I => "I",
            RuleKind::Ineq => "Ineq",
            RuleKind::P => "P",
            RuleKind::F => "F",
            RuleKind::Tneq => "Tneq",
        }
    }

    pub fn from_name(name: &str) -> Option<RuleKind> {
        RuleKind::ALL.into_iter().find(|k| k.name() == name)
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// Reflexivity of a constant.
    Z(Symbol),
    /// Assumption leaf.
    I(Formula),
    /// Transitivity through the pivot.
    T { pivot: Term },
    /// Congruence. `flips[k]` reverses the orientation of premise `k`
    /// relative to its stored side order.
    S { symbol: Symbol, flips: Vec<bool> },
    /// Projection onto the second premise.
    P,
    /// Ex falso: any equation from a premise `i != i`.
    F(Formula),
    /// Disequation transitivity through the pivot.
    Tneq { pivot: Term },
}

impl Rule {
    pub fn kind(&self) -> RuleKind {
        match self {
            Rule::Z(_) => RuleKind::Z,
            Rule::I(a) if a.is_disequation() => RuleKind::Ineq,
            Rule::I(_) => RuleKind::I,
            Rule::T { .. } => RuleKind::T,
            Rule::S { .. } => RuleKind::S,
            Rule::P => RuleKind::P,
            Rule::F(_) => RuleKind::F,
            Rule::Tneq { .. } => RuleKind::Tneq,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("{rule} expects {expected} premises, found {found}")]
    Arity {
        rule: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("premises of {rule} share no term")]
    NoSharedTerm { rule: &'static str },
    #[error("pivot {pivot} is not shared by the premises of {rule}")]
    BadPivot { rule: &'static str, pivot: String },
    #[error("premises of {rule} share several terms; a pivot must be given")]
    AmbiguousPivot { rule: &'static str },
    #[error("{rule} premise {index} must be an {expected}")]
    PremiseKind {
        rule: &'static str,
        index: usize,
        expected: &'static str,
    },
    #[error("F premise must have the form i != i")]
    NotContradiction,
    #[error("F concludes equations only")]
    FConclusion,
    #[error("Z needs a constant, `{0}` has positive arity")]
    NotConstant(String),
    #[error("replacement changes the conclusion of the subproof")]
    ConclusionMismatch,
    #[error("invalid subproof position")]
    BadPosition,
}

struct ProofNode {
    rule: Rule,
    children: Vec<Proof>,
    conclusion: Formula,
    depth: usize,
    size: usize,
    hash: u64,
}

/// A well-formed proof tree with its conclusion cached.
#[derive(Clone)]
pub struct Proof(Arc<ProofNode>);

impl Proof {
    /// `Z[c]`, proving `c = c`.
    pub fn z(constant: Symbol) -> Result<Proof, ProofError> {
        check_wellformed(Rule::Z(constant), Vec::new())
    }

    /// `Z[0]`.
    pub fn zero() -> Proof {
        Proof::z(Symbol::new(crate::term::ZERO, 0)).expect("0 is a constant")
    }

    /// The trivial proof `I(a)`.
    pub fn axiom(a: Formula) -> Proof {
        trivial_proof(a)
    }

    /// `T(p, q)` with the pivot inferred.
    pub fn trans(p: Proof, q: Proof) -> Result<Proof, ProofError> {
        let pivot = infer_pivot("T", p.conclusion(), q.conclusion())?;
        check_wellformed(Rule::T { pivot }, vec![p, q])
    }

    pub fn trans_at(p: Proof, q: Proof, pivot: Term) -> Result<Proof, ProofError> {
        check_wellformed(Rule::T { pivot }, vec![p, q])
    }

    /// `S[f](children)`, each premise in its stored orientation.
    pub fn cong(symbol: Symbol, children: Vec<Proof>) -> Result<Proof, ProofError> {
        let flips = vec![false; children.len()];
        check_wellformed(Rule::S { symbol, flips }, children)
    }

    /// `S[f]` applied `n` times to `p` (unary `f`).
    pub fn cong_tower(symbol: &Symbol, n: usize, mut p: Proof) -> Result<Proof, ProofError> {
        for _ in 0..n {
            p = Proof::cong(symbol.clone(), vec![p])?;
        }
        Ok(p)
    }

    pub fn proj(p: Proof, q: Proof) -> Result<Proof, ProofError> {
        check_wellformed(Rule::P, vec![p, q])
    }

    pub fn ex_falso(a: Formula, p: Proof) -> Result<Proof, ProofError> {
        check_wellformed(Rule::F(a), vec![p])
    }

    /// `Tneq(eq, neq)` with the pivot inferred.
    pub fn trans_neq(eq: Proof, neq: Proof) -> Result<Proof, ProofError> {
        let (e, d) = order_tneq(eq, neq)?;
        let pivot = infer_pivot("Tneq", e.conclusion(), d.conclusion())?;
        check_wellformed(Rule::Tneq { pivot }, vec![e, d])
    }

    pub fn rule(&self) -> &Rule {
        &self.0.rule
    }

    pub fn kind(&self) -> RuleKind {
        self.0.rule.kind()
    }

    pub fn children(&self) -> &[Proof] {
        &self.0.children
    }

    pub fn conclusion(&self) -> &Formula {
        &self.0.conclusion
    }

    pub fn depth(&self) -> usize {
        self.0.depth
    }

    /// Node count.
    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn is_leaf(&self) -> bool {
        self.0.children.is_empty()
    }

    /// True for `I(a)`.
    pub fn is_trivial(&self) -> bool {
        matches!(self.rule(), Rule::I(_))
    }

    pub fn same_node(&self, other: &Proof) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Subproof at a path of child indices.
    pub fn at(&self, path: &[usize]) -> Option<&Proof> {
        let mut p = self;
        for &i in path {
            p = p.children().get(i)?;
        }
        Some(p)
    }

    /// Paths to every node, pre-order; the root is the empty path.
    pub fn positions(&self) -> Vec<Vec<usize>> {
        fn go(p: &Proof, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(path.clone());
            for (i, c) in p.children().iter().enumerate() {
                path.push(i);
                go(c, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Replaces the subproof at `path` with `r`, which must prove the same
    /// formula.
    pub fn replace_at(&self, path: &[usize], r: &Proof) -> Result<Proof, ProofError> {
        match path.split_first() {
            None => {
                if r.conclusion() == self.conclusion() {
                    Ok(r.clone())
                } else {
                    Err(ProofError::ConclusionMismatch)
                }
            }
            Some((&i, rest)) => {
                let child = self.children().get(i).ok_or(ProofError::BadPosition)?;
                let mut children = self.children().to_vec();
                children[i] = child.replace_at(rest, r)?;
                check_wellformed(self.rule().clone(), children)
            }
        }
    }

    pub fn display(&self, sugar: bool) -> ProofDisplay<'_> {
        ProofDisplay { proof: self, sugar }
    }

    /// True if the pivot cannot be recovered from the premises alone.
    fn pivot_is_ambiguous(&self) -> bool {
        match self.rule() {
            Rule::T { .. } | Rule::Tneq { .. } => {
                let (a, b) = (
                    self.children()[0].conclusion(),
                    self.children()[1].conclusion(),
                );
                let mut outcomes = shared_sides(a, b)
                    .into_iter()
                    .map(|j| join(a, b, &j))
                    .collect::<Vec<_>>();
                outcomes.sort();
                outcomes.dedup();
                outcomes.len() > 1
            }
            _ => false,
        }
    }
}

fn structural_cmp(a: &Proof, b: &Proof) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    a.depth()
        .cmp(&b.depth())
        .then_with(|| a.size().cmp(&b.size()))
        .then_with(|| a.conclusion().cmp(b.conclusion()))
        .then_with(|| a.rule().cmp(b.rule()))
        .then_with(|| a.children().cmp(b.children()))
}

/// Structural order used for canonical premise order and deterministic
/// listings: depth, size, conclusion, rule, premises.
impl Ord for Proof {
    fn cmp(&self, other: &Self) -> Ordering {
        structural_cmp(self, other)
    }
}

impl PartialOrd for Proof {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Proof {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash
                && self.0.size == other.0.size
                && self.0.rule == other.0.rule
                && self.0.children == other.0.children)
    }
}

impl Eq for Proof {}

impl Hash for Proof {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Debug for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(true))
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(false))
    }
}

impl Serialize for Proof {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.display(false))
    }
}

pub struct ProofDisplay<'a> {
    proof: &'a Proof,
    sugar: bool,
}

impl fmt::Display for ProofDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.proof;
        let sugar = self.sugar;
        let premises = |f: &mut fmt::Formatter<'_>, flips: Option<&[bool]>| -> fmt::Result {
            f.write_str("(")?;
            for (i, c) in p.children().iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                if flips.is_some_and(|fl| fl[i]) {
                    f.write_str("~")?;
                }
                write!(f, "{}", c.display(sugar))?;
            }
            f.write_str(")")
        };
        match p.rule() {
            Rule::Z(c) => {
                if sugar && c.name() == crate::term::ZERO {
                    f.write_str("Z")
                } else {
                    write!(f, "Z[{}]", c.name())
                }
            }
            Rule::I(a) => write!(f, "I({})", a.display_compact(sugar)),
            Rule::T { pivot } | Rule::Tneq { pivot } => {
                f.write_str(if p.kind() == RuleKind::T { "T" } else { "Tneq" })?;
                if p.pivot_is_ambiguous() {
                    write!(f, "[{}]", pivot.display(sugar))?;
                }
                premises(f, None)
            }
            Rule::S { symbol, flips } => {
                write!(f, "S[{}]", symbol.name())?;
                premises(f, Some(flips))
            }
            Rule::P => {
                f.write_str("P")?;
                premises(f, None)
            }
            Rule::F(a) => {
                write!(f, "F[{}]", a.display_compact(sugar))?;
                premises(f, None)
            }
        }
    }
}

/// Terms that are sides of both formulas, deduplicated.
fn shared_sides(a: &Formula, b: &Formula) -> Vec<Term> {
    let mut out: Vec<Term> = a
        .sides()
        .into_iter()
        .filter(|t| b.has_side(t))
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Joins `a` and `b` through `pivot`; the result has the kind of `b`.
fn join(a: &Formula, b: &Formula, pivot: &Term) -> Formula {
    let i = a.other_side(pivot).expect("pivot is a side").clone();
    let k = b.other_side(pivot).expect("pivot is a side").clone();
    Formula::new(b.kind(), i, k)
}

fn infer_pivot(rule: &'static str, a: &Formula, b: &Formula) -> Result<Term, ProofError> {
    let shared = shared_sides(a, b);
    let Some(first) = shared.first() else {
        return Err(ProofError::NoSharedTerm { rule });
    };
    let c = join(a, b, first);
    if shared.iter().all(|j| join(a, b, j) == c) {
        Ok(first.clone())
    } else {
        Err(ProofError::AmbiguousPivot { rule })
    }
}

/// The smallest pivot yielding the same conclusion as `pivot`, so that
/// equal proofs have equal pivots.
fn normalize_pivot(a: &Formula, b: &Formula, pivot: &Term) -> Term {
    let target = join(a, b, pivot);
    shared_sides(a, b)
        .into_iter()
        .find(|j| join(a, b, j) == target)
        .unwrap_or_else(|| pivot.clone())
}

fn order_tneq(x: Proof, y: Proof) -> Result<(Proof, Proof), ProofError> {
    match (x.conclusion().kind(), y.conclusion().kind()) {
        (FormulaKind::Equation, FormulaKind::Disequation) => Ok((x, y)),
        (FormulaKind::Disequation, FormulaKind::Equation) => Ok((y, x)),
        (FormulaKind::Equation, _) => Err(ProofError::PremiseKind {
            rule: "Tneq",
            index: 1,
            expected: "disequation",
        }),
        _ => Err(ProofError::PremiseKind {
            rule: "Tneq",
            index: 0,
            expected: "equation",
        }),
    }
}

fn expect_arity(rule: &'static str, children: &[Proof], n: usize) -> Result<(), ProofError> {
    if children.len() == n {
        Ok(())
    } else {
        Err(ProofError::Arity {
            rule,
            expected: n,
            found: children.len(),
        })
    }
}

fn expect_equation(rule: &'static str, children: &[Proof], index: usize) -> Result<(), ProofError> {
    if children[index].conclusion().is_equation() {
        Ok(())
    } else {
        Err(ProofError::PremiseKind {
            rule,
            index,
            expected: "equation",
        })
    }
}

/// Checks the rule table and builds the proof with its conclusion.
///
/// `T` premises are put in canonical order; `Tneq` premises are reordered
/// equation first; pivots and congruence orientations are normalized.
pub fn check_wellformed(rule: Rule, mut children: Vec<Proof>) -> Result<Proof, ProofError> {
    let (rule, conclusion) = match rule {
        Rule::Z(c) => {
            expect_arity("Z", &children, 0)?;
            if !c.is_constant() {
                return Err(ProofError::NotConstant(c.name().to_string()));
            }
            let t = Term::constant(c.clone());
            (Rule::Z(c), Formula::eq(t.clone(), t))
        }
        Rule::I(a) => {
            expect_arity("I", &children, 0)?;
            let c = a.clone();
            (Rule::I(a), c)
        }
        Rule::T { pivot } => {
            expect_arity("T", &children, 2)?;
            expect_equation("T", &children, 0)?;
            expect_equation("T", &children, 1)?;
            children.sort();
            let (a, b) = (children[0].conclusion(), children[1].conclusion());
            if !a.has_side(&pivot) || !b.has_side(&pivot) {
                return Err(ProofError::BadPivot {
                    rule: "T",
                    pivot: pivot.to_string(),
                });
            }
            let pivot = normalize_pivot(a, b, &pivot);
            let c = join(a, b, &pivot);
            (Rule::T { pivot }, c)
        }
        Rule::Tneq { pivot } => {
            expect_arity("Tneq", &children, 2)?;
            let [x, y]: [Proof; 2] = children.try_into().expect("two premises");
            let (e, d) = order_tneq(x, y)?;
            children = vec![e, d];
            let (a, b) = (children[0].conclusion(), children[1].conclusion());
            if !a.has_side(&pivot) || !b.has_side(&pivot) {
                return Err(ProofError::BadPivot {
                    rule: "Tneq",
                    pivot: pivot.to_string(),
                });
            }
            let pivot = normalize_pivot(a, b, &pivot);
            let c = join(a, b, &pivot);
            (Rule::Tneq { pivot }, c)
        }
        Rule::S { symbol, mut flips } => {
            expect_arity("S", &children, symbol.arity())?;
            if symbol.arity() == 0 {
                return Err(ProofError::Arity {
                    rule: "S",
                    expected: 1,
                    found: 0,
                });
            }
            if flips.len() != children.len() {
                return Err(ProofError::Arity {
                    rule: "S",
                    expected: children.len(),
                    found: flips.len(),
                });
            }
            for i in 0..children.len() {
                expect_equation("S", &children, i)?;
            }
            // reflexive premises have no orientation; the conclusion is
            // unordered, so the first oriented premise is never flipped
            for (f, c) in flips.iter_mut().zip(&children) {
                if c.conclusion().is_trivial() {
                    *f = false;
                }
            }
            if let Some(first) = children.iter().position(|c| !c.conclusion().is_trivial()) {
                if flips[first] {
                    flips.iter_mut().for_each(|f| *f = !*f);
                    for (f, c) in flips.iter_mut().zip(&children) {
                        if c.conclusion().is_trivial() {
                            *f = false;
                        }
                    }
                }
            }
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for (c, &flip) in children.iter().zip(&flips) {
                let f = c.conclusion();
                let (u, t) = if flip {
                    (f.rhs(), f.lhs())
                } else {
                    (f.lhs(), f.rhs())
                };
                left.push(u.clone());
                right.push(t.clone());
            }
            let c = Formula::eq(
                Term::app(symbol.clone(), left),
                Term::app(symbol.clone(), right),
            );
            (Rule::S { symbol, flips }, c)
        }
        Rule::P => {
            expect_arity("P", &children, 2)?;
            let c = children[1].conclusion().clone();
            (Rule::P, c)
        }
        Rule::F(a) => {
            expect_arity("F", &children, 1)?;
            let premise = children[0].conclusion();
            if !(premise.is_disequation() && premise.is_trivial()) {
                return Err(ProofError::NotContradiction);
            }
            if !a.is_equation() {
                return Err(ProofError::FConclusion);
            }
            let c = a.clone();
            (Rule::F(a), c)
        }
    };
    Ok(build(rule, children, conclusion))
}

fn build(rule: Rule, children: Vec<Proof>, conclusion: Formula) -> Proof {
    let depth = 1 + children.iter().map(Proof::depth).max().unwrap_or(0);
    let size = 1 + children.iter().map(Proof::size).sum::<usize>();
    let mut h = std::collections::hash_map::DefaultHasher::new();
    rule.hash(&mut h);
    for c in &children {
        h.write_u64(c.0.hash);
    }
    Proof(Arc::new(ProofNode {
        rule,
        children,
        conclusion,
        depth,
        size,
        hash: h.finish(),
    }))
}

/// The trivial proof `I(a)`: it assumes `a`, proves `a`, and has no other
/// subproof.
pub fn trivial_proof(a: Formula) -> Proof {
    let c = a.clone();
    build(Rule::I(a), Vec::new(), c)
}

pub fn conclusion(p: &Proof) -> &Formula {
    p.conclusion()
}

/// Formulas at `I` leaves.
pub fn assumptions(p: &Proof) -> BTreeSet<Formula> {
    fn go(p: &Proof, out: &mut BTreeSet<Formula>) {
        if let Rule::I(a) = p.rule() {
            out.insert(a.clone());
        }
        for c in p.children() {
            go(c, out);
        }
    }
    let mut out = BTreeSet::new();
    go(p, &mut out);
    out
}

/// All subtrees of `p`, including `p`, without duplicates, pre-order.
pub fn subproofs(p: &Proof) -> Vec<Proof> {
    fn go(p: &Proof, seen: &mut HashSet<Proof>, out: &mut Vec<Proof>) {
        if seen.insert(p.clone()) {
            out.push(p.clone());
        }
        for c in p.children() {
            go(c, seen, out);
        }
    }
    let mut out = Vec::new();
    go(p, &mut HashSet::new(), &mut out);
    out
}

/// Subtrees of `p` other than `p` itself.
pub fn strict_subproofs(p: &Proof) -> Vec<Proof> {
    subproofs(p).into_iter().filter(|q| q != p).collect()
}

/// Recomputes every conclusion bottom-up and compares with the caches.
pub fn conclusions_coherent(p: &Proof) -> bool {
    p.children().iter().all(conclusions_coherent)
        && check_wellformed(p.rule().clone(), p.children().to_vec())
            .is_ok_and(|q| q.conclusion() == p.conclusion())
}

/// A set of proofs, kept in structural order.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Justification {
    proofs: BTreeSet<Proof>,
}

impl Justification {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: Proof) -> bool {
        self.proofs.insert(p)
    }

    pub fn contains(&self, p: &Proof) -> bool {
        self.proofs.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Proof> {
        self.proofs.iter()
    }

    pub fn len(&self) -> usize {
        self.proofs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.proofs.is_empty()
    }

    /// Union of the assumptions.
    pub fn assumptions(&self) -> BTreeSet<Formula> {
        self.iter().flat_map(assumptions).collect()
    }

    /// Set of conclusions.
    pub fn conclusions(&self) -> BTreeSet<Formula> {
        self.iter().map(|p| p.conclusion().clone()).collect()
    }
}

impl FromIterator<Proof> for Justification {
    fn from_iter<I: IntoIterator<Item = Proof>>(iter: I) -> Self {
        Justification {
            proofs: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a Justification {
    type Item = &'a Proof;
    type IntoIter = std::collections::btree_set::Iter<'a, Proof>;

    fn into_iter(self) -> Self::IntoIter {
        self.proofs.iter()
    }
}

impl fmt::Debug for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.proofs.iter()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofParseError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("ill-formed proof at offset {offset}: {source}")]
    Rule { offset: usize, source: ProofError },
}

impl Cursor<'_> {
    fn proof(&mut self, symbols: &mut Symbols<'_>) -> Result<Proof, ProofParseError> {
        let Some((start, word)) = self.word() else {
            return Err(self.error("expected a proof").into());
        };
        let ill = |source| ProofParseError::Rule {
            offset: start,
            source,
        };
        match word {
            "Z" => {
                let name = if self.eat('[') {
                    let (_, w) = self
                        .word()
                        .ok_or_else(|| self.error("expected a constant"))?;
                    let w = w.to_string();
                    self.expect(']')?;
                    w
                } else {
                    crate::term::ZERO.to_string()
                };
                let t = Cursor::new(&name).term(symbols)?;
                Proof::z(t.head().clone()).map_err(ill)
            }
            "I" => {
                self.expect('(')?;
                let a = self.formula(symbols)?;
                self.expect(')')?;
                Ok(trivial_proof(a))
            }
            "T" | "Tneq" => {
                let pivot = if self.eat('[') {
                    let t = self.term(symbols)?;
                    self.expect(']')?;
                    Some(t)
                } else {
                    None
                };
                let (children, _) = self.premises(symbols)?;
                if children.len() != 2 {
                    return Err(ill(ProofError::Arity {
                        rule: if word == "T" { "T" } else { "Tneq" },
                        expected: 2,
                        found: children.len(),
                    }));
                }
                let [p, q]: [Proof; 2] = children.try_into().expect("two premises");
                match (word, pivot) {
                    ("T", Some(j)) => Proof::trans_at(p, q, j),
                    ("T", None) => Proof::trans(p, q),
                    (_, Some(j)) => check_wellformed(Rule::Tneq { pivot: j }, vec![p, q]),
                    (_, None) => Proof::trans_neq(p, q),
                }
                .map_err(ill)
            }
            "S" => {
                self.expect('[')?;
                let (off, name) = self.word().ok_or_else(|| self.error("expected a symbol"))?;
                self.expect(']')?;
                let (children, flips) = self.premises(symbols)?;
                let symbol = lookup_symbol(symbols, name, children.len(), off)?;
                check_wellformed(Rule::S { symbol, flips }, children).map_err(ill)
            }
            "P" => {
                let (children, _) = self.premises(symbols)?;
                check_wellformed(Rule::P, children).map_err(ill)
            }
            "F" => {
                self.expect('[')?;
                let a = self.formula(symbols)?;
                self.expect(']')?;
                let (children, _) = self.premises(symbols)?;
                check_wellformed(Rule::F(a), children).map_err(ill)
            }
            other => Err(ParseError::Syntax {
                offset: start,
                message: format!("unknown rule `{other}`"),
            }
            .into()),
        }
    }

    fn premises(
        &mut self,
        symbols: &mut Symbols<'_>,
    ) -> Result<(Vec<Proof>, Vec<bool>), ProofParseError> {
        self.expect('(')?;
        let mut children = Vec::new();
        let mut flips = Vec::new();
        loop {
            flips.push(self.eat('~'));
            children.push(self.proof(symbols)?);
            if self.eat(',') {
                continue;
            }
            self.expect(')')?;
            return Ok((children, flips));
        }
    }
}

fn lookup_symbol(
    symbols: &mut Symbols<'_>,
    name: &str,
    arity: usize,
    offset: usize,
) -> Result<Symbol, ParseError> {
    match symbols {
        Symbols::Fixed(sig) => match sig.get(name) {
            Some(s) if s.arity() == arity => Ok(s.clone()),
            Some(s) => Err(ParseError::Arity {
                offset,
                name: name.to_string(),
                expected: s.arity(),
                found: arity,
            }),
            None => Err(ParseError::UnknownSymbol {
                offset,
                name: name.to_string(),
            }),
        },
        Symbols::Infer(sig) => {
            let expected = sig.get(name).map_or(arity, Symbol::arity);
            sig.declare(name, arity).map_err(|_| ParseError::Arity {
                offset,
                name: name.to_string(),
                expected,
                found: arity,
            })
        }
    }
}

/// Parses the functional proof notation, e.g. `T(I(4=0),I(4=2))` or
/// `S[s](Z[0])`.
pub fn parse_proof(text: &str, sig: &Signature) -> Result<Proof, ProofParseError> {
    let mut cur = Cursor::new(text);
    let p = cur.proof(&mut Symbols::Fixed(sig))?;
    if !cur.at_end() {
        return Err(cur.error("trailing input").into());
    }
    Ok(p)
}

/// Parses a proof, declaring unseen symbols in `sig`.
pub fn parse_proof_infer(text: &str, sig: &mut Signature) -> Result<Proof, ProofParseError> {
    let mut cur = Cursor::new(text);
    let p = cur.proof(&mut Symbols::Infer(sig))?;
    if !cur.at_end() {
        return Err(cur.error("trailing input").into());
    }
    Ok(p)
}
