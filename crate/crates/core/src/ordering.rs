//! Recursive path ordering on proof terms, the preset catalogue, and the
//! lifting of proof comparisons to justifications.
//!
//! A proof is read as a term whose head is its rule and whose arguments are
//! its premises. Heads are compared by a strict partial order on rule kinds;
//! equal heads compare their premises with the kind's status. Assumption
//! leaves, the constant of `Z` and the formula of `F` are payloads, compared
//! by the configured [`LeafPolicy`]. Terms only appear inside payloads, so
//! every proof node dominates the terms it carries.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use crate::formula::Formula;
use crate::proof::{Justification, Proof, Rule, RuleKind};
use crate::term::{term_compare, Term, TermPrecedence};

/// Outcome of comparing two proofs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProofOrder {
    Greater,
    Less,
    Equal,
    Incomparable,
}

impl ProofOrder {
    pub fn reverse(self) -> Self {
        match self {
            ProofOrder::Greater => ProofOrder::Less,
            ProofOrder::Less => ProofOrder::Greater,
            other => other,
        }
    }

    pub fn is_ge(self) -> bool {
        matches!(self, ProofOrder::Greater | ProofOrder::Equal)
    }

    fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Greater => ProofOrder::Greater,
            Ordering::Less => ProofOrder::Less,
            Ordering::Equal => ProofOrder::Equal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Multiset,
    #[serde(alias = "lex")]
    Lexicographic,
}

/// How assumption leaves (and the payloads of `Z` and `F`) compare.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeafPolicy {
    /// Formulas as two-element multisets of sides under the path ordering
    /// on terms.
    ByTermOrder(TermPrecedence),
    /// Only `I(u = t) < I(c[u] = c[t])` for a non-empty context `c`.
    ByContextSubsumption,
    /// Formulas as multisets of the sizes of their sides; for tally terms
    /// that is the multiset of numeral values (plus one).
    ByNumeralValue,
    /// Distinct leaves are incomparable.
    Incomparable,
    /// Distinct proofs are incomparable, whatever their shape.
    Discrete,
}

impl LeafPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            LeafPolicy::ByTermOrder(_) => "term-order",
            LeafPolicy::ByContextSubsumption => "context",
            LeafPolicy::ByNumeralValue => "numeral",
            LeafPolicy::Incomparable => "incomparable",
            LeafPolicy::Discrete => "discrete",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("unknown rule kind `{0}`")]
    UnknownRule(String),
    #[error("rule precedence has a cycle through {0}")]
    Cycle(RuleKind),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("unknown leaf policy `{0}`")]
    UnknownLeafPolicy(String),
    #[error("bad ordering config: {0}")]
    Config(String),
}

/// A strict partial order on rule kinds, transitively closed.
#[derive(Clone, PartialEq, Eq)]
pub struct RulePrecedence {
    above: [[bool; 8]; 8],
}

impl RulePrecedence {
    pub fn empty() -> Self {
        RulePrecedence {
            above: [[false; 8]; 8],
        }
    }

    /// Builds the order from chains such as `P > I|Ineq > T > S > Z`, where
    /// `|` groups kinds at one level (unrelated to each other).
    pub fn from_chains<S: AsRef<str>>(chains: &[S]) -> Result<Self, OrderingError> {
        let mut prec = RulePrecedence::empty();
        for chain in chains {
            let levels: Vec<Vec<RuleKind>> = chain
                .as_ref()
                .split('>')
                .map(|level| {
                    level
                        .split('|')
                        .map(|name| {
                            let name = name.trim();
                            RuleKind::from_name(name)
                                .ok_or_else(|| OrderingError::UnknownRule(name.to_string()))
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<_, _>>()?;
            for (i, hi) in levels.iter().enumerate() {
                for lo in levels.iter().skip(i + 1) {
                    for &a in hi {
                        for &b in lo {
                            prec.above[a.index()][b.index()] = true;
                        }
                    }
                }
            }
        }
        prec.close()?;
        Ok(prec)
    }

    fn close(&mut self) -> Result<(), OrderingError> {
        for k in 0..8 {
            for i in 0..8 {
                for j in 0..8 {
                    if self.above[i][k] && self.above[k][j] {
                        self.above[i][j] = true;
                    }
                }
            }
        }
        for k in RuleKind::ALL {
            if self.above[k.index()][k.index()] {
                return Err(OrderingError::Cycle(k));
            }
        }
        Ok(())
    }

    pub fn greater(&self, a: RuleKind, b: RuleKind) -> bool {
        self.above[a.index()][b.index()]
    }

    pub fn related(&self, a: RuleKind, b: RuleKind) -> bool {
        self.greater(a, b) || self.greater(b, a)
    }
}

impl fmt::Debug for RulePrecedence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = RuleKind::ALL
            .iter()
            .flat_map(|&a| {
                RuleKind::ALL
                    .iter()
                    .filter(move |&&b| self.greater(a, b))
                    .map(move |&b| format!("{a}>{b}"))
            })
            .collect();
        write!(f, "{{{}}}", pairs.join(", "))
    }
}

/// Stable preset identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Completion,
    Paramodulation,
    Refutation,
    Deduction,
    Superposition,
    Discrete,
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::Completion,
        Preset::Paramodulation,
        Preset::Refutation,
        Preset::Deduction,
        Preset::Superposition,
        Preset::Discrete,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Completion => "completion",
            Preset::Paramodulation => "paramodulation",
            Preset::Refutation => "refutation",
            Preset::Deduction => "deduction",
            Preset::Superposition => "superposition",
            Preset::Discrete => "discrete",
        }
    }

    pub fn from_name(name: &str) -> Result<Preset, OrderingError> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| OrderingError::UnknownPreset(name.to_string()))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything that defines a proof ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingConfig {
    pub precedence: RulePrecedence,
    pub status: [Status; 8],
    pub leaf: LeafPolicy,
    /// A `T` whose pivot is smaller than both sides of its conclusion ranks
    /// above `I`, `Ineq`, `Tneq` and every other `T`, and below `P` and `F`.
    pub shared_term_weight: bool,
    pub name: Option<String>,
}

fn default_status() -> [Status; 8] {
    let mut status = [Status::Lexicographic; 8];
    status[RuleKind::T.index()] = Status::Multiset;
    status[RuleKind::Tneq.index()] = Status::Multiset;
    status
}

impl OrderingConfig {
    pub fn new(precedence: RulePrecedence, leaf: LeafPolicy) -> Self {
        OrderingConfig {
            precedence,
            status: default_status(),
            leaf,
            shared_term_weight: false,
            name: None,
        }
    }

    /// A preset over the given term precedence (used by the presets that
    /// compare leaves with the term ordering).
    pub fn preset(preset: Preset, terms: TermPrecedence) -> Self {
        let chains: &[&str] = match preset {
            Preset::Completion | Preset::Superposition | Preset::Discrete => {
                &["P > F > I|Ineq > Tneq > T > S > Z"]
            }
            Preset::Paramodulation => &["P > F > I|Ineq > Tneq > T > S > Z"],
            Preset::Refutation => &["P > I|Ineq > Tneq > T > S > Z > F"],
            Preset::Deduction => &["P > F > Tneq > T > S > Z > I|Ineq"],
        };
        let leaf = match preset {
            Preset::Completion | Preset::Superposition | Preset::Deduction => {
                LeafPolicy::ByTermOrder(terms)
            }
            Preset::Paramodulation => LeafPolicy::ByContextSubsumption,
            Preset::Refutation => LeafPolicy::ByNumeralValue,
            Preset::Discrete => LeafPolicy::Discrete,
        };
        let mut cfg = OrderingConfig::new(
            RulePrecedence::from_chains(chains).expect("preset chains are acyclic"),
            leaf,
        );
        cfg.shared_term_weight = preset == Preset::Superposition;
        cfg.name = Some(preset.name().to_string());
        cfg
    }

    pub fn completion(terms: TermPrecedence) -> Self {
        Self::preset(Preset::Completion, terms)
    }

    /// Disequation leaves below equation leaves, `F` cheapest, distinct
    /// leaves of one kind incomparable. Under this ordering an inconsistent
    /// presentation has exactly its disequations as canonical basis.
    pub fn contradiction_first() -> Self {
        let mut cfg = OrderingConfig::new(
            RulePrecedence::from_chains(&["P > I > Ineq > Tneq > T > S > Z > F"]).expect("acyclic"),
            LeafPolicy::Incomparable,
        );
        cfg.name = Some("contradiction-first".to_string());
        cfg
    }

    pub fn status_of(&self, kind: RuleKind) -> Status {
        self.status[kind.index()]
    }

    pub fn is_discrete(&self) -> bool {
        self.leaf == LeafPolicy::Discrete
    }

    /// The term precedence of a `ByTermOrder` leaf policy, if any.
    pub fn term_precedence(&self) -> Option<&TermPrecedence> {
        match &self.leaf {
            LeafPolicy::ByTermOrder(p) => Some(p),
            _ => None,
        }
    }

    pub fn label(&self) -> &str {
        self.name.as_deref().unwrap_or("custom")
    }

    /// Parses a key-value config:
    ///
    /// ```toml
    /// name = "custom"
    /// precedence = ["P > I > Ineq > Tneq > T > S > Z > F"]
    /// leaf = "incomparable"   # term-order | context | numeral | incomparable | discrete
    /// shared_term_weight = false
    /// [status]
    /// S = "lex"
    /// ```
    ///
    /// `terms` backs the `term-order` leaf policy.
    pub fn from_toml(text: &str, terms: TermPrecedence) -> Result<Self, OrderingError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            name: Option<String>,
            precedence: Vec<String>,
            leaf: String,
            #[serde(default)]
            shared_term_weight: bool,
            #[serde(default)]
            status: HashMap<String, Status>,
        }
        let raw: Raw = toml::from_str(text).map_err(|e| OrderingError::Config(e.to_string()))?;
        let leaf = match raw.leaf.as_str() {
            "term-order" => LeafPolicy::ByTermOrder(terms),
            "context" => LeafPolicy::ByContextSubsumption,
            "numeral" => LeafPolicy::ByNumeralValue,
            "incomparable" => LeafPolicy::Incomparable,
            "discrete" => LeafPolicy::Discrete,
            other => return Err(OrderingError::UnknownLeafPolicy(other.to_string())),
        };
        let mut cfg = OrderingConfig::new(RulePrecedence::from_chains(&raw.precedence)?, leaf);
        for (k, s) in raw.status {
            let kind = RuleKind::from_name(&k).ok_or(OrderingError::UnknownRule(k))?;
            cfg.status[kind.index()] = s;
        }
        cfg.shared_term_weight = raw.shared_term_weight;
        cfg.name = raw.name;
        Ok(cfg)
    }
}

/// Looks up a preset by name.
pub fn preset(name: &str, terms: TermPrecedence) -> Result<OrderingConfig, OrderingError> {
    Ok(OrderingConfig::preset(Preset::from_name(name)?, terms))
}

/// Compares two proofs under `cfg`.
pub fn proof_compare(p: &Proof, q: &Proof, cfg: &OrderingConfig) -> ProofOrder {
    Comparator::new(cfg).compare(p, q)
}

/// `p > q` under `cfg`.
pub fn proof_greater(p: &Proof, q: &Proof, cfg: &OrderingConfig) -> bool {
    Comparator::new(cfg).greater(p, q)
}

/// Path-ordering evaluator with a memo over node pairs.
pub struct Comparator<'a> {
    cfg: &'a OrderingConfig,
    memo: HashMap<(usize, usize), bool>,
}

enum Heads {
    Above,
    Below,
    Same,
    Unrelated,
}

fn node_id(p: &Proof) -> usize {
    // address inside the shared node; stable while the proof is borrowed
    p.conclusion() as *const Formula as usize
}

impl<'a> Comparator<'a> {
    pub fn new(cfg: &'a OrderingConfig) -> Self {
        Comparator {
            cfg,
            memo: HashMap::new(),
        }
    }

    pub fn compare(&mut self, p: &Proof, q: &Proof) -> ProofOrder {
        if p == q {
            ProofOrder::Equal
        } else if self.cfg.is_discrete() {
            ProofOrder::Incomparable
        } else if self.gt(p, q) {
            ProofOrder::Greater
        } else if self.gt(q, p) {
            ProofOrder::Less
        } else {
            ProofOrder::Incomparable
        }
    }

    pub fn greater(&mut self, p: &Proof, q: &Proof) -> bool {
        !self.cfg.is_discrete() && p != q && self.gt(p, q)
    }

    fn ge(&mut self, p: &Proof, q: &Proof) -> bool {
        p == q || self.gt(p, q)
    }

    fn gt(&mut self, p: &Proof, q: &Proof) -> bool {
        // small pairs are cheaper to recompute than to hash
        if p.size() * q.size() <= 16 {
            return self.gt_uncached(p, q);
        }
        let key = (node_id(p), node_id(q));
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = self.gt_uncached(p, q);
        self.memo.insert(key, v);
        v
    }

    fn gt_uncached(&mut self, p: &Proof, q: &Proof) -> bool {
        if p.children().iter().any(|c| self.ge(c, q)) {
            return true;
        }
        match self.heads(p, q) {
            Heads::Above => q.children().iter().all(|c| self.gt(p, c)),
            Heads::Same => self.same_head_gt(p, q),
            Heads::Below | Heads::Unrelated => false,
        }
    }

    fn heads(&self, p: &Proof, q: &Proof) -> Heads {
        let (kp, kq) = (p.kind(), q.kind());
        if self.cfg.shared_term_weight && (kp == RuleKind::T || kq == RuleKind::T) {
            // a T whose pivot is below both sides of its conclusion sits
            // just under F; any other T keeps its place
            let lifted = |t: &Proof| match t.rule() {
                Rule::T { pivot } => self.pivot_is_smallest(t, pivot),
                _ => false,
            };
            let (lp, lq) = (lifted(p), lifted(q));
            let over = |k: RuleKind| !matches!(k, RuleKind::P | RuleKind::F | RuleKind::T);
            match (lp, lq) {
                (true, true) => return Heads::Same,
                (true, false) if kq == RuleKind::T || over(kq) => return Heads::Above,
                (false, true) if kp == RuleKind::T || over(kp) => return Heads::Below,
                _ => {}
            }
        }
        if kp == kq {
            if let (Rule::S { symbol: f, .. }, Rule::S { symbol: g, .. }) = (p.rule(), q.rule()) {
                if f != g {
                    return match &self.cfg.leaf {
                        LeafPolicy::ByTermOrder(prec) => match prec.compare_symbols(f, g) {
                            Ordering::Greater => Heads::Above,
                            Ordering::Less => Heads::Below,
                            Ordering::Equal => Heads::Same,
                        },
                        _ => Heads::Unrelated,
                    };
                }
            }
            return Heads::Same;
        }
        let prec = &self.cfg.precedence;
        if prec.greater(kp, kq) {
            Heads::Above
        } else if prec.greater(kq, kp) {
            Heads::Below
        } else if matches!(
            (kp, kq),
            (RuleKind::I, RuleKind::Ineq) | (RuleKind::Ineq, RuleKind::I)
        ) {
            Heads::Same
        } else {
            Heads::Unrelated
        }
    }

    fn pivot_is_smallest(&self, t: &Proof, pivot: &Term) -> bool {
        let c = t.conclusion();
        let below = |x: &Term| match &self.cfg.leaf {
            LeafPolicy::ByTermOrder(prec) => term_compare(pivot, x, prec) == Ordering::Less,
            _ => pivot.size() < x.size(),
        };
        below(c.lhs()) && below(c.rhs())
    }

    fn same_head_gt(&mut self, p: &Proof, q: &Proof) -> bool {
        match (p.rule(), q.rule()) {
            (Rule::I(a), Rule::I(b)) => {
                formula_compare(a, b, &self.cfg.leaf) == ProofOrder::Greater
            }
            (Rule::Z(c), Rule::Z(d)) => {
                let (c, d) = (Term::constant(c.clone()), Term::constant(d.clone()));
                payload_term_compare(&c, &d, &self.cfg.leaf) == ProofOrder::Greater
            }
            (Rule::F(a), Rule::F(b)) => match formula_compare(a, b, &self.cfg.leaf) {
                ProofOrder::Greater => q.children().iter().all(|c| self.gt(p, c)),
                ProofOrder::Equal => self.premises_gt(p, q),
                _ => false,
            },
            _ => self.premises_gt(p, q),
        }
    }

    fn premises_gt(&mut self, p: &Proof, q: &Proof) -> bool {
        match self.cfg.status_of(p.kind()) {
            Status::Multiset => self.multiset_gt(p.children(), q.children()),
            Status::Lexicographic => {
                let mut decided = false;
                for (a, b) in p.children().iter().zip(q.children()) {
                    if a == b {
                        continue;
                    }
                    if !self.gt(a, b) {
                        return false;
                    }
                    decided = true;
                    break;
                }
                if !decided && p.children().len() <= q.children().len() {
                    return false;
                }
                q.children().iter().all(|c| self.gt(p, c))
            }
        }
    }

    fn multiset_gt(&mut self, m: &[Proof], n: &[Proof]) -> bool {
        let mut m: Vec<&Proof> = m.iter().collect();
        let mut rest_n = Vec::new();
        for x in n {
            match m.iter().position(|y| *y == x) {
                Some(i) => {
                    m.swap_remove(i);
                }
                None => rest_n.push(x),
            }
        }
        !m.is_empty() && rest_n.iter().all(|x| m.iter().any(|y| self.gt(y, x)))
    }
}

/// Compares two formulas as leaf payloads.
pub fn formula_compare(a: &Formula, b: &Formula, policy: &LeafPolicy) -> ProofOrder {
    if a == b {
        return ProofOrder::Equal;
    }
    match policy {
        LeafPolicy::ByTermOrder(prec) => {
            let o = multiset_cmp_total(&[a.lhs(), a.rhs()], &[b.lhs(), b.rhs()], |x, y| {
                term_compare(x, y, prec)
            });
            match o {
                Ordering::Equal => ProofOrder::Incomparable,
                o => ProofOrder::from_ordering(o),
            }
        }
        LeafPolicy::ByNumeralValue => {
            let (va, vb) = (
                [a.lhs().size(), a.rhs().size()],
                [b.lhs().size(), b.rhs().size()],
            );
            match multiset_cmp_total(&[&va[0], &va[1]], &[&vb[0], &vb[1]], |x, y| x.cmp(y)) {
                Ordering::Equal => ProofOrder::Incomparable,
                o => ProofOrder::from_ordering(o),
            }
        }
        LeafPolicy::ByContextSubsumption => {
            if a.kind() != b.kind() {
                ProofOrder::Incomparable
            } else if in_context(a, b) {
                ProofOrder::Less
            } else if in_context(b, a) {
                ProofOrder::Greater
            } else {
                ProofOrder::Incomparable
            }
        }
        LeafPolicy::Incomparable | LeafPolicy::Discrete => ProofOrder::Incomparable,
    }
}

fn payload_term_compare(c: &Term, d: &Term, policy: &LeafPolicy) -> ProofOrder {
    if c == d {
        return ProofOrder::Equal;
    }
    match policy {
        LeafPolicy::ByTermOrder(prec) => ProofOrder::from_ordering(term_compare(c, d, prec)),
        LeafPolicy::ByNumeralValue => match c.size().cmp(&d.size()) {
            Ordering::Equal => ProofOrder::Incomparable,
            o => ProofOrder::from_ordering(o),
        },
        _ => ProofOrder::Incomparable,
    }
}

/// Multiset extension of a total order, for two-element multisets.
fn multiset_cmp_total<T: ?Sized>(
    m: &[&T; 2],
    n: &[&T; 2],
    cmp: impl Fn(&T, &T) -> Ordering,
) -> Ordering {
    let sort = |x: &[&T; 2]| -> [usize; 2] {
        if cmp(x[0], x[1]) == Ordering::Less {
            [1, 0]
        } else {
            [0, 1]
        }
    };
    let (sm, sn) = (sort(m), sort(n));
    // for total orders the multiset extension is lexicographic on the
    // descending sorted sequences
    cmp(m[sm[0]], n[sn[0]]).then_with(|| cmp(m[sm[1]], n[sn[1]]))
}

/// True if `big` is `c[u] = c[t]` (same kind) for `small = (u = t)` and a
/// non-empty context `c`.
pub fn in_context(small: &Formula, big: &Formula) -> bool {
    if small.kind() != big.kind() {
        return false;
    }
    let (u, t) = (small.lhs(), small.rhs());
    if u == t {
        return big.is_trivial() && big.lhs() != u && big.lhs().contains(u);
    }
    fn descend(x: &Term, y: &Term, u: &Term, t: &Term, depth: usize) -> bool {
        if depth > 0 && ((x == u && y == t) || (x == t && y == u)) {
            return true;
        }
        if x.head() != y.head() || x.args().is_empty() {
            return false;
        }
        let diff: Vec<usize> = (0..x.args().len())
            .filter(|&i| x.args()[i] != y.args()[i])
            .collect();
        match diff.as_slice() {
            [i] => descend(&x.args()[*i], &y.args()[*i], u, t, depth + 1),
            _ => false,
        }
    }
    descend(big.lhs(), big.rhs(), u, t, 0)
}

/// `P ⊒ Q`: every proof in `p` has a proof in `q` of the same conclusion
/// that is no greater.
pub fn justification_better(p: &Justification, q: &Justification, cfg: &OrderingConfig) -> bool {
    lifted(p.iter(), q.iter(), cfg, false)
}

/// `P ⊐ Q`: as [`justification_better`] with a strictly smaller witness.
pub fn justification_much_better(
    p: &Justification,
    q: &Justification,
    cfg: &OrderingConfig,
) -> bool {
    lifted(p.iter(), q.iter(), cfg, true)
}

/// `P ≃ Q`: each is better than the other.
pub fn justification_similar(p: &Justification, q: &Justification, cfg: &OrderingConfig) -> bool {
    justification_better(p, q, cfg) && justification_better(q, p, cfg)
}

/// The lifted comparison over arbitrary proof collections.
pub(crate) fn lifted<'p>(
    p: impl Iterator<Item = &'p Proof>,
    q: impl Iterator<Item = &'p Proof>,
    cfg: &OrderingConfig,
    strict: bool,
) -> bool {
    let mut by_conclusion: HashMap<&Formula, Vec<&Proof>> = HashMap::new();
    for x in q {
        by_conclusion.entry(x.conclusion()).or_default().push(x);
    }
    let mut cmp = Comparator::new(cfg);
    for x in p {
        let Some(candidates) = by_conclusion.get(x.conclusion()) else {
            return false;
        };
        let ok = candidates.iter().any(|y| {
            if strict {
                cmp.greater(x, y)
            } else {
                x == *y || cmp.greater(x, y)
            }
        });
        if !ok {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::proof::{trivial_proof, Proof};
    use crate::term::{Signature, Symbol};

    fn tally() -> OrderingConfig {
        OrderingConfig::completion(TermPrecedence::default_for(&Signature::tally()))
    }

    fn i(a: usize, b: usize) -> Proof {
        trivial_proof(Formula::num_eq(a, b))
    }

    fn s() -> Symbol {
        Symbol::new("s", 1)
    }

    #[test]
    fn completion_worked_inequality() {
        let sig = Signature::from_symbols([("s", 1), ("a", 0), ("b", 0), ("c", 0)]).unwrap();
        let cfg = OrderingConfig::completion(TermPrecedence::parse("s,a,b,c").unwrap());
        let f = |t: &str| trivial_proof(parse_formula(t, &sig).unwrap());
        let lhs = f("s(a) = b");
        let rhs = Proof::trans(Proof::cong(s(), vec![f("a = c")]).unwrap(), f("s(c) = b")).unwrap();
        assert_eq!(rhs.conclusion(), lhs.conclusion());
        assert_eq!(proof_compare(&lhs, &rhs, &cfg), ProofOrder::Greater);
        assert_eq!(proof_compare(&rhs, &lhs, &cfg), ProofOrder::Less);
    }

    #[test]
    fn redundant_tally_leaf() {
        let cfg = tally();
        let cheaper = Proof::trans(Proof::cong_tower(&s(), 2, i(2, 0)).unwrap(), i(2, 0)).unwrap();
        assert_eq!(cheaper.conclusion(), &Formula::num_eq(4, 0));
        assert_eq!(proof_compare(&i(4, 0), &cheaper, &cfg), ProofOrder::Greater);
    }

    #[test]
    fn deduce_step_inequality_instance() {
        // I(w = t[u]) > T(I(w = t[v]), S^n(I(u = v))) with w = 0, t[u] = u = 2, v = 0
        let cfg = tally();
        let rhs = Proof::trans(i(0, 0), i(2, 0)).unwrap();
        assert_eq!(rhs.conclusion(), &Formula::num_eq(2, 0));
        let lhs = i(2, 0);
        // here n = 0 and t[v] = 0, so the premise I(0 = 0) is trivial
        assert_eq!(proof_compare(&rhs, &lhs, &cfg), ProofOrder::Greater);
        // with a proper context: w = 0, t[u] = 4, u = 2, v = 0
        let lhs = i(4, 0);
        let rhs = Proof::trans(i(2, 0), Proof::cong_tower(&s(), 2, i(2, 0)).unwrap()).unwrap();
        assert_eq!(rhs.conclusion(), lhs.conclusion());
        assert_eq!(proof_compare(&lhs, &rhs, &cfg), ProofOrder::Greater);
    }

    #[test]
    fn reflexive_and_discrete() {
        let p = Proof::trans(i(4, 0), i(4, 2)).unwrap();
        for preset in Preset::ALL {
            let cfg = OrderingConfig::preset(preset, TermPrecedence::default());
            assert_eq!(proof_compare(&p, &p, &cfg), ProofOrder::Equal);
        }
        let d = OrderingConfig::preset(Preset::Discrete, TermPrecedence::default());
        assert_eq!(proof_compare(&p, &i(2, 0), &d), ProofOrder::Incomparable);
        assert_eq!(
            proof_compare(&Proof::zero(), &i(0, 0), &d),
            ProofOrder::Incomparable
        );
    }

    #[test]
    fn z_below_assumption_under_completion() {
        assert_eq!(
            proof_compare(&i(0, 0), &Proof::zero(), &tally()),
            ProofOrder::Greater
        );
    }

    #[test]
    fn refutation_prefers_ex_falso() {
        let cfg = preset("refutation", TermPrecedence::default()).unwrap();
        let contradiction = trivial_proof(Formula::num_neq(0, 0));
        let f = Proof::ex_falso(Formula::num_eq(3, 1), contradiction).unwrap();
        assert_eq!(proof_compare(&f, &i(3, 1), &cfg), ProofOrder::Less);
        let via_t = Proof::trans(i(3, 2), i(2, 1)).unwrap();
        assert_eq!(proof_compare(&f, &via_t, &cfg), ProofOrder::Less);
    }

    #[test]
    fn context_subsumption_leaves() {
        assert!(in_context(&Formula::num_eq(2, 0), &Formula::num_eq(4, 2)));
        assert!(!in_context(&Formula::num_eq(2, 0), &Formula::num_eq(2, 0)));
        assert!(!in_context(&Formula::num_eq(2, 0), &Formula::num_eq(4, 0)));
        assert!(in_context(&Formula::num_eq(0, 0), &Formula::num_eq(3, 3)));
        let cfg = preset("paramodulation", TermPrecedence::default()).unwrap();
        assert_eq!(proof_compare(&i(4, 2), &i(2, 0), &cfg), ProofOrder::Greater);
        assert_eq!(
            proof_compare(&i(4, 0), &i(2, 0), &cfg),
            ProofOrder::Incomparable
        );
        // S(S(I(2=0))) is cheaper than I(4=2)
        let ss = Proof::cong_tower(&s(), 2, i(2, 0)).unwrap();
        assert_eq!(proof_compare(&i(4, 2), &ss, &cfg), ProofOrder::Greater);
    }

    #[test]
    fn deduction_prefers_assumptions() {
        let cfg = preset(
            "deduction",
            TermPrecedence::default_for(&Signature::tally()),
        )
        .unwrap();
        let tower = Proof::cong_tower(&s(), 2, Proof::zero()).unwrap();
        assert_eq!(proof_compare(&i(2, 2), &tower, &cfg), ProofOrder::Less);
        assert_eq!(
            proof_compare(&i(0, 0), &Proof::zero(), &cfg),
            ProofOrder::Less
        );
    }

    #[test]
    fn rule_precedence_parsing() {
        let p = RulePrecedence::from_chains(&["P > I|Ineq > T", "T > S > Z"]).unwrap();
        assert!(p.greater(RuleKind::P, RuleKind::Z));
        assert!(!p.related(RuleKind::I, RuleKind::Ineq));
        assert!(matches!(
            RulePrecedence::from_chains(&["T > S", "S > T"]),
            Err(OrderingError::Cycle(_))
        ));
        assert!(matches!(
            RulePrecedence::from_chains(&["T > Q"]),
            Err(OrderingError::UnknownRule(_))
        ));
        let completion = tally();
        for (a, b) in [
            (RuleKind::P, RuleKind::I),
            (RuleKind::I, RuleKind::T),
            (RuleKind::T, RuleKind::S),
            (RuleKind::S, RuleKind::Z),
        ] {
            assert!(completion.precedence.greater(a, b));
        }
    }

    #[test]
    fn config_file_round() {
        let text = r#"
name = "mine"
precedence = ["P > I > Ineq > Tneq > T > S > Z > F"]
leaf = "incomparable"
[status]
S = "lex"
T = "multiset"
"#;
        let cfg = OrderingConfig::from_toml(text, TermPrecedence::default()).unwrap();
        assert_eq!(cfg.label(), "mine");
        assert_eq!(cfg.leaf, LeafPolicy::Incomparable);
        assert!(cfg.precedence.greater(RuleKind::I, RuleKind::Ineq));
        assert!(OrderingConfig::from_toml("leaf = 3", TermPrecedence::default()).is_err());
        assert!(matches!(
            OrderingConfig::from_toml(
                "precedence = []\nleaf = \"fancy\"",
                TermPrecedence::default()
            ),
            Err(OrderingError::UnknownLeafPolicy(_))
        ));
        assert!(matches!(
            preset("nope", TermPrecedence::default()),
            Err(OrderingError::UnknownPreset(_))
        ));
    }

    #[test]
    fn lifted_relations() {
        let cfg = tally();
        let big: Justification = [i(4, 0)].into_iter().collect();
        let small: Justification =
            [Proof::trans(Proof::cong_tower(&s(), 2, i(2, 0)).unwrap(), i(2, 0)).unwrap()]
                .into_iter()
                .collect();
        assert!(justification_better(&big, &small, &cfg));
        assert!(justification_much_better(&big, &small, &cfg));
        assert!(!justification_better(&small, &big, &cfg));
        assert!(justification_better(&Justification::new(), &small, &cfg));
        assert!(justification_similar(&big, &big, &cfg));
        assert!(!justification_much_better(&big, &big, &cfg));
    }
}
