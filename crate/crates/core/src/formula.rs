//! Unordered ground equations and disequations, presentations, and the
//! bounded theory closure computed by congruence closure.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::term::{term_universe, Cursor, ParseError, Signature, SignatureError, Symbols, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FormulaKind {
    Equation,
    Disequation,
}

impl FormulaKind {
    pub fn symbol(self) -> &'static str {
        match self {
            FormulaKind::Equation => "=",
            FormulaKind::Disequation => "!=",
        }
    }
}

/// `s = t` or `s != t` with unordered sides.
///
/// Sides are stored in a canonical order (larger term first, ties broken by
/// the structural order) so `s = t` and `t = s` are the same value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Formula {
    kind: FormulaKind,
    lhs: Term,
    rhs: Term,
}

impl Formula {
    pub fn new(kind: FormulaKind, a: Term, b: Term) -> Self {
        let a_first = match b.size().cmp(&a.size()) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => a <= b,
        };
        let (lhs, rhs) = if a_first { (a, b) } else { (b, a) };
        Formula { kind, lhs, rhs }
    }

    pub fn eq(a: Term, b: Term) -> Self {
        Formula::new(FormulaKind::Equation, a, b)
    }

    pub fn neq(a: Term, b: Term) -> Self {
        Formula::new(FormulaKind::Disequation, a, b)
    }

    /// `i = j` over tally numerals.
    pub fn num_eq(i: usize, j: usize) -> Self {
        Formula::eq(Term::numeral(i), Term::numeral(j))
    }

    /// `i != j` over tally numerals.
    pub fn num_neq(i: usize, j: usize) -> Self {
        Formula::neq(Term::numeral(i), Term::numeral(j))
    }

    pub fn kind(&self) -> FormulaKind {
        self.kind
    }

    pub fn is_equation(&self) -> bool {
        self.kind == FormulaKind::Equation
    }

    pub fn is_disequation(&self) -> bool {
        self.kind == FormulaKind::Disequation
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    pub fn sides(&self) -> [&Term; 2] {
        [&self.lhs, &self.rhs]
    }

    /// Both sides identical: `t = t` or `t != t`.
    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn has_side(&self, t: &Term) -> bool {
        &self.lhs == t || &self.rhs == t
    }

    /// The side opposite `t`, if `t` is a side.
    pub fn other_side(&self, t: &Term) -> Option<&Term> {
        if &self.lhs == t {
            Some(&self.rhs)
        } else if &self.rhs == t {
            Some(&self.lhs)
        } else {
            None
        }
    }

    pub fn max_side_size(&self) -> usize {
        self.lhs.size().max(self.rhs.size())
    }

    pub fn display(&self, sugar: bool) -> FormulaDisplay<'_> {
        FormulaDisplay {
            formula: self,
            sugar,
            compact: false,
        }
    }

    /// Without spaces around the operator, as used inside proof terms.
    pub fn display_compact(&self, sugar: bool) -> FormulaDisplay<'_> {
        FormulaDisplay {
            formula: self,
            sugar,
            compact: true,
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(true))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(false))
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.display(false))
    }
}

pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    sugar: bool,
    compact: bool,
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = self.formula.kind.symbol();
        let l = self.formula.lhs.display(self.sugar);
        let r = self.formula.rhs.display(self.sugar);
        if self.compact {
            write!(f, "{l}{op}{r}")
        } else {
            write!(f, "{l} {op} {r}")
        }
    }
}

impl Cursor<'_> {
    pub(crate) fn formula(&mut self, symbols: &mut Symbols<'_>) -> Result<Formula, ParseError> {
        let lhs = self.term(symbols)?;
        let kind = if self.eat_str("!=") {
            FormulaKind::Disequation
        } else if self.eat('=') {
            FormulaKind::Equation
        } else {
            return Err(self.error("expected `=` or `!=`"));
        };
        let rhs = self.term(symbols)?;
        Ok(Formula::new(kind, lhs, rhs))
    }
}

/// Parses a single formula against a declared signature.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let mut cur = Cursor::new(text);
    let f = cur.formula(&mut Symbols::Fixed(sig))?;
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    Ok(f)
}

/// A finite set of formulas.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Presentation {
    formulas: BTreeSet<Formula>,
}

impl Presentation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn formulas(&self) -> &BTreeSet<Formula> {
        &self.formulas
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.formulas.iter()
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.formulas.contains(f)
    }

    pub fn insert(&mut self, f: Formula) -> bool {
        self.formulas.insert(f)
    }

    pub fn remove(&mut self, f: &Formula) -> bool {
        self.formulas.remove(f)
    }

    pub fn without(&self, f: &Formula) -> Presentation {
        let mut p = self.clone();
        p.remove(f);
        p
    }

    pub fn union(&self, other: &Presentation) -> Presentation {
        self.formulas.union(&other.formulas).cloned().collect()
    }

    pub fn difference(&self, other: &Presentation) -> Presentation {
        self.formulas.difference(&other.formulas).cloned().collect()
    }

    pub fn is_subset(&self, other: &Presentation) -> bool {
        self.formulas.is_subset(&other.formulas)
    }

    pub fn has_disequations(&self) -> bool {
        self.iter().any(Formula::is_disequation)
    }

    pub fn max_side_size(&self) -> usize {
        self.iter().map(Formula::max_side_size).max().unwrap_or(0)
    }

    /// The symbols occurring in the formulas.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        for f in self.iter() {
            for side in f.sides() {
                sig.absorb(side).expect("terms respect arities");
            }
        }
        sig
    }

    pub fn display(&self, sugar: bool) -> PresentationDisplay<'_> {
        PresentationDisplay {
            presentation: self,
            sugar,
        }
    }
}

impl FromIterator<Formula> for Presentation {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        Presentation {
            formulas: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a Presentation {
    type Item = &'a Formula;
    type IntoIter = std::collections::btree_set::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.formulas.iter()
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.formulas.iter()).finish()
    }
}

pub struct PresentationDisplay<'a> {
    presentation: &'a Presentation,
    sugar: bool,
}

/// `{a = c, s(c) = b}`
impl fmt::Display for PresentationDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.presentation.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", x.display(self.sugar))?;
        }
        f.write_str("}")
    }
}

impl Serialize for Presentation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.formulas.iter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("line {line}: {source}")]
    Parse { line: usize, source: ParseError },
}

/// Parses the presentation file format: one formula per line, `=` or `!=`
/// infix, `#` comment lines, blank lines ignored. Symbols are declared on
/// first use.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut sig = Signature::new();
    parse_presentation_into(text, &mut Symbols::Infer(&mut sig))
}

/// Like [`parse_presentation`], but every symbol must be declared in `sig`.
pub fn parse_presentation_with(
    text: &str,
    sig: &Signature,
) -> Result<Presentation, PresentationError> {
    parse_presentation_into(text, &mut Symbols::Fixed(sig))
}

fn parse_presentation_into(
    text: &str,
    symbols: &mut Symbols<'_>,
) -> Result<Presentation, PresentationError> {
    let mut out = Presentation::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cur = Cursor::new(line);
        let parsed = cur.formula(symbols).and_then(|f| {
            if cur.at_end() {
                Ok(f)
            } else {
                Err(cur.error("trailing input"))
            }
        });
        match parsed {
            Ok(f) => {
                out.insert(f);
            }
            Err(source) => {
                return Err(PresentationError::Parse {
                    line: i + 1,
                    source,
                })
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("formula `{formula}` exceeds the term-size bound {bound}")]
    FormulaTooLarge { formula: String, bound: usize },
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

/// Checks that every side of every formula fits in `bound` nodes.
pub fn check_within(a: &Presentation, bound: usize) -> Result<(), BoundError> {
    match a.iter().find(|f| f.max_side_size() > bound) {
        Some(f) => Err(BoundError::FormulaTooLarge {
            formula: f.display(true).to_string(),
            bound,
        }),
        None => Ok(()),
    }
}

/// The theorems of a presentation whose sides have at most `bound` nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheorySlice {
    pub bound: usize,
    pub theorems: Presentation,
    pub inconsistent: bool,
}

impl TheorySlice {
    pub fn contains(&self, f: &Formula) -> bool {
        self.theorems.contains(f)
    }

    pub fn equations(&self) -> impl Iterator<Item = &Formula> {
        self.theorems.iter().filter(|f| f.is_equation())
    }
}

/// Every equation and disequation over the given terms.
pub fn all_formulas(terms: &[Term]) -> Presentation {
    let mut out = Presentation::new();
    for (i, x) in terms.iter().enumerate() {
        for y in &terms[i..] {
            out.insert(Formula::eq(x.clone(), y.clone()));
            out.insert(Formula::neq(x.clone(), y.clone()));
        }
    }
    out
}

/// Bounded theory `A*`: every formula with sides of at most `bound` nodes
/// derivable from `a` without leaving the bounded term universe.
///
/// Equations come from congruence closure over the universe of terms built
/// from `sig` and the symbols of `a`; disequations are propagated through
/// the resulting classes. A class containing both sides of a disequation
/// makes the slice inconsistent, and then every bounded formula is a
/// theorem.
pub fn theory_closure(
    a: &Presentation,
    sig: &Signature,
    bound: usize,
) -> Result<TheorySlice, BoundError> {
    check_within(a, bound)?;
    let mut full = sig.clone();
    full.extend(&a.signature())?;
    let universe = term_universe(&full, bound);
    let cc = CongruenceClosure::build(&universe, a.iter().filter(|f| f.is_equation()));

    let mut inconsistent = false;
    let mut diseq_classes: BTreeSet<(usize, usize)> = BTreeSet::new();
    for d in a.iter().filter(|f| f.is_disequation()) {
        let x = cc.class_of(d.lhs()).expect("within bound");
        let y = cc.class_of(d.rhs()).expect("within bound");
        if x == y {
            inconsistent = true;
            break;
        }
        diseq_classes.insert((x.min(y), x.max(y)));
    }

    if inconsistent {
        return Ok(TheorySlice {
            bound,
            theorems: all_formulas(&universe),
            inconsistent,
        });
    }

    let mut members: HashMap<usize, Vec<&Term>> = HashMap::new();
    for t in &universe {
        members.entry(cc.class_of(t).unwrap()).or_default().push(t);
    }
    let mut theorems = Presentation::new();
    for class in members.values() {
        for (i, x) in class.iter().enumerate() {
            for y in &class[i..] {
                theorems.insert(Formula::eq((*x).clone(), (*y).clone()));
            }
        }
    }
    for (cx, cy) in diseq_classes {
        for x in &members[&cx] {
            for y in &members[&cy] {
                theorems.insert(Formula::neq((*x).clone(), (*y).clone()));
            }
        }
    }
    Ok(TheorySlice {
        bound,
        theorems,
        inconsistent,
    })
}

/// Union-find over a fixed term universe, closed under congruence for the
/// applications that stay inside the universe.
pub struct CongruenceClosure {
    index: HashMap<Term, usize>,
    parent: Vec<usize>,
}

impl CongruenceClosure {
    pub fn build<'a>(universe: &[Term], equations: impl Iterator<Item = &'a Formula>) -> Self {
        let index: HashMap<Term, usize> = universe
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let mut cc = CongruenceClosure {
            parent: (0..universe.len()).collect(),
            index,
        };
        for e in equations {
            let (x, y) = (cc.index[e.lhs()], cc.index[e.rhs()]);
            cc.union(x, y);
        }
        // compound terms with their argument indices
        let apps: Vec<(usize, &Term, Vec<usize>)> = universe
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.args().is_empty())
            .map(|(i, t)| (i, t, t.args().iter().map(|a| cc.index[a]).collect()))
            .collect();
        loop {
            let mut changed = false;
            let mut table: HashMap<(&crate::term::Symbol, Vec<usize>), usize> = HashMap::new();
            for (i, t, args) in &apps {
                let key = (t.head(), args.iter().map(|&a| cc.find(a)).collect());
                match table.get(&key) {
                    Some(&j) => {
                        if cc.find(j) != cc.find(*i) {
                            cc.union(j, *i);
                            changed = true;
                        }
                    }
                    None => {
                        table.insert(key, *i);
                    }
                }
            }
            if !changed {
                break;
            }
        }
        cc
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            let (lo, hi) = (rx.min(ry), rx.max(ry));
            self.parent[hi] = lo;
        }
    }

    /// Representative index of the class of `t`, if `t` is in the universe.
    pub fn class_of(&self, t: &Term) -> Option<usize> {
        self.index.get(t).map(|&i| self.find(i))
    }

    pub fn equal(&self, s: &Term, t: &Term) -> bool {
        match (self.class_of(s), self.class_of(t)) {
            (Some(a), Some(b)) => a == b,
            _ => s == t,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nums(pairs: &[(usize, usize)]) -> Presentation {
        pairs.iter().map(|&(i, j)| Formula::num_eq(i, j)).collect()
    }

    #[test]
    fn formulas_are_unordered() {
        assert_eq!(Formula::num_eq(4, 2), Formula::num_eq(2, 4));
        assert_eq!(Formula::num_eq(2, 4).display(true).to_string(), "4 = 2");
        assert_ne!(Formula::num_eq(4, 2), Formula::num_neq(4, 2));
    }

    #[test]
    fn parse_worked_presentation() {
        let p = parse_presentation("4 = 2\n4 = 0").unwrap();
        assert_eq!(p, nums(&[(4, 2), (4, 0)]));
        let p = parse_presentation("# comment\n\n0 = 0\n0 = 0\n").unwrap();
        assert_eq!(p.len(), 1);
        let p = parse_presentation("a != b").unwrap();
        let f = p.iter().next().unwrap();
        assert!(f.is_disequation());
        assert_eq!(f.display(true).to_string(), "a != b");
    }

    #[test]
    fn parse_errors_are_line_tagged() {
        let err = parse_presentation("a = b\nf(a) = f(a,b)").unwrap_err();
        let PresentationError::Parse { line, source } = err;
        assert_eq!(line, 2);
        assert!(matches!(source, ParseError::Arity { .. }));
        assert!(matches!(
            parse_presentation("a = "),
            Err(PresentationError::Parse { line: 1, .. })
        ));
        assert!(parse_presentation("a").is_err());
    }

    #[test]
    fn closure_of_tally_example_is_parity() {
        let a = nums(&[(4, 2), (4, 0)]);
        let slice = theory_closure(&a, &Signature::tally(), 7).unwrap();
        let expected: Presentation = (0..=6)
            .flat_map(|i| (0..=6).map(move |j| (i, j)))
            .filter(|(i, j)| i % 2 == j % 2)
            .map(|(i, j)| Formula::num_eq(i, j))
            .collect();
        assert_eq!(slice.theorems, expected);
        assert!(!slice.inconsistent);
    }

    #[test]
    fn closure_of_empty_is_reflexivity() {
        let slice = theory_closure(&Presentation::new(), &Signature::tally(), 4).unwrap();
        let expected: Presentation = (0..=3).map(|i| Formula::num_eq(i, i)).collect();
        assert_eq!(slice.theorems, expected);
    }

    #[test]
    fn closure_of_contradiction_is_everything() {
        let a: Presentation = [Formula::num_neq(1, 1)].into_iter().collect();
        let slice = theory_closure(&a, &Signature::tally(), 3).unwrap();
        assert!(slice.inconsistent);
        // 3 terms: 6 equations + 6 disequations
        assert_eq!(slice.theorems.len(), 12);
        assert!(slice.contains(&Formula::num_neq(0, 0)));
        assert!(slice.contains(&Formula::num_eq(0, 2)));
    }

    #[test]
    fn disequations_propagate_through_classes() {
        let a = parse_presentation("a = b\nb != c").unwrap();
        let slice = theory_closure(&a, &Signature::new(), 1).unwrap();
        let sig = a.signature();
        for text in ["a != c", "b != c", "a = b"] {
            assert!(
                slice.contains(&parse_formula(text, &sig).unwrap()),
                "{text}"
            );
        }
        assert!(!slice.contains(&parse_formula("a != b", &sig).unwrap()));
    }

    #[test]
    fn closure_rejects_oversized_input() {
        let a = nums(&[(6, 0)]);
        assert!(matches!(
            theory_closure(&a, &Signature::tally(), 5),
            Err(BoundError::FormulaTooLarge { .. })
        ));
    }

    #[test]
    fn congruence_stays_in_universe() {
        let a = parse_presentation("a = b").unwrap();
        let mut sig = a.signature();
        sig.declare("f", 1).unwrap();
        let slice = theory_closure(&a, &sig, 2).unwrap();
        assert!(slice.contains(&parse_formula("f(a) = f(b)", &sig).unwrap()));
    }
}
