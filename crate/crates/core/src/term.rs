//! Ground terms over a finite signature.
//!
//! Terms are immutable and reference counted, so cloning is cheap and
//! sharing between proofs, presentations and traces costs nothing. Naturals
//! in the input syntax are tally sugar: `3` is `s(s(s(0)))`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

/// Name of the tally successor symbol.
pub const SUCC: &str = "s";
/// Name of the tally zero constant.
pub const ZERO: &str = "0";

/// A function symbol with a fixed arity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    name: Arc<str>,
    arity: usize,
}

impl Symbol {
    pub fn new(name: &str, arity: usize) -> Self {
        Symbol {
            name: Arc::from(name),
            arity,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_constant(&self) -> bool {
        self.arity == 0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("symbol `{name}` declared with arity {new} but already has arity {old}")]
    ArityConflict {
        name: String,
        old: usize,
        new: usize,
    },
    #[error("invalid symbol name `{0}`")]
    BadName(String),
}

/// A finite set of symbols, unique by name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    symbols: BTreeMap<Arc<str>, Symbol>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// The tally vocabulary `{s/1, 0/0}`.
    pub fn tally() -> Self {
        let mut sig = Signature::new();
        sig.declare(ZERO, 0).expect("fresh signature");
        sig.declare(SUCC, 1).expect("fresh signature");
        sig
    }

    pub fn from_symbols<'a>(
        symbols: impl IntoIterator<Item = (&'a str, usize)>,
    ) -> Result<Self, SignatureError> {
        let mut sig = Signature::new();
        for (name, arity) in symbols {
            sig.declare(name, arity)?;
        }
        Ok(sig)
    }

    /// Adds `name/arity`, or returns the existing symbol if it matches.
    pub fn declare(&mut self, name: &str, arity: usize) -> Result<Symbol, SignatureError> {
        if !is_symbol_name(name) {
            return Err(SignatureError::BadName(name.to_string()));
        }
        if let Some(existing) = self.symbols.get(name) {
            if existing.arity != arity {
                return Err(SignatureError::ArityConflict {
                    name: name.to_string(),
                    old: existing.arity,
                    new: arity,
                });
            }
            return Ok(existing.clone());
        }
        let sym = Symbol::new(name, arity);
        self.symbols.insert(sym.name.clone(), sym.clone());
        Ok(sym)
    }

    pub fn get(&self, name: &str) -> Option<&Symbol> {
        self.symbols.get(name)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.values()
    }

    pub fn constants(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.values().filter(|s| s.is_constant())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// True when the signature is exactly `{s/1, 0/0}`; only then are
    /// tally terms printed as naturals.
    pub fn is_tally(&self) -> bool {
        self.len() == 2
            && self.get(ZERO).is_some_and(|s| s.arity == 0)
            && self.get(SUCC).is_some_and(|s| s.arity == 1)
    }

    /// Merges `other` into `self`.
    pub fn extend(&mut self, other: &Signature) -> Result<(), SignatureError> {
        for sym in other.symbols() {
            self.declare(sym.name(), sym.arity())?;
        }
        Ok(())
    }

    /// Adds every symbol occurring in `t`.
    pub fn absorb(&mut self, t: &Term) -> Result<(), SignatureError> {
        self.declare(t.head().name(), t.head().arity())?;
        for a in t.args() {
            self.absorb(a)?;
        }
        Ok(())
    }
}

fn is_symbol_name(name: &str) -> bool {
    if name == ZERO {
        return true;
    }
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

struct TermNode {
    head: Symbol,
    args: Vec<Term>,
    size: usize,
    hash: u64,
}

/// A ground term. Equality and hashing are structural.
#[derive(Clone)]
pub struct Term(Arc<TermNode>);

impl Term {
    /// Builds `head(args)`. Panics if the argument count does not match the
    /// arity; use the parser for untrusted input.
    pub fn app(head: Symbol, args: Vec<Term>) -> Term {
        assert_eq!(
            head.arity(),
            args.len(),
            "arity mismatch building {}",
            head.name()
        );
        let size = 1 + args.iter().map(Term::size).sum::<usize>();
        let mut h = std::collections::hash_map::DefaultHasher::new();
        head.hash(&mut h);
        for a in &args {
            h.write_u64(a.0.hash);
        }
        Term(Arc::new(TermNode {
            head,
            args,
            size,
            hash: h.finish(),
        }))
    }

    pub fn constant(head: Symbol) -> Term {
        Term::app(head, Vec::new())
    }

    /// The tally numeral `s^n(0)`.
    pub fn numeral(n: usize) -> Term {
        let zero = Symbol::new(ZERO, 0);
        let succ = Symbol::new(SUCC, 1);
        let mut t = Term::constant(zero);
        for _ in 0..n {
            t = Term::app(succ.clone(), vec![t]);
        }
        t
    }

    pub fn head(&self) -> &Symbol {
        &self.0.head
    }

    pub fn args(&self) -> &[Term] {
        &self.0.args
    }

    /// Node count.
    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn depth(&self) -> usize {
        1 + self.args().iter().map(Term::depth).max().unwrap_or(0)
    }

    /// `Some(n)` if this term is the tally numeral `n`.
    pub fn as_numeral(&self) -> Option<usize> {
        let mut t = self;
        let mut n = 0;
        loop {
            match (t.head().name(), t.args()) {
                (ZERO, []) => return Some(n),
                (SUCC, [inner]) => {
                    n += 1;
                    t = inner;
                }
                _ => return None,
            }
        }
    }

    pub fn subterm_at(&self, pos: &Position) -> Option<&Term> {
        let mut t = self;
        for &i in pos.path() {
            t = t.args().get(i)?;
        }
        Some(t)
    }

    /// Positions of all subterms in pre-order.
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        collect_positions(self, &mut path, &mut out);
        out
    }

    /// Positions at which `pattern` occurs, in pre-order.
    pub fn occurrences(&self, pattern: &Term) -> Vec<Position> {
        self.positions()
            .into_iter()
            .filter(|p| self.subterm_at(p) == Some(pattern))
            .collect()
    }

    pub fn contains(&self, pattern: &Term) -> bool {
        self == pattern || self.args().iter().any(|a| a.contains(pattern))
    }

    /// Proper subterms, each listed once per occurrence.
    pub fn proper_subterms(&self) -> Vec<Term> {
        let mut out = Vec::new();
        for a in self.args() {
            out.push(a.clone());
            out.extend(a.proper_subterms());
        }
        out
    }

    pub fn display(&self, sugar: bool) -> TermDisplay<'_> {
        TermDisplay { term: self, sugar }
    }
}

fn collect_positions(t: &Term, path: &mut Vec<usize>, out: &mut Vec<Position>) {
    out.push(Position(path.clone()));
    for (i, a) in t.args().iter().enumerate() {
        path.push(i);
        collect_positions(a, path, out);
        path.pop();
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash
                && self.0.size == other.0.size
                && self.0.head == other.0.head
                && self.0.args == other.0.args)
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

/// Structural order used for canonical storage: size, then head name, then
/// arguments left to right. Not the simplification ordering.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.size()
            .cmp(&other.size())
            .then_with(|| self.head().cmp(other.head()))
            .then_with(|| self.args().cmp(other.args()))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(false))
    }
}

/// Raw prefix notation; see [`Term::display`] for tally sugar.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(false))
    }
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    sugar: bool,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sugar {
            if let Some(n) = self.term.as_numeral() {
                return write!(f, "{n}");
            }
        }
        f.write_str(self.term.head().name())?;
        if !self.term.args().is_empty() {
            f.write_str("(")?;
            for (i, a) in self.term.args().iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", a.display(self.sugar))?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A path of child indices from the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(Vec<usize>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn new(path: Vec<usize>) -> Self {
        Position(path)
    }

    pub fn path(&self) -> &[usize] {
        &self.0
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: usize) -> Position {
        let mut p = self.0.clone();
        p.push(i);
        Position(p)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid position {pos} in {term}")]
pub struct InvalidPosition {
    pub term: String,
    pub pos: Position,
}

/// Replaces the subterm of `t` at `pos` with `r`.
pub fn replace_at(t: &Term, pos: &Position, r: &Term) -> Result<Term, InvalidPosition> {
    fn go(t: &Term, path: &[usize], r: &Term) -> Option<Term> {
        match path.split_first() {
            None => Some(r.clone()),
            Some((&i, rest)) => {
                let child = t.args().get(i)?;
                let mut args = t.args().to_vec();
                args[i] = go(child, rest, r)?;
                Some(Term::app(t.head().clone(), args))
            }
        }
    }
    go(t, pos.path(), r).ok_or_else(|| InvalidPosition {
        term: t.to_string(),
        pos: pos.clone(),
    })
}

/// A total strict order on symbols. Listed symbols rank highest-first;
/// unlisted ones rank below every listed symbol, by arity (descending) then
/// name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermPrecedence {
    ranks: HashMap<String, usize>,
    order: Vec<String>,
}

impl TermPrecedence {
    /// `names[0] > names[1] > ...`
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self, PrecedenceError> {
        let mut ranks = HashMap::new();
        let mut order = Vec::new();
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref().trim().to_string();
            if n.is_empty() {
                return Err(PrecedenceError::Empty);
            }
            if ranks.insert(n.clone(), names.len() - i).is_some() {
                return Err(PrecedenceError::Duplicate(n));
            }
            order.push(n);
        }
        Ok(TermPrecedence { ranks, order })
    }

    /// Parses a comma-separated list, highest first: `s,a,b,c`.
    pub fn parse(list: &str) -> Result<Self, PrecedenceError> {
        let names: Vec<&str> = list.split(',').map(str::trim).collect();
        Self::from_names(&names)
    }

    /// Every symbol of `sig`, by arity (descending) then name: `s > 0`,
    /// `a > b > c`.
    pub fn default_for(sig: &Signature) -> Self {
        let mut syms: Vec<&Symbol> = sig.symbols().collect();
        syms.sort_by(|a, b| default_symbol_order(a, b));
        let names: Vec<&str> = syms.iter().map(|s| s.name()).collect();
        Self::from_names(&names).expect("signature names are unique")
    }

    pub fn names(&self) -> &[String] {
        &self.order
    }

    /// Compares two symbols; `Greater` means `f` is above `g`.
    pub fn compare_symbols(&self, f: &Symbol, g: &Symbol) -> Ordering {
        if f == g {
            return Ordering::Equal;
        }
        match (self.ranks.get(f.name()), self.ranks.get(g.name())) {
            (Some(a), Some(b)) => a.cmp(b),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => default_symbol_order(f, g).reverse(),
        }
    }

    /// Simplification-ordering comparison of ground terms.
    pub fn compare(&self, s: &Term, t: &Term) -> Ordering {
        term_compare(s, t, self)
    }

    pub fn greater(&self, s: &Term, t: &Term) -> bool {
        term_compare(s, t, self) == Ordering::Greater
    }
}

// Highest first.
fn default_symbol_order(a: &Symbol, b: &Symbol) -> Ordering {
    b.arity()
        .cmp(&a.arity())
        .then_with(|| a.name().cmp(b.name()))
}

impl fmt::Display for TermPrecedence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.order.join(" > "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrecedenceError {
    #[error("empty symbol name in precedence")]
    Empty,
    #[error("symbol `{0}` listed twice in precedence")]
    Duplicate(String),
}

/// Lexicographic path ordering on ground terms induced by `prec`.
///
/// `Equal` iff the terms are identical; otherwise the result is `Greater` or
/// `Less` since the precedence is total.
pub fn term_compare(s: &Term, t: &Term, prec: &TermPrecedence) -> Ordering {
    if s == t {
        Ordering::Equal
    } else if lpo_gt(s, t, prec) {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn lpo_gt(s: &Term, t: &Term, prec: &TermPrecedence) -> bool {
    if s.size() <= t.size() && t.contains(s) {
        return false;
    }
    if s.args().iter().any(|si| si == t || lpo_gt(si, t, prec)) {
        return true;
    }
    match prec.compare_symbols(s.head(), t.head()) {
        Ordering::Greater => t.args().iter().all(|tj| lpo_gt(s, tj, prec)),
        Ordering::Equal => {
            let lex = s
                .args()
                .iter()
                .zip(t.args())
                .find(|(a, b)| a != b)
                .is_some_and(|(a, b)| lpo_gt(a, b, prec));
            lex && t.args().iter().all(|tj| lpo_gt(s, tj, prec))
        }
        Ordering::Less => false,
    }
}

/// All terms over `sig` with at most `max_size` nodes, ordered by
/// [`Ord for Term`](Term).
pub fn term_universe(sig: &Signature, max_size: usize) -> Vec<Term> {
    // by_size[k] = terms with exactly k nodes
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(); max_size + 1];
    for k in 1..=max_size {
        let mut layer = Vec::new();
        for sym in sig.symbols() {
            if sym.arity() == 0 {
                if k == 1 {
                    layer.push(Term::constant(sym.clone()));
                }
                continue;
            }
            if k < 1 + sym.arity() {
                continue;
            }
            let mut acc = Vec::new();
            build_arg_tuples(&by_size, sym.arity(), k - 1, &mut Vec::new(), &mut acc);
            for args in acc {
                layer.push(Term::app(sym.clone(), args));
            }
        }
        by_size[k] = layer;
    }
    let mut all: Vec<Term> = by_size.into_iter().flatten().collect();
    all.sort();
    all
}

fn build_arg_tuples(
    by_size: &[Vec<Term>],
    remaining_args: usize,
    remaining_size: usize,
    prefix: &mut Vec<Term>,
    out: &mut Vec<Vec<Term>>,
) {
    if remaining_args == 0 {
        if remaining_size == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    // each remaining argument needs at least one node
    let max_here = remaining_size.saturating_sub(remaining_args - 1);
    for k in 1..=max_here {
        for t in &by_size[k] {
            prefix.push(t.clone());
            build_arg_tuples(by_size, remaining_args - 1, remaining_size - k, prefix, out);
            prefix.pop();
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown symbol `{name}` at offset {offset}")]
    UnknownSymbol { offset: usize, name: String },
    #[error("arity mismatch for `{name}` at offset {offset}: expected {expected}, found {found}")]
    Arity {
        offset: usize,
        name: String,
        expected: usize,
        found: usize,
    },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownSymbol { offset, .. }
            | ParseError::Arity { offset, .. } => *offset,
        }
    }
}

/// Where the parser looks up symbols.
pub(crate) enum Symbols<'a> {
    /// Symbols must already be declared.
    Fixed(&'a Signature),
    /// Symbols are declared on first use; later uses must agree on arity.
    Infer(&'a mut Signature),
}

/// Recursive-descent cursor shared by the term, formula and proof parsers.
pub(crate) struct Cursor<'a> {
    pub(crate) src: &'a str,
    pub(crate) pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub(crate) fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    /// An identifier or a run of digits.
    pub(crate) fn word(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let first = rest.chars().next()?;
        let len = if first.is_ascii_digit() {
            rest.find(|c: char| !c.is_ascii_digit())
                .unwrap_or(rest.len())
        } else if first.is_ascii_alphabetic() || first == '_' {
            rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '\''))
                .unwrap_or(rest.len())
        } else {
            return None;
        };
        self.pos += len;
        Some((start, &rest[..len]))
    }

    pub(crate) fn term(&mut self, symbols: &mut Symbols<'_>) -> Result<Term, ParseError> {
        let Some((start, word)) = self.word() else {
            return Err(self.error("expected a term"));
        };
        if word.chars().all(|c| c.is_ascii_digit()) && word != ZERO {
            let n: usize = word.parse().map_err(|_| ParseError::Syntax {
                offset: start,
                message: format!("numeral `{word}` too large"),
            })?;
            let zero = resolve(symbols, ZERO, 0, start)?;
            let succ = resolve(symbols, SUCC, 1, start)?;
            let mut t = Term::constant(zero);
            for _ in 0..n {
                t = Term::app(succ.clone(), vec![t]);
            }
            return Ok(t);
        }
        let mut args = Vec::new();
        if self.eat('(') {
            loop {
                args.push(self.term(symbols)?);
                if self.eat(',') {
                    continue;
                }
                self.expect(')')?;
                break;
            }
        }
        let sym = resolve(symbols, word, args.len(), start)?;
        Ok(Term::app(sym, args))
    }
}

fn resolve(
    symbols: &mut Symbols<'_>,
    name: &str,
    arity: usize,
    offset: usize,
) -> Result<Symbol, ParseError> {
    match symbols {
        Symbols::Fixed(sig) => match sig.get(name) {
            None => Err(ParseError::UnknownSymbol {
                offset,
                name: name.to_string(),
            }),
            Some(s) if s.arity() != arity => Err(ParseError::Arity {
                offset,
                name: name.to_string(),
                expected: s.arity(),
                found: arity,
            }),
            Some(s) => Ok(s.clone()),
        },
        Symbols::Infer(sig) => sig.declare(name, arity).map_err(|e| match e {
            SignatureError::ArityConflict { old, .. } => ParseError::Arity {
                offset,
                name: name.to_string(),
                expected: old,
                found: arity,
            },
            SignatureError::BadName(n) => ParseError::Syntax {
                offset,
                message: format!("invalid symbol name `{n}`"),
            },
        }),
    }
}

/// Parses prefix notation `f(t1,...,tn)` against a declared signature.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, ParseError> {
    let mut cur = Cursor::new(text);
    let t = cur.term(&mut Symbols::Fixed(sig))?;
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    Ok(t)
}

/// Parses a term, declaring unseen symbols in `sig`.
pub fn parse_term_infer(text: &str, sig: &mut Signature) -> Result<Term, ParseError> {
    let mut cur = Cursor::new(text);
    let t = cur.term(&mut Symbols::Infer(sig))?;
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    Ok(t)
}
