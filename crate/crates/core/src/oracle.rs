//! Bounded proof enumeration and the notions read off minimal proofs:
//! canonical bases, saturation, completeness, reducedness, redundancy and
//! critical obligations.
//!
//! Everything here lives in a finite world: terms with at most
//! `max_term_size` nodes, proofs of depth at most `max_proof_depth` whose
//! intermediate conclusions stay inside that term universe. Results are
//! exact for that world; they agree with the unbounded notions only when
//! the bounds are large enough to hold the relevant minimal proofs.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::formula::{
    all_formulas, check_within, theory_closure, BoundError, Formula, Presentation, TheorySlice,
};
use crate::ordering::{lifted, Comparator, OrderingConfig};
use crate::proof::{assumptions, strict_subproofs, Justification, Proof, Rule};
use crate::term::{term_universe, Signature, Symbol, Term};

pub const DEFAULT_TERM_SIZE: usize = 9;
pub const DEFAULT_PROOF_DEPTH: usize = 12;
pub const DEFAULT_PROOF_COUNT: usize = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EnumerationBounds {
    pub max_term_size: usize,
    pub max_proof_depth: usize,
    /// Safety valve on the number of proofs built.
    pub max_proof_count: usize,
    /// Admit projection (`P`) nodes.
    pub with_projection: bool,
}

impl Default for EnumerationBounds {
    fn default() -> Self {
        EnumerationBounds {
            max_term_size: DEFAULT_TERM_SIZE,
            max_proof_depth: DEFAULT_PROOF_DEPTH,
            max_proof_count: DEFAULT_PROOF_COUNT,
            with_projection: false,
        }
    }
}

impl EnumerationBounds {
    pub fn new(max_term_size: usize, max_proof_depth: usize) -> Self {
        EnumerationBounds {
            max_term_size,
            max_proof_depth,
            ..Default::default()
        }
    }

    /// Bounds for tally numerals up to `n`.
    pub fn numerals(n: usize, max_proof_depth: usize) -> Self {
        Self::new(n + 1, max_proof_depth)
    }

    pub fn with_count(mut self, max_proof_count: usize) -> Self {
        self.max_proof_count = max_proof_count;
        self
    }

    pub fn with_projection(mut self, on: bool) -> Self {
        self.with_projection = on;
        self
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        for (name, v) in [
            ("max_term_size", self.max_term_size),
            ("max_proof_depth", self.max_proof_depth),
            ("max_proof_count", self.max_proof_count),
        ] {
            if v == 0 {
                return Err(OracleError::ZeroBound(name));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error("proof count safety valve hit: more than {limit} proofs by depth {depth}")]
    SafetyValve { limit: usize, depth: usize },
    #[error("bound {0} must be positive")]
    ZeroBound(&'static str),
    #[error("presentation uses symbols outside the oracle signature")]
    ForeignSymbols,
    #[error("report invariant violated: {0}")]
    Invariant(&'static str),
}

/// The signature a presentation is read over: its own symbols, widened to
/// the tally signature when it uses nothing else (including when empty).
pub fn infer_signature(a: &Presentation) -> Signature {
    let own = a.signature();
    let tally = Signature::tally();
    if own.symbols().all(|s| tally.get(s.name()) == Some(s)) {
        tally
    } else {
        own
    }
}

/// Kept proofs of a pruned enumeration, grouped by conclusion.
#[derive(Debug, Clone, Default)]
pub struct ProofPool {
    pub by_conclusion: BTreeMap<Formula, Vec<Proof>>,
    pub generated: usize,
}

impl ProofPool {
    pub fn len(&self) -> usize {
        self.by_conclusion.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_conclusion.is_empty()
    }

    pub fn proofs(&self) -> impl Iterator<Item = &Proof> {
        self.by_conclusion.values().flatten()
    }
}

/// `μ` of a bounded proof universe, grouped by conclusion.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MinimalSet {
    by_conclusion: BTreeMap<Formula, Vec<Proof>>,
    members: HashSet<Proof>,
}

impl MinimalSet {
    fn from_groups(
        groups: impl IntoIterator<Item = (Formula, Vec<Proof>)>,
        cfg: &OrderingConfig,
    ) -> Self {
        let mut by_conclusion = BTreeMap::new();
        let mut members = HashSet::new();
        for (c, proofs) in groups {
            let mut keep = minimal_among(&proofs, cfg);
            keep.sort();
            members.extend(keep.iter().cloned());
            by_conclusion.insert(c, keep);
        }
        MinimalSet {
            by_conclusion,
            members,
        }
    }

    pub fn conclusions(&self) -> impl Iterator<Item = &Formula> {
        self.by_conclusion.keys()
    }

    pub fn of(&self, f: &Formula) -> &[Proof] {
        self.by_conclusion.get(f).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Proof> {
        self.by_conclusion.values().flatten()
    }

    pub fn contains(&self, p: &Proof) -> bool {
        self.members.contains(p)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `Γ` of the set.
    pub fn assumptions(&self) -> Presentation {
        self.iter().flat_map(assumptions).collect()
    }

    pub fn justification(&self) -> Justification {
        self.iter().cloned().collect()
    }

    /// Some member with the same conclusion is strictly below `p`.
    pub fn dominates(&self, p: &Proof, cfg: &OrderingConfig) -> bool {
        let mut cmp = Comparator::new(cfg);
        self.of(p.conclusion()).iter().any(|r| cmp.greater(p, r))
    }
}

fn minimal_among(proofs: &[Proof], cfg: &OrderingConfig) -> Vec<Proof> {
    proofs
        .iter()
        .filter(|p| {
            let mut cmp = Comparator::new(cfg);
            !proofs.iter().any(|r| cmp.greater(p, r))
        })
        .cloned()
        .collect()
}

/// `μP`: proofs not strictly dominated by another proof of the same
/// conclusion in `P`.
pub fn minimal_proofs(p: &Justification, cfg: &OrderingConfig) -> Justification {
    let mut groups: BTreeMap<&Formula, Vec<Proof>> = BTreeMap::new();
    for x in p.iter() {
        groups.entry(x.conclusion()).or_default().push(x.clone());
    }
    groups
        .values()
        .flat_map(|g| minimal_among(g, cfg))
        .collect()
}

struct Universe {
    sig: Signature,
    terms: HashSet<Term>,
    equations: Vec<Formula>,
    constants: Vec<Symbol>,
    functions: Vec<Symbol>,
}

impl Universe {
    fn new(sig: &Signature, size: usize) -> Self {
        let terms = term_universe(sig, size);
        let mut equations = Vec::new();
        for (i, x) in terms.iter().enumerate() {
            for y in &terms[i..] {
                equations.push(Formula::eq(x.clone(), y.clone()));
            }
        }
        Universe {
            sig: sig.clone(),
            terms: terms.into_iter().collect(),
            equations,
            constants: sig.constants().cloned().collect(),
            functions: sig.symbols().filter(|s| s.arity() > 0).cloned().collect(),
        }
    }
}

/// Bottom-up enumeration by depth. With an ordering, a new proof is
/// dropped when a strictly smaller proof of the same conclusion and no
/// greater depth exists; by monotonicity such a proof can never be (or sit
/// under) a minimal proof within the depth bound.
struct Builder<'a> {
    universe: &'a Universe,
    bounds: EnumerationBounds,
    cfg: Option<&'a OrderingConfig>,
    by_conclusion: HashMap<Formula, Vec<Proof>>,
    eq_by_side: HashMap<Term, Vec<Proof>>,
    neq_by_side: HashMap<Term, Vec<Proof>>,
    equations: Vec<Proof>,
    all: Vec<Proof>,
    generated: usize,
}

impl<'a> Builder<'a> {
    fn new(
        universe: &'a Universe,
        bounds: EnumerationBounds,
        cfg: Option<&'a OrderingConfig>,
    ) -> Self {
        Builder {
            universe,
            bounds,
            cfg,
            by_conclusion: HashMap::new(),
            eq_by_side: HashMap::new(),
            neq_by_side: HashMap::new(),
            equations: Vec::new(),
            all: Vec::new(),
            generated: 0,
        }
    }

    fn run(mut self, assumptions: &Presentation) -> Result<Self, OracleError> {
        let mut level: Vec<Proof> = self
            .universe
            .constants
            .iter()
            .map(|c| Proof::z(c.clone()).expect("constant"))
            .chain(assumptions.iter().cloned().map(Proof::axiom))
            .collect();
        self.count(level.len(), 1)?;
        level = self.select(level);
        self.admit(&level);
        for depth in 2..=self.bounds.max_proof_depth {
            if level.is_empty() {
                break;
            }
            let candidates = self.generate(&level);
            self.count(candidates.len(), depth)?;
            level = self.select(candidates.into_iter().collect());
            self.admit(&level);
        }
        Ok(self)
    }

    fn count(&mut self, n: usize, depth: usize) -> Result<(), OracleError> {
        self.generated += n;
        if self.generated > self.bounds.max_proof_count {
            return Err(OracleError::SafetyValve {
                limit: self.bounds.max_proof_count,
                depth,
            });
        }
        Ok(())
    }

    fn admit(&mut self, level: &[Proof]) {
        for p in level {
            let c = p.conclusion();
            self.by_conclusion
                .entry(c.clone())
                .or_default()
                .push(p.clone());
            let index = if c.is_equation() {
                self.equations.push(p.clone());
                &mut self.eq_by_side
            } else {
                &mut self.neq_by_side
            };
            index.entry(c.lhs().clone()).or_default().push(p.clone());
            if c.rhs() != c.lhs() {
                index.entry(c.rhs().clone()).or_default().push(p.clone());
            }
            self.all.push(p.clone());
        }
    }

    fn select(&self, candidates: Vec<Proof>) -> Vec<Proof> {
        let Some(cfg) = self.cfg else {
            return candidates;
        };
        let mut groups: HashMap<Formula, Vec<Proof>> = HashMap::new();
        for p in candidates {
            groups.entry(p.conclusion().clone()).or_default().push(p);
        }
        let mut out = Vec::new();
        for (c, group) in groups {
            let older = self.by_conclusion.get(&c).map_or(&[][..], Vec::as_slice);
            let survivors: Vec<Proof> = group
                .into_iter()
                .filter(|p| {
                    let mut cmp = Comparator::new(cfg);
                    !older.iter().any(|r| cmp.greater(p, r))
                })
                .collect();
            out.extend(minimal_among(&survivors, cfg));
        }
        out
    }

    fn generate(&self, fresh: &[Proof]) -> HashSet<Proof> {
        let mut out = HashSet::new();
        let depth = fresh[0].depth();
        for p in fresh {
            let c = p.conclusion();
            if c.is_equation() {
                for pivot in distinct_sides(c) {
                    for q in self.eq_by_side.get(pivot).into_iter().flatten() {
                        out.extend(Proof::trans_at(p.clone(), q.clone(), pivot.clone()).ok());
                    }
                    for q in self.neq_by_side.get(pivot).into_iter().flatten() {
                        out.extend(tneq_at(p, q, pivot));
                    }
                }
                for f in self.universe.functions.iter().filter(|f| f.arity() == 1) {
                    if let Ok(s) = Proof::cong(f.clone(), vec![p.clone()]) {
                        if self.fits(s.conclusion()) {
                            out.insert(s);
                        }
                    }
                }
            } else {
                for pivot in distinct_sides(c) {
                    for q in self.eq_by_side.get(pivot).into_iter().flatten() {
                        out.extend(tneq_at(q, p, pivot));
                    }
                }
                if c.is_trivial() {
                    for a in &self.universe.equations {
                        out.extend(Proof::ex_falso(a.clone(), p.clone()).ok());
                    }
                }
            }
        }
        for f in self.universe.functions.iter().filter(|f| f.arity() > 1) {
            self.congruences(f, depth, &mut out);
        }
        if self.bounds.with_projection {
            for p in fresh {
                for q in &self.all {
                    out.extend(Proof::proj(p.clone(), q.clone()).ok());
                    out.extend(Proof::proj(q.clone(), p.clone()).ok());
                }
            }
        }
        out
    }

    /// `S[f]` over every tuple of kept equation proofs with at least one
    /// premise from the newest level, in every orientation.
    fn congruences(&self, f: &Symbol, fresh_depth: usize, out: &mut HashSet<Proof>) {
        let n = f.arity();
        let budget = self.bounds.max_term_size;
        let min_side = |p: &Proof| p.conclusion().rhs().size().min(p.conclusion().lhs().size());
        let mut tuple: Vec<&Proof> = Vec::with_capacity(n);
        #[allow(clippy::too_many_arguments)]
        fn rec<'p>(
            b: &'p Builder<'p>,
            f: &Symbol,
            n: usize,
            fresh_depth: usize,
            used: usize,
            budget: usize,
            min_side: &dyn Fn(&Proof) -> usize,
            tuple: &mut Vec<&'p Proof>,
            out: &mut HashSet<Proof>,
        ) {
            if tuple.len() == n {
                if tuple.iter().all(|p| p.depth() < fresh_depth) {
                    return;
                }
                let children: Vec<Proof> = tuple.iter().map(|p| (*p).clone()).collect();
                for flips in 0u32..(1 << n) {
                    let flips: Vec<bool> = (0..n).map(|k| flips & (1 << k) != 0).collect();
                    if let Ok(s) = crate::proof::check_wellformed(
                        Rule::S {
                            symbol: f.clone(),
                            flips,
                        },
                        children.clone(),
                    ) {
                        if b.fits(s.conclusion()) {
                            out.insert(s);
                        }
                    }
                }
                return;
            }
            for p in &b.equations {
                let used = used + min_side(p);
                // every remaining argument needs at least one node
                if 1 + used + (n - tuple.len() - 1) > budget {
                    continue;
                }
                tuple.push(p);
                rec(b, f, n, fresh_depth, used, budget, min_side, tuple, out);
                tuple.pop();
            }
        }
        rec(
            self,
            f,
            n,
            fresh_depth,
            0,
            budget,
            &min_side,
            &mut tuple,
            out,
        );
    }

    fn fits(&self, f: &Formula) -> bool {
        f.max_side_size() <= self.bounds.max_term_size
            && self.universe.terms.contains(f.lhs())
            && self.universe.terms.contains(f.rhs())
    }
}

fn distinct_sides(f: &Formula) -> Vec<&Term> {
    if f.is_trivial() {
        vec![f.lhs()]
    } else {
        vec![f.lhs(), f.rhs()]
    }
}

fn tneq_at(eq: &Proof, neq: &Proof, pivot: &Term) -> Option<Proof> {
    crate::proof::check_wellformed(
        Rule::Tneq {
            pivot: pivot.clone(),
        },
        vec![eq.clone(), neq.clone()],
    )
    .ok()
}

/// Every well-formed proof from `a` within `bounds`, in structural order.
/// Exhaustive; only practical for small depths.
pub fn enumerate_proofs(
    a: &Presentation,
    sig: &Signature,
    bounds: EnumerationBounds,
) -> Result<Justification, OracleError> {
    bounds.validate()?;
    check_within(a, bounds.max_term_size)?;
    let universe = Universe::new(&widen(sig, a)?, bounds.max_term_size);
    let b = Builder::new(&universe, bounds, None).run(a)?;
    Ok(b.all.into_iter().collect())
}

/// The pruned enumeration of `Π a` under `cfg`: contains every minimal
/// proof within the bounds, and for every proof it drops, a kept proof of
/// the same conclusion that is strictly smaller.
pub fn enumerate_pruned(
    a: &Presentation,
    sig: &Signature,
    cfg: &OrderingConfig,
    bounds: EnumerationBounds,
) -> Result<ProofPool, OracleError> {
    bounds.validate()?;
    check_within(a, bounds.max_term_size)?;
    let universe = Universe::new(&widen(sig, a)?, bounds.max_term_size);
    pool(&universe, a, cfg, bounds)
}

fn pool(
    universe: &Universe,
    a: &Presentation,
    cfg: &OrderingConfig,
    bounds: EnumerationBounds,
) -> Result<ProofPool, OracleError> {
    let b = Builder::new(universe, bounds, Some(cfg)).run(a)?;
    Ok(ProofPool {
        generated: b.generated,
        by_conclusion: b.by_conclusion.into_iter().collect(),
    })
}

fn widen(sig: &Signature, a: &Presentation) -> Result<Signature, OracleError> {
    let mut s = sig.clone();
    s.extend(&a.signature()).map_err(BoundError::from)?;
    Ok(s)
}

/// Flags of a [`CanonicalReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    pub saturated: bool,
    pub complete: bool,
    pub reduced: bool,
    pub canonical: bool,
    pub unique_minimal: bool,
}

/// Everything the oracle knows about one presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalReport {
    pub ordering: String,
    pub bounds: EnumerationBounds,
    pub input: Presentation,
    pub theorems: usize,
    pub inconsistent: bool,
    pub basis: Presentation,
    pub truncated: bool,
    pub minimal_proofs: Justification,
    pub redundant: Presentation,
    pub flags: Flags,
}

impl CanonicalReport {
    pub fn display(&self, sugar: bool) -> ReportDisplay<'_> {
        ReportDisplay {
            report: self,
            sugar,
            header: true,
        }
    }

    /// The report without the ordering and bounds lines.
    pub fn body(&self, sugar: bool) -> ReportDisplay<'_> {
        ReportDisplay {
            report: self,
            sugar,
            header: false,
        }
    }
}

pub struct ReportDisplay<'a> {
    report: &'a CanonicalReport,
    sugar: bool,
    header: bool,
}

impl fmt::Display for ReportDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.report;
        let list = |p: &Presentation| {
            p.iter()
                .map(|x| x.display(self.sugar).to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        if self.header {
            writeln!(f, "ordering: {}", r.ordering)?;
            writeln!(f, "bound: {}", r.bounds.max_term_size)?;
            writeln!(f, "depth: {}", r.bounds.max_proof_depth)?;
            writeln!(f, "max-proofs: {}", r.bounds.max_proof_count)?;
            writeln!(f, "projection: {}", r.bounds.with_projection)?;
        }
        writeln!(f, "input: {{{}}}", list(&r.input))?;
        writeln!(f, "theorems: {}", r.theorems)?;
        writeln!(f, "inconsistent: {}", r.inconsistent)?;
        writeln!(f, "basis: {{{}}}", list(&r.basis))?;
        writeln!(f, "truncated: {}", r.truncated)?;
        writeln!(f, "redundant: {{{}}}", list(&r.redundant))?;
        writeln!(f, "minimal-proofs: {}", r.minimal_proofs.len())?;
        writeln!(f, "saturated: {}", r.flags.saturated)?;
        writeln!(f, "complete: {}", r.flags.complete)?;
        writeln!(f, "reduced: {}", r.flags.reduced)?;
        writeln!(f, "canonical: {}", r.flags.canonical)?;
        write!(f, "unique-minimal: {}", r.flags.unique_minimal)
    }
}

/// Result of scanning the formula ordering induced by minimal proofs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InducedScan {
    pub formulas: usize,
    pub strict_pairs: Vec<(Formula, Formula)>,
    pub antisymmetry_violations: Vec<(Formula, Formula)>,
}

/// Oracle over a fixed signature, ordering and bounds. Minimal sets are
/// cached per presentation, so repeated questions about related
/// presentations share work.
pub struct Oracle {
    cfg: OrderingConfig,
    bounds: EnumerationBounds,
    universe: Universe,
    closures: Mutex<HashMap<Presentation, Arc<TheorySlice>>>,
    minimal: Mutex<HashMap<Presentation, Arc<MinimalSet>>>,
}

impl Oracle {
    pub fn new(
        sig: &Signature,
        cfg: OrderingConfig,
        bounds: EnumerationBounds,
    ) -> Result<Self, OracleError> {
        bounds.validate()?;
        Ok(Oracle {
            universe: Universe::new(sig, bounds.max_term_size),
            cfg,
            bounds,
            closures: Mutex::new(HashMap::new()),
            minimal: Mutex::new(HashMap::new()),
        })
    }

    /// An oracle over the signature inferred from `a`.
    pub fn for_presentation(
        a: &Presentation,
        cfg: OrderingConfig,
        bounds: EnumerationBounds,
    ) -> Result<Self, OracleError> {
        Self::new(&infer_signature(a), cfg, bounds)
    }

    pub fn config(&self) -> &OrderingConfig {
        &self.cfg
    }

    pub fn bounds(&self) -> EnumerationBounds {
        self.bounds
    }

    pub fn signature(&self) -> &Signature {
        &self.universe.sig
    }

    fn check(&self, a: &Presentation) -> Result<(), OracleError> {
        check_within(a, self.bounds.max_term_size)?;
        let sig = &self.universe.sig;
        if a.signature()
            .symbols()
            .any(|s| sig.get(s.name()) != Some(s))
        {
            return Err(OracleError::ForeignSymbols);
        }
        Ok(())
    }

    /// Bounded `A*`.
    pub fn closure(&self, a: &Presentation) -> Result<Arc<TheorySlice>, OracleError> {
        self.check(a)?;
        if let Some(t) = self.closures.lock().unwrap().get(a) {
            return Ok(t.clone());
        }
        let t = Arc::new(theory_closure(
            a,
            &self.universe.sig,
            self.bounds.max_term_size,
        )?);
        self.closures.lock().unwrap().insert(a.clone(), t.clone());
        Ok(t)
    }

    /// The pruned pool of `Π a`.
    pub fn pool(&self, a: &Presentation) -> Result<ProofPool, OracleError> {
        self.check(a)?;
        pool(&self.universe, a, &self.cfg, self.bounds)
    }

    /// `μΠa` within the bounds.
    pub fn minimal(&self, a: &Presentation) -> Result<Arc<MinimalSet>, OracleError> {
        self.check(a)?;
        if let Some(m) = self.minimal.lock().unwrap().get(a) {
            return Ok(m.clone());
        }
        let pool = pool(&self.universe, a, &self.cfg, self.bounds)?;
        let m = Arc::new(MinimalSet::from_groups(pool.by_conclusion, &self.cfg));
        self.minimal.lock().unwrap().insert(a.clone(), m.clone());
        Ok(m)
    }

    /// `μΠA*` within the bounds.
    pub fn theory_minimal(&self, a: &Presentation) -> Result<Arc<MinimalSet>, OracleError> {
        let slice = self.closure(a)?;
        self.minimal(&slice.theorems)
    }

    /// `A♯ = ΓμΠA*`.
    pub fn canonical_basis(&self, a: &Presentation) -> Result<Presentation, OracleError> {
        Ok(self.theory_minimal(a)?.assumptions())
    }

    /// Some basis formula reaches the term-size bound, so the bounded basis
    /// may be a truncation.
    pub fn truncated(&self, basis: &Presentation) -> bool {
        basis.max_side_size() >= self.bounds.max_term_size
    }

    /// `ΠA ⊇ μΠA*`. A proof minimal in the theory is minimal among the
    /// proofs from `A` as well, so membership is read off `μΠA`.
    pub fn is_saturated(&self, a: &Presentation) -> Result<bool, OracleError> {
        let m = self.theory_minimal(a)?;
        let own = self.minimal(a)?;
        let saturated = m.iter().all(|p| own.contains(p));
        Ok(saturated)
    }

    /// Every bounded theorem has a proof in `ΠA ∩ μΠA*`.
    pub fn is_complete(&self, a: &Presentation) -> Result<bool, OracleError> {
        let slice = self.closure(a)?;
        let m = self.theory_minimal(a)?;
        let own = self.minimal(a)?;
        let complete = slice
            .theorems
            .iter()
            .all(|f| m.of(f).iter().any(|p| own.contains(p)));
        Ok(complete)
    }

    /// `A = ΓμΠA`.
    pub fn is_reduced(&self, a: &Presentation) -> Result<bool, OracleError> {
        Ok(&self.minimal(a)?.assumptions() == a)
    }

    /// `A = A♯`.
    pub fn is_canonical(&self, a: &Presentation) -> Result<bool, OracleError> {
        Ok(&self.canonical_basis(a)? == a)
    }

    /// Every bounded theorem has exactly one minimal proof.
    pub fn check_unique_minimal(&self, a: &Presentation) -> Result<bool, OracleError> {
        let slice = self.closure(a)?;
        let m = self.theory_minimal(a)?;
        let unique = slice.theorems.iter().all(|f| m.of(f).len() == 1);
        Ok(unique)
    }

    /// `A ≿ B`: same bounded theory and `μΠA ⊒ μΠB`.
    pub fn presentation_simpler(
        &self,
        a: &Presentation,
        b: &Presentation,
    ) -> Result<bool, OracleError> {
        if self.closure(a)?.theorems != self.closure(b)?.theorems {
            return Ok(false);
        }
        let (ma, mb) = (self.minimal(a)?, self.minimal(b)?);
        Ok(lifted(ma.iter(), mb.iter(), &self.cfg, false))
    }

    /// `A ≈ B`.
    pub fn presentation_similar(
        &self,
        a: &Presentation,
        b: &Presentation,
    ) -> Result<bool, OracleError> {
        Ok(self.presentation_simpler(a, b)? && self.presentation_simpler(b, a)?)
    }

    /// `ρA`: formulas whose removal leaves the presentation no worse.
    pub fn redundant_formulas(&self, a: &Presentation) -> Result<Presentation, OracleError> {
        self.redundant_among(a, a)
    }

    /// The members of `candidates` that lie in `ρA`.
    pub fn redundant_among(
        &self,
        a: &Presentation,
        candidates: &Presentation,
    ) -> Result<Presentation, OracleError> {
        let mut out = Presentation::new();
        for r in candidates.iter().filter(|r| a.contains(r)) {
            if self.presentation_simpler(a, &a.without(r))? {
                out.insert(r.clone());
            }
        }
        Ok(out)
    }

    /// `C(E)`: proofs from `E` that are not minimal although all their
    /// strict subproofs are.
    pub fn critical_obligations(&self, e: &Presentation) -> Result<Justification, OracleError> {
        let m = self.theory_minimal(e)?;
        let from_e: Vec<Proof> = m
            .iter()
            .filter(|p| assumptions(p).iter().all(|x| e.contains(x)))
            .cloned()
            .collect();
        let mut b = Builder::new(&self.universe, self.bounds, None);
        let leaves: Vec<Proof> = self
            .universe
            .constants
            .iter()
            .map(|c| Proof::z(c.clone()).expect("constant"))
            .chain(e.iter().cloned().map(Proof::axiom))
            .collect();
        b.admit(&from_e);
        let mut candidates: HashSet<Proof> = leaves.into_iter().collect();
        if !from_e.is_empty() {
            // every one-step extension; `generate` wants the newest level, so
            // present all kept proofs as fresh
            let mut by_depth: BTreeMap<usize, Vec<Proof>> = BTreeMap::new();
            for p in &from_e {
                by_depth.entry(p.depth()).or_default().push(p.clone());
            }
            for level in by_depth.values() {
                candidates.extend(b.generate(level));
            }
        }
        let mut out = Justification::new();
        for p in candidates {
            if p.depth() > self.bounds.max_proof_depth || m.contains(&p) {
                continue;
            }
            if strict_subproofs(&p).iter().all(|s| m.contains(s)) {
                out.insert(p);
            }
        }
        Ok(out)
    }

    /// Footnote ordering on formulas read off `μℙ`: `a ≥ c` iff some
    /// minimal proofs `p` of `a` and `q` of `c` have `q ≥ p`.
    pub fn induced_formula_geq(&self, a: &Formula, c: &Formula) -> Result<bool, OracleError> {
        let m = self.all_minimal()?;
        let mut cmp = Comparator::new(&self.cfg);
        Ok(m.of(a)
            .iter()
            .any(|p| m.of(c).iter().any(|q| q == p || cmp.greater(q, p))))
    }

    /// Scans every pair of bounded formulas under the induced ordering.
    pub fn induced_scan(&self) -> Result<InducedScan, OracleError> {
        let m = self.all_minimal()?;
        let formulas: Vec<&Formula> = m.conclusions().collect();
        let mut geq = HashMap::new();
        let mut cmp = Comparator::new(&self.cfg);
        for &a in &formulas {
            for &c in &formulas {
                let v = m
                    .of(a)
                    .iter()
                    .any(|p| m.of(c).iter().any(|q| q == p || cmp.greater(q, p)));
                geq.insert((a, c), v);
            }
        }
        let mut scan = InducedScan {
            formulas: formulas.len(),
            ..Default::default()
        };
        for (i, &a) in formulas.iter().enumerate() {
            for &c in &formulas[i + 1..] {
                match (geq[&(a, c)], geq[&(c, a)]) {
                    (true, true) => scan.antisymmetry_violations.push((a.clone(), c.clone())),
                    (true, false) => scan.strict_pairs.push((a.clone(), c.clone())),
                    (false, true) => scan.strict_pairs.push((c.clone(), a.clone())),
                    (false, false) => {}
                }
            }
        }
        Ok(scan)
    }

    /// `μℙ`: minimal proofs over every bounded formula as assumption.
    pub fn all_minimal(&self) -> Result<Arc<MinimalSet>, OracleError> {
        let terms: Vec<Term> = {
            let mut t: Vec<Term> = self.universe.terms.iter().cloned().collect();
            t.sort();
            t
        };
        self.minimal(&all_formulas(&terms))
    }

    /// The full report for `a`.
    pub fn report(&self, a: &Presentation) -> Result<CanonicalReport, OracleError> {
        let slice = self.closure(a)?;
        let m = self.theory_minimal(a)?;
        let basis = m.assumptions();
        let flags = Flags {
            saturated: self.is_saturated(a)?,
            complete: self.is_complete(a)?,
            reduced: self.is_reduced(a)?,
            canonical: &basis == a,
            unique_minimal: self.check_unique_minimal(a)?,
        };
        if flags.canonical && !(flags.saturated && flags.reduced) {
            return Err(OracleError::Invariant(
                "canonical but not saturated and reduced",
            ));
        }
        if !basis.is_subset(&slice.theorems) {
            return Err(OracleError::Invariant("basis outside the theory"));
        }
        Ok(CanonicalReport {
            ordering: self.cfg.label().to_string(),
            bounds: self.bounds,
            input: a.clone(),
            theorems: slice.theorems.len(),
            inconsistent: slice.inconsistent,
            truncated: self.truncated(&basis),
            basis,
            minimal_proofs: m.justification(),
            redundant: self.redundant_formulas(a)?,
            flags,
        })
    }
}

/// `A♯` over the signature inferred from `a`.
pub fn canonical_basis(
    a: &Presentation,
    cfg: &OrderingConfig,
    bounds: EnumerationBounds,
) -> Result<Presentation, OracleError> {
    Oracle::for_presentation(a, cfg.clone(), bounds)?.canonical_basis(a)
}

pub fn is_saturated(
    a: &Presentation,
    cfg: &OrderingConfig,
    bounds: EnumerationBounds,
) -> Result<bool, OracleError> {
    Oracle::for_presentation(a, cfg.clone(), bounds)?.is_saturated(a)
}

pub fn is_complete(
    a: &Presentation,
    cfg: &OrderingConfig,
    bounds: EnumerationBounds,
) -> Result<bool, OracleError> {
    Oracle::for_presentation(a, cfg.clone(), bounds)?.is_complete(a)
}

pub fn is_reduced(
    a: &Presentation,
    cfg: &OrderingConfig,
    bounds: EnumerationBounds,
) -> Result<bool, OracleError> {
    Oracle::for_presentation(a, cfg.clone(), bounds)?.is_reduced(a)
}

pub fn is_canonical(
    a: &Presentation,
    cfg: &OrderingConfig,
    bounds: EnumerationBounds,
) -> Result<bool, OracleError> {
    Oracle::for_presentation(a, cfg.clone(), bounds)?.is_canonical(a)
}

pub fn redundant_formulas(
    a: &Presentation,
    cfg: &OrderingConfig,
    bounds: EnumerationBounds,
) -> Result<Presentation, OracleError> {
    Oracle::for_presentation(a, cfg.clone(), bounds)?.redundant_formulas(a)
}

pub fn critical_obligations(
    e: &Presentation,
    cfg: &OrderingConfig,
    bounds: EnumerationBounds,
) -> Result<Justification, OracleError> {
    Oracle::for_presentation(e, cfg.clone(), bounds)?.critical_obligations(e)
}

pub fn check_unique_minimal(
    a: &Presentation,
    cfg: &OrderingConfig,
    bounds: EnumerationBounds,
) -> Result<bool, OracleError> {
    Oracle::for_presentation(a, cfg.clone(), bounds)?.check_unique_minimal(a)
}

/// Conclusions reachable from `a` within the bounds (pruning keeps at
/// least one proof of every reachable conclusion).
pub fn provable(
    a: &Presentation,
    cfg: &OrderingConfig,
    bounds: EnumerationBounds,
) -> Result<BTreeSet<Formula>, OracleError> {
    let pool = enumerate_pruned(a, &infer_signature(a), cfg, bounds)?;
    Ok(pool.by_conclusion.into_keys().collect())
}
