//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if
//! any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::thread;
use std::time::{Duration, Instant};

use canon::completion::{audit_with, church_rosser, run_completion, DEFAULT_MAX_STEPS};
use canon::formula::{Formula, Presentation};
use canon::oracle::{
    enumerate_proofs, infer_signature, provable, EnumerationBounds, Oracle, OracleError,
};
use canon::ordering::{preset, OrderingConfig, ProofOrder};
use canon::proof::{assumptions, subproofs, Proof};
use canon::term::{term_universe, Signature, TermPrecedence};
use common::*;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn oe(e: OracleError) -> String {
    e.to_string()
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    check(t.elapsed() < limit, || {
        format!("took {:?}, limit {:?}", t.elapsed(), limit)
    })
}

fn set(text: &str) -> Presentation {
    p(text)
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let a = set("4 = 2\n4 = 0");
    let cfg = OrderingConfig::completion(tally_prec());
    let oracle = Oracle::for_presentation(&a, cfg, EnumerationBounds::default()).map_err(oe)?;
    let basis = oracle.canonical_basis(&a).map_err(oe)?;
    check(basis == set("2 = 0"), || {
        format!("basis {}", basis.display(true))
    })?;
    let trace = run_completion(&a, &tally_prec(), DEFAULT_MAX_STEPS).map_err(|e| e.to_string())?;
    check(trace.limit == set("2 = 0"), || {
        format!("limit {}", trace.limit.display(true))
    })?;
    within(t, Duration::from_secs(10))?;
    Ok(format!("basis = limit = {{2 = 0}} in {:?}", t.elapsed()))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let prec = TermPrecedence::parse("s,a,b,c").unwrap();
    let trace = run_completion(&set("a = c\ns(a) = b"), &prec, DEFAULT_MAX_STEPS)
        .map_err(|e| e.to_string())?;
    check(trace.limit == set("a = c\ns(c) = b"), || {
        format!("limit {}", trace.limit.display(true))
    })?;
    let mut sig = Signature::new();
    let sa_b = canon::proof::parse_proof_infer("I(s(a) = b)", &mut sig).unwrap();
    let chain =
        canon::proof::parse_proof_infer("T(S[s](I(a = c)), I(s(c) = b))", &mut sig).unwrap();
    let cfg = OrderingConfig::completion(prec);
    let ord = canon::ordering::proof_compare(&sa_b, &chain, &cfg);
    check(ord == ProofOrder::Greater, || {
        format!("I(sa=b) vs chain: {ord:?}")
    })?;
    within(t, Duration::from_secs(1))?;
    Ok(format!(
        "limit = {{a = c, s(c) = b}}, I(s(a) = b) > T(S(I(a = c)), I(s(c) = b)) in {:?}",
        t.elapsed()
    ))
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let a = set("4 = 2\n4 = 0");
    let cfg = preset("paramodulation", tally_prec()).unwrap();
    let oracle =
        Oracle::for_presentation(&a, cfg, EnumerationBounds::numerals(8, 12)).map_err(oe)?;
    let report = oracle.report(&a).map_err(oe)?;
    check(report.basis == set("2 = 0\n4 = 0\n6 = 0\n8 = 0"), || {
        format!("basis {}", report.basis.display(true))
    })?;
    check(report.truncated, || "truncation flag not set".into())?;
    within(t, Duration::from_secs(60))?;
    Ok(format!(
        "basis = {{2 = 0, 4 = 0, 6 = 0, 8 = 0}}, truncated, in {:?}",
        t.elapsed()
    ))
}

fn criterion_4() -> Outcome {
    let a = set("1 != 1");
    let cfg = preset("refutation", tally_prec()).unwrap();
    let oracle =
        Oracle::for_presentation(&a, cfg, EnumerationBounds::numerals(4, 12)).map_err(oe)?;
    let basis = oracle.canonical_basis(&a).map_err(oe)?;
    check(basis == set("0 != 0"), || {
        format!("refutation basis {}", basis.display(true))
    })?;

    let a = set("4 = 2\n4 = 0");
    let mut sizes = Vec::new();
    for bounds in [
        EnumerationBounds::numerals(4, 12),
        EnumerationBounds::default(),
    ] {
        let cfg = preset("deduction", tally_prec()).unwrap();
        let oracle = Oracle::for_presentation(&a, cfg, bounds).map_err(oe)?;
        let basis = oracle.canonical_basis(&a).map_err(oe)?;
        let slice = oracle.closure(&a).map_err(oe)?;
        check(basis == slice.theorems, || {
            format!(
                "deduction basis has {} of {} theorems at bound {}",
                basis.len(),
                slice.theorems.len(),
                bounds.max_term_size
            )
        })?;
        sizes.push(basis.len());
    }
    Ok(format!(
        "refutation basis = {{0 != 0}}; deduction basis = full slice ({sizes:?} formulas)"
    ))
}

fn criterion_5() -> Outcome {
    let a = set("1 != 1");
    let cfg = OrderingConfig::contradiction_first();
    let oracle =
        Oracle::for_presentation(&a, cfg, EnumerationBounds::numerals(4, 3)).map_err(oe)?;
    let slice = oracle.closure(&a).map_err(oe)?;
    check(slice.inconsistent, || "slice not inconsistent".into())?;
    let expected: Presentation = (0..=4)
        .flat_map(|i| (0..=4).map(move |j| Formula::num_neq(i, j)))
        .collect();
    let basis = oracle.canonical_basis(&a).map_err(oe)?;
    check(basis == expected, || {
        format!("basis {}", basis.display(true))
    })?;
    let redundant = oracle.redundant_formulas(&slice.theorems).map_err(oe)?;
    let equations: Presentation = slice.equations().cloned().collect();
    check(redundant == equations, || {
        format!("redundant {}", redundant.display(true))
    })?;
    Ok(format!(
        "basis = {} disequations, {} equations redundant",
        basis.len(),
        redundant.len()
    ))
}

/// Presentations sampled for the saturation and redundancy suites, each
/// paired with the oracle that judges it.
struct Sample {
    oracles: Vec<Oracle>,
    items: Vec<(usize, Presentation)>,
}

fn sample() -> Sample {
    let parity = set("4 = 2\n4 = 0");
    let tally_oracle = Oracle::for_presentation(
        &parity,
        OrderingConfig::completion(tally_prec()),
        EnumerationBounds::numerals(4, 12),
    )
    .unwrap();
    let slice = tally_oracle.closure(&parity).unwrap().theorems.clone();
    let mut items: Vec<(usize, Presentation)> =
        subsets(&slice).into_iter().map(|a| (0, a)).collect();

    let sig = fab();
    let fab_oracle = Oracle::new(
        &sig,
        OrderingConfig::completion(TermPrecedence::default_for(&sig)),
        EnumerationBounds::new(3, 8),
    )
    .unwrap();
    let terms = term_universe(&sig, 3);
    let mut r = rng(0x5eed);
    items.extend((0..200).map(|_| (1, random_presentation(&mut r, &terms, 0.2))));
    Sample {
        oracles: vec![tally_oracle, fab_oracle],
        items,
    }
}

/// Runs `f` on every sample across threads; returns the counterexamples.
fn sweep<F>(s: &Sample, f: F) -> Result<Vec<String>, String>
where
    F: Fn(&Oracle, &Presentation) -> Result<Option<String>, OracleError> + Sync,
{
    let workers = thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(8);
    let chunk = s.items.len().div_ceil(workers);
    thread::scope(|scope| {
        let handles: Vec<_> = s
            .items
            .chunks(chunk)
            .map(|part| {
                let f = &f;
                scope.spawn(move || {
                    let mut bad = Vec::new();
                    for (o, a) in part {
                        if let Some(msg) = f(&s.oracles[*o], a)? {
                            bad.push(msg);
                        }
                    }
                    Ok::<_, OracleError>(bad)
                })
            })
            .collect();
        let mut all = Vec::new();
        for h in handles {
            all.extend(h.join().expect("worker panicked").map_err(oe)?);
        }
        Ok(all)
    })
}

fn report_sweep(bad: Vec<String>, n: usize, t: Instant) -> Outcome {
    if bad.is_empty() {
        Ok(format!(
            "{n} presentations, 0 counterexamples, {:?}",
            t.elapsed()
        ))
    } else {
        let mut msg = format!("{} counterexamples of {n}", bad.len());
        for b in bad.iter().take(3) {
            let _ = write!(msg, "; {b}");
        }
        Err(msg)
    }
}

fn criterion_6(s: &Sample) -> Outcome {
    let t = Instant::now();
    let bad = sweep(s, |o, a| {
        let sharp = o.canonical_basis(a)?;
        let sat = o.is_saturated(a)?;
        let red = o.is_reduced(a)?;
        let can = o.is_canonical(a)?;
        let mut msg = None;
        if sat != sharp.is_subset(a) {
            msg = Some(format!(
                "{}: saturated {sat}, contains basis {}",
                a.display(true),
                !sat
            ));
        } else if can != (sat && red) {
            msg = Some(format!(
                "{}: canonical {can}, saturated {sat}, reduced {red}",
                a.display(true)
            ));
        }
        Ok(msg)
    })?;
    report_sweep(bad, s.items.len(), t)?;
    within(t, Duration::from_secs(300))?;
    Ok(format!(
        "{} presentations, 0 counterexamples, {:?}",
        s.items.len(),
        t.elapsed()
    ))
}

fn criterion_7(s: &Sample) -> Outcome {
    let t = Instant::now();
    let bad = sweep(s, |o, a| {
        let sharp = o.canonical_basis(a)?;
        let theory = o.closure(a)?.theorems.clone();
        let rho = o.redundant_formulas(&theory)?;
        let trivial: Presentation = o
            .theory_minimal(a)?
            .iter()
            .filter(|p| p.is_trivial())
            .map(|p| p.conclusion().clone())
            .collect();
        let mut msg = None;
        if theory.difference(&rho) != sharp {
            msg = Some(format!(
                "{}: A* minus rho A* differs from the basis",
                a.display(true)
            ));
        } else if trivial != sharp {
            msg = Some(format!(
                "{}: trivial minimal proofs differ from the basis",
                a.display(true)
            ));
        }
        Ok(msg)
    })?;
    report_sweep(bad, s.items.len(), t)
}

fn criterion_8() -> Outcome {
    let a = set("4 = 2\n4 = 0");
    let cfg = OrderingConfig::completion(tally_prec());
    let all =
        enumerate_proofs(&a, &Signature::tally(), EnumerationBounds::new(9, 4)).map_err(oe)?;
    let proofs: Vec<&Proof> = all.iter().collect();
    let mut bad = Vec::new();
    let mut replacements = 0usize;
    for p in &proofs {
        let subs = subproofs(p);
        for f in assumptions(p) {
            let leaf = Proof::axiom(f.clone());
            if !subs.contains(&leaf) {
                bad.push(format!("(5) {p}: no leaf for {}", f.display(true)));
            }
        }
        let gp = assumptions(p);
        for q in &subs {
            if !assumptions(q).is_subset(&gp) {
                bad.push(format!("(6) {p} over {q}"));
            }
        }
    }
    // (7): group by conclusion, then replace each strict subproof by every
    // smaller proof of the same conclusion.
    let mut smaller: std::collections::HashMap<&Proof, Vec<&Proof>> = Default::default();
    for q in &proofs {
        let below: Vec<&Proof> = proofs
            .iter()
            .filter(|r| {
                r.conclusion() == q.conclusion() && canon::ordering::proof_greater(q, r, &cfg)
            })
            .copied()
            .collect();
        smaller.insert(q, below);
    }
    for p in &proofs {
        for path in p.positions() {
            if path.is_empty() {
                continue;
            }
            let q = p.at(&path).unwrap();
            let Some(rs) = smaller.get(q) else {
                return Err(format!("subproof {q} of {p} not enumerated"));
            };
            for r in rs {
                replacements += 1;
                let v = p.replace_at(&path, r).map_err(|e| e.to_string())?;
                if v.conclusion() != p.conclusion() || !canon::ordering::proof_greater(p, &v, &cfg)
                {
                    bad.push(format!("(7) {p} with {q} -> {r}"));
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(format!(
            "{} proofs, {replacements} replacements, 0 counterexamples",
            proofs.len()
        ))
    } else {
        Err(format!("{} counterexamples, first {}", bad.len(), bad[0]))
    }
}

fn criterion_9() -> Outcome {
    let t = Instant::now();
    let mut inputs: Vec<(String, Presentation, TermPrecedence, EnumerationBounds)> =
        golden_equational()
            .map(|(n, a, pr)| (n.to_string(), a, pr, EnumerationBounds::default()))
            .collect();
    let mut r = rng(0xc0de);
    for i in 0..50 {
        inputs.push((
            format!("random {i}"),
            random_numeral_equations(&mut r, 6),
            tally_prec(),
            EnumerationBounds::numerals(6, 12),
        ));
    }
    let n = inputs.len();
    let workers = thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(8);
    let chunk = n.div_ceil(workers);
    let bad: Vec<String> = thread::scope(|scope| {
        let handles: Vec<_> = inputs
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    let mut bad = Vec::new();
                    for (name, e0, prec, bounds) in part {
                        if let Err(e) = audit_one(e0, prec, *bounds) {
                            bad.push(format!("{name} {}: {e}", e0.display(true)));
                        }
                    }
                    bad
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    if bad.is_empty() {
        Ok(format!("{n} runs, 0 failures, {:?}", t.elapsed()))
    } else {
        Err(format!("{} failures of {n}; first {}", bad.len(), bad[0]))
    }
}

fn audit_one(
    e0: &Presentation,
    prec: &TermPrecedence,
    bounds: EnumerationBounds,
) -> Result<(), String> {
    let trace = run_completion(e0, prec, DEFAULT_MAX_STEPS).map_err(|e| e.to_string())?;
    let sig = infer_signature(&trace.union);
    let oracle = Oracle::new(&sig, OrderingConfig::completion(prec.clone()), bounds).map_err(oe)?;
    let audit = audit_with(&trace, &oracle).map_err(|e| e.to_string())?;
    check(audit.good && audit.fair && audit.clean, || {
        format!("{audit:?}")
    })?;
    check(audit.limit_canonical, || "limit not canonical".into())?;
    check(audit.union_similar, || "union not similar to limit".into())?;
    let cr =
        church_rosser(e0, &trace.limit, prec, bounds.max_term_size).map_err(|e| e.to_string())?;
    check(cr, || "not Church-Rosser".into())
}

fn criterion_10() -> Outcome {
    let a = set("2 = 0");
    let cfg = preset("discrete", tally_prec()).unwrap();
    let oracle =
        Oracle::for_presentation(&a, cfg, EnumerationBounds::numerals(4, 4)).map_err(oe)?;
    let complete = oracle.is_complete(&a).map_err(oe)?;
    let saturated = oracle.is_saturated(&a).map_err(oe)?;
    let unique = oracle.check_unique_minimal(&a).map_err(oe)?;
    check(complete && !saturated && !unique, || {
        format!("complete {complete}, saturated {saturated}, unique-minimal {unique}")
    })?;
    Ok("complete = true, saturated = false, unique-minimal = false".into())
}

fn criterion_11() -> Outcome {
    let cfg_for = |pr: &TermPrecedence| OrderingConfig::completion(pr.clone());
    let mut checked = 0;
    for (name, text, pr) in GOLDEN {
        let a = p(text);
        let prec = TermPrecedence::parse(pr).unwrap();
        let sig = infer_signature(&a);
        for bound in a.max_side_size().max(1)..=6 {
            let slice =
                canon::formula::theory_closure(&a, &sig, bound).map_err(|e| e.to_string())?;
            let found =
                provable(&a, &cfg_for(&prec), EnumerationBounds::new(bound, 12)).map_err(oe)?;
            let want: BTreeSet<Formula> = slice.theorems.iter().cloned().collect();
            check(found == want, || {
                format!(
                    "{name} at bound {bound}: {} enumerated, {} in closure",
                    found.len(),
                    want.len()
                )
            })?;
            checked += 1;
        }
    }
    // Exhaustive enumeration agrees too on the small cases.
    for (text, bound) in [("2 = 0", 3), ("", 4), ("1 != 1", 3)] {
        let a = p(text);
        let sig = infer_signature(&a);
        let slice = canon::formula::theory_closure(&a, &sig, bound).map_err(|e| e.to_string())?;
        let all = enumerate_proofs(&a, &sig, EnumerationBounds::new(bound, 5)).map_err(oe)?;
        let found: Presentation = all.conclusions().into_iter().collect();
        check(found == slice.theorems, || {
            format!("exhaustive {text} at bound {bound}")
        })?;
        checked += 1;
    }
    Ok(format!("{checked} (input, bound) pairs agree"))
}

#[test]
fn acceptance() {
    let s = sample();
    let criteria: Vec<Criterion> = vec![
        ("1 completion basis of {4=2,4=0}", Box::new(criterion_1)),
        ("2 non-tally completion", Box::new(criterion_2)),
        ("3 paramodulation basis", Box::new(criterion_3)),
        ("4 refutation and deduction presets", Box::new(criterion_4)),
        ("5 inconsistent presentation", Box::new(criterion_5)),
        ("6 saturation and canonicity", Box::new(|| criterion_6(&s))),
        (
            "7 redundancy characterizations",
            Box::new(|| criterion_7(&s)),
        ),
        ("8 proof postulates", Box::new(criterion_8)),
        ("9 derivation audits", Box::new(criterion_9)),
        ("10 complete but unsaturated", Box::new(criterion_10)),
        ("11 enumeration against closure", Box::new(criterion_11)),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria.iter() {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                println!("FAIL criterion {name}: {detail}");
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
