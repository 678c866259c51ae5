mod common;

use canon::formula::Formula;
use canon::oracle::{enumerate_proofs, EnumerationBounds};
use canon::proof::{
    assumptions, check_wellformed, conclusion, conclusions_coherent, parse_proof, strict_subproofs,
    subproofs, trivial_proof, Proof, ProofError, Rule,
};
use canon::term::{Signature, Symbol};
use common::p;
use proptest::prelude::*;

fn pr(text: &str) -> Proof {
    parse_proof(text, &Signature::tally()).unwrap()
}

fn i(a: usize, b: usize) -> Proof {
    Proof::axiom(Formula::num_eq(a, b))
}

fn enumerated() -> Vec<Proof> {
    let bounds = EnumerationBounds::new(9, 4);
    let mut all: Vec<Proof> = enumerate_proofs(&p("4 = 2\n4 = 0"), &Signature::tally(), bounds)
        .unwrap()
        .iter()
        .cloned()
        .collect();
    all.extend(
        enumerate_proofs(
            &p("1 != 1\n2 = 1"),
            &Signature::tally(),
            EnumerationBounds::new(4, 3),
        )
        .unwrap()
        .iter()
        .cloned(),
    );
    all
}

#[test]
fn conclusion_examples() {
    assert_eq!(*conclusion(&pr("T(I(4=0),I(4=2))")), Formula::num_eq(2, 0));
    assert_eq!(*conclusion(&pr("S[s](S[s](Z))")), Formula::num_eq(2, 2));
    assert_eq!(
        *conclusion(&pr("Tneq(I(0=1),I(1!=1))")),
        Formula::num_neq(0, 1)
    );
}

#[test]
fn assumption_examples() {
    let t = pr("T(I(4=0),I(4=2))");
    assert_eq!(
        assumptions(&t),
        [Formula::num_eq(4, 0), Formula::num_eq(4, 2)].into()
    );
    assert!(assumptions(&pr("S[s](Z)")).is_empty());
    let mut sig = Signature::new();
    let ab = canon::proof::parse_proof_infer("I(a=b)", &mut sig).unwrap();
    assert_eq!(assumptions(&ab).len(), 1);
}

#[test]
fn subproof_examples() {
    let leaf = i(2, 0);
    assert_eq!(subproofs(&leaf), vec![leaf.clone()]);
    assert!(strict_subproofs(&leaf).is_empty());
    assert_eq!(subproofs(&pr("S[s](Z)")).len(), 2);
    let t = pr("T(I(4=0),I(4=2))");
    let subs = subproofs(&t);
    assert_eq!(subs.len(), 3);
    assert!(subs.contains(&i(4, 0)) && subs.contains(&i(4, 2)) && subs.contains(&t));
}

#[test]
fn wellformedness_examples() {
    let t = check_wellformed(
        Rule::T {
            pivot: canon::term::Term::numeral(4),
        },
        vec![i(1, 2), i(3, 4)],
    );
    assert!(t.is_err());
    assert!(matches!(
        Proof::trans(i(1, 2), i(3, 4)),
        Err(ProofError::NoSharedTerm { .. })
    ));
    assert_eq!(
        *Proof::trans(i(4, 0), i(4, 2)).unwrap().conclusion(),
        Formula::num_eq(2, 0)
    );
    let f = Proof::ex_falso(Formula::num_eq(5, 7), Proof::axiom(Formula::num_neq(1, 1))).unwrap();
    assert_eq!(*f.conclusion(), Formula::num_eq(5, 7));
    assert!(Proof::ex_falso(Formula::num_eq(5, 7), Proof::axiom(Formula::num_neq(1, 0))).is_err());
    assert!(Proof::ex_falso(Formula::num_neq(5, 7), Proof::axiom(Formula::num_neq(1, 1))).is_err());
    let s = Symbol::new("s", 1);
    assert!(Proof::cong(s.clone(), vec![]).is_err());
    assert!(Proof::cong(s, vec![Proof::zero(), Proof::zero()]).is_err());
    assert!(Proof::trans_neq(i(0, 1), Proof::axiom(Formula::num_neq(2, 3))).is_err());
    assert_eq!(
        *Proof::proj(Proof::zero(), i(2, 0)).unwrap().conclusion(),
        Formula::num_eq(2, 0)
    );
}

#[test]
fn trivial_proofs() {
    for a in [Formula::num_eq(2, 0), Formula::num_neq(1, 1)] {
        let t = trivial_proof(a.clone());
        assert_eq!(*t.conclusion(), a);
        assert_eq!(assumptions(&t), [a.clone()].into());
        assert_eq!(subproofs(&t), vec![t.clone()]);
    }
}

#[test]
fn postulates_on_enumerated_proofs() {
    for p in enumerated() {
        let subs = subproofs(&p);
        let gp = assumptions(&p);
        for a in &gp {
            assert!(
                subs.contains(&trivial_proof(a.clone())),
                "{p} lacks a leaf for {a}"
            );
        }
        for q in &subs {
            assert!(assumptions(q).is_subset(&gp), "{p} over {q}");
        }
        assert!(conclusions_coherent(&p), "{p}");
        for q in strict_subproofs(&p) {
            assert!(q.size() < p.size(), "{p} over {q}");
        }
    }
}

#[test]
fn text_round_trips_on_enumerated_proofs() {
    let sig = Signature::tally();
    for p in enumerated() {
        for sugar in [true, false] {
            let shown = p.display(sugar).to_string();
            assert_eq!(parse_proof(&shown, &sig).unwrap(), p, "{shown}");
        }
    }
}

proptest! {
    #[test]
    fn trivial_proof_of_random_formula(i in 0usize..9, j in 0usize..9, neq: bool) {
        let a = if neq { Formula::num_neq(i, j) } else { Formula::num_eq(i, j) };
        let t = trivial_proof(a.clone());
        prop_assert_eq!(assumptions(&t), [a.clone()].into());
        prop_assert_eq!(t.conclusion(), &a);
        prop_assert!(t.is_trivial() && t.is_leaf());
    }

    #[test]
    fn towers_conclude_shifted_equations(n in 0usize..6, i in 0usize..4, j in 0usize..4) {
        let s = Symbol::new("s", 1);
        let p = Proof::cong_tower(&s, n, Proof::axiom(Formula::num_eq(i, j))).unwrap();
        prop_assert_eq!(p.conclusion(), &Formula::num_eq(i + n, j + n));
        prop_assert_eq!(p.depth(), n + 1);
    }
}
