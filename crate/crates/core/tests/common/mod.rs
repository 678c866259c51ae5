#![allow(dead_code)]

use canon::formula::{parse_presentation, Formula, Presentation};
use canon::term::{Signature, Term, TermPrecedence};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn p(text: &str) -> Presentation {
    parse_presentation(text).unwrap()
}

pub fn tally_prec() -> TermPrecedence {
    TermPrecedence::default_for(&Signature::tally())
}

/// Inputs with known answers, as (name, text, precedence).
pub const GOLDEN: &[(&str, &str, &str)] = &[
    ("parity", "4 = 2\n4 = 0", "s,0"),
    ("abc", "a = c\ns(a) = b", "s,a,b,c"),
    ("empty", "", "s,0"),
    ("contradiction", "1 != 1", "s,0"),
    ("even", "2 = 0", "s,0"),
    ("redundant", "2 = 0\n4 = 0", "s,0"),
    ("reflexive", "0 = 0", "s,0"),
];

pub fn golden_equational() -> impl Iterator<Item = (&'static str, Presentation, TermPrecedence)> {
    GOLDEN
        .iter()
        .map(|(n, t, pr)| (*n, p(t), TermPrecedence::parse(pr).unwrap()))
        .filter(|(_, a, _)| !a.has_disequations())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `f/2, a, b`: the small non-tally signature used for sampled properties.
pub fn fab() -> Signature {
    Signature::from_symbols([("f", 2), ("a", 0), ("b", 0)]).unwrap()
}

/// A random presentation of one to three formulas over `terms`;
/// disequations with probability `neq`.
pub fn random_presentation(r: &mut ChaCha8Rng, terms: &[Term], neq: f64) -> Presentation {
    let n = r.gen_range(1..=3);
    (0..n)
        .map(|_| {
            let x = terms.choose(r).unwrap().clone();
            let y = terms.choose(r).unwrap().clone();
            if r.gen_bool(neq) {
                Formula::neq(x, y)
            } else {
                Formula::eq(x, y)
            }
        })
        .collect()
}

/// A random set of one to three equations between numerals up to `max`.
pub fn random_numeral_equations(r: &mut ChaCha8Rng, max: usize) -> Presentation {
    let n = r.gen_range(1..=3);
    (0..n)
        .map(|_| Formula::num_eq(r.gen_range(0..=max), r.gen_range(0..=max)))
        .collect()
}

pub fn subsets(base: &Presentation) -> Vec<Presentation> {
    let items: Vec<&Formula> = base.iter().collect();
    (0u32..(1 << items.len()))
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, f)| (*f).clone())
                .collect()
        })
        .collect()
}
