//! Shared generators and independent evaluators for the test suites.

#![allow(dead_code)]

use genlogic::dataset::{Dataset, ModelDistribution};
use genlogic::logic::{Formula, FormulaSet, Language, ModelSet};
use genlogic::rational::{ratio, Rational};
use num::BigInt;
use rand::Rng;

pub fn rain_wet() -> Language {
    Language::new(["rain", "wet"]).unwrap()
}

pub fn parse_set(lang: &Language, texts: &[&str]) -> FormulaSet {
    texts.iter().map(|t| lang.parse(t).unwrap()).collect()
}

pub fn dist4(lang: &Language, probs: [(i64, i64); 4]) -> ModelDistribution {
    let probs: Vec<Rational> = probs.iter().map(|&(n, d)| ratio(n, d)).collect();
    ModelDistribution::from_probs(lang.clone(), &probs).unwrap()
}

pub fn random_formula(rng: &mut impl Rng, lang: &Language, depth: usize) -> Formula {
    if depth == 0 || rng.gen_range(0..10) < 3 {
        match rng.gen_range(0..8) {
            6 => Formula::Top,
            7 => Formula::Bottom,
            _ => {
                let i = rng.gen_range(0..lang.atom_count());
                Formula::atom(lang.atoms()[i].clone())
            }
        }
    } else {
        match rng.gen_range(0..5) {
            0 => Formula::not(random_formula(rng, lang, depth - 1)),
            1 => Formula::and(
                random_formula(rng, lang, depth - 1),
                random_formula(rng, lang, depth - 1),
            ),
            2 => Formula::or(
                random_formula(rng, lang, depth - 1),
                random_formula(rng, lang, depth - 1),
            ),
            3 => Formula::implies(
                random_formula(rng, lang, depth - 1),
                random_formula(rng, lang, depth - 1),
            ),
            _ => Formula::iff(
                random_formula(rng, lang, depth - 1),
                random_formula(rng, lang, depth - 1),
            ),
        }
    }
}

pub fn random_premises(
    rng: &mut impl Rng,
    lang: &Language,
    max_len: usize,
    depth: usize,
) -> FormulaSet {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| random_formula(rng, lang, depth)).collect()
}

/// A dataset of 1..=max_rows random rows with small multiplicities; its
/// distribution typically leaves some models without mass.
pub fn random_dataset(rng: &mut impl Rng, lang: &Language, max_rows: usize) -> Dataset {
    let n_rows = rng.gen_range(1..=max_rows);
    let rows: Vec<(u32, u64)> = (0..n_rows)
        .map(|_| {
            (
                rng.gen_range(0..lang.model_count()) as u32,
                rng.gen_range(1..=3u64),
            )
        })
        .collect();
    Dataset::from_rows(lang.clone(), rows).unwrap()
}

pub fn random_mu(rng: &mut impl Rng) -> Rational {
    let den = rng.gen_range(1..=24i64);
    let num = rng.gen_range(0..=den);
    ratio(num, den)
}

/// Independent satisfaction route: evaluates a formula to its model set by
/// set algebra over the connectives, instead of per-model boolean recursion.
pub fn eval_models(lang: &Language, f: &Formula) -> ModelSet {
    match f {
        Formula::Top => ModelSet::full(lang),
        Formula::Bottom => ModelSet::empty(lang),
        Formula::Atom(name) => {
            let i = lang.atom_index(name).expect("atom in language");
            let mut set = ModelSet::empty(lang);
            for m in lang.models() {
                if m.truth(i) {
                    set.insert(m);
                }
            }
            set
        }
        Formula::Not(g) => eval_models(lang, g).complement(),
        Formula::And(a, b) => eval_models(lang, a).intersect(&eval_models(lang, b)),
        Formula::Or(a, b) => eval_models(lang, a).union(&eval_models(lang, b)),
        Formula::Implies(a, b) => eval_models(lang, a)
            .complement()
            .union(&eval_models(lang, b)),
        Formula::Iff(a, b) => {
            let ma = eval_models(lang, a);
            let mb = eval_models(lang, b);
            ma.intersect(&mb)
                .union(&ma.complement().intersect(&mb.complement()))
        }
    }
}

pub fn big_ratio(n: u64, d: u64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
