//! Deliberately naive reference implementations: a literal joint table for
//! conditioning by summation, subset enumeration for MCS/MPS families, and
//! a floating-point limit probe. These back the property-test suite and the
//! CLI's `--verify` flag; nothing here is on the fast path.

use crate::consequence::{SubsetFamily, SubsetCapError};
use crate::dataset::{Dataset, ModelDistribution};
use crate::engine::Probability;
use crate::logic::{Formula, FormulaSet, Language, Model};
use crate::rational::Rational;
use num::traits::Pow;
use num::{BigInt, One, ToPrimitive, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

/// Subset enumeration is exponential; premise sets beyond this are refused.
pub const ENUM_SUBSET_CAP: usize = 12;

/// The joint table is exponential in the number of query formulas.
const MAX_TABLE_ENTRIES: u64 = 1 << 22;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("joint table would need {entries} entries (cap {cap})")]
pub struct TableCapError {
    pub entries: u64,
    pub cap: u64,
}

/// One cell of the literal joint table: a truth assignment to the query
/// formulas, a model, a row of data, and the cell's probability mass.
#[derive(Debug, Clone)]
pub struct JointEntry {
    pub truth: Vec<bool>,
    pub model: Model,
    pub row: usize,
    pub prob: Rational,
}

/// The full joint distribution over (query-formula truth values, model,
/// datum), materialised cell by cell. Includes the zero cells, so the
/// table's shape is exactly 2^F × N × rows.
#[derive(Debug)]
pub struct JointTable {
    formulas: Vec<Formula>,
    entries: Vec<JointEntry>,
}

impl JointTable {
    /// Builds the table for the given query formulas over a dataset at a
    /// fixed rational μ. Formulas are treated as one Bernoulli draw each;
    /// repeated formulas are repeated draws.
    pub fn build(
        formulas: Vec<Formula>,
        ds: &Dataset,
        mu: &Rational,
    ) -> Result<Self, TableCapError> {
        let lang = ds.language();
        let n_vectors = 1u64 << formulas.len();
        let entries_needed = n_vectors * lang.model_count() * ds.rows().len() as u64;
        if formulas.len() >= 22 || entries_needed > MAX_TABLE_ENTRIES {
            return Err(TableCapError {
                entries: entries_needed,
                cap: MAX_TABLE_ENTRIES,
            });
        }
        let k = Rational::new(BigInt::from(1), BigInt::from(ds.total()));
        let one_minus = Rational::one() - mu;
        let mut entries = Vec::with_capacity(entries_needed as usize);
        for (row_idx, row) in ds.rows().iter().enumerate() {
            let row_prob = &k * Rational::from_integer(BigInt::from(row.count));
            for m in lang.models() {
                // p(m | d) is 1 exactly when m is the model the datum supports
                let supported = m == row.model;
                for vec_bits in 0..n_vectors {
                    let truth: Vec<bool> = (0..formulas.len())
                        .map(|i| (vec_bits >> i) & 1 == 1)
                        .collect();
                    let mut p = if supported {
                        row_prob.clone()
                    } else {
                        Rational::zero()
                    };
                    if !p.is_zero() {
                        for (f, &v) in formulas.iter().zip(&truth) {
                            let agrees = lang.satisfies(m, f) == v;
                            p *= if agrees { mu.clone() } else { one_minus.clone() };
                        }
                    }
                    entries.push(JointEntry {
                        truth,
                        model: m,
                        row: row_idx,
                        prob: p,
                    });
                }
            }
        }
        Ok(JointTable { formulas, entries })
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn entries(&self) -> &[JointEntry] {
        &self.entries
    }

    /// Sum of every cell; 1 for a well-formed table.
    pub fn total_mass(&self) -> Rational {
        self.entries
            .iter()
            .fold(Rational::zero(), |acc, e| acc + &e.prob)
    }

    /// Marginalises the formula axes away, recovering p(m, d) for one
    /// (model, row) pair.
    pub fn model_datum_mass(&self, model: Model, row: usize) -> Rational {
        self.entries
            .iter()
            .filter(|e| e.model == model && e.row == row)
            .fold(Rational::zero(), |acc, e| acc + &e.prob)
    }

    /// Conditions by summation: mass where every listed formula is true in
    /// the assignment, over mass where every `given` formula is true.
    pub fn condition(&self, target: usize, given: &[usize]) -> Probability {
        let mut num = Rational::zero();
        let mut den = Rational::zero();
        for e in &self.entries {
            if given.iter().all(|&i| e.truth[i]) {
                den += &e.prob;
                if e.truth[target] {
                    num += &e.prob;
                }
            }
        }
        if den.is_zero() {
            Probability::Undefined
        } else {
            Probability::Value(num / den)
        }
    }
}

/// Conditional probability by literal joint-table summation. Must agree
/// exactly with the engine's grouped evaluation at the same μ.
pub fn joint_conditional(
    alpha: &Formula,
    delta: &FormulaSet,
    ds: &Dataset,
    mu: &Rational,
) -> Result<Probability, TableCapError> {
    let mut formulas = vec![alpha.clone()];
    formulas.extend(delta.iter().cloned());
    let table = JointTable::build(formulas, ds, mu)?;
    let given: Vec<usize> = (1..=delta.len()).collect();
    Ok(table.condition(0, &given))
}

fn check_enum_cap(delta: &FormulaSet) -> Result<(), SubsetCapError> {
    if delta.len() > ENUM_SUBSET_CAP {
        Err(SubsetCapError {
            size: delta.len(),
            cap: ENUM_SUBSET_CAP,
        })
    } else {
        Ok(())
    }
}

fn mask_indices(mask: u32, len: usize) -> Vec<usize> {
    (0..len).filter(|i| (mask >> i) & 1 == 1).collect()
}

/// All inclusion-maximal subsets of Δ that pass `viable`, as index masks.
fn maximal_viable_masks(delta: &FormulaSet, viable: impl Fn(u32) -> bool) -> Vec<u32> {
    let n = delta.len();
    let all_masks = 1u32 << n;
    let viable_masks: Vec<u32> = (0..all_masks).filter(|&m| viable(m)).collect();
    viable_masks
        .iter()
        .copied()
        .filter(|&m| {
            !viable_masks
                .iter()
                .any(|&other| other != m && other & m == m)
        })
        .collect()
}

fn cardinality_maximal(delta: &FormulaSet, masks: Vec<u32>) -> SubsetFamily {
    let best = masks.iter().map(|m| m.count_ones()).max().unwrap_or(0);
    let sets: BTreeSet<Vec<usize>> = masks
        .into_iter()
        .filter(|m| m.count_ones() == best)
        .map(|m| mask_indices(m, delta.len()))
        .collect();
    SubsetFamily::from_index_sets(delta, sets)
}

/// Inclusion-maximal consistent subsets of Δ, by brute-force enumeration of
/// all 2^|Δ| subsets.
pub fn enum_maximal_consistent(
    lang: &Language,
    delta: &FormulaSet,
) -> Result<Vec<FormulaSet>, SubsetCapError> {
    check_enum_cap(delta)?;
    let masks = maximal_viable_masks(delta, |mask| {
        let subset = delta.subset(&mask_indices(mask, delta.len()));
        !lang.model_set(&subset).is_empty()
    });
    let mut sorted: Vec<Vec<usize>> = masks
        .into_iter()
        .map(|m| mask_indices(m, delta.len()))
        .collect();
    sorted.sort();
    Ok(sorted.into_iter().map(|ix| delta.subset(&ix)).collect())
}

/// Cardinality-maximal consistent subsets, by enumeration. Reference for
/// `consequence::mcs`.
pub fn enum_mcs(lang: &Language, delta: &FormulaSet) -> Result<SubsetFamily, SubsetCapError> {
    check_enum_cap(delta)?;
    let masks = maximal_viable_masks(delta, |mask| {
        let subset = delta.subset(&mask_indices(mask, delta.len()));
        !lang.model_set(&subset).is_empty()
    });
    Ok(cardinality_maximal(delta, masks))
}

/// Cardinality-maximal possible subsets, by enumeration. Reference for
/// `consequence::mps`.
pub fn enum_mps(
    delta: &FormulaSet,
    dist: &ModelDistribution,
) -> Result<SubsetFamily, SubsetCapError> {
    check_enum_cap(delta)?;
    let lang = dist.language();
    let masks = maximal_viable_masks(delta, |mask| {
        let subset = delta.subset(&mask_indices(mask, delta.len()));
        let models = lang.model_set(&subset);
        !dist.possible_models(&models).is_empty()
    });
    Ok(cardinality_maximal(delta, masks))
}

/// Floating-point evaluation of the conditional at μ_k = 1 − 10^(−k), a
/// convergence sanity signal only; exactness lives in the rational path.
pub fn numeric_limit(
    alpha: &Formula,
    delta: &FormulaSet,
    dist: &ModelDistribution,
    ks: &[u32],
) -> Vec<(f64, f64)> {
    let lang = dist.language();
    ks.iter()
        .map(|&k| {
            let mu = 1.0 - 10f64.powi(-(k as i32));
            let mut num = 0f64;
            let mut den = 0f64;
            for (m, p) in dist.support() {
                let p = p.to_f64().unwrap_or(0.0);
                let a = lang.true_count(m, delta) as i32;
                let b = delta.len() as i32 - a;
                let w = p * mu.powi(a) * (1.0 - mu).powi(b);
                den += w;
                num += w * if lang.satisfies(m, alpha) { mu } else { 1.0 - mu };
            }
            (mu, if den == 0.0 { f64::NAN } else { num / den })
        })
        .collect()
}

/// Exact rational μ_k = 1 − 10^(−k), for driving the engine's exact path
/// at the same grid the numeric probe uses.
pub fn near_one(k: u32) -> Rational {
    let p = BigInt::from(10u8).pow(k);
    Rational::one() - Rational::new(BigInt::one(), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consequence;
    use crate::engine::{conditional, MuSpec};
    use crate::rational::ratio;

    const TABLE: &str = "\
rain,wet,count
0,0,4
0,1,2
1,0,1
1,1,3
";

    fn fixture() -> Dataset {
        Dataset::ingest(TABLE).unwrap()
    }

    fn fset(l: &Language, texts: &[&str]) -> FormulaSet {
        texts.iter().map(|t| l.parse(t).unwrap()).collect()
    }

    #[test]
    fn joint_table_is_normalised() {
        let ds = fixture();
        let l = ds.language().clone();
        let formulas = vec![l.parse("rain").unwrap(), l.parse("wet").unwrap()];
        let table = JointTable::build(formulas, &ds, &ratio(3, 7)).unwrap();
        assert_eq!(table.total_mass(), ratio(1, 1));
    }

    #[test]
    fn marginalising_formulas_recovers_the_data_path() {
        let ds = fixture();
        let l = ds.language().clone();
        let formulas = vec![l.parse("rain -> wet").unwrap(), l.parse("!wet").unwrap()];
        let table = JointTable::build(formulas, &ds, &ratio(1, 3)).unwrap();
        // row 0 holds 4 of the 10 data and supports m1
        assert_eq!(table.model_datum_mass(l.model(0), 0), ratio(4, 10));
        assert_eq!(table.model_datum_mass(l.model(1), 0), ratio(0, 1));
    }

    #[test]
    fn joint_conditional_agrees_with_the_engine() {
        let ds = fixture();
        let l = ds.language().clone();
        let dist = ds.distribution();
        let alpha = l.parse("rain").unwrap();
        let delta = fset(&l, &["rain", "wet", "!wet"]);
        for mu in [ratio(1, 2), ratio(3, 4), ratio(1, 10), ratio(1, 1), ratio(0, 1)] {
            let via_table = joint_conditional(&alpha, &delta, &ds, &mu).unwrap();
            let via_engine = conditional(&alpha, &delta, &dist, &MuSpec::Exact(mu));
            assert_eq!(via_table, via_engine);
        }
        // at μ=1/2 every likelihood is 1/2 and any conditional collapses to 1/2
        assert_eq!(
            joint_conditional(&alpha, &delta, &ds, &ratio(1, 2)).unwrap(),
            Probability::Value(ratio(1, 2))
        );
    }

    #[test]
    fn empty_premises_reduce_to_the_marginal() {
        let ds = fixture();
        let l = ds.language().clone();
        let dist = ds.distribution();
        let alpha = l.parse("rain -> wet").unwrap();
        let mu = ratio(2, 5);
        let via_table = joint_conditional(&alpha, &FormulaSet::new(), &ds, &mu).unwrap();
        let expected = crate::engine::marginal(&alpha, &dist, &MuSpec::Exact(mu));
        assert_eq!(via_table, Probability::Value(expected));
    }

    #[test]
    fn enumerated_maximal_consistent_subsets() {
        let ds = fixture();
        let l = ds.language().clone();
        let delta = fset(&l, &["rain", "wet", "rain -> wet", "!wet"]);
        let maximal = enum_maximal_consistent(&l, &delta).unwrap();
        let rendered: Vec<String> = maximal.iter().map(|s| s.to_string()).collect();
        assert_eq!(
            rendered,
            vec![
                "{rain, wet, rain -> wet}",
                "{rain, !wet}",
                "{rain -> wet, !wet}"
            ]
        );
        let family = enum_mcs(&l, &delta).unwrap();
        assert_eq!(family.len(), 1);
        assert_eq!(family.member_indices(), &[vec![0, 1, 2]]);
        assert_eq!(family, consequence::mcs(&l, &delta).unwrap());
    }

    #[test]
    fn enumerated_maximal_possible_subsets() {
        let l = Language::new(["rain", "wet"]).unwrap();
        let dist = ModelDistribution::from_probs(
            l.clone(),
            &[ratio(9, 10), ratio(1, 10), ratio(0, 1), ratio(0, 1)],
        )
        .unwrap();
        let delta = fset(&l, &["rain", "wet", "rain -> wet", "!wet"]);
        let family = enum_mps(&delta, &dist).unwrap();
        assert_eq!(family.member_indices(), &[vec![1, 2], vec![2, 3]]);
        assert_eq!(family, consequence::mps(&delta, &dist).unwrap());
    }

    #[test]
    fn empty_premise_set_enumerates_to_the_empty_subset() {
        let l = Language::new(["rain", "wet"]).unwrap();
        let family = enum_mcs(&l, &FormulaSet::new()).unwrap();
        assert_eq!(family.len(), 1);
        assert_eq!(family.common_cardinality(), 0);
    }

    #[test]
    fn numeric_limit_approaches_the_exact_limit() {
        let ds = fixture();
        let l = ds.language().clone();
        let dist = ds.distribution();
        let alpha = l.parse("rain").unwrap();
        let delta = fset(&l, &["rain", "wet", "!wet"]);
        let probes = numeric_limit(&alpha, &delta, &dist, &[6]);
        assert!((probes[0].1 - 1.0).abs() < 1e-2);

        // p(α | {α}) with possible α: converges to 1, error ≈ (1-μ)/p(α)
        let self_premise = fset(&l, &["rain"]);
        let mut last = f64::INFINITY;
        for (_, v) in numeric_limit(&alpha, &self_premise, &dist, &[3, 4, 5, 6]) {
            let err = (v - 1.0).abs();
            assert!(err < 1e-2);
            assert!(err <= last);
            last = err;
        }

        // explosion premises under the zero-m3 distribution approach 1/2
        let skew = ModelDistribution::from_probs(
            l.clone(),
            &[ratio(1, 2), ratio(1, 5), ratio(0, 1), ratio(3, 10)],
        )
        .unwrap();
        let wet = l.parse("wet").unwrap();
        let contradiction = fset(&l, &["rain", "!rain"]);
        let probes = numeric_limit(&wet, &contradiction, &skew, &[6]);
        assert!((probes[0].1 - 0.5).abs() < 1e-2);
    }

    #[test]
    fn table_cap_is_enforced() {
        let ds = fixture();
        let l = ds.language().clone();
        let formulas: Vec<Formula> = (0..22).map(|_| l.parse("rain").unwrap()).collect();
        assert!(JointTable::build(formulas, &ds, &ratio(1, 2)).is_err());
    }
}
