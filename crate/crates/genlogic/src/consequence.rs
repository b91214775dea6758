//! Consequence relations and their set-theoretic machinery: classical and
//! empirical entailment, cardinality-maximal consistent/possible subsets,
//! their model sets, and the reasoning-regime classifier.
//!
//! MCS/MPS families are computed by the models-argmax characterisation:
//! the models maximising the number of satisfied premises are exactly the
//! models of the cardinality-maximal consistent subsets, and each such
//! model's satisfied-premise set is one family member. The naive
//! subset-enumeration route lives in `oracle` and the equivalence of the
//! two is part of the test suite.

use crate::dataset::ModelDistribution;
use crate::logic::{Formula, FormulaSet, Language, Model, ModelSet};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Premise sets larger than this are rejected by the family constructors.
pub const DEFAULT_SUBSET_CAP: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("premise set of size {size} exceeds the subset cap of {cap}")]
pub struct SubsetCapError {
    pub size: usize,
    pub cap: usize,
}

fn check_cap(delta: &FormulaSet) -> Result<(), SubsetCapError> {
    if delta.len() > DEFAULT_SUBSET_CAP {
        Err(SubsetCapError {
            size: delta.len(),
            cap: DEFAULT_SUBSET_CAP,
        })
    } else {
        Ok(())
    }
}

/// Classical consequence: every model of Δ satisfies α.
pub fn classical_entails(lang: &Language, delta: &FormulaSet, alpha: &Formula) -> bool {
    lang.models()
        .filter(|&m| lang.satisfies_all(m, delta))
        .all(|m| lang.satisfies(m, alpha))
}

/// Empirical consequence: every possible model of Δ satisfies α (and is
/// hence a possible model of α).
pub fn empirical_entails(delta: &FormulaSet, alpha: &Formula, dist: &ModelDistribution) -> bool {
    let lang = dist.language();
    dist.support()
        .map(|(m, _)| m)
        .filter(|&m| lang.satisfies_all(m, delta))
        .all(|m| lang.satisfies(m, alpha))
}

/// A family of equal-cardinality subsets of a queried premise set, listed
/// in lexicographic order of member indices within the premise set's
/// declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetFamily {
    members: Vec<FormulaSet>,
    member_indices: Vec<Vec<usize>>,
    common_cardinality: usize,
}

impl SubsetFamily {
    pub(crate) fn from_index_sets(delta: &FormulaSet, sets: BTreeSet<Vec<usize>>) -> Self {
        let common_cardinality = sets.iter().next().map_or(0, |s| s.len());
        debug_assert!(sets.iter().all(|s| s.len() == common_cardinality));
        let member_indices: Vec<Vec<usize>> = sets.into_iter().collect();
        let members = member_indices.iter().map(|ix| delta.subset(ix)).collect();
        SubsetFamily {
            members,
            member_indices,
            common_cardinality,
        }
    }

    pub fn members(&self) -> &[FormulaSet] {
        &self.members
    }

    pub fn member_indices(&self) -> &[Vec<usize>] {
        &self.member_indices
    }

    pub fn common_cardinality(&self) -> usize {
        self.common_cardinality
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FormulaSet> {
        self.members.iter()
    }
}

impl fmt::Display for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, member) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{member}")?;
        }
        Ok(())
    }
}

/// Max satisfied-premise count and the argmax model set, over an arbitrary
/// model iterator. The iterator must be nonempty.
fn argmax_satisfied<I: Iterator<Item = Model>>(
    lang: &Language,
    delta: &FormulaSet,
    models: I,
) -> (usize, Vec<Model>) {
    let mut best = 0usize;
    let mut arg: Vec<Model> = Vec::new();
    let mut first = true;
    for m in models {
        let count = lang.true_count(m, delta);
        if first || count > best {
            best = count;
            arg.clear();
            arg.push(m);
            first = false;
        } else if count == best {
            arg.push(m);
        }
    }
    (best, arg)
}

fn family_from_models(
    lang: &Language,
    delta: &FormulaSet,
    argmax: &[Model],
) -> BTreeSet<Vec<usize>> {
    argmax
        .iter()
        .map(|&m| {
            delta
                .iter()
                .enumerate()
                .filter(|(_, f)| lang.satisfies(m, f))
                .map(|(i, _)| i)
                .collect()
        })
        .collect()
}

/// The cardinality-maximal consistent subsets of Δ.
pub fn mcs(lang: &Language, delta: &FormulaSet) -> Result<SubsetFamily, SubsetCapError> {
    check_cap(delta)?;
    let (_, argmax) = argmax_satisfied(lang, delta, lang.models());
    Ok(SubsetFamily::from_index_sets(
        delta,
        family_from_models(lang, delta, &argmax),
    ))
}

/// The cardinality-maximal possible subsets of Δ under a distribution.
pub fn mps(delta: &FormulaSet, dist: &ModelDistribution) -> Result<SubsetFamily, SubsetCapError> {
    check_cap(delta)?;
    let lang = dist.language();
    let (_, argmax) = argmax_satisfied(lang, delta, dist.support().map(|(m, _)| m));
    Ok(SubsetFamily::from_index_sets(
        delta,
        family_from_models(lang, delta, &argmax),
    ))
}

fn mcs_models_uncapped(lang: &Language, delta: &FormulaSet) -> ModelSet {
    let (_, argmax) = argmax_satisfied(lang, delta, lang.models());
    let mut set = ModelSet::empty(lang);
    for m in argmax {
        set.insert(m);
    }
    set
}

fn mps_models_uncapped(delta: &FormulaSet, dist: &ModelDistribution) -> ModelSet {
    let lang = dist.language();
    let (_, argmax) = argmax_satisfied(lang, delta, dist.support().map(|(m, _)| m));
    let mut set = ModelSet::empty(lang);
    for m in argmax {
        set.insert(m);
    }
    set
}

/// The union of the models of the cardinality-maximal consistent subsets;
/// equivalently, the models maximising the satisfied-premise count. Never
/// empty.
pub fn mcs_models(lang: &Language, delta: &FormulaSet) -> Result<ModelSet, SubsetCapError> {
    check_cap(delta)?;
    Ok(mcs_models_uncapped(lang, delta))
}

/// The union of the possible models of the cardinality-maximal possible
/// subsets. Never empty.
pub fn mps_models(
    delta: &FormulaSet,
    dist: &ModelDistribution,
) -> Result<ModelSet, SubsetCapError> {
    check_cap(delta)?;
    Ok(mps_models_uncapped(delta, dist))
}

/// Does every cardinality-maximal consistent subset of Δ classically entail
/// α?
pub fn para_entails_mcs(
    lang: &Language,
    delta: &FormulaSet,
    alpha: &Formula,
) -> Result<bool, SubsetCapError> {
    let family = mcs(lang, delta)?;
    Ok(family.iter().all(|s| classical_entails(lang, s, alpha)))
}

/// Does every cardinality-maximal possible subset of Δ empirically entail
/// α?
pub fn para_entails_mps(
    delta: &FormulaSet,
    alpha: &Formula,
    dist: &ModelDistribution,
) -> Result<bool, SubsetCapError> {
    let family = mps(delta, dist)?;
    Ok(family.iter().all(|s| empirical_entails(s, alpha, dist)))
}

/// The four reasoning regimes, most to least restrictive in their
/// grounding assumptions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Consistent,
    Possible,
    Paraconsistent,
    Parapossible,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Consistent => "consistent",
            Regime::Possible => "possible",
            Regime::Paraconsistent => "paraconsistent",
            Regime::Parapossible => "parapossible",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// All four grounding flags plus the least-general regime whose assumptions
/// hold, so a failing assumption can be pinpointed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegimeReport {
    /// ⟦Δ⟧ ≠ ∅
    pub delta_consistent: bool,
    /// ⟨Δ⟩ ≠ ∅
    pub delta_possible: bool,
    /// ⟦Δ⟧ = ⟨Δ⟩
    pub all_models_possible: bool,
    /// ⟦Δ⟧* = ⟨Δ⟩*
    pub mcs_models_possible: bool,
    pub regime: Regime,
}

/// Evaluates the grounding assumptions of each regime and picks the first
/// one whose assumptions all hold; the last requires none.
pub fn classify_regime(delta: &FormulaSet, dist: &ModelDistribution) -> RegimeReport {
    let lang = dist.language();
    let models = lang.model_set(delta);
    let possible = dist.possible_models(&models);
    let delta_consistent = !models.is_empty();
    let delta_possible = !possible.is_empty();
    let all_models_possible = models == possible;
    let mcs_models_possible =
        mcs_models_uncapped(lang, delta) == mps_models_uncapped(delta, dist);
    let regime = if delta_consistent && all_models_possible {
        Regime::Consistent
    } else if delta_possible {
        Regime::Possible
    } else if mcs_models_possible {
        Regime::Paraconsistent
    } else {
        Regime::Parapossible
    };
    RegimeReport {
        delta_consistent,
        delta_possible,
        all_models_possible,
        mcs_models_possible,
        regime,
    }
}
