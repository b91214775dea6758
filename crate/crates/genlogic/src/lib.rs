//! Exact-arithmetic engine for deriving probabilities of propositional
//! formulas from raw data, and for deciding the consequence relations that
//! the underlying generative model realises at μ = 1 and μ → 1.
//!
//! Data rows are complete truth assignments; each datum supports one model
//! of the language. The empirical model distribution is the per-model data
//! fraction, and every query — marginal, conditional, consequence check —
//! is answered in exact rational arithmetic. Setting μ = 1 recovers
//! classical conditioning over the data-supported models; the symbolic
//! μ → 1 limit extends it to inconsistent or data-unsupported premise sets
//! via cardinality-maximal consistent/possible subsets.
//!
//! Modules:
//! - [`logic`] — language, formulas, parsing, models, satisfaction.
//! - [`dataset`] — tabular ingestion and the empirical model distribution.
//! - [`engine`] — μ-parametric likelihoods, marginals, conditionals, the
//!   μ → 1 limit, and the O(K) data-path conditional.
//! - [`consequence`] — classical/empirical/paraconsistent/parapossible
//!   entailment and the regime classifier.
//! - [`oracle`] — naive reference implementations for auditing answers.
//! - [`rational`] — exact rational parsing and decimal rendering.

pub mod cli;
pub mod consequence;
pub mod dataset;
pub mod engine;
pub mod logic;
pub mod oracle;
pub mod rational;

pub use consequence::{
    classical_entails, classify_regime, empirical_entails, mcs, mcs_models, mps, mps_models,
    para_entails_mcs, para_entails_mps, Regime, RegimeReport, SubsetFamily,
};
pub use dataset::{DataRow, Dataset, ModelDistribution};
pub use engine::{
    conditional, conditional_via_data, likelihood, marginal, marginal_poly, set_weight, sweep,
    MuLinear, MuSpec, Probability, SweepPoint, WeightTerm,
};
pub use logic::{parse_formula, scan_atoms, Formula, FormulaSet, Language, Model, ModelSet};
pub use rational::Rational;
