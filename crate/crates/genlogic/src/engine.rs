//! The generative reasoning engine: μ-parametric likelihoods, exact
//! marginals and conditionals over a model distribution, the symbolic μ→1
//! limit, and the O(K) data-path conditional.
//!
//! Everything here is exact rational arithmetic. The μ→1 limit is computed
//! by exponent grouping over the positive-probability models, never by
//! numeric extrapolation.

use crate::dataset::{Dataset, ModelDistribution};
use crate::logic::{Formula, FormulaSet, Model};
use crate::rational::{fraction_string, Rational};
use num::{BigInt, One, Zero};
use std::fmt;

/// How μ is fixed for a query: an exact rational in [0,1], exactly 1, or
/// the limit μ→1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MuSpec {
    Exact(Rational),
    One,
    LimitToOne,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("μ = {0} is outside [0, 1]")]
pub struct MuRangeError(String);

impl MuSpec {
    /// Checked constructor for the `Exact` variant.
    pub fn exact(mu: Rational) -> Result<Self, MuRangeError> {
        if mu < Rational::zero() || mu > Rational::one() {
            return Err(MuRangeError(mu.to_string()));
        }
        Ok(MuSpec::Exact(mu))
    }
}

impl fmt::Display for MuSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MuSpec::Exact(r) => write!(f, "{}", fraction_string(r)),
            MuSpec::One => write!(f, "1"),
            MuSpec::LimitToOne => write!(f, "limit"),
        }
    }
}

/// A probability that may be undefined (zero conditioning mass). Undefined
/// is a value, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Probability {
    Value(Rational),
    Undefined,
}

impl Probability {
    pub fn is_defined(&self) -> bool {
        matches!(self, Probability::Value(_))
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            Probability::Value(r) => Some(r),
            Probability::Undefined => None,
        }
    }

    pub fn expect_value(&self) -> &Rational {
        self.value().expect("probability is undefined")
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Probability::Value(r) => write!(f, "{}", fraction_string(r)),
            Probability::Undefined => write!(f, "undefined"),
        }
    }
}

/// The marginal probability of a formula as a polynomial in μ:
/// `constant + slope·μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuLinear {
    pub constant: Rational,
    pub slope: Rational,
}

impl MuLinear {
    pub fn eval(&self, mu: &Rational) -> Rational {
        &self.constant + &self.slope * mu
    }
}

impl fmt::Display for MuLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}*mu",
            fraction_string(&self.constant),
            fraction_string(&self.slope)
        )
    }
}

/// One model's contribution to p(Δ): `mass · μ^true_count · (1-μ)^false_count`,
/// where `true_count` is the number of premises true in the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightTerm {
    pub model: Model,
    pub mass: Rational,
    pub true_count: u32,
    pub false_count: u32,
}

/// Bernoulli likelihood of a formula in a model: μ if the model satisfies
/// it, 1−μ otherwise.
pub fn likelihood(
    dist_lang: &crate::logic::Language,
    f: &Formula,
    m: Model,
    mu: &Rational,
) -> Rational {
    if dist_lang.satisfies(m, f) {
        mu.clone()
    } else {
        Rational::one() - mu
    }
}

/// The weight term of a premise set in one model under a distribution.
pub fn set_weight(delta: &FormulaSet, m: Model, dist: &ModelDistribution) -> WeightTerm {
    let lang = dist.language();
    let true_count = lang.true_count(m, delta) as u32;
    WeightTerm {
        model: m,
        mass: dist.prob(m),
        true_count,
        false_count: delta.len() as u32 - true_count,
    }
}

/// Marginal probability of `f` as a degree-1 polynomial in μ:
/// the mass of the falsifying models plus μ times (satisfying − falsifying)
/// mass.
pub fn marginal_poly(f: &Formula, dist: &ModelDistribution) -> MuLinear {
    let lang = dist.language();
    let mut mass_true = Rational::zero();
    for (m, p) in dist.support() {
        if lang.satisfies(m, f) {
            mass_true += p;
        }
    }
    let mass_false = Rational::one() - &mass_true;
    MuLinear {
        slope: &mass_true - &mass_false,
        constant: mass_false,
    }
}

/// Marginal probability of `f` at a fixed μ. At `One` and `LimitToOne` this
/// is the polynomial's value at 1 (identical by continuity).
pub fn marginal(f: &Formula, dist: &ModelDistribution, mu: &MuSpec) -> Rational {
    let poly = marginal_poly(f, dist);
    match mu {
        MuSpec::Exact(r) => poly.eval(r),
        MuSpec::One | MuSpec::LimitToOne => poly.eval(&Rational::one()),
    }
}

fn pow(base: &Rational, exp: u32) -> Rational {
    // Ratio::pow(0, 0) is 1, which is exactly the 0^0 = 1 convention the
    // boundary values μ = 0 and μ = 1 rely on.
    base.pow(exp as i32)
}

/// Conditional probability p(α | Δ) under the generative model.
///
/// - `Exact(μ)`: the ratio Σ_m p(m)·p(α|m)·μ^a(1-μ)^b over
///   Σ_m p(m)·μ^a(1-μ)^b, undefined when the denominator vanishes.
/// - `One`: mass ratio over the possible models of Δ, undefined when Δ has
///   no possible model.
/// - `LimitToOne`: exponent grouping — among positive-probability models,
///   keep those with the fewest falsified premises and take the mass ratio.
///   Always defined.
pub fn conditional(
    alpha: &Formula,
    delta: &FormulaSet,
    dist: &ModelDistribution,
    mu: &MuSpec,
) -> Probability {
    let lang = dist.language();
    match mu {
        MuSpec::Exact(r) => {
            let one_minus = Rational::one() - r;
            let mut num = Rational::zero();
            let mut den = Rational::zero();
            for (m, p) in dist.support() {
                let a = lang.true_count(m, delta) as u32;
                let b = delta.len() as u32 - a;
                let w = p * pow(r, a) * pow(&one_minus, b);
                den += &w;
                num += w * likelihood(lang, alpha, m, r);
            }
            if den.is_zero() {
                Probability::Undefined
            } else {
                Probability::Value(num / den)
            }
        }
        MuSpec::One => {
            let mut num = Rational::zero();
            let mut den = Rational::zero();
            for (m, p) in dist.support() {
                if lang.satisfies_all(m, delta) {
                    den += p;
                    if lang.satisfies(m, alpha) {
                        num += p;
                    }
                }
            }
            if den.is_zero() {
                Probability::Undefined
            } else {
                Probability::Value(num / den)
            }
        }
        MuSpec::LimitToOne => {
            let terms: Vec<(Model, Rational, u32)> = dist
                .support()
                .map(|(m, p)| {
                    let a = lang.true_count(m, delta) as u32;
                    (m, p.clone(), delta.len() as u32 - a)
                })
                .collect();
            let min_b = terms
                .iter()
                .map(|(_, _, b)| *b)
                .min()
                .expect("distribution has nonempty support");
            let mut num = Rational::zero();
            let mut den = Rational::zero();
            for (m, p, b) in &terms {
                if *b == min_b {
                    den += p;
                    if lang.satisfies(*m, alpha) {
                        num += p;
                    }
                }
            }
            Probability::Value(num / den)
        }
    }
}

/// Conditional probability at μ = 1 computed along the data path: counts of
/// supporting rows, never an enumeration of the model space. Agrees exactly
/// with `conditional(..., MuSpec::One)` on the dataset's distribution.
pub fn conditional_via_data(alpha: &Formula, delta: &FormulaSet, ds: &Dataset) -> Probability {
    let lang = ds.language();
    let mut num: u64 = 0;
    let mut den: u64 = 0;
    for row in ds.rows() {
        if lang.satisfies_all(row.model, delta) {
            den += row.count;
            if lang.satisfies(row.model, alpha) {
                num += row.count;
            }
        }
    }
    if den == 0 {
        Probability::Undefined
    } else {
        Probability::Value(Rational::new(BigInt::from(num), BigInt::from(den)))
    }
}

/// One row of a μ sweep. `limit` carries the μ→1 value on the μ = 1 row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepPoint {
    pub mu: Rational,
    pub exact: Probability,
    pub limit: Option<Rational>,
}

/// Evaluates the conditional on each grid value of μ. Grid values must lie
/// in [0,1]; the μ = 1 endpoint additionally reports the μ→1 limit.
pub fn sweep(
    alpha: &Formula,
    delta: &FormulaSet,
    dist: &ModelDistribution,
    grid: &[Rational],
) -> Vec<SweepPoint> {
    grid.iter()
        .map(|mu| {
            let exact = conditional(alpha, delta, dist, &MuSpec::Exact(mu.clone()));
            let limit = if mu.is_one() {
                match conditional(alpha, delta, dist, &MuSpec::LimitToOne) {
                    Probability::Value(v) => Some(v),
                    Probability::Undefined => None,
                }
            } else {
                None
            };
            SweepPoint {
                mu: mu.clone(),
                exact,
                limit,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Dataset;
    use crate::logic::Language;
    use crate::rational::ratio;

    fn lang() -> Language {
        Language::new(["rain", "wet"]).unwrap()
    }

    fn dist(probs: [(i64, i64); 4]) -> ModelDistribution {
        let l = lang();
        let probs: Vec<Rational> = probs.iter().map(|&(n, d)| ratio(n, d)).collect();
        ModelDistribution::from_probs(l, &probs).unwrap()
    }

    fn table1_dist() -> ModelDistribution {
        dist([(4, 10), (2, 10), (1, 10), (3, 10)])
    }

    fn fset(l: &Language, texts: &[&str]) -> FormulaSet {
        texts.iter().map(|t| l.parse(t).unwrap()).collect()
    }

    #[test]
    fn likelihood_is_bernoulli_in_satisfaction() {
        let l = lang();
        let f = l.parse("rain -> wet").unwrap();
        let mu = ratio(2, 3);
        assert_eq!(likelihood(&l, &f, l.model(2), &mu), ratio(1, 3));
        assert_eq!(likelihood(&l, &Formula::Top, l.model(0), &mu), ratio(2, 3));
        let rw = l.parse("rain & wet").unwrap();
        assert_eq!(likelihood(&l, &rw, l.model(3), &ratio(3, 4)), ratio(3, 4));
    }

    #[test]
    fn set_weight_counts_satisfied_premises() {
        let d = table1_dist();
        let l = d.language().clone();
        let delta = fset(&l, &["rain", "wet", "!wet"]);
        let w = set_weight(&delta, l.model(3), &d);
        assert_eq!(w.mass, ratio(3, 10));
        assert_eq!((w.true_count, w.false_count), (2, 1));

        let empty = FormulaSet::new();
        let w0 = set_weight(&empty, l.model(0), &d);
        assert_eq!((w0.true_count, w0.false_count), (0, 0));

        let contradiction = fset(&l, &["rain", "!rain"]);
        let w1 = set_weight(&contradiction, l.model(0), &d);
        assert_eq!((w1.true_count, w1.false_count), (1, 1));
    }

    #[test]
    fn marginal_of_the_running_example() {
        let d = table1_dist();
        let l = d.language().clone();
        let f = l.parse("rain -> wet").unwrap();
        let poly = marginal_poly(&f, &d);
        assert_eq!(poly.constant, ratio(1, 10));
        assert_eq!(poly.slope, ratio(8, 10));
        assert_eq!(marginal(&f, &d, &MuSpec::One), ratio(9, 10));
        assert_eq!(marginal(&f, &d, &MuSpec::LimitToOne), ratio(9, 10));
        assert_eq!(
            marginal(&f, &d, &MuSpec::Exact(ratio(1, 2))),
            ratio(1, 2)
        );
    }

    #[test]
    fn marginal_of_constants() {
        let d = table1_dist();
        let poly = marginal_poly(&Formula::Top, &d);
        assert_eq!(poly.constant, ratio(0, 1));
        assert_eq!(poly.slope, ratio(1, 1));
        assert_eq!(marginal(&Formula::Top, &d, &MuSpec::One), ratio(1, 1));
        // rain under the same distribution at μ=1: p(m3)+p(m4)
        let l = d.language().clone();
        let rain = l.parse("rain").unwrap();
        assert_eq!(marginal(&rain, &d, &MuSpec::One), ratio(2, 5));
    }

    #[test]
    fn limit_of_the_inconsistent_premises() {
        let d = table1_dist();
        let l = d.language().clone();
        let alpha = l.parse("rain").unwrap();
        let delta = fset(&l, &["rain", "wet", "!wet"]);
        assert_eq!(
            conditional(&alpha, &delta, &d, &MuSpec::LimitToOne),
            Probability::Value(ratio(1, 1))
        );
        assert_eq!(
            conditional(&alpha, &delta, &d, &MuSpec::One),
            Probability::Undefined
        );
    }

    #[test]
    fn empty_premises_reduce_to_the_marginal() {
        let d = table1_dist();
        let l = d.language().clone();
        let alpha = l.parse("rain -> wet").unwrap();
        let empty = FormulaSet::new();
        for mu in [MuSpec::Exact(ratio(1, 3)), MuSpec::One, MuSpec::LimitToOne] {
            let cond = conditional(&alpha, &empty, &d, &mu);
            assert_eq!(cond, Probability::Value(marginal(&alpha, &d, &mu)));
        }
    }

    #[test]
    fn explosion_premises_are_undefined_at_one_but_limit_to_a_half() {
        let d = dist([(5, 10), (2, 10), (0, 1), (3, 10)]);
        let l = d.language().clone();
        let wet = l.parse("wet").unwrap();
        let delta = fset(&l, &["rain", "!rain"]);
        assert_eq!(conditional(&wet, &delta, &d, &MuSpec::One), Probability::Undefined);
        assert_eq!(
            conditional(&wet, &delta, &d, &MuSpec::LimitToOne),
            Probability::Value(ratio(1, 2))
        );
    }

    #[test]
    fn possible_premise_at_one() {
        let d = dist([(5, 10), (2, 10), (0, 1), (3, 10)]);
        let l = d.language().clone();
        let wet = l.parse("wet").unwrap();
        let delta = fset(&l, &["rain"]);
        assert_eq!(
            conditional(&wet, &delta, &d, &MuSpec::One),
            Probability::Value(ratio(1, 1))
        );
    }

    #[test]
    fn exact_one_agrees_with_one_semantics() {
        let d = dist([(5, 10), (2, 10), (0, 1), (3, 10)]);
        let l = d.language().clone();
        let wet = l.parse("wet").unwrap();
        for delta in [fset(&l, &["rain"]), fset(&l, &["rain", "!rain"]), FormulaSet::new()] {
            assert_eq!(
                conditional(&wet, &delta, &d, &MuSpec::Exact(ratio(1, 1))),
                conditional(&wet, &delta, &d, &MuSpec::One)
            );
        }
    }

    const TABLE: &str = "\
rain,wet
0,0
0,0
0,0
0,1
0,1
1,1
1,1
1,1
0,0
1,0
";

    #[test]
    fn data_path_matches_the_model_path() {
        let ds = Dataset::ingest(TABLE).unwrap();
        let l = ds.language().clone();
        let f = l.parse("rain -> wet").unwrap();
        assert_eq!(
            conditional_via_data(&f, &FormulaSet::new(), &ds),
            Probability::Value(ratio(9, 10))
        );
        let wet = l.parse("wet").unwrap();
        let rain_only = fset(&l, &["rain"]);
        assert_eq!(
            conditional_via_data(&wet, &rain_only, &ds),
            Probability::Value(ratio(3, 4))
        );
        // p(α | {α}) = 1 whenever α has data support
        let alpha = l.parse("rain & wet").unwrap();
        let self_premise = fset(&l, &["rain & wet"]);
        assert_eq!(
            conditional_via_data(&alpha, &self_premise, &ds),
            Probability::Value(ratio(1, 1))
        );
    }

    #[test]
    fn sweep_reports_the_limit_at_the_right_endpoint() {
        let d = table1_dist();
        let l = d.language().clone();
        let alpha = l.parse("rain").unwrap();
        let delta = fset(&l, &["rain", "wet", "!wet"]);
        let grid = vec![ratio(0, 1), ratio(1, 2), ratio(1, 1)];
        let points = sweep(&alpha, &delta, &d, &grid);
        assert_eq!(points.len(), 3);
        // both endpoints of this query are 0/0: every model satisfies one of
        // wet/!wet, so at μ=0 the weights vanish too
        assert_eq!(points[0].exact, Probability::Undefined);
        assert_eq!(points[0].limit, None);
        // at μ=1/2 every likelihood factor is 1/2, so the ratio is 1/2
        assert_eq!(points[1].exact, Probability::Value(ratio(1, 2)));
        assert_eq!(points[2].exact, Probability::Undefined);
        assert_eq!(points[2].limit, Some(ratio(1, 1)));
    }

    #[test]
    fn sweep_at_zero_of_the_trivial_query() {
        let d = table1_dist();
        let points = sweep(
            &Formula::Top,
            &FormulaSet::new(),
            &d,
            &[ratio(0, 1)],
        );
        assert_eq!(points[0].exact, Probability::Value(ratio(0, 1)));
    }

    #[test]
    fn complement_law_where_defined() {
        let d = dist([(5, 10), (2, 10), (0, 1), (3, 10)]);
        let l = d.language().clone();
        let alpha = l.parse("rain -> wet").unwrap();
        let neg = Formula::not(alpha.clone());
        let delta = fset(&l, &["wet | rain"]);
        for mu in [
            MuSpec::Exact(ratio(1, 4)),
            MuSpec::Exact(ratio(9, 10)),
            MuSpec::One,
            MuSpec::LimitToOne,
        ] {
            let p = conditional(&alpha, &delta, &d, &mu);
            let q = conditional(&neg, &delta, &d, &mu);
            let (Probability::Value(p), Probability::Value(q)) = (p, q) else {
                panic!("both sides should be defined");
            };
            assert_eq!(p + q, ratio(1, 1));
        }
    }

    #[test]
    fn mu_spec_rejects_out_of_range() {
        assert!(MuSpec::exact(ratio(3, 2)).is_err());
        assert!(MuSpec::exact(ratio(-1, 2)).is_err());
        assert!(MuSpec::exact(ratio(1, 1)).is_ok());
    }
}
