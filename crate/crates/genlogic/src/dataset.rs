//! Data ingestion: raw tabular data, the data→model map, and the empirical
//! model distribution.
//!
//! The tabular contract: UTF-8, comma-separated, first row holds the atom
//! names (optionally with a trailing `count` column), body cells are `0` or
//! `1`, counts are positive integers. Each body row is one complete truth
//! assignment, i.e. one datum supporting exactly one model.

use crate::logic::{Language, LanguageError, Model, ModelSet};
use crate::rational::Rational;
use num::{BigInt, One, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("input is not valid UTF-8")]
    Utf8,
    #[error("missing header row")]
    MissingHeader,
    #[error("dataset body is empty")]
    EmptyBody,
    #[error(transparent)]
    Language(#[from] LanguageError),
    #[error("line {line}: expected {expected} cells, found {found}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, column {column}: cell `{value}` is not 0 or 1")]
    NonBinaryCell {
        line: usize,
        column: usize,
        value: String,
    },
    #[error("line {line}: count `{value}` is not a positive integer")]
    BadCount { line: usize, value: String },
    #[error("header does not match the expected language")]
    LanguageMismatch,
    #[error("row refers to model index {index}, outside the language's 2^{atoms} models")]
    ModelOutOfRange { index: u32, atoms: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DistributionError {
    #[error("expected {expected} probabilities, found {found}")]
    WrongLength { expected: u64, found: usize },
    #[error("probability at model index {0} is outside [0, 1]")]
    OutOfRange(u32),
    #[error("probabilities sum to {0}, not 1")]
    SumNotOne(String),
}

/// One ingested row: a model plus its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DataRow {
    pub model: Model,
    pub count: u64,
}

/// A multiset of data, each datum supporting a single model. Rows are kept
/// as ingested (unmerged), so querying along the data path touches exactly
/// the ingested row entries; `tallies` is the aggregated per-model count
/// table K_n.
#[derive(Debug, Clone)]
pub struct Dataset {
    lang: Language,
    rows: Vec<DataRow>,
    tallies: BTreeMap<u32, u64>,
    total: u64,
}

impl Dataset {
    /// Parses the tabular contract with the default atom cap and the
    /// language taken from the header.
    pub fn ingest(text: &str) -> Result<Self, IngestError> {
        Self::ingest_with(text, None, crate::logic::DEFAULT_ATOM_CAP)
    }

    /// As `ingest`, but from raw bytes.
    pub fn ingest_bytes(bytes: &[u8]) -> Result<Self, IngestError> {
        let text = std::str::from_utf8(bytes).map_err(|_| IngestError::Utf8)?;
        Self::ingest(text)
    }

    /// Parses the tabular contract. When `expected` is given the header must
    /// declare exactly its atoms, in order.
    pub fn ingest_with(
        text: &str,
        expected: Option<&Language>,
        atom_cap: usize,
    ) -> Result<Self, IngestError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim().is_empty());

        let (_, header) = lines.next().ok_or(IngestError::MissingHeader)?;
        let mut columns: Vec<&str> = header.split(',').map(str::trim).collect();
        let has_count_column = columns.last() == Some(&"count");
        if has_count_column {
            columns.pop();
        }
        let lang = Language::with_cap(columns.iter().copied(), atom_cap)?;
        if let Some(expected) = expected {
            if expected.atoms() != lang.atoms() {
                return Err(IngestError::LanguageMismatch);
            }
        }

        let n_atoms = lang.atom_count();
        let expected_cells = n_atoms + usize::from(has_count_column);
        let mut rows = Vec::new();
        for (line, raw) in lines {
            let cells: Vec<&str> = raw.split(',').map(str::trim).collect();
            if cells.len() != expected_cells {
                return Err(IngestError::RaggedRow {
                    line,
                    expected: expected_cells,
                    found: cells.len(),
                });
            }
            let mut bits: u32 = 0;
            for (col, cell) in cells.iter().take(n_atoms).enumerate() {
                let bit = match *cell {
                    "0" => 0u32,
                    "1" => 1u32,
                    other => {
                        return Err(IngestError::NonBinaryCell {
                            line,
                            column: col + 1,
                            value: other.to_string(),
                        })
                    }
                };
                bits = (bits << 1) | bit;
            }
            let count = if has_count_column {
                let cell = cells[n_atoms];
                match cell.parse::<u64>() {
                    Ok(c) if c > 0 => c,
                    _ => {
                        return Err(IngestError::BadCount {
                            line,
                            value: cell.to_string(),
                        })
                    }
                }
            } else {
                1
            };
            rows.push((bits, count));
        }
        if rows.is_empty() {
            return Err(IngestError::EmptyBody);
        }
        Self::from_rows(lang, rows)
    }

    /// Builds a dataset from `(model index, multiplicity)` rows.
    pub fn from_rows(
        lang: Language,
        rows: impl IntoIterator<Item = (u32, u64)>,
    ) -> Result<Self, IngestError> {
        let mut data = Vec::new();
        let mut tallies = BTreeMap::new();
        let mut total = 0u64;
        for (index, count) in rows {
            if u64::from(index) >= lang.model_count() {
                return Err(IngestError::ModelOutOfRange {
                    index,
                    atoms: lang.atom_count(),
                });
            }
            if count == 0 {
                continue;
            }
            data.push(DataRow {
                model: lang.model(index),
                count,
            });
            *tallies.entry(index).or_insert(0) += count;
            total += count;
        }
        if total == 0 {
            return Err(IngestError::EmptyBody);
        }
        Ok(Dataset {
            lang,
            rows: data,
            tallies,
            total,
        })
    }

    pub fn language(&self) -> &Language {
        &self.lang
    }

    /// Rows as ingested, multiplicities preserved.
    pub fn rows(&self) -> &[DataRow] {
        &self.rows
    }

    /// Total datum count K.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Aggregated per-model tally K_n, keyed by model index; models without
    /// data are absent.
    pub fn tallies(&self) -> &BTreeMap<u32, u64> {
        &self.tallies
    }

    /// The empirical model distribution p(m_n) = K_n / K, i.e. the maximum
    /// likelihood estimate.
    pub fn distribution(&self) -> ModelDistribution {
        let k = BigInt::from(self.total);
        let mass = self
            .tallies
            .iter()
            .map(|(&index, &count)| {
                (index, Rational::new(BigInt::from(count), k.clone()))
            })
            .collect();
        ModelDistribution {
            lang: self.lang.clone(),
            mass,
        }
    }
}

/// An exact probability per model, summing to 1. Only models with nonzero
/// probability are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDistribution {
    lang: Language,
    mass: BTreeMap<u32, Rational>,
}

impl ModelDistribution {
    /// Builds from a dense probability vector in model-index order.
    pub fn from_probs(lang: Language, probs: &[Rational]) -> Result<Self, DistributionError> {
        if probs.len() as u64 != lang.model_count() {
            return Err(DistributionError::WrongLength {
                expected: lang.model_count(),
                found: probs.len(),
            });
        }
        let mut mass = BTreeMap::new();
        let mut sum = Rational::zero();
        for (i, p) in probs.iter().enumerate() {
            if p.is_negative() || p > &Rational::one() {
                return Err(DistributionError::OutOfRange(i as u32));
            }
            if !p.is_zero() {
                mass.insert(i as u32, p.clone());
            }
            sum += p;
        }
        if !sum.is_one() {
            return Err(DistributionError::SumNotOne(sum.to_string()));
        }
        Ok(ModelDistribution { lang, mass })
    }

    pub fn language(&self) -> &Language {
        &self.lang
    }

    pub fn prob(&self, m: Model) -> Rational {
        self.prob_index(m.index())
    }

    pub fn prob_index(&self, index: u32) -> Rational {
        self.mass.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_possible(&self, m: Model) -> bool {
        self.mass.contains_key(&m.index())
    }

    /// Positive-probability models with their masses, ascending by index.
    pub fn support(&self) -> impl Iterator<Item = (Model, &Rational)> + '_ {
        self.mass.iter().map(|(&i, p)| (self.lang.model(i), p))
    }

    /// Restricts `s` to the possible models: `{m ∈ s : p(m) ≠ 0}`.
    pub fn possible_models(&self, s: &ModelSet) -> ModelSet {
        let mut out = ModelSet::empty(&self.lang);
        for (m, _) in self.support() {
            if s.contains(m) {
                out.insert(m);
            }
        }
        out
    }

    /// Total mass of a model set.
    pub fn mass_of(&self, s: &ModelSet) -> Rational {
        let mut sum = Rational::zero();
        for (m, p) in self.support() {
            if s.contains(m) {
                sum += p;
            }
        }
        sum
    }
}
