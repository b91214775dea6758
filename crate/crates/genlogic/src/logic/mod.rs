//! The semantics layer: languages, models, satisfaction, and model sets.

mod formula;
mod parser;

pub use formula::Formula;
pub use parser::{parse_formula, scan_atoms, ParseError};

use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// Default upper bound on the number of atoms; the model space is 2^n.
/// Overridable per language (the CLI wires `GENLOGIC_ATOM_CAP` to this).
pub const DEFAULT_ATOM_CAP: usize = 20;

/// Hard ceiling: model indices are `u32` and model sets are dense bitmasks.
const ATOM_CEILING: usize = 30;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LanguageError {
    #[error("invalid atom name `{0}`: must match [A-Za-z_][A-Za-z0-9_]*")]
    InvalidName(String),
    #[error("atom name `{0}` is reserved")]
    ReservedName(String),
    #[error("duplicate atom name `{0}`")]
    DuplicateAtom(String),
    #[error("{count} atoms exceeds the cap of {cap}")]
    TooManyAtoms { count: usize, cap: usize },
}

fn valid_atom_name(name: &str) -> bool {
    let mut bytes = name.bytes();
    match bytes.next() {
        Some(b) if b.is_ascii_alphabetic() || b == b'_' => {}
        _ => return false,
    }
    bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// An ordered list of distinct atom names. The order fixes model indexing:
/// reading the atoms' truth values in declaration order as a binary number
/// gives the model index, so the first atom is the most significant bit and
/// index order enumerates assignments in binary-counting order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Language {
    atoms: Vec<String>,
    index: HashMap<String, usize>,
}

impl Language {
    pub fn new<I, S>(atoms: I) -> Result<Self, LanguageError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_cap(atoms, DEFAULT_ATOM_CAP)
    }

    pub fn with_cap<I, S>(atoms: I, cap: usize) -> Result<Self, LanguageError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        let cap = cap.min(ATOM_CEILING);
        if atoms.len() > cap {
            return Err(LanguageError::TooManyAtoms {
                count: atoms.len(),
                cap,
            });
        }
        let mut index = HashMap::with_capacity(atoms.len());
        for (i, name) in atoms.iter().enumerate() {
            if !valid_atom_name(name) {
                return Err(LanguageError::InvalidName(name.clone()));
            }
            if name == "true" || name == "false" {
                return Err(LanguageError::ReservedName(name.clone()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(LanguageError::DuplicateAtom(name.clone()));
            }
        }
        Ok(Language { atoms, index })
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Number of models, exactly 2^n.
    pub fn model_count(&self) -> u64 {
        1u64 << self.atoms.len()
    }

    pub fn model(&self, index: u32) -> Model {
        debug_assert!((index as u64) < self.model_count());
        Model {
            bits: index,
            width: self.atoms.len() as u8,
        }
    }

    /// All 2^n models in index order.
    pub fn models(&self) -> impl Iterator<Item = Model> + '_ {
        (0..self.model_count()).map(|i| self.model(i as u32))
    }

    /// 1-based label matching the usual truth-table layout (`m1` is the
    /// all-false assignment).
    pub fn model_label(&self, m: Model) -> String {
        format!("m{}", m.index() + 1)
    }

    /// `rain=1, wet=0` style rendering of a model's assignment.
    pub fn describe_model(&self, m: Model) -> String {
        self.atoms
            .iter()
            .enumerate()
            .map(|(i, name)| format!("{name}={}", u8::from(m.truth(i))))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Classical truth-table satisfaction. Atoms must be declared here.
    pub fn satisfies(&self, m: Model, f: &Formula) -> bool {
        match f {
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Atom(name) => {
                let i = self
                    .atom_index(name)
                    .unwrap_or_else(|| panic!("atom `{name}` is not in the language"));
                m.truth(i)
            }
            Formula::Not(g) => !self.satisfies(m, g),
            Formula::And(a, b) => self.satisfies(m, a) && self.satisfies(m, b),
            Formula::Or(a, b) => self.satisfies(m, a) || self.satisfies(m, b),
            Formula::Implies(a, b) => !self.satisfies(m, a) || self.satisfies(m, b),
            Formula::Iff(a, b) => self.satisfies(m, a) == self.satisfies(m, b),
        }
    }

    pub fn satisfies_all(&self, m: Model, fs: &FormulaSet) -> bool {
        fs.iter().all(|f| self.satisfies(m, f))
    }

    /// Number of members of `fs` true in `m`.
    pub fn true_count(&self, m: Model, fs: &FormulaSet) -> usize {
        fs.iter().filter(|f| self.satisfies(m, f)).count()
    }

    /// The models of a single formula.
    pub fn formula_models(&self, f: &Formula) -> ModelSet {
        let mut set = ModelSet::empty(self);
        for m in self.models() {
            if self.satisfies(m, f) {
                set.insert(m);
            }
        }
        set
    }

    /// The models satisfying every member of `fs`; the empty set of
    /// formulas yields the full model space.
    pub fn model_set(&self, fs: &FormulaSet) -> ModelSet {
        let mut set = ModelSet::empty(self);
        for m in self.models() {
            if self.satisfies_all(m, fs) {
                set.insert(m);
            }
        }
        set
    }

    pub fn parse(&self, text: &str) -> Result<Formula, ParseError> {
        parse_formula(text, self)
    }
}

/// A complete truth assignment. The index doubles as the assignment: the
/// truth of atom `i` is the bit at position `n-1-i`, so the first declared
/// atom is the most significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Model {
    bits: u32,
    width: u8,
}

impl Model {
    pub fn index(self) -> u32 {
        self.bits
    }

    /// Truth value of the atom at position `atom` in the language order.
    pub fn truth(self, atom: usize) -> bool {
        debug_assert!(atom < self.width as usize);
        let shift = self.width as usize - 1 - atom;
        (self.bits >> shift) & 1 == 1
    }
}

/// A subset of the 2^n models of a language, as a dense bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSet {
    blocks: Vec<u64>,
    n_models: u64,
    width: u8,
}

impl ModelSet {
    pub fn empty(lang: &Language) -> Self {
        let n_models = lang.model_count();
        ModelSet {
            blocks: vec![0; n_models.div_ceil(64) as usize],
            n_models,
            width: lang.atom_count() as u8,
        }
    }

    pub fn full(lang: &Language) -> Self {
        let mut set = Self::empty(lang);
        for i in 0..set.n_models {
            set.blocks[(i / 64) as usize] |= 1u64 << (i % 64);
        }
        set
    }

    pub fn insert(&mut self, m: Model) {
        let i = m.index() as u64;
        debug_assert!(i < self.n_models);
        self.blocks[(i / 64) as usize] |= 1u64 << (i % 64);
    }

    pub fn contains(&self, m: Model) -> bool {
        debug_assert_eq!(m.width, self.width);
        self.contains_index(m.index())
    }

    pub fn contains_index(&self, index: u32) -> bool {
        let i = index as u64;
        i < self.n_models && (self.blocks[(i / 64) as usize] >> (i % 64)) & 1 == 1
    }

    pub fn len(&self) -> u64 {
        self.blocks.iter().map(|b| b.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn intersect(&self, other: &ModelSet) -> ModelSet {
        debug_assert_eq!(self.n_models, other.n_models);
        ModelSet {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a & b)
                .collect(),
            n_models: self.n_models,
            width: self.width,
        }
    }

    pub fn union(&self, other: &ModelSet) -> ModelSet {
        debug_assert_eq!(self.n_models, other.n_models);
        ModelSet {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a | b)
                .collect(),
            n_models: self.n_models,
            width: self.width,
        }
    }

    pub fn complement(&self) -> ModelSet {
        let mut out = ModelSet {
            blocks: self.blocks.iter().map(|b| !b).collect(),
            n_models: self.n_models,
            width: self.width,
        };
        // mask off bits beyond the model space
        let tail = self.n_models % 64;
        if tail != 0 {
            if let Some(last) = out.blocks.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        out
    }

    pub fn is_subset(&self, other: &ModelSet) -> bool {
        debug_assert_eq!(self.n_models, other.n_models);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter_indices(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.n_models)
            .filter(move |&i| (self.blocks[(i / 64) as usize] >> (i % 64)) & 1 == 1)
            .map(|i| i as u32)
    }

    pub fn iter(&self) -> impl Iterator<Item = Model> + '_ {
        let width = self.width;
        self.iter_indices().map(move |bits| Model { bits, width })
    }

    /// `{m1, m4}` style rendering, ascending by index.
    pub fn label_string(&self) -> String {
        let labels: Vec<String> = self.iter_indices().map(|i| format!("m{}", i + 1)).collect();
        format!("{{{}}}", labels.join(", "))
    }
}

/// An ordered set of formulas, deduplicated by structural equality.
/// Insertion order is preserved and is the member-index order used when
/// listing subset families.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormulaSet {
    members: Vec<Formula>,
}

impl FormulaSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, f: Formula) -> bool {
        if self.members.contains(&f) {
            false
        } else {
            self.members.push(f);
            true
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.members.contains(f)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.members.iter()
    }

    pub fn members(&self) -> &[Formula] {
        &self.members
    }

    /// Sub-FormulaSet holding the members at `indices` (which must be
    /// ascending positions into this set).
    pub fn subset(&self, indices: &[usize]) -> FormulaSet {
        FormulaSet {
            members: indices.iter().map(|&i| self.members[i].clone()).collect(),
        }
    }
}

impl FromIterator<Formula> for FormulaSet {
    fn from_iter<T: IntoIterator<Item = Formula>>(iter: T) -> Self {
        let mut set = FormulaSet::new();
        for f in iter {
            set.insert(f);
        }
        set
    }
}

impl fmt::Display for FormulaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rain_wet() -> Language {
        Language::new(["rain", "wet"]).unwrap()
    }

    fn parse(lang: &Language, s: &str) -> Formula {
        lang.parse(s).unwrap()
    }

    fn fset(lang: &Language, texts: &[&str]) -> FormulaSet {
        texts.iter().map(|t| parse(lang, t)).collect()
    }

    #[test]
    fn language_rejects_bad_atoms() {
        assert!(matches!(
            Language::new(["1x"]),
            Err(LanguageError::InvalidName(_))
        ));
        assert!(matches!(
            Language::new([""]),
            Err(LanguageError::InvalidName(_))
        ));
        assert!(matches!(
            Language::new(["a", "a"]),
            Err(LanguageError::DuplicateAtom(_))
        ));
        assert!(matches!(
            Language::new(["true"]),
            Err(LanguageError::ReservedName(_))
        ));
        let many: Vec<String> = (0..21).map(|i| format!("a{i}")).collect();
        assert!(matches!(
            Language::new(many),
            Err(LanguageError::TooManyAtoms { count: 21, cap: 20 })
        ));
    }

    #[test]
    fn two_atoms_enumerate_in_table_order() {
        let lang = rain_wet();
        let rows: Vec<(bool, bool)> = lang.models().map(|m| (m.truth(0), m.truth(1))).collect();
        assert_eq!(
            rows,
            vec![
                (false, false),
                (false, true),
                (true, false),
                (true, true)
            ]
        );
    }

    #[test]
    fn zero_atoms_have_one_model() {
        let lang = Language::new(Vec::<String>::new()).unwrap();
        assert_eq!(lang.model_count(), 1);
        assert_eq!(lang.models().count(), 1);
        assert!(lang.satisfies(lang.model(0), &Formula::Top));
    }

    #[test]
    fn three_atoms_index_is_binary_encoding() {
        let lang = Language::new(["a", "b", "c"]).unwrap();
        assert_eq!(lang.model_count(), 8);
        for m in lang.models() {
            let encoded = (u32::from(m.truth(0)) << 2)
                | (u32::from(m.truth(1)) << 1)
                | u32::from(m.truth(2));
            assert_eq!(encoded, m.index());
        }
    }

    #[test]
    fn satisfaction_examples() {
        let lang = rain_wet();
        let m3 = lang.model(2); // rain=1, wet=0
        assert!(!lang.satisfies(m3, &parse(&lang, "rain -> wet")));
        assert!(lang.satisfies(m3, &Formula::Top));
        let m_a_not_b = lang.model(2);
        assert!(!lang.satisfies(m_a_not_b, &parse(&lang, "rain <-> wet")));
        let m4 = lang.model(3);
        assert!(lang.satisfies(m4, &parse(&lang, "rain <-> wet")));
    }

    #[test]
    fn model_sets_of_premises() {
        let lang = rain_wet();
        let s = lang.model_set(&fset(&lang, &["rain", "!wet"]));
        assert_eq!(s.iter_indices().collect::<Vec<_>>(), vec![2]);

        let empty_delta = lang.model_set(&FormulaSet::new());
        assert_eq!(empty_delta.len(), 4);
        assert_eq!(empty_delta, ModelSet::full(&lang));

        let contradiction = lang.model_set(&fset(&lang, &["rain", "!rain"]));
        assert!(contradiction.is_empty());
    }

    #[test]
    fn formula_set_dedup_is_structural_only() {
        let lang = rain_wet();
        let mut fs = FormulaSet::new();
        assert!(fs.insert(parse(&lang, "rain")));
        assert!(!fs.insert(parse(&lang, "rain")));
        // semantically equal but structurally distinct stays
        assert!(fs.insert(parse(&lang, "rain & rain")));
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn model_set_ops() {
        let lang = rain_wet();
        let rain = lang.formula_models(&parse(&lang, "rain"));
        let wet = lang.formula_models(&parse(&lang, "wet"));
        let both = lang.model_set(&fset(&lang, &["rain", "wet"]));
        assert_eq!(rain.intersect(&wet), both);
        assert_eq!(rain.complement(), lang.formula_models(&parse(&lang, "!rain")));
        assert!(both.is_subset(&rain));
        assert!(!rain.is_subset(&both));
        assert_eq!(rain.label_string(), "{m3, m4}");
    }
}
