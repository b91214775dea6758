//! Propositional formula AST and its textual form.

use std::fmt;

/// A propositional formula. Structural equality is the identity used for
/// premise-set membership, so `a` and `a & a` are distinct members.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Bottom,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    // constructor, not std::ops::Not; keeps the connective builders uniform
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// Atom names in order of first appearance, without duplicates.
    pub fn atom_names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Formula::Top | Formula::Bottom => {}
            Formula::Atom(name) => {
                if !out.contains(&name.as_str()) {
                    out.push(name);
                }
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Binding strength; higher binds tighter. Negation and atoms sit above
    /// every binary connective.
    fn precedence(&self) -> u8 {
        match self {
            Formula::Top | Formula::Bottom | Formula::Atom(_) | Formula::Not(_) => 5,
            Formula::And(..) => 4,
            Formula::Or(..) => 3,
            Formula::Implies(..) => 2,
            Formula::Iff(..) => 1,
        }
    }

    /// `min_prec` is the weakest precedence printable without parentheses in
    /// this position. `&`/`|` associate left and `->`/`<->` right, so the
    /// non-associating side of each connective is rendered one level up.
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let prec = self.precedence();
        let parens = prec < min_prec;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Formula::Top => write!(f, "true")?,
            Formula::Bottom => write!(f, "false")?,
            Formula::Atom(name) => write!(f, "{name}")?,
            Formula::Not(inner) => {
                write!(f, "!")?;
                inner.fmt_prec(f, 5)?;
            }
            Formula::And(a, b) => {
                a.fmt_prec(f, prec)?;
                write!(f, " & ")?;
                b.fmt_prec(f, prec + 1)?;
            }
            Formula::Or(a, b) => {
                a.fmt_prec(f, prec)?;
                write!(f, " | ")?;
                b.fmt_prec(f, prec + 1)?;
            }
            Formula::Implies(a, b) => {
                a.fmt_prec(f, prec + 1)?;
                write!(f, " -> ")?;
                b.fmt_prec(f, prec)?;
            }
            Formula::Iff(a, b) => {
                a.fmt_prec(f, prec + 1)?;
                write!(f, " <-> ")?;
                b.fmt_prec(f, prec)?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Prints with minimal parentheses; parsing the output reproduces the same
/// tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Formula {
        Formula::atom("a")
    }
    fn b() -> Formula {
        Formula::atom("b")
    }
    fn c() -> Formula {
        Formula::atom("c")
    }

    #[test]
    fn minimal_parentheses() {
        assert_eq!(Formula::or(Formula::and(a(), b()), c()).to_string(), "a & b | c");
        assert_eq!(Formula::and(Formula::or(a(), b()), c()).to_string(), "(a | b) & c");
        assert_eq!(
            Formula::implies(a(), Formula::implies(b(), c())).to_string(),
            "a -> b -> c"
        );
        assert_eq!(
            Formula::implies(Formula::implies(a(), b()), c()).to_string(),
            "(a -> b) -> c"
        );
        assert_eq!(
            Formula::and(Formula::and(a(), b()), c()).to_string(),
            "a & b & c"
        );
        assert_eq!(
            Formula::and(a(), Formula::and(b(), c())).to_string(),
            "a & (b & c)"
        );
        assert_eq!(Formula::not(Formula::and(a(), b())).to_string(), "!(a & b)");
        assert_eq!(Formula::not(Formula::not(a())).to_string(), "!!a");
        assert_eq!(
            Formula::iff(Formula::implies(a(), b()), c()).to_string(),
            "a -> b <-> c"
        );
        assert_eq!(Formula::implies(a(), Formula::Top).to_string(), "a -> true");
    }

    #[test]
    fn atom_collection_preserves_first_appearance_order() {
        let f = Formula::implies(Formula::and(b(), a()), Formula::or(b(), c()));
        assert_eq!(f.atom_names(), vec!["b", "a", "c"]);
    }
}
