//! Formula text parser.
//!
//! Grammar, loosest to tightest: `<->` and `->` are right-associative,
//! `|` and `&` left-associative, `!` prefix. `~` is accepted as a synonym
//! for `!`, `true`/`false` are keywords, everything else matching
//! `[A-Za-z_][A-Za-z0-9_]*` is an atom.

use super::formula::Formula;
use super::Language;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown atom `{name}` at byte {offset}")]
    UnknownAtom { name: String, offset: usize },
}

impl ParseError {
    fn syntax(offset: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    offset: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'!' | b'~' => {
                toks.push(Spanned { tok: Tok::Not, offset: start });
                i += 1;
            }
            b'&' => {
                toks.push(Spanned { tok: Tok::And, offset: start });
                i += 1;
            }
            b'|' => {
                toks.push(Spanned { tok: Tok::Or, offset: start });
                i += 1;
            }
            b'(' => {
                toks.push(Spanned { tok: Tok::LParen, offset: start });
                i += 1;
            }
            b')' => {
                toks.push(Spanned { tok: Tok::RParen, offset: start });
                i += 1;
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push(Spanned { tok: Tok::Implies, offset: start });
                    i += 2;
                } else {
                    return Err(ParseError::syntax(start, "expected `->`"));
                }
            }
            b'<' => {
                if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') {
                    toks.push(Spanned { tok: Tok::Iff, offset: start });
                    i += 3;
                } else {
                    return Err(ParseError::syntax(start, "expected `<->`"));
                }
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let mut j = i + 1;
                while j < bytes.len()
                    && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                let word = &text[i..j];
                let tok = match word {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Ident(word.to_string()),
                };
                toks.push(Spanned { tok, offset: start });
                i = j;
            }
            _ => {
                return Err(ParseError::syntax(
                    start,
                    format!("unexpected character `{}`", text[start..].chars().next().unwrap()),
                ));
            }
        }
    }
    Ok(toks)
}

/// Atom names mentioned in `text`, in order of first appearance. Used to
/// infer a language when no dataset provides one; does not check grammar
/// beyond tokenization.
pub fn scan_atoms(text: &str) -> Result<Vec<String>, ParseError> {
    let mut seen = Vec::new();
    for spanned in tokenize(text)? {
        if let Tok::Ident(name) = spanned.tok {
            if !seen.contains(&name) {
                seen.push(name);
            }
        }
    }
    Ok(seen)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    lang: &'a Language,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |s| s.offset)
    }

    fn bump(&mut self) -> Option<Spanned> {
        let s = self.toks.get(self.pos).cloned();
        if s.is_some() {
            self.pos += 1;
        }
        s
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implies()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.iff()?;
            Ok(Formula::iff(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implies()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.eat(&Tok::Not) {
            Ok(Formula::not(self.unary()?))
        } else {
            self.primary()
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let offset = self.offset();
        match self.bump().map(|s| s.tok) {
            Some(Tok::True) => Ok(Formula::Top),
            Some(Tok::False) => Ok(Formula::Bottom),
            Some(Tok::Ident(name)) => {
                if self.lang.atom_index(&name).is_none() {
                    return Err(ParseError::UnknownAtom { name, offset });
                }
                Ok(Formula::Atom(name))
            }
            Some(Tok::LParen) => {
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(ParseError::syntax(self.offset(), "expected `)`"));
                }
                Ok(inner)
            }
            Some(_) => Err(ParseError::syntax(offset, "expected a formula")),
            None => Err(ParseError::syntax(offset, "unexpected end of input")),
        }
    }
}

/// Parses `text` against `lang`; every atom must be declared there.
pub fn parse_formula(text: &str, lang: &Language) -> Result<Formula, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::syntax(0, "empty formula"));
    }
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        lang,
        end: text.len(),
    };
    let formula = parser.iff()?;
    if parser.pos != parser.toks.len() {
        return Err(ParseError::syntax(parser.offset(), "trailing input after formula"));
    }
    Ok(formula)
}
