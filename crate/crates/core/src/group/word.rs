//! Relation words over named generators.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! relations := chain (',' chain)*
//! chain     := word ('=' word)+
//! word      := factor+            (juxtaposition is the group product)
//! factor    := atom ('^' exponent)*
//! exponent  := integer | '(' integer ')' | atom      (atom exponent = conjugation)
//! atom      := letter | '1' | '(' word ')' | '[' word ',' word ']'
//! ```
//!
//! Conjugation is `y^x = x⁻¹ y x` and the commutator is `[a, b] = a⁻¹ b⁻¹ a b`.
//! Generator names are single letters, so `yx^2` reads as `y x^2`.

use std::collections::HashMap;
use std::fmt;

use super::{FiniteGroup, GroupError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    Identity,
    Gen(char),
    Product(Vec<Word>),
    Power(Box<Word>, i64),
    Conjugate(Box<Word>, Box<Word>),
    Commutator(Box<Word>, Box<Word>),
}

/// A chain `w1 = w2 = ... = wk`; holds when all words evaluate equally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub source: String,
    pub words: Vec<Word>,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl Word {
    pub fn evaluate(
        &self,
        group: &FiniteGroup,
        gens: &HashMap<char, usize>,
    ) -> Result<usize, GroupError> {
        Ok(match self {
            Word::Identity => group.identity(),
            Word::Gen(c) => *gens
                .get(c)
                .ok_or_else(|| GroupError::UnknownGenerator(c.to_string()))?,
            Word::Product(ws) => {
                let mut acc = group.identity();
                for w in ws {
                    acc = group.product(acc, w.evaluate(group, gens)?);
                }
                acc
            }
            Word::Power(w, k) => group.power(w.evaluate(group, gens)?, *k),
            Word::Conjugate(y, x) => {
                let y = y.evaluate(group, gens)?;
                let x = x.evaluate(group, gens)?;
                group.product(group.product(group.inverse(x), y), x)
            }
            Word::Commutator(a, b) => {
                let a = a.evaluate(group, gens)?;
                let b = b.evaluate(group, gens)?;
                let ab = group.product(a, b);
                group.product(group.product(group.inverse(a), group.inverse(b)), ab)
            }
        })
    }
}

impl Relation {
    pub fn holds(
        &self,
        group: &FiniteGroup,
        gens: &HashMap<char, usize>,
    ) -> Result<bool, GroupError> {
        let first = self.words[0].evaluate(group, gens)?;
        for w in &self.words[1..] {
            if w.evaluate(group, gens)? != first {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Parses a comma-separated list of relation chains.
pub fn parse_relations(text: &str) -> Result<Vec<Relation>, GroupError> {
    let chars: Vec<char> = text
        .chars()
        .map(|c| match c {
            '−' | '–' => '-',
            c => c,
        })
        .collect();
    let mut out = Vec::new();
    for piece in split_top_level(&chars) {
        let source: String = piece.iter().collect::<String>().trim().to_string();
        if source.is_empty() {
            continue;
        }
        let mut p = Parser { chars: piece, pos: 0 };
        let mut words = vec![p.word()?];
        p.skip_ws();
        while p.eat('=') {
            words.push(p.word()?);
            p.skip_ws();
        }
        if p.pos != p.chars.len() {
            return Err(GroupError::MalformedWord(format!(
                "unexpected {:?} in {source:?}",
                p.chars[p.pos]
            )));
        }
        if words.len() < 2 {
            return Err(GroupError::MalformedWord(format!("{source:?} has no '='")));
        }
        out.push(Relation { source, words });
    }
    Ok(out)
}

/// Parses a single word such as `x^-1 y x`.
pub fn parse_word(text: &str) -> Result<Word, GroupError> {
    let chars: Vec<char> = text.chars().collect();
    let mut p = Parser { chars: &chars, pos: 0 };
    let w = p.word()?;
    p.skip_ws();
    if p.pos != chars.len() {
        return Err(GroupError::MalformedWord(text.to_string()));
    }
    Ok(w)
}

fn split_top_level(chars: &[char]) -> Vec<&[char]> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, &c) in chars.iter().enumerate() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&chars[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&chars[start..]);
    out
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, what: &str) -> GroupError {
        let text: String = self.chars.iter().collect();
        GroupError::MalformedWord(format!("{what} at offset {} in {text:?}", self.pos))
    }

    fn word(&mut self) -> Result<Word, GroupError> {
        let mut factors = Vec::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphabetic() || c == '1' || c == '(' || c == '[' {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        match factors.len() {
            0 => Err(self.error("expected a word")),
            1 => Ok(factors.pop().expect("one factor")),
            _ => Ok(Word::Product(factors)),
        }
    }

    fn factor(&mut self) -> Result<Word, GroupError> {
        let mut w = self.atom()?;
        while self.eat('^') {
            match self.peek() {
                Some(c) if c == '-' || c.is_ascii_digit() => {
                    w = Word::Power(Box::new(w), self.integer()?);
                }
                Some('(') if self.parenthesized_integer() => {
                    self.eat('(');
                    let k = self.integer()?;
                    if !self.eat(')') {
                        return Err(self.error("expected ')'"));
                    }
                    w = Word::Power(Box::new(w), k);
                }
                _ => {
                    let x = self.atom()?;
                    w = Word::Conjugate(Box::new(w), Box::new(x));
                }
            }
        }
        Ok(w)
    }

    fn parenthesized_integer(&mut self) -> bool {
        let save = self.pos;
        let ok = self.eat('(') && self.integer().is_ok() && self.eat(')');
        self.pos = save;
        ok
    }

    fn integer(&mut self) -> Result<i64, GroupError> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| {
            self.pos = start;
            self.error("expected an integer exponent")
        })
    }

    fn atom(&mut self) -> Result<Word, GroupError> {
        match self.peek() {
            Some('1') => {
                self.pos += 1;
                Ok(Word::Identity)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                Ok(Word::Gen(c))
            }
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let a = self.word()?;
                if !self.eat(',') {
                    return Err(self.error("expected ','"));
                }
                let b = self.word()?;
                if !self.eat(']') {
                    return Err(self.error("expected ']'"));
                }
                Ok(Word::Commutator(Box::new(a), Box::new(b)))
            }
            _ => Err(self.error("expected a generator, '1', '(' or '['")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Permutation, DEFAULT_CAP};

    fn s3() -> (FiniteGroup, HashMap<char, usize>) {
        let a = Permutation::parse_cycles(3, "(0 1 2)").unwrap();
        let b = Permutation::parse_cycles(3, "(0 1)").unwrap();
        let g = FiniteGroup::from_permutation_generators(&[a, b], DEFAULT_CAP).unwrap();
        let gens = HashMap::from([('a', g.generators()[0]), ('b', g.generators()[1])]);
        (g, gens)
    }

    #[test]
    fn parses_chains_and_commutators() {
        let rels = parse_relations("x^4 = y^3 = (yx^2)^2 = [x^-1 y x, y] = 1").unwrap();
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].words.len(), 5);
        let rels = parse_relations("x^8 = y^3 = 1, y^x = y^-1").unwrap();
        assert_eq!(rels.len(), 2);
        assert!(matches!(rels[1].words[0], Word::Conjugate(..)));
        let rels = parse_relations("z^(y^2) = z^-1, a^(-1) = a^2").unwrap();
        assert!(matches!(rels[0].words[0], Word::Conjugate(..)));
        assert!(matches!(rels[1].words[0], Word::Power(_, -1)));
    }

    #[test]
    fn evaluates_in_s3() {
        let (g, gens) = s3();
        let rels = parse_relations("a^3 = b^2 = (a b)^2 = 1, a^b = a^-1").unwrap();
        for r in &rels {
            assert!(r.holds(&g, &gens).unwrap(), "{r}");
        }
        let bad = parse_relations("a b = b a").unwrap();
        assert!(!bad[0].holds(&g, &gens).unwrap());
        let comm = parse_relations("[a, b] = a").unwrap();
        // [a,b] = a^-1 b^-1 a b = a^-1 a^-1 = a
        assert!(comm[0].holds(&g, &gens).unwrap());
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_relations("a^ = 1").is_err());
        assert!(parse_relations("a b").is_err());
        assert!(parse_relations("[a b] = 1").is_err());
        assert!(parse_relations("(a = 1").is_err());
        let (g, gens) = s3();
        let r = parse_relations("c = 1").unwrap();
        assert_eq!(r[0].holds(&g, &gens).unwrap_err(), GroupError::UnknownGenerator("c".into()));
    }
}
