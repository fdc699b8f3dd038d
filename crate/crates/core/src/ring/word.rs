//! Freely reduced words in colored meridian generators.
//!
//! Text syntax, shared with presentation files:
//!
//! ```text
//! word   := factor*
//! factor := atom ('^' ['-'] digits)?
//! atom   := 'm' digits ',' digits | '[' word ',' word ']' | '(' word ')' | '1'
//! ```
//!
//! Juxtaposition multiplies; `[a,b]` is `a^-1 b^-1 a b`. Whitespace may
//! separate factors but not split a generator token.

use std::fmt;
use std::str::FromStr;

use super::series::{MagnusSeries, Variable};
use super::WordError;

/// Longest word the parser will build; nested commutators double in length.
pub const MAX_WORD_LEN: usize = 1 << 16;
const MAX_NESTING: usize = 64;
const MAX_EXPONENT: u32 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub var: Variable,
    /// +1 or -1.
    pub exp: i8,
}

impl Letter {
    pub fn inverse(self) -> Self {
        Self { var: self.var, exp: -self.exp }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn generator(var: Variable) -> Self {
        Self(vec![Letter { var, exp: 1 }])
    }

    /// Freely reduces the given letters.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            debug_assert!(l.exp == 1 || l.exp == -1);
            if out.last().is_some_and(|&last| last == l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity();
        for _ in 0..exp.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// `g^-1 self g`.
    pub fn conjugate(&self, g: &Self) -> Self {
        g.inverse().mul(self).mul(g)
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.0.iter().map(|l| l.var)
    }

    /// Magnus expansion: `x -> 1 + X`, `x^-1 -> 1 - X`.
    pub fn expand(&self, max_degree: usize) -> MagnusSeries {
        self.0.iter().fold(MagnusSeries::one(max_degree), |acc, l| {
            let g = if l.exp > 0 {
                MagnusSeries::generator(l.var, max_degree)
            } else {
                MagnusSeries::inverse_generator(l.var, max_degree)
            };
            acc.multiply(&g)
        })
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "m{},{}", l.var.color, l.var.index)?;
            if l.exp < 0 {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

impl FromStr for GroupWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

/// Parses a complete word; trailing input is an error.
pub fn parse_word(s: &str) -> Result<GroupWord, WordError> {
    let mut p = WordParser { src: s.as_bytes(), pos: 0, depth: 0 };
    let w = p.word()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected character"));
    }
    Ok(w)
}

struct WordParser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl WordParser<'_> {
    fn err(&self, msg: &str) -> WordError {
        WordError::Syntax { offset: self.pos, message: msg.to_string() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn number(&mut self) -> Result<u32, WordError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        // digits only, so from_utf8 cannot fail
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| WordError::Syntax {
                offset: start,
                message: "number out of range".into(),
            })
    }

    fn expect(&mut self, c: u8) -> Result<(), WordError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn check_len(&self, w: GroupWord) -> Result<GroupWord, WordError> {
        if w.len() > MAX_WORD_LEN {
            Err(WordError::TooLong { limit: MAX_WORD_LEN })
        } else {
            Ok(w)
        }
    }

    fn word(&mut self) -> Result<GroupWord, WordError> {
        let mut acc = GroupWord::identity();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'm' | b'[' | b'(' | b'1') => {
                    let f = self.factor()?;
                    acc = self.check_len(acc.mul(&f))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<GroupWord, WordError> {
        let atom = self.atom()?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(atom);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let n = self.number()?;
        if n == 0 || n > MAX_EXPONENT {
            return Err(self.err("exponent must be a nonzero integer of modest size"));
        }
        if atom.len().saturating_mul(n as usize) > MAX_WORD_LEN {
            return Err(WordError::TooLong { limit: MAX_WORD_LEN });
        }
        let e = if negative { -(n as i64) } else { n as i64 };
        self.check_len(atom.pow(e))
    }

    fn atom(&mut self) -> Result<GroupWord, WordError> {
        match self.peek() {
            Some(b'm') => {
                self.pos += 1;
                let color = self.number()?;
                if self.peek() != Some(b',') {
                    return Err(self.err("expected ',' inside generator name"));
                }
                self.pos += 1;
                let index = self.number()?;
                if color == 0 || index == 0 {
                    return Err(self.err("generator indices are 1-based"));
                }
                Ok(GroupWord::generator(Variable::new(color, index)))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(GroupWord::identity())
            }
            Some(open @ (b'[' | b'(')) => {
                self.depth += 1;
                if self.depth > MAX_NESTING {
                    return Err(self.err("nesting too deep"));
                }
                self.pos += 1;
                let a = self.word()?;
                let w = if open == b'[' {
                    self.expect(b',')?;
                    let b = self.word()?;
                    self.expect(b']')?;
                    GroupWord::commutator(&a, &b)
                } else {
                    self.expect(b')')?;
                    a
                };
                self.depth -= 1;
                self.check_len(w)
            }
            _ => Err(self.err("expected generator, '[', '(' or '1'")),
        }
    }
}
