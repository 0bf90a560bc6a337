use std::fmt;
use std::str::FromStr;

use super::PresentationError;

/// A freely reduced word, stored as runs `(generator, exponent)`.
///
/// Construction always reduces: adjacent runs have distinct generators and
/// no exponent is zero, so structural equality is equality in the free group.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Word {
    syllables: Vec<(String, i64)>,
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '\''))
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letter(name: &str) -> Self {
        Word::power(name, 1)
    }

    pub fn power(name: &str, exp: i64) -> Self {
        Word::from_syllables([(name.to_string(), exp)])
    }

    pub fn from_syllables<I>(syllables: I) -> Self
    where
        I: IntoIterator<Item = (String, i64)>,
    {
        let mut w = Word::empty();
        for (g, e) in syllables {
            w.push(g, e);
        }
        w
    }

    fn push(&mut self, gen: String, exp: i64) {
        if exp == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some((g, e)) if *g == gen => {
                *e += exp;
                if *e == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((gen, exp)),
        }
    }

    pub fn syllables(&self) -> &[(String, i64)] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Length as a string of letters `x^±1`.
    pub fn len(&self) -> u64 {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn generators(&self) -> impl Iterator<Item = &str> {
        self.syllables.iter().map(|(g, _)| g.as_str())
    }

    pub fn exponent_sum(&self, gen: &str) -> i64 {
        self.syllables
            .iter()
            .filter(|(g, _)| g == gen)
            .map(|(_, e)| e)
            .sum()
    }

    pub fn inverse(&self) -> Word {
        Word::from_syllables(self.syllables.iter().rev().map(|(g, e)| (g.clone(), -e)))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for (g, e) in &other.syllables {
            w.push(g.clone(), *e);
        }
        w
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Word::empty(), |acc, _| acc.concat(&base))
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`, the convention used throughout the crate.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().concat(&b.inverse()).concat(a).concat(b)
    }

    /// Applies a generator renaming; unmapped generators are kept.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Word {
        Word::from_syllables(self.syllables.iter().map(|(g, e)| (f(g), *e)))
    }

    /// Parses `a1^-1*d1^-1*a1*d1`; `1` denotes the empty word.
    ///
    /// Commutator brackets are also accepted, with an optional exponent and
    /// optional `*` after a closing bracket: `[b1^-1,d^-1]^2*c`,
    /// `[a1,b1][a2,b2]`.
    pub fn parse(text: &str) -> Result<Word, PresentationError> {
        let mut parser = Parser {
            src: text,
            chars: text.char_indices().peekable(),
        };
        let w = parser.product()?;
        match parser.chars.peek() {
            None => Ok(w),
            Some(&(_, c)) => Err(parser.error(&format!("unexpected `{c}`"))),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> PresentationError {
        PresentationError::WordSyntax {
            word: self.src.to_string(),
            reason: reason.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.next_if(|(_, c)| c.is_whitespace()).is_some() {}
    }

    fn product(&mut self) -> Result<Word, PresentationError> {
        let mut w = self.factor()?;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some((_, '*')) => {
                    self.chars.next();
                }
                Some((_, '[')) => {}
                _ => return Ok(w),
            }
            w = w.concat(&self.factor()?);
        }
    }

    fn factor(&mut self) -> Result<Word, PresentationError> {
        self.skip_ws();
        let base = match self.chars.peek().copied() {
            None => return Err(self.error("empty")),
            Some((_, '[')) => {
                self.chars.next();
                let a = self.product()?;
                self.expect(',')?;
                let b = self.product()?;
                self.expect(']')?;
                Word::commutator(&a, &b)
            }
            Some((start, _)) => {
                let mut end = start;
                while let Some((i, c)) = self
                    .chars
                    .next_if(|(_, c)| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '\''))
                {
                    end = i + c.len_utf8();
                }
                let name = &self.src[start..end];
                if name == "1" {
                    Word::empty()
                } else if is_valid_name(name) {
                    Word::letter(name)
                } else if name.is_empty() {
                    return Err(self.error("missing generator"));
                } else {
                    return Err(self.error(&format!("bad generator name `{name}`")));
                }
            }
        };
        self.skip_ws();
        if self.chars.next_if(|(_, c)| *c == '^').is_none() {
            return Ok(base);
        }
        self.skip_ws();
        let mut digits = String::new();
        if let Some((_, c)) = self.chars.next_if(|(_, c)| *c == '-' || *c == '+') {
            digits.push(c);
        }
        while let Some((_, c)) = self.chars.next_if(|(_, c)| c.is_ascii_digit()) {
            digits.push(c);
        }
        let exp: i64 = digits.parse().map_err(|_| self.error("bad exponent"))?;
        Ok(base.pow(exp))
    }

    fn expect(&mut self, want: char) -> Result<(), PresentationError> {
        self.skip_ws();
        match self.chars.next() {
            Some((_, c)) if c == want => Ok(()),
            _ => Err(self.error(&format!("expected `{want}`"))),
        }
    }
}

impl FromStr for Word {
    type Err = PresentationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}
