//! Text syntax for words.
//!
//! ```text
//! word    := factor ( "*"? factor )*  |  "1"
//! factor  := atom ( "^" integer )?
//! atom    := letter | "(" word ")" | "[" word "," word ( "," word )* "]"
//! ```
//!
//! By default letters `a`..`z` are generators 0..25; [`parse_word_over`]
//! takes an explicit list of generator letters instead. `[u, v, w]` is left-normed,
//! `[[u, v], w]`, and `[u, v] = u⁻¹ v⁻¹ u v`. Whitespace is ignored.

use thiserror::Error;

use super::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected {found} at offset {offset}, expected {expected}")]
    Unexpected {
        offset: usize,
        found: String,
        expected: &'static str,
    },
    #[error("letter {letter:?} is outside an alphabet of size {alphabet_size}")]
    OutsideAlphabet { letter: char, alphabet_size: usize },
    #[error("exponent at offset {0} does not fit in 64 bits")]
    Overflow(usize),
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    names: &'a [char],
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, names: &'a [char]) -> Self {
        Self {
            chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            pos: 0,
            names,
            src,
        }
    }

    fn alphabet_size(&self) -> usize {
        self.names.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or_else(|| self.src.len(), |&(o, _)| o)
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError::Unexpected {
            offset: self.offset(),
            found: self.peek().map_or_else(|| "end of input".to_string(), |c| format!("{c:?}")),
            expected,
        }
    }

    fn expect(&mut self, c: char, expected: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn starts_atom(c: char) -> bool {
        c.is_ascii_lowercase() || c == '(' || c == '['
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        if self.peek() == Some('1') {
            self.pos += 1;
            return Ok(Word::identity(self.alphabet_size()));
        }
        let mut w = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    w = w.product(&self.factor()?);
                }
                Some(c) if Self::starts_atom(c) => w = w.product(&self.factor()?),
                _ => return Ok(w),
            }
        }
    }

    fn factor(&mut self) -> Result<Word, ParseError> {
        let atom = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            Ok(atom.pow(e))
        } else {
            Ok(atom)
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let start = self.offset();
        let mut neg = false;
        match self.peek() {
            Some('-') => {
                neg = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            return Err(self.unexpected("an integer exponent"));
        }
        let v: i64 = digits.parse().map_err(|_| ParseError::Overflow(start))?;
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_lowercase() => {
                let i = self.names.iter().position(|&n| n == c).ok_or(ParseError::OutsideAlphabet {
                    letter: c,
                    alphabet_size: self.alphabet_size(),
                })?;
                self.pos += 1;
                Ok(Word::generator(self.alphabet_size(), i))
            }
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')', "\")\"")?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let mut acc = self.word()?;
                self.expect(',', "\",\"")?;
                acc = Word::commutator(&acc, &self.word()?);
                while self.peek() == Some(',') {
                    self.pos += 1;
                    acc = Word::commutator(&acc, &self.word()?);
                }
                self.expect(']', "\"]\" or \",\"")?;
                Ok(acc)
            }
            _ => Err(self.unexpected("a letter, \"(\" or \"[\"")),
        }
    }
}

/// Parses a word over the alphabet `a`, `b`, … of the given size (at most 26).
pub fn parse_word(text: &str, alphabet_size: usize) -> Result<Word, ParseError> {
    let names: Vec<char> = ('a'..='z').take(alphabet_size).collect();
    parse_word_over(text, &names)
}

/// Parses a word whose letters are `names[0]`, `names[1]`, … (lowercase ASCII).
pub fn parse_word_over(text: &str, names: &[char]) -> Result<Word, ParseError> {
    let mut p = Parser::new(text, names);
    if p.peek().is_none() {
        return Ok(Word::identity(names.len()));
    }
    let w = p.word()?;
    if p.peek().is_some() {
        return Err(p.unexpected("end of input"));
    }
    Ok(w)
}
