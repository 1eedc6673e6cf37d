use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::parse::parse_word;

/// A word in the free group on `alphabet_size` generators, as a list of
/// `(generator, exponent)` syllables.
///
/// Words built through [`Word::product`], [`Word::inverse`] and friends are
/// always freely reduced; [`Word::from_letters`] keeps its input verbatim so
/// that [`Word::reduce`] has something to do.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    alphabet_size: usize,
    letters: Vec<(usize, i64)>,
}

impl Word {
    pub fn identity(alphabet_size: usize) -> Self {
        Self {
            alphabet_size,
            letters: Vec::new(),
        }
    }

    pub fn generator(alphabet_size: usize, i: usize) -> Self {
        Self::power_of(alphabet_size, i, 1)
    }

    pub fn power_of(alphabet_size: usize, i: usize, e: i64) -> Self {
        assert!(i < alphabet_size, "generator {i} outside alphabet of size {alphabet_size}");
        let letters = if e == 0 { Vec::new() } else { vec![(i, e)] };
        Self {
            alphabet_size,
            letters,
        }
    }

    /// Unreduced word. Panics on a generator outside the alphabet.
    pub fn from_letters(alphabet_size: usize, letters: Vec<(usize, i64)>) -> Self {
        for &(g, _) in &letters {
            assert!(g < alphabet_size, "generator {g} outside alphabet of size {alphabet_size}");
        }
        Self {
            alphabet_size,
            letters,
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.iter().all(|&(_, e)| e == 0)
    }

    /// Total number of letters, counting `x^k` as `|k|`.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.iter().all(|&(_, e)| e != 0) && self.letters.windows(2).all(|w| w[0].0 != w[1].0)
    }

    pub fn reduce(&self) -> Self {
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(self.letters.len());
        for &(g, e) in &self.letters {
            push_syllable(&mut out, g, e);
        }
        Self {
            alphabet_size: self.alphabet_size,
            letters: out,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            alphabet_size: self.alphabet_size,
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
        .reduce()
    }

    pub fn product(&self, other: &Self) -> Self {
        let alphabet_size = self.alphabet_size.max(other.alphabet_size);
        let mut out = self.reduce().letters;
        for &(g, e) in &other.letters {
            push_syllable(&mut out, g, e);
        }
        Self {
            alphabet_size,
            letters: out,
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.reduce() };
        if let [(g, e)] = base.letters[..] {
            let e = e.checked_mul(k.abs()).expect("exponent overflow");
            return Self::power_of(self.alphabet_size, g, e);
        }
        let mut out = Self::identity(self.alphabet_size);
        for _ in 0..k.unsigned_abs() {
            out = out.product(&base);
        }
        out
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.inverse().product(&b.inverse()).product(a).product(b)
    }

    /// `b⁻¹ a b`.
    pub fn conjugate_by(&self, b: &Self) -> Self {
        b.inverse().product(self).product(b)
    }

    /// Exponent sum of generator `i`.
    pub fn exponent_sum(&self, i: usize) -> i64 {
        self.letters.iter().filter(|&&(g, _)| g == i).map(|&(_, e)| e).sum()
    }

    /// Replaces generator `i` by `images[i]` and reduces.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let alphabet = images.first().map_or(0, |w| w.alphabet_size);
        let mut out = Word::identity(alphabet);
        for &(g, e) in &self.letters {
            out = out.product(&images[g].pow(e));
        }
        out
    }

    /// Same letters over a larger alphabet.
    pub fn widen(&self, alphabet_size: usize) -> Self {
        assert!(alphabet_size >= self.alphabet_size);
        Self {
            alphabet_size,
            letters: self.letters.clone(),
        }
    }

    pub fn parse(text: &str, alphabet_size: usize) -> Result<Self, super::ParseError> {
        parse_word(text, alphabet_size)
    }
}

fn push_syllable(out: &mut Vec<(usize, i64)>, g: usize, e: i64) {
    if e == 0 {
        return;
    }
    match out.last_mut() {
        Some(last) if last.0 == g => {
            last.1 += e;
            if last.1 == 0 {
                out.pop();
            }
        }
        _ => out.push((g, e)),
    }
}

/// Display name of generator `i`: `a`..`z`, then `x26`, `x27`, …
pub fn letter_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

impl Word {
    /// Text form using `names[i]` for generator `i`.
    pub fn display_with(&self, names: &[char]) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, e)| {
                let n = names.get(g).map_or_else(|| letter_name(g), char::to_string);
                if e == 1 {
                    n
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, &(g, e)) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", letter_name(g))?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Deserializes from the text syntax; the alphabet is the smallest one
/// containing every letter used.
impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let w = parse_word(&s, 26).map_err(serde::de::Error::custom)?;
        let used = w.letters.iter().map(|&(g, _)| g + 1).max().unwrap_or(0);
        Ok(Word {
            alphabet_size: used,
            letters: w.letters,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_examples() {
        let w = Word::from_letters(2, vec![(0, 1), (1, 1), (1, -1), (0, 1)]);
        assert_eq!(w.reduce().letters(), &[(0, 2)]);
        assert!(Word::identity(3).reduce().is_identity());
        let c = Word::commutator(&Word::generator(2, 0), &Word::generator(2, 1));
        assert_eq!(c.letters(), &[(0, -1), (1, -1), (0, 1), (1, 1)]);
        assert_eq!(c.reduce(), c);
        assert_eq!(c.to_string(), "a^-1*b^-1*a*b");
    }

    #[test]
    fn inverse_cancels() {
        let w = Word::from_letters(3, vec![(0, 2), (2, -1), (1, 3), (0, -1)]);
        assert!(w.product(&w.inverse()).is_identity());
        assert!(w.inverse().product(&w).is_identity());
    }

    #[test]
    fn pow_and_substitute() {
        let a = Word::generator(2, 0);
        let b = Word::generator(2, 1);
        let ab = a.product(&b);
        assert_eq!(ab.pow(-2).to_string(), "b^-1*a^-1*b^-1*a^-1");
        let images = [b.clone(), a.clone()];
        assert_eq!(ab.substitute(&images).to_string(), "b*a");
        assert_eq!(ab.pow(3).exponent_sum(0), 3);
    }
}
