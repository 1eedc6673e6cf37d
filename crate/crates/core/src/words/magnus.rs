use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::word::letter_name;
use super::Word;

/// Element of `ℤ⟨⟨X₀, …, X_{n−1}⟩⟩` truncated above total degree `degree`.
///
/// Monomials are sequences of variable indices; only nonzero coefficients
/// are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MagnusSeries {
    alphabet_size: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<u16>, BigInt>,
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

impl MagnusSeries {
    pub fn zero(alphabet_size: usize, degree: usize) -> Self {
        Self {
            alphabet_size,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(alphabet_size: usize, degree: usize) -> Self {
        let mut s = Self::zero(alphabet_size, degree);
        s.coeffs.insert(Vec::new(), BigInt::one());
        s
    }

    /// The bare variable `Xᵢ`.
    pub fn variable(alphabet_size: usize, degree: usize, i: usize) -> Self {
        let mut s = Self::zero(alphabet_size, degree);
        if degree >= 1 {
            s.coeffs.insert(vec![i as u16], BigInt::one());
        }
        s
    }

    /// Image of `xᵢ^e`: `(1 + Xᵢ)^e`, with the binomial series for `e < 0`.
    pub fn generator_power(alphabet_size: usize, degree: usize, i: usize, e: i64) -> Self {
        let mut s = Self::one(alphabet_size, degree);
        let n = e.unsigned_abs();
        for k in 1..=degree as u64 {
            let c = if e >= 0 {
                if k > n {
                    break;
                }
                binomial(n, k)
            } else {
                let c = binomial(n + k - 1, k);
                if k % 2 == 1 {
                    -c
                } else {
                    c
                }
            };
            s.coeffs.insert(vec![i as u16; k as usize], c);
        }
        s
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficient(&self, monomial: &[usize]) -> BigInt {
        let key: Vec<u16> = monomial.iter().map(|&i| i as u16).collect();
        self.coeffs.get(&key).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms in monomial order (shorter monomials first within the
    /// lexicographic order on index sequences).
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &BigInt)> {
        self.coeffs.iter().map(|(m, c)| (m.iter().map(|&i| i as usize).collect(), c))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&Vec::new()).is_some_and(One::is_one)
    }

    /// Smallest positive degree carrying a nonzero coefficient.
    pub fn lowest_nonconstant_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(Vec::len).filter(|&l| l > 0).min()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            let e = out.coeffs.entry(m.clone()).or_insert_with(BigInt::zero);
            *e += c;
            if e.is_zero() {
                out.coeffs.remove(m);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.alphabet_size, self.degree);
        if !k.is_zero() {
            for (m, c) in &self.coeffs {
                out.coeffs.insert(m.clone(), c * k);
            }
        }
        out
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Self {
        let degree = self.degree.min(other.degree);
        let mut coeffs: BTreeMap<Vec<u16>, BigInt> = BTreeMap::new();
        for (m1, c1) in &self.coeffs {
            if m1.len() > degree {
                continue;
            }
            for (m2, c2) in &other.coeffs {
                if m1.len() + m2.len() > degree {
                    continue;
                }
                let mut m = Vec::with_capacity(m1.len() + m2.len());
                m.extend_from_slice(m1);
                m.extend_from_slice(m2);
                *coeffs.entry(m).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self {
            alphabet_size: self.alphabet_size.max(other.alphabet_size),
            degree,
            coeffs,
        }
    }

    /// Multiplicative inverse of a series with constant term ±1.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.coefficient(&[]);
        if !c0.abs().is_one() {
            return None;
        }
        // s = c0 (1 + u), s⁻¹ = c0 Σ (−u)^k
        let mut neg_u = self.scale(&-&c0);
        neg_u.coeffs.remove(&Vec::new());
        let mut out = Self::one(self.alphabet_size, self.degree);
        let mut term = Self::one(self.alphabet_size, self.degree);
        for _ in 0..self.degree {
            term = term.mul(&neg_u);
            if term.coeffs.is_empty() {
                break;
            }
            out = out.add(&term);
        }
        Some(out.scale(&c0))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one(self.alphabet_size, self.degree);
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(out)
    }
}

/// Truncated Magnus expansion `xᵢ ↦ 1 + Xᵢ` of a word.
pub fn magnus_expand(w: &Word, degree: usize) -> MagnusSeries {
    let n = w.alphabet_size();
    let mut out = MagnusSeries::one(n, degree);
    for &(g, e) in w.letters() {
        out = out.mul(&MagnusSeries::generator_power(n, degree, g, e));
    }
    out
}

/// Evaluates `w` with generator `i` replaced by the unit series `images[i]`.
pub fn magnus_evaluate(w: &Word, images: &[MagnusSeries]) -> MagnusSeries {
    let first = &images[0];
    let mut out = MagnusSeries::one(first.alphabet_size, first.degree);
    for &(g, e) in w.letters() {
        let p = images[g].pow(e).expect("images must be units");
        out = out.mul(&p);
    }
    out
}

/// Position of a word in the lower central series of the free group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LcsWeight {
    /// `w ∈ γ_k \ γ_{k+1}`.
    Exactly(usize),
    /// `w ∈ γ_k`; nothing further was checked.
    AtLeast(usize),
    /// The identity.
    Infinite,
}

impl fmt::Display for LcsWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LcsWeight::Exactly(k) => write!(f, "{k}"),
            LcsWeight::AtLeast(k) => write!(f, ">= {k}"),
            LcsWeight::Infinite => write!(f, "infinity"),
        }
    }
}

/// Largest `k` with `w ∈ γ_k(F)`, read off as the lowest nonzero degree of
/// `magnus_expand(w) − 1`.
pub fn lcs_weight(w: &Word, max_class: usize) -> LcsWeight {
    let w = w.reduce();
    if w.is_identity() {
        return LcsWeight::Infinite;
    }
    match magnus_expand(&w, max_class).lowest_nonconstant_degree() {
        Some(k) => LcsWeight::Exactly(k),
        None => LcsWeight::AtLeast(max_class + 1),
    }
}

fn monomial_name(m: &[u16]) -> String {
    m.iter().map(|&i| letter_name(i as usize).to_uppercase()).collect()
}

impl fmt::Display for MagnusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<&Vec<u16>> = self.coeffs.keys().collect();
        keys.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        if keys.is_empty() {
            return write!(f, "0");
        }
        for (k, m) in keys.into_iter().enumerate() {
            let c = &self.coeffs[m];
            let (sign, abs) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (m.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{}", monomial_name(m))?,
                (false, false) => write!(f, "{abs}{}", monomial_name(m))?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    monomial: Vec<usize>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    alphabet_size: usize,
    degree: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for MagnusSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesRepr {
            alphabet_size: self.alphabet_size,
            degree: self.degree,
            terms: self
                .terms()
                .map(|(monomial, c)| TermRepr {
                    monomial,
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MagnusSeries {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = SeriesRepr::deserialize(deserializer)?;
        let mut s = MagnusSeries::zero(repr.alphabet_size, repr.degree);
        for t in repr.terms {
            if t.monomial.len() > repr.degree || t.monomial.iter().any(|&i| i >= repr.alphabet_size) {
                return Err(D::Error::custom("monomial outside alphabet or degree"));
            }
            let c: BigInt = t.coeff.parse().map_err(|_| D::Error::custom("bad coefficient"))?;
            if !c.is_zero() {
                s.coeffs.insert(t.monomial.iter().map(|&i| i as u16).collect(), c);
            }
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(magnus_expand(&w("a"), 3).to_string(), "1 + A");
        assert_eq!(magnus_expand(&w("a^-1"), 2).to_string(), "1 - A + AA");
        assert_eq!(magnus_expand(&w("[a,b]"), 2).to_string(), "1 + AB - BA");
        assert_eq!(magnus_expand(&w("a^3"), 5).to_string(), "1 + 3A + 3AA + AAA");
        assert_eq!(magnus_expand(&w("a^-2"), 3).to_string(), "1 - 2A + 3AA - 4AAA");
    }

    /// `[a,b]` at degree 2 by multiplying the four factors by hand.
    #[test]
    fn commutator_by_hand() {
        let n = 2;
        let d = 2;
        let x = MagnusSeries::generator_power(n, d, 0, 1);
        let y = MagnusSeries::generator_power(n, d, 1, 1);
        let xi = MagnusSeries::generator_power(n, d, 0, -1);
        let yi = MagnusSeries::generator_power(n, d, 1, -1);
        let prod = xi.mul(&yi).mul(&x).mul(&y);
        assert_eq!(prod.coefficient(&[0, 1]), BigInt::one());
        assert_eq!(prod.coefficient(&[1, 0]), -BigInt::one());
        assert_eq!(prod.coefficient(&[0, 0]), BigInt::zero());
        assert_eq!(prod.coefficient(&[0]), BigInt::zero());
    }

    #[test]
    fn weights() {
        assert_eq!(lcs_weight(&w("a"), 4), LcsWeight::Exactly(1));
        assert_eq!(lcs_weight(&w("[a,b]"), 4), LcsWeight::Exactly(2));
        assert_eq!(lcs_weight(&w("[[a,b],b]"), 4), LcsWeight::Exactly(3));
        assert_eq!(lcs_weight(&w("[[a,b],b]"), 2), LcsWeight::AtLeast(3));
        assert_eq!(lcs_weight(&w("a a^-1"), 4), LcsWeight::Infinite);
    }

    #[test]
    fn inverse_and_pow() {
        let s = magnus_expand(&w("a b^2 a^-1 b"), 4);
        assert!(s.mul(&s.inverse().unwrap()).is_one());
        assert_eq!(s.pow(-3).unwrap(), magnus_expand(&w("(a b^2 a^-1 b)^-3"), 4));
        assert!(MagnusSeries::zero(2, 3).inverse().is_none());
    }

    #[test]
    fn json_round_trip() {
        let s = magnus_expand(&w("[a,b]"), 3);
        let j = serde_json::to_string(&s).unwrap();
        let back: MagnusSeries = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }
}
