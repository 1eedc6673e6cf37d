//! Milnor's μ̄-invariants of links given as closed braids.
//!
//! The link group of the closure of `β ∈ B_n` is `⟨x₁…x_n | xⱼ = β(xⱼ)⟩`
//! under the Artin action `σᵢ: xᵢ ↦ xᵢxᵢ₊₁xᵢ⁻¹, xᵢ₊₁ ↦ xᵢ`. Every `β(xⱼ)` is
//! a conjugate `wⱼ x_{t(j)} wⱼ⁻¹`; following `j ↦ t(j)` around a component and
//! multiplying the conjugators gives its longitude.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::nilpotent::FpPresentation;
use crate::words::{magnus_evaluate, MagnusSeries, Word};

/// Longest index accepted by [`mu_bar`] and [`vanish_up_to`].
pub const MAX_INDEX_LENGTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MilnorError {
    #[error("invalid braid: {0}")]
    InvalidBraid(String),
    #[error("a Milnor index needs at least two entries")]
    IndexTooShort,
    #[error("component {0} does not exist (components are numbered from 1)")]
    UnknownComponent(usize),
    #[error("index length {length} exceeds the cap {cap}")]
    DepthCap { length: usize, cap: usize },
}

/// Braid on `strands` strands; `k > 0` stands for `σ_k`, `-k` for `σ_k⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BraidRepr")]
pub struct BraidWord {
    strands: usize,
    word: Vec<i32>,
}

#[derive(Deserialize)]
struct BraidRepr {
    strands: usize,
    word: Vec<i32>,
}

impl TryFrom<BraidRepr> for BraidWord {
    type Error = MilnorError;
    fn try_from(r: BraidRepr) -> Result<Self, MilnorError> {
        BraidWord::new(r.strands, r.word)
    }
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<i32>) -> Result<Self, MilnorError> {
        if strands == 0 {
            return Err(MilnorError::InvalidBraid("need at least one strand".into()));
        }
        if strands > 26 {
            return Err(MilnorError::InvalidBraid("at most 26 strands are supported".into()));
        }
        for &g in &word {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(MilnorError::InvalidBraid(format!(
                    "generator {g} outside 1..{} on {strands} strands",
                    strands - 1
                )));
            }
        }
        Ok(Self { strands, word })
    }

    /// Parses `"s1 s2^-1 s1^2"`; tokens may also be separated by `*` or `,`.
    pub fn parse(strands: usize, text: &str) -> Result<Self, MilnorError> {
        let mut word = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == '*' || c == ',') {
            if tok.is_empty() || tok == "1" {
                continue;
            }
            let bad = || MilnorError::InvalidBraid(format!("cannot read {tok:?}"));
            let body = tok.strip_prefix(['s', 'σ']).ok_or_else(bad)?;
            let (g, e) = match body.split_once('^') {
                Some((g, e)) => (g, e.parse::<i32>().map_err(|_| bad())?),
                None => (body, 1),
            };
            let g: i32 = g.parse().map_err(|_| bad())?;
            if g <= 0 {
                return Err(bad());
            }
            let letter = if e < 0 { -g } else { g };
            word.extend(std::iter::repeat_n(letter, e.unsigned_abs() as usize));
        }
        Self::new(strands, word)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word(&self) -> &[i32] {
        &self.word
    }

    /// `σ_g β σ_g⁻¹` (`g` signed like the letters).
    pub fn conjugate_by(&self, g: i32) -> Result<Self, MilnorError> {
        let mut word = vec![g];
        word.extend(&self.word);
        word.push(-g);
        Self::new(self.strands, word)
    }

    /// Markov stabilization: one more strand, followed by `σ_n^{±1}`.
    pub fn stabilize(&self, positive: bool) -> Result<Self, MilnorError> {
        let n = self.strands as i32;
        let mut word = self.word.clone();
        word.push(if positive { n } else { -n });
        Self::new(self.strands + 1, word)
    }

    /// Follows the strands through the diagram, calling `crossing(a, b, sign)`
    /// for each crossing between the strands starting at top positions `a`
    /// and `b`. Returns the bottom position of each strand.
    fn trace(&self, mut crossing: impl FnMut(usize, usize, i64)) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &g in &self.word {
            let i = g.unsigned_abs() as usize - 1;
            crossing(at[i], at[i + 1], if g > 0 { 1 } else { -1 });
            at.swap(i, i + 1);
        }
        let mut end = vec![0; self.strands];
        for (pos, &s) in at.iter().enumerate() {
            end[s] = pos;
        }
        end
    }

    /// Components of the closure as sets of top positions, each listed from
    /// its smallest strand in the order the component passes through them.
    pub fn components(&self) -> Vec<Vec<usize>> {
        cycles(&self.trace(|_, _, _| {}))
    }

    /// Linking numbers from signed crossings; the diagonal holds each
    /// component's writhe.
    pub fn crossing_linking_matrix(&self) -> Vec<Vec<i64>> {
        let comps = self.components();
        let mut label = vec![0; self.strands];
        for (c, strands) in comps.iter().enumerate() {
            for &s in strands {
                label[s] = c;
            }
        }
        let mut twice = vec![vec![0i64; comps.len()]; comps.len()];
        self.trace(|a, b, sign| {
            let (ca, cb) = (label[a], label[b]);
            if ca == cb {
                twice[ca][ca] += 2 * sign;
            } else {
                twice[ca][cb] += sign;
                twice[cb][ca] += sign;
            }
        });
        twice
            .into_iter()
            .map(|row| row.into_iter().map(|x| x / 2).collect())
            .collect()
    }
}

fn cycles(next: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; next.len()];
    let mut out = Vec::new();
    for start in 0..next.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            cycle.push(j);
            j = next[j];
        }
        out.push(cycle);
    }
    out
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .word
            .iter()
            .map(|&g| if g > 0 { format!("s{g}") } else { format!("s{}^-1", -g) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for BraidWord {
    type Err = MilnorError;

    /// `"<strands>: s1 s2^-1 …"`.
    fn from_str(s: &str) -> Result<Self, MilnorError> {
        let (n, w) = s
            .split_once(':')
            .ok_or_else(|| MilnorError::InvalidBraid("expected \"<strands>: <word>\"".into()))?;
        let n = n
            .trim()
            .parse()
            .map_err(|_| MilnorError::InvalidBraid(format!("bad strand count {n:?}")))?;
        Self::parse(n, w)
    }
}

/// Link group, meridians and zero-framed longitudes of a closed braid.
/// Words are over the strand generators `x₁…x_n` (printed `a, b, …`).
#[derive(Clone, Debug, Serialize)]
pub struct LinkData {
    pub strands: usize,
    /// Strands of each component in the order the component visits them;
    /// the first one carries the meridian.
    pub components: Vec<Vec<usize>>,
    pub group: FpPresentation,
    pub meridians: Vec<Word>,
    pub longitudes: Vec<Word>,
    /// Power of the meridian removed from the raw longitude to make its
    /// linking number with its own component zero.
    pub framing_corrections: Vec<i64>,
    /// `w_j` with `β(x_j) = w_j x_{t(j)} w_j⁻¹`; the relator for strand `j`.
    pub conjugators: Vec<Word>,
}

impl LinkData {
    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Component containing each strand.
    fn strand_labels(&self) -> Vec<usize> {
        let mut label = vec![0; self.strands];
        for (c, strands) in self.components.iter().enumerate() {
            for &s in strands {
                label[s] = c;
            }
        }
        label
    }

    /// Exponent sums of a longitude grouped by component.
    pub fn linking_numbers(&self) -> Vec<Vec<i64>> {
        let label = self.strand_labels();
        self.longitudes
            .iter()
            .map(|l| {
                let mut row = vec![0; self.num_components()];
                for &(g, e) in l.letters() {
                    row[label[g]] += e;
                }
                row
            })
            .collect()
    }

    /// Same link with component `c` renamed `perm[c]`.
    pub fn relabel(&self, perm: &[usize]) -> LinkData {
        assert_eq!(perm.len(), self.num_components());
        let mut out = self.clone();
        for (c, &d) in perm.iter().enumerate() {
            out.components[d] = self.components[c].clone();
            out.meridians[d] = self.meridians[c].clone();
            out.longitudes[d] = self.longitudes[c].clone();
            out.framing_corrections[d] = self.framing_corrections[c];
        }
        out
    }
}

/// Group, meridians and longitudes of the closure of `b`.
pub fn braid_closure(b: &BraidWord) -> LinkData {
    let n = b.strands;
    let x = |j: usize| Word::generator(n, j);
    // image of x_j is conj[j] * x_{target[j]} * conj[j]^-1
    let mut conj: Vec<Word> = vec![Word::identity(n); n];
    let mut target: Vec<usize> = (0..n).collect();
    for &g in &b.word {
        let a = g.unsigned_abs() as usize - 1;
        let c = a + 1;
        let image_a = x(target[a]).conjugate_by(&conj[a].inverse());
        let image_c = x(target[c]).conjugate_by(&conj[c].inverse());
        if g > 0 {
            let new_a = image_a.product(&conj[c]);
            conj[c] = std::mem::replace(&mut conj[a], new_a);
            target.swap(a, c);
        } else {
            let new_c = image_c.inverse().product(&conj[a]);
            conj[a] = std::mem::replace(&mut conj[c], new_c);
            target.swap(a, c);
        }
    }

    let relators: Vec<Word> = (0..n)
        .map(|j| x(j).inverse().product(&x(target[j]).conjugate_by(&conj[j].inverse())))
        .collect();
    let names: Vec<char> = (0..n).map(|j| (b'a' + j as u8) as char).collect();
    let group = FpPresentation::new(names, relators).expect("strand count is at most 26");

    let components = cycles(&target);
    let mut label = vec![0; n];
    for (c, strands) in components.iter().enumerate() {
        for &s in strands {
            label[s] = c;
        }
    }
    let mut meridians = Vec::new();
    let mut longitudes = Vec::new();
    let mut framing_corrections = Vec::new();
    for (c, strands) in components.iter().enumerate() {
        let raw = strands
            .iter()
            .fold(Word::identity(n), |acc, &j| acc.product(&conj[j]));
        let f: i64 = raw
            .letters()
            .iter()
            .filter(|&&(g, _)| label[g] == c)
            .map(|&(_, e)| e)
            .sum();
        meridians.push(x(strands[0]));
        longitudes.push(raw.product(&Word::power_of(n, strands[0], -f)));
        framing_corrections.push(f);
    }
    LinkData {
        strands: n,
        components,
        group,
        meridians,
        longitudes,
        framing_corrections,
        conjugators: conj,
    }
}

/// Component strands as words in the meridians: each strand generator is
/// expanded as a conjugate of its component's meridian, correct through
/// Magnus degree `degree`.
fn strand_series(link: &LinkData, degree: usize) -> Vec<MagnusSeries> {
    let c = link.num_components();
    let label = link.strand_labels();
    let mut s: Vec<MagnusSeries> = (0..link.strands)
        .map(|j| MagnusSeries::generator_power(c, degree, label[j], 1))
        .collect();
    let conj = &link.conjugators;
    // Each sweep fixes one more degree.
    for _ in 0..=degree {
        for strands in &link.components {
            for k in 0..strands.len() - 1 {
                let (j, next) = (strands[k], strands[k + 1]);
                let w = magnus_evaluate(&conj[j], &s);
                let w_inv = w.inverse().expect("unit");
                s[next] = w_inv.mul(&s[j]).mul(&w);
            }
        }
    }
    s
}

/// Longitudes of all components as Magnus series in the meridians.
pub fn longitude_series(link: &LinkData, degree: usize) -> Vec<MagnusSeries> {
    let s = strand_series(link, degree);
    link.longitudes.iter().map(|l| magnus_evaluate(l, &s)).collect()
}

/// `μ̄(I)` as a residue modulo its indeterminacy `modulus` (0 means none).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuValue {
    pub index: Vec<usize>,
    #[serde(with = "crate::abelian::bigint_string")]
    pub value: BigInt,
    #[serde(with = "crate::abelian::bigint_string")]
    pub modulus: BigInt,
}

impl MuValue {
    pub fn vanishes(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Display for MuValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.index.iter().map(usize::to_string).collect();
        write!(f, "mu({}) = {}", idx.join(","), self.value)?;
        if !self.modulus.is_zero() {
            write!(f, " mod {}", self.modulus)?;
        }
        Ok(())
    }
}

/// Raw Milnor numbers read from precomputed longitude series.
struct MuTable {
    series: Vec<MagnusSeries>,
}

impl MuTable {
    fn raw(&self, index: &[usize]) -> BigInt {
        let (last, front) = index.split_last().expect("nonempty index");
        let mono: Vec<usize> = front.iter().map(|i| i - 1).collect();
        self.series[last - 1].coefficient(&mono)
    }

    fn value(&self, index: &[usize]) -> MuValue {
        let mut delta = BigInt::zero();
        let k = index.len();
        for mask in 1u32..(1 << k) - 1 {
            let sub: Vec<usize> = (0..k).filter(|b| mask & (1 << b) != 0).map(|b| index[b]).collect();
            if sub.len() < 2 {
                continue;
            }
            for r in 0..sub.len() {
                let mut rot = sub[r..].to_vec();
                rot.extend_from_slice(&sub[..r]);
                delta = delta.gcd(&self.raw(&rot));
            }
        }
        let mut value = self.raw(index);
        if delta.is_positive() {
            value = value.mod_floor(&delta);
        }
        MuValue {
            index: index.to_vec(),
            value,
            modulus: delta,
        }
    }
}

fn check_index(link: &LinkData, index: &[usize]) -> Result<(), MilnorError> {
    if index.len() < 2 {
        return Err(MilnorError::IndexTooShort);
    }
    if index.len() > MAX_INDEX_LENGTH {
        return Err(MilnorError::DepthCap {
            length: index.len(),
            cap: MAX_INDEX_LENGTH,
        });
    }
    match index.iter().find(|&&i| i == 0 || i > link.num_components()) {
        Some(&i) => Err(MilnorError::UnknownComponent(i)),
        None => Ok(()),
    }
}

/// `μ̄(i₁…i_k)`: the coefficient of `X_{i₁}⋯X_{i_{k-1}}` in the Magnus
/// expansion of the longitude of component `i_k`, reduced modulo the gcd of
/// the invariants of shorter cyclically permuted sub-indices. Components are
/// numbered from 1.
pub fn mu_bar(link: &LinkData, index: &[usize]) -> Result<MuValue, MilnorError> {
    check_index(link, index)?;
    let table = MuTable {
        series: longitude_series(link, index.len() - 1),
    };
    Ok(table.value(index))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthVanishing {
    pub length: usize,
    pub vanishes: bool,
    /// First index in lexicographic order with a nonzero residue.
    pub witness: Option<MuValue>,
}

/// For each length `2..=q`, whether every `μ̄(I)` of that length is zero.
pub fn vanish_up_to(link: &LinkData, q: usize) -> Result<Vec<LengthVanishing>, MilnorError> {
    if q < 2 {
        return Err(MilnorError::IndexTooShort);
    }
    if q > MAX_INDEX_LENGTH {
        return Err(MilnorError::DepthCap {
            length: q,
            cap: MAX_INDEX_LENGTH,
        });
    }
    let c = link.num_components();
    let table = MuTable {
        series: longitude_series(link, q - 1),
    };
    let mut out = Vec::new();
    for k in 2..=q {
        let total = c.pow(k as u32);
        let witness = (0..total)
            .into_par_iter()
            .map(|code| {
                let mut index = vec![0; k];
                let mut x = code;
                for slot in index.iter_mut().rev() {
                    *slot = x % c + 1;
                    x /= c;
                }
                index
            })
            .map(|index| table.value(&index))
            .find_first(|v| !v.vanishes());
        out.push(LengthVanishing {
            length: k,
            vanishes: witness.is_none(),
            witness,
        });
    }
    Ok(out)
}

/// All `μ̄(I)` of length `k`, keyed by index.
pub fn mu_table(link: &LinkData, k: usize) -> Result<HashMap<Vec<usize>, MuValue>, MilnorError> {
    check_index(link, &vec![1; k])?;
    let c = link.num_components();
    let table = MuTable {
        series: longitude_series(link, k - 1),
    };
    let mut out = HashMap::new();
    let mut index = vec![1; k];
    loop {
        out.insert(index.clone(), table.value(&index));
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if index[pos] < c {
                index[pos] += 1;
                break;
            }
            index[pos] = 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hopf() -> BraidWord {
        BraidWord::new(2, vec![1, 1]).unwrap()
    }

    fn borromean() -> BraidWord {
        BraidWord::new(3, vec![1, -2, 1, -2, 1, -2]).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let b = BraidWord::parse(3, "s1 s2^-1 s1^2").unwrap();
        assert_eq!(b.word(), &[1, -2, 1, 1]);
        assert_eq!(b.to_string(), "s1 s2^-1 s1 s1");
        assert_eq!("3: s1*s2^-1".parse::<BraidWord>().unwrap().word(), &[1, -2]);
        assert!(BraidWord::parse(2, "s2").is_err());
        assert!(BraidWord::parse(2, "t1").is_err());
        let json = serde_json::to_string(&borromean()).unwrap();
        assert_eq!(json, r#"{"strands":3,"word":[1,-2,1,-2,1,-2]}"#);
        assert!(serde_json::from_str::<BraidWord>(r#"{"strands":2,"word":[3]}"#).is_err());
    }

    #[test]
    fn components_agree_with_group() {
        for b in [hopf(), borromean(), BraidWord::new(3, vec![1, 2]).unwrap(), BraidWord::new(4, vec![1, 3, -2]).unwrap()] {
            let l = braid_closure(&b);
            let mut alg: Vec<Vec<usize>> = l.components.iter().map(|c| { let mut c = c.clone(); c.sort(); c }).collect();
            let mut geo: Vec<Vec<usize>> = b.components().into_iter().map(|mut c| { c.sort(); c }).collect();
            alg.sort();
            geo.sort();
            assert_eq!(alg, geo, "{b}");
        }
    }

    #[test]
    fn longitudes_commute_with_meridians_in_quotient() {
        use crate::nilpotent::nilpotent_quotient;
        for b in [hopf(), borromean(), BraidWord::new(3, vec![1, 1, 2, -1, 2]).unwrap()] {
            let l = braid_closure(&b);
            let q = nilpotent_quotient(&l.group, 4).unwrap();
            for (m, lon) in l.meridians.iter().zip(&l.longitudes) {
                let c = Word::commutator(m, lon);
                assert!(q.evaluate(&c).iter().all(|&e| e == 0), "{b}");
            }
        }
    }

    #[test]
    fn linking_numbers_match_crossings() {
        for b in [hopf(), borromean(), BraidWord::new(3, vec![1, 1, 2, 2, -1]).unwrap(), BraidWord::new(2, vec![-1, -1, -1, -1]).unwrap()] {
            let l = braid_closure(&b);
            let oracle = b.crossing_linking_matrix();
            let lk = l.linking_numbers();
            for i in 0..l.num_components() {
                assert_eq!(lk[i][i], 0, "{b}");
                for j in 0..l.num_components() {
                    if i != j {
                        assert_eq!(lk[i][j].abs(), oracle[i][j].abs(), "{b}");
                        let mu = mu_bar(&l, &[j + 1, i + 1]).unwrap();
                        assert_eq!(mu.value, BigInt::from(lk[i][j]));
                    }
                }
            }
        }
    }

    #[test]
    fn hopf_and_unlink() {
        let l = braid_closure(&hopf());
        assert_eq!(l.num_components(), 2);
        let mu = mu_bar(&l, &[1, 2]).unwrap();
        assert_eq!(mu.value.abs(), BigInt::from(1));
        assert_eq!(mu.modulus, BigInt::zero());

        let u = braid_closure(&BraidWord::new(2, vec![]).unwrap());
        assert!(u.longitudes.iter().all(Word::is_identity));
        assert!(mu_bar(&u, &[1, 2]).unwrap().vanishes());

        let v = vanish_up_to(&l, 2).unwrap();
        assert!(!v[0].vanishes);
        assert_eq!(v[0].witness.as_ref().unwrap().index, vec![1, 2]);
    }

    #[test]
    fn borromean_rings() {
        let l = braid_closure(&borromean());
        assert_eq!(l.num_components(), 3);
        let mu = mu_bar(&l, &[1, 2, 3]).unwrap();
        assert_eq!(mu.value.abs(), BigInt::from(1));
        assert_eq!(mu.modulus, BigInt::zero());
        let v = vanish_up_to(&l, 3).unwrap();
        assert!(v[0].vanishes);
        assert!(!v[1].vanishes);
        assert_eq!(v[1].witness.as_ref().unwrap().index, vec![1, 2, 3]);
        // Cyclic symmetry at the first nonvanishing length.
        let t = mu_table(&l, 3).unwrap();
        assert_eq!(t[&vec![1, 2, 3]].value, t[&vec![2, 3, 1]].value);
        assert_eq!(t[&vec![1, 2, 3]].value, t[&vec![3, 1, 2]].value);
        assert_eq!(t[&vec![1, 2, 3]].value, -&t[&vec![2, 1, 3]].value);
    }

    #[test]
    fn unlink_vanishes() {
        let l = braid_closure(&BraidWord::new(3, vec![]).unwrap());
        assert!(vanish_up_to(&l, 6).unwrap().iter().all(|v| v.vanishes));
    }

    #[test]
    fn index_errors() {
        let l = braid_closure(&hopf());
        assert_eq!(mu_bar(&l, &[1]), Err(MilnorError::IndexTooShort));
        assert_eq!(mu_bar(&l, &[1, 3]), Err(MilnorError::UnknownComponent(3)));
        assert!(matches!(mu_bar(&l, &[1; 9]), Err(MilnorError::DepthCap { .. })));
    }

    fn residues(l: &LinkData, k: usize) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = mu_table(l, k).unwrap().into_values().map(|m| m.value.abs()).collect();
        v.sort();
        v
    }

    #[test]
    fn invariant_under_conjugation_and_stabilization() {
        let links = [hopf(), borromean(), BraidWord::new(3, vec![1, 1, 2, 2]).unwrap(), BraidWord::new(3, vec![1, 1, -2, -2, 1, 1]).unwrap()];
        for b in links {
            let base = braid_closure(&b);
            let moved = [
                b.conjugate_by(1).unwrap(),
                b.conjugate_by(-(b.strands() as i32 - 1)).unwrap(),
                b.stabilize(true).unwrap(),
                b.stabilize(false).unwrap(),
            ];
            for m in moved {
                let l = braid_closure(&m);
                assert_eq!(l.num_components(), base.num_components());
                for k in 2..=3 {
                    assert_eq!(residues(&l, k), residues(&base, k), "{b} vs {m}, length {k}");
                }
            }
        }
    }

    #[test]
    fn framing_correction_is_writhe() {
        for b in [hopf(), borromean(), BraidWord::new(3, vec![1, 2, 1, 1]).unwrap(), BraidWord::new(2, vec![1, 1, 1]).unwrap()] {
            let l = braid_closure(&b);
            let geo = b.crossing_linking_matrix();
            let comps = b.components();
            for (c, strands) in l.components.iter().enumerate() {
                let g = comps.iter().position(|s| s.contains(&strands[0])).unwrap();
                assert_eq!(l.framing_corrections[c], geo[g][g], "{b}");
            }
        }
    }

    #[test]
    fn relabeling_permutes_indices() {
        let l = braid_closure(&borromean());
        let perm = [2, 0, 1];
        let r = l.relabel(&perm);
        let a = mu_table(&l, 3).unwrap();
        let b = mu_table(&r, 3).unwrap();
        for (idx, v) in &a {
            let moved: Vec<usize> = idx.iter().map(|&i| perm[i - 1] + 1).collect();
            assert_eq!(b[&moved].value, v.value);
        }
    }
}
