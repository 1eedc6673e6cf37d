//! The nilpotent quotient algorithm.
//!
//! Starting from the trivial group, each step passes from a consistent
//! presentation of `Q = G/γ_{c+1}` to one of `G/γ_{c+2}`:
//!
//! 1. every relation of `Q` that does not define a generator gets a new
//!    central generator of weight `c + 1` (its *tail*); so does the image of
//!    every presentation generator that is not itself a pc generator;
//! 2. the overlap checks of the extended presentation, and the relators of
//!    `G` evaluated in it, give integer relations among the tails;
//! 3. an echelon form of those relations eliminates tails, leaving the new
//!    layer `γ_{c+1}/γ_{c+2}` with relative orders and power relations.
//!
//! Each surviving tail becomes a generator defined by the relation it was
//! attached to; tails that make good definitions (commutators of a top
//! generator with a weight-one generator) are placed last so that echelon
//! elimination prefers to keep them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::pc::{dense_to_sparse, CommutatorRelation, Definition, PcGroup, PcPresentation, PowerRelation};
use super::NilpotentError;
use crate::words::{parse_word_over, Word};

/// A finitely presented group. Generator names are single lowercase
/// letters so that relators can be written in the word syntax.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPresentation {
    generators: Vec<char>,
    relators: Vec<Word>,
}

impl FpPresentation {
    pub fn new(generators: Vec<char>, relators: Vec<Word>) -> Result<Self, NilpotentError> {
        for (i, c) in generators.iter().enumerate() {
            if !c.is_ascii_lowercase() {
                return Err(NilpotentError::MalformedFp(format!("generator name {c:?} is not a lowercase letter")));
            }
            if generators[..i].contains(c) {
                return Err(NilpotentError::MalformedFp(format!("generator name {c:?} repeated")));
            }
        }
        let relators = relators
            .into_iter()
            .map(|r| {
                if r.alphabet_size() > generators.len() {
                    Err(NilpotentError::MalformedFp(format!("relator {r} uses unknown generators")))
                } else {
                    Ok(r.widen(generators.len()).reduce())
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { generators, relators })
    }

    /// Parses relators written over the given generator letters.
    pub fn parse(generators: &str, relators: &[&str]) -> Result<Self, NilpotentError> {
        let names: Vec<char> = generators.chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
        let words = relators
            .iter()
            .map(|r| parse_word_over(r, &names).map_err(|e| NilpotentError::MalformedFp(format!("{r:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(names, words)
    }

    /// Free group on the letters `a`, `b`, ….
    pub fn free(rank: usize) -> Self {
        Self::new(('a'..='z').take(rank).collect(), Vec::new()).expect("at most 26 generators")
    }

    /// `⟨a, b | a², a⁻¹bab⟩`, the infinite dihedral group `ℤ ⋊ C₂` with `b`
    /// generating `ℤ` and `a` acting by inversion.
    pub fn infinite_dihedral() -> Self {
        Self::parse("ab", &["a^2", "a^-1*b*a*b"]).expect("fixed presentation")
    }

    pub fn generators(&self) -> &[char] {
        &self.generators
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, NilpotentError> {
        parse_word_over(text, &self.generators).map_err(|e| NilpotentError::MalformedFp(e.to_string()))
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.display_with(&self.generators)
    }
}

#[derive(Serialize, Deserialize)]
struct FpRepr {
    generators: Vec<String>,
    relators: Vec<String>,
}

impl Serialize for FpPresentation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FpRepr {
            generators: self.generators.iter().map(char::to_string).collect(),
            relators: self.relators.iter().map(|r| self.format_word(r)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FpPresentation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = FpRepr::deserialize(deserializer)?;
        let mut names = Vec::new();
        for g in &repr.generators {
            let mut it = g.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => names.push(c),
                _ => return Err(D::Error::custom(format!("generator name {g:?} must be a single letter"))),
            }
        }
        let words = repr
            .relators
            .iter()
            .map(|r| parse_word_over(r, &names).map_err(|e| D::Error::custom(format!("{r:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        FpPresentation::new(names, words).map_err(D::Error::custom)
    }
}

/// Resource bounds for the quotient algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NqLimits {
    pub max_class: usize,
    pub max_generators: usize,
    /// Bound on `Σ |eᵢ|` of any relator after collection.
    pub max_collected_length: u64,
}

impl NqLimits {
    pub const DEFAULT_MAX_CLASS: usize = 12;

    /// Defaults, with the class cap taken from `GAMMA_OMEGA_MAX_CLASS` when
    /// that is set to a number.
    pub fn from_env() -> Self {
        let max_class = std::env::var("GAMMA_OMEGA_MAX_CLASS")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(Self::DEFAULT_MAX_CLASS);
        Self {
            max_class,
            ..Self::default()
        }
    }
}

impl Default for NqLimits {
    fn default() -> Self {
        Self {
            max_class: Self::DEFAULT_MAX_CLASS,
            max_generators: 2000,
            max_collected_length: 1 << 40,
        }
    }
}

/// `G/γ_{c+1}(G)` with the images of the presentation generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NilpotentQuotient {
    pub group: PcGroup,
    pub generator_images: Vec<Vec<i64>>,
}

impl NilpotentQuotient {
    pub fn class(&self) -> usize {
        self.group.class()
    }

    /// Image of a word in the presentation generators.
    pub fn evaluate(&self, w: &Word) -> Vec<i64> {
        self.group.evaluate(w.letters(), &self.generator_images)
    }
}

/// Largest class-`c` quotient `G/γ_{c+1}(G)`; `c = 1` is the
/// abelianization.
pub fn nilpotent_quotient(p: &FpPresentation, c: usize) -> Result<NilpotentQuotient, NilpotentError> {
    quotient_series(p, c, &NqLimits::from_env()).map(|mut v| v.pop().expect("c ≥ 1"))
}

/// The quotients of class `1..=c`, each obtained from the previous one.
pub(crate) fn quotient_series(
    p: &FpPresentation,
    c: usize,
    limits: &NqLimits,
) -> Result<Vec<NilpotentQuotient>, NilpotentError> {
    if c == 0 {
        return Err(NilpotentError::ZeroClass);
    }
    if c > limits.max_class {
        return Err(NilpotentError::ResourceCap(format!(
            "class {c} exceeds the class cap {} (GAMMA_OMEGA_MAX_CLASS)",
            limits.max_class
        )));
    }
    let mut current = NilpotentQuotient {
        group: PcGroup::trivial(),
        generator_images: vec![Vec::new(); p.ngens()],
    };
    let mut out = Vec::with_capacity(c);
    for k in 0..c {
        current = extend(p, &current, k, limits)?;
        out.push(current.clone());
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum TailSource {
    Power(usize),
    Image(usize),
    Commutator(usize, usize),
}

impl TailSource {
    fn definition(self) -> Definition {
        match self {
            TailSource::Power(base) => Definition::Power { base },
            TailSource::Image(generator) => Definition::Image { generator },
            TailSource::Commutator(left, right) => Definition::Commutator { left, right },
        }
    }
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Integer row echelon form maintained under insertion.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<usize, Vec<BigInt>>,
}

impl Echelon {
    fn insert(&mut self, mut v: Vec<BigInt>) {
        loop {
            let Some(p) = v.iter().position(|x| !x.is_zero()) else { return };
            let Some(row) = self.rows.get_mut(&p) else {
                if v[p].is_negative() {
                    v.iter_mut().for_each(|x| *x = -&*x);
                }
                self.rows.insert(p, v);
                return;
            };
            let a = row[p].clone();
            let b = v[p].clone();
            if b.is_multiple_of(&a) {
                let q = &b / &a;
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    *x -= &q * y;
                }
                continue;
            }
            let eg = a.extended_gcd(&b);
            let (ag, bg) = (&a / &eg.gcd, &b / &eg.gcd);
            let new_row: Vec<BigInt> = row.iter().zip(&v).map(|(r, x)| &eg.x * r + &eg.y * x).collect();
            let new_v: Vec<BigInt> = row.iter().zip(&v).map(|(r, x)| &bg * r - &ag * x).collect();
            *row = new_row;
            v = new_v;
        }
    }

    /// Reduces every entry above a pivot into `[0, pivot)`.
    fn reduce(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        for (n, &p) in pivots.iter().enumerate() {
            let row = self.rows[&p].clone();
            for &above in &pivots[..n] {
                let r = self.rows.get_mut(&above).expect("pivot row");
                let q = r[p].div_floor(&row[p]);
                if !q.is_zero() {
                    for (x, y) in r.iter_mut().zip(&row) {
                        *x -= &q * y;
                    }
                }
            }
        }
    }
}

fn nonzero_tail(v: &[i64], n: usize) -> bool {
    v[n..].iter().any(|&x| x != 0)
}

fn extend(
    p: &FpPresentation,
    q: &NilpotentQuotient,
    c: usize,
    limits: &NqLimits,
) -> Result<NilpotentQuotient, NilpotentError> {
    let g = &q.group;
    let n = g.ngens();
    let w = g.weights();
    let r = g.relative_orders();
    let defs = g.definitions();
    let pres = g.presentation();

    let mut sources: Vec<(u8, TailSource)> = Vec::new();
    for (i, &ri) in r.iter().enumerate() {
        if ri > 0 && !defs.contains(&Definition::Power { base: i }) {
            sources.push((0, TailSource::Power(i)));
        }
    }
    for j in 0..p.ngens() {
        if !defs.contains(&Definition::Image { generator: j }) {
            sources.push((if c == 0 { 3 } else { 1 }, TailSource::Image(j)));
        }
    }
    for k in 0..n {
        for i in 0..k {
            if w[k] + w[i] > c + 1 || defs.contains(&Definition::Commutator { left: k, right: i }) {
                continue;
            }
            let rank = match (w[k] + w[i] == c + 1, w[i] == 1) {
                (false, _) => 1,
                (true, false) => 2,
                (true, true) => 3,
            };
            sources.push((rank, TailSource::Commutator(k, i)));
        }
    }
    sources.sort();
    let sources: Vec<TailSource> = sources.into_iter().map(|(_, s)| s).collect();
    let s = sources.len();
    if n + s > 4 * limits.max_generators {
        return Err(NilpotentError::ResourceCap(format!(
            "{s} tails on {n} generators exceed the generator cap {}",
            limits.max_generators
        )));
    }
    let tail_of: BTreeMap<TailSource, usize> = sources.iter().enumerate().map(|(t, &src)| (src, n + t)).collect();

    // the covering presentation
    let mut powers = Vec::new();
    for (i, &ri) in r.iter().enumerate() {
        if ri == 0 {
            continue;
        }
        let mut rhs = pres
            .powers
            .iter()
            .find(|pr| pr.generator == i)
            .map(|pr| pr.rhs.clone())
            .unwrap_or_default();
        if let Some(&t) = tail_of.get(&TailSource::Power(i)) {
            rhs.push((t, 1));
        }
        if !rhs.is_empty() {
            powers.push(PowerRelation { generator: i, rhs });
        }
    }
    let mut comm_rhs: BTreeMap<(usize, usize), Vec<(usize, i64)>> = pres
        .commutators
        .iter()
        .map(|cr| ((cr.left, cr.right), cr.rhs.clone()))
        .collect();
    for (src, &t) in &tail_of {
        if let TailSource::Commutator(k, i) = *src {
            comm_rhs.entry((k, i)).or_default().push((t, 1));
        }
    }
    let cover = PcGroup::new(PcPresentation {
        class: c + 1,
        weights: w.iter().copied().chain(std::iter::repeat_n(c + 1, s)).collect(),
        relative_orders: r.iter().copied().chain(std::iter::repeat_n(0, s)).collect(),
        definitions: defs.iter().copied().chain(std::iter::repeat_n(Definition::Given, s)).collect(),
        powers,
        commutators: comm_rhs
            .into_iter()
            .map(|((left, right), rhs)| CommutatorRelation { left, right, rhs })
            .collect(),
    })?;
    let images: Vec<Vec<i64>> = q
        .generator_images
        .iter()
        .enumerate()
        .map(|(j, img)| {
            let mut v = img.clone();
            v.resize(n + s, 0);
            if let Some(&t) = tail_of.get(&TailSource::Image(j)) {
                v[t] = 1;
            }
            v
        })
        .collect();

    // relations among the tails
    let mut ech = Echelon::default();
    for (name, lhs, rhs) in cover.consistency_pairs(c + 1) {
        if lhs[..n] != rhs[..n] {
            return Err(NilpotentError::Inconsistent {
                class: c,
                detail: format!("overlap {name} disagrees below the new layer"),
            });
        }
        let diff: Vec<i64> = lhs[n..].iter().zip(&rhs[n..]).map(|(a, b)| a - b).collect();
        ech.insert(to_big(&diff));
    }
    for rel in p.relators() {
        let v = cover.evaluate(rel.letters(), &images);
        let length: u64 = v.iter().map(|x| x.unsigned_abs()).sum();
        if length > limits.max_collected_length {
            return Err(NilpotentError::ResourceCap(format!(
                "collected relator {} has length {length}, above the cap {}",
                p.format_word(rel),
                limits.max_collected_length
            )));
        }
        if v[..n].iter().any(|&x| x != 0) {
            return Err(NilpotentError::Inconsistent {
                class: c,
                detail: format!("relator {} is not trivial in the previous quotient", p.format_word(rel)),
            });
        }
        if nonzero_tail(&v, n) {
            ech.insert(to_big(&v[n..]));
        }
    }
    ech.reduce();

    // survivors and the expression of every tail in them
    let survivors: Vec<usize> = (0..s)
        .filter(|t| ech.rows.get(t).is_none_or(|row| row[*t] != BigInt::from(1)))
        .collect();
    let m = survivors.len();
    if n + m > limits.max_generators {
        return Err(NilpotentError::ResourceCap(format!(
            "{} pc generators exceed the cap {}",
            n + m,
            limits.max_generators
        )));
    }
    let pos: BTreeMap<usize, usize> = survivors.iter().enumerate().map(|(k, &t)| (t, k)).collect();
    let orders: Vec<BigInt> = survivors
        .iter()
        .map(|t| ech.rows.get(t).map_or_else(BigInt::zero, |row| row[*t].clone()))
        .collect();
    let project = |row: &[BigInt], from: usize| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); m];
        for (t, x) in row.iter().enumerate().skip(from + 1) {
            if let Some(&k) = pos.get(&t) {
                out[k] = -x;
            }
        }
        out
    };
    let mut layer_powers: Vec<Vec<BigInt>> = vec![Vec::new(); m];
    for k in (0..m).rev() {
        if orders[k].is_zero() {
            continue;
        }
        let raw = project(&ech.rows[&survivors[k]], survivors[k]);
        layer_powers[k] = normalize_layer(raw, &orders, &layer_powers);
    }
    let expr: Vec<Vec<BigInt>> = (0..s)
        .map(|t| match pos.get(&t) {
            Some(&k) => {
                let mut v = vec![BigInt::zero(); m];
                v[k] = BigInt::from(1);
                v
            }
            None => normalize_layer(project(&ech.rows[&t], t), &orders, &layer_powers),
        })
        .collect();
    let small = |x: &BigInt| -> Result<i64, NilpotentError> {
        x.to_i64()
            .ok_or_else(|| NilpotentError::ResourceCap(format!("layer coefficient {x} exceeds 64 bits")))
    };
    let layer_syllables = |v: &[BigInt]| -> Result<Vec<(usize, i64)>, NilpotentError> {
        let mut out = Vec::new();
        for (k, x) in v.iter().enumerate() {
            if !x.is_zero() {
                out.push((n + k, small(x)?));
            }
        }
        Ok(out)
    };
    // substitute tails in the covering relations
    let substitute = |rhs: &[(usize, i64)]| -> Result<Vec<(usize, i64)>, NilpotentError> {
        let mut old: Vec<(usize, i64)> = rhs.iter().copied().filter(|&(g, _)| g < n).collect();
        let mut acc = vec![BigInt::zero(); m];
        for &(gen, e) in rhs.iter().filter(|&&(g, _)| g >= n) {
            for (a, x) in acc.iter_mut().zip(&expr[gen - n]) {
                *a += x * e;
            }
        }
        let acc = normalize_layer(acc, &orders, &layer_powers);
        old.extend(layer_syllables(&acc)?);
        Ok(old)
    };
    let cover_pres = cover.presentation();
    let mut new_powers = Vec::new();
    for pr in &cover_pres.powers {
        let rhs = substitute(&pr.rhs)?;
        if !rhs.is_empty() {
            new_powers.push(PowerRelation {
                generator: pr.generator,
                rhs,
            });
        }
    }
    for (k, lp) in layer_powers.iter().enumerate() {
        if !orders[k].is_zero() {
            let rhs = layer_syllables(lp)?;
            if !rhs.is_empty() {
                new_powers.push(PowerRelation { generator: n + k, rhs });
            }
        }
    }
    let mut new_comms = Vec::new();
    for cr in &cover_pres.commutators {
        let rhs = substitute(&cr.rhs)?;
        if !rhs.is_empty() {
            new_comms.push(CommutatorRelation {
                left: cr.left,
                right: cr.right,
                rhs,
            });
        }
    }
    let mut relative_orders = r.to_vec();
    for o in &orders {
        relative_orders.push(small(o)?);
    }
    let mut definitions = defs.to_vec();
    definitions.extend(survivors.iter().map(|&t| sources[t].definition()));
    let group = PcGroup::new(PcPresentation {
        class: c + 1,
        weights: w.iter().copied().chain(std::iter::repeat_n(c + 1, m)).collect(),
        relative_orders,
        definitions,
        powers: new_powers,
        commutators: new_comms,
    })?;
    let generator_images = images
        .iter()
        .map(|img| {
            let sub = substitute(&dense_to_sparse(img))?;
            Ok(group.sparse_to_dense(&sub))
        })
        .collect::<Result<Vec<_>, NilpotentError>>()?;

    let failures = group.consistency_failures();
    if let Some(f) = failures.first() {
        return Err(NilpotentError::Inconsistent {
            class: c + 1,
            detail: format!("{} failing overlaps, first {f}", failures.len()),
        });
    }
    Ok(NilpotentQuotient {
        group,
        generator_images,
    })
}

/// Reduces a vector over the new layer against the relative orders, pushing
/// carries through the power relations (which only involve later entries).
fn normalize_layer(mut v: Vec<BigInt>, orders: &[BigInt], powers: &[Vec<BigInt>]) -> Vec<BigInt> {
    for k in 0..v.len() {
        if orders[k].is_zero() {
            continue;
        }
        let (q, rem) = v[k].div_mod_floor(&orders[k]);
        v[k] = rem;
        if !q.is_zero() {
            for (j, x) in powers[k].iter().enumerate() {
                if !x.is_zero() {
                    v[j] += &q * x;
                }
            }
        }
    }
    v
}
