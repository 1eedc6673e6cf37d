//! Cross-module oracle suites, deterministic for a given seed.

use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::abelian::FgAbelianGroup;
use crate::functors::{functor_apply, gamma2_oracle, FunctorName};
use crate::milnor::{braid_closure, mu_bar, BraidWord};
use crate::nilpotent::{build_tower, lemma22_decompose, FpPresentation};
use crate::words::{hall_basis, magnus_expand, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: usize,
    pub total: usize,
    /// Descriptions of the first few failures.
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            passed: 0,
            total: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.failures.len() < 5 {
            self.failures.push(what());
        }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::ok)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            let mark = if s.ok() { "pass" } else { "FAIL" };
            writeln!(f, "{mark} {:<24} {}/{}", s.name, s.passed, s.total)?;
            for msg in &s.failures {
                writeln!(f, "     {msg}")?;
            }
        }
        Ok(())
    }
}

/// Every abelian group of order at most `n`, once per isomorphism type.
pub fn abelian_groups_up_to(n: u64) -> Vec<FgAbelianGroup> {
    fn extend(prefix: &mut Vec<u64>, product: u64, n: u64, out: &mut Vec<FgAbelianGroup>) {
        let orders: Vec<BigInt> = prefix.iter().map(|&d| BigInt::from(d)).collect();
        out.push(FgAbelianGroup::new(0, orders).expect("divisibility chain"));
        let last = prefix.last().copied().unwrap_or(1);
        let mut d = if prefix.is_empty() { 2 } else { last };
        while product * d <= n {
            prefix.push(d);
            extend(prefix, product * d, n, out);
            prefix.pop();
            d += last;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, n, &mut out);
    out
}

/// Number of basic commutators of weight `n` on `r` generators,
/// `(1/n) Σ_{d | n} μ(d) r^{n/d}`.
pub fn necklace_count(r: u64, n: u64) -> u64 {
    fn mobius(mut d: u64) -> i64 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= d {
            if d.is_multiple_of(p) {
                d /= p;
                if d.is_multiple_of(p) {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if d > 1 {
            sign = -sign;
        }
        sign
    }
    let total: i128 = (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| mobius(d) as i128 * (r as i128).pow((n / d) as u32))
        .sum();
    (total / n as i128) as u64
}

/// Random reduced word with up to `max_len` syllables of exponent in
/// `-2..=2`.
pub fn random_word<R: Rng>(rng: &mut R, alphabet: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let e = if rng.gen_bool(0.5) { rng.gen_range(1..=2) } else { -rng.gen_range(1..=2) };
            (rng.gen_range(0..alphabet), e)
        })
        .collect();
    Word::from_letters(alphabet, letters).reduce()
}

/// Random braid on 2 or 3 strands with up to `max_len` letters.
pub fn random_braid<R: Rng>(rng: &mut R, max_len: usize) -> BraidWord {
    let strands = rng.gen_range(2..=3usize);
    let len = rng.gen_range(0..=max_len);
    let word = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::new(strands, word).expect("letters in range")
}

fn gamma2_suite() -> SuiteResult {
    let mut s = SuiteResult::new("gamma2 oracle");
    for a in abelian_groups_up_to(16) {
        let formula = functor_apply(FunctorName::Gamma2, &a);
        let oracle = gamma2_oracle(&a, 16);
        let ok = oracle.as_ref() == Ok(&formula);
        s.record(ok, || format!("{a}: formula {formula}, oracle {oracle:?}"));
    }
    s
}

fn hall_suite() -> SuiteResult {
    let mut s = SuiteResult::new("hall basis counts");
    for r in 1..=4usize {
        let basis = hall_basis(r, 8);
        for (k, layer) in basis.iter().enumerate() {
            let expected = necklace_count(r as u64, k as u64 + 1);
            s.record(layer.len() as u64 == expected, || {
                format!("rank {r} weight {}: {} basic commutators, expected {expected}", k + 1, layer.len())
            });
        }
    }
    s
}

fn magnus_suite(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut s = SuiteResult::new("magnus homomorphism");
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let d = rng.gen_range(1..=5);
        let u = random_word(rng, n, 6);
        let v = random_word(rng, n, 6);
        let ok = magnus_expand(&u.product(&v), d) == magnus_expand(&u, d).mul(&magnus_expand(&v, d));
        s.record(ok, || format!("{u} * {v} at degree {d}"));
    }
    s
}

fn decomposition_suite(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut s = SuiteResult::new("commutator decomposition");
    let cases = [(FpPresentation::infinite_dihedral(), 10, 50), (FpPresentation::free(2), 8, 10)];
    for (p, depth, count) in cases {
        let tower = match build_tower(&p, depth) {
            Ok(t) => t,
            Err(e) => {
                s.record(false, || format!("tower of depth {depth}: {e}"));
                continue;
            }
        };
        let xs: Vec<usize> = (0..p.ngens()).collect();
        for _ in 0..count {
            let a = tower.random_commutator_element(rng, 3);
            let ok = lemma22_decompose(&tower, &a, &xs).is_ok_and(|d| d.verify(&tower, &a));
            s.record(ok, || format!("depth {depth}: {:?}", a.components.last()));
        }
    }
    s
}

fn linking_suite(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut s = SuiteResult::new("linking numbers");
    for _ in 0..20 {
        let b = random_braid(rng, 8);
        let link = braid_closure(&b);
        let oracle = b.crossing_linking_matrix();
        let comps = b.components();
        let position = |c: usize| comps.iter().position(|x| x.contains(&link.components[c][0])).expect("same strands");
        let mut ok = true;
        for i in 0..link.num_components() {
            for j in 0..link.num_components() {
                if i == j {
                    continue;
                }
                let mu = mu_bar(&link, &[j + 1, i + 1]).expect("valid index");
                ok &= mu.value == BigInt::from(oracle[position(i)][position(j)]);
            }
        }
        s.record(ok, || format!("braid {b} on {} strands", b.strands()));
    }
    s
}

/// Runs every suite. Random inputs come from a ChaCha stream seeded with
/// `seed`; the other suites do not depend on it.
pub fn selftest(seed: u64) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SelftestReport {
        seed,
        suites: vec![
            gamma2_suite(),
            hall_suite(),
            magnus_suite(&mut rng),
            decomposition_suite(&mut rng),
            linking_suite(&mut rng),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_enumeration() {
        let groups = abelian_groups_up_to(16);
        assert_eq!(groups.len(), 25);
        let of_order = |n: u64| groups.iter().filter(|g| g.order() == Some(BigInt::from(n))).count();
        assert_eq!(of_order(8), 3);
        assert_eq!(of_order(16), 5);
        assert_eq!(of_order(12), 2);
    }

    #[test]
    fn necklace_values() {
        let r2: Vec<u64> = (1..=8).map(|n| necklace_count(2, n)).collect();
        assert_eq!(r2, vec![2, 1, 2, 3, 6, 9, 18, 30]);
        assert_eq!(necklace_count(3, 2), 3);
        assert_eq!(necklace_count(4, 8), 8160);
    }
}
