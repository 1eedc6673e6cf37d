//! Weighted polycyclic presentations and collection.
//!
//! Generators `a₀, …, a_{n−1}` carry weights `w₀ ≤ w₁ ≤ …`; elements are
//! exponent vectors of the normal form `a₀^{e₀} ⋯ a_{n−1}^{e_{n−1}}` with
//! `0 ≤ eᵢ < rᵢ` whenever the relative order `rᵢ` is finite (stored as 0
//! when infinite). Relations:
//!
//! * `aᵢ^{rᵢ} = (normal form in generators of index > i)`
//! * `[aₖ, aᵢ] = (normal form in generators of index > k)` for `k > i`,
//!   with `[x, y] = x⁻¹ y⁻¹ x y`.
//!
//! Multiplication is collection from the left: to multiply a normal form
//! `P · aᵢ^{vᵢ} · T` by `aᵢ^e`, the tail `T` is conjugated past `aᵢ^e`
//! generator by generator, the exponent of `aᵢ` is reduced against its
//! relative order, and the pieces are collected recursively in the subgroup
//! generated by `a_{i+1}, …`.

#![allow(clippy::needless_range_loop)]

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::NilpotentError;

/// Exponents up to this size are collected one step at a time.
const SMALL_EXPONENT: u64 = 4;

/// Sparse normal form: `(generator, exponent)` in increasing generator order.
pub type Syllables = Vec<(usize, i64)>;

/// How a pc generator was introduced by the nilpotent quotient algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Definition {
    /// Image of a generator of the finitely presented group.
    Image { generator: usize },
    /// Tail of the relation `[a_left, a_right]`.
    Commutator { left: usize, right: usize },
    /// Tail of the power relation of `a_base`.
    Power { base: usize },
    /// Supplied directly, not produced by the quotient algorithm.
    Given,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerRelation {
    pub generator: usize,
    pub rhs: Syllables,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorRelation {
    pub left: usize,
    pub right: usize,
    pub rhs: Syllables,
}

/// Raw presentation data, also the JSON form of a [`PcGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcPresentation {
    pub class: usize,
    pub weights: Vec<usize>,
    pub relative_orders: Vec<i64>,
    pub definitions: Vec<Definition>,
    /// Nontrivial power relations only.
    pub powers: Vec<PowerRelation>,
    /// Nontrivial commutator relations only (`left > right`).
    pub commutators: Vec<CommutatorRelation>,
}

/// A polycyclic presentation with precomputed conjugation tables.
#[derive(Clone, Debug)]
pub struct PcGroup {
    pres: PcPresentation,
    n: usize,
    power: Vec<Option<Syllables>>,
    power_inv: Vec<Option<Syllables>>,
    // indexed k * n + i for k > i; sign 0 is conjugation by aᵢ, sign 1 by aᵢ⁻¹;
    // `conj` holds aₖ^{aᵢ^±1}, `conj_inv` its inverse. `None` means aₖ is fixed.
    conj: [Vec<Option<Syllables>>; 2],
    conj_inv: [Vec<Option<Syllables>>; 2],
}

pub(crate) fn dense_to_sparse(v: &[i64]) -> Syllables {
    v.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| (i, e)).collect()
}

impl PcGroup {
    pub fn trivial() -> Self {
        Self::new(PcPresentation {
            class: 0,
            weights: Vec::new(),
            relative_orders: Vec::new(),
            definitions: Vec::new(),
            powers: Vec::new(),
            commutators: Vec::new(),
        })
        .expect("trivial presentation")
    }

    /// Builds the collector. Checks the shape of the data (weights sorted,
    /// right-hand sides in range and normalized); consistency is a separate
    /// question, see [`PcGroup::consistency_failures`].
    pub fn new(pres: PcPresentation) -> Result<Self, NilpotentError> {
        let n = pres.weights.len();
        let bad = |msg: String| Err(NilpotentError::MalformedPresentation(msg));
        if pres.relative_orders.len() != n || pres.definitions.len() != n {
            return bad("weights, relative orders and definitions differ in length".into());
        }
        if pres.weights.windows(2).any(|w| w[0] > w[1]) {
            return bad("weights must be non-decreasing".into());
        }
        if pres.relative_orders.iter().any(|&r| r < 0 || r == 1) {
            return bad("relative orders must be 0 (infinite) or at least 2".into());
        }
        let check_rhs = |rhs: &Syllables, after: usize| -> Result<(), NilpotentError> {
            let mut prev = after;
            for &(g, e) in rhs {
                if g <= prev || g >= n || e == 0 {
                    return Err(NilpotentError::MalformedPresentation(format!(
                        "right-hand side {rhs:?} is not a normal form beyond generator {after}"
                    )));
                }
                let r = pres.relative_orders[g];
                if r > 0 && !(0..r).contains(&e) {
                    return Err(NilpotentError::MalformedPresentation(format!(
                        "exponent {e} of generator {g} outside [0, {r})"
                    )));
                }
                prev = g;
            }
            Ok(())
        };
        let mut power = vec![None; n];
        for p in &pres.powers {
            if p.generator >= n || pres.relative_orders[p.generator] == 0 {
                return bad(format!("power relation for generator {} of infinite order", p.generator));
            }
            check_rhs(&p.rhs, p.generator)?;
            if !p.rhs.is_empty() {
                power[p.generator] = Some(p.rhs.clone());
            }
        }
        let mut comm = vec![None; n * n];
        for c in &pres.commutators {
            if c.left >= n || c.right >= c.left {
                return bad(format!("commutator relation [{}, {}] needs left > right", c.left, c.right));
            }
            check_rhs(&c.rhs, c.left)?;
            if !c.rhs.is_empty() {
                comm[c.left * n + c.right] = Some(c.rhs.clone());
            }
        }
        let mut g = PcGroup {
            pres,
            n,
            power,
            power_inv: vec![None; n],
            conj: [vec![None; n * n], vec![None; n * n]],
            conj_inv: [vec![None; n * n], vec![None; n * n]],
        };
        for (idx, c) in comm.iter().enumerate() {
            if let Some(c) = c {
                let k = idx / n;
                let mut v = g.sparse_to_dense(c);
                v[k] = 1;
                g.conj[0][idx] = Some(dense_to_sparse(&v));
            }
        }
        // tables for aᵢ only involve generators above i: fill from the top
        for i in (0..n).rev() {
            if let Some(p) = g.power[i].clone() {
                let inv = g.inverse(&g.sparse_to_dense(&p));
                g.power_inv[i] = Some(dense_to_sparse(&inv));
            }
            for k in (i + 1..n).rev() {
                let idx = k * n + i;
                let Some(c) = comm[idx].clone() else { continue };
                let pos = g.sparse_to_dense(g.conj[0][idx].as_ref().expect("set above"));
                g.conj_inv[0][idx] = Some(dense_to_sparse(&g.inverse(&pos)));
                // aᵢ aₖ aᵢ⁻¹ = aₖ · ψ([aₖ, aᵢ]⁻¹) with ψ conjugation by aᵢ⁻¹,
                // which is already tabulated on the generators above k
                let cinv = g.inverse(&g.sparse_to_dense(&c));
                let mut y = g.conjugate_dense(&cinv, i, -1);
                y[k] += 1;
                g.conj_inv[1][idx] = Some(dense_to_sparse(&g.inverse(&y)));
                g.conj[1][idx] = Some(dense_to_sparse(&y));
            }
        }
        Ok(g)
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.pres
    }

    pub fn ngens(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> usize {
        self.pres.class
    }

    pub fn weights(&self) -> &[usize] {
        &self.pres.weights
    }

    pub fn relative_orders(&self) -> &[i64] {
        &self.pres.relative_orders
    }

    pub fn definitions(&self) -> &[Definition] {
        &self.pres.definitions
    }

    /// Number of generators of each weight `1..=class`.
    pub fn layer_sizes(&self) -> Vec<usize> {
        (1..=self.class())
            .map(|k| self.pres.weights.iter().filter(|&&w| w == k).count())
            .collect()
    }

    /// Generators of weight `k`, as an index range.
    pub fn layer(&self, k: usize) -> std::ops::Range<usize> {
        let start = self.pres.weights.partition_point(|&w| w < k);
        let end = self.pres.weights.partition_point(|&w| w <= k);
        start..end
    }

    pub fn is_finite(&self) -> bool {
        self.pres.relative_orders.iter().all(|&r| r > 0)
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.pres.relative_orders.iter().fold(BigInt::one(), |acc, &r| acc * r))
    }

    /// Hirsch length: the number of infinite relative orders.
    pub fn hirsch_length(&self) -> usize {
        self.pres.relative_orders.iter().filter(|&&r| r == 0).count()
    }

    pub fn identity(&self) -> Vec<i64> {
        vec![0; self.n]
    }

    pub fn generator(&self, i: usize) -> Vec<i64> {
        let mut v = self.identity();
        v[i] = 1;
        v
    }

    pub fn is_identity(&self, v: &[i64]) -> bool {
        v.iter().all(|&e| e == 0)
    }

    pub fn is_normal_form(&self, v: &[i64]) -> bool {
        v.len() == self.n
            && v
                .iter()
                .zip(&self.pres.relative_orders)
                .all(|(&e, &r)| r == 0 || (0..r).contains(&e))
    }

    pub fn sparse_to_dense(&self, s: &[(usize, i64)]) -> Vec<i64> {
        let mut v = self.identity();
        for &(g, e) in s {
            v[g] += e;
        }
        v
    }

    fn table(&self, k: usize, i: usize, sign: usize, inverse: bool) -> Option<&Syllables> {
        let t = if inverse { &self.conj_inv[sign] } else { &self.conj[sign] };
        t[k * self.n + i].as_ref()
    }

    /// Replaces `v` by `v · aᵢ^e`.
    pub fn mul_gen(&self, v: &mut [i64], i: usize, e: i64) {
        if e == 0 {
            return;
        }
        let n = self.n;
        let sign = usize::from(e < 0);
        let moves = (i + 1..n).any(|k| v[k] != 0 && self.conj[sign][k * n + i].is_some());
        let mut tail: Option<Vec<i64>> = None;
        if moves {
            let mut t = vec![0i64; n];
            t[i + 1..].copy_from_slice(&v[i + 1..]);
            tail = Some(self.conjugate_power(&t, i, e));
        }
        let r = self.pres.relative_orders[i];
        let s = v[i].checked_add(e).expect("collector exponent overflow");
        let (q, s) = if r > 0 { s.div_mod_floor(&r) } else { (0, s) };
        let power = match q.signum() {
            0 => None,
            1 => self.power[i].as_ref(),
            _ => self.power_inv[i].as_ref(),
        };
        if tail.is_none() && power.is_none() {
            v[i] = s;
            return;
        }
        let mut acc = vec![0i64; n];
        if let Some(p) = power {
            self.mul_syllables_pow(&mut acc, p, q.unsigned_abs());
        }
        let t = tail.unwrap_or_else(|| {
            let mut t = vec![0i64; n];
            t[i + 1..].copy_from_slice(&v[i + 1..]);
            t
        });
        self.mul_dense(&mut acc, &t);
        v[i] = s;
        v[i + 1..].copy_from_slice(&acc[i + 1..]);
    }

    fn mul_syllables(&self, acc: &mut [i64], s: &[(usize, i64)]) {
        for &(g, e) in s {
            self.mul_gen(acc, g, e);
        }
    }

    /// `acc ← acc · s^k`, by repeated squaring once `k` is large.
    fn mul_syllables_pow(&self, acc: &mut [i64], s: &[(usize, i64)], k: u64) {
        if k <= SMALL_EXPONENT {
            for _ in 0..k {
                self.mul_syllables(acc, s);
            }
            return;
        }
        let base = self.sparse_to_dense(s);
        let p = self.pow(&base, i64::try_from(k).expect("collector exponent overflow"));
        self.mul_dense(acc, &p);
    }

    /// `aᵢ^{-e} t aᵢ^e` for `t` supported above `i`. Large `e` are handled by
    /// squaring the conjugation automorphism, kept as the images of the
    /// generators above `i`.
    fn conjugate_power(&self, t: &[i64], i: usize, e: i64) -> Vec<i64> {
        let sign = e.signum();
        let mut k = e.unsigned_abs();
        if k <= SMALL_EXPONENT {
            let mut t = t.to_vec();
            for _ in 0..k {
                t = self.conjugate_dense(&t, i, sign);
            }
            return t;
        }
        let n = self.n;
        let apply = |images: &[Vec<i64>], t: &[i64]| -> Vec<i64> {
            let mut acc = vec![0i64; n];
            for j in i + 1..n {
                if t[j] != 0 {
                    let p = self.pow(&images[j - i - 1], t[j]);
                    self.mul_dense(&mut acc, &p);
                }
            }
            acc
        };
        let mut images: Vec<Vec<i64>> = (i + 1..n).map(|j| self.conjugate_dense(&self.generator(j), i, sign)).collect();
        let mut out = t.to_vec();
        loop {
            if k & 1 == 1 {
                out = apply(&images, &out);
            }
            k >>= 1;
            if k == 0 {
                return out;
            }
            images = images.iter().map(|img| apply(&images, img)).collect();
        }
    }

    /// `acc ← acc · w` for `w` in normal form.
    fn mul_dense(&self, acc: &mut [i64], w: &[i64]) {
        for (g, &e) in w.iter().enumerate() {
            if e != 0 {
                self.mul_gen(acc, g, e);
            }
        }
    }

    /// Image of `t` (supported above `i`) under conjugation by `aᵢ^sign`.
    fn conjugate_dense(&self, t: &[i64], i: usize, sign: i64) -> Vec<i64> {
        let s = usize::from(sign < 0);
        let mut acc = vec![0i64; self.n];
        for k in i + 1..self.n {
            let e = t[k];
            if e == 0 {
                continue;
            }
            match self.table(k, i, s, e < 0) {
                None => self.mul_gen(&mut acc, k, e),
                Some(img) => self.mul_syllables_pow(&mut acc, img, e.unsigned_abs()),
            }
        }
        acc
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut v = a.to_vec();
        self.mul_dense(&mut v, b);
        v
    }

    pub fn inverse(&self, a: &[i64]) -> Vec<i64> {
        let mut v = self.identity();
        for i in (0..self.n).rev() {
            if a[i] != 0 {
                self.mul_gen(&mut v, i, -a[i]);
            }
        }
        v
    }

    pub fn pow(&self, a: &[i64], e: i64) -> Vec<i64> {
        let mut base = if e < 0 { self.inverse(a) } else { a.to_vec() };
        let mut out = self.identity();
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                out = self.mul(&out, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        out
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&self.inverse(&ba), &ab)
    }

    /// Evaluates a word whose generator `j` maps to `images[j]`.
    pub fn evaluate(&self, letters: &[(usize, i64)], images: &[Vec<i64>]) -> Vec<i64> {
        let mut v = self.identity();
        for &(g, e) in letters {
            let p = self.pow(&images[g], e);
            self.mul_dense(&mut v, &p);
        }
        v
    }

    /// Order of an element of a finite group.
    pub fn element_order(&self, v: &[i64]) -> Option<BigInt> {
        let order = self.order()?;
        let mut primes = Vec::new();
        for &r in &self.pres.relative_orders {
            let mut r = r;
            let mut p = 2;
            while r > 1 {
                if r % p == 0 {
                    if !primes.contains(&p) {
                        primes.push(p);
                    }
                    r /= p;
                } else {
                    p += 1;
                }
            }
        }
        let power_is_one = |d: &BigInt| -> bool {
            let e = d.to_i64().expect("element order fits in 64 bits");
            self.is_identity(&self.pow(v, e))
        };
        let mut d = order;
        for p in primes {
            let p = BigInt::from(p);
            while d.is_multiple_of(&p) && power_is_one(&(&d / &p)) {
                d /= &p;
            }
        }
        Some(d)
    }

    /// Truncation to the generators of weight `≤ c`: the presentation of
    /// the quotient by the generators of weight `> c`.
    pub fn truncate(&self, c: usize) -> PcGroup {
        let m = self.pres.weights.partition_point(|&w| w <= c);
        let cut = |s: &Syllables| -> Syllables { s.iter().copied().filter(|&(g, _)| g < m).collect() };
        let pres = PcPresentation {
            class: c.min(self.pres.class),
            weights: self.pres.weights[..m].to_vec(),
            relative_orders: self.pres.relative_orders[..m].to_vec(),
            definitions: self.pres.definitions[..m].to_vec(),
            powers: self
                .pres
                .powers
                .iter()
                .filter(|p| p.generator < m)
                .map(|p| PowerRelation {
                    generator: p.generator,
                    rhs: cut(&p.rhs),
                })
                .filter(|p| !p.rhs.is_empty())
                .collect(),
            commutators: self
                .pres
                .commutators
                .iter()
                .filter(|c| c.left < m)
                .map(|c| CommutatorRelation {
                    left: c.left,
                    right: c.right,
                    rhs: cut(&c.rhs),
                })
                .filter(|c| !c.rhs.is_empty())
                .collect(),
        };
        PcGroup::new(pres).expect("truncation of a valid presentation")
    }

    /// The overlap checks of the rewriting system, as pairs of normal forms
    /// that agree exactly when the presentation is consistent. Checks whose
    /// generator weights sum beyond `weight_bound` are skipped.
    pub(crate) fn consistency_pairs(&self, weight_bound: usize) -> Vec<(String, Vec<i64>, Vec<i64>)> {
        let n = self.n;
        let w = &self.pres.weights;
        let r = &self.pres.relative_orders;
        let e = |i: usize, k: i64| {
            let mut v = self.identity();
            v[i] = k;
            v
        };
        let power_nf = |i: usize| self.sparse_to_dense(self.power[i].as_deref().unwrap_or(&[]));
        let mut out = Vec::new();
        for k in 0..n {
            for j in 0..k {
                if w[k] + w[j] > weight_bound {
                    continue;
                }
                for i in 0..j {
                    if w[k] + w[j] + w[i] > weight_bound {
                        continue;
                    }
                    let mut lhs = self.mul(&e(k, 1), &e(j, 1));
                    self.mul_gen(&mut lhs, i, 1);
                    let rhs = self.mul(&e(k, 1), &self.mul(&e(j, 1), &e(i, 1)));
                    out.push((format!("a{k} a{j} a{i}"), lhs, rhs));
                }
            }
        }
        for j in 0..n {
            for i in 0..j {
                if w[j] + w[i] > weight_bound {
                    continue;
                }
                if r[j] > 0 {
                    let lhs = self.mul(&power_nf(j), &e(i, 1));
                    let rhs = self.mul(&e(j, r[j] - 1), &self.mul(&e(j, 1), &e(i, 1)));
                    out.push((format!("a{j}^{} a{i}", r[j]), lhs, rhs));
                } else {
                    let lhs = self.mul(&e(j, -1), &self.mul(&e(j, 1), &e(i, 1)));
                    out.push((format!("a{j}^-1 a{j} a{i}"), lhs, e(i, 1)));
                }
                if r[i] > 0 {
                    let mut lhs = self.mul(&e(j, 1), &e(i, r[i] - 1));
                    self.mul_gen(&mut lhs, i, 1);
                    let rhs = self.mul(&e(j, 1), &power_nf(i));
                    out.push((format!("a{j} a{i}^{}", r[i]), lhs, rhs));
                } else {
                    let mut lhs = self.mul(&e(j, 1), &e(i, -1));
                    self.mul_gen(&mut lhs, i, 1);
                    out.push((format!("a{j} a{i}^-1 a{i}"), lhs, e(j, 1)));
                    if r[j] == 0 {
                        let mut lhs = self.mul(&e(j, -1), &e(i, -1));
                        self.mul_gen(&mut lhs, i, 1);
                        out.push((format!("a{j}^-1 a{i}^-1 a{i}"), lhs, e(j, -1)));
                    }
                }
            }
        }
        for i in 0..n {
            if r[i] > 0 {
                let lhs = self.mul(&e(i, 1), &power_nf(i));
                let rhs = self.mul(&power_nf(i), &e(i, 1));
                out.push((format!("a{i}^{}+1", r[i]), lhs, rhs));
            }
        }
        out
    }

    /// True when every relation respects the weights: power relations of
    /// `aᵢ` only involve weights above `wᵢ`, commutator relations of
    /// `[aₖ, aᵢ]` only weights `≥ wₖ + wᵢ`, and no weight exceeds the class.
    pub fn is_weighted(&self) -> bool {
        let w = &self.pres.weights;
        w.iter().all(|&x| x <= self.pres.class)
            && self.pres.powers.iter().all(|p| p.rhs.iter().all(|&(g, _)| w[g] > w[p.generator]))
            && self
                .pres
                .commutators
                .iter()
                .all(|c| c.rhs.iter().all(|&(g, _)| w[g] >= w[c.left] + w[c.right]))
    }

    /// Descriptions of failing overlap checks (empty when consistent). For a
    /// weighted presentation of class `c` only overlaps of total weight at
    /// most `c` can fail; otherwise every overlap is tested.
    pub fn consistency_failures(&self) -> Vec<String> {
        let bound = if self.is_weighted() { self.pres.class } else { usize::MAX / 4 };
        self.consistency_pairs(bound)
            .into_iter()
            .filter(|(_, l, r)| l != r)
            .map(|(name, l, r)| format!("{name}: {l:?} != {r:?}"))
            .collect()
    }

    pub fn is_consistent(&self) -> bool {
        self.consistency_failures().is_empty()
    }

    /// Readable label of each generator built from its definition.
    pub fn labels(&self, names: &[char]) -> Vec<String> {
        let mut out: Vec<String> = Vec::with_capacity(self.n);
        for (i, d) in self.pres.definitions.iter().enumerate() {
            let l = match *d {
                Definition::Image { generator } => names
                    .get(generator)
                    .map_or_else(|| format!("x{generator}"), char::to_string),
                Definition::Commutator { left, right } => format!("[{},{}]", out[left], out[right]),
                Definition::Power { base } => format!("{}^{}", out[base], self.pres.relative_orders[base]),
                Definition::Given => format!("g{i}"),
            };
            out.push(l);
        }
        out
    }
}

impl fmt::Display for PcGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<char> = ('a'..='z').collect();
        let labels = self.labels(&names);
        let show = |s: &Syllables| -> String {
            if s.is_empty() {
                return "1".into();
            }
            s.iter()
                .map(|&(g, e)| if e == 1 { format!("g{g}") } else { format!("g{g}^{e}") })
                .collect::<Vec<_>>()
                .join("*")
        };
        writeln!(f, "class {} pc presentation on {} generators", self.pres.class, self.n)?;
        for i in 0..self.n {
            let r = self.pres.relative_orders[i];
            let order = if r == 0 { "inf".to_string() } else { r.to_string() };
            writeln!(f, "  g{i} = {}  weight {}  relative order {order}", labels[i], self.pres.weights[i])?;
        }
        for p in &self.pres.powers {
            writeln!(f, "  g{}^{} = {}", p.generator, self.pres.relative_orders[p.generator], show(&p.rhs))?;
        }
        for c in &self.pres.commutators {
            writeln!(f, "  [g{},g{}] = {}", c.left, c.right, show(&c.rhs))?;
        }
        Ok(())
    }
}

impl Serialize for PcGroup {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.pres.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PcGroup {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pres = PcPresentation::deserialize(deserializer)?;
        PcGroup::new(pres).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Dihedral group of order 8: g0 = a, g1 = b, g2 = b², all of order 2,
    /// with [b, a] = b².
    fn d8() -> PcGroup {
        PcGroup::new(PcPresentation {
            class: 2,
            weights: vec![1, 1, 2],
            relative_orders: vec![2, 2, 2],
            definitions: vec![Definition::Given; 3],
            powers: vec![PowerRelation {
                generator: 1,
                rhs: vec![(2, 1)],
            }],
            commutators: vec![CommutatorRelation {
                left: 1,
                right: 0,
                rhs: vec![(2, 1)],
            }],
        })
        .unwrap()
    }

    /// Heisenberg group: [y, x] = z, everything infinite.
    fn heisenberg() -> PcGroup {
        PcGroup::new(PcPresentation {
            class: 2,
            weights: vec![1, 1, 2],
            relative_orders: vec![0, 0, 0],
            definitions: vec![Definition::Given; 3],
            powers: vec![],
            commutators: vec![CommutatorRelation {
                left: 1,
                right: 0,
                rhs: vec![(2, 1)],
            }],
        })
        .unwrap()
    }

    /// Integer upper unitriangular 3×3 matrices, the oracle for the
    /// Heisenberg collector.
    fn matrix_of(v: &[i64]) -> [[i64; 3]; 3] {
        let mul = |a: [[i64; 3]; 3], b: [[i64; 3]; 3]| {
            let mut c = [[0i64; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        c[i][j] += a[i][k] * b[k][j];
                    }
                }
            }
            c
        };
        let unit = |i: usize, j: usize, e: i64| {
            let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
            m[i][j] = e;
            m
        };
        // with x = E12 and y = E23 one gets y⁻¹x⁻¹yx = E13⁻¹
        let x = unit(0, 1, v[0]);
        let y = unit(1, 2, v[1]);
        let z = unit(0, 2, -v[2]);
        mul(mul(x, y), z)
    }

    #[test]
    fn heisenberg_matches_matrices() {
        let g = heisenberg();
        // the pc relation must hold for the chosen matrices
        let commut = |a: [[i64; 3]; 3], b: [[i64; 3]; 3]| {
            let inv = |m: [[i64; 3]; 3]| {
                let (a, b, c) = (m[0][1], m[1][2], m[0][2]);
                [[1, -a, a * b - c], [0, 1, -b], [0, 0, 1]]
            };
            let mul = |p: [[i64; 3]; 3], q: [[i64; 3]; 3]| {
                let mut r = [[0i64; 3]; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        for k in 0..3 {
                            r[i][j] += p[i][k] * q[k][j];
                        }
                    }
                }
                r
            };
            mul(mul(mul(inv(a), inv(b)), a), b)
        };
        assert_eq!(commut(matrix_of(&[0, 1, 0]), matrix_of(&[1, 0, 0])), matrix_of(&[0, 0, 1]));
        let samples = [[1, 2, 3], [-2, 1, 0], [0, -3, 5], [4, 4, -1], [-1, -1, -1]];
        for a in samples {
            for b in samples {
                let prod = g.mul(&a, &b);
                let ma = matrix_of(&a);
                let mb = matrix_of(&b);
                let mut mm = [[0i64; 3]; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        for k in 0..3 {
                            mm[i][j] += ma[i][k] * mb[k][j];
                        }
                    }
                }
                assert_eq!(matrix_of(&prod), mm, "{a:?} * {b:?}");
            }
        }
        assert!(g.is_consistent());
    }

    #[test]
    fn dihedral_group_of_order_8() {
        let g = d8();
        assert!(g.is_consistent(), "{:?}", g.consistency_failures());
        assert_eq!(g.order(), Some(BigInt::from(8)));
        let b = g.generator(1);
        let a = g.generator(0);
        assert_eq!(g.element_order(&b), Some(BigInt::from(4)));
        assert_eq!(g.element_order(&a), Some(BigInt::from(2)));
        // a⁻¹ b a = b⁻¹
        let conj = g.mul(&g.inverse(&a), &g.mul(&b, &a));
        assert_eq!(conj, g.inverse(&b));
        let mut seen = std::collections::BTreeSet::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    seen.insert(g.mul(&g.mul(&g.pow(&a, x), &g.pow(&b, y)), &g.pow(&g.generator(2), z)));
                }
            }
        }
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn inconsistent_presentation_is_detected() {
        // a of order 2 with [b, a] = c central and infinite: conjugating b by
        // a² gives b c², so the order of a cannot be 2
        let g = PcGroup::new(PcPresentation {
            class: 2,
            weights: vec![1, 1, 2],
            relative_orders: vec![2, 0, 0],
            definitions: vec![Definition::Given; 3],
            powers: vec![],
            commutators: vec![CommutatorRelation {
                left: 1,
                right: 0,
                rhs: vec![(2, 1)],
            }],
        })
        .unwrap();
        assert!(!g.is_consistent());
    }

    #[test]
    fn truncation_and_json() {
        let g = d8();
        let t = g.truncate(1);
        assert_eq!(t.order(), Some(BigInt::from(4)));
        assert!(t.is_consistent());
        let j = serde_json::to_string(&g).unwrap();
        let back: PcGroup = serde_json::from_str(&j).unwrap();
        assert_eq!(back.presentation(), g.presentation());
    }

    #[test]
    fn malformed_rhs_rejected() {
        let r = PcGroup::new(PcPresentation {
            class: 1,
            weights: vec![1, 1],
            relative_orders: vec![2, 2],
            definitions: vec![Definition::Given; 2],
            powers: vec![PowerRelation {
                generator: 1,
                rhs: vec![(0, 1)],
            }],
            commutators: vec![],
        });
        assert!(r.is_err());
    }
}
