//! Tensor square, exterior powers, symmetric square and Whitehead's
//! quadratic functor Γ² on finitely generated abelian groups, with induced
//! maps, plus a brute-force presentation of Γ² from its defining relations.
//!
//! Every functor is evaluated through an explicit presentation built on the
//! canonical generators `g₀ … g_{n−1}` of the input group:
//!
//! | functor | presentation basis | order of a basis element |
//! |---------|--------------------|--------------------------|
//! | `A ⊗ A` | `gᵢ ⊗ gⱼ`, all `(i, j)` | `gcd(oᵢ, oⱼ)` |
//! | `Λᵏ A`  | `g_{i₁} ∧ … ∧ g_{iₖ}`, `i₁ < … < iₖ` | `gcd(o_{i₁}, …)` |
//! | `Sym² A`| `gᵢ gⱼ`, `i ≤ j` | `oᵢ` on the diagonal, `gcd` off it |
//! | `Γ² A`  | `γ(gᵢ)` then `[gᵢ, gⱼ]` (`i < j`, lexicographic) | `oᵢ`, doubled when even; `gcd` |
//!
//! where `oᵢ` is the order of `gᵢ` (0 for infinite) and
//! `[x, y] = γ(x + y) − γ(x) − γ(y)`. The canonical form of the result and
//! the matrices of induced maps are obtained by pushing through the Smith
//! change of basis of that presentation.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::abelian::{canonical_quotient, AbMap, CanonicalQuotient, FgAbelianGroup, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctorName {
    TensorSquare,
    Exterior(usize),
    Sym2,
    Gamma2,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("unknown functor {0:?} (expected tensor2, ext:k, sym2 or gamma2)")]
    UnknownName(String),
    #[error("exterior degree must be at least 1")]
    ExteriorDegree,
    #[error("the Γ² oracle needs a finite group")]
    InfiniteGroup,
    #[error("group of order {order} exceeds the oracle bound {bound}")]
    TooLarge { order: BigInt, bound: usize },
}

impl fmt::Display for FunctorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorName::TensorSquare => write!(f, "tensor2"),
            FunctorName::Exterior(k) => write!(f, "ext:{k}"),
            FunctorName::Sym2 => write!(f, "sym2"),
            FunctorName::Gamma2 => write!(f, "gamma2"),
        }
    }
}

impl FromStr for FunctorName {
    type Err = FunctorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "tensor2" => Ok(FunctorName::TensorSquare),
            "sym2" => Ok(FunctorName::Sym2),
            "gamma2" => Ok(FunctorName::Gamma2),
            other => {
                let k = other
                    .strip_prefix("ext:")
                    .and_then(|k| k.parse::<usize>().ok())
                    .ok_or_else(|| FunctorError::UnknownName(other.to_string()))?;
                if k == 0 {
                    return Err(FunctorError::ExteriorDegree);
                }
                Ok(FunctorName::Exterior(k))
            }
        }
    }
}

impl Serialize for FunctorName {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FunctorName {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite-dimensional `ℚ`-vector space, carried by its dimension only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalSpace {
    #[serde(rename = "q_dim")]
    pub dim: u64,
}

impl RationalSpace {
    pub fn new(dim: u64) -> Self {
        Self { dim }
    }
}

fn gcd0(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

fn gamma_diagonal_order(o: &BigInt) -> BigInt {
    if o.is_even() {
        o * 2
    } else {
        o.clone()
    }
}

/// Index of the cross term `[gᵢ, gⱼ]`, `i < j`, among the `n(n−1)/2` pairs.
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

fn sym_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // rows of the upper triangle including the diagonal
    i * (2 * n - i + 1) / 2 + (j - i)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Orders of the presentation basis of `F(A)` on canonical generators.
fn presentation_orders(functor: FunctorName, orders: &[BigInt]) -> Vec<BigInt> {
    let n = orders.len();
    match functor {
        FunctorName::TensorSquare => {
            let mut out = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    out.push(gcd0(&orders[i], &orders[j]));
                }
            }
            out
        }
        FunctorName::Exterior(k) => subsets(n, k)
            .iter()
            .map(|s| s.iter().fold(BigInt::zero(), |acc, &i| gcd0(&acc, &orders[i])))
            .collect(),
        FunctorName::Sym2 => {
            let mut out = Vec::with_capacity(n * (n + 1) / 2);
            for i in 0..n {
                for j in i..n {
                    out.push(if i == j {
                        orders[i].clone()
                    } else {
                        gcd0(&orders[i], &orders[j])
                    });
                }
            }
            out
        }
        FunctorName::Gamma2 => {
            let mut out: Vec<BigInt> = orders.iter().map(gamma_diagonal_order).collect();
            for i in 0..n {
                for j in i + 1..n {
                    out.push(gcd0(&orders[i], &orders[j]));
                }
            }
            out
        }
    }
}

fn quotient_of(orders: &[BigInt]) -> CanonicalQuotient {
    let n = orders.len();
    let mut rel = IntMatrix::zeros(n, n);
    for (i, d) in orders.iter().enumerate() {
        rel[(i, i)] = d.clone();
    }
    canonical_quotient(&rel, true)
}

/// `F(A)` in canonical form.
pub fn functor_apply(functor: FunctorName, a: &FgAbelianGroup) -> FgAbelianGroup {
    quotient_of(&presentation_orders(functor, &a.generator_orders())).group
}

/// Matrix of `F(f)` between the presentation bases of `F(A)` and `F(B)`.
fn presentation_matrix(functor: FunctorName, a: &IntMatrix) -> IntMatrix {
    let nb = a.rows();
    let na = a.cols();
    match functor {
        FunctorName::TensorSquare => {
            let mut m = IntMatrix::zeros(nb * nb, na * na);
            for i in 0..na {
                for j in 0..na {
                    for k in 0..nb {
                        if a[(k, i)].is_zero() {
                            continue;
                        }
                        for l in 0..nb {
                            m[(k * nb + l, i * na + j)] += &a[(k, i)] * &a[(l, j)];
                        }
                    }
                }
            }
            m
        }
        FunctorName::Exterior(k) => {
            let src = subsets(na, k);
            let dst = subsets(nb, k);
            let mut m = IntMatrix::zeros(dst.len(), src.len());
            for (c, s) in src.iter().enumerate() {
                for (r, t) in dst.iter().enumerate() {
                    m[(r, c)] = a.select_rows(t).select_columns(s).determinant();
                }
            }
            m
        }
        FunctorName::Sym2 => {
            let mut m = IntMatrix::zeros(nb * (nb + 1) / 2, na * (na + 1) / 2);
            for i in 0..na {
                for j in i..na {
                    let col = sym_index(na, i, j);
                    for k in 0..nb {
                        for l in 0..nb {
                            m[(sym_index(nb, k, l), col)] += &a[(k, i)] * &a[(l, j)];
                        }
                    }
                }
            }
            m
        }
        FunctorName::Gamma2 => {
            let rows = nb + nb * nb.saturating_sub(1) / 2;
            let cols = na + na * na.saturating_sub(1) / 2;
            let mut m = IntMatrix::zeros(rows, cols);
            // γ(Σ c_k h_k) = Σ c_k² γ(h_k) + Σ_{k<l} c_k c_l [h_k, h_l]
            for i in 0..na {
                for k in 0..nb {
                    m[(k, i)] += &a[(k, i)] * &a[(k, i)];
                    for l in k + 1..nb {
                        m[(nb + pair_index(nb, k, l), i)] += &a[(k, i)] * &a[(l, i)];
                    }
                }
            }
            // [x, y] is symmetric bilinear with [h, h] = 2γ(h)
            for i in 0..na {
                for j in i + 1..na {
                    let col = na + pair_index(na, i, j);
                    for k in 0..nb {
                        for l in 0..nb {
                            let c = &a[(k, i)] * &a[(l, j)];
                            if c.is_zero() {
                                continue;
                            }
                            if k == l {
                                m[(k, col)] += c * 2;
                            } else {
                                let (p, q) = if k < l { (k, l) } else { (l, k) };
                                m[(nb + pair_index(nb, p, q), col)] += c;
                            }
                        }
                    }
                }
            }
            m
        }
    }
}

/// The induced homomorphism `F(f): F(A) → F(B)`.
pub fn functor_map(functor: FunctorName, f: &AbMap) -> AbMap {
    let qa = quotient_of(&presentation_orders(functor, &f.domain().generator_orders()));
    let qb = quotient_of(&presentation_orders(functor, &f.codomain().generator_orders()));
    let pres = presentation_matrix(functor, f.matrix());
    let section = qa.section.expect("section requested");
    let m = &(&qb.projection * &pres) * &section;
    AbMap::new(qa.group, qb.group, m).expect("induced map respects torsion")
}

/// Γ²(A) presented literally: one generator `γ(x)` per element `x` of `A`,
/// modulo `γ(−x) = γ(x)` and the three-variable cocycle relation, over all
/// elements. Finite groups of order at most `element_bound` only.
pub fn gamma2_oracle(a: &FgAbelianGroup, element_bound: usize) -> Result<FgAbelianGroup, FunctorError> {
    let order = a.order().ok_or(FunctorError::InfiniteGroup)?;
    if order.to_usize().is_none_or(|o| o > element_bound) {
        return Err(FunctorError::TooLarge {
            order,
            bound: element_bound,
        });
    }
    let elements = a.elements().expect("finite group");
    let n = elements.len();
    let index = |v: &[BigInt]| -> usize {
        elements
            .binary_search_by(|e| e.as_slice().cmp(v))
            .expect("element enumeration is sorted and complete")
    };
    let add = |x: &[BigInt], y: &[BigInt]| -> Vec<BigInt> {
        let mut s: Vec<BigInt> = x.iter().zip(y).map(|(p, q)| p + q).collect();
        a.normalize(&mut s);
        s
    };
    let neg = |x: &[BigInt]| -> Vec<BigInt> {
        let mut s: Vec<BigInt> = x.iter().map(|p| -p).collect();
        a.normalize(&mut s);
        s
    };

    let mut relations: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut push = |terms: &[(usize, i64)]| {
        let mut v = vec![0i64; n];
        for &(i, c) in terms {
            v[i] += c;
        }
        if v.iter().any(|&c| c != 0) {
            relations.insert(v);
        }
    };
    for (i, x) in elements.iter().enumerate() {
        push(&[(index(&neg(x)), 1), (i, -1)]);
    }
    for i in 0..n {
        for j in i..n {
            let xy = add(&elements[i], &elements[j]);
            for k in j..n {
                let yz = add(&elements[j], &elements[k]);
                let xz = add(&elements[i], &elements[k]);
                let xyz = add(&xy, &elements[k]);
                push(&[
                    (index(&xyz), 1),
                    (index(&xy), -1),
                    (index(&yz), -1),
                    (index(&xz), -1),
                    (i, 1),
                    (j, 1),
                    (k, 1),
                ]);
            }
        }
    }
    let cols: Vec<Vec<BigInt>> = relations
        .into_iter()
        .map(|v| v.into_iter().map(BigInt::from).collect())
        .collect();
    Ok(FgAbelianGroup::from_relations(&IntMatrix::from_columns(n, &cols)))
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `ℚ`-dimension of `F(V)`.
pub fn rational_dim(functor: FunctorName, v: RationalSpace) -> u64 {
    let d = v.dim;
    match functor {
        FunctorName::TensorSquare => d * d,
        FunctorName::Exterior(k) => binomial(d, k as u64),
        FunctorName::Sym2 | FunctorName::Gamma2 => d * (d + 1) / 2,
    }
}
