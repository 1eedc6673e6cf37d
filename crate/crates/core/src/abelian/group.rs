use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::smith::{smith_reduce, Track};
use super::{AbelianError, IntMatrix};

/// Finitely generated abelian group `ℤ/d₁ ⊕ … ⊕ ℤ/d_t ⊕ ℤ^r` in
/// invariant-factor form: every `dᵢ ≥ 2` and `dᵢ | dᵢ₊₁`.
///
/// Canonical generators are ordered torsion first (in the order of
/// `torsion`), then the free generators. Every matrix in this crate that
/// refers to a group's generators uses that order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        let n: BigInt = n.into();
        if n.is_zero() {
            Self::free(1)
        } else {
            Self::from_invariants(0, &[n.abs()])
        }
    }

    /// Validated constructor for an already-canonical description.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self, AbelianError> {
        for d in &torsion {
            if d < &BigInt::from(2) {
                return Err(AbelianError::InvalidTorsion(d.clone()));
            }
        }
        for w in torsion.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(AbelianError::InvalidTorsion(w[1].clone()));
            }
        }
        Ok(Self { free_rank, torsion })
    }

    /// Canonical form of `ℤ^free_rank ⊕ ⊕ ℤ/orders[i]` for arbitrary orders
    /// (zeros count as free summands, ±1 as trivial ones).
    pub fn from_invariants(free_rank: usize, orders: &[BigInt]) -> Self {
        let n = orders.len();
        let mut rel = IntMatrix::zeros(n, n);
        for (i, d) in orders.iter().enumerate() {
            rel[(i, i)] = d.clone();
        }
        let mut g = Self::from_relations(&rel);
        g.free_rank += free_rank;
        g
    }

    /// Cokernel of `M`: the quotient of `ℤ^rows` by the span of the columns.
    pub fn from_relations(m: &IntMatrix) -> Self {
        canonical_quotient(m, false).group
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Number of canonical generators.
    pub fn ngens(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Order of the i-th canonical generator; zero for free generators.
    pub fn generator_order(&self, i: usize) -> BigInt {
        self.torsion.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn generator_orders(&self) -> Vec<BigInt> {
        (0..self.ngens()).map(|i| self.generator_order(i)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(BigInt::one(), |acc, d| acc * d))
    }

    /// Exponent of the torsion part (1 for torsion-free groups).
    pub fn torsion_exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let orders: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        Self::from_invariants(self.free_rank + other.free_rank, &orders)
    }

    /// Reduces a coordinate vector to canonical representatives
    /// (torsion coordinates into `[0, d)`).
    pub fn normalize(&self, v: &mut [BigInt]) {
        for (x, d) in v.iter_mut().zip(&self.torsion) {
            *x = x.mod_floor(d);
        }
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        v.iter().enumerate().all(|(i, x)| match self.torsion.get(i) {
            Some(d) => x.is_multiple_of(d),
            None => x.is_zero(),
        })
    }

    /// Enumerates all elements of a finite group in canonical coordinates.
    pub fn elements(&self) -> Option<Vec<Vec<BigInt>>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for d in &self.torsion {
            let d = d.to_u64()?;
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(BigInt::from(x));
                        p
                    })
                })
                .collect();
        }
        Some(out)
    }

    /// `ℚ`-dimension of `A ⊗ ℚ`.
    pub fn rational_rank(&self) -> usize {
        self.free_rank
    }
}

/// A group obtained as `ℤ^n / L` together with the change of coordinates.
#[derive(Clone, Debug)]
pub struct CanonicalQuotient {
    pub group: FgAbelianGroup,
    /// `ngens × n`: presentation coordinates → canonical coordinates.
    pub projection: IntMatrix,
    /// `n × ngens`: a lift of each canonical generator (present only when
    /// requested).
    pub section: Option<IntMatrix>,
}

/// Canonical form of the cokernel of `m` (`rows` generators, one relation per
/// column).
pub fn canonical_quotient(m: &IntMatrix, with_section: bool) -> CanonicalQuotient {
    let n = m.rows();
    let w = smith_reduce(
        m,
        Track {
            u: true,
            u_inv: with_section,
            v: false,
        },
    );
    let u = w.u.expect("tracked");
    let mut torsion_idx = Vec::new();
    let mut torsion = Vec::new();
    let mut free_idx = Vec::new();
    for i in 0..n {
        let d = if i < w.rank {
            w.d[(i, i)].clone()
        } else {
            BigInt::zero()
        };
        if d.is_zero() {
            free_idx.push(i);
        } else if !d.is_one() {
            torsion_idx.push(i);
            torsion.push(d);
        }
    }
    let keep: Vec<usize> = torsion_idx.iter().chain(&free_idx).copied().collect();
    let mut projection = u.select_rows(&keep);
    for (r, d) in torsion.iter().enumerate() {
        for j in 0..n {
            projection[(r, j)] = projection[(r, j)].mod_floor(d);
        }
    }
    let section = w.u_inv.map(|ui| ui.select_columns(&keep));
    CanonicalQuotient {
        group: FgAbelianGroup {
            free_rank: free_idx.len(),
            torsion,
        },
        projection,
        section,
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Parses sums such as `"Z/2 + Z/6 + Z^2"` or `"0"`; cyclic orders need not
/// form a divisibility chain.
impl std::str::FromStr for FgAbelianGroup {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut free = 0usize;
        let mut orders = Vec::new();
        for part in s.split(['+', ',']) {
            let part: String = part.chars().filter(|c| !c.is_whitespace()).collect();
            let bad = || format!("cannot read group summand {part:?}");
            match part.as_str() {
                "0" | "1" => {}
                "Z" => free += 1,
                p => {
                    if let Some(r) = p.strip_prefix("Z^") {
                        free += r.parse::<usize>().map_err(|_| bad())?;
                    } else if let Some(d) = p.strip_prefix("Z/") {
                        let d: BigInt = d.parse().map_err(|_| bad())?;
                        if d.is_zero() || d.is_negative() {
                            return Err(bad());
                        }
                        orders.push(d);
                    } else {
                        return Err(bad());
                    }
                }
            }
        }
        Ok(Self::from_invariants(free, &orders))
    }
}

impl fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbelianGroup({self})")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Num(u64),
    Str(String),
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    free_rank: usize,
    torsion: Vec<IntRepr>,
}

impl Serialize for FgAbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GroupRepr {
            free_rank: self.free_rank,
            torsion: self
                .torsion
                .iter()
                .map(|d| match d.to_u64() {
                    Some(x) => IntRepr::Num(x),
                    None => IntRepr::Str(d.to_string()),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FgAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = GroupRepr::deserialize(deserializer)?;
        let torsion = repr
            .torsion
            .into_iter()
            .map(|t| match t {
                IntRepr::Num(x) => Ok(BigInt::from(x)),
                IntRepr::Str(s) => s
                    .parse::<BigInt>()
                    .map_err(|_| D::Error::custom(format!("invalid torsion entry {s:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        FgAbelianGroup::new(repr.free_rank, torsion).map_err(D::Error::custom)
    }
}
