//! Homology of finite cyclic groups with coefficients in a finitely generated
//! abelian group, E² pages of split extensions `A ⋊ C_m`, and the assembly of
//! those pages into `H_*(A ⋊ C_m)` where the page forces the answer.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{homology_at, AbMap, FgAbelianGroup, IntMatrix};
use crate::functors::{functor_map, FunctorName};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("the cyclic group order must be at least 1")]
    ZeroOrder,
    #[error("the action must be an endomorphism of the underlying group")]
    NotEndomorphism,
    #[error("the action does not satisfy t^{m} = 1")]
    WrongOrder { m: u64 },
}

/// `ℤ[C_m]`-module: an abelian group with an automorphism `t` of order
/// dividing `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicModule {
    m: u64,
    underlying: FgAbelianGroup,
    action: AbMap,
}

impl CyclicModule {
    pub fn new(m: u64, action: AbMap) -> Result<Self, HomologyError> {
        if m == 0 {
            return Err(HomologyError::ZeroOrder);
        }
        if action.domain() != action.codomain() {
            return Err(HomologyError::NotEndomorphism);
        }
        let underlying = action.domain().clone();
        if !power(&action, m).is_identity() {
            return Err(HomologyError::WrongOrder { m });
        }
        Ok(Self {
            m,
            underlying,
            action,
        })
    }

    /// `a` with the trivial action.
    pub fn trivial(m: u64, a: &FgAbelianGroup) -> Self {
        Self::new(m, AbMap::identity(a)).expect("identity has every order")
    }

    /// `ℤ` on which the generator acts by `-1` (`m` must be even).
    pub fn sign(m: u64) -> Result<Self, HomologyError> {
        Self::new(m, AbMap::scalar(&FgAbelianGroup::free(1), -1))
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn underlying(&self) -> &FgAbelianGroup {
        &self.underlying
    }

    pub fn action(&self) -> &AbMap {
        &self.action
    }
}

fn power(t: &AbMap, k: u64) -> AbMap {
    let mut out = AbMap::identity(t.domain());
    for _ in 0..k {
        out = t.compose(&out).expect("endomorphism");
    }
    out
}

fn endo(a: &FgAbelianGroup, m: IntMatrix) -> AbMap {
    AbMap::new(a.clone(), a.clone(), m).expect("endomorphism of a")
}

fn add_matrix(x: &mut IntMatrix, y: &IntMatrix) {
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            x[(i, j)] += &y[(i, j)];
        }
    }
}

/// `H_0 … H_{p_max}` of `C_m` with coefficients in `module`, from the
/// periodic resolution with differentials alternating between `t - 1` and the
/// norm `1 + t + … + t^{m-1}`.
pub fn cyclic_homology(module: &CyclicModule, p_max: usize) -> Vec<FgAbelianGroup> {
    let a = &module.underlying;
    let n = a.ngens();

    let mut t_minus_one = module.action.matrix().clone();
    for i in 0..n {
        t_minus_one[(i, i)] -= 1;
    }
    let t_minus_one = endo(a, t_minus_one);

    let mut norm = IntMatrix::zeros(n, n);
    let mut tk = AbMap::identity(a);
    for _ in 0..module.m {
        add_matrix(&mut norm, tk.matrix());
        tk = module.action.compose(&tk).expect("endomorphism");
    }
    let norm = endo(a, norm);

    // d_p : C_p → C_{p-1}; d_0 is the zero map to 0.
    let to_zero = AbMap::zero(a, &FgAbelianGroup::trivial());
    let d = |p: usize| if p % 2 == 1 { &t_minus_one } else { &norm };
    (0..=p_max)
        .map(|p| {
            let outgoing = if p == 0 { &to_zero } else { d(p) };
            homology_at(d(p + 1), outgoing).expect("periodic resolution is a complex")
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    Computed,
    NotComputed,
    Symbolic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Cell {
    pub p: usize,
    pub q: usize,
    pub group: Option<FgAbelianGroup>,
    pub status: CellStatus,
    pub note: String,
}

/// `E²_{p,q}` for `0 ≤ p ≤ p_max`, `0 ≤ q ≤ q_max`. When `rows_vanish_above`
/// is `Some(r)`, every row `q > r` is known to be zero, including rows past
/// `q_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Page {
    pub p_max: usize,
    pub q_max: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows_vanish_above: Option<usize>,
    pub cells: Vec<E2Cell>,
}

impl E2Page {
    pub fn cell(&self, p: usize, q: usize) -> Option<&E2Cell> {
        (p <= self.p_max && q <= self.q_max).then(|| &self.cells[q * (self.p_max + 1) + p])
    }

    fn cell_mut(&mut self, p: usize, q: usize) -> &mut E2Cell {
        assert!(p <= self.p_max && q <= self.q_max, "cell ({p},{q}) outside the page");
        &mut self.cells[q * (self.p_max + 1) + p]
    }

    /// Replaces an entry by a placeholder that has no finitely generated
    /// value.
    pub fn set_symbolic(&mut self, p: usize, q: usize, note: impl Into<String>) {
        let c = self.cell_mut(p, q);
        c.group = None;
        c.status = CellStatus::Symbolic;
        c.note = note.into();
    }

    pub fn set_group(&mut self, p: usize, q: usize, group: FgAbelianGroup, note: impl Into<String>) {
        let c = self.cell_mut(p, q);
        c.group = Some(group);
        c.status = CellStatus::Computed;
        c.note = note.into();
    }

    /// All-zero page of the given size.
    pub fn zero(p_max: usize, q_max: usize) -> Self {
        let mut cells = Vec::with_capacity((p_max + 1) * (q_max + 1));
        for q in 0..=q_max {
            for p in 0..=p_max {
                cells.push(E2Cell {
                    p,
                    q,
                    group: Some(FgAbelianGroup::trivial()),
                    status: CellStatus::Computed,
                    note: String::new(),
                });
            }
        }
        Self {
            p_max,
            q_max,
            rows_vanish_above: None,
            cells,
        }
    }

    /// Known value of `E²_{p,q}`, `None` when it is unknown.
    fn entry(&self, p: usize, q: usize) -> Option<FgAbelianGroup> {
        if self.row_vanishes(q) {
            return Some(FgAbelianGroup::trivial());
        }
        self.cell(p, q).and_then(|c| c.group.clone())
    }

    fn row_vanishes(&self, q: usize) -> bool {
        self.rows_vanish_above.is_some_and(|r| q > r)
    }
}

impl fmt::Display for E2Page {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in (0..=self.q_max).rev() {
            write!(f, "q={q:<2}|")?;
            for p in 0..=self.p_max {
                let c = self.cell(p, q).expect("inside page");
                let s = match (&c.group, c.status) {
                    (Some(g), _) => g.to_string(),
                    (None, CellStatus::Symbolic) => "*".to_string(),
                    (None, _) => "?".to_string(),
                };
                write!(f, " {s:>8}")?;
            }
            writeln!(f)?;
        }
        write!(f, "     ")?;
        for p in 0..=self.p_max {
            write!(f, " {:>8}", format!("p={p}"))?;
        }
        Ok(())
    }
}

/// E² page `H_p(C_m; H_q(A))` of the split extension `A ⋊ C_m`, where the
/// generator of `C_m` acts on `A` by `t`.
///
/// `H_q(A)` is taken to be `Λ^q A` with the induced action. That holds for
/// `q ≤ 2` and for free `A`; other cells are marked not computed.
pub fn lhs_e2_split(
    a: &FgAbelianGroup,
    t: &AbMap,
    m: u64,
    p_max: usize,
    q_max: usize,
) -> Result<E2Page, HomologyError> {
    let base = CyclicModule::new(m, t.clone())?;
    if base.underlying != *a {
        return Err(HomologyError::NotEndomorphism);
    }
    let free = a.torsion().is_empty();
    let rows: Vec<Option<Vec<FgAbelianGroup>>> = (0..=q_max)
        .into_par_iter()
        .map(|q| {
            let module = match q {
                0 => CyclicModule::trivial(m, &FgAbelianGroup::free(1)),
                1 => base.clone(),
                _ if q == 2 || free => {
                    let tq = functor_map(FunctorName::Exterior(q), t);
                    CyclicModule::new(m, tq).expect("functor preserves t^m = 1")
                }
                _ => return None,
            };
            Some(cyclic_homology(&module, p_max))
        })
        .collect();

    let mut page = E2Page::zero(p_max, q_max);
    page.rows_vanish_above = free.then_some(a.free_rank());
    for (q, row) in rows.into_iter().enumerate() {
        let coeff = match q {
            0 => "Z".to_string(),
            1 => "A".to_string(),
            _ => format!("ext^{q} A"),
        };
        match row {
            Some(groups) => {
                for (p, g) in groups.into_iter().enumerate() {
                    page.set_group(p, q, g, format!("H_{p}(C_{m}; {coeff})"));
                }
            }
            None => {
                for p in 0..=p_max {
                    let c = page.cell_mut(p, q);
                    c.group = None;
                    c.status = CellStatus::NotComputed;
                    c.note = format!("not computed: H_{q}(A) differs from ext^{q} A when A has torsion");
                }
            }
        }
    }
    Ok(page)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnresolvedDegree {
    pub degree: usize,
    /// Nonzero or unknown cells on the antidiagonal.
    pub entries: Vec<(usize, usize)>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbiguityReport {
    /// `H_i` where it is determined, `None` otherwise.
    pub partial: Vec<Option<FgAbelianGroup>>,
    pub unresolved: Vec<UnresolvedDegree>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Assembly {
    Determined { homology: Vec<FgAbelianGroup> },
    Ambiguous(AmbiguityReport),
}

impl Assembly {
    pub fn determined(&self) -> Option<&[FgAbelianGroup]> {
        match self {
            Assembly::Determined { homology } => Some(homology),
            Assembly::Ambiguous(_) => None,
        }
    }
}

fn coprime_finite(x: &FgAbelianGroup, y: &FgAbelianGroup) -> bool {
    match (x.order(), y.order()) {
        (Some(a), Some(b)) => a.gcd(&b).is_one(),
        _ => false,
    }
}

/// Whether `d_r : E^r_{src} → E^r_{tgt}` is forced to vanish by the E² data
/// and the splitting of the extension.
fn forced_zero(page: &E2Page, src: (usize, usize), tgt: (usize, usize), r: usize) -> bool {
    // A section of the quotient makes the bottom row survive untouched.
    if src.1 == 0 {
        return true;
    }
    let s = page.entry(src.0, src.1);
    let t = page.entry(tgt.0, tgt.1);
    if s.as_ref().is_some_and(FgAbelianGroup::is_trivial) || t.as_ref().is_some_and(FgAbelianGroup::is_trivial) {
        return true;
    }
    let (Some(s), Some(t)) = (s, t) else {
        return false;
    };
    if coprime_finite(&s, &t) {
        return true;
    }
    // Later pages may acquire torsion in the target, so this only works for d₂.
    r == 2 && s.is_finite() && t.torsion().is_empty()
}

/// Reads `H_0 … H_{i_max}` of the split extension off the page when the page
/// determines it: every differential touching a nonzero entry is forced to
/// vanish, the bottom row splits off, and the remaining filtration quotients
/// extend trivially (free quotient or coprime orders). Anything else is
/// reported rather than guessed.
pub fn assemble_homology(page: &E2Page, i_max: usize) -> Assembly {
    let mut partial = Vec::with_capacity(i_max + 1);
    let mut unresolved = Vec::new();
    for i in 0..=i_max {
        match assemble_degree(page, i) {
            Ok(g) => partial.push(Some(g)),
            Err((entries, reason)) => {
                partial.push(None);
                unresolved.push(UnresolvedDegree {
                    degree: i,
                    entries,
                    reason,
                });
            }
        }
    }
    if unresolved.is_empty() {
        Assembly::Determined {
            homology: partial.into_iter().map(Option::unwrap).collect(),
        }
    } else {
        Assembly::Ambiguous(AmbiguityReport { partial, unresolved })
    }
}

type Unresolved = (Vec<(usize, usize)>, String);

fn assemble_degree(page: &E2Page, i: usize) -> Result<FgAbelianGroup, Unresolved> {
    let mut unknown = Vec::new();
    let mut nonzero = Vec::new();
    for q in (0..=i).rev() {
        let p = i - q;
        match page.entry(p, q) {
            None => unknown.push((p, q)),
            Some(g) if !g.is_trivial() => nonzero.push((p, q, g)),
            Some(_) => {}
        }
    }
    if !unknown.is_empty() {
        let mut all: Vec<_> = unknown.clone();
        all.extend(nonzero.iter().map(|&(p, q, _)| (p, q)));
        all.sort_unstable();
        return Err((all, format!("unknown E2 entries at {unknown:?}")));
    }
    let positions: Vec<(usize, usize)> = nonzero.iter().map(|&(p, q, _)| (p, q)).collect();

    for &(p, q, _) in &nonzero {
        for r in 2..=p {
            let tgt = (p - r, q + r - 1);
            if !forced_zero(page, (p, q), tgt, r) {
                return Err((positions, format!("d{r} from {:?} to {tgt:?} may be nonzero", (p, q))));
            }
        }
        for r in 2..=q + 1 {
            let src = (p + r, q + 1 - r);
            if !forced_zero(page, src, (p, q), r) {
                return Err((positions, format!("d{r} from {src:?} to {:?} may be nonzero", (p, q))));
            }
        }
    }

    // Filtration F_0 ⊆ F_1 ⊆ … with F_p/F_{p-1} = E_{p, i-p}; the bottom row
    // is a direct summand, the rest is glued from p = 0 upwards.
    let mut bottom = FgAbelianGroup::trivial();
    let mut filtered = FgAbelianGroup::trivial();
    for (p, q, g) in nonzero {
        if q == 0 {
            bottom = g;
            continue;
        }
        let splits = filtered.is_trivial() || g.torsion().is_empty() || coprime_finite(&filtered, &g);
        if !splits {
            return Err((
                positions,
                format!("extension of {g} at ({p},{q}) by {filtered} is not forced to split"),
            ));
        }
        filtered = filtered.direct_sum(&g);
    }
    Ok(filtered.direct_sum(&bottom))
}

/// Orders of `H_1 … H_{2k}` multiplied with alternating signs, as a
/// rational `(numerator, denominator)` pair; `None` if any is infinite.
pub fn periodic_euler_ratio(h: &[FgAbelianGroup]) -> Option<(BigInt, BigInt)> {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (p, g) in h.iter().enumerate().skip(1) {
        let o = g.order()?;
        if p % 2 == 1 {
            num *= o;
        } else {
            den *= o;
        }
    }
    Some((num, den))
}
