//! Towers `G/γ₂ ← G/γ₃ ← ⋯ ← G/γ_{c+1}` of nilpotent quotients, elements of
//! the truncated inverse limit, and the decomposition of an element of the
//! commutator subgroup as a product `[g₁, x₁] ⋯ [g_n, x_n]`.
//!
//! Level `c` (1-based) is the class-`c` quotient `G/γ_{c+1}(G)`. All levels
//! come from one run of the quotient algorithm, so the pc generators of
//! level `c` are the first generators of level `c + 1` and projection is
//! truncation of exponent vectors.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::nq::{quotient_series, FpPresentation, NilpotentQuotient, NqLimits};
use super::pc::PcGroup;
use super::NilpotentError;
use crate::abelian::{solve_integer, FgAbelianGroup, IntMatrix};
use crate::words::Word;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Tower {
    pub base: FpPresentation,
    pub levels: Vec<NilpotentQuotient>,
}

/// One normal form per level, compatible under the projections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerElement {
    pub components: Vec<Vec<i64>>,
}

pub fn build_tower(p: &FpPresentation, c_max: usize) -> Result<Tower, NilpotentError> {
    build_tower_with(p, c_max, &NqLimits::from_env())
}

pub fn build_tower_with(p: &FpPresentation, c_max: usize, limits: &NqLimits) -> Result<Tower, NilpotentError> {
    Ok(Tower {
        base: p.clone(),
        levels: quotient_series(p, c_max, limits)?,
    })
}

impl Tower {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Level `c`, 1-based.
    pub fn level(&self, c: usize) -> &PcGroup {
        &self.levels[c - 1].group
    }

    pub fn top(&self) -> &PcGroup {
        self.level(self.depth())
    }

    /// Group orders per level (`None` for infinite levels).
    pub fn orders(&self) -> Vec<Option<BigInt>> {
        self.levels.iter().map(|l| l.group.order()).collect()
    }

    /// Projection of a level-`from` normal form to level `to ≤ from`.
    pub fn project(&self, v: &[i64], to: usize) -> Vec<i64> {
        v[..self.level(to).ngens()].to_vec()
    }

    pub fn element_from_top(&self, v: &[i64]) -> TowerElement {
        TowerElement {
            components: (1..=self.depth()).map(|c| self.project(v, c)).collect(),
        }
    }

    pub fn element_from_word(&self, w: &Word) -> TowerElement {
        TowerElement {
            components: self.levels.iter().map(|l| l.evaluate(w)).collect(),
        }
    }

    pub fn identity_element(&self) -> TowerElement {
        TowerElement {
            components: self.levels.iter().map(|l| l.group.identity()).collect(),
        }
    }

    /// First level whose component does not project onto the one below, if
    /// any; also rejects components that are not normal forms.
    pub fn incoherent_level(&self, a: &TowerElement) -> Option<usize> {
        for (k, comp) in a.components.iter().enumerate() {
            if !self.levels[k].group.is_normal_form(comp) {
                return Some(k + 1);
            }
            if k > 0 && self.project(comp, k) != a.components[k - 1] {
                return Some(k + 1);
            }
        }
        None
    }

    /// Random element of the commutator subgroup at the top level: weight-one
    /// exponents zero, finite exponents uniform, infinite ones in
    /// `[−bound, bound]`.
    pub fn random_commutator_element<R: Rng>(&self, rng: &mut R, bound: i64) -> TowerElement {
        let g = self.top();
        let v: Vec<i64> = (0..g.ngens())
            .map(|i| match (g.weights()[i], g.relative_orders()[i]) {
                (1, _) => 0,
                (_, 0) => rng.gen_range(-bound..=bound),
                (_, r) => rng.gen_range(0..r),
            })
            .collect();
        self.element_from_top(&v)
    }
}

/// Result of the normal-generation test at one level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCheck {
    /// Level `c`, the quotient by `γ_{c+1}`.
    pub level: usize,
    pub normally_generated: bool,
}

/// Abelianization of a level together with the weight-one coordinates of
/// the chosen generators.
fn abelian_test(q: &NilpotentQuotient, xs: &[usize]) -> bool {
    let g = &q.group;
    let layer = g.layer(1);
    let d = layer.len();
    if g.ngens() == 0 {
        return true;
    }
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for i in layer.clone() {
        let r = g.relative_orders()[i];
        if r > 0 {
            let mut v = vec![BigInt::zero(); d];
            v[i - layer.start] = BigInt::from(r);
            if let Some(p) = g.presentation().powers.iter().find(|p| p.generator == i) {
                for &(h, e) in &p.rhs {
                    if layer.contains(&h) {
                        v[h - layer.start] -= e;
                    }
                }
            }
            cols.push(v);
        }
    }
    for &x in xs {
        cols.push(q.generator_images[x][layer.clone()].iter().map(|&e| BigInt::from(e)).collect());
    }
    FgAbelianGroup::from_relations(&IntMatrix::from_columns(d, &cols)).is_trivial()
}

/// Whether the images of the chosen presentation generators normally
/// generate each level. A subgroup of a nilpotent group is normally
/// generating iff it maps onto the abelianization, so each level is tested
/// against its own weight-one layer.
pub fn normal_generation_check(t: &Tower, xs: &[usize]) -> Result<Vec<LevelCheck>, NilpotentError> {
    if let Some(&x) = xs.iter().find(|&&x| x >= t.base.ngens()) {
        return Err(NilpotentError::UnknownGenerator(x));
    }
    Ok(t.levels
        .iter()
        .enumerate()
        .map(|(k, q)| LevelCheck {
            level: k + 1,
            normally_generated: abelian_test(q, xs),
        })
        .collect())
}

/// `g₁, …, g_n` with `[g₁, x₁] ⋯ [g_n, x_n] = a` at every level.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Decomposition {
    pub generators: Vec<usize>,
    pub factors: Vec<TowerElement>,
}

impl Decomposition {
    /// Recomputes the product at every level and compares with `a`.
    pub fn verify(&self, t: &Tower, a: &TowerElement) -> bool {
        (0..t.depth()).all(|k| {
            let q = &t.levels[k];
            let mut prod = q.group.identity();
            for (g, &x) in self.factors.iter().zip(&self.generators) {
                let c = q.group.commutator(&g.components[k], &q.generator_images[x]);
                prod = q.group.mul(&prod, &c);
            }
            prod == a.components[k]
        })
    }
}

/// Writes `a` (trivial at level 1) as `Π [gᵢ, xᵢ]`, one layer at a time.
///
/// Going from level `k` to `k + 1` the defect lies in the central layer
/// `γ_{k+1}/γ_{k+2}`, and correcting `gᵢ` by an element `vᵢ` of weight `k`
/// changes the product by `Π [vᵢ, xᵢ]`, which is bilinear in `vᵢ` and the
/// image of `xᵢ`. The corrections solve that linear system; the solution is
/// the one produced by Smith reduction, so the output is deterministic.
pub fn lemma22_decompose(t: &Tower, a: &TowerElement, xs: &[usize]) -> Result<Decomposition, NilpotentError> {
    let depth = t.depth();
    if a.components.len() != depth {
        return Err(NilpotentError::LevelMismatch {
            expected: depth,
            found: a.components.len(),
        });
    }
    if let Some(level) = t.incoherent_level(a) {
        return Err(NilpotentError::Inconsistent {
            class: level,
            detail: "tower element components are not compatible".into(),
        });
    }
    if !t.level(1).is_identity(&a.components[0]) {
        return Err(NilpotentError::NotInCommutator);
    }
    if xs.is_empty() && t.top().ngens() > 0 {
        return Err(NilpotentError::EmptyGeneratorSet);
    }
    if let Some(bad) = normal_generation_check(t, xs)?.into_iter().find(|c| !c.normally_generated) {
        return Err(NilpotentError::NotNormallyGenerated { level: bad.level });
    }

    let mut gs: Vec<Vec<i64>> = vec![Vec::new(); xs.len()];
    for k in 1..=depth {
        let q = &t.levels[k - 1];
        let g = &q.group;
        for v in gs.iter_mut() {
            v.resize(g.ngens(), 0);
        }
        if k == 1 {
            continue;
        }
        let product = |gs: &[Vec<i64>]| {
            let mut prod = g.identity();
            for (gi, &x) in gs.iter().zip(xs) {
                prod = g.mul(&prod, &g.commutator(gi, &q.generator_images[x]));
            }
            prod
        };
        let target = &a.components[k - 1];
        let defect = g.mul(&g.inverse(&product(&gs)), target);
        let layer = g.layer(k);
        if defect[..layer.start].iter().any(|&e| e != 0) {
            return Err(NilpotentError::Inconsistent {
                class: k,
                detail: "defect does not lie in the top layer".into(),
            });
        }
        if defect.iter().all(|&e| e == 0) {
            continue;
        }
        let lower = g.layer(k - 1);
        let dim = layer.len();
        let coords = |v: &[i64]| -> Vec<BigInt> { v[layer.clone()].iter().map(|&e| BigInt::from(e)).collect() };
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        let mut unknowns: Vec<(usize, usize)> = Vec::new();
        for (i, &x) in xs.iter().enumerate() {
            for s in lower.clone() {
                let c = g.commutator(&g.generator(s), &q.generator_images[x]);
                cols.push(coords(&c));
                unknowns.push((i, s));
            }
        }
        for tgen in layer.clone() {
            let r = g.relative_orders()[tgen];
            if r > 0 {
                let mut v = vec![BigInt::zero(); dim];
                v[tgen - layer.start] = BigInt::from(r);
                if let Some(p) = g.presentation().powers.iter().find(|p| p.generator == tgen) {
                    for &(h, e) in &p.rhs {
                        v[h - layer.start] -= e;
                    }
                }
                cols.push(v);
            }
        }
        let system = IntMatrix::from_columns(dim, &cols);
        let sol = solve_integer(&system, &coords(&defect)).ok_or(NilpotentError::NotNormallyGenerated { level: k })?;
        for (idx, &(i, s)) in unknowns.iter().enumerate() {
            if sol[idx].is_zero() {
                continue;
            }
            let e = sol[idx]
                .to_i64()
                .ok_or_else(|| NilpotentError::ResourceCap(format!("correction exponent {} exceeds 64 bits", sol[idx])))?;
            let mut corr = g.identity();
            g.mul_gen(&mut corr, s, e);
            gs[i] = g.mul(&gs[i], &corr);
        }
        if product(&gs) != *target {
            return Err(NilpotentError::Inconsistent {
                class: k,
                detail: "corrected product does not match".into(),
            });
        }
    }
    let result = Decomposition {
        generators: xs.to_vec(),
        factors: gs.iter().map(|v| t.element_from_top(v)).collect(),
    };
    if !result.verify(t, a) {
        return Err(NilpotentError::Inconsistent {
            class: depth,
            detail: "decomposition fails at a lower level".into(),
        });
    }
    Ok(result)
}
