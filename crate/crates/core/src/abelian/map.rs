use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::group::canonical_quotient;
use super::smith::{integer_kernel, SpanBasis};
use super::{AbelianError, FgAbelianGroup, IntMatrix};

/// Homomorphism between finitely generated abelian groups. Column `j` of
/// `matrix` holds the image of the j-th canonical generator of the domain in
/// canonical coordinates of the codomain. Torsion coordinates are kept
/// reduced, so equality of maps is equality of values.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct AbMap {
    domain: FgAbelianGroup,
    codomain: FgAbelianGroup,
    matrix: IntMatrix,
}

#[derive(Deserialize)]
struct AbMapRepr {
    domain: FgAbelianGroup,
    codomain: FgAbelianGroup,
    matrix: IntMatrix,
}

impl<'de> Deserialize<'de> for AbMap {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let r = AbMapRepr::deserialize(deserializer)?;
        AbMap::new(r.domain, r.codomain, r.matrix).map_err(serde::de::Error::custom)
    }
}

impl AbMap {
    pub fn new(
        domain: FgAbelianGroup,
        codomain: FgAbelianGroup,
        mut matrix: IntMatrix,
    ) -> Result<Self, AbelianError> {
        if matrix.rows() != codomain.ngens() || matrix.cols() != domain.ngens() {
            return Err(AbelianError::Shape {
                expected: (codomain.ngens(), domain.ngens()),
                found: (matrix.rows(), matrix.cols()),
            });
        }
        for (j, d) in domain.generator_orders().iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let image: Vec<BigInt> = matrix.column(j).iter().map(|x| x * d).collect();
            if !codomain.is_zero_element(&image) {
                return Err(AbelianError::TorsionViolation { generator: j });
            }
        }
        for (i, d) in codomain.torsion().iter().enumerate() {
            for j in 0..matrix.cols() {
                matrix[(i, j)] = matrix[(i, j)].mod_floor(d);
            }
        }
        Ok(Self {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn identity(a: &FgAbelianGroup) -> Self {
        Self::new(a.clone(), a.clone(), IntMatrix::identity(a.ngens())).expect("identity is valid")
    }

    pub fn zero(domain: &FgAbelianGroup, codomain: &FgAbelianGroup) -> Self {
        Self::new(
            domain.clone(),
            codomain.clone(),
            IntMatrix::zeros(codomain.ngens(), domain.ngens()),
        )
        .expect("zero map is valid")
    }

    /// Multiplication by `k` on `a`.
    pub fn scalar(a: &FgAbelianGroup, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        let mut m = IntMatrix::zeros(a.ngens(), a.ngens());
        for i in 0..a.ngens() {
            m[(i, i)] = k.clone();
        }
        Self::new(a.clone(), a.clone(), m).expect("scalar map is valid")
    }

    pub fn domain(&self) -> &FgAbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbelianGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = self.matrix.mul_vec(v);
        self.codomain.normalize(&mut out);
        out
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AbMap) -> Result<AbMap, AbelianError> {
        if first.codomain != self.domain {
            return Err(AbelianError::NotComposable);
        }
        AbMap::new(
            first.domain.clone(),
            self.codomain.clone(),
            &self.matrix * &first.matrix,
        )
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && *self == AbMap::identity(&self.domain)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Image as an abstract group.
    pub fn image(&self) -> FgAbelianGroup {
        let n = self.codomain.ngens();
        let mut gens: Vec<Vec<BigInt>> = (0..self.matrix.cols()).map(|j| self.matrix.column(j)).collect();
        gens.extend(torsion_relations(&self.codomain));
        subquotient(n, &gens, &torsion_relations(&self.codomain)).0
    }
}

impl fmt::Debug for AbMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbMap({} -> {}, {})", self.domain, self.codomain, self.matrix)
    }
}

/// Column vectors `dᵢ·eᵢ` for the torsion generators of `a`.
pub(crate) fn torsion_relations(a: &FgAbelianGroup) -> Vec<Vec<BigInt>> {
    a.torsion()
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let mut v = vec![BigInt::zero(); a.ngens()];
            v[i] = d.clone();
            v
        })
        .collect()
}

/// `span(sub) / span(rel)` inside `ℤ^n`, assuming `span(rel) ⊆ span(sub)`.
/// Returns the group and an `n × ngens` matrix of lifts of its canonical
/// generators.
pub(crate) fn subquotient(
    n: usize,
    sub: &[Vec<BigInt>],
    rel: &[Vec<BigInt>],
) -> (FgAbelianGroup, IntMatrix) {
    let span = SpanBasis::new(n, sub);
    let coords: Vec<Vec<BigInt>> = rel
        .iter()
        .map(|r| {
            span.coordinates(r)
                .expect("relation lattice must lie inside the subgroup lattice")
        })
        .collect();
    let rel_matrix = IntMatrix::from_columns(span.rank(), &coords);
    let q = canonical_quotient(&rel_matrix, true);
    let basis = IntMatrix::from_columns(n, &span.basis);
    let lifts = &basis * &q.section.expect("section requested");
    (q.group, lifts)
}

/// Kernel, cokernel and the quotient map onto the cokernel.
#[derive(Clone, Debug)]
pub struct KernelCokernel {
    pub kernel: FgAbelianGroup,
    /// Inclusion of the kernel into the domain.
    pub kernel_inclusion: AbMap,
    pub cokernel: FgAbelianGroup,
    /// Quotient map codomain → cokernel.
    pub projection: AbMap,
}

pub fn map_kernel_cokernel(f: &AbMap) -> KernelCokernel {
    let (kernel, kernel_inclusion) = kernel_of(f);
    let (cokernel, projection) = cokernel_of(f);
    KernelCokernel {
        kernel,
        kernel_inclusion,
        cokernel,
        projection,
    }
}

/// Integer lifts of `ker f ⊆ ℤ^{ngens(domain)}` (generators, not a basis).
fn kernel_lattice(f: &AbMap) -> Vec<Vec<BigInt>> {
    let n_a = f.domain.ngens();
    let n_b = f.codomain.ngens();
    let mut tors = IntMatrix::zeros(n_b, f.codomain.torsion().len());
    for (i, d) in f.codomain.torsion().iter().enumerate() {
        tors[(i, i)] = d.clone();
    }
    let stacked = f.matrix.hcat(&tors);
    integer_kernel(&stacked)
        .into_iter()
        .map(|v| v[..n_a].to_vec())
        .chain(torsion_relations(&f.domain))
        .collect()
}

fn kernel_of(f: &AbMap) -> (FgAbelianGroup, AbMap) {
    let n_a = f.domain.ngens();
    let (group, lifts) = subquotient(n_a, &kernel_lattice(f), &torsion_relations(&f.domain));
    let inclusion = AbMap::new(group.clone(), f.domain.clone(), lifts).expect("kernel inclusion");
    (group, inclusion)
}

fn cokernel_of(f: &AbMap) -> (FgAbelianGroup, AbMap) {
    let n_b = f.codomain.ngens();
    let mut cols: Vec<Vec<BigInt>> = (0..f.matrix.cols()).map(|j| f.matrix.column(j)).collect();
    cols.extend(torsion_relations(&f.codomain));
    let q = canonical_quotient(&IntMatrix::from_columns(n_b, &cols), false);
    let projection =
        AbMap::new(f.codomain.clone(), q.group.clone(), q.projection).expect("quotient map");
    (q.group, projection)
}

/// Homology `ker(outgoing) / im(incoming)` at the middle group of
/// `C --incoming--> A --outgoing--> B`.
pub fn homology_at(incoming: &AbMap, outgoing: &AbMap) -> Result<FgAbelianGroup, AbelianError> {
    if incoming.codomain != outgoing.domain {
        return Err(AbelianError::NotComposable);
    }
    if !outgoing.compose(incoming)?.is_zero() {
        return Err(AbelianError::NotAComplex);
    }
    let n = outgoing.domain.ngens();
    let mut rel: Vec<Vec<BigInt>> = (0..incoming.matrix.cols())
        .map(|j| incoming.matrix.column(j))
        .collect();
    rel.extend(torsion_relations(&outgoing.domain));
    Ok(subquotient(n, &kernel_lattice(outgoing), &rel).0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(free: usize, tors: &[i64]) -> FgAbelianGroup {
        FgAbelianGroup::new(free, tors.iter().map(|&d| BigInt::from(d)).collect()).unwrap()
    }

    #[test]
    fn times_two_on_z() {
        let f = AbMap::scalar(&g(1, &[]), 2);
        let kc = map_kernel_cokernel(&f);
        assert!(kc.kernel.is_trivial());
        assert_eq!(kc.cokernel, g(0, &[2]));
    }

    #[test]
    fn zero_map_z3() {
        let z3 = g(3, &[]);
        let kc = map_kernel_cokernel(&AbMap::zero(&z3, &z3));
        assert_eq!(kc.cokernel, z3);
        assert_eq!(kc.kernel, z3);
    }

    #[test]
    fn mixed_codomain_by_enumeration() {
        // f: ℤ → ℤ/2 ⊕ ℤ, e ↦ (1, 2)
        let f = AbMap::new(g(1, &[]), g(1, &[2]), IntMatrix::from_rows(&[vec![1], vec![2]])).unwrap();
        // brute force: (a, b) ~ (a - k, b - 2k); pick k = floor(b/2) as the coset representative
        let mut classes = std::collections::BTreeSet::new();
        for a in 0..2i64 {
            for b in -40i64..=40 {
                let k = b.div_euclid(2);
                classes.insert(((a - k).rem_euclid(2), b - 2 * k));
            }
        }
        assert_eq!(classes.len(), 4);
        let kc = map_kernel_cokernel(&f);
        assert_eq!(kc.cokernel, g(0, &[4]));
        assert!(kc.kernel.is_trivial());
    }

    #[test]
    fn torsion_checked_on_construction() {
        // ℤ/2 → ℤ, 1 ↦ 1 is not a homomorphism
        assert!(AbMap::new(g(0, &[2]), g(1, &[]), IntMatrix::from_rows(&[vec![1]])).is_err());
        // ℤ/4 → ℤ/2, 1 ↦ 1 is fine
        assert!(AbMap::new(g(0, &[4]), g(0, &[2]), IntMatrix::from_rows(&[vec![1]])).is_ok());
    }

    #[test]
    fn kernel_of_reduction_mod_two() {
        // ℤ/4 → ℤ/2: kernel ℤ/2, cokernel 0
        let f = AbMap::new(g(0, &[4]), g(0, &[2]), IntMatrix::from_rows(&[vec![1]])).unwrap();
        let kc = map_kernel_cokernel(&f);
        assert_eq!(kc.kernel, g(0, &[2]));
        assert!(kc.cokernel.is_trivial());
        let inc = kc.kernel_inclusion.matrix();
        assert_eq!(inc[(0, 0)], BigInt::from(2));
        assert!(f.compose(&kc.kernel_inclusion).unwrap().is_zero());
    }

    #[test]
    fn homology_of_short_complex() {
        // ℤ --2--> ℤ --0--> ℤ has homology ℤ/2 in the middle
        let z = g(1, &[]);
        let h = homology_at(&AbMap::scalar(&z, 2), &AbMap::zero(&z, &z)).unwrap();
        assert_eq!(h, g(0, &[2]));
        assert!(homology_at(&AbMap::scalar(&z, 2), &AbMap::scalar(&z, 1)).is_err());
    }

    #[test]
    fn image_and_identity() {
        let a = g(1, &[2, 4]);
        assert!(AbMap::identity(&a).is_identity());
        assert_eq!(AbMap::scalar(&a, 2).image(), g(1, &[2]));
    }
}
