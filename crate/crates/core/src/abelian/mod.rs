//! Exact integer linear algebra: Smith normal form, finitely generated
//! abelian groups and homomorphisms between them.

mod group;
mod map;
mod matrix;
mod smith;

use num_bigint::BigInt;
use thiserror::Error;

pub use group::{canonical_quotient, CanonicalQuotient, FgAbelianGroup};
pub use map::{homology_at, map_kernel_cokernel, AbMap, KernelCokernel};
pub use matrix::{parse_matrix, IntMatrix};
pub use smith::{integer_kernel, invariant_factors, smith_normal_form, solve_integer, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("invalid torsion coefficient {0}: need dᵢ ≥ 2 with dᵢ | dᵢ₊₁")]
    InvalidTorsion(BigInt),
    #[error("matrix has shape {found:?}, expected {expected:?}")]
    Shape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("image of generator {generator} does not respect its order")]
    TorsionViolation { generator: usize },
    #[error("maps are not composable")]
    NotComposable,
    #[error("composite of consecutive maps is not zero")]
    NotAComplex,
}

/// Serde adapter writing a `BigInt` as its decimal string.
pub mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| D::Error::custom(format!("invalid integer {s:?}")))
    }
}

/// Quotient of `ℤ^rows` by the columns of `m`, in canonical form.
pub fn from_relations(m: &IntMatrix) -> FgAbelianGroup {
    FgAbelianGroup::from_relations(m)
}
