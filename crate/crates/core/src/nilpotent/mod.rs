//! Nilpotent quotients of finitely presented groups, towers of them, and
//! the level-by-level commutator decomposition of elements of a tower.

mod nq;
mod pc;
mod tower;

use thiserror::Error;

pub use nq::{nilpotent_quotient, FpPresentation, NilpotentQuotient, NqLimits};
pub use pc::{CommutatorRelation, Definition, PcGroup, PcPresentation, PowerRelation, Syllables};
pub use tower::{
    build_tower, build_tower_with, lemma22_decompose, normal_generation_check, Decomposition, LevelCheck, Tower, TowerElement,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilpotentError {
    #[error("malformed pc presentation: {0}")]
    MalformedPresentation(String),
    #[error("malformed finite presentation: {0}")]
    MalformedFp(String),
    #[error("class must be at least 1")]
    ZeroClass,
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("internal inconsistency at class {class}: {detail}")]
    Inconsistent { class: usize, detail: String },
    #[error("element is not trivial at level 1 (it must lie in the commutator subgroup)")]
    NotInCommutator,
    #[error("the chosen generators do not normally generate level {level}")]
    NotNormallyGenerated { level: usize },
    #[error("no generators were chosen but the group is nontrivial")]
    EmptyGeneratorSet,
    #[error("element has {found} components, the tower has {expected} levels")]
    LevelMismatch { expected: usize, found: usize },
    #[error("generator index {0} outside the presentation")]
    UnknownGenerator(usize),
}
