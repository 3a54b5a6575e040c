//! Words, rewriting and the algebras built from the defining relations.

pub mod algebra;
pub mod relations;
pub mod rewriting;
pub mod structure;
pub mod word;

pub use algebra::{
    default_degree_cap, expected_dimension, select_orientation, semi_admissibility_degree, BuildError, BuildReport,
    CyclotomicAlgebra, OmegaCheck, OrientationChoice, OrientationTrial,
};
pub use relations::{canonical_relations, PresentationConfig, TripleScalar, Variant, YOrientation};
pub use rewriting::{complete, CompletionError, CompletionStats, RewriteRule, RewriteSystem};
pub use structure::{CornerAlgebra, SparseVec, StructureAlgebra, StructureError};
pub use word::{AlgebraElement, Alphabet, Generator, Word};
