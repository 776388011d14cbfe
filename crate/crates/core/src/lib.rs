pub mod chain;
pub mod cyclic;
pub mod heis;
pub mod model;
pub mod suites;

pub use chain::{ChainComplex, ChainError, ChainMap, HomologyGroup, HomologyResult, IntMatrix, SimplicialComplex};
pub use cyclic::{
    CheckSummary, ConjClassId, NormalizerComparison, PrimitiveDecomposition, SubgroupClass, SubgroupSpec,
};
pub use heis::{HeisElement, HeisError};
pub use model::{FixedSetDesc, IsotropyDesc, PointE, Side};
