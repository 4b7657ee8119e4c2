//! Exact symmetric-group representation theory (partitions, characters,
//! dimensions, Schur functions, Kronecker coefficients) and a quantum
//! marginal analyzer built on it.
//!
//! The quantum side checks, at small scale, that the spectra of a bipartite
//! density operator and of its two marginals are approximated by normalized
//! partition triples `(λ, μ, ν)` whose Kronecker coefficient is nonzero.
//! [`tensor_oracle`] rebuilds the Schur–Weyl picture with explicit matrices
//! so the closed-form routes can be cross-checked.

pub mod characters;
pub mod dimensions;
pub mod display_serde;
pub mod error;
pub mod kronecker;
pub mod linalg;
pub mod partitions;
pub mod quantum;
pub mod symfunc;
pub mod tensor_oracle;

pub use characters::{character, character_table, CharacterTable, TableCache};
pub use dimensions::{bounds, dim_u, dim_v, DimensionReport};
pub use error::{Error, Result};
pub use kronecker::{kron, kron_table, KroneckerEngine, KroneckerTriple};
pub use partitions::{enumerate_partitions, majorizes, CycleType, NormalizedWeights, Partition};
pub use quantum::{DensityMatrix, Spectrum, Subsystem};
pub use symfunc::SymPoint;
