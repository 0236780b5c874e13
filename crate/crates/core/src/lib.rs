//! Permutation patterns inside `Av(321)`: containment and embeddings, rank
//! decompositions and rigidity, staircases and bounded merges, exact class
//! enumeration, lattices of embeddings and the associated series.

pub mod classes;
pub mod embedding;
pub mod error;
pub mod lattice;
pub mod oracle;
pub mod perm;
pub mod rigidity;
pub mod series;
pub mod staircase;
pub mod verify;

pub use embedding::{contains, embeddings, Embedding};
pub use error::{Error, Result};
pub use perm::Permutation;
