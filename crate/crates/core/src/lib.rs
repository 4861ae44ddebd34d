//! Exact computations for the restriction–induction chain on irreducible
//! representations, descent-algebra card shuffles on `S_n`, and the RSK
//! correspondence that links them.
//!
//! Everything generic over [`Scalar`] runs either in exact rational
//! arithmetic ([`Rational`]) or in `f64`; the mode is fixed by the type
//! parameter and never mixed within one computation.

pub mod chain;
pub mod characters;
pub mod distribution;
pub mod error;
pub mod gl_beta;
pub mod io;
pub mod parabolic;
pub mod partitions;
pub mod rsk;
pub mod scalar;
pub mod selftest;
pub mod shuffles;
pub mod verify;

pub use chain::{ClassRatioVector, GroupData, TransitionMatrix};
pub use characters::CharacterTable;
pub use distribution::Distribution;
pub use error::{Error, Result};
pub use parabolic::RootSubset;
pub use partitions::{Composition, Partition, PartitionDistribution};
pub use scalar::{Rational, Scalar};
pub use shuffles::{GroupAlgebraMeasure, Permutation, ShuffleSpec};
