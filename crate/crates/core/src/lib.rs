//! Exact enumeration of multiplex juggling cards and card sequences, with
//! evaluators and cross-checks for their generating functions.
//!
//! Counts are `J(b,k,ℓ)`: the number of `ℓ`-card sequences juggling `b`
//! balls with hand capacity `k`.

pub mod cards;
pub mod compositions;
pub mod embeddings;
pub mod error;
pub mod genfun;
pub mod qcalc;
pub mod rational;
pub mod sequences;
pub mod series;
pub mod verify;

pub use cards::{Card, CardViolation};
pub use compositions::Composition;
pub use embeddings::{Embedding, SequenceEmbedding, Word};
pub use error::{Error, Result};
pub use rational::{Polynomial, RationalFunction, Recurrence};
pub use sequences::{CardSequence, TransferMatrix};
pub use series::{Profile, TruncatedSeries};
