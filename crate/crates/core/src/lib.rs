//! Leveled approximate homomorphic encryption over `Z[x]/(x^N + 1)`.
//!
//! The crate covers the full pipeline for complex-vector messages:
//! encode, encrypt, evaluate (add, multiply with relinearization, rescale,
//! slot rotation), decrypt and decode. Alongside it sit two small companion
//! components: a single-bit LWE public-key scheme ([`toy_lwe`]) and exact
//! rational lattice utilities ([`lattice`]).
//!
//! All arithmetic on ring coefficients uses arbitrary-precision integers and
//! every randomized routine draws from an explicit, seedable [`RngState`], so
//! runs are reproducible bit for bit.
//!
//! None of the parameter sets shipped here are meant to be secure.

pub mod encoding;
pub mod lattice;
pub mod noise;
pub mod params;
pub mod ring;
pub mod sampling;
pub mod scheme;
pub mod text;
pub mod toy_lwe;

pub use encoding::{EmbeddingContext, EncodingError, MessageVector, Rounding};
pub use lattice::{Basis, LatticeError};
pub use noise::NoiseBudget;
pub use params::{CkksParams, ParamsError};
pub use ring::{RingElement, RingError};
pub use sampling::{CoefficientSampler, RngState, SamplingError, ScriptedSampler};
pub use scheme::{Ciphertext, EvaluationKey, PublicKey, RotationKey, SchemeError, SecretKey};
pub use toy_lwe::{LweError, LweKeys, LweParams};

use thiserror::Error;

/// Crate-wide error, one variant per component.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Sampling(#[from] SamplingError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Lwe(#[from] LweError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
