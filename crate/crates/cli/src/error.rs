use std::io;
use std::path::PathBuf;

use ckks::{
    EncodingError, LatticeError, LweError, ParamsError, RingError, SamplingError, SchemeError,
};
use thiserror::Error;

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_PARSE: u8 = 4;
pub const EXIT_PARAMS: u8 = 5;
pub const EXIT_RING: u8 = 6;
pub const EXIT_ENCODING: u8 = 7;
pub const EXIT_SCHEME: u8 = 8;
pub const EXIT_LATTICE: u8 = 9;
pub const EXIT_LWE: u8 = 10;
pub const EXIT_SAMPLING: u8 = 11;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Core(#[from] ckks::Error),
    #[error("{failures} of {trials} LWE round trips decrypted wrongly")]
    LweFailures { failures: usize, trials: usize },
    #[error("pipeline step {step} ({op}): {source}")]
    Step {
        step: usize,
        op: String,
        source: Box<CliError>,
    },
}

macro_rules! from_module_error {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Core(e.into())
            }
        })*
    };
}

from_module_error!(
    ParamsError,
    SamplingError,
    RingError,
    EncodingError,
    SchemeError,
    LweError,
    LatticeError
);

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Io { .. } => EXIT_IO,
            Self::Core(e) => core_code(e),
            Self::LweFailures { .. } => EXIT_LWE,
            Self::Step { source, .. } => source.exit_code(),
        }
    }
}

/// Errors are attributed to the component they originate in, so a ring
/// failure inside a homomorphic operation still reports the ring code.
fn core_code(e: &ckks::Error) -> u8 {
    use ckks::Error as E;
    match e {
        E::Parse(_) => EXIT_PARSE,
        E::Params(_) => EXIT_PARAMS,
        E::Ring(_) => EXIT_RING,
        E::Encoding(_) => EXIT_ENCODING,
        E::Scheme(s) => match s {
            SchemeError::Ring(_) => EXIT_RING,
            SchemeError::Sampling(_) => EXIT_SAMPLING,
            SchemeError::Params(_) => EXIT_PARAMS,
            SchemeError::Encoding(_) => EXIT_ENCODING,
            _ => EXIT_SCHEME,
        },
        E::Lattice(_) => EXIT_LATTICE,
        E::Lwe(_) => EXIT_LWE,
        E::Sampling(_) => EXIT_SAMPLING,
    }
}
