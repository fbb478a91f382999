use thiserror::Error;

use crate::bridge::BridgeError;
use crate::circuit::CircuitError;
use crate::digraph::DigraphError;
use crate::ground::GroundError;
use crate::matrix::MatrixError;
use crate::oracle::OracleError;
use crate::synthesis::SynthesisError;

/// Any library error, with a stable diagnostic code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Synthesis(#[from] SynthesisError),
    #[error(transparent)]
    Bridge(#[from] BridgeError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Ground(_) => "IndexOutOfRange",
            Error::Matrix(e) => e.code(),
            Error::Digraph(_) => "ParameterOutOfRange",
            Error::Circuit(e) => e.code(),
            Error::Synthesis(e) => e.code(),
            Error::Bridge(e) => e.code(),
            Error::Oracle(e) => e.code(),
        }
    }
}
