//! Error type shared by every module.

use thiserror::Error;

use crate::polyspherical::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{func} has a pole at {arg}")]
    Pole { func: &'static str, arg: f64 },

    #[error("{func} overflows at {arg}")]
    Overflow { func: &'static str, arg: f64 },

    #[error("series did not converge within {terms} terms")]
    Convergence { terms: usize },

    #[error("lower parameter {c} is a non-positive integer and the series does not terminate")]
    ParameterPole { c: f64 },

    #[error("no upper parameter is a non-positive integer")]
    NonTerminating,

    #[error("argument {z} is within 1e-6 of the branch point")]
    SlowConvergence { z: f64 },

    #[error("{func} is not defined at {arg}")]
    Domain { func: &'static str, arg: f64 },

    #[error("Gegenbauer parameter must be nonzero")]
    ZeroParameter,

    #[error("dimension {0} is odd")]
    OddDimension(u32),

    #[error("source and field points coincide")]
    CoincidentPoints,

    #[error("toroidal parameter {chi} is too close to 1")]
    SingularConfiguration { chi: f64 },

    #[error("a point lies on the rotation axis")]
    Axis,

    #[error("radii coincide (r = {r}, r' = {rp})")]
    CoincidentRadius { r: f64, rp: f64 },

    #[error("nu = {nu} lies in the excluded set {set}")]
    ExclusionSet { nu: f64, set: String },

    #[error("angle {angle} at node {node} lies outside {range}")]
    AngleRange {
        node: usize,
        angle: f64,
        range: &'static str,
    },

    #[error("inadmissible quantum key: {0}")]
    InadmissibleKey(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
