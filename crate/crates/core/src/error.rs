use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("initial state is not normalized: |α|²+|β|² = {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("angle {theta} lies off the localization arc |sin θ| ≥ 1/√2")]
    OutOfBranch { theta: f64 },

    #[error("{0:?} singular points are absent for sin σ = {1}")]
    AbsentBranch(crate::gf::Branch, f64),

    #[error("z = {0} is a pole of the generating function")]
    Pole(crate::C64),

    #[error("non-finite angle: {0}")]
    NonFiniteAngle(f64),

    #[error("eigenvalue must have unit modulus, got |λ| = {0}")]
    NotUnitModulus(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
