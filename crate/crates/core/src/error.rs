use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("invalid Lie algebra: {0}")]
    InvalidAlgebra(String),
    #[error("bilinear form is not invariant")]
    NotInvariant,
    #[error("bilinear form is not symmetric")]
    NotSymmetric,
    #[error("map is neither a Lie algebra automorphism nor a derivation in the requested mode")]
    NotMorphism,
    #[error("map is not a derivation")]
    NotDerivation,
    #[error("derivation is not skew with respect to the form")]
    NotSkew,
    #[error("supplied subspaces are not complementary: {0}")]
    InputNotComplementary(String),
    #[error("cochain degree {0} is outside the supported range")]
    DegreeOverflow(usize),
    #[error("quadrature error estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    GridTooCoarse { estimate: f64, tolerance: f64 },
    #[error("family violates the twist condition at the loop boundary (deviation {0:e})")]
    BoundaryMismatch(f64),
    #[error("sections carry different twists or grids")]
    TwistMismatch,
    #[error("form is incompatible with the twist: phi_V(kappa(x,y)) != kappa(phi x, phi y)")]
    IncompatibleKappa,
    #[error("matrix order exceeds the bound {0}")]
    OrderBoundExceeded(u32),
    #[error("twist is not invertible")]
    SingularTwist,
    #[error("operation requires exact (symbolic) mode")]
    NumericModeUnsupported,
    #[error("operation requires numeric values for the constants")]
    MissingNumericValues,
    #[error("integration step left the patch at ({0}, {1})")]
    StepOutOfPatch(f64, f64),
    #[error("connection does not vanish at the base point (|A| = {0:e})")]
    NotNormalized(f64),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code used in CLI error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotSquare => "not_square",
            Error::InvalidAlgebra(_) => "invalid_algebra",
            Error::NotInvariant => "not_invariant",
            Error::NotSymmetric => "not_symmetric",
            Error::NotMorphism => "not_morphism",
            Error::NotDerivation => "not_derivation",
            Error::NotSkew => "not_skew",
            Error::InputNotComplementary(_) => "input_not_complementary",
            Error::DegreeOverflow(_) => "degree_overflow",
            Error::GridTooCoarse { .. } => "grid_too_coarse",
            Error::BoundaryMismatch(_) => "boundary_mismatch",
            Error::TwistMismatch => "twist_mismatch",
            Error::IncompatibleKappa => "incompatible_kappa",
            Error::OrderBoundExceeded(_) => "order_bound_exceeded",
            Error::SingularTwist => "singular_twist",
            Error::NumericModeUnsupported => "numeric_mode_unsupported",
            Error::MissingNumericValues => "missing_numeric_values",
            Error::StepOutOfPatch(..) => "step_out_of_patch",
            Error::NotNormalized(_) => "not_normalized",
            Error::Parse(_) => "parse",
        }
    }
}
