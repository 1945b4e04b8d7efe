use thiserror::Error;

/// Every failure mode of the library. Exact arithmetic either succeeds or
/// reports one of these; there are no silent approximations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CasError {
    #[error("division by zero")]
    DivisionByZero,

    /// A tower step turned out to be reducible: inversion found a proper
    /// factor of the defining polynomial. The payload is the offending
    /// generator name.
    #[error("extension by `{0}` is not a field: defining polynomial is reducible")]
    NotAField(String),

    #[error("defining polynomial must be monic")]
    NotMonic,

    #[error("defining polynomial must have degree at least 2")]
    DegreeTooSmall,

    #[error("requested numeric precision is not attainable")]
    PrecisionExhausted,

    #[error("rational function evaluates to 0/0 at the requested place")]
    IndeterminateForm,

    #[error("valuation of the zero function is undefined")]
    ZeroFunction,

    /// Rewriting `f(u)` as a function of `u^m` failed because `f` is not
    /// invariant under `u -> zeta_m u`.
    #[error("function does not descend to the requested subfield: {0}")]
    NotInSubfield(String),

    #[error("point does not satisfy the curve equation")]
    PointNotOnCurve,

    #[error("curve is singular (discriminant vanishes)")]
    SingularCurve,

    #[error("rescaling factor must be nonzero")]
    ZeroScale,

    #[error("tangent line is undefined at a singular point")]
    SingularPoint,

    #[error("pencil member is singular at the requested parameter")]
    SingularMember,

    #[error("input parameters give a singular curve or surface")]
    SingularInput,

    #[error("surface exponent n = {0} is not supported (need 1 <= n <= 6)")]
    UnsupportedN(i64),

    /// The linear system for the conic does not have a one-dimensional
    /// solution space.
    #[error("conic system is degenerate: {0}")]
    DegenerateSystem(String),

    /// After dividing out the known intersection points the residual factor
    /// was not linear, so the sixth point is not rational over the base.
    #[error("residual intersection is not a rational point")]
    ResidualNotRational,

    #[error("image of the point under the isogeny does not lie on the target curve")]
    ImageOffCurve,

    /// Fiber classification met a valuation pattern outside the implemented
    /// Kodaira table.
    #[error("unhandled fiber type pattern: {0}")]
    UnhandledType(String),
}

pub type Result<T> = std::result::Result<T, CasError>;
