use thiserror::Error;

/// Errors shared by every engine in this workspace.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[non_exhaustive]
pub enum Error {
    /// The polynomial source text is malformed. `pos` is a byte offset.
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    /// A variable other than `x` or `y` appeared in the source text.
    #[error("unsupported variable '{name}' at byte {pos}: only x and y are accepted")]
    UnsupportedVariable { pos: usize, name: char },

    /// `gcd(0, 0)` has no positive value.
    #[error("gcd(0, 0) is undefined")]
    ZeroGcd,

    /// A rational was constructed with denominator zero.
    #[error("zero denominator")]
    ZeroDenominator,

    /// A string did not parse as `p` or `p/q`.
    #[error("invalid rational literal '{0}'")]
    InvalidRational(String),

    /// The curve polynomial has a nonzero constant term.
    #[error("the polynomial does not vanish at the origin")]
    NotVanishingAtOrigin,

    /// The curve polynomial is divisible by a coordinate, so it is not an
    /// irreducible germ (or the branch is a coordinate axis).
    #[error("the polynomial is divisible by {axis}: split off the {axis} = 0 factor first")]
    AxisFactor { axis: char },

    /// The expansion detected more than one branch through the origin.
    #[error("the curve is not an irreducible germ over the rationals ({detail}): expand one branch at a time")]
    ReducibleCurve { detail: String },

    /// A Newton polygon segment equation has no rational root, so the
    /// expansion would leave the rational field. The caller should supply
    /// precomputed Puiseux pairs or a resolution graph instead.
    #[error("a Newton polygon segment equation has no rational solution ({detail}): the expansion needs a field extension, so pass Puiseux pairs (--pairs) or a resolution graph (--graph) instead")]
    FieldExtensionRequired { detail: String },

    /// The branch is smooth, so there is nothing to reduce or resolve.
    #[error("the branch is smooth (no Puiseux pairs): the reduction is not defined")]
    SmoothBranch,

    #[error("invalid Puiseux pairs: {0}")]
    InvalidPairs(String),

    #[error("invalid characteristic exponents: {0}")]
    InvalidExponents(String),

    #[error("invalid multiplicity sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid resolution graph: {0}")]
    InvalidGraph(String),

    #[error("invalid spectral data: {0}")]
    InvalidSpectral(String),

    /// The Brieskorn curve generator needs coprime exponents.
    #[error("exponents {a} and {b} are not coprime")]
    NotCoprime { a: u64, b: u64 },

    /// Suspension signatures are defined for exponents N >= 2.
    #[error("suspension exponent must be at least 2, got {0}")]
    SuspensionTooSmall(u64),

    /// The eta invariant is defined for K >= 1.
    #[error("eta requires K >= 1, got {0}")]
    NonPositiveK(u64),

    /// The eta combination that should produce an integer signature did not.
    /// This indicates inconsistent input data, not a rounding problem: all
    /// arithmetic is exact.
    #[error("eta values do not combine to an integer signature: eta({n}) = {eta_n}, eta(1) = {eta_1}")]
    NonIntegerSignature { n: u64, eta_n: String, eta_1: String },

    /// An intermediate quantity exceeded the supported integer range.
    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    /// The computation observed its cancellation token.
    #[error("the computation was cancelled")]
    Cancelled,

    /// The Newton iteration safety cap was reached.
    #[error("the expansion did not terminate within {limit} Newton iterations")]
    IterationLimit { limit: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
