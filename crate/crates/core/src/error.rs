//! Error type shared by all modules.

use core::fmt;

use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Spatial dimension outside {1, 2}.
    InvalidDimension(usize),
    /// Points-per-axis not a power of two >= 8.
    InvalidSize(usize),
    /// Period length not strictly positive.
    NonpositivePeriod(f64),
    /// Two values built over different lattices were combined.
    LatticeMismatch,
    /// Lebesgue exponent below 1.
    InvalidExponent(f64),
    /// Riesz transform axis outside 1..=n.
    AxisOutOfRange { axis: usize, dim: usize },
    /// Peaked kernel level beyond the resolvable dyadic range.
    UnresolvableScale { level: i32, max_abs: i32 },
    /// Littlewood-Paley block index outside the resolvable range.
    BlockOutOfRange { k: i32, max: i32 },
    /// Dyadic rescaling requested for a sampled symbol at j != 0.
    UnsupportedLevelForSampledSymbol(i32),
    /// Sheared frequency index leaves the sampled grid.
    OffGridShear,
    /// Cone aperture does not yield a cover of the sphere.
    ApertureTooLarge(f64),
    /// Unknown symbol catalog name.
    UnknownSymbol(String),
    /// Operator norm search over an unsupported space triple.
    UnsupportedTriple,
    /// Averaging function with zero mean passed to the Hardy norm.
    ZeroMeanAveragingFunction,
    /// Decomposition input does not have zero total transform mass.
    MassNotZero(f64),
    /// Decomposition depth beyond what the grid resolves.
    InsufficientResolution { requested: i32, max: i32 },
    /// A stated precondition failed (message names the violation).
    Precondition(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDimension(n) => write!(f, "invalid dimension {n}: only n = 1 or 2 supported"),
            Error::InvalidSize(n) => write!(f, "invalid size {n}: need a power of two >= 8"),
            Error::NonpositivePeriod(l) => write!(f, "nonpositive period {l}"),
            Error::LatticeMismatch => write!(f, "lattice mismatch"),
            Error::InvalidExponent(p) => write!(f, "invalid Lebesgue exponent {p}"),
            Error::AxisOutOfRange { axis, dim } => write!(f, "axis {axis} out of range for dimension {dim}"),
            Error::UnresolvableScale { level, max_abs } => {
                write!(f, "dyadic level {level} beyond resolvable range |j| <= {max_abs}")
            }
            Error::BlockOutOfRange { k, max } => write!(f, "block index {k} outside resolvable range 0..={max}"),
            Error::UnsupportedLevelForSampledSymbol(j) => {
                write!(f, "sampled symbols only support the j = 0 dyadic piece (got j = {j})")
            }
            Error::OffGridShear => write!(f, "sheared frequency leaves the sampled grid"),
            Error::ApertureTooLarge(c) => write!(f, "cone aperture {c} too large: sphere cover fails"),
            Error::UnknownSymbol(name) => write!(f, "unknown symbol `{name}`"),
            Error::UnsupportedTriple => write!(f, "unsupported space triple for norm estimation"),
            Error::ZeroMeanAveragingFunction => write!(f, "averaging function must have nonzero mean"),
            Error::MassNotZero(m) => write!(f, "total transform mass {m} is not zero"),
            Error::InsufficientResolution { requested, max } => {
                write!(f, "level {requested} beyond grid resolution (max {max})")
            }
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
        }
    }
}
