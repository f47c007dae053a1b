use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("variable mapping is not injective")]
    NonInjective,

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("evaluation at a pole in slot {slot}")]
    Pole { slot: usize },

    #[error("division by (u_{a} - u_{b}) left a nonzero remainder")]
    NonzeroRemainder { a: usize, b: usize },

    #[error("polynomial depends on slot {slot}, which must be free")]
    SlotNotFree { slot: usize },

    #[error("unstable surface type (g, n) = ({g}, {n})")]
    Unstable { g: u32, n: usize },

    #[error("perimeter entries must be positive")]
    NonPositivePerimeter,

    #[error("perimeter {0} must be even")]
    OddPerimeter(u32),

    #[error("polynomial is not homogeneous")]
    NonHomogeneous,

    #[error("polynomials are not proportional")]
    NotProportional,

    #[error("monomial of total degree {found} where {expected} was expected")]
    DegreeMismatch { expected: i64, found: i64 },

    #[error("evaluation points must be nonzero and pairwise distinct in absolute value")]
    CoincidentPoints,

    #[error("pole of order {0} encountered; at most 2 is supported")]
    PoleOrder(u32),

    #[error("residue sum is not an even Laurent polynomial in t1")]
    NotLaurent,

    #[error("trial point lies on a chamber wall")]
    ChamberWall,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
