use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("leading coefficient {0} is not a unit of the coefficient ring")]
    NonInvertibleLeadingCoefficient(String),

    #[error("series argument has a nonzero constant term")]
    ConstantTermPresent,

    #[error("series argument has a grade-0 part that is not a scalar; the series would not terminate")]
    NotPositivelyGraded,

    #[error("series needs a truncation degree but the element is untruncated")]
    UnboundedSeries,

    #[error("elements belong to different algebras")]
    MixedAlgebra,

    #[error("unknown generator label `{0}`")]
    UnknownLabel(String),

    #[error("operand is not parity-homogeneous")]
    HeterogeneousOperand,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("cannot expand around {0} over the rationals")]
    IrrationalExpansionPoint(String),

    #[error("tensor leg count mismatch: {left} vs {right}")]
    LegMismatch { left: usize, right: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("division by a non-unit: {0}")]
    DivisionByNonUnit(String),

    #[error("a negative power eps^{0} survives the contraction")]
    NegativePowerSurvives(i64),

    #[error("algebra lacks the osp(1|4) alias `{0}`")]
    MissingAlias(String),

    #[error("first-order term is not in g (x) g: {0}")]
    NotFirstOrderLie(String),

    #[error("r^3 does not vanish in the representation")]
    CubeNotZero,

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("invalid option: {0}")]
    InvalidOption(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("malformed dump: {0}")]
    Dump(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
