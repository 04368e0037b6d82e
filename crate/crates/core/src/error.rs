use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// The variant name doubles as the machine-readable reason code emitted by
/// the command-line front end (see [`Error::code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at token `{token}`: {reason}")]
    Parse { token: String, reason: String },
    #[error("the zero vector is not a point of the projective line")]
    ZeroPoint,
    #[error("singular Moebius matrix (determinant is zero)")]
    SingularMatrix,
    #[error("triple of points is not pairwise distinct")]
    InvalidTriple,
    #[error("stabilizer of fewer than three points is infinite")]
    InfiniteStabilizer,
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("invalid interval configuration: {0}")]
    InvalidConfig(String),
    #[error("configuration contains infinity; conjugate by a Moebius map first")]
    MoveInfinityFirst,
    #[error("invalid conic model: {0}")]
    InvalidModel(String),
    #[error("point is not on the surface")]
    NotOnSurface,
    #[error("polynomial is not a positive multiple of the model polynomial")]
    NotProportional,
    #[error("scaling constant {0} is not a rational square; the point map is symbolic only")]
    NotRationalSquare(String),
    #[error("fibre over x = {0} is empty or singular")]
    EmptyOrSingularFiber(String),
    #[error("point is not on the fibre circle")]
    NotOnFiber,
    #[error("rotation lies on the pole of the chart")]
    ChartPole,
    #[error("duplicate interpolation node x = {0}")]
    DuplicateNode(String),
    #[error("pair {0}: source and target lie on different fibres")]
    FiberMismatch(usize),
    #[error("two transported pairs share the fibre x = {0}")]
    DuplicateFiber(String),
    #[error("pinned or jet fibre x = {0} collides with a transported fibre")]
    PinCollision(String),
    #[error("pinned fibre x = {0} lies outside the interval image")]
    PinOutsideImage(String),
    #[error("fibre x = {0} is singular or empty but a transport or jet was requested there")]
    SingularFiberTarget(String),
    #[error("at most three intervals fit a degree-2 del Pezzo model, got {0}")]
    TooManyIntervals(usize),
    #[error("invalid biconic forms: {0}")]
    InvalidForms(String),
    #[error("a quadratic form has irrational real roots; interval boundaries are not rational")]
    IrrationalBoundary,
    #[error("the real image is not a finite union of proper closed arcs: {0}")]
    DegenerateImage(String),
    #[error("the fibre quadratic vanishes identically")]
    DegenerateFiber,
    #[error("no rational witness found within the search budget {0}")]
    WitnessSearchFailed(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("Picard vectors have different basis lengths ({0} vs {1})")]
    BasisMismatch(usize, usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("class is not a conic fibre class (needs f^2 = 0 and f.K = -2)")]
    NotAFiberClass,
    #[error("invalid rectangle: {0}")]
    InvalidRect(String),
    #[error("endpoint lies outside the region")]
    OutsideRegion,
    #[error("endpoint lies on a forbidden line")]
    OnForbiddenLine,
}

impl Error {
    /// Stable reason code, the variant name.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::ZeroPoint => "ZeroPoint",
            Error::SingularMatrix => "SingularMatrix",
            Error::InvalidTriple => "InvalidTriple",
            Error::InfiniteStabilizer => "InfiniteStabilizer",
            Error::InvalidInterval(_) => "InvalidInterval",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::MoveInfinityFirst => "MoveInfinityFirst",
            Error::InvalidModel(_) => "InvalidModel",
            Error::NotOnSurface => "NotOnSurface",
            Error::NotProportional => "NotProportional",
            Error::NotRationalSquare(_) => "NotRationalSquare",
            Error::EmptyOrSingularFiber(_) => "EmptyOrSingularFiber",
            Error::NotOnFiber => "NotOnFiber",
            Error::ChartPole => "ChartPole",
            Error::DuplicateNode(_) => "DuplicateNode",
            Error::FiberMismatch(_) => "FiberMismatch",
            Error::DuplicateFiber(_) => "DuplicateFiber",
            Error::PinCollision(_) => "PinCollision",
            Error::PinOutsideImage(_) => "PinOutsideImage",
            Error::SingularFiberTarget(_) => "SingularFiberTarget",
            Error::TooManyIntervals(_) => "TooManyIntervals",
            Error::InvalidForms(_) => "InvalidForms",
            Error::IrrationalBoundary => "IrrationalBoundary",
            Error::DegenerateImage(_) => "DegenerateImage",
            Error::DegenerateFiber => "DegenerateFiber",
            Error::WitnessSearchFailed(_) => "WitnessSearchFailed",
            Error::Precondition(_) => "Precondition",
            Error::BasisMismatch(..) => "BasisMismatch",
            Error::Unsupported(_) => "Unsupported",
            Error::NotAFiberClass => "NotAFiberClass",
            Error::InvalidRect(_) => "InvalidRect",
            Error::OutsideRegion => "OutsideRegion",
            Error::OnForbiddenLine => "OnForbiddenLine",
        }
    }
}
