use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group order exceeds cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("degree {degree} exceeds cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("quotient index {index} exceeds cap {cap}")]
    IndexCapExceeded { index: usize, cap: usize },
    #[error("group of order {order} exceeds lattice cap {cap}")]
    LatticeCapExceeded { order: usize, cap: usize },
    #[error("image sequence is not a bijection")]
    NotBijection,
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("cannot parse {text:?} as cycle notation: {reason}")]
    CycleSyntax { text: String, reason: String },
    #[error("element is not a member of the group")]
    ForeignElement,
    #[error("subgroup belongs to a different group")]
    ForeignSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("K is not normal in H")]
    NotNormalInH,
    #[error("expected K <= H <= G")]
    ChainViolation,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("subgroup of order {order} is not a nontrivial p-group")]
    NotPGroup { order: usize },
    #[error("generator images do not define a homomorphism")]
    NotHomomorphism,
    #[error("homomorphism is not bijective")]
    NotBijective,
    #[error("unknown theorem id {0:?}")]
    UnknownTheoremId(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("unsupported group spec: {0}")]
    UnsupportedSpec(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate group name {name:?} at line {line}")]
    DuplicateName { name: String, line: usize },
    #[error("no group named {0:?}")]
    UnknownGroup(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("argument out of range: {0}")]
    OutOfRange(String),
}
