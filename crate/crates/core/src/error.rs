use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit count {n} outside supported range 1..={max}")]
    QubitCountOutOfRange { n: usize, max: usize },
    #[error("qubit index {qubit} out of range for {n_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("control and target are the same qubit ({0})")]
    SameQubit(usize),
    #[error("qubit count mismatch: expected {expected}, found {found}")]
    QubitCountMismatch { expected: usize, found: usize },
    #[error("amplitude count {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("expected {expected} parameters, found {found}")]
    ParameterLength { expected: usize, found: usize },
    #[error("expected {expected} encoding inputs, found {found}")]
    InputLength { expected: usize, found: usize },
    #[error("invalid encoding scale {0} (must be finite and nonzero)")]
    InvalidScale(f64),
    #[error("unknown Pauli axis '{0}'")]
    UnknownAxis(char),
    #[error("non-finite value: {0}")]
    NonFinite(String),
    #[error("training set is empty")]
    EmptyTrainingSet,
    #[error("invalid optimizer setting: {0}")]
    InvalidSettings(String),
    #[error("eigensolver did not converge: {0}")]
    NoConvergence(String),
}

/// A Hamiltonian text parse failure, positioned at a 1-based line.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {line}: {kind}")]
pub struct ParseHamiltonianError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseErrorKind {
    #[error("missing `qubits:` header before terms")]
    MissingHeader,
    #[error("duplicate `{0}` line")]
    DuplicateKey(&'static str),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("expected `key: value`, got `{0}`")]
    Malformed(String),
    #[error("invalid qubit count `{0}`")]
    InvalidQubits(String),
    #[error("invalid real number `{0}`")]
    InvalidNumber(String),
    #[error("coefficient `{0}` is not finite")]
    NonFiniteNumber(String),
    #[error("unknown Pauli axis '{0}'")]
    UnknownAxis(char),
    #[error("axis string has length {found}, expected {expected}")]
    AxisLength { expected: usize, found: usize },
    #[error("term must be `<coefficient> <axes>`, got `{0}`")]
    MalformedTerm(String),
}
