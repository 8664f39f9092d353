use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not Hermitian (max |M - M†| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix dimension {0} is outside the supported range 1..=8")]
    UnsupportedDimension(usize),

    #[error("invalid Pauli label {0:?}; expected one of I, X, Y, Z")]
    InvalidPauli(char),

    #[error("Pauli string must contain at least one label")]
    EmptyPauliString,

    #[error("term {0} is not one of II, ZI, IZ, ZZ, XX")]
    UnsupportedTerm(String),

    #[error("no measurement mapping for {0}; supported: ZI, IZ, ZZ, XX, Z, X")]
    UnsupportedObservable(String),

    #[error("invalid basis label {0:?}: expected 1 or 2 binary digits")]
    InvalidBasisLabel(String),

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("gate {gate} does not fit a {qubits}-qubit state")]
    GateArity { gate: String, qubits: usize },

    #[error("{0} is a single-qubit ansatz family and has no two-qubit subspace")]
    NotApplicable(&'static str),

    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(&'static str),

    #[error("objective returned {value} at x = {point:?}")]
    NonFiniteObjective { point: alloc::vec::Vec<f64>, value: f64 },

    #[error("at least one starting point is required")]
    NoStartingPoints,

    #[error(
        "deflation weight beta = {beta} does not exceed the spectral spread {spread} of the \
         Hamiltonian; the deflated minimum would be ground + beta, not the first excited level"
    )]
    BetaTooSmall { beta: f64, spread: f64 },

    #[error("invalid deflation weight {0}; must be finite and non-negative")]
    InvalidBeta(f64),

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("invalid coefficient row: {0}")]
    InvalidRow(String),

    #[error("duplicate internuclear distance R = {0}")]
    DuplicateDistance(f64),

    #[error("coefficient table is empty")]
    EmptyTable,

    #[error("R = {requested} is not on the tabulated grid (nearest: {})", Neighbours(.below, .above))]
    OffGrid {
        requested: f64,
        below: Option<f64>,
        above: Option<f64>,
    },
}

struct Neighbours<'a>(&'a Option<f64>, &'a Option<f64>);

impl core::fmt::Display for Neighbours<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match (self.0, self.1) {
            (Some(b), Some(a)) => write!(f, "{} and {}", Grid(*b), Grid(*a)),
            (Some(x), None) | (None, Some(x)) => write!(f, "{}", Grid(*x)),
            (None, None) => f.write_str("none"),
        }
    }
}

/// Shortest round-trip decimal with at least two fractional digits.
struct Grid(f64);

impl core::fmt::Display for Grid {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let text = alloc::format!("{}", self.0);
        let decimals = text.split_once('.').map_or(0, |(_, d)| d.len());
        f.write_str(&text)?;
        if decimals == 0 {
            f.write_str(".")?;
        }
        (decimals..2).try_for_each(|_| f.write_str("0"))
    }
}
