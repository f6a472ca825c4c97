use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("expected a {expected:?} matrix, found {found:?}")]
    Shape {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("matrix has {len} entries, expected {rows}x{cols}")]
    EntryCount {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("{which} is not unitary (residual {residual:e})")]
    NotUnitary { which: &'static str, residual: f64 },

    #[error("{which} is not a monomial unitary matrix")]
    NotMonomial { which: &'static str },

    #[error("{which} violates the unit-modulus constraint (deviation {deviation:e})")]
    Modulus { which: &'static str, deviation: f64 },

    #[error("degenerate parameters: z/y = -conj(z)/x (distance {distance:e})")]
    DegenerateEq5 { distance: f64 },

    #[error("not a complex Hadamard matrix (unitarity residual {unitarity:e}, modulus deviation {modulus:e})")]
    NotChm { unitarity: f64, modulus: f64 },

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("JSON error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        let text = e.to_string();
        Error::Json {
            line: e.line(),
            column: e.column(),
            message: text.strip_suffix(&suffix).unwrap_or(&text).to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
