use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by a series with no nonzero stored coefficient")]
    DivideByZeroSeries,

    #[error("series known only through q^{available}, needed q^{needed}")]
    InsufficientOrder { needed: i64, available: i64 },

    #[error("Appell-Lerch sum m({x}, q^{modulus}, {z}) has a vanishing denominator at r = {r}")]
    Pole {
        x: String,
        modulus: i64,
        z: String,
        r: i64,
    },

    #[error("theta function {0} vanishes identically")]
    ThetaZero(String),

    #[error("infinite product ({0})_inf does not truncate")]
    NonTruncating(String),

    #[error("dissection with a primitive {0}-th root of unity is not supported")]
    UnsupportedCyclotomic(i64),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("exponent {0} is not an integer")]
    NonIntegralExponent(String),

    #[error("exponent does not fit in 64 bits: {0}")]
    ExponentOverflow(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("malformed series encoding: {0}")]
    Decode(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error with all context layers stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::Context { source, .. } => source.root(),
            other => other,
        }
    }
}

pub(crate) trait ResultExt<T> {
    fn context_with<F: FnOnce() -> String>(self, f: F) -> Result<T>;
}

impl<T> ResultExt<T> for Result<T> {
    fn context_with<F: FnOnce() -> String>(self, f: F) -> Result<T> {
        self.map_err(|e| e.context(f()))
    }
}
