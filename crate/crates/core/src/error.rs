use alloc::string::String;

/// Errors raised by the exact arithmetic and decision layers.
///
/// No variant ever stands in for a wrong answer: numeric steps that cannot
/// be certified within the configured precision cap surface as
/// [`Error::PrecisionCapExceeded`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("square root of a negative number")]
    NegativeInput,
    #[error("precision cap of {cap} bits exceeded")]
    PrecisionCapExceeded { cap: u32 },
    #[error("lattice basis is linearly dependent")]
    DependentBasis,
    #[error("enclosures are too wide for relation detection")]
    InsufficientPrecision,
    #[error("matrix is not a multiplication matrix of the field")]
    NotAMultiplicationMatrix,
    #[error("valuation is missing symbol {0}")]
    MissingSymbol(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = core::result::Result<T, Error>;

/// Precision policy shared by every escalation loop.
///
/// Loops start at `start_bits` and double; going past `cap_bits` is a hard
/// error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    pub start_bits: u32,
    pub cap_bits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            start_bits: 64,
            cap_bits: 65536,
        }
    }
}

impl Precision {
    pub fn with_cap(cap_bits: u32) -> Self {
        Precision {
            cap_bits,
            ..Precision::default()
        }
    }

    pub fn check(&self, bits: u32) -> Result<()> {
        if bits > self.cap_bits {
            Err(Error::PrecisionCapExceeded { cap: self.cap_bits })
        } else {
            Ok(())
        }
    }

    /// Doubles `bits`, failing once the cap is passed.
    pub fn escalate(&self, bits: u32) -> Result<u32> {
        let next = bits.saturating_mul(2);
        self.check(next)?;
        Ok(next)
    }
}
