use crate::arith::BigCount;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("number of summands must be at least 2, got {0}")]
    InvalidSummands(u32),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("residue {residue} is not reduced modulo {modulus}")]
    ResidueOutOfRange { residue: u64, modulus: u64 },

    #[error("factorization of {factored} does not match modulus {modulus}")]
    FactorizationMismatch { factored: u64, modulus: u64 },

    #[error("exact division failed: {divisor} does not divide {dividend}")]
    NotDivisible {
        dividend: BigCount,
        divisor: BigCount,
    },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{what} requires {required}, above the limit of {limit}")]
    ResourceLimit {
        what: &'static str,
        required: BigCount,
        limit: u64,
    },
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}
