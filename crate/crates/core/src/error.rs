use num_bigint::BigUint;
use thiserror::Error;

use crate::padic::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid finite setting: {0}")]
    InvalidSetting(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("ell = {ell} divides the field size")]
    EllDividesQ { ell: u64 },

    #[error("character index {0} is not regular")]
    NonRegularInput(BigUint),

    #[error("duality involution is undefined for a self-dual setting of odd degree {0} > 1")]
    DualityUndefined(u32),

    #[error("character index {0} is not dual-self-dual modulo ell")]
    DualityViolation(BigUint),

    #[error("modulus {modulus} exceeds the enumeration bound {bound}")]
    ModulusTooLarge { modulus: BigUint, bound: u64 },

    #[error("invalid cuspidal datum: {}", format_violations(.0))]
    Validation(Vec<Violation>),

    #[error("operation requires a distinguished datum (or an unramified twist of one)")]
    NotDistinguishedInput,

    #[error("root of unity of order {order} is not liftable in characteristic {ell}")]
    BadCharacteristic { order: u64, ell: u64 },

    #[error("characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u64, u64),

    #[error("{0}")]
    InvalidArgument(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| format!("[{}] {}", x.tag, x.message))
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
