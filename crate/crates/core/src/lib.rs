//! Optimal ate pairings on elliptic curves with cubic twists (embedding
//! degrees 9, 15 and 27), built over explicit tower extensions with an exact
//! base-field operation ledger.
//!
//! The crate is organised around the preset parameter sets in [`params`]:
//! each preset fixes a curve family member, its tower, its twist, and the
//! final-exponentiation schedule. [`pairing::PairingCtx`] computes the
//! pairing, reporting every base-field multiplication, squaring and
//! inversion to a [`costs::CostLedger`]; [`costs`] also carries the analytic
//! cost model the measured numbers are checked against, and [`reference`]
//! holds the slow independent oracles used by the test suite.

pub mod costs;
pub mod curve;
pub mod fp;
pub mod pairing;
pub mod params;
pub mod reference;
pub mod towers;

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus failed the primality test")]
    NotPrime,
    #[error("division by zero")]
    DivisionByZero,
    #[error("wrong residue class: {0}")]
    ResidueClass(&'static str),
    #[error("element does not belong to this field")]
    FieldMismatch,
    #[error("tower level mismatch")]
    LevelMismatch,
    #[error("unsupported Frobenius index {0}")]
    UnsupportedFrobenius(u32),
    #[error("element is not in the cyclotomic subgroup")]
    NotCyclotomic,
    #[error("tower construction: {0}")]
    TowerConstruction(&'static str),
    #[error("family evaluation is not integral at this x")]
    NotIntegral,
    #[error("point is not on the curve")]
    OffCurve,
    #[error("point at infinity where a finite point is required")]
    InfinitePoint,
    #[error("parameter validation failed: {0}")]
    InvalidParams(String),
    #[error("sampling exhausted its retry budget")]
    SamplingExhausted,
    #[error("malformed encoding")]
    Encoding,
    #[error("unknown preset label: {0}")]
    UnknownPreset(String),
}

pub type Result<T> = std::result::Result<T, Error>;
