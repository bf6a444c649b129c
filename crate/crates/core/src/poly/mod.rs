//! Exact univariate polynomial arithmetic over `Z` and `F_p`.

mod int_poly;
mod mod_poly;
mod resultant;

pub use int_poly::IntPoly;
pub use mod_poly::{gcd_fp, irreducible_factor_degrees, DegreeMultiset, ModPoly};
pub use resultant::{bareiss_det, resultant, resultant_sylvester};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("cannot factor zero")]
    FactorZero,
}
