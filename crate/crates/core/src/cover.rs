//! Homology of branched cyclic covers.
//!
//! `|H_1(Σ_n(K); Z)| = |Res(t^n - 1, Δ̃_K(t))|`, with zero standing for an
//! infinite group. The obstruction set `S_{K,p}` collects the primes
//! dividing `p^d - 1` over the degrees `d` of the irreducible factors of
//! `Δ̃_K mod p` other than `t`; whenever `n` avoids every multiple of an
//! element of `S_{K,p}`, `Σ_n(K)` is a `Z/p`-homology sphere.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::knot::Knot;
use crate::poly::{gcd_fp, irreducible_factor_degrees, resultant, IntPoly, ModPoly, PolyError};
use crate::primes::{is_prime_u64, prime_factors, primes_up_to, PrimeSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cover degree must be at least 1")]
    ZeroDegree,
    #[error("Δ̃ vanishes identically mod {0}; Alexander data is inconsistent")]
    VanishesModP(u64),
    #[error("arc index must be at least 2, got {0}")]
    ArcIndex(u64),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Order of `H_1(Σ_n(K); Z)`; an order of zero encodes an infinite group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoverOrder {
    pub n: u64,
    pub order: BigUint,
}

impl CoverOrder {
    pub fn is_infinite(&self) -> bool {
        self.order.is_zero()
    }
}

impl fmt::Display for CoverOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "∞")
        } else {
            write!(f, "{}", self.order)
        }
    }
}

fn check_prime(p: u64) -> Result<(), CoverError> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(CoverError::NotPrime(p))
    }
}

/// `|Res(t^n - 1, f)|` for an arbitrary integer polynomial `f`.
pub fn fox_order_poly(tilde: &IntPoly, n: u64) -> Result<CoverOrder, CoverError> {
    if n == 0 {
        return Err(CoverError::ZeroDegree);
    }
    let r = resultant(&IntPoly::cyclotomic_difference(n as usize), tilde);
    Ok(CoverOrder {
        n,
        order: r.abs().to_biguint().expect("absolute value is nonnegative"),
    })
}

/// Order of the first homology of the `n`-fold branched cyclic cover.
pub fn fox_order(knot: &Knot, n: u64) -> Result<CoverOrder, CoverError> {
    fox_order_poly(&knot.tilde(), n)
}

/// Gcd criterion: `Σ_n` is a `Z/p`-homology sphere iff `t^n - 1` and `Δ̃`
/// share no root in the algebraic closure of `F_p`.
pub fn is_zp_homology_sphere_poly(tilde: &IntPoly, n: u64, p: u64) -> Result<bool, CoverError> {
    check_prime(p)?;
    if n == 0 {
        return Err(CoverError::ZeroDegree);
    }
    let f = ModPoly::from_int_poly(tilde, p)?;
    if f.is_zero() {
        return Err(CoverError::VanishesModP(p));
    }
    let g = gcd_fp(&ModPoly::cyclotomic_difference(p, n as usize), &f)?;
    Ok(g.degree() == Some(0))
}

pub fn is_zp_homology_sphere(knot: &Knot, n: u64, p: u64) -> Result<bool, CoverError> {
    is_zp_homology_sphere_poly(&knot.tilde(), n, p)
}

/// `S_{K,p}` computed from any integer polynomial standing in for `Δ̃_K`.
pub fn skp_set_poly(tilde: &IntPoly, p: u64) -> Result<PrimeSet, CoverError> {
    check_prime(p)?;
    let f = ModPoly::from_int_poly(tilde, p)?;
    if f.is_zero() {
        return Err(CoverError::VanishesModP(p));
    }
    let degrees = irreducible_factor_degrees(&f)?;
    let pb = BigUint::from(p);
    let mut set = PrimeSet::empty();
    for d in degrees.degrees() {
        let m = num_traits::pow(pb.clone(), d) - BigUint::one();
        set = set.union(&prime_factors(&m)?);
    }
    Ok(set)
}

/// The obstruction set `S_{K,p}`.
pub fn skp_set(knot: &Knot, p: u64) -> Result<PrimeSet, CoverError> {
    skp_set_poly(&knot.tilde(), p)
}

/// True iff no element of `set` divides `n`.
pub fn admissible(n: u64, set: &PrimeSet) -> bool {
    let n = BigUint::from(n);
    set.iter().all(|q| !(&n % q).is_zero())
}

/// Primes `n <= limit` that are not multiples of any element of `S_{K,p}`.
///
/// `p` itself is always among them since `p` never lies in `S_{K,p}`.
pub fn admissible_primes(knot: &Knot, p: u64, limit: u64) -> Result<Vec<u64>, CoverError> {
    let set = skp_set(knot, p)?;
    Ok(primes_up_to(limit)
        .into_iter()
        .filter(|&n| admissible(n, &set))
        .collect())
}

/// Bounds on `dim HFK(Σ_n(K), K_n)` from an arc presentation with `delta`
/// arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HfkBound {
    /// `ceil((δ!)^n / 2^(δ-1))`
    pub tight: BigUint,
    /// `(δ!)^n`
    pub loose: BigUint,
}

pub fn hfk_dim_upper(delta: u64, n: u64) -> Result<HfkBound, CoverError> {
    if delta < 2 {
        return Err(CoverError::ArcIndex(delta));
    }
    if n == 0 {
        return Err(CoverError::ZeroDegree);
    }
    let fact: BigUint = (2..=delta).map(BigUint::from).product();
    let loose = num_traits::pow(fact, n as usize);
    let denom = BigUint::one() << (delta - 1);
    let tight = Integer::div_ceil(&loose, &denom);
    Ok(HfkBound { tight, loose })
}

/// Integer-polynomial gcd of `t^n - 1` and `Δ̃`; positive degree exactly
/// when the cover has infinite first homology.
pub fn cyclotomic_gcd(tilde: &IntPoly, n: u64) -> IntPoly {
    IntPoly::cyclotomic_difference(n as usize).gcd(tilde)
}

pub(crate) fn bigint_divides(a: &BigUint, b: &BigUint) -> bool {
    if a.is_zero() {
        return b.is_zero();
    }
    (b % a).is_zero()
}
