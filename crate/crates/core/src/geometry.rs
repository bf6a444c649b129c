//! Gromov-norm and volume bounds for fibered knots, dilatation estimates
//! from fixed-point data, and genus bookkeeping for fibered satellites.
//!
//! All real arithmetic is `f64`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("genus must be at least 1, got {0}")]
    Genus(u64),
    #[error("arc index must be at least 2, got {0}")]
    ArcIndex(u64),
    #[error("Euler characteristic must be at most -1, got {0}")]
    EulerCharacteristic(i64),
    #[error("dilatation must exceed 1, got {0}")]
    Dilatation(f64),
    #[error("no fixed-point samples given")]
    NoSamples,
    #[error("sample iterates must be positive and strictly increasing")]
    SampleOrder,
    #[error("torus knot parameters ({0}, {1}) must be coprime with |p|, |q| >= 2")]
    TorusParameters(i64, i64),
    #[error("cable parameters ({0}, {1}) must be coprime with |q| >= 2")]
    CableParameters(i64, i64),
    #[error("connected sum needs at least one summand, each of genus >= 1")]
    Summands,
    #[error("norms must be nonnegative, got {0}")]
    NegativeNorm(f64),
    #[error("invalid satellite profile: {0}")]
    Profile(&'static str),
}

/// Numerical constants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constants {
    /// Volume of the regular ideal tetrahedron in hyperbolic 3-space.
    pub v3: f64,
}

/// `v3` to ten significant digits.
pub const V3: f64 = 1.014941606;

impl Default for Constants {
    fn default() -> Self {
        Self { v3: V3 }
    }
}

/// `ln(n!)`: exact factorial for `n <= 20`, Stirling series beyond.
pub fn ln_factorial(n: u64) -> f64 {
    if n <= 20 {
        return ((1..=n).product::<u64>() as f64).ln();
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // Truncation error after the x^-7 term is below 1/(1188 x^9).
    let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + series
}

/// `(3π / v3) (2g - 1) ln(δ!)`
pub fn gromov_norm_bound(genus: u64, delta: u64) -> Result<f64, GeometryError> {
    gromov_norm_bound_with(&Constants::default(), genus, delta)
}

pub fn gromov_norm_bound_with(c: &Constants, genus: u64, delta: u64) -> Result<f64, GeometryError> {
    if genus < 1 {
        return Err(GeometryError::Genus(genus));
    }
    if delta < 2 {
        return Err(GeometryError::ArcIndex(delta));
    }
    let scale = 3.0 * std::f64::consts::PI / c.v3;
    Ok(scale * (2 * genus - 1) as f64 * ln_factorial(delta))
}

/// Volume bound `3π |χ| ln λ` for the mapping torus of a pseudo-Anosov map.
pub fn km_volume_bound(chi: i64, dilatation: f64) -> Result<f64, GeometryError> {
    if chi > -1 {
        return Err(GeometryError::EulerCharacteristic(chi));
    }
    if dilatation.is_nan() || dilatation <= 1.0 {
        return Err(GeometryError::Dilatation(dilatation));
    }
    Ok(3.0 * std::f64::consts::PI * chi.unsigned_abs() as f64 * dilatation.ln())
}

/// A fixed-point count (or an upper bound on one) for the `n`-th iterate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixSample {
    pub n: u32,
    pub count: BigUint,
}

impl FixSample {
    pub fn new(n: u32, count: impl Into<BigUint>) -> Self {
        Self {
            n,
            count: count.into(),
        }
    }

    /// `count^(1/n)`, exact when `count` is a perfect `n`-th power.
    pub fn root(&self) -> f64 {
        if self.count.is_zero() {
            return 0.0;
        }
        let r = self.count.nth_root(self.n);
        if r.pow(self.n) == self.count {
            if let Some(v) = r.to_f64() {
                return v;
            }
        }
        (ln_biguint(&self.count) / self.n as f64).exp()
    }
}

fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_u64().expect("fits").to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("fits") as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Upper estimate for a dilatation from fixed-point data.
///
/// Each sample gives `λ <= count^(1/n)` when the count bounds the fixed
/// points of the `n`-th iterate, so the estimate is the minimum over
/// samples. It bounds, rather than computes, `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct DilatationEstimate {
    pub upper: f64,
    pub witnesses: Vec<FixSample>,
    /// Some sample had a zero count, which no pseudo-Anosov map produces.
    pub degenerate: bool,
}

pub fn dilatation_upper(samples: &[FixSample]) -> Result<DilatationEstimate, GeometryError> {
    if samples.is_empty() {
        return Err(GeometryError::NoSamples);
    }
    if samples[0].n == 0 || samples.windows(2).any(|w| w[0].n >= w[1].n) {
        return Err(GeometryError::SampleOrder);
    }
    let degenerate = samples.iter().any(|s| s.count.is_zero());
    let upper = samples
        .iter()
        .map(FixSample::root)
        .fold(f64::INFINITY, f64::min);
    Ok(DilatationEstimate {
        upper,
        witnesses: samples.to_vec(),
        degenerate,
    })
}

fn torus_genus(p: i64, q: i64) -> u64 {
    (p.unsigned_abs() - 1) * (q.unsigned_abs() - 1) / 2
}

/// Genus `(|p| - 1)(|q| - 1) / 2` of the torus knot `T(p, q)`.
pub fn torus_knot_genus(p: i64, q: i64) -> Result<u64, GeometryError> {
    let (a, b) = (p.unsigned_abs(), q.unsigned_abs());
    if a < 2 || b < 2 || a.gcd(&b) != 1 {
        return Err(GeometryError::TorusParameters(p, q));
    }
    Ok(torus_genus(p, q))
}

/// Genus `|q| g(C) + g(T(p, q))` of the `(p, q)`-cable of a companion `C`.
pub fn cable_genus(p: i64, q: i64, companion_genus: u64) -> Result<u64, GeometryError> {
    let (a, b) = (p.unsigned_abs(), q.unsigned_abs());
    if a < 1 || b < 2 || a.gcd(&b) != 1 {
        return Err(GeometryError::CableParameters(p, q));
    }
    if companion_genus < 1 {
        return Err(GeometryError::Genus(companion_genus));
    }
    Ok(b * companion_genus + torus_genus(p, q))
}

pub fn connected_sum_genus(genera: &[u64]) -> Result<u64, GeometryError> {
    if genera.is_empty() || genera.contains(&0) {
        return Err(GeometryError::Summands);
    }
    Ok(genera.iter().sum())
}

/// One orbit of companion pieces: `winding` copies of a companion fiber
/// surface of genus `companion_genus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub winding: u64,
    pub companion_genus: u64,
}

/// Claimed decomposition of the fiber surface of a fibered satellite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatelliteProfile {
    pub total_genus: u64,
    /// `χ(Σ_0)` of the outermost piece.
    pub outer_chi: i64,
    pub orbits: Vec<Orbit>,
}

impl SatelliteProfile {
    pub fn new(total_genus: u64, outer_chi: i64, orbits: Vec<Orbit>) -> Result<Self, GeometryError> {
        let p = Self {
            total_genus,
            outer_chi,
            orbits,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        if self.total_genus < 1 {
            return Err(GeometryError::Profile("total genus must be at least 1"));
        }
        if self.outer_chi > -1 {
            return Err(GeometryError::Profile("outer Euler characteristic must be at most -1"));
        }
        if self
            .orbits
            .iter()
            .any(|o| o.winding < 1 || o.companion_genus < 1)
        {
            return Err(GeometryError::Profile("orbit winding and companion genus must be at least 1"));
        }
        Ok(())
    }

    /// Profile of the `(p, q)`-cable of a companion of the given genus. The
    /// outer piece has genus `g(T(p,q))` and `|q| + 1` boundary components.
    pub fn cable(p: i64, q: i64, companion_genus: u64) -> Result<Self, GeometryError> {
        let g = cable_genus(p, q, companion_genus)?;
        let outer_chi = 1 - 2 * torus_genus(p, q) as i64 - q.unsigned_abs() as i64;
        Self::new(
            g,
            outer_chi,
            vec![Orbit {
                winding: q.unsigned_abs(),
                companion_genus,
            }],
        )
    }

    /// Profile of a connected sum of at least two fibered knots; the outer
    /// piece is a planar surface with one more boundary than summands.
    pub fn connected_sum(genera: &[u64]) -> Result<Self, GeometryError> {
        if genera.len() < 2 {
            return Err(GeometryError::Summands);
        }
        let g = connected_sum_genus(genera)?;
        let orbits = genera
            .iter()
            .map(|&companion_genus| Orbit {
                winding: 1,
                companion_genus,
            })
            .collect();
        Self::new(g, 1 - genera.len() as i64, orbits)
    }
}

/// Whether `2g - 1 = -χ(Σ_0) + Σ m_j (2 g_j - 1)` holds exactly.
///
/// Pure arithmetic on the stored fields; it does not require the profile
/// to pass [`SatelliteProfile::validate`].
pub fn satellite_euler_check(profile: &SatelliteProfile) -> bool {
    let lhs = 2 * profile.total_genus as i128 - 1;
    let rhs = -(profile.outer_chi as i128)
        + profile
            .orbits
            .iter()
            .map(|o| o.winding as i128 * (2 * o.companion_genus as i128 - 1))
            .sum::<i128>();
    lhs == rhs
}

/// Winding numbers are bounded by genus: `g >= m g(C)`.
pub fn winding_bound_check(genus: u64, winding: u64, companion_genus: u64) -> bool {
    genus as u128 >= winding as u128 * companion_genus as u128
}

/// Gromov norm of a satellite: the outer piece plus every companion.
pub fn gromov_aggregate(outer_bound: f64, companion_norms: &[f64]) -> Result<f64, GeometryError> {
    if let Some(&bad) = std::iter::once(&outer_bound)
        .chain(companion_norms)
        .find(|&&x| x.is_nan() || x < 0.0)
    {
        return Err(GeometryError::NegativeNorm(bad));
    }
    Ok(outer_bound + companion_norms.iter().sum::<f64>())
}
