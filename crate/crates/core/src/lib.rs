//! Branched-cyclic-cover homology orders, prime obstruction sets,
//! ribbon-concordance necessary-condition filters and Gromov-norm style
//! bounds over a table of knots.
//!
//! Everything in [`poly`], [`knot`], [`cover`] and [`ribbon`] is exact
//! integer or finite-field arithmetic. [`geometry`] works in `f64`.

pub mod cover;
pub mod geometry;
pub mod knot;
pub mod poly;
pub mod primes;
pub mod ribbon;

pub use cover::{CoverError, CoverOrder};
pub use knot::{AlexanderPoly, Knot, KnotError, KnotTable};
pub use poly::{IntPoly, ModPoly, PolyError};
pub use primes::PrimeSet;
pub use ribbon::{ObstructParams, ObstructionReport, Verdict};
