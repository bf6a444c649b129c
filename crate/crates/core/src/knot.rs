//! Knot records, Alexander polynomial normalization and knot tables.
//!
//! Alexander polynomials are kept as the symmetric Laurent representative
//! `a_{-d} t^{-d} + ... + a_d t^d` with `a_{-i} = a_i` and `Δ(1) = 1`.
//! Sources using the `Δ(1) = -1` convention are sign-flipped on input;
//! any other Laurent shift must be normalized by the caller.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::IntPoly;

/// Tables bundled with the crate.
pub const BUNDLED_TABLE: &str = include_str!("../data/knots.json");

#[derive(Debug, Error)]
pub enum KnotError {
    #[error("Alexander coefficient list must be nonempty with odd length, got length {0}")]
    EvenLength(usize),
    #[error("Alexander polynomial is not palindromic")]
    NotPalindromic,
    #[error("Alexander polynomial has value {0} at t = 1, expected ±1")]
    BadValueAtOne(BigInt),
    #[error("Seifert matrix must be square, got a row of length {found} in a {size}x{size} matrix")]
    SeifertNotSquare { size: usize, found: usize },
    #[error("Seifert matrix gives det(V - tV^T) = {0}, which is not an Alexander polynomial")]
    InvalidSeifert(IntPoly),
    #[error("Seifert matrix gives {from_seifert}, stored Alexander polynomial is {stored}")]
    SeifertMismatch {
        stored: AlexanderPoly,
        from_seifert: AlexanderPoly,
    },
    #[error("fibered knot must have genus equal to Alexander half-degree {half_degree}, got {genus}")]
    FiberedGenusMismatch { genus: u32, half_degree: usize },
    #[error("genus {genus} is smaller than Alexander half-degree {half_degree}")]
    GenusBelowDegree { genus: u32, half_degree: usize },
    #[error("arc index must be at least 2, got {0}")]
    ArcIndexTooSmall(u32),
    #[error("knot `{name}`: {source}")]
    Entry {
        name: String,
        #[source]
        source: Box<KnotError>,
    },
    #[error("duplicate knot name `{0}`")]
    DuplicateName(String),
    #[error("unknown knot `{0}`")]
    UnknownKnot(String),
    #[error("malformed knot table: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("cannot read knot table: {0}")]
    Io(#[from] std::io::Error),
}

/// Symmetric, `Δ(1) = 1` normalized Alexander polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlexanderPoly {
    /// Coefficients of `t^-d ..= t^d`.
    coeffs: Vec<BigInt>,
}

impl AlexanderPoly {
    pub fn unknot() -> Self {
        Self {
            coeffs: vec![BigInt::one()],
        }
    }

    /// Validates a symmetric coefficient list (exponents `-d..=d`).
    ///
    /// Outer zero pairs are trimmed and the overall sign is flipped when
    /// the value at 1 is `-1`.
    pub fn from_symmetric(coeffs: Vec<BigInt>) -> Result<Self, KnotError> {
        if coeffs.len().is_multiple_of(2) {
            return Err(KnotError::EvenLength(coeffs.len()));
        }
        if coeffs.iter().ne(coeffs.iter().rev()) {
            return Err(KnotError::NotPalindromic);
        }
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs[0].is_zero() {
            coeffs.pop();
            coeffs.remove(0);
        }
        Self::fix_sign(coeffs)
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self, KnotError> {
        Self::from_symmetric(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Normalizes an ordinary polynomial that equals `±t^k Δ(t)`.
    pub fn from_laurent(f: &IntPoly) -> Result<Self, KnotError> {
        if f.is_zero() {
            return Err(KnotError::InvalidSeifert(f.clone()));
        }
        let v = f.t_valuation();
        let coeffs = f.coeffs()[v..].to_vec();
        Self::from_symmetric(coeffs)
    }

    fn fix_sign(mut coeffs: Vec<BigInt>) -> Result<Self, KnotError> {
        let at_one: BigInt = coeffs.iter().sum();
        if at_one == -BigInt::one() {
            for c in coeffs.iter_mut() {
                *c = -&*c;
            }
        } else if !at_one.is_one() {
            return Err(KnotError::BadValueAtOne(at_one));
        }
        Ok(Self { coeffs })
    }

    /// Top exponent `d` of the symmetric representative.
    pub fn half_degree(&self) -> usize {
        self.coeffs.len() / 2
    }

    /// Coefficients of `t^-d ..= t^d`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^i` for `-d <= i <= d`, zero outside.
    pub fn coeff(&self, i: i64) -> BigInt {
        let d = self.half_degree() as i64;
        if i.abs() > d {
            return BigInt::zero();
        }
        self.coeffs[(i + d) as usize].clone()
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// `t^d Δ(t)`, an ordinary polynomial of degree `2d`.
    pub fn tilde(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }

    /// Product of Alexander polynomials (the polynomial of a connected sum).
    pub fn mul(&self, other: &Self) -> Self {
        let prod = &self.tilde() * &other.tilde();
        Self {
            coeffs: prod.into_coeffs(),
        }
    }

    /// Coefficients as `i64`, when they fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Display for AlexanderPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.half_degree() as i64;
        let mut first = true;
        for (idx, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = idx as i64 - d;
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let m = if mag.is_one() && e != 0 {
                String::new()
            } else {
                mag.to_string()
            };
            match e {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{m}t")?,
                _ => write!(f, "{m}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Normalized `det(V - t V^T)` for a square Seifert matrix `V`.
pub fn alexander_from_seifert(v: &[Vec<i64>]) -> Result<AlexanderPoly, KnotError> {
    let n = v.len();
    if let Some(row) = v.iter().find(|r| r.len() != n) {
        return Err(KnotError::SeifertNotSquare {
            size: n,
            found: row.len(),
        });
    }
    let m: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| IntPoly::from_i64s(&[v[i][j], -v[j][i]]))
                .collect()
        })
        .collect();
    let det = poly_det(m);
    AlexanderPoly::from_laurent(&det).map_err(|_| KnotError::InvalidSeifert(det))
}

/// Bareiss elimination over `Z[t]`; every division is exact.
fn poly_det(mut m: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut negate = false;
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return IntPoly::zero();
            };
            m.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
            m[i][k] = IntPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// On-disk shape of one knot-table entry.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct KnotRecord {
    pub name: String,
    pub alexander: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arc_index: Option<u32>,
    pub fibered: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seifert: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Knot {
    pub name: String,
    pub alexander: AlexanderPoly,
    pub genus: Option<u32>,
    pub arc_index: Option<u32>,
    pub fibered: bool,
    pub seifert: Option<Vec<Vec<i64>>>,
}

impl Knot {
    /// Builds and validates a knot.
    pub fn new(
        name: impl Into<String>,
        alexander: AlexanderPoly,
        genus: Option<u32>,
        arc_index: Option<u32>,
        fibered: bool,
        seifert: Option<Vec<Vec<i64>>>,
    ) -> Result<Self, KnotError> {
        let knot = Self {
            name: name.into(),
            alexander,
            genus,
            arc_index,
            fibered,
            seifert,
        };
        knot.validate().map_err(|e| KnotError::Entry {
            name: knot.name.clone(),
            source: Box::new(e),
        })?;
        Ok(knot)
    }

    fn validate(&self) -> Result<(), KnotError> {
        let half_degree = self.alexander.half_degree();
        if let Some(genus) = self.genus {
            if (genus as usize) < half_degree {
                return Err(KnotError::GenusBelowDegree { genus, half_degree });
            }
            if self.fibered && genus as usize != half_degree {
                return Err(KnotError::FiberedGenusMismatch { genus, half_degree });
            }
        }
        if let Some(a) = self.arc_index.filter(|&a| a < 2) {
            return Err(KnotError::ArcIndexTooSmall(a));
        }
        if let Some(v) = &self.seifert {
            let from_seifert = alexander_from_seifert(v)?;
            if from_seifert != self.alexander {
                return Err(KnotError::SeifertMismatch {
                    stored: self.alexander.clone(),
                    from_seifert,
                });
            }
        }
        Ok(())
    }

    pub fn from_record(rec: KnotRecord) -> Result<Self, KnotError> {
        let wrap = |e| KnotError::Entry {
            name: rec.name.clone(),
            source: Box::new(e),
        };
        let alexander = AlexanderPoly::from_i64s(&rec.alexander).map_err(wrap)?;
        Self::new(
            rec.name.clone(),
            alexander,
            rec.genus,
            rec.arc_index,
            rec.fibered,
            rec.seifert,
        )
    }

    pub fn to_record(&self) -> KnotRecord {
        KnotRecord {
            name: self.name.clone(),
            alexander: self
                .alexander
                .to_i64s()
                .expect("table coefficients fit in i64"),
            genus: self.genus,
            arc_index: self.arc_index,
            fibered: self.fibered,
            seifert: self.seifert.clone(),
        }
    }

    /// The unknot, with genus 0 and arc index 2.
    pub fn unknot() -> Self {
        Self {
            name: "unknot".into(),
            alexander: AlexanderPoly::unknot(),
            genus: Some(0),
            arc_index: Some(2),
            fibered: true,
            seifert: None,
        }
    }

    /// `Δ̃_K(t) = t^d Δ_K(t)`.
    pub fn tilde(&self) -> IntPoly {
        self.alexander.tilde()
    }

    pub fn half_degree(&self) -> usize {
        self.alexander.half_degree()
    }
}

/// Ordered collection of knots with unique names.
#[derive(Clone, Debug, Default)]
pub struct KnotTable {
    entries: Vec<Knot>,
    index: HashMap<String, usize>,
}

impl KnotTable {
    pub fn new(entries: Vec<Knot>) -> Result<Self, KnotError> {
        let mut index = HashMap::with_capacity(entries.len());
        for (i, k) in entries.iter().enumerate() {
            if index.insert(k.name.clone(), i).is_some() {
                return Err(KnotError::DuplicateName(k.name.clone()));
            }
        }
        Ok(Self { entries, index })
    }

    /// The table shipped with the crate.
    pub fn bundled() -> Self {
        load_table(BUNDLED_TABLE).expect("bundled table is valid")
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, KnotError> {
        load_table(&std::fs::read_to_string(path)?)
    }

    pub fn entries(&self) -> &[Knot] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Knot> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    pub fn lookup(&self, name: &str) -> Result<&Knot, KnotError> {
        self.get(name)
            .ok_or_else(|| KnotError::UnknownKnot(name.to_owned()))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Knot> {
        self.entries.iter()
    }
}

impl<'a> IntoIterator for &'a KnotTable {
    type Item = &'a Knot;
    type IntoIter = std::slice::Iter<'a, Knot>;
    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}

/// Parses and validates a knot-table JSON document.
pub fn load_table(document: &str) -> Result<KnotTable, KnotError> {
    let records: Vec<KnotRecord> = serde_json::from_str(document)?;
    let knots = records
        .into_iter()
        .map(Knot::from_record)
        .collect::<Result<Vec<_>, _>>()?;
    KnotTable::new(knots)
}
