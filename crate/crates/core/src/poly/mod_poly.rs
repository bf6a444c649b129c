//! Dense univariate polynomials over a prime field `F_p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{IntPoly, PolyError};
use crate::primes::is_prime_u64;

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= p {
        s.wrapping_sub(p)
    } else {
        s
    }
}

#[inline]
fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// A polynomial in `F_p[t]` with residues in `[0, p)`, ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModPoly {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    /// Reduces raw residues mod `p`; `p` must pass the primality test.
    pub fn new(modulus: u64, coeffs: Vec<u64>) -> Result<Self, PolyError> {
        if !is_prime_u64(modulus) {
            return Err(PolyError::NotPrime(modulus));
        }
        Ok(Self::new_unchecked(
            modulus,
            coeffs.into_iter().map(|c| c % modulus).collect(),
        ))
    }

    fn new_unchecked(modulus: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { modulus, coeffs }
    }

    /// Image of an integer polynomial under `Z -> F_p`.
    pub fn from_int_poly(f: &IntPoly, modulus: u64) -> Result<Self, PolyError> {
        if !is_prime_u64(modulus) {
            return Err(PolyError::NotPrime(modulus));
        }
        let m = BigInt::from(modulus);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().expect("residue fits in u64"))
            .collect();
        Ok(Self::new_unchecked(modulus, coeffs))
    }

    pub fn zero(modulus: u64) -> Self {
        Self::new_unchecked(modulus, Vec::new())
    }

    pub fn one(modulus: u64) -> Self {
        Self::new_unchecked(modulus, vec![1 % modulus])
    }

    /// The polynomial `t`.
    pub fn t(modulus: u64) -> Self {
        Self::new_unchecked(modulus, vec![0, 1])
    }

    /// `t^n - 1`
    pub fn cyclotomic_difference(modulus: u64, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = modulus - 1;
        coeffs[n] = add_mod(coeffs[n], 1, modulus);
        Self::new_unchecked(modulus, coeffs)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn same_field(&self, other: &Self) -> Result<(), PolyError> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(PolyError::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    /// Scales to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lc(), self.modulus);
        self.scale(inv)
    }

    fn scale(&self, k: u64) -> Self {
        let p = self.modulus;
        Self::new_unchecked(p, self.coeffs.iter().map(|&c| mul_mod(c, k, p)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        Self::new_unchecked(
            p,
            (0..n)
                .map(|i| add_mod(get(&self.coeffs, i), get(&other.coeffs, i), p))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
        Self::new_unchecked(
            p,
            (0..n)
                .map(|i| sub_mod(get(&self.coeffs, i), get(&other.coeffs, i), p))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.modulus;
        if self.is_zero() || other.is_zero() {
            return Self::zero(p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, p), p);
            }
        }
        Self::new_unchecked(p, out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let p = self.modulus;
        let dd = d.degree().expect("division by zero polynomial");
        if self.coeffs.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(d.lc(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + dd], inv, p);
            q[k] = c;
            if c != 0 {
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    r[k + i] = sub_mod(r[k + i], mul_mod(c, dc, p), p);
                }
            }
        }
        r.truncate(dd);
        (Self::new_unchecked(p, q), Self::new_unchecked(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn derivative(&self) -> Self {
        let p = self.modulus;
        Self::new_unchecked(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
                .collect(),
        )
    }

    /// `self^e mod m`
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut acc = Self::one(self.modulus).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Divides out the largest power of `t`.
    pub fn strip_t_power(&self) -> (usize, Self) {
        let a = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if a == 0 || self.is_zero() {
            return (0, self.clone());
        }
        (a, Self::new_unchecked(self.modulus, self.coeffs[a..].to_vec()))
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        let f = self.monic();
        match f.degree() {
            None => return f,
            Some(0) => return Self::one(self.modulus),
            Some(_) => {}
        }
        let d = f.derivative();
        if d.is_zero() {
            return f.pth_root().squarefree_part();
        }
        let g = gcd_fp(&f, &d).expect("same modulus");
        let w = f.div_rem(&g).0;
        let r = g.squarefree_part();
        // lcm(w, rad(g))
        let common = gcd_fp(&w, &r).expect("same modulus");
        w.mul(&r).div_rem(&common).0.monic()
    }

    /// For `f(t) = h(t^p)` returns `h`, the `p`-th root of `f` over `F_p`.
    fn pth_root(&self) -> Self {
        let p = self.modulus as usize;
        Self::new_unchecked(
            self.modulus,
            self.coeffs.iter().step_by(p).copied().collect(),
        )
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (mod {})", self.modulus);
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, _) => c.to_string(),
                (1, 1) => "t".into(),
                (1, _) => format!("{c}t"),
                (_, 1) => format!("t^{i}"),
                _ => format!("{c}t^{i}"),
            })
            .collect();
        write!(f, "{} (mod {})", terms.join(" + "), self.modulus)
    }
}

/// Monic gcd in `F_p[t]`; `gcd(0, 0) = 0`.
pub fn gcd_fp(f: &ModPoly, g: &ModPoly) -> Result<ModPoly, PolyError> {
    f.same_field(g)?;
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// Degrees of irreducible factors with a count of how many distinct factors
/// share each degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeMultiset {
    entries: Vec<(usize, usize)>,
}

impl DegreeMultiset {
    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Distinct degrees that occur.
    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&(d, _)| d)
    }

    /// `sum d * count`
    pub fn total_degree(&self) -> usize {
        self.entries.iter().map(|&(d, c)| d * c).sum()
    }
}

/// Degrees of the irreducible factors of `f` other than `t`.
///
/// Strips the `t^a` factor, passes to the squarefree part, then runs
/// distinct-degree factorization. Repeated factors are counted once.
pub fn irreducible_factor_degrees(f: &ModPoly) -> Result<DegreeMultiset, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let p = f.modulus();
    let (_, stripped) = f.strip_t_power();
    let mut rest = stripped.squarefree_part();
    let x = ModPoly::t(p);
    let mut h = x.clone();
    let mut entries = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(p, &rest);
        let g = gcd_fp(&rest, &h.sub(&x))?;
        if !g.is_one() {
            let gd = g.degree().unwrap();
            entries.push((d, gd / d));
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        match entries.last_mut() {
            Some(last) if last.0 == deg => last.1 += 1,
            _ => entries.push((deg, 1)),
        }
    }
    Ok(DegreeMultiset { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(p: u64, c: &[u64]) -> ModPoly {
        ModPoly::new(p, c.to_vec()).unwrap()
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(ModPoly::new(4, vec![1]), Err(PolyError::NotPrime(4)));
        assert!(ModPoly::from_int_poly(&IntPoly::one(), 1).is_err());
    }

    #[test]
    fn reduces_negative_coefficients() {
        let f = ModPoly::from_int_poly(&IntPoly::from_i64s(&[-1, 3, -1]), 3).unwrap();
        assert_eq!(f.coeffs(), &[2, 0, 2]);
    }

    #[test]
    fn gcd_examples() {
        let f = mp(2, &[1, 1, 1]);
        let g = ModPoly::cyclotomic_difference(2, 3);
        assert_eq!(gcd_fp(&f, &g).unwrap(), f);
        let f = mp(5, &[2, 0, 4]);
        assert_eq!(gcd_fp(&f, &ModPoly::zero(5)).unwrap(), mp(5, &[3, 0, 1]));
        assert!(gcd_fp(&mp(2, &[1, 0, 1]), &mp(2, &[1, 1, 1])).unwrap().is_one());
        assert!(gcd_fp(&ModPoly::zero(3), &ModPoly::zero(3)).unwrap().is_zero());
    }

    #[test]
    fn gcd_modulus_mismatch() {
        assert_eq!(
            gcd_fp(&mp(2, &[1]), &mp(3, &[1])),
            Err(PolyError::ModulusMismatch(2, 3))
        );
    }

    #[test]
    fn factor_degree_examples() {
        let deg = |f: ModPoly| irreducible_factor_degrees(&f).unwrap().entries().to_vec();
        assert_eq!(deg(mp(2, &[1, 1, 1])), vec![(2, 1)]);
        assert_eq!(deg(mp(5, &[0, 0, 0, 1])), vec![]);
        // (t^2 + 1)(t + 1) = t^3 + t^2 + t + 1 over F_3
        assert_eq!(deg(mp(3, &[1, 1, 1, 1])), vec![(1, 1), (2, 1)]);
        assert_eq!(
            irreducible_factor_degrees(&ModPoly::zero(7)),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn factor_degrees_count_distinct_factors() {
        // t^4 - 1 over F_5 splits into four linear factors.
        let f = ModPoly::cyclotomic_difference(5, 4);
        assert_eq!(irreducible_factor_degrees(&f).unwrap().entries(), &[(1, 4)]);
        // (t+1)^2 over F_3: squarefree part is t + 1.
        let f = mp(3, &[1, 2, 1]);
        assert_eq!(irreducible_factor_degrees(&f).unwrap().entries(), &[(1, 1)]);
    }

    #[test]
    fn squarefree_part_handles_pth_powers() {
        // (t^2 + t + 1)^2 * (t + 1) over F_2; derivative of the square vanishes.
        let a = mp(2, &[1, 1, 1]);
        let f = a.mul(&a).mul(&mp(2, &[1, 1]));
        assert_eq!(f.squarefree_part(), a.mul(&mp(2, &[1, 1])));
        // t^9 + 1 = (t + 1)^9 over F_3
        let f = mp(3, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(f.squarefree_part(), mp(3, &[1, 1]));
    }

    #[test]
    fn div_rem_identity() {
        let a = mp(7, &[3, 1, 4, 1, 5]);
        let b = mp(7, &[2, 6, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }
}
