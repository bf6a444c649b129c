//! Resultants over the integers.
//!
//! [`resultant`] runs the subresultant polynomial remainder sequence;
//! [`resultant_sylvester`] takes the determinant of the Sylvester matrix by
//! fraction-free elimination and serves as an independent cross-check.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{IntPoly, PolyError};

/// `Res(f, g)` by the subresultant PRS.
///
/// Either argument being zero gives zero. For constants the usual
/// conventions hold: `Res(f, c) = c^deg f` and `Res(c, g) = c^deg g`.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        return BigInt::zero();
    };
    let (mut a, mut b, mut sign) = if df < dg {
        (g.clone(), f.clone(), df % 2 == 1 && dg % 2 == 1)
    } else {
        (f.clone(), g.clone(), false)
    };
    let (da, db) = (df.max(dg), df.min(dg));
    if db == 0 {
        let r = num_traits::pow(b.leading_coeff(), da);
        return if sign { -r } else { r };
    }

    let ca = a.content();
    let cb = b.content();
    a = a.div_scalar_exact(&ca);
    b = b.div_scalar_exact(&cb);
    let scale = num_traits::pow(ca, db) * num_traits::pow(cb, da);

    let mut g_acc = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let deg_a = a.degree().unwrap();
        let deg_b = b.degree().unwrap();
        let delta = deg_a - deg_b;
        if deg_a % 2 == 1 && deg_b % 2 == 1 {
            sign = !sign;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let divisor = &g_acc * num_traits::pow(h.clone(), delta);
        b = r.div_scalar_exact(&divisor);
        g_acc = a.leading_coeff();
        h = match delta {
            0 => h,
            1 => g_acc.clone(),
            _ => num_traits::pow(g_acc.clone(), delta) / num_traits::pow(h, delta - 1),
        };
        match b.degree() {
            None => return BigInt::zero(),
            Some(0) => break,
            Some(_) => {}
        }
    }
    let deg_a = a.degree().unwrap();
    let h = num_traits::pow(b.leading_coeff(), deg_a) / num_traits::pow(h, deg_a - 1);
    let r = scale * h;
    if sign {
        -r
    } else {
        r
    }
}

/// `Res(f, g)` as the determinant of the `(deg f + deg g)`-square Sylvester
/// matrix, evaluated by Bareiss elimination.
pub fn resultant_sylvester(f: &IntPoly, g: &IntPoly) -> Result<BigInt, PolyError> {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return Err(PolyError::ZeroPolynomial);
    };
    let size = m + n;
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (i, c) in f.coeffs().iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (i, c) in g.coeffs().iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    Ok(bareiss_det(rows))
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn prs_examples() {
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[1, -1, 1])), BigInt::from(1));
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[1, -1, 1])), BigInt::from(3));
        assert_eq!(resultant(&p(&[0, 2, 0, 1]), &p(&[5])), BigInt::from(125));
        assert_eq!(resultant(&p(&[5]), &p(&[0, 2, 0, 1])), BigInt::from(125));
    }

    #[test]
    fn zero_arguments() {
        assert!(resultant(&IntPoly::zero(), &p(&[1, 1])).is_zero());
        assert!(resultant(&p(&[1, 1]), &IntPoly::zero()).is_zero());
        assert_eq!(
            resultant_sylvester(&IntPoly::zero(), &p(&[1])),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn sylvester_examples() {
        let r = |a: &[i64], b: &[i64]| resultant_sylvester(&p(a), &p(b)).unwrap();
        assert_eq!(r(&[-1, 0, 1], &[1, -1, 1]), BigInt::from(3));
        assert_eq!(r(&[-1, 1], &[1, 1]), BigInt::from(2));
        assert_eq!(r(&[1, 0, 1], &[1, 0, 1]), BigInt::zero());
        assert_eq!(r(&[3], &[4]), BigInt::one());
    }

    #[test]
    fn degree_gap_and_sign() {
        // deg 3 and deg 1: (-1)^(3*1) flips.
        let f = p(&[1, 2, 0, 1]);
        let g = p(&[-2, 1]);
        assert_eq!(resultant(&g, &f), -resultant(&f, &g));
        assert_eq!(resultant(&f, &g), resultant_sylvester(&f, &g).unwrap());
        // Non-monic with sparse remainders (degree drops by more than one).
        let f = p(&[1, 0, 0, 0, 0, 3]);
        let g = p(&[2, 0, 0, 7]);
        assert_eq!(resultant(&f, &g), resultant_sylvester(&f, &g).unwrap());
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let m = vec![
            vec![BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(0)],
        ];
        assert_eq!(bareiss_det(m), BigInt::from(-1));
    }
}
