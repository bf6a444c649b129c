//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use covercalc_core::knot::{AlexanderPoly, Knot};
use covercalc_core::IntPoly;
use num_bigint::BigInt;
use rand::Rng;

/// Random symmetric Alexander polynomial with half-degree `d`, outer
/// coefficients in `[-bound, bound]` and the middle fixed by `Δ(1) = 1`.
pub fn random_alexander<R: Rng>(rng: &mut R, d: usize, bound: i64) -> AlexanderPoly {
    let mut side: Vec<i64> = (0..d).map(|_| rng.gen_range(-bound..=bound)).collect();
    if d > 0 && side[0] == 0 {
        side[0] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    let middle = 1 - 2 * side.iter().sum::<i64>();
    let mut coeffs = side.clone();
    coeffs.push(middle);
    coeffs.extend(side.iter().rev());
    AlexanderPoly::from_i64s(&coeffs).expect("constructed to be valid")
}

pub fn knot_from(name: &str, a: AlexanderPoly) -> Knot {
    Knot::new(name, a, None, None, false, None).expect("no optional data to contradict")
}

pub fn random_int_poly<R: Rng>(rng: &mut R, max_deg: usize, bound: i64) -> IntPoly {
    loop {
        let d = rng.gen_range(0..=max_deg);
        let c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-bound..=bound)).collect();
        let p = IntPoly::from_i64s(&c);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Exact division over `Q` done with `i128` fractions, independent of
/// `IntPoly::div_exact`. Returns whether `d` divides `f` in `Q[t]` with a
/// quotient that has integer coefficients.
pub fn divides_over_q_oracle(d: &[i64], f: &[i64]) -> bool {
    let trim = |v: &[i64]| {
        let mut v = v.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let (d, f) = (trim(d), trim(f));
    if f.is_empty() {
        return true;
    }
    if d.is_empty() || d.len() > f.len() {
        return false;
    }
    // numerator / denominator pairs
    let mut rem: Vec<(i128, i128)> = f.iter().map(|&c| (c as i128, 1)).collect();
    let lead = *d.last().unwrap() as i128;
    let mut quotient_integral = true;
    for k in (0..=f.len() - d.len()).rev() {
        let (n, den) = rem[k + d.len() - 1];
        let (qn, qd) = reduce(n, den * lead);
        if qd != 1 {
            quotient_integral = false;
        }
        for (i, &dc) in d.iter().enumerate() {
            let (rn, rd) = rem[k + i];
            rem[k + i] = reduce(rn * qd - qn * dc as i128 * rd, rd * qd);
        }
    }
    rem.iter().all(|&(n, _)| n == 0) && quotient_integral
}

fn reduce(n: i128, d: i128) -> (i128, i128) {
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let g = gcd(n, d).max(1);
    let (n, d) = (n / g, d / g);
    if d < 0 {
        (-n, -d)
    } else {
        (n, d)
    }
}

pub fn to_i64s(p: &IntPoly) -> Vec<i64> {
    p.coeffs()
        .iter()
        .map(|c| i64::try_from(c.clone()).expect("small test coefficients"))
        .collect()
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}
