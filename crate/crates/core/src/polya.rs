//! Two-colour bracelet counts (binary colourings of a cycle up to rotation and
//! reflection), read off the dihedral cycle index.
//!
//! With `x_k = 1 + y^k` substituted into
//!
//! ```text
//! Z(D_d) = 1/(2d) · ( Σ_{k|d} φ(k) x_k^{d/k} + R_d )
//! R_d    = d · x_1 x_2^{(d-1)/2}                          d odd
//!        = d/2 · x_2^{d/2} + d/2 · x_1² x_2^{(d-2)/2}     d even
//! ```
//!
//! the coefficient of `y^i` is the number of bracelets with `i` black beads.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::polynomial::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyaError {
    #[error("totient is undefined at 0")]
    ZeroArgument,
    #[error("bracelet length must be positive")]
    EmptyCycle,
    #[error("{black} black beads do not fit on a cycle of length {total}")]
    TooManyBlack { total: u64, black: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BraceletQuery {
    total: u64,
    black: u64,
}

impl BraceletQuery {
    pub fn new(total: u64, black: u64) -> Result<Self, PolyaError> {
        if total == 0 {
            return Err(PolyaError::EmptyCycle);
        }
        if black > total {
            return Err(PolyaError::TooManyBlack { total, black });
        }
        Ok(Self { total, black })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn black(&self) -> u64 {
        self.black
    }
}

pub fn totient(k: u64) -> Result<u64, PolyaError> {
    if k == 0 {
        return Err(PolyaError::ZeroArgument);
    }
    let mut result = k;
    let mut rest = k;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    Ok(result)
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1;
    while k * k <= n {
        if n.is_multiple_of(k) {
            small.push(k);
            if k * k != n {
                large.push(n / k);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// `[y^i] (1 + y^k)^e`.
fn power_coefficient(k: u64, e: u64, i: u64) -> BigUint {
    if !i.is_multiple_of(k) {
        BigUint::zero()
    } else {
        binomial(e, i / k)
    }
}

/// `[y^i] x_1^a x_2^b`, with `x_1 = 1 + y`, `x_2 = 1 + y²`.
fn mixed_coefficient(a: u64, b: u64, i: u64) -> BigUint {
    (0..=a.min(i))
        .map(|j| binomial(a, j) * power_coefficient(2, b, i - j))
        .sum()
}

pub fn bracelet_count(q: BraceletQuery) -> BigUint {
    let d = q.total;
    let i = q.black;

    let rotations: BigUint = divisors(d)
        .into_iter()
        .map(|k| BigUint::from(totient(k).expect("divisors are positive")) * power_coefficient(k, d / k, i))
        .sum();

    let reflections = if d.is_odd() {
        BigUint::from(d) * mixed_coefficient(1, (d - 1) / 2, i)
    } else {
        let half = BigUint::from(d / 2);
        &half * mixed_coefficient(0, d / 2, i) + &half * mixed_coefficient(2, (d - 2) / 2, i)
    };

    let (count, rem) = (rotations + reflections).div_rem(&BigUint::from(2 * d));
    debug_assert!(rem.is_zero(), "cycle index must be integral");
    count
}

/// Total number of binary bracelets of length `d`: the cycle index evaluated
/// at `x_k = 2` for every `k`.
pub fn bracelet_total(d: u64) -> Result<BigUint, PolyaError> {
    if d == 0 {
        return Err(PolyaError::EmptyCycle);
    }
    let two = BigUint::from(2u32);
    let pow2 = |e: u64| two.pow(u32::try_from(e).expect("bracelet length fits in u32"));
    let rotations: BigUint = divisors(d)
        .into_iter()
        .map(|k| BigUint::from(totient(k).expect("positive")) * pow2(d / k))
        .sum();
    let reflections = if d.is_odd() {
        BigUint::from(d) * pow2(d.div_ceil(2))
    } else {
        BigUint::from(d / 2) * (pow2(d / 2) + pow2(d / 2 + 1))
    };
    Ok((rotations + reflections) / BigUint::from(2 * d))
}

/// `Σ_{i=0}^{d} N(d,i) t^{2(d-i)}`.
pub fn bracelet_generating_polynomial(d: u64) -> Result<IntPolynomial, PolyaError> {
    if d == 0 {
        return Err(PolyaError::EmptyCycle);
    }
    let mut p = IntPolynomial::zero();
    for i in 0..=d {
        let n = bracelet_count(BraceletQuery { total: d, black: i });
        p.add_monomial(BigInt::from(n), 2 * (d - i) as usize);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn count(d: u64, i: u64) -> BigUint {
        bracelet_count(BraceletQuery::new(d, i).unwrap())
    }

    // Orbit enumeration over all 2^d colourings.
    fn brute_force(d: u32, i: u32) -> u64 {
        let mask = (1u32 << d) - 1;
        let rotate = |x: u32| ((x << 1) | (x >> (d - 1))) & mask;
        let reflect = |x: u32| (0..d).fold(0, |acc, b| acc | (((x >> b) & 1) << (d - 1 - b)));
        let mut seen = HashSet::new();
        let mut orbits = 0;
        for x in 0..=mask {
            if x.count_ones() != i || seen.contains(&x) {
                continue;
            }
            orbits += 1;
            let mut y = x;
            for _ in 0..d {
                seen.insert(y);
                seen.insert(reflect(y));
                y = rotate(y);
            }
        }
        orbits
    }

    fn brute_totient(k: u64) -> u64 {
        (1..=k).filter(|j| j.gcd(&k) == 1).count() as u64
    }

    #[test]
    fn totient_examples() {
        assert_eq!(totient(1), Ok(1));
        assert_eq!(totient(6), Ok(brute_totient(6)));
        assert_eq!(totient(6), Ok(2));
        assert_eq!(totient(9), Ok(6));
        assert_eq!(totient(0), Err(PolyaError::ZeroArgument));
        for k in 1..500 {
            assert_eq!(totient(k).unwrap(), brute_totient(k), "k = {k}");
        }
    }

    #[test]
    fn divisors_are_sorted() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn bracelet_examples() {
        assert_eq!(brute_force(4, 2), 2);
        assert_eq!(brute_force(6, 3), 3);
        assert_eq!(count(4, 0), BigUint::one());
        assert_eq!(count(4, 2), BigUint::from(2u32));
        assert_eq!(count(6, 3), BigUint::from(3u32));
    }

    #[test]
    fn bracelet_matches_brute_force() {
        for d in 1..=12u32 {
            for i in 0..=d {
                assert_eq!(
                    count(d as u64, i as u64),
                    BigUint::from(brute_force(d, i)),
                    "d={d} i={i}"
                );
            }
        }
    }

    #[test]
    fn query_validation() {
        assert_eq!(BraceletQuery::new(0, 0), Err(PolyaError::EmptyCycle));
        assert_eq!(
            BraceletQuery::new(3, 4),
            Err(PolyaError::TooManyBlack { total: 3, black: 4 })
        );
    }

    #[test]
    fn generating_polynomial_examples() {
        assert_eq!(
            bracelet_generating_polynomial(1).unwrap(),
            IntPolynomial::from_even_i64s(&[1, 1])
        );
        assert_eq!(
            bracelet_generating_polynomial(2).unwrap(),
            IntPolynomial::from_even_i64s(&[1, 1, 1])
        );
        assert!(bracelet_generating_polynomial(5).unwrap().is_palindromic(10));
        assert!(bracelet_generating_polynomial(0).is_err());
    }

    #[test]
    fn totals_agree_with_counts() {
        for d in 1..=30 {
            let summed: BigUint = (0..=d).map(|i| count(d, i)).sum();
            assert_eq!(summed, bracelet_total(d).unwrap(), "d = {d}");
        }
        // OEIS A000029: 1, 2, 3, 4, 6, 8, 13, 18, 30, 46
        let known = [2u32, 3, 4, 6, 8, 13, 18, 30, 46];
        for (d, &k) in (1..).zip(&known) {
            assert_eq!(bracelet_total(d).unwrap(), BigUint::from(k));
        }
    }

    #[test]
    fn black_white_symmetry() {
        for d in 1..=60 {
            for i in 0..=d {
                assert_eq!(count(d, i), count(d, d - i));
            }
        }
    }
}
