//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Every Poincaré polynomial in this crate lives here. Coefficient `i` is the
//! coefficient of `t^i`; trailing zeros are always stripped so that equality
//! is structural.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolynomialError {
    #[error("degree {degree} exceeds reversal window {window}")]
    DegreeExceedsWindow { degree: usize, window: usize },
    #[error("coefficient of t^{degree} is not divisible by {divisor}")]
    InexactDivision { degree: usize, divisor: BigInt },
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff · t^degree`.
    pub fn monomial(coeff: impl Into<BigInt>, degree: usize) -> Self {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = coeff;
        Self { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Polynomial in `t` from coefficients of the even powers only:
    /// `even[k]` becomes the coefficient of `t^{2k}`.
    pub fn from_even_i64s(even: &[i64]) -> Self {
        let mut coeffs = vec![BigInt::zero(); even.len() * 2];
        for (k, &c) in even.iter().enumerate() {
            coeffs[2 * k] = BigInt::from(c);
        }
        Self::from_coeffs(coeffs)
    }

    /// `1 + t^step`.
    pub fn one_plus_power(step: usize) -> Self {
        let mut p = Self::one();
        p.add_monomial(BigInt::one(), step);
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `t^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn add_monomial(&mut self, coeff: BigInt, degree: usize) {
        if self.coeffs.len() <= degree {
            self.coeffs.resize(degree + 1, BigInt::zero());
        }
        self.coeffs[degree] += coeff;
        self.normalize();
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Reverse the coefficient sequence inside the window `[0, top_degree]`,
    /// i.e. `t^top_degree · p(1/t)`.
    pub fn reverse(&self, top_degree: usize) -> Result<Self, PolynomialError> {
        if let Some(deg) = self.degree() {
            if deg > top_degree {
                return Err(PolynomialError::DegreeExceedsWindow {
                    degree: deg,
                    window: top_degree,
                });
            }
        } else {
            return Ok(Self::zero());
        }
        let mut coeffs = vec![BigInt::zero(); top_degree + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[top_degree - i] = c.clone();
        }
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn is_palindromic(&self, top_degree: usize) -> bool {
        self.reverse(top_degree).is_ok_and(|r| &r == self)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn odd_coefficients_vanish(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// Divide every coefficient by `divisor`, failing on the first remainder.
    pub fn div_exact(&self, divisor: &BigInt) -> Result<Self, PolynomialError> {
        if divisor.is_zero() {
            return Err(PolynomialError::DivisionByZero);
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (degree, c) in self.coeffs.iter().enumerate() {
            let (q, r) = c.div_rem(divisor);
            if !r.is_zero() {
                return Err(PolynomialError::InexactDivision {
                    degree,
                    divisor: divisor.clone(),
                });
            }
            coeffs.push(q);
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// First exponent at which `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).find(|&i| self.coeff(i) != other.coeff(i))
    }

    /// `(degree, coefficient)` pairs for nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: Self) -> IntPolynomial {
        IntPolynomial::add(self, rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: Self) -> IntPolynomial {
        IntPolynomial::mul(self, rhs)
    }
}

impl std::iter::Sum for IntPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| acc.add(&p))
    }
}

/// Renders as `1 + 2t^2 + 3t^4`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.terms() {
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match deg {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{magnitude}")?;
                    }
                    match deg {
                        1 => write!(f, "t")?,
                        _ => write!(f, "t^{deg}")?,
                    }
                }
            }
        }
        Ok(())
    }
}

// JSON form: array of decimal strings, index = exponent.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        let coeffs = raw
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn add_examples() {
        assert_eq!(p(&[1, 0, 1]).add(&p(&[0, 0, 1])), p(&[1, 0, 2]));
        assert_eq!(p(&[3, 4]).add(&IntPolynomial::zero()), p(&[3, 4]));
        // main stratum t^2 + t^4 plus boundary strata N(2,1) t^2 + N(2,2) at d = 2
        let main = p(&[0, 0, 1, 0, 1]);
        let boundary = p(&[1, 0, 1]);
        assert_eq!(main.add(&boundary), p(&[1, 0, 2, 0, 1]));
    }

    #[test]
    fn cancellation_normalizes() {
        let s = p(&[1, 2, 3]).add(&p(&[0, 0, -3]));
        assert_eq!(s.degree(), Some(1));
        assert!(p(&[1]).add(&p(&[-1])).is_zero());
    }

    #[test]
    fn mul_examples() {
        let a = p(&[1, 0, 1]);
        assert_eq!(a.mul(&a), p(&[1, 0, 2, 0, 1]));
        assert_eq!(a.mul(&IntPolynomial::one()), a);
        // P^1 x P^2
        assert_eq!(a.mul(&p(&[1, 0, 1, 0, 1])), p(&[1, 0, 2, 0, 2, 0, 1]));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(IntPolynomial::one().shift(4), p(&[0, 0, 0, 0, 1]));
        let g = p(&[1, 0, 2, 0, 1]);
        assert_eq!(g.shift(4), p(&[0, 0, 0, 0, 1, 0, 2, 0, 1]));
        assert_eq!(g.shift(0), g);
        assert!(IntPolynomial::zero().shift(3).is_zero());
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(p(&[1, 0, 2]).reverse(4).unwrap(), p(&[0, 0, 2, 0, 1]));
        let q = p(&[1, 0, 2, 0, 3, 0, 2, 0, 1]);
        assert_eq!(q.reverse(8).unwrap(), q);
        assert_eq!(IntPolynomial::one().reverse(0).unwrap(), IntPolynomial::one());
        assert_eq!(
            q.reverse(6),
            Err(PolynomialError::DegreeExceedsWindow { degree: 8, window: 6 })
        );
    }

    #[test]
    fn eval_at_one_examples() {
        assert_eq!(p(&[1, 0, 2, 0, 3, 0, 2, 0, 1]).eval_at_one(), BigInt::from(9));
        assert_eq!(IntPolynomial::zero().eval_at_one(), BigInt::zero());
        assert_eq!(p(&[1, 0, 2, 0, 2, 0, 1]).eval_at_one(), BigInt::from(6));
    }

    #[test]
    fn div_exact_rejects_remainder() {
        assert_eq!(p(&[4, 8]).div_exact(&BigInt::from(4)).unwrap(), p(&[1, 2]));
        assert_eq!(
            p(&[4, 6]).div_exact(&BigInt::from(4)),
            Err(PolynomialError::InexactDivision {
                degree: 1,
                divisor: BigInt::from(4)
            })
        );
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, 2, 0, 3]).to_string(), "1 + 2t^2 + 3t^4");
        assert_eq!(p(&[0, 1, -1]).to_string(), "t - t^2");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn json_is_decimal_strings() {
        let big = IntPolynomial::monomial(BigInt::from(2).pow(100), 2);
        let json = serde_json::to_string(&big).unwrap();
        assert_eq!(json, r#"["0","0","1267650600228229401496703205376"]"#);
        let back: IntPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, big);
        assert!(serde_json::from_str::<IntPolynomial>(r#"["1","x"]"#).is_err());
    }

    #[test]
    fn no_overflow_at_large_degree() {
        // (1+t^2)^64 has central coefficient C(64,32), beyond u64 when summed.
        let q = IntPolynomial::one_plus_power(2).pow(64);
        assert_eq!(q.eval_at_one(), BigInt::from(2).pow(64));
        assert_eq!(q.coeff(64).to_string(), "1832624140942590534");
    }

    fn poly_strategy() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-50i64..50, 0..8).prop_map(|c| IntPolynomial::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn ring_laws(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn reverse_is_involution(a in poly_strategy(), extra in 0usize..5) {
            let window = a.degree().unwrap_or(0) + extra;
            prop_assert_eq!(a.reverse(window).unwrap().reverse(window).unwrap(), a);
        }

        #[test]
        fn json_roundtrip(a in poly_strategy()) {
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<IntPolynomial>(&s).unwrap(), a);
        }
    }
}
