//! Intersection calculus on the rank-2 Picard group.
//!
//! Divisors are stored in the basis `(D_j, D_b)`, curves in `(γ_j, γ_t)`.
//! The pairing is
//!
//! | divisor | γ_j       | γ_t          |
//! |---------|-----------|--------------|
//! | `D_j`   | 0         | 12           |
//! | `D_b`   | d - 1     | -d(d-1)/2    |
//! | `D_fd`  | 24(d - 1) | 0            |
//!
//! with `D_fd = d(d-1) D_j + 24 D_b`. The nef cone is spanned by `D_j` and
//! `D_fd`, the effective cone by `D_j` and `D_b`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisorError {
    #[error("divisor lives on (n, d) = {divisor:?} but curve on {curve:?}")]
    ContextMismatch { divisor: (u32, u32), curve: (u32, u32) },
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub cj: BigRational,
    pub cb: BigRational,
    pub n: u32,
    pub d: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    pub gj: BigRational,
    pub gt: BigRational,
    pub n: u32,
    pub d: u32,
}

impl DivisorClass {
    pub fn new(n: u32, d: u32, cj: BigRational, cb: BigRational) -> Self {
        Self { cj, cb, n, d }
    }

    pub fn d_j(n: u32, d: u32) -> Self {
        Self::new(n, d, rat(1), rat(0))
    }

    pub fn d_b(n: u32, d: u32) -> Self {
        Self::new(n, d, rat(0), rat(1))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            (self.n, self.d),
            (other.n, other.d),
            "divisors on different spaces"
        );
        Self::new(self.n, self.d, &self.cj + &other.cj, &self.cb + &other.cb)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.n, self.d, &self.cj * k, &self.cb * k)
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1))
    }

    /// Coordinates `(a, b)` with `self = a·D_j + b·D_fd`.
    pub fn in_nef_basis(&self) -> (BigRational, BigRational) {
        let d = i64::from(self.d);
        let b = &self.cb / rat(24);
        let a = &self.cj - &b * rat(d * (d - 1));
        (a, b)
    }

    pub fn from_nef_basis(n: u32, d: u32, a: &BigRational, b: &BigRational) -> Self {
        dfd_in_basis(n, d).scale(b).add(&Self::d_j(n, d).scale(a))
    }
}

impl CurveClass {
    pub fn gamma_j(n: u32, d: u32) -> Self {
        Self {
            gj: rat(1),
            gt: rat(0),
            n,
            d,
        }
    }

    pub fn gamma_t(n: u32, d: u32) -> Self {
        Self {
            gj: rat(0),
            gt: rat(1),
            n,
            d,
        }
    }
}

/// Rows of the intersection table for one `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionTable {
    pub d: u32,
    /// `[D·γ_j, D·γ_t]` for `D_j`, `D_b`, `D_fd`.
    pub d_j: [String; 2],
    pub d_b: [String; 2],
    pub d_fd: [String; 2],
}

fn table_entry(divisor_row: usize, curve_col: usize, d: u32) -> BigRational {
    let d = i64::from(d);
    match (divisor_row, curve_col) {
        (0, 0) => rat(0),
        (0, 1) => rat(12),
        (1, 0) => rat(d - 1),
        (1, 1) => frac(-d * (d - 1), 2),
        _ => unreachable!("two generators each side"),
    }
}

pub fn pairing(div: &DivisorClass, curve: &CurveClass) -> Result<BigRational, DivisorError> {
    if (div.n, div.d) != (curve.n, curve.d) {
        return Err(DivisorError::ContextMismatch {
            divisor: (div.n, div.d),
            curve: (curve.n, curve.d),
        });
    }
    let mut total = BigRational::zero();
    for (row, dc) in [&div.cj, &div.cb].into_iter().enumerate() {
        for (col, cc) in [&curve.gj, &curve.gt].into_iter().enumerate() {
            total += dc * cc * table_entry(row, col, div.d);
        }
    }
    Ok(total)
}

/// Pairings with `(γ_j, γ_t)`.
pub fn pairings(div: &DivisorClass) -> (BigRational, BigRational) {
    let pj = pairing(div, &CurveClass::gamma_j(div.n, div.d)).expect("same context");
    let pt = pairing(div, &CurveClass::gamma_t(div.n, div.d)).expect("same context");
    (pj, pt)
}

pub fn intersection_table(n: u32, d: u32) -> IntersectionTable {
    let row = |div: DivisorClass| {
        let (a, b) = pairings(&div);
        [a.to_string(), b.to_string()]
    };
    IntersectionTable {
        d,
        d_j: row(DivisorClass::d_j(n, d)),
        d_b: row(DivisorClass::d_b(n, d)),
        d_fd: row(dfd_in_basis(n, d)),
    }
}

/// `D_fd = d(d-1)·D_j + 24·D_b`.
pub fn dfd_in_basis(n: u32, d: u32) -> DivisorClass {
    let dd = i64::from(d);
    DivisorClass::new(n, d, rat(dd * (dd - 1)), rat(24))
}

/// `K = (d - 11 + (d-1)(n-1))/12 · D_j - n · D_b`.
pub fn canonical_class(n: u32, d: u32) -> DivisorClass {
    let (nn, dd) = (i64::from(n), i64::from(d));
    DivisorClass::new(n, d, frac(dd - 11 + (dd - 1) * (nn - 1), 12), rat(-nn))
}

pub fn is_nef(div: &DivisorClass) -> bool {
    let (pj, pt) = pairings(div);
    !pj.is_negative() && !pt.is_negative()
}

pub fn is_effective_cone(div: &DivisorClass) -> bool {
    !div.cj.is_negative() && !div.cb.is_negative()
}

pub fn is_ample(div: &DivisorClass) -> bool {
    let (pj, pt) = pairings(div);
    pj.is_positive() && pt.is_positive()
}

/// `n(d+2)(d-1) < 20`.
pub fn is_fano(n: u32, d: u32) -> bool {
    fano_index(n, d) < 20
}

fn fano_index(n: u32, d: u32) -> u64 {
    u64::from(n) * (u64::from(d) + 2) * (u64::from(d) - 1)
}

/// Coordinates of `-K` in the nef basis `(D_j, D_fd)`:
/// `(-(n(d+2)(d-1) - 20)/24, n/24)`.
pub fn anti_canonical_nef_basis(n: u32, d: u32) -> (BigRational, BigRational) {
    let index = i64::try_from(fano_index(n, d)).expect("fits in i64");
    (frac(20 - index, 24), frac(i64::from(n), 24))
}

/// Rank of the Picard group over `ℚ`. `None` at `(n, d) = (1, 1)`, where the
/// space is `M̄_{1,1}` with `h² = 1`.
pub fn picard_rank(n: u32, d: u32) -> Option<u32> {
    if n >= 2 || d >= 2 {
        Some(2)
    } else {
        None
    }
}

/// Every `(n, d)` with `d ≥ 2` whose space is Fano, in `(d, n)` order.
pub fn fano_scan() -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for d in 2.. {
        if !is_fano(1, d) {
            break;
        }
        for n in 1.. {
            if !is_fano(n, d) {
                break;
            }
            out.push((n, d));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorReport {
    pub n: u32,
    pub d: u32,
    #[serde(rename = "K")]
    pub k: CoordinatePair,
    pub anti_k_nef_basis: [String; 2],
    pub fano: bool,
    pub picard_rank: Option<u32>,
    pub intersection_table: IntersectionTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoordinatePair {
    pub cj: String,
    pub cb: String,
}

pub fn divisor_report(n: u32, d: u32) -> DivisorReport {
    let k = canonical_class(n, d);
    let (a, b) = anti_canonical_nef_basis(n, d);
    DivisorReport {
        n,
        d,
        k: CoordinatePair {
            cj: k.cj.to_string(),
            cb: k.cb.to_string(),
        },
        anti_k_nef_basis: [a.to_string(), b.to_string()],
        fano: is_fano(n, d),
        picard_rank: picard_rank(n, d),
        intersection_table: intersection_table(n, d),
    }
}
