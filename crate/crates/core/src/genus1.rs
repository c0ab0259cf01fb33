//! Poincaré polynomial of `Q̄₁(G(1,1), d)`, the `n = 1` space, computed three
//! ways:
//!
//! 1. stratification: open stratum `t² + … + t^{2d}` plus one `t^{2(d-i)}` per
//!    boundary substratum, the substrata of `Δ_d^i` being counted by bracelets;
//! 2. closed formula: the dihedral cycle index expanded directly in `t`;
//! 3. the compact form `1 + 2t² + … + 2t^{2d-2} + t^{2d}`.
//!
//! Routes 1 and 2 agree for every `d`. Route 3 only agrees while every
//! bracelet count `N(d,i)` is 1, i.e. for `d ≤ 3`; from `d = 4` on
//! (`N(4,2) = 2`) it undercounts the middle Betti numbers. The fixed-locus
//! input for localization is therefore route 1, see [`fixed_locus_polynomial`].

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::polya::{bracelet_count, divisors, totient, BraceletQuery};
use crate::polynomial::{IntPolynomial, PolynomialError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Genus1Error {
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("closed formula is not integral at d = {d}: {source}")]
    NonIntegral {
        d: u64,
        #[source]
        source: PolynomialError,
    },
    #[error("d = {d}: {left} and {right} disagree first at t^{degree} ({left_coeff} vs {right_coeff})")]
    Mismatch {
        d: u64,
        left: Route,
        right: Route,
        degree: usize,
        left_coeff: BigInt,
        right_coeff: BigInt,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Strata,
    ClosedFormula,
    SimpleForm,
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Route::Strata => "strata sum",
            Route::ClosedFormula => "closed formula",
            Route::SimpleForm => "simple form",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Genus1Result {
    pub d: u64,
    pub via_strata: IntPolynomial,
    pub via_closed_formula: IntPolynomial,
    pub via_simple_form: IntPolynomial,
}

impl Genus1Result {
    fn route(&self, r: Route) -> &IntPolynomial {
        match r {
            Route::Strata => &self.via_strata,
            Route::ClosedFormula => &self.via_closed_formula,
            Route::SimpleForm => &self.via_simple_form,
        }
    }

    pub fn compare(&self, left: Route, right: Route) -> Result<(), Genus1Error> {
        let (a, b) = (self.route(left), self.route(right));
        match a.first_difference(b) {
            None => Ok(()),
            Some(degree) => Err(Genus1Error::Mismatch {
                d: self.d,
                left,
                right,
                degree,
                left_coeff: a.coeff(degree),
                right_coeff: b.coeff(degree),
            }),
        }
    }

    /// All three routes pairwise; first failure wins.
    pub fn check(&self) -> Result<(), Genus1Error> {
        self.compare(Route::Strata, Route::ClosedFormula)?;
        self.compare(Route::Strata, Route::SimpleForm)
    }
}

fn check_degree(d: u64) -> Result<(), Genus1Error> {
    if d == 0 {
        Err(Genus1Error::ZeroDegree)
    } else {
        Ok(())
    }
}

/// `Σ_{k=from}^{to} t^{2k}`.
fn even_run(from: u64, to: u64) -> IntPolynomial {
    let mut p = IntPolynomial::zero();
    for k in from..=to {
        p.add_monomial(BigInt::from(1), 2 * k as usize);
    }
    p
}

pub fn poincare_via_strata(d: u64) -> Result<IntPolynomial, Genus1Error> {
    check_degree(d)?;
    let mut p = even_run(1, d);
    for i in 1..=d {
        let n = bracelet_count(BraceletQuery::new(d, i).expect("1 ≤ i ≤ d"));
        p.add_monomial(BigInt::from(n), 2 * (d - i) as usize);
    }
    Ok(p)
}

/// The cycle-index closed formula. The even case uses the reflection term
/// `d/2 · (1+t²)²(1+t⁴)^{d/2-1}` (reflections through two opposite beads fix
/// two singletons and `(d-2)/2` pairs), which is defined for every even `d ≥ 2`.
pub fn poincare_via_closed_formula(d: u64) -> Result<IntPolynomial, Genus1Error> {
    check_degree(d)?;
    let exp = |e: u64| u32::try_from(e).expect("degree fits in u32");
    let x1 = IntPolynomial::one_plus_power(2);
    let x2 = IntPolynomial::one_plus_power(4);

    let mut bracket = IntPolynomial::zero();
    if d % 2 == 1 {
        let term = x1.mul(&x2.pow(exp((d - 1) / 2)));
        bracket = bracket.add(&term.scale(&BigInt::from(d)));
    } else {
        let half = BigInt::from(d / 2);
        let through_beads = x1.pow(2).mul(&x2.pow(exp(d / 2 - 1)));
        let through_edges = x2.pow(exp(d / 2));
        bracket = bracket
            .add(&through_beads.scale(&half))
            .add(&through_edges.scale(&half));
    }
    for k in divisors(d) {
        let phi = totient(d / k).expect("positive divisor");
        let term = IntPolynomial::one_plus_power((2 * d / k) as usize).pow(exp(k));
        bracket = bracket.add(&term.scale(&BigInt::from(phi)));
    }

    let orbit_sum = bracket
        .div_exact(&BigInt::from(2 * d))
        .map_err(|source| Genus1Error::NonIntegral { d, source })?;
    Ok(orbit_sum.add(&even_run(1, d - 1)))
}

pub fn poincare_simple(d: u64) -> Result<IntPolynomial, Genus1Error> {
    check_degree(d)?;
    let mut p = IntPolynomial::one();
    p.add_monomial(BigInt::from(1), 2 * d as usize);
    for k in 1..d {
        p.add_monomial(BigInt::from(2), 2 * k as usize);
    }
    Ok(p)
}

/// Runs all three routes without comparing them.
pub fn genus1_all_routes(d: u64) -> Result<Genus1Result, Genus1Error> {
    Ok(Genus1Result {
        d,
        via_strata: poincare_via_strata(d)?,
        via_closed_formula: poincare_via_closed_formula(d)?,
        via_simple_form: poincare_simple(d)?,
    })
}

/// Runs all three routes and requires them to be identical.
pub fn genus1_certified(d: u64) -> Result<Genus1Result, Genus1Error> {
    let r = genus1_all_routes(d)?;
    r.check()?;
    Ok(r)
}

/// Poincaré polynomial used for the copies of `Q̄₁(G(1,1), d)` among the
/// torus-fixed loci. Strata sum, cross-checked against the closed formula.
pub fn fixed_locus_polynomial(d: u64) -> Result<IntPolynomial, Genus1Error> {
    let r = Genus1Result {
        d,
        via_strata: poincare_via_strata(d)?,
        via_closed_formula: poincare_via_closed_formula(d)?,
        via_simple_form: IntPolynomial::zero(),
    };
    r.compare(Route::Strata, Route::ClosedFormula)?;
    Ok(r.via_strata)
}
