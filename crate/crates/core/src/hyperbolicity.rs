//! Hyperbolic contexts `(p, e)`, hyperbolic eigenvalues and exact cone membership.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{Point, Polynomial};
use crate::rational::Rational;
use crate::realroots::{all_roots_nonneg, all_roots_pos, is_real_rooted, mult_at_zero};
use crate::univariate::UnivariatePolynomial;

/// Denominator of the sampling grid in `[−1, 1]ⁿ`.
pub const SAMPLE_DENOMINATOR: i64 = 64;

/// A homogeneous polynomial together with a direction where it is positive.
///
/// Construction checks homogeneity and `p(e) > 0`; hyperbolicity itself is
/// assumed, and violations surface as [`Error::ContextNotHyperbolic`] from the
/// membership predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicContext {
    poly: Polynomial,
    direction: Point,
    degree: usize,
}

/// Closed cone (all eigenvalues `≥ 0`) or its interior (all `> 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeMode {
    Closed,
    Open,
}

impl HyperbolicContext {
    pub fn new(poly: Polynomial, direction: Point) -> Result<Self> {
        let degree = poly.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        let value = poly.eval(&direction)?;
        if !value.is_positive() {
            return Err(Error::BadDirection(format!(
                "p(e) = {} is not positive",
                crate::rational::format_rational(&value)
            )));
        }
        Ok(Self {
            poly,
            direction,
            degree,
        })
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn direction(&self) -> &Point {
        &self.direction
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    /// `λ ↦ p(x − λe)`; its roots are the hyperbolic eigenvalues of `x`.
    pub fn eigenvalue_poly(&self, x: &Point) -> Result<UnivariatePolynomial> {
        let neg_e = self.direction.scale(&-Rational::one());
        self.poly.restrict_to_line(x, &neg_e)
    }

    pub fn in_cone(&self, x: &Point, mode: ConeMode) -> Result<bool> {
        let u = self.eigenvalue_poly(x)?;
        let verdict = match mode {
            ConeMode::Closed => all_roots_nonneg(&u),
            ConeMode::Open => all_roots_pos(&u),
        };
        verdict.map_err(|e| match e {
            Error::NotRealRooted => Error::ContextNotHyperbolic,
            other => other,
        })
    }

    /// The context `(Rⁱₑp, e)` of the `i`-th derivative cone.
    pub fn derivative(&self, i: usize) -> Result<Self> {
        if i > 0 && i >= self.degree {
            return Err(Error::InvalidArgument(format!(
                "derivative order {i} must be below the degree {}",
                self.degree
            )));
        }
        let polar = self.poly.polar(&self.direction, i)?;
        Self::new(polar, self.direction.clone())
    }

    /// Membership in the closed `i`-th derivative cone; `i = 0` is the cone itself.
    pub fn in_derivative_cone(&self, x: &Point, i: usize) -> Result<bool> {
        self.derivative(i)?.in_cone(x, ConeMode::Closed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HyperbolicityStatus {
    /// Every sampled restriction was real-rooted. Evidence, not proof.
    Hyperbolic { samples: usize },
    /// `witness` is a point whose restriction is certifiably not real-rooted.
    NotHyperbolic { witness: Point, index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicityVerdict {
    pub status: HyperbolicityStatus,
    pub seed: u64,
}

impl HyperbolicityVerdict {
    pub fn is_hyperbolic(&self) -> bool {
        matches!(self.status, HyperbolicityStatus::Hyperbolic { .. })
    }
}

/// Deterministic sample points on the grid `{k/64 : −64 ≤ k ≤ 64}ⁿ`.
pub fn sample_points(nvars: usize, samples: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            Point::new(
                (0..nvars)
                    .map(|_| {
                        let k = rng.gen_range(-SAMPLE_DENOMINATOR..=SAMPLE_DENOMINATOR);
                        Rational::new(BigInt::from(k), BigInt::from(SAMPLE_DENOMINATOR))
                    })
                    .collect(),
            )
        })
        .collect()
}

fn validate(p: &Polynomial, e: &Point, samples: usize) -> Result<()> {
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "sample count must be positive".into(),
        ));
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    HyperbolicContext::new(p.clone(), e.clone()).map(|_| ())
}

fn restriction_fails(p: &Polynomial, q: &Point, e: &Point) -> Result<bool> {
    let u = p.restrict_to_line(q, e)?;
    // p(e) > 0 makes u nonzero of full degree
    Ok(!is_real_rooted(&u)?)
}

/// Samples `samples` lines `q + λe` and certifies real-rootedness of each
/// restriction exactly. The first failing sample is returned as a witness.
pub fn check_hyperbolic(
    p: &Polynomial,
    e: &Point,
    samples: usize,
    seed: u64,
) -> Result<HyperbolicityVerdict> {
    validate(p, e, samples)?;
    for (index, q) in sample_points(p.nvars(), samples, seed)
        .into_iter()
        .enumerate()
    {
        if restriction_fails(p, &q, e)? {
            return Ok(HyperbolicityVerdict {
                status: HyperbolicityStatus::NotHyperbolic { witness: q, index },
                seed,
            });
        }
    }
    Ok(HyperbolicityVerdict {
        status: HyperbolicityStatus::Hyperbolic { samples },
        seed,
    })
}

/// Parallel [`check_hyperbolic`]; returns the same verdict (smallest failing index).
pub fn check_hyperbolic_par(
    p: &Polynomial,
    e: &Point,
    samples: usize,
    seed: u64,
) -> Result<HyperbolicityVerdict> {
    validate(p, e, samples)?;
    let points = sample_points(p.nvars(), samples, seed);
    let failing = points
        .into_par_iter()
        .enumerate()
        .map(|(i, q)| restriction_fails(p, &q, e).map(|bad| bad.then_some((i, q))))
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    let status = match failing {
        None => HyperbolicityStatus::Hyperbolic { samples },
        Some(Ok(Some((index, witness)))) => HyperbolicityStatus::NotHyperbolic { witness, index },
        Some(Ok(None)) => unreachable!(),
        Some(Err(err)) => return Err(err),
    };
    Ok(HyperbolicityVerdict { status, seed })
}

impl HyperbolicContext {
    /// Order of vanishing at zero of `p(x + λe)`.
    pub fn mult_at_zero_along(&self, x: &Point) -> Result<usize> {
        let u = self.poly.restrict_to_line(x, &self.direction)?;
        if u.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        mult_at_zero(&u)
    }
}
