//! Sturm sequences and exact root-sign certificates for univariate rational
//! polynomials.
//!
//! All interval counts use the half-open convention `(a, b]`, so counts over
//! adjacent intervals add up.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{sign, Rational};
use crate::univariate::UnivariatePolynomial;

/// Interval endpoint, possibly infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    At(Rational),
    PosInf,
}

impl Bound {
    fn rank(&self) -> u8 {
        match self {
            Bound::NegInf => 0,
            Bound::At(_) => 1,
            Bound::PosInf => 2,
        }
    }

    fn lt(&self, other: &Bound) -> bool {
        match (self, other) {
            (Bound::At(a), Bound::At(b)) => a < b,
            _ => self.rank() < other.rank(),
        }
    }
}

impl From<Rational> for Bound {
    fn from(r: Rational) -> Self {
        Bound::At(r)
    }
}

/// `u, u′, −rem(u, u′), …` down to the last nonzero remainder.
///
/// Each remainder is divided by the absolute value of its leading coefficient,
/// which keeps the integers small and does not change any sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain {
    seq: Vec<UnivariatePolynomial>,
}

impl SturmChain {
    pub fn new(u: &UnivariatePolynomial) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut seq = vec![u.clone()];
        let mut next = u.derivative().normalize_positive();
        while !next.is_zero() {
            let prev = seq.last().unwrap();
            let r = (-&prev.rem(&next)).normalize_positive();
            seq.push(next);
            next = r;
        }
        Ok(Self { seq })
    }

    pub fn polys(&self) -> &[UnivariatePolynomial] {
        &self.seq
    }

    /// Sign changes along the chain at `at`, zeros skipped.
    pub fn sign_variations(&self, at: &Bound) -> usize {
        let signs = self.seq.iter().map(|p| match at {
            Bound::At(x) => sign(&p.eval(x)),
            Bound::PosInf => sign(p.leading().unwrap()),
            Bound::NegInf => {
                let s = sign(p.leading().unwrap());
                if p.degree().unwrap() % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        });
        let mut last = 0i8;
        let mut changes = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }
}

/// Number of distinct real roots of `u` in `(a, b]`.
pub fn sturm_count(u: &UnivariatePolynomial, a: &Bound, b: &Bound) -> Result<usize> {
    if u.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !a.lt(b) {
        return Err(Error::EmptyInterval);
    }
    // The chain of the squarefree part avoids the all-zero row at multiple roots.
    let chain = SturmChain::new(&u.squarefree_part())?;
    let va = chain.sign_variations(a);
    let vb = chain.sign_variations(b);
    Ok(va - vb)
}

/// Whether every complex root of `u` is real.
pub fn is_real_rooted(u: &UnivariatePolynomial) -> Result<bool> {
    if u.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let s = u.squarefree_part();
    let deg = s.degree().unwrap();
    if deg == 0 {
        return Ok(true);
    }
    Ok(sturm_count(&s, &Bound::NegInf, &Bound::PosInf)? == deg)
}

/// Order of vanishing at `λ = 0`.
pub fn mult_at_zero(u: &UnivariatePolynomial) -> Result<usize> {
    u.coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(Error::ZeroPolynomial)
}

/// Whether every real root of a real-rooted `u` is `≥ 0`.
///
/// Returns [`Error::NotRealRooted`] when the precondition fails.
pub fn all_roots_nonneg(u: &UnivariatePolynomial) -> Result<bool> {
    if !is_real_rooted(u)? {
        return Err(Error::NotRealRooted);
    }
    let m = mult_at_zero(u)?;
    let rest = UnivariatePolynomial::new(u.coeffs()[m..].to_vec());
    if rest.degree() == Some(0) {
        return Ok(true);
    }
    // rest(0) ≠ 0, so counting on (−∞, 0] counts the negative roots.
    Ok(sturm_count(&rest, &Bound::NegInf, &Bound::At(Rational::zero()))? == 0)
}

/// Whether every root of a real-rooted `u` is `> 0`.
pub fn all_roots_pos(u: &UnivariatePolynomial) -> Result<bool> {
    Ok(mult_at_zero(u)? == 0 && all_roots_nonneg(u)?)
}
