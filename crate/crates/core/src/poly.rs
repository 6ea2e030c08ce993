//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, so iteration order is
//! lexicographic in the exponents and serialization is reproducible.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, Rational};
use crate::subsets::combinations;
use crate::univariate::UnivariatePolynomial;

/// A point of `ℚⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![Rational::zero(); n])
    }

    /// The all-ones vector `𝟙`.
    pub fn ones(n: usize) -> Self {
        Self(vec![Rational::one(); n])
    }

    /// Standard basis vector `eᵢ` (0-based).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut p = Self::zeros(n);
        p.0[i] = Rational::one();
        p
    }

    /// Characteristic vector `χ_I` of the subset with bitmask `mask`.
    pub fn indicator(n: usize, mask: u32) -> Self {
        Self(
            (0..n)
                .map(|i| {
                    if mask & (1 << i) != 0 {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        )
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    /// `self + c·other`
    pub fn add_scaled(&self, c: &Rational, other: &Point) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + c * b)
                .collect(),
        )
    }
}

/// `ℓ(x) = Σ cᵢ xᵢ`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<Rational>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// The coordinate form `xᵢ`.
    pub fn coordinate(nvars: usize, i: usize) -> Self {
        Self::new(Point::basis(nvars, i).0)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &Point) -> Result<Rational> {
        check_len(self.nvars(), x.len())?;
        Ok(self.coeffs.iter().zip(x.coords()).map(|(a, b)| a * b).sum())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let n = self.nvars();
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let mut exp = vec![0; n];
                exp[i] = 1;
                (exp, c.clone())
            });
        Polynomial {
            nvars: n,
            terms: terms.collect(),
        }
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::NvarsMismatch { expected, found });
    }
    Ok(())
}

/// Sparse polynomial in `nvars` variables. No stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The variable `xᵢ` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        LinearForm::coordinate(nvars, i).to_polynomial()
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs. Repeated
    /// exponents are summed and zero coefficients dropped.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (exp, c) in terms {
            check_len(nvars, exp.len())?;
            p.add_term(exp, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| degree_of(e)).max()
    }

    /// `Some(d)` when every term has total degree `d`; `None` otherwise and for zero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|e| degree_of(e));
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        check_len(self.nvars, rhs.nvars)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&rhs.neg())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        check_len(self.nvars, rhs.nvars)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &Point) -> Result<Rational> {
        check_len(self.nvars, x.len())?;
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (xi, &k) in x.coords().iter().zip(e) {
                if k > 0 {
                    term *= num_traits::pow(xi.clone(), k as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// `∂p/∂xᵢ`
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut exp = e.clone();
            exp[i] -= 1;
            out.add_term(exp, c * int(e[i] as i64));
        }
        out
    }

    /// `⟨∇p, e⟩`
    pub fn directional_derivative(&self, e: &Point) -> Result<Self> {
        check_len(self.nvars, e.len())?;
        let mut out = Self::zero(self.nvars);
        for (exp, c) in &self.terms {
            for (i, ei) in e.coords().iter().enumerate() {
                if exp[i] == 0 || ei.is_zero() {
                    continue;
                }
                let mut d = exp.clone();
                d[i] -= 1;
                out.add_term(d, c * ei * int(exp[i] as i64));
            }
        }
        Ok(out)
    }

    /// The `i`-th polar `Rⁱₑp`, the degree-`i` Taylor part of `p` around `e`,
    /// computed as the `i`-fold directional derivative `⟨∇·, e⟩ⁱ p`.
    ///
    /// For a product of forms with `ℓⱼ(e) = 1` this is `i!·E_{d−i}(ℓ₁, …, ℓ_d)`.
    pub fn polar(&self, e: &Point, i: usize) -> Result<Self> {
        check_len(self.nvars, e.len())?;
        let d = self.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        if i > d {
            return Err(Error::OrderExceedsDegree {
                order: i,
                degree: d,
            });
        }
        let mut out = self.clone();
        for _ in 0..i {
            out = out.directional_derivative(e)?;
        }
        Ok(out)
    }

    /// Coefficients of `λ ↦ p(q + λe)`.
    pub fn restrict_to_line(&self, q: &Point, e: &Point) -> Result<UnivariatePolynomial> {
        check_len(self.nvars, q.len())?;
        check_len(self.nvars, e.len())?;
        // powers[i][k] = (qᵢ + λeᵢ)^k, filled lazily up to the needed degree
        let mut powers: Vec<Vec<UnivariatePolynomial>> = (0..self.nvars)
            .map(|i| {
                vec![
                    UnivariatePolynomial::one(),
                    UnivariatePolynomial::linear(q.coords()[i].clone(), e.coords()[i].clone()),
                ]
            })
            .collect();
        let mut acc = UnivariatePolynomial::zero();
        for (exp, c) in &self.terms {
            let mut term = UnivariatePolynomial::constant(c.clone());
            for (i, &k) in exp.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &powers[i][1];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k];
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Substitutes `yⱼ ↦ subs[j]`, where `self` is a polynomial in `y₁, …, y_m`
    /// and every `subs[j]` lives in a common ring of `subs[0].nvars()` variables.
    pub fn compose(&self, subs: &[Polynomial]) -> Result<Self> {
        check_len(self.nvars, subs.len())?;
        let target = subs.first().map(|s| s.nvars).unwrap_or(0);
        for s in subs {
            check_len(target, s.nvars)?;
        }
        let mut powers: Vec<Vec<Polynomial>> = subs
            .iter()
            .map(|s| vec![Polynomial::one(target), s.clone()])
            .collect();
        let mut acc = Self::zero(target);
        for (exp, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (j, &k) in exp.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let k = k as usize;
                while powers[j].len() <= k {
                    let next = &powers[j][powers[j].len() - 1] * &powers[j][1];
                    powers[j].push(next);
                }
                term = &term * &powers[j][k];
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Renders with variable names `names` (defaults to `x1, x2, …`).
    pub fn to_string_with(&self, names: Option<&[String]>) -> String {
        let default: Vec<String>;
        let names = match names {
            Some(n) if n.len() == self.nvars => n,
            _ => {
                default = (1..=self.nvars).map(|i| format!("x{i}")).collect();
                &default
            }
        };
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        // highest degree first reads more naturally
        for (idx, (exp, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let mono: Vec<String> = exp
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{k}", names[i])
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&format_rational(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&format_rational(&mag));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

fn degree_of(exp: &[u32]) -> usize {
    exp.iter().map(|&k| k as usize).sum()
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on mismatched variable counts; see [`Polynomial::checked_add`].
    fn add(self, rhs: Self) -> Polynomial {
        self.checked_add(rhs).expect("polynomial add")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Self) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial sub")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Self) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial mul")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(None))
    }
}

/// `E_k(x₁, …, x_n)`, the sum of all squarefree monomials of degree `k`.
pub fn elementary_symmetric(n: usize, k: usize) -> Result<Polynomial> {
    if k > n {
        return Err(Error::OrderExceedsDegree {
            order: k,
            degree: n,
        });
    }
    let terms = combinations(n, k).into_iter().map(|idx| {
        let mut exp = vec![0; n];
        for i in idx {
            exp[i] = 1;
        }
        (exp, Rational::one())
    });
    Polynomial::from_terms(n, terms)
}

/// `ℓ₁(x)·ℓ₂(x)⋯ℓ_d(x)`
pub fn product_of_forms(forms: &[LinearForm]) -> Result<Polynomial> {
    let first = forms
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty list of linear forms".into()))?;
    let n = first.nvars();
    let mut acc = Polynomial::one(n);
    for f in forms {
        check_len(n, f.nvars())?;
        acc = acc.checked_mul(&f.to_polynomial())?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    pub(crate) fn halfcube_forms() -> Vec<LinearForm> {
        vec![
            LinearForm::from_ints(&[1, -1, 1, 1]),
            LinearForm::from_ints(&[1, 1, -1, 1]),
            LinearForm::from_ints(&[1, 1, 1, -1]),
            LinearForm::from_ints(&[1, -1, -1, -1]),
        ]
    }

    #[test]
    fn ring_op_examples() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        let lhs = &(&x1 + &x2) * &(&x1 - &x2);
        let rhs = &(&x1 * &x1) - &(&x2 * &x2);
        assert_eq!(lhs, rhs);
        assert_eq!(&lhs + &Polynomial::zero(2), lhs);
        let half = (&x1 * &x2).scale(&frac(1, 2));
        assert_eq!(half.coeff(&[1, 1]), frac(1, 2));
        assert_eq!(half.num_terms(), 1);
    }

    #[test]
    fn mismatched_nvars_is_an_error() {
        let err = x(2, 0).checked_add(&x(3, 0)).unwrap_err();
        assert_eq!(
            err,
            Error::NvarsMismatch {
                expected: 2,
                found: 3
            }
        );
        assert!(x(2, 0).checked_mul(&x(3, 0)).is_err());
    }

    #[test]
    fn zero_terms_are_dropped() {
        let p = &x(2, 0) - &x(2, 0);
        assert!(p.is_zero());
        let q = Polynomial::from_terms(2, [(vec![1, 0], int(2)), (vec![1, 0], int(-2))]).unwrap();
        assert!(q.is_zero());
        assert!(Polynomial::from_terms(2, [(vec![1], int(1))]).is_err());
    }

    #[test]
    fn eval_examples() {
        let e3 = elementary_symmetric(3, 3).unwrap();
        assert_eq!(e3.eval(&Point::ones(3)).unwrap(), int(1));
        let p = product_of_forms(&halfcube_forms()).unwrap();
        assert_eq!(p.eval(&Point::from_ints(&[1, 0, 0, 0])).unwrap(), int(1));
        let l = LinearForm::from_ints(&[1, 2]).to_polynomial();
        assert_eq!(
            l.eval(&Point::new(vec![frac(1, 2), frac(1, 4)])).unwrap(),
            int(1)
        );
        assert!(l.eval(&Point::ones(3)).is_err());
    }

    #[test]
    fn homogeneous_degree_examples() {
        let p = &(&x(3, 0) * &x(3, 1)) + &(&x(3, 2) * &x(3, 2));
        assert_eq!(p.homogeneous_degree(), Some(2));
        let q = &x(2, 0) + &(&x(2, 1) * &x(2, 1));
        assert_eq!(q.homogeneous_degree(), None);
        assert_eq!(
            elementary_symmetric(4, 3).unwrap().homogeneous_degree(),
            Some(3)
        );
        assert_eq!(Polynomial::zero(3).homogeneous_degree(), None);
        assert_eq!(Polynomial::one(3).homogeneous_degree(), Some(0));
    }

    #[test]
    fn polar_examples() {
        let e3 = elementary_symmetric(3, 3).unwrap();
        let ones = Point::ones(3);
        assert_eq!(
            e3.polar(&ones, 1).unwrap(),
            elementary_symmetric(3, 2).unwrap()
        );
        assert_eq!(e3.polar(&ones, 0).unwrap(), e3);
        // top coefficient: d!·p(e)
        let e = Point::new(vec![frac(1, 2), int(2), int(3)]);
        let top = e3.polar(&e, 3).unwrap();
        assert_eq!(top, Polynomial::constant(3, int(6) * e3.eval(&e).unwrap()));
        // i! factor on higher polars
        assert_eq!(
            e3.polar(&ones, 2).unwrap(),
            elementary_symmetric(3, 1).unwrap().scale(&int(2))
        );
    }

    #[test]
    fn polar_errors() {
        let e3 = elementary_symmetric(3, 3).unwrap();
        assert_eq!(
            e3.polar(&Point::ones(3), 4),
            Err(Error::OrderExceedsDegree {
                order: 4,
                degree: 3
            })
        );
        let q = &x(2, 0) + &(&x(2, 1) * &x(2, 1));
        assert_eq!(q.polar(&Point::ones(2), 1), Err(Error::NotHomogeneous));
    }

    #[test]
    fn restriction_examples() {
        let p = &x(2, 0) * &x(2, 1);
        let u = p
            .restrict_to_line(&Point::from_ints(&[1, -1]), &Point::from_ints(&[1, 1]))
            .unwrap();
        assert_eq!(u, UnivariatePolynomial::from_ints(&[-1, 0, 1]));
        let s = &(&x(2, 0) * &x(2, 0)) + &(&x(2, 1) * &x(2, 1));
        let u = s
            .restrict_to_line(&Point::from_ints(&[1, 0]), &Point::from_ints(&[0, 1]))
            .unwrap();
        assert_eq!(u, UnivariatePolynomial::from_ints(&[1, 0, 1]));
    }

    #[test]
    fn elementary_symmetric_examples() {
        let e2 = elementary_symmetric(3, 2).unwrap();
        let expected = &(&(&x(3, 0) * &x(3, 1)) + &(&x(3, 0) * &x(3, 2))) + &(&x(3, 1) * &x(3, 2));
        assert_eq!(e2, expected);
        assert_eq!(elementary_symmetric(5, 0).unwrap(), Polynomial::one(5));
        assert_eq!(elementary_symmetric(4, 3).unwrap().num_terms(), 4);
        assert!(elementary_symmetric(3, 4).is_err());
    }

    #[test]
    fn product_of_forms_examples() {
        let p = product_of_forms(&halfcube_forms()).unwrap();
        assert_eq!(p.homogeneous_degree(), Some(4));
        assert_eq!(p.nvars(), 4);
        let coords: Vec<_> = (0..4).map(|i| LinearForm::coordinate(4, i)).collect();
        assert_eq!(
            product_of_forms(&coords).unwrap(),
            elementary_symmetric(4, 4).unwrap()
        );
        let l = LinearForm::from_ints(&[3, 0, -1]);
        assert_eq!(
            product_of_forms(std::slice::from_ref(&l)).unwrap(),
            l.to_polynomial()
        );
        assert!(product_of_forms(&[]).is_err());
        assert!(product_of_forms(&[l, LinearForm::from_ints(&[1])]).is_err());
    }

    #[test]
    fn compose_with_forms() {
        // E₂(y₁, y₂) ∘ (x₁ + x₂, x₁ − x₂) = x₁² − x₂²
        let e2 = elementary_symmetric(2, 2).unwrap();
        let subs = [
            LinearForm::from_ints(&[1, 1]).to_polynomial(),
            LinearForm::from_ints(&[1, -1]).to_polynomial(),
        ];
        let got = e2.compose(&subs).unwrap();
        assert_eq!(got, &(&x(2, 0) * &x(2, 0)) - &(&x(2, 1) * &x(2, 1)));
    }

    #[test]
    fn display_is_readable() {
        let p = &(&x(2, 0) * &x(2, 0)).scale(&frac(1, 2)) - &x(2, 1);
        assert_eq!(p.to_string(), "1/2*x1^2 - x2");
    }
}
