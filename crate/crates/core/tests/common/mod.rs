//! Test-only oracles and random generators.
//!
//! The dense polynomial type here shares no code with `hypcone::Polynomial`:
//! it expands products by brute force and computes determinants by the
//! Leibniz permutation sum.

#![allow(dead_code)]

use std::collections::HashMap;

use hypcone::{LinearForm, Point, Polynomial, Rational, UnivariatePolynomial};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn z(n: i64) -> Rational {
    q(n, 1)
}

/// Uniform on `{k/den : |k| ≤ span}`.
pub fn random_rational(rng: &mut ChaCha8Rng, span: i64, den: i64) -> Rational {
    q(rng.gen_range(-span..=span), den)
}

pub fn random_point(rng: &mut ChaCha8Rng, n: usize, span: i64, den: i64) -> Point {
    Point::new((0..n).map(|_| random_rational(rng, span, den)).collect())
}

/// A form with `ℓ(e) > 0`, resampled until it is.
pub fn random_positive_form(rng: &mut ChaCha8Rng, e: &Point, span: i64, den: i64) -> LinearForm {
    loop {
        let f = LinearForm::new(
            (0..e.len())
                .map(|_| random_rational(rng, span, den))
                .collect(),
        );
        let v = f.eval(e).unwrap();
        if v > Rational::zero() {
            return f;
        }
        if v < Rational::zero() {
            return f.scale(&-Rational::one());
        }
    }
}

/// Dense polynomial: exponent vector → coefficient, zeros pruned on compare.
#[derive(Clone, Debug)]
pub struct Dense {
    pub n: usize,
    pub map: HashMap<Vec<u32>, Rational>,
}

impl Dense {
    pub fn constant(n: usize, c: Rational) -> Self {
        let mut map = HashMap::new();
        map.insert(vec![0; n], c);
        Self { n, map }
    }

    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut map = HashMap::new();
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            map.insert(e, c.clone());
        }
        Self { n, map }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut c = vec![Rational::zero(); n];
        c[i] = Rational::one();
        Self::linear(&c)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut map = self.map.clone();
        for (e, c) in &o.map {
            *map.entry(e.clone()).or_insert_with(Rational::zero) += c;
        }
        Self { n: self.n, map }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            n: self.n,
            map: self.map.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut map: HashMap<Vec<u32>, Rational> = HashMap::new();
        for (ea, ca) in &self.map {
            for (eb, cb) in &o.map {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *map.entry(e).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Self { n: self.n, map }
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::constant(self.n, Rational::one()), |acc, _| {
            acc.mul(self)
        })
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut map = HashMap::new();
        for (e, c) in &self.map {
            if e[i] > 0 {
                let mut d = e.clone();
                d[i] -= 1;
                map.insert(d, c * z(e[i] as i64));
            }
        }
        Self { n: self.n, map }
    }

    pub fn pruned(&self) -> HashMap<Vec<u32>, Rational> {
        self.map
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect()
    }

    pub fn matches(&self, p: &Polynomial) -> bool {
        let mine = self.pruned();
        mine.len() == p.num_terms() && p.terms().all(|(e, c)| mine.get(e) == Some(c))
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.map
            .iter()
            .map(|(e, c)| {
                e.iter().zip(x).fold(c.clone(), |acc, (&k, xi)| {
                    acc * num_traits::pow(xi.clone(), k as usize)
                })
            })
            .sum()
    }
}

/// Leibniz expansion over all permutations.
pub fn leibniz_det(n: usize, m: &[Vec<Dense>]) -> Dense {
    let size = m.len();
    let mut total = Dense::constant(n, Rational::zero());
    let mut perm: Vec<usize> = (0..size).collect();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..size)
            .flat_map(|i| (i + 1..size).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term = Dense::constant(n, if inversions % 2 == 0 { z(1) } else { z(-1) });
        for (row, &col) in p.iter().enumerate() {
            term = term.mul(&m[row][col]);
        }
        total = total.add(&term);
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Numeric determinant of a rational matrix via the Leibniz sum.
pub fn leibniz_det_numeric(m: &[Vec<Rational>]) -> Rational {
    let dense: Vec<Vec<Dense>> = m
        .iter()
        .map(|row| row.iter().map(|c| Dense::constant(0, c.clone())).collect())
        .collect();
    let d = leibniz_det(0, &dense);
    d.map
        .get(&Vec::new())
        .cloned()
        .unwrap_or_else(Rational::zero)
}

/// `E_k(y₁, …, y_m)` by enumerating subsets.
pub fn esym_values(k: usize, ys: &[Rational]) -> Rational {
    let m = ys.len();
    (0u32..1 << m)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| {
            (0..m)
                .filter(|i| s & (1 << i) != 0)
                .fold(Rational::one(), |acc, i| acc * &ys[i])
        })
        .sum()
}

/// `E_k(ℓ₁, …, ℓ_d)` as a dense polynomial, by subset enumeration.
pub fn esym_of_forms(k: usize, forms: &[Dense]) -> Dense {
    let n = forms[0].n;
    let d = forms.len();
    let mut total = Dense::constant(n, Rational::zero());
    for s in 0u32..1 << d {
        if s.count_ones() as usize != k {
            continue;
        }
        let mut term = Dense::constant(n, Rational::one());
        for (i, f) in forms.iter().enumerate() {
            if s & (1 << i) != 0 {
                term = term.mul(f);
            }
        }
        total = total.add(&term);
    }
    total
}

/// `c·∏(λ − rᵢ)`
pub fn poly_from_roots(c: &Rational, roots: &[Rational]) -> UnivariatePolynomial {
    UnivariatePolynomial::from_roots(roots).scale(c)
}

pub fn distinct(roots: &[Rational]) -> usize {
    let mut v = roots.to_vec();
    v.sort();
    v.dedup();
    v.len()
}
