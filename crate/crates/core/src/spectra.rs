//! Symmetric linear pencils `A(x) = x₁A₁ + ⋯ + xₙAₙ`, their symbolic
//! determinants and exact semidefiniteness tests.
//!
//! Three pencil constructions live here:
//!
//! - [`renegar_pencil`]: for forms `ℓ₁, …, ℓ_d` normalized to `ℓᵢ(e) = 1`, the
//!   `(d−1)×(d−1)` pencil `diag(ℓ₁, …, ℓ_{d−1}) + ℓ_d·J` whose determinant is
//!   `E_{d−1}(ℓ)`, the first polar of `∏ℓᵢ`.
//! - [`realization_pencil`]: `L·diag(x)·Lᵀ` for a realization matrix `L`, whose
//!   determinant is `Σ det(L_I)² x^I` by Cauchy–Binet.
//! - [`e2_arrowhead`]: an arrowhead pencil with determinant `2·E₁^{n−1}·E₂`.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::poly::{elementary_symmetric, product_of_forms, LinearForm, Point, Polynomial};
use crate::rational::{int, Rational};
use crate::realroots::{all_roots_nonneg, all_roots_pos};
use crate::subsets::combinations;

/// Largest pencil size accepted by [`SymmetricPencil::determinant`].
pub const DEFAULT_DET_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricMatrix(RationalMatrix);

impl SymmetricMatrix {
    pub fn new(m: RationalMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!(
                "symmetric matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        for i in 0..m.rows() {
            for j in i + 1..m.cols() {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self(m))
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(RationalMatrix::from_int_rows(rows)?)
    }

    pub fn zeros(size: usize) -> Self {
        Self(RationalMatrix::zeros(size, size))
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.0.get(i, j)
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.0
    }
}

/// `M ⪰ 0`, decided from the roots of `det(λI − M)`.
pub fn is_psd(m: &SymmetricMatrix) -> bool {
    let cp = m.0.charpoly().expect("square matrix");
    all_roots_nonneg(&cp).expect("characteristic polynomial of a symmetric matrix is real-rooted")
}

/// `M ≻ 0`
pub fn is_pd(m: &SymmetricMatrix) -> bool {
    let cp = m.0.charpoly().expect("square matrix");
    all_roots_pos(&cp).expect("characteristic polynomial of a symmetric matrix is real-rooted")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricPencil {
    nvars: usize,
    size: usize,
    mats: Vec<SymmetricMatrix>,
}

impl SymmetricPencil {
    pub fn new(nvars: usize, size: usize, mats: Vec<SymmetricMatrix>) -> Result<Self> {
        if mats.len() != nvars {
            return Err(Error::NvarsMismatch {
                expected: nvars,
                found: mats.len(),
            });
        }
        if let Some((v, m)) = mats.iter().enumerate().find(|(_, m)| m.size() != size) {
            return Err(Error::Dimension(format!(
                "matrix {v} has size {}, expected {size}",
                m.size()
            )));
        }
        Ok(Self { nvars, size, mats })
    }

    /// Builds the pencil whose `(i, j)` entry is the linear form `entries[i][j]`.
    pub fn from_form_entries(nvars: usize, entries: &[Vec<LinearForm>]) -> Result<Self> {
        let size = entries.len();
        let mut mats = vec![RationalMatrix::zeros(size, size); nvars];
        for (i, row) in entries.iter().enumerate() {
            if row.len() != size {
                return Err(Error::Dimension(format!("pencil row {i} has wrong length")));
            }
            for (j, form) in row.iter().enumerate() {
                if form.nvars() != nvars {
                    return Err(Error::NvarsMismatch {
                        expected: nvars,
                        found: form.nvars(),
                    });
                }
                for (v, c) in form.coeffs().iter().enumerate() {
                    mats[v].set(i, j, c.clone());
                }
            }
        }
        let mats = mats
            .into_iter()
            .map(SymmetricMatrix::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(nvars, size, mats)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mats(&self) -> &[SymmetricMatrix] {
        &self.mats
    }

    /// The linear form in entry `(i, j)`.
    pub fn entry_form(&self, i: usize, j: usize) -> LinearForm {
        LinearForm::new(self.mats.iter().map(|m| m.get(i, j).clone()).collect())
    }

    /// `Σ xᵢAᵢ`
    pub fn eval(&self, x: &Point) -> Result<SymmetricMatrix> {
        if x.len() != self.nvars {
            return Err(Error::NvarsMismatch {
                expected: self.nvars,
                found: x.len(),
            });
        }
        let mut acc = RationalMatrix::zeros(self.size, self.size);
        for (m, xi) in self.mats.iter().zip(x.coords()) {
            if !xi.is_zero() {
                acc = acc.add(&m.0.scale(xi))?;
            }
        }
        Ok(SymmetricMatrix(acc))
    }

    /// `det A(x)` with the default size limit.
    pub fn determinant(&self) -> Result<Polynomial> {
        self.determinant_with_limit(DEFAULT_DET_LIMIT)
    }

    pub fn determinant_with_limit(&self, limit: usize) -> Result<Polynomial> {
        if self.size > limit {
            return Err(Error::LimitExceeded {
                size: self.size,
                limit,
            });
        }
        let entries: Vec<Vec<Polynomial>> = (0..self.size)
            .map(|i| {
                (0..self.size)
                    .map(|j| self.entry_form(i, j).to_polynomial())
                    .collect()
            })
            .collect();
        Ok(symbolic_det(self.nvars, &entries))
    }

    /// `diag(A(x), B(x))`
    pub fn block_diag(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        let size = self.size + other.size;
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| {
                let mut m = RationalMatrix::zeros(size, size);
                for i in 0..a.size() {
                    for j in 0..a.size() {
                        m.set(i, j, a.get(i, j).clone());
                    }
                }
                for i in 0..b.size() {
                    for j in 0..b.size() {
                        m.set(self.size + i, self.size + j, b.get(i, j).clone());
                    }
                }
                SymmetricMatrix(m)
            })
            .collect();
        Self::new(self.nvars, size, mats)
    }
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// rows, memoized over the set of remaining columns (`2^m` subproblems).
pub fn symbolic_det(nvars: usize, entries: &[Vec<Polynomial>]) -> Polynomial {
    let m = entries.len();
    assert!(m < 32, "matrix too large for bitmask expansion");
    // level s holds the minors on the last s rows, keyed by column mask
    let mut level: HashMap<u32, Polynomial> = HashMap::from([(0, Polynomial::one(nvars))]);
    for s in 1..=m {
        let row = m - s;
        let mut next = HashMap::new();
        for cols in combinations(m, s) {
            let mask = cols.iter().fold(0u32, |acc, &c| acc | (1 << c));
            let mut acc = Polynomial::zero(nvars);
            for (pos, &c) in cols.iter().enumerate() {
                let a = &entries[row][c];
                if a.is_zero() {
                    continue;
                }
                let Some(minor) = level.get(&(mask & !(1 << c))) else {
                    continue;
                };
                let term = a * minor;
                acc = if pos % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            if !acc.is_zero() {
                next.insert(mask, acc);
            }
        }
        level = next;
    }
    let full = if m == 0 { 0 } else { (1u32 << m) - 1 };
    level
        .remove(&full)
        .unwrap_or_else(|| Polynomial::zero(nvars))
}

/// Rescales each form to `ℓᵢ(e) = 1`; fails unless every `ℓᵢ(e) > 0`.
pub fn normalize_forms(forms: &[LinearForm], e: &Point) -> Result<Vec<LinearForm>> {
    if forms.is_empty() {
        return Err(Error::InvalidArgument("empty list of linear forms".into()));
    }
    forms
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let v = f.eval(e)?;
            if !v.is_positive() {
                return Err(Error::BadDirection(format!(
                    "form {} is not positive at the direction",
                    i + 1
                )));
            }
            Ok(f.scale(&v.recip()))
        })
        .collect()
}

/// The `(d−1)×(d−1)` pencil with `M(x)ᵢᵢ = ℓᵢ(x) + ℓ_d(x)` and
/// `M(x)ᵢⱼ = ℓ_d(x)` off the diagonal, built from the forms normalized to
/// `ℓᵢ(e) = 1`. The last form plays the distinguished role; any choice gives
/// the same determinant.
pub fn renegar_pencil(forms: &[LinearForm], e: &Point) -> Result<SymmetricPencil> {
    let normalized = normalize_forms(forms, e)?;
    pencil_from_normalized(&normalized)
}

fn pencil_from_normalized(forms: &[LinearForm]) -> Result<SymmetricPencil> {
    let nvars = forms[0].nvars();
    let (last, rest) = forms.split_last().unwrap();
    let entries: Vec<Vec<LinearForm>> = rest
        .iter()
        .enumerate()
        .map(|(i, li)| {
            (0..rest.len())
                .map(|j| {
                    if i == j {
                        LinearForm::new(
                            li.coeffs()
                                .iter()
                                .zip(last.coeffs())
                                .map(|(a, b)| a + b)
                                .collect(),
                        )
                    } else {
                        last.clone()
                    }
                })
                .collect()
        })
        .collect();
    SymmetricPencil::from_form_entries(nvars, &entries)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativePencilReport {
    pub equal: bool,
    /// `det M(x)`
    pub lhs: Polynomial,
    /// `R¹ₑ ∏ℓᵢ` of the normalized forms
    pub rhs: Polynomial,
    pub normalized_forms: Vec<LinearForm>,
    pub pencil: SymmetricPencil,
}

/// Compares `det` of [`renegar_pencil`] with the first polar of the product
/// of the normalized forms.
pub fn verify_theorem1(forms: &[LinearForm], e: &Point) -> Result<DerivativePencilReport> {
    let normalized = normalize_forms(forms, e)?;
    let pencil = pencil_from_normalized(&normalized)?;
    let lhs = pencil.determinant_with_limit(usize::MAX)?;
    let rhs = product_of_forms(&normalized)?.polar(e, 1)?;
    Ok(DerivativePencilReport {
        equal: lhs == rhs,
        lhs,
        rhs,
        normalized_forms: normalized,
        pencil,
    })
}

/// A `k×n` matrix whose columns realize a matroid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealizationMatrix(RationalMatrix);

impl RealizationMatrix {
    pub fn new(m: RationalMatrix) -> Self {
        Self(m)
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Ok(Self(RationalMatrix::from_int_rows(rows)?))
    }

    pub fn rows(&self) -> usize {
        self.0.rows()
    }

    pub fn cols(&self) -> usize {
        self.0.cols()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.0
    }

    /// `det L_I` for every `k`-subset `I` of the columns, lexicographic in `I`.
    pub fn maximal_minors(&self) -> Vec<(Vec<usize>, Rational)> {
        combinations(self.cols(), self.rows())
            .into_iter()
            .map(|cols| {
                let d = self.0.select_columns(&cols).det().expect("square");
                (cols, d)
            })
            .collect()
    }

    /// Rank of the column submatrix `L_I`.
    pub fn column_rank(&self, mask: u32) -> usize {
        let cols: Vec<usize> = (0..self.cols()).filter(|&j| mask & (1 << j) != 0).collect();
        self.0.select_columns(&cols).rank()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationPencil {
    /// `Aᵢ = Lᵢ Lᵢᵀ` for the columns `Lᵢ`
    pub pencil: SymmetricPencil,
    /// `Σ_{|I|=k} det(L_I)² x^I`
    pub bases: Polynomial,
}

pub fn realization_pencil(l: &RealizationMatrix) -> Result<RealizationPencil> {
    let (k, n) = (l.rows(), l.cols());
    if k == 0 {
        return Err(Error::InvalidArgument(
            "realization matrix needs at least one row".into(),
        ));
    }
    let mats = (0..n)
        .map(|j| {
            let col = l.0.column(j);
            let mut m = RationalMatrix::zeros(k, k);
            for a in 0..k {
                for b in 0..k {
                    m.set(a, b, &col[a] * &col[b]);
                }
            }
            SymmetricMatrix(m)
        })
        .collect();
    let pencil = SymmetricPencil::new(n, k, mats)?;
    let terms = l.maximal_minors().into_iter().map(|(cols, d)| {
        let mut exp = vec![0u32; n];
        for c in cols {
            exp[c] = 1;
        }
        (exp, &d * &d)
    });
    let bases = Polynomial::from_terms(n, terms)?;
    Ok(RealizationPencil { pencil, bases })
}

fn sum_form(n: usize) -> LinearForm {
    LinearForm::new(vec![Rational::one(); n])
}

fn arrowhead(n: usize, arrow_len: usize) -> Result<SymmetricPencil> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "arrowhead needs n >= 2, got {n}"
        )));
    }
    let size = arrow_len + 1;
    let zero = LinearForm::new(vec![Rational::zero(); n]);
    let entries: Vec<Vec<LinearForm>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| match (i, j) {
                    _ if i == j => sum_form(n),
                    (0, j) => LinearForm::coordinate(n, j - 1),
                    (i, 0) => LinearForm::coordinate(n, i - 1),
                    _ => zero.clone(),
                })
                .collect()
        })
        .collect();
    SymmetricPencil::from_form_entries(n, &entries)
}

/// `(n+1)×(n+1)` arrowhead: `E₁(x)` on the diagonal, `x₁, …, xₙ` in the arrow.
/// Its determinant is `E₁^{n−1}(E₁² − Σxᵢ²) = 2·E₁^{n−1}·E₂`.
pub fn e2_arrowhead(n: usize) -> Result<SymmetricPencil> {
    arrowhead(n, n)
}

/// The `n×n` variant with arrow entries `x₁, …, x_{n−1}` only. Its determinant
/// is `E₁^{n−2}(2E₂ + xₙ²)`, not `2·E₁^{n−2}·E₂`.
pub fn e2_arrowhead_literal(n: usize) -> Result<SymmetricPencil> {
    arrowhead(n, n.saturating_sub(1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Report {
    pub n: usize,
    pub literal: bool,
    pub pencil: SymmetricPencil,
    pub det: Polynomial,
    /// `2E₁^{n−1}E₂` for the corrected pencil, `2E₁^{n−2}E₂` for the literal one.
    pub target: Polynomial,
    pub identity_holds: bool,
    /// `det − target`
    pub difference: Polynomial,
    /// `0` for the corrected pencil, `E₁^{n−2}xₙ²` for the literal one.
    pub expected_difference: Polynomial,
    pub strictly_pd_at_ones: bool,
}

impl E2Report {
    pub fn difference_as_expected(&self) -> bool {
        self.difference == self.expected_difference
    }
}

pub fn e2_report(n: usize, literal: bool) -> Result<E2Report> {
    let pencil = if literal {
        e2_arrowhead_literal(n)?
    } else {
        e2_arrowhead(n)?
    };
    let det = pencil.determinant_with_limit(usize::MAX)?;
    let e1 = elementary_symmetric(n, 1)?;
    let e2 = elementary_symmetric(n, 2)?;
    let power = if literal { n - 2 } else { n - 1 };
    let target = (&e1.pow(power) * &e2).scale(&int(2));
    let expected_difference = if literal {
        let xn = Polynomial::var(n, n - 1);
        &e1.pow(n - 2) * &(&xn * &xn)
    } else {
        Polynomial::zero(n)
    };
    let difference = &det - &target;
    let strictly_pd_at_ones = is_pd(&pencil.eval(&Point::ones(n))?);
    Ok(E2Report {
        n,
        literal,
        identity_holds: difference.is_zero(),
        pencil,
        det,
        target,
        difference,
        expected_difference,
        strictly_pd_at_ones,
    })
}
