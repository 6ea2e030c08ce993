//! Polymatroids of hyperbolic polynomials and unimodular realizations of
//! uniform matroids.
//!
//! Subsets of the ground set `[n]` are `u32` bitmasks; bit `i` stands for
//! element `i + 1`. Everything that enumerates subsets does so in increasing
//! mask order, which fixes which violation or witness gets reported.

use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hyperbolicity::{ConeMode, HyperbolicContext};
use crate::linalg::RationalMatrix;
use crate::poly::Point;
use crate::rational::Rational;
use crate::realroots::mult_at_zero;
use crate::spectra::RealizationMatrix;
use crate::subsets::combinations;

/// Largest ground set handled by [`gurvits_rank`].
pub const DEFAULT_MAX_GROUND_SET: usize = 16;

/// Largest `k·(n−k)` handled by [`search_unimodular`].
pub const DEFAULT_MAX_SEARCH_CELLS: usize = 20;

/// Dense rank table `rk : 2^[n] → ℤ≥0`, indexed by bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankFunction {
    n: usize,
    ranks: Vec<u32>,
}

impl RankFunction {
    pub fn new(n: usize, ranks: Vec<u32>) -> Result<Self> {
        if n > DEFAULT_MAX_GROUND_SET {
            return Err(Error::LimitExceeded {
                size: n,
                limit: DEFAULT_MAX_GROUND_SET,
            });
        }
        if ranks.len() != 1 << n {
            return Err(Error::Dimension(format!(
                "rank table for n = {n} needs {} entries, got {}",
                1usize << n,
                ranks.len()
            )));
        }
        Ok(Self { n, ranks })
    }

    pub fn from_fn(n: usize, f: impl Fn(u32) -> u32) -> Result<Self> {
        Self::new(n, (0..1u32 << n).map(f).collect())
    }

    pub fn uniform(spec: UniformSpec) -> Self {
        Self::from_fn(spec.n, |m| m.count_ones().min(spec.k as u32)).expect("valid size")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn rank(&self, mask: u32) -> u32 {
        self.ranks[mask as usize]
    }
}

/// The uniform matroid `U_{k,n}`, `I ↦ min(k, |I|)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UniformSpec {
    pub k: usize,
    pub n: usize,
}

impl UniformSpec {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidArgument(format!(
                "uniform matroid needs k <= n, got k={k}, n={n}"
            )));
        }
        Ok(Self { k, n })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GurvitsOptions {
    pub max_ground_set: usize,
    /// Check `χ_I ∈ hyp` for every subset instead of the basis vectors only.
    pub full_orthant_check: bool,
}

impl Default for GurvitsOptions {
    fn default() -> Self {
        Self {
            max_ground_set: DEFAULT_MAX_GROUND_SET,
            full_orthant_check: false,
        }
    }
}

/// `I ↦ d − mult₀ p(χ_I + λe)`. Requires `ℝⁿ≥0 ⊆ hyp(p, e)`, checked on the
/// basis vectors (enough by convexity of the closed cone).
pub fn gurvits_rank(ctx: &HyperbolicContext) -> Result<RankFunction> {
    gurvits_rank_with(ctx, GurvitsOptions::default())
}

pub fn gurvits_rank_with(ctx: &HyperbolicContext, opts: GurvitsOptions) -> Result<RankFunction> {
    let n = check_orthant(ctx, opts)?;
    let d = ctx.degree() as u32;
    let ranks = (0..1u32 << n)
        .map(|mask| {
            let m = ctx.mult_at_zero_along(&Point::indicator(n, mask))?;
            Ok(d - m as u32)
        })
        .collect::<Result<Vec<_>>>()?;
    RankFunction::new(n, ranks)
}

/// Same ranks, read off the eigenvalue polynomial `p(χ_I − λe)` instead.
pub fn gurvits_rank_via_eigenvalues(ctx: &HyperbolicContext) -> Result<RankFunction> {
    let n = check_orthant(ctx, GurvitsOptions::default())?;
    let d = ctx.degree() as u32;
    let ranks = (0..1u32 << n)
        .map(|mask| {
            let u = ctx.eigenvalue_poly(&Point::indicator(n, mask))?;
            Ok(d - mult_at_zero(&u)? as u32)
        })
        .collect::<Result<Vec<_>>>()?;
    RankFunction::new(n, ranks)
}

fn check_orthant(ctx: &HyperbolicContext, opts: GurvitsOptions) -> Result<usize> {
    let n = ctx.nvars();
    if n > opts.max_ground_set {
        return Err(Error::LimitExceeded {
            size: n,
            limit: opts.max_ground_set,
        });
    }
    for i in 0..n {
        if !ctx.in_cone(&Point::basis(n, i), ConeMode::Closed)? {
            return Err(Error::OrthantNotContained { index: i });
        }
    }
    if opts.full_orthant_check {
        for mask in 1..1u32 << n {
            if !ctx.in_cone(&Point::indicator(n, mask), ConeMode::Closed)? {
                return Err(Error::OrthantNotContained {
                    index: mask.trailing_zeros() as usize,
                });
            }
        }
    }
    Ok(n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolymatroidReport {
    pub polymatroid: bool,
    pub matroid: bool,
    /// First pair `(I, J)` breaking monotonicity or submodularity.
    pub violation: Option<(u32, u32)>,
    /// First `I` with `rk(I) > |I|`.
    pub matroid_violation: Option<u32>,
}

/// Exhaustive check of `rk(∅) = 0`, `rk(I) ≤ rk(I ∪ J)` and
/// `rk(I ∪ J) + rk(I ∩ J) ≤ rk(I) + rk(J)` over all pairs.
pub fn is_polymatroid(rk: &RankFunction) -> PolymatroidReport {
    let full = 1u32 << rk.n;
    let mut violation = None;
    if rk.rank(0) != 0 {
        violation = Some((0, 0));
    }
    'outer: for i in 0..full {
        if violation.is_some() {
            break;
        }
        for j in 0..full {
            let (ri, rj) = (rk.rank(i), rk.rank(j));
            let (ru, rc) = (rk.rank(i | j), rk.rank(i & j));
            if ri > ru || ru + rc > ri + rj {
                violation = Some((i, j));
                break 'outer;
            }
        }
    }
    let matroid_violation = (0..full).find(|&m| rk.rank(m) > m.count_ones());
    let polymatroid = violation.is_none();
    PolymatroidReport {
        polymatroid,
        matroid: polymatroid && matroid_violation.is_none(),
        violation,
        matroid_violation,
    }
}

pub fn equals_uniform(rk: &RankFunction, spec: UniformSpec) -> Result<bool> {
    if rk.n != spec.n {
        return Err(Error::Dimension(format!(
            "rank function on {} elements compared with U({}, {})",
            rk.n, spec.k, spec.n
        )));
    }
    Ok(*rk == RankFunction::uniform(spec))
}

/// Rank function `I ↦ rank L_I` of the column matroid.
pub fn column_matroid(l: &RealizationMatrix) -> Result<RankFunction> {
    RankFunction::from_fn(l.cols(), |mask| l.column_rank(mask) as u32)
}

/// Every maximal minor of `L` is `±1`.
pub fn is_unimodular_realization(l: &RealizationMatrix, spec: UniformSpec) -> Result<bool> {
    if (l.rows(), l.cols()) != (spec.k, spec.n) {
        return Err(Error::Dimension(format!(
            "realization is {}x{}, expected {}x{}",
            l.rows(),
            l.cols(),
            spec.k,
            spec.n
        )));
    }
    Ok(l.maximal_minors().iter().all(|(_, d)| d.abs().is_one()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub witness: Option<RealizationMatrix>,
    /// Sign matrices examined; `0` for the closed-form cases.
    pub searched: u64,
    pub closed_form: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_cells: usize,
    /// Answer `k ∈ {0, 1, n−1, n}` without searching.
    pub closed_form: bool,
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            max_cells: DEFAULT_MAX_SEARCH_CELLS,
            closed_form: true,
            parallel: false,
        }
    }
}

pub fn search_unimodular(spec: UniformSpec) -> Result<SearchOutcome> {
    search_unimodular_with(spec, SearchOptions::default())
}

/// Looks for `L = (Id | L′)` realizing `U_{k,n}` with all maximal minors `±1`.
///
/// The maximal minors of `(Id | L′)` are, up to sign, exactly the square
/// minors of `L′` of every size, so the entries of `L′` are forced into
/// `{±1}` and only sign patterns need to be enumerated. Candidates are visited
/// in row-major binary order (bit set means `−1`); the first hit is returned.
pub fn search_unimodular_with(spec: UniformSpec, opts: SearchOptions) -> Result<SearchOutcome> {
    let UniformSpec { k, n } = spec;
    if opts.closed_form {
        if let Some(l) = closed_form(k, n) {
            return Ok(SearchOutcome {
                witness: Some(l),
                searched: 0,
                closed_form: true,
            });
        }
    }
    let (rows, cols) = (k, n - k);
    let cells = rows * cols;
    if cells > opts.max_cells || cells >= 64 {
        return Err(Error::LimitExceeded {
            size: cells,
            limit: opts.max_cells,
        });
    }
    let total = 1u64 << cells;
    let minors = square_minor_index(rows, cols);
    let accept = |bits: u64| all_minors_unit(&sign_matrix(bits, rows, cols), &minors);
    let hit = if opts.parallel {
        (0..total).into_par_iter().find_first(|&b| accept(b))
    } else {
        (0..total).find(|&b| accept(b))
    };
    Ok(match hit {
        Some(bits) => SearchOutcome {
            witness: Some(with_identity(&sign_matrix(bits, rows, cols), k, n)),
            searched: bits + 1,
            closed_form: false,
        },
        None => SearchOutcome {
            witness: None,
            searched: total,
            closed_form: false,
        },
    })
}

fn closed_form(k: usize, n: usize) -> Option<RealizationMatrix> {
    let ones = |r, c| vec![vec![1i64; c]; r];
    if k == 0 || k == n {
        // empty matrix, or Id_n
        return Some(with_identity(&ones(k, 0), k, n));
    }
    if k == 1 {
        return Some(with_identity(&ones(1, n - 1), k, n));
    }
    if k == n - 1 {
        return Some(with_identity(&vec![vec![-1i64]; k], k, n));
    }
    None
}

fn with_identity(tail: &[Vec<i64>], k: usize, n: usize) -> RealizationMatrix {
    let mut m = RationalMatrix::zeros(k, n);
    for (i, row) in tail.iter().enumerate().take(k) {
        m.set(i, i, Rational::one());
        for (j, &v) in row.iter().enumerate() {
            m.set(i, k + j, Rational::from_integer(v.into()));
        }
    }
    RealizationMatrix::new(m)
}

fn sign_matrix(bits: u64, rows: usize, cols: usize) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    // most significant bit is entry (0, 0)
                    let shift = rows * cols - 1 - (i * cols + j);
                    if bits >> shift & 1 == 1 {
                        -1
                    } else {
                        1
                    }
                })
                .collect()
        })
        .collect()
}

/// All (row set, column set) pairs of size ≥ 2, smallest first.
fn square_minor_index(rows: usize, cols: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for s in 2..=rows.min(cols) {
        for r in combinations(rows, s) {
            for c in combinations(cols, s) {
                out.push((r.clone(), c));
            }
        }
    }
    out
}

fn all_minors_unit(m: &[Vec<i64>], minors: &[(Vec<usize>, Vec<usize>)]) -> bool {
    minors.iter().all(|(r, c)| {
        let sub: Vec<Vec<i64>> = r
            .iter()
            .map(|&i| c.iter().map(|&j| m[i][j]).collect())
            .collect();
        int_det(&sub).abs() == 1
    })
}

/// Laplace expansion; fine for the ≤ 4×4 minors the search meets.
fn int_det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * int_det(&minor)
            })
            .sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{elementary_symmetric, Polynomial};
    use crate::rational::int;

    fn ctx_ek(n: usize, k: usize) -> HyperbolicContext {
        HyperbolicContext::new(elementary_symmetric(n, k).unwrap(), Point::ones(n)).unwrap()
    }

    #[test]
    fn gurvits_examples() {
        let rk = gurvits_rank(&ctx_ek(3, 2)).unwrap();
        assert_eq!(rk, RankFunction::uniform(UniformSpec::new(2, 3).unwrap()));
        let free = gurvits_rank(&ctx_ek(4, 4)).unwrap();
        for m in 0..16u32 {
            assert_eq!(free.rank(m), m.count_ones());
        }
        // x₁² in two variables
        let x1 = Polynomial::var(2, 0);
        let sq = HyperbolicContext::new(&x1 * &x1, Point::ones(2)).unwrap();
        let rk = gurvits_rank(&sq).unwrap();
        assert_eq!(rk.ranks(), &[0, 2, 0, 2]);
        let rep = is_polymatroid(&rk);
        assert!(rep.polymatroid && !rep.matroid);
        assert_eq!(rep.matroid_violation, Some(0b01));
    }

    #[test]
    fn both_multiplicity_routes_agree() {
        for (n, k) in [(3, 2), (4, 2), (5, 3), (4, 4)] {
            let ctx = ctx_ek(n, k);
            assert_eq!(
                gurvits_rank(&ctx).unwrap(),
                gurvits_rank_via_eigenvalues(&ctx).unwrap()
            );
        }
    }

    #[test]
    fn orthant_violation_is_reported() {
        // x₁ − x₂ is positive at (2, 1) but e₂ lies outside its half-space
        let p = &Polynomial::var(2, 0) - &Polynomial::var(2, 1);
        let ctx = HyperbolicContext::new(p, Point::from_ints(&[2, 1])).unwrap();
        assert_eq!(
            gurvits_rank(&ctx),
            Err(Error::OrthantNotContained { index: 1 })
        );
        let full = GurvitsOptions {
            full_orthant_check: true,
            ..Default::default()
        };
        assert!(gurvits_rank_with(&ctx_ek(4, 2), full).is_ok());
    }

    #[test]
    fn ground_set_limit() {
        let opts = GurvitsOptions {
            max_ground_set: 3,
            ..Default::default()
        };
        assert_eq!(
            gurvits_rank_with(&ctx_ek(4, 2), opts),
            Err(Error::LimitExceeded { size: 4, limit: 3 })
        );
    }

    #[test]
    fn polymatroid_checks() {
        let u = RankFunction::uniform(UniformSpec::new(2, 4).unwrap());
        let rep = is_polymatroid(&u);
        assert!(rep.polymatroid && rep.matroid && rep.violation.is_none());
        let bad = RankFunction::new(2, vec![0, 0, 0, 1]).unwrap();
        let rep = is_polymatroid(&bad);
        assert!(!rep.polymatroid);
        assert_eq!(rep.violation, Some((0b01, 0b10)));
        let non_monotone = RankFunction::new(2, vec![0, 1, 1, 0]).unwrap();
        assert!(!is_polymatroid(&non_monotone).polymatroid);
        let nonzero_empty = RankFunction::new(1, vec![1, 1]).unwrap();
        assert!(!is_polymatroid(&nonzero_empty).polymatroid);
    }

    #[test]
    fn rank_table_size_is_checked() {
        assert!(RankFunction::new(2, vec![0, 1, 1]).is_err());
        assert!(RankFunction::new(17, vec![]).is_err());
    }

    #[test]
    fn uniform_comparison() {
        let rk = gurvits_rank(&ctx_ek(3, 2)).unwrap();
        assert!(equals_uniform(&rk, UniformSpec::new(2, 3).unwrap()).unwrap());
        let free = RankFunction::uniform(UniformSpec::new(4, 4).unwrap());
        assert!(equals_uniform(&free, UniformSpec::new(4, 4).unwrap()).unwrap());
        assert!(!equals_uniform(&free, UniformSpec::new(3, 4).unwrap()).unwrap());
        assert!(equals_uniform(&free, UniformSpec::new(3, 5).unwrap()).is_err());
        assert!(UniformSpec::new(5, 4).is_err());
    }

    #[test]
    fn unimodular_checks() {
        for n in 2..7 {
            let mut rows: Vec<Vec<i64>> = vec![vec![0; n]; n - 1];
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] = 1;
                row[n - 1] = -1;
            }
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let l = RealizationMatrix::from_int_rows(&refs).unwrap();
            assert!(is_unimodular_realization(&l, UniformSpec::new(n - 1, n).unwrap()).unwrap());
        }
        let l = RealizationMatrix::from_int_rows(&[&[1, 0, 1], &[0, 1, 2]]).unwrap();
        assert!(!is_unimodular_realization(&l, UniformSpec::new(2, 3).unwrap()).unwrap());
        let z = RealizationMatrix::from_int_rows(&[&[1, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(!is_unimodular_realization(&z, UniformSpec::new(2, 3).unwrap()).unwrap());
        assert!(is_unimodular_realization(&z, UniformSpec::new(2, 4).unwrap()).is_err());
    }

    #[test]
    fn search_examples() {
        let one = search_unimodular(UniformSpec::new(1, 5).unwrap()).unwrap();
        let l = one.witness.unwrap();
        assert_eq!(l.matrix().row(0), vec![int(1); 5].as_slice());

        let co = search_unimodular(UniformSpec::new(3, 4).unwrap()).unwrap();
        let l = co.witness.unwrap();
        assert!(is_unimodular_realization(&l, UniformSpec::new(3, 4).unwrap()).unwrap());
        assert_eq!(l.matrix().get(0, 3), &int(-1));

        let none = search_unimodular(UniformSpec::new(2, 4).unwrap()).unwrap();
        assert!(none.witness.is_none());
        assert_eq!(none.searched, 16);
    }

    #[test]
    fn search_without_closed_forms_finds_witnesses() {
        let opts = SearchOptions {
            closed_form: false,
            ..Default::default()
        };
        for (k, n) in [(1, 4), (3, 4), (4, 5), (1, 2)] {
            let spec = UniformSpec::new(k, n).unwrap();
            let out = search_unimodular_with(spec, opts).unwrap();
            let l = out.witness.expect("witness");
            assert!(is_unimodular_realization(&l, spec).unwrap());
            assert_eq!(out.searched, 1);
        }
    }

    #[test]
    fn search_limit() {
        assert!(matches!(
            search_unimodular(UniformSpec::new(5, 10).unwrap()),
            Err(Error::LimitExceeded { size: 25, .. })
        ));
    }

    #[test]
    fn parallel_search_matches() {
        for (k, n) in [(2, 4), (2, 5), (3, 6)] {
            let spec = UniformSpec::new(k, n).unwrap();
            let par = SearchOptions {
                parallel: true,
                ..Default::default()
            };
            assert_eq!(
                search_unimodular(spec).unwrap(),
                search_unimodular_with(spec, par).unwrap()
            );
        }
    }

    #[test]
    fn integer_determinant() {
        assert_eq!(int_det(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]), 18);
        assert_eq!(int_det(&[vec![1, 1], vec![1, -1]]), -2);
    }
}
