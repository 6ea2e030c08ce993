mod common;

use common::{random_point, random_positive_form, random_rational, rng, z};
use hypcone::hyperbolicity::sample_points;
use hypcone::matroid::{column_matroid, equals_uniform, gurvits_rank_via_eigenvalues};
use hypcone::poly::elementary_symmetric;
use hypcone::spectra::e2_arrowhead;
use hypcone::{
    gurvits_rank, is_pd, is_polymatroid, is_psd, product_of_forms, realization_pencil, ConeMode,
    HyperbolicContext, LinearForm, Point, RationalMatrix, RealizationMatrix, UniformSpec,
    UnivariatePolynomial,
};
use num_traits::{One, Zero};
use rand::Rng;

/// Product of `d` random forms normalized to `ℓᵢ(e) = 1`.
fn random_form_context(seed: u64, n: usize, d: usize) -> (HyperbolicContext, Vec<LinearForm>) {
    let mut r = rng(seed);
    let e = loop {
        let e = random_point(&mut r, n, 4, 2);
        if e.coords().iter().any(|c| !c.is_zero()) {
            break e;
        }
    };
    let forms: Vec<LinearForm> = (0..d)
        .map(|_| {
            let f = random_positive_form(&mut r, &e, 5, 1);
            f.scale(&f.eval(&e).unwrap().recip())
        })
        .collect();
    let ctx = HyperbolicContext::new(product_of_forms(&forms).unwrap(), e).unwrap();
    (ctx, forms)
}

#[test]
fn rolle_containment_chain() {
    let mut r = rng(11);
    for trial in 0..200u64 {
        let n = r.gen_range(1..=5);
        let d = r.gen_range(1..=6);
        let (ctx, _) = random_form_context(1000 + trial, n, d);
        let x = random_point(&mut r, n, 6, 2);
        let mut prev = ctx.in_cone(&x, ConeMode::Closed).unwrap();
        for i in 1..d {
            let cur = ctx.in_derivative_cone(&x, i).unwrap();
            assert!(
                !prev || cur,
                "containment broken at order {i}, trial {trial}"
            );
            prev = cur;
        }
    }
}

#[test]
fn eigenvalues_of_form_products_factor() {
    let mut r = rng(12);
    for trial in 0..10u64 {
        let (ctx, forms) = random_form_context(2000 + trial, 3, 4);
        for _ in 0..5 {
            let x = random_point(&mut r, 3, 8, 3);
            let expected = forms.iter().fold(UnivariatePolynomial::one(), |acc, f| {
                &acc * &UnivariatePolynomial::linear(f.eval(&x).unwrap(), -hypcone::Rational::one())
            });
            assert_eq!(ctx.eigenvalue_poly(&x).unwrap(), expected);
        }
    }
}

#[test]
fn membership_is_scale_invariant_and_contains_direction() {
    let mut r = rng(13);
    for trial in 0..40u64 {
        let (ctx, _) = random_form_context(3000 + trial, 3, 3);
        assert!(ctx.in_cone(ctx.direction(), ConeMode::Open).unwrap());
        let x = random_point(&mut r, 3, 6, 2);
        let c = common::q(r.gen_range(1..=9), r.gen_range(1..=4));
        for mode in [ConeMode::Closed, ConeMode::Open] {
            assert_eq!(
                ctx.in_cone(&x, mode).unwrap(),
                ctx.in_cone(&x.scale(&c), mode).unwrap()
            );
        }
    }
}

#[test]
fn elementary_symmetric_contexts_are_hyperbolic_on_samples() {
    for n in 1..=5 {
        for k in 1..=n {
            let p = elementary_symmetric(n, k).unwrap();
            let v = hypcone::check_hyperbolic(&p, &Point::ones(n), 32, n as u64).unwrap();
            assert!(v.is_hyperbolic(), "E_{k} in {n} variables");
        }
    }
}

#[test]
fn derivative_cone_membership_matches_sampled_boundary() {
    // x in the E_k cone ⇔ all eigenvalues ≥ 0; compare with the root-sign test on random grid points
    let ctx = HyperbolicContext::new(elementary_symmetric(4, 4).unwrap(), Point::ones(4)).unwrap();
    for x in sample_points(4, 100, 5) {
        let inside = x.coords().iter().all(|c| *c >= hypcone::Rational::zero());
        assert_eq!(ctx.in_cone(&x, ConeMode::Closed).unwrap(), inside);
    }
}

#[test]
fn cauchy_binet_random_matrices() {
    let mut r = rng(21);
    for _ in 0..30 {
        let k = r.gen_range(1..=3);
        let n = r.gen_range(1..=5);
        let rows: Vec<Vec<_>> = (0..k)
            .map(|_| (0..n).map(|_| z(r.gen_range(-3..=3))).collect())
            .collect();
        let l = RealizationMatrix::new(RationalMatrix::from_rows(rows).unwrap());
        let rp = realization_pencil(&l).unwrap();
        assert_eq!(rp.pencil.determinant().unwrap(), rp.bases);
    }
}

#[test]
fn block_diagonal_determinants_multiply() {
    let mut r = rng(22);
    for _ in 0..10 {
        let mk = |r: &mut rand_chacha::ChaCha8Rng| {
            let k = r.gen_range(1..=3);
            let rows: Vec<Vec<_>> = (0..k)
                .map(|_| (0..3).map(|_| z(r.gen_range(-2..=2))).collect())
                .collect();
            realization_pencil(&RealizationMatrix::new(
                RationalMatrix::from_rows(rows).unwrap(),
            ))
            .unwrap()
            .pencil
        };
        let (a, b) = (mk(&mut r), mk(&mut r));
        let ab = a.block_diag(&b).unwrap();
        assert_eq!(
            ab.determinant().unwrap(),
            &a.determinant().unwrap() * &b.determinant().unwrap()
        );
    }
}

#[test]
fn e2_arrowhead_relaxes_the_e2_cone() {
    let mut r = rng(23);
    for n in 2..=5 {
        let a = e2_arrowhead(n).unwrap();
        let ctx =
            HyperbolicContext::new(elementary_symmetric(n, 2).unwrap(), Point::ones(n)).unwrap();
        let mut hits = 0;
        while hits < 20 {
            let x = random_point(&mut r, n, 6, 2);
            let e1: hypcone::Rational = x.coords().iter().sum();
            if e1 < hypcone::Rational::zero() || !ctx.in_cone(&x, ConeMode::Closed).unwrap() {
                continue;
            }
            hits += 1;
            assert!(is_psd(&a.eval(&x).unwrap()), "n={n} x={x:?}");
        }
        assert!(is_pd(&a.eval(&Point::ones(n)).unwrap()));
    }
}

#[test]
fn gurvits_rank_on_positive_products_is_a_polymatroid() {
    let mut r = rng(31);
    for _ in 0..25 {
        let n = r.gen_range(1..=5);
        let d = r.gen_range(1..=5);
        // nonnegative coefficients keep the orthant inside the cone
        let forms: Vec<LinearForm> = (0..d)
            .map(|_| loop {
                let c: Vec<_> = (0..n).map(|_| z(r.gen_range(0..=2))).collect();
                if c.iter().any(|v| !v.is_zero()) {
                    break LinearForm::new(c);
                }
            })
            .collect();
        let ctx =
            HyperbolicContext::new(product_of_forms(&forms).unwrap(), Point::ones(n)).unwrap();
        let rk = gurvits_rank(&ctx).unwrap();
        assert!(is_polymatroid(&rk).polymatroid);
        assert_eq!(rk, gurvits_rank_via_eigenvalues(&ctx).unwrap());
        // rk(I) counts forms not vanishing on χ_I
        for mask in 0..1u32 << n {
            let chi = Point::indicator(n, mask);
            let live = forms
                .iter()
                .filter(|f| !f.eval(&chi).unwrap().is_zero())
                .count();
            assert_eq!(rk.rank(mask) as usize, live);
        }
    }
}

#[test]
fn realization_rank_matches_gurvits_rank() {
    let mut r = rng(32);
    let mut checked = 0;
    while checked < 25 {
        let k = r.gen_range(1..=4);
        let n = r.gen_range(k..=6);
        let rows: Vec<Vec<_>> = (0..k)
            .map(|_| (0..n).map(|_| z(r.gen_range(-2..=2))).collect())
            .collect();
        let l = RealizationMatrix::new(RationalMatrix::from_rows(rows).unwrap());
        if l.matrix().rank() < k {
            continue;
        }
        let rp = realization_pencil(&l).unwrap();
        if !is_pd(&rp.pencil.eval(&Point::ones(n)).unwrap()) {
            continue;
        }
        let ctx = HyperbolicContext::new(rp.pencil.determinant().unwrap(), Point::ones(n)).unwrap();
        let columns = column_matroid(&l).unwrap();
        assert!(is_polymatroid(&columns).matroid);
        assert_eq!(gurvits_rank(&ctx).unwrap(), columns);
        checked += 1;
    }
}

#[test]
fn elementary_symmetric_polymatroids_are_uniform() {
    for n in 0..=6usize {
        for k in 0..=n {
            let ctx = HyperbolicContext::new(elementary_symmetric(n, k).unwrap(), Point::ones(n))
                .unwrap();
            let rk = gurvits_rank(&ctx).unwrap();
            assert!(
                equals_uniform(&rk, UniformSpec::new(k, n).unwrap()).unwrap(),
                "k={k} n={n}"
            );
        }
    }
}

#[test]
fn random_rational_helper_stays_on_grid() {
    let mut r = rng(0);
    for _ in 0..50 {
        let v = random_rational(&mut r, 5, 4);
        assert!((v.clone() * z(4)).is_integer());
        assert!(v.numer().magnitude() <= &5u32.into());
    }
}
