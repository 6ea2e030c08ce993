//! Exact arithmetic for hyperbolic polynomials and their derivative cones.
//!
//! Everything here works over the rationals. Hyperbolicity cones are never
//! represented geometrically; they are accessed through exact membership
//! predicates built on Sturm sequences.
//!
//! Module map:
//!
//! - [`poly`]: sparse multivariate polynomials, polars, line restrictions,
//!   elementary symmetric polynomials and products of linear forms.
//! - [`univariate`] and [`realroots`]: univariate polynomials, Sturm chains,
//!   real-rootedness and root-sign certificates.
//! - [`hyperbolicity`]: hyperbolic contexts, eigenvalue polynomials and cone
//!   membership.
//! - [`spectra`]: symmetric linear pencils, symbolic determinants, exact PSD
//!   tests, the first-derivative-cone pencil of a polyhedral cone, Cauchy–Binet
//!   pencils and the `E₂` arrowhead.
//! - [`matroid`]: polymatroids from hyperbolic polynomials, axiom checks and the
//!   unimodular realization search for uniform matroids.

pub mod error;
pub mod hyperbolicity;
pub mod linalg;
pub mod matroid;
pub mod poly;
pub mod rational;
pub mod realroots;
pub mod spectra;
pub mod subsets;
pub mod univariate;

pub use error::{Error, Result};
pub use hyperbolicity::{
    check_hyperbolic, check_hyperbolic_par, ConeMode, HyperbolicContext, HyperbolicityStatus,
    HyperbolicityVerdict,
};
pub use linalg::RationalMatrix;
pub use matroid::{
    gurvits_rank, is_polymatroid, is_unimodular_realization, search_unimodular, PolymatroidReport,
    RankFunction, SearchOutcome, UniformSpec,
};
pub use poly::{elementary_symmetric, product_of_forms, LinearForm, Point, Polynomial};
pub use rational::{format_rational, parse_rational, Rational};
pub use realroots::{
    all_roots_nonneg, is_real_rooted, mult_at_zero, sturm_count, Bound, SturmChain,
};
pub use spectra::{
    e2_arrowhead, e2_arrowhead_literal, is_pd, is_psd, realization_pencil, renegar_pencil,
    verify_theorem1, RealizationMatrix, SymmetricMatrix, SymmetricPencil,
};
pub use univariate::UnivariatePolynomial;
