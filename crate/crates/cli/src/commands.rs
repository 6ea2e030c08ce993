use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use hypcone::matroid::{gurvits_rank_with, search_unimodular_with, GurvitsOptions, SearchOptions};
use hypcone::spectra::e2_report;
use hypcone::{
    check_hyperbolic, check_hyperbolic_par, is_polymatroid, product_of_forms, realization_pencil,
    verify_theorem1, ConeMode, HyperbolicContext, HyperbolicityStatus, Point, Polynomial,
    RankFunction, UniformSpec,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::model::{parse_point_arg, Model, ModelError, ModelFile};
use crate::report;

#[derive(Debug, Parser)]
#[command(
    name = "hypcone",
    version,
    about = "Exact computations on hyperbolic polynomials and their cones"
)]
pub struct Cli {
    /// Worker threads; values above 1 switch to the parallel search paths.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// i-th polar of a polynomial in direction e
    Polar {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
        #[arg(short = 'i', long = "order")]
        order: usize,
    },
    /// Sampled real-rootedness test of p along e
    HypCheck {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Membership of a point in the hyperbolicity cone or a derivative cone
    Member {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        derivative: Option<usize>,
        /// Test the open cone instead of its closure
        #[arg(long)]
        open: bool,
    },
    /// Symmetric pencil for the first derivative cone of a product of forms
    Renegar {
        #[arg(long)]
        forms: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
        /// Also compare the determinant with the polar
        #[arg(long)]
        verify: bool,
    },
    /// Pencil Σ xᵢ LᵢLᵢᵀ of a realization matrix and its basis polynomial
    Binet {
        #[arg(long)]
        realization: PathBuf,
    },
    /// Polymatroid check of a rank function, given directly or via a hyperbolic polynomial
    Polymatroid {
        #[arg(long = "in", conflicts_with = "rank", requires = "dir")]
        input: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        dir: Option<String>,
        #[arg(long, required_unless_present = "input")]
        rank: Option<PathBuf>,
        /// Check every indicator vector, not only the basis vectors
        #[arg(long)]
        full_orthant: bool,
    },
    /// Search for a unimodular realization of the uniform matroid U(k, n)
    UniformSearch {
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'n')]
        n: usize,
        /// Enumerate even when a closed form is known
        #[arg(long)]
        no_closed_form: bool,
    },
    /// Determinantal representation of the degree-two elementary symmetric polynomial
    E2Rep {
        #[arg(short = 'n')]
        n: usize,
        /// Use the n×n arrowhead matrix instead of the bordered one
        #[arg(long)]
        literal_paper_matrix: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Model(_) | CliError::Input(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Model(_) | CliError::Input(_) => "input",
            CliError::Precondition(_) => "precondition",
        }
    }
}

impl From<hypcone::Error> for CliError {
    fn from(e: hypcone::Error) -> Self {
        use hypcone::Error as E;
        match e {
            E::NvarsMismatch { .. }
            | E::Dimension(_)
            | E::ParseRational(_)
            | E::NotSymmetric { .. } => CliError::Input(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

/// A finished command: `verdict` picks exit status 0 or 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub verdict: bool,
    pub report: Value,
}

struct Loaded {
    poly: Polynomial,
    names: Option<Vec<String>>,
    source: Value,
}

/// Any model that defines a polynomial: explicit terms, a product of forms or
/// the determinant of a pencil.
fn load_polynomial(path: &Path) -> Result<Loaded, CliError> {
    let file = ModelFile::parse_path(path)?;
    let names = file.variables.clone();
    let (poly, source) = match file.model {
        Model::Polynomial(p) => (p, json!("polynomial")),
        Model::Forms { forms, .. } => (product_of_forms(&forms)?, json!("forms")),
        Model::Pencil(p) => (p.determinant()?, json!("pencil")),
        other => {
            return Err(CliError::Input(format!(
                "{}: a {} model does not define a polynomial",
                path.display(),
                other.kind()
            )))
        }
    };
    Ok(Loaded {
        poly,
        names,
        source,
    })
}

fn load_point(arg: &str, nvars: usize, what: &str) -> Result<Point, CliError> {
    let p = parse_point_arg(arg)?;
    if p.len() != nvars {
        return Err(CliError::Input(format!(
            "{what} has {} coordinates, the polynomial has {nvars} variables",
            p.len()
        )));
    }
    Ok(p)
}

fn input_block(l: &Loaded) -> Value {
    json!({
        "source": l.source,
        "polynomial": report::polynomial(&l.poly, l.names.as_deref()),
        "variables": l.names,
    })
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let parallel = cli.jobs.is_some_and(|j| j > 1);
    match &cli.command {
        Command::Polar { input, dir, order } => {
            let l = load_polynomial(input)?;
            let e = load_point(dir, l.poly.nvars(), "direction")?;
            let polar = l.poly.polar(&e, *order)?;
            Ok(Outcome {
                verdict: true,
                report: json!({
                    "command": "polar",
                    "input": input_block(&l),
                    "direction": report::point(&e),
                    "order": order,
                    "polar": report::polynomial(&polar, l.names.as_deref()),
                }),
            })
        }
        Command::HypCheck {
            input,
            dir,
            samples,
            seed,
        } => {
            let l = load_polynomial(input)?;
            let e = load_point(dir, l.poly.nvars(), "direction")?;
            let verdict = if parallel {
                check_hyperbolic_par(&l.poly, &e, *samples, *seed)?
            } else {
                check_hyperbolic(&l.poly, &e, *samples, *seed)?
            };
            let (witness, restriction) = match &verdict.status {
                HyperbolicityStatus::Hyperbolic { .. } => (Value::Null, Value::Null),
                HyperbolicityStatus::NotHyperbolic { witness, index } => (
                    json!({"index": index, "point": report::point(witness)}),
                    report::univariate(&l.poly.restrict_to_line(witness, &e)?),
                ),
            };
            Ok(Outcome {
                verdict: verdict.is_hyperbolic(),
                report: json!({
                    "command": "hyp-check",
                    "input": input_block(&l),
                    "direction": report::point(&e),
                    "samples": samples,
                    "seed": verdict.seed,
                    "hyperbolic": verdict.is_hyperbolic(),
                    "witness": witness,
                    "restriction": restriction,
                }),
            })
        }
        Command::Member {
            input,
            dir,
            point,
            derivative,
            open,
        } => {
            let l = load_polynomial(input)?;
            let e = load_point(dir, l.poly.nvars(), "direction")?;
            let x = load_point(point, l.poly.nvars(), "point")?;
            let base = HyperbolicContext::new(l.poly.clone(), e.clone())?;
            let order = derivative.unwrap_or(0);
            let ctx = base.derivative(order)?;
            let mode = if *open {
                ConeMode::Open
            } else {
                ConeMode::Closed
            };
            let eig = ctx.eigenvalue_poly(&x)?;
            let member = ctx.in_cone(&x, mode)?;
            Ok(Outcome {
                verdict: member,
                report: json!({
                    "command": "member",
                    "input": input_block(&l),
                    "direction": report::point(&e),
                    "point": report::point(&x),
                    "derivative": order,
                    "mode": if *open { "open" } else { "closed" },
                    "eigenvalue_polynomial": report::univariate(&eig),
                    "member": member,
                }),
            })
        }
        Command::Renegar { forms, dir, verify } => {
            let file = ModelFile::parse_path(forms)?;
            let Model::Forms { nvars, forms: fs } = &file.model else {
                return Err(CliError::Input(format!(
                    "{}: expected a forms model",
                    forms.display()
                )));
            };
            let e = load_point(dir, *nvars, "direction")?;
            let r = verify_theorem1(fs, &e)?;
            let names = file.variables.as_deref();
            let mut out = json!({
                "command": "renegar",
                "forms": report::forms(fs),
                "variables": file.variables,
                "direction": report::point(&e),
                "normalized_forms": report::forms(&r.normalized_forms),
                "pencil": report::pencil(&r.pencil),
                "det": report::polynomial(&r.lhs, names),
            });
            let verdict = if *verify {
                out["polar"] = report::polynomial(&r.rhs, names);
                out["equal"] = json!(r.equal);
                r.equal
            } else {
                true
            };
            Ok(Outcome {
                verdict,
                report: out,
            })
        }
        Command::Binet { realization } => {
            let file = ModelFile::parse_path(realization)?;
            let Model::Realization(l) = &file.model else {
                return Err(CliError::Input(format!(
                    "{}: expected a realization model",
                    realization.display()
                )));
            };
            let rp = realization_pencil(l)?;
            let det = rp.pencil.determinant_with_limit(usize::MAX)?;
            let minors: Vec<Value> = l
                .maximal_minors()
                .iter()
                .map(|(cols, m)| json!({"columns": cols, "minor": report::rational(m)}))
                .collect();
            let equal = det == rp.bases;
            Ok(Outcome {
                verdict: equal,
                report: json!({
                    "command": "binet",
                    "realization": report::matrix(l.matrix()),
                    "pencil": report::pencil(&rp.pencil),
                    "det": report::polynomial(&det, None),
                    "bases": report::polynomial(&rp.bases, None),
                    "maximal_minors": minors,
                    "equal": equal,
                }),
            })
        }
        Command::Polymatroid {
            input,
            dir,
            rank,
            full_orthant,
        } => {
            let (rk, source) = match (input, rank) {
                (Some(input), _) => {
                    let l = load_polynomial(input)?;
                    let dir = dir
                        .as_deref()
                        .ok_or_else(|| CliError::Input("--in requires --dir".into()))?;
                    let e = load_point(dir, l.poly.nvars(), "direction")?;
                    let block = json!({"input": input_block(&l), "direction": report::point(&e)});
                    let ctx = HyperbolicContext::new(l.poly, e)?;
                    let opts = GurvitsOptions {
                        full_orthant_check: *full_orthant,
                        ..GurvitsOptions::default()
                    };
                    (gurvits_rank_with(&ctx, opts)?, block)
                }
                (None, Some(rank)) => match ModelFile::parse_path(rank)?.model {
                    Model::Rank(rk) => (rk, json!({"input": "rank"})),
                    other => {
                        return Err(CliError::Input(format!(
                            "{}: expected a rank model, found {}",
                            rank.display(),
                            other.kind()
                        )))
                    }
                },
                (None, None) => {
                    return Err(CliError::Input("one of --in or --rank is required".into()))
                }
            };
            Ok(polymatroid_outcome(&rk, source))
        }
        Command::UniformSearch {
            k,
            n,
            no_closed_form,
        } => {
            let spec = UniformSpec::new(*k, *n)?;
            let opts = SearchOptions {
                closed_form: !no_closed_form,
                parallel,
                ..SearchOptions::default()
            };
            let out = search_unimodular_with(spec, opts)?;
            Ok(Outcome {
                verdict: out.witness.is_some(),
                report: json!({
                    "command": "uniform-search",
                    "k": k,
                    "n": n,
                    "found": out.witness.is_some(),
                    "searched": out.searched,
                    "closed_form": out.closed_form,
                    "witness": out.witness.as_ref().map(|w| report::matrix(w.matrix())),
                }),
            })
        }
        Command::E2Rep {
            n,
            literal_paper_matrix,
        } => {
            if *n < 2 {
                return Err(CliError::Precondition(format!(
                    "n must be at least 2, got {n}"
                )));
            }
            let r = e2_report(*n, *literal_paper_matrix)?;
            Ok(Outcome {
                verdict: r.identity_holds,
                report: json!({
                    "command": "e2-rep",
                    "n": r.n,
                    "literal": r.literal,
                    "pencil": report::pencil(&r.pencil),
                    "det": report::polynomial(&r.det, None),
                    "target": report::polynomial(&r.target, None),
                    "identity_holds": r.identity_holds,
                    "difference": report::polynomial(&r.difference, None),
                    "expected_difference": report::polynomial(&r.expected_difference, None),
                    "difference_as_expected": r.difference_as_expected(),
                    "strictly_pd_at_ones": r.strictly_pd_at_ones,
                }),
            })
        }
    }
}

fn polymatroid_outcome(rk: &RankFunction, mut source: Value) -> Outcome {
    let r = is_polymatroid(rk);
    let violation = r
        .violation
        .map(|(i, j)| json!({"i": report::subset(i), "j": report::subset(j)}));
    let matroid_violation = r.matroid_violation.map(report::subset);
    source["command"] = json!("polymatroid");
    source["rank_function"] = report::rank_function(rk);
    source["polymatroid"] = json!(r.polymatroid);
    source["matroid"] = json!(r.matroid);
    source["violation"] = json!(violation);
    source["matroid_violation"] = json!(matroid_violation);
    Outcome {
        verdict: r.polymatroid,
        report: source,
    }
}
