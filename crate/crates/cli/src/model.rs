//! Model files: JSON documents tagged by `kind`, with rationals written as
//! `"num/den"` or integer strings.
//!
//! ```json
//! {"kind": "polynomial", "nvars": 2, "variables": ["x", "y"],
//!  "terms": [{"exponents": [1, 1], "coeff": "1/2"}]}
//! {"kind": "forms", "nvars": 2, "forms": [["1", "-1"], ["0", "1"]]}
//! {"kind": "pencil", "nvars": 1, "size": 2, "mats": [["1", "0", "0", "1"]]}
//! {"kind": "realization", "rows": 1, "cols": 2, "entries": [["1", "1"]]}
//! {"kind": "rank", "n": 1, "ranks": [0, 1]}
//! {"kind": "point", "coords": ["1", "-1/2"]}
//! ```

use std::path::Path;

use hypcone::{
    format_rational, parse_rational, LinearForm, Point, Polynomial, RankFunction, Rational,
    RationalMatrix, RealizationMatrix, SymmetricMatrix, SymmetricPencil,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed model: {0}")]
    Syntax(String),
    #[error("invalid model at {location}: {message}")]
    Invariant { location: String, message: String },
}

fn invariant(location: impl Into<String>, message: impl ToString) -> ModelError {
    ModelError::Invariant {
        location: location.into(),
        message: message.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct RawTerm {
    exponents: Vec<u32>,
    coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawModel {
    Polynomial {
        nvars: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        variables: Option<Vec<String>>,
        terms: Vec<RawTerm>,
    },
    Forms {
        nvars: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        variables: Option<Vec<String>>,
        forms: Vec<Vec<String>>,
    },
    Pencil {
        nvars: usize,
        size: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        variables: Option<Vec<String>>,
        mats: Vec<Vec<String>>,
    },
    Realization {
        rows: usize,
        cols: usize,
        entries: Vec<Vec<String>>,
    },
    Rank {
        n: usize,
        ranks: Vec<u32>,
    },
    Point {
        coords: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Polynomial(Polynomial),
    Forms {
        nvars: usize,
        forms: Vec<LinearForm>,
    },
    Pencil(SymmetricPencil),
    Realization(RealizationMatrix),
    Rank(RankFunction),
    Point(Point),
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::Polynomial(_) => "polynomial",
            Model::Forms { .. } => "forms",
            Model::Pencil(_) => "pencil",
            Model::Realization(_) => "realization",
            Model::Rank(_) => "rank",
            Model::Point(_) => "point",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelFile {
    pub model: Model,
    pub variables: Option<Vec<String>>,
}

fn rational_at(s: &str, location: impl Fn() -> String) -> Result<Rational, ModelError> {
    parse_rational(s).map_err(|e| invariant(location(), e))
}

fn check_variables(variables: &Option<Vec<String>>, nvars: usize) -> Result<(), ModelError> {
    if nvars == 0 {
        return Err(invariant("nvars", "must be positive"));
    }
    match variables {
        Some(v) if v.len() != nvars => Err(invariant(
            "variables",
            format!("{} names given for {nvars} variables", v.len()),
        )),
        _ => Ok(()),
    }
}

impl ModelFile {
    pub fn parse_str(text: &str) -> Result<Self, ModelError> {
        let raw: RawModel =
            serde_json::from_str(text).map_err(|e| ModelError::Syntax(e.to_string()))?;
        Self::from_raw(raw)
    }

    pub fn parse_path(path: &Path) -> Result<Self, ModelError> {
        let text = std::fs::read_to_string(path).map_err(|e| ModelError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse_str(&text)
    }

    fn from_raw(raw: RawModel) -> Result<Self, ModelError> {
        match raw {
            RawModel::Polynomial {
                nvars,
                variables,
                terms,
            } => {
                check_variables(&variables, nvars)?;
                let mut parsed = Vec::with_capacity(terms.len());
                for (i, t) in terms.into_iter().enumerate() {
                    if t.exponents.len() != nvars {
                        return Err(invariant(
                            format!("terms[{i}].exponents"),
                            format!("has length {}, expected {nvars}", t.exponents.len()),
                        ));
                    }
                    let c = rational_at(&t.coeff, || format!("terms[{i}].coeff"))?;
                    parsed.push((t.exponents, c));
                }
                let p = Polynomial::from_terms(nvars, parsed).map_err(|e| invariant("terms", e))?;
                Ok(Self {
                    model: Model::Polynomial(p),
                    variables,
                })
            }
            RawModel::Forms {
                nvars,
                variables,
                forms,
            } => {
                check_variables(&variables, nvars)?;
                if forms.is_empty() {
                    return Err(invariant("forms", "at least one form is required"));
                }
                let forms = forms
                    .iter()
                    .enumerate()
                    .map(|(i, f)| {
                        if f.len() != nvars {
                            return Err(invariant(
                                format!("forms[{i}]"),
                                format!("has {} coefficients, expected {nvars}", f.len()),
                            ));
                        }
                        let coeffs = f
                            .iter()
                            .enumerate()
                            .map(|(j, c)| rational_at(c, || format!("forms[{i}][{j}]")))
                            .collect::<Result<Vec<_>, _>>()?;
                        Ok(LinearForm::new(coeffs))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Self {
                    model: Model::Forms { nvars, forms },
                    variables,
                })
            }
            RawModel::Pencil {
                nvars,
                size,
                variables,
                mats,
            } => {
                check_variables(&variables, nvars)?;
                if mats.len() != nvars {
                    return Err(invariant(
                        "mats",
                        format!("{} matrices given for {nvars} variables", mats.len()),
                    ));
                }
                let mut parsed = Vec::with_capacity(nvars);
                for (v, flat) in mats.iter().enumerate() {
                    if flat.len() != size * size {
                        return Err(invariant(
                            format!("mats[{v}]"),
                            format!("has {} entries, expected {}", flat.len(), size * size),
                        ));
                    }
                    let entries = flat
                        .iter()
                        .enumerate()
                        .map(|(k, c)| rational_at(c, || format!("mats[{v}][{k}]")))
                        .collect::<Result<Vec<_>, _>>()?;
                    let rows: Vec<Vec<Rational>> = entries
                        .chunks(size.max(1))
                        .map(<[Rational]>::to_vec)
                        .collect();
                    let m = if size == 0 {
                        RationalMatrix::zeros(0, 0)
                    } else {
                        RationalMatrix::from_rows(rows)
                            .map_err(|e| invariant(format!("mats[{v}]"), e))?
                    };
                    parsed.push(
                        SymmetricMatrix::new(m).map_err(|e| invariant(format!("mats[{v}]"), e))?,
                    );
                }
                let pencil =
                    SymmetricPencil::new(nvars, size, parsed).map_err(|e| invariant("mats", e))?;
                Ok(Self {
                    model: Model::Pencil(pencil),
                    variables,
                })
            }
            RawModel::Realization {
                rows,
                cols,
                entries,
            } => {
                if entries.len() != rows {
                    return Err(invariant(
                        "entries",
                        format!("{} rows given, expected {rows}", entries.len()),
                    ));
                }
                let mut m = RationalMatrix::zeros(rows, cols);
                for (i, row) in entries.iter().enumerate() {
                    if row.len() != cols {
                        return Err(invariant(
                            format!("entries[{i}]"),
                            format!("has {} entries, expected {cols}", row.len()),
                        ));
                    }
                    for (j, c) in row.iter().enumerate() {
                        m.set(i, j, rational_at(c, || format!("entries[{i}][{j}]"))?);
                    }
                }
                Ok(Self {
                    model: Model::Realization(RealizationMatrix::new(m)),
                    variables: None,
                })
            }
            RawModel::Rank { n, ranks } => {
                let rk = RankFunction::new(n, ranks).map_err(|e| invariant("ranks", e))?;
                Ok(Self {
                    model: Model::Rank(rk),
                    variables: None,
                })
            }
            RawModel::Point { coords } => {
                let coords = coords
                    .iter()
                    .enumerate()
                    .map(|(i, c)| rational_at(c, || format!("coords[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Self {
                    model: Model::Point(Point::new(coords)),
                    variables: None,
                })
            }
        }
    }

    fn to_raw(&self) -> RawModel {
        let strings = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
        let variables = self.variables.clone();
        match &self.model {
            Model::Polynomial(p) => RawModel::Polynomial {
                nvars: p.nvars(),
                variables,
                terms: p
                    .terms()
                    .map(|(e, c)| RawTerm {
                        exponents: e.to_vec(),
                        coeff: format_rational(c),
                    })
                    .collect(),
            },
            Model::Forms { nvars, forms } => RawModel::Forms {
                nvars: *nvars,
                variables,
                forms: forms.iter().map(|f| strings(f.coeffs())).collect(),
            },
            Model::Pencil(p) => RawModel::Pencil {
                nvars: p.nvars(),
                size: p.size(),
                variables,
                mats: p
                    .mats()
                    .iter()
                    .map(|m| strings(&m.matrix().to_rows().concat()))
                    .collect(),
            },
            Model::Realization(l) => RawModel::Realization {
                rows: l.rows(),
                cols: l.cols(),
                entries: l.matrix().to_rows().iter().map(|r| strings(r)).collect(),
            },
            Model::Rank(rk) => RawModel::Rank {
                n: rk.n(),
                ranks: rk.ranks().to_vec(),
            },
            Model::Point(p) => RawModel::Point {
                coords: strings(p.coords()),
            },
        }
    }

    /// Canonical JSON text; parses back to an equal model.
    pub fn serialize(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("model serializes")
    }
}

/// A point given inline (`"(1,-2,1/3)"`, `"1,-2,1/3"`, `"[1,2]"`) or as a
/// path to a `point` model file.
pub fn parse_point_arg(arg: &str) -> Result<Point, ModelError> {
    let path = Path::new(arg);
    if path.is_file() {
        return match ModelFile::parse_path(path)?.model {
            Model::Point(p) => Ok(p),
            other => Err(ModelError::Syntax(format!(
                "{arg}: expected a point model, found {}",
                other.kind()
            ))),
        };
    }
    let body = arg
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']']);
    if body.trim().is_empty() {
        return Err(ModelError::Syntax(format!("empty point {arg:?}")));
    }
    let coords = body
        .split(',')
        .enumerate()
        .map(|(i, c)| {
            parse_rational(c.trim().trim_matches('"'))
                .map_err(|e| invariant(format!("point[{i}]"), e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Point::new(coords))
}
