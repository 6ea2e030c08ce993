//! JSON encodings of library values. Objects are `serde_json::Map`, which
//! keeps keys sorted, so reports are byte-for-byte deterministic.

use hypcone::{
    format_rational, LinearForm, Point, Polynomial, RankFunction, Rational, RationalMatrix,
    SymmetricPencil, UnivariatePolynomial,
};
use serde_json::{json, Value};

pub fn rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn point(p: &Point) -> Value {
    rationals(p.coords())
}

pub fn forms(fs: &[LinearForm]) -> Value {
    Value::Array(fs.iter().map(|f| rationals(f.coeffs())).collect())
}

pub fn polynomial(p: &Polynomial, names: Option<&[String]>) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(e, c)| json!({"exponents": e, "coeff": format_rational(c)}))
        .collect();
    json!({
        "nvars": p.nvars(),
        "terms": terms,
        "text": p.to_string_with(names),
    })
}

/// Coefficients in increasing degree.
pub fn univariate(u: &UnivariatePolynomial) -> Value {
    json!({"coeffs": rationals(u.coeffs()), "text": u.to_string()})
}

pub fn matrix(m: &RationalMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| rationals(r)).collect())
}

pub fn pencil(p: &SymmetricPencil) -> Value {
    json!({
        "nvars": p.nvars(),
        "size": p.size(),
        "mats": p.mats().iter().map(|m| matrix(m.matrix())).collect::<Vec<_>>(),
    })
}

/// Subset as sorted element indices.
pub fn subset(mask: u32) -> Value {
    Value::Array(
        (0..32)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| json!(i))
            .collect(),
    )
}

pub fn rank_function(rk: &RankFunction) -> Value {
    json!({"n": rk.n(), "ranks": rk.ranks()})
}
