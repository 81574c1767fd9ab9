//! JSON encodings of algebra values.

use cliffrep::{CliffordMatrix, Complex, ComplexMatrix, Multivector, Polynomial, RepMatrix};
use serde_json::{json, Map, Number, Value as Json};

/// Integral values print without a fractional part; everything else keeps
/// the shortest representation that round-trips.
pub fn number(x: f64) -> Json {
    if x.is_finite() && x.fract() == 0.0 && x.abs() < 9.007_199_254_740_992e15 {
        Json::from(x as i64)
    } else {
        Number::from_f64(x).map(Json::Number).unwrap_or(Json::Null)
    }
}

pub fn complex(c: Complex) -> Json {
    json!({"re": number(c.re), "im": number(c.im)})
}

/// Nonzero coefficients keyed by blade name, in blade-mask order.
pub fn coeffs(m: &Multivector) -> Json {
    let mut map = Map::new();
    for (b, c) in m.terms() {
        map.insert(b.name(), complex(c));
    }
    Json::Object(map)
}

pub fn multivector(m: &Multivector) -> Json {
    json!({"n": m.n(), "coeffs": coeffs(m)})
}

pub fn matrix(m: &ComplexMatrix) -> Json {
    Json::Array(
        m.to_rows()
            .into_iter()
            .map(|row| Json::Array(row.into_iter().map(complex).collect()))
            .collect(),
    )
}

pub fn rep(r: &RepMatrix) -> Json {
    match r {
        RepMatrix::Even(m) => json!({"parity": "even", "matrix": matrix(m)}),
        RepMatrix::Odd { plus, minus } => json!({"parity": "odd", "plus": matrix(plus), "minus": matrix(minus)}),
    }
}

pub fn cmatrix(a: &CliffordMatrix) -> Json {
    let entries: Vec<Json> = (0..a.rows())
        .map(|i| Json::Array((0..a.cols()).map(|j| coeffs(a.get(i, j))).collect()))
        .collect();
    json!({"n": a.signature().n(), "rows": a.rows(), "cols": a.cols(), "entries": entries})
}

/// Ascending coefficients `c0 + c1 x + ...`.
pub fn polynomial(p: &Polynomial) -> Json {
    json!({"degree": p.degree(), "coeffs": p.coeffs().iter().map(|&c| complex(c)).collect::<Vec<_>>()})
}

pub fn report(pass: bool, max_residual: f64, details: Vec<Json>) -> Json {
    json!({"pass": pass, "max_residual": number(max_residual), "details": details})
}
