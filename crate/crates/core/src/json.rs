//! JSON renderings. Exponents are `"p/q"` strings; algebraic coefficients
//! are coordinate arrays over the tower level they live in.

use serde_json::{json, Value};

use crate::expvec::{fmt_rat, ExpVec};
use crate::field::{AlgNum, Tower};
use crate::polytope::Polytope;
use crate::series::{FracSeries, Precision};
use crate::ypoly::YPoly;

fn big(q: &num_rational::BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn exp(e: &ExpVec) -> Value {
    json!(e.to_strings())
}

pub fn exps(es: &[ExpVec]) -> Value {
    Value::Array(es.iter().map(exp).collect())
}

pub fn algnum(a: &AlgNum, t: &Tower) -> Value {
    match a.as_rational() {
        Some(q) => json!(big(q)),
        None => {
            let level = a.level();
            let coords: Vec<String> = t.coords(a, level).iter().map(big).collect();
            json!({ "level": level, "coords": coords })
        }
    }
}

pub fn precision(p: Precision) -> Value {
    match p {
        Precision::Exact => json!("exact"),
        Precision::Truncated(n) => json!(fmt_rat(&n)),
    }
}

pub fn series(s: &FracSeries, t: &Tower) -> Value {
    let terms: Vec<Value> = s
        .terms()
        .map(|(e, c)| json!({ "exp": exp(e), "coeff": algnum(c, t) }))
        .collect();
    json!({ "text": s.to_text(), "precision": precision(s.precision()), "terms": terms })
}

pub fn ypoly(p: &YPoly) -> Value {
    json!({ "text": p.to_text(), "degree": p.degree() })
}

pub fn polytope(p: &Polytope) -> Value {
    exps(p.vertices())
}

/// Minimal polynomials of the tower levels, each over the level below.
pub fn tower(t: &Tower) -> Value {
    let levels: Vec<Value> = (1..=t.top())
        .map(|i| {
            let mp: Vec<Value> = t.level(i).minpoly().iter().map(|c| algnum(c, t)).collect();
            json!({ "level": i, "minpoly": mp })
        })
        .collect();
    Value::Array(levels)
}
