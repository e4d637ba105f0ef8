//! Sylvester resultants, discriminants and the quasi-ordinary test.

use crate::error::{Error, Result};
use crate::expvec::ExpVec;
use crate::field::{AlgNum, Tower};
use crate::polytope::polytope_of_series;
use crate::series::FracSeries;
use crate::ypoly::YPoly;

/// `Res_Y(f, g)` of exactly given polynomials.
pub fn resultant(f: &YPoly, g: &YPoly, t: &Tower) -> Result<FracSeries> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput("resultant of the zero polynomial"));
    }
    if !f.is_exact() || !g.is_exact() {
        return Err(Error::TruncatedInput("resultant"));
    }
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch(f.dim(), g.dim()));
    }
    sylvester_det(f, g, t)
}

/// Resultant of truncated polynomials: the determinant of the known parts,
/// tagged with the smallest input precision. The Sylvester determinant is
/// multilinear in entries of non-negative order, so an error of order `>= N`
/// in any coefficient moves the result only at orders `>= N`.
pub fn resultant_to_precision(f: &YPoly, g: &YPoly, t: &Tower) -> Result<FracSeries> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput("resultant of the zero polynomial"));
    }
    let prec = f.precision().min(g.precision());
    let fe = f.map_coeffs(|c| Ok(c.clone().into_exact()))?;
    let ge = g.map_coeffs(|c| Ok(c.clone().into_exact()))?;
    if fe.degree() != f.degree() || ge.degree() != g.degree() {
        return Err(Error::PrecisionExhausted("leading coefficient unknown".into()));
    }
    Ok(sylvester_det(&fe, &ge, t)?.with_precision(prec))
}

fn sylvester_det(f: &YPoly, g: &YPoly, t: &Tower) -> Result<FracSeries> {
    if let Some(r) = crate::zpoly::resultant_fast(f, g) {
        return Ok(r);
    }
    sylvester_generic(f, g, t)
}

pub(crate) fn sylvester_generic(f: &YPoly, g: &YPoly, t: &Tower) -> Result<FracSeries> {
    let d = f.dim();
    let n = f.degree().unwrap();
    let m = g.degree().unwrap();
    let size = n + m;
    if size == 0 {
        return Ok(FracSeries::one(d));
    }
    let mut mat = vec![vec![FracSeries::zero(d); size]; size];
    for i in 0..m {
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..n {
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            mat[m + i][i + j] = c.clone();
        }
    }
    bareiss(mat, t)
}

/// Fraction-free Gaussian elimination; every division is exact.
fn bareiss(mut a: Vec<Vec<FracSeries>>, t: &Tower) -> Result<FracSeries> {
    let n = a.len();
    let d = a[0][0].dim();
    let mut negate = false;
    let mut prev = FracSeries::one(d);
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(FracSeries::zero(d));
            };
            a.swap(k, p);
            negate = !negate;
        }
        if k + 1 == n {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = a[i][j].mul(&a[k][k], t)?;
                let num = if a[i][k].is_zero() || a[k][j].is_zero() {
                    lhs
                } else {
                    lhs.sub(&a[i][k].mul(&a[k][j], t)?)?
                };
                a[i][j] = if k == 0 { num } else { num.exact_div(&prev, t)? };
            }
            a[i][k] = FracSeries::zero(d);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// `Disc(f) = (-1)^{n(n-1)/2} Res(f, f')` for monic `f`.
pub fn discriminant(f: &YPoly, t: &Tower) -> Result<FracSeries> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree().unwrap();
    if n == 0 {
        return Err(Error::ZeroInput("discriminant of a constant"));
    }
    if n == 1 {
        return Ok(FracSeries::one(f.dim()));
    }
    let r = resultant(f, &f.derivative(), t)?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { r.neg() } else { r })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QoCertificate {
    pub is_qo: bool,
    pub q: Option<ExpVec>,
    pub unit_constant: Option<AlgNum>,
    pub discriminant: FracSeries,
}

/// Is the discriminant a monomial times a unit?
pub fn quasi_ordinary_test(f: &YPoly, t: &Tower) -> Result<QoCertificate> {
    let disc = discriminant(f, t)?;
    let not_qo = |disc: FracSeries| QoCertificate {
        is_qo: false,
        q: None,
        unit_constant: None,
        discriminant: disc,
    };
    if disc.is_zero() {
        return Ok(not_qo(disc));
    }
    let poly = polytope_of_series(&disc)?;
    if !poly.is_vertex() {
        return Ok(not_qo(disc));
    }
    let q = poly.vertices()[0].clone();
    let u0 = disc.coeff(&q);
    Ok(QoCertificate {
        is_qo: true,
        q: Some(q),
        unit_constant: Some(u0),
        discriminant: disc,
    })
}
