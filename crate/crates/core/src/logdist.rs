//! Logarithmic distance: the Newton polytope of `Res(f, g)` scaled by
//! `1/(deg f deg g)`, ordered by reverse inclusion.

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::expvec::ExpVec;
use crate::field::Tower;
use crate::polytope::{polytope_leq, polytope_of_series, Polytope};
use crate::qo::{factor_qo, RootSet};
use crate::resultant::resultant;
use crate::series::FracSeries;
use crate::ypoly::YPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogDistance {
    pub polytope: Polytope,
    pub scale: Rational64,
    pub deg_f: usize,
    pub deg_g: usize,
    pub resultant: FracSeries,
}

impl LogDistance {
    /// `cont_w = l(w, cont_A)`.
    pub fn weighted(&self, omega: &ExpVec) -> Result<Rational64> {
        self.polytope.support_function(omega)
    }

    /// Reverse inclusion: `self >= other` iff `self` is inside `other`.
    pub fn geq(&self, other: &LogDistance) -> Result<bool> {
        polytope_leq(&self.polytope, &other.polytope)
    }

    /// `self > other`: inside and different.
    pub fn gt(&self, other: &LogDistance) -> Result<bool> {
        Ok(self.geq(other)? && self.polytope != other.polytope)
    }
}

fn degree(p: &YPoly) -> Result<usize> {
    match p.degree() {
        Some(n) if n > 0 => Ok(n),
        _ => Err(Error::ZeroInput("logarithmic distance needs positive degree")),
    }
}

/// Scaled polytope of a known nonzero resultant.
pub fn log_distance_from(res: FracSeries, deg_f: usize, deg_g: usize) -> Result<LogDistance> {
    if res.is_zero() {
        return Err(Error::ResultantVanishes);
    }
    let scale = Rational64::new(1, (deg_f * deg_g) as i64);
    let polytope = polytope_of_series(&res)?.scale(scale)?;
    Ok(LogDistance {
        polytope,
        scale,
        deg_f,
        deg_g,
        resultant: res,
    })
}

pub fn log_distance(f: &YPoly, g: &YPoly, t: &Tower) -> Result<LogDistance> {
    let (n, m) = (degree(f)?, degree(g)?);
    log_distance_from(resultant(f, g, t)?, n, m)
}

/// `min <w, a>` over the support of `alpha`.
pub fn weighted_order(alpha: &FracSeries, omega: &ExpVec) -> Result<Rational64> {
    alpha.weighted_order(omega)
}

/// `cont_w(f, g)` through the resultant polytope.
pub fn weighted_contact(f: &YPoly, g: &YPoly, omega: &ExpVec, t: &Tower) -> Result<Rational64> {
    omega.check_dim(f.dim())?;
    omega.require_nonneg()?;
    log_distance(f, g, t)?.weighted(omega)
}

/// `cont_w(f, g)` as the averaged weighted order of root differences.
/// Truncated differences are certified only for strictly positive `w`.
pub fn weighted_contact_from_roots(
    zf: &RootSet,
    zg: &RootSet,
    omega: &ExpVec,
) -> Result<Rational64> {
    omega.require_nonneg()?;
    let wmin = omega.coords().iter().copied().min().unwrap();
    let mut sum = Rational64::from_integer(0);
    for a in &zf.roots {
        for b in &zg.roots {
            let diff = a.sub(b)?;
            let w = diff.weighted_order(omega).map_err(|_| {
                Error::PrecisionExhausted("root difference vanishes to working precision".into())
            })?;
            // Unknown terms have total order >= P, hence weight >= wmin * P.
            if let Some(p) = diff.precision().bound() {
                if wmin.is_zero() || w >= wmin * p {
                    return Err(Error::PrecisionExhausted(
                        "weighted order not certified by the root precision".into(),
                    ));
                }
            }
            sum += w;
        }
    }
    Ok(sum / Rational64::from_integer((zf.roots.len() * zg.roots.len()) as i64))
}

/// Which theory covers a triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// All three irreducible quasi-ordinary: the inequality is a theorem.
    IrreducibleQo,
    General,
}

#[derive(Clone, Debug)]
pub struct TriangleReport {
    pub fg: LogDistance,
    pub fh: LogDistance,
    pub hg: LogDistance,
    /// `inf(cont_A(f,h), cont_A(h,g))`.
    pub inf: Polytope,
    pub holds: bool,
    /// A facet normal `w` of `inf` with `l(w, fg) < min(l(w, fh), l(w, hg))`.
    pub witness: Option<ExpVec>,
    pub regime: Regime,
}

/// Lexicographically smallest facet normal of `inf` separating `a` from it.
pub fn separating_normal(a: &Polytope, inf: &Polytope) -> Result<Option<ExpVec>> {
    let mut normals: Vec<ExpVec> = inf.facets().into_iter().map(|f| f.normal).collect();
    normals.sort();
    normals.dedup();
    for w in normals {
        if a.support_function(&w)? < inf.support_function(&w)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn irreducible_qo(p: &YPoly, t: &Tower) -> bool {
    p.is_weierstrass() && matches!(factor_qo(p, t), Ok(fac) if fac.is_irreducible())
}

/// Is `cont_A(f,g) >= inf{cont_A(f,h), cont_A(h,g)}`?
pub fn strong_triangle_check(f: &YPoly, g: &YPoly, h: &YPoly, t: &Tower) -> Result<TriangleReport> {
    let fg = log_distance(f, g, t)?;
    let fh = log_distance(f, h, t)?;
    let hg = log_distance(h, g, t)?;
    let inf = fh.polytope.inf(&hg.polytope)?;
    let holds = polytope_leq(&fg.polytope, &inf)?;
    let witness = separating_normal(&fg.polytope, &inf)?;
    if holds != witness.is_none() {
        return Err(Error::Assertion(
            "containment and facet separation disagree".into(),
        ));
    }
    let regime = if [f, g, h].iter().all(|p| irreducible_qo(p, t)) {
        Regime::IrreducibleQo
    } else {
        Regime::General
    };
    Ok(TriangleReport {
        fg,
        fh,
        hg,
        inf,
        holds,
        witness,
        regime,
    })
}
