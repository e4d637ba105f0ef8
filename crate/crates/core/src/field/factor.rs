//! Factorization of squarefree polynomials over a tower level.
//!
//! Over `Q` this delegates to Zassenhaus factorization over `Z`. Over a level
//! `K_L = K_{L-1}(t)` it uses Trager's norm method: shift until the norm down
//! to `K_{L-1}` is squarefree, factor the norm one level down, and pull the
//! factors back with gcds.

use algebraics::polynomial::Polynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::upoly::{self, rat_coeffs, UPoly};
use super::{AlgNum, Tower};
use crate::error::{Error, Result};

const MAX_SHIFT: i64 = 64;

/// Monic irreducible factors over the field generated by levels `..=level`.
/// `p` must be monic, squarefree and have coefficients at levels `<= level`.
pub(super) fn factor_squarefree(t: &Tower, p: &UPoly, level: usize) -> Result<Vec<UPoly>> {
    let deg = p.degree().unwrap_or(0);
    if deg <= 1 {
        return Ok(vec![p.clone()]);
    }
    if level == 0 {
        return factor_over_q(p);
    }
    let gen = t.generator(level);
    for s in 0..MAX_SHIFT {
        // p_s(z) = p(z - s t)
        let shift = t.mul(&AlgNum::from_int(-s), &gen);
        let ps = if s == 0 { p.clone() } else { p.shift(t, &shift) };
        let norm = norm_down(t, &ps, level);
        if !norm.is_squarefree(t) {
            continue;
        }
        let norm_factors = factor_squarefree(t, &norm.monic(t), level - 1)?;
        if norm_factors.len() == 1 {
            return Ok(vec![p.clone()]);
        }
        let back = -&shift;
        let mut out = Vec::with_capacity(norm_factors.len());
        for nf in &norm_factors {
            let g = ps.gcd(t, nf);
            if g.degree().unwrap_or(0) == 0 {
                continue;
            }
            let g = if s == 0 { g } else { g.shift(t, &back) };
            out.push(g.monic(t));
        }
        debug_assert_eq!(
            out.iter().map(|f| f.degree().unwrap()).sum::<usize>(),
            deg
        );
        return Ok(out);
    }
    Err(Error::Internal(format!(
        "no squarefree norm found for a degree {} polynomial at level {}",
        deg, level
    )))
}

/// `Res_t(m_L(t), p(t, z))`: the norm of `p` from `K_L[z]` to `K_{L-1}[z]`.
fn norm_down(t: &Tower, p: &UPoly, level: usize) -> UPoly {
    let m = UPoly::from_coeffs(t.level(level).minpoly().to_vec());
    let dm = m.degree().unwrap();
    let dp = p.degree().unwrap();
    // Coefficients of p as polynomials in t_L.
    let lifted: Vec<Vec<AlgNum>> = p.coeffs().iter().map(|c| c.coeffs_at(level)).collect();
    let npts = dm * dp + 1;
    let mut xs = Vec::with_capacity(npts);
    let mut ys = Vec::with_capacity(npts);
    for k in 0..npts {
        let z0 = BigRational::from_integer(BigInt::from(k as i64));
        // q(t) = sum_j p_j(t) z0^j
        let mut q: Vec<AlgNum> = Vec::new();
        let mut zpow = BigRational::one();
        for cj in &lifted {
            if q.len() < cj.len() {
                q.resize(cj.len(), AlgNum::zero());
            }
            for (i, c) in cj.iter().enumerate() {
                q[i] = &q[i] + &c.scale_rat(&zpow);
            }
            zpow *= &z0;
        }
        let q = UPoly::from_coeffs(q);
        ys.push(upoly::resultant(t, &m, &q));
        xs.push(z0);
    }
    upoly::interpolate(t, &xs, &ys)
}

fn factor_over_q(p: &UPoly) -> Result<Vec<UPoly>> {
    let coeffs = rat_coeffs(p).ok_or_else(|| {
        Error::Internal("factor_over_q called with non-rational coefficients".into())
    })?;
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let poly: Polynomial<BigInt> = ints.into();
    let factors = poly.factor();
    let mut out = Vec::new();
    for f in factors.polynomial_factors {
        let cs = f.polynomial.into_coefficients();
        let lc = cs.last().cloned().unwrap();
        if cs.len() <= 1 {
            continue;
        }
        let monic: Vec<AlgNum> = cs
            .into_iter()
            .map(|c| AlgNum::from_rational(BigRational::new(c, lc.clone())))
            .collect();
        for _ in 0..f.power {
            out.push(UPoly::from_coeffs(monic.clone()));
        }
    }
    if out.is_empty() && !p.is_zero() && p.degree().unwrap() > 0 {
        return Err(Error::Internal("factorization over Q returned nothing".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn over_q() {
        let p = UPoly::from_ints(&[-6, 11, -6, 1]);
        let mut fs = factor_over_q(&p).unwrap();
        fs.sort_by_key(|f| f.coeffs()[0].clone());
        assert_eq!(fs.len(), 3);
        let irr = UPoly::from_ints(&[1, 1, 1]);
        assert_eq!(factor_over_q(&irr).unwrap(), vec![irr]);
    }

    #[test]
    fn splits_over_gaussian_field() {
        let t = Tower::new();
        let i = t.some_root(&UPoly::from_ints(&[1, 0, 1])).unwrap();
        // z^4 - 1 = (z-1)(z+1)(z-i)(z+i) over Q(i)
        let fs = factor_squarefree(&t, &UPoly::from_ints(&[-1, 0, 0, 0, 1]), 1).unwrap();
        assert_eq!(fs.len(), 4);
        assert!(fs.contains(&UPoly::linear(&i)));
        // z^2 - 2 stays irreducible over Q(i)
        let fs = factor_squarefree(&t, &UPoly::from_ints(&[-2, 0, 1]), 1).unwrap();
        assert_eq!(fs.len(), 1);
        // z^4 + 4 = (z^2 + 2z + 2)(z^2 - 2z + 2) already over Q; linear over Q(i).
        let fs = factor_squarefree(&t, &UPoly::from_ints(&[4, 0, 0, 0, 1]), 1).unwrap();
        assert_eq!(fs.len(), 4);
    }
}
