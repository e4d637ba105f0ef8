//! Roots of quasi-ordinary polynomials as fractional power series.
//!
//! Recursive branch-and-lift: centre the roots (Tschirnhausen shift), read
//! the common leading exponent `lam` of the centred roots off the
//! coefficients, rescale `Y = X^lam Z`, factor the rescaled polynomial by
//! Hensel lifting along the distinct roots of its initial polynomial, and
//! recurse on every factor of degree above one.

use std::collections::BTreeMap;

use num_rational::{BigRational, Rational64};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::expvec::ExpVec;
use crate::field::upoly::ext_gcd;
use crate::field::{AlgNum, Tower, UPoly};
use crate::resultant::quasi_ordinary_test;
use crate::series::{FracSeries, Precision};
use crate::ypoly::YPoly;

const MAX_ROUNDS: usize = 8;

/// All roots of a quasi-ordinary polynomial to a common precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    pub roots: Vec<FracSeries>,
    /// All exponents lie in `(1/m) Z^d`.
    pub ramification: i64,
    /// Total-order truncation bound shared by all roots.
    pub precision: Rational64,
    /// Discriminant exponent.
    pub q: ExpVec,
}

/// Roots of a monic quasi-ordinary Weierstrass polynomial, truncated at
/// `<(1,..,1), q> + 1 + extra`.
pub fn qo_roots(f: &YPoly, extra: Rational64, t: &Tower) -> Result<RootSet> {
    f.require_weierstrass()?;
    let cert = quasi_ordinary_test(f, t)?;
    if !cert.is_qo {
        return Err(Error::NotQuasiOrdinary);
    }
    roots_given_q(f, cert.q.unwrap(), extra, t)
}

/// [`qo_roots`] with the discriminant exponent already known.
pub(crate) fn roots_given_q(f: &YPoly, q: ExpVec, extra: Rational64, t: &Tower) -> Result<RootSet> {
    let n = q.total() + Rational64::from_integer(1) + extra;
    let roots = roots_to_precision(f, n, t)?;
    let ramification = roots
        .iter()
        .fold(1, |acc, r| num_integer::lcm(acc, r.ramification()));
    Ok(RootSet {
        roots,
        ramification,
        precision: n,
        q,
    })
}

/// Roots of a monic polynomial whose roots differ pairwise by a monomial
/// times a unit, each truncated at total order `n`. The working precision
/// is raised until every root reaches `n`.
pub fn roots_to_precision(f: &YPoly, n: Rational64, t: &Tower) -> Result<Vec<FracSeries>> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut work = n;
    for _ in 0..MAX_ROUNDS {
        let roots = roots_rec(f, work, t)?;
        let reached = roots
            .iter()
            .map(|r| r.precision())
            .min()
            .unwrap_or(Precision::Exact);
        if reached >= Precision::Truncated(n) {
            let mut out: Vec<FracSeries> = roots
                .into_iter()
                .map(|r| r.truncate(Precision::Truncated(n)))
                .collect();
            out.sort_by(|a, b| a.terms().cmp(b.terms()));
            return Ok(out);
        }
        let got = reached.bound().unwrap();
        work = work + (n - got) + Rational64::from_integer(1);
    }
    Err(Error::PrecisionExhausted(format!(
        "roots did not reach total order {}",
        crate::expvec::fmt_rat(&n)
    )))
}

fn roots_rec(f: &YPoly, target: Rational64, t: &Tower) -> Result<Vec<FracSeries>> {
    let k = f.degree().unwrap();
    let limit = Precision::Truncated(target);
    if k == 0 {
        return Ok(Vec::new());
    }
    if k == 1 {
        return Ok(vec![f.coeff(0).neg().truncate(limit)]);
    }
    // Centre: gamma = -a_{k-1}/k.
    let inv_k = AlgNum::from_rational(BigRational::new(1.into(), (k as i64).into()));
    let gamma = f.coeff(k - 1).neg().scale(&inv_k, t).truncate(limit);
    let g = if gamma.is_exact_zero() {
        f.clone()
    } else {
        let lim = if f.is_exact() && gamma.is_exact() {
            Precision::Exact
        } else {
            limit
        };
        f.shift_trunc(&gamma, t, lim)?
    };
    // Exponent bound below which the centred coefficients are known.
    let mut bound = Precision::Exact;
    for i in 1..=k {
        let p = g.coeff(k - i).precision();
        if let Precision::Truncated(pi) = p {
            bound = bound.min(Precision::Truncated(pi / Rational64::from_integer(i as i64)));
        }
    }
    let bound = bound.min(limit);
    // lam = componentwise min of a/i over the terms X^a of b_{k-i}.
    let mut lam: Option<ExpVec> = None;
    let mut cands: Vec<ExpVec> = Vec::new();
    for i in 2..=k {
        let s = Rational64::new(1, i as i64);
        for e in g.coeff(k - i).support() {
            let c = e.scale(s);
            lam = Some(match lam {
                None => c.clone(),
                Some(l) => l.meet(&c),
            });
            cands.push(c);
        }
    }
    let all_equal = |prec: Precision| -> Vec<FracSeries> {
        vec![gamma.truncate(prec); k]
    };
    let Some(lam) = lam else {
        return Ok(all_equal(bound));
    };
    let attained = cands.contains(&lam);
    if !bound.covers(lam.total()) {
        return Ok(all_equal(bound));
    }
    if !attained {
        return Err(Error::NotQuasiOrdinary);
    }
    // Initial polynomial sum_i coeff_{X^{i lam}}(b_{k-i}) z^{k-i}.
    let mut init = vec![AlgNum::zero(); k + 1];
    init[k] = AlgNum::one();
    for i in 2..=k {
        init[k - i] = g.coeff(k - i).coeff(&lam.scale_int(i as i64));
    }
    let init = UPoly::from_coeffs(init);
    let centres = t.roots(&init)?;
    if centres.len() < 2 {
        return Err(Error::NotQuasiOrdinary);
    }
    let rescaled = g.rescale(&lam, &lam.scale_int(k as i64))?;
    let sub_target = target - lam.total();
    if centres.iter().all(|(_, mu)| *mu == 1) {
        // One Newton root per orbit, rational centres first; the rest are
        // conjugates under X^(1/M) -> zeta X^(1/M).
        let mut order: Vec<usize> = (0..centres.len()).collect();
        order.sort_by_key(|&i| centres[i].0.level());
        let mut got: Vec<Option<FracSeries>> = vec![None; k];
        for &i in &order {
            if got[i].is_some() {
                continue;
            }
            let w = newton_root(&rescaled, &centres[i].0, sub_target, t)?;
            let r = gamma.add(&w.mul_monomial(&lam))?.truncate(limit);
            for (j, rj) in conjugates(&g, &r, &lam, &centres, i, t)? {
                got[j].get_or_insert(rj);
            }
            got[i] = Some(r);
        }
        return Ok(got.into_iter().map(Option::unwrap).collect());
    }
    let clusters: Vec<UPoly> = centres
        .iter()
        .map(|(c, mu)| UPoly::linear(c).pow(t, *mu))
        .collect();
    let factors = hensel_factors(&rescaled, &clusters, sub_target, t)?;
    let mut out = Vec::with_capacity(k);
    for fac in &factors {
        let ws = roots_rec(fac, sub_target, t)?;
        for w in ws {
            let r = gamma.add(&w.mul_monomial(&lam))?.truncate(limit);
            out.push(r);
        }
    }
    debug_assert_eq!(out.len(), k);
    Ok(out)
}

/// Images of the root `r` of `g` (with centre `centres[i]` after the
/// rescaling by `lam`) under the substitutions `X_j^(1/M) -> zeta^(a_j)
/// X_j^(1/M)` that fix the coefficients of `g`, keyed by their centre.
fn conjugates(
    g: &YPoly,
    r: &FracSeries,
    lam: &ExpVec,
    centres: &[(AlgNum, usize)],
    i: usize,
    t: &Tower,
) -> Result<Vec<(usize, FracSeries)>> {
    let d = g.dim();
    let m = num_integer::lcm(r.ramification(), lam.denominator());
    if m == 1 || (m as u64).pow(d as u32) > 4096 {
        return Ok(Vec::new());
    }
    // Exponents scaled by M; those of g must be integral for the test below.
    let scaled = |e: &ExpVec| -> Option<Vec<i64>> {
        e.coords()
            .iter()
            .map(|x| {
                let y = x * m;
                y.is_integer().then(|| y.to_integer())
            })
            .collect()
    };
    let mut fixed_by: Vec<Vec<i64>> = Vec::new();
    for c in g.coeffs() {
        for e in c.support() {
            match scaled(e) {
                Some(v) => fixed_by.push(v),
                None => return Ok(Vec::new()),
            }
        }
    }
    let Some(lam_m) = scaled(lam) else {
        return Ok(Vec::new());
    };
    let zeta = t.root_of_unity(m as u64)?;
    let powers: Vec<AlgNum> = (0..m).map(|j| t.pow(&zeta, j as u64)).collect();
    let pair = |a: &[i64], v: &[i64]| -> usize {
        a.iter().zip(v).map(|(x, y)| x * y).sum::<i64>().rem_euclid(m) as usize
    };
    let mut out: Vec<(usize, FracSeries)> = Vec::new();
    let mut a = vec![0i64; d];
    loop {
        // Next a in [0, M)^d, skipping zero.
        let mut pos = 0;
        while pos < d {
            a[pos] += 1;
            if a[pos] < m {
                break;
            }
            a[pos] = 0;
            pos += 1;
        }
        if pos == d {
            break;
        }
        if fixed_by.iter().any(|v| pair(&a, v) != 0) {
            continue;
        }
        let c = t.mul(&centres[i].0, &powers[pair(&a, &lam_m)]);
        let Some(j) = centres.iter().position(|(x, _)| *x == c) else {
            continue;
        };
        if j == i || out.iter().any(|(x, _)| *x == j) {
            continue;
        }
        let mut bad = false;
        let img = r.map_coeffs(|e, x| match scaled(e) {
            Some(v) => t.mul(x, &powers[pair(&a, &v)]),
            None => {
                bad = true;
                x.clone()
            }
        });
        if !bad {
            out.push((j, img));
        }
    }
    Ok(out)
}

/// Root of `g` through `(0, c)`, with `c` a simple root of `g(0, Z)`,
/// to total order `target`. Newton iteration with a running inverse of
/// the derivative, so the known order doubles each round.
fn newton_root(g: &YPoly, c: &AlgNum, target: Rational64, t: &Tower) -> Result<FracSeries> {
    let d = g.dim();
    let limit = g.precision().min(Precision::Truncated(target));
    let dg = g.derivative();
    let w0 = t
        .inv(&dg.at_origin().eval(t, c))
        .ok_or_else(|| Error::Internal("Newton started at a multiple root".into()))?;
    let two = FracSeries::constant(d, AlgNum::from_int(2));
    let mut z = FracSeries::constant(d, c.clone());
    let mut w = FracSeries::constant(d, w0);
    for _ in 0..64 {
        let r = g.eval_trunc(&z, t, limit)?;
        if r.is_zero() {
            return Ok(z.truncate(limit));
        }
        z = z.sub(&r.mul_trunc(&w, t, limit)?)?.truncate(limit).into_exact();
        let e = dg.eval_trunc(&z, t, limit)?.mul_trunc(&w, t, limit)?;
        w = w.mul_trunc(&two.sub(&e)?, t, limit)?.into_exact();
    }
    Err(Error::Internal("Newton iteration did not converge".into()))
}

fn constant_ypoly(d: usize, p: &UPoly) -> YPoly {
    YPoly::new(
        d,
        p.coeffs()
            .iter()
            .map(|c| FracSeries::constant(d, c.clone()))
            .collect(),
    )
    .unwrap()
}

/// Factor a monic `g` with `g(0, Z) = prod clusters` (pairwise coprime,
/// monic) into monic factors lifting the clusters, to total order `target`.
pub(crate) fn hensel_factors(
    g: &YPoly,
    clusters: &[UPoly],
    target: Rational64,
    t: &Tower,
) -> Result<Vec<YPoly>> {
    let mut out = Vec::with_capacity(clusters.len());
    let mut rest = g.clone();
    for (i, c) in clusters.iter().enumerate() {
        if i + 1 == clusters.len() {
            out.push(rest);
            break;
        }
        let others = clusters[i + 1..]
            .iter()
            .fold(UPoly::constant(AlgNum::one()), |acc, p| acc.mul(t, p));
        let (a, b) = hensel_split(&rest, c, &others, target, t)?;
        out.push(a);
        rest = b;
    }
    Ok(out)
}

/// Lift `g(0, Z) = a0 * b0` (coprime, `a0` monic) to `g = A * B` modulo
/// total order `target`. `B` carries the leading coefficient of `g`.
pub(crate) fn hensel_split(
    g: &YPoly,
    a0: &UPoly,
    b0: &UPoly,
    target: Rational64,
    t: &Tower,
) -> Result<(YPoly, YPoly)> {
    let d = g.dim();
    let limit = Precision::Truncated(target);
    let (gcd, s, _) = ext_gcd(t, b0, a0);
    // s * b0 = gcd (mod a0), gcd a nonzero constant.
    if gcd.degree() != Some(0) {
        return Err(Error::Internal("Hensel factors are not coprime".into()));
    }
    let s = s.scale(t, &t.inv(&gcd.coeffs()[0]).unwrap());
    let mut a = constant_ypoly(d, a0);
    let mut b = constant_ypoly(d, b0);
    let mut err = g.sub(&a.mul(&b, t)?)?.truncate(limit);
    let g_prec = g.precision().min(limit);
    loop {
        let Some(o) = err.coeffs().iter().filter_map(|c| c.min_total()).min() else {
            break;
        };
        if o <= Rational64::zero() {
            return Err(Error::Internal("Hensel lifting started from a wrong factorization".into()));
        }
        // Slice: for every exponent of total order o, the polynomial in Z.
        let mut slices: BTreeMap<ExpVec, Vec<AlgNum>> = BTreeMap::new();
        for (i, c) in err.coeffs().iter().enumerate() {
            for (e, v) in c.terms() {
                if e.total() == o {
                    let row = slices.entry(e.clone()).or_default();
                    if row.len() <= i {
                        row.resize(i + 1, AlgNum::zero());
                    }
                    row[i] = v.clone();
                }
            }
        }
        let mut da = vec![FracSeries::zero(d); a0.degree().unwrap() + 1];
        let mut db = vec![FracSeries::zero(d); b0.degree().unwrap() + 1];
        for (e, row) in slices {
            let ez = UPoly::from_coeffs(row);
            let pa = ez.mul(t, &s).rem(t, a0);
            let (pb, rem) = ez.sub(&pa.mul(t, b0)).divrem(t, a0);
            debug_assert!(rem.is_zero());
            for (j, c) in pa.coeffs().iter().enumerate() {
                da[j] = da[j].add(&FracSeries::monomial(e.clone(), c.clone()))?;
            }
            for (j, c) in pb.coeffs().iter().enumerate() {
                db[j] = db[j].add(&FracSeries::monomial(e.clone(), c.clone()))?;
            }
        }
        let da = YPoly::new(d, da)?;
        let db = YPoly::new(d, db)?;
        // g - (a + da)(b + db) = err - da*b - (a + da)*db
        let new_a = a.add(&da)?;
        err = err
            .sub(&da.mul_trunc(&b, t, limit)?)?
            .sub(&new_a.mul_trunc(&db, t, limit)?)?
            .truncate(limit);
        a = new_a;
        b = b.add(&db)?;
    }
    if g.is_exact() && g.sub(&a.mul(&b, t)?)?.is_zero() {
        return Ok((a, b));
    }
    Ok((a.truncate(g_prec), b.truncate(g_prec)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[(i64, i64)], c: i64) -> FracSeries {
        FracSeries::monomial(ExpVec::from_fracs(e), AlgNum::from_int(c))
    }

    fn sum(ts: &[FracSeries]) -> FracSeries {
        ts.iter()
            .fold(FracSeries::zero(ts[0].dim()), |a, b| a.add(b).unwrap())
    }

    #[test]
    fn cusp_roots() {
        let t = Tower::new();
        let f = YPoly::new(1, vec![mono(&[(3, 1)], -1), FracSeries::zero(1), FracSeries::one(1)])
            .unwrap();
        let rs = qo_roots(&f, Rational64::zero(), &t).unwrap();
        assert_eq!(rs.precision, Rational64::from_integer(4));
        let n = Precision::Truncated(4.into());
        assert_eq!(rs.roots, vec![mono(&[(3, 2)], -1).truncate(n), mono(&[(3, 2)], 1).truncate(n)]);
        assert_eq!(rs.ramification, 2);
    }

    #[test]
    fn completed_square() {
        let t = Tower::new();
        // (Y - X1X2)^2 - X1^3X2^3
        let f = YPoly::new(
            2,
            vec![
                sum(&[mono(&[(2, 1), (2, 1)], 1), mono(&[(3, 1), (3, 1)], -1)]),
                mono(&[(1, 1), (1, 1)], -2),
                FracSeries::one(2),
            ],
        )
        .unwrap();
        let rs = qo_roots(&f, Rational64::zero(), &t).unwrap();
        let n = Precision::Truncated(rs.precision);
        let r1 = sum(&[mono(&[(1, 1), (1, 1)], 1), mono(&[(3, 2), (3, 2)], 1)]).truncate(n);
        let r2 = sum(&[mono(&[(1, 1), (1, 1)], 1), mono(&[(3, 2), (3, 2)], -1)]).truncate(n);
        assert!(rs.roots.contains(&r1) && rs.roots.contains(&r2));
    }

    #[test]
    fn example_roots() {
        let t = Tower::new();
        let f = YPoly::new(
            2,
            vec![
                sum(&[mono(&[(7, 1), (6, 1)], -1), mono(&[(6, 1), (4, 1)], 1)]),
                mono(&[(5, 1), (4, 1)], -4),
                mono(&[(3, 1), (2, 1)], -2),
                FracSeries::zero(2),
                FracSeries::one(2),
            ],
        )
        .unwrap();
        let rs = qo_roots(&f, Rational64::zero(), &t).unwrap();
        assert_eq!(rs.q, ExpVec::from_ints(&[19, 14]));
        assert_eq!(rs.precision, Rational64::from_integer(34));
        assert_eq!(rs.roots.len(), 4);
        for r in &rs.roots {
            assert_eq!(r.num_terms(), 2, "{}", r);
            assert!(f.eval(&r.clone().into_exact(), &t).unwrap().is_exact_zero());
        }
    }
}
