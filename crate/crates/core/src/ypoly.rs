//! Polynomials in `Y` over fractional power series.

use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::expvec::ExpVec;
use crate::field::Tower;
use crate::series::{split_sign, term_text, FracSeries, Precision};

/// `a_0 + a_1 Y + ... + a_n Y^n` with `a_n != 0` (the zero polynomial has no
/// coefficients).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct YPoly {
    dim: usize,
    coeffs: Vec<FracSeries>,
}

impl YPoly {
    pub fn new(dim: usize, coeffs: Vec<FracSeries>) -> Result<Self> {
        for c in &coeffs {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch(c.dim(), dim));
            }
        }
        let mut p = YPoly { dim, coeffs };
        p.trim();
        Ok(p)
    }

    pub fn zero(dim: usize) -> Self {
        YPoly {
            dim,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: FracSeries) -> Self {
        let dim = c.dim();
        YPoly::new(dim, vec![c]).unwrap()
    }

    /// `Y`.
    pub fn y(dim: usize) -> Self {
        YPoly {
            dim,
            coeffs: vec![FracSeries::zero(dim), FracSeries::one(dim)],
        }
    }

    /// `Y - a`.
    pub fn linear(a: &FracSeries) -> Self {
        YPoly {
            dim: a.dim(),
            coeffs: vec![a.neg(), FracSeries::one(a.dim())],
        }
    }

    /// `prod (Y - r)`.
    pub fn from_roots(dim: usize, roots: &[FracSeries], t: &Tower) -> Result<Self> {
        let mut p = YPoly::constant(FracSeries::one(dim));
        for r in roots {
            p = p.mul(&YPoly::linear(r), t)?;
        }
        Ok(p)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[FracSeries] {
        &self.coeffs
    }

    /// Coefficient of `Y^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FracSeries {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FracSeries::zero(self.dim))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_exact())
    }

    pub fn precision(&self) -> Precision {
        self.coeffs
            .iter()
            .fold(Precision::Exact, |p, c| p.min(c.precision()))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_exact() && *c == FracSeries::one(self.dim))
    }

    /// Monic with every lower coefficient vanishing at the origin.
    pub fn is_weierstrass(&self) -> bool {
        self.is_monic()
            && self.coeffs[..self.coeffs.len() - 1]
                .iter()
                .all(|c| c.constant_term().is_zero())
    }

    pub fn require_weierstrass(&self) -> Result<()> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        if !self.is_weierstrass() {
            return Err(Error::NotWeierstrass);
        }
        Ok(())
    }

    pub fn max_level(&self) -> usize {
        self.coeffs.iter().map(|c| c.max_level()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &YPoly) -> Result<YPoly> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff(i).add(&other.coeff(i)))
            .collect::<Result<Vec<_>>>()?;
        YPoly::new(self.dim, coeffs)
    }

    pub fn neg(&self) -> YPoly {
        YPoly {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &YPoly) -> Result<YPoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &YPoly, t: &Tower) -> Result<YPoly> {
        self.mul_trunc(other, t, Precision::Exact)
    }

    pub fn mul_trunc(&self, other: &YPoly, t: &Tower, limit: Precision) -> Result<YPoly> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(YPoly::zero(self.dim));
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = vec![FracSeries::zero(self.dim); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let p = a.mul_trunc(b, t, limit)?;
                out[i + j] = out[i + j].add(&p)?;
            }
        }
        YPoly::new(self.dim, out)
    }

    /// Division by a monic divisor: `self = q * d + r` with `deg r < deg d`.
    pub fn divrem_monic(&self, d: &YPoly, t: &Tower, limit: Precision) -> Result<(YPoly, YPoly)> {
        if !d.is_monic() {
            return Err(Error::NotMonic);
        }
        let dd = d.degree().unwrap();
        let mut r: Vec<FracSeries> = self.coeffs.iter().map(|c| c.truncate(limit)).collect();
        if r.len() <= dd {
            return Ok((YPoly::zero(self.dim), YPoly::new(self.dim, r)?));
        }
        let mut q = vec![FracSeries::zero(self.dim); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i].clone();
            if c.is_exact_zero() {
                continue;
            }
            for (j, dc) in d.coeffs[..dd].iter().enumerate() {
                let p = c.mul_trunc(dc, t, limit)?;
                r[i - dd + j] = r[i - dd + j].sub(&p)?;
            }
            r[i] = FracSeries::zero(self.dim);
            q[i - dd] = c;
        }
        r.truncate(dd);
        Ok((YPoly::new(self.dim, q)?, YPoly::new(self.dim, r)?))
    }

    pub fn scale(&self, c: &FracSeries, t: &Tower) -> Result<YPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.mul(c, t))
            .collect::<Result<Vec<_>>>()?;
        YPoly::new(self.dim, coeffs)
    }

    pub fn truncate(&self, n: Precision) -> YPoly {
        YPoly {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c.truncate(n)).collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl FnMut(&FracSeries) -> Result<FracSeries>) -> Result<YPoly> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        let dim = coeffs.first().map_or(self.dim, |c| c.dim());
        YPoly::new(dim, coeffs)
    }

    /// `f(gamma)` by Horner's rule.
    pub fn eval(&self, gamma: &FracSeries, t: &Tower) -> Result<FracSeries> {
        self.eval_trunc(gamma, t, Precision::Exact)
    }

    pub fn eval_trunc(&self, gamma: &FracSeries, t: &Tower, limit: Precision) -> Result<FracSeries> {
        if gamma.dim() != self.dim {
            return Err(Error::DimensionMismatch(gamma.dim(), self.dim));
        }
        let mut acc = FracSeries::zero(self.dim);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_trunc(gamma, t, limit)?.add(c)?.truncate(limit);
        }
        Ok(acc)
    }

    /// `f(Y + alpha)`.
    pub fn shift(&self, alpha: &FracSeries, t: &Tower) -> Result<YPoly> {
        self.shift_trunc(alpha, t, Precision::Exact)
    }

    pub fn shift_trunc(&self, alpha: &FracSeries, t: &Tower, limit: Precision) -> Result<YPoly> {
        if alpha.dim() != self.dim {
            return Err(Error::DimensionMismatch(alpha.dim(), self.dim));
        }
        // Horner in Y with (Y + alpha) as the step.
        let step = YPoly {
            dim: self.dim,
            coeffs: vec![alpha.clone(), FracSeries::one(self.dim)],
        };
        let mut acc = YPoly::zero(self.dim);
        for c in self.coeffs.iter().rev() {
            acc = acc
                .mul_trunc(&step, t, limit)?
                .add(&YPoly::constant(c.clone()))?
                .truncate(limit);
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> YPoly {
        let coeffs: Vec<FracSeries> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let k = num_rational::BigRational::from_integer((i as i64).into());
                c.map_coeffs(|_, x| x.scale_rat(&k))
            })
            .collect();
        YPoly::new(self.dim, coeffs).unwrap()
    }

    /// `f(T^c, Y)`: every coefficient is substituted.
    pub fn substitute(&self, c: &ExpVec) -> Result<YPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.substitute(c))
            .collect::<Result<Vec<_>>>()?;
        YPoly::new(1, coeffs)
    }

    /// `f(X^{lam} Z)` divided by `X^{shift}` coefficientwise: the rescaled
    /// polynomial `X^{-shift} f(X^lam Z)`.
    pub fn rescale(&self, lam: &ExpVec, shift: &ExpVec) -> Result<YPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| {
                a.shift_exponents(&(&lam.scale_int(i as i64) - shift))
            })
            .collect::<Result<Vec<_>>>()?;
        YPoly::new(self.dim, coeffs)
    }

    /// Polynomial in `Y` with constant coefficients (the value at `X = 0`).
    pub fn at_origin(&self) -> crate::field::UPoly {
        crate::field::UPoly::from_coeffs(self.coeffs.iter().map(|c| c.constant_term()).collect())
    }

    /// Newton polytope points: `(a, i)` for every term `X^a Y^i`.
    pub fn support_points(&self) -> Vec<ExpVec> {
        let mut pts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            for e in c.support() {
                pts.push(e.with_last(Rational64::from_integer(i as i64)));
            }
        }
        pts
    }

    /// Canonical text, highest `Y` power first.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            for (e, coef) in c.terms().rev() {
                let (neg, mag) = split_sign(coef);
                if out.is_empty() {
                    if neg {
                        out.push('-');
                    }
                } else {
                    out.push_str(if neg { " - " } else { " + " });
                }
                let x = term_text(e, &mag);
                let y = match i {
                    0 => String::new(),
                    1 => "Y".to_string(),
                    _ => format!("Y^{}", i),
                };
                if y.is_empty() {
                    out.push_str(&x);
                } else if e.is_zero() && mag.is_one() {
                    out.push_str(&y);
                } else {
                    out.push_str(&format!("{}*{}", x, y));
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        if let Precision::Truncated(n) = self.precision() {
            out.push_str(&format!(" + O({})", crate::expvec::fmt_rat(&n)));
        }
        out
    }
}

impl fmt::Display for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::AlgNum;

    fn mono(e: &[(i64, i64)], c: i64) -> FracSeries {
        FracSeries::monomial(ExpVec::from_fracs(e), AlgNum::from_int(c))
    }

    fn poly(cs: Vec<FracSeries>) -> YPoly {
        let d = cs[0].dim();
        YPoly::new(d, cs).unwrap()
    }

    fn sum(ts: &[FracSeries]) -> FracSeries {
        ts.iter()
            .fold(FracSeries::zero(ts[0].dim()), |a, b| a.add(b).unwrap())
    }

    fn example_one() -> YPoly {
        poly(vec![
            sum(&[mono(&[(7, 1), (6, 1)], -1), mono(&[(6, 1), (4, 1)], 1)]),
            mono(&[(5, 1), (4, 1)], -4),
            mono(&[(3, 1), (2, 1)], -2),
            FracSeries::zero(2),
            FracSeries::one(2),
        ])
    }

    #[test]
    fn example_root_evaluates_to_zero() {
        let t = Tower::new();
        let f = example_one();
        assert!(f.is_weierstrass());
        let a1 = sum(&[mono(&[(3, 2), (1, 1)], 1), mono(&[(7, 4), (3, 2)], 1)]);
        assert!(f.eval(&a1, &t).unwrap().is_exact_zero());
        let y = YPoly::y(2);
        assert!(y.eval(&FracSeries::zero(2), &t).unwrap().is_exact_zero());
    }

    #[test]
    fn cusp_root_and_shift() {
        let t = Tower::new();
        let f = poly(vec![mono(&[(3, 1)], -1), FracSeries::zero(1), FracSeries::one(1)]);
        let r = mono(&[(3, 2)], 1);
        assert!(f.eval(&r, &t).unwrap().is_exact_zero());
        let g = f.shift(&r, &t).unwrap();
        let expected = poly(vec![FracSeries::zero(1), mono(&[(3, 2)], 2), FracSeries::one(1)]);
        assert_eq!(g, expected);
        assert_eq!(g.shift(&r.neg(), &t).unwrap(), f);
    }

    #[test]
    fn binomial_shift() {
        let t = Tower::new();
        let x = mono(&[(1, 1)], 1);
        let y2 = poly(vec![FracSeries::zero(1), FracSeries::zero(1), FracSeries::one(1)]);
        let expected = poly(vec![mono(&[(2, 1)], 1), mono(&[(1, 1)], 2), FracSeries::one(1)]);
        assert_eq!(y2.shift(&x, &t).unwrap(), expected);
        assert_eq!(YPoly::linear(&x).shift(&x, &t).unwrap(), YPoly::y(1));
    }

    #[test]
    fn text_and_substitution() {
        let f = example_one();
        assert_eq!(
            f.to_text(),
            "Y^4 - 2*X1^3*X2^2*Y^2 - 4*X1^5*X2^4*Y - X1^7*X2^6 + X1^6*X2^4"
        );
        let fc = f.substitute(&ExpVec::from_ints(&[1, 1])).unwrap();
        assert_eq!(fc.degree(), Some(4));
        assert!(f.substitute(&ExpVec::from_ints(&[0, 1])).is_err());
    }
}
